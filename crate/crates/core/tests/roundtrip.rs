mod common;

use common::{corpus, desk_nhslrs, z};
use pda_forge::docs::{
    nhsdp_to_json, nhslr_to_json, parse_document, pda_from_json, pda_to_json, Document,
};
use pda_forge::{enumerate_nhsdps, verify_nhsdp, verify_nhslr, verify_pda};

#[test]
fn pda_documents_round_trip() {
    for (name, p) in corpus() {
        let text = pda_to_json(&p);
        assert!(text.ends_with('\n'));
        let back = pda_from_json(&text).unwrap();
        assert_eq!(back, p, "{name}");
        assert_eq!(verify_pda(&back), verify_pda(&p), "{name}");
        assert_eq!(pda_to_json(&back), text, "{name}");
        assert!(matches!(parse_document(&text).unwrap(), Document::Pda(_)));
    }
}

#[test]
fn nhslr_documents_round_trip() {
    for (_, d) in desk_nhslrs() {
        let text = nhslr_to_json(&d);
        let Document::Nhslr(back) = parse_document(&text).unwrap() else {
            panic!("detected as another document type");
        };
        assert_eq!(back, d);
        assert_eq!(verify_nhslr(&back), verify_nhslr(&d));
    }
}

#[test]
fn nhsdp_documents_round_trip() {
    for p in enumerate_nhsdps(z(13), 3, 2).into_iter().take(50) {
        let text = nhsdp_to_json(&p);
        let Document::Nhsdp(back) = parse_document(&text).unwrap() else {
            panic!("detected as another document type");
        };
        assert_eq!(back, p);
        assert_eq!(verify_nhsdp(&back), verify_nhsdp(&p));
    }
}

#[test]
fn malformed_documents_are_rejected() {
    assert!(parse_document("[1,2]").is_err());
    assert!(parse_document("{\"x\":1}").is_err());
    assert!(parse_document("{\"v\":8,\"g\":1,\"b\":1,\"rows\":[[1]]}").is_err());
    assert!(pda_from_json("{\"K\":1,\"F\":1,\"Z\":0,\"S\":1,\"rows\":[[\"x\"]]}").is_err());
}

//! JSON documents.
//!
//! Key order is fixed:
//!
//! * NHSLR: `{"v","g","b","rows"}`
//! * NHSDP: `{"v","g","blocks"}`
//! * PDA: `{"K","F","Z","S","rows","pair_labels"?}` with cells `"*"` or a
//!   1-based symbol
//! * simulation config: `{"pda","N","packet_bytes","seed","demands",...}`
//!
//! Writers emit compact JSON followed by a newline.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{malformed, param, Result};
use crate::nhsdp::Nhsdp;
use crate::nhslr::Nhslr;
use crate::pda::{Cell, PairLabel, Pda};
use crate::sim::{DemandMode, GENERATOR_ID};
use crate::znum::Modulus;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NhslrDoc {
    v: u64,
    g: usize,
    b: usize,
    rows: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NhsdpDoc {
    v: u64,
    g: usize,
    blocks: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CellDoc {
    Symbol(u32),
    Star(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PdaDoc {
    #[serde(rename = "K")]
    k: usize,
    #[serde(rename = "F")]
    f: usize,
    #[serde(rename = "Z")]
    z: usize,
    #[serde(rename = "S")]
    s: usize,
    rows: Vec<Vec<CellDoc>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pair_labels: Option<Vec<Vec<Option<PairLabel>>>>,
}

fn line<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn nhslr_to_json(d: &Nhslr) -> String {
    line(&NhslrDoc {
        v: d.modulus().get(),
        g: d.rows(),
        b: d.cols(),
        rows: d.to_rows(),
    })
}

fn nhslr_from_doc(doc: NhslrDoc) -> Result<Nhslr> {
    if doc.rows.len() != doc.g || doc.rows.iter().any(|r| r.len() != doc.b) {
        return Err(malformed("NHSLR", "g and b do not match the rows"));
    }
    Nhslr::from_rows(Modulus::new(doc.v)?, doc.rows)
}

pub fn nhslr_from_json(s: &str) -> Result<Nhslr> {
    nhslr_from_doc(serde_json::from_str(s)?)
}

pub fn nhsdp_to_json(p: &Nhsdp) -> String {
    line(&NhsdpDoc {
        v: p.modulus().get(),
        g: p.block_size(),
        blocks: p.blocks().to_vec(),
    })
}

fn nhsdp_from_doc(doc: NhsdpDoc) -> Result<Nhsdp> {
    if doc.blocks.iter().any(|b| b.len() != doc.g) {
        return Err(malformed("NHSDP", "g does not match the block sizes"));
    }
    Nhsdp::new(Modulus::new(doc.v)?, doc.blocks)
}

pub fn nhsdp_from_json(s: &str) -> Result<Nhsdp> {
    nhsdp_from_doc(serde_json::from_str(s)?)
}

pub fn pda_to_json(p: &Pda) -> String {
    let (k, f, z, s) = p.declared();
    let rows = p
        .to_rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|c| match c {
                    Cell::Star => CellDoc::Star("*".into()),
                    Cell::Symbol(s) => CellDoc::Symbol(s),
                })
                .collect()
        })
        .collect();
    line(&PdaDoc {
        k,
        f,
        z,
        s,
        rows,
        pair_labels: p.pair_label_rows(),
    })
}

fn pda_from_doc(doc: PdaDoc) -> Result<Pda> {
    let rows = doc
        .rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|c| match c {
                    CellDoc::Symbol(s) => Ok(Cell::Symbol(s)),
                    CellDoc::Star(s) if s == "*" => Ok(Cell::Star),
                    CellDoc::Star(s) => Err(malformed("PDA", format!("cell {s:?} is not \"*\""))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let p = Pda::new(doc.k, doc.f, doc.z, doc.s, rows)?;
    match doc.pair_labels {
        Some(labels) => p.with_pair_labels(labels),
        None => Ok(p),
    }
}

pub fn pda_from_json(s: &str) -> Result<Pda> {
    pda_from_doc(serde_json::from_str(s)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Nhslr(Nhslr),
    Nhsdp(Nhsdp),
    Pda(Pda),
}

/// Parse any of the three array documents, telling them apart by their keys.
pub fn parse_document(s: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(s)?;
    let obj = value
        .as_object()
        .ok_or_else(|| malformed("document", "expected a JSON object"))?;
    if obj.contains_key("K") {
        Ok(Document::Pda(pda_from_doc(serde_json::from_value(value)?)?))
    } else if obj.contains_key("blocks") {
        Ok(Document::Nhsdp(nhsdp_from_doc(serde_json::from_value(
            value,
        )?)?))
    } else if obj.contains_key("rows") {
        Ok(Document::Nhslr(nhslr_from_doc(serde_json::from_value(
            value,
        )?)?))
    } else {
        Err(malformed("document", "not an NHSLR, NHSDP or PDA document"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampledDoc {
    pub count: usize,
    pub seed: u64,
}

/// `"exhaustive"`, `{"sampled": {...}}` or explicit 1-based vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DemandsDoc {
    Keyword(String),
    Sampled { sampled: SampledDoc },
    Explicit(Vec<Vec<u64>>),
}

impl DemandsDoc {
    pub fn to_mode(&self) -> Result<DemandMode> {
        match self {
            DemandsDoc::Keyword(k) if k == "exhaustive" => Ok(DemandMode::Exhaustive),
            DemandsDoc::Keyword(k) => Err(param(format!("unknown demand mode {k:?}"))),
            DemandsDoc::Sampled { sampled } => Ok(DemandMode::Sampled {
                count: sampled.count,
                seed: sampled.seed,
            }),
            DemandsDoc::Explicit(list) => list
                .iter()
                .map(|d| {
                    d.iter()
                        .map(|&n| {
                            n.checked_sub(1)
                                .map(|n| n as usize)
                                .ok_or_else(|| param("file numbers are 1-based"))
                        })
                        .collect()
                })
                .collect::<Result<_>>()
                .map(DemandMode::Explicit),
        }
    }
}

/// Simulation config file. Omitted fields take the command-line defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfigDoc {
    pub pda: String,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub files: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub packet_bytes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub demands: Option<DemandsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_users: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

pub fn simulation_config_from_json(s: &str) -> Result<SimulationConfigDoc> {
    let doc: SimulationConfigDoc = serde_json::from_str(s)?;
    if let Some(g) = &doc.generator {
        if g != GENERATOR_ID {
            return Err(param(format!(
                "generator {g:?} is not supported; expected {GENERATOR_ID:?}"
            )));
        }
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::tests::{z7_rectangle, golden};
    use crate::pda::{pda_from_nhslr, verify_pda};

    #[test]
    fn nhslr_round_trip() {
        let d = z7_rectangle();
        let s = nhslr_to_json(&d);
        assert_eq!(
            s,
            "{\"v\":7,\"g\":3,\"b\":4,\"rows\":[[1,2,3,4],[2,1,4,6],[4,5,2,1]]}\n"
        );
        assert_eq!(nhslr_from_json(&s).unwrap(), d);
        assert!(nhslr_from_json("{\"v\":7,\"g\":2,\"b\":4,\"rows\":[[1,2,3,4]]}").is_err());
        assert!(nhslr_from_json("{\"v\":8,\"g\":1,\"b\":1,\"rows\":[[1]]}").is_err());
    }

    #[test]
    fn nhsdp_round_trip() {
        let p = Nhsdp::new(Modulus::new(7).unwrap(), vec![vec![1, 2, 4]]).unwrap();
        let s = nhsdp_to_json(&p);
        assert_eq!(s, "{\"v\":7,\"g\":3,\"blocks\":[[1,2,4]]}\n");
        assert_eq!(nhsdp_from_json(&s).unwrap(), p);
    }

    #[test]
    fn pda_round_trip() {
        let g = golden();
        let s = pda_to_json(&g);
        assert!(s.starts_with("{\"K\":4,\"F\":4,\"Z\":2,\"S\":4,\"rows\":[[\"*\",\"*\",1,4],"));
        assert_eq!(pda_from_json(&s).unwrap(), g);

        let p = pda_from_nhslr(&z7_rectangle()).unwrap();
        let s = pda_to_json(&p);
        assert!(s.contains("\"pair_labels\":[[null,[1,1],"));
        let back = pda_from_json(&s).unwrap();
        assert_eq!(back, p);
        assert!(verify_pda(&back).pass);
    }

    #[test]
    fn bad_cells_are_rejected() {
        assert!(pda_from_json("{\"K\":1,\"F\":1,\"Z\":1,\"S\":0,\"rows\":[[\"x\"]]}").is_err());
        assert!(pda_from_json("{\"K\":2,\"F\":1,\"Z\":1,\"S\":0,\"rows\":[[\"*\"]]}").is_err());
    }

    #[test]
    fn documents_are_detected() {
        assert!(matches!(
            parse_document(&pda_to_json(&golden())),
            Ok(Document::Pda(_))
        ));
        assert!(matches!(
            parse_document(&nhslr_to_json(&z7_rectangle())),
            Ok(Document::Nhslr(_))
        ));
        assert!(matches!(
            parse_document("{\"v\":7,\"g\":1,\"blocks\":[[1]]}"),
            Ok(Document::Nhsdp(_))
        ));
        assert!(parse_document("[1]").is_err());
        assert!(parse_document("{\"x\":1}").is_err());
    }

    #[test]
    fn simulation_configs() {
        let c = simulation_config_from_json(
            "{\"pda\":\"p.json\",\"N\":7,\"packet_bytes\":32,\"seed\":3,\"demands\":{\"sampled\":{\"count\":5,\"seed\":9}}}",
        )
        .unwrap();
        assert_eq!(
            c.demands.unwrap().to_mode().unwrap(),
            DemandMode::Sampled { count: 5, seed: 9 }
        );
        let c = simulation_config_from_json("{\"pda\":\"p\",\"demands\":\"exhaustive\"}").unwrap();
        assert_eq!(
            c.demands.unwrap().to_mode().unwrap(),
            DemandMode::Exhaustive
        );
        let c = simulation_config_from_json("{\"pda\":\"p\",\"demands\":[[1,2],[2,2]]}").unwrap();
        assert_eq!(
            c.demands.unwrap().to_mode().unwrap(),
            DemandMode::Explicit(vec![vec![0, 1], vec![1, 1]])
        );
        let c = simulation_config_from_json("{\"pda\":\"p\",\"demands\":\"all\"}").unwrap();
        assert!(c.demands.unwrap().to_mode().is_err());
        assert!(simulation_config_from_json("{\"pda\":\"p\",\"generator\":\"xorshift\"}").is_err());
        assert!(simulation_config_from_json("{\"pda\":\"p\",\"bogus\":1}").is_err());
    }
}

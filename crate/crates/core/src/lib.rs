//! Coded caching placement delivery arrays from non-half-sum Latin
//! rectangles.
//!
//! The pipeline runs modular arithmetic ([`znum`]) into NHSLR construction
//! and verification ([`nhslr`], [`nhsdp`]), PDA generation ([`pda`]), a
//! byte-level delivery simulator ([`sim`]) and the scheme comparison
//! calculators ([`compare`]).

pub mod compare;
pub mod docs;
pub mod error;
pub mod nhsdp;
pub mod nhslr;
pub mod params;
pub mod pda;
pub mod roots;
pub mod scalar;
pub mod sim;
pub mod znum;

pub use compare::{SchemePoint, SchemeRequest};
pub use error::{Error, Result};
pub use nhsdp::{enumerate_nhsdps, nhsdp_to_nhslr, verify_nhsdp, Nhsdp, NhsdpReport};
pub use nhslr::{
    axb_integer_matrix, construct_axb, optimize_closed_form, optimize_exhaustive, scheme_params,
    union_size, verify_nhslr, AxbSpec, ModulusChoice, Nhslr, NhslrReport,
};
pub use params::SchemeParams;
pub use pda::{conjugate, mn_pda, pad_even_k, pda_from_nhslr, verify_pda, Cell, Pda, PdaReport};
pub use scalar::Scalar;
pub use znum::{half_sum, reduce, Modulus, Residue};

/// Exact ratio of two counts.
pub type Rational = num_rational::Ratio<u64>;

/// Calculator output with exact memory ratio and load.
pub type ExactPoint = SchemePoint<num_rational::BigRational>;

/// Calculator output for plotting.
pub type FloatPoint = SchemePoint<f64>;

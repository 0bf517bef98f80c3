//! Exact modified supertraces, modified superdimensions and invariant-tensor
//! forms for the type I Lie superalgebras `sl(m|n)` and `osp(2|2n)`.

pub mod exactnum;
pub mod linalg;
pub mod par;
pub mod superlin;
pub mod rootdata;
pub mod repmod;
pub mod mtrace;
pub mod invtensor;
pub mod report;
pub mod structural;

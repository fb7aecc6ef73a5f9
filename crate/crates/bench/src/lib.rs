//! Inputs shared by the benchmarks.

use eids::{DetVariety, MonomialOrder, PolyMatrix, Ring, Q};

pub fn variety(vars: &[&str], rows: &[Vec<&str>], t: usize) -> DetVariety<Q> {
    let ring = Ring::new(vars, MonomialOrder::DegRevLex).expect("valid ring");
    DetVariety::build(PolyMatrix::parse(&ring, rows).expect("valid matrix"), t).expect("determinantal")
}

/// The 2x3 surface in four variables with chain `[3, 4, 3]`.
pub fn surface() -> DetVariety<Q> {
    variety(&["x", "y", "z", "w"], &[vec!["z", "y + w", "x"], vec!["w", "x", "y"]], 2)
}

/// A 3-fold in five variables.
pub fn threefold() -> DetVariety<Q> {
    variety(&["x", "y", "z", "w", "v"], &[vec!["x", "y", "z"], vec!["w", "v", "x^2 + y^2"]], 2)
}

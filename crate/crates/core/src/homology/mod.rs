//! Integer homology of simplicial complexes and the orbihedral Euler characteristic.

mod chain;
mod snf;

pub use chain::{euler_characteristic, homology, relative_homology, ChainComplex, HomologyResult, Simplex};
pub use snf::{dense_snf, invariant_factors, rank, SparseMatrix};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coxeter::{CoxeterMatrix, SphericalPoset};

/// `Σ_{T ∈ 𝒮} (−1)^{|T|} / |W_T|`, exactly.
pub fn orbihedral_euler(matrix: &CoxeterMatrix) -> BigRational {
    orbihedral_euler_of(&SphericalPoset::new(matrix))
}

pub fn orbihedral_euler_of(poset: &SphericalPoset) -> BigRational {
    poset
        .subsets()
        .iter()
        .map(|&t| {
            let order = poset.order_of(t).expect("listed subset");
            let sign = if t.len() % 2 == 0 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), BigInt::from(order))
        })
        .sum()
}

/// `p/q` rendering used in reports (`p` alone when `q = 1`).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn dihedral_and_square() {
        let a = fixtures::load(fixtures::SYS_A);
        // 1 − 2/2 + 1/8
        assert_eq!(format_rational(&orbihedral_euler(&a)), "1/8");
        let b = fixtures::load(fixtures::SYS_B);
        assert_eq!(format_rational(&orbihedral_euler(&b)), "-1/4");
    }
}

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::snf::{invariant_factors, SparseMatrix};
use crate::{Error, Result};

/// A simplex as a strictly increasing list of vertex ids.
pub type Simplex = Vec<u32>;

/// Simplicial chain complex with integer coefficients. Degree `k` has basis the
/// `k`-simplices in lexicographic order; the boundary of `[v₀ … v_k]` is
/// `Σ (−1)^i [v₀ … v̂_i … v_k]`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    basis: Vec<Vec<Simplex>>,
    /// `boundaries[k]: C_k → C_{k−1}`; `boundaries[0]` is the zero map to nothing.
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Chain complex of a simplicial complex given by all of its simplices.
    /// Fails if a face of some simplex is missing.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(simplices: I) -> Result<Self> {
        Self::quotient(simplices, std::iter::empty())
    }

    /// Chains of `X` modulo chains of the subcomplex `A`.
    pub fn quotient<I, J>(x: I, a: J) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
        J: IntoIterator<Item = Simplex>,
    {
        let all: BTreeSet<Simplex> = x.into_iter().map(normalize).collect::<Result<_>>()?;
        let sub: BTreeSet<Simplex> = a.into_iter().map(normalize).collect::<Result<_>>()?;
        for s in &all {
            if let Some(f) = missing_face(s, &all) {
                return Err(Error::NotSubcomplex(format!("face {f:?} of {s:?} is missing")));
            }
        }
        for s in &sub {
            if !all.contains(s) {
                return Err(Error::NotSubcomplex(format!("{s:?} is not a simplex of the ambient complex")));
            }
            if let Some(f) = missing_face(s, &sub) {
                return Err(Error::NotSubcomplex(format!("face {f:?} of {s:?} is missing from the subcomplex")));
            }
        }
        let top = all.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut basis: Vec<Vec<Simplex>> = vec![Vec::new(); top];
        for s in all.into_iter().filter(|s| !sub.contains(s)) {
            basis[s.len() - 1].push(s);
        }
        while basis.last().is_some_and(|b| b.is_empty()) {
            basis.pop();
        }
        let positions: Vec<HashMap<&Simplex, u32>> = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, s)| (s, i as u32)).collect())
            .collect();
        let mut boundaries = Vec::with_capacity(basis.len());
        for (k, b) in basis.iter().enumerate() {
            if k == 0 {
                boundaries.push(SparseMatrix::zero(0, b.len()));
                continue;
            }
            let mut m = SparseMatrix::zero(basis[k - 1].len(), b.len());
            for (j, s) in b.iter().enumerate() {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    // Faces inside the subcomplex vanish in the quotient.
                    if let Some(&row) = positions[k - 1].get(&f) {
                        m.cols[j].push((row, if i % 2 == 0 { 1 } else { -1 }));
                    }
                }
            }
            boundaries.push(m);
        }
        Ok(ChainComplex { basis, boundaries })
    }

    /// Number of basis chains per degree.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.basis.len().checked_sub(1)
    }

    pub fn basis(&self, k: usize) -> &[Simplex] {
        self.basis.get(k).map_or(&[], Vec::as_slice)
    }

    /// `∂_k`, or an empty matrix beyond the top degree.
    pub fn boundary(&self, k: usize) -> SparseMatrix {
        match self.boundaries.get(k) {
            Some(m) => m.clone(),
            None => SparseMatrix::zero(self.basis(k.wrapping_sub(1)).len(), self.basis(k).len()),
        }
    }

    /// `∂_{k−1} ∘ ∂_k = 0` in every degree.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.boundaries.len()).all(|k| self.boundaries[k - 1].compose_is_zero(&self.boundaries[k]))
    }

    pub fn len(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn normalize(mut s: Simplex) -> Result<Simplex> {
    s.sort_unstable();
    let n = s.len();
    s.dedup();
    if s.is_empty() || s.len() != n {
        return Err(Error::NotSubcomplex(format!("degenerate simplex {s:?}")));
    }
    Ok(s)
}

fn missing_face(s: &Simplex, set: &BTreeSet<Simplex>) -> Option<Simplex> {
    if s.len() < 2 {
        return None;
    }
    (0..s.len()).find_map(|i| {
        let mut f = s.clone();
        f.remove(i);
        (!set.contains(&f)).then_some(f)
    })
}

fn big_strings<S: Serializer>(v: &[Vec<BigInt>], ser: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = v.iter().map(|d| d.iter().map(BigInt::to_string).collect()).collect();
    strings.serialize(ser)
}

/// Betti numbers and torsion coefficients per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    #[serde(serialize_with = "big_strings")]
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    pub fn is_zero(&self) -> bool {
        self.betti.iter().all(|&b| b == 0) && self.torsion.iter().all(Vec::is_empty)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

/// Integer homology via Smith normal form of every boundary map.
pub fn homology(x: &ChainComplex) -> HomologyResult {
    let dims = x.dims();
    let factors: Vec<Vec<BigInt>> = (0..=dims.len()).map(|k| invariant_factors(&x.boundary(k))).collect();
    let betti = (0..dims.len()).map(|k| dims[k] - factors[k].len() - factors[k + 1].len()).collect();
    let torsion = (0..dims.len())
        .map(|k| factors[k + 1].iter().filter(|d| !d.is_one()).cloned().collect())
        .collect();
    HomologyResult { betti, torsion }
}

/// Homology of `(X, A)` through the quotient complex `C(X)/C(A)`.
pub fn relative_homology<I, J>(x: I, a: J) -> Result<HomologyResult>
where
    I: IntoIterator<Item = Simplex>,
    J: IntoIterator<Item = Simplex>,
{
    Ok(homology(&ChainComplex::quotient(x, a)?))
}

/// Alternating sum of chain ranks.
pub fn euler_characteristic(x: &ChainComplex) -> i64 {
    x.dims().iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

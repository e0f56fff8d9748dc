//! Finite-type recognition for special subgroups, by classifying the components of
//! the Coxeter diagram.

use std::collections::HashMap;

use serde::Serialize;

use super::matrix::{cmp_gen_sets, CoxeterMatrix, Gen, GenSet, Order};
use crate::error::{Error, Result};

/// Finite irreducible Coxeter types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    /// Dihedral `I₂(m)`, including `m = 3` (`A₂`), `4` (`B₂`), `6` (`G₂`).
    I2(u32),
}

impl FiniteType {
    pub fn order(self) -> Option<u128> {
        let fact = |n: usize| (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
        match self {
            FiniteType::A(n) => fact(n + 1),
            FiniteType::B(n) => fact(n)?.checked_mul(1u128.checked_shl(n as u32)?),
            FiniteType::D(n) => fact(n)?.checked_mul(1u128.checked_shl(n as u32 - 1)?),
            FiniteType::E6 => Some(51_840),
            FiniteType::E7 => Some(2_903_040),
            FiniteType::E8 => Some(696_729_600),
            FiniteType::F4 => Some(1_152),
            FiniteType::H3 => Some(120),
            FiniteType::H4 => Some(14_400),
            FiniteType::I2(m) => Some(2 * m as u128),
        }
    }

    /// Length of the longest element (number of reflections).
    pub fn longest_length(self) -> usize {
        match self {
            FiniteType::A(n) => n * (n + 1) / 2,
            FiniteType::B(n) => n * n,
            FiniteType::D(n) => n * (n - 1),
            FiniteType::E6 => 36,
            FiniteType::E7 => 63,
            FiniteType::E8 => 120,
            FiniteType::F4 => 24,
            FiniteType::H3 => 15,
            FiniteType::H4 => 60,
            FiniteType::I2(m) => m as usize,
        }
    }
}

/// Connected components of the Coxeter diagram restricted to `set` (edges: `m ≥ 3`).
pub fn diagram_components(matrix: &CoxeterMatrix, set: GenSet) -> Vec<GenSet> {
    let mut remaining = set;
    let mut comps = Vec::new();
    while let Some(start) = remaining.iter().next() {
        let mut comp = GenSet::singleton(start);
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for b in set.iter() {
                if !comp.contains(b) && matrix.m(a, b) != Order::Finite(2) && a != b {
                    comp = comp.with(b);
                    stack.push(b);
                }
            }
        }
        remaining = remaining.difference(comp);
        comps.push(comp);
    }
    comps
}

/// Classify a connected diagram component; `None` means `W_T` is infinite.
pub fn classify_component(matrix: &CoxeterMatrix, comp: GenSet) -> Option<FiniteType> {
    let nodes: Vec<Gen> = comp.iter().collect();
    let n = nodes.len();
    if n == 1 {
        return Some(FiniteType::A(1));
    }
    let mut edges: Vec<(Gen, Gen, u32)> = Vec::new();
    for (i, &a) in nodes.iter().enumerate() {
        for &b in &nodes[i + 1..] {
            match matrix.m(a, b) {
                Order::Infinite => return None,
                Order::Finite(2) => {}
                Order::Finite(m) => edges.push((a, b, m)),
            }
        }
    }
    if n == 2 {
        return Some(FiniteType::I2(edges[0].2));
    }
    // Finite types of rank ≥ 3 are trees.
    if edges.len() != n - 1 {
        return None;
    }
    let degree = |v: Gen| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    let heavy: Vec<&(Gen, Gen, u32)> = edges.iter().filter(|e| e.2 != 3).collect();
    let max_deg = nodes.iter().map(|&v| degree(v)).max().unwrap_or(0);
    match heavy.len() {
        0 => {
            if max_deg <= 2 {
                return Some(FiniteType::A(n));
            }
            let branch: Vec<Gen> = nodes.iter().copied().filter(|&v| degree(v) >= 3).collect();
            if branch.len() != 1 || degree(branch[0]) != 3 {
                return None;
            }
            let mut arms = arm_lengths(&edges, branch[0]);
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => Some(FiniteType::D(k + 3)),
                [1, 2, 2] => Some(FiniteType::E6),
                [1, 2, 3] => Some(FiniteType::E7),
                [1, 2, 4] => Some(FiniteType::E8),
                _ => None,
            }
        }
        1 => {
            if max_deg > 2 {
                return None;
            }
            let (a, b, m) = *heavy[0];
            let at_end = degree(a) == 1 || degree(b) == 1;
            match m {
                4 if at_end => Some(FiniteType::B(n)),
                4 if n == 4 => Some(FiniteType::F4),
                5 if at_end && n == 3 => Some(FiniteType::H3),
                5 if at_end && n == 4 => Some(FiniteType::H4),
                _ => None,
            }
        }
        _ => None,
    }
}

fn arm_lengths(edges: &[(Gen, Gen, u32)], center: Gen) -> Vec<usize> {
    let neighbors = |v: Gen| -> Vec<Gen> {
        edges
            .iter()
            .filter_map(|e| if e.0 == v { Some(e.1) } else if e.1 == v { Some(e.0) } else { None })
            .collect()
    };
    neighbors(center)
        .into_iter()
        .map(|start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            loop {
                let next: Vec<Gen> = neighbors(cur).into_iter().filter(|&x| x != prev).collect();
                match next.as_slice() {
                    [n] => {
                        prev = cur;
                        cur = *n;
                        len += 1;
                    }
                    _ => return len,
                }
            }
        })
        .collect()
}

/// Types of the components of `set`, or `None` if `W_T` is infinite.
pub fn finite_types(matrix: &CoxeterMatrix, set: GenSet) -> Option<Vec<FiniteType>> {
    diagram_components(matrix, set).into_iter().map(|c| classify_component(matrix, c)).collect()
}

pub fn is_spherical(matrix: &CoxeterMatrix, set: GenSet) -> bool {
    finite_types(matrix, set).is_some()
}

/// `|W_T|` for spherical `T`.
pub fn spherical_order(matrix: &CoxeterMatrix, set: GenSet) -> Result<u128> {
    let types = finite_types(matrix, set).ok_or_else(|| Error::NotSpherical(matrix.format_set(set)))?;
    types
        .iter()
        .try_fold(1u128, |acc, t| acc.checked_mul(t.order()?))
        .ok_or_else(|| Error::OrderOverflow(matrix.format_set(set)))
}

/// Length of the longest element of `W_T` for spherical `T`.
pub fn longest_length(matrix: &CoxeterMatrix, set: GenSet) -> Result<usize> {
    let types = finite_types(matrix, set).ok_or_else(|| Error::NotSpherical(matrix.format_set(set)))?;
    Ok(types.iter().map(|t| t.longest_length()).sum())
}

/// The poset of spherical subsets, ordered by `(|T|, input order)`.
#[derive(Clone, Debug)]
pub struct SphericalPoset {
    subsets: Vec<GenSet>,
    orders: Vec<u128>,
    longest: Vec<usize>,
    index: HashMap<GenSet, usize>,
}

impl SphericalPoset {
    pub fn new(matrix: &CoxeterMatrix) -> Self {
        // Grow upward from ∅; every spherical set is reached since the family is
        // downward closed.
        let mut found = vec![GenSet::EMPTY];
        let mut seen: std::collections::HashSet<GenSet> = found.iter().copied().collect();
        let mut frontier = vec![GenSet::EMPTY];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for t in &frontier {
                for g in matrix.all().difference(*t).iter() {
                    let bigger = t.with(g);
                    if seen.contains(&bigger) {
                        continue;
                    }
                    seen.insert(bigger);
                    if is_spherical(matrix, bigger) {
                        next.push(bigger);
                    }
                }
            }
            found.extend(next.iter().copied());
            frontier = next;
        }
        found.sort_by(cmp_gen_sets);
        let orders = found
            .iter()
            .map(|&t| spherical_order(matrix, t).unwrap_or(u128::MAX))
            .collect();
        let longest = found.iter().map(|&t| longest_length(matrix, t).unwrap_or(0)).collect();
        let index = found.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        SphericalPoset { subsets: found, orders, longest, index }
    }

    pub fn subsets(&self) -> &[GenSet] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn contains(&self, t: GenSet) -> bool {
        self.index.contains_key(&t)
    }

    pub fn position(&self, t: GenSet) -> Option<usize> {
        self.index.get(&t).copied()
    }

    pub fn order_of(&self, t: GenSet) -> Option<u128> {
        self.position(t).map(|i| self.orders[i])
    }

    pub fn longest_of(&self, t: GenSet) -> Option<usize> {
        self.position(t).map(|i| self.longest[i])
    }

    /// Maximum longest-element length over all spherical subsets.
    pub fn depth(&self) -> usize {
        self.longest.iter().copied().max().unwrap_or(0)
    }

    pub fn dimension(&self) -> usize {
        self.subsets.iter().map(|t| t.len()).max().unwrap_or(0)
    }

    /// `𝒮(U)`: spherical subsets of `u`.
    pub fn within(&self, u: GenSet) -> impl Iterator<Item = GenSet> + '_ {
        self.subsets.iter().copied().filter(move |t| t.is_subset(u))
    }

    /// `𝒮_{≥T}`: spherical supersets of `t`.
    pub fn above(&self, t: GenSet) -> impl Iterator<Item = GenSet> + '_ {
        self.subsets.iter().copied().filter(move |x| t.is_subset(*x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(text: &str) -> CoxeterMatrix {
        CoxeterMatrix::parse(text).unwrap()
    }

    #[test]
    fn dihedral_orders() {
        let a = mat("generators: s t\nm: s t 4");
        assert!(is_spherical(&a, a.all()));
        assert_eq!(spherical_order(&a, a.all()).unwrap(), 8);
        assert_eq!(spherical_order(&a, GenSet::EMPTY).unwrap(), 1);
        let inf = mat("generators: s t");
        assert!(!is_spherical(&inf, inf.all()));
        assert!(spherical_order(&inf, inf.all()).is_err());
    }

    #[test]
    fn infinite_pair_inside_triple() {
        let b = mat("generators: t s r q\nm: t s 4\nm: s r 2\nm: r q 4\nm: q t 2");
        let tsr = b.gen_set(&["t", "s", "r"]).unwrap();
        assert!(!is_spherical(&b, tsr));
    }

    #[test]
    fn classical_and_exceptional() {
        let a3 = mat("generators: a b c\nm: a b 3\nm: b c 3\nm: a c 2");
        assert_eq!(spherical_order(&a3, a3.all()).unwrap(), 24);
        assert_eq!(longest_length(&a3, a3.all()).unwrap(), 6);
        let b3 = mat("generators: a b c\nm: a b 4\nm: b c 3\nm: a c 2");
        assert_eq!(spherical_order(&b3, b3.all()).unwrap(), 48);
        let h3 = mat("generators: a b c\nm: a b 5\nm: b c 3\nm: a c 2");
        assert_eq!(spherical_order(&h3, h3.all()).unwrap(), 120);
        let f4 = mat("generators: a b c d\nm: a b 3\nm: b c 4\nm: c d 3\nm: a c 2\nm: a d 2\nm: b d 2");
        assert_eq!(spherical_order(&f4, f4.all()).unwrap(), 1152);
        let d4 = mat("generators: a b c d\nm: a b 3\nm: a c 3\nm: a d 3\nm: b c 2\nm: b d 2\nm: c d 2");
        assert_eq!(spherical_order(&d4, d4.all()).unwrap(), 192);
        // affine Ã₂ and the (2,4,4) triangle group are infinite
        let a2t = mat("generators: a b c\nm: a b 3\nm: b c 3\nm: a c 3");
        assert!(!is_spherical(&a2t, a2t.all()));
        let t244 = mat("generators: a b c\nm: a b 2\nm: b c 4\nm: a c 4");
        assert!(!is_spherical(&t244, t244.all()));
        // two 4-labels in a path: affine C̃₂
        let c2 = mat("generators: a b c\nm: a b 4\nm: b c 4\nm: a c 2");
        assert!(!is_spherical(&c2, c2.all()));
        // G₂ cannot be extended
        let g = mat("generators: a b c\nm: a b 6\nm: b c 3\nm: a c 2");
        assert!(!is_spherical(&g, g.all()));
    }

    #[test]
    fn poset_sizes() {
        let a = mat("generators: s t\nm: s t 4");
        assert_eq!(SphericalPoset::new(&a).len(), 4);
        let b = mat("generators: t s r q\nm: t s 4\nm: s r 2\nm: r q 4\nm: q t 2");
        let p = SphericalPoset::new(&b);
        assert_eq!(p.len(), 9);
        assert_eq!(p.subsets().iter().filter(|t| t.len() == 2).count(), 4);
        assert_eq!(p.depth(), 4);
    }

    #[test]
    fn poset_is_downward_closed() {
        let b = mat("generators: t s r q\nm: t s 4\nm: s r 2\nm: r q 4\nm: q t 2");
        let p = SphericalPoset::new(&b);
        for &t in p.subsets() {
            for sub in t.subsets() {
                assert!(p.contains(sub));
            }
        }
    }
}

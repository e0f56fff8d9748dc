//! Coxeter matrices, generator sets and the `.cox` text format.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a generator in input order.
pub type Gen = u8;

/// An entry `m_st` of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// A subset of the generators, stored as a bitmask. Iteration follows input order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(pub u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn singleton(g: Gen) -> Self {
        GenSet(1u64 << g)
    }

    /// The set `{0, 1, …, n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << n) - 1)
        }
    }

    pub fn from_gens<I: IntoIterator<Item = Gen>>(gens: I) -> Self {
        gens.into_iter().fold(GenSet::EMPTY, |acc, g| acc.with(g))
    }

    pub fn contains(self, g: Gen) -> bool {
        self.0 >> g & 1 == 1
    }

    pub fn with(self, g: Gen) -> Self {
        GenSet(self.0 | 1u64 << g)
    }

    pub fn without(self, g: Gen) -> Self {
        GenSet(self.0 & !(1u64 << g))
    }

    pub fn union(self, other: GenSet) -> Self {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> Self {
        GenSet(self.0 & other.0)
    }

    pub fn difference(self, other: GenSet) -> Self {
        GenSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Gen> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let g = bits.trailing_zeros() as Gen;
                bits &= bits - 1;
                Some(g)
            }
        })
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = GenSet> {
        // Standard submask enumeration, run in reverse so small subsets come last.
        let full = self.0;
        let mut sub = full;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = GenSet(sub);
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & full;
            }
            Some(out)
        })
    }

    /// Ordering key: size first, then the sorted generator indices.
    pub fn shortlex_key(self) -> (usize, Vec<Gen>) {
        (self.len(), self.iter().collect())
    }
}

impl FromIterator<Gen> for GenSet {
    fn from_iter<I: IntoIterator<Item = Gen>>(iter: I) -> Self {
        GenSet::from_gens(iter)
    }
}

/// Compare generator sets by size, then lexicographically on input order.
pub fn cmp_gen_sets(a: &GenSet, b: &GenSet) -> std::cmp::Ordering {
    a.shortlex_key().cmp(&b.shortlex_key())
}

/// A Coxeter matrix on named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    names: Vec<String>,
    orders: Vec<Order>,
}

impl CoxeterMatrix {
    /// Build a matrix from names and the off-diagonal entries; unlisted pairs are `∞`.
    pub fn new(names: Vec<String>, entries: &[(Gen, Gen, Order)]) -> Result<Self> {
        let n = names.len();
        if n > 64 {
            return Err(Error::TooManyGenerators(n));
        }
        let mut orders = vec![Order::Infinite; n * n];
        for i in 0..n {
            orders[i * n + i] = Order::Finite(1);
        }
        let mut seen = vec![false; n * n];
        for &(a, b, m) in entries {
            let (a, b) = (a as usize, b as usize);
            if a >= n || b >= n {
                return Err(Error::UnknownGenerator(format!("#{}", a.max(b))));
            }
            if a == b {
                if m != Order::Finite(1) {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("diagonal entry for `{}` must be 1", names[a]),
                    });
                }
                continue;
            }
            if let Order::Finite(k) = m {
                if k < 2 {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("m({}, {}) = {k} must be at least 2", names[a], names[b]),
                    });
                }
            }
            if seen[a * n + b] && orders[a * n + b] != m {
                return Err(Error::Conflict(names[a].clone(), names[b].clone()));
            }
            seen[a * n + b] = true;
            seen[b * n + a] = true;
            orders[a * n + b] = m;
            orders[b * n + a] = m;
        }
        Ok(CoxeterMatrix { names, orders })
    }

    /// Parse the line-oriented `.cox` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("expected `key: value`, got `{line}`"),
            })?;
            match key.trim() {
                "generators" => {
                    if names.is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "duplicate `generators` line".into(),
                        });
                    }
                    let list: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
                    if list.is_empty() {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "empty generator list".into(),
                        });
                    }
                    for (i, g) in list.iter().enumerate() {
                        if list[..i].contains(g) {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: format!("generator `{g}` listed twice"),
                            });
                        }
                    }
                    if list.len() > 64 {
                        return Err(Error::TooManyGenerators(list.len()));
                    }
                    names = Some(list);
                }
                "m" => {
                    let names = names.as_ref().ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: "`m:` entry before `generators:` line".into(),
                    })?;
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    if toks.len() != 3 {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("expected `m: a b k`, got `{line}`"),
                        });
                    }
                    let lookup = |tok: &str| -> Result<Gen> {
                        names
                            .iter()
                            .position(|n| n == tok)
                            .map(|p| p as Gen)
                            .ok_or_else(|| Error::UnknownGenerator(tok.to_owned()))
                    };
                    let a = lookup(toks[0])?;
                    let b = lookup(toks[1])?;
                    let m = if toks[2] == "inf" {
                        Order::Infinite
                    } else {
                        let k: u32 = toks[2].parse().map_err(|_| Error::Parse {
                            line: line_no,
                            msg: format!("bad order `{}`", toks[2]),
                        })?;
                        Order::Finite(k)
                    };
                    if a == b {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("diagonal entry for `{}` cannot be set", toks[0]),
                        });
                    }
                    if let Order::Finite(k) = m {
                        if k < 2 {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: format!("m({}, {}) = {k} must be at least 2", toks[0], toks[1]),
                            });
                        }
                    }
                    entries.push((a, b, m));
                }
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        let names = names.ok_or(Error::Parse {
            line: 0,
            msg: "missing `generators:` line".into(),
        })?;
        CoxeterMatrix::new(names, &entries)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }

    pub fn generator(&self, name: &str) -> Result<Gen> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|p| p as Gen)
            .ok_or_else(|| Error::UnknownGenerator(name.to_owned()))
    }

    pub fn gen_set(&self, names: &[&str]) -> Result<GenSet> {
        names.iter().map(|n| self.generator(n)).collect::<Result<Vec<_>>>().map(GenSet::from_gens)
    }

    pub fn all(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    pub fn m(&self, s: Gen, t: Gen) -> Order {
        self.orders[s as usize * self.rank() + t as usize]
    }

    /// True iff every finite off-diagonal entry is even.
    pub fn is_even(&self) -> bool {
        self.first_odd_pair().is_none()
    }

    pub(crate) fn first_odd_pair(&self) -> Option<(Gen, Gen, u32)> {
        let n = self.rank() as Gen;
        for s in 0..n {
            for t in s + 1..n {
                if let Order::Finite(m) = self.m(s, t) {
                    if m % 2 == 1 {
                        return Some((s, t, m));
                    }
                }
            }
        }
        None
    }

    pub(crate) fn require_even(&self) -> Result<()> {
        match self.first_odd_pair() {
            None => Ok(()),
            Some((s, t, m)) => Err(Error::NotEven(self.name(s).into(), self.name(t).into(), m)),
        }
    }

    /// The Coxeter matrix of the special subgroup `W_T`, generators renumbered in order.
    pub fn restrict(&self, set: GenSet) -> CoxeterMatrix {
        let gens: Vec<Gen> = set.iter().collect();
        let names = gens.iter().map(|&g| self.names[g as usize].clone()).collect();
        let mut entries = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for (j, &b) in gens.iter().enumerate().skip(i + 1) {
                entries.push((i as Gen, j as Gen, self.m(a, b)));
            }
        }
        CoxeterMatrix::new(names, &entries).expect("restriction of a valid matrix is valid")
    }

    pub fn format_set(&self, set: GenSet) -> String {
        let parts: Vec<&str> = set.iter().map(|g| self.name(g)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn set_names(&self, set: GenSet) -> Vec<String> {
        set.iter().map(|g| self.name(g).to_owned()).collect()
    }

    pub fn format_word(&self, word: &[Gen]) -> String {
        if word.is_empty() {
            return "e".into();
        }
        word.iter().map(|&g| self.name(g)).collect::<Vec<_>>().join(" ")
    }

    /// Canonical `.cox` rendering: every finite entry listed, in input order.
    pub fn to_cox(&self) -> String {
        let mut out = format!("generators: {}\n", self.names.join(" "));
        let n = self.rank() as Gen;
        for s in 0..n {
            for t in s + 1..n {
                if let Order::Finite(m) = self.m(s, t) {
                    out.push_str(&format!("m: {} {} {m}\n", self.name(s), self.name(t)));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reads_entry() {
        let m = CoxeterMatrix::parse("generators: s t\nm: s t 4").unwrap();
        assert_eq!(m.m(0, 1), Order::Finite(4));
        assert_eq!(m.m(1, 0), Order::Finite(4));
        assert_eq!(m.m(0, 0), Order::Finite(1));
    }

    #[test]
    fn unlisted_pairs_default_to_infinity() {
        let m = CoxeterMatrix::parse("generators: s t r\nm: s t 4").unwrap();
        assert_eq!(m.m(0, 2), Order::Infinite);
        assert_eq!(m.m(1, 2), Order::Infinite);
    }

    #[test]
    fn order_one_off_diagonal_rejected() {
        assert!(matches!(
            CoxeterMatrix::parse("generators: s t\nm: s t 1"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn comments_inf_and_errors() {
        let m = CoxeterMatrix::parse("# hello\ngenerators: s t # two\n\nm: s t inf\n").unwrap();
        assert!(m.m(0, 1).is_infinite());
        assert_eq!(
            CoxeterMatrix::parse("generators: s t\nm: s x 2"),
            Err(Error::UnknownGenerator("x".into()))
        );
        assert_eq!(
            CoxeterMatrix::parse("generators: s t\nm: s t 2\nm: t s 4"),
            Err(Error::Conflict("t".into(), "s".into()))
        );
        // repeating a consistent entry is fine
        assert!(CoxeterMatrix::parse("generators: s t\nm: s t 2\nm: t s 2").is_ok());
        assert!(CoxeterMatrix::parse("generators: s t\nm: s t").is_err());
        assert!(CoxeterMatrix::parse("m: s t 2").is_err());
        assert!(CoxeterMatrix::parse("generators: s t\nm: s t four").is_err());
    }

    #[test]
    fn evenness() {
        assert!(CoxeterMatrix::parse("generators: s t\nm: s t 4").unwrap().is_even());
        assert!(!CoxeterMatrix::parse("generators: s t\nm: s t 3").unwrap().is_even());
        assert!(CoxeterMatrix::parse("generators: s t r").unwrap().is_even());
    }

    #[test]
    fn genset_ops() {
        let a = GenSet::from_gens([0, 2, 5]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert!(GenSet::from_gens([2]).is_subset(a));
        assert_eq!(a.subsets().count(), 8);
        assert_eq!(a.without(2), GenSet::from_gens([0, 5]));
    }

    #[test]
    fn round_trip_through_text() {
        let m = CoxeterMatrix::parse("generators: a b c\nm: a b 6\nm: b c 2").unwrap();
        assert_eq!(CoxeterMatrix::parse(&m.to_cox()).unwrap(), m);
    }
}

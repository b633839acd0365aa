//! Run and gap statistics shared by both constructions.
//!
//! An HNN word contributes its signature, the sequence of stable-letter
//! exponents, and [`run_stats`] counts its maximal constant runs. An amalgam
//! word contributes a [`Mark`] sequence recording where the chosen element
//! `a` and its inverse sit, and [`gap_stats`] counts the odd gaps between
//! consecutive occurrences. Both feed the same parity sum `f`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use serde::{Serialize, Serializer};

/// An exponent in `{+1, -1}`. Serializes as the integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => f.write_str("+1"),
            Sign::Minus => f.write_str("-1"),
        }
    }
}

/// Exponent sequence of the stable letter in a reduced HNN word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Signature(pub Vec<Sign>);

impl Signature {
    pub fn new(entries: Vec<Sign>) -> Self {
        Signature(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Sign] {
        &self.0
    }

    /// Reversed and negated.
    pub fn inverse(&self) -> Signature {
        Signature(self.0.iter().rev().map(|&s| -s).collect())
    }

    /// Cancel the longest suffix `ρ` of `self` against a prefix `ρ⁻¹` of
    /// `other`, returning the concatenation of what is left and `|ρ|`.
    pub fn s_product(&self, other: &Signature) -> (Signature, usize) {
        let mut s = 0;
        while s < self.len() && s < other.len() && self.0[self.len() - 1 - s] == -other.0[s] {
            s += 1;
        }
        let mut out = self.0[..self.len() - s].to_vec();
        out.extend_from_slice(&other.0[s..]);
        (Signature(out), s)
    }

    pub fn run_stats(&self) -> RunStats {
        run_stats(&self.0)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<i8>> for Signature {
    fn from(v: Vec<i8>) -> Self {
        Signature(
            v.into_iter()
                .map(|x| if x > 0 { Sign::Plus } else { Sign::Minus })
                .collect(),
        )
    }
}

pub fn signature_inverse(sig: &Signature) -> Signature {
    sig.inverse()
}

pub fn s_product(a: &Signature, b: &Signature) -> (Signature, usize) {
    a.s_product(b)
}

/// Position marker in the projection of an amalgam special form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Mark {
    Plus,
    Minus,
    Other,
}

/// Counts `p_k`, `m_k`, their difference `d_k`, its parity `r_k`, and
/// `f = Σ r_k`. Only lengths that occur are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunStats {
    pub p: BTreeMap<usize, usize>,
    pub m: BTreeMap<usize, usize>,
    #[serde(skip)]
    pub d: BTreeMap<usize, i64>,
    #[serde(skip)]
    pub r: BTreeMap<usize, u8>,
    pub f: u64,
}

impl RunStats {
    fn from_counts(p: BTreeMap<usize, usize>, m: BTreeMap<usize, usize>) -> Self {
        let mut d = BTreeMap::new();
        for k in p.keys().chain(m.keys()) {
            let pk = p.get(k).copied().unwrap_or(0) as i64;
            let mk = m.get(k).copied().unwrap_or(0) as i64;
            d.insert(*k, pk - mk);
        }
        // nonnegative remainder, so d = -1 has parity 1
        let r: BTreeMap<usize, u8> = d.iter().map(|(&k, &v)| (k, v.rem_euclid(2) as u8)).collect();
        let f = r.values().map(|&x| u64::from(x)).sum();
        RunStats { p, m, d, r, f }
    }

    pub fn p(&self, k: usize) -> usize {
        self.p.get(&k).copied().unwrap_or(0)
    }

    pub fn m(&self, k: usize) -> usize {
        self.m.get(&k).copied().unwrap_or(0)
    }

    pub fn d(&self, k: usize) -> i64 {
        self.d.get(&k).copied().unwrap_or(0)
    }

    pub fn r(&self, k: usize) -> u8 {
        self.r.get(&k).copied().unwrap_or(0)
    }
}

/// Maximal runs: `p(k)` counts runs of `+1` of length exactly `k`, `m(k)`
/// runs of `-1`.
pub fn run_stats(sig: &[Sign]) -> RunStats {
    let mut p = BTreeMap::new();
    let mut m = BTreeMap::new();
    let mut i = 0;
    while i < sig.len() {
        let s = sig[i];
        let mut j = i;
        while j < sig.len() && sig[j] == s {
            j += 1;
        }
        let target = if s == Sign::Plus { &mut p } else { &mut m };
        *target.entry(j - i).or_insert(0) += 1;
        i = j;
    }
    RunStats::from_counts(p, m)
}

/// Gaps between consecutive `Plus` marks (and, independently, consecutive
/// `Minus` marks). An interior of odd length `2k - 1` counts toward `k`;
/// even interiors are ignored. Interiors may contain the opposite mark.
pub fn gap_stats(marks: &[Mark]) -> RunStats {
    fn scan(marks: &[Mark], which: Mark) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        let mut last: Option<usize> = None;
        for (i, &mk) in marks.iter().enumerate() {
            if mk != which {
                continue;
            }
            if let Some(prev) = last {
                let interior = i - prev - 1;
                if interior % 2 == 1 {
                    *counts.entry(interior.div_ceil(2)).or_insert(0) += 1;
                }
            }
            last = Some(i);
        }
        counts
    }
    RunStats::from_counts(scan(marks, Mark::Plus), scan(marks, Mark::Minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(v: &[i8]) -> Signature {
        Signature::from(v.to_vec())
    }

    // Independent decomposition: split at every sign change by index arithmetic.
    fn brute_runs(v: &[i8]) -> (BTreeMap<usize, usize>, BTreeMap<usize, usize>) {
        let mut p = BTreeMap::new();
        let mut m = BTreeMap::new();
        let mut boundaries = vec![0];
        for i in 1..v.len() {
            if v[i] != v[i - 1] {
                boundaries.push(i);
            }
        }
        boundaries.push(v.len());
        for w in boundaries.windows(2) {
            if w[1] > w[0] {
                let len = w[1] - w[0];
                if v[w[0]] > 0 {
                    *p.entry(len).or_insert(0) += 1;
                } else {
                    *m.entry(len).or_insert(0) += 1;
                }
            }
        }
        (p, m)
    }

    #[test]
    fn empty_signature() {
        assert_eq!(sig(&[]).run_stats().f, 0);
    }

    #[test]
    fn mixed_runs() {
        let v = [1, 1, -1, 1];
        let (bp, bm) = brute_runs(&v);
        let st = sig(&v).run_stats();
        assert_eq!(st.p, bp);
        assert_eq!(st.m, bm);
        assert_eq!((st.p(1), st.p(2), st.m(1)), (1, 1, 1));
        assert_eq!((st.d(1), st.d(2)), (0, 1));
        assert_eq!(st.f, 1);
    }

    #[test]
    fn staircase_runs() {
        let v = [1, -1, 1, 1, -1, 1, 1, 1];
        let (bp, bm) = brute_runs(&v);
        let st = sig(&v).run_stats();
        assert_eq!(st.p, bp);
        assert_eq!(st.m, bm);
        assert_eq!((st.p(1), st.p(2), st.p(3), st.m(1)), (1, 1, 1, 2));
        assert_eq!(st.d(1), -1);
        assert_eq!(st.r(1), 1);
        assert_eq!(st.f, 3);
    }

    #[test]
    fn single_gap() {
        let st = gap_stats(&[Mark::Plus, Mark::Other, Mark::Plus]);
        assert_eq!(st.p(1), 1);
        assert_eq!(st.f, 1);
    }

    #[test]
    fn shared_endpoint_counts_twice() {
        use Mark::*;
        let st = gap_stats(&[Plus, Other, Plus, Other, Plus]);
        assert_eq!(st.p(1), 2);
        assert_eq!(st.d(1), 2);
        assert_eq!(st.r(1), 0);
        assert_eq!(st.f, 0);
    }

    #[test]
    fn even_interior_ignored() {
        use Mark::*;
        let st = gap_stats(&[Plus, Minus, Other, Plus]);
        assert_eq!(st.p(1), 0);
        assert!(st.m.is_empty());
        assert_eq!(st.f, 0);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(sig(&[1, 1, -1]).inverse(), sig(&[1, -1, -1]));
        assert_eq!(sig(&[]).inverse(), sig(&[]));
    }

    // brute force: try every s and keep the largest that satisfies σ = σ1ρ, τ = ρ⁻¹τ1
    fn brute_s_product(a: &[i8], b: &[i8]) -> (Vec<i8>, usize) {
        let mut best = 0;
        for s in 0..=a.len().min(b.len()) {
            let rho = &a[a.len() - s..];
            let rho_inv: Vec<i8> = rho.iter().rev().map(|x| -x).collect();
            if b[..s] == rho_inv[..] {
                best = s;
            }
        }
        let mut out = a[..a.len() - best].to_vec();
        out.extend_from_slice(&b[best..]);
        (out, best)
    }

    #[test]
    fn s_product_examples() {
        assert_eq!(sig(&[1, 1]).s_product(&sig(&[-1, -1])), (sig(&[]), 2));
        // (+1,-1)(-1,+1): the last -1 does not cancel the leading -1
        assert_eq!(brute_s_product(&[1, -1], &[-1, 1]), (vec![1, -1, -1, 1], 0));
        assert_eq!(sig(&[1, -1]).s_product(&sig(&[-1, 1])), (sig(&[1, -1, -1, 1]), 0));
        assert_eq!(sig(&[1]).s_product(&sig(&[1])), (sig(&[1, 1]), 0));
        assert_eq!(sig(&[1, -1]).s_product(&sig(&[1, 1])), (sig(&[1, 1]), 1));
    }

    fn arb_signs() -> impl Strategy<Value = Vec<i8>> {
        prop::collection::vec(prop::sample::select(vec![1i8, -1]), 0..40)
    }

    fn arb_marks() -> impl Strategy<Value = Vec<Mark>> {
        prop::collection::vec(
            prop::sample::select(vec![Mark::Plus, Mark::Minus, Mark::Other, Mark::Other]),
            0..40,
        )
    }

    proptest! {
        #[test]
        fn run_counts_cover_entries(v in arb_signs()) {
            let st = sig(&v).run_stats();
            let plus = v.iter().filter(|&&x| x > 0).count();
            let minus = v.len() - plus;
            prop_assert_eq!(st.p.iter().map(|(k, c)| k * c).sum::<usize>(), plus);
            prop_assert_eq!(st.m.iter().map(|(k, c)| k * c).sum::<usize>(), minus);
            let (bp, bm) = brute_runs(&v);
            prop_assert_eq!(&st.p, &bp);
            prop_assert_eq!(&st.m, &bm);
        }

        #[test]
        fn inverse_swaps_runs(v in arb_signs()) {
            let s = sig(&v);
            let a = s.run_stats();
            let b = s.inverse().run_stats();
            prop_assert_eq!(&a.p, &b.m);
            prop_assert_eq!(&a.m, &b.p);
            for k in a.d.keys() {
                prop_assert_eq!(a.d(*k) + b.d(*k), 0);
            }
            prop_assert_eq!(a.f, b.f);
            prop_assert_eq!(s.inverse().inverse(), s);
        }

        #[test]
        fn parity_bounds(v in arb_signs()) {
            let st = sig(&v).run_stats();
            prop_assert!(st.r.values().all(|&x| x <= 1));
            let distinct: std::collections::BTreeSet<_> = st.p.keys().chain(st.m.keys()).collect();
            prop_assert!(st.f as usize <= distinct.len());
        }

        #[test]
        fn gaps_are_direction_symmetric(ms in arb_marks()) {
            let rev: Vec<Mark> = ms.iter().rev().copied().collect();
            prop_assert_eq!(gap_stats(&ms), gap_stats(&rev));
        }

        #[test]
        fn s_product_matches_brute_force(a in arb_signs(), b in arb_signs()) {
            let (seq, s) = sig(&a).s_product(&sig(&b));
            let (bseq, bs) = brute_s_product(&a, &b);
            prop_assert_eq!(seq, sig(&bseq));
            prop_assert_eq!(s, bs);
        }
    }
}

//! Words in the HNN extension `G* = <G, t | t^-1 h t = phi(h), h in H1>`.
//!
//! A word is stored in alternating form `g0 t^b1 g1 ... t^br gr`. Reduction
//! removes pinches `t^-1 h t` (h in H1) and `t k t^-1` (k in H2); equality is
//! decided by a right-transversal normal form.

use std::fmt;
use std::path::Path;

use rand::Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{
    cosets, iso_check, subgroup_check, FiniteGroup, GroupFile, Side, Subgroup, SubgroupIso, Transversal,
};
use crate::palindrome::mirror_mismatches;
use crate::runs::{RunStats, Sign, Signature};

/// A single letter of the generating set `G ∪ {t, t^-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    T,
    TInv,
    G(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HnnWord {
    pub head: usize,
    pub tail: Vec<(Sign, usize)>,
}

impl HnnWord {
    pub fn identity() -> Self {
        HnnWord {
            head: 0,
            tail: Vec::new(),
        }
    }

    pub fn base(g: usize) -> Self {
        HnnWord {
            head: g,
            tail: Vec::new(),
        }
    }

    /// Number of stable letters.
    pub fn t_length(&self) -> usize {
        self.tail.len()
    }

    pub fn signature_unreduced(&self) -> Signature {
        Signature(self.tail.iter().map(|&(s, _)| s).collect())
    }

    /// Base elements `g0, ..., gr`.
    pub fn base_elements(&self) -> Vec<usize> {
        std::iter::once(self.head)
            .chain(self.tail.iter().map(|&(_, g)| g))
            .collect()
    }

    /// Flatten to letters, dropping identity base letters.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(2 * self.tail.len() + 1);
        if self.head != 0 {
            out.push(Letter::G(self.head));
        }
        for &(s, g) in &self.tail {
            out.push(if s == Sign::Plus { Letter::T } else { Letter::TInv });
            if g != 0 {
                out.push(Letter::G(g));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Path(String),
    Inline(GroupFile),
}

impl GroupSource {
    pub fn resolve(&self, base_dir: Option<&Path>) -> Result<FiniteGroup> {
        match self {
            GroupSource::Inline(file) => FiniteGroup::from_file(file),
            GroupSource::Path(p) => {
                let path = match base_dir {
                    Some(dir) => dir.join(p),
                    None => p.into(),
                };
                FiniteGroup::load(path)
            }
        }
    }
}

/// On-disk form of an HNN instance.
#[derive(Clone, Debug, Deserialize)]
pub struct HnnFile {
    pub group: GroupSource,
    pub h1: Vec<usize>,
    pub h2: Vec<usize>,
    pub phi: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct HnnInstance {
    base: FiniteGroup,
    h1: Subgroup,
    h2: Subgroup,
    phi: SubgroupIso,
    t1: Transversal,
    t2: Transversal,
}

impl HnnInstance {
    pub fn new(base: FiniteGroup, h1: &[usize], h2: &[usize], phi: &[(usize, usize)]) -> Result<Self> {
        let h1 = subgroup_check(&base, h1)?;
        let h2 = subgroup_check(&base, h2)?;
        if !h1.is_proper() || !h2.is_proper() {
            return Err(Error::NotProper);
        }
        let phi = iso_check(&base, &h1, &base, &h2, phi)?;
        let t1 = cosets(&base, &h1, Side::Right);
        let t2 = cosets(&base, &h2, Side::Right);
        Ok(HnnInstance {
            base,
            h1,
            h2,
            phi,
            t1,
            t2,
        })
    }

    pub fn from_file(file: &HnnFile, base_dir: Option<&Path>) -> Result<Self> {
        let g = file.group.resolve(base_dir)?;
        Self::new(g, &file.h1, &file.h2, &file.phi)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file: HnnFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Self::from_file(&file, path.parent())
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn h1(&self) -> &Subgroup {
        &self.h1
    }

    pub fn h2(&self) -> &Subgroup {
        &self.h2
    }

    pub fn phi(&self) -> &SubgroupIso {
        &self.phi
    }

    /// Parse whitespace-separated `t`, `t^-1`, `g:<index-or-name>` tokens.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>> {
        text.split_whitespace()
            .enumerate()
            .map(|(position, token)| {
                let unknown = || Error::UnknownLetter {
                    token: token.to_string(),
                    position,
                };
                match token {
                    "t" => Ok(Letter::T),
                    "t^-1" => Ok(Letter::TInv),
                    _ => {
                        let body = token.strip_prefix("g:").ok_or_else(unknown)?;
                        self.base.parse_element(body).map(Letter::G).ok_or_else(unknown)
                    }
                }
            })
            .collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<HnnWord> {
        self.to_alternating(&self.parse_letters(text)?)
    }

    /// Multiply adjacent base letters and insert identities between stable
    /// letters.
    pub fn to_alternating(&self, letters: &[Letter]) -> Result<HnnWord> {
        let mut w = HnnWord::identity();
        for (position, &l) in letters.iter().enumerate() {
            match l {
                Letter::G(g) => {
                    if g >= self.base.order() {
                        return Err(Error::UnknownLetter {
                            token: format!("g:{g}"),
                            position,
                        });
                    }
                    let last = w.tail.last_mut().map(|p| &mut p.1).unwrap_or(&mut w.head);
                    *last = self.base.mul(*last, g);
                }
                Letter::T => w.tail.push((Sign::Plus, 0)),
                Letter::TInv => w.tail.push((Sign::Minus, 0)),
            }
        }
        Ok(w)
    }

    fn is_pinch(&self, before: Sign, g: usize, after: Sign) -> bool {
        match (before, after) {
            (Sign::Minus, Sign::Plus) => self.h1.contains(g),
            (Sign::Plus, Sign::Minus) => self.h2.contains(g),
            _ => false,
        }
    }

    pub fn is_reduced(&self, w: &HnnWord) -> bool {
        w.tail.windows(2).all(|p| !self.is_pinch(p[0].0, p[0].1, p[1].0))
    }

    /// Britton reduction. Single left-to-right pass with a stack: a pinch can
    /// only appear when a stable letter is appended.
    pub fn reduce(&self, w: &HnnWord) -> HnnWord {
        let g = &self.base;
        let mut out = HnnWord::base(w.head);
        for &(s, x) in &w.tail {
            match out.tail.last() {
                Some(&(ls, lg)) if self.is_pinch(ls, lg, s) => {
                    out.tail.pop();
                    let through = if ls == Sign::Minus {
                        self.phi.apply(lg)
                    } else {
                        self.phi.apply_inv(lg)
                    };
                    let prev = out.tail.last_mut().map(|p| &mut p.1).unwrap_or(&mut out.head);
                    *prev = g.product([*prev, through, x]);
                }
                _ => out.tail.push((s, x)),
            }
        }
        out
    }

    /// Canonical representative: reduce, then sweep right to left writing each
    /// `gi = k * rep` against the right transversal of `H2` (before `t`) or
    /// `H1` (before `t^-1`) and moving `k` through the stable letter.
    pub fn normal_form(&self, w: &HnnWord) -> HnnWord {
        let g = &self.base;
        let mut r = self.reduce(w);
        let mut carry = 0;
        for i in (0..r.tail.len()).rev() {
            let (s, x) = r.tail[i];
            let y = g.mul(x, carry);
            let (k, rep) = match s {
                Sign::Plus => self.t2.split(g, y),
                Sign::Minus => self.t1.split(g, y),
            };
            r.tail[i].1 = rep;
            // t k = phi^-1(k) t for k in H2, and t^-1 h = phi(h) t^-1 for h in H1
            carry = match s {
                Sign::Plus => self.phi.apply_inv(k),
                Sign::Minus => self.phi.apply(k),
            };
        }
        r.head = g.mul(r.head, carry);
        r
    }

    pub fn equals(&self, a: &HnnWord, b: &HnnWord) -> bool {
        self.normal_form(a) == self.normal_form(b)
    }

    pub fn is_identity(&self, w: &HnnWord) -> bool {
        self.normal_form(w) == HnnWord::identity()
    }

    pub fn mul(&self, a: &HnnWord, b: &HnnWord) -> HnnWord {
        let mut out = a.clone();
        let last = out.tail.last_mut().map(|p| &mut p.1).unwrap_or(&mut out.head);
        *last = self.base.mul(*last, b.head);
        out.tail.extend_from_slice(&b.tail);
        out
    }

    pub fn inverse(&self, w: &HnnWord) -> HnnWord {
        let g = &self.base;
        let elems = w.base_elements();
        let r = w.tail.len();
        HnnWord {
            head: g.inv(elems[r]),
            tail: (0..r).rev().map(|i| (-w.tail[i].0, g.inv(elems[i]))).collect(),
        }
    }

    /// Exponent sequence of the reduced form; an invariant of the element.
    pub fn signature(&self, w: &HnnWord) -> Signature {
        self.reduce(w).signature_unreduced()
    }

    pub fn run_stats(&self, w: &HnnWord) -> RunStats {
        self.signature(w).run_stats()
    }

    pub fn f(&self, w: &HnnWord) -> u64 {
        self.run_stats(w).f
    }

    /// `g_r t^b_r g_{r-1} ... t^b_1 g_0`; exponents keep their signs.
    pub fn reverse(&self, w: &HnnWord) -> HnnWord {
        let elems = w.base_elements();
        let r = w.tail.len();
        HnnWord {
            head: elems[r],
            tail: (0..r).rev().map(|i| (w.tail[i].0, elems[i])).collect(),
        }
    }

    pub fn is_group_palindrome(&self, w: &HnnWord) -> bool {
        let r = self.reduce(w);
        self.equals(&self.reverse(&r), &r)
    }

    /// Britton-reduced word with `len` stable letters; exponents uniform and
    /// base letters uniform among those that avoid a pinch.
    pub fn random_reduced_word<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> Result<HnnWord> {
        let n = self.base.order();
        let signs: Vec<Sign> = (0..len)
            .map(|_| if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus })
            .collect();
        let outside = |h: &Subgroup| -> Vec<usize> { (0..n).filter(|&x| !h.contains(x)).collect() };
        let outside1 = outside(&self.h1);
        let outside2 = outside(&self.h2);
        let mut pick = |before: Option<Sign>, after: Option<Sign>| -> Result<usize> {
            let pool = match (before, after) {
                (Some(Sign::Minus), Some(Sign::Plus)) => &outside1,
                (Some(Sign::Plus), Some(Sign::Minus)) => &outside2,
                _ => return Ok(rng.gen_range(0..n)),
            };
            if pool.is_empty() {
                return Err(Error::InstanceTooSmall);
            }
            Ok(pool[rng.gen_range(0..pool.len())])
        };
        let head = pick(None, signs.first().copied())?;
        let mut tail = Vec::with_capacity(len);
        for i in 0..len {
            let g = pick(Some(signs[i]), signs.get(i + 1).copied())?;
            tail.push((signs[i], g));
        }
        Ok(HnnWord { head, tail })
    }

    /// Rewrite around every stable letter with a random subgroup element:
    /// `x t y = (x h^-1) t (phi(h) y)` and `x t^-1 y = (x k^-1) t^-1 (phi^-1(k) y)`.
    /// The element and reducedness are preserved.
    pub fn shuffle<R: Rng + ?Sized>(&self, w: &HnnWord, rng: &mut R) -> HnnWord {
        let g = &self.base;
        let mut out = w.clone();
        for i in 0..out.tail.len() {
            let s = out.tail[i].0;
            let (sub, through) = match s {
                Sign::Plus => {
                    let h = self.h1.members()[rng.gen_range(0..self.h1.len())];
                    (h, self.phi.apply(h))
                }
                Sign::Minus => {
                    let k = self.h2.members()[rng.gen_range(0..self.h2.len())];
                    (k, self.phi.apply_inv(k))
                }
            };
            let prev = if i == 0 { &mut out.head } else { &mut out.tail[i - 1].1 };
            *prev = g.mul(*prev, g.inv(sub));
            out.tail[i].1 = g.mul(through, out.tail[i].1);
        }
        out
    }

    /// Least base element outside `H1 ∪ H2`.
    pub fn separator(&self) -> Result<usize> {
        self.base
            .elements()
            .find(|&x| !self.h1.contains(x) && !self.h2.contains(x))
            .ok_or(Error::NoSeparatorElement)
    }

    /// Maximal `+1` runs of lengths `1, 2, ..., K` separated by single `-1`
    /// letters, with the separator element between all stable letters. Its
    /// value is `f = (K - 1) + (K mod 2)`.
    pub fn witness_word(&self, k: usize) -> Result<HnnWord> {
        let sep = self.separator()?;
        let mut signs = Vec::new();
        for run in 1..=k {
            if run > 1 {
                signs.push(Sign::Minus);
            }
            signs.extend(std::iter::repeat_n(Sign::Plus, run));
        }
        let n = signs.len();
        let tail = signs
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, if i + 1 == n { 0 } else { sep }))
            .collect();
        Ok(HnnWord { head: 0, tail })
    }

    /// Random mirror-symmetric alternating word with at most `max_letters`
    /// letters (`g_i = g_{r-i}`, `b_i = b_{r+1-i}`).
    pub fn random_mirror_word<R: Rng + ?Sized>(&self, max_letters: usize, rng: &mut R) -> HnnWord {
        let n = self.base.order();
        let r = rng.gen_range(0..=max_letters.saturating_sub(1) / 2);
        let mut signs = vec![Sign::Plus; r];
        for i in 0..r.div_ceil(2) {
            let s = if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus };
            signs[i] = s;
            signs[r - 1 - i] = s;
        }
        let mut elems = vec![0; r + 1];
        for i in 0..=r / 2 {
            let x = rng.gen_range(0..n);
            elems[i] = x;
            elems[r - i] = x;
        }
        HnnWord {
            head: elems[0],
            tail: signs.into_iter().zip(elems[1..].iter().copied()).collect(),
        }
    }

    pub fn random_letter<R: Rng + ?Sized>(&self, rng: &mut R) -> Letter {
        if rng.gen::<bool>() {
            if rng.gen::<bool>() {
                Letter::T
            } else {
                Letter::TInv
            }
        } else {
            Letter::G(rng.gen_range(0..self.base.order()))
        }
    }

    pub fn alphabet(&self) -> Vec<Letter> {
        let mut out = vec![Letter::T, Letter::TInv];
        out.extend(self.base.elements().map(Letter::G));
        out
    }

    pub fn format_letters(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return "g:0".to_string();
        }
        letters
            .iter()
            .map(|l| match l {
                Letter::T => "t".to_string(),
                Letter::TInv => "t^-1".to_string(),
                Letter::G(g) => format!("g:{g}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_word(&self, w: &HnnWord) -> String {
        self.format_letters(&w.letters())
    }
}

pub fn hamming_to_palindrome(letters: &[Letter]) -> usize {
    mirror_mismatches(letters)
}

/// Least `k` compatible with `f(u) <= 7k + 24mk - 6` for a product `u` of
/// `k` m-almost palindromes.
pub fn plength_lower_bound(f: u64, m: u64) -> u64 {
    (f + 6).div_ceil(24 * m + 7)
}

impl fmt::Display for HnnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        for (s, g) in &self.tail {
            write!(f, " t^{} {}", s.as_i8(), g)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z4() -> HnnInstance {
        HnnInstance::new(FiniteGroup::cyclic(4), &[0, 2], &[0, 2], &[(0, 0), (2, 2)]).unwrap()
    }

    fn s3() -> HnnInstance {
        let g = crate::group::tests::s3();
        // (1 2) -> (0 2): indices 1 and 5
        HnnInstance::new(g, &[0, 1], &[0, 5], &[(0, 0), (1, 5)]).unwrap()
    }

    fn w(tail: &[(i8, usize)], head: usize) -> HnnWord {
        HnnWord {
            head,
            tail: tail
                .iter()
                .map(|&(s, g)| (if s > 0 { Sign::Plus } else { Sign::Minus }, g))
                .collect(),
        }
    }

    // Exhaustive rewriting oracle: apply pinch rules anywhere until none
    // remain, trying every order, and collect the reachable reduced words'
    // normal-form-free invariants (signature and final length).
    fn rewrite_all(inst: &HnnInstance, word: &HnnWord, out: &mut Vec<HnnWord>) {
        let elems = word.base_elements();
        let mut any = false;
        for i in 0..word.tail.len().saturating_sub(1) {
            let (b, x) = word.tail[i];
            let after = word.tail[i + 1].0;
            if inst.is_pinch(b, x, after) {
                any = true;
                let through = if b == Sign::Minus {
                    inst.phi.apply(x)
                } else {
                    inst.phi.apply_inv(x)
                };
                let g = inst.base();
                let merged = g.product([elems[i], through, elems[i + 2]]);
                let mut tail = word.tail.clone();
                tail.drain(i..=i + 1);
                let mut next = HnnWord { head: word.head, tail };
                if i == 0 {
                    next.head = merged;
                } else {
                    next.tail[i - 1].1 = merged;
                }
                rewrite_all(inst, &next, out);
            }
        }
        if !any {
            out.push(word.clone());
        }
    }

    #[test]
    fn alternating_form_examples() {
        let z = z4();
        assert_eq!(
            z.to_alternating(&[Letter::G(1), Letter::G(2)]).unwrap(),
            HnnWord::base(3)
        );
        assert_eq!(
            z.to_alternating(&[Letter::T, Letter::T]).unwrap(),
            w(&[(1, 0), (1, 0)], 0)
        );
        assert_eq!(
            z.to_alternating(&[Letter::T, Letter::G(1), Letter::TInv]).unwrap(),
            w(&[(1, 1), (-1, 0)], 0)
        );
        assert_eq!(z.to_alternating(&[]).unwrap(), HnnWord::identity());
        assert!(matches!(
            z.to_alternating(&[Letter::G(9)]),
            Err(Error::UnknownLetter { position: 0, .. })
        ));
    }

    #[test]
    fn parse_reports_offending_token() {
        let z = z4();
        assert_eq!(z.parse_word("t g:1 t^-1 g:2").unwrap(), w(&[(1, 1), (-1, 2)], 0));
        let err = z.parse_word("t g:1 x").unwrap_err();
        assert_eq!(
            err,
            Error::UnknownLetter {
                token: "x".into(),
                position: 2
            }
        );
    }

    #[test]
    fn britton_examples() {
        let z = z4();
        let word = z.parse_word("g:1 t^-1 g:2 t g:1").unwrap();
        let mut reachable = Vec::new();
        rewrite_all(&z, &word, &mut reachable);
        assert!(reachable.iter().all(|r| *r == HnnWord::base(0)));
        assert_eq!(z.reduce(&word), HnnWord::base(0));

        let reduced = w(&[(1, 1), (1, 3), (-1, 2)], 1);
        assert!(z.is_reduced(&reduced));
        assert_eq!(z.reduce(&reduced), reduced);

        assert_eq!(z.reduce(&z.parse_word("t g:0 t^-1").unwrap()), HnnWord::identity());
    }

    #[test]
    fn reduction_agrees_with_rewriting_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for inst in [z4(), s3()] {
            for _ in 0..300 {
                let len = rng.gen_range(0..9);
                let letters: Vec<Letter> = (0..len).map(|_| inst.random_letter(&mut rng)).collect();
                let word = inst.to_alternating(&letters).unwrap();
                let mut reachable = Vec::new();
                rewrite_all(&inst, &word, &mut reachable);
                let ours = inst.reduce(&word);
                assert!(inst.is_reduced(&ours));
                for r in &reachable {
                    assert_eq!(r.signature_unreduced(), ours.signature_unreduced());
                    assert!(inst.equals(r, &ours));
                }
            }
        }
    }

    #[test]
    fn defining_relation_normal_forms() {
        let z = z4();
        let lhs = z.parse_word("t^-1 g:2 t").unwrap();
        let rhs = z.parse_word("g:2").unwrap();
        assert_eq!(z.normal_form(&lhs), z.normal_form(&rhs));
        let s = s3();
        // t^-1 (1 2) t = (0 2)
        assert!(s.equals(&s.parse_word("t^-1 g:1 t").unwrap(), &HnnWord::base(5)));
        assert!(!s.equals(&s.parse_word("t^-1 g:1 t").unwrap(), &HnnWord::base(1)));
    }

    #[test]
    fn inverse_cancels_in_normal_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for inst in [z4(), s3()] {
            for _ in 0..500 {
                let len = rng.gen_range(0..12);
                let word = inst.random_reduced_word(len, &mut rng).unwrap();
                let prod = inst.mul(&word, &inst.inverse(&word));
                assert_eq!(inst.normal_form(&prod), HnnWord::identity());
                assert!(inst.equals(&word, &inst.reduce(&word)));
                assert!(inst.equals(&word, &inst.shuffle(&word, &mut rng)));
            }
        }
    }

    #[test]
    fn signature_examples() {
        let z = z4();
        let reduced = w(&[(1, 1), (1, 3), (-1, 2)], 0);
        assert_eq!(z.signature(&reduced), Signature::from(vec![1, 1, -1]));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for inst in [z4(), s3()] {
            for _ in 0..100 {
                let word = inst.random_reduced_word(10, &mut rng).unwrap();
                let shuffled = inst.shuffle(&word, &mut rng);
                assert!(inst.is_reduced(&shuffled));
                assert_eq!(inst.signature(&word), inst.signature(&shuffled));
                assert_eq!(inst.signature(&inst.inverse(&word)), inst.signature(&word).inverse());
            }
        }
    }

    #[test]
    fn f_examples() {
        let z = z4();
        assert_eq!(z.f(&HnnWord::identity()), 0);
        assert_eq!(z.f(&w(&[(1, 1), (1, 1), (-1, 1), (1, 0)], 0)), 1);
        assert_eq!(z.f(&z.witness_word(10).unwrap()), 9);
    }

    #[test]
    fn reverse_and_group_palindromes() {
        let z = z4();
        assert!(z.is_group_palindrome(&z.parse_word("t g:1 t").unwrap()));
        let word = z.parse_word("t g:1 t^-1").unwrap();
        assert_eq!(z.reverse(&word), z.parse_word("t^-1 g:1 t").unwrap());
        assert!(!z.is_group_palindrome(&word));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = z.random_mirror_word(15, &mut rng);
            let shuffled = z.shuffle(&m, &mut rng);
            assert!(z.is_group_palindrome(&shuffled));
        }
    }

    #[test]
    fn hamming_examples() {
        use Letter::*;
        assert_eq!(hamming_to_palindrome(&[T, G(1), T]), 0);
        assert_eq!(hamming_to_palindrome(&[T, G(1), TInv]), 1);
        assert_eq!(hamming_to_palindrome(&[T, T, G(1), G(2), TInv, T]), 2);
    }

    #[test]
    fn random_words_are_reduced_and_deterministic() {
        let z = z4();
        let mut a = ChaCha8Rng::seed_from_u64(99);
        let mut b = ChaCha8Rng::seed_from_u64(99);
        assert_eq!(
            z.random_reduced_word(12, &mut a).unwrap(),
            z.random_reduced_word(12, &mut b).unwrap()
        );
        let w0 = z.random_reduced_word(0, &mut a).unwrap();
        assert!(w0.tail.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let word = z.random_reduced_word(20, &mut rng).unwrap();
            assert_eq!(word.tail.len(), 20);
            assert!(z.is_reduced(&word));
        }
    }

    #[test]
    fn witness_examples() {
        let z = z4();
        let w1 = z.witness_word(1).unwrap();
        assert_eq!(z.signature(&w1), Signature::from(vec![1]));
        assert_eq!(z.f(&w1), 1);
        let w3 = z.witness_word(3).unwrap();
        assert_eq!(z.signature(&w3), Signature::from(vec![1, -1, 1, 1, -1, 1, 1, 1]));
        assert_eq!(z.f(&w3), 3);
        assert!(z.is_reduced(&w3));
        // a group is never a union of two proper subgroups, so a separator exists
        assert_eq!(z.separator().unwrap(), 1);
        let z2 = HnnInstance::new(FiniteGroup::cyclic(2), &[0], &[0], &[(0, 0)]).unwrap();
        assert_eq!(z2.f(&z2.witness_word(4).unwrap()), 3);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(plength_lower_bound(1, 0), 1);
        assert_eq!(plength_lower_bound(64, 0), 10);
        assert_eq!(plength_lower_bound(64, 2), 2);
    }
}

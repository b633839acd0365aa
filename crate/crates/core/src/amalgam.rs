//! Words in the amalgamated free product `G1 *_H G2`.
//!
//! `H` is given as a subgroup of each factor together with the identifying
//! isomorphism. Words are syllable sequences; reduction merges same-factor
//! neighbours and absorbs `H`-syllables, and equality is decided by the
//! normal form `h * c1 * c2 * ... ` with each `ci` a right-coset
//! representative in its factor.
//!
//! The quasimorphism marks every syllable that is an occurrence of the
//! witness `a` up to `H` on both sides, then counts odd gaps between
//! consecutive marks of the same sign.

use std::fmt;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    classify_amalgam_case, cosets, iso_check, normality, quotient, subgroup_check, AmalCase, CaseClassification,
    Factor, FiniteGroup, FixedPresentationTable, Side, Subgroup, SubgroupIso, Transversal,
};
use crate::hnn::GroupSource;
use crate::palindrome::mirror_mismatches;
use crate::runs::{gap_stats, Mark, RunStats, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Syllable {
    pub factor: Factor,
    pub element: usize,
}

impl Syllable {
    pub fn new(factor: Factor, element: usize) -> Self {
        Syllable { factor, element }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.factor, self.element)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AmalWord(pub Vec<Syllable>);

impl AmalWord {
    pub fn identity() -> Self {
        AmalWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }
}

impl From<Vec<Syllable>> for AmalWord {
    fn from(v: Vec<Syllable>) -> Self {
        AmalWord(v)
    }
}

/// `h * reps[0] * reps[1] * ...` with `h` in `H` (as an element of the first
/// factor) and every rep a nontrivial right-coset representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmalNormalForm {
    pub h: usize,
    pub reps: Vec<Syllable>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SfToken {
    Plain(Syllable),
    Mark(Sign),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialForm {
    pub witness: Syllable,
    pub tokens: Vec<SfToken>,
}

impl SpecialForm {
    pub fn marks(&self) -> Vec<Mark> {
        self.tokens
            .iter()
            .map(|t| match t {
                SfToken::Mark(Sign::Plus) => Mark::Plus,
                SfToken::Mark(Sign::Minus) => Mark::Minus,
                SfToken::Plain(_) => Mark::Other,
            })
            .collect()
    }
}

/// On-disk form of an amalgam instance.
#[derive(Clone, Debug, Deserialize)]
pub struct AmalFile {
    pub g1: GroupSource,
    pub g2: GroupSource,
    pub h_in_g1: Vec<usize>,
    pub h_in_g2: Vec<usize>,
    pub h_iso: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
struct Marker {
    factor: Factor,
    a: usize,
    table: FixedPresentationTable,
}

#[derive(Clone, Debug)]
pub struct AmalInstance {
    groups: [FiniteGroup; 2],
    h: [Subgroup; 2],
    iso: SubgroupIso,
    trans: [Transversal; 2],
    classification: Result<CaseClassification>,
    marker: Option<Marker>,
}

/// Syllable-wise map onto `G1/H * G2/H`.
#[derive(Clone, Debug)]
pub struct QuotientProjection {
    maps: [Vec<usize>; 2],
}

impl QuotientProjection {
    pub fn project(&self, w: &AmalWord) -> AmalWord {
        AmalWord(
            w.0.iter()
                .map(|s| Syllable::new(s.factor, self.maps[s.factor.index()][s.element]))
                .collect(),
        )
    }
}

impl AmalInstance {
    pub fn new(
        g1: FiniteGroup,
        g2: FiniteGroup,
        h_in_g1: &[usize],
        h_in_g2: &[usize],
        h_iso: &[(usize, usize)],
    ) -> Result<Self> {
        let h1 = subgroup_check(&g1, h_in_g1)?;
        let h2 = subgroup_check(&g2, h_in_g2)?;
        if !h1.is_proper() || !h2.is_proper() {
            return Err(Error::NotProper);
        }
        let iso = iso_check(&g1, &h1, &g2, &h2, h_iso)?;
        let trans = [cosets(&g1, &h1, Side::Right), cosets(&g2, &h2, Side::Right)];
        let classification = classify_amalgam_case(&g1, &h1, &g2, &h2);
        let marker = match &classification {
            Ok(c) => match &c.case {
                AmalCase::Case1 { witness } => Some((witness.factor, witness.element, None)),
                AmalCase::Case2NonNormal { witness, table } => {
                    Some((witness.factor, witness.element, Some(table.clone())))
                }
                AmalCase::Case2Normal => c.case1_witness.map(|w| (w.factor, w.element, None)),
            },
            Err(_) => None,
        };
        let groups = [g1, g2];
        let h = [h1, h2];
        let marker = marker.map(|(factor, a, table)| {
            let i = factor.index();
            let table = table.unwrap_or_else(|| {
                FixedPresentationTable::disjoint(&groups[i], &h[i], a)
                    .expect("case 1 witness has disjoint double cosets")
            });
            Marker { factor, a, table }
        });
        Ok(AmalInstance {
            groups,
            h,
            iso,
            trans,
            classification,
            marker,
        })
    }

    pub fn from_file(file: &AmalFile, base_dir: Option<&Path>) -> Result<Self> {
        let g1 = file.g1.resolve(base_dir)?;
        let g2 = file.g2.resolve(base_dir)?;
        Self::new(g1, g2, &file.h_in_g1, &file.h_in_g2, &file.h_iso)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file: AmalFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Self::from_file(&file, path.parent())
    }

    /// Free product `G1 * G2`.
    pub fn free_product(g1: FiniteGroup, g2: FiniteGroup) -> Result<Self> {
        Self::new(g1, g2, &[0], &[0], &[(0, 0)])
    }

    pub fn group(&self, f: Factor) -> &FiniteGroup {
        &self.groups[f.index()]
    }

    pub fn subgroup(&self, f: Factor) -> &Subgroup {
        &self.h[f.index()]
    }

    pub fn classification(&self) -> Result<&CaseClassification> {
        self.classification.as_ref().map_err(Clone::clone)
    }

    /// The witness `a` used by the quasimorphism, with its factor.
    pub fn witness(&self) -> Option<Syllable> {
        self.marker.as_ref().map(|m| Syllable::new(m.factor, m.a))
    }

    pub fn presentation_table(&self) -> Option<&FixedPresentationTable> {
        self.marker.as_ref().map(|m| &m.table)
    }

    pub fn in_h(&self, s: Syllable) -> bool {
        self.h[s.factor.index()].contains(s.element)
    }

    /// Move an `H`-element between factors along the identification.
    pub fn transport(&self, x: usize, from: Factor, to: Factor) -> usize {
        match (from, to) {
            (Factor::First, Factor::Second) => self.iso.apply(x),
            (Factor::Second, Factor::First) => self.iso.apply_inv(x),
            _ => x,
        }
    }

    /// `H`-elements are written in the first factor, so each element of
    /// `G1 ∪ G2` has exactly one letter.
    pub fn canonical_letter(&self, s: Syllable) -> Syllable {
        if s.factor == Factor::Second && self.in_h(s) {
            Syllable::new(Factor::First, self.iso.apply_inv(s.element))
        } else {
            s
        }
    }

    pub fn alphabet(&self) -> Vec<Syllable> {
        let mut out: Vec<Syllable> = self.groups[0]
            .elements()
            .map(|x| Syllable::new(Factor::First, x))
            .collect();
        out.extend(
            self.groups[1]
                .elements()
                .filter(|&x| !self.h[1].contains(x))
                .map(|x| Syllable::new(Factor::Second, x)),
        );
        out
    }

    pub fn parse_word(&self, text: &str) -> Result<AmalWord> {
        text.split_whitespace()
            .enumerate()
            .map(|(position, token)| {
                let unknown = || Error::UnknownLetter {
                    token: token.to_string(),
                    position,
                };
                let (tag, body) = token.split_once(':').ok_or_else(unknown)?;
                let factor = match tag {
                    "1" => Factor::First,
                    "2" => Factor::Second,
                    _ => return Err(unknown()),
                };
                let element = self.group(factor).parse_element(body).ok_or_else(unknown)?;
                Ok(Syllable::new(factor, element))
            })
            .collect::<Result<Vec<_>>>()
            .map(AmalWord)
    }

    pub fn format_word(&self, w: &AmalWord) -> String {
        if w.is_empty() {
            return "1:0".to_string();
        }
        w.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }

    fn mul_into(&self, target: &mut Syllable, x: usize, from: Factor, on_right: bool) {
        let g = &self.groups[target.factor.index()];
        let y = self.transport(x, from, target.factor);
        target.element = if on_right {
            g.mul(target.element, y)
        } else {
            g.mul(y, target.element)
        };
    }

    fn push(&self, stack: &mut Vec<Syllable>, s: Syllable) {
        if s.element == 0 {
            return;
        }
        let Some(last) = stack.last().copied() else {
            stack.push(s);
            return;
        };
        if last.factor == s.factor {
            let merged = self.groups[s.factor.index()].mul(last.element, s.element);
            stack.pop();
            if merged == 0 {
                return;
            }
            let merged = Syllable::new(s.factor, merged);
            if self.in_h(merged) && !stack.is_empty() {
                let prev = stack.last_mut().unwrap();
                self.mul_into(prev, merged.element, merged.factor, true);
            } else {
                stack.push(merged);
            }
        } else if self.in_h(s) {
            let prev = stack.last_mut().unwrap();
            self.mul_into(prev, s.element, s.factor, true);
            if prev.element == 0 {
                stack.pop();
            }
        } else if stack.len() == 1 && self.in_h(last) {
            // a lone H-syllable is absorbed rightward
            let mut s = s;
            self.mul_into(&mut s, last.element, last.factor, false);
            stack[0] = s;
        } else {
            stack.push(s);
        }
    }

    /// Merge same-factor neighbours and absorb `H`-syllables (leftward,
    /// rightward at the first position). A lone `H` element survives as a
    /// single syllable.
    pub fn reduce(&self, w: &AmalWord) -> AmalWord {
        let mut stack = Vec::with_capacity(w.len());
        for &s in &w.0 {
            self.push(&mut stack, s);
        }
        AmalWord(stack)
    }

    pub fn is_reduced(&self, w: &AmalWord) -> bool {
        let n = w.len();
        w.0.iter().all(|&s| s.element != 0)
            && w.0.windows(2).all(|p| p[0].factor != p[1].factor)
            && (n <= 1 || w.0.iter().all(|&s| !self.in_h(s)))
    }

    pub fn syllable_length(&self, w: &AmalWord) -> usize {
        self.reduce(w).len()
    }

    pub fn normal_form(&self, w: &AmalWord) -> AmalNormalForm {
        let r = self.reduce(w);
        let mut carry = 0; // in H, written in the first factor
        let mut reps = Vec::with_capacity(r.len());
        for s in r.0.iter().rev() {
            let i = s.factor.index();
            let g = &self.groups[i];
            let y = g.mul(s.element, self.transport(carry, Factor::First, s.factor));
            let (k, rep) = self.trans[i].split(g, y);
            if rep != 0 {
                reps.push(Syllable::new(s.factor, rep));
            }
            carry = self.transport(k, s.factor, Factor::First);
        }
        reps.reverse();
        AmalNormalForm { h: carry, reps }
    }

    pub fn equals(&self, a: &AmalWord, b: &AmalWord) -> bool {
        self.normal_form(a) == self.normal_form(b)
    }

    pub fn is_identity(&self, w: &AmalWord) -> bool {
        let nf = self.normal_form(w);
        nf.h == 0 && nf.reps.is_empty()
    }

    pub fn mul(&self, a: &AmalWord, b: &AmalWord) -> AmalWord {
        AmalWord(a.0.iter().chain(b.0.iter()).copied().collect())
    }

    pub fn inverse(&self, w: &AmalWord) -> AmalWord {
        AmalWord(
            w.0.iter()
                .rev()
                .map(|s| Syllable::new(s.factor, self.groups[s.factor.index()].inv(s.element)))
                .collect(),
        )
    }

    pub fn reverse(&self, w: &AmalWord) -> AmalWord {
        AmalWord(w.0.iter().rev().copied().collect())
    }

    pub fn is_group_palindrome(&self, w: &AmalWord) -> bool {
        let r = self.reduce(w);
        self.equals(&self.reverse(&r), &r)
    }

    fn marker(&self) -> Result<&Marker> {
        self.marker.as_ref().ok_or_else(|| Error::WitnessNotApplicable {
            reason: match &self.classification {
                Ok(c) => format!("{} instance without a witness element", c.case.label()),
                Err(e) => format!("classification failed: {e}"),
            },
        })
    }

    /// Replace every syllable `x = u a^θ u'` that the witness table covers by
    /// a mark, pushing `u` into the left neighbour and `u'` into the right
    /// one. At the ends the leftover `H` parts stay as plain tokens.
    pub fn special_form(&self, w: &AmalWord) -> Result<SpecialForm> {
        let marker = self.marker()?;
        let f = marker.factor;
        let mut syl = self.reduce(w).0;
        let n = syl.len();
        let mut theta: Vec<Option<Sign>> = vec![None; n];
        let mut prefix = None;
        let mut suffix = None;
        for i in 0..n {
            if syl[i].factor != f {
                continue;
            }
            let Some(p) = marker.table.get(syl[i].element).copied() else {
                continue;
            };
            theta[i] = Some(p.theta);
            if i > 0 {
                self.mul_into(&mut syl[i - 1], p.left, f, true);
            } else if p.left != 0 {
                prefix = Some(Syllable::new(f, p.left));
            }
            if i + 1 < n {
                self.mul_into(&mut syl[i + 1], p.right, f, false);
            } else if p.right != 0 {
                suffix = Some(Syllable::new(f, p.right));
            }
        }
        let mut tokens = Vec::with_capacity(n + 2);
        tokens.extend(prefix.map(SfToken::Plain));
        for (s, t) in syl.into_iter().zip(theta) {
            tokens.push(match t {
                Some(sign) => SfToken::Mark(sign),
                None => SfToken::Plain(s),
            });
        }
        tokens.extend(suffix.map(SfToken::Plain));
        Ok(SpecialForm {
            witness: Syllable::new(f, marker.a),
            tokens,
        })
    }

    /// Multiply a special form back out.
    pub fn evaluate(&self, sf: &SpecialForm) -> AmalWord {
        let g = self.group(sf.witness.factor);
        AmalWord(
            sf.tokens
                .iter()
                .map(|t| match *t {
                    SfToken::Plain(s) => s,
                    SfToken::Mark(Sign::Plus) => sf.witness,
                    SfToken::Mark(Sign::Minus) => Syllable::new(sf.witness.factor, g.inv(sf.witness.element)),
                })
                .collect(),
        )
    }

    pub fn marks(&self, w: &AmalWord) -> Result<Vec<Mark>> {
        Ok(self.special_form(w)?.marks())
    }

    pub fn run_stats(&self, w: &AmalWord) -> Result<RunStats> {
        Ok(gap_stats(&self.marks(w)?))
    }

    pub fn f(&self, w: &AmalWord) -> Result<u64> {
        Ok(self.run_stats(w)?.f)
    }

    fn non_h(&self, f: Factor) -> Vec<usize> {
        let i = f.index();
        self.groups[i].elements().filter(|&x| !self.h[i].contains(x)).collect()
    }

    pub fn random_reduced_word<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> Result<AmalWord> {
        let pools = [self.non_h(Factor::First), self.non_h(Factor::Second)];
        if pools.iter().any(Vec::is_empty) {
            return Err(Error::InstanceTooSmall);
        }
        let mut f = if rng.gen::<bool>() {
            Factor::First
        } else {
            Factor::Second
        };
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            let pool = &pools[f.index()];
            out.push(Syllable::new(f, pool[rng.gen_range(0..pool.len())]));
            f = f.other();
        }
        Ok(AmalWord(out))
    }

    /// Insert `h h^-1` at every syllable boundary with a random `h`, pushing
    /// `h` into the left syllable and `h^-1` into the right one.
    pub fn shuffle<R: Rng + ?Sized>(&self, w: &AmalWord, rng: &mut R) -> AmalWord {
        let members = self.h[0].members();
        let mut out = w.clone();
        for i in 1..out.len() {
            let h = members[rng.gen_range(0..members.len())];
            let hi = self.groups[0].inv(h);
            self.mul_into(&mut out.0[i - 1], h, Factor::First, true);
            self.mul_into(&mut out.0[i], hi, Factor::First, false);
        }
        out
    }

    /// Reduced mirror word `x1 ... xk x'_{k+1} xk ... x1` with
    /// `x'_{k+1} = x_{k+1} h`; `h` is the identity about half the time.
    pub fn random_mirror_word<R: Rng + ?Sized>(&self, max_letters: usize, rng: &mut R) -> AmalWord {
        if max_letters == 0 {
            return AmalWord::identity();
        }
        let k = rng.gen_range(0..=(max_letters - 1) / 2);
        let half = self
            .random_reduced_word(k + 1, rng)
            .expect("proper subgroups leave non-H elements");
        let mut out: Vec<Syllable> = half.0.clone();
        for i in (0..k).rev() {
            out.push(half.0[i]);
        }
        if rng.gen::<bool>() {
            let members = self.h[0].members();
            let h = members[rng.gen_range(0..members.len())];
            self.mul_into(&mut out[k], h, Factor::First, true);
        }
        AmalWord(out)
    }

    pub fn random_letter<R: Rng + ?Sized>(&self, rng: &mut R) -> Syllable {
        let n1 = self.groups[0].order();
        let n2 = self.groups[1].order() - self.h[1].len();
        let i = rng.gen_range(0..n1 + n2);
        if i < n1 {
            Syllable::new(Factor::First, i)
        } else {
            let pool = self.non_h(Factor::Second);
            Syllable::new(Factor::Second, pool[i - n1])
        }
    }

    pub fn hamming_to_palindrome(&self, w: &AmalWord) -> usize {
        let letters: Vec<Syllable> = w.0.iter().map(|&s| self.canonical_letter(s)).collect();
        mirror_mismatches(&letters)
    }

    /// The chain `a [b] a [b c b] a [b c b c b] a ...` with `K` gaps of
    /// interior lengths `1, 3, ..., 2K - 1`, so that `f = K`.
    pub fn witness_word(&self, k: usize) -> Result<AmalWord> {
        let marker = self.marker()?;
        let f = marker.factor;
        let i = f.index();
        let c = self.groups[i]
            .elements()
            .find(|&x| !self.h[i].contains(x) && !marker.table.contains(x))
            .ok_or(Error::NoFillerElement)?;
        let b = self
            .non_h(f.other())
            .first()
            .copied()
            .ok_or(Error::NoOppositeFactorElement)?;
        let a = Syllable::new(f, marker.a);
        let b = Syllable::new(f.other(), b);
        let c = Syllable::new(f, c);
        let mut out = vec![a];
        for gap in 1..=k {
            out.push(b);
            for _ in 1..gap {
                out.push(c);
                out.push(b);
            }
            out.push(a);
        }
        Ok(AmalWord(out))
    }

    /// `G1/H * G2/H` and the syllable-wise projection onto it.
    pub fn quotient_push(&self) -> Result<(AmalInstance, QuotientProjection)> {
        normality(&self.groups[0], &self.h[0])?;
        normality(&self.groups[1], &self.h[1])?;
        let (q1, p1) = quotient(&self.groups[0], &self.h[0])?;
        let (q2, p2) = quotient(&self.groups[1], &self.h[1])?;
        let inst = AmalInstance::free_product(q1, q2)?;
        Ok((inst, QuotientProjection { maps: [p1, p2] }))
    }
}

/// Least `k` with `f <= (36m + 12)k - 9`, the product bound that the
/// per-factor estimate `36m + 3` and defect `9` actually give.
pub fn plength_lower_bound(f: u64, m: u64) -> u64 {
    (f + 9).div_ceil(36 * m + 12)
}

/// `(36m + 3)k + 9(k - 1)`.
pub fn product_bound(k: u64, m: u64) -> u64 {
    (36 * m + 12) * k - 9
}

/// The coefficient arrangement `36k + 12mk - 9`. It agrees with
/// [`product_bound`] only at `m = 1` and falls below it for `m >= 2`.
pub fn stated_product_bound(k: u64, m: u64) -> u64 {
    36 * k + 12 * m * k - 9
}

impl fmt::Display for AmalNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h={}", self.h)?;
        for s in &self.reps {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

//! Brute-force oracles and property suites shared by both constructions.
//!
//! Everything here is generic over [`Construction`]. Element sets are always
//! deduplicated by normal form. Sampling uses one ChaCha stream per sample
//! index, and parallel work is merged in input order, so results do not
//! depend on the worker count.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::amalgam::{self, AmalInstance, AmalWord, Syllable};
use crate::error::{Error, Result};
use crate::hnn::{self, HnnInstance, HnnWord, Letter};
use crate::runs::RunStats;

pub const DEFAULT_BALL_CAP: usize = 5_000_000;
pub const DEFAULT_MAX_LEN: usize = 12;
pub const DEFAULT_MAX_K: usize = 6;
/// Longest random word the suites draw.
pub const SAMPLE_LEN: usize = 30;
/// Longest palindrome the suites draw.
pub const PALINDROME_LEN: usize = 31;
pub const SHUFFLES_PER_WORD: usize = 50;

/// What the lab needs from a group construction.
pub trait Construction: Sync {
    type Word: Clone + fmt::Debug + Send + Sync;
    type Letter: Copy + Eq + Hash + fmt::Debug + Send + Sync;
    type Key: Clone + Eq + Hash + fmt::Debug + Send + Sync;

    const KIND: &'static str;
    /// Bound on `|f(xy) - f(x) - f(y)|`.
    const DEFECT: u64;
    /// The suite that checks the element invariant preserved by shuffles.
    const UNIQUENESS_SUITE: Suite;

    /// Non-identity generating letters.
    fn generators(&self) -> Vec<Self::Letter>;
    fn word(&self, letters: &[Self::Letter]) -> Self::Word;
    fn identity(&self) -> Self::Word;
    fn key(&self, w: &Self::Word) -> Self::Key;
    /// Reduced product.
    fn mul(&self, a: &Self::Word, b: &Self::Word) -> Self::Word;
    fn inverse(&self, w: &Self::Word) -> Self::Word;
    fn run_stats(&self, w: &Self::Word) -> Result<RunStats>;
    fn format(&self, w: &Self::Word) -> String;
    fn random_reduced_word(&self, len: usize, rng: &mut ChaCha8Rng) -> Result<Self::Word>;
    fn shuffle(&self, w: &Self::Word, rng: &mut ChaCha8Rng) -> Self::Word;
    fn random_mirror_word(&self, max_letters: usize, rng: &mut ChaCha8Rng) -> Self::Word;
    fn witness_word(&self, k: usize) -> Result<Self::Word>;
    /// Closed form of `f(witness(k))`.
    fn witness_formula(&self, k: u64) -> u64;
    fn uniqueness_invariant(&self, w: &Self::Word) -> String;

    fn lower_bound(&self, f: u64, m: u64) -> u64;
    /// The other coefficient arrangement, where the construction has one.
    fn stated_lower_bound(&self, _f: u64, _m: u64) -> Option<u64> {
        None
    }
    fn palindrome_bound(&self) -> u64;
    fn almost_bound(&self, m: u64) -> u64;
    fn product_bound(&self, k: u64, m: u64) -> u64;
    fn stated_product_bound(&self, _k: u64, _m: u64) -> Option<u64> {
        None
    }

    fn f(&self, w: &Self::Word) -> Result<u64> {
        Ok(self.run_stats(w)?.f)
    }

    fn is_identity(&self, w: &Self::Word) -> bool {
        self.key(w) == self.key(&self.identity())
    }
}

impl Construction for HnnInstance {
    type Word = HnnWord;
    type Letter = Letter;
    type Key = HnnWord;

    const KIND: &'static str = "hnn";
    const DEFECT: u64 = 6;
    const UNIQUENESS_SUITE: Suite = Suite::SignatureUniqueness;

    fn generators(&self) -> Vec<Letter> {
        self.alphabet().into_iter().filter(|&l| l != Letter::G(0)).collect()
    }

    fn word(&self, letters: &[Letter]) -> HnnWord {
        self.reduce(&self.to_alternating(letters).expect("letters come from the alphabet"))
    }

    fn identity(&self) -> HnnWord {
        HnnWord::identity()
    }

    fn key(&self, w: &HnnWord) -> HnnWord {
        self.normal_form(w)
    }

    fn mul(&self, a: &HnnWord, b: &HnnWord) -> HnnWord {
        self.reduce(&HnnInstance::mul(self, a, b))
    }

    fn inverse(&self, w: &HnnWord) -> HnnWord {
        HnnInstance::inverse(self, w)
    }

    fn run_stats(&self, w: &HnnWord) -> Result<RunStats> {
        Ok(HnnInstance::run_stats(self, w))
    }

    fn format(&self, w: &HnnWord) -> String {
        self.format_word(w)
    }

    fn random_reduced_word(&self, len: usize, rng: &mut ChaCha8Rng) -> Result<HnnWord> {
        HnnInstance::random_reduced_word(self, len, rng)
    }

    fn shuffle(&self, w: &HnnWord, rng: &mut ChaCha8Rng) -> HnnWord {
        HnnInstance::shuffle(self, w, rng)
    }

    fn random_mirror_word(&self, max_letters: usize, rng: &mut ChaCha8Rng) -> HnnWord {
        HnnInstance::random_mirror_word(self, max_letters, rng)
    }

    fn witness_word(&self, k: usize) -> Result<HnnWord> {
        HnnInstance::witness_word(self, k)
    }

    fn witness_formula(&self, k: u64) -> u64 {
        k.saturating_sub(1) + k % 2
    }

    fn uniqueness_invariant(&self, w: &HnnWord) -> String {
        self.signature(w).to_string()
    }

    fn lower_bound(&self, f: u64, m: u64) -> u64 {
        hnn::plength_lower_bound(f, m)
    }

    fn palindrome_bound(&self) -> u64 {
        1
    }

    fn almost_bound(&self, m: u64) -> u64 {
        24 * m + 1
    }

    fn product_bound(&self, k: u64, m: u64) -> u64 {
        7 * k + 24 * m * k - 6
    }
}

impl Construction for AmalInstance {
    type Word = AmalWord;
    type Letter = Syllable;
    type Key = amalgam::AmalNormalForm;

    const KIND: &'static str = "amalgam";
    const DEFECT: u64 = 9;
    const UNIQUENESS_SUITE: Suite = Suite::SyllableLength;

    fn generators(&self) -> Vec<Syllable> {
        self.alphabet().into_iter().filter(|s| s.element != 0).collect()
    }

    fn word(&self, letters: &[Syllable]) -> AmalWord {
        self.reduce(&AmalWord(letters.to_vec()))
    }

    fn identity(&self) -> AmalWord {
        AmalWord::identity()
    }

    fn key(&self, w: &AmalWord) -> amalgam::AmalNormalForm {
        self.normal_form(w)
    }

    fn mul(&self, a: &AmalWord, b: &AmalWord) -> AmalWord {
        self.reduce(&AmalInstance::mul(self, a, b))
    }

    fn inverse(&self, w: &AmalWord) -> AmalWord {
        AmalInstance::inverse(self, w)
    }

    fn run_stats(&self, w: &AmalWord) -> Result<RunStats> {
        AmalInstance::run_stats(self, w)
    }

    fn format(&self, w: &AmalWord) -> String {
        self.format_word(w)
    }

    fn random_reduced_word(&self, len: usize, rng: &mut ChaCha8Rng) -> Result<AmalWord> {
        AmalInstance::random_reduced_word(self, len, rng)
    }

    fn shuffle(&self, w: &AmalWord, rng: &mut ChaCha8Rng) -> AmalWord {
        AmalInstance::shuffle(self, w, rng)
    }

    fn random_mirror_word(&self, max_letters: usize, rng: &mut ChaCha8Rng) -> AmalWord {
        AmalInstance::random_mirror_word(self, max_letters, rng)
    }

    fn witness_word(&self, k: usize) -> Result<AmalWord> {
        AmalInstance::witness_word(self, k)
    }

    fn witness_formula(&self, k: u64) -> u64 {
        k
    }

    fn uniqueness_invariant(&self, w: &AmalWord) -> String {
        self.syllable_length(w).to_string()
    }

    fn lower_bound(&self, f: u64, m: u64) -> u64 {
        amalgam::plength_lower_bound(f, m)
    }

    fn stated_lower_bound(&self, f: u64, m: u64) -> Option<u64> {
        Some((f + 9).div_ceil(36 + 12 * m))
    }

    fn palindrome_bound(&self) -> u64 {
        3
    }

    fn almost_bound(&self, m: u64) -> u64 {
        36 * m + 3
    }

    fn product_bound(&self, k: u64, m: u64) -> u64 {
        amalgam::product_bound(k, m)
    }

    fn stated_product_bound(&self, k: u64, m: u64) -> Option<u64> {
        Some(amalgam::stated_product_bound(k, m))
    }
}

/// Worker count from `FREEWIDTH_THREADS`, if set to a positive integer.
pub fn thread_limit() -> Option<usize> {
    std::env::var("FREEWIDTH_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Run `op` on a pool capped by `FREEWIDTH_THREADS`, or on the global pool.
pub fn install<R: Send>(op: impl FnOnce() -> R + Send) -> R {
    let pool = thread_limit().and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok());
    match pool {
        Some(pool) => pool.install(op),
        None => op(),
    }
}

pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Insert `(key, word)` pairs in order, keeping the first word per element.
struct ElementSet<C: Construction> {
    words: Vec<C::Word>,
    index: HashMap<C::Key, usize>,
}

impl<C: Construction> ElementSet<C> {
    fn new() -> Self {
        ElementSet {
            words: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn insert(&mut self, key: C::Key, word: C::Word) -> bool {
        if self.index.contains_key(&key) {
            return false;
        }
        self.index.insert(key, self.words.len());
        self.words.push(word);
        true
    }

    fn len(&self) -> usize {
        self.words.len()
    }

    fn contains(&self, key: &C::Key) -> bool {
        self.index.contains_key(key)
    }
}

#[derive(Clone, Debug)]
pub struct BallEntry<W> {
    pub word: W,
    pub length: usize,
}

/// All elements of letter length at most `radius`, each with a shortest word.
pub struct BallIndex<C: Construction> {
    radius: usize,
    entries: Vec<BallEntry<C::Word>>,
    index: HashMap<C::Key, usize>,
    layers: Vec<usize>,
}

impl<C: Construction> BallIndex<C> {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in BFS order.
    pub fn entries(&self) -> &[BallEntry<C::Word>] {
        &self.entries
    }

    /// Number of elements first reached at each length.
    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    pub fn get(&self, key: &C::Key) -> Option<&BallEntry<C::Word>> {
        self.index.get(key).map(|&i| &self.entries[i])
    }
}

pub fn enumerate_ball<C: Construction>(inst: &C, radius: usize, cap: usize) -> Result<BallIndex<C>> {
    let gens: Vec<C::Word> = inst.generators().iter().map(|&l| inst.word(&[l])).collect();
    let id = inst.identity();
    let mut entries = vec![BallEntry {
        word: id.clone(),
        length: 0,
    }];
    let mut index = HashMap::from([(inst.key(&id), 0)]);
    let mut layers = vec![1];
    let mut frontier = 0..1;
    for length in 1..=radius {
        let candidates: Vec<Vec<(C::Key, C::Word)>> = entries[frontier.clone()]
            .par_iter()
            .map(|e| {
                gens.iter()
                    .map(|g| {
                        let w = inst.mul(&e.word, g);
                        (inst.key(&w), w)
                    })
                    .collect()
            })
            .collect();
        let start = entries.len();
        for (key, word) in candidates.into_iter().flatten() {
            if index.contains_key(&key) {
                continue;
            }
            if entries.len() >= cap {
                return Err(Error::BallCapExceeded { cap });
            }
            index.insert(key, entries.len());
            entries.push(BallEntry { word, length });
        }
        layers.push(entries.len() - start);
        frontier = start..entries.len();
        if frontier.is_empty() {
            break;
        }
    }
    Ok(BallIndex {
        radius,
        entries,
        index,
        layers,
    })
}

/// Elements with a letter word of length at most `max_len` that is within
/// `m` substitutions of a palindrome.
pub struct PalindromeSet<C: Construction> {
    max_len: usize,
    m: usize,
    set: ElementSet<C>,
}

impl<C: Construction> PalindromeSet<C> {
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.len() == 0
    }

    pub fn words(&self) -> &[C::Word] {
        &self.set.words
    }

    pub fn contains(&self, key: &C::Key) -> bool {
        self.set.contains(key)
    }
}

/// Grows palindromes from the middle: level `(L, j)` holds the elements
/// `x p y` with `p` in level `(L - 2, j - [x != y])`.
pub fn enumerate_m_almost_palindromes<C: Construction>(
    inst: &C,
    max_len: usize,
    m: usize,
    cap: usize,
) -> Result<PalindromeSet<C>> {
    let letters = inst.generators();
    let gens: Vec<C::Word> = letters.iter().map(|&l| inst.word(&[l])).collect();
    let id = inst.identity();
    let dedup = |items: Vec<C::Word>| -> Result<Vec<C::Word>> {
        let mut s = ElementSet::<C>::new();
        for w in items {
            s.insert(inst.key(&w), w);
            if s.len() > cap {
                return Err(Error::BallCapExceeded { cap });
            }
        }
        Ok(s.words)
    };
    // levels[L][j], kept for the last two lengths
    let mut even: Vec<Vec<C::Word>> = vec![vec![id.clone()]; m + 1];
    let mut odd: Vec<Vec<C::Word>> = vec![gens.clone(); m + 1];
    let mut all = ElementSet::<C>::new();
    all.insert(inst.key(&id), id.clone());
    if max_len >= 1 {
        for w in &gens {
            all.insert(inst.key(w), w.clone());
        }
    }
    for len in 2..=max_len {
        let prev = if len % 2 == 0 { &even } else { &odd };
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let grown: Vec<Vec<C::Word>> = (0..gens.len())
                .into_par_iter()
                .map(|xi| {
                    let mut out = Vec::new();
                    for (yi, y) in gens.iter().enumerate() {
                        let inner = if xi == yi {
                            &prev[j]
                        } else if j > 0 {
                            &prev[j - 1]
                        } else {
                            continue;
                        };
                        for p in inner {
                            out.push(inst.mul(&inst.mul(&gens[xi], p), y));
                        }
                    }
                    out
                })
                .collect();
            next.push(dedup(grown.into_iter().flatten().collect())?);
        }
        for w in &next[m] {
            all.insert(inst.key(w), w.clone());
            if all.len() > cap {
                return Err(Error::BallCapExceeded { cap });
            }
        }
        if len % 2 == 0 {
            even = next;
        } else {
            odd = next;
        }
    }
    Ok(PalindromeSet { max_len, m, set: all })
}

/// Least number of factors from a [`PalindromeSet`], searched by meeting
/// product levels in the middle. Levels larger than the cap are never built;
/// queries that would need them come back unknown.
pub struct PlengthOracle<'a, C: Construction> {
    inst: &'a C,
    max_k: usize,
    cap: usize,
    palindromes: PalindromeSet<C>,
    levels: Vec<ElementSet<C>>,
    level_cap_hit: bool,
}

impl<'a, C: Construction> PlengthOracle<'a, C> {
    pub fn new(inst: &'a C, m: usize, max_len: usize, max_k: usize, cap: usize) -> Result<Self> {
        let palindromes = enumerate_m_almost_palindromes(inst, max_len, m, cap)?;
        let mut level0 = ElementSet::new();
        let id = inst.identity();
        level0.insert(inst.key(&id), id);
        Ok(PlengthOracle {
            inst,
            max_k,
            cap,
            palindromes,
            levels: vec![level0],
            level_cap_hit: false,
        })
    }

    pub fn palindromes(&self) -> &PalindromeSet<C> {
        &self.palindromes
    }

    fn ensure_level(&mut self, j: usize) -> bool {
        while self.levels.len() <= j {
            if self.level_cap_hit {
                return false;
            }
            let last = self.levels.last().unwrap();
            let ps = self.palindromes.words();
            let inst = self.inst;
            let products: Vec<Vec<(C::Key, C::Word)>> = last
                .words
                .par_iter()
                .map(|x| {
                    ps.iter()
                        .map(|p| {
                            let w = inst.mul(x, p);
                            (inst.key(&w), w)
                        })
                        .collect()
                })
                .collect();
            let mut next = ElementSet::new();
            for (key, w) in products.into_iter().flatten() {
                next.insert(key, w);
                if next.len() > self.cap {
                    self.level_cap_hit = true;
                    return false;
                }
            }
            self.levels.push(next);
        }
        true
    }

    /// `Some(k)` for the least `k <= max_k` found, `None` when the caps stop
    /// the search first.
    pub fn query(&mut self, g: &C::Word) -> Option<usize> {
        let inst = self.inst;
        for k in 0..=self.max_k {
            let a = k.div_ceil(2);
            let b = k - a;
            if !self.ensure_level(a) {
                return None;
            }
            let left = &self.levels[a];
            let found = if b == 0 {
                left.contains(&inst.key(g))
            } else {
                self.levels[b]
                    .words
                    .par_iter()
                    .any(|x| left.contains(&inst.key(&inst.mul(g, &inst.inverse(x)))))
            };
            if found {
                return Some(k);
            }
        }
        None
    }
}

pub fn plength_oracle<C: Construction>(
    inst: &C,
    g: &C::Word,
    m: usize,
    max_len: usize,
    max_k: usize,
    cap: usize,
) -> Result<Option<usize>> {
    Ok(PlengthOracle::new(inst, m, max_len, max_k, cap)?.query(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Defect,
    Nfold,
    Palindrome,
    Almost,
    Product,
    SignatureUniqueness,
    SyllableLength,
    InverseSymmetry,
    OracleConsistency,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Defect,
        Suite::Nfold,
        Suite::Palindrome,
        Suite::Almost,
        Suite::Product,
        Suite::SignatureUniqueness,
        Suite::SyllableLength,
        Suite::InverseSymmetry,
        Suite::OracleConsistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Defect => "defect",
            Suite::Nfold => "nfold",
            Suite::Palindrome => "palindrome",
            Suite::Almost => "almost",
            Suite::Product => "product",
            Suite::SignatureUniqueness => "signature-uniqueness",
            Suite::SyllableLength => "syllable-length",
            Suite::InverseSymmetry => "inverse-symmetry",
            Suite::OracleConsistency => "oracle-consistency",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::SuiteUnknown(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub samples: usize,
    pub seed: u64,
    /// Ball radius for oracle-consistency.
    pub radius: usize,
    pub m: usize,
    pub max_len: usize,
    pub max_k: usize,
    pub cap: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            samples: 1000,
            seed: 0,
            radius: 6,
            m: 0,
            max_len: DEFAULT_MAX_LEN,
            max_k: DEFAULT_MAX_K,
            cap: DEFAULT_BALL_CAP,
        }
    }
}

/// One inequality tracked across a suite: largest value seen vs its bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub label: String,
    pub bound: u64,
    /// The bound under the other coefficient arrangement, for comparison.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stated_bound: Option<u64>,
    pub max_observed: u64,
    pub checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub sample: usize,
    pub check: String,
    pub observed: u64,
    pub bound: u64,
    pub word: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub construction: &'static str,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<BoundCheck>,
    pub violations: Vec<Violation>,
    /// Counts that are informative but not bounded, such as unknown oracle
    /// answers.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<(String, u64)>,
    /// Wall time; left out of JSON so reports stay reproducible.
    #[serde(skip)]
    pub runtime: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&self, label: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.label == label)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} on {} ({} samples, seed {}, {:.2?})",
            self.suite, self.construction, self.samples, self.seed, self.runtime
        )?;
        writeln!(f, "{:<40} {:>10} {:>10} {:>8}", "check", "max", "bound", "checked")?;
        for c in &self.checks {
            write!(
                f,
                "{:<40} {:>10} {:>10} {:>8}",
                c.label, c.max_observed, c.bound, c.checked
            )?;
            if let Some(s) = c.stated_bound {
                write!(f, "  (stated coefficients: {s})")?;
            }
            writeln!(f)?;
        }
        for (label, n) in &self.notes {
            writeln!(f, "{label}: {n}")?;
        }
        if self.violations.is_empty() {
            write!(f, "violations: none")
        } else {
            writeln!(f, "violations: {}", self.violations.len())?;
            for v in self.violations.iter().take(10) {
                writeln!(
                    f,
                    "  sample {} {}: {} > {} on {}",
                    v.sample, v.check, v.observed, v.bound, v.word
                )?;
            }
            Ok(())
        }
    }
}

/// A value observed on one sample for check number `check`.
struct Obs {
    check: usize,
    observed: u64,
    word: Option<String>,
}

struct Collector {
    checks: Vec<BoundCheck>,
    violations: Vec<Violation>,
}

impl Collector {
    fn new(checks: Vec<(String, u64, Option<u64>)>) -> Self {
        Collector {
            checks: checks
                .into_iter()
                .map(|(label, bound, stated_bound)| BoundCheck {
                    label,
                    bound,
                    stated_bound,
                    max_observed: 0,
                    checked: 0,
                })
                .collect(),
            violations: Vec::new(),
        }
    }

    fn absorb(&mut self, sample: usize, obs: Vec<Obs>) {
        for o in obs {
            let c = &mut self.checks[o.check];
            c.checked += 1;
            c.max_observed = c.max_observed.max(o.observed);
            if o.observed > c.bound {
                self.violations.push(Violation {
                    sample,
                    check: c.label.clone(),
                    observed: o.observed,
                    bound: c.bound,
                    word: o.word.unwrap_or_default(),
                });
            }
        }
    }
}

fn run_samples<F>(samples: usize, seed: u64, collector: &mut Collector, per_sample: F) -> Result<()>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Vec<Obs>> + Sync,
{
    let results: Vec<Result<Vec<Obs>>> = (0..samples)
        .into_par_iter()
        .map(|i| per_sample(&mut sample_rng(seed, i)))
        .collect();
    for (i, r) in results.into_iter().enumerate() {
        collector.absorb(i, r?);
    }
    Ok(())
}

fn random_length(rng: &mut ChaCha8Rng, max: usize) -> usize {
    rng.gen_range(0..=max)
}

/// A letter palindrome of length at most `max_len` with up to `m` positions
/// replaced by random letters.
pub fn random_mutated_palindrome<C: Construction>(inst: &C, max_len: usize, m: usize, rng: &mut ChaCha8Rng) -> C::Word {
    let gens = inst.generators();
    let len = random_length(rng, max_len);
    let mut letters: Vec<C::Letter> = (0..len.div_ceil(2))
        .map(|_| gens[rng.gen_range(0..gens.len())])
        .collect();
    for i in (0..len / 2).rev() {
        letters.push(letters[i]);
    }
    if len > 0 {
        for _ in 0..m {
            let pos = rng.gen_range(0..len);
            letters[pos] = gens[rng.gen_range(0..gens.len())];
        }
    }
    inst.word(&letters)
}

fn bounded<C: Construction>(inst: &C, check: usize, observed: u64, bound: u64, w: impl FnOnce() -> C::Word) -> Obs {
    Obs {
        check,
        observed,
        word: (observed > bound).then(|| inst.format(&w())),
    }
}

pub fn verify_suite<C: Construction>(inst: &C, suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    install(|| verify_suite_inner(inst, suite, params))
}

fn verify_suite_inner<C: Construction>(inst: &C, suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut notes = Vec::new();
    let n = params.samples;
    let seed = params.seed;
    let collector = match suite {
        Suite::Defect => {
            let d = C::DEFECT;
            let mut c = Collector::new(vec![("|f(xy) - f(x) - f(y)|".into(), d, None)]);
            run_samples(n, seed, &mut c, |rng| {
                let a = inst.random_reduced_word(random_length(rng, SAMPLE_LEN), rng)?;
                let b = inst.random_reduced_word(random_length(rng, SAMPLE_LEN), rng)?;
                let ab = inst.mul(&a, &b);
                let delta = (inst.f(&ab)? as i64 - inst.f(&a)? as i64 - inst.f(&b)? as i64).unsigned_abs();
                Ok(vec![bounded(inst, 0, delta, d, || {
                    inst.mul(&inst.mul(&a, &inst.identity()), &b)
                })])
            })?;
            c
        }
        Suite::Nfold => {
            let ns = 2..=6usize;
            let mut c = Collector::new(
                ns.clone()
                    .map(|k| {
                        (
                            format!("n={k}: |f(x1..xn) - sum f(xi)|"),
                            C::DEFECT * (k as u64 - 1),
                            None,
                        )
                    })
                    .collect(),
            );
            run_samples(n, seed, &mut c, |rng| {
                let mut out = Vec::new();
                for (ci, k) in ns.clone().enumerate() {
                    let words = (0..k)
                        .map(|_| inst.random_reduced_word(random_length(rng, SAMPLE_LEN), rng))
                        .collect::<Result<Vec<_>>>()?;
                    let prod = words.iter().fold(inst.identity(), |acc, w| inst.mul(&acc, w));
                    let sum: i64 = words.iter().map(|w| inst.f(w).map(|x| x as i64)).sum::<Result<i64>>()?;
                    let delta = (inst.f(&prod)? as i64 - sum).unsigned_abs();
                    out.push(bounded(inst, ci, delta, C::DEFECT * (k as u64 - 1), || prod.clone()));
                }
                Ok(out)
            })?;
            c
        }
        Suite::Palindrome => {
            let b = inst.palindrome_bound();
            let mut c = Collector::new(vec![("f(group-palindrome)".into(), b, None)]);
            run_samples(n, seed, &mut c, |rng| {
                let w = inst.random_mirror_word(PALINDROME_LEN, rng);
                let w = inst.shuffle(&w, rng);
                let f = inst.f(&w)?;
                Ok(vec![bounded(inst, 0, f, b, || w.clone())])
            })?;
            c
        }
        Suite::Almost => {
            let ms = 1..=3u64;
            let mut c = Collector::new(
                ms.clone()
                    .map(|m| (format!("m={m}: f(mutated palindrome)"), inst.almost_bound(m), None))
                    .collect(),
            );
            run_samples(n, seed, &mut c, |rng| {
                let mut out = Vec::new();
                for (ci, m) in ms.clone().enumerate() {
                    let w = random_mutated_palindrome(inst, PALINDROME_LEN, m as usize, rng);
                    let f = inst.f(&w)?;
                    out.push(bounded(inst, ci, f, inst.almost_bound(m), || w.clone()));
                }
                Ok(out)
            })?;
            c
        }
        Suite::Product => {
            let grid: Vec<(u64, u64)> = (2..=4).flat_map(|k| (0..=1).map(move |m| (k, m))).collect();
            let mut c = Collector::new(
                grid.iter()
                    .map(|&(k, m)| {
                        (
                            format!("k={k} m={m}: f(product)"),
                            inst.product_bound(k, m),
                            inst.stated_product_bound(k, m),
                        )
                    })
                    .collect(),
            );
            run_samples(n, seed, &mut c, |rng| {
                let mut out = Vec::new();
                for (ci, &(k, m)) in grid.iter().enumerate() {
                    let prod = (0..k).fold(inst.identity(), |acc, _| {
                        let p = random_mutated_palindrome(inst, PALINDROME_LEN, m as usize, rng);
                        inst.mul(&acc, &p)
                    });
                    let f = inst.f(&prod)?;
                    out.push(bounded(inst, ci, f, inst.product_bound(k, m), || prod.clone()));
                }
                Ok(out)
            })?;
            c
        }
        Suite::SignatureUniqueness | Suite::SyllableLength => {
            if suite != C::UNIQUENESS_SUITE {
                return Err(Error::SuiteNotApplicable {
                    suite: suite.name().to_string(),
                    construction: C::KIND,
                });
            }
            let mut c = Collector::new(vec![("shuffles changing the invariant".into(), 0, None)]);
            run_samples(n, seed, &mut c, |rng| {
                let w = inst.random_reduced_word(random_length(rng, SAMPLE_LEN), rng)?;
                let expected = inst.uniqueness_invariant(&w);
                let mut bad = 0;
                let mut example = None;
                for _ in 0..SHUFFLES_PER_WORD {
                    let s = inst.shuffle(&w, rng);
                    if inst.uniqueness_invariant(&s) != expected {
                        bad += 1;
                        example.get_or_insert(s);
                    }
                }
                Ok(vec![bounded(inst, 0, bad, 0, || example.unwrap())])
            })?;
            c
        }
        Suite::InverseSymmetry => {
            let mut c = Collector::new(vec![
                ("|f(w^-1) - f(w)|".into(), 0, None),
                ("k with d_k(w) + d_k(w^-1) != 0".into(), 0, None),
            ]);
            run_samples(n, seed, &mut c, |rng| {
                let gens = inst.generators();
                let len = random_length(rng, SAMPLE_LEN);
                let letters: Vec<C::Letter> = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
                let w = inst.word(&letters);
                let s = inst.run_stats(&w)?;
                let si = inst.run_stats(&inst.inverse(&w))?;
                let df = s.f.abs_diff(si.f);
                let ks: HashSet<usize> =
                    s.p.keys()
                        .chain(s.m.keys())
                        .chain(si.p.keys())
                        .chain(si.m.keys())
                        .copied()
                        .collect();
                let bad = ks.into_iter().filter(|&k| s.d(k) + si.d(k) != 0).count() as u64;
                Ok(vec![
                    bounded(inst, 0, df, 0, || w.clone()),
                    bounded(inst, 1, bad, 0, || w.clone()),
                ])
            })?;
            c
        }
        Suite::OracleConsistency => {
            let ball = enumerate_ball(inst, params.radius, params.cap)?;
            let mut oracle = PlengthOracle::new(inst, params.m, params.max_len, params.max_k, params.cap)?;
            let candidates: Vec<usize> = (1..ball.len()).collect();
            let chosen: Vec<usize> = if candidates.len() <= n {
                candidates
            } else {
                let mut rng = sample_rng(seed, 0);
                let mut idx: Vec<usize> = sample_indices(&mut rng, candidates.len(), n)
                    .into_iter()
                    .map(|i| candidates[i])
                    .collect();
                idx.sort_unstable();
                idx
            };
            let mut c = Collector::new(vec![
                ("lower bound - oracle value".into(), 0, None),
                ("oracle value".into(), params.max_k as u64, None),
            ]);
            let mut unknown = 0;
            let m = params.m as u64;
            for (i, &e) in chosen.iter().enumerate() {
                let w = &ball.entries()[e].word;
                match oracle.query(w) {
                    Some(k) => {
                        let lb = inst.lower_bound(inst.f(w)?, m);
                        let gap = lb.saturating_sub(k as u64);
                        c.absorb(
                            i,
                            vec![
                                bounded(inst, 0, gap, 0, || w.clone()),
                                bounded(inst, 1, k as u64, params.max_k as u64, || w.clone()),
                            ],
                        );
                    }
                    None => unknown += 1,
                }
            }
            notes.push(("ball elements".to_string(), ball.len() as u64));
            notes.push(("elements checked".to_string(), chosen.len() as u64));
            notes.push(("oracle unknown".to_string(), unknown));
            c
        }
    };
    Ok(SuiteReport {
        suite,
        construction: C::KIND,
        samples: n,
        seed,
        checks: collector.checks,
        violations: collector.violations,
        notes,
        runtime: start.elapsed(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub k: usize,
    pub f: u64,
    pub expected_f: u64,
    pub lower_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stated_lower_bound: Option<u64>,
}

/// First `K` at which the bound exceeds `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub c: u64,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub construction: &'static str,
    pub m: u64,
    pub k_max: usize,
    pub rows: Vec<GrowthRow>,
    pub crossings: Vec<Crossing>,
    pub formula_holds: bool,
    pub monotone: bool,
}

impl GrowthReport {
    pub fn bound_at(&self, k: usize) -> Option<u64> {
        self.rows.iter().find(|r| r.k == k).map(|r| r.lower_bound)
    }

    pub fn first_exceeding(&self, c: u64) -> Option<usize> {
        self.crossings.iter().find(|x| x.c == c).map(|x| x.k)
    }
}

impl fmt::Display for GrowthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "witness growth on {} (m = {})", self.construction, self.m)?;
        writeln!(f, "{:>5} {:>6} {:>9} {:>6}", "K", "f", "expected", "bound")?;
        for r in &self.rows {
            write!(f, "{:>5} {:>6} {:>9} {:>6}", r.k, r.f, r.expected_f, r.lower_bound)?;
            if let Some(s) = r.stated_lower_bound {
                write!(f, "  (stated coefficients: {s})")?;
            }
            writeln!(f)?;
        }
        for x in &self.crossings {
            writeln!(f, "bound > {} from K = {}", x.c, x.k)?;
        }
        write!(f, "formula holds: {}, monotone: {}", self.formula_holds, self.monotone)
    }
}

pub fn growth_report<C: Construction>(inst: &C, m: u64, k_max: usize) -> Result<GrowthReport> {
    let rows = install(|| {
        (1..=k_max)
            .into_par_iter()
            .map(|k| {
                let f = inst.f(&inst.witness_word(k)?)?;
                Ok(GrowthRow {
                    k,
                    f,
                    expected_f: inst.witness_formula(k as u64),
                    lower_bound: inst.lower_bound(f, m),
                    stated_lower_bound: inst.stated_lower_bound(f, m),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let formula_holds = rows.iter().all(|r| r.f == r.expected_f);
    let monotone = rows.windows(2).all(|p| p[0].lower_bound <= p[1].lower_bound);
    let top = rows.iter().map(|r| r.lower_bound).max().unwrap_or(0);
    let crossings = (0..top)
        .filter_map(|c| rows.iter().find(|r| r.lower_bound > c).map(|r| Crossing { c, k: r.k }))
        .collect();
    Ok(GrowthReport {
        construction: C::KIND,
        m,
        k_max,
        rows,
        crossings,
        formula_holds,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn z2z2() -> AmalInstance {
        AmalInstance::free_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)).unwrap()
    }

    fn z5z2() -> AmalInstance {
        AmalInstance::free_product(FiniteGroup::cyclic(5), FiniteGroup::cyclic(2)).unwrap()
    }

    fn z4hnn() -> HnnInstance {
        HnnInstance::new(FiniteGroup::cyclic(4), &[0, 2], &[0, 2], &[(0, 0), (2, 2)]).unwrap()
    }

    // Alternating normal forms of a free product with syllable length <= r:
    // choose a starting factor, then any non-identity element per syllable.
    fn free_product_ball_size(n1: usize, n2: usize, r: usize) -> usize {
        let mut total = 1;
        for len in 1..=r {
            let mut start1 = 1;
            let mut start2 = 1;
            for i in 0..len {
                start1 *= if i % 2 == 0 { n1 - 1 } else { n2 - 1 };
                start2 *= if i % 2 == 0 { n2 - 1 } else { n1 - 1 };
            }
            total += start1 + start2;
        }
        total
    }

    #[test]
    fn ball_examples() {
        let z = z2z2();
        assert_eq!(enumerate_ball(&z, 0, DEFAULT_BALL_CAP).unwrap().len(), 1);
        assert_eq!(enumerate_ball(&z, 3, DEFAULT_BALL_CAP).unwrap().len(), 7);
        // each letter is a whole syllable, so letter radius = syllable length
        let z = z5z2();
        for r in 0..=5 {
            assert_eq!(
                enumerate_ball(&z, r, DEFAULT_BALL_CAP).unwrap().len(),
                free_product_ball_size(5, 2, r)
            );
        }
        assert!(matches!(
            enumerate_ball(&z, 5, 10),
            Err(Error::BallCapExceeded { cap: 10 })
        ));
    }

    #[test]
    fn ball_layers_are_bfs() {
        let h = z4hnn();
        let ball = enumerate_ball(&h, 4, DEFAULT_BALL_CAP).unwrap();
        let lengths: Vec<usize> = ball.entries().iter().map(|e| e.length).collect();
        assert!(lengths.windows(2).all(|p| p[0] <= p[1]));
        assert_eq!(ball.layers().iter().sum::<usize>(), ball.len());
        // a shortest word never needs more letters than its layer
        for e in ball.entries() {
            assert!(e.word.letters().len() <= e.length);
        }
    }

    #[test]
    fn palindrome_sets_match_ball_filter() {
        let z = z2z2();
        let p0 = enumerate_m_almost_palindromes(&z, 6, 0, DEFAULT_BALL_CAP).unwrap();
        // brute force over every letter word up to length 6
        let gens = z.generators();
        let mut expected = HashSet::new();
        for len in 0..=6u32 {
            for code in 0..gens.len().pow(len) {
                let mut c = code;
                let letters: Vec<Syllable> = (0..len)
                    .map(|_| {
                        let l = gens[c % gens.len()];
                        c /= gens.len();
                        l
                    })
                    .collect();
                if crate::palindrome::mirror_mismatches(&letters) == 0 {
                    expected.insert(z.normal_form(&AmalWord(letters)));
                }
            }
        }
        assert_eq!(p0.len(), expected.len());
        assert!(expected.iter().all(|k| p0.contains(k)));
    }

    #[test]
    fn palindrome_chain_and_single_letters() {
        let h = z4hnn();
        let sets: Vec<_> = (0..=2)
            .map(|m| enumerate_m_almost_palindromes(&h, 5, m, DEFAULT_BALL_CAP).unwrap())
            .collect();
        for pair in sets.windows(2) {
            for w in pair[0].words() {
                assert!(pair[1].contains(&h.normal_form(w)));
            }
        }
        let p1 = enumerate_m_almost_palindromes(&h, 1, 0, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(p1.len(), 1 + h.generators().len());
    }

    #[test]
    fn oracle_examples() {
        let h = z4hnn();
        let mut o = PlengthOracle::new(&h, 0, 8, 4, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(o.query(&HnnWord::identity()), Some(0));
        for g in h.generators() {
            assert_eq!(o.query(&h.word(&[g])), Some(1));
        }
        let z = z2z2();
        let ball = enumerate_ball(&z, 10, DEFAULT_BALL_CAP).unwrap();
        let mut o = PlengthOracle::new(&z, 0, 12, 4, DEFAULT_BALL_CAP).unwrap();
        for e in ball.entries() {
            assert!(o.query(&e.word).unwrap() <= 2);
        }
    }

    #[test]
    fn oracle_monotone_in_m() {
        let z = z5z2();
        let ball = enumerate_ball(&z, 4, DEFAULT_BALL_CAP).unwrap();
        let mut o0 = PlengthOracle::new(&z, 0, 6, 4, DEFAULT_BALL_CAP).unwrap();
        let mut o1 = PlengthOracle::new(&z, 1, 6, 4, DEFAULT_BALL_CAP).unwrap();
        for e in ball.entries() {
            if let (Some(a), Some(b)) = (o0.query(&e.word), o1.query(&e.word)) {
                assert!(b <= a);
            }
        }
    }

    #[test]
    fn oracle_unknown_under_caps() {
        let z = z5z2();
        let w = z.witness_word(6).unwrap();
        let mut o = PlengthOracle::new(&z, 0, 2, 1, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(o.query(&w), None);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("bogus".parse::<Suite>(), Err(Error::SuiteUnknown("bogus".into())));
    }

    #[test]
    fn suites_are_seed_deterministic() {
        let h = z4hnn();
        let params = SuiteParams {
            samples: 50,
            seed: 9,
            ..SuiteParams::default()
        };
        let a = verify_suite(&h, Suite::Defect, &params).unwrap();
        let b = verify_suite(&h, Suite::Defect, &params).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn uniqueness_suite_must_match_construction() {
        let params = SuiteParams {
            samples: 1,
            ..SuiteParams::default()
        };
        assert!(matches!(
            verify_suite(&z5z2(), Suite::SignatureUniqueness, &params),
            Err(Error::SuiteNotApplicable { .. })
        ));
        assert!(matches!(
            verify_suite(&z4hnn(), Suite::SyllableLength, &params),
            Err(Error::SuiteNotApplicable { .. })
        ));
    }

    #[test]
    fn growth_examples() {
        let h = growth_report(&z4hnn(), 0, 64).unwrap();
        assert!(h.formula_holds && h.monotone);
        assert!(h.bound_at(64).unwrap() >= 10);
        let a = growth_report(&z5z2(), 0, 63).unwrap();
        assert!(a.bound_at(63).unwrap() >= 6);
        assert_eq!(a.first_exceeding(0), Some(1));
    }
}

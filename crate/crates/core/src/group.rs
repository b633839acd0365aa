//! Finite groups given by Cayley tables, and the subgroup, coset and
//! double-coset machinery the constructions are built from.
//!
//! Elements are indices `0..order`, with `0` the identity in every table.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::runs::Sign;

/// Largest order accepted; associativity is checked exhaustively up to here.
pub const ORDER_CAP: usize = 512;

/// On-disk form of a group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default)]
    pub name: String,
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mult: Vec<u16>,
    inv: Vec<u16>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validate a multiplication table.
    pub fn from_table(name: impl Into<String>, mult: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self> {
        let order = mult.len();
        if order > ORDER_CAP {
            return Err(Error::OrderCapExceeded { order, cap: ORDER_CAP });
        }
        let not_a_group = |reason: String, triple: Option<[usize; 3]>| Error::NotAGroup { reason, triple };
        if order == 0 {
            return Err(not_a_group("empty table".into(), None));
        }
        for (i, row) in mult.iter().enumerate() {
            if row.len() != order {
                return Err(not_a_group(
                    format!("row {i} has {} entries, expected {order}", row.len()),
                    None,
                ));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                return Err(not_a_group(format!("entry {bad} in row {i} is out of range"), None));
            }
        }
        if let Some(n) = &names {
            if n.len() != order {
                return Err(not_a_group(
                    format!("{} names given for {order} elements", n.len()),
                    None,
                ));
            }
        }
        for g in 0..order {
            if mult[0][g] != g || mult[g][0] != g {
                return Err(not_a_group(format!("0 is not an identity for {g}"), None));
            }
        }
        let mut inv = vec![0u16; order];
        for g in 0..order {
            match (0..order).find(|&h| mult[g][h] == 0 && mult[h][g] == 0) {
                Some(h) => inv[g] = h as u16,
                None => return Err(not_a_group(format!("no inverse for {g}"), None)),
            }
        }
        for g in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for h in 0..order {
                if std::mem::replace(&mut row_seen[mult[g][h]], true) {
                    return Err(not_a_group(format!("row {g} is not a permutation"), None));
                }
                if std::mem::replace(&mut col_seen[mult[h][g]], true) {
                    return Err(not_a_group(format!("column {g} is not a permutation"), None));
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mult[a][b];
                for c in 0..order {
                    if mult[ab][c] != mult[a][mult[b][c]] {
                        return Err(not_a_group(format!("({a}*{b})*{c} != {a}*({b}*{c})"), Some([a, b, c])));
                    }
                }
            }
        }
        let flat = mult.iter().flatten().map(|&x| x as u16).collect();
        Ok(FiniteGroup {
            name: name.into(),
            order,
            mult: flat,
            inv,
            names,
        })
    }

    pub fn from_file(file: &GroupFile) -> Result<Self> {
        if file.order != file.mult.len() {
            if file.order > ORDER_CAP {
                return Err(Error::OrderCapExceeded {
                    order: file.order,
                    cap: ORDER_CAP,
                });
            }
            return Err(Error::NotAGroup {
                reason: format!("order {} but {} rows", file.order, file.mult.len()),
                triple: None,
            });
        }
        Self::from_table(file.name.clone(), &file.mult, file.names.clone())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: GroupFile = serde_json::from_str(&text)?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            name: self.name.clone(),
            order: self.order,
            mult: (0..self.order)
                .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
                .collect(),
            names: self.names.clone(),
        }
    }

    /// `Z/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(format!("Z{n}"), &table, None).expect("cyclic table is a group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn element_name(&self, g: usize) -> String {
        match &self.names {
            Some(n) => n[g].clone(),
            None => g.to_string(),
        }
    }

    /// Resolve a token that is either an element index or a display name.
    pub fn parse_element(&self, token: &str) -> Option<usize> {
        if let Ok(i) = token.parse::<usize>() {
            return (i < self.order).then_some(i);
        }
        self.names.as_ref()?.iter().position(|n| n == token)
    }

    pub fn check_element(&self, g: usize) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: g,
                order: self.order,
            })
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        subgroup_check(g, &[0]).expect("trivial subgroup")
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let all: Vec<usize> = g.elements().collect();
        subgroup_check(g, &all).expect("whole group")
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    pub fn index(&self) -> usize {
        self.mask.len() / self.members.len()
    }

    pub fn is_proper(&self) -> bool {
        self.members.len() < self.mask.len()
    }
}

/// Check that `members` is a subgroup of `g`.
pub fn subgroup_check(g: &FiniteGroup, members: &[usize]) -> Result<Subgroup> {
    for &x in members {
        g.check_element(x)?;
    }
    let set: BTreeSet<usize> = members.iter().copied().collect();
    if !set.contains(&0) {
        return Err(Error::MissingIdentity);
    }
    let mut mask = vec![false; g.order()];
    for &x in &set {
        mask[x] = true;
    }
    for &a in &set {
        for &b in &set {
            if !mask[g.mul(a, b)] {
                return Err(Error::NotClosed { a, b });
            }
        }
    }
    // closure under products suffices for a finite set, but keep the check explicit
    debug_assert!(set.iter().all(|&a| mask[g.inv(a)]));
    Ok(Subgroup {
        members: set.into_iter().collect(),
        mask,
    })
}

/// A validated isomorphism between two subgroups, possibly of different groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupIso {
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl SubgroupIso {
    pub fn apply(&self, x: usize) -> usize {
        self.forward[x].expect("element outside the isomorphism's domain")
    }

    pub fn apply_inv(&self, y: usize) -> usize {
        self.backward[y].expect("element outside the isomorphism's codomain")
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.forward
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
            .collect()
    }

    pub fn identity_on(g: &FiniteGroup, h: &Subgroup) -> Self {
        let pairs: Vec<(usize, usize)> = h.members().iter().map(|&x| (x, x)).collect();
        iso_check(g, h, g, h, &pairs).expect("identity map")
    }
}

/// Validate `pairs` as an isomorphism `h1 -> h2` where `h1 <= dom` and
/// `h2 <= cod`.
pub fn iso_check(
    dom: &FiniteGroup,
    h1: &Subgroup,
    cod: &FiniteGroup,
    h2: &Subgroup,
    pairs: &[(usize, usize)],
) -> Result<SubgroupIso> {
    let mut forward = vec![None; dom.order()];
    for &(x, y) in pairs {
        dom.check_element(x)?;
        cod.check_element(y)?;
        if !h1.contains(x) {
            return Err(Error::NotBijective {
                reason: format!("{x} is not in the domain subgroup"),
            });
        }
        if !h2.contains(y) {
            return Err(Error::NotBijective {
                reason: format!("{y} is not in the codomain subgroup"),
            });
        }
        match forward[x] {
            Some(prev) if prev != y => {
                return Err(Error::NotBijective {
                    reason: format!("{x} is sent to both {prev} and {y}"),
                })
            }
            _ => forward[x] = Some(y),
        }
    }
    if let Some(&x) = h1.members().iter().find(|&&x| forward[x].is_none()) {
        return Err(Error::NotBijective {
            reason: format!("{x} has no image"),
        });
    }
    if forward[0] != Some(0) {
        return Err(Error::NotHomomorphism { x: 0, y: 0 });
    }
    let mut backward = vec![None; cod.order()];
    for &x in h1.members() {
        let y = forward[x].unwrap();
        if let Some(other) = backward[y] {
            return Err(Error::NotBijective {
                reason: format!("{other} and {x} share the image {y}"),
            });
        }
        backward[y] = Some(x);
    }
    if h1.len() != h2.len() {
        return Err(Error::NotBijective {
            reason: format!("domain has {} elements, codomain {}", h1.len(), h2.len()),
        });
    }
    for &x in h1.members() {
        for &y in h1.members() {
            let lhs = forward[dom.mul(x, y)].unwrap();
            let rhs = cod.mul(forward[x].unwrap(), forward[y].unwrap());
            if lhs != rhs {
                return Err(Error::NotHomomorphism { x, y });
            }
        }
    }
    Ok(SubgroupIso { forward, backward })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Cosets `xH`.
    Left,
    /// Cosets `Hx`.
    Right,
}

/// One representative per coset, each the least index in its coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    side: Side,
    reps: Vec<usize>,
    rep_of: Vec<usize>,
}

impl Transversal {
    pub fn side(&self) -> Side {
        self.side
    }

    /// Representatives in increasing order; the first is always 0.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn rep(&self, x: usize) -> usize {
        self.rep_of[x]
    }

    pub fn coset_index(&self, x: usize) -> usize {
        self.reps.binary_search(&self.rep_of[x]).expect("rep is listed")
    }

    /// For a right transversal, write `x = h * rep` and return `(h, rep)`.
    pub fn split(&self, g: &FiniteGroup, x: usize) -> (usize, usize) {
        let rep = self.rep_of[x];
        match self.side {
            Side::Right => (g.mul(x, g.inv(rep)), rep),
            Side::Left => (g.mul(g.inv(rep), x), rep),
        }
    }
}

pub fn cosets(g: &FiniteGroup, h: &Subgroup, side: Side) -> Transversal {
    let mut rep_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if rep_of[x] != usize::MAX {
            continue;
        }
        reps.push(x);
        for &u in h.members() {
            let y = match side {
                Side::Left => g.mul(x, u),
                Side::Right => g.mul(u, x),
            };
            rep_of[y] = x;
        }
    }
    Transversal { side, reps, rep_of }
}

/// `{u * a * v : u, v in H}`, sorted.
pub fn double_coset(g: &FiniteGroup, h: &Subgroup, a: usize) -> Vec<usize> {
    let mut set = BTreeSet::new();
    for &u in h.members() {
        let ua = g.mul(u, a);
        for &v in h.members() {
            set.insert(g.mul(ua, v));
        }
    }
    set.into_iter().collect()
}

fn left_coset(g: &FiniteGroup, h: &Subgroup, a: usize) -> BTreeSet<usize> {
    h.members().iter().map(|&u| g.mul(a, u)).collect()
}

/// `Ok(())` when `g * h * g^-1` stays in `H` for every pair.
pub fn normality(g: &FiniteGroup, h: &Subgroup) -> Result<()> {
    for x in g.elements() {
        let xi = g.inv(x);
        for &u in h.members() {
            if !h.contains(g.mul(g.mul(x, u), xi)) {
                return Err(Error::NotNormal { h: u, g: x });
            }
        }
    }
    Ok(())
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    normality(g, h).is_ok()
}

/// `G/H` together with the projection `G -> G/H`. Cosets are numbered in
/// the order of their least representatives.
pub fn quotient(g: &FiniteGroup, h: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
    normality(g, h)?;
    let t = cosets(g, h, Side::Left);
    let proj: Vec<usize> = g.elements().map(|x| t.coset_index(x)).collect();
    let reps = t.reps();
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| proj[g.mul(a, b)]).collect())
        .collect();
    let names = reps.iter().map(|&r| format!("{}H", g.element_name(r))).collect();
    let q = FiniteGroup::from_table(format!("{}/H", g.name()), &table, Some(names))?;
    Ok((q, proj))
}

/// `g = left * a^theta * right` with `left`, `right` in `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Presentation {
    pub left: usize,
    pub theta: Sign,
    pub right: usize,
}

/// A chosen decomposition `u * a^θ * u'` for every element that is marked
/// as an occurrence of `a` or `a^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPresentationTable {
    a: usize,
    entries: BTreeMap<usize, Presentation>,
}

fn first_decomposition(g: &FiniteGroup, h: &Subgroup, base: usize, target: usize) -> Option<(usize, usize)> {
    for &u in h.members() {
        let ub = g.mul(u, base);
        for &v in h.members() {
            if g.mul(ub, v) == target {
                return Some((u, v));
            }
        }
    }
    None
}

impl FixedPresentationTable {
    /// Self-inverse double coset `HaH = Ha^-1H`: pair each `x` with `x^-1`,
    /// give the smaller index `θ = +1` with the first `(u, u')` in row-major
    /// `H × H` order, and give the partner the inverse presentation.
    pub fn self_inverse(g: &FiniteGroup, h: &Subgroup, a: usize) -> Result<Self> {
        let dc = double_coset(g, h, a);
        if let Some(&x) = dc.iter().find(|&&x| g.inv(x) == x) {
            return Err(Error::OrderTwoInDoubleCoset { a, element: x });
        }
        let mut entries = BTreeMap::new();
        for &x in &dc {
            let xi = g.inv(x);
            if x > xi {
                continue;
            }
            let (u, v) = first_decomposition(g, h, a, x).expect("x lies in HaH");
            entries.insert(
                x,
                Presentation {
                    left: u,
                    theta: Sign::Plus,
                    right: v,
                },
            );
            entries.insert(
                xi,
                Presentation {
                    left: g.inv(v),
                    theta: Sign::Minus,
                    right: g.inv(u),
                },
            );
        }
        Ok(FixedPresentationTable { a, entries })
    }

    /// Disjoint double cosets `HaH != Ha^-1H`: `θ` is read off from
    /// membership, `(u, u')` is the first row-major pair on `HaH`, and
    /// `Ha^-1H` gets the inverse presentations.
    pub fn disjoint(g: &FiniteGroup, h: &Subgroup, a: usize) -> Result<Self> {
        let plus = double_coset(g, h, a);
        let ai = g.inv(a);
        let minus = double_coset(g, h, ai);
        if plus == minus {
            return Err(Error::WitnessNotApplicable {
                reason: format!("HaH = Ha^-1H for a = {a}"),
            });
        }
        let mut entries = BTreeMap::new();
        for &x in &plus {
            let (u, v) = first_decomposition(g, h, a, x).expect("x lies in HaH");
            entries.insert(
                x,
                Presentation {
                    left: u,
                    theta: Sign::Plus,
                    right: v,
                },
            );
            entries.insert(
                g.inv(x),
                Presentation {
                    left: g.inv(v),
                    theta: Sign::Minus,
                    right: g.inv(u),
                },
            );
        }
        Ok(FixedPresentationTable { a, entries })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn get(&self, x: usize) -> Option<&Presentation> {
        self.entries.get(&x)
    }

    pub fn entries(&self) -> &BTreeMap<usize, Presentation> {
        &self.entries
    }

    pub fn contains(&self, x: usize) -> bool {
        self.entries.contains_key(&x)
    }

    /// Every entry evaluates to its key, and inverse keys carry inverse
    /// presentations. Returns the first offending key.
    pub fn check_round_trip(&self, g: &FiniteGroup) -> std::result::Result<(), usize> {
        let ai = g.inv(self.a);
        for (&x, p) in &self.entries {
            let base = if p.theta == Sign::Plus { self.a } else { ai };
            if g.product([p.left, base, p.right]) != x {
                return Err(x);
            }
            match self.entries.get(&g.inv(x)) {
                Some(q) if q.theta == -p.theta && q.left == g.inv(p.right) && q.right == g.inv(p.left) => {}
                _ => return Err(x),
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Factor {
    First,
    Second,
}

impl Factor {
    pub fn index(self) -> usize {
        match self {
            Factor::First => 0,
            Factor::Second => 1,
        }
    }

    pub fn other(self) -> Factor {
        match self {
            Factor::First => Factor::Second,
            Factor::Second => Factor::First,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FactorElement {
    pub factor: Factor,
    pub element: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum AmalCase {
    Case1 {
        witness: FactorElement,
    },
    Case2Normal,
    Case2NonNormal {
        witness: FactorElement,
        table: FixedPresentationTable,
    },
}

impl AmalCase {
    pub fn label(&self) -> &'static str {
        match self {
            AmalCase::Case1 { .. } => "Case1",
            AmalCase::Case2Normal => "Case2Normal",
            AmalCase::Case2NonNormal { .. } => "Case2NonNormal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseClassification {
    #[serde(flatten)]
    pub case: AmalCase,
    pub index1: usize,
    pub index2: usize,
    /// `|G1 : H| >= 3` and `|G2 : H| >= 2`, in either order of the factors.
    pub hypotheses_hold: bool,
    pub normal_in_first: bool,
    pub normal_in_second: bool,
    /// Least element with `HaH != Ha^-1H`, if any, even when the quotient
    /// route is taken.
    pub case1_witness: Option<FactorElement>,
}

/// Decide which argument covers `G1 *_H G2`.
///
/// A nontrivial `H` normal in both factors takes the quotient route
/// (`Case2Normal`). Otherwise the least `a` (first factor first, then by
/// index) with `HaH != Ha^-1H` gives `Case1`. Failing that, `H` normal in
/// both factors is again `Case2Normal`, and the remaining instances get
/// `Case2NonNormal` with the least `a` satisfying `aH != a^-1H` whose double
/// coset has no involution.
pub fn classify_amalgam_case(
    g1: &FiniteGroup,
    h1: &Subgroup,
    g2: &FiniteGroup,
    h2: &Subgroup,
) -> Result<CaseClassification> {
    let factors = [(Factor::First, g1, h1), (Factor::Second, g2, h2)];
    let index1 = h1.index();
    let index2 = h2.index();
    let hypotheses_hold = (index1 >= 3 && index2 >= 2) || (index1 >= 2 && index2 >= 3);
    let normal_in_first = is_normal(g1, h1);
    let normal_in_second = is_normal(g2, h2);

    let case1_witness = factors.iter().find_map(|&(factor, g, h)| {
        g.elements()
            .find(|&a| double_coset(g, h, a) != double_coset(g, h, g.inv(a)))
            .map(|element| FactorElement { factor, element })
    });

    let build = |case| CaseClassification {
        case,
        index1,
        index2,
        hypotheses_hold,
        normal_in_first,
        normal_in_second,
        case1_witness,
    };

    let normal_both = normal_in_first && normal_in_second;
    if normal_both && !h1.is_trivial() {
        return Ok(build(AmalCase::Case2Normal));
    }
    if let Some(witness) = case1_witness {
        return Ok(build(AmalCase::Case1 { witness }));
    }
    if normal_both {
        return Ok(build(AmalCase::Case2Normal));
    }

    let mut first_candidate = None;
    for &(factor, g, h) in &factors {
        for a in g.elements() {
            if left_coset(g, h, a) == left_coset(g, h, g.inv(a)) {
                continue;
            }
            first_candidate.get_or_insert((g, h, a));
            if let Ok(table) = FixedPresentationTable::self_inverse(g, h, a) {
                let witness = FactorElement { factor, element: a };
                return Ok(build(AmalCase::Case2NonNormal { witness, table }));
            }
        }
    }
    match first_candidate {
        Some((g, h, a)) => Err(FixedPresentationTable::self_inverse(g, h, a).unwrap_err()),
        None => Err(Error::NoCase2Witness),
    }
}

/// Distinct elements that square to the identity, excluding it.
pub fn involutions(g: &FiniteGroup) -> Vec<usize> {
    g.elements().filter(|&x| x != 0 && g.inv(x) == x).collect()
}

/// All double cosets of `H`, each sorted, in order of least element.
pub fn double_cosets(g: &FiniteGroup, h: &Subgroup) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in g.elements() {
        if seen.contains(&a) {
            continue;
        }
        let dc = double_coset(g, h, a);
        seen.extend(dc.iter().copied());
        out.push(dc);
    }
    out
}

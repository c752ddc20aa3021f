//! Explicit finite poc-sets and their ultrafilter spaces.
//!
//! A poc-set is stored as `n` proper pairs `{h_i, h_i*}` plus the trivial
//! pair `{0, 0*}`, with the order relation kept as a closed bit matrix.
//! Everything here is exhaustive; this layer is the ground truth the
//! infinite backends are checked against.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

/// Exhaustive transverse search is only run up to this many proper pairs.
pub const DIMENSION_PAIR_CAP: usize = 32;

/// One element of a finite poc-set.
///
/// The derived order is the canonical element order: pairs by index,
/// `h_i` before `h_i*`, trivial pair last.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Element {
    Proper { pair: u32, star: bool },
    Zero,
    ZeroStar,
}

impl Element {
    pub fn plain(pair: usize) -> Self {
        Element::Proper {
            pair: pair as u32,
            star: false,
        }
    }

    pub fn starred(pair: usize) -> Self {
        Element::Proper {
            pair: pair as u32,
            star: true,
        }
    }

    pub fn star(self) -> Self {
        match self {
            Element::Proper { pair, star } => Element::Proper { pair, star: !star },
            Element::Zero => Element::ZeroStar,
            Element::ZeroStar => Element::Zero,
        }
    }

    pub fn is_trivial(self) -> bool {
        !matches!(self, Element::Proper { .. })
    }

    pub fn pair(self) -> Option<usize> {
        match self {
            Element::Proper { pair, .. } => Some(pair as usize),
            _ => None,
        }
    }

    pub fn is_star(self) -> bool {
        matches!(self, Element::Proper { star: true, .. } | Element::ZeroStar)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Proper { pair, star } => {
                write!(f, "h{}{}", pair + 1, if *star { "*" } else { "" })
            }
            Element::Zero => write!(f, "0"),
            Element::ZeroStar => write!(f, "0*"),
        }
    }
}

impl FromStr for Element {
    type Err = PocError;

    /// `hK`, `hK*` (1-based `K`), `0` or `0*`.
    fn from_str(s: &str) -> Result<Self, PocError> {
        let s = s.trim();
        match s {
            "0" => return Ok(Element::Zero),
            "0*" => return Ok(Element::ZeroStar),
            _ => {}
        }
        let (body, star) = match s.strip_suffix('*') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let k: usize = body
            .strip_prefix('h')
            .and_then(|k| k.parse().ok())
            .filter(|k| *k >= 1)
            .ok_or_else(|| PocError::MalformedInput(format!("bad element name {s:?}")))?;
        Ok(Element::Proper {
            pair: (k - 1) as u32,
            star,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// `h <= h*` for a proper `h`.
    SelfDual,
    Antisymmetry,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::SelfDual => write!(f, "h <= h*"),
            Axiom::Antisymmetry => write!(f, "antisymmetry"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PocError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("axiom violated ({axiom}): {} vs {}", witness.0, witness.1)]
    AxiomViolation {
        axiom: Axiom,
        witness: (Element, Element),
    },
    #[error("{0} is a trivial element")]
    TrivialElement(Element),
    #[error("not a filter base: {0} <= {1}*")]
    NotAFilterBase(Element, Element),
    #[error("{0} is not a minimal element of the ultrafilter")]
    NotMinimal(Element),
    #[error("{0} and {1} are not transverse")]
    NotTransverse(Element, Element),
    #[error("transverse set is not maximal: {0} is transverse to all of it")]
    NotMaximalTransverse(Element),
    #[error("{pairs} proper pairs exceeds the cap of {cap}")]
    TooLarge { pairs: usize, cap: usize },
    #[error("ultrafilters live on different poc-sets")]
    BackendMismatch,
    #[error("not an ultrafilter: {0}")]
    NotAnUltrafilter(UltrafilterViolation),
}

/// Which ultrafilter axiom a candidate set breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UltrafilterViolation {
    /// Neither or both of `h`, `h*` present.
    Uf1(Element),
    /// Members `h`, `k` with `h <= k*`.
    Uf2(Element, Element),
}

impl fmt::Display for UltrafilterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UltrafilterViolation::Uf1(h) => write!(f, "UF1 fails for the pair of {h}"),
            UltrafilterViolation::Uf2(h, k) => write!(f, "UF2 fails: {h} <= ({k})*"),
        }
    }
}

/// How two proper elements sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRelation {
    /// `lower <= upper`, where `{lower, upper}` is one of the four
    /// combinations of `h`, `k` and their complements.
    Nested { lower: Element, upper: Element },
    Transverse,
}

/// Raw order data: generators `a <= b`, closed by [`FinitePocSet::validate`].
#[derive(Debug, Clone, Default)]
pub struct RawPocSet {
    pub pairs: usize,
    pub order: Vec<(Element, Element)>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct BitMatrix {
    size: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(size: usize) -> Self {
        let words = size.div_ceil(64).max(1);
        BitMatrix {
            size,
            words,
            bits: vec![0; size * words],
        }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    /// Warshall closure.
    fn close(&mut self) {
        for k in 0..self.size {
            for i in 0..self.size {
                if i != k && self.get(i, k) {
                    for w in 0..self.words {
                        let v = self.bits[k * self.words + w];
                        self.bits[i * self.words + w] |= v;
                    }
                }
            }
        }
    }
}

/// A validated finite poc-set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinitePocSet {
    pairs: usize,
    leq: BitMatrix,
}

impl FinitePocSet {
    /// The poc-set with no proper elements.
    pub fn trivial() -> Self {
        FinitePocSet::validate(&RawPocSet::default()).expect("trivial poc-set is valid")
    }

    /// Closes the generators reflexively, transitively and under the
    /// involution, then checks the poc-set axioms.
    pub fn validate(raw: &RawPocSet) -> Result<Self, PocError> {
        let n = raw.pairs;
        let size = 2 * n + 2;
        let mut leq = BitMatrix::new(size);
        let idx = |e: Element| -> Result<usize, PocError> {
            match e {
                Element::Proper { pair, .. } if pair as usize >= n => Err(
                    PocError::MalformedInput(format!("{e} refers to a pair beyond {n}")),
                ),
                _ => Ok(element_index(n, e)),
            }
        };
        for i in 0..size {
            leq.set(i, i);
            leq.set(2 * n, i);
            leq.set(i, 2 * n + 1);
        }
        for &(a, b) in &raw.order {
            leq.set(idx(a)?, idx(b)?);
            leq.set(idx(b.star())?, idx(a.star())?);
        }
        leq.close();
        let p = FinitePocSet { pairs: n, leq };
        p.check_axioms()?;
        Ok(p)
    }

    /// Builds a poc-set from an explicit relation on all `2n + 2` elements,
    /// closing it first. Used when the order comes from geometry.
    pub fn from_relation(
        pairs: usize,
        relation: impl Fn(Element, Element) -> bool,
    ) -> Result<Self, PocError> {
        let size = 2 * pairs + 2;
        let mut leq = BitMatrix::new(size);
        for i in 0..size {
            for j in 0..size {
                if relation(index_element(pairs, i), index_element(pairs, j)) {
                    leq.set(i, j);
                }
            }
            leq.set(i, i);
        }
        leq.close();
        let p = FinitePocSet { pairs, leq };
        p.check_axioms()?;
        for a in p.elements() {
            for b in p.elements() {
                if p.leq(a, b) != p.leq(b.star(), a.star()) {
                    return Err(PocError::MalformedInput(format!(
                        "involution is not order-reversing at {a} <= {b}"
                    )));
                }
            }
        }
        Ok(p)
    }

    fn check_axioms(&self) -> Result<(), PocError> {
        for h in self.proper_elements() {
            if self.leq(h, h.star()) {
                return Err(PocError::AxiomViolation {
                    axiom: Axiom::SelfDual,
                    witness: (h, h.star()),
                });
            }
        }
        let all: Vec<Element> = self.elements().collect();
        for (i, &a) in all.iter().enumerate() {
            for &b in &all[i + 1..] {
                if self.leq(a, b) && self.leq(b, a) {
                    return Err(PocError::AxiomViolation {
                        axiom: Axiom::Antisymmetry,
                        witness: (a, b),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..2 * self.pairs + 2).map(|i| index_element(self.pairs, i))
    }

    pub fn proper_elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..2 * self.pairs).map(|i| index_element(self.pairs, i))
    }

    pub fn contains(&self, e: Element) -> bool {
        e.pair().is_none_or(|p| p < self.pairs)
    }

    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.leq
            .get(element_index(self.pairs, a), element_index(self.pairs, b))
    }

    pub fn lt(&self, a: Element, b: Element) -> bool {
        a != b && self.leq(a, b)
    }

    fn require_proper(&self, e: Element) -> Result<(), PocError> {
        if e.is_trivial() {
            Err(PocError::TrivialElement(e))
        } else if !self.contains(e) {
            Err(PocError::MalformedInput(format!("{e} is not an element")))
        } else {
            Ok(())
        }
    }

    pub fn classify_pair(&self, h: Element, k: Element) -> Result<PairRelation, PocError> {
        self.require_proper(h)?;
        self.require_proper(k)?;
        let candidates = [(h, k), (k, h), (h, k.star()), (h.star(), k)];
        Ok(candidates
            .into_iter()
            .find(|&(a, b)| self.leq(a, b))
            .map(|(lower, upper)| PairRelation::Nested { lower, upper })
            .unwrap_or(PairRelation::Transverse))
    }

    /// Proper elements from distinct pairs with no relation among
    /// `h, h*, k, k*`.
    pub fn transverse(&self, h: Element, k: Element) -> bool {
        !h.is_trivial()
            && !k.is_trivial()
            && h.pair() != k.pair()
            && matches!(self.classify_pair(h, k), Ok(PairRelation::Transverse))
    }

    /// `{h : a <= h <= b}`, in canonical order.
    pub fn interval(&self, a: Element, b: Element) -> Vec<Element> {
        self.elements()
            .filter(|&h| self.leq(a, h) && self.leq(h, b))
            .collect()
    }

    /// Size of a largest pairwise-transverse set of proper elements.
    pub fn dimension(&self) -> Result<usize, PocError> {
        if self.pairs > DIMENSION_PAIR_CAP {
            return Err(PocError::TooLarge {
                pairs: self.pairs,
                cap: DIMENSION_PAIR_CAP,
            });
        }
        // Transversality only depends on the pairs, so this is a maximum
        // clique search on the pair graph.
        let n = self.pairs;
        let adj: Vec<u64> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| self.transverse(Element::plain(i), Element::plain(j)))
                    .fold(0u64, |m, j| m | 1 << j)
            })
            .collect();
        let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        let mut best = 0;
        max_clique(&adj, 0, all, &mut best);
        Ok(best)
    }

    /// Pairs that are pairwise transverse and cannot be extended, as sets of
    /// pair indices.
    pub fn maximal_transverse_pair_sets(&self) -> Vec<Vec<usize>> {
        let n = self.pairs;
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.grow_transverse(0, &mut current, &mut out);
        out.retain(|set| {
            (0..n).all(|j| {
                set.contains(&j)
                    || !set
                        .iter()
                        .all(|&i| self.transverse(Element::plain(i), Element::plain(j)))
            })
        });
        out
    }

    fn grow_transverse(&self, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !current.is_empty() || self.pairs == 0 {
            out.push(current.clone());
        }
        for j in start..self.pairs {
            if current
                .iter()
                .all(|&i| self.transverse(Element::plain(i), Element::plain(j)))
            {
                current.push(j);
                self.grow_transverse(j + 1, current, out);
                current.pop();
            }
        }
    }

    /// `h <= k*`, the relation forbidden inside an ultrafilter.
    pub fn conflict(&self, h: Element, k: Element) -> bool {
        self.leq(h, k.star())
    }

    /// Every ultrafilter, in canonical order (lexicographic, `h_i` before
    /// `h_i*`).
    pub fn enumerate_ultrafilters(&self) -> Vec<Ultrafilter> {
        let mut out = Vec::new();
        let mut chosen: Vec<Element> = Vec::with_capacity(self.pairs);
        self.extend_choices(&mut chosen, &mut out);
        out
    }

    fn extend_choices(&self, chosen: &mut Vec<Element>, out: &mut Vec<Ultrafilter>) {
        let i = chosen.len();
        if i == self.pairs {
            out.push(Ultrafilter {
                starred: chosen.iter().map(|e| e.is_star()).collect(),
            });
            return;
        }
        for e in [Element::plain(i), Element::starred(i)] {
            if chosen.iter().all(|&c| !self.conflict(e, c)) {
                chosen.push(e);
                self.extend_choices(chosen, out);
                chosen.pop();
            }
        }
    }

    /// Checks UF1 and UF2 on an arbitrary set of elements.
    pub fn check_ultrafilter(&self, set: &BTreeSet<Element>) -> Result<Ultrafilter, PocError> {
        for e in set {
            if !self.contains(*e) {
                return Err(PocError::MalformedInput(format!("{e} is not an element")));
            }
        }
        for e in self.elements().filter(|e| !e.is_star()) {
            if set.contains(&e) == set.contains(&e.star()) {
                return Err(PocError::NotAnUltrafilter(UltrafilterViolation::Uf1(e)));
            }
        }
        for &k in set {
            for &h in set {
                if self.conflict(h, k) {
                    return Err(PocError::NotAnUltrafilter(UltrafilterViolation::Uf2(h, k)));
                }
            }
        }
        Ok(Ultrafilter {
            starred: (0..self.pairs)
                .map(|i| set.contains(&Element::starred(i)))
                .collect(),
        })
    }

    pub fn is_ultrafilter(&self, set: &BTreeSet<Element>) -> bool {
        self.check_ultrafilter(set).is_ok()
    }

    /// Checks UF2 on a set, reporting the first offending pair.
    pub fn check_filter_base(&self, base: &[Element]) -> Result<(), PocError> {
        for &h in base {
            for &k in base {
                if self.conflict(h, k) {
                    return Err(PocError::NotAFilterBase(h, k));
                }
            }
        }
        Ok(())
    }

    /// Greedy completion of a filter base: pairs in canonical order, taking
    /// `h_i` whenever it does not clash with what is already chosen.
    pub fn extend_filterbase(&self, base: &[Element]) -> Result<Ultrafilter, PocError> {
        for e in base {
            if !self.contains(*e) {
                return Err(PocError::MalformedInput(format!("{e} is not an element")));
            }
        }
        self.check_filter_base(base)?;
        let mut chosen: Vec<Element> = base.to_vec();
        for i in 0..self.pairs {
            let (h, hs) = (Element::plain(i), Element::starred(i));
            if chosen.contains(&h) || chosen.contains(&hs) {
                continue;
            }
            let pick = if chosen.iter().all(|&c| !self.conflict(h, c)) {
                h
            } else {
                hs
            };
            chosen.push(pick);
        }
        let set: BTreeSet<Element> = chosen.into_iter().chain([Element::ZeroStar]).collect();
        self.check_ultrafilter(&set)
    }

    /// Minimal proper members of `alpha`.
    pub fn min_set(&self, alpha: &Ultrafilter) -> Vec<Element> {
        let members: Vec<Element> = alpha.proper_members().collect();
        members
            .iter()
            .copied()
            .filter(|&a| !members.iter().any(|&b| self.lt(b, a)))
            .collect()
    }

    /// The elementary move `(alpha \ {a}) ∪ {a*}`.
    pub fn flip(&self, alpha: &Ultrafilter, a: Element) -> Result<Ultrafilter, PocError> {
        if !self.min_set(alpha).contains(&a) {
            return Err(PocError::NotMinimal(a));
        }
        let mut out = alpha.clone();
        let pair = a.pair().expect("minimal elements are proper");
        out.starred[pair] = !out.starred[pair];
        Ok(out)
    }

    /// `π_A = {h : a <= h} ∪ {h : a* < h}` over `a ∈ A`, plus `0*`.
    pub fn principal_from_transverse(&self, set: &[Element]) -> Result<Ultrafilter, PocError> {
        for &a in set {
            self.require_proper(a)?;
        }
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                if !self.transverse(a, b) {
                    return Err(PocError::NotTransverse(a, b));
                }
            }
        }
        for j in 0..self.pairs {
            let h = Element::plain(j);
            if set.iter().all(|&a| self.transverse(a, h)) {
                return Err(PocError::NotMaximalTransverse(h));
            }
        }
        let members: BTreeSet<Element> = self
            .elements()
            .filter(|&h| {
                h == Element::ZeroStar
                    || set
                        .iter()
                        .any(|&a| self.leq(a, h) || self.lt(a.star(), h))
            })
            .collect();
        self.check_ultrafilter(&members)
    }

    /// Whether some ultrafilter (from `restrict_to`, or from the whole
    /// space) contains every element of `set`.
    pub fn vset_nonempty(&self, set: &[Element], restrict_to: Option<&[Ultrafilter]>) -> bool {
        let owned;
        let pool = match restrict_to {
            Some(pool) => pool,
            None => {
                owned = self.enumerate_ultrafilters();
                &owned
            }
        };
        pool.iter().any(|u| set.iter().all(|&a| u.contains(a)))
    }

    /// Relation listing suitable for the file format: every strict relation
    /// `a < b` between proper elements.
    pub fn strict_relations(&self) -> Vec<(Element, Element)> {
        let proper: Vec<Element> = self.proper_elements().collect();
        let mut out = Vec::new();
        for &a in &proper {
            for &b in &proper {
                if self.lt(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Covering relations `a < b` with nothing strictly between, keeping one
    /// representative of each dual pair `{a < b, b* < a*}`.
    pub fn cover_relations(&self) -> Vec<(Element, Element)> {
        let proper: Vec<Element> = self.proper_elements().collect();
        let mut out = Vec::new();
        for &(a, b) in &self.strict_relations() {
            let covered = !proper.iter().any(|&c| self.lt(a, c) && self.lt(c, b));
            if covered && (a, b) <= (b.star(), a.star()) {
                out.push((a, b));
            }
        }
        out
    }
}

fn element_index(pairs: usize, e: Element) -> usize {
    match e {
        Element::Proper { pair, star } => 2 * pair as usize + star as usize,
        Element::Zero => 2 * pairs,
        Element::ZeroStar => 2 * pairs + 1,
    }
}

fn index_element(pairs: usize, i: usize) -> Element {
    if i < 2 * pairs {
        Element::Proper {
            pair: (i / 2) as u32,
            star: i % 2 == 1,
        }
    } else if i == 2 * pairs {
        Element::Zero
    } else {
        Element::ZeroStar
    }
}

fn max_clique(adj: &[u64], size: usize, candidates: u64, best: &mut usize) {
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + candidates.count_ones() as usize <= *best {
        return;
    }
    let mut cand = candidates;
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= !(1 << v);
        max_clique(adj, size + 1, cand & adj[v], best);
    }
}

/// An ultrafilter on a finite poc-set: one choice per proper pair, plus
/// `0*`.
///
/// The derived order is the canonical ultrafilter order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Ultrafilter {
    starred: Vec<bool>,
}

impl Ultrafilter {
    /// Builds from the per-pair choice (`true` picks `h_i*`). No axioms are
    /// checked; use [`FinitePocSet::check_ultrafilter`] for that.
    pub fn from_choices(starred: Vec<bool>) -> Self {
        Ultrafilter { starred }
    }

    pub fn choices(&self) -> &[bool] {
        &self.starred
    }

    pub fn pairs(&self) -> usize {
        self.starred.len()
    }

    pub fn contains(&self, e: Element) -> bool {
        match e {
            Element::Proper { pair, star } => self.starred.get(pair as usize) == Some(&star),
            Element::Zero => false,
            Element::ZeroStar => true,
        }
    }

    pub fn proper_members(&self) -> impl Iterator<Item = Element> + '_ {
        self.starred.iter().enumerate().map(|(i, &s)| {
            if s {
                Element::starred(i)
            } else {
                Element::plain(i)
            }
        })
    }

    /// Members in canonical order, `0*` last.
    pub fn members(&self) -> Vec<Element> {
        self.proper_members().chain([Element::ZeroStar]).collect()
    }

    /// `Δ(α, β) = |α \ β|`.
    pub fn delta(&self, other: &Ultrafilter) -> Result<u64, PocError> {
        if self.pairs() != other.pairs() {
            return Err(PocError::BackendMismatch);
        }
        Ok(self
            .starred
            .iter()
            .zip(&other.starred)
            .filter(|(a, b)| a != b)
            .count() as u64)
    }
}

impl fmt::Display for Ultrafilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.members().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// `(α∩β) ∪ (β∩γ) ∪ (α∩γ)`: the majority choice on each pair.
pub fn median(a: &Ultrafilter, b: &Ultrafilter, c: &Ultrafilter) -> Ultrafilter {
    Ultrafilter {
        starred: a
            .starred
            .iter()
            .zip(&b.starred)
            .zip(&c.starred)
            .map(|((&x, &y), &z)| (x as u8 + y as u8 + z as u8) >= 2)
            .collect(),
    }
}

/// A random valid poc-set with at most `max_pairs` proper pairs.
pub fn random_pocset<R: Rng + ?Sized>(rng: &mut R, max_pairs: usize) -> FinitePocSet {
    let n = rng.gen_range(0..=max_pairs);
    if n < 2 {
        return FinitePocSet::validate(&RawPocSet {
            pairs: n,
            order: vec![],
        })
        .expect("no relations is valid");
    }
    let mut edges = rng.gen_range(0..=2 * n);
    loop {
        let order = (0..edges)
            .map(|_| {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let a = if rng.gen_bool(0.5) {
                    Element::plain(i)
                } else {
                    Element::starred(i)
                };
                let b = if rng.gen_bool(0.5) {
                    Element::plain(j)
                } else {
                    Element::starred(j)
                };
                (a, b)
            })
            .collect();
        if let Ok(p) = FinitePocSet::validate(&RawPocSet { pairs: n, order }) {
            return p;
        }
        if rng.gen_bool(0.3) {
            edges = edges.saturating_sub(1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(p: &FinitePocSet, names: &[&str]) -> BTreeSet<Element> {
        let _ = p;
        names.iter().map(|n| n.parse().unwrap()).collect()
    }

    fn h(s: &str) -> Element {
        s.parse().unwrap()
    }

    #[test]
    fn empty_pocset_has_only_trivial_pair() {
        let p = FinitePocSet::trivial();
        assert_eq!(p.elements().count(), 2);
        let ufs = p.enumerate_ultrafilters();
        assert_eq!(ufs.len(), 1);
        assert_eq!(ufs[0].members(), vec![Element::ZeroStar]);
        assert_eq!(p.dimension().unwrap(), 0);
    }

    #[test]
    fn fixtures_validate() {
        assert_eq!(fixtures::line3().pairs(), 3);
        assert_eq!(fixtures::square().pairs(), 2);
        assert_eq!(fixtures::tripod().pairs(), 3);
    }

    #[test]
    fn self_dual_edge_is_rejected() {
        let raw = RawPocSet {
            pairs: 2,
            order: vec![(h("h1"), h("h1*"))],
        };
        assert_eq!(
            FinitePocSet::validate(&raw),
            Err(PocError::AxiomViolation {
                axiom: Axiom::SelfDual,
                witness: (h("h1"), h("h1*"))
            })
        );
    }

    #[test]
    fn cycle_breaks_antisymmetry() {
        let raw = RawPocSet {
            pairs: 2,
            order: vec![(h("h1"), h("h2")), (h("h2"), h("h1"))],
        };
        assert!(matches!(
            FinitePocSet::validate(&raw),
            Err(PocError::AxiomViolation {
                axiom: Axiom::Antisymmetry,
                ..
            })
        ));
    }

    #[test]
    fn dangling_handle_is_malformed() {
        let raw = RawPocSet {
            pairs: 1,
            order: vec![(h("h1"), h("h2"))],
        };
        assert!(matches!(
            FinitePocSet::validate(&raw),
            Err(PocError::MalformedInput(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let sq = fixtures::square();
        assert_eq!(sq.classify_pair(h("h1"), h("h2")).unwrap(), PairRelation::Transverse);
        let line = fixtures::line3();
        assert_eq!(
            line.classify_pair(h("h1"), h("h3")).unwrap(),
            PairRelation::Nested {
                lower: h("h3"),
                upper: h("h1")
            }
        );
        let tri = fixtures::tripod();
        assert_eq!(
            tri.classify_pair(h("h1"), h("h2")).unwrap(),
            PairRelation::Nested {
                lower: h("h1"),
                upper: h("h2*")
            }
        );
        assert_eq!(
            tri.classify_pair(Element::Zero, h("h2")),
            Err(PocError::TrivialElement(Element::Zero))
        );
    }

    #[test]
    fn interval_examples() {
        let line = fixtures::line3();
        assert_eq!(line.interval(h("h3"), h("h1")), vec![h("h1"), h("h2"), h("h3")]);
        assert!(fixtures::square().interval(h("h1"), h("h2")).is_empty());
        assert_eq!(line.interval(h("h2"), h("h2")), vec![h("h2")]);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(fixtures::line3().dimension().unwrap(), 1);
        assert_eq!(fixtures::square().dimension().unwrap(), 2);
        assert_eq!(fixtures::tripod().dimension().unwrap(), 1);
        let big = FinitePocSet::validate(&RawPocSet {
            pairs: 33,
            order: vec![],
        })
        .unwrap();
        assert!(matches!(big.dimension(), Err(PocError::TooLarge { .. })));
    }

    #[test]
    fn tripod_ultrafilters() {
        let tri = fixtures::tripod();
        let got: Vec<String> = tri
            .enumerate_ultrafilters()
            .iter()
            .map(|u| u.to_string())
            .collect();
        assert_eq!(
            got,
            vec![
                "{h1,h2*,h3*,0*}",
                "{h1*,h2,h3*,0*}",
                "{h1*,h2*,h3,0*}",
                "{h1*,h2*,h3*,0*}",
            ]
        );
    }

    #[test]
    fn ultrafilter_checks() {
        let sq = fixtures::square();
        assert_eq!(
            sq.check_ultrafilter(&set(&sq, &["h1", "0*"])),
            Err(PocError::NotAnUltrafilter(UltrafilterViolation::Uf1(h("h2"))))
        );
        assert!(sq.is_ultrafilter(&set(&sq, &["h1", "h2", "0*"])));
        let line = fixtures::line3();
        assert_eq!(
            line.check_ultrafilter(&set(&line, &["h1*", "h2", "h3", "0*"])),
            Err(PocError::NotAnUltrafilter(UltrafilterViolation::Uf2(
                h("h2"),
                h("h1*")
            )))
        );
    }

    #[test]
    fn filter_base_completion() {
        let sq = fixtures::square();
        assert_eq!(sq.extend_filterbase(&[h("h1")]).unwrap().to_string(), "{h1,h2,0*}");
        for p in [fixtures::line3(), fixtures::square(), fixtures::tripod()] {
            assert_eq!(
                p.extend_filterbase(&[]).unwrap(),
                p.enumerate_ultrafilters()[0]
            );
        }
        let tri = fixtures::tripod();
        assert_eq!(
            tri.extend_filterbase(&[h("h1"), h("h2")]),
            Err(PocError::NotAFilterBase(h("h1"), h("h2")))
        );
    }

    #[test]
    fn median_examples() {
        let sq = fixtures::square();
        let u = |names: &[&str]| sq.check_ultrafilter(&set(&sq, names)).unwrap();
        let a = u(&["h1", "h2", "0*"]);
        let b = u(&["h1", "h2*", "0*"]);
        let c = u(&["h1*", "h2*", "0*"]);
        assert_eq!(median(&a, &b, &c), b);
        assert_eq!(median(&a, &a, &c), a);
    }

    #[test]
    fn min_set_examples() {
        let line = fixtures::line3();
        let top = line.check_ultrafilter(&set(&line, &["h1", "h2", "h3", "0*"])).unwrap();
        assert_eq!(line.min_set(&top), vec![h("h3")]);
        let sq = fixtures::square();
        let ab = sq.check_ultrafilter(&set(&sq, &["h1", "h2", "0*"])).unwrap();
        assert_eq!(sq.min_set(&ab), vec![h("h1"), h("h2")]);
        let tri = fixtures::tripod();
        let all_star = tri
            .check_ultrafilter(&set(&tri, &["h1*", "h2*", "h3*", "0*"]))
            .unwrap();
        assert_eq!(tri.min_set(&all_star), vec![h("h1*"), h("h2*"), h("h3*")]);
    }

    #[test]
    fn flips_and_square_commutation() {
        let sq = fixtures::square();
        let ab = sq.check_ultrafilter(&set(&sq, &["h1", "h2", "0*"])).unwrap();
        let flipped = sq.flip(&ab, h("h1")).unwrap();
        assert_eq!(flipped.to_string(), "{h1*,h2,0*}");
        assert_eq!(sq.flip(&flipped, h("h1*")).unwrap(), ab);
        let ab_ba = sq.flip(&sq.flip(&ab, h("h1")).unwrap(), h("h2")).unwrap();
        let ba_ab = sq.flip(&sq.flip(&ab, h("h2")).unwrap(), h("h1")).unwrap();
        assert_eq!(ab_ba, ba_ab);
        let line = fixtures::line3();
        let top = line.check_ultrafilter(&set(&line, &["h1", "h2", "h3", "0*"])).unwrap();
        assert_eq!(line.flip(&top, h("h1")), Err(PocError::NotMinimal(h("h1"))));
    }

    #[test]
    fn principal_construction() {
        let sq = fixtures::square();
        assert_eq!(
            sq.principal_from_transverse(&[h("h1"), h("h2")]).unwrap().to_string(),
            "{h1,h2,0*}"
        );
        let line = fixtures::line3();
        assert_eq!(
            line.principal_from_transverse(&[h("h3")]).unwrap().to_string(),
            "{h1,h2,h3,0*}"
        );
        assert_eq!(
            sq.principal_from_transverse(&[h("h1")]),
            Err(PocError::NotMaximalTransverse(h("h2")))
        );
    }

    #[test]
    fn vset_examples() {
        let sq = fixtures::square();
        assert!(sq.vset_nonempty(&[h("h1"), h("h2")], None));
        let tri = fixtures::tripod();
        assert!(!tri.vset_nonempty(&[h("h1"), h("h2")], None));
        assert!(tri.vset_nonempty(&[], None));
        assert!(FinitePocSet::trivial().vset_nonempty(&[], None));
    }

    #[test]
    fn element_names_parse() {
        assert_eq!(h("h12*"), Element::starred(11));
        assert!("h0".parse::<Element>().is_err());
        assert!("x1".parse::<Element>().is_err());
        assert_eq!(h("0*"), Element::ZeroStar);
    }
}

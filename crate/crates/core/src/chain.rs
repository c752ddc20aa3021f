//! Poc-sets made of finitely many pairwise-transverse ℤ-chains.
//!
//! Chain `i` carries halfspaces `h_i(n)`, `n ∈ ℤ`, with `h_i(m) <= h_i(n)`
//! exactly when `m >= n`; halfspaces on different chains are transverse.
//! An ultrafilter is one [`CutState`] per chain:
//!
//! * `Cut(c)` contains `h_i(n)` for `n < c` and `h_i(n)*` for `n >= c`;
//! * `PlusEnd` contains every `h_i(n)`;
//! * `MinusEnd` contains every `h_i(n)*`.
//!
//! Almost-equality classes are then per-chain end assignments
//! ([`Signature`]), which is what the Roller boundary operations act on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::euclid::WallGeometry;
use crate::poc::{Element, FinitePocSet, PocError, Ultrafilter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("{0} is not a member of the ultrafilter")]
    NotMember(ChainHalfspace),
    #[error("{0} is not a minimal element of the ultrafilter")]
    NotMinimal(ChainHalfspace),
    #[error("ultrafilter is not principal on chain {0}")]
    NotPrincipal(usize),
    #[error("chain counts differ: {0} vs {1}")]
    ChainCountMismatch(usize, usize),
    #[error("empty sequence")]
    EmptySequence,
    #[error("not geodesic: move {second} undoes move {first}")]
    NotGeodesic { first: usize, second: usize },
    #[error("bad literal {0:?}")]
    MalformedLiteral(String),
    #[error(transparent)]
    Poc(#[from] PocError),
}

/// The state of one chain in an ultrafilter. The derived order is the
/// order of the chain's membership sets: `MinusEnd < Cut(c) < PlusEnd`,
/// with cuts ordered by position.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum CutState {
    MinusEnd,
    Cut(i64),
    PlusEnd,
}

impl CutState {
    pub fn end(self) -> End {
        match self {
            CutState::Cut(_) => End::Fin,
            CutState::PlusEnd => End::Plus,
            CutState::MinusEnd => End::Minus,
        }
    }

    pub fn cut(self) -> Option<i64> {
        match self {
            CutState::Cut(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for CutState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutState::Cut(c) => write!(f, "cut({c})"),
            CutState::PlusEnd => write!(f, "+inf"),
            CutState::MinusEnd => write!(f, "-inf"),
        }
    }
}

impl FromStr for CutState {
    type Err = ChainError;
    fn from_str(s: &str) -> Result<Self, ChainError> {
        let s = s.trim();
        match s {
            "+inf" | "inf" | "+" => Ok(CutState::PlusEnd),
            "-inf" | "-" => Ok(CutState::MinusEnd),
            _ => s
                .strip_prefix("cut(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|c| c.trim().parse().ok())
                .or_else(|| s.parse().ok())
                .map(CutState::Cut)
                .ok_or_else(|| ChainError::MalformedLiteral(s.to_string())),
        }
    }
}

/// Per-chain end of an almost-equality class.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum End {
    Fin,
    Plus,
    Minus,
}

impl End {
    pub fn negate(self) -> End {
        match self {
            End::Fin => End::Fin,
            End::Plus => End::Minus,
            End::Minus => End::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            End::Fin => '0',
            End::Plus => '+',
            End::Minus => '-',
        }
    }
}

/// An almost-equality class of chain ultrafilters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Signature(pub Vec<End>);

impl Signature {
    /// The principal class.
    pub fn principal(chains: usize) -> Self {
        Signature(vec![End::Fin; chains])
    }

    pub fn chains(&self) -> usize {
        self.0.len()
    }

    pub fn is_principal(&self) -> bool {
        self.0.iter().all(|e| *e == End::Fin)
    }

    pub fn negate(&self) -> Signature {
        Signature(self.0.iter().map(|e| e.negate()).collect())
    }

    /// A representative ultrafilter: `Cut(0)` on finite chains.
    pub fn representative(&self) -> ChainUltrafilter {
        ChainUltrafilter(
            self.0
                .iter()
                .map(|e| match e {
                    End::Fin => CutState::Cut(0),
                    End::Plus => CutState::PlusEnd,
                    End::Minus => CutState::MinusEnd,
                })
                .collect(),
        )
    }

    /// Keeps only the listed chains, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Signature {
        Signature(keep.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.symbol().to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Signature {
    type Err = ChainError;
    /// `(+,0,-)`.
    fn from_str(s: &str) -> Result<Self, ChainError> {
        let bad = || ChainError::MalformedLiteral(s.to_string());
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        if body.trim().is_empty() {
            return Ok(Signature(vec![]));
        }
        body.split(',')
            .map(|t| match t.trim() {
                "0" => Ok(End::Fin),
                "+" => Ok(End::Plus),
                "-" => Ok(End::Minus),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Signature)
    }
}

impl Serialize for Signature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `h_chain(position)` or its complement.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct ChainHalfspace {
    pub chain: usize,
    pub position: i64,
    pub star: bool,
}

impl ChainHalfspace {
    pub fn plain(chain: usize, position: i64) -> Self {
        ChainHalfspace {
            chain,
            position,
            star: false,
        }
    }

    pub fn starred(chain: usize, position: i64) -> Self {
        ChainHalfspace {
            chain,
            position,
            star: true,
        }
    }

    pub fn star(self) -> Self {
        ChainHalfspace {
            star: !self.star,
            ..self
        }
    }

    /// The order of the chain-family poc-set.
    pub fn leq(self, other: ChainHalfspace) -> bool {
        if self == other {
            return true;
        }
        if self.chain != other.chain || self.star != other.star {
            return false;
        }
        if self.star {
            self.position <= other.position
        } else {
            self.position >= other.position
        }
    }
}

impl fmt::Display for ChainHalfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "h_{}({}){}",
            self.chain + 1,
            self.position,
            if self.star { "*" } else { "" }
        )
    }
}

/// `Δ` between ultrafilters that may lie in different classes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum Distance {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// An ultrafilter of a chain family.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ChainUltrafilter(pub Vec<CutState>);

impl ChainUltrafilter {
    pub fn principal(cuts: &[i64]) -> Self {
        ChainUltrafilter(cuts.iter().map(|&c| CutState::Cut(c)).collect())
    }

    pub fn chains(&self) -> usize {
        self.0.len()
    }

    pub fn states(&self) -> &[CutState] {
        &self.0
    }

    pub fn class(&self) -> Signature {
        Signature(self.0.iter().map(|s| s.end()).collect())
    }

    pub fn is_principal(&self) -> bool {
        self.0.iter().all(|s| s.cut().is_some())
    }

    /// Cut positions, if every chain is cut.
    pub fn cuts(&self) -> Result<Vec<i64>, ChainError> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, s)| s.cut().ok_or(ChainError::NotPrincipal(i)))
            .collect()
    }

    pub fn contains(&self, h: ChainHalfspace) -> bool {
        match self.0.get(h.chain) {
            Some(CutState::Cut(c)) => (h.position < *c) != h.star,
            Some(CutState::PlusEnd) => !h.star,
            Some(CutState::MinusEnd) => h.star,
            None => false,
        }
    }

    fn check_len(&self, other: &ChainUltrafilter) -> Result<(), ChainError> {
        if self.chains() == other.chains() {
            Ok(())
        } else {
            Err(ChainError::ChainCountMismatch(self.chains(), other.chains()))
        }
    }

    pub fn delta(&self, other: &ChainUltrafilter) -> Result<Distance, ChainError> {
        self.check_len(other)?;
        let mut total = 0u64;
        for (a, b) in self.0.iter().zip(&other.0) {
            match (a, b) {
                (CutState::Cut(x), CutState::Cut(y)) => total += x.abs_diff(*y),
                (x, y) if x == y => {}
                _ => return Ok(Distance::Infinite),
            }
        }
        Ok(Distance::Finite(total))
    }

    /// Minimal elements: `h_i(c-1)` and `h_i(c)*` on every cut chain. End
    /// states carry infinite descending chains and contribute nothing.
    pub fn min_set(&self) -> Vec<ChainHalfspace> {
        let mut out = Vec::new();
        for (i, s) in self.0.iter().enumerate() {
            if let CutState::Cut(c) = s {
                out.push(ChainHalfspace::plain(i, c - 1));
                out.push(ChainHalfspace::starred(i, *c));
            }
        }
        out
    }

    pub fn flip(&self, a: ChainHalfspace) -> Result<ChainUltrafilter, ChainError> {
        if !self.min_set().contains(&a) {
            return Err(ChainError::NotMinimal(a));
        }
        let mut out = self.clone();
        out.0[a.chain] = CutState::Cut(if a.star { a.position + 1 } else { a.position });
        Ok(out)
    }

    /// `[ξ]_b = ξ \ {h <= b} ∪ {h* : h <= b}`.
    pub fn truncate(&self, b: ChainHalfspace) -> Result<ChainUltrafilter, ChainError> {
        if !self.contains(b) {
            return Err(ChainError::NotMember(b));
        }
        let mut out = self.clone();
        out.0[b.chain] = CutState::Cut(if b.star { b.position + 1 } else { b.position });
        Ok(out)
    }

    /// Display with chain names: `r:+inf s:cut(0)`.
    pub fn to_literal(&self, names: &[String]) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let name = names.get(i).cloned().unwrap_or_else(|| format!("c{}", i + 1));
                format!("{name}:{s}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `r:+inf s:cut(0) t:cut(-3)`; chains not mentioned default to
    /// `cut(0)`. A bare list such as `cut(1) +inf` is read positionally.
    pub fn parse_literal(s: &str, names: &[String]) -> Result<ChainUltrafilter, ChainError> {
        let mut states = vec![CutState::Cut(0); names.len()];
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.iter().all(|t| !t.contains(':')) {
            if tokens.len() != names.len() {
                return Err(ChainError::MalformedLiteral(s.to_string()));
            }
            for (slot, t) in states.iter_mut().zip(tokens) {
                *slot = t.parse()?;
            }
            return Ok(ChainUltrafilter(states));
        }
        for t in tokens {
            let (name, state) = t
                .split_once(':')
                .ok_or_else(|| ChainError::MalformedLiteral(t.to_string()))?;
            let i = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| ChainError::MalformedLiteral(format!("unknown chain {name}")))?;
            states[i] = state.parse()?;
        }
        Ok(ChainUltrafilter(states))
    }
}

impl fmt::Display for ChainUltrafilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Majority vote per chain, which on nested membership sets is the middle
/// state.
pub fn median(a: &ChainUltrafilter, b: &ChainUltrafilter, c: &ChainUltrafilter) -> Result<ChainUltrafilter, ChainError> {
    a.check_len(b)?;
    a.check_len(c)?;
    Ok(ChainUltrafilter(
        a.0.iter()
            .zip(&b.0)
            .zip(&c.0)
            .map(|((&x, &y), &z)| {
                let mut v = [x, y, z];
                v.sort();
                v[1]
            })
            .collect(),
    ))
}

/// A chain family, optionally realised by walls in Euclidean space.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainFamily {
    pub names: Vec<String>,
    pub geometry: Option<WallGeometry>,
}

impl ChainFamily {
    pub fn new(names: Vec<String>) -> Self {
        ChainFamily {
            names,
            geometry: None,
        }
    }

    pub fn chains(&self) -> usize {
        self.names.len()
    }

    /// The finite poc-set of halfspaces with positions in `[-w, w]`, and
    /// the map from chain halfspaces to its elements.
    pub fn window(&self, w: i64) -> WindowPocSet {
        WindowPocSet::new(self.chains(), w)
    }
}

/// A chain family cut down to positions `[-w, w]` on every chain.
#[derive(Clone, Debug)]
pub struct WindowPocSet {
    pub chains: usize,
    pub bound: i64,
    pub pocset: FinitePocSet,
}

impl WindowPocSet {
    pub fn new(chains: usize, bound: i64) -> Self {
        let per = (2 * bound + 1) as usize;
        let to_half = |e: Element| -> Option<ChainHalfspace> {
            let p = e.pair()?;
            Some(ChainHalfspace {
                chain: p / per,
                position: (p % per) as i64 - bound,
                star: e.is_star(),
            })
        };
        let pocset = FinitePocSet::from_relation(chains * per, |a, b| match (a, b) {
            (Element::Zero, _) | (_, Element::ZeroStar) => true,
            _ => match (to_half(a), to_half(b)) {
                (Some(x), Some(y)) => x.leq(y),
                _ => a == b,
            },
        })
        .expect("chain windows satisfy the poc-set axioms");
        WindowPocSet {
            chains,
            bound,
            pocset,
        }
    }

    pub fn element(&self, h: ChainHalfspace) -> Option<Element> {
        if h.chain >= self.chains || h.position.abs() > self.bound {
            return None;
        }
        let per = (2 * self.bound + 1) as usize;
        let pair = h.chain * per + (h.position + self.bound) as usize;
        Some(if h.star {
            Element::starred(pair)
        } else {
            Element::plain(pair)
        })
    }

    pub fn halfspace(&self, e: Element) -> Option<ChainHalfspace> {
        let per = (2 * self.bound + 1) as usize;
        let p = e.pair()?;
        Some(ChainHalfspace {
            chain: p / per,
            position: (p % per) as i64 - self.bound,
            star: e.is_star(),
        })
    }

    /// Restriction of a chain ultrafilter to the window.
    pub fn restrict(&self, xi: &ChainUltrafilter) -> Ultrafilter {
        let per = (2 * self.bound + 1) as usize;
        let starred = (0..self.chains * per)
            .map(|p| {
                let h = ChainHalfspace::plain(p / per, (p % per) as i64 - self.bound);
                !xi.contains(h)
            })
            .collect();
        Ultrafilter::from_choices(starred)
    }
}

/// `Σ1 <= Σ2`: on every chain where `Σ1` has an end, `Σ2` has the same end.
/// `Π` is the minimum and the all-end classes are maximal.
pub fn class_leq(lower: &Signature, upper: &Signature) -> Result<bool, ChainError> {
    if lower.chains() != upper.chains() {
        return Err(ChainError::ChainCountMismatch(lower.chains(), upper.chains()));
    }
    Ok(lower
        .0
        .iter()
        .zip(&upper.0)
        .all(|(a, b)| *a == End::Fin || a == b))
}

/// Codimension, with a class one step below when it is positive.
pub fn class_codim(sig: &Signature) -> (usize, Option<Signature>) {
    let codim = sig.0.iter().filter(|e| **e != End::Fin).count();
    let witness = sig.0.iter().rposition(|e| *e != End::Fin).map(|i| {
        let mut below = sig.clone();
        below.0[i] = End::Fin;
        below
    });
    (codim, witness)
}

/// Componentwise: a shared end survives, anything else becomes finite.
pub fn class_gcd(a: &Signature, b: &Signature) -> Result<Signature, ChainError> {
    if a.chains() != b.chains() {
        return Err(ChainError::ChainCountMismatch(a.chains(), b.chains()));
    }
    Ok(Signature(
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| if x == y { *x } else { End::Fin })
            .collect(),
    ))
}

/// All `3^k` classes, in lexicographic order of [`End`].
pub fn all_signatures(chains: usize) -> Vec<Signature> {
    let mut out = vec![Signature(vec![])];
    for _ in 0..chains {
        out = out
            .into_iter()
            .flat_map(|s| {
                [End::Fin, End::Plus, End::Minus].into_iter().map(move |e| {
                    let mut t = s.clone();
                    t.0.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

/// `pr_Σ`: ends of `Σ` are imposed, finite chains keep `π`'s state.
pub fn project_to_class(sig: &Signature, pi: &ChainUltrafilter) -> Result<ChainUltrafilter, ChainError> {
    if sig.chains() != pi.chains() {
        return Err(ChainError::ChainCountMismatch(sig.chains(), pi.chains()));
    }
    Ok(ChainUltrafilter(
        sig.0
            .iter()
            .zip(&pi.0)
            .map(|(e, s)| match e {
                End::Fin => *s,
                End::Plus => CutState::PlusEnd,
                End::Minus => CutState::MinusEnd,
            })
            .collect(),
    ))
}

/// One step of the canonical flow towards `Σ`: every minimal element of `π`
/// opposing an end of `Σ` is flipped at once.
pub fn flow_step(sig: &Signature, pi: &ChainUltrafilter) -> Result<ChainUltrafilter, ChainError> {
    if sig.chains() != pi.chains() {
        return Err(ChainError::ChainCountMismatch(sig.chains(), pi.chains()));
    }
    let cuts = pi.cuts()?;
    Ok(ChainUltrafilter::principal(
        &cuts
            .iter()
            .zip(&sig.0)
            .map(|(c, e)| match e {
                End::Fin => *c,
                End::Plus => c + 1,
                End::Minus => c - 1,
            })
            .collect::<Vec<_>>(),
    ))
}

/// The single flips making up one flow step, in chain order.
pub fn flow_moves(sig: &Signature) -> Vec<Move> {
    sig.0
        .iter()
        .enumerate()
        .filter_map(|(chain, e)| match e {
            End::Fin => None,
            End::Plus => Some(Move {
                chain,
                up: true,
            }),
            End::Minus => Some(Move {
                chain,
                up: false,
            }),
        })
        .collect()
}

/// `π'_1 = π_1`, `π'_{n+1} = med(π'_n, π_{n+1}, σ)`.
pub fn average_sequence(
    seq: &[ChainUltrafilter],
    sigma: &ChainUltrafilter,
) -> Result<Vec<ChainUltrafilter>, ChainError> {
    let first = seq.first().ok_or(ChainError::EmptySequence)?;
    let mut out = vec![first.clone()];
    for next in &seq[1..] {
        let prev = out.last().expect("non-empty");
        out.push(median(prev, next, sigma)?);
    }
    Ok(out)
}

/// A single flip on a principal ultrafilter: `up` moves the cut from `c` to
/// `c + 1` by flipping `h(c)*`; otherwise `h(c-1)` is flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub chain: usize,
    pub up: bool,
}

impl Move {
    /// The halfspace flipped when applied to `cut`.
    pub fn flipped(&self, cut: i64) -> ChainHalfspace {
        if self.up {
            ChainHalfspace::starred(self.chain, cut)
        } else {
            ChainHalfspace::plain(self.chain, cut - 1)
        }
    }
}

/// A vertex path `start, prefix..., cycle, cycle, ...` in the principal
/// class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveSchedule {
    pub start: ChainUltrafilter,
    pub prefix: Vec<Move>,
    pub cycle: Vec<Move>,
}

impl MoveSchedule {
    /// The first `count` moves.
    pub fn moves(&self, count: usize) -> Vec<Move> {
        let mut out: Vec<Move> = self.prefix.iter().copied().take(count).collect();
        if !self.cycle.is_empty() {
            out.extend(self.cycle.iter().copied().cycle().take(count.saturating_sub(out.len())));
        }
        out
    }

    /// The vertices `π_0, ..., π_count` (fewer if the schedule is finite).
    pub fn states(&self, count: usize) -> Result<Vec<ChainUltrafilter>, ChainError> {
        let mut cuts = self.start.cuts()?;
        let mut out = vec![ChainUltrafilter::principal(&cuts)];
        for m in self.moves(count) {
            if m.chain >= cuts.len() {
                return Err(ChainError::ChainCountMismatch(cuts.len(), m.chain + 1));
            }
            cuts[m.chain] += if m.up { 1 } else { -1 };
            out.push(ChainUltrafilter::principal(&cuts));
        }
        Ok(out)
    }

    /// A vertex path is geodesic iff no wall is crossed twice, i.e. each
    /// chain only ever moves in one direction.
    pub fn check_geodesic(&self) -> Result<(), ChainError> {
        let horizon = self.prefix.len() + 2 * self.cycle.len();
        let mut last: Vec<Option<(usize, bool)>> = vec![None; self.start.chains()];
        for (idx, m) in self.moves(horizon).into_iter().enumerate() {
            if m.chain >= last.len() {
                return Err(ChainError::ChainCountMismatch(last.len(), m.chain + 1));
            }
            if let Some((prev, up)) = last[m.chain] {
                if up != m.up {
                    return Err(ChainError::NotGeodesic {
                        first: prev,
                        second: idx,
                    });
                }
            }
            last[m.chain] = Some((idx, m.up));
        }
        Ok(())
    }
}

/// Pointwise limit of a geodesic ray given by an eventually periodic move
/// schedule: chains moved by the cycle run off to an end, the others settle
/// after the prefix.
pub fn limit_of_geodesic(schedule: &MoveSchedule) -> Result<ChainUltrafilter, ChainError> {
    schedule.check_geodesic()?;
    let mut cuts = schedule.start.cuts()?;
    for m in &schedule.prefix {
        cuts[m.chain] += if m.up { 1 } else { -1 };
    }
    let mut states: Vec<CutState> = cuts.into_iter().map(CutState::Cut).collect();
    for m in &schedule.cycle {
        states[m.chain] = if m.up {
            CutState::PlusEnd
        } else {
            CutState::MinusEnd
        };
    }
    Ok(ChainUltrafilter(states))
}

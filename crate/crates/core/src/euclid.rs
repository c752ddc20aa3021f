//! Euclidean wall-system models: evenly spaced parallel wall families,
//! exact boundary directions, the boundary decomposition map `ρ`, its
//! image, the closure formula, safe components and restriction to lines.
//!
//! Family `i` has unit normal `n_i`, spacing `s_i > 0` and offset `o_i`.
//! The wall of `h_i(n)` is `n_i·p = o_i + s_i·n` and
//! `h_i(n) = {p : n_i·p > o_i + s_i·n}`, so `h_i(n+1) ⊂ h_i(n)` as the chain
//! order requires and a direction with `n_i·ξ > 0` eventually enters every
//! `h_i(n)` (chain state `PlusEnd`).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{class_leq, ChainHalfspace, CutState, End, Signature};
use crate::exact::{dot, Exact};
use crate::feasibility::{is_feasible, Inequality};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EuclidError {
    #[error("zero direction")]
    ZeroDirection,
    #[error("expected a vector of dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("family {0} has a zero normal")]
    ZeroNormal(usize),
    #[error("family {0} has non-positive spacing")]
    NonPositiveSpacing(usize),
    #[error("this operation needs a planar model, got dimension {0}")]
    NotPlanar(usize),
    #[error("the line lies inside the wall of {0}")]
    LineInsideWall(ChainHalfspace),
    #[error("geometry has {families} families but the chain family has {chains} chains")]
    ChainCountMismatch { families: usize, chains: usize },
    #[error("malformed input: {0}")]
    MalformedInput(String),
}

/// One evenly spaced family of parallel walls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallFamily {
    pub normal: Vec<Exact>,
    pub spacing: Exact,
    pub offset: Exact,
}

impl WallFamily {
    pub fn new(normal: Vec<Exact>, spacing: Exact, offset: Exact) -> Self {
        WallFamily {
            normal,
            spacing,
            offset,
        }
    }

    /// `o + s·n`, the level of the wall of `h(n)`.
    pub fn wall_level(&self, n: i64) -> Exact {
        self.offset + self.spacing * Exact::int(n)
    }

    /// Closure of `h` (for this family's chain): `n·p >= level` or, for a
    /// starred element, `n·p <= level`.
    pub fn closed_halfspace(&self, h: ChainHalfspace) -> Inequality {
        let level = self.wall_level(h.position);
        if h.star {
            Inequality::at_most(&self.normal, level)
        } else {
            Inequality::at_least(&self.normal, level)
        }
    }

    /// The closed slab `o + s(c-1) <= n·p <= o + s·c` selected by `Cut(c)`.
    pub fn slab(&self, c: i64) -> [Inequality; 2] {
        [
            Inequality::at_least(&self.normal, self.wall_level(c - 1)),
            Inequality::at_most(&self.normal, self.wall_level(c)),
        ]
    }

    /// The chain state of a point: `Cut(c)` with `n·p` in the half-open
    /// slab `(o + s(c-1), o + s·c]`.
    pub fn state_of_point(&self, p: &[Exact]) -> CutState {
        let t = (dot(&self.normal, p) - self.offset) / self.spacing;
        // h(n) ∋ p iff t > n, so the cut is the least n with t <= n.
        let f = t.floor();
        CutState::Cut(if Exact::int(f) == t { f } else { f + 1 })
    }
}

/// A wall system in `𝔼^dim`: one family per chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<WallFamily>", into = "Vec<WallFamily>")]
pub struct WallGeometry {
    families: Vec<WallFamily>,
    dim: usize,
}

impl TryFrom<Vec<WallFamily>> for WallGeometry {
    type Error = EuclidError;
    fn try_from(families: Vec<WallFamily>) -> Result<Self, EuclidError> {
        WallGeometry::new(families)
    }
}

impl From<WallGeometry> for Vec<WallFamily> {
    fn from(g: WallGeometry) -> Self {
        g.families
    }
}

impl WallGeometry {
    pub fn new(families: Vec<WallFamily>) -> Result<Self, EuclidError> {
        let dim = families.first().map_or(2, |f| f.normal.len());
        for (i, f) in families.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(EuclidError::DimensionMismatch {
                    expected: dim,
                    got: f.normal.len(),
                });
            }
            if f.normal.iter().all(Exact::is_zero) {
                return Err(EuclidError::ZeroNormal(i));
            }
            if !f.spacing.is_positive() {
                return Err(EuclidError::NonPositiveSpacing(i));
            }
        }
        Ok(WallGeometry { families, dim })
    }

    pub fn families(&self) -> &[WallFamily] {
        &self.families
    }

    pub fn chains(&self) -> usize {
        self.families.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_dim(&self, v: &[Exact]) -> Result<(), EuclidError> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(EuclidError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            })
        }
    }

    /// The `2k` closed halfspaces bounding the chamber of a cut tuple.
    pub fn chamber_constraints(&self, cuts: &[i64]) -> Vec<Inequality> {
        self.families
            .iter()
            .zip(cuts)
            .flat_map(|(f, &c)| f.slab(c))
            .collect()
    }

    /// Whether the closed slabs selected by `cuts` share a point.
    pub fn chamber_nonempty(&self, cuts: &[i64]) -> bool {
        is_feasible(&self.chamber_constraints(cuts))
    }

    /// Whether the closures of the given halfspaces share a point.
    pub fn halfspaces_consistent(&self, set: &[ChainHalfspace]) -> bool {
        let rows: Vec<Inequality> = set
            .iter()
            .map(|h| self.families[h.chain].closed_halfspace(*h))
            .collect();
        is_feasible(&rows)
    }

    /// The ultrafilter of a point, one state per chain.
    pub fn point_states(&self, p: &[Exact]) -> Result<Vec<CutState>, EuclidError> {
        self.check_dim(p)?;
        Ok(self.families.iter().map(|f| f.state_of_point(p)).collect())
    }

    /// Rank of the normals over `Q(√3)`.
    pub fn normal_rank(&self) -> usize {
        rank(self.families.iter().map(|f| f.normal.clone()).collect())
    }

    /// Structural uniformness: every direction is non-perpendicular to some
    /// family, i.e. the normals span the space. Chains are always two-way
    /// infinite here.
    pub fn is_uniform(&self) -> bool {
        self.normal_rank() == self.dim
    }
}

/// Rank by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Exact>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c];
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c] / pivot;
                let pivot_row = rows[r].clone();
                for (x, v) in rows[i].iter_mut().zip(pivot_row).take(cols) {
                    *x = *x - factor * v;
                }
            }
        }
        r += 1;
    }
    r
}

/// A point of `∂∞𝔼^d`: a nonzero direction up to positive scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionPoint(Vec<Exact>);

impl DirectionPoint {
    pub fn new(coords: Vec<Exact>) -> Result<Self, EuclidError> {
        if coords.iter().all(Exact::is_zero) {
            Err(EuclidError::ZeroDirection)
        } else {
            Ok(DirectionPoint(coords))
        }
    }

    pub fn coords(&self) -> &[Exact] {
        &self.0
    }

    pub fn negate(&self) -> DirectionPoint {
        DirectionPoint(self.0.iter().map(|x| -*x).collect())
    }

    /// Scaled so the first nonzero coordinate is `±1`.
    pub fn canonical(&self) -> DirectionPoint {
        let lead = self
            .0
            .iter()
            .find(|x| !x.is_zero())
            .expect("nonzero by construction")
            .abs();
        DirectionPoint(self.0.iter().map(|x| *x / lead).collect())
    }

    /// Same point of the boundary.
    pub fn same_point(&self, other: &DirectionPoint) -> bool {
        self.canonical() == other.canonical()
    }

    /// Counter-clockwise quarter turn (planar only).
    fn rot90(&self) -> DirectionPoint {
        DirectionPoint(vec![-self.0[1], self.0[0]])
    }

    fn plus(&self, other: &DirectionPoint) -> DirectionPoint {
        DirectionPoint(self.0.iter().zip(&other.0).map(|(a, b)| *a + *b).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Exact::to_f64).collect()
    }
}

impl fmt::Display for DirectionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DirectionPoint {
    type Err = EuclidError;
    /// `1,0`, `(1/2,√3/2)`, `-2,3`.
    fn from_str(s: &str) -> Result<Self, EuclidError> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let coords = body
            .split(',')
            .map(|t| t.parse::<Exact>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| EuclidError::MalformedInput(e.to_string()))?;
        DirectionPoint::new(coords)
    }
}

impl Serialize for DirectionPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Exact angular order on the plane, starting at the positive x-axis.
fn angle_cmp(a: &DirectionPoint, b: &DirectionPoint) -> Ordering {
    let half = |p: &DirectionPoint| {
        let (x, y) = (p.0[0], p.0[1]);
        if y.is_positive() || (y.is_zero() && x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0[0] * b.0[1] - a.0[1] * b.0[0];
        Exact::zero().cmp(&cross)
    })
}

/// How a chain sits relative to a boundary direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainRelation {
    /// `n_i·ξ > 0`: the ray eventually enters every `h_i(n)`; `T(ξ)`.
    AllPlus,
    /// `n_i·ξ < 0`: the ray eventually enters every `h_i(n)*`; `T(ξ)`.
    AllMinus,
    /// `n_i·ξ = 0`: `ξ ∈ ∂∞W(h_i(n))` for every `n`; `P(ξ)`.
    Parallel,
}

/// `ρ(ξ)` with the `T(ξ)`/`P(ξ)` description it was read from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoResult {
    pub signature: Signature,
    pub chains: Vec<ChainRelation>,
}

pub fn classify_direction(g: &WallGeometry, xi: &DirectionPoint) -> Result<RhoResult, EuclidError> {
    g.check_dim(xi.coords())?;
    let chains: Vec<ChainRelation> = g
        .families
        .iter()
        .map(|f| match dot(&f.normal, xi.coords()).signum() {
            Ordering::Greater => ChainRelation::AllPlus,
            Ordering::Less => ChainRelation::AllMinus,
            Ordering::Equal => ChainRelation::Parallel,
        })
        .collect();
    let signature = Signature(
        chains
            .iter()
            .map(|c| match c {
                ChainRelation::AllPlus => End::Plus,
                ChainRelation::AllMinus => End::Minus,
                ChainRelation::Parallel => End::Fin,
            })
            .collect(),
    );
    Ok(RhoResult { signature, chains })
}

pub fn rho(g: &WallGeometry, xi: &DirectionPoint) -> Result<Signature, EuclidError> {
    classify_direction(g, xi).map(|r| r.signature)
}

/// Whether some direction has signature `sig`, in any dimension: the cone
/// `{n_i·ξ >= 1 on Plus, <= -1 on Minus, = 0 on Fin}` is feasible (and, for
/// `Π`, the normals leave a nonzero perpendicular direction).
pub fn signature_realized(g: &WallGeometry, sig: &Signature) -> bool {
    if sig.chains() != g.chains() {
        return false;
    }
    if sig.is_principal() {
        return g.normal_rank() < g.dim;
    }
    let mut rows = Vec::new();
    for (f, e) in g.families.iter().zip(&sig.0) {
        match e {
            End::Plus => rows.push(Inequality::at_least(&f.normal, Exact::one())),
            End::Minus => rows.push(Inequality::at_most(&f.normal, -Exact::one())),
            End::Fin => {
                rows.push(Inequality::at_most(&f.normal, Exact::zero()));
                rows.push(Inequality::at_least(&f.normal, Exact::zero()));
            }
        }
    }
    is_feasible(&rows)
}

/// Image of `ρ` in any dimension, in canonical signature order.
pub fn rho_image_signatures(g: &WallGeometry) -> Vec<Signature> {
    crate::chain::all_signatures(g.chains())
        .into_iter()
        .filter(|s| signature_realized(g, s))
        .collect()
}

/// A cell of the decomposition of the circle of directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fiber {
    /// A critical direction, perpendicular to some normal.
    Point { direction: DirectionPoint },
    /// The open arc from `from` counter-clockwise to `to`; `sample` lies
    /// inside it.
    Arc {
        from: DirectionPoint,
        to: DirectionPoint,
        sample: DirectionPoint,
    },
    /// The whole circle, when no direction is critical.
    Circle { sample: DirectionPoint },
}

impl Fiber {
    pub fn sample(&self) -> &DirectionPoint {
        match self {
            Fiber::Point { direction } => direction,
            Fiber::Arc { sample, .. } | Fiber::Circle { sample } => sample,
        }
    }

    /// The fiber together with its limit points on the circle.
    pub fn closure_points(&self) -> Vec<DirectionPoint> {
        match self {
            Fiber::Arc { from, to, .. } => vec![from.clone(), to.clone()],
            _ => vec![],
        }
    }
}

impl fmt::Display for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fiber::Point { direction } => write!(f, "point {direction}"),
            Fiber::Arc { from, to, .. } => write!(f, "arc {from}..{to}"),
            Fiber::Circle { .. } => write!(f, "whole circle"),
        }
    }
}

/// The circle of directions cut at the critical directions, in angular
/// order: point 0, arc 0→1, point 1, arc 1→2, ...
#[derive(Clone, Debug)]
pub struct CircleDecomposition {
    pub cells: Vec<Fiber>,
}

impl CircleDecomposition {
    pub fn new(g: &WallGeometry) -> Result<Self, EuclidError> {
        if g.dim != 2 {
            return Err(EuclidError::NotPlanar(g.dim));
        }
        let mut critical: Vec<DirectionPoint> = Vec::new();
        for f in &g.families {
            let p = DirectionPoint(vec![-f.normal[1], f.normal[0]]);
            for q in [p.negate(), p] {
                if !critical.iter().any(|c| c.same_point(&q)) {
                    critical.push(q);
                }
            }
        }
        critical.sort_by(angle_cmp);
        if critical.is_empty() {
            let sample = DirectionPoint(vec![Exact::one(), Exact::zero()]);
            return Ok(CircleDecomposition {
                cells: vec![Fiber::Circle { sample }],
            });
        }
        let m = critical.len();
        let mut cells = Vec::with_capacity(2 * m);
        for j in 0..m {
            let from = critical[j].clone();
            let to = critical[(j + 1) % m].clone();
            // Critical directions come in antipodal pairs; with only one
            // pair the arcs are half-circles and the sum vanishes.
            let sample = if m == 2 {
                from.rot90()
            } else {
                from.plus(&to)
            };
            cells.push(Fiber::Point {
                direction: from.clone(),
            });
            cells.push(Fiber::Arc { from, to, sample });
        }
        Ok(CircleDecomposition { cells })
    }
}

/// One class of the image of `ρ` with its fiber cells.
#[derive(Clone, Debug, Serialize)]
pub struct ImageClass {
    pub signature: Signature,
    pub codim: usize,
    pub fibers: Vec<Fiber>,
}

/// The image of `ρ` for a planar model, classes in order of first
/// appearance going counter-clockwise from the positive x-axis.
pub fn rho_image(g: &WallGeometry) -> Result<Vec<ImageClass>, EuclidError> {
    let circle = CircleDecomposition::new(g)?;
    let mut out: Vec<ImageClass> = Vec::new();
    for cell in circle.cells {
        let signature = rho(g, cell.sample())?;
        match out.iter_mut().find(|c| c.signature == signature) {
            Some(c) => c.fibers.push(cell),
            None => out.push(ImageClass {
                codim: crate::chain::class_codim(&signature).0,
                signature,
                fibers: vec![cell],
            }),
        }
    }
    Ok(out)
}

fn comparable(a: &Signature, b: &Signature) -> bool {
    class_leq(a, b).unwrap_or(false) || class_leq(b, a).unwrap_or(false)
}

/// Edges `(i, j)`, `i < j`, between comparable distinct signatures.
pub fn comparability_edges(sigs: &[Signature]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..sigs.len() {
        for j in i + 1..sigs.len() {
            if comparable(&sigs[i], &sigs[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Connected components of the comparability graph; each component lists
/// its signatures in input order, components ordered by first member.
pub fn safe_components(sigs: &[Signature]) -> Vec<Vec<Signature>> {
    let mut comp: Vec<usize> = (0..sigs.len()).collect();
    fn find(comp: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while comp[r] != r {
            r = comp[r];
        }
        comp[i] = r;
        r
    }
    for (i, j) in comparability_edges(sigs) {
        let (a, b) = (find(&mut comp, i), find(&mut comp, j));
        comp[a.max(b)] = a.min(b);
    }
    let mut out: Vec<(usize, Vec<Signature>)> = Vec::new();
    for (i, sig) in sigs.iter().enumerate() {
        let root = find(&mut comp, i);
        match out.iter_mut().find(|(r, _)| *r == root) {
            Some((_, v)) => v.push(sig.clone()),
            None => out.push((root, vec![sig.clone()])),
        }
    }
    out.into_iter().map(|(_, v)| v).collect()
}

/// Whether the comparability graph is a single cycle through every
/// signature.
pub fn is_single_cycle(sigs: &[Signature]) -> bool {
    let edges = comparability_edges(sigs);
    let mut degree = vec![0usize; sigs.len()];
    for (i, j) in &edges {
        degree[*i] += 1;
        degree[*j] += 1;
    }
    sigs.len() >= 3
        && edges.len() == sigs.len()
        && degree.iter().all(|d| *d == 2)
        && safe_components(sigs).len() == 1
}

/// Outcome of the closure formula for one image class.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureEntry {
    pub signature: Signature,
    pub codim: usize,
    /// Classes of the fiber's closure points (fiber cells and arc ends).
    pub closure_classes: Vec<Signature>,
    /// Image classes `<=` this one.
    pub lower_classes: Vec<Signature>,
    /// `closure(ρ⁻¹(Σ)) = ⋃_{Σ' <= Σ} ρ⁻¹(Σ')`.
    pub ff_holds: bool,
    /// For codimension one: the fiber is closed.
    pub ff0_closed: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub entries: Vec<ClosureEntry>,
    pub first_violation: Option<Signature>,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks the closure formula cell by cell on the circle. The closure of a
/// fiber is its cells plus the endpoints of its arcs; it must be exactly the
/// set of cells whose class lies below the fiber's class.
pub fn closure_check(g: &WallGeometry) -> Result<ClosureReport, EuclidError> {
    let circle = CircleDecomposition::new(g)?;
    let mut cells: Vec<(DirectionPoint, Signature, bool)> = Vec::new();
    for cell in &circle.cells {
        let is_point = matches!(cell, Fiber::Point { .. });
        cells.push((cell.sample().clone(), rho(g, cell.sample())?, is_point));
    }
    let image = rho_image(g)?;
    let mut entries = Vec::new();
    let mut first_violation = None;
    for class in &image {
        let sig = &class.signature;
        // Closure as a set of cell indices.
        let mut closure: Vec<usize> = Vec::new();
        for fiber in &class.fibers {
            let mut pts = vec![fiber.sample().clone()];
            pts.extend(fiber.closure_points());
            for p in pts {
                let idx = cells
                    .iter()
                    .position(|(s, _, _)| s.same_point(&p))
                    .expect("fiber samples and arc ends are cells");
                if !closure.contains(&idx) {
                    closure.push(idx);
                }
            }
        }
        closure.sort();
        let lower: Vec<usize> = (0..cells.len())
            .filter(|&i| class_leq(&cells[i].1, sig).unwrap_or(false))
            .collect();
        let ff_holds = closure == lower;
        let codim = class.codim;
        let ff0_closed = (codim == 1).then(|| closure.iter().all(|&i| cells[i].1 == *sig));
        if (!ff_holds || ff0_closed == Some(false)) && first_violation.is_none() {
            first_violation = Some(sig.clone());
        }
        let names = |idx: &[usize]| {
            let mut v: Vec<Signature> = idx.iter().map(|&i| cells[i].1.clone()).collect();
            v.sort();
            v.dedup();
            v
        };
        entries.push(ClosureEntry {
            signature: sig.clone(),
            codim,
            closure_classes: names(&closure),
            lower_classes: names(&lower),
            ff_holds,
            ff0_closed,
        });
    }
    Ok(ClosureReport {
        entries,
        first_violation,
    })
}

/// An affine line `base + t·dir`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Line {
    pub base: Vec<Exact>,
    pub dir: DirectionPoint,
}

impl Line {
    pub fn new(base: Vec<Exact>, dir: DirectionPoint) -> Result<Self, EuclidError> {
        if base.len() != dir.coords().len() {
            return Err(EuclidError::DimensionMismatch {
                expected: dir.coords().len(),
                got: base.len(),
            });
        }
        Ok(Line { base, dir })
    }
}

/// How one wall family meets a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RestrictedFamily {
    /// The line is parallel to the walls: every `h_i(n) ∩ L` is `L` or `∅`,
    /// which is the fixed chain state `state`.
    Perpendicular { chain: usize, state: CutState },
    /// `h_i(n) ∩ L` is the open ray beyond `t_n = first + n·step`, towards
    /// `+∞` along `L` if `end` is `Plus`, towards `-∞` otherwise.
    Crossing {
        chain: usize,
        first: Exact,
        step: Exact,
        end: End,
    },
}

impl RestrictedFamily {
    pub fn chain(&self) -> usize {
        match self {
            RestrictedFamily::Perpendicular { chain, .. } | RestrictedFamily::Crossing { chain, .. } => *chain,
        }
    }
}

/// Two restricted halfspaces from different families that coincide on the
/// line (`complementary`: one equals the other's complement).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collapse {
    pub a: ChainHalfspace,
    pub b: ChainHalfspace,
    pub position: Exact,
    pub complementary: bool,
}

/// The two ends of a line and the commuting square of Prop. "the
/// restriction equality".
#[derive(Clone, Debug, Serialize)]
pub struct LineEnd {
    pub direction: DirectionPoint,
    /// `ρ` of the end as a point of `∂∞𝔼^d`.
    pub rho: Signature,
    /// The class of the pulled-back end ultrafilter `ℜ(i_F)(ρ_F(end))`.
    pub pulled_back: Signature,
    pub commutes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LineRestriction {
    pub line: Line,
    pub families: Vec<RestrictedFamily>,
    /// Coincidences among restricted walls with positions in `[-window, window]`.
    pub collapses: Vec<Collapse>,
    pub plus_end: LineEnd,
    pub minus_end: LineEnd,
}

impl LineRestriction {
    pub fn commutes(&self) -> bool {
        self.plus_end.commutes && self.minus_end.commutes
    }
}

/// Restricts the wall system to a line: `h ↦ h ∩ L`.
pub fn restrict_to_line(g: &WallGeometry, line: &Line, window: i64) -> Result<LineRestriction, EuclidError> {
    g.check_dim(&line.base)?;
    g.check_dim(line.dir.coords())?;
    let mut families = Vec::new();
    for (chain, f) in g.families.iter().enumerate() {
        let d = dot(&f.normal, line.dir.coords());
        let v = dot(&f.normal, &line.base);
        if d.is_zero() {
            let t = (v - f.offset) / f.spacing;
            if let Some(n) = t.as_integer() {
                return Err(EuclidError::LineInsideWall(ChainHalfspace::plain(chain, n)));
            }
            families.push(RestrictedFamily::Perpendicular {
                chain,
                state: CutState::Cut(t.floor() + 1),
            });
        } else {
            families.push(RestrictedFamily::Crossing {
                chain,
                first: (f.offset - v) / d,
                step: f.spacing / d,
                end: if d.is_positive() { End::Plus } else { End::Minus },
            });
        }
    }
    let mut collapses = Vec::new();
    let crossing: Vec<(usize, Exact, Exact, End)> = families
        .iter()
        .filter_map(|f| match f {
            RestrictedFamily::Crossing {
                chain,
                first,
                step,
                end,
            } => Some((*chain, *first, *step, *end)),
            _ => None,
        })
        .collect();
    for (x, &(ci, fi, si, ei)) in crossing.iter().enumerate() {
        for &(cj, fj, sj, ej) in &crossing[x + 1..] {
            for n in -window..=window {
                let pos = fi + si * Exact::int(n);
                // Solve fj + sj·m = pos for an integer m.
                let Some(m) = ((pos - fj) / sj).as_integer() else {
                    continue;
                };
                if m.abs() > window {
                    continue;
                }
                collapses.push(Collapse {
                    a: ChainHalfspace::plain(ci, n),
                    b: ChainHalfspace::plain(cj, m),
                    position: pos,
                    complementary: ei != ej,
                });
            }
        }
    }
    let end = |dir: DirectionPoint| -> Result<LineEnd, EuclidError> {
        let rho_sig = rho(g, &dir)?;
        let forward = dir == line.dir;
        // The end ultrafilter of L contains the rays reaching it; pulled back
        // along i_F a crossing chain goes to the end its rays point to.
        let pulled = Signature(
            families
                .iter()
                .map(|f| match f {
                    RestrictedFamily::Perpendicular { .. } => End::Fin,
                    RestrictedFamily::Crossing { end, .. } => {
                        if forward {
                            *end
                        } else {
                            end.negate()
                        }
                    }
                })
                .collect(),
        );
        Ok(LineEnd {
            commutes: rho_sig == pulled,
            direction: dir,
            rho: rho_sig,
            pulled_back: pulled,
        })
    };
    Ok(LineRestriction {
        line: line.clone(),
        plus_end: end(line.dir.clone())?,
        minus_end: end(line.dir.negate())?,
        families,
        collapses,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LineEndReport {
    pub plus: Signature,
    pub minus: Signature,
    pub incomparable: bool,
    /// `false` flags a non-uniform model, where the lemma does not apply.
    pub uniform: bool,
}

/// `ρ(ξ)` and `ρ(-ξ)` for the two ends of a line with direction `ξ`.
pub fn line_end_incomparability(g: &WallGeometry, dir: &DirectionPoint) -> Result<LineEndReport, EuclidError> {
    let plus = rho(g, dir)?;
    let minus = rho(g, &dir.negate())?;
    Ok(LineEndReport {
        incomparable: !comparable(&plus, &minus),
        plus,
        minus,
        uniform: g.is_uniform(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn d(s: &str) -> DirectionPoint {
        s.parse().unwrap()
    }

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn z2_rho_examples() {
        let g = fixtures::z2_geometry();
        assert_eq!(rho(&g, &d("1,0")).unwrap(), sig("(+,0)"));
        assert_eq!(rho(&g, &d("1,1")).unwrap(), sig("(+,+)"));
        assert_eq!(rho(&g, &d("0,-1")).unwrap(), sig("(0,-)"));
        assert_eq!(rho(&g, &d("-2,3")).unwrap(), sig("(-,+)"));
        assert_eq!("0,0".parse::<DirectionPoint>(), Err(EuclidError::ZeroDirection));
    }

    #[test]
    fn hex_never_all_plus() {
        let g = fixtures::hex_geometry();
        let r = classify_direction(&g, &d("0,1")).unwrap();
        assert_eq!(r.signature, sig("(+,-,-)"));
        assert!(!signature_realized(&g, &sig("(+,+,+)")));
        assert!(!signature_realized(&g, &sig("(-,-,-)")));
    }

    #[test]
    fn image_counts() {
        let z2 = rho_image(&fixtures::z2_geometry()).unwrap();
        assert_eq!(z2.len(), 8);
        assert_eq!(z2.iter().filter(|c| c.codim == 1).count(), 4);
        let hex = rho_image(&fixtures::hex_geometry()).unwrap();
        assert_eq!(hex.len(), 12);
        let sigs: Vec<Signature> = hex.iter().map(|c| c.signature.clone()).collect();
        assert!(is_single_cycle(&sigs));
        let mut lp = rho_image_signatures(&fixtures::hex_geometry());
        let mut arcs = sigs.clone();
        lp.sort();
        arcs.sort();
        assert_eq!(lp, arcs);
    }

    #[test]
    fn single_family_image() {
        let g = fixtures::single_family_geometry();
        let image = rho_image(&g).unwrap();
        let sigs: Vec<Signature> = image.iter().map(|c| c.signature.clone()).collect();
        assert_eq!(sigs, vec![sig("(0)"), sig("(+)"), sig("(-)")]);
        assert_eq!(image[0].fibers.len(), 2);
        assert!(!g.is_uniform());
    }

    #[test]
    fn safe_component_examples() {
        let two = [sig("(+,0)"), sig("(-,0)")];
        assert_eq!(safe_components(&two).len(), 2);
        let z2: Vec<Signature> = rho_image(&fixtures::z2_geometry())
            .unwrap()
            .into_iter()
            .map(|c| c.signature)
            .collect();
        assert_eq!(safe_components(&z2).len(), 1);
    }

    #[test]
    fn closure_formula() {
        let r = closure_check(&fixtures::z2_geometry()).unwrap();
        assert!(r.holds());
        let pp = r.entries.iter().find(|e| e.signature == sig("(+,+)")).unwrap();
        assert_eq!(pp.closure_classes, vec![sig("(0,+)"), sig("(+,0)"), sig("(+,+)")]);
        assert!(closure_check(&fixtures::hex_geometry()).unwrap().holds());
    }

    #[test]
    fn line_restrictions() {
        let g = fixtures::z2_geometry();
        let half = Exact::ratio(1, 2);
        let line = Line::new(vec![Exact::zero(), half], d("1,0")).unwrap();
        let r = restrict_to_line(&g, &line, 4).unwrap();
        assert_eq!(r.plus_end.rho, sig("(+,0)"));
        assert_eq!(r.minus_end.rho, sig("(-,0)"));
        assert!(r.commutes());
        assert_eq!(
            r.families[1],
            RestrictedFamily::Perpendicular {
                chain: 1,
                state: CutState::Cut(1)
            }
        );
        let axis = Line::new(vec![Exact::zero(), Exact::zero()], d("1,0")).unwrap();
        assert_eq!(
            restrict_to_line(&g, &axis, 4).unwrap_err(),
            EuclidError::LineInsideWall(ChainHalfspace::plain(1, 0))
        );
        let hex = fixtures::hex_geometry();
        let r = restrict_to_line(&hex, &line, 4).unwrap();
        assert!(r.commutes());
        assert_eq!(r.families.iter().filter(|f| matches!(f, RestrictedFamily::Crossing { .. })).count(), 2);
        let slanted = Line::new(vec![half, half], d("1,√3")).unwrap();
        assert!(restrict_to_line(&g, &slanted, 4).unwrap().commutes());
    }

    #[test]
    fn point_states_match_chambers() {
        let g = fixtures::hex_geometry();
        let p = vec![Exact::ratio(1, 3), Exact::ratio(1, 5)];
        let states = g.point_states(&p).unwrap();
        let cuts: Vec<i64> = states.iter().map(|s| s.cut().unwrap()).collect();
        assert!(g.chamber_nonempty(&cuts));
    }
}

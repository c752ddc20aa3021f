//! Consistency of principal ultrafilters against a wall geometry, the
//! consistent set `Π₀`, the distance `Δ(−,Π₀)`, signed minimal sets,
//! shadows, escaping geodesic rays and the co-compactness report.
//!
//! Every search is exhaustive inside a window `[-W, W]^k` of cut tuples,
//! and results computed from a window are rejected when a minimiser sits on
//! the window boundary (it might not be a true minimiser).

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::chain::{all_signatures, class_codim, flow_moves, ChainHalfspace, ChainUltrafilter, Signature};
use crate::euclid::{signature_realized, WallGeometry};
use crate::exact::Exact;

/// Largest number of grid cells a distance field may use.
pub const MAX_FIELD_CELLS: usize = 8_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShadowError {
    #[error("ultrafilter is not principal on chain {0}")]
    NotPrincipal(usize),
    #[error("expected {expected} chains, got {got}")]
    ChainCountMismatch { expected: usize, got: usize },
    #[error("window {window} too small: {witness:?} lies on or beyond its boundary")]
    WindowTooSmall { window: i64, witness: Vec<i64> },
    #[error("the principal class has no escaping ray")]
    PrincipalClass,
    #[error("search box of {cells} cells exceeds the limit of {MAX_FIELD_CELLS}")]
    SearchTooLarge { cells: usize },
}

/// How consistency is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Fourier–Motzkin feasibility of the `2k` closed slab halfplanes.
    General,
    /// Three pairwise non-parallel planar families with `n_1+n_2+n_3 = 0`:
    /// writing `u_i = n_i·p`, the `u_i` are free subject to `Σu_i = 0`, so
    /// the slabs meet iff `Σ lo_i <= 0 <= Σ hi_i`.
    Interval,
    /// Linearly independent normals: every slab tuple meets.
    Independent,
}

/// Decides whether the chamber of a cut tuple is non-empty.
#[derive(Clone, Debug)]
pub struct ConsistencyOracle<'a> {
    geometry: &'a WallGeometry,
    route: Route,
}

impl<'a> ConsistencyOracle<'a> {
    /// The fastest applicable route.
    pub fn new(geometry: &'a WallGeometry) -> Self {
        let route = if geometry.normal_rank() == geometry.chains() {
            Route::Independent
        } else if interval_applies(geometry) {
            Route::Interval
        } else {
            Route::General
        };
        ConsistencyOracle { geometry, route }
    }

    /// Always Fourier–Motzkin.
    pub fn general(geometry: &'a WallGeometry) -> Self {
        ConsistencyOracle {
            geometry,
            route: Route::General,
        }
    }

    pub fn geometry(&self) -> &WallGeometry {
        self.geometry
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn chains(&self) -> usize {
        self.geometry.chains()
    }

    /// Consistency of a cut tuple of the right length.
    pub fn consistent(&self, cuts: &[i64]) -> bool {
        match self.route {
            Route::General => self.geometry.chamber_nonempty(cuts),
            Route::Independent => true,
            Route::Interval => {
                let (mut lo, mut hi) = (Exact::zero(), Exact::zero());
                for (f, &c) in self.geometry.families().iter().zip(cuts) {
                    lo += f.wall_level(c - 1);
                    hi += f.wall_level(c);
                }
                !lo.is_positive() && !hi.is_negative()
            }
        }
    }

    fn check(&self, pi: &ChainUltrafilter) -> Result<Vec<i64>, ShadowError> {
        if pi.chains() != self.chains() {
            return Err(ShadowError::ChainCountMismatch {
                expected: self.chains(),
                got: pi.chains(),
            });
        }
        pi.cuts().map_err(|_| {
            ShadowError::NotPrincipal(pi.states().iter().position(|s| s.cut().is_none()).unwrap_or(0))
        })
    }
}

fn interval_applies(g: &WallGeometry) -> bool {
    if g.dim() != 2 || g.chains() != 3 {
        return false;
    }
    let f = g.families();
    let sum_zero = (0..2).all(|j| (f[0].normal[j] + f[1].normal[j] + f[2].normal[j]).is_zero());
    let independent = |a: usize, b: usize| {
        !(f[a].normal[0] * f[b].normal[1] - f[a].normal[1] * f[b].normal[0]).is_zero()
    };
    sum_zero && independent(0, 1) && independent(0, 2) && independent(1, 2)
}

/// `Π₀`-membership of a principal ultrafilter.
pub fn is_consistent(g: &WallGeometry, pi: &ChainUltrafilter) -> Result<bool, ShadowError> {
    let oracle = ConsistencyOracle::new(g);
    let cuts = oracle.check(pi)?;
    Ok(oracle.consistent(&cuts))
}

/// All tuples of `[-bound, bound]^k` in lexicographic order.
pub fn box_tuples(k: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    let mut next = Some(vec![-bound; k]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if succ[i] < bound {
                succ[i] += 1;
                next = Some(succ);
                break;
            }
            succ[i] = -bound;
        }
        Some(cur)
    })
}

/// `Π₀ ∩ [-W, W]^k` in canonical (lexicographic) order.
pub fn enumerate_pi0_with(oracle: &ConsistencyOracle<'_>, bound: i64) -> Vec<Vec<i64>> {
    box_tuples(oracle.chains(), bound)
        .filter(|c| oracle.consistent(c))
        .collect()
}

pub fn enumerate_pi0(g: &WallGeometry, bound: i64) -> Vec<Vec<i64>> {
    enumerate_pi0_with(&ConsistencyOracle::new(g), bound)
}

fn l1(a: &[i64], b: &[i64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| x.abs_diff(*y)).sum()
}

/// `Π₀` inside a window, with nearest-point queries.
pub struct Pi0Window<'a> {
    oracle: ConsistencyOracle<'a>,
    bound: i64,
    members: Vec<Vec<i64>>,
    lookup: HashSet<Vec<i64>>,
}

impl<'a> Pi0Window<'a> {
    pub fn new(oracle: ConsistencyOracle<'a>, bound: i64) -> Self {
        let members = enumerate_pi0_with(&oracle, bound);
        let lookup = members.iter().cloned().collect();
        Pi0Window {
            oracle,
            bound,
            members,
            lookup,
        }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn members(&self) -> &[Vec<i64>] {
        &self.members
    }

    pub fn oracle(&self) -> &ConsistencyOracle<'a> {
        &self.oracle
    }

    fn inside(&self, cuts: &[i64]) -> Result<(), ShadowError> {
        if cuts.iter().any(|c| c.abs() >= self.bound) {
            Err(ShadowError::WindowTooSmall {
                window: self.bound,
                witness: cuts.to_vec(),
            })
        } else {
            Ok(())
        }
    }

    pub fn contains(&self, cuts: &[i64]) -> bool {
        self.lookup.contains(cuts)
    }

    /// `Δ(π, Π₀)` and the shadow (all minimisers, canonical order).
    pub fn nearest(&self, cuts: &[i64]) -> Result<(u64, Vec<Vec<i64>>), ShadowError> {
        self.inside(cuts)?;
        if self.contains(cuts) {
            return Ok((0, vec![cuts.to_vec()]));
        }
        let mut best = u64::MAX;
        let mut argmin = Vec::new();
        for m in &self.members {
            let d = l1(m, cuts);
            if d < best {
                best = d;
                argmin.clear();
            }
            if d == best {
                argmin.push(m.clone());
            }
        }
        if argmin.is_empty() {
            return Err(ShadowError::WindowTooSmall {
                window: self.bound,
                witness: cuts.to_vec(),
            });
        }
        for m in &argmin {
            self.inside(m)?;
        }
        Ok((best, argmin))
    }

    pub fn dist(&self, cuts: &[i64]) -> Result<u64, ShadowError> {
        self.nearest(cuts).map(|(d, _)| d)
    }

    /// Full shadow report for a cut tuple.
    pub fn report(&self, cuts: &[i64]) -> Result<ShadowReport, ShadowError> {
        let (dist, shadow) = self.nearest(cuts)?;
        let mut min_plus = Vec::new();
        let mut min_minus = Vec::new();
        let mut min_neutral = Vec::new();
        for a in ChainUltrafilter::principal(cuts).min_set() {
            let mut flipped = cuts.to_vec();
            flipped[a.chain] += if a.star { 1 } else { -1 };
            let d = self.dist(&flipped)?;
            match d.cmp(&dist) {
                std::cmp::Ordering::Greater => min_plus.push(a),
                std::cmp::Ordering::Less => min_minus.push(a),
                std::cmp::Ordering::Equal => min_neutral.push(a),
            }
        }
        let dual_shadow = dual_of(&shadow, cuts.len());
        Ok(ShadowReport {
            window: self.bound,
            pi: cuts.to_vec(),
            consistent: dist == 0,
            dist,
            min_plus,
            min_minus,
            min_neutral,
            shadow,
            dual_shadow,
        })
    }
}

/// `{h : S ⊆ h}` per chain for a non-empty set `S` of cut tuples.
fn dual_of(shadow: &[Vec<i64>], k: usize) -> Vec<DualShadowChain> {
    (0..k)
        .map(|i| {
            let lo = shadow.iter().map(|s| s[i]).min().expect("shadow is non-empty");
            let hi = shadow.iter().map(|s| s[i]).max().expect("shadow is non-empty");
            DualShadowChain {
                chain: i,
                plain_max: lo - 1,
                star_min: hi,
            }
        })
        .collect()
}

/// The dual shadow on one chain: `{h_i(n) : n <= plain_max} ∪
/// {h_i(n)* : n >= star_min}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualShadowChain {
    pub chain: usize,
    pub plain_max: i64,
    pub star_min: i64,
}

impl DualShadowChain {
    pub fn contains(&self, h: ChainHalfspace) -> bool {
        h.chain == self.chain
            && if h.star {
                h.position >= self.star_min
            } else {
                h.position <= self.plain_max
            }
    }

    /// Set inclusion of the described halfspace sets.
    pub fn subset_of(&self, other: &DualShadowChain) -> bool {
        self.plain_max <= other.plain_max && self.star_min >= other.star_min
    }
}

impl fmt::Display for DualShadowChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.chain + 1;
        write!(
            f,
            "{{h_{i}(n) : n <= {}}} ∪ {{h_{i}(n)* : n >= {}}}",
            self.plain_max, self.star_min
        )
    }
}

/// Whether one dual shadow is strictly contained in another.
pub fn dual_strictly_within(inner: &[DualShadowChain], outer: &[DualShadowChain]) -> bool {
    inner.iter().zip(outer).all(|(a, b)| a.subset_of(b)) && inner != outer
}

#[derive(Clone, Debug, Serialize)]
pub struct ShadowReport {
    pub window: i64,
    pub pi: Vec<i64>,
    pub consistent: bool,
    pub dist: u64,
    pub min_plus: Vec<ChainHalfspace>,
    pub min_minus: Vec<ChainHalfspace>,
    pub min_neutral: Vec<ChainHalfspace>,
    pub shadow: Vec<Vec<i64>>,
    pub dual_shadow: Vec<DualShadowChain>,
}

impl ShadowReport {
    pub fn dual_contains(&self, h: ChainHalfspace) -> bool {
        self.dual_shadow.get(h.chain).is_some_and(|d| d.contains(h))
    }

    /// `min(π)_+ ⊆ sh°(π)`.
    pub fn min_plus_in_dual(&self) -> bool {
        self.min_plus.iter().all(|h| self.dual_contains(*h))
    }

    /// `sh°(π) ⊆ π`.
    pub fn dual_within_pi(&self) -> bool {
        self.dual_shadow.iter().zip(&self.pi).all(|(d, &c)| {
            d.subset_of(&DualShadowChain {
                chain: d.chain,
                plain_max: c - 1,
                star_min: c,
            })
        })
    }
}

fn window_context<'a>(g: &'a WallGeometry, pi: &ChainUltrafilter, bound: i64) -> Result<(Pi0Window<'a>, Vec<i64>), ShadowError> {
    let oracle = ConsistencyOracle::new(g);
    let cuts = oracle.check(pi)?;
    Ok((Pi0Window::new(oracle, bound), cuts))
}

/// `Δ(π, Π₀)`.
pub fn dist_to_pi0(g: &WallGeometry, pi: &ChainUltrafilter, bound: i64) -> Result<u64, ShadowError> {
    let (w, cuts) = window_context(g, pi, bound)?;
    w.dist(&cuts)
}

/// `(min_plus, min_minus, min_neutral)`.
pub type MinSplit = (Vec<ChainHalfspace>, Vec<ChainHalfspace>, Vec<ChainHalfspace>);

pub fn classify_min(g: &WallGeometry, pi: &ChainUltrafilter, bound: i64) -> Result<MinSplit, ShadowError> {
    let r = shadow_report(g, pi, bound)?;
    Ok((r.min_plus, r.min_minus, r.min_neutral))
}

pub fn shadow(g: &WallGeometry, pi: &ChainUltrafilter, bound: i64) -> Result<Vec<Vec<i64>>, ShadowError> {
    let (w, cuts) = window_context(g, pi, bound)?;
    w.nearest(&cuts).map(|(_, s)| s)
}

pub fn dual_shadow(g: &WallGeometry, pi: &ChainUltrafilter, bound: i64) -> Result<Vec<DualShadowChain>, ShadowError> {
    let s = shadow(g, pi, bound)?;
    Ok(dual_of(&s, pi.chains()))
}

pub fn shadow_report(g: &WallGeometry, pi: &ChainUltrafilter, bound: i64) -> Result<ShadowReport, ShadowError> {
    let (w, cuts) = window_context(g, pi, bound)?;
    w.report(&cuts)
}

/// Result of trying to build an escaping geodesic ray towards a class.
#[derive(Clone, Debug, Serialize)]
pub struct EscapeReport {
    pub signature: Signature,
    pub length: usize,
    pub window: i64,
    /// Index (from the origin) of the first flow vertex outside `Π₀`.
    pub exit_step: Option<usize>,
    /// `π_0 ∈ Π₀` (the last consistent vertex), then `length` more vertices.
    pub ray: Vec<Vec<i64>>,
    /// The halfspace flipped by each move of the ray.
    pub moves: Vec<ChainHalfspace>,
    pub distances: Vec<u64>,
    /// Whether each move shrank the dual shadow strictly.
    pub dual_shrinks: Vec<bool>,
    pub success: bool,
    /// First step (1-based) at which `Δ` failed to increase.
    pub failed_at: Option<usize>,
}

/// Escape attempts reuse one window of `Π₀`, built on the first exit.
struct EscapeSearch<'a> {
    oracle: ConsistencyOracle<'a>,
    bound: i64,
    pi0: Option<Pi0Window<'a>>,
}

impl<'a> EscapeSearch<'a> {
    fn run(&mut self, sig: &Signature, length: usize) -> Result<EscapeReport, ShadowError> {
        if sig.chains() != self.oracle.chains() {
            return Err(ShadowError::ChainCountMismatch {
                expected: self.oracle.chains(),
                got: sig.chains(),
            });
        }
        if sig.is_principal() {
            return Err(ShadowError::PrincipalClass);
        }
        let moves = flow_moves(sig);
        let mut report = EscapeReport {
            signature: sig.clone(),
            length,
            window: self.bound,
            exit_step: None,
            ray: vec![],
            moves: vec![],
            distances: vec![],
            dual_shrinks: vec![],
            success: false,
            failed_at: None,
        };
        // Follow the flow one flip at a time from the origin until leaving Π₀.
        let mut cuts = vec![0i64; sig.chains()];
        let mut prev = cuts.clone();
        let mut step = 0usize;
        let exit = loop {
            if !self.oracle.consistent(&cuts) {
                break Some(step);
            }
            let m = moves[step % moves.len()];
            if (cuts[m.chain] + if m.up { 1 } else { -1 }).abs() >= self.bound {
                break None;
            }
            prev = cuts.clone();
            cuts[m.chain] += if m.up { 1 } else { -1 };
            step += 1;
        };
        let Some(exit) = exit else {
            report.failed_at = Some(1);
            return Ok(report);
        };
        report.exit_step = Some(exit);
        if self.pi0.is_none() {
            self.pi0 = Some(Pi0Window::new(self.oracle.clone(), self.bound));
        }
        let pi0 = self.pi0.as_ref().expect("just built");
        let mut current = prev;
        let (d0, s0) = pi0.nearest(&current)?;
        let mut dual = dual_of(&s0, sig.chains());
        report.ray.push(current.clone());
        report.distances.push(d0);
        for t in 1..=length {
            let m = moves[(exit.saturating_sub(1) + t - 1) % moves.len()];
            report.moves.push(m.flipped(current[m.chain]));
            current[m.chain] += if m.up { 1 } else { -1 };
            let (d, s) = pi0.nearest(&current)?;
            let next_dual = dual_of(&s, sig.chains());
            report.dual_shrinks.push(dual_strictly_within(&next_dual, &dual));
            report.ray.push(current.clone());
            report.distances.push(d);
            if d <= report.distances[t - 1] {
                report.failed_at = Some(t);
                return Ok(report);
            }
            dual = next_dual;
        }
        report.success = report.dual_shrinks.iter().all(|b| *b);
        if !report.success {
            report.failed_at = report.dual_shrinks.iter().position(|b| !b).map(|i| i + 1);
        }
        Ok(report)
    }
}

/// Follows the canonical flow towards `sig` from the origin, one flip at a
/// time in chain order, and checks that after leaving `Π₀` the distance
/// `Δ(−,Π₀)` strictly increases for `length` steps while dual shadows
/// strictly shrink.
pub fn escaping_ray(g: &WallGeometry, sig: &Signature, length: usize, bound: i64) -> Result<EscapeReport, ShadowError> {
    EscapeSearch {
        oracle: ConsistencyOracle::new(g),
        bound,
        pi0: None,
    }
    .run(sig, length)
}

/// `Δ(−,Π₀)` on the whole box `[-radius, radius]^k` by multi-source
/// breadth-first search from `Π₀`. Inside an axis-parallel box the grid
/// distance is the `L¹` distance, so this is the distance to `Π₀ ∩ box`.
pub struct DistanceField {
    k: usize,
    radius: i64,
    dist: Vec<u32>,
}

impl DistanceField {
    pub fn new(oracle: &ConsistencyOracle<'_>, radius: i64) -> Result<Self, ShadowError> {
        let k = oracle.chains();
        let side = (2 * radius + 1) as usize;
        let cells = side
            .checked_pow(k as u32)
            .filter(|c| *c <= MAX_FIELD_CELLS)
            .ok_or(ShadowError::SearchTooLarge {
                cells: side.saturating_pow(k as u32),
            })?;
        let mut dist = vec![u32::MAX; cells];
        let mut queue = VecDeque::new();
        for (idx, t) in box_tuples(k, radius).enumerate() {
            if oracle.consistent(&t) {
                dist[idx] = 0;
                queue.push_back(idx);
            }
        }
        let strides: Vec<usize> = (0..k).map(|i| side.pow((k - 1 - i) as u32)).collect();
        while let Some(idx) = queue.pop_front() {
            let d = dist[idx];
            for &s in &strides {
                let coord = (idx / s) % side;
                if coord > 0 && dist[idx - s] == u32::MAX {
                    dist[idx - s] = d + 1;
                    queue.push_back(idx - s);
                }
                if coord + 1 < side && dist[idx + s] == u32::MAX {
                    dist[idx + s] = d + 1;
                    queue.push_back(idx + s);
                }
            }
        }
        Ok(DistanceField { k, radius, dist })
    }

    pub fn get(&self, cuts: &[i64]) -> Option<u64> {
        let side = 2 * self.radius + 1;
        let mut idx = 0i64;
        for &c in cuts.iter().take(self.k) {
            if c.abs() > self.radius {
                return None;
            }
            idx = idx * side + c + self.radius;
        }
        self.dist
            .get(idx as usize)
            .filter(|d| **d != u32::MAX)
            .map(|d| *d as u64)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub window: i64,
    pub search_radius: i64,
    pub max_delta: u64,
    pub argmax: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EscapeSummary {
    pub success: bool,
    pub exit_step: Option<usize>,
    pub failed_at: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub signature: Signature,
    pub codim: usize,
    pub in_image: bool,
    pub escape: Option<EscapeSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub window: i64,
    pub uniform: bool,
    pub route: Route,
    pub classes: Vec<ClassRow>,
    pub non_principal: usize,
    pub non_principal_in_image: usize,
    pub sweep: Vec<SweepRow>,
    pub max_delta: u64,
    /// Max `Δ` strictly increases along the window sweep.
    pub delta_grows: bool,
    pub escape_length: usize,
    pub escape_window: i64,
    pub escaping_ray: bool,
    /// Contrapositive of the co-compactness criterion: growing `Δ` comes
    /// with a non-principal class outside the image of `ρ`.
    pub dichotomy_consistent: bool,
}

/// The windows of the sweep: `⌈w/3⌉, ⌈2w/3⌉, w`, deduplicated.
pub fn sweep_windows(w: i64) -> Vec<i64> {
    let mut v = vec![(w + 2) / 3, (2 * w + 2) / 3, w];
    v.retain(|x| *x >= 1);
    v.dedup();
    v
}

/// Tabulates every class against the image of `ρ`, sweeps `max Δ(−,Π₀)`
/// over growing windows and tries an escaping ray of length `w` towards
/// every non-principal class.
pub fn surjectivity_report(g: &WallGeometry, w: i64) -> Result<SurjectivityReport, ShadowError> {
    let oracle = ConsistencyOracle::new(g);
    let k = g.chains();
    let mut sweep = Vec::new();
    for win in sweep_windows(w) {
        let radius = 4 * win + 1;
        let (max_delta, argmax) = if oracle.route() == Route::Independent {
            (0, vec![-win; k])
        } else {
            let field = DistanceField::new(&oracle, radius)?;
            let mut best = (0u64, vec![-win; k]);
            for t in box_tuples(k, win) {
                let d = field.get(&t).ok_or_else(|| ShadowError::WindowTooSmall {
                    window: radius,
                    witness: t.clone(),
                })?;
                // A Π₀ point outside the box is at least radius - win + 1 away.
                if d > (radius - win) as u64 {
                    return Err(ShadowError::WindowTooSmall {
                        window: radius,
                        witness: t,
                    });
                }
                if d > best.0 {
                    best = (d, t);
                }
            }
            best
        };
        sweep.push(SweepRow {
            window: win,
            search_radius: radius,
            max_delta,
            argmax,
        });
    }
    let delta_grows = sweep.len() > 1 && sweep.windows(2).all(|p| p[1].max_delta > p[0].max_delta);
    let max_delta = sweep.iter().map(|r| r.max_delta).max().unwrap_or(0);

    let escape_length = w.max(1) as usize;
    let escape_window = escape_length as i64 + 5;
    let mut search = EscapeSearch {
        oracle: oracle.clone(),
        bound: escape_window,
        pi0: None,
    };
    let mut classes = Vec::new();
    for sig in all_signatures(k) {
        let escape = if sig.is_principal() {
            None
        } else {
            let r = search.run(&sig, escape_length)?;
            Some(EscapeSummary {
                success: r.success,
                exit_step: r.exit_step,
                failed_at: r.failed_at,
            })
        };
        classes.push(ClassRow {
            in_image: signature_realized(g, &sig),
            codim: class_codim(&sig).0,
            signature: sig,
            escape,
        });
    }
    let non_principal = classes.iter().filter(|c| !c.signature.is_principal()).count();
    let non_principal_in_image = classes
        .iter()
        .filter(|c| !c.signature.is_principal() && c.in_image)
        .count();
    let escaping = classes
        .iter()
        .any(|c| c.escape.as_ref().is_some_and(|e| e.success));
    let outside = non_principal_in_image < non_principal;
    Ok(SurjectivityReport {
        window: w,
        uniform: g.is_uniform(),
        route: oracle.route(),
        classes,
        non_principal,
        non_principal_in_image,
        sweep,
        max_delta,
        delta_grows,
        escape_length,
        escape_window,
        escaping_ray: escaping,
        dichotomy_consistent: (!delta_grows || outside) && (!escaping || outside),
    })
}

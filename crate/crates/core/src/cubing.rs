//! The dual cube complex of a finite poc-set (Sageev–Roller), its wall
//! system, the halfspace poc-set read back from the complex, and the
//! duality round trip.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poc::{Element, FinitePocSet, PocError, Ultrafilter};

pub const CUBING_SCHEMA: &str = "pocset.cubing/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubingError {
    #[error("wall {0} has an empty side")]
    DegenerateWall(usize),
    #[error("removing wall {0} does not split the 1-skeleton into exactly two parts")]
    NotSeparating(usize),
    #[error("not isomorphic: {0}")]
    NotIsomorphic(String),
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error(transparent)]
    Poc(#[from] PocError),
}

/// An edge between vertices `a < b`; `label` is the member of `a` that is
/// flipped to reach `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label: Element,
}

impl Edge {
    pub fn wall(&self) -> usize {
        self.label.pair().expect("edge labels are proper")
    }
}

/// A cube of dimension `>= 2`, stored as its least vertex and the members
/// of that vertex flipped along its directions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cube {
    pub base: usize,
    pub directions: Vec<Element>,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeComplex {
    /// Number of walls (proper pairs).
    pub pairs: usize,
    /// Canonically ordered vertices.
    pub vertices: Vec<Ultrafilter>,
    pub edges: Vec<Edge>,
    pub cubes: Vec<Cube>,
}

fn flip_pairs(u: &Ultrafilter, pairs: &[usize]) -> Ultrafilter {
    let mut c = u.choices().to_vec();
    for &p in pairs {
        c[p] = !c[p];
    }
    Ultrafilter::from_choices(c)
}

/// Builds the dual cubing: vertices are all ultrafilters, edges elementary
/// moves, and a `d`-cube spans the flips of every transverse `d`-subset of
/// a vertex's minimal set.
pub fn build_cubing(p: &FinitePocSet) -> CubeComplex {
    let vertices = p.enumerate_ultrafilters();
    let index: HashMap<&Ultrafilter, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = BTreeSet::new();
    let mut cubes = BTreeSet::new();
    for (i, v) in vertices.iter().enumerate() {
        let mins = p.min_set(v);
        for &a in &mins {
            let j = index[&flip_pairs(v, &[a.pair().expect("proper")])];
            if i < j {
                edges.insert(Edge { a: i, b: j, label: a });
            }
        }
        // Transverse subsets of size >= 2, by extending in index order.
        let mut stack: Vec<Vec<usize>> = (0..mins.len()).map(|x| vec![x]).collect();
        while let Some(set) = stack.pop() {
            if set.len() >= 2 {
                let pairs: Vec<usize> = set.iter().map(|&x| mins[x].pair().expect("proper")).collect();
                // All 2^d flips are vertices; the least one is the base.
                let mut members = Vec::with_capacity(1 << set.len());
                for mask in 0..(1u32 << set.len()) {
                    let chosen: Vec<usize> = (0..set.len()).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
                    members.push(index[&flip_pairs(v, &chosen)]);
                }
                let base = *members.iter().min().expect("non-empty");
                let mut dirs: Vec<Element> = pairs
                    .iter()
                    .map(|&q| {
                        if vertices[base].choices()[q] {
                            Element::starred(q)
                        } else {
                            Element::plain(q)
                        }
                    })
                    .collect();
                dirs.sort();
                cubes.insert(Cube { base, directions: dirs });
            }
            let last = *set.last().expect("non-empty");
            for y in last + 1..mins.len() {
                if set.iter().all(|&x| p.transverse(mins[x], mins[y])) {
                    let mut ext = set.clone();
                    ext.push(y);
                    stack.push(ext);
                }
            }
        }
    }
    CubeComplex {
        pairs: p.pairs(),
        vertices,
        edges: edges.into_iter().collect(),
        cubes: cubes.into_iter().collect(),
    }
}

impl CubeComplex {
    pub fn dimension(&self) -> usize {
        self.cubes
            .iter()
            .map(Cube::dim)
            .max()
            .unwrap_or(if self.edges.is_empty() { 0 } else { 1 })
    }

    /// Number of cubes of each dimension `d >= 2`, indexed by `d`.
    pub fn cube_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.dimension() + 1];
        if !out.is_empty() {
            out[0] = self.vertices.len();
        }
        if out.len() > 1 {
            out[1] = self.edges.len();
        }
        for c in &self.cubes {
            out[c.dim()] += 1;
        }
        out
    }

    /// Vertex adjacency lists with the wall crossed by each edge.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.a].push((e.b, e.wall()));
            adj[e.b].push((e.a, e.wall()));
        }
        adj
    }

    /// The vertex sides of every wall, computed from the 1-skeleton alone:
    /// remove the wall's edges and take the component of the endpoint whose
    /// label is the plain element `h`.
    pub fn wall_sides(&self) -> Result<Vec<WallSides>, CubingError> {
        let adj = self.adjacency();
        let mut out = Vec::with_capacity(self.pairs);
        for wall in 0..self.pairs {
            let edges: Vec<&Edge> = self.edges.iter().filter(|e| e.wall() == wall).collect();
            let Some(first) = edges.first() else {
                return Err(CubingError::DegenerateWall(wall));
            };
            // `first.label` is a member of `first.a`: that endpoint is on the
            // label's side.
            let start = if first.label.is_star() { first.b } else { first.a };
            let mut seen = vec![false; self.vertices.len()];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, wl) in &adj[v] {
                    if wl != wall && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            let plain: Vec<usize> = (0..self.vertices.len()).filter(|&v| seen[v]).collect();
            let star: Vec<usize> = (0..self.vertices.len()).filter(|&v| !seen[v]).collect();
            if plain.is_empty() || star.is_empty() {
                return Err(CubingError::DegenerateWall(wall));
            }
            // Every wall edge must cross between the two sides.
            if edges.iter().any(|e| seen[e.a] == seen[e.b]) {
                return Err(CubingError::NotSeparating(wall));
            }
            out.push(WallSides {
                wall,
                edges: edges.iter().map(|e| (e.a, e.b)).collect(),
                plain,
                star,
            });
        }
        Ok(out)
    }

    /// Graphviz rendering of the 1-skeleton; edges carry wall names.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph cubing {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{v}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  v{} -- v{} [label=\"h{}\"];", e.a, e.b, e.wall() + 1);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_file(&self) -> CubingFile {
        CubingFile {
            schema: CUBING_SCHEMA.to_string(),
            pairs: self.pairs,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.proper_members().map(|e| e.to_string()).collect())
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    a: e.a,
                    b: e.b,
                    label: e.label.to_string(),
                })
                .collect(),
            cubes: self
                .cubes
                .iter()
                .map(|c| CubeRecord {
                    base: c.base,
                    directions: c.directions.iter().map(|e| e.to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_file(f: &CubingFile) -> Result<Self, CubingError> {
        let parse = |s: &str| -> Result<Element, CubingError> {
            let e: Element = s.parse()?;
            match e.pair() {
                Some(p) if p < f.pairs => Ok(e),
                _ => Err(CubingError::Malformed(format!("bad element {s}"))),
            }
        };
        let mut vertices = Vec::with_capacity(f.vertices.len());
        for names in &f.vertices {
            let mut choice = vec![None; f.pairs];
            for n in names {
                let e = parse(n)?;
                let slot = &mut choice[e.pair().expect("proper")];
                if slot.is_some() {
                    return Err(CubingError::Malformed(format!("pair of {n} chosen twice")));
                }
                *slot = Some(e.is_star());
            }
            let starred = choice
                .into_iter()
                .enumerate()
                .map(|(i, c)| c.ok_or_else(|| CubingError::Malformed(format!("vertex misses pair h{}", i + 1))))
                .collect::<Result<Vec<_>, _>>()?;
            vertices.push(Ultrafilter::from_choices(starred));
        }
        let n = vertices.len();
        let mut edges = Vec::with_capacity(f.edges.len());
        for r in &f.edges {
            if r.a >= n || r.b >= n {
                return Err(CubingError::Malformed(format!("edge {}-{} out of range", r.a, r.b)));
            }
            edges.push(Edge {
                a: r.a,
                b: r.b,
                label: parse(&r.label)?,
            });
        }
        let mut cubes = Vec::with_capacity(f.cubes.len());
        for r in &f.cubes {
            if r.base >= n {
                return Err(CubingError::Malformed(format!("cube base {} out of range", r.base)));
            }
            cubes.push(Cube {
                base: r.base,
                directions: r.directions.iter().map(|d| parse(d)).collect::<Result<_, _>>()?,
            });
        }
        Ok(CubeComplex {
            pairs: f.pairs,
            vertices,
            edges,
            cubes,
        })
    }
}

/// Structured export of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubingFile {
    pub schema: String,
    pub pairs: usize,
    /// Proper members of each vertex (`0*` implicit).
    pub vertices: Vec<Vec<String>>,
    pub edges: Vec<EdgeRecord>,
    pub cubes: Vec<CubeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: usize,
    pub b: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeRecord {
    pub base: usize,
    pub directions: Vec<String>,
}

/// One wall of the complex: its edges and the vertex sets `S_h`, `S_{h*}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallSides {
    pub wall: usize,
    pub edges: Vec<(usize, usize)>,
    pub plain: Vec<usize>,
    pub star: Vec<usize>,
}

impl WallSides {
    pub fn side(&self, star: bool) -> &[usize] {
        if star {
            &self.star
        } else {
            &self.plain
        }
    }
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    // Both sorted.
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
    }
    true
}

/// The halfspace poc-set of a complex: pair `j` is wall `j`, with `h_j`
/// the side `S_{h_j}`, ordered by inclusion of vertex sets.
pub fn extract_halfspaces(c: &CubeComplex) -> Result<(FinitePocSet, Vec<WallSides>), CubingError> {
    let walls = c.wall_sides()?;
    let all: Vec<usize> = (0..c.vertices.len()).collect();
    let empty: Vec<usize> = Vec::new();
    let side = |e: Element| -> &[usize] {
        match e {
            Element::Proper { pair, star } => walls[pair as usize].side(star),
            Element::Zero => &empty,
            Element::ZeroStar => &all,
        }
    };
    let p = FinitePocSet::from_relation(c.pairs, |a, b| subset(side(a), side(b)))?;
    Ok((p, walls))
}

/// Outcome of `extract_halfspaces(build_cubing(P)) ≅ P`.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    /// `(h, S_h)` as display names, for every proper element.
    pub bijection: Vec<(String, String)>,
    pub vertices: usize,
    pub edges: usize,
    /// Vertex `v` is sent to `π_v = {S_h : v ∈ S_h}`, listed by index in
    /// the ultrafilter enumeration of the extracted poc-set.
    pub vertex_map: Vec<usize>,
}

/// Checks the duality round trip with the bijection `h_j ↔ S_{h_j}` and the
/// vertex map `v ↦ π_v`.
pub fn duality_roundtrip(p: &FinitePocSet) -> Result<DualityReport, CubingError> {
    let c = build_cubing(p);
    let (q, walls) = extract_halfspaces(&c)?;
    if q.pairs() != p.pairs() {
        return Err(CubingError::NotIsomorphic(format!(
            "{} pairs vs {} walls",
            p.pairs(),
            q.pairs()
        )));
    }
    for a in p.elements() {
        for b in p.elements() {
            if p.leq(a, b) != q.leq(a, b) {
                return Err(CubingError::NotIsomorphic(format!(
                    "{a} <= {b} is {} in P but {} for the sides",
                    p.leq(a, b),
                    q.leq(a, b)
                )));
            }
        }
    }
    // v ↦ π_v must be a bijection onto the ultrafilters of Q preserving edges.
    let q_vertices = q.enumerate_ultrafilters();
    let q_index: HashMap<&Ultrafilter, usize> = q_vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut vertex_map = Vec::with_capacity(c.vertices.len());
    for v in 0..c.vertices.len() {
        let pi_v = Ultrafilter::from_choices(walls.iter().map(|w| w.star.binary_search(&v).is_ok()).collect());
        let idx = q_index
            .get(&pi_v)
            .ok_or_else(|| CubingError::NotIsomorphic(format!("π_v{v} is not an ultrafilter of the sides")))?;
        vertex_map.push(*idx);
    }
    let distinct: BTreeSet<usize> = vertex_map.iter().copied().collect();
    if distinct.len() != q_vertices.len() || vertex_map.len() != q_vertices.len() {
        return Err(CubingError::NotIsomorphic("vertex map is not a bijection".into()));
    }
    for e in &c.edges {
        let d = q_vertices[vertex_map[e.a]].delta(&q_vertices[vertex_map[e.b]])?;
        if d != 1 {
            return Err(CubingError::NotIsomorphic(format!("edge v{}-v{} maps to distance {d}", e.a, e.b)));
        }
    }
    let q_edges = q_vertices
        .iter()
        .enumerate()
        .flat_map(|(i, a)| q_vertices[i + 1..].iter().filter(move |b| a.delta(b) == Ok(1)))
        .count();
    if q_edges != c.edges.len() {
        return Err(CubingError::NotIsomorphic(format!(
            "{} edges vs {q_edges} elementary moves",
            c.edges.len()
        )));
    }
    Ok(DualityReport {
        bijection: p
            .proper_elements()
            .map(|h| (h.to_string(), format!("S_{h}")))
            .collect(),
        vertices: c.vertices.len(),
        edges: c.edges.len(),
        vertex_map,
    })
}

/// Searches for any poc-set isomorphism `P → Q` (pairs to pairs, possibly
/// swapping `h` and `h*`); returns the image of each `h_j`.
pub fn find_isomorphism(p: &FinitePocSet, q: &FinitePocSet) -> Option<Vec<Element>> {
    if p.pairs() != q.pairs() {
        return None;
    }
    fn extend(p: &FinitePocSet, q: &FinitePocSet, img: &mut Vec<Element>, used: &mut Vec<bool>) -> bool {
        let i = img.len();
        if i == p.pairs() {
            return true;
        }
        let map = |img: &[Element], e: Element| -> Element {
            match e {
                Element::Proper { pair, star } => {
                    let t = img[pair as usize];
                    if star {
                        t.star()
                    } else {
                        t
                    }
                }
                other => other,
            }
        };
        for j in 0..q.pairs() {
            if used[j] {
                continue;
            }
            for cand in [Element::plain(j), Element::starred(j)] {
                img.push(cand);
                let ok = (0..=i).all(|a| {
                    (0..=i).all(|b| {
                        [false, true].iter().all(|&sa| {
                            [false, true].iter().all(|&sb| {
                                let ea = if sa { Element::starred(a) } else { Element::plain(a) };
                                let eb = if sb { Element::starred(b) } else { Element::plain(b) };
                                p.leq(ea, eb) == q.leq(map(img, ea), map(img, eb))
                            })
                        })
                    })
                });
                if ok {
                    used[j] = true;
                    if extend(p, q, img, used) {
                        return true;
                    }
                    used[j] = false;
                }
                img.pop();
            }
        }
        false
    }
    let mut img = Vec::new();
    let mut used = vec![false; q.pairs()];
    extend(p, q, &mut img, &mut used).then_some(img)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_complexes() {
        let c = build_cubing(&fixtures::line3());
        assert_eq!((c.vertices.len(), c.edges.len(), c.cubes.len()), (4, 3, 0));
        let c = build_cubing(&fixtures::square());
        assert_eq!((c.vertices.len(), c.edges.len(), c.cubes.len()), (4, 4, 1));
        assert_eq!(c.cubes[0].base, 0);
        let c = build_cubing(&fixtures::tripod());
        assert_eq!((c.vertices.len(), c.edges.len(), c.cubes.len()), (4, 3, 0));
        let mut degrees = vec![0; 4];
        for e in &c.edges {
            degrees[e.a] += 1;
            degrees[e.b] += 1;
        }
        degrees.sort();
        assert_eq!(degrees, vec![1, 1, 1, 3]);
    }

    #[test]
    fn extraction() {
        let (q, _) = extract_halfspaces(&build_cubing(&fixtures::square())).unwrap();
        assert_eq!(q.pairs(), 2);
        assert!(q.transverse(Element::plain(0), Element::plain(1)));
        let (q, _) = extract_halfspaces(&build_cubing(&fixtures::line3())).unwrap();
        assert!(find_isomorphism(&q, &fixtures::line3()).is_some());
        let (q, _) = extract_halfspaces(&build_cubing(&FinitePocSet::trivial())).unwrap();
        assert_eq!(q.pairs(), 0);
    }

    #[test]
    fn roundtrips() {
        for p in [fixtures::line3(), fixtures::square(), fixtures::tripod()] {
            let r = duality_roundtrip(&p).unwrap();
            assert_eq!(r.bijection.len(), 2 * p.pairs());
        }
    }

    #[test]
    fn file_roundtrip() {
        let c = build_cubing(&fixtures::square());
        let back = CubeComplex::from_file(&c.to_file()).unwrap();
        assert_eq!(back, c);
        let dot = c.to_dot();
        assert_eq!(dot.matches(" -- ").count(), 4);
    }
}

//! Independent brute-force oracles shared by the acceptance and property
//! suites. They use only the raw order relation and closed-form geometry,
//! never the library's enumeration or search code.

#![allow(dead_code)]

use std::collections::VecDeque;

use pocset::chain::{CutState, End, Signature};
use pocset::poc::{Element, FinitePocSet, Ultrafilter};

/// Every sign assignment satisfying UF2 (`h, k` members ⟹ not `h <= k*`),
/// in canonical order.
pub fn brute_ultrafilters(p: &FinitePocSet) -> Vec<Ultrafilter> {
    let n = p.pairs();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let starred: Vec<bool> = (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect();
        let members: Vec<Element> = starred
            .iter()
            .enumerate()
            .map(|(i, &s)| if s { Element::starred(i) } else { Element::plain(i) })
            .chain([Element::ZeroStar])
            .collect();
        let ok = members
            .iter()
            .all(|&h| members.iter().all(|&k| !p.leq(h, k.star())));
        if ok {
            out.push(Ultrafilter::from_choices(starred));
        }
    }
    out
}

/// Breadth-first distances from `start` over an undirected edge list.
pub fn bfs(n: usize, edges: &[(usize, usize)], start: usize) -> Vec<Option<u64>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut dist = vec![None; n];
    dist[start] = Some(0);
    let mut q = VecDeque::from([start]);
    while let Some(v) = q.pop_front() {
        let d = dist[v].unwrap();
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

/// FIX-HEX consistency in closed form: the cut sum lies in `[0, 3]`.
pub fn hex_consistent(c: &[i64]) -> bool {
    let s: i64 = c.iter().sum();
    (0..=3).contains(&s)
}

/// FIX-HEX `Δ(−,Π₀)` in closed form: every flip changes the sum by one.
pub fn hex_dist(c: &[i64]) -> u64 {
    let s: i64 = c.iter().sum();
    (s - 3).max(-s).max(0) as u64
}

/// Incomparability of two classes straight from the closure-order
/// definition: `a <= b` iff every end of `a` is an end of `b`.
pub fn incomparable(a: &Signature, b: &Signature) -> bool {
    let le = |x: &Signature, y: &Signature| {
        x.0.iter()
            .zip(&y.0)
            .all(|(p, q)| *p == End::Fin || p == q)
    };
    !le(a, b) && !le(b, a)
}

/// Membership of `h_chain(n)` (or its star) in a chain state.
pub fn state_contains(s: CutState, n: i64, star: bool) -> bool {
    let plain = match s {
        CutState::Cut(c) => n < c,
        CutState::PlusEnd => true,
        CutState::MinusEnd => false,
    };
    plain != star
}

//! Exact maximum cut of small graphs by branch and bound.

use alloc::vec::Vec;

use crate::error::{limits_err, Result};
use crate::graph::Graph;

/// Default vertex cap for [`maxcut_exact`].
pub const DEFAULT_MAXCUT_CAP: usize = 28;

/// `max_{A ⊔ B = V} e(A, B)` with the default vertex cap.
pub fn maxcut_exact(g: &Graph) -> Result<u64> {
    maxcut_exact_capped(g, DEFAULT_MAXCUT_CAP)
}

/// As [`maxcut_exact`] with an explicit cap (at most 64 vertices).
pub fn maxcut_exact_capped(g: &Graph, cap: usize) -> Result<u64> {
    let n = g.vertex_count();
    if n > cap.min(64) {
        return Err(limits_err!("max-cut on {n} vertices exceeds cap {}", cap.min(64)));
    }
    if g.edge_count() == 0 {
        return Ok(0);
    }
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v)[0]).collect();
    let (order, twin_prev) = twin_order(&adj);
    let best = local_search_cut(&adj, &order);
    let mut s = Search {
        adj: &adj,
        order: &order,
        twin_prev: &twin_prev,
        best,
    };
    let unassigned = order.iter().fold(0u64, |m, &v| m | 1 << v);
    s.dfs(0, 0, 0, unassigned, 0);
    Ok(s.best)
}

/// Vertex order grouping twin classes (`N(u) ∖ {v} = N(v) ∖ {u}`)
/// contiguously, classes by decreasing degree. `twin_prev[i]` marks that
/// `order[i]` is a twin of `order[i-1]`.
fn twin_order(adj: &[u64]) -> (Vec<usize>, Vec<bool>) {
    let n = adj.len();
    let mut class = alloc::vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if class[u] != usize::MAX {
            continue;
        }
        class[u] = classes.len();
        let mut members = alloc::vec![u];
        for v in u + 1..n {
            let both = (1u64 << u) | (1u64 << v);
            if class[v] == usize::MAX && (adj[u] ^ adj[v]) & !both == 0 {
                class[v] = classes.len();
                members.push(v);
            }
        }
        classes.push(members);
    }
    classes.sort_by_key(|c| core::cmp::Reverse((adj[c[0]].count_ones(), c.len())));
    let mut order = Vec::with_capacity(n);
    let mut twin_prev = Vec::with_capacity(n);
    for c in classes {
        for (i, v) in c.into_iter().enumerate() {
            order.push(v);
            twin_prev.push(i > 0);
        }
    }
    (order, twin_prev)
}

fn cut_value(adj: &[u64], side_a: u64) -> u64 {
    let all = adj.iter().enumerate().fold(0u64, |m, (v, _)| m | 1 << v);
    let side_b = all & !side_a;
    (0..adj.len())
        .filter(|v| side_a >> v & 1 == 1)
        .map(|v| (adj[v] & side_b).count_ones() as u64)
        .sum()
}

/// One-flip local optimum from an alternating start; a lower bound for pruning.
fn local_search_cut(adj: &[u64], order: &[usize]) -> u64 {
    let mut side_a = 0u64;
    for (i, &v) in order.iter().enumerate() {
        if i % 2 == 0 {
            side_a |= 1 << v;
        }
    }
    loop {
        let mut improved = false;
        for v in 0..adj.len() {
            let in_a = side_a >> v & 1 == 1;
            let same = if in_a { adj[v] & side_a } else { adj[v] & !side_a };
            let other = adj[v].count_ones() - same.count_ones();
            if same.count_ones() > other {
                side_a ^= 1 << v;
                improved = true;
            }
        }
        if !improved {
            return cut_value(adj, side_a);
        }
    }
}

struct Search<'a> {
    adj: &'a [u64],
    order: &'a [usize],
    twin_prev: &'a [bool],
    best: u64,
}

impl Search<'_> {
    fn bound(&self, side_a: u64, side_b: u64, unassigned: u64, cut: u64) -> u64 {
        let mut b = cut;
        let mut internal = 0u64;
        let mut rest = unassigned;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let to_a = (self.adj[v] & side_a).count_ones();
            let to_b = (self.adj[v] & side_b).count_ones();
            b += to_a.max(to_b) as u64;
            internal += (self.adj[v] & unassigned).count_ones() as u64;
        }
        let u = unassigned.count_ones() as u64;
        b + (internal / 2).min(u * u / 4)
    }

    fn dfs(&mut self, i: usize, side_a: u64, side_b: u64, unassigned: u64, cut: u64) {
        if self.bound(side_a, side_b, unassigned, cut) <= self.best {
            return;
        }
        if i == self.order.len() {
            self.best = cut;
            return;
        }
        let v = self.order[i];
        let bit = 1u64 << v;
        let rest = unassigned & !bit;
        let forced_b = self.twin_prev[i] && side_b >> self.order[i - 1] & 1 == 1;
        if !forced_b {
            let gain = (self.adj[v] & side_b).count_ones() as u64;
            self.dfs(i + 1, side_a | bit, side_b, rest, cut + gain);
        }
        if i > 0 {
            let gain = (self.adj[v] & side_a).count_ones() as u64;
            self.dfs(i + 1, side_a, side_b | bit, rest, cut + gain);
        }
    }
}

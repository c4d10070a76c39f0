use alloc::format;
use alloc::vec::Vec;

use super::state::ColorRows;
use super::{ArrowMethod, ArrowingVerdict, DeciderLimits, Outcome, TargetSpec};
use crate::error::{limits_err, Error, Result};
use crate::graph::Graph;
use crate::witness::{Color, TwoColoring};

/// Depth-first search over partial colorings. Edges are colored in
/// decreasing order of endpoint codegree, the first one fixed red; a branch
/// is cut as soon as the newly colored edge completes a monochromatic
/// target. `Arrows` iff every branch is cut.
pub fn decide_exact(g: &Graph, t: TargetSpec, lim: &DeciderLimits) -> Result<ArrowingVerdict> {
    let m = g.edge_count();
    if m > lim.max_edges_exhaustive {
        return Err(limits_err!(
            "{m} edges exceed the exhaustive budget of {}",
            lim.max_edges_exhaustive
        ));
    }
    let mut edges: Vec<(usize, usize)> = g.edge_vec();
    edges.sort_by_key(|&(u, v)| core::cmp::Reverse(g.codegree(u, v)));

    let mut s = Backtrack {
        t,
        edges: &edges,
        rows: ColorRows::new(g.vertex_count()),
        colors: Vec::with_capacity(m),
        nodes: 0,
        budget: lim.max_search_nodes,
    };
    let outcome = match s.dfs(0) {
        Step::AllCut => Outcome::Arrows(ArrowMethod::Exhaustive),
        Step::OutOfBudget => Outcome::Unknown,
        Step::Found => {
            let coloring = TwoColoring::from_fn(g, |u, v| {
                let i = edges
                    .iter()
                    .position(|&e| e == (u, v))
                    .expect("every host edge is ordered");
                s.colors[i]
            });
            if t.present_in(&coloring) {
                return Err(Error::Internal(format!(
                    "exhaustive search returned a coloring containing {t:?}"
                )));
            }
            Outcome::NotArrows(coloring)
        }
    };
    Ok(ArrowingVerdict {
        outcome,
        nodes: s.nodes,
    })
}

enum Step {
    AllCut,
    Found,
    OutOfBudget,
}

struct Backtrack<'a> {
    t: TargetSpec,
    edges: &'a [(usize, usize)],
    rows: ColorRows,
    colors: Vec<Color>,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    fn dfs(&mut self, i: usize) -> Step {
        if i == self.edges.len() {
            return Step::Found;
        }
        let (u, v) = self.edges[i];
        let choices: &[Color] = if i == 0 { &[Color::Red] } else { &Color::BOTH };
        for &c in choices {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            self.rows.set(c, u, v);
            if !self.rows.target_touching(c, u, v, self.t) {
                self.colors.push(c);
                match self.dfs(i + 1) {
                    Step::AllCut => {}
                    other => return other,
                }
                self.colors.pop();
            }
            self.rows.unset(c, u, v);
        }
        Step::AllCut
    }
}

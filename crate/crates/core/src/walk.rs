//! The deterministic spanning traversal shared by the codecs: expansion
//! order, per-edge emission order, and nesting depth.
//!
//! When every node is reachable from the top along stored edge directions
//! (true for anything parsed from Penman), the walk is a plain forward DFS
//! in stored edge order. Otherwise — e.g. graphs decoded from triple text
//! whose inverse roles were removed — the walk falls back to an undirected
//! DFS that traverses edges backward where needed; Penman serialization
//! renders those traversals with inverted roles.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{AmrGraph, EdgeTarget, Variable};

#[derive(Clone, Copy, Debug)]
pub(crate) enum WalkEvent {
    /// Expansion of a variable begins (`( v / concept` in Penman).
    Enter { var: usize },
    /// Expansion of the current variable ends (`)`).
    Exit,
    /// An edge is emitted. `reversed` means the stored edge is traversed
    /// target-to-source (fallback mode only); `expands` means the far node's
    /// `Enter` follows immediately.
    Edge {
        edge: usize,
        reversed: bool,
        expands: bool,
    },
}

pub(crate) struct Walk<'a> {
    pub events: Vec<WalkEvent>,
    /// Variables in expansion (discovery) order, as indices into `vars`.
    pub discovery: Vec<usize>,
    pub vars: Vec<&'a Variable>,
    pub max_depth: usize,
}

pub(crate) fn spanning_walk(graph: &AmrGraph) -> Walk<'_> {
    let vars: Vec<&Variable> = graph.variables().collect();
    let index: BTreeMap<&Variable, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let n = vars.len();
    let edges = graph.edges();

    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, edge) in edges.iter().enumerate() {
        let s = index[&edge.source];
        out[s].push(i);
        incident[s].push(i);
        if let Some(t) = edge.target.as_var() {
            let t = index[t];
            if t != s {
                incident[t].push(i);
            }
        }
    }

    let top = index[graph.top()];
    if forward_reachable(top, n, edges, &out, &index) {
        forward_walk(top, n, edges, &out, &index, vars)
    } else {
        fallback_walk(top, n, edges, &incident, &index, vars)
    }
}

fn forward_reachable(
    top: usize,
    n: usize,
    edges: &[crate::graph::Edge],
    out: &[Vec<usize>],
    index: &BTreeMap<&Variable, usize>,
) -> bool {
    let mut seen = vec![false; n];
    let mut queue = vec![top];
    seen[top] = true;
    let mut count = 1;
    while let Some(v) = queue.pop() {
        for &ei in &out[v] {
            if let Some(t) = edges[ei].target.as_var() {
                let t = index[t];
                if !seen[t] {
                    seen[t] = true;
                    count += 1;
                    queue.push(t);
                }
            }
        }
    }
    count == n
}

fn forward_walk<'a>(
    top: usize,
    n: usize,
    edges: &[crate::graph::Edge],
    out: &[Vec<usize>],
    index: &BTreeMap<&Variable, usize>,
    vars: Vec<&'a Variable>,
) -> Walk<'a> {
    let mut events = Vec::new();
    let mut discovery = Vec::new();
    let mut visited = vec![false; n];
    let mut max_depth = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();

    visited[top] = true;
    discovery.push(top);
    events.push(WalkEvent::Enter { var: top });
    stack.push((top, 0));

    while let Some(&(v, cursor)) = stack.last() {
        if cursor >= out[v].len() {
            events.push(WalkEvent::Exit);
            stack.pop();
            continue;
        }
        stack.last_mut().expect("nonempty stack").1 += 1;
        let ei = out[v][cursor];
        match &edges[ei].target {
            EdgeTarget::Const(_) => events.push(WalkEvent::Edge {
                edge: ei,
                reversed: false,
                expands: false,
            }),
            EdgeTarget::Var(t) => {
                let t = index[t];
                if visited[t] {
                    events.push(WalkEvent::Edge {
                        edge: ei,
                        reversed: false,
                        expands: false,
                    });
                } else {
                    visited[t] = true;
                    discovery.push(t);
                    let depth = stack.len();
                    max_depth = max_depth.max(depth);
                    events.push(WalkEvent::Edge {
                        edge: ei,
                        reversed: false,
                        expands: true,
                    });
                    events.push(WalkEvent::Enter { var: t });
                    stack.push((t, 0));
                }
            }
        }
    }

    Walk {
        events,
        discovery,
        vars,
        max_depth,
    }
}

fn fallback_walk<'a>(
    top: usize,
    n: usize,
    edges: &[crate::graph::Edge],
    incident: &[Vec<usize>],
    index: &BTreeMap<&Variable, usize>,
    vars: Vec<&'a Variable>,
) -> Walk<'a> {
    let mut events = Vec::new();
    let mut discovery = Vec::new();
    let mut visited = vec![false; n];
    let mut emitted = vec![false; edges.len()];
    let mut max_depth = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();

    visited[top] = true;
    discovery.push(top);
    events.push(WalkEvent::Enter { var: top });
    stack.push((top, 0));

    while let Some(&(v, cursor)) = stack.last() {
        if cursor >= incident[v].len() {
            events.push(WalkEvent::Exit);
            stack.pop();
            continue;
        }
        stack.last_mut().expect("nonempty stack").1 += 1;
        let ei = incident[v][cursor];
        if emitted[ei] {
            continue;
        }
        let edge = &edges[ei];
        let s = index[&edge.source];
        if s == v {
            emitted[ei] = true;
            match &edge.target {
                EdgeTarget::Const(_) => events.push(WalkEvent::Edge {
                    edge: ei,
                    reversed: false,
                    expands: false,
                }),
                EdgeTarget::Var(t) => {
                    let t = index[t];
                    if visited[t] {
                        events.push(WalkEvent::Edge {
                            edge: ei,
                            reversed: false,
                            expands: false,
                        });
                    } else {
                        visited[t] = true;
                        discovery.push(t);
                        let depth = stack.len();
                        max_depth = max_depth.max(depth);
                        events.push(WalkEvent::Edge {
                            edge: ei,
                            reversed: false,
                            expands: true,
                        });
                        events.push(WalkEvent::Enter { var: t });
                        stack.push((t, 0));
                    }
                }
            }
        } else if !visited[s] {
            // Traverse the edge backward and expand its source here; an
            // in-edge from an already-visited source is left for that
            // source's own loop, which emits it as a reference.
            emitted[ei] = true;
            visited[s] = true;
            discovery.push(s);
            let depth = stack.len();
            max_depth = max_depth.max(depth);
            events.push(WalkEvent::Edge {
                edge: ei,
                reversed: true,
                expands: true,
            });
            events.push(WalkEvent::Enter { var: s });
            stack.push((s, 0));
        }
    }

    debug_assert!(
        visited.iter().all(|&v| v),
        "weak connectivity covers all nodes"
    );
    debug_assert!(
        emitted.iter().all(|&e| e),
        "every edge emitted exactly once"
    );

    Walk {
        events,
        discovery,
        vars,
        max_depth,
    }
}

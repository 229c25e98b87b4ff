//! Seeded synthetic graphs for tests, property suites, and diagnostics.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{AmrGraph, Concept, Constant, Edge, EdgeTarget, Role, VarAllocator, Variable};

const CONCEPTS: &[&str] = &[
    "want-01", "go-02", "see-01", "person", "city", "thing", "dog", "country", "name", "good",
    "run-02", "house", "eat-01", "water", "small", "true-01",
];
const ROLES: &[&str] = &[
    "ARG0", "ARG1", "ARG2", "ARG3", "mod", "time", "location", "manner", "poss", "topic",
];
const ATTRIBUTE_ROLES: &[&str] = &["polarity", "quant", "name", "mode"];
const TEXT_VALUES: &[&str] = &["China", "New York", "Mary", "Rome"];

#[derive(Clone, Debug)]
pub struct SynthConfig {
    pub min_variables: usize,
    pub max_variables: usize,
    pub inverse_role_probability: f64,
    pub reentrancy_probability: f64,
    pub attribute_probability: f64,
    /// Force pairwise-distinct concept labels, the precondition for exact
    /// variable-free round-trips.
    pub distinct_concepts: bool,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            min_variables: 1,
            max_variables: 12,
            inverse_role_probability: 0.2,
            reentrancy_probability: 0.15,
            attribute_probability: 0.25,
            distinct_concepts: false,
        }
    }
}

fn random_role(rng: &mut impl Rng, config: &SynthConfig) -> Role {
    let base = ROLES[rng.random_range(0..ROLES.len())];
    if rng.random_bool(config.inverse_role_probability) {
        Role::new(format!("{base}-of")).expect("pool roles are valid")
    } else {
        Role::new(base).expect("pool roles are valid")
    }
}

fn random_constant(rng: &mut impl Rng) -> Constant {
    match rng.random_range(0..3) {
        0 => Constant::text(TEXT_VALUES[rng.random_range(0..TEXT_VALUES.len())])
            .expect("pool strings are valid"),
        1 => {
            Constant::number(rng.random_range(0..100u32).to_string()).expect("integers are numeric")
        }
        _ => Constant::symbol("-").expect("`-` is a valid symbol"),
    }
}

/// Generate a random connected graph whose stored edge order is the
/// pre-order of its spanning tree, so Penman round-trips are exact.
pub fn random_graph(rng: &mut impl Rng, config: &SynthConfig) -> AmrGraph {
    let upper = config.max_variables.max(config.min_variables).max(1);
    let lower = config.min_variables.clamp(1, upper);
    let n = rng.random_range(lower..=upper);

    let labels: Vec<String> = if config.distinct_concepts {
        let mut pool: Vec<&str> = CONCEPTS.into();
        pool.shuffle(rng);
        (0..n)
            .map(|i| {
                if i < pool.len() {
                    pool[i].to_string()
                } else {
                    format!("{}-x{}", pool[i % pool.len()], i)
                }
            })
            .collect()
    } else {
        (0..n)
            .map(|_| CONCEPTS[rng.random_range(0..CONCEPTS.len())].to_string())
            .collect()
    };

    let mut allocator = VarAllocator::new();
    let vars: Vec<Variable> = labels.iter().map(|l| allocator.allocate(l)).collect();

    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 1..n {
        children[rng.random_range(0..i)].push(i);
    }

    let mut edges = Vec::new();
    let mut discovered = Vec::new();
    grow(
        rng,
        config,
        &vars,
        &children,
        &mut edges,
        &mut discovered,
        0,
    );

    let instances: BTreeMap<Variable, Concept> = vars
        .iter()
        .zip(&labels)
        .map(|(v, l)| {
            (
                v.clone(),
                Concept::new(l.clone()).expect("pool labels are valid"),
            )
        })
        .collect();

    AmrGraph::try_new(vars[0].clone(), instances, edges)
        .expect("generated graphs are structurally valid")
}

fn grow(
    rng: &mut impl Rng,
    config: &SynthConfig,
    vars: &[Variable],
    children: &[Vec<usize>],
    edges: &mut Vec<Edge>,
    discovered: &mut Vec<usize>,
    node: usize,
) {
    discovered.push(node);
    if rng.random_bool(config.attribute_probability) {
        let role = ATTRIBUTE_ROLES[rng.random_range(0..ATTRIBUTE_ROLES.len())];
        edges.push(Edge::new(
            vars[node].clone(),
            Role::new(role).expect("pool roles are valid"),
            EdgeTarget::Const(random_constant(rng)),
        ));
    }
    for &child in &children[node] {
        edges.push(Edge::new(
            vars[node].clone(),
            random_role(rng, config),
            EdgeTarget::Var(vars[child].clone()),
        ));
        grow(rng, config, vars, children, edges, discovered, child);
    }
    if discovered.len() > 1 && rng.random_bool(config.reentrancy_probability) {
        let target = discovered[rng.random_range(0..discovered.len())];
        edges.push(Edge::new(
            vars[node].clone(),
            random_role(rng, config),
            EdgeTarget::Var(vars[target].clone()),
        ));
    }
}

/// Rename every variable to a fresh shuffled name; the result is
/// graph-equivalent under Smatch.
pub fn rename_variables(rng: &mut impl Rng, graph: &AmrGraph) -> AmrGraph {
    let old: Vec<Variable> = graph.variables().cloned().collect();
    let mut indices: Vec<usize> = (0..old.len()).collect();
    indices.shuffle(rng);
    let renaming: BTreeMap<Variable, Variable> = old
        .iter()
        .zip(indices)
        .map(|(v, i)| {
            (
                v.clone(),
                Variable::new(format!("z{i}")).expect("generated names are valid"),
            )
        })
        .collect();

    let instances: BTreeMap<Variable, Concept> = graph
        .instances()
        .map(|(v, c)| (renaming[v].clone(), c.clone()))
        .collect();
    let edges: Vec<Edge> = graph
        .edges()
        .iter()
        .map(|e| {
            let target = match &e.target {
                EdgeTarget::Var(v) => EdgeTarget::Var(renaming[v].clone()),
                EdgeTarget::Const(c) => EdgeTarget::Const(c.clone()),
            };
            Edge::new(renaming[&e.source].clone(), e.role.clone(), target)
        })
        .collect();
    AmrGraph::try_new(renaming[graph.top()].clone(), instances, edges)
        .expect("renaming preserves validity")
}

/// A renamed copy with a few random structural mutations, for scorer tests.
pub fn perturb(rng: &mut impl Rng, graph: &AmrGraph) -> AmrGraph {
    let mut current = rename_variables(rng, graph);
    for _ in 0..rng.random_range(0..=3) {
        if let Some(next) = mutate_once(rng, &current) {
            current = next;
        }
    }
    current
}

fn mutate_once(rng: &mut impl Rng, graph: &AmrGraph) -> Option<AmrGraph> {
    let mut instances: BTreeMap<Variable, Concept> = graph
        .instances()
        .map(|(v, c)| (v.clone(), c.clone()))
        .collect();
    let mut edges: Vec<Edge> = graph.edges().to_vec();
    match rng.random_range(0..4) {
        0 => {
            let vars: Vec<Variable> = graph.variables().cloned().collect();
            let victim = &vars[rng.random_range(0..vars.len())];
            let label = CONCEPTS[rng.random_range(0..CONCEPTS.len())];
            instances.insert(
                victim.clone(),
                Concept::new(label).expect("pool labels are valid"),
            );
        }
        1 => {
            if edges.is_empty() {
                return None;
            }
            let i = rng.random_range(0..edges.len());
            edges[i].role =
                Role::new(ROLES[rng.random_range(0..ROLES.len())]).expect("pool roles are valid");
        }
        2 => {
            if edges.is_empty() {
                return None;
            }
            edges.remove(rng.random_range(0..edges.len()));
        }
        _ => {
            let attrs: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.target.as_var().is_none())
                .map(|(i, _)| i)
                .collect();
            if attrs.is_empty() {
                return None;
            }
            let i = attrs[rng.random_range(0..attrs.len())];
            edges[i].target = EdgeTarget::Const(random_constant(rng));
        }
    }
    AmrGraph::try_new(graph.top().clone(), instances, edges).ok()
}

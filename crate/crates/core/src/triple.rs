//! Pipe-separated triple encodings and their decoder.
//!
//! The four strategies vary in whether variables and inverse roles are
//! retained; the config names the model variants
//! `Triple_{X|O}_var_{X|O}_invrole` (`O` = retained, `X` = removed).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{
    AmrGraph, Concept, Constant, Edge, EdgeTarget, GraphError, Role, Term, Triple, VarAllocator,
    Variable,
};
use crate::walk::{spanning_walk, WalkEvent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleConfig {
    pub keep_variables: bool,
    pub keep_inverse_roles: bool,
}

impl Default for TripleConfig {
    fn default() -> Self {
        TripleConfig {
            keep_variables: true,
            keep_inverse_roles: true,
        }
    }
}

impl TripleConfig {
    pub fn model_name(&self) -> String {
        alloc::format!(
            "Triple_{}_var_{}_invrole",
            if self.keep_variables { "O" } else { "X" },
            if self.keep_inverse_roles { "O" } else { "X" },
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("empty input")]
    Empty,
    #[error("triple {index} has fewer than 3 tokens")]
    TooFewTokens { index: usize },
    #[error("triple {index} has unexpected trailing tokens")]
    Trailing { index: usize },
    #[error("unclosed string literal in triple {index}")]
    UnclosedQuote { index: usize },
    #[error("quoted string cannot open triple {index}")]
    QuotedHead { index: usize },
    #[error("instance triple {index} must bind a variable to a bare concept")]
    BadInstance { index: usize },
    #[error("unknown variable `{variable}` in triple {index}")]
    UnknownVariable { variable: String, index: usize },
    #[error("duplicate instance declaration for variable `{0}`")]
    DuplicateInstance(String),
    #[error("`instance` triple in variable-free input (triple {index})")]
    UnexpectedInstance { index: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn term_for(graph: &AmrGraph, variable: &Variable, keep_variables: bool) -> Term {
    if keep_variables {
        Term::Var(variable.clone())
    } else {
        Term::Concept(
            graph
                .concept_of(variable)
                .expect("declared variable has a concept")
                .clone(),
        )
    }
}

/// Extract the triple sequence: with variables, one `v instance concept`
/// triple per variable in discovery order, then relation triples in
/// traversal order. Removing inverse roles reverses each non-exempt
/// `(a, r-of, b)` to `(b, r, a)` in place.
pub fn extract(graph: &AmrGraph, config: &TripleConfig) -> Vec<Triple> {
    let walk = spanning_walk(graph);
    let mut triples = Vec::new();

    if config.keep_variables {
        for &vi in &walk.discovery {
            let variable = walk.vars[vi];
            let concept = graph
                .concept_of(variable)
                .expect("declared variable has a concept");
            triples.push(Triple {
                source: Term::Var(variable.clone()),
                role: Role::instance(),
                target: Term::Concept(concept.clone()),
            });
        }
    }

    for event in &walk.events {
        let WalkEvent::Edge { edge, .. } = event else {
            continue;
        };
        let e = &graph.edges()[*edge];
        let source = term_for(graph, &e.source, config.keep_variables);
        let target = match &e.target {
            EdgeTarget::Var(v) => term_for(graph, v, config.keep_variables),
            EdgeTarget::Const(c) => Term::Const(c.clone()),
        };
        // Inverse attribute edges have no variable to promote to source and
        // are emitted unchanged.
        if !config.keep_inverse_roles && e.role.is_inverse() && e.target.as_var().is_some() {
            triples.push(Triple {
                source: target,
                role: e.role.inverted().expect("edge roles are never `instance`"),
                target: source,
            });
        } else {
            triples.push(Triple {
                source,
                role: e.role.clone(),
                target,
            });
        }
    }

    triples
}

/// Encode as ` | `-separated triples with space-separated tokens.
pub fn encode(graph: &AmrGraph, config: &TripleConfig) -> String {
    let parts: Vec<String> = extract(graph, config)
        .iter()
        .map(|t| t.tokens().join(" "))
        .collect();
    parts.join(" | ")
}

/// Token stream of [`encode`] plus per stored-edge anchor positions
/// (source token, target head token) for the distance diagnostics.
pub(crate) fn tokens_with_anchors(
    graph: &AmrGraph,
    config: &TripleConfig,
) -> (Vec<String>, Vec<(usize, usize)>) {
    let walk = spanning_walk(graph);
    let mut anchors = vec![(0usize, 0usize); graph.edges().len()];
    let mut tokens: Vec<String> = Vec::new();

    let push_triple = |tokens: &mut Vec<String>, triple: &Triple| -> usize {
        if !tokens.is_empty() {
            tokens.push("|".to_string());
        }
        let base = tokens.len();
        tokens.extend(triple.tokens());
        base
    };

    if config.keep_variables {
        for &vi in &walk.discovery {
            let variable = walk.vars[vi];
            let concept = graph
                .concept_of(variable)
                .expect("declared variable has a concept");
            let triple = Triple {
                source: Term::Var(variable.clone()),
                role: Role::instance(),
                target: Term::Concept(concept.clone()),
            };
            push_triple(&mut tokens, &triple);
        }
    }

    for event in &walk.events {
        let WalkEvent::Edge { edge, .. } = event else {
            continue;
        };
        let e = &graph.edges()[*edge];
        let source = term_for(graph, &e.source, config.keep_variables);
        let target = match &e.target {
            EdgeTarget::Var(v) => term_for(graph, v, config.keep_variables),
            EdgeTarget::Const(c) => Term::Const(c.clone()),
        };
        let flipped =
            !config.keep_inverse_roles && e.role.is_inverse() && e.target.as_var().is_some();
        let triple = if flipped {
            Triple {
                source: target,
                role: e.role.inverted().expect("edge roles are never `instance`"),
                target: source,
            }
        } else {
            Triple {
                source,
                role: e.role.clone(),
                target,
            }
        };
        let base = push_triple(&mut tokens, &triple);
        // Sources and roles are single tokens, so the triple's target head
        // sits two tokens after its source.
        if flipped {
            anchors[*edge] = (base + 2, base);
        } else {
            anchors[*edge] = (base, base + 2);
        }
    }

    (tokens, anchors)
}

/// One decoded triple: atoms plus an optional reassembled quoted string.
enum DecodedTarget {
    Atom(String),
    Text(String),
}

struct RawTriple {
    source: String,
    role: String,
    target: DecodedTarget,
}

/// Split the token stream into triples at bare `|` tokens, reassembling
/// quoted strings.
fn split_triples(text: &str) -> Result<Vec<RawTriple>, TripleError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(TripleError::Empty);
    }
    let mut groups: Vec<Vec<&str>> = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    let mut index = 0;
    let mut i = 0;
    while i < tokens.len() {
        match tokens[i] {
            "|" => {
                groups.push(core::mem::take(&mut current));
                index += 1;
                i += 1;
            }
            "\"" => {
                current.push(tokens[i]);
                i += 1;
                let mut closed = false;
                while i < tokens.len() {
                    current.push(tokens[i]);
                    if tokens[i] == "\"" {
                        closed = true;
                        i += 1;
                        break;
                    }
                    i += 1;
                }
                if !closed {
                    return Err(TripleError::UnclosedQuote { index });
                }
            }
            _ => {
                current.push(tokens[i]);
                i += 1;
            }
        }
    }
    groups.push(current);

    let mut triples = Vec::new();
    for (index, group) in groups.into_iter().enumerate() {
        if group.len() < 3 {
            return Err(TripleError::TooFewTokens { index });
        }
        if group[0] == "\"" || group[1] == "\"" {
            return Err(TripleError::QuotedHead { index });
        }
        let source = group[0].to_string();
        let role = group[1].to_string();
        let target = if group[2] == "\"" {
            if group[group.len() - 1] != "\"" || group.len() < 4 {
                return Err(TripleError::Trailing { index });
            }
            DecodedTarget::Text(group[3..group.len() - 1].join(" "))
        } else {
            if group.len() != 3 {
                return Err(TripleError::Trailing { index });
            }
            DecodedTarget::Atom(group[2].to_string())
        };
        triples.push(RawTriple {
            source,
            role,
            target,
        });
    }
    Ok(triples)
}

/// Decode a triple linearization back into a graph.
///
/// With variables, instance triples declare nodes and the first-declared
/// variable becomes the top. Without variables, each distinct node-name
/// token is bound to one synthesized variable, identical tokens refer to
/// the same node, and the top is the source of the first triple.
pub fn decode(text: &str, config: &TripleConfig) -> Result<AmrGraph, TripleError> {
    let raw = split_triples(text)?;
    if config.keep_variables {
        decode_with_variables(&raw)
    } else {
        decode_variable_free(&raw)
    }
}

fn decode_with_variables(raw: &[RawTriple]) -> Result<AmrGraph, TripleError> {
    let mut instances: BTreeMap<Variable, Concept> = BTreeMap::new();
    let mut top: Option<Variable> = None;
    for (index, triple) in raw.iter().enumerate() {
        if triple.role != crate::graph::INSTANCE_ROLE {
            continue;
        }
        let variable = Variable::new(triple.source.clone())?;
        let DecodedTarget::Atom(label) = &triple.target else {
            return Err(TripleError::BadInstance { index });
        };
        if instances
            .insert(variable.clone(), Concept::new(label.clone())?)
            .is_some()
        {
            return Err(TripleError::DuplicateInstance(triple.source.clone()));
        }
        if top.is_none() {
            top = Some(variable);
        }
    }

    let mut edges = Vec::new();
    for (index, triple) in raw.iter().enumerate() {
        if triple.role == crate::graph::INSTANCE_ROLE {
            continue;
        }
        let source = Variable::new(triple.source.clone())?;
        if !instances.contains_key(&source) {
            return Err(TripleError::UnknownVariable {
                variable: triple.source.clone(),
                index,
            });
        }
        let role = Role::new(triple.role.clone())?;
        let target = match &triple.target {
            DecodedTarget::Text(value) => EdgeTarget::Const(Constant::text(value.clone())?),
            DecodedTarget::Atom(atom) => {
                let candidate = Variable::new(atom.clone())?;
                if instances.contains_key(&candidate) {
                    EdgeTarget::Var(candidate)
                } else {
                    EdgeTarget::Const(Constant::classify(atom)?)
                }
            }
        };
        edges.push(Edge::new(source, role, target));
    }

    let top = top.ok_or(TripleError::UnknownVariable {
        variable: raw[0].source.clone(),
        index: 0,
    })?;
    AmrGraph::try_new(top, instances, edges).map_err(Into::into)
}

fn decode_variable_free(raw: &[RawTriple]) -> Result<AmrGraph, TripleError> {
    let mut allocator = VarAllocator::new();
    let mut by_label: BTreeMap<String, Variable> = BTreeMap::new();
    let mut instances: BTreeMap<Variable, Concept> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut top: Option<Variable> = None;

    let mut node_for = |label: &str,
                        by_label: &mut BTreeMap<String, Variable>,
                        instances: &mut BTreeMap<Variable, Concept>|
     -> Result<Variable, TripleError> {
        if let Some(v) = by_label.get(label) {
            return Ok(v.clone());
        }
        let variable = allocator.allocate(label);
        by_label.insert(label.to_string(), variable.clone());
        instances.insert(variable.clone(), Concept::new(label.to_string())?);
        Ok(variable)
    };

    for (index, triple) in raw.iter().enumerate() {
        if triple.role == crate::graph::INSTANCE_ROLE {
            return Err(TripleError::UnexpectedInstance { index });
        }
        let source = node_for(&triple.source, &mut by_label, &mut instances)?;
        if top.is_none() {
            top = Some(source.clone());
        }
        let role = Role::new(triple.role.clone())?;
        let target = match &triple.target {
            DecodedTarget::Text(value) => EdgeTarget::Const(Constant::text(value.clone())?),
            DecodedTarget::Atom(atom) => {
                if atom.parse::<f64>().is_ok() {
                    EdgeTarget::Const(Constant::number(atom.clone())?)
                } else if atom == "-" || atom == "+" {
                    EdgeTarget::Const(Constant::symbol(atom.clone())?)
                } else {
                    EdgeTarget::Var(node_for(atom, &mut by_label, &mut instances)?)
                }
            }
        };
        edges.push(Edge::new(source, role, target));
    }

    let top = top.ok_or(TripleError::Empty)?;
    AmrGraph::try_new(top, instances, edges).map_err(Into::into)
}

//! Penman notation: parsing (corpus and tokenized forms) and deterministic
//! single-line serialization.
//!
//! The grammar is `graph := '(' var '/' concept relation* ')'` with
//! `relation := ':'role (graph | var | constant)`; constants are quoted
//! strings, numbers, or bare symbols. Serialized output is single-space
//! token-separated with parentheses and quote marks as standalone tokens.
//! Inverse roles are always retained: removing them is not expressible in
//! Penman, which is why [`PenmanConfig`] has no inverse-role field.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{
    AmrGraph, Concept, Constant, Edge, EdgeTarget, GraphError, Role, VarAllocator, Variable,
};
use crate::walk::{spanning_walk, WalkEvent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PenmanConfig {
    pub keep_variables: bool,
}

impl Default for PenmanConfig {
    fn default() -> Self {
        PenmanConfig {
            keep_variables: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PenmanError {
    #[error("empty input")]
    Empty,
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unclosed string literal")]
    UnclosedString,
    #[error("duplicate instance declaration for variable `{0}`")]
    DuplicateInstance(String),
    #[error("expected {expected} at token {position}, found `{found}`")]
    Unexpected {
        expected: &'static str,
        found: String,
        position: usize,
    },
    #[error("unexpected trailing input at token {position}")]
    Trailing { position: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Slash,
    Str(String),
    Atom(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Open => "(".to_string(),
            Tok::Close => ")".to_string(),
            Tok::Slash => "/".to_string(),
            Tok::Str(s) => alloc::format!("\"{s}\""),
            Tok::Atom(a) => a.clone(),
        }
    }
}

/// Tokenize either compact corpus text (`(p / person :mod (a / any))`) or
/// the space-separated form this module emits.
fn tokenize(text: &str) -> Result<Vec<Tok>, PenmanError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '(' => toks.push(Tok::Open),
            ')' => toks.push(Tok::Close),
            '/' => toks.push(Tok::Slash),
            '"' => {
                let mut inner = String::new();
                let mut closed = false;
                for inner_c in chars.by_ref() {
                    if inner_c == '"' {
                        closed = true;
                        break;
                    }
                    inner.push(inner_c);
                }
                if !closed {
                    return Err(PenmanError::UnclosedString);
                }
                let normalized = inner.split_whitespace().collect::<Vec<_>>().join(" ");
                toks.push(Tok::Str(normalized));
            }
            c if c.is_whitespace() => {}
            c => {
                let mut atom = String::new();
                atom.push(c);
                while let Some(&next) = chars.peek() {
                    if next.is_whitespace() || matches!(next, '(' | ')' | '/' | '"') {
                        break;
                    }
                    atom.push(next);
                    chars.next();
                }
                toks.push(Tok::Atom(atom));
            }
        }
    }
    Ok(toks)
}

/// Parse a Penman expression with variables into a graph.
///
/// Re-entrant bare variable references (including forward references) become
/// edges to the declared variable; edge order is textual order. A bare token
/// that is not declared anywhere is read as a constant.
pub fn parse(text: &str) -> Result<AmrGraph, PenmanError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(PenmanError::Empty);
    }

    // First pass: collect declared variables so bare references anywhere in
    // the text (Figure-2 style `:ARG0 w` before `(w / we)`) resolve.
    let mut declared = BTreeSet::new();
    for window in toks.windows(3) {
        if let [Tok::Open, Tok::Atom(name), Tok::Slash] = window {
            if !declared.insert(name.clone()) {
                return Err(PenmanError::DuplicateInstance(name.clone()));
            }
        }
    }

    let mut instances: BTreeMap<Variable, Concept> = BTreeMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut stack: Vec<Variable> = Vec::new();
    let mut top: Option<Variable> = None;
    let mut pending_role: Option<Role> = None;
    let mut i = 0;

    let unexpected = |expected: &'static str, tok: &Tok, position: usize| PenmanError::Unexpected {
        expected,
        found: tok.describe(),
        position,
    };

    if toks[0] != Tok::Open {
        return Err(unexpected("`(`", &toks[0], 0));
    }

    while i < toks.len() {
        match &toks[i] {
            Tok::Open => {
                let name = match toks.get(i + 1) {
                    Some(Tok::Atom(a)) => a.clone(),
                    Some(tok) => return Err(unexpected("variable", tok, i + 1)),
                    None => return Err(PenmanError::UnexpectedEnd),
                };
                match toks.get(i + 2) {
                    Some(Tok::Slash) => {}
                    Some(tok) => return Err(unexpected("`/`", tok, i + 2)),
                    None => return Err(PenmanError::UnexpectedEnd),
                }
                let label = match toks.get(i + 3) {
                    Some(Tok::Atom(a)) => a.clone(),
                    Some(tok) => return Err(unexpected("concept", tok, i + 3)),
                    None => return Err(PenmanError::UnexpectedEnd),
                };
                let variable = Variable::new(name)?;
                instances.insert(variable.clone(), Concept::new(label)?);
                if let Some(role) = pending_role.take() {
                    let parent = stack.last().expect("pending role implies open node");
                    edges.push(Edge::new(
                        parent.clone(),
                        role,
                        EdgeTarget::Var(variable.clone()),
                    ));
                } else if let Some(parent) = stack.last() {
                    return Err(PenmanError::Unexpected {
                        expected: "role",
                        found: alloc::format!("( {} ...", parent),
                        position: i,
                    });
                }
                if top.is_none() {
                    top = Some(variable.clone());
                }
                stack.push(variable);
                i += 4;
            }
            Tok::Close => {
                if pending_role.is_some() {
                    return Err(unexpected("relation target", &toks[i], i));
                }
                if stack.pop().is_none() {
                    return Err(PenmanError::Unbalanced);
                }
                i += 1;
                if stack.is_empty() {
                    if i != toks.len() {
                        return Err(PenmanError::Trailing { position: i });
                    }
                    break;
                }
            }
            Tok::Slash => return Err(unexpected("role or `)`", &toks[i], i)),
            Tok::Atom(atom) if atom.starts_with(':') => {
                if pending_role.is_some() {
                    return Err(unexpected("relation target", &toks[i], i));
                }
                if stack.is_empty() {
                    return Err(unexpected("`(`", &toks[i], i));
                }
                pending_role = Some(Role::new(&atom[1..])?);
                i += 1;
            }
            Tok::Atom(atom) => {
                let Some(role) = pending_role.take() else {
                    return Err(unexpected("role or `)`", &toks[i], i));
                };
                let source = stack.last().expect("role parsed inside open node");
                let target = if declared.contains(atom) {
                    EdgeTarget::Var(Variable::new(atom.clone())?)
                } else {
                    EdgeTarget::Const(Constant::classify(atom)?)
                };
                edges.push(Edge::new(source.clone(), role, target));
                i += 1;
            }
            Tok::Str(value) => {
                let Some(role) = pending_role.take() else {
                    return Err(unexpected("role or `)`", &toks[i], i));
                };
                let source = stack.last().expect("role parsed inside open node");
                edges.push(Edge::new(
                    source.clone(),
                    role,
                    EdgeTarget::Const(Constant::text(value.clone())?),
                ));
                i += 1;
            }
        }
    }

    if !stack.is_empty() {
        return Err(PenmanError::Unbalanced);
    }
    let top = top.ok_or(PenmanError::Empty)?;
    AmrGraph::try_new(top, instances, edges).map_err(Into::into)
}

/// Parse variable-free Penman (`( person :ARG0-of ( betray-01 ... ) )`).
///
/// This is the decoding convention for `keep_variables = false` output:
/// every parenthesized expansion is a fresh node with a synthesized
/// variable, a bare token matching an already-expanded concept label is a
/// re-entrant reference to the first node with that label, and anything
/// else unquoted is a constant.
pub fn parse_variable_free(text: &str) -> Result<AmrGraph, PenmanError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(PenmanError::Empty);
    }
    if toks[0] != Tok::Open {
        return Err(PenmanError::Unexpected {
            expected: "`(`",
            found: toks[0].describe(),
            position: 0,
        });
    }

    let mut allocator = VarAllocator::new();
    let mut by_label: BTreeMap<String, Variable> = BTreeMap::new();
    let mut instances: BTreeMap<Variable, Concept> = BTreeMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut stack: Vec<Variable> = Vec::new();
    let mut top: Option<Variable> = None;
    let mut pending_role: Option<Role> = None;
    let mut i = 0;

    while i < toks.len() {
        match &toks[i] {
            Tok::Open => {
                let label = match toks.get(i + 1) {
                    Some(Tok::Atom(a)) => a.clone(),
                    Some(tok) => {
                        return Err(PenmanError::Unexpected {
                            expected: "concept",
                            found: tok.describe(),
                            position: i + 1,
                        })
                    }
                    None => return Err(PenmanError::UnexpectedEnd),
                };
                let variable = allocator.allocate(&label);
                by_label
                    .entry(label.clone())
                    .or_insert_with(|| variable.clone());
                instances.insert(variable.clone(), Concept::new(label)?);
                if let Some(role) = pending_role.take() {
                    let parent = stack.last().expect("pending role implies open node");
                    edges.push(Edge::new(
                        parent.clone(),
                        role,
                        EdgeTarget::Var(variable.clone()),
                    ));
                } else if stack.last().is_some() {
                    return Err(PenmanError::Unexpected {
                        expected: "role",
                        found: "(".to_string(),
                        position: i,
                    });
                }
                if top.is_none() {
                    top = Some(variable.clone());
                }
                stack.push(variable);
                i += 2;
            }
            Tok::Close => {
                if pending_role.is_some() {
                    return Err(PenmanError::Unexpected {
                        expected: "relation target",
                        found: ")".to_string(),
                        position: i,
                    });
                }
                if stack.pop().is_none() {
                    return Err(PenmanError::Unbalanced);
                }
                i += 1;
                if stack.is_empty() {
                    if i != toks.len() {
                        return Err(PenmanError::Trailing { position: i });
                    }
                    break;
                }
            }
            Tok::Slash => {
                return Err(PenmanError::Unexpected {
                    expected: "role or `)`",
                    found: "/".to_string(),
                    position: i,
                })
            }
            Tok::Atom(atom) if atom.starts_with(':') => {
                if pending_role.is_some() || stack.is_empty() {
                    return Err(PenmanError::Unexpected {
                        expected: "relation target",
                        found: atom.clone(),
                        position: i,
                    });
                }
                pending_role = Some(Role::new(&atom[1..])?);
                i += 1;
            }
            Tok::Atom(atom) => {
                let Some(role) = pending_role.take() else {
                    return Err(PenmanError::Unexpected {
                        expected: "role or `)`",
                        found: atom.clone(),
                        position: i,
                    });
                };
                let source = stack.last().expect("role parsed inside open node");
                let target = if let Some(node) = by_label.get(atom) {
                    EdgeTarget::Var(node.clone())
                } else {
                    EdgeTarget::Const(Constant::classify(atom)?)
                };
                edges.push(Edge::new(source.clone(), role, target));
                i += 1;
            }
            Tok::Str(value) => {
                let Some(role) = pending_role.take() else {
                    return Err(PenmanError::Unexpected {
                        expected: "role or `)`",
                        found: alloc::format!("\"{value}\""),
                        position: i,
                    });
                };
                let source = stack.last().expect("role parsed inside open node");
                edges.push(Edge::new(
                    source.clone(),
                    role,
                    EdgeTarget::Const(Constant::text(value.clone())?),
                ));
                i += 1;
            }
        }
    }

    if !stack.is_empty() {
        return Err(PenmanError::Unbalanced);
    }
    let top = top.ok_or(PenmanError::Empty)?;
    AmrGraph::try_new(top, instances, edges).map_err(Into::into)
}

pub(crate) struct PenmanTokens {
    pub tokens: Vec<String>,
    /// Per stored edge: (source identifying token, target head token).
    pub edge_anchors: Vec<(usize, usize)>,
}

/// Serialize to the token stream, tracking per-edge anchor positions for
/// the distance diagnostics.
pub(crate) fn tokens(graph: &AmrGraph, config: &PenmanConfig) -> PenmanTokens {
    let walk = spanning_walk(graph);
    let edges = graph.edges();
    let mut toks: Vec<String> = Vec::new();
    let mut defining = vec![0usize; walk.vars.len()];
    let mut anchors = vec![(0usize, 0usize); edges.len()];
    let mut enter_stack: Vec<usize> = Vec::new();
    // An expanded edge's far-node anchor is known only once its Enter event
    // emits the identifying token.
    let mut pending: Option<(usize, bool)> = None;

    for event in &walk.events {
        match *event {
            WalkEvent::Enter { var } => {
                toks.push("(".to_string());
                let pos = toks.len();
                let variable = walk.vars[var];
                let concept = graph
                    .concept_of(variable)
                    .expect("declared variable has a concept");
                if config.keep_variables {
                    toks.push(variable.as_str().to_string());
                    toks.push("/".to_string());
                    toks.push(concept.as_str().to_string());
                } else {
                    toks.push(concept.as_str().to_string());
                }
                defining[var] = pos;
                if let Some((edge, reversed)) = pending.take() {
                    if reversed {
                        anchors[edge].0 = pos;
                    } else {
                        anchors[edge].1 = pos;
                    }
                }
                enter_stack.push(var);
            }
            WalkEvent::Exit => {
                toks.push(")".to_string());
                enter_stack.pop();
            }
            WalkEvent::Edge {
                edge,
                reversed,
                expands,
            } => {
                let e = &edges[edge];
                let enclosing = *enter_stack.last().expect("edges are emitted inside a node");
                let role = if reversed {
                    e.role.inverted().expect("edge roles are never `instance`")
                } else {
                    e.role.clone()
                };
                toks.push(alloc::format!(":{role}"));
                if expands {
                    if reversed {
                        anchors[edge].1 = defining[enclosing];
                    } else {
                        anchors[edge].0 = defining[enclosing];
                    }
                    pending = Some((edge, reversed));
                } else {
                    let head = toks.len();
                    match &e.target {
                        EdgeTarget::Var(t) => {
                            if config.keep_variables {
                                toks.push(t.as_str().to_string());
                            } else {
                                let concept = graph
                                    .concept_of(t)
                                    .expect("declared variable has a concept");
                                toks.push(concept.as_str().to_string());
                            }
                        }
                        EdgeTarget::Const(c) => toks.extend(c.tokens()),
                    }
                    anchors[edge] = (defining[enclosing], head);
                }
            }
        }
    }

    PenmanTokens {
        tokens: toks,
        edge_anchors: anchors,
    }
}

/// Serialize a graph to single-line Penman.
///
/// DFS from the top in stored edge order; each node is expanded at its
/// first visit, later visits emit a bare variable (or the bare concept
/// label when `keep_variables` is off).
pub fn serialize(graph: &AmrGraph, config: &PenmanConfig) -> String {
    tokens(graph, config).tokens.join(" ")
}

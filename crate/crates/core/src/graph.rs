//! The in-memory AMR graph model: typed node and edge vocabulary, the
//! inverse-role algebra, structural validation, and depth.
//!
//! Everything here is immutable after construction, so graphs can be shared
//! freely across threads.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::walk;

/// Roles that end in `-of` but are ordinary forward roles, not inverses.
pub const DEFAULT_INVERSE_EXEMPTIONS: &[&str] = &["consist-of", "prep-out-of", "prep-on-behalf-of"];

/// Reserved role name that binds a variable to its concept.
pub const INSTANCE_ROLE: &str = "instance";

fn structural_char(c: char) -> bool {
    c.is_whitespace() || matches!(c, '/' | '(' | ')' | ':' | '|' | '"')
}

fn check_symbol(what: &'static str, text: &str) -> Result<(), GraphError> {
    if text.is_empty() || text.chars().any(structural_char) {
        return Err(GraphError::InvalidName {
            what,
            text: text.to_string(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid {what}: {text:?}")]
    InvalidName { what: &'static str, text: String },
    #[error("`instance` is not an invertible role")]
    NotInvertible,
    #[error("inverse role `{role}` targets constant {value:?} and cannot be reversed")]
    InverseAttribute { role: String, value: String },
    #[error("invalid graph: {0}")]
    Invalid(Violations),
}

/// A node identifier such as `s` or `s2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Variable(String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Result<Self, GraphError> {
        let name = name.into();
        check_symbol("variable", &name)?;
        Ok(Variable(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A node label such as `seem-01` or `person`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Concept(String);

impl Concept {
    pub fn new(label: impl Into<String>) -> Result<Self, GraphError> {
        let label = label.into();
        check_symbol("concept", &label)?;
        Ok(Concept(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An attribute value: a quoted string, a number, or a bare symbol like `-`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Constant {
    Text(String),
    Number(String),
    Symbol(String),
}

impl Constant {
    pub fn text(value: impl Into<String>) -> Result<Self, GraphError> {
        let value = value.into();
        if value.contains('"') {
            return Err(GraphError::InvalidName {
                what: "string constant",
                text: value,
            });
        }
        Ok(Constant::Text(value))
    }

    pub fn number(value: impl Into<String>) -> Result<Self, GraphError> {
        let value = value.into();
        if value.parse::<f64>().is_err() {
            return Err(GraphError::InvalidName {
                what: "numeric constant",
                text: value,
            });
        }
        Ok(Constant::Number(value))
    }

    pub fn symbol(value: impl Into<String>) -> Result<Self, GraphError> {
        let value = value.into();
        check_symbol("symbol constant", &value)?;
        Ok(Constant::Symbol(value))
    }

    /// Classify an unquoted token: a number if it parses as one, else a symbol.
    pub(crate) fn classify(token: &str) -> Result<Self, GraphError> {
        if token.parse::<f64>().is_ok() {
            Constant::number(token)
        } else {
            Constant::symbol(token)
        }
    }

    /// The bare value, without surrounding quotes for string constants.
    pub fn value(&self) -> &str {
        match self {
            Constant::Text(v) | Constant::Number(v) | Constant::Symbol(v) => v,
        }
    }

    /// Surface tokens: string constants contribute standalone quote tokens.
    pub fn tokens(&self) -> Vec<String> {
        match self {
            Constant::Text(v) => {
                let mut toks = alloc::vec!["\"".to_string()];
                toks.extend(v.split_whitespace().map(str::to_string));
                toks.push("\"".to_string());
                toks
            }
            Constant::Number(v) | Constant::Symbol(v) => alloc::vec![v.clone()],
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens().join(" "))
    }
}

/// A relation name without the leading colon, e.g. `ARG0` or `ARG0-of`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Role(String);

impl Role {
    pub fn new(name: impl Into<String>) -> Result<Self, GraphError> {
        let name = name.into();
        check_symbol("role", &name)?;
        Ok(Role(name))
    }

    pub fn instance() -> Self {
        Role(INSTANCE_ROLE.to_string())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_instance(&self) -> bool {
        self.0 == INSTANCE_ROLE
    }

    /// True iff the name ends in `-of` and is not in the exemption set.
    pub fn is_inverse(&self) -> bool {
        self.is_inverse_among(DEFAULT_INVERSE_EXEMPTIONS)
    }

    pub fn is_inverse_among(&self, exemptions: &[&str]) -> bool {
        self.0.len() > 3 && self.0.ends_with("-of") && !exemptions.contains(&self.0.as_str())
    }

    /// Strip `-of` from an inverse role, or append it to a forward role.
    ///
    /// Exempt roles count as forward, so `consist-of` inverts to
    /// `consist-of-of`. The `instance` role is not invertible.
    pub fn inverted(&self) -> Result<Role, GraphError> {
        self.inverted_among(DEFAULT_INVERSE_EXEMPTIONS)
    }

    pub fn inverted_among(&self, exemptions: &[&str]) -> Result<Role, GraphError> {
        if self.is_instance() {
            return Err(GraphError::NotInvertible);
        }
        if self.is_inverse_among(exemptions) {
            Ok(Role(self.0[..self.0.len() - 3].to_string()))
        } else {
            let mut name = self.0.clone();
            name.push_str("-of");
            Ok(Role(name))
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One element of a linearized or scored triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(Variable),
    Concept(Concept),
    Const(Constant),
}

impl Term {
    pub fn tokens(&self) -> Vec<String> {
        match self {
            Term::Var(v) => alloc::vec![v.as_str().to_string()],
            Term::Concept(c) => alloc::vec![c.as_str().to_string()],
            Term::Const(c) => c.tokens(),
        }
    }
}

/// `(source, role, target)`: the unit of both linearization and scoring.
///
/// When the role is `instance`, the source is a variable and the target its
/// concept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub source: Term,
    pub role: Role,
    pub target: Term,
}

impl Triple {
    pub fn tokens(&self) -> Vec<String> {
        let mut toks = self.source.tokens();
        toks.push(self.role.as_str().to_string());
        toks.extend(self.target.tokens());
        toks
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens().join(" "))
    }
}

/// Target of a stored graph edge: another node or an attribute constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeTarget {
    Var(Variable),
    Const(Constant),
}

impl EdgeTarget {
    pub fn as_var(&self) -> Option<&Variable> {
        match self {
            EdgeTarget::Var(v) => Some(v),
            EdgeTarget::Const(_) => None,
        }
    }
}

/// A directed labeled edge. Sources are always variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: Variable,
    pub role: Role,
    pub target: EdgeTarget,
}

impl Edge {
    pub fn new(source: Variable, role: Role, target: EdgeTarget) -> Self {
        Edge {
            source,
            role,
            target,
        }
    }
}

/// A structural problem found by [`AmrGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TopUndeclared { top: Variable },
    UndeclaredVariable { variable: Variable },
    UnreachableFromTop { variable: Variable },
    ReservedEdgeRole { source: Variable },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TopUndeclared { top } => {
                write!(f, "top variable `{top}` has no instance")
            }
            Violation::UndeclaredVariable { variable } => {
                write!(f, "undeclared variable `{variable}`")
            }
            Violation::UnreachableFromTop { variable } => {
                write!(f, "variable `{variable}` unreachable from top")
            }
            Violation::ReservedEdgeRole { source } => {
                write!(f, "edge from `{source}` uses the reserved role `instance`")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violations(pub Vec<Violation>);

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A rooted, directed, labeled AMR graph.
///
/// Edge order is preserved exactly as parsed or constructed; serialization
/// and triple extraction are deterministic functions of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmrGraph {
    top: Variable,
    instances: BTreeMap<Variable, Concept>,
    edges: Vec<Edge>,
}

impl AmrGraph {
    /// Build a graph, rejecting it with the full violation list if any
    /// structural invariant fails.
    pub fn try_new(
        top: Variable,
        instances: BTreeMap<Variable, Concept>,
        edges: Vec<Edge>,
    ) -> Result<Self, GraphError> {
        let graph = AmrGraph {
            top,
            instances,
            edges,
        };
        let violations = graph.validate();
        if violations.is_empty() {
            Ok(graph)
        } else {
            Err(GraphError::Invalid(Violations(violations)))
        }
    }

    /// A graph with a single node and no edges.
    pub fn singleton(top: Variable, concept: Concept) -> Self {
        let mut instances = BTreeMap::new();
        instances.insert(top.clone(), concept);
        AmrGraph {
            top,
            instances,
            edges: Vec::new(),
        }
    }

    pub fn top(&self) -> &Variable {
        &self.top
    }

    pub fn concept_of(&self, variable: &Variable) -> Option<&Concept> {
        self.instances.get(variable)
    }

    pub fn instances(&self) -> impl Iterator<Item = (&Variable, &Concept)> {
        self.instances.iter()
    }

    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.instances.keys()
    }

    pub fn variable_count(&self) -> usize {
        self.instances.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Check every structural invariant, returning all violations found.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        if !self.instances.contains_key(&self.top) {
            violations.push(Violation::TopUndeclared {
                top: self.top.clone(),
            });
        }
        let mut undeclared = BTreeSet::new();
        for edge in &self.edges {
            if !self.instances.contains_key(&edge.source) {
                undeclared.insert(edge.source.clone());
            }
            if let Some(target) = edge.target.as_var() {
                if !self.instances.contains_key(target) {
                    undeclared.insert(target.clone());
                }
            }
            if edge.role.is_instance() {
                violations.push(Violation::ReservedEdgeRole {
                    source: edge.source.clone(),
                });
            }
        }
        for variable in undeclared {
            violations.push(Violation::UndeclaredVariable { variable });
        }

        // Weak connectivity: every declared variable reachable from top when
        // edges are traversed in both directions.
        let mut reached = BTreeSet::new();
        if self.instances.contains_key(&self.top) {
            let mut queue = Vec::new();
            queue.push(self.top.clone());
            reached.insert(self.top.clone());
            while let Some(current) = queue.pop() {
                for edge in &self.edges {
                    let far = if edge.source == current {
                        edge.target.as_var()
                    } else if edge.target.as_var() == Some(&current) {
                        Some(&edge.source)
                    } else {
                        None
                    };
                    if let Some(far) = far {
                        if self.instances.contains_key(far) && reached.insert(far.clone()) {
                            queue.push(far.clone());
                        }
                    }
                }
            }
        }
        for variable in self.instances.keys() {
            if !reached.contains(variable) {
                violations.push(Violation::UnreachableFromTop {
                    variable: variable.clone(),
                });
            }
        }
        violations
    }

    /// Replace every non-exempt `(a, r-of, b)` edge with `(b, r, a)`.
    ///
    /// Edge order is kept; the result denotes the same graph. An inverse
    /// edge whose target is a constant cannot be reversed and is an error.
    pub fn normalize_inverse_roles(&self) -> Result<AmrGraph, GraphError> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for edge in &self.edges {
            if edge.role.is_inverse() {
                match &edge.target {
                    EdgeTarget::Var(target) => {
                        edges.push(Edge::new(
                            target.clone(),
                            edge.role.inverted()?,
                            EdgeTarget::Var(edge.source.clone()),
                        ));
                    }
                    EdgeTarget::Const(constant) => {
                        return Err(GraphError::InverseAttribute {
                            role: edge.role.as_str().to_string(),
                            value: constant.value().to_string(),
                        });
                    }
                }
            } else {
                edges.push(edge.clone());
            }
        }
        AmrGraph::try_new(self.top.clone(), self.instances.clone(), edges)
    }

    /// Edge distance from the top to the furthest node along the spanning
    /// traversal used for serialization. A single-node graph has depth 0.
    pub fn depth(&self) -> usize {
        walk::spanning_walk(self).max_depth
    }

    /// True if two distinct variables share a concept label, the case where
    /// variable-free round-trips lose information.
    pub fn has_duplicate_concepts(&self) -> bool {
        let mut seen = BTreeSet::new();
        for concept in self.instances.values() {
            if !seen.insert(concept.as_str()) {
                return true;
            }
        }
        false
    }
}

/// Allocates corpus-style variable names from concept labels: the first
/// letter, then letter+2, letter+3 on collision.
#[derive(Debug, Default)]
pub struct VarAllocator {
    used: BTreeSet<String>,
}

impl VarAllocator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn allocate(&mut self, concept: &str) -> Variable {
        let first = concept
            .chars()
            .next()
            .map(|c| c.to_ascii_lowercase())
            .unwrap_or('x');
        let base = first.to_string();
        let name = if self.used.insert(base.clone()) {
            base
        } else {
            let mut n = 2usize;
            loop {
                let candidate = alloc::format!("{base}{n}");
                if self.used.insert(candidate.clone()) {
                    break candidate;
                }
                n += 1;
            }
        };
        Variable::new(name).expect("allocated names contain no structural characters")
    }
}

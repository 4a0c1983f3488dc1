//! Coxeter graphs: parsing, presets, subgraphs, structural analysis, and
//! emission in text, JSON, and DOT form.
//!
//! A graph is a symmetric Coxeter matrix over named vertices. The diagonal is
//! implicitly 1; an unmentioned off-diagonal pair has label 2 (commuting
//! generators, no drawn edge). Edges (label >= 3) and infinity edges are the
//! two adjacency relations the analysis cares about: connected components use
//! `label >= 3`, infinity-connectedness keeps only `label = infinity`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde_json::json;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::{CycScalar, ScalarContext};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("invalid label {0:?}: must be an integer >= 2 or \"inf\"")]
    BadLabel(String),
    #[error("conflicting labels for edge {0:?} -- {1:?}")]
    ConflictingEdge(String, String),
    #[error("self edge on vertex {0:?}")]
    SelfEdge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown preset family {0:?}")]
    UnknownFamily(String),
    #[error("parameter {1} out of range for family {0}")]
    ParamOutOfRange(String, u64),
}

/// Off-diagonal Coxeter matrix entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u64),
    Infinity,
}

impl Label {
    pub fn finite(self) -> Option<u64> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinity => None,
        }
    }

    pub fn is_edge(self) -> bool {
        !matches!(self, Label::Finite(2))
    }

    fn parse(tok: &str) -> Result<Label, GraphError> {
        if tok == "inf" || tok == "infinity" || tok == "oo" {
            return Ok(Label::Infinity);
        }
        match tok.parse::<u64>() {
            Ok(m) if m >= 2 => Ok(Label::Finite(m)),
            _ => Err(GraphError::BadLabel(tok.to_string())),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => write!(f, "inf"),
        }
    }
}

/// Symmetric labeled graph over named vertices; immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterGraph {
    vertices: Vec<String>,
    /// Upper-triangular labels for pairs `i < j`, dense.
    labels: Vec<Label>,
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl CoxeterGraph {
    /// Build from vertex names and explicit edge labels; unmentioned pairs
    /// default to 2.
    pub fn new(
        vertices: Vec<String>,
        edges: &[(String, String, Label)],
    ) -> Result<CoxeterGraph, GraphError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if v.is_empty() {
                return Err(GraphError::Parse("empty vertex name".into()));
            }
            if !seen.insert(v.clone()) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let n = vertices.len();
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut labels = vec![Label::Finite(2); n * n.saturating_sub(1) / 2];
        let mut set: BTreeMap<usize, Label> = BTreeMap::new();
        for (a, b, label) in edges {
            let &ia = index
                .get(a.as_str())
                .ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let &ib = index
                .get(b.as_str())
                .ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            if ia == ib {
                return Err(GraphError::SelfEdge(a.clone()));
            }
            let (i, j) = if ia < ib { (ia, ib) } else { (ib, ia) };
            let idx = tri_index(n, i, j);
            if let Some(prev) = set.get(&idx) {
                if *prev != *label {
                    return Err(GraphError::ConflictingEdge(a.clone(), b.clone()));
                }
            }
            set.insert(idx, *label);
            labels[idx] = *label;
        }
        Ok(CoxeterGraph { vertices, labels })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, GraphError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    /// Label of an off-diagonal pair, by index.
    pub fn label(&self, i: usize, j: usize) -> Label {
        assert_ne!(i, j, "diagonal entries are implicitly 1");
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.labels[tri_index(self.len(), i, j)]
    }

    /// All finite labels, for choosing a scalar conductor.
    pub fn finite_labels(&self) -> impl Iterator<Item = u64> + '_ {
        self.labels.iter().filter_map(|l| l.finite())
    }

    pub fn scalar_context(&self) -> Arc<ScalarContext> {
        ScalarContext::for_labels(self.finite_labels())
    }

    /// Bilinear form matrix: diagonal 1, off-diagonal `-cos(pi/m)` (-1 for
    /// infinity).
    pub fn gram_matrix(&self, ctx: &Arc<ScalarContext>) -> Matrix {
        Matrix::from_fn(self.len(), |i, j| {
            if i == j {
                CycScalar::one(ctx)
            } else {
                match self.label(i, j) {
                    Label::Infinity => CycScalar::from_integer(ctx, -1),
                    Label::Finite(m) => CycScalar::two_cos(ctx, m)
                        .expect("conductor covers all graph labels")
                        .halved()
                        .neg(),
                }
            }
        })
    }

    /// Full subgraph spanned by the named vertices, keeping their order in
    /// this graph.
    pub fn full_subgraph(&self, names: &[String]) -> Result<CoxeterGraph, GraphError> {
        let mut idx = Vec::with_capacity(names.len());
        for name in names {
            idx.push(self.vertex_index(name)?);
        }
        idx.sort_unstable();
        idx.dedup();
        Ok(self.subgraph_by_indices(&idx))
    }

    pub(crate) fn subgraph_by_indices(&self, idx: &[usize]) -> CoxeterGraph {
        let vertices: Vec<String> = idx.iter().map(|&i| self.vertices[i].clone()).collect();
        let mut edges = Vec::new();
        for (a, &ia) in idx.iter().enumerate() {
            for &ib in idx.iter().skip(a + 1) {
                edges.push((
                    self.vertices[ia].clone(),
                    self.vertices[ib].clone(),
                    self.label(ia, ib),
                ));
            }
        }
        CoxeterGraph::new(vertices, &edges).expect("subgraph of a valid graph is valid")
    }

    fn components_by(&self, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                let fresh: Vec<usize> = (0..n).filter(|&u| !seen[u] && adjacent(v, u)).collect();
                for u in fresh {
                    seen[u] = true;
                    comp.push(u);
                    queue.push(u);
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected components on the `label >= 3` adjacency.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_by(|i, j| self.label(i, j).is_edge())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether the induced subgraph on the given vertex set is connected
    /// (on the `label >= 3` adjacency).
    pub fn connected_on(&self, comp: &[usize]) -> bool {
        if comp.is_empty() {
            return true;
        }
        let set: BTreeSet<usize> = comp.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut queue = vec![comp[0]];
        seen.insert(comp[0]);
        while let Some(v) = queue.pop() {
            for &u in &set {
                if !seen.contains(&u) && self.label(v, u).is_edge() {
                    seen.insert(u);
                    queue.push(u);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Whether the subgraph keeping only infinity edges is connected on the
    /// given vertex set.
    pub fn infty_connected_on(&self, comp: &[usize]) -> bool {
        if comp.is_empty() {
            return true;
        }
        let set: BTreeSet<usize> = comp.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut queue = vec![comp[0]];
        seen.insert(comp[0]);
        while let Some(v) = queue.pop() {
            for &u in &set {
                if !seen.contains(&u) && self.label(v, u) == Label::Infinity {
                    seen.insert(u);
                    queue.push(u);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Component, infinity-connectivity, and spherical classification report.
    ///
    /// The spherical verdict is decided by exact positive definiteness of the
    /// bilinear form (Sylvester minors); the catalog template match supplies
    /// the type name and serves as a redundant cross-check.
    pub fn analyze(&self) -> GraphReport {
        let ctx = self.scalar_context();
        let comps = self.components();
        let mut reports = Vec::new();
        for comp in &comps {
            let sub = self.subgraph_by_indices(comp);
            let pd = sub.gram_matrix(&ctx).is_positive_definite();
            let name = sub.catalog_name();
            assert_eq!(
                pd,
                name.is_some(),
                "positive-definiteness and catalog verdicts disagree on {:?}",
                sub.vertices
            );
            reports.push(ComponentReport {
                vertices: sub.vertices.clone(),
                infty_connected: self.infty_connected_on(comp),
                spherical: name,
            });
        }
        GraphReport {
            components: reports,
        }
    }

    /// Template match against the catalog of connected spherical graphs.
    /// Returns the type name (with rank or parameter) or `None`.
    fn catalog_name(&self) -> Option<String> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        if n == 1 {
            return Some("A1".to_string());
        }
        let mut edges = Vec::new();
        let mut degree = vec![0usize; n];
        for i in 0..n {
            for j in i + 1..n {
                let l = self.label(i, j);
                if l.is_edge() {
                    let m = l.finite()?; // infinity edge: never spherical
                    edges.push((i, j, m));
                    degree[i] += 1;
                    degree[j] += 1;
                }
            }
        }
        if n == 2 {
            let m = edges.first().map(|e| e.2)?;
            return Some(match m {
                3 => "A2".to_string(),
                4 => "B2".to_string(),
                p => format!("I2({p})"),
            });
        }
        // spherical graphs of rank >= 3 are trees
        if edges.len() != n - 1 || degree.iter().any(|&d| d > 3) {
            return None;
        }
        let branches: Vec<usize> = (0..n).filter(|&v| degree[v] == 3).collect();
        match branches.len() {
            0 => {
                // a path: walk from one endpoint and read the label sequence
                let start = (0..n).find(|&v| degree[v] == 1)?;
                let mut order = vec![start];
                let mut prev = usize::MAX;
                while order.len() < n {
                    let v = *order.last().unwrap();
                    let next =
                        (0..n).find(|&u| u != prev && u != v && self.label(v, u).is_edge())?;
                    prev = v;
                    order.push(next);
                }
                let seq: Vec<u64> = order
                    .windows(2)
                    .map(|w| self.label(w[0], w[1]).finite().unwrap())
                    .collect();
                let rev: Vec<u64> = seq.iter().rev().copied().collect();
                let either = |pat: &dyn Fn(&[u64]) -> bool| pat(&seq) || pat(&rev);
                if seq.iter().all(|&m| m == 3) {
                    return Some(format!("A{n}"));
                }
                if either(&|s| s[0] == 4 && s[1..].iter().all(|&m| m == 3)) {
                    return Some(format!("B{n}"));
                }
                if (n == 3 || n == 4) && either(&|s| s[0] == 5 && s[1..].iter().all(|&m| m == 3)) {
                    return Some(format!("H{n}"));
                }
                if n == 4 && seq == [3, 4, 3] {
                    return Some("F4".to_string());
                }
                None
            }
            1 => {
                if edges.iter().any(|&(_, _, m)| m != 3) {
                    return None;
                }
                let b = branches[0];
                let mut arms: Vec<usize> = (0..n)
                    .filter(|&v| v != b && self.label(b, v).is_edge())
                    .map(|first| {
                        let mut len = 1;
                        let mut prev = b;
                        let mut v = first;
                        while let Some(next) =
                            (0..n).find(|&u| u != prev && u != v && self.label(v, u).is_edge())
                        {
                            prev = v;
                            v = next;
                            len += 1;
                        }
                        len
                    })
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, k] if 1 + 1 + k + 1 == n => Some(format!("D{n}")),
                    [1, 2, 2] if n == 6 => Some("E6".to_string()),
                    [1, 2, 3] if n == 7 => Some("E7".to_string()),
                    [1, 2, 4] if n == 8 => Some("E8".to_string()),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// Parse the v1 text format or the JSON format.
    pub fn parse(text: &str) -> Result<CoxeterGraph, GraphError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }

    fn parse_text(text: &str) -> Result<CoxeterGraph, GraphError> {
        let mut vertices: Option<Vec<String>> = None;
        let mut edges: Vec<(String, String, Label)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("vertices") => {
                    if vertices.is_some() {
                        return Err(GraphError::Parse("duplicate vertices line".into()));
                    }
                    vertices = Some(toks.map(|s| s.to_string()).collect());
                }
                Some("edge") => {
                    let a = toks
                        .next()
                        .ok_or_else(|| GraphError::Parse("edge needs two vertices".into()))?;
                    let b = toks
                        .next()
                        .ok_or_else(|| GraphError::Parse("edge needs two vertices".into()))?;
                    let l = toks
                        .next()
                        .ok_or_else(|| GraphError::Parse("edge needs a label".into()))?;
                    if toks.next().is_some() {
                        return Err(GraphError::Parse(format!("trailing tokens: {line:?}")));
                    }
                    edges.push((a.to_string(), b.to_string(), Label::parse(l)?));
                }
                Some(other) => {
                    return Err(GraphError::Parse(format!("unknown directive {other:?}")));
                }
                None => {}
            }
        }
        let vertices = vertices.ok_or_else(|| GraphError::Parse("missing vertices line".into()))?;
        CoxeterGraph::new(vertices, &edges)
    }

    fn parse_json(text: &str) -> Result<CoxeterGraph, GraphError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        let vertices = value["vertices"]
            .as_array()
            .ok_or_else(|| GraphError::Parse("missing \"vertices\" array".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(|s| s.to_string())
                    .ok_or_else(|| GraphError::Parse("vertex names must be strings".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut edges = Vec::new();
        if let Some(arr) = value.get("edges") {
            let arr = arr
                .as_array()
                .ok_or_else(|| GraphError::Parse("\"edges\" must be an array".into()))?;
            for e in arr {
                let triple = e
                    .as_array()
                    .filter(|t| t.len() == 3)
                    .ok_or_else(|| GraphError::Parse("edge must be [a, b, label]".into()))?;
                let a = triple[0]
                    .as_str()
                    .ok_or_else(|| GraphError::Parse("edge endpoint must be a string".into()))?;
                let b = triple[1]
                    .as_str()
                    .ok_or_else(|| GraphError::Parse("edge endpoint must be a string".into()))?;
                let label = match &triple[2] {
                    serde_json::Value::String(s) => Label::parse(s)?,
                    serde_json::Value::Number(n) => Label::parse(&n.to_string())?,
                    other => return Err(GraphError::BadLabel(other.to_string())),
                };
                edges.push((a.to_string(), b.to_string(), label));
            }
        }
        CoxeterGraph::new(vertices, &edges)
    }

    fn labelled_pairs(&self) -> Vec<(usize, usize, Label)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let l = self.label(i, j);
                if l.is_edge() {
                    out.push((i, j, l));
                }
            }
        }
        out
    }

    pub fn emit_text(&self) -> String {
        let mut out = String::new();
        out.push_str("vertices");
        for v in &self.vertices {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        for (i, j, l) in self.labelled_pairs() {
            out.push_str(&format!(
                "edge {} {} {}\n",
                self.vertices[i], self.vertices[j], l
            ));
        }
        out
    }

    pub fn emit_json(&self) -> String {
        let edges: Vec<serde_json::Value> = self
            .labelled_pairs()
            .into_iter()
            .map(|(i, j, l)| json!([self.vertices[i], self.vertices[j], l.to_string()]))
            .collect();
        serde_json::to_string_pretty(&json!({
            "vertices": self.vertices,
            "edges": edges,
        }))
        .expect("graph JSON serialization")
    }

    /// DOT output, following the drawing convention: label-2 pairs omitted,
    /// label 3 drawn unlabeled, labels >= 4 annotated, infinity drawn as the
    /// infinity sign.
    pub fn emit_dot(&self) -> String {
        let mut out = String::from("graph coxeter {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for (i, j, l) in self.labelled_pairs() {
            let a = &self.vertices[i];
            let b = &self.vertices[j];
            match l {
                Label::Finite(3) => out.push_str(&format!("  \"{a}\" -- \"{b}\";\n")),
                Label::Infinity => {
                    out.push_str(&format!("  \"{a}\" -- \"{b}\" [label=\"\u{221e}\"];\n"))
                }
                _ => out.push_str(&format!("  \"{a}\" -- \"{b}\" [label=\"{l}\"];\n")),
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn emit(&self, format: EmitFormat) -> String {
        match format {
            EmitFormat::Text => self.emit_text(),
            EmitFormat::Json => self.emit_json(),
            EmitFormat::Dot => self.emit_dot(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Text,
    Json,
    Dot,
}

/// Per-component analysis results.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub vertices: Vec<String>,
    pub infty_connected: bool,
    /// Catalog type name when spherical, `None` otherwise.
    pub spherical: Option<String>,
}

#[derive(Debug, Clone)]
pub struct GraphReport {
    pub components: Vec<ComponentReport>,
}

impl GraphReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "components": self.components.iter().map(|c| json!({
                "vertices": c.vertices,
                "infty_connected": c.infty_connected,
                "spherical": c.spherical,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn is_spherical(&self) -> bool {
        self.components.iter().all(|c| c.spherical.is_some())
    }
}

/// Standard graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetFamily {
    A,
    B,
    D,
    E,
    F,
    H,
    I2,
    ATilde,
}

impl PresetFamily {
    pub fn parse(name: &str) -> Result<PresetFamily, GraphError> {
        match name {
            "A" | "a" => Ok(PresetFamily::A),
            "B" | "b" => Ok(PresetFamily::B),
            "D" | "d" => Ok(PresetFamily::D),
            "E" | "e" => Ok(PresetFamily::E),
            "F" | "f" => Ok(PresetFamily::F),
            "H" | "h" => Ok(PresetFamily::H),
            "I2" | "i2" | "I" | "i" => Ok(PresetFamily::I2),
            "Atilde" | "atilde" | "A~" | "a~" | "Ã" => Ok(PresetFamily::ATilde),
            other => Err(GraphError::UnknownFamily(other.to_string())),
        }
    }

    fn name(self) -> &'static str {
        match self {
            PresetFamily::A => "A",
            PresetFamily::B => "B",
            PresetFamily::D => "D",
            PresetFamily::E => "E",
            PresetFamily::F => "F",
            PresetFamily::H => "H",
            PresetFamily::I2 => "I2",
            PresetFamily::ATilde => "Atilde",
        }
    }
}

/// Standard graph for a family and rank/parameter. Vertices are named
/// `s1..sn` in the canonical order used by all downstream tie-breaking.
pub fn preset(family: PresetFamily, param: u64) -> Result<CoxeterGraph, GraphError> {
    let bad = || GraphError::ParamOutOfRange(family.name().to_string(), param);
    let names = |n: u64| -> Vec<String> { (1..=n).map(|i| format!("s{i}")).collect() };
    let path_edges = |n: u64, labels: &dyn Fn(u64) -> u64| -> Vec<(String, String, Label)> {
        (1..n)
            .map(|i| {
                (
                    format!("s{i}"),
                    format!("s{}", i + 1),
                    Label::Finite(labels(i)),
                )
            })
            .collect()
    };
    let graph = match family {
        PresetFamily::A => {
            if param < 1 {
                return Err(bad());
            }
            CoxeterGraph::new(names(param), &path_edges(param, &|_| 3))
        }
        PresetFamily::B => {
            if param < 2 {
                return Err(bad());
            }
            CoxeterGraph::new(
                names(param),
                &path_edges(param, &|i| if i == 1 { 4 } else { 3 }),
            )
        }
        PresetFamily::D => {
            if param < 4 {
                return Err(bad());
            }
            let mut edges = path_edges(param - 1, &|_| 3);
            edges.push((
                format!("s{}", param - 2),
                format!("s{param}"),
                Label::Finite(3),
            ));
            CoxeterGraph::new(names(param), &edges)
        }
        PresetFamily::E => {
            if !(6..=8).contains(&param) {
                return Err(bad());
            }
            let mut edges = path_edges(param - 1, &|_| 3);
            edges.push(("s3".to_string(), format!("s{param}"), Label::Finite(3)));
            CoxeterGraph::new(names(param), &edges)
        }
        PresetFamily::F => {
            if param != 4 {
                return Err(bad());
            }
            CoxeterGraph::new(names(4), &path_edges(4, &|i| if i == 2 { 4 } else { 3 }))
        }
        PresetFamily::H => {
            if !(3..=4).contains(&param) {
                return Err(bad());
            }
            CoxeterGraph::new(
                names(param),
                &path_edges(param, &|i| if i == 1 { 5 } else { 3 }),
            )
        }
        PresetFamily::I2 => {
            if param < 5 {
                return Err(bad());
            }
            CoxeterGraph::new(
                names(2),
                &[("s1".to_string(), "s2".to_string(), Label::Finite(param))],
            )
        }
        PresetFamily::ATilde => {
            if param < 2 {
                return Err(bad());
            }
            let n = param + 1;
            let mut edges = path_edges(n, &|_| 3);
            edges.push((format!("s{n}"), "s1".to_string(), Label::Finite(3)));
            CoxeterGraph::new(names(n), &edges)
        }
    };
    graph
}

/// Convenience wrapper: parse "A 3", "I2 6", "Atilde 2".
pub fn preset_from_strings(family: &str, param: &str) -> Result<CoxeterGraph, GraphError> {
    let fam = PresetFamily::parse(family)?;
    let p: u64 = param
        .parse()
        .map_err(|_| GraphError::Parse(format!("bad preset parameter {param:?}")))?;
    preset(fam, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> CoxeterGraph {
        CoxeterGraph::parse(text).unwrap()
    }

    #[test]
    fn parse_basic() {
        let a2 = g("vertices s t\nedge s t 3\n");
        assert_eq!(a2.len(), 2);
        assert_eq!(a2.label(0, 1), Label::Finite(3));

        let inf = g("vertices s t\nedge s t inf\n");
        assert_eq!(inf.label(0, 1), Label::Infinity);

        let free = g("vertices s t u\n");
        assert_eq!(free.label(0, 1), Label::Finite(2));
        assert_eq!(free.label(1, 2), Label::Finite(2));
        assert_eq!(free.components().len(), 3);
    }

    #[test]
    fn parse_comments_and_json() {
        let a2 = g("# a comment\nvertices s t\n# another\nedge s t 3\n");
        assert_eq!(a2.label(0, 1), Label::Finite(3));
        let j = g(r#"{"vertices":["s","t"],"edges":[["s","t","4"]]}"#);
        assert_eq!(j.label(0, 1), Label::Finite(4));
        let j2 = g(r#"{"vertices":["s","t"],"edges":[["s","t","inf"]]}"#);
        assert_eq!(j2.label(0, 1), Label::Infinity);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            CoxeterGraph::parse("vertices s s\n"),
            Err(GraphError::DuplicateVertex(_))
        ));
        assert!(matches!(
            CoxeterGraph::parse("vertices s t\nedge s u 3\n"),
            Err(GraphError::UnknownVertex(_))
        ));
        assert!(matches!(
            CoxeterGraph::parse("vertices s t\nedge s t 1\n"),
            Err(GraphError::BadLabel(_))
        ));
        assert!(matches!(
            CoxeterGraph::parse("vertices s t\nedge s t 3\nedge t s 4\n"),
            Err(GraphError::ConflictingEdge(_, _))
        ));
        // identical duplicate declarations are harmless
        assert!(CoxeterGraph::parse("vertices s t\nedge s t 3\nedge t s 3\n").is_ok());
        assert!(matches!(
            CoxeterGraph::parse("vertices s t\nedge s s 3\n"),
            Err(GraphError::SelfEdge(_))
        ));
    }

    #[test]
    fn presets() {
        let a2 = preset(PresetFamily::A, 2).unwrap();
        assert_eq!(a2.vertices(), &["s1", "s2"]);
        assert_eq!(a2.label(0, 1), Label::Finite(3));

        let i26 = preset(PresetFamily::I2, 6).unwrap();
        assert_eq!(i26.label(0, 1), Label::Finite(6));

        let b3 = preset(PresetFamily::B, 3).unwrap();
        assert_eq!(b3.label(0, 1), Label::Finite(4));
        assert_eq!(b3.label(1, 2), Label::Finite(3));
        assert_eq!(b3.label(0, 2), Label::Finite(2));

        assert!(preset(PresetFamily::I2, 4).is_err());
        assert!(preset(PresetFamily::E, 9).is_err());
        assert!(preset(PresetFamily::D, 3).is_err());
    }

    #[test]
    fn subgraphs() {
        let a3 = preset(PresetFamily::A, 3).unwrap();
        let sub = a3
            .full_subgraph(&["s1".to_string(), "s2".to_string()])
            .unwrap();
        assert_eq!(sub.analyze().components[0].spherical.as_deref(), Some("A2"));

        let empty = a3.full_subgraph(&[]).unwrap();
        assert_eq!(empty.len(), 0);

        let b3 = preset(PresetFamily::B, 3).unwrap();
        let sub = b3
            .full_subgraph(&["s1".to_string(), "s3".to_string()])
            .unwrap();
        assert_eq!(sub.label(0, 1), Label::Finite(2));

        assert!(a3.full_subgraph(&["zz".to_string()]).is_err());
    }

    #[test]
    fn analyze_catalog() {
        let a3 = preset(PresetFamily::A, 3).unwrap();
        let rep = a3.analyze();
        assert_eq!(rep.components.len(), 1);
        assert_eq!(rep.components[0].spherical.as_deref(), Some("A3"));
        assert!(!rep.components[0].infty_connected);

        let inf = g("vertices s t\nedge s t inf\n");
        let rep = inf.analyze();
        assert!(rep.components[0].infty_connected);
        assert!(rep.components[0].spherical.is_none());

        // affine cycle: zero minor, hence not positive definite
        let atilde2 = preset(PresetFamily::ATilde, 2).unwrap();
        let ctx = atilde2.scalar_context();
        let minors = atilde2.gram_matrix(&ctx).leading_minors();
        assert!(minors.last().unwrap().is_zero());
        let rep = atilde2.analyze();
        assert!(rep.components[0].spherical.is_none());
        assert!(!rep.components[0].infty_connected);
    }

    #[test]
    fn analyze_names() {
        for (fam, p, want) in [
            (PresetFamily::A, 1, "A1"),
            (PresetFamily::A, 5, "A5"),
            (PresetFamily::B, 2, "B2"),
            (PresetFamily::B, 4, "B4"),
            (PresetFamily::D, 4, "D4"),
            (PresetFamily::D, 5, "D5"),
            (PresetFamily::E, 6, "E6"),
            (PresetFamily::E, 7, "E7"),
            (PresetFamily::E, 8, "E8"),
            (PresetFamily::F, 4, "F4"),
            (PresetFamily::H, 3, "H3"),
            (PresetFamily::H, 4, "H4"),
            (PresetFamily::I2, 7, "I2(7)"),
        ] {
            let rep = preset(fam, p).unwrap().analyze();
            assert_eq!(rep.components[0].spherical.as_deref(), Some(want));
        }
    }

    #[test]
    fn infty_connected_implies_connected() {
        let mixed = g("vertices a b c\nedge a b inf\nedge b c 3\n");
        let rep = mixed.analyze();
        assert_eq!(rep.components.len(), 1);
        assert!(!rep.components[0].infty_connected);
        let all_inf = g("vertices a b c\nedge a b inf\nedge b c inf\n");
        assert!(all_inf.analyze().components[0].infty_connected);
    }

    #[test]
    fn emit_round_trip() {
        let graphs = [
            preset(PresetFamily::B, 3).unwrap(),
            g("vertices x y z\nedge x y inf\nedge y z 5\n"),
            g("vertices lone\n"),
        ];
        for graph in &graphs {
            assert_eq!(&g(&graph.emit_text()), graph);
            assert_eq!(&g(&graph.emit_json()), graph);
        }
    }

    #[test]
    fn emit_dot_conventions() {
        let a2 = preset(PresetFamily::A, 2).unwrap();
        let dot = a2.emit_dot();
        assert!(dot.contains("\"s1\" -- \"s2\";"));
        assert!(!dot.contains("label"));

        let i25 = preset(PresetFamily::I2, 5).unwrap();
        assert!(i25.emit_dot().contains("[label=\"5\"]"));

        let inf = g("vertices s t\nedge s t inf\n");
        assert!(inf.emit_dot().contains("[label=\"\u{221e}\"]"));

        // label-2 pairs are not drawn
        let free = g("vertices s t\n");
        assert!(!free.emit_dot().contains("--"));
    }
}

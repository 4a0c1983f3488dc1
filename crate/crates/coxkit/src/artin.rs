//! Words in the Artin generators: the projection to the Coxeter group, its
//! set-section, colored-word detection, free reduction, and the retraction
//! onto a standard parabolic.
//!
//! No general Artin-group equality is attempted. The decidable fragments
//! (free groups from all-infinity graphs, the rank-one infinite cyclic case)
//! provide the oracles that the rewriting operations are tested against.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::coxeter::{CoxeterSystem, GroupEl, Word};
use crate::graph::{CoxeterGraph, Label};

#[derive(Debug, Error)]
pub enum ArtinError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("bad word token {0:?} (expected \"s\" or \"s^-1\")")]
    BadToken(String),
    #[error("equality oracle needs an all-infinity graph or a single vertex")]
    UnsupportedGraphShape,
}

/// A word in the generators `sigma_s^(+/-1)`, stored as vertex indices with
/// exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ArtinWord(pub Vec<(usize, i8)>);

impl ArtinWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> ArtinWord {
        ArtinWord(self.0.iter().rev().map(|&(s, e)| (s, -e)).collect())
    }

    pub fn concat(&self, other: &ArtinWord) -> ArtinWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        ArtinWord(letters)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }
}

/// Projection to the Coxeter group: exponents are discarded because the
/// generators become involutions.
pub fn omega(sys: &CoxeterSystem, word: &ArtinWord) -> GroupEl {
    sys.element_of(&Word(word.0.iter().map(|&(s, _)| s).collect()))
}

/// Whether the word lies in the kernel of the projection.
pub fn is_colored(sys: &CoxeterSystem, word: &ArtinWord) -> bool {
    sys.is_identity(&omega(sys, word))
}

/// The set-section of the projection: the canonical reduced word of `w` read
/// letterwise with exponent +1. Satisfies `omega(section(w)) = w`; defined on
/// elements, since the result is independent of the chosen reduced word.
pub fn section_sigma(sys: &CoxeterSystem, w: &GroupEl) -> ArtinWord {
    ArtinWord(sys.reduced_word(w).0.into_iter().map(|s| (s, 1)).collect())
}

/// Cancel adjacent `sigma_s^e sigma_s^-e` pairs to a fixpoint.
pub fn free_reduce(word: &ArtinWord) -> ArtinWord {
    let mut stack: Vec<(usize, i8)> = Vec::with_capacity(word.len());
    for &(s, e) in &word.0 {
        if let Some(&(ts, te)) = stack.last() {
            if ts == s && te == -e {
                stack.pop();
                continue;
            }
        }
        stack.push((s, e));
    }
    ArtinWord(stack)
}

/// Equality oracle for the decidable fragments: free groups (all labels
/// infinity) and the single-vertex infinite cyclic group.
pub fn equal_in_special_case(
    a: &ArtinWord,
    b: &ArtinWord,
    graph: &CoxeterGraph,
) -> Result<bool, ArtinError> {
    let n = graph.len();
    if n == 1 {
        return Ok(a.exponent_sum() == b.exponent_sum());
    }
    let all_infinity = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .all(|(i, j)| graph.label(i, j) == Label::Infinity);
    if !all_infinity {
        return Err(ArtinError::UnsupportedGraphShape);
    }
    Ok(free_reduce(a) == free_reduce(b))
}

/// One position of the retraction trace: the prefix image `u_j`, its
/// decomposition `u_j = v_j w_j` with `v_j` in `W_X` and `w_j`
/// `(X,0)`-minimal, the conjugate `t_j`, and the emitted letter.
#[derive(Debug, Clone)]
pub struct RetractionStep {
    pub u: GroupEl,
    pub v: GroupEl,
    pub w: GroupEl,
    pub t: GroupEl,
    /// `Some(x)` when `t_j` equals the generator `x` of `X`.
    pub t_in_x: Option<usize>,
    /// The emitted letter `gamma_j`, if any.
    pub gamma: Option<(usize, i8)>,
}

#[derive(Debug, Clone, Default)]
pub struct RetractionTrace {
    pub steps: Vec<RetractionStep>,
}

/// The retraction of a word onto the parabolic on `X`, with a full trace.
///
/// Follows the word algorithm: `u_j` is the Coxeter image of the length-`j`
/// prefix, split as `u_j = v_j w_j` with `w_j` `(X,0)`-minimal. The conjugate
/// `t_j` uses `w_{j-1}` for positive letters and `w_j` for negative letters;
/// a letter is emitted exactly when `t_j` equals a generator in `X` (tested
/// by exact matrix equality).
pub fn retract_px(
    sys: &CoxeterSystem,
    word: &ArtinWord,
    x: &BTreeSet<usize>,
) -> (ArtinWord, RetractionTrace) {
    let empty = BTreeSet::new();
    let gens: Vec<GroupEl> = (0..sys.rank()).map(|s| sys.generator(s)).collect();
    let mut u = sys.identity();
    let mut w_prev = sys.identity();
    let mut out = Vec::new();
    let mut steps = Vec::new();
    for &(s, e) in &word.0 {
        u = sys.right_mul_gen(&u, s);
        let d = sys.minimal_coset_decomposition(&u, x, &empty);
        let (v_j, w_j) = (d.left, d.minimal);
        let half = if e >= 0 { &w_prev } else { &w_j };
        let t = sys.mul(&sys.mul(half, &gens[s]), &sys.inverse(half));
        let t_in_x = x.iter().copied().find(|&g| t == gens[g]);
        let gamma = t_in_x.map(|g| (g, e));
        if let Some(g) = gamma {
            out.push(g);
        }
        steps.push(RetractionStep {
            u: u.clone(),
            v: v_j,
            w: w_j.clone(),
            t,
            t_in_x,
            gamma,
        });
        w_prev = w_j;
    }
    (ArtinWord(out), RetractionTrace { steps })
}

pub fn parse_artin_word(sys: &CoxeterSystem, tokens: &[String]) -> Result<ArtinWord, ArtinError> {
    let mut letters = Vec::new();
    for tok in tokens {
        let (name, exp) = match tok.strip_suffix("^-1") {
            Some(base) => (base, -1),
            None => match tok.strip_suffix("^1") {
                Some(base) => (base, 1),
                None => (tok.as_str(), 1),
            },
        };
        if name.is_empty() {
            return Err(ArtinError::BadToken(tok.clone()));
        }
        let s = sys
            .graph()
            .vertex_index(name)
            .map_err(|_| ArtinError::UnknownVertex(name.to_string()))?;
        letters.push((s, exp));
    }
    Ok(ArtinWord(letters))
}

pub fn format_artin_word(sys: &CoxeterSystem, word: &ArtinWord) -> String {
    word.0
        .iter()
        .map(|&(s, e)| {
            let name = &sys.graph().vertices()[s];
            if e >= 0 {
                name.clone()
            } else {
                format!("{name}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Formatter that shows the trace step by step; used by the CLI JSON path.
pub fn trace_json(sys: &CoxeterSystem, trace: &RetractionTrace) -> serde_json::Value {
    serde_json::json!(trace
        .steps
        .iter()
        .map(|st| {
            serde_json::json!({
                "u": sys.format_word(&sys.reduced_word(&st.u)),
                "v": sys.format_word(&sys.reduced_word(&st.v)),
                "w": sys.format_word(&sys.reduced_word(&st.w)),
                "t": sys.format_word(&sys.reduced_word(&st.t)),
                "t_in_x": st.t_in_x.map(|s| sys.graph().vertices()[s].clone()),
                "gamma": st.gamma.map(|(s, e)| {
                    let name = &sys.graph().vertices()[s];
                    if e >= 0 { name.clone() } else { format!("{name}^-1") }
                }),
            })
        })
        .collect::<Vec<_>>())
}

impl fmt::Display for ArtinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *e >= 0 {
                write!(f, "#{s}")?;
            } else {
                write!(f, "#{s}^-1")?;
            }
        }
        Ok(())
    }
}

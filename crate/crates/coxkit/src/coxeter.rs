//! The canonical reflection representation, evaluated exactly: roots, words,
//! lengths, descents, longest elements, double cosets, and brute-force
//! group-level analysis for finite Coxeter groups.
//!
//! Group elements are exact matrices over the graph's cyclotomic ring, in the
//! basis of simple roots. The representation is faithful, so exact matrix
//! equality is group equality and a matrix normal form doubles as a hashable
//! canonical key — no word-problem machinery is needed.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde_json::json;
use thiserror::Error;

use crate::graph::CoxeterGraph;
use crate::linalg::Matrix;
use crate::scalar::{CycScalar, ScalarContext, Sign};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("graph is not of spherical type")]
    NonSpherical,
    #[error("depth bound required for a non-spherical graph")]
    DepthRequired,
    #[error("enumeration truncated at bound {0}")]
    Truncated(usize),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("empty word expected a vertex name")]
    EmptyWord,
}

/// A word in the generators, as vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Exact coordinate vector in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec {
    coords: Vec<CycScalar>,
}

/// Sign classification of a root: all coordinates weakly positive or all
/// weakly negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSign {
    Positive,
    Negative,
}

impl RootVec {
    pub fn new(coords: Vec<CycScalar>) -> RootVec {
        RootVec { coords }
    }

    pub fn coords(&self) -> &[CycScalar] {
        &self.coords
    }

    pub fn neg(&self) -> RootVec {
        RootVec {
            coords: self.coords.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Coordinate-sign classification; `None` when signs are mixed (such a
    /// vector is not a root).
    pub fn classify(&self) -> Option<RootSign> {
        let mut pos = false;
        let mut neg = false;
        for c in &self.coords {
            match c.sign_or_zero() {
                Sign::Positive => pos = true,
                Sign::Negative => neg = true,
                Sign::Zero => {}
            }
            if pos && neg {
                return None;
            }
        }
        match (pos, neg) {
            (true, false) => Some(RootSign::Positive),
            (false, true) => Some(RootSign::Negative),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self.coords.iter().map(|c| c.to_json()).collect::<Vec<_>>())
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A Coxeter-group element: the exact matrix of the canonical representation.
///
/// `len_bound` is an upper bound on the word length, threaded through
/// constructions so the descent-stripping loop has a termination guard.
#[derive(Debug, Clone)]
pub struct GroupEl {
    matrix: Matrix,
    len_bound: usize,
}

impl PartialEq for GroupEl {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}
impl Eq for GroupEl {}

impl std::hash::Hash for GroupEl {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl PartialOrd for GroupEl {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical-key order: lexicographic on the matrix normal form.
impl Ord for GroupEl {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.matrix.cmp(&other.matrix)
    }
}

impl GroupEl {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn len_bound(&self) -> usize {
        self.len_bound
    }
}

/// Enumerated root system with positive/negative split and witnesses.
#[derive(Debug, Clone)]
pub struct RootSystem {
    /// Deduplicated roots in canonical (sorted normal-form) order.
    roots: Vec<RootVec>,
    signs: Vec<RootSign>,
    /// Witness `(w, s)` per root with `root = w(alpha_s)`.
    witnesses: Vec<(GroupEl, usize)>,
    index: HashMap<RootVec, usize>,
    complete: bool,
}

impl RootSystem {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    pub fn sign(&self, i: usize) -> RootSign {
        self.signs[i]
    }

    pub fn witness(&self, i: usize) -> &(GroupEl, usize) {
        &self.witnesses[i]
    }

    pub fn index_of(&self, root: &RootVec) -> Option<usize> {
        self.index.get(root).copied()
    }

    /// Indices of positive roots, in canonical order.
    pub fn positive(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.signs[i] == RootSign::Positive)
            .collect()
    }

    pub fn negative(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.signs[i] == RootSign::Negative)
            .collect()
    }

    pub fn negation_of(&self, i: usize) -> usize {
        self.index_of(&self.roots[i].neg())
            .expect("root system is closed under negation")
    }

    /// True when the enumeration closed (spherical case).
    pub fn complete(&self) -> bool {
        self.complete
    }
}

/// Result of a bounded group enumeration.
#[derive(Debug, Clone)]
pub struct GroupEnumeration {
    /// Elements in canonical (sorted normal-form) order.
    pub elements: Vec<GroupEl>,
    /// Word lengths aligned with `elements`.
    pub lengths: Vec<usize>,
    pub truncated: bool,
}

impl GroupEnumeration {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Decomposition `w = u * m0 * v` with `u` in `W_Y`, `v` in `W_X`, and `m0`
/// the `(Y,X)`-minimal double-coset representative; lengths are additive.
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    pub left: GroupEl,
    pub minimal: GroupEl,
    pub right: GroupEl,
}

/// A Coxeter graph together with its exact reflection representation.
pub struct CoxeterSystem {
    graph: CoxeterGraph,
    ctx: Arc<ScalarContext>,
    gens: Vec<Matrix>,
    gram: Matrix,
    /// `2 * gram`, the integer-coefficient multipliers used by reflections.
    two_gram: Matrix,
    spherical: std::sync::OnceLock<bool>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("vertices", &self.graph.vertices())
            .finish()
    }
}

impl CoxeterSystem {
    pub fn new(graph: CoxeterGraph) -> CoxeterSystem {
        let ctx = graph.scalar_context();
        let n = graph.len();
        let gram = graph.gram_matrix(&ctx);
        let two = CycScalar::from_integer(&ctx, 2);
        let two_gram = Matrix::from_fn(n, |i, j| gram.at(i, j).mul(&two));
        let gens = (0..n)
            .map(|s| {
                Matrix::from_fn(n, |i, j| {
                    // row s of rho(s) is -2<alpha_j, alpha_s>; other rows are
                    // the identity
                    if i == s {
                        let d = two_gram.at(j, s).neg();
                        if i == j {
                            d.add(&CycScalar::one(&ctx))
                        } else {
                            d
                        }
                    } else if i == j {
                        CycScalar::one(&ctx)
                    } else {
                        CycScalar::zero(&ctx)
                    }
                })
            })
            .collect();
        CoxeterSystem {
            graph,
            ctx,
            gens,
            gram,
            two_gram,
            spherical: std::sync::OnceLock::new(),
        }
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn context(&self) -> &Arc<ScalarContext> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.graph.len()
    }

    pub fn is_spherical(&self) -> bool {
        *self
            .spherical
            .get_or_init(|| self.gram.is_positive_definite())
    }

    pub fn identity(&self) -> GroupEl {
        GroupEl {
            matrix: Matrix::identity(&self.ctx, self.rank()),
            len_bound: 0,
        }
    }

    pub fn generator(&self, s: usize) -> GroupEl {
        GroupEl {
            matrix: self.gens[s].clone(),
            len_bound: 1,
        }
    }

    pub fn is_identity(&self, el: &GroupEl) -> bool {
        el.matrix == Matrix::identity(&self.ctx, self.rank())
    }

    pub fn simple_root(&self, s: usize) -> RootVec {
        let mut coords = vec![CycScalar::zero(&self.ctx); self.rank()];
        coords[s] = CycScalar::one(&self.ctx);
        RootVec::new(coords)
    }

    /// Bilinear form, extended from `<alpha_s, alpha_t> = -cos(pi/m_st)`.
    pub fn inner(&self, v: &RootVec, u: &RootVec) -> CycScalar {
        let mut acc = CycScalar::zero(&self.ctx);
        for (i, a) in v.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in u.coords.iter().enumerate() {
                if !b.is_zero() {
                    acc = acc.add(&a.mul(b).mul(self.gram.at(i, j)));
                }
            }
        }
        acc
    }

    /// Image of `v` under the simple reflection `s`:
    /// `v - 2 <v, alpha_s> alpha_s`.
    pub fn reflect(&self, s: usize, v: &RootVec) -> RootVec {
        let mut coords = v.coords.clone();
        let mut delta = CycScalar::zero(&self.ctx);
        for (j, c) in v.coords.iter().enumerate() {
            if !c.is_zero() {
                delta = delta.add(&c.mul(self.two_gram.at(j, s)));
            }
        }
        coords[s] = coords[s].sub(&delta);
        RootVec::new(coords)
    }

    pub fn act(&self, w: &GroupEl, v: &RootVec) -> RootVec {
        RootVec::new(w.matrix.apply(&v.coords))
    }

    /// `w(alpha_s)` — column `s` of the matrix.
    pub fn image_of_simple(&self, w: &GroupEl, s: usize) -> RootVec {
        RootVec::new(w.matrix.column(s))
    }

    pub fn element_of(&self, word: &Word) -> GroupEl {
        let mut el = self.identity();
        for &s in &word.0 {
            el = self.right_mul_gen(&el, s);
        }
        el
    }

    pub fn mul(&self, a: &GroupEl, b: &GroupEl) -> GroupEl {
        GroupEl {
            matrix: a.matrix.mul(&b.matrix),
            len_bound: a.len_bound + b.len_bound,
        }
    }

    /// `w * s`, by column operations on `w`.
    pub fn right_mul_gen(&self, w: &GroupEl, s: usize) -> GroupEl {
        let n = self.rank();
        let col_s = w.matrix.column(s);
        let mut m = w.matrix.clone();
        for j in 0..n {
            let factor = self.two_gram.at(j, s);
            if factor.is_zero() {
                continue;
            }
            for (i, c) in col_s.iter().enumerate() {
                if !c.is_zero() {
                    let delta = factor.mul(c);
                    m.set(i, j, m.at(i, j).sub(&delta));
                }
            }
        }
        GroupEl {
            matrix: m,
            len_bound: w.len_bound + 1,
        }
    }

    /// `s * w`, by row operations on `w`.
    pub fn left_mul_gen(&self, s: usize, w: &GroupEl) -> GroupEl {
        let n = self.rank();
        let mut m = w.matrix.clone();
        for j in 0..n {
            // <col_j, alpha_s> doubled
            let mut delta = CycScalar::zero(&self.ctx);
            for k in 0..n {
                let c = w.matrix.at(k, j);
                if !c.is_zero() {
                    delta = delta.add(&c.mul(self.two_gram.at(k, s)));
                }
            }
            m.set(s, j, m.at(s, j).sub(&delta));
        }
        GroupEl {
            matrix: m,
            len_bound: w.len_bound + 1,
        }
    }

    /// Least-index right descent: least `s` with `w(alpha_s)` negative.
    pub fn least_right_descent(&self, w: &GroupEl) -> Option<usize> {
        (0..self.rank())
            .find(|&s| self.image_of_simple(w, s).classify() == Some(RootSign::Negative))
    }

    /// Least-index right ascent: least `s` with `w(alpha_s)` positive.
    fn least_right_ascent(&self, w: &GroupEl) -> Option<usize> {
        (0..self.rank())
            .find(|&s| self.image_of_simple(w, s).classify() == Some(RootSign::Positive))
    }

    /// Canonical reduced word: repeatedly strip the least-indexed right
    /// descent. Deterministic; output length is `l(w)`.
    pub fn reduced_word(&self, w: &GroupEl) -> Word {
        let mut cur = w.clone();
        let mut stripped = Vec::new();
        while !self.is_identity(&cur) {
            let s = self
                .least_right_descent(&cur)
                .expect("non-identity element must have a right descent");
            cur = self.right_mul_gen(&cur, s);
            stripped.push(s);
            assert!(
                stripped.len() <= w.len_bound,
                "internal error: descent stripping exceeded the length bound"
            );
        }
        stripped.reverse();
        Word(stripped)
    }

    pub fn length(&self, w: &GroupEl) -> usize {
        self.reduced_word(w).len()
    }

    /// Inverse via the reversed canonical reduced word.
    pub fn inverse(&self, w: &GroupEl) -> GroupEl {
        let mut word = self.reduced_word(w);
        word.0.reverse();
        let mut el = self.element_of(&word);
        el.len_bound = el.len_bound.min(w.len_bound);
        el
    }

    /// Letter set of the canonical reduced word (independent of the choice of
    /// reduced expression).
    pub fn support(&self, w: &GroupEl) -> BTreeSet<usize> {
        self.reduced_word(w).0.into_iter().collect()
    }

    /// Breadth-first closure of the identity under right multiplication.
    ///
    /// Complete when the closure has at most `bound` elements, otherwise
    /// returns what was found with the `truncated` marker set. Output is
    /// sorted by canonical key; `lengths` stay aligned.
    pub fn enumerate_group(&self, bound: usize) -> GroupEnumeration {
        self.enumerate_levels(usize::MAX, bound)
    }

    /// Elements of length at most `depth`, with the same bound guard.
    pub fn enumerate_up_to_length(&self, depth: usize, bound: usize) -> GroupEnumeration {
        self.enumerate_levels(depth, bound)
    }

    // group elements hash by their matrix normal form; the shared context's
    // interval cache does not participate in equality
    #[allow(clippy::mutable_key_type)]
    fn enumerate_levels(&self, depth: usize, bound: usize) -> GroupEnumeration {
        let mut seen: HashMap<GroupEl, usize> = HashMap::new();
        let id = self.identity();
        let mut order: Vec<(GroupEl, usize)> = vec![(id.clone(), 0)];
        seen.insert(id.clone(), 0);
        let mut frontier = vec![id];
        let mut level = 0usize;
        let mut truncated = false;
        'outer: while !frontier.is_empty() && level < depth {
            level += 1;
            let mut next = Vec::new();
            for el in &frontier {
                for s in 0..self.rank() {
                    let child = self.right_mul_gen(el, s);
                    if seen.contains_key(&child) {
                        continue;
                    }
                    if order.len() >= bound {
                        truncated = true;
                        break 'outer;
                    }
                    let child = GroupEl {
                        len_bound: level,
                        ..child
                    };
                    seen.insert(child.clone(), order.len());
                    order.push((child.clone(), level));
                    next.push(child);
                }
            }
            frontier = next;
        }
        order.sort_by(|a, b| a.0.cmp(&b.0));
        let (elements, lengths) = order.into_iter().unzip();
        GroupEnumeration {
            elements,
            lengths,
            truncated,
        }
    }

    /// Closure of the simple roots under the simple reflections.
    ///
    /// Full closure for spherical graphs when no depth is given; otherwise
    /// `depth` bounds the word length of the sweep (and is required for
    /// non-spherical graphs). The result is marked complete only when the
    /// closure actually finished within the bound.
    #[allow(clippy::mutable_key_type)]
    pub fn enumerate_roots(&self, depth: Option<usize>) -> Result<RootSystem, EngineError> {
        if !self.is_spherical() && depth.is_none() {
            return Err(EngineError::DepthRequired);
        }
        let depth = depth.unwrap_or(usize::MAX);
        let mut index: HashMap<RootVec, usize> = HashMap::new();
        let mut roots: Vec<RootVec> = Vec::new();
        let mut wits: Vec<(GroupEl, usize)> = Vec::new();
        let mut frontier: Vec<usize> = Vec::new();
        for s in 0..self.rank() {
            let r = self.simple_root(s);
            if !index.contains_key(&r) {
                index.insert(r.clone(), roots.len());
                frontier.push(roots.len());
                roots.push(r);
                wits.push((self.identity(), s));
            }
        }
        let mut level = 0usize;
        while !frontier.is_empty() && level < depth {
            level += 1;
            let mut next = Vec::new();
            for &ri in &frontier {
                for s in 0..self.rank() {
                    let img = self.reflect(s, &roots[ri].clone());
                    if index.contains_key(&img) {
                        continue;
                    }
                    let (w, base) = wits[ri].clone();
                    let witness = (self.left_mul_gen(s, &w), base);
                    index.insert(img.clone(), roots.len());
                    next.push(roots.len());
                    roots.push(img);
                    wits.push(witness);
                }
            }
            frontier = next;
        }
        let complete = frontier.is_empty();
        // close under negation: -w(alpha_s) = (w s)(alpha_s), so the negation
        // of an enumerated root is a root with an immediate witness
        for i in 0..roots.len() {
            let neg = roots[i].neg();
            if !index.contains_key(&neg) {
                let (w, base) = wits[i].clone();
                let witness = (self.right_mul_gen(&w, base), base);
                index.insert(neg.clone(), roots.len());
                roots.push(neg);
                wits.push(witness);
            }
        }
        // canonical order: sort by normal form, re-point witnesses and index
        let mut perm: Vec<usize> = (0..roots.len()).collect();
        perm.sort_by(|&a, &b| roots[a].cmp(&roots[b]));
        let roots_sorted: Vec<RootVec> = perm.iter().map(|&i| roots[i].clone()).collect();
        let wits_sorted: Vec<(GroupEl, usize)> = perm.iter().map(|&i| wits[i].clone()).collect();
        let mut index = HashMap::new();
        let mut signs = Vec::with_capacity(roots_sorted.len());
        for (i, r) in roots_sorted.iter().enumerate() {
            index.insert(r.clone(), i);
            signs.push(
                r.classify()
                    .expect("every enumerated root has uniform coordinate signs"),
            );
        }
        Ok(RootSystem {
            roots: roots_sorted,
            signs,
            witnesses: wits_sorted,
            index,
            complete,
        })
    }

    /// The longest element of a spherical system, with its centrality flag.
    ///
    /// Climbs from the identity along least-index ascents; the flag is true
    /// iff `w0(alpha_s) = -alpha_s` for all `s`.
    pub fn longest_element(&self) -> Result<(GroupEl, bool), EngineError> {
        if !self.is_spherical() {
            return Err(EngineError::NonSpherical);
        }
        let mut w = self.identity();
        while let Some(s) = self.least_right_ascent(&w) {
            w = self.right_mul_gen(&w, s);
        }
        let central =
            (0..self.rank()).all(|s| self.image_of_simple(&w, s) == self.simple_root(s).neg());
        Ok((w, central))
    }

    /// Strip right descents in `X` and left descents in `Y` until none
    /// remain, producing `w = u * m0 * v` with additive lengths.
    pub fn minimal_coset_decomposition(
        &self,
        w: &GroupEl,
        y: &BTreeSet<usize>,
        x: &BTreeSet<usize>,
    ) -> CosetDecomposition {
        let mut m = w.clone();
        let mut m_inv = self.inverse(w);
        let mut left = self.identity();
        let mut right = self.identity();
        loop {
            let right_descent = x
                .iter()
                .copied()
                .find(|&s| self.image_of_simple(&m, s).classify() == Some(RootSign::Negative));
            if let Some(s) = right_descent {
                m = self.right_mul_gen(&m, s);
                m_inv = self.left_mul_gen(s, &m_inv);
                right = self.left_mul_gen(s, &right);
                continue;
            }
            let left_descent = y
                .iter()
                .copied()
                .find(|&s| self.image_of_simple(&m_inv, s).classify() == Some(RootSign::Negative));
            if let Some(s) = left_descent {
                m = self.left_mul_gen(s, &m);
                m_inv = self.right_mul_gen(&m_inv, s);
                left = self.right_mul_gen(&left, s);
                continue;
            }
            break;
        }
        m.len_bound = m.len_bound.min(w.len_bound);
        CosetDecomposition {
            left,
            minimal: m,
            right,
        }
    }

    /// Center and quasi-center by brute force over a complete enumeration.
    pub fn center_and_quasi_center(
        &self,
        bound: usize,
    ) -> Result<(Vec<GroupEl>, Vec<GroupEl>), EngineError> {
        let en = self.enumerate_group(bound);
        if en.truncated {
            return Err(EngineError::Truncated(bound));
        }
        let gens: Vec<GroupEl> = (0..self.rank()).map(|s| self.generator(s)).collect();
        let mut center = Vec::new();
        let mut quasi = Vec::new();
        for el in &en.elements {
            let commutes = gens.iter().all(|g| self.mul(el, g) == self.mul(g, el));
            if commutes {
                center.push(el.clone());
            }
            let inv = self.inverse(el);
            let normalizes = gens.iter().all(|g| {
                let conj = self.mul(&self.mul(el, g), &inv);
                gens.contains(&conj)
            });
            if normalizes {
                quasi.push(el.clone());
            }
        }
        Ok((center, quasi))
    }

    /// Whether the Coxeter element (product of all generators in vertex
    /// order) avoids every proper parabolic, conjugates included.
    ///
    /// Membership of `u c u^-1` in `W_X` is tested by `support <= X`, so the
    /// check reduces to: every conjugate has full support.
    pub fn is_essential_coxeter_element(&self, bound: usize) -> Result<bool, EngineError> {
        if !self.is_spherical() {
            return Err(EngineError::NonSpherical);
        }
        let en = self.enumerate_group(bound);
        if en.truncated {
            return Err(EngineError::Truncated(bound));
        }
        let c = self.element_of(&Word((0..self.rank()).collect()));
        let full: BTreeSet<usize> = (0..self.rank()).collect();
        for u in &en.elements {
            let conj = self.mul(&self.mul(u, &c), &self.inverse(u));
            if self.support(&conj) != full {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn parse_word(&self, tokens: &[String]) -> Result<Word, EngineError> {
        let mut letters = Vec::new();
        for t in tokens {
            letters.push(
                self.graph
                    .vertex_index(t)
                    .map_err(|_| EngineError::UnknownVertex(t.clone()))?,
            );
        }
        Ok(Word(letters))
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.0.iter()
            .map(|&s| self.graph.vertices()[s].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn vertex_set(&self, names: &[String]) -> Result<BTreeSet<usize>, EngineError> {
        names
            .iter()
            .map(|n| {
                self.graph
                    .vertex_index(n)
                    .map_err(|_| EngineError::UnknownVertex(n.clone()))
            })
            .collect()
    }

    pub fn element_json(&self, el: &GroupEl) -> serde_json::Value {
        json!({
            "word": self.format_word(&self.reduced_word(el)),
            "matrix": (0..self.rank()).map(|i| {
                (0..self.rank()).map(|j| el.matrix.at(i, j).to_json()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

//! Words in the virtual generators, the two projections onto the Coxeter
//! group, and the semidirect normal-pair rewriting onto the root-indexed
//! generating sets of the two kernels.
//!
//! Normal pairs are a sound invariant of a word, never an equality decision
//! procedure: equal words have equal pairs up to braid moves of the root
//! graph on the kernel word.

use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::coxeter::{CoxeterSystem, GroupEl, RootSystem, RootVec, Word};
use crate::graph::CoxeterGraph;

#[derive(Debug, Error)]
pub enum VaError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("the mixed relation needs two distinct vertices")]
    EqualVertices,
    #[error("bad word token {0:?} (expected \"s\", \"s^-1\", or \"t:s\")")]
    BadToken(String),
    #[error("root {0} is outside the enumerated root system (depth too small)")]
    RootOutsideSystem(String),
    #[error("label of the pair is infinity; the mixed relation needs a finite label")]
    InfiniteLabel,
    #[error("internal error: the tau-word image of a simple root is not simple")]
    NotSimpleRoot,
}

/// A letter of a virtual word: a classical generator with exponent, or an
/// involutive virtual generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VALetter {
    Sigma(usize, i8),
    Tau(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VAWord(pub Vec<VALetter>);

impl VAWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &VAWord) -> VAWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        VAWord(letters)
    }

    pub fn sigma_count(&self) -> usize {
        self.0
            .iter()
            .filter(|l| matches!(l, VALetter::Sigma(..)))
            .count()
    }
}

/// Which projection a normal pair is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// `tau_s -> s`, `sigma_s -> id`; kernel on the left: `g = k * w`.
    K,
    /// Both letters map to `s`; kernel on the right: `g = w * k`.
    P,
}

/// A word in the root-indexed kernel generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaWord {
    /// `(root index, exponent)` letters, free-reduced.
    pub letters: Vec<(usize, i8)>,
}

impl DeltaWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Semidirect normal form of a virtual word: a kernel word over root-indexed
/// generators plus the Coxeter image under the matching projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalPair {
    pub kernel: DeltaWord,
    pub coxeter: GroupEl,
    pub kind: PairKind,
}

/// Evaluate the letter maps of the chosen projection.
pub fn project(sys: &CoxeterSystem, word: &VAWord, kind: PairKind) -> GroupEl {
    let mut w = sys.identity();
    for letter in &word.0 {
        match (*letter, kind) {
            (VALetter::Tau(s), _) => w = sys.right_mul_gen(&w, s),
            (VALetter::Sigma(s, _), PairKind::P) => w = sys.right_mul_gen(&w, s),
            (VALetter::Sigma(_, _), PairKind::K) => {}
        }
    }
    w
}

/// Cancel adjacent inverse pairs (`sigma_s^e sigma_s^-e`, `tau_s tau_s`) to a
/// fixpoint.
pub fn free_reduce_va(word: &VAWord) -> VAWord {
    let mut stack: Vec<VALetter> = Vec::with_capacity(word.len());
    for &letter in &word.0 {
        let cancels = match (stack.last(), letter) {
            (Some(VALetter::Sigma(ts, te)), VALetter::Sigma(s, e)) => *ts == s && *te == -e,
            (Some(VALetter::Tau(ts)), VALetter::Tau(s)) => *ts == s,
            _ => false,
        };
        if cancels {
            stack.pop();
        } else {
            stack.push(letter);
        }
    }
    VAWord(stack)
}

/// Per-component subwords: letters are partitioned by the connected component
/// of their vertex. One entry per component of the graph, in component order.
pub fn split_components(word: &VAWord, graph: &CoxeterGraph) -> Vec<VAWord> {
    let comps = graph.components();
    let mut of_vertex = vec![0usize; graph.len()];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            of_vertex[v] = ci;
        }
    }
    let mut parts = vec![VAWord::default(); comps.len()];
    for &letter in &word.0 {
        let v = match letter {
            VALetter::Sigma(s, _) => s,
            VALetter::Tau(s) => s,
        };
        parts[of_vertex[v]].0.push(letter);
    }
    parts
}

/// The resolved mixed relation for a generator pair: the alternating virtual
/// prefix, the classical letter it transports, and the resulting vertex.
#[derive(Debug, Clone)]
pub struct Va3Relation {
    /// The vertex `r` with `alpha_r = w(alpha_t)` for the tau-word image `w`.
    pub r: usize,
    pub lhs: VAWord,
    pub rhs: VAWord,
}

/// Rewriting context: a system together with an enumerated root system that
/// indexes the kernel generators.
pub struct VaContext<'a> {
    pub sys: &'a CoxeterSystem,
    pub roots: &'a RootSystem,
}

impl<'a> VaContext<'a> {
    pub fn new(sys: &'a CoxeterSystem, roots: &'a RootSystem) -> VaContext<'a> {
        VaContext { sys, roots }
    }

    fn root_index(&self, root: &RootVec) -> Result<usize, VaError> {
        self.roots
            .index_of(root)
            .ok_or_else(|| VaError::RootOutsideSystem(root.to_string()))
    }

    fn push_reduced(letters: &mut Vec<(usize, i8)>, letter: (usize, i8)) {
        if let Some(&(ts, te)) = letters.last() {
            if ts == letter.0 && te == -letter.1 {
                letters.pop();
                return;
            }
        }
        letters.push(letter);
    }

    /// Rewrite a word into its semidirect normal pair.
    ///
    /// K-convention: scanning left to right with `w` the image of the virtual
    /// prefix, a classical letter at vertex `s` emits the kernel generator at
    /// root `w(alpha_s)`; the pair satisfies `g = kernel * w`.
    ///
    /// P-convention: `w` is the image of the whole processed prefix; a
    /// positive letter emits the generator at `(w s)(alpha_s)` before updating
    /// `w`, a negative letter the one at `w(alpha_s)`. The letters are emitted
    /// kernel-on-the-left and conjugated by `w^-1` at the end so the stored
    /// pair satisfies `g = w * kernel`.
    pub fn normal_pair(&self, word: &VAWord, kind: PairKind) -> Result<NormalPair, VaError> {
        let sys = self.sys;
        let mut w = sys.identity();
        let mut letters: Vec<(usize, i8)> = Vec::new();
        for &letter in &word.0 {
            match (letter, kind) {
                (VALetter::Tau(s), _) => w = sys.right_mul_gen(&w, s),
                (VALetter::Sigma(s, e), PairKind::K) => {
                    let root = sys.image_of_simple(&w, s);
                    Self::push_reduced(&mut letters, (self.root_index(&root)?, e));
                }
                (VALetter::Sigma(s, e), PairKind::P) => {
                    let root = if e >= 0 {
                        // (w s)(alpha_s) = -w(alpha_s)
                        sys.image_of_simple(&w, s).neg()
                    } else {
                        sys.image_of_simple(&w, s)
                    };
                    Self::push_reduced(&mut letters, (self.root_index(&root)?, e));
                    w = sys.right_mul_gen(&w, s);
                }
            }
        }
        let kernel = match kind {
            PairKind::K => DeltaWord { letters },
            PairKind::P => {
                let w_inv = sys.inverse(&w);
                self.act_on_delta(&w_inv, &DeltaWord { letters })?
            }
        };
        Ok(NormalPair {
            kernel,
            coxeter: w,
            kind,
        })
    }

    /// Letterwise root substitution `delta_beta -> delta_{w(beta)}`, exponents
    /// preserved.
    pub fn act_on_delta(&self, w: &GroupEl, d: &DeltaWord) -> Result<DeltaWord, VaError> {
        let letters = d
            .letters
            .iter()
            .map(|&(ri, e)| {
                let image = self.sys.act(w, &self.roots.roots()[ri]);
                Ok((self.root_index(&image)?, e))
            })
            .collect::<Result<Vec<_>, VaError>>()?;
        Ok(DeltaWord { letters })
    }

    pub fn pair_json(&self, pair: &NormalPair) -> serde_json::Value {
        json!({
            "kind": match pair.kind { PairKind::K => "K", PairKind::P => "P" },
            "deltas": pair.kernel.letters.iter().map(|&(ri, e)| json!({
                "root": self.roots.roots()[ri].to_string(),
                "exp": e,
            })).collect::<Vec<_>>(),
            "w": self.sys.format_word(&self.sys.reduced_word(&pair.coxeter)),
        })
    }
}

/// Resolve the mixed relation for a finite-labeled pair `(s, t)`.
///
/// Builds the `(m-1)`-letter alternating virtual word ending at `s`, computes
/// its Coxeter image `w`, and derives `r` as the unique vertex with
/// `alpha_r = w(alpha_t)` — the root action is what the kernel-generator
/// structure is consistent with, rather than the even/odd phrasing.
pub fn va3_resolve(sys: &CoxeterSystem, s: usize, t: usize) -> Result<Va3Relation, VaError> {
    if s == t {
        return Err(VaError::EqualVertices);
    }
    let m = sys
        .graph()
        .label(s, t)
        .finite()
        .ok_or(VaError::InfiniteLabel)? as usize;
    let tau_seq: Vec<usize> = (0..m - 1)
        .map(|i| if (m - 2 - i).is_multiple_of(2) { s } else { t })
        .collect();
    let w = sys.element_of(&Word(tau_seq.clone()));
    let image = sys.image_of_simple(&w, t);
    let r = (0..sys.rank())
        .find(|&v| sys.simple_root(v) == image)
        .ok_or(VaError::NotSimpleRoot)?;
    let mut lhs: Vec<VALetter> = tau_seq.iter().map(|&v| VALetter::Tau(v)).collect();
    lhs.push(VALetter::Sigma(t, 1));
    let mut rhs: Vec<VALetter> = vec![VALetter::Sigma(r, 1)];
    rhs.extend(tau_seq.iter().map(|&v| VALetter::Tau(v)));
    Ok(Va3Relation {
        r,
        lhs: VAWord(lhs),
        rhs: VAWord(rhs),
    })
}

pub fn parse_va_word(sys: &CoxeterSystem, tokens: &[String]) -> Result<VAWord, VaError> {
    let mut letters = Vec::new();
    for tok in tokens {
        if let Some(name) = tok.strip_prefix("t:") {
            let s = sys
                .graph()
                .vertex_index(name)
                .map_err(|_| VaError::UnknownVertex(name.to_string()))?;
            letters.push(VALetter::Tau(s));
            continue;
        }
        let (name, exp) = match tok.strip_suffix("^-1") {
            Some(base) => (base, -1),
            None => (tok.as_str(), 1),
        };
        if name.is_empty() {
            return Err(VaError::BadToken(tok.clone()));
        }
        let s = sys
            .graph()
            .vertex_index(name)
            .map_err(|_| VaError::UnknownVertex(name.to_string()))?;
        letters.push(VALetter::Sigma(s, exp));
    }
    Ok(VAWord(letters))
}

pub fn format_va_word(sys: &CoxeterSystem, word: &VAWord) -> String {
    word.0
        .iter()
        .map(|letter| {
            let names = sys.graph().vertices();
            match letter {
                VALetter::Sigma(s, e) if *e >= 0 => names[*s].clone(),
                VALetter::Sigma(s, _) => format!("{}^-1", names[*s]),
                VALetter::Tau(s) => format!("t:{}", names[*s]),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for VALetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VALetter::Sigma(s, e) if *e >= 0 => write!(f, "#{s}"),
            VALetter::Sigma(s, _) => write!(f, "#{s}^-1"),
            VALetter::Tau(s) => write!(f, "t:#{s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{preset, PresetFamily};

    fn a2() -> (CoxeterSystem, RootSystem) {
        let sys = CoxeterSystem::new(preset(PresetFamily::A, 2).unwrap());
        let roots = sys.enumerate_roots(None).unwrap();
        (sys, roots)
    }

    #[test]
    fn projections() {
        let (sys, _) = a2();
        let word = VAWord(vec![VALetter::Tau(0), VALetter::Sigma(1, 1)]);
        assert_eq!(
            project(&sys, &word, PairKind::K),
            sys.element_of(&Word(vec![0]))
        );
        assert_eq!(
            project(&sys, &word, PairKind::P),
            sys.element_of(&Word(vec![0, 1]))
        );
        // the virtual image of a Coxeter word projects back to it either way
        let iota = VAWord(vec![VALetter::Tau(0), VALetter::Tau(1), VALetter::Tau(0)]);
        let w = sys.element_of(&Word(vec![0, 1, 0]));
        assert_eq!(project(&sys, &iota, PairKind::K), w);
        assert_eq!(project(&sys, &iota, PairKind::P), w);
    }

    #[test]
    fn normal_pair_k_examples() {
        let (sys, roots) = a2();
        let ctx = VaContext::new(&sys, &roots);

        let p = ctx
            .normal_pair(&VAWord(vec![VALetter::Sigma(0, 1)]), PairKind::K)
            .unwrap();
        assert!(sys.is_identity(&p.coxeter));
        assert_eq!(p.kernel.letters.len(), 1);
        let alpha_s = roots.index_of(&sys.simple_root(0)).unwrap();
        assert_eq!(p.kernel.letters[0], (alpha_s, 1));

        // tau_s sigma_t tau_s: the tau parts cancel and the root is
        // s(alpha_t) = alpha_s + alpha_t
        let w = VAWord(vec![
            VALetter::Tau(0),
            VALetter::Sigma(1, 1),
            VALetter::Tau(0),
        ]);
        let p = ctx.normal_pair(&w, PairKind::K).unwrap();
        assert!(sys.is_identity(&p.coxeter));
        let sum = sys.reflect(0, &sys.simple_root(1));
        assert_eq!(p.kernel.letters, vec![(roots.index_of(&sum).unwrap(), 1)]);

        let p = ctx
            .normal_pair(
                &VAWord(vec![VALetter::Tau(0), VALetter::Tau(0)]),
                PairKind::K,
            )
            .unwrap();
        assert!(p.kernel.is_empty());
        assert!(sys.is_identity(&p.coxeter));
    }

    #[test]
    fn normal_pair_p_examples() {
        let (sys, roots) = a2();
        let ctx = VaContext::new(&sys, &roots);
        // tau_s sigma_s is the kernel generator at alpha_s itself
        let w = VAWord(vec![VALetter::Tau(0), VALetter::Sigma(0, 1)]);
        let p = ctx.normal_pair(&w, PairKind::P).unwrap();
        assert!(sys.is_identity(&p.coxeter));
        let alpha_s = roots.index_of(&sys.simple_root(0)).unwrap();
        assert_eq!(p.kernel.letters, vec![(alpha_s, 1)]);

        // sigma_s alone: w = s, kernel (after the w^-1 conjugation) at alpha_s
        let p = ctx
            .normal_pair(&VAWord(vec![VALetter::Sigma(0, 1)]), PairKind::P)
            .unwrap();
        assert_eq!(p.coxeter, sys.element_of(&Word(vec![0])));
        assert_eq!(p.kernel.letters, vec![(alpha_s, 1)]);

        // inverse letter: sigma_s^-1 sigma_s must have empty kernel
        let p = ctx
            .normal_pair(
                &VAWord(vec![VALetter::Sigma(0, -1), VALetter::Sigma(0, 1)]),
                PairKind::P,
            )
            .unwrap();
        assert!(p.kernel.is_empty());
        assert!(sys.is_identity(&p.coxeter));
    }

    #[test]
    fn coxeter_part_matches_projection() {
        let (sys, roots) = a2();
        let ctx = VaContext::new(&sys, &roots);
        let word = VAWord(vec![
            VALetter::Sigma(0, 1),
            VALetter::Tau(1),
            VALetter::Sigma(1, -1),
            VALetter::Tau(0),
        ]);
        for kind in [PairKind::K, PairKind::P] {
            let p = ctx.normal_pair(&word, kind).unwrap();
            assert_eq!(p.coxeter, project(&sys, &word, kind));
        }
    }

    #[test]
    fn iota_words_have_empty_kernel() {
        let (sys, roots) = a2();
        let ctx = VaContext::new(&sys, &roots);
        let word = VAWord(vec![VALetter::Tau(0), VALetter::Tau(1), VALetter::Tau(0)]);
        for kind in [PairKind::K, PairKind::P] {
            let p = ctx.normal_pair(&word, kind).unwrap();
            assert!(p.kernel.is_empty());
            assert_eq!(p.coxeter, sys.element_of(&Word(vec![0, 1, 0])));
        }
    }

    #[test]
    fn action_on_kernel_words() {
        let (sys, roots) = a2();
        let ctx = VaContext::new(&sys, &roots);
        let alpha_s = roots.index_of(&sys.simple_root(0)).unwrap();
        let d = DeltaWord {
            letters: vec![(alpha_s, 1)],
        };
        assert_eq!(ctx.act_on_delta(&sys.identity(), &d).unwrap(), d);
        let s = sys.element_of(&Word(vec![0]));
        let image = ctx.act_on_delta(&s, &d).unwrap();
        let neg = roots.index_of(&sys.simple_root(0).neg()).unwrap();
        assert_eq!(image.letters, vec![(neg, 1)]);
    }

    #[test]
    fn action_is_functorial() {
        let (sys, roots) = a2();
        let ctx = VaContext::new(&sys, &roots);
        let en = sys.enumerate_group(100);
        let d = DeltaWord {
            letters: (0..roots.len()).map(|i| (i, 1)).collect(),
        };
        for u in &en.elements {
            for v in &en.elements {
                let uv = sys.mul(u, v);
                let lhs = ctx.act_on_delta(&uv, &d).unwrap();
                let rhs = ctx
                    .act_on_delta(u, &ctx.act_on_delta(v, &d).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn va3_resolution_small_labels() {
        // m = 2: commuting pair, r = t
        let free = CoxeterSystem::new(crate::graph::CoxeterGraph::parse("vertices s t\n").unwrap());
        let rel = va3_resolve(&free, 0, 1).unwrap();
        assert_eq!(rel.r, 1);
        assert_eq!(rel.lhs.0, vec![VALetter::Tau(0), VALetter::Sigma(1, 1)]);
        assert_eq!(rel.rhs.0, vec![VALetter::Sigma(1, 1), VALetter::Tau(0)]);

        // m = 3: r = s
        let (a2sys, _) = a2();
        let rel = va3_resolve(&a2sys, 0, 1).unwrap();
        assert_eq!(rel.r, 0);
        assert_eq!(
            rel.lhs.0,
            vec![VALetter::Tau(1), VALetter::Tau(0), VALetter::Sigma(1, 1)]
        );

        // m = 4: r = t
        let b2 = CoxeterSystem::new(preset(PresetFamily::B, 2).unwrap());
        let rel = va3_resolve(&b2, 0, 1).unwrap();
        assert_eq!(rel.r, 1);

        // infinite label refuses
        let inf = CoxeterSystem::new(
            crate::graph::CoxeterGraph::parse("vertices s t\nedge s t inf\n").unwrap(),
        );
        assert!(matches!(
            va3_resolve(&inf, 0, 1),
            Err(VaError::InfiniteLabel)
        ));
    }

    #[test]
    fn va3_sides_have_equal_pairs() {
        let (sys, roots) = a2();
        let ctx = VaContext::new(&sys, &roots);
        for (s, t) in [(0, 1), (1, 0)] {
            let rel = va3_resolve(&sys, s, t).unwrap();
            let lp = ctx.normal_pair(&rel.lhs, PairKind::K).unwrap();
            let rp = ctx.normal_pair(&rel.rhs, PairKind::K).unwrap();
            assert_eq!(lp, rp);
        }
    }

    #[test]
    fn component_splitting() {
        let sys = CoxeterSystem::new(crate::graph::CoxeterGraph::parse("vertices s u\n").unwrap());
        let word = VAWord(vec![
            VALetter::Sigma(0, 1),
            VALetter::Tau(1),
            VALetter::Sigma(0, 1),
        ]);
        let parts = split_components(&word, sys.graph());
        assert_eq!(parts.len(), 2);
        assert_eq!(
            parts[0].0,
            vec![VALetter::Sigma(0, 1), VALetter::Sigma(0, 1)]
        );
        assert_eq!(parts[1].0, vec![VALetter::Tau(1)]);

        // connected graph: a single part equal to the word
        let (a2sys, _) = a2();
        let w = VAWord(vec![VALetter::Sigma(0, 1), VALetter::Tau(1)]);
        let parts = split_components(&w, a2sys.graph());
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0], w);
    }

    #[test]
    fn va_free_reduction() {
        let w = VAWord(vec![VALetter::Tau(0), VALetter::Tau(0)]);
        assert!(free_reduce_va(&w).is_empty());
        let w = VAWord(vec![
            VALetter::Sigma(0, 1),
            VALetter::Sigma(0, -1),
            VALetter::Tau(1),
        ]);
        assert_eq!(free_reduce_va(&w).0, vec![VALetter::Tau(1)]);
        let w = VAWord(vec![
            VALetter::Sigma(0, 1),
            VALetter::Tau(1),
            VALetter::Tau(1),
            VALetter::Sigma(0, -1),
        ]);
        let r = free_reduce_va(&w);
        assert!(r.is_empty());
        assert_eq!(free_reduce_va(&r), r);
    }

    #[test]
    fn token_round_trip() {
        let (sys, _) = a2();
        let toks: Vec<String> = ["s1", "t:s2", "s2^-1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let w = parse_va_word(&sys, &toks).unwrap();
        assert_eq!(
            w.0,
            vec![
                VALetter::Sigma(0, 1),
                VALetter::Tau(1),
                VALetter::Sigma(1, -1)
            ]
        );
        assert_eq!(format_va_word(&sys, &w), "s1 t:s2 s2^-1");
        assert!(parse_va_word(&sys, &["t:zz".to_string()]).is_err());
    }
}

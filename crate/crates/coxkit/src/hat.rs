//! The Coxeter graph on the root system, and the filtration ordering of
//! positive roots.
//!
//! Vertices are the enumerated roots. A pair `(beta, gamma)` carries the label
//! `m_st` whenever some group element maps the simple pair `(alpha_s, alpha_t)`
//! onto it, and infinity otherwise; in particular every root is joined to its
//! opposite by an infinity edge. For spherical graphs the full group sweep
//! decides every label exactly. In truncated mode (depth-bounded sweep) a pair
//! that was never witnessed is recorded as unknown rather than asserted.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::coxeter::{CoxeterSystem, RootSystem};
use crate::graph::{CoxeterGraph, Label};

#[derive(Debug, Error)]
pub enum HatError {
    #[error("conflicting labels witnessed for a root pair: {0} vs {1}")]
    LabelConflict(Label, Label),
    #[error("depth bound required for a non-spherical graph")]
    DepthRequired,
    #[error("operation requires an exact (non-truncated) root graph")]
    Truncated,
    #[error("enumeration exceeded bound {0}")]
    BoundExceeded(usize),
    #[error("filtration step found no adjacent unused root (graph disconnected?)")]
    Disconnected,
    #[error("filtration does not cover the positive roots")]
    IncompleteFiltration,
}

/// The root graph of a Coxeter system.
#[derive(Debug)]
pub struct HatGraph {
    base: CoxeterGraph,
    graph: CoxeterGraph,
    roots: RootSystem,
    truncated: bool,
    /// Pairs (by root index, i < j) whose label was never witnessed in a
    /// truncated sweep: neither a finite value nor infinity is asserted.
    unknown_pairs: BTreeSet<(usize, usize)>,
}

impl HatGraph {
    pub fn base(&self) -> &CoxeterGraph {
        &self.base
    }

    /// The root graph itself; vertices are named by exact coordinate vectors,
    /// in the canonical root order.
    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn unknown_pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.unknown_pairs
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.graph.label(i, j)
    }
}

/// Build the root graph by sweeping group elements over ordered simple pairs.
///
/// Exact mode (spherical graph, no depth): the whole group is enumerated, so
/// unwitnessed pairs are genuinely infinity. Truncated mode sweeps elements of
/// length at most `depth` and records unwitnessed pairs as unknown. `bound`
/// caps the group enumeration either way.
pub fn build_hat(
    sys: &CoxeterSystem,
    depth: Option<usize>,
    bound: usize,
) -> Result<HatGraph, HatError> {
    let exact = sys.is_spherical() && depth.is_none();
    if !sys.is_spherical() && depth.is_none() {
        return Err(HatError::DepthRequired);
    }
    let roots = sys
        .enumerate_roots(depth)
        .map_err(|_| HatError::DepthRequired)?;
    let en = match depth {
        None => sys.enumerate_group(bound),
        Some(d) => sys.enumerate_up_to_length(d, bound),
    };
    if en.truncated {
        return Err(HatError::BoundExceeded(bound));
    }

    let n = roots.len();
    let mut witnessed: BTreeMap<(usize, usize), Label> = BTreeMap::new();
    for w in &en.elements {
        let images: Vec<usize> = (0..sys.rank())
            .map(|s| {
                roots
                    .index_of(&sys.image_of_simple(w, s))
                    .expect("image of a simple root under a swept element is enumerated")
            })
            .collect();
        for s in 0..sys.rank() {
            for t in 0..sys.rank() {
                if s == t {
                    continue;
                }
                let (mut i, mut j) = (images[s], images[t]);
                if i > j {
                    std::mem::swap(&mut i, &mut j);
                }
                let label = sys.graph().label(s, t);
                if let Some(prev) = witnessed.insert((i, j), label) {
                    if prev != label {
                        return Err(HatError::LabelConflict(prev, label));
                    }
                }
            }
        }
    }

    // opposite pairs always carry infinity; a witnessed finite label there
    // would contradict the bilinear form
    let mut unknown = BTreeSet::new();
    let mut edges: Vec<(String, String, Label)> = Vec::new();
    let names: Vec<String> = roots.roots().iter().map(|r| r.to_string()).collect();
    {
        let distinct: BTreeSet<&String> = names.iter().collect();
        assert_eq!(distinct.len(), names.len(), "root names must be unique");
    }
    for i in 0..n {
        for j in i + 1..n {
            let opposite = roots.negation_of(i) == j;
            let label = match witnessed.get(&(i, j)) {
                Some(l) => {
                    if opposite {
                        debug_assert_eq!(*l, Label::Infinity);
                    }
                    *l
                }
                None if opposite || exact => Label::Infinity,
                None => {
                    unknown.insert((i, j));
                    Label::Infinity
                }
            };
            edges.push((names[i].clone(), names[j].clone(), label));
        }
    }
    let graph = CoxeterGraph::new(names, &edges).expect("root names are distinct");
    Ok(HatGraph {
        base: sys.graph().clone(),
        graph,
        roots,
        truncated: !exact,
        unknown_pairs: unknown,
    })
}

/// A total order on positive roots whose symmetric prefixes induce connected,
/// infinity-connected subgraphs of the root graph.
#[derive(Debug, Clone)]
pub struct Filtration {
    /// Positive-root indices (into the hat graph's root system), in order.
    pub order: Vec<usize>,
}

impl Filtration {
    /// The prefix set `X_i = {±beta_1, ..., ±beta_i}` as root indices.
    pub fn prefix(&self, hat: &HatGraph, i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * i);
        for &r in self.order.iter().take(i) {
            out.push(r);
            out.push(hat.roots.negation_of(r));
        }
        out.sort_unstable();
        out
    }
}

/// Greedy filtration construction.
///
/// Starts from the least positive root in canonical order; each step adjoins
/// the least-indexed positive root adjacent (itself or its negative) to
/// the current prefix. Every prefix is then re-verified connected and
/// infinity-connected; a verification failure signals an implementation bug,
/// not a property of the input.
pub fn filtration_order(hat: &HatGraph) -> Result<Filtration, HatError> {
    if hat.truncated {
        return Err(HatError::Truncated);
    }
    let positive = hat.roots.positive();
    let mut order: Vec<usize> = Vec::with_capacity(positive.len());
    let mut in_prefix: BTreeSet<usize> = BTreeSet::new();
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    if let Some(&first) = positive.first() {
        order.push(first);
        chosen.insert(first);
        in_prefix.insert(first);
        in_prefix.insert(hat.roots.negation_of(first));
    }
    while order.len() < positive.len() {
        let next = positive
            .iter()
            .copied()
            .filter(|r| !chosen.contains(r))
            .find(|&r| {
                let neg = hat.roots.negation_of(r);
                in_prefix
                    .iter()
                    .any(|&x| hat.label(r, x).is_edge() || hat.label(neg, x).is_edge())
            })
            .ok_or(HatError::Disconnected)?;
        order.push(next);
        chosen.insert(next);
        in_prefix.insert(next);
        in_prefix.insert(hat.roots.negation_of(next));
    }
    let filtration = Filtration { order };
    let report = verify_filtration(hat, &filtration)?;
    assert!(
        report.all_pass(),
        "internal error: greedy filtration failed verification"
    );
    Ok(filtration)
}

/// Per-prefix verification results.
#[derive(Debug, Clone)]
pub struct FiltrationReport {
    /// `(connected, infty_connected)` for each prefix `X_1, ..., X_k`.
    pub prefixes: Vec<(bool, bool)>,
}

impl FiltrationReport {
    pub fn all_pass(&self) -> bool {
        self.prefixes.iter().all(|&(c, i)| c && i)
    }

    pub fn failures(&self) -> Vec<usize> {
        self.prefixes
            .iter()
            .enumerate()
            .filter(|(_, &(c, i))| !(c && i))
            .map(|(k, _)| k + 1)
            .collect()
    }
}

/// Independent re-check: every prefix-induced subgraph of the root graph must
/// be connected and infinity-connected.
pub fn verify_filtration(hat: &HatGraph, f: &Filtration) -> Result<FiltrationReport, HatError> {
    let positive = hat.roots.positive();
    let covered: BTreeSet<usize> = f.order.iter().copied().collect();
    if covered.len() != f.order.len() || !positive.iter().all(|p| covered.contains(p)) {
        return Err(HatError::IncompleteFiltration);
    }
    let mut prefixes = Vec::with_capacity(f.order.len());
    for i in 1..=f.order.len() {
        let subset = f.prefix(hat, i);
        prefixes.push((
            hat.graph.connected_on(&subset),
            hat.graph.infty_connected_on(&subset),
        ));
    }
    Ok(FiltrationReport { prefixes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;
    use crate::graph::{preset, CoxeterGraph, PresetFamily};

    fn hat_for(fam: PresetFamily, p: u64) -> HatGraph {
        let sys = CoxeterSystem::new(preset(fam, p).unwrap());
        build_hat(&sys, None, 20_000).unwrap()
    }

    #[test]
    fn a1_hat_is_single_infinity_edge() {
        let sys = CoxeterSystem::new(preset(PresetFamily::A, 1).unwrap());
        let hat = build_hat(&sys, None, 100).unwrap();
        assert_eq!(hat.roots().len(), 2);
        assert_eq!(hat.label(0, 1), Label::Infinity);
        assert!(!hat.truncated());
        assert!(hat.unknown_pairs().is_empty());
    }

    #[test]
    fn a2_hat_label_census() {
        let hat = hat_for(PresetFamily::A, 2);
        assert_eq!(hat.roots().len(), 6);
        let mut threes = 0;
        let mut infs = 0;
        let mut twos = 0;
        for i in 0..6 {
            for j in i + 1..6 {
                match hat.label(i, j) {
                    Label::Finite(3) => threes += 1,
                    Label::Infinity => infs += 1,
                    Label::Finite(2) => twos += 1,
                    other => panic!("unexpected label {other}"),
                }
            }
        }
        assert_eq!((threes, infs, twos), (6, 9, 0));
        // every opposite pair carries infinity
        for i in 0..6 {
            let j = hat.roots().negation_of(i);
            assert_eq!(hat.label(i, j), Label::Infinity);
        }
    }

    #[test]
    fn hat_connectivity_on_presets() {
        for (fam, p) in [
            (PresetFamily::A, 1),
            (PresetFamily::A, 2),
            (PresetFamily::B, 2),
            (PresetFamily::A, 3),
        ] {
            let hat = hat_for(fam, p);
            let all: Vec<usize> = (0..hat.roots().len()).collect();
            assert!(hat.graph().connected_on(&all), "{fam:?} {p}");
            assert!(hat.graph().infty_connected_on(&all), "{fam:?} {p}");
        }
    }

    #[test]
    fn sign_argument_constraint() {
        // if a pair label is finite and >= 3, the opposite-signed pair is
        // infinity
        for (fam, p) in [(PresetFamily::A, 2), (PresetFamily::B, 2)] {
            let hat = hat_for(fam, p);
            let n = hat.roots().len();
            for i in 0..n {
                for j in 0..n {
                    if i == j || hat.roots().negation_of(i) == j {
                        continue;
                    }
                    if let Label::Finite(m) = hat.label(i, j) {
                        if m >= 3 {
                            let ni = hat.roots().negation_of(i);
                            assert_eq!(hat.label(ni, j), Label::Infinity);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn truncated_mode_marks_unknowns() {
        let free = CoxeterSystem::new(CoxeterGraph::parse("vertices s t\nedge s t inf\n").unwrap());
        assert!(matches!(
            build_hat(&free, None, 100),
            Err(HatError::DepthRequired)
        ));
        let hat = build_hat(&free, Some(2), 1000).unwrap();
        assert!(hat.truncated());
        // opposite pairs are still asserted infinity and never unknown
        for i in 0..hat.roots().len() {
            let j = hat.roots().negation_of(i);
            let key = if i < j { (i, j) } else { (j, i) };
            assert!(!hat.unknown_pairs().contains(&key));
            assert_eq!(hat.label(i, j), Label::Infinity);
        }
    }

    #[test]
    fn explicit_depth_forces_truncated_mode() {
        // a spherical graph swept to depth 1: the sweep covers id, s, t only,
        // so several pairs stay unwitnessed even though the root set is full
        let sys = CoxeterSystem::new(preset(PresetFamily::A, 2).unwrap());
        let hat = build_hat(&sys, Some(1), 100).unwrap();
        assert!(hat.truncated());
        assert_eq!(hat.roots().len(), 6);
        assert!(!hat.unknown_pairs().is_empty());
        // witnessed simple pair keeps its finite label
        let rs = hat.roots();
        let a = rs.index_of(&sys.simple_root(0)).unwrap();
        let b = rs.index_of(&sys.simple_root(1)).unwrap();
        assert_eq!(hat.label(a, b), Label::Finite(3));
        // unknown pairs never include an opposite pair
        for &(i, j) in hat.unknown_pairs() {
            assert_ne!(rs.negation_of(i), j);
        }
        // and the filtration refuses truncated input
        assert!(matches!(filtration_order(&hat), Err(HatError::Truncated)));
    }

    #[test]
    fn filtration_small_presets() {
        for (fam, p) in [
            (PresetFamily::A, 1),
            (PresetFamily::A, 2),
            (PresetFamily::B, 2),
        ] {
            let hat = hat_for(fam, p);
            let f = filtration_order(&hat).unwrap();
            assert_eq!(f.order.len(), hat.roots().positive().len());
            let report = verify_filtration(&hat, &f).unwrap();
            assert!(report.all_pass());
        }
    }

    #[test]
    fn adversarial_order_rejected() {
        // two commuting A1 components: the root graph splits into two
        // infinity edges, so any two-root prefix mixing components fails
        let sys = CoxeterSystem::new(CoxeterGraph::parse("vertices s t\n").unwrap());
        let hat = build_hat(&sys, None, 100).unwrap();
        let positive = hat.roots().positive();
        assert_eq!(positive.len(), 2);
        let f = Filtration {
            order: positive.clone(),
        };
        let report = verify_filtration(&hat, &f).unwrap();
        assert!(!report.all_pass());
        assert_eq!(report.failures(), vec![2]);
        // and the greedy construction refuses outright
        assert!(matches!(
            filtration_order(&hat),
            Err(HatError::Disconnected)
        ));
    }

    #[test]
    fn empty_filtration_passes() {
        let sys = CoxeterSystem::new(CoxeterGraph::parse("vertices\n").unwrap());
        let hat = build_hat(&sys, None, 10).unwrap();
        let f = filtration_order(&hat).unwrap();
        assert!(f.order.is_empty());
        let report = verify_filtration(&hat, &f).unwrap();
        assert!(report.all_pass());
    }
}

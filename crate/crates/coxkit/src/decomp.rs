//! Brute-force direct-product analysis of small finite Coxeter groups:
//! multiplication tables, normal subgroups via conjugacy-class closures,
//! Remak decompositions, and the decomposability classification check.
//!
//! The lab operates on the Coxeter group only; the corresponding questions
//! for Artin and virtual Artin groups concern infinite groups and are out of
//! reach for a finite computation.

use std::collections::{BTreeSet, HashMap};

use serde_json::json;
use thiserror::Error;

use crate::coxeter::{CoxeterSystem, EngineError, GroupEl};
use crate::graph::CoxeterGraph;

#[derive(Debug, Error)]
pub enum DecompError {
    #[error("enumeration truncated at bound {0}")]
    Truncated(usize),
    #[error("group of order {0} exceeds the subgroup-search guard {1}")]
    TooLarge(usize, usize),
    #[error("graph must be connected and spherical for the classification check")]
    NotSphericalConnected,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Size guard for the normal-subgroup search.
pub const REMAK_GUARD: usize = 10_000;

/// Complete multiplication table of a finite Coxeter group.
///
/// Element 0 is the identity; the rest follow in canonical matrix order.
pub struct FiniteGroupTable {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    elements: Vec<GroupEl>,
    gen_indices: Vec<u32>,
}

impl std::fmt::Debug for FiniteGroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroupTable")
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> &[GroupEl] {
        &self.elements
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gen_indices
    }

    pub fn index_of(&self, el: &GroupEl) -> Option<u32> {
        self.elements.iter().position(|e| e == el).map(|i| i as u32)
    }

    /// Brute-force commutation filter.
    pub fn centralizer(&self, subset: &[u32]) -> Vec<u32> {
        (0..self.order as u32)
            .filter(|&g| subset.iter().all(|&e| self.mul(g, e) == self.mul(e, g)))
            .collect()
    }

    pub fn center(&self) -> Vec<u32> {
        let all: Vec<u32> = (0..self.order as u32).collect();
        self.centralizer(&all)
    }

    /// Conjugacy classes, ordered by least element index.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut orbit = vec![x];
            seen[x as usize] = true;
            let mut queue = vec![x];
            while let Some(y) = queue.pop() {
                for &s in &self.gen_indices {
                    let z = self.conj(s, y);
                    if !seen[z as usize] {
                        seen[z as usize] = true;
                        orbit.push(z);
                        queue.push(z);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        classes
    }

    /// Subgroup generated by a set, as a sorted element list. When a `cap`
    /// subgroup is supplied and the closure reaches its size, the cap is
    /// returned directly.
    fn closure_capped(&self, gens: &[u32], cap: Option<&[u32]>) -> Vec<u32> {
        let mut bits = vec![false; self.order];
        bits[0] = true;
        let mut members = vec![0u32];
        let mut queue: Vec<u32> = Vec::new();
        for &g in gens {
            if !bits[g as usize] {
                bits[g as usize] = true;
                members.push(g);
                queue.push(g);
            }
        }
        while let Some(a) = queue.pop() {
            if let Some(cap) = cap {
                if members.len() == cap.len() {
                    return cap.to_vec();
                }
            }
            let mut fresh = Vec::new();
            for &b in &members {
                for c in [self.mul(a, b), self.mul(b, a)] {
                    if !bits[c as usize] {
                        bits[c as usize] = true;
                        fresh.push(c);
                    }
                }
            }
            for c in fresh {
                members.push(c);
                queue.push(c);
            }
        }
        members.sort_unstable();
        members
    }

    /// Subgroup generated by a set, as a sorted element list.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        self.closure_capped(gens, None)
    }

    /// All normal subgroups: closures of conjugacy-class unions, generated by
    /// closing the single-class closures under join.
    pub fn normal_subgroups(&self) -> Vec<Vec<u32>> {
        let whole: Vec<u32> = (0..self.order as u32).collect();
        let mut out = normal_subgroups_within(self, &whole);
        out.sort_by_key(|n| (n.len(), n.clone()));
        out
    }
}

fn is_sorted_subset(a: &[u32], b: &[u32]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Less => {}
            }
        }
        return false;
    }
    true
}

/// Build the table: products are realized by exact matrix arithmetic during
/// enumeration, then composed by word-following on the generator tables.
#[allow(clippy::mutable_key_type)] // matrix keys; the context cache is not part of Eq
pub fn build_table(sys: &CoxeterSystem, bound: usize) -> Result<FiniteGroupTable, DecompError> {
    let en = sys.enumerate_group(bound);
    if en.truncated {
        return Err(DecompError::Truncated(bound));
    }
    let mut elements = en.elements;
    let id_pos = elements
        .iter()
        .position(|e| sys.is_identity(e))
        .expect("enumeration contains the identity");
    elements.swap(0, id_pos);
    elements[1..].sort();

    let order = elements.len();
    let index: HashMap<&GroupEl, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e, i as u32))
        .collect();
    let rank = sys.rank();
    let mut gen_right = vec![0u32; order * rank.max(1)];
    for (i, el) in elements.iter().enumerate() {
        for s in 0..rank {
            let child = sys.right_mul_gen(el, s);
            gen_right[i * rank + s] = *index
                .get(&child)
                .expect("right multiple of a group element is enumerated");
        }
    }
    let words: Vec<Vec<usize>> = elements.iter().map(|e| sys.reduced_word(e).0).collect();
    let follow = |start: u32, word: &[usize]| -> u32 {
        word.iter()
            .fold(start, |acc, &s| gen_right[acc as usize * rank + s])
    };
    let mut mult = vec![0u32; order * order];
    for i in 0..order as u32 {
        for j in 0..order {
            mult[i as usize * order + j] = follow(i, &words[j]);
        }
    }
    let mut inv = vec![0u32; order];
    for (i, w) in words.iter().enumerate() {
        let rev: Vec<usize> = w.iter().rev().copied().collect();
        inv[i] = follow(0, &rev);
    }
    let gen_indices = (0..rank)
        .map(|s| {
            *index
                .get(&sys.generator(s))
                .expect("generators are enumerated")
        })
        .collect();
    Ok(FiniteGroupTable {
        order,
        mult,
        inv,
        elements,
        gen_indices,
    })
}

/// A direct decomposition into subgroups, as sorted element-index lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DirectDecomposition {
    pub factors: Vec<Vec<u32>>,
}

impl DirectDecomposition {
    pub fn factor_orders(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = self.factors.iter().map(|f| f.len()).collect();
        orders.sort_unstable();
        orders
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let bs: BTreeSet<u32> = b.iter().copied().collect();
    a.iter().copied().filter(|x| bs.contains(x)).collect()
}

/// Conjugacy classes of `x` within the subgroup `h` (orbit under
/// conjugation by members of `h`; for the whole group the generator orbits
/// suffice).
fn classes_within(table: &FiniteGroupTable, h: &[u32]) -> Vec<Vec<u32>> {
    if h.len() == table.order() {
        return table.conjugacy_classes();
    }
    let hset: BTreeSet<u32> = h.iter().copied().collect();
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    let mut classes = Vec::new();
    for &x in h {
        if seen.contains(&x) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        orbit.insert(x);
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            for &g in &hset {
                let z = table.conj(g, y);
                if orbit.insert(z) {
                    queue.push(z);
                }
            }
        }
        seen.extend(orbit.iter().copied());
        classes.push(orbit.into_iter().collect());
    }
    classes
}

/// Normal subgroups of the subgroup `h`: single-class closures, then a
/// worklist join saturation. Containment pairs are skipped (their join is the
/// larger subgroup, already present).
fn normal_subgroups_within(table: &FiniteGroupTable, h: &[u32]) -> Vec<Vec<u32>> {
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
    found.insert(vec![0]);
    for class in classes_within(table, h) {
        found.insert(table.closure_capped(&class, Some(h)));
    }
    let mut queue: Vec<Vec<u32>> = found.iter().cloned().collect();
    while let Some(a) = queue.pop() {
        let snapshot: Vec<Vec<u32>> = found.iter().cloned().collect();
        for b in snapshot {
            if is_sorted_subset(&a, &b) || is_sorted_subset(&b, &a) {
                continue;
            }
            let mut union = a.clone();
            union.extend_from_slice(&b);
            // joins of normal subgroups of h remain normal in h
            let joined = table.closure_capped(&union, Some(h));
            if found.insert(joined.clone()) {
                queue.push(joined);
            }
        }
    }
    found.into_iter().collect()
}

/// Binary direct splits of the subgroup `h`: unordered pairs of nontrivial
/// normal subgroups with trivial intersection whose orders multiply to `|h|`.
fn direct_splits(table: &FiniteGroupTable, h: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let normals = normal_subgroups_within(table, h);
    let mut out = Vec::new();
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            let (a, b) = (&normals[i], &normals[j]);
            if a.len() <= 1 || b.len() <= 1 {
                continue;
            }
            if a.len() * b.len() != h.len() {
                continue;
            }
            if intersect_sorted(a, b).len() != 1 {
                continue;
            }
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

/// All Remak decompositions of the subgroup: recursive binary splitting,
/// deduplicated by factor sets. A single-factor answer means indecomposable.
fn remak_within(
    table: &FiniteGroupTable,
    h: &[u32],
    memo: &mut HashMap<Vec<u32>, Vec<Vec<Vec<u32>>>>,
) -> Vec<Vec<Vec<u32>>> {
    if let Some(hit) = memo.get(h) {
        return hit.clone();
    }
    let splits = direct_splits(table, h);
    let result: Vec<Vec<Vec<u32>>> = if splits.is_empty() {
        vec![vec![h.to_vec()]]
    } else {
        let mut set: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
        for (a, b) in splits {
            for da in remak_within(table, &a, memo) {
                for db in remak_within(table, &b, memo) {
                    let mut combined = da.clone();
                    combined.extend(db.iter().cloned());
                    combined.sort();
                    set.insert(combined);
                }
            }
        }
        set.into_iter().collect()
    };
    memo.insert(h.to_vec(), result.clone());
    result
}

/// All Remak decompositions of the whole table.
pub fn remak_decompose(table: &FiniteGroupTable) -> Result<Vec<DirectDecomposition>, DecompError> {
    if table.order() > REMAK_GUARD {
        return Err(DecompError::TooLarge(table.order(), REMAK_GUARD));
    }
    let whole: Vec<u32> = (0..table.order() as u32).collect();
    let mut memo = HashMap::new();
    let decomps = remak_within(table, &whole, &mut memo);
    Ok(decomps
        .into_iter()
        .map(|factors| DirectDecomposition { factors })
        .collect())
}

/// Independent verification of a claimed direct decomposition, separate from
/// the search: normality, pairwise trivial intersection, elementwise
/// commutation, and full product.
pub fn verify_decomposition(table: &FiniteGroupTable, d: &DirectDecomposition) -> bool {
    let n = table.order();
    for f in &d.factors {
        let fset: BTreeSet<u32> = f.iter().copied().collect();
        for g in 0..n as u32 {
            if !f.iter().all(|&x| fset.contains(&table.conj(g, x))) {
                return false;
            }
        }
    }
    for i in 0..d.factors.len() {
        for j in i + 1..d.factors.len() {
            if intersect_sorted(&d.factors[i], &d.factors[j]).len() != 1 {
                return false;
            }
            let (a, b) = (&d.factors[i], &d.factors[j]);
            if !a
                .iter()
                .all(|&x| b.iter().all(|&y| table.mul(x, y) == table.mul(y, x)))
            {
                return false;
            }
        }
    }
    let product: usize = d.factors.iter().map(|f| f.len()).product();
    if product != n {
        return false;
    }
    let union: Vec<u32> = d.factors.iter().flatten().copied().collect();
    table.closure(&union).len() == n
}

/// Whether a catalog type name belongs to the decomposable classification
/// list.
pub fn classification_member(name: &str) -> bool {
    if name == "E7" || name == "H3" {
        return true;
    }
    if let Some(p) = name
        .strip_prefix("I2(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|r| r.parse::<u64>().ok())
    {
        return p >= 6 && p % 4 == 2;
    }
    if let Some(n) = name.strip_prefix('B').and_then(|r| r.parse::<u64>().ok()) {
        return n >= 3 && n % 2 == 1;
    }
    false
}

#[derive(Debug, Clone)]
pub struct DecompReport {
    pub name: String,
    pub order: usize,
    pub center_order: usize,
    pub decomposable: bool,
    /// Factor orders of the first Remak decomposition, sorted.
    pub factors: Vec<usize>,
    pub decomposition_count: usize,
    pub consistent_with_classification: bool,
}

impl DecompReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "order": self.order,
            "center_order": self.center_order,
            "decomposable": self.decomposable,
            "factors": self.factors,
            "decomposition_count": self.decomposition_count,
            "consistent_with_classification": self.consistent_with_classification,
        })
    }
}

/// Compare the brute-force decomposability verdict against the
/// classification, and check the center appears as a factor when
/// decomposable.
pub fn verify_decomp_classification(
    graph: &CoxeterGraph,
    bound: usize,
) -> Result<DecompReport, DecompError> {
    let report = graph.analyze();
    if report.components.len() != 1 {
        return Err(DecompError::NotSphericalConnected);
    }
    let name = report.components[0]
        .spherical
        .clone()
        .ok_or(DecompError::NotSphericalConnected)?;
    let sys = CoxeterSystem::new(graph.clone());
    let table = build_table(&sys, bound)?;
    let decomps = remak_decompose(&table)?;
    let decomposable = decomps.iter().any(|d| d.factors.len() > 1);
    let center: Vec<u32> = table.center();
    let member = classification_member(&name);

    let mut consistent = decomposable == member;
    if decomposable {
        // one factor must be the center, which is generated by the longest
        // element and has order 2
        let center_sorted: Vec<u32> = {
            let mut c = center.clone();
            c.sort_unstable();
            c
        };
        let all_have_center_factor = decomps.iter().all(|d| d.factors.contains(&center_sorted));
        consistent = consistent && center.len() == 2 && all_have_center_factor;
        let (w0, _) = sys.longest_element()?;
        let w0_idx = table.index_of(&w0).expect("w0 is in the table");
        consistent = consistent && center_sorted.contains(&w0_idx);
        // Krull-Remak-Schmidt shadow: every decomposition has the same
        // multiset of factor orders
        let orders = decomps[0].factor_orders();
        consistent = consistent && decomps.iter().all(|d| d.factor_orders() == orders);
    }
    Ok(DecompReport {
        name,
        order: table.order(),
        center_order: center.len(),
        decomposable,
        factors: decomps[0].factor_orders(),
        decomposition_count: decomps.len(),
        consistent_with_classification: consistent,
    })
}

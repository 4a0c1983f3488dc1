//! Independent oracles used by the integration suites: permutation models of
//! the small reflection groups and explicit root-system models. These never
//! touch the exact-matrix machinery they are used to check.

// each integration target compiles this module separately and uses a subset
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

/// Composition of permutations given as images: `(p * q)(i) = p[q[i]]`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

pub struct OracleGroup {
    pub elements: Vec<Vec<usize>>,
    /// Word length over the given generators, by BFS distance.
    pub lengths: HashMap<Vec<usize>, usize>,
}

impl OracleGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn max_length(&self) -> usize {
        self.lengths.values().copied().max().unwrap_or(0)
    }
}

/// Breadth-first closure of the identity under right multiplication.
pub fn bfs_group(gens: &[Vec<usize>]) -> OracleGroup {
    let n = gens.first().map(|g| g.len()).unwrap_or(0);
    let id: Vec<usize> = (0..n).collect();
    let mut lengths = HashMap::new();
    lengths.insert(id.clone(), 0);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::new();
    queue.push_back(id);
    while let Some(el) = queue.pop_front() {
        let l = lengths[&el];
        for g in gens {
            let child = compose(&el, g);
            if !lengths.contains_key(&child) {
                lengths.insert(child.clone(), l + 1);
                elements.push(child.clone());
                queue.push_back(child);
            }
        }
    }
    OracleGroup { elements, lengths }
}

/// Adjacent transpositions of `{0..n-1}`: the symmetric-group model of the
/// A-family.
pub fn symmetric_gens(n: usize) -> Vec<Vec<usize>> {
    (0..n - 1)
        .map(|i| {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(i, i + 1);
            p
        })
        .collect()
}

/// Dihedral group of order `2m` as permutations of `Z_m`: two reflections
/// `x -> -x` and `x -> 1-x`.
pub fn dihedral_gens(m: usize) -> Vec<Vec<usize>> {
    let s: Vec<usize> = (0..m).map(|x| (m - x) % m).collect();
    let t: Vec<usize> = (0..m).map(|x| (1 + m - x) % m).collect();
    vec![s, t]
}

/// Signed permutations of `n` coordinates as permutations of `2n` symbols
/// (`i` is `e_{i+1}`, `n+i` is `-e_{i+1}`): the hyperoctahedral model of the
/// B-family, with the sign flip on the first coordinate listed first to match
/// the preset's labeling.
pub fn signed_perm_gens(n: usize) -> Vec<Vec<usize>> {
    let mut gens = Vec::new();
    let mut flip: Vec<usize> = (0..2 * n).collect();
    flip.swap(0, n);
    gens.push(flip);
    for i in 0..n - 1 {
        let mut p: Vec<usize> = (0..2 * n).collect();
        p.swap(i, i + 1);
        p.swap(n + i, n + i + 1);
        gens.push(p);
    }
    gens
}

/// The `e_i - e_j` model of the A-family root system; returns the distinct
/// root vectors.
pub fn a_family_roots(n: usize) -> BTreeSet<Vec<i64>> {
    let dim = n + 1;
    let mut out = BTreeSet::new();
    for i in 0..dim {
        for j in 0..dim {
            if i == j {
                continue;
            }
            let mut v = vec![0i64; dim];
            v[i] = 1;
            v[j] = -1;
            out.insert(v);
        }
    }
    out
}

/// The `±e_i, ±e_i ± e_j` model of the B-family root system.
pub fn b_family_roots(n: usize) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for i in 0..n {
        for sign in [1i64, -1] {
            let mut v = vec![0i64; n];
            v[i] = sign;
            out.insert(v);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for si in [1i64, -1] {
                for sj in [1i64, -1] {
                    let mut v = vec![0i64; n];
                    v[i] = si;
                    v[j] = sj;
                    out.insert(v);
                }
            }
        }
    }
    out
}

/// Number of reflections in the dihedral group of order `2m`, each of which
/// carries a pair of opposite roots.
pub fn dihedral_root_count(m: usize) -> usize {
    let group = bfs_group(&dihedral_gens(m));
    // reflections are exactly the maps x -> (c - x) mod m
    let reflections = group
        .elements
        .iter()
        .filter(|p| {
            let c = p[0];
            (0..m).all(|x| p[x] == (c + m - x) % m)
        })
        .count();
    2 * reflections
}

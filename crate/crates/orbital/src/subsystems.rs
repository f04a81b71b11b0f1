//! Root subsystems cut out by singular chamber points.
//!
//! A chamber point `a` on a chamber wall annihilates a set of positive
//! roots `Phi(a) = { alpha : <a, alpha> = 0 }`.  Such sets are *full*
//! subsystems: intersections of the positive system with a rational
//! subspace.  This module computes annihilators exactly, enumerates the
//! maximal proper full subsystems of the classical families, and locates
//! a maximal subsystem containing a given annihilator.  Everything is
//! exact rational arithmetic; a brute-force enumeration over subsets is
//! provided for cross-checking at small rank.

use crate::rootsys::{
    inner, positive_roots, ChamberPoint, Family, LieType, Rat, Root, RootError,
};
use num_traits::Zero;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsystemError {
    #[error("point annihilates every positive root (it is the origin)")]
    ZeroPoint,
    #[error("maximal subsystem enumeration is not supported for family {0}")]
    Unsupported(Family),
    #[error("no enumerated maximal subsystem contains the annihilator")]
    NotCovered,
    #[error("brute-force enumeration limited to {limit} positive roots, {got} given")]
    TooLarge { limit: usize, got: usize },
    #[error(transparent)]
    Root(#[from] RootError),
}

/// The set of positive roots annihilated by a chamber point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorSet {
    pub lie_type: LieType,
    /// Annihilated positive roots, in the positive-system order.
    pub roots: Vec<Root>,
}

impl AnnihilatorSet {
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// How a maximal subsystem arises; doubles as a human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum Witness {
    /// All roots not involving coordinate `omitted` (B, C, BC, D).
    Deletion { omitted: usize },
    /// Roots `s_i e_i - s_j e_j` for a sign vector with `s_0 = +1`:
    /// an A-type subsystem through signed coordinate differences.
    SignSplit { signs: Vec<i64> },
    /// Family roots on the index block `i_block`, times a signed A-type
    /// system on `j_block` (signs are per `j_block` entry, first always
    /// `+1`; type A itself uses all `+1`).
    Partition { i_block: Vec<usize>, j_block: Vec<usize>, j_signs: Vec<i64> },
}

/// A maximal proper full subsystem with a witness for how it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemDescriptor {
    pub lie_type: LieType,
    pub roots: Vec<Root>,
    pub witness: Witness,
}

impl SubsystemDescriptor {
    pub fn contains(&self, ann: &AnnihilatorSet) -> bool {
        let set: BTreeSet<&Vec<i64>> = self.roots.iter().map(|r| &r.coords).collect();
        ann.roots.iter().all(|r| set.contains(&r.coords))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "root_system": self.lie_type.to_string(),
            "size": self.roots.len(),
            "roots": self.roots.iter().map(|r| r.coords.clone()).collect::<Vec<_>>(),
            "witness": self.witness,
        })
    }
}

/// Exact annihilator of a chamber point.  Errors if every positive root
/// is annihilated (the point is the origin of the chamber).
pub fn annihilator(a: &ChamberPoint) -> Result<AnnihilatorSet, SubsystemError> {
    let pos = positive_roots(a.lie_type);
    let mut roots = Vec::new();
    for r in &pos {
        if inner(a, r)?.is_zero() {
            roots.push(r.clone());
        }
    }
    if roots.len() == pos.len() {
        return Err(SubsystemError::ZeroPoint);
    }
    Ok(AnnihilatorSet { lie_type: a.lie_type, roots })
}

/// Exact rational row-echelon basis used for span membership tests.
#[derive(Debug, Clone, Default)]
struct SpanBasis {
    rows: Vec<Vec<Rat>>,
}

impl SpanBasis {
    fn insert(&mut self, v: &[i64]) {
        let mut w: Vec<Rat> = v.iter().map(|&c| Rat::from_integer(c)).collect();
        self.reduce(&mut w);
        if let Some(lead) = w.iter().position(|c| !c.is_zero()) {
            let p = w[lead];
            for c in w.iter_mut() {
                *c /= p;
            }
            self.rows.push(w);
            self.rows.sort_by_key(|r| r.iter().position(|c| !c.is_zero()));
        }
    }

    fn reduce(&self, w: &mut [Rat]) {
        for row in &self.rows {
            let lead = row.iter().position(|c| !c.is_zero()).unwrap();
            if !w[lead].is_zero() {
                let f = w[lead];
                for (wc, rc) in w.iter_mut().zip(row) {
                    let sub = *rc * f;
                    *wc -= sub;
                }
            }
        }
    }

    fn contains(&self, v: &[i64]) -> bool {
        let mut w: Vec<Rat> = v.iter().map(|&c| Rat::from_integer(c)).collect();
        self.reduce(&mut w);
        w.iter().all(|c| c.is_zero())
    }
}

/// The full closure of a root set: all positive roots lying in its
/// rational span.  A set equal to its full closure is a (full)
/// subsystem; full closures are automatically closed under root
/// addition, since the ambient root system is.
pub fn full_closure(ty: LieType, roots: &[Root]) -> Vec<Root> {
    let mut basis = SpanBasis::default();
    for r in roots {
        basis.insert(&r.coords);
    }
    positive_roots(ty)
        .into_iter()
        .filter(|r| basis.contains(&r.coords))
        .collect()
}

/// True if the set equals its full closure (and is therefore closed
/// under addition and reflection within its span).
pub fn is_subsystem(ty: LieType, roots: &[Root]) -> bool {
    let set: BTreeSet<&Vec<i64>> = roots.iter().map(|r| &r.coords).collect();
    let closure = full_closure(ty, roots);
    closure.len() == set.len() && closure.iter().all(|r| set.contains(&r.coords))
}

/// True if `roots` is a *maximal* proper full subsystem: it is full,
/// strictly smaller than the positive system, and adjoining any missing
/// positive root closes up to the whole system.
pub fn is_maximal(ty: LieType, roots: &[Root]) -> bool {
    let pos = positive_roots(ty);
    if roots.len() >= pos.len() || !is_subsystem(ty, roots) {
        return false;
    }
    let set: BTreeSet<&Vec<i64>> = roots.iter().map(|r| &r.coords).collect();
    for gamma in &pos {
        if set.contains(&gamma.coords) {
            continue;
        }
        let mut extended = roots.to_vec();
        extended.push(gamma.clone());
        if full_closure(ty, &extended).len() != pos.len() {
            return false;
        }
    }
    true
}

/// Enumerates every maximal proper full subsystem of a classical
/// positive system.  Candidates come from three mechanisms — coordinate
/// deletion, sign-split A-subsystems, and block partitions — and are
/// then deduplicated and filtered through [`is_maximal`], so the output
/// is correct even where the mechanisms overlap.
pub fn maximal_subsystems(ty: LieType) -> Result<Vec<SubsystemDescriptor>, SubsystemError> {
    if !ty.family.is_classical() {
        return Err(SubsystemError::Unsupported(ty.family));
    }
    let pos = positive_roots(ty);
    let n = ty.rank;
    let mut candidates: Vec<(Vec<Root>, Witness)> = Vec::new();

    let involves = |r: &Root, i: usize| r.coords[i] != 0;

    match ty.family {
        Family::A => {
            // Partitions of the n+1 ambient indices into two blocks; the
            // block containing index 0 is canonical.
            let m = n + 1;
            for mask in 1u32..(1 << m) {
                if mask & 1 == 0 {
                    continue;
                }
                let i_block: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
                let j_block: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) == 0).collect();
                if j_block.is_empty() {
                    continue;
                }
                let inside = |r: &Root| {
                    let support: Vec<usize> = (0..m).filter(|&i| involves(r, i)).collect();
                    support.iter().all(|i| i_block.contains(i))
                        || support.iter().all(|i| j_block.contains(i))
                };
                let roots: Vec<Root> = pos.iter().filter(|r| inside(r)).cloned().collect();
                let j_signs = vec![1; j_block.len()];
                candidates.push((roots, Witness::Partition { i_block, j_block, j_signs }));
            }
        }
        Family::B | Family::C | Family::BC | Family::D => {
            // Mechanism 1: delete one coordinate.
            for omitted in 0..n {
                let roots: Vec<Root> =
                    pos.iter().filter(|r| !involves(r, omitted)).cloned().collect();
                candidates.push((roots, Witness::Deletion { omitted }));
            }
            // Mechanism 2: sign-split A_{n-1} subsystems.  For a sign
            // vector s with s_0 = +1, take the pair roots e_i - e_j when
            // s_i = s_j and e_i + e_j when s_i != s_j.
            for mask in 0u32..(1 << (n - 1)) {
                let signs: Vec<i64> = std::iter::once(1)
                    .chain((0..n - 1).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }))
                    .collect();
                let mut roots = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        let mut c = vec![0; n];
                        c[i] = 1;
                        c[j] = if signs[i] == signs[j] { -1 } else { 1 };
                        roots.push(Root { coords: c, mult_class: crate::rootsys::MultClass::Pair });
                    }
                }
                candidates.push((roots, Witness::SignSplit { signs }));
            }
            // Mechanism 3: family roots on a block I, times a signed
            // A-type system on the complementary block J (|J| >= 2), the
            // sign of the first J entry normalized to +1.
            for mask in 1u32..(1 << n) {
                let i_block: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                let j_block: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
                if j_block.len() < 2 || i_block.is_empty() {
                    continue;
                }
                let block_roots: Vec<Root> = pos
                    .iter()
                    .filter(|r| (0..n).filter(|&i| involves(r, i)).all(|i| i_block.contains(&i)))
                    .cloned()
                    .collect();
                for smask in 0u32..(1 << (j_block.len() - 1)) {
                    let j_signs: Vec<i64> = std::iter::once(1)
                        .chain(
                            (0..j_block.len() - 1)
                                .map(|i| if smask & (1 << i) != 0 { -1 } else { 1 }),
                        )
                        .collect();
                    let mut roots = block_roots.clone();
                    for (a, &i) in j_block.iter().enumerate() {
                        for (bo, &j) in j_block.iter().enumerate().skip(a + 1) {
                            let mut c = vec![0; n];
                            c[i] = 1;
                            c[j] = if j_signs[a] == j_signs[bo] { -1 } else { 1 };
                            roots.push(Root {
                                coords: c,
                                mult_class: crate::rootsys::MultClass::Pair,
                            });
                        }
                    }
                    candidates.push((
                        roots,
                        Witness::Partition {
                            i_block: i_block.clone(),
                            j_block: j_block.clone(),
                            j_signs,
                        },
                    ));
                }
            }
        }
        _ => unreachable!(),
    }

    // Deduplicate by root set, keep the maximal ones.
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut out = Vec::new();
    for (mut roots, witness) in candidates {
        roots.sort_by(|a, b| a.coords.cmp(&b.coords));
        let key: Vec<Vec<i64>> = roots.iter().map(|r| r.coords.clone()).collect();
        if !seen.insert(key) {
            continue;
        }
        if is_maximal(ty, &roots) {
            out.push(SubsystemDescriptor { lie_type: ty, roots, witness });
        }
    }
    out.sort_by(|a, b| {
        let ka: Vec<&Vec<i64>> = a.roots.iter().map(|r| &r.coords).collect();
        let kb: Vec<&Vec<i64>> = b.roots.iter().map(|r| &r.coords).collect();
        ka.cmp(&kb)
    });
    Ok(out)
}

/// Finds an enumerated maximal subsystem containing the annihilator.
/// Every proper annihilator of a nonzero chamber point is contained in
/// one, because the annihilator lies inside the hyperplane orthogonal to
/// the point.
pub fn containing_maximal(
    ann: &AnnihilatorSet,
) -> Result<SubsystemDescriptor, SubsystemError> {
    let maximal = maximal_subsystems(ann.lie_type)?;
    maximal
        .into_iter()
        .find(|m| m.contains(ann))
        .ok_or(SubsystemError::NotCovered)
}

/// Brute-force enumeration of all maximal proper full subsystems by
/// taking full closures of every subset-span.  Exponential in the number
/// of positive roots; refuses systems with more than `limit` of them.
pub fn brute_force_maximal(ty: LieType) -> Result<Vec<Vec<Root>>, SubsystemError> {
    let pos = positive_roots(ty);
    let limit = 16;
    if pos.len() > limit {
        return Err(SubsystemError::TooLarge { limit, got: pos.len() });
    }
    let mut subsystems: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    // Mask 0 contributes the empty set, which is the unique maximal
    // proper full subsystem of the rank-one systems.
    for mask in 0u32..(1 << pos.len()) {
        let subset: Vec<Root> = pos
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, r)| r.clone())
            .collect();
        let closure = full_closure(ty, &subset);
        if closure.len() == pos.len() {
            continue;
        }
        subsystems.insert(closure.iter().map(|r| r.coords.clone()).collect());
    }
    let mut maximal = Vec::new();
    for key in &subsystems {
        let roots: Vec<Root> = pos.iter().filter(|r| key.contains(&r.coords)).cloned().collect();
        if is_maximal(ty, &roots) {
            maximal.push(roots);
        }
    }
    Ok(maximal)
}

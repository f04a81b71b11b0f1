//! Decay exponents and L2 thresholds for convolution powers of orbital
//! measures.
//!
//! The central quantity is the minimal weighted count `rho(G/K)`: over
//! all nonzero chamber points `lambda`, the minimum of the sum of root
//! multiplicities over the positive roots whose primitive direction
//! pairs with `lambda` at least `c_G * |lambda|_chamber`.  For the
//! classical families this minimum has a closed form; the oracle here
//! recomputes it by direct probing and the two are compared exactly by
//! the verification suite.
//!
//! On top of `rho` sit the integrability gates: the sharp-as-implemented
//! threshold `k_gate` above which the `k`-fold convolution power of any
//! (possibly singular) orbital measure is square-integrable, the
//! regular-point threshold, and the order of differentiability of the
//! density of the `k`-th power.

use crate::catalog::{CartanClass, SpaceDescriptor};
use crate::rootsys::{
    inner, positive_roots, weyl_elements, ChamberPoint, Family, LieType, MultClass, Rat,
    Root, RootError,
};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

/// Seed of the deterministic probe generator used by the verification
/// commands when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x0ddba11;

#[derive(Debug, Error, PartialEq)]
pub enum DecayError {
    #[error("the zero vector is not an admissible direction")]
    ZeroDirection,
    #[error("closed-form rho is only available for classical restricted systems, not {0}")]
    NoClosedForm(Family),
    #[error("minimal counts are tabulated only for exceptional systems, not {0}")]
    NotExceptional(LieType),
    #[error(
        "probe minimum {probe_min} differs from the closed form {formula} \
         (witness direction {witness:?})"
    )]
    OracleMismatch { probe_min: u64, formula: u64, witness: Vec<Rat> },
    #[error("probe {witness:?} yields weighted count {got} below the closed form {formula}")]
    ProbeBelowFormula { got: u64, formula: u64, witness: Vec<Rat> },
    #[error("differentiability order is defined for even k only, got {0}")]
    OddK(u32),
    #[error("no decay exponent rule covers {space} at half-power {j}")]
    NoExponentRule { space: String, j: u32 },
    #[error("the base point must be singular but is regular")]
    NotSingular,
    #[error("the base point is the origin")]
    ZeroBasePoint,
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Per-class counts of the positive roots whose primitive direction
/// pairs with a chamber point at least `c_g` times its chamber norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountProfile {
    pub c_g: Rat,
    pub counts: BTreeMap<MultClass, usize>,
}

impl CountProfile {
    pub fn count(&self, class: MultClass) -> usize {
        self.counts.get(&class).copied().unwrap_or(0)
    }
}

/// Default pairing threshold `c_G` per family, chosen so that the probe
/// minimum of the weighted count equals the closed-form `rho`:
/// 1 for the simply-laced classical families (fundamental coordinates),
/// 2/3 for B, C, BC (Euclidean coordinates), 1 for the exceptional ones.
pub fn default_cg(family: Family) -> Rat {
    match family {
        Family::B | Family::C | Family::BC => Rat::new(2, 3),
        _ => Rat::one(),
    }
}

/// Counts, per multiplicity class, the positive roots alpha with
/// `<lambda, primitive(alpha)> >= c_g * |lambda|_chamber`.  The pairing
/// uses the primitive vector on the ray of alpha, so `e_i` and `2 e_i`
/// are tested against the same direction.
pub fn u_counts(
    lambda: &ChamberPoint,
    c_g: Rat,
) -> Result<CountProfile, DecayError> {
    if lambda.coords.iter().all(|c| c.is_zero()) {
        return Err(DecayError::ZeroDirection);
    }
    let threshold = c_g * lambda.chamber_norm();
    let mut counts: BTreeMap<MultClass, usize> = BTreeMap::new();
    for root in positive_roots(lambda.lie_type) {
        let prim = Root { coords: root.primitive(), mult_class: root.mult_class };
        let pairing = inner(lambda, &prim)?;
        if pairing >= threshold {
            *counts.entry(root.mult_class).or_insert(0) += 1;
        }
    }
    Ok(CountProfile { c_g, counts })
}

/// Weighted count: multiplicities of the space applied to a profile.
pub fn weighted_count(space: &SpaceDescriptor, profile: &CountProfile) -> u64 {
    profile
        .counts
        .iter()
        .map(|(&class, &cnt)| space.mult_for_class(class) as u64 * cnt as u64)
        .sum()
}

/// Closed-form minimal weighted count for the classical families.
///
/// With multiplicity slots `(eta0, eta1, eta2)` as stored in the catalog:
/// * `A_r`: `eta0 * r`
/// * `B_n`, `C_n`, `BC_n` (n >= 2): `eta0 (2n - 3) + eta1 + eta2`
/// * `BC_1`: `eta1 + eta2`
/// * `D_n`: `2 eta0 (n - 1)`
pub fn rho_formula(space: &SpaceDescriptor) -> Result<u64, DecayError> {
    let [a, b, c] = space.mults.eta;
    let (a, b, c) = (a as u64, b as u64, c as u64);
    let n = space.lie_type.rank as u64;
    match space.lie_type.family {
        Family::A => Ok(a * n),
        Family::D => Ok(2 * a * (n - 1)),
        Family::B | Family::C => Ok(a * (2 * n - 3) + b + c),
        Family::BC => {
            if n == 1 {
                Ok(b + c)
            } else {
                Ok(a * (2 * n - 3) + b + c)
            }
        }
        f => Err(DecayError::NoClosedForm(f)),
    }
}

/// Precomputed pairing data of a root system: for each positive root,
/// its multiplicity class and the integer vector against which chamber
/// coordinates are paired (primitive Euclidean coordinates, or the
/// simple-root coefficients of the primitive root when the fundamental
/// basis is in use — those coefficients are integers for A and D).
fn pairing_table(ty: LieType, fundamental: bool) -> Vec<(MultClass, Vec<i64>)> {
    positive_roots(ty)
        .into_iter()
        .map(|root| {
            let prim = Root { coords: root.primitive(), mult_class: root.mult_class };
            let vec = if fundamental {
                crate::rootsys::root_in_simple_basis(ty, &prim)
                    .into_iter()
                    .map(|c| {
                        assert!(c.is_integer(), "simple-root coefficients must be integral");
                        c.to_integer()
                    })
                    .collect()
            } else {
                prim.coords
            };
            (root.mult_class, vec)
        })
        .collect()
}

/// Probe-set minimization of the weighted count for a classical space.
///
/// Probes: the "staircase" 0/1 combinations of fundamental directions
/// (unit vectors in the fundamental basis for A and D, partial-sum
/// vectors `(1,...,1,0,...,0)` and their subset sums in Euclidean
/// coordinates for B, C, BC), plus `random_probes` seeded random
/// rational chamber points.  Returns the minimum, and errors if any
/// probe undercuts the closed form or the minimum fails to reach it.
pub fn rho_oracle(
    space: &SpaceDescriptor,
    c_g: Rat,
    seed: u64,
    random_probes: usize,
) -> Result<u64, DecayError> {
    let formula = rho_formula(space)?;
    let ty = space.lie_type;
    let fundamental = matches!(ty.family, Family::A | Family::D);
    let rank = ty.rank;

    let mut probes: Vec<Vec<Rat>> = Vec::new();
    // All nonzero 0/1 combinations of the fundamental directions.
    for mask in 1u64..(1 << rank) {
        let coords: Vec<Rat> = if fundamental {
            (0..rank)
                .map(|i| if mask & (1 << i) != 0 { Rat::one() } else { Rat::zero() })
                .collect()
        } else {
            // Subset sums of the prefix vectors (1,..,1,0,..,0): entry i
            // counts the chosen prefixes of length > i.
            (0..rank)
                .map(|i| {
                    let c = (i..rank).filter(|&j| mask & (1 << j) != 0).count() as i64;
                    Rat::from_integer(c)
                })
                .collect()
        };
        probes.push(coords);
    }
    // Seeded random rational chamber points.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while probes.len() < (1usize << rank) - 1 + random_probes {
        let mut coords: Vec<Rat> = (0..rank)
            .map(|_| Rat::new(rng.gen_range(0..=24i64), rng.gen_range(1..=4i64)))
            .collect();
        if !fundamental {
            // Euclidean chamber points must be nonincreasing.
            coords.sort_by(|x, y| y.cmp(x));
        }
        if coords.iter().all(|c| c.is_zero()) {
            continue;
        }
        probes.push(coords);
    }

    // Everything below is integer arithmetic: each probe is scaled by
    // the lcm of its denominators, and the membership test
    // <v, alpha> >= c_g * max(v) is cross-multiplied.
    let table = pairing_table(ty, fundamental);
    let mults: Vec<u64> =
        table.iter().map(|(class, _)| space.mult_for_class(*class) as u64).collect();
    let (cg_num, cg_den) = (*c_g.numer(), *c_g.denom());

    let mut min: Option<(u64, Vec<Rat>)> = None;
    for coords in probes {
        let scale = coords
            .iter()
            .fold(1i64, |acc, c| acc.lcm(c.denom()));
        let v: Vec<i64> = coords.iter().map(|c| c.numer() * (scale / c.denom())).collect();
        let max_v = *v.iter().max().unwrap();
        let mut w = 0u64;
        for ((_, alpha), &m) in table.iter().zip(&mults) {
            let pairing: i64 = v.iter().zip(alpha).map(|(a, b)| a * b).sum();
            if pairing * cg_den >= cg_num * max_v {
                w += m;
            }
        }
        if w < formula {
            return Err(DecayError::ProbeBelowFormula { got: w, formula, witness: coords });
        }
        if min.as_ref().map_or(true, |(m, _)| w < *m) {
            min = Some((w, coords));
        }
    }
    let (probe_min, witness) = min.expect("probe set is nonempty");
    if probe_min != formula {
        return Err(DecayError::OracleMismatch { probe_min, formula, witness });
    }
    Ok(probe_min)
}

/// Tabulated minimal weighted counts for the exceptional restricted
/// systems, as pairs `(class, count of roots in a minimizing cone)`.
/// The weighted minimum is the multiplicity-weighted sum.
pub fn exceptional_min_counts(
    space: &SpaceDescriptor,
) -> Result<Vec<(MultClass, u64)>, DecayError> {
    let ty = space.lie_type;
    match ty.family {
        Family::G2 => Ok(vec![(MultClass::Long, 2), (MultClass::Short, 3)]),
        Family::E6 => Ok(vec![(MultClass::Long, 16)]),
        Family::E7 => Ok(vec![(MultClass::Long, 27)]),
        Family::E8 => Ok(vec![(MultClass::Long, 57)]),
        // The minimizing cone of F4 meets 9 long and 6 short roots,
        // regardless of how the two multiplicities are attached.
        Family::F4 => Ok(vec![(MultClass::Long, 9), (MultClass::Short, 6)]),
        _ => Err(DecayError::NotExceptional(ty)),
    }
}

/// Minimal weighted count of a space, classical or exceptional.
///
/// For the two-multiplicity F4 rows the minimizing cone can sit on
/// either side of the long/short split, so the smaller of the two
/// attachments is taken.
pub fn rho_total(space: &SpaceDescriptor) -> Result<u64, DecayError> {
    if space.lie_type.family.is_classical() {
        return rho_formula(space);
    }
    let counts = exceptional_min_counts(space)?;
    let direct: u64 = counts
        .iter()
        .map(|&(class, c)| space.mult_for_class(class) as u64 * c)
        .sum();
    if space.lie_type.family == Family::F4 {
        let swap = |class: MultClass| match class {
            MultClass::Long => MultClass::Short,
            MultClass::Short => MultClass::Long,
            other => other,
        };
        let swapped: u64 = counts
            .iter()
            .map(|&(class, c)| space.mult_for_class(swap(class)) as u64 * c)
            .sum();
        return Ok(direct.min(swapped));
    }
    Ok(direct)
}

/// Sharp L2 gate: the `k`-fold power of *every* orbital measure (with
/// singular base point allowed) is square-integrable once `k` strictly
/// exceeds this rational value.
///
/// * `A_r`: `r + r / eta0`
/// * `D_n`: `(n-1) + n / (2 eta0)`
/// * `B_n, C_n, BC_n`, `n >= 3`: `2(n-1) + (n + eta1 + eta2) / eta0`
/// * rank 2 of those: `max(4, 2 + (eta1 + eta2) / (2 eta0))`
/// * `BC_1`: 1 (every nonzero base point is regular)
/// * exceptional rows: tabulated per space.
pub fn k_gate(space: &SpaceDescriptor) -> Rat {
    let [a, b, c] = space.mults.eta.map(|m| m as i64);
    let n = space.lie_type.rank as i64;
    match space.lie_type.family {
        Family::A => Ratio::from_integer(n) + Ratio::new(n, a),
        Family::D => Ratio::from_integer(n - 1) + Ratio::new(n, 2 * a),
        Family::B | Family::C | Family::BC => match n {
            1 => Rat::one(),
            2 => {
                let alt = Ratio::from_integer(2) + Ratio::new(b + c, 2 * a);
                alt.max(Ratio::from_integer(4))
            }
            _ => Ratio::from_integer(2 * (n - 1)) + Ratio::new(n + b + c, a),
        },
        Family::G2 => Ratio::from_integer(4),
        Family::F4 => match space.cartan_class {
            CartanClass::FI => Ratio::from_integer(7),
            CartanClass::EII => Ratio::from_integer(7),
            CartanClass::EVI => Ratio::from_integer(11),
            CartanClass::EIX => Ratio::from_integer(19),
            _ => unreachable!("no other F4 rows exist"),
        },
        Family::E6 => Ratio::from_integer(7),
        Family::E7 => Ratio::from_integer(8),
        Family::E8 => Ratio::from_integer(8),
    }
}

/// Minimal `k` such that the `k`-fold power of an orbital measure with
/// *regular* base point is square-integrable: 3 for the rank-one AI
/// space, 2 everywhere else.
pub fn regular_threshold(space: &SpaceDescriptor) -> u32 {
    if space.cartan_class == CartanClass::AI && space.lie_type.rank == 1 {
        3
    } else {
        2
    }
}

/// Verdict of the square-integrability gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum L2Verdict {
    InL2,
    NotInL2,
    Undecided,
}

impl std::fmt::Display for L2Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            L2Verdict::InL2 => "IN_L2",
            L2Verdict::NotInL2 => "NOT_IN_L2",
            L2Verdict::Undecided => "UNDECIDED",
        };
        f.write_str(s)
    }
}

/// Square-integrability of the `k`-fold convolution power.
///
/// Regular base point: in L2 iff `k >= regular_threshold`.  Arbitrary
/// (possibly singular) base point: in L2 when `k > k_gate`, not in L2 at
/// `k = 1` (a single orbital measure is singular), undecided in between.
/// Returns the verdict with the name of the rule that produced it.
pub fn l2_gate(space: &SpaceDescriptor, k: u32, regular: bool) -> (L2Verdict, &'static str) {
    if regular {
        if k >= regular_threshold(space) {
            (L2Verdict::InL2, "regular-threshold")
        } else {
            (L2Verdict::NotInL2, "regular-threshold")
        }
    } else if Ratio::from_integer(k as i64) > k_gate(space) {
        (L2Verdict::InL2, "uniform-gate")
    } else if k == 1 {
        (L2Verdict::NotInL2, "single-power-singular")
    } else {
        (L2Verdict::Undecided, "between-gates")
    }
}

/// Decay exponent `q` of the spherical-transform power: the `j = k/2`
/// power of the transform is bounded by `(1 + |lambda|)^q`.  `None`
/// means no rule covers the pair, in which case no differentiability
/// order is claimed.
pub fn q_exponent(space: &SpaceDescriptor, j: u32, regular: bool) -> Option<Rat> {
    let [a, b, c] = space.mults.eta.map(|m| m as i64);
    let n = space.lie_type.rank as i64;
    let j = j as i64;
    if regular || (space.lie_type.family == Family::BC && n == 1) {
        // Regular base point (or rank one, where every nonzero point is
        // regular): each factor of the transform decays with exponent
        // -rho, normalized so that j = 1 gives exponent 0.
        let rho = rho_total(space).ok()? as i64;
        return Some(Ratio::from_integer((1 - j) * rho));
    }
    match space.lie_type.family {
        Family::A => {
            let p = j - n;
            if p <= 0 {
                None
            } else {
                Some(Ratio::from_integer(-a * p))
            }
        }
        Family::D => {
            let p = j - (n - 1);
            if p <= 0 {
                None
            } else {
                Some(Ratio::from_integer(-2 * a * p))
            }
        }
        Family::B | Family::C | Family::BC => {
            if n >= 3 {
                let kappa = Ratio::from_integer(2 * (n - 1)) + Ratio::new(b + c, a);
                if Ratio::from_integer(j) >= kappa {
                    Some(Ratio::from_integer(a * (2 * (n - 1) - j) + b + c))
                } else {
                    None
                }
            } else {
                // Rank 2: with m the smaller and mm the larger of eta0
                // and eta1 + eta2.
                let m = a.min(b + c);
                let mm = a.max(b + c);
                let kappa = Ratio::from_integer(1) + Ratio::new(mm, 2 * m);
                if Ratio::from_integer(j) >= kappa {
                    Some(Ratio::from_integer(2 * m * (1 - j) + mm))
                } else {
                    None
                }
            }
        }
        _ => None,
    }
}

/// Order of guaranteed continuous differentiability of the density of
/// the `k`-fold power (`k` even).  With `q` the decay exponent at
/// `j = k/2`, derivatives of order `r` exist while `r < -rank - q`; the
/// result is the largest such `r`, clamped at 0.
pub fn diff_order(space: &SpaceDescriptor, k: u32, regular: bool) -> Result<u32, DecayError> {
    if k % 2 != 0 {
        return Err(DecayError::OddK(k));
    }
    let j = k / 2;
    let q = match q_exponent(space, j, regular) {
        Some(q) => q,
        None => return Ok(0),
    };
    let rank = Ratio::from_integer(space.lie_type.rank as i64);
    let bound = -rank - q;
    // Largest integer r strictly below the bound.
    let r_max = if bound.is_integer() { bound.to_integer() - 1 } else { bound.floor().to_integer() };
    Ok(r_max.max(0) as u32)
}

/// Upper bound for the spherical-function power appearing in the L2
/// estimate of a `k`-fold power with base direction `a`: the maximum
/// over the Weyl group of
/// `prod_{alpha not annihilated by w(a)} |1 + <lambda, alpha>|^{-m_alpha k}`
/// times `prod_{alpha > 0} |1 + <lambda, alpha>|^{m_alpha}`.
/// Requires `a` singular but nonzero and a Weyl-enumerable family.
pub fn p_bound(
    space: &SpaceDescriptor,
    lambda: &ChamberPoint,
    k: u32,
    a: &ChamberPoint,
) -> Result<f64, DecayError> {
    let ty = space.lie_type;
    let pos = positive_roots(ty);
    let a_eu = a.euclidean_coords();
    if a_eu.iter().all(|c| c.is_zero()) {
        return Err(DecayError::ZeroBasePoint);
    }
    let mut best = f64::NEG_INFINITY;
    for w in weyl_elements(ty)? {
        let wa = w.apply(&a_eu);
        let mut log_p = 0.0f64;
        for alpha in &pos {
            let m = space.mult_for_class(alpha.mult_class) as f64;
            let pairing = inner(lambda, alpha)?.to_f64().unwrap();
            let base = (1.0 + pairing).abs().max(f64::MIN_POSITIVE);
            let annihilated = wa
                .iter()
                .zip(&alpha.coords)
                .map(|(x, &c)| *x * Rat::from_integer(c))
                .sum::<Rat>()
                .is_zero();
            log_p += m * base.ln();
            if !annihilated {
                log_p -= m * (k as f64) * base.ln();
            }
        }
        best = best.max(log_p);
    }
    Ok(best.exp())
}

/// Group-theoretic decay constant `s` of the space: `1/(n-1)` for the
/// restricted systems `A_{n-1}`, `D_n`, `E_n` (with their Coxeter
/// labels), `2/5` for G2 and `1/5` for F4.  Not defined for B, C, BC.
pub fn s_constant(ty: LieType) -> Option<Rat> {
    match ty.family {
        Family::A => Some(Ratio::new(1, ty.rank as i64)),
        Family::D => Some(Ratio::new(1, ty.rank as i64 - 1)),
        Family::E6 => Some(Ratio::new(1, 5)),
        Family::E7 => Some(Ratio::new(1, 6)),
        Family::E8 => Some(Ratio::new(1, 7)),
        Family::G2 => Some(Ratio::new(2, 5)),
        Family::F4 => Some(Ratio::new(1, 5)),
        _ => None,
    }
}

/// Full report of the decay data of a space at a given power.
#[derive(Debug, Clone)]
pub struct DecayReport {
    pub space: SpaceDescriptor,
    pub k: u32,
    pub regular: bool,
    pub rho: Option<u64>,
    pub k_gate: Rat,
    pub regular_threshold: u32,
    pub verdict: L2Verdict,
    pub q_exponent: Option<Rat>,
    pub diff_order: Option<u32>,
    pub s_constant: Option<Rat>,
    pub rules_applied: Vec<String>,
}

impl DecayReport {
    pub fn build(space: &SpaceDescriptor, k: u32, regular: bool) -> DecayReport {
        let mut rules = Vec::new();
        let rho = rho_total(space).ok();
        if rho.is_some() {
            rules.push("minimal-weighted-count".to_string());
        }
        let (verdict, rule) = l2_gate(space, k, regular);
        rules.push(rule.to_string());
        let q = if k % 2 == 0 { q_exponent(space, k / 2, regular) } else { None };
        let diff = diff_order(space, k, regular).ok();
        if diff.is_some() {
            rules.push("transform-decay-differentiability".to_string());
        }
        DecayReport {
            space: space.clone(),
            k,
            regular,
            rho,
            k_gate: k_gate(space),
            regular_threshold: regular_threshold(space),
            verdict,
            q_exponent: q,
            diff_order: diff,
            s_constant: s_constant(space.lie_type),
            rules_applied: rules,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rat = |r: &Rat| format!("{}/{}", r.numer(), r.denom());
        serde_json::json!({
            "space": self.space.to_json(),
            "k": self.k,
            "regular": self.regular,
            "rho": self.rho,
            "k_gate": rat(&self.k_gate),
            "regular_threshold": self.regular_threshold,
            "verdict": self.verdict.to_string(),
            "q_exponent": self.q_exponent.as_ref().map(rat),
            "diff_order": self.diff_order,
            "s_constant": self.s_constant.as_ref().map(rat),
            "rules_applied": self.rules_applied,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::rootsys::Basis;

    fn point(ty: LieType, coords: &[i64]) -> ChamberPoint {
        ChamberPoint::new(
            ty,
            Basis::Euclidean,
            coords.iter().map(|&c| Rat::from_integer(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn u_counts_bc2_example() {
        // lambda = (2,0) in BC_2 with threshold 1/2: the pairs e1 +- e2
        // both pass, e1 passes in both the single and double class, e2
        // fails.
        let bc2 = LieType::new(Family::BC, 2).unwrap();
        let lambda = point(bc2, &[2, 0]);
        let profile = u_counts(&lambda, Rat::new(1, 2)).unwrap();
        assert_eq!(profile.count(MultClass::Pair), 2);
        assert_eq!(profile.count(MultClass::Single), 1);
        assert_eq!(profile.count(MultClass::Double), 1);
    }

    #[test]
    fn rho_formula_examples() {
        // AIII p=3 n=2 on BC_2 with mults (2,1,2): 2*1 + 1 + 2 = 5... at
        // rank 2 the closed form reads eta0(2n-3) + eta1 + eta2.
        let r = lookup(CartanClass::AIII, Some(2), Some(3)).unwrap();
        assert_eq!(rho_formula(&r).unwrap(), 5);
        // EIII on BC_2 with (8,6,1): 8 + 6 + 1 = 15.
        let r = lookup(CartanClass::EIII, None, None).unwrap();
        assert_eq!(rho_formula(&r).unwrap(), 15);
        // AI n=5: A_4 with eta0 = 1: rho = 4.
        let r = lookup(CartanClass::AI, Some(5), None).unwrap();
        assert_eq!(rho_formula(&r).unwrap(), 4);
        // FII on BC_1 with (0,8,7): 15.
        let r = lookup(CartanClass::FII, None, None).unwrap();
        assert_eq!(rho_formula(&r).unwrap(), 15);
        // BDI p=5 n=3 on B_3 stored (1,0,2): 1*3 + 0 + 2 = 5.
        let r = lookup(CartanClass::BDI, Some(3), Some(5)).unwrap();
        assert_eq!(rho_formula(&r).unwrap(), 5);
    }

    #[test]
    fn integer_probe_path_agrees_with_rational_counts() {
        // The scaled-integer membership test inside the oracle must give
        // the same weighted counts as the public rational-arithmetic path.
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for row in crate::catalog::all_spaces(3) {
            if !row.lie_type.family.is_classical() {
                continue;
            }
            let ty = row.lie_type;
            let fundamental = matches!(ty.family, Family::A | Family::D);
            let basis = if fundamental { Basis::Fundamental } else { Basis::Euclidean };
            let c_g = default_cg(ty.family);
            for _ in 0..20 {
                let mut coords: Vec<Rat> = (0..ty.rank)
                    .map(|_| Rat::new(rng.gen_range(0..=12i64), rng.gen_range(1..=4i64)))
                    .collect();
                if !fundamental {
                    coords.sort_by(|x, y| y.cmp(x));
                }
                if coords.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let point = ChamberPoint::new(ty, basis, coords.clone()).unwrap();
                let slow = weighted_count(&row, &u_counts(&point, c_g).unwrap());
                // Integer path, replicated inline.
                let table = pairing_table(ty, fundamental);
                let scale = coords.iter().fold(1i64, |acc, c| acc.lcm(c.denom()));
                let v: Vec<i64> =
                    coords.iter().map(|c| c.numer() * (scale / c.denom())).collect();
                let max_v = *v.iter().max().unwrap();
                let fast: u64 = table
                    .iter()
                    .filter(|(_, alpha)| {
                        let pairing: i64 = v.iter().zip(alpha).map(|(a, b)| a * b).sum();
                        pairing * c_g.denom() >= c_g.numer() * max_v
                    })
                    .map(|(class, _)| row.mult_for_class(*class) as u64)
                    .sum();
                assert_eq!(slow, fast, "{:?} {coords:?}", row.cartan_class);
            }
        }
    }

    #[test]
    fn rho_oracle_matches_formula_small() {
        for row in crate::catalog::all_spaces(3) {
            if !row.lie_type.family.is_classical() {
                continue;
            }
            let c_g = default_cg(row.lie_type.family);
            let min = rho_oracle(&row, c_g, DEFAULT_SEED, 300).unwrap();
            assert_eq!(min, rho_formula(&row).unwrap(), "{:?}", row.cartan_class);
        }
    }

    #[test]
    fn rho_total_exceptional() {
        // G: G2 uniform 1: 2 + 3 = 5.
        let r = lookup(CartanClass::G, None, None).unwrap();
        assert_eq!(rho_total(&r).unwrap(), 5);
        // EI/EV/EVIII: 16, 27, 57.
        assert_eq!(rho_total(&lookup(CartanClass::EI, None, None).unwrap()).unwrap(), 16);
        assert_eq!(rho_total(&lookup(CartanClass::EV, None, None).unwrap()).unwrap(), 27);
        assert_eq!(rho_total(&lookup(CartanClass::EVIII, None, None).unwrap()).unwrap(), 57);
        // FI uniform: 9 + 6 = 15.
        assert_eq!(rho_total(&lookup(CartanClass::FI, None, None).unwrap()).unwrap(), 15);
        // EII (1,2): min(9*1 + 6*2, 9*2 + 6*1) = 21.
        assert_eq!(rho_total(&lookup(CartanClass::EII, None, None).unwrap()).unwrap(), 21);
        // EVI (1,4): min(9 + 24, 36 + 6) = 33.
        assert_eq!(rho_total(&lookup(CartanClass::EVI, None, None).unwrap()).unwrap(), 33);
        // EIX (8,1): min(72 + 6, 9 + 48) = 57.
        assert_eq!(rho_total(&lookup(CartanClass::EIX, None, None).unwrap()).unwrap(), 57);
    }

    #[test]
    fn k_gate_examples() {
        // AII n=4: A_3 with eta0 = 4: 3 + 3/4.
        let r = lookup(CartanClass::AII, Some(4), None).unwrap();
        assert_eq!(k_gate(&r), Ratio::new(15, 4));
        // CI n=2: max(4, 2 + 1/2) = 4.
        let r = lookup(CartanClass::CI, Some(2), None).unwrap();
        assert_eq!(k_gate(&r), Ratio::from_integer(4));
        // AIII p=3 n=2: max(4, 2 + 3/4) = 4.
        let r = lookup(CartanClass::AIII, Some(2), Some(3)).unwrap();
        assert_eq!(k_gate(&r), Ratio::from_integer(4));
        // CI n=3: 4 + (3+1)/1 = 8.
        let r = lookup(CartanClass::CI, Some(3), None).unwrap();
        assert_eq!(k_gate(&r), Ratio::from_integer(8));
        // FII: rank one, gate 1.
        let r = lookup(CartanClass::FII, None, None).unwrap();
        assert_eq!(k_gate(&r), Ratio::from_integer(1));
        // EIX: 19.
        let r = lookup(CartanClass::EIX, None, None).unwrap();
        assert_eq!(k_gate(&r), Ratio::from_integer(19));
    }

    #[test]
    fn l2_gate_examples() {
        // (AIII p=3 n=2), k=5, singular allowed: 5 > 4.
        let r = lookup(CartanClass::AIII, Some(2), Some(3)).unwrap();
        assert_eq!(l2_gate(&r, 5, false).0, L2Verdict::InL2);
        assert_eq!(l2_gate(&r, 1, false).0, L2Verdict::NotInL2);
        assert_eq!(l2_gate(&r, 3, false).0, L2Verdict::Undecided);
        // Regular base point: k = 2 suffices except for rank-one AI.
        assert_eq!(l2_gate(&r, 2, true).0, L2Verdict::InL2);
        let ai1 = lookup(CartanClass::AI, Some(2), None).unwrap();
        assert_eq!(l2_gate(&ai1, 2, true).0, L2Verdict::NotInL2);
        assert_eq!(l2_gate(&ai1, 3, true).0, L2Verdict::InL2);
    }

    #[test]
    fn diff_order_regular_example() {
        // AII n=3 (A_2, eta0=4), k=8 regular: q = (1-4) * 8 = -24,
        // orders r < -2 + 24 = 22, so the largest guaranteed order is 21.
        let r = lookup(CartanClass::AII, Some(3), None).unwrap();
        assert_eq!(diff_order(&r, 8, true).unwrap(), 21);
        assert!(matches!(diff_order(&r, 7, true), Err(DecayError::OddK(7))));
    }

    #[test]
    fn diff_order_monotone_in_k() {
        for row in crate::catalog::all_spaces(4) {
            for regular in [true, false] {
                let mut prev = 0;
                for k in (2..=20).step_by(2) {
                    let d = diff_order(&row, k, regular).unwrap();
                    assert!(d >= prev, "{:?} k={k} regular={regular}", row.cartan_class);
                    prev = d;
                }
            }
        }
    }

    #[test]
    fn q_exponent_nonpositive_where_defined() {
        for row in crate::catalog::all_spaces(4) {
            for regular in [true, false] {
                for j in 1..=12 {
                    if let Some(q) = q_exponent(&row, j, regular) {
                        assert!(
                            q <= Rat::zero(),
                            "{:?} j={j} regular={regular} q={q}",
                            row.cartan_class
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn p_bound_regular_direction_collapses_to_single_product() {
        // For a regular base point every root contributes the k-fold
        // decay, so the bound equals prod |1+<l,a>|^{m(1-k)}.
        let r = lookup(CartanClass::AIII, Some(2), Some(3)).unwrap();
        let ty = r.lie_type;
        let lambda = point(ty, &[3, 1]);
        let a = point(ty, &[2, 1]);
        let k = 3;
        let got = p_bound(&r, &lambda, k, &a).unwrap();
        let mut expect = 1.0f64;
        for alpha in positive_roots(ty) {
            let m = r.mult_for_class(alpha.mult_class) as f64;
            let pairing = inner(&lambda, &alpha).unwrap().to_f64().unwrap();
            expect *= (1.0 + pairing).abs().powf(m * (1.0 - k as f64));
        }
        assert!((got - expect).abs() <= 1e-12 * expect.abs());
    }

    #[test]
    fn p_bound_singular_direction_spares_annihilated_roots() {
        // a = (1,0) in BC_2 annihilates e_2 and 2 e_2; those roots keep
        // their positive exponent in the w = identity term.
        let r = lookup(CartanClass::AIII, Some(2), Some(3)).unwrap();
        let ty = r.lie_type;
        let lambda = point(ty, &[3, 1]);
        let a = point(ty, &[1, 0]);
        let k = 3;
        let singular = p_bound(&r, &lambda, k, &a).unwrap();
        let regular = p_bound(&r, &lambda, k, &point(ty, &[2, 1])).unwrap();
        assert!(singular > regular);
    }

    #[test]
    fn report_serializes() {
        let r = lookup(CartanClass::CI, Some(3), None).unwrap();
        let report = DecayReport::build(&r, 10, false);
        let json = report.to_json();
        assert_eq!(json["verdict"], "IN_L2");
        assert_eq!(json["k_gate"], "8/1");
    }
}

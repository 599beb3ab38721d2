//! Smoothness of simple symmetric varieties.
//!
//! Two independent engines decide smoothness of a colored cone whose closed
//! orbit is projective: the combinatorial conditions (i)–(iii) on the Levi
//! subsystem and the dual basis of the cone, and the toric slice, whose
//! cone is the Weyl saturation of the dual of the colored cone.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::colored::{validate_colored_cone, ColorId, ColoredCone, SphericalDatum, Violation};
use crate::cones::Cone;
use crate::exactlin::{inverse, rat, Rational, RationalVector};
use crate::rootsys::{Family, RootError, RootSystem, Subsystem, TypeLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmoothError {
    #[error("colored cone is invalid: {0}")]
    InvalidCone(Violation),
    #[error("cone has dimension {dim} < rank {rank}; the closed orbit is not projective")]
    ClosedOrbitNotProjective { dim: usize, rank: usize },
    #[error("engines disagree on {cone}: conditions say {conditions}, toric slice says {toric}")]
    EngineDisagreement { cone: String, conditions: bool, toric: bool },
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Which test rejected a colored cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    Exceptional,
    I,
    II,
    III,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Exceptional => "exceptional",
            Condition::I => "(i)",
            Condition::II => "(ii)",
            Condition::III => "(iii)",
        })
    }
}

/// One group `λ_1^j, ..., λ_{l_j+1}^j` of an accepted indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexGroup {
    /// Simple-root indices of the Levi component in the chosen path order;
    /// empty for a trivial group.
    pub path: Vec<usize>,
    pub lambdas: Vec<RationalVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub smooth: bool,
    pub failed: Option<Condition>,
    pub witness: String,
    pub indexing: Option<Vec<IndexGroup>>,
    /// Number of indexings satisfying (iii).
    pub accepted_indexings: usize,
    pub levi_type: String,
}

impl SmoothnessReport {
    fn fail(failed: Condition, witness: String, levi_type: String) -> Self {
        SmoothnessReport { smooth: false, failed: Some(failed), witness, indexing: None, accepted_indexings: 0, levi_type }
    }
}

fn check_projective(datum: &SphericalDatum, cc: &ColoredCone) -> Result<(), SmoothError> {
    validate_colored_cone(datum, cc).map_err(SmoothError::InvalidCone)?;
    let dim = cc.cone.dimension();
    if dim < datum.rank() {
        return Err(SmoothError::ClosedOrbitNotProjective { dim, rank: datum.rank() });
    }
    Ok(())
}

/// The first color of the cone whose coroot is exceptional, if any.
pub fn exceptional_obstruction(datum: &SphericalDatum, cc: &ColoredCone) -> Result<Option<ColorId>, SmoothError> {
    check_projective(datum, cc)?;
    Ok(exceptional_color(datum, cc))
}

fn exceptional_color(datum: &SphericalDatum, cc: &ColoredCone) -> Option<ColorId> {
    cc.colors.iter().copied().find(|c| datum.exceptional().contains(&c.index))
}

/// Simple roots whose whole color fiber lies in the cone's colors.
pub fn levi_indices(datum: &SphericalDatum, cc: &ColoredCone) -> BTreeSet<usize> {
    (0..datum.rank())
        .filter(|&i| (1..=datum.fibers()[i]).all(|s| cc.colors.contains(&ColorId::new(i, s))))
        .collect()
}

/// The restricted root system `R_{L,θ}` of the Levi subgroup.
pub fn levi_restricted_system(datum: &SphericalDatum, cc: &ColoredCone) -> Result<Subsystem, SmoothError> {
    Ok(datum.system().parabolic_subsystem(&levi_indices(datum, cc))?)
}

/// Primitive χ_*(S) generators of the rays of the cone.
fn primitive_generators(datum: &SphericalDatum, cone: &Cone) -> Vec<RationalVector> {
    cone.rays()
        .into_iter()
        .map(|r| datum.primitive(&r).expect("rational ray in the span"))
        .collect()
}

/// Vectors `λ_g` with `(λ_g, g') = δ_{g g'}` for a basis of generators.
fn dual_basis(rs: &RootSystem, gens: &[RationalVector]) -> Vec<RationalVector> {
    let lowered: Vec<RationalVector> = gens.iter().map(|g| rs.lower(g)).collect();
    let inv = inverse(&lowered).expect("basis");
    let n = gens.len();
    (0..n)
        .map(|i| RationalVector::new(inv.iter().map(|row| row.coords()[i].clone()).collect()))
        .collect()
}

/// Fundamental weights of one Levi component, in the ambient space: the
/// vectors in the span of its roots pairing to `δ` with its simple coroots.
fn component_weights(rs: &RootSystem, path: &[usize]) -> Vec<RationalVector> {
    let basis: Vec<RationalVector> = path.iter().map(|&i| rs.simple_root(i).clone()).collect();
    // ω_h = Σ_k m_hk α_k with Σ_k m_hk (α_k, α_i^∨) = δ_hi.
    let pair: Vec<RationalVector> = path
        .iter()
        .map(|&i| RationalVector::new(basis.iter().map(|a| rs.inner(a, rs.simple_coroot(i))).collect()))
        .collect();
    let inv = inverse(&pair).expect("Cartan submatrix");
    // pair[i][k] = (α_k, α_i^∨); want M with M · pairᵀ = I, i.e. M = (pairᵀ)^{-1}.
    (0..path.len())
        .map(|h| {
            basis.iter().enumerate().fold(RationalVector::zeros(rs.rank()), |acc, (k, a)| {
                acc.axpy(&inv[k].coords()[h], a)
            })
        })
        .collect()
}

/// Conditions (i)–(iii) for a colored cone that passed the exceptional test.
pub fn smoothness_conditions(datum: &SphericalDatum, cc: &ColoredCone) -> Result<SmoothnessReport, SmoothError> {
    check_projective(datum, cc)?;
    conditions_unchecked(datum, cc)
}

fn conditions_unchecked(datum: &SphericalDatum, cc: &ColoredCone) -> Result<SmoothnessReport, SmoothError> {
    let rs = datum.system();
    let levi = levi_restricted_system(datum, cc)?;
    let levi_type = levi.label();
    let l = datum.rank();

    // (i)
    if let Some(c) = levi.components.iter().find(|c| c.family != Family::A) {
        return Ok(SmoothnessReport::fail(
            Condition::I,
            format!("Levi component {}{} is not of type A", c.family, c.rank),
            levi_type,
        ));
    }
    let needed: usize = levi.components.iter().map(|c| c.rank + 1).sum();
    if l < needed {
        return Ok(SmoothnessReport::fail(
            Condition::I,
            format!("rank {l} is less than {needed} for Levi type {levi_type}"),
            levi_type,
        ));
    }

    // (ii)
    let gens = primitive_generators(datum, &cc.cone);
    if !(cc.cone.is_simplicial() && datum.chi_star().is_basis(&gens)) {
        let det = if gens.len() == l {
            let coords: Vec<RationalVector> = gens
                .iter()
                .map(|g| RationalVector::new(datum.chi_star().coordinates(g).expect("in span")))
                .collect();
            format!("; determinant {}", crate::exactlin::determinant(&coords))
        } else {
            String::new()
        };
        return Ok(SmoothnessReport::fail(
            Condition::II,
            format!("the {} primitive generators are not a basis of the dual lattice of the characters{det}", gens.len()),
            levi_type,
        ));
    }

    // (iii)
    let lambdas = dual_basis(rs, &gens);
    let position = |v: &RationalVector| gens.iter().position(|g| g == v);
    let mut coroot_slot = Vec::new();
    for c in &levi.components {
        let path = c.path.clone().expect("type A");
        let mut slots = Vec::new();
        for &i in &path {
            match position(rs.simple_coroot(i)) {
                Some(p) => slots.push(p),
                None => {
                    return Ok(SmoothnessReport::fail(
                        Condition::III,
                        format!("coroot {} is not a primitive generator of the cone", i + 1),
                        levi_type,
                    ))
                }
            }
        }
        coroot_slot.push((path, slots));
    }
    let used: BTreeSet<usize> = coroot_slot.iter().flat_map(|(_, s)| s.iter().copied()).collect();
    let free: Vec<usize> = (0..gens.len()).filter(|i| !used.contains(i)).collect();

    let mut accepted: Vec<Vec<IndexGroup>> = Vec::new();
    let p = coroot_slot.len();
    let mut assign = Vec::with_capacity(p);
    search_indexings(rs, &lambdas, &coroot_slot, &free, &mut assign, &mut accepted);
    if accepted.is_empty() {
        return Ok(SmoothnessReport::fail(
            Condition::III,
            "no indexing of the dual basis matches the fundamental weights of the Levi components".into(),
            levi_type,
        ));
    }
    let count = accepted.len();
    Ok(SmoothnessReport {
        smooth: true,
        failed: None,
        witness: String::new(),
        indexing: accepted.into_iter().next(),
        accepted_indexings: count,
        levi_type,
    })
}

/// Tries each orientation of each component and each injective assignment
/// of free generators as the last element of each component.
fn search_indexings(
    rs: &RootSystem,
    lambdas: &[RationalVector],
    comps: &[(Vec<usize>, Vec<usize>)],
    free: &[usize],
    assign: &mut Vec<(bool, usize)>,
    out: &mut Vec<Vec<IndexGroup>>,
) {
    let j = assign.len();
    if j == comps.len() {
        let mut groups = Vec::new();
        for (k, &(rev, last)) in assign.iter().enumerate() {
            let (path, slots) = &comps[k];
            let (mut path, mut slots) = (path.clone(), slots.clone());
            if rev {
                path.reverse();
                slots.reverse();
            }
            let mut ls: Vec<RationalVector> = slots.iter().map(|&s| lambdas[s].clone()).collect();
            ls.push(lambdas[last].clone());
            groups.push(IndexGroup { path, lambdas: ls });
        }
        let taken: BTreeSet<usize> = assign.iter().map(|a| a.1).collect();
        for &f in free.iter().filter(|f| !taken.contains(f)) {
            groups.push(IndexGroup { path: Vec::new(), lambdas: vec![lambdas[f].clone()] });
        }
        out.push(groups);
        return;
    }
    let (path, slots) = &comps[j];
    let n = path.len();
    let orientations: &[bool] = if n == 1 { &[false] } else { &[false, true] };
    for &rev in orientations {
        let (mut p, mut s) = (path.clone(), slots.clone());
        if rev {
            p.reverse();
            s.reverse();
        }
        let weights = component_weights(rs, &p);
        for &last in free {
            if assign.iter().any(|a| a.1 == last) {
                continue;
            }
            let lam_last = &lambdas[last];
            let ok = (0..n).all(|i| {
                let c = rat((i + 1) as i64) / rat((n + 1) as i64);
                lambdas[s[i]].axpy(&(-c), lam_last) == weights[i]
            });
            if ok {
                assign.push((rev, last));
                search_indexings(rs, lambdas, comps, free, assign, out);
                assign.pop();
            }
        }
    }
}

/// The cone `ς` of the toric slice and its dual `ς^∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricSlice {
    pub sigma_dual: Cone,
    pub sigma: Cone,
}

/// `ς^∨ = W_{L,θ} · C(X)^∨`, computed by closing the generators under the
/// Levi reflections, and `ς` its dual.
pub fn toric_slice(datum: &SphericalDatum, cc: &ColoredCone) -> Result<ToricSlice, SmoothError> {
    check_projective(datum, cc)?;
    slice_unchecked(datum, cc)
}

fn slice_unchecked(datum: &SphericalDatum, cc: &ColoredCone) -> Result<ToricSlice, SmoothError> {
    let rs = datum.system();
    let levi = levi_restricted_system(datum, cc)?;
    let dual = cc.cone.dual(rs.gram());
    let sigma_dual = rs.weyl_saturate_cone(&levi.simple, &dual)?;
    let sigma = sigma_dual.dual(rs.gram());
    Ok(ToricSlice { sigma_dual, sigma })
}

/// True iff the primitive generators of `ς` extend to a basis of χ_*(S).
pub fn toric_is_smooth(datum: &SphericalDatum, slice: &ToricSlice) -> bool {
    if !slice.sigma.is_pointed() {
        return false;
    }
    let gens = primitive_generators(datum, &slice.sigma);
    datum.chi_star().is_part_of_basis(&gens)
}

/// Verdict of the toric-slice engine, including the exceptional test.
pub fn toric_verdict(datum: &SphericalDatum, cc: &ColoredCone) -> Result<bool, SmoothError> {
    check_projective(datum, cc)?;
    toric_unchecked(datum, cc)
}

fn toric_unchecked(datum: &SphericalDatum, cc: &ColoredCone) -> Result<bool, SmoothError> {
    if exceptional_color(datum, cc).is_some() {
        return Ok(false);
    }
    Ok(toric_is_smooth(datum, &slice_unchecked(datum, cc)?))
}

/// Exceptional obstruction followed by conditions (i)–(iii).
pub fn conditions_verdict(datum: &SphericalDatum, cc: &ColoredCone) -> Result<SmoothnessReport, SmoothError> {
    check_projective(datum, cc)?;
    verdict_unchecked(datum, cc)
}

fn verdict_unchecked(datum: &SphericalDatum, cc: &ColoredCone) -> Result<SmoothnessReport, SmoothError> {
    if let Some(c) = exceptional_color(datum, cc) {
        let levi = levi_restricted_system(datum, cc)?.label();
        return Ok(SmoothnessReport::fail(
            Condition::Exceptional,
            format!("color {c} maps to an exceptional coroot"),
            levi,
        ));
    }
    conditions_unchecked(datum, cc)
}

/// Ranks up to which debug builds run the toric engine alongside.
pub const CROSS_CHECK_MAX_RANK: usize = 5;

/// Smoothness verdict; debug builds also run the toric engine at small rank
/// and fail on disagreement.
pub fn is_smooth(datum: &SphericalDatum, cc: &ColoredCone) -> Result<SmoothnessReport, SmoothError> {
    check_projective(datum, cc)?;
    let report = verdict_unchecked(datum, cc)?;
    if cfg!(debug_assertions) && datum.rank() <= CROSS_CHECK_MAX_RANK {
        cross_check(datum, cc, &report)?;
    }
    Ok(report)
}

/// Both engines, failing on disagreement.
pub fn is_smooth_checked(datum: &SphericalDatum, cc: &ColoredCone) -> Result<SmoothnessReport, SmoothError> {
    check_projective(datum, cc)?;
    let report = verdict_unchecked(datum, cc)?;
    cross_check(datum, cc, &report)?;
    Ok(report)
}

fn cross_check(datum: &SphericalDatum, cc: &ColoredCone, report: &SmoothnessReport) -> Result<(), SmoothError> {
    let toric = toric_unchecked(datum, cc)?;
    if toric != report.smooth {
        return Err(SmoothError::EngineDisagreement { cone: cc.to_string(), conditions: report.smooth, toric });
    }
    Ok(())
}

/// Data of the symmetric spaces with an exceptional restricted root: the
/// Hermitian spaces with restricted type `BC_l` and `H = G^θ`, where the
/// fiber over the short simple coroot holds two colors.
pub fn exceptional_datum(rank: usize) -> SphericalDatum {
    let rs = Arc::new(RootSystem::build(&TypeLabel::irreducible(Family::BC, rank)).expect("BC"));
    let chi = rs.weight_lattice();
    let mut fibers = vec![1; rank];
    fibers[rank - 1] = 2;
    SphericalDatum::new(rs, chi, fibers, [rank - 1].into_iter().collect(), true).expect("exceptional datum")
}

/// Named exceptional involutions with their restricted rank, for ranks up
/// to `max_rank`: `SU(p, q)` with `p < q` (rank `p`), `SO(2n)/U(n)` with `n`
/// odd (rank `(n-1)/2`), and `E6/(D5 × C*)` (rank 2).
pub fn exceptional_catalog(max_rank: usize) -> Vec<(String, SphericalDatum)> {
    let mut out = Vec::new();
    for p in 1..=max_rank {
        out.push((format!("AIII SU({p},q), q>{p}"), exceptional_datum(p)));
    }
    for r in 1..=max_rank {
        let n = 2 * r + 1;
        out.push((format!("DIII SO({})/U({n})", 2 * n), exceptional_datum(r)));
    }
    if max_rank >= 2 {
        out.push(("EIII E6/D5xC*".to_string(), exceptional_datum(2)));
    }
    out
}

/// `(α_i, v)` for each simple root: minus the fundamental coweight
/// coefficients of `v`.
pub fn coroot_pairings(rs: &RootSystem, v: &RationalVector) -> Vec<Rational> {
    rs.simple_roots().iter().map(|a| rs.inner(a, v)).collect()
}

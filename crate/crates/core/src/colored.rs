//! Colored cones and colored fans over a spherical datum.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::cones::{cone_covers, Cone, Coverage};
use crate::exactlin::{inverse, rank, rat, Lattice, Rational, RationalVector};
use crate::rootsys::{Family, RootSystem};

/// A color: the simple coroot index it maps to under ρ, and its slot in a
/// fiber of size one or two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorId {
    /// Zero-based simple coroot index.
    pub index: usize,
    /// 1 or 2.
    pub slot: u8,
}

impl ColorId {
    pub fn new(index: usize, slot: u8) -> Self {
        ColorId { index, slot }
    }

    pub fn single(index: usize) -> Self {
        ColorId { index, slot: 1 }
    }

    pub fn swapped(self) -> Self {
        ColorId { index: self.index, slot: 3 - self.slot }
    }
}

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slot == 1 {
            write!(f, "D{}", self.index + 1)
        } else {
            write!(f, "D{}:{}", self.index + 1, self.slot)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoredError {
    #[error("invalid datum: {0}")]
    BadDatum(String),
    #[error("unknown color {0}")]
    UnknownColor(ColorId),
    #[error("fan is not complete; {0} is not covered")]
    Incomplete(RationalVector),
    #[error("maximal cone {0} is not simplicial of full dimension")]
    NotSimplicial(String),
    #[error("no coefficient given for divisor {0}")]
    MissingCoefficient(String),
    #[error("unknown divisor {0}")]
    UnknownDivisor(String),
    #[error("invalid fan: {0}")]
    InvalidFan(Violation),
}

/// The combinatorial stand-in for a symmetric space `G/H`.
#[derive(Clone, Debug)]
pub struct SphericalDatum {
    system: Arc<RootSystem>,
    chi: Lattice,
    chi_star: Lattice,
    fibers: Vec<u8>,
    exceptional: BTreeSet<usize>,
    hermitian: bool,
}

impl SphericalDatum {
    /// `chi` is the character lattice χ(S); fibers give the number of colors
    /// over each simple coroot.
    pub fn new(
        system: Arc<RootSystem>,
        chi: Lattice,
        fibers: Vec<u8>,
        exceptional: BTreeSet<usize>,
        hermitian: bool,
    ) -> Result<Self, ColoredError> {
        let l = system.rank();
        let bad = |s: &str| Err(ColoredError::BadDatum(s.to_string()));
        if chi.dim() != l || chi.rank() != l {
            return bad("lattice must have full rank in the root space");
        }
        if !system.root_lattice().is_sublattice_of(&chi) {
            return bad("lattice must contain the root lattice");
        }
        if !chi.is_sublattice_of(&system.weight_lattice()) {
            return bad("lattice must lie in the weight lattice");
        }
        if fibers.len() != l || fibers.iter().any(|&f| f != 1 && f != 2) {
            return bad("each fiber has one or two colors");
        }
        if exceptional.iter().any(|&i| i >= l) {
            return bad("exceptional index out of range");
        }
        if hermitian {
            let ok = matches!(
                system.label().0.as_slice(),
                [(Family::BC | Family::C, _)] | [(Family::B, 2)] | [(Family::A, 1)]
            );
            if !ok {
                return bad("Hermitian spaces have restricted type BC, C, B2 or A1");
            }
        }
        let fixed_group = chi == system.weight_lattice();
        let min_coroot = system
            .simple_coroots()
            .iter()
            .map(|c| system.norm(c))
            .min()
            .expect("nonzero rank");
        for (i, &f) in fibers.iter().enumerate() {
            if f == 2 {
                let short = system.norm(system.simple_coroot(i)) == min_coroot;
                if !(exceptional.contains(&i) || (hermitian && fixed_group && short)) {
                    return bad("a doubled fiber needs an exceptional coroot or a short coroot of a Hermitian space with H = G^θ");
                }
            }
        }
        let chi_star = chi.dual(system.gram()).map_err(|e| ColoredError::BadDatum(e.to_string()))?;
        Ok(SphericalDatum { system, chi, chi_star, fibers, exceptional, hermitian })
    }

    /// Datum with single fibers, no exceptional coroots, not Hermitian.
    pub fn plain(system: Arc<RootSystem>, chi: Lattice) -> Result<Self, ColoredError> {
        let l = system.rank();
        Self::new(system, chi, vec![1; l], BTreeSet::new(), false)
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn system_arc(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    /// χ(S).
    pub fn chi(&self) -> &Lattice {
        &self.chi
    }

    /// χ_*(S), the dual of χ(S) under the inner product.
    pub fn chi_star(&self) -> &Lattice {
        &self.chi_star
    }

    pub fn fibers(&self) -> &[u8] {
        &self.fibers
    }

    pub fn exceptional(&self) -> &BTreeSet<usize> {
        &self.exceptional
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// True iff χ(S) is the weight lattice, i.e. `H = G^θ`.
    pub fn is_fixed_group(&self) -> bool {
        self.chi == self.system.weight_lattice()
    }

    /// All colors `D(G/H)` in canonical order.
    pub fn colors(&self) -> Vec<ColorId> {
        self.fibers
            .iter()
            .enumerate()
            .flat_map(|(i, &f)| (1..=f).map(move |s| ColorId::new(i, s)))
            .collect()
    }

    pub fn has_color(&self, c: ColorId) -> bool {
        c.index < self.fibers.len() && c.slot >= 1 && c.slot <= self.fibers[c.index]
    }

    /// ρ(D) = α_i^∨.
    pub fn rho(&self, c: ColorId) -> &RationalVector {
        self.system.simple_coroot(c.index)
    }

    pub fn valuation_cone(&self) -> &Cone {
        self.system.valuation_cone()
    }

    pub fn in_valuation_cone(&self, v: &RationalVector) -> bool {
        self.system.in_valuation_cone(v)
    }

    /// Primitive vector of χ_*(S) on the ray through `v`.
    pub fn primitive(&self, v: &RationalVector) -> Option<RationalVector> {
        self.chi_star.primitive_on_ray(v)
    }
}

/// A cone in χ_*(S) ⊗ Q paired with a set of colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredCone {
    pub cone: Cone,
    pub colors: BTreeSet<ColorId>,
}

impl ColoredCone {
    pub fn new(cone: Cone, colors: impl IntoIterator<Item = ColorId>) -> Self {
        ColoredCone { cone, colors: colors.into_iter().collect() }
    }

    /// Colored cone spanned by the images of `colors` and the extra vectors.
    pub fn from_colors_and_vectors(datum: &SphericalDatum, colors: &[ColorId], vectors: &[RationalVector]) -> Self {
        let mut gens: Vec<RationalVector> = colors.iter().map(|&c| datum.rho(c).clone()).collect();
        gens.extend(vectors.iter().cloned());
        ColoredCone::new(Cone::from_generators(datum.rank(), &gens), colors.iter().copied())
    }

    /// The face `F` with colors `{D ∈ D : ρ(D) ∈ F}`.
    pub fn induced_face(&self, datum: &SphericalDatum, face: Cone) -> ColoredCone {
        let colors = self.colors.iter().copied().filter(|&c| face.contains(datum.rho(c))).collect();
        ColoredCone { cone: face, colors }
    }

    pub fn colors_label(&self) -> String {
        let v: Vec<String> = self.colors.iter().map(|c| c.to_string()).collect();
        format!("{{{}}}", v.join(", "))
    }
}

impl fmt::Display for ColoredCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.cone, self.colors_label())
    }
}

/// A failed colored-cone or colored-fan axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownColor(ColorId),
    NotStrictlyConvex,
    /// Axiom (i): a ray that is neither a color image nor in the valuation cone.
    ForeignRay(RationalVector),
    /// Axiom (i): a color whose image lies outside the cone.
    ColorOutside(ColorId),
    /// Axiom (ii): the relative interior misses the valuation cone.
    RelintMissesValuationCone,
    /// Fan axiom (i): a colored face is not a member.
    MissingFace(String),
    /// Fan axiom (ii): two members overlap inside the valuation cone.
    Overlap { first: String, second: String, point: RationalVector },
    /// A member cone has the wrong ambient dimension.
    Dimension(usize),
}

impl Violation {
    /// `"(i)"` or `"(ii)"` for the axiom broken, `"convexity"` otherwise.
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::UnknownColor(_) | Violation::Dimension(_) => "data",
            Violation::NotStrictlyConvex => "convexity",
            Violation::ForeignRay(_) | Violation::ColorOutside(_) | Violation::MissingFace(_) => "(i)",
            Violation::RelintMissesValuationCone | Violation::Overlap { .. } => "(ii)",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownColor(c) => write!(f, "unknown color {c}"),
            Violation::NotStrictlyConvex => write!(f, "cone is not strictly convex"),
            Violation::ForeignRay(r) => {
                write!(f, "axiom (i): ray {r} is neither a color image nor in the valuation cone")
            }
            Violation::ColorOutside(c) => write!(f, "axiom (i): image of color {c} is not in the cone"),
            Violation::RelintMissesValuationCone => {
                write!(f, "axiom (ii): relative interior does not meet the valuation cone")
            }
            Violation::MissingFace(s) => write!(f, "axiom (i): colored face {s} is missing"),
            Violation::Overlap { first, second, point } => write!(
                f,
                "axiom (ii): relative interiors of {first} and {second} meet the valuation cone at {point}"
            ),
            Violation::Dimension(d) => write!(f, "cone has ambient dimension {d}"),
        }
    }
}

/// Checks the colored-cone axioms, plus strict convexity.
pub fn validate_colored_cone(datum: &SphericalDatum, cc: &ColoredCone) -> Result<(), Violation> {
    if cc.cone.ambient_dim() != datum.rank() {
        return Err(Violation::Dimension(cc.cone.ambient_dim()));
    }
    if let Some(&c) = cc.colors.iter().find(|&&c| !datum.has_color(c)) {
        return Err(Violation::UnknownColor(c));
    }
    if !cc.cone.is_pointed() {
        return Err(Violation::NotStrictlyConvex);
    }
    if let Some(&c) = cc.colors.iter().find(|&&c| !cc.cone.contains(datum.rho(c))) {
        return Err(Violation::ColorOutside(c));
    }
    let color_rays: BTreeSet<_> = cc.colors.iter().filter_map(|&c| datum.rho(c).primitive_integer()).collect();
    for r in cc.cone.rays() {
        let on_color = r.primitive_integer().is_some_and(|p| color_rays.contains(&p));
        if !on_color && !datum.in_valuation_cone(&r) {
            return Err(Violation::ForeignRay(r));
        }
    }
    if !relint_meets_closed(&cc.cone, datum.valuation_cone()) {
        return Err(Violation::RelintMissesValuationCone);
    }
    Ok(())
}

/// True iff `relint(c) ∩ n ≠ ∅` for a closed cone `n`.
///
/// If `x ∈ relint(c) ∩ n` and `y ∈ relint(c ∩ n)`, then `y` is a convex
/// combination of `x` and a point of `c ∩ n` with positive weight on `x`,
/// so `y ∈ relint(c)`. Testing one relint point of `c ∩ n` therefore decides.
pub fn relint_meets_closed(c: &Cone, n: &Cone) -> bool {
    c.relint_contains(&c.intersection(n).relint_point())
}

/// The smallest face of the pointed cone `c` containing `p ∈ c`.
fn carrier_face(c: &Cone, p: &RationalVector) -> Cone {
    let tight: Vec<RationalVector> = c.facets().into_iter().filter(|f| f.dot(p).is_zero()).collect();
    let gens: Vec<RationalVector> = c
        .rays()
        .into_iter()
        .filter(|r| tight.iter().all(|f| f.dot(r).is_zero()))
        .collect();
    Cone::from_generators(c.ambient_dim(), &gens)
}

/// A colored fan, stored as the full face-closed list of members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredFan {
    members: Vec<ColoredCone>,
    maximal: Vec<ColoredCone>,
}

impl ColoredFan {
    /// Fan generated by the given colored cones and all their colored faces.
    pub fn from_maximal(datum: &SphericalDatum, cones: &[ColoredCone]) -> ColoredFan {
        let mut members: BTreeSet<ColoredCone> = BTreeSet::new();
        for cc in cones {
            members.insert(cc.clone());
            if let Ok(faces) = cc.cone.faces() {
                for f in faces {
                    let face = cc.induced_face(datum, f);
                    if validate_colored_cone(datum, &face).is_ok() {
                        members.insert(face);
                    }
                }
            }
        }
        Self::from_members(members.into_iter().collect())
    }

    /// Fan with exactly the given members; faces are not added.
    pub fn from_members(mut members: Vec<ColoredCone>) -> ColoredFan {
        members.sort();
        members.dedup();
        let maximal = members
            .iter()
            .filter(|a| {
                !members.iter().any(|b| {
                    b.cone != a.cone && b.cone.contains_cone(&a.cone) && b.cone.dimension() > a.cone.dimension()
                })
            })
            .cloned()
            .collect();
        ColoredFan { members, maximal }
    }

    pub fn members(&self) -> &[ColoredCone] {
        &self.members
    }

    pub fn maximal_cones(&self) -> &[ColoredCone] {
        &self.maximal
    }

    /// `D(X)`: colors used by some member.
    pub fn colors(&self) -> BTreeSet<ColorId> {
        self.members.iter().flat_map(|c| c.colors.iter().copied()).collect()
    }

    /// Distinct rays of the maximal cones, as primitive vectors of χ_*(S).
    pub fn rays(&self, datum: &SphericalDatum) -> Vec<RationalVector> {
        let set: BTreeSet<RationalVector> = self
            .maximal
            .iter()
            .flat_map(|c| c.cone.rays())
            .map(|r| datum.primitive(&r).unwrap_or(r))
            .collect();
        set.into_iter().collect()
    }

    /// `N(X)`: primitive generators of the rays lying in the valuation cone.
    pub fn invariant_rays(&self, datum: &SphericalDatum) -> Vec<RationalVector> {
        self.rays(datum).into_iter().filter(|r| datum.in_valuation_cone(r)).collect()
    }
}

/// Checks every member, face closure, and disjointness of relative
/// interiors inside the valuation cone.
pub fn validate_colored_fan(datum: &SphericalDatum, fan: &ColoredFan) -> Result<(), Violation> {
    for cc in fan.members() {
        validate_colored_cone(datum, cc)?;
    }
    let members: BTreeSet<&ColoredCone> = fan.members().iter().collect();
    for cc in fan.members() {
        for f in cc.cone.faces().map_err(|_| Violation::NotStrictlyConvex)? {
            let face = cc.induced_face(datum, f);
            if validate_colored_cone(datum, &face).is_ok() && !members.contains(&face) {
                return Err(Violation::MissingFace(face.to_string()));
            }
        }
    }
    // Every point of Ci ∩ Cj ∩ N lies in the relative interior of one face
    // of that intersection; on each such face the carrier faces in Ci and Cj
    // are constant, so one point per face decides.
    let n = datum.valuation_cone();
    let max = fan.maximal_cones();
    for i in 0..max.len() {
        for j in i + 1..max.len() {
            let (a, b) = (&max[i], &max[j]);
            let m = a.cone.intersection(&b.cone).intersection(n);
            for g in m.faces().map_err(|_| Violation::NotStrictlyConvex)? {
                let p = g.relint_point();
                let fa = a.induced_face(datum, carrier_face(&a.cone, &p));
                let fb = b.induced_face(datum, carrier_face(&b.cone, &p));
                if fa != fb {
                    return Err(Violation::Overlap { first: fa.to_string(), second: fb.to_string(), point: p });
                }
            }
        }
    }
    Ok(())
}

/// Covering test of the valuation cone by the maximal cones.
pub fn completeness(datum: &SphericalDatum, fan: &ColoredFan) -> Coverage {
    let pieces: Vec<Cone> = fan.maximal_cones().iter().map(|c| c.cone.clone()).collect();
    cone_covers(datum.valuation_cone(), &pieces)
}

pub fn is_complete(datum: &SphericalDatum, fan: &ColoredFan) -> bool {
    completeness(datum, fan).is_covered()
}

fn require_complete_simplicial(datum: &SphericalDatum, fan: &ColoredFan) -> Result<(), ColoredError> {
    if let Coverage::Uncovered(w) = completeness(datum, fan) {
        return Err(ColoredError::Incomplete(w));
    }
    for c in fan.maximal_cones() {
        if !c.cone.is_simplicial() || c.cone.dimension() != datum.rank() {
            return Err(ColoredError::NotSimplicial(c.to_string()));
        }
    }
    Ok(())
}

/// Picard rank `r + m - l` of a complete fan with simplicial full-dimensional
/// maximal cones: `r` omitted colors, `m` the `B`-stable prime divisors
/// containing a closed orbit (colors of the fan and `G`-stable divisors),
/// `l` the rank.
pub fn picard_rank(datum: &SphericalDatum, fan: &ColoredFan) -> Result<usize, ColoredError> {
    require_complete_simplicial(datum, fan)?;
    let r = datum.colors().len() - fan.colors().len();
    let m = fan.colors().len() + fan.invariant_rays(datum).len();
    Ok(r + m - datum.rank())
}

/// Rank of the group of functions on the support that are linear on each
/// maximal cone, solved as a linear gluing system.
pub fn piecewise_linear_rank(datum: &SphericalDatum, fan: &ColoredFan) -> Result<usize, ColoredError> {
    let l = datum.rank();
    let max = fan.maximal_cones();
    for c in max {
        if c.cone.dimension() != l {
            return Err(ColoredError::NotSimplicial(c.to_string()));
        }
    }
    let k = max.len();
    let mut rows = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let shared = max[i].cone.intersection(&max[j].cone);
            for r in shared.rays().iter().chain(&shared.lineality()) {
                let mut row = vec![Rational::zero(); k * l];
                for (t, x) in r.coords().iter().enumerate() {
                    row[i * l + t] = x.clone();
                    row[j * l + t] = -x.clone();
                }
                rows.push(RationalVector::new(row));
            }
        }
    }
    Ok(k * l - rank(&rows))
}

/// Picard rank from the general formula with the gluing-system rank.
pub fn picard_rank_general(datum: &SphericalDatum, fan: &ColoredFan) -> Result<usize, ColoredError> {
    if let Coverage::Uncovered(w) = completeness(datum, fan) {
        return Err(ColoredError::Incomplete(w));
    }
    let r = datum.colors().len() - fan.colors().len();
    Ok(r + piecewise_linear_rank(datum, fan)? - datum.rank())
}

/// A `B`-stable prime divisor of the variety: a color or a `G`-stable divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorId {
    Color(ColorId),
    /// Index into the sorted list of invariant rays.
    Stable(usize),
}

impl fmt::Display for DivisorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorId::Color(c) => write!(f, "{c}"),
            DivisorId::Stable(k) => write!(f, "E{}", k + 1),
        }
    }
}

impl std::str::FromStr for DivisorId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bad divisor name '{s}'");
        if let Some(rest) = s.strip_prefix('E') {
            let k: usize = rest.parse().map_err(|_| bad())?;
            return if k >= 1 { Ok(DivisorId::Stable(k - 1)) } else { Err(bad()) };
        }
        let rest = s.strip_prefix('D').ok_or_else(bad)?;
        let (i, slot) = match rest.split_once(':') {
            Some((i, s)) => (i, s.parse::<u8>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let i: usize = i.parse().map_err(|_| bad())?;
        if i == 0 || !(1..=2).contains(&slot) {
            return Err(bad());
        }
        Ok(DivisorId::Color(ColorId::new(i - 1, slot)))
    }
}

/// The linear function on a maximal cone interpolating the divisor
/// coefficients, as a vector `u` with `l(x) = u · x`.
fn linear_part(
    datum: &SphericalDatum,
    fan: &ColoredFan,
    cc: &ColoredCone,
    coeffs: &BTreeMap<DivisorId, Rational>,
) -> Result<(Vec<RationalVector>, RationalVector), ColoredError> {
    let stable = fan.invariant_rays(datum);
    let mut gens = Vec::new();
    let mut vals = Vec::new();
    for r in cc.cone.rays() {
        let on_ray: Vec<ColorId> = cc
            .colors
            .iter()
            .copied()
            .filter(|&c| Cone::from_generators(datum.rank(), &[datum.rho(c).clone()]).contains(&r))
            .collect();
        if let Some(&c) = on_ray.first() {
            let val = coeffs
                .get(&DivisorId::Color(c))
                .ok_or_else(|| ColoredError::MissingCoefficient(c.to_string()))?;
            for &other in &on_ray[1..] {
                let o = coeffs
                    .get(&DivisorId::Color(other))
                    .ok_or_else(|| ColoredError::MissingCoefficient(other.to_string()))?;
                if o != val {
                    return Err(ColoredError::MissingCoefficient(format!("{other} (differs from {c} on one ray)")));
                }
            }
            gens.push(datum.rho(c).clone());
            vals.push(val.clone());
        } else {
            let p = datum.primitive(&r).unwrap_or(r);
            let k = stable.iter().position(|s| *s == p).expect("invariant ray");
            let id = DivisorId::Stable(k);
            let val = coeffs.get(&id).ok_or_else(|| ColoredError::MissingCoefficient(id.to_string()))?;
            gens.push(p);
            vals.push(val.clone());
        }
    }
    let inv = inverse(&gens).ok_or_else(|| ColoredError::NotSimplicial(cc.to_string()))?;
    // u · g_k = val_k: u = (G^{-1}) val with G having rows g_k.
    let u = RationalVector::new(
        inv.iter()
            .map(|row| row.coords().iter().zip(&vals).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect(),
    );
    Ok((gens, u))
}

/// The strict convexity data for the divisor with the given coefficients.
#[derive(Clone, Debug)]
pub struct AmpleReport {
    pub ample: bool,
    pub colors_complete: bool,
    /// `(i, j, g, l_i(g), φ(g))` for every maximal pair and off-cone generator.
    pub inequalities: Vec<(usize, usize, RationalVector, Rational, Rational)>,
}

/// Strict convexity of the piecewise linear function of a divisor over a
/// complete simplicial fan, together with `D(X) = D(G/H)`.
pub fn ample_report(
    datum: &SphericalDatum,
    fan: &ColoredFan,
    coeffs: &BTreeMap<DivisorId, Rational>,
) -> Result<AmpleReport, ColoredError> {
    require_complete_simplicial(datum, fan)?;
    let stable = fan.invariant_rays(datum);
    for d in coeffs.keys() {
        let known = match d {
            DivisorId::Color(c) => datum.has_color(*c),
            DivisorId::Stable(k) => *k < stable.len(),
        };
        if !known {
            return Err(ColoredError::UnknownDivisor(d.to_string()));
        }
    }
    let max = fan.maximal_cones();
    let parts: Vec<(Vec<RationalVector>, RationalVector)> = max
        .iter()
        .map(|c| linear_part(datum, fan, c, coeffs))
        .collect::<Result<_, _>>()?;
    let mut inequalities = Vec::new();
    let mut strict = true;
    for i in 0..max.len() {
        for j in 0..max.len() {
            if i == j {
                continue;
            }
            for g in &parts[j].0 {
                if max[i].cone.contains(g) {
                    continue;
                }
                let li = parts[i].1.dot(g);
                let phi = parts[j].1.dot(g);
                if li >= phi {
                    strict = false;
                }
                inequalities.push((i, j, g.clone(), li, phi));
            }
        }
    }
    let colors_complete = fan.colors().len() == datum.colors().len();
    Ok(AmpleReport { ample: strict && colors_complete, colors_complete, inequalities })
}

pub fn is_ample_two_orbit(
    datum: &SphericalDatum,
    fan: &ColoredFan,
    coeffs: &BTreeMap<DivisorId, Rational>,
) -> Result<bool, ColoredError> {
    Ok(ample_report(datum, fan, coeffs)?.ample)
}

/// The divisor `D1 + D2` of a two-orbit fan: coefficient one on each color
/// missing from some maximal cone, zero on the others and on the
/// `G`-stable divisors.
pub fn separating_color_coefficients(datum: &SphericalDatum, fan: &ColoredFan) -> BTreeMap<DivisorId, Rational> {
    let shared = |c: &ColorId| fan.maximal_cones().iter().all(|m| m.colors.contains(c));
    let mut m: BTreeMap<DivisorId, Rational> = datum
        .colors()
        .into_iter()
        .map(|c| (DivisorId::Color(c), rat(i64::from(!shared(&c)))))
        .collect();
    for k in 0..fan.invariant_rays(datum).len() {
        m.insert(DivisorId::Stable(k), rat(0));
    }
    m
}

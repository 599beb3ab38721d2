//! Smooth complete symmetric varieties with Picard number one.
//!
//! The enumerator walks every intermediate lattice and color structure of a
//! restricted type, builds the candidate simple colored cones, keeps the
//! smooth ones, glues them into fans and filters by completeness and Picard
//! rank. The reference catalog is the hard-coded list it is compared with.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::colored::{
    is_complete, picard_rank, validate_colored_cone, validate_colored_fan, ColorId, ColoredCone, ColoredFan,
    SphericalDatum,
};
use crate::exactlin::{rat, Lattice, Rational, RationalVector};
use crate::rootsys::{Family, RootSystem, TypeLabel};
use crate::symmcheck::{exceptional_datum, is_smooth, SmoothError};

/// Lattices between the root lattice and the weight lattice, smallest index
/// first.
pub fn enumerate_intermediate_lattices(rs: &RootSystem) -> Vec<Lattice> {
    let q = rs.root_lattice();
    let mut reps = vec![RationalVector::zeros(rs.rank())];
    let mut frontier = reps.clone();
    while let Some(r) = frontier.pop() {
        for w in rs.fundamental_weights() {
            let s = q.coset_representative(&(&r + w)).expect("weights span");
            if !reps.contains(&s) {
                reps.push(s.clone());
                frontier.push(s);
            }
        }
    }
    let mut lattices = vec![q.clone()];
    let mut i = 0;
    while i < lattices.len() {
        for g in &reps {
            let m = lattices[i].with_generator(g);
            if !lattices.contains(&m) {
                lattices.push(m);
            }
        }
        i += 1;
    }
    let index = |l: &Lattice| match q.index_in(l) {
        Ok(crate::exactlin::LatticeIndex::Finite(n)) => n,
        _ => unreachable!("root lattice has full rank"),
    };
    lattices.sort_by(|a, b| index(a).cmp(&index(b)).then_with(|| a.cmp(b)));
    lattices
}

/// A datum of the given type together with a short description of how it
/// was obtained.
#[derive(Clone, Debug)]
pub struct DatumVariant {
    pub tag: String,
    pub datum: SphericalDatum,
}

/// Index of the unique shortest simple coroot, if there is one.
fn short_coroot(rs: &RootSystem) -> Option<usize> {
    let norms: Vec<Rational> = rs.simple_coroots().iter().map(|c| rs.norm(c)).collect();
    let min = norms.iter().min()?;
    let at: Vec<usize> = (0..norms.len()).filter(|&i| norms[i] == *min).collect();
    (at.len() == 1).then(|| at[0])
}

/// Every datum of a type: one per intermediate lattice with single fibers,
/// the Hermitian spaces with `H = G^θ` and a doubled fiber, and the
/// exceptional `BC_l` datum.
pub fn data_for_type(label: &TypeLabel) -> Result<Vec<DatumVariant>, SmoothError> {
    let rs = Arc::new(RootSystem::build(label)?);
    let p = rs.weight_lattice();
    let q = rs.root_lattice();
    let mut out = Vec::new();
    for chi in enumerate_intermediate_lattices(&rs) {
        let tag = lattice_name(&rs, &chi);
        let datum = SphericalDatum::plain(rs.clone(), chi).expect("intermediate lattice");
        out.push(DatumVariant { tag, datum });
    }
    let hermitian_type = matches!(label.0.as_slice(), [(Family::A, 1)] | [(Family::B, 2)] | [(Family::C, _)]);
    if hermitian_type {
        if let Some(i) = short_coroot(&rs) {
            let mut fibers = vec![1; rs.rank()];
            fibers[i] = 2;
            let datum = SphericalDatum::new(rs.clone(), p.clone(), fibers, BTreeSet::new(), true)
                .expect("Hermitian datum");
            out.push(DatumVariant { tag: format!("weight, hermitian, fiber {} doubled", i + 1), datum });
        }
    }
    if let [(Family::BC, l)] = label.0.as_slice() {
        debug_assert_eq!(p, q);
        out.push(DatumVariant { tag: "weight, exceptional".into(), datum: exceptional_datum(*l) });
    }
    Ok(out)
}

/// Whether a datum with this lattice may come from a Hermitian space with
/// single color fibers, that is `H = N_G(G^θ)` with `G^θ ≠ H`.
pub fn hermitian_admissible(datum: &SphericalDatum) -> bool {
    let rs = datum.system();
    let t = matches!(rs.label().0.as_slice(), [(Family::A, 1)] | [(Family::B, 2)] | [(Family::C, _)]);
    t && *datum.chi() == rs.root_lattice() && rs.root_lattice() != rs.weight_lattice()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Every coefficient vector in the box.
    Exhaustive,
    /// Only Levi systems of type A, and on each Levi component `v` pairs to
    /// zero with all simple roots but possibly one end of the path, where it
    /// pairs to `-1`.
    Pruned,
}

/// Color sets obtained by dropping the fiber over `omit` and choosing, on
/// each doubled fiber, both colors or either one.
fn color_choices(datum: &SphericalDatum, omit: usize) -> Vec<Vec<ColorId>> {
    let mut out: Vec<Vec<ColorId>> = vec![Vec::new()];
    for (i, &f) in datum.fibers().iter().enumerate() {
        if i == omit {
            continue;
        }
        let opts: Vec<Vec<ColorId>> = if f == 1 {
            vec![vec![ColorId::single(i)]]
        } else {
            vec![
                vec![ColorId::new(i, 1), ColorId::new(i, 2)],
                vec![ColorId::new(i, 1)],
                vec![ColorId::new(i, 2)],
            ]
        };
        out = out
            .into_iter()
            .flat_map(|base| {
                opts.iter().map(move |o| {
                    let mut b = base.clone();
                    b.extend(o.iter().copied());
                    b
                })
            })
            .collect();
    }
    out
}

/// Coefficient choices per simple root, or `None` when the strategy rules
/// out every vector for this color set.
fn coefficient_ranges(
    datum: &SphericalDatum,
    colors: &[ColorId],
    bound: usize,
    strategy: Strategy,
) -> Option<Vec<Vec<Vec<(usize, usize)>>>> {
    let l = datum.rank();
    let full: Vec<(usize, usize)> = Vec::new();
    let free = |i: usize| -> Vec<Vec<(usize, usize)>> { (0..=bound).map(|c| vec![(i, c)]).collect() };
    match strategy {
        Strategy::Exhaustive => Some((0..l).map(free).collect()),
        Strategy::Pruned => {
            let levi: BTreeSet<usize> = (0..l)
                .filter(|&i| (1..=datum.fibers()[i]).all(|s| colors.contains(&ColorId::new(i, s))))
                .collect();
            let sub = datum.system().parabolic_subsystem(&levi).ok()?;
            if !sub.all_type_a() {
                return None;
            }
            let mut ranges = Vec::new();
            for comp in &sub.components {
                let path = comp.path.as_ref().expect("type A path");
                let mut opts = vec![full.clone()];
                opts.push(vec![(path[0], 1)]);
                if path.len() > 1 {
                    opts.push(vec![(*path.last().unwrap(), 1)]);
                }
                ranges.push(opts);
            }
            for i in (0..l).filter(|i| !levi.contains(i)) {
                ranges.push(free(i));
            }
            Some(ranges)
        }
    }
}

/// Simple colored cones `(cone(ρ(colors), v), colors)` for every omitted
/// simple root, every color choice on the remaining fibers and every
/// primitive `v = -Σ c_i ω_i^∨` in χ_*(S) with `0 ≤ c_i ≤ bound`; only
/// valid full-dimensional cones are returned.
pub fn candidate_colored_cones(datum: &SphericalDatum, bound: usize, strategy: Strategy) -> Vec<ColoredCone> {
    let rs = datum.system();
    let l = datum.rank();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for omit in 0..l {
        for colors in color_choices(datum, omit) {
            let Some(ranges) = coefficient_ranges(datum, &colors, bound, strategy) else {
                continue;
            };
            let mut idx = vec![0usize; ranges.len()];
            loop {
                let mut c = vec![0usize; l];
                for (k, &j) in idx.iter().enumerate() {
                    for &(i, x) in &ranges[k][j] {
                        c[i] = x;
                    }
                }
                if c.iter().any(|&x| x != 0) {
                    let v = c.iter().zip(rs.fundamental_coweights()).fold(RationalVector::zeros(l), |acc, (&x, w)| {
                        acc.axpy(&rat(-(x as i64)), w)
                    });
                    if datum.chi_star().is_primitive(&v) == Ok(true) {
                        let cc = ColoredCone::from_colors_and_vectors(datum, &colors, &[v]);
                        if cc.cone.dimension() == l
                            && validate_colored_cone(datum, &cc).is_ok()
                            && seen.insert(cc.clone())
                        {
                            out.push(cc);
                        }
                    }
                }
                // Odometer over the choice lists.
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < ranges[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
    }
    out
}

/// Invariant rays of a colored cone, as primitive vectors.
fn invariant_rays(datum: &SphericalDatum, cc: &ColoredCone) -> Vec<RationalVector> {
    let mut v: Vec<RationalVector> = cc
        .cone
        .rays()
        .into_iter()
        .filter(|r| datum.in_valuation_cone(r))
        .map(|r| datum.primitive(&r).unwrap_or(r))
        .collect();
    v.sort();
    v
}

/// Largest group of cones over one invariant ray that is searched by subsets.
const MAX_SUBSET_GROUP: usize = 14;

/// Valid fans built from smooth simple cones: each cone alone, and every
/// family of at least two cones sharing their invariant rays whose colors
/// together exhaust `D(G/H)`.
pub fn assemble_fans(datum: &SphericalDatum, cones: &[ColoredCone]) -> Vec<ColoredFan> {
    let mut out = Vec::new();
    for cc in cones {
        let fan = ColoredFan::from_maximal(datum, std::slice::from_ref(cc));
        if validate_colored_fan(datum, &fan).is_ok() {
            out.push(fan);
        }
    }
    let all: BTreeSet<ColorId> = datum.colors().into_iter().collect();
    let mut groups: BTreeMap<Vec<RationalVector>, Vec<&ColoredCone>> = BTreeMap::new();
    for cc in cones {
        groups.entry(invariant_rays(datum, cc)).or_default().push(cc);
    }
    for group in groups.values() {
        let n = group.len();
        let subsets: Vec<Vec<usize>> = if n <= MAX_SUBSET_GROUP {
            (1u32..1 << n)
                .filter(|m| m.count_ones() >= 2)
                .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
                .collect()
        } else {
            crate::exactlin::combinations(n, 2)
        };
        for s in subsets {
            let colors: BTreeSet<ColorId> = s.iter().flat_map(|&i| group[i].colors.iter().copied()).collect();
            if colors != all {
                continue;
            }
            let chosen: Vec<ColoredCone> = s.iter().map(|&i| group[i].clone()).collect();
            let fan = ColoredFan::from_maximal(datum, &chosen);
            if fan.maximal_cones().len() == chosen.len() && validate_colored_fan(datum, &fan).is_ok() {
                out.push(fan);
            }
        }
    }
    out
}

/// One smooth complete Picard-one variety, or one catalog row.
#[derive(Clone, Debug)]
pub struct ClassifiedVariety {
    pub datum: SphericalDatum,
    pub fan: ColoredFan,
    /// Number of closed orbits, i.e. of maximal colored cones.
    pub orbit_count: usize,
    pub label: String,
    /// Whether `G/H` may be Hermitian.
    pub may_be_hermitian: bool,
    /// Catalog row that completes the classical list: the `D_l` two-orbit
    /// variety read in type `A3 = D3`.
    pub supplementary: bool,
}

impl ClassifiedVariety {
    fn new(datum: SphericalDatum, fan: ColoredFan, label: String) -> Self {
        let orbit_count = fan.maximal_cones().len();
        let may_be_hermitian = hermitian_admissible(&datum);
        ClassifiedVariety { datum, fan, orbit_count, label, may_be_hermitian, supplementary: false }
    }

    pub fn key(&self) -> EntryKey {
        EntryKey::of(&self.datum, &self.fan, &identity(self.datum.rank()), 0)
    }

    /// Smallest key over diagram automorphisms and color-slot swaps.
    pub fn orbit_key(&self) -> EntryKey {
        let rs = self.datum.system();
        let doubled = self.datum.fibers().iter().filter(|&&f| f == 2).count();
        rs.diagram_automorphisms()
            .iter()
            .flat_map(|perm| (0u32..1 << doubled).map(move |m| (perm, m)))
            .map(|(perm, m)| EntryKey::of(&self.datum, &self.fan, perm, m))
            .min()
            .expect("identity")
    }
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

impl fmt::Display for ClassifiedVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs = self.datum.system();
        write!(f, "{} [{}] chi = {}", rs.label(), self.label, lattice_name(rs, self.datum.chi()))?;
        if self.datum.fibers().contains(&2) {
            write!(f, ", fibers {:?}", self.datum.fibers())?;
        }
        write!(f, "; ")?;
        let cones: Vec<String> = self.fan.maximal_cones().iter().map(|c| describe_cone(&self.datum, c)).collect();
        write!(f, "{}", cones.join(" ; "))?;
        if self.may_be_hermitian {
            write!(f, "; may be Hermitian")?;
        }
        if self.supplementary {
            write!(f, "; supplementary")?;
        }
        Ok(())
    }
}

/// Comparison key of a datum with a fan after relabeling the simple roots
/// by `perm` and swapping the slots of the doubled fibers selected by `swap`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntryKey {
    label: String,
    fibers: Vec<u8>,
    exceptional: Vec<usize>,
    hermitian: bool,
    chi: Lattice,
    cones: Vec<ColoredCone>,
}

impl EntryKey {
    fn of(datum: &SphericalDatum, fan: &ColoredFan, perm: &[usize], swap: u32) -> EntryKey {
        let rs = datum.system();
        let l = datum.rank();
        let doubled: Vec<usize> = (0..l).filter(|&i| datum.fibers()[i] == 2).collect();
        let swapped: BTreeSet<usize> =
            doubled.iter().enumerate().filter(|(k, _)| swap >> k & 1 == 1).map(|(_, &i)| i).collect();
        let mut fibers = vec![1; l];
        for i in 0..l {
            fibers[perm[i]] = datum.fibers()[i];
        }
        let exceptional = datum.exceptional().iter().map(|&i| perm[i]).collect::<BTreeSet<_>>().into_iter().collect();
        let map = |v: &RationalVector| rs.apply_automorphism(perm, v);
        let chi_gens: Vec<RationalVector> = datum.chi().basis().iter().map(map).collect();
        let chi = Lattice::from_generators(l, &chi_gens).expect("image lattice");
        let mut cones: Vec<ColoredCone> = fan
            .maximal_cones()
            .iter()
            .map(|cc| {
                let colors = cc.colors.iter().map(|c| {
                    let c = if swapped.contains(&c.index) { c.swapped() } else { *c };
                    ColorId::new(perm[c.index], c.slot)
                });
                ColoredCone::new(cc.cone.map(map), colors)
            })
            .collect();
        cones.sort();
        EntryKey { label: rs.label().to_string(), fibers, exceptional, hermitian: datum.is_hermitian(), chi, cones }
    }
}

/// Search parameters of the enumerator.
#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// Bound on the fundamental-coweight coefficients of `v`; `None` means
    /// rank + 2.
    pub bound: Option<usize>,
    pub strategy: Strategy,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { bound: None, strategy: Strategy::Pruned }
    }
}

impl ClassifyOptions {
    pub fn bound_for(&self, rank: usize) -> usize {
        self.bound.unwrap_or(rank + 2)
    }
}

/// Smooth candidates of one datum, in candidate order.
pub fn smooth_candidates(
    datum: &SphericalDatum,
    bound: usize,
    strategy: Strategy,
) -> Result<Vec<ColoredCone>, SmoothError> {
    let cands = candidate_colored_cones(datum, bound, strategy);
    let verdicts: Vec<Result<bool, SmoothError>> =
        cands.par_iter().map(|cc| is_smooth(datum, cc).map(|r| r.smooth)).collect();
    let mut out = Vec::new();
    for (cc, v) in cands.into_iter().zip(verdicts) {
        if v? {
            out.push(cc);
        }
    }
    Ok(out)
}

/// Picard-one varieties of one datum, before symmetry reduction.
pub fn picard_one_for_datum(datum: &SphericalDatum, opts: &ClassifyOptions) -> Result<Vec<ColoredFan>, SmoothError> {
    let smooth = smooth_candidates(datum, opts.bound_for(datum.rank()), opts.strategy)?;
    let fans = assemble_fans(datum, &smooth);
    Ok(fans
        .into_par_iter()
        .filter(|fan| is_complete(datum, fan) && picard_rank(datum, fan) == Ok(1))
        .collect())
}

/// All smooth complete varieties with Picard number one over every datum of
/// the type, one representative per orbit of the diagram automorphisms and
/// color-slot swaps, sorted by that orbit.
pub fn enumerate_picard_one(label: &TypeLabel, opts: &ClassifyOptions) -> Result<Vec<ClassifiedVariety>, SmoothError> {
    let catalog: BTreeMap<EntryKey, String> =
        catalog_for(label)?.into_iter().map(|e| (e.orbit_key(), e.label)).collect();
    let mut found: BTreeMap<EntryKey, ClassifiedVariety> = BTreeMap::new();
    for variant in data_for_type(label)? {
        for fan in picard_one_for_datum(&variant.datum, opts)? {
            let mut e = ClassifiedVariety::new(variant.datum.clone(), fan, String::new());
            let orbit = e.orbit_key();
            e.label = catalog.get(&orbit).cloned().unwrap_or_else(|| "unlisted".into());
            let better = match found.get(&orbit) {
                Some(old) => e.key() < old.key(),
                None => true,
            };
            if better {
                found.insert(orbit, e);
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Restricted types covered up to the given rank: `A1xA1`, `A_l`, `B_l`
/// (`l ≥ 2`), `C_l` (`l ≥ 3`), `BC_l`, `D_l` (`l ≥ 4`), and the exceptional
/// types `E6`, `E7`, `E8`, `F4`, `G2`.
pub fn supported_types(max_rank: usize) -> Vec<TypeLabel> {
    let mut out = vec![TypeLabel(vec![(Family::A, 1), (Family::A, 1)])];
    for (fam, lo) in [(Family::A, 1), (Family::B, 2), (Family::C, 3), (Family::BC, 1), (Family::D, 4)] {
        for l in lo..=max_rank {
            out.push(TypeLabel::irreducible(fam, l));
        }
    }
    for (fam, l) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
        out.push(TypeLabel::irreducible(fam, l));
    }
    out
}

/// Whether a type is one of those the catalog describes.
pub fn is_supported(label: &TypeLabel) -> bool {
    match label.0.as_slice() {
        [(Family::A, 1), (Family::A, 1)] => true,
        [(Family::C, l)] => *l >= 3,
        [(f, l)] => f.admits(*l),
        _ => false,
    }
}

/// The whole reference catalog up to the given rank.
pub fn reference_catalog(max_rank: usize) -> Result<Vec<ClassifiedVariety>, SmoothError> {
    let mut out = Vec::new();
    for t in supported_types(max_rank) {
        out.extend(catalog_for(&t)?);
    }
    Ok(out)
}

/// Builder for catalog rows of one type.
struct Rows {
    rs: Arc<RootSystem>,
    out: Vec<ClassifiedVariety>,
}

impl Rows {
    fn new(label: &TypeLabel) -> Result<Self, SmoothError> {
        Ok(Rows { rs: Arc::new(RootSystem::build(label)?), out: Vec::new() })
    }

    /// `-Σ c_i ω_i^∨` with 1-based indices.
    fn coweight(&self, terms: &[(i64, usize)]) -> RationalVector {
        terms.iter().fold(RationalVector::zeros(self.rs.rank()), |acc, &(c, i)| {
            acc.axpy(&rat(-c), &self.rs.fundamental_coweights()[i - 1])
        })
    }

    /// χ(S) as the dual of the lattice spanned by the given coweights.
    fn chi_from_star(&self, gens: &[RationalVector]) -> Lattice {
        Lattice::from_generators(self.rs.rank(), gens)
            .and_then(|l| l.dual(self.rs.gram()))
            .expect("full-rank coweight lattice")
    }

    /// A row whose maximal cones are `(cone(α_i^∨ : i ∈ colors, v), colors)`
    /// with 1-based color indices.
    fn row(&mut self, label: &str, chi: Lattice, cones: &[(&[usize], RationalVector)]) {
        let datum = SphericalDatum::plain(self.rs.clone(), chi).expect("catalog lattice");
        let max: Vec<ColoredCone> = cones
            .iter()
            .map(|(colors, v)| {
                let ids: Vec<ColorId> = colors.iter().map(|&i| ColorId::single(i - 1)).collect();
                let v = datum.primitive(v).expect("nonzero");
                ColoredCone::from_colors_and_vectors(&datum, &ids, &[v])
            })
            .collect();
        let fan = ColoredFan::from_maximal(&datum, &max);
        self.out.push(ClassifiedVariety::new(datum, fan, label.to_string()));
    }
}

/// The catalog rows of one restricted type.
pub fn catalog_for(label: &TypeLabel) -> Result<Vec<ClassifiedVariety>, SmoothError> {
    let mut rows = Rows::new(label)?;
    let rs = rows.rs.clone();
    let q = rs.root_lattice();
    let p = rs.weight_lattice();
    let w = |i: usize| rs.fundamental_weights()[i - 1].clone();
    match label.0.as_slice() {
        [(Family::A, 1), (Family::A, 1)] => {
            let chi = Lattice::from_generators(2, &[w(1).scale(&rat(2)), &w(1) + &w(2)]).expect("basis");
            let v = rows.coweight(&[(1, 1), (1, 2)]);
            rows.row("A1xA1 two-orbit", chi, &[(&[1], v.clone()), (&[2], v)]);
        }
        [(Family::A | Family::BC, 1)] => {
            let v = rows.coweight(&[(1, 1)]);
            let fam = &label.0[0].0;
            rows.row(&format!("{fam}1 rank one"), q.clone(), &[(&[], v.clone())]);
            if p != q {
                rows.row(&format!("{fam}1 rank one"), p, &[(&[], v)]);
            }
        }
        [(Family::A, l)] => {
            let l = *l;
            let left: Vec<usize> = (1..l).collect();
            let right: Vec<usize> = (2..=l).collect();
            rows.row("A_l simple left", q.clone(), &[(&left, rows.coweight(&[(1, 1)]))]);
            rows.row("A_l simple right", q, &[(&right, rows.coweight(&[(1, l)]))]);
            if l == 2 {
                let v = rows.coweight(&[(1, 1), (1, 2)]);
                rows.row("A2 two-orbit", p, &[(&[1], v.clone()), (&[2], v)]);
            }
            if l == 3 {
                let wv = |i: usize| rs.fundamental_coweights()[i - 1].clone();
                let chi = rows.chi_from_star(&[wv(2), &wv(1) + &wv(3), wv(3).scale(&rat(2))]);
                let v = rows.coweight(&[(1, 2)]);
                rows.row("A3 = D3 two-orbit", chi, &[(&[1, 2], v.clone()), (&[2, 3], v)]);
                rows.out.last_mut().expect("row").supplementary = true;
            }
        }
        [(Family::B, 2)] => {
            rows.row("B2 simple, H = N(G^theta)", q, &[(&[1], rows.coweight(&[(1, 1)]))]);
            rows.row("B2 simple, H = G^theta", p, &[(&[2], rows.coweight(&[(1, 2)]))]);
        }
        [(fam @ (Family::B | Family::C | Family::BC), l)] => {
            let colors: Vec<usize> = (1..*l).collect();
            let chi = if *fam == Family::C { p } else { q };
            rows.row(&format!("{fam}_l simple"), chi, &[(&colors, rows.coweight(&[(1, 1)]))]);
        }
        [(Family::D, l)] => {
            let l = *l;
            let wv = |i: usize| rs.fundamental_coweights()[i - 1].clone();
            let triples: Vec<(usize, usize, usize)> =
                if l == 4 { vec![(1, 3, 4), (3, 1, 4), (4, 1, 3)] } else { vec![(1, l - 1, l)] };
            for (i, j, k) in triples {
                let mut star: Vec<RationalVector> = (1..=l).filter(|&x| x != j && x != k).map(wv).collect();
                star.push(&wv(j) + &wv(k));
                star.push(wv(k).scale(&rat(2)));
                let chi = rows.chi_from_star(&star);
                let mut base: Vec<usize> = (1..=l).filter(|&x| x != j && x != k).collect();
                base.sort();
                let mut first = base.clone();
                first.push(j);
                first.sort();
                let mut second = base;
                second.push(k);
                second.sort();
                let v = rows.coweight(&[(1, i)]);
                rows.row("D_l two-orbit", chi, &[(&first, v.clone()), (&second, v)]);
            }
        }
        [(Family::G, 2)] => {
            rows.row("G2 simple", q, &[(&[2], rows.coweight(&[(1, 2)]))]);
        }
        [(Family::E | Family::F, _)] => {}
        _ => {}
    }
    Ok(rows.out)
}

/// Outcome of comparing the enumerator with the catalog for one type.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub label: TypeLabel,
    pub catalog_entries: usize,
    pub orbits: usize,
    pub supplementary: usize,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
    /// Catalog rows whose Hermitian flag disagrees with the lattice test.
    pub hermitian_mismatch: Vec<String>,
}

impl VerifyReport {
    pub fn matches(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.hermitian_mismatch.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.catalog_entries;
        let s = if n == 1 { "entry" } else { "entries" };
        let o = if self.orbits == 1 { "orbit" } else { "orbits" };
        if self.matches() {
            write!(f, "{}: {n} {s}, match ({} {o}", self.label, self.orbits)?;
            if self.supplementary > 0 {
                write!(f, "; {} supplementary", self.supplementary)?;
            }
            return write!(f, ")");
        }
        write!(f, "{}: {n} {s}, MISMATCH", self.label)?;
        for m in &self.missing {
            write!(f, "\n  missing: {m}")?;
        }
        for m in &self.extra {
            write!(f, "\n  extra: {m}")?;
        }
        for m in &self.hermitian_mismatch {
            write!(f, "\n  hermitian flag: {m}")?;
        }
        Ok(())
    }
}

/// Set comparison, modulo the symmetries, of the enumeration and the catalog.
pub fn verify_against_catalog(label: &TypeLabel, opts: &ClassifyOptions) -> Result<VerifyReport, SmoothError> {
    let catalog = catalog_for(label)?;
    let found = enumerate_picard_one(label, opts)?;
    let cat: BTreeMap<EntryKey, &ClassifiedVariety> = catalog.iter().map(|e| (e.orbit_key(), e)).collect();
    let got: BTreeMap<EntryKey, &ClassifiedVariety> = found.iter().map(|e| (e.orbit_key(), e)).collect();
    let missing = cat.iter().filter(|(k, _)| !got.contains_key(*k)).map(|(_, e)| e.to_string()).collect();
    let extra = got.iter().filter(|(k, _)| !cat.contains_key(*k)).map(|(_, e)| e.to_string()).collect();
    let hermitian_mismatch = catalog
        .iter()
        .filter(|e| e.may_be_hermitian != hermitian_admissible(&e.datum))
        .map(|e| e.to_string())
        .collect();
    Ok(VerifyReport {
        label: label.clone(),
        catalog_entries: catalog.len(),
        orbits: cat.len(),
        supplementary: catalog.iter().filter(|e| e.supplementary).count(),
        missing,
        extra,
        hermitian_mismatch,
    })
}

/// `root`, `weight`, or a basis in fundamental-weight coordinates.
pub fn lattice_name(rs: &RootSystem, chi: &Lattice) -> String {
    if *chi == rs.root_lattice() {
        return "root".into();
    }
    if *chi == rs.weight_lattice() {
        return "weight".into();
    }
    let q = rs.root_lattice();
    let w = rs.fundamental_weights();
    let n = w.len();
    let mut small: Vec<RationalVector> = w.to_vec();
    for i in 0..n {
        small.push(w[i].scale(&rat(2)));
        for j in i + 1..n {
            small.push(&w[i] + &w[j]);
        }
    }
    small.retain(|g| chi.contains(g) && !q.contains(g));
    for g in &small {
        if q.with_generator(g) == *chi {
            return format!("root + {}", describe_weight(rs, g));
        }
    }
    for (a, g) in small.iter().enumerate() {
        for h in &small[a + 1..] {
            if q.with_generator(g).with_generator(h) == *chi {
                return format!("root + {} + {}", describe_weight(rs, g), describe_weight(rs, h));
            }
        }
    }
    let gens: Vec<String> = chi.basis().iter().map(|b| describe_weight(rs, b)).collect();
    format!("<{}>", gens.join(", "))
}

/// `Σ c_i w_i` with `c_i = (x, α_i^∨)`.
pub fn describe_weight(rs: &RootSystem, x: &RationalVector) -> String {
    let parts: Vec<String> = rs
        .simple_coroots()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| {
            let c = rs.inner(x, a);
            if c == rat(0) {
                None
            } else if c == rat(1) {
                Some(format!("w{}", i + 1))
            } else if c == rat(-1) {
                Some(format!("-w{}", i + 1))
            } else {
                Some(format!("{c}w{}", i + 1))
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Rays named as simple coroots `a_i` or as coweight combinations.
pub fn describe_cone(datum: &SphericalDatum, cc: &ColoredCone) -> String {
    let rs = datum.system();
    let rays: Vec<String> = cc
        .cone
        .rays()
        .iter()
        .map(|r| {
            let p = datum.primitive(r).unwrap_or_else(|| r.clone());
            for (i, a) in rs.simple_coroots().iter().enumerate() {
                if datum.primitive(a).as_ref() == Some(&p) {
                    return format!("a{}", i + 1);
                }
            }
            rs.describe_coweight(&p)
        })
        .collect();
    format!("(cone({}), {})", rays.join(", "), cc.colors_label())
}

//! Rational polyhedral cones with exact double description.
//!
//! A [`Cone`] keeps both representations in canonical integer form:
//! a lineality basis and extreme rays on one side, equations and facet
//! normals on the other. Inequalities read `a · x >= 0` for the standard
//! dot product of ambient coordinates.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactlin::{
    int_dot, inverse, make_primitive, nullspace, rat, rref, Rational, RationalVector,
};

type IntVec = Vec<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    dim: usize,
    lineality: Vec<IntVec>,
    rays: Vec<IntVec>,
    equations: Vec<IntVec>,
    facets: Vec<IntVec>,
}

fn to_int(v: &RationalVector) -> Option<IntVec> {
    v.primitive_integer()
}

fn to_rat(v: &[BigInt]) -> RationalVector {
    RationalVector::from_bigints(v)
}

/// Canonical basis of a subspace: reduced echelon rows made primitive.
fn canonical_subspace(vs: &[RationalVector]) -> Vec<IntVec> {
    if vs.is_empty() {
        return Vec::new();
    }
    let (r, _) = rref(vs);
    r.iter().filter_map(to_int).collect()
}

/// Orthogonal projection (standard dot) onto the complement of `span(basis)`.
fn project_out(basis: &[IntVec], v: &[BigInt]) -> IntVec {
    if basis.is_empty() {
        return v.to_vec();
    }
    let b: Vec<RationalVector> = basis.iter().map(|x| to_rat(x)).collect();
    let gram: Vec<RationalVector> = b
        .iter()
        .map(|x| RationalVector::new(b.iter().map(|y| x.dot(y)).collect()))
        .collect();
    let ginv = inverse(&gram).expect("independent basis");
    let x = to_rat(v);
    let proj: Vec<Rational> = b.iter().map(|bi| bi.dot(&x)).collect();
    let mut out = x.clone();
    for (i, bi) in b.iter().enumerate() {
        let c = ginv[i]
            .coords()
            .iter()
            .zip(&proj)
            .fold(Rational::zero(), |acc, (g, p)| acc + g * p);
        out = out.axpy(&(-c), bi);
    }
    out.primitive_integer().unwrap_or_else(|| vec![BigInt::zero(); v.len()])
}

/// Set of inequality indices, as a bit set.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(n: usize) -> Self {
        ZeroSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn upto(n: usize, k: usize) -> Self {
        let mut z = Self::new(n);
        for i in 0..k {
            z.insert(i);
        }
        z
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Self) -> Self {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Double description: generators of `{x : E x = 0, A x >= 0}`.
///
/// Returns `(lineality basis, extreme rays)`; rays are extreme modulo the
/// lineality space but not yet projected or canonical.
fn double_description(dim: usize, equations: &[IntVec], inequalities: &[IntVec]) -> (Vec<IntVec>, Vec<IntVec>) {
    let eq_rows: Vec<RationalVector> = equations.iter().map(|e| to_rat(e)).collect();
    let mut lin: Vec<IntVec> = nullspace(&eq_rows, dim)
        .iter()
        .filter_map(to_int)
        .collect();
    let space = lin.len();
    let m = inequalities.len();
    // Each ray carries the set of processed inequalities it satisfies with equality.
    let mut rays: Vec<(IntVec, ZeroSet)> = Vec::new();
    for (k, a) in inequalities.iter().enumerate() {
        if let Some(p) = lin.iter().position(|b| !int_dot(a, b).is_zero()) {
            let mut b0 = lin.swap_remove(p);
            let mut ab0 = int_dot(a, &b0);
            if ab0.is_negative() {
                b0 = b0.iter().map(|x| -x).collect();
                ab0 = -ab0;
            }
            let reduce = |v: &IntVec| -> IntVec {
                let av = int_dot(a, v);
                if av.is_zero() {
                    return v.clone();
                }
                let w: IntVec = v.iter().zip(&b0).map(|(x, y)| &ab0 * x - &av * y).collect();
                make_primitive(w)
            };
            lin = lin.iter().map(reduce).collect();
            for (r, z) in rays.iter_mut() {
                *r = reduce(r);
                z.insert(k);
            }
            // Earlier inequalities all vanish on lineality directions.
            rays.push((b0, ZeroSet::upto(m, k)));
            continue;
        }
        // Adjacent rays of a pointed cone of dimension p share p - 2 tight
        // inequalities.
        let pointed_dim = space - lin.len();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for (r, z) in rays.drain(..) {
            let s = int_dot(a, &r);
            if s.is_zero() {
                let mut z = z;
                z.insert(k);
                next.push((r, z));
            } else if s.is_positive() {
                pos.push((r, z, s));
            } else {
                neg.push((r, z, s));
            }
        }
        let zero_count = next.len();
        let mut combined = Vec::new();
        for (ip, (p, zp, sp)) in pos.iter().enumerate() {
            for (in_, (n, zn, sn)) in neg.iter().enumerate() {
                let common = zp.and(zn);
                if common.len() + 2 < pointed_dim {
                    continue;
                }
                let adjacent = next[..zero_count]
                    .iter()
                    .map(|(_, z)| z)
                    .chain(pos.iter().enumerate().filter(|&(i, _)| i != ip).map(|(_, (_, z, _))| z))
                    .chain(neg.iter().enumerate().filter(|&(i, _)| i != in_).map(|(_, (_, z, _))| z))
                    .all(|z| !common.is_subset(z));
                if !adjacent {
                    continue;
                }
                let w: IntVec = n.iter().zip(p).map(|(x, y)| sp * x - sn * y).collect();
                let mut z = common;
                z.insert(k);
                combined.push((make_primitive(w), z));
            }
        }
        next.extend(pos.into_iter().map(|(r, z, _)| (r, z)));
        next.extend(combined);
        rays = next;
    }
    (lin, rays.into_iter().map(|(r, _)| r).collect())
}

impl Cone {
    /// Canonical cone from an H-representation.
    pub fn from_hrep(dim: usize, equations: &[RationalVector], inequalities: &[RationalVector]) -> Cone {
        let eqs: Vec<IntVec> = equations.iter().filter_map(to_int).collect();
        let ineqs: Vec<IntVec> = inequalities.iter().filter_map(to_int).collect();
        let (lin, rays) = double_description(dim, &eqs, &ineqs);
        let lin_r: Vec<RationalVector> = lin.iter().map(|x| to_rat(x)).collect();
        Self::from_generators_with_lineality(dim, &rays.iter().map(|x| to_rat(x)).collect::<Vec<_>>(), &lin_r)
    }

    pub fn from_generators(dim: usize, gens: &[RationalVector]) -> Cone {
        Self::from_generators_with_lineality(dim, gens, &[])
    }

    /// Canonical cone `cone(gens) + span(lineality)`.
    pub fn from_generators_with_lineality(dim: usize, gens: &[RationalVector], lineality: &[RationalVector]) -> Cone {
        for g in gens.iter().chain(lineality) {
            assert_eq!(g.dim(), dim, "generator dimension");
        }
        let g: Vec<IntVec> = gens.iter().filter_map(to_int).collect();
        let l: Vec<IntVec> = lineality.iter().filter_map(to_int).collect();
        // Dual: a.g >= 0 for rays, a.l = 0 for lineality.
        let (dual_lin, dual_rays) = double_description(dim, &l, &g);
        let dlin_r: Vec<RationalVector> = dual_lin.iter().map(|x| to_rat(x)).collect();
        let equations = canonical_subspace(&dlin_r);
        let mut facets: Vec<IntVec> = dual_rays.iter().map(|f| project_out(&equations, f)).collect();
        facets.retain(|f| f.iter().any(|x| !x.is_zero()));
        facets.sort();
        facets.dedup();
        // Primal from the irredundant H-representation.
        let (lin, rays) = double_description(dim, &equations, &facets);
        let lin_r: Vec<RationalVector> = lin.iter().map(|x| to_rat(x)).collect();
        let lineality = canonical_subspace(&lin_r);
        let mut rays: Vec<IntVec> = rays.iter().map(|r| project_out(&lineality, r)).collect();
        rays.retain(|r| r.iter().any(|x| !x.is_zero()));
        rays.sort();
        rays.dedup();
        Cone { dim, lineality, rays, equations, facets }
    }

    pub fn zero(dim: usize) -> Cone {
        Self::from_generators(dim, &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Primitive integer ray generators, canonical and sorted.
    pub fn rays(&self) -> Vec<RationalVector> {
        self.rays.iter().map(|r| to_rat(r)).collect()
    }

    pub fn lineality(&self) -> Vec<RationalVector> {
        self.lineality.iter().map(|r| to_rat(r)).collect()
    }

    /// Normals `a` of the facet inequalities `a · x >= 0`.
    pub fn facets(&self) -> Vec<RationalVector> {
        self.facets.iter().map(|r| to_rat(r)).collect()
    }

    pub fn equations(&self) -> Vec<RationalVector> {
        self.equations.iter().map(|r| to_rat(r)).collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dimension()
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        self.equations.iter().all(|e| to_rat(e).dot(v).is_zero())
            && self.facets.iter().all(|f| !to_rat(f).dot(v).is_negative())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays().iter().all(|r| self.contains(r))
            && other.lineality().iter().all(|l| self.contains(l) && self.contains(&-l))
    }

    pub fn relint_contains(&self, v: &RationalVector) -> bool {
        self.equations.iter().all(|e| to_rat(e).dot(v).is_zero())
            && self.facets.iter().all(|f| to_rat(f).dot(v).is_positive())
    }

    /// A point of the relative interior: the sum of the extreme rays.
    pub fn relint_point(&self) -> RationalVector {
        self.rays
            .iter()
            .fold(RationalVector::zeros(self.dim), |acc, r| &acc + &to_rat(r))
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        let mut eqs = self.equations();
        eqs.extend(other.equations());
        let mut ineqs = self.facets();
        ineqs.extend(other.facets());
        Cone::from_hrep(self.dim, &eqs, &ineqs)
    }

    /// True iff the relative interiors meet.
    pub fn relint_meets(&self, other: &Cone) -> bool {
        let p = self.intersection(other).relint_point();
        self.relint_contains(&p) && other.relint_contains(&p)
    }

    /// Image under the linear map `f`.
    pub fn map(&self, f: impl Fn(&RationalVector) -> RationalVector) -> Cone {
        let gens: Vec<RationalVector> = self.rays().iter().map(&f).collect();
        let lin: Vec<RationalVector> = self.lineality().iter().map(&f).collect();
        Cone::from_generators_with_lineality(self.dim, &gens, &lin)
    }

    /// `{w : a · w >= 0 for all a in self}` under the standard dot product.
    pub fn dual_standard(&self) -> Cone {
        Cone::from_generators_with_lineality(self.dim, &self.facets(), &self.equations())
    }

    /// `{w : (w, c) >= 0 for all c in self}` for the form with Gram matrix `gram`.
    pub fn dual(&self, gram: &[Vec<Rational>]) -> Cone {
        let g: Vec<RationalVector> = gram.iter().map(|row| RationalVector::new(row.clone())).collect();
        let ginv = inverse(&g).expect("nondegenerate form");
        let raise = |x: &RationalVector| RationalVector::new(ginv.iter().map(|row| row.dot(x)).collect());
        let gens: Vec<RationalVector> = self.facets().iter().map(raise).collect();
        let lin: Vec<RationalVector> = self.equations().iter().map(raise).collect();
        Cone::from_generators_with_lineality(self.dim, &gens, &lin)
    }

    /// All faces of a pointed cone, from `{0}` up to the cone itself,
    /// ordered by dimension and then canonically.
    pub fn faces(&self) -> Result<Vec<Cone>, ConeError> {
        if !self.is_pointed() {
            return Err(ConeError::NotPointed);
        }
        let n = self.rays.len();
        let tight: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| (0..n).filter(|&i| int_dot(f, &self.rays[i]).is_zero()).collect())
            .collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut stack = vec![(0..n).collect::<BTreeSet<usize>>()];
        while let Some(s) = stack.pop() {
            if !seen.insert(s.clone()) {
                continue;
            }
            for t in &tight {
                let i: BTreeSet<usize> = s.intersection(t).copied().collect();
                if !seen.contains(&i) {
                    stack.push(i);
                }
            }
        }
        let mut faces: Vec<Cone> = seen
            .iter()
            .map(|s| {
                let gens: Vec<RationalVector> = s.iter().map(|&i| to_rat(&self.rays[i])).collect();
                Cone::from_generators(self.dim, &gens)
            })
            .collect();
        faces.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then_with(|| a.cmp(b)));
        faces.dedup();
        Ok(faces)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone(")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", to_rat(r))?;
        }
        if !self.lineality.is_empty() {
            write!(f, "; lin")?;
            for r in &self.lineality {
                write!(f, " {}", to_rat(r))?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("cone is not pointed")]
    NotPointed,
}

/// Outcome of a covering test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Covered,
    /// A point of the target outside every piece.
    Uncovered(RationalVector),
}

impl Coverage {
    pub fn is_covered(&self) -> bool {
        matches!(self, Coverage::Covered)
    }
}

/// Decides `target ⊆ ∪ pieces` by subtracting pieces from the target region
/// by region.
///
/// Residual regions of lower dimension than the target are discarded: a
/// finite union of closed cones that covers a dense subset of the target
/// covers all of it.
pub fn cone_covers(target: &Cone, pieces: &[Cone]) -> Coverage {
    let d = target.dimension();
    let span_eqs = target.equations();
    let mut residuals = vec![target.clone()];
    for piece in pieces {
        let restricted = Cone::from_hrep(target.dim, &[span_eqs.clone(), piece.equations()].concat(), &piece.facets());
        if restricted.dimension() < d {
            continue;
        }
        let fs = restricted.facets();
        let mut next = Vec::new();
        for r in residuals {
            for k in 0..fs.len() {
                let mut ineqs = r.facets();
                ineqs.push(-&fs[k]);
                ineqs.extend(fs[..k].iter().cloned());
                let piece_k = Cone::from_hrep(target.dim, &r.equations(), &ineqs);
                if piece_k.dimension() == d {
                    next.push(piece_k);
                }
            }
        }
        residuals = next;
        if residuals.is_empty() {
            return Coverage::Covered;
        }
    }
    match residuals.first() {
        None => Coverage::Covered,
        Some(r) => Coverage::Uncovered(uncovered_point(r, pieces)),
    }
}

/// A relative-interior point of `r` avoiding every piece, trying a few
/// weightings of the rays; lower-dimensional pieces can only catch finitely
/// many of them.
fn uncovered_point(r: &Cone, pieces: &[Cone]) -> RationalVector {
    let mut rays = r.rays();
    for l in r.lineality() {
        rays.push(-&l);
        rays.push(l);
    }
    let mut fallback = None;
    for t in 0..=(pieces.len() * rays.len() + 1) {
        let p = rays.iter().enumerate().fold(RationalVector::zeros(r.dim), |acc, (i, ray)| {
            let w = 1 + ((t * (i + 1)) % (rays.len() + 2)) as i64 * (t as i64 + 1);
            acc.axpy(&rat(w), ray)
        });
        let p = RationalVector::from_bigints(&p.primitive_integer().unwrap_or_else(|| vec![BigInt::zero(); r.dim]));
        if fallback.is_none() {
            fallback = Some(p.clone());
        }
        if r.relint_contains(&p) && pieces.iter().all(|c| !c.contains(&p)) {
            return p;
        }
    }
    fallback.expect("at least one attempt")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    fn identity(n: usize) -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
            .collect()
    }

    #[test]
    fn redundant_generator_dropped() {
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]);
        assert_eq!(c.rays(), vec![v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(c.dimension(), 2);
        assert!(c.is_simplicial());
    }

    #[test]
    fn empty_generators_give_origin() {
        let c = Cone::from_generators(3, &[]);
        assert!(c.is_zero());
        assert_eq!(c.dimension(), 0);
        assert!(c.contains(&v(&[0, 0, 0])));
        assert!(!c.contains(&v(&[1, 0, 0])));
        assert!(c.relint_contains(&v(&[0, 0, 0])));
        assert_eq!(c.faces().unwrap().len(), 1);
    }

    #[test]
    fn scaling_is_canonicalized() {
        let a = Cone::from_generators(2, &[v(&[2, 4]), v(&[3, 0])]);
        let b = Cone::from_generators(2, &[v(&[1, 2]), v(&[1, 0]), v(&[2, 2])]);
        assert_eq!(a, b);
    }

    #[test]
    fn lineality_and_halfspaces() {
        let half = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1]), v(&[0, -1])]);
        assert!(!half.is_pointed());
        assert_eq!(half.dimension(), 2);
        assert_eq!(half.facets(), vec![v(&[1, 0])]);
        let line = Cone::from_generators(2, &[v(&[1, 1]), v(&[-2, -2])]);
        assert_eq!(line.dimension(), 1);
        assert!(line.rays().is_empty());
        let whole = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])]);
        assert_eq!(whole.lineality().len(), 2);
        assert!(whole.facets().is_empty());
    }

    #[test]
    fn orthant_self_dual() {
        let o = Cone::from_generators(3, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(o.dual(&identity(3)), o);
        let skew = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 2])]);
        assert_eq!(skew.dual(&identity(2)).dual(&identity(2)), skew);
    }

    #[test]
    fn dual_under_gram() {
        // Form with Gram [[2,1],[1,2]]; the dual of the cone spanned by the
        // dual basis vectors is the cone spanned by the basis.
        let g = vec![vec![rat(2), rat(1)], vec![rat(1), rat(2)]];
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]);
        let d = c.dual(&g);
        for r in d.rays() {
            for s in c.rays() {
                assert!(crate::exactlin::pairing(&g, &r, &s) >= rat(0));
            }
        }
        assert_eq!(d.dual(&g), c);
    }

    #[test]
    fn face_counts() {
        let two = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 1])]);
        assert_eq!(two.faces().unwrap().len(), 4);
        let ray = Cone::from_generators(3, &[v(&[1, 2, 3])]);
        assert_eq!(ray.faces().unwrap().len(), 2);
        let square = Cone::from_generators(3, &[v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])]);
        // {0}, four rays, four 2-faces, itself.
        assert_eq!(square.faces().unwrap().len(), 10);
        let half = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1]), v(&[0, -1])]);
        assert_eq!(half.faces(), Err(ConeError::NotPointed));
    }

    #[test]
    fn relint_tests() {
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert!(c.relint_meets(&c));
        let d = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, -1])]);
        assert!(!c.relint_meets(&d));
        let ray = Cone::from_generators(2, &[v(&[1, 1])]);
        assert!(c.relint_meets(&ray));
        let edge = Cone::from_generators(2, &[v(&[1, 0])]);
        assert!(!c.relint_meets(&edge));
        assert!(c.relint_contains(&v(&[1, 1])));
        assert!(!c.relint_contains(&v(&[1, 0])));
    }

    #[test]
    fn covering() {
        let quad = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]);
        let a = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 1])]);
        let b = Cone::from_generators(2, &[v(&[1, 1]), v(&[0, 1])]);
        assert!(cone_covers(&quad, &[a.clone(), b.clone()]).is_covered());
        assert!(cone_covers(&quad, std::slice::from_ref(&quad)).is_covered());
        match cone_covers(&quad, std::slice::from_ref(&a)) {
            Coverage::Uncovered(w) => {
                assert!(quad.contains(&w));
                assert!(!a.contains(&w));
            }
            Coverage::Covered => panic!("half of the quadrant is missing"),
        }
        // Pieces may stick out of the target.
        let big = Cone::from_generators(2, &[v(&[1, -1]), v(&[-1, 1]), v(&[1, 1])]);
        assert!(cone_covers(&quad, &[big]).is_covered());
        // A lower-dimensional target inside a full piece.
        let line = Cone::from_generators(2, &[v(&[1, 1])]);
        assert!(cone_covers(&line, std::slice::from_ref(&quad)).is_covered());
        assert!(!cone_covers(&line, &[a.intersection(&b).map(|x| -x)]).is_covered());
    }

    #[test]
    fn half_plane_contains_itself() {
        let half = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1]), v(&[0, -1])]);
        assert!(half.contains_cone(&half));
        let quad = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert!(half.contains_cone(&quad));
        assert!(!quad.contains_cone(&half));
    }
}

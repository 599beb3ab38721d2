//! Exact rational linear algebra and integer lattices.
//!
//! Everything here works over [`BigRational`] and [`BigInt`]; there is no
//! floating point anywhere in the crate. Matrices are plain slices of row
//! vectors since every system we meet has dimension at most nine.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector {0} is not in the lattice")]
    NotInLattice(String),
    #[error("zero vector has no primitivity")]
    ZeroVector,
    #[error("lattice is not contained in the larger lattice")]
    NotSublattice,
    #[error("inner product is degenerate on the span of the lattice")]
    DegenerateForm,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Coordinates in a fixed ambient basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RationalVector(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn from_bigints(xs: &[BigInt]) -> Self {
        RationalVector(xs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalVector(self.0.iter().map(|x| x * c).collect())
    }

    /// Standard dot product of coordinates.
    pub fn dot(&self, other: &Self) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn axpy(&self, c: &Rational, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + c * b).collect())
    }

    /// The primitive integer vector on the ray through `self` (standard
    /// integer structure), or `None` for the zero vector.
    pub fn primitive_integer(&self) -> Option<Vec<BigInt>> {
        if self.is_zero() {
            return None;
        }
        let l = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|x| (x * &l).to_integer()).collect();
        Some(make_primitive(ints))
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: Self) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: Self) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Divides an integer vector by the gcd of its entries.
pub fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

pub fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Symmetric bilinear form given by a Gram matrix in the ambient coordinates.
pub fn pairing(gram: &[Vec<Rational>], x: &RationalVector, y: &RationalVector) -> Rational {
    let mut acc = Rational::zero();
    for (i, xi) in x.coords().iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.coords().iter().enumerate() {
            if !yj.is_zero() {
                acc += xi * &gram[i][j] * yj;
            }
        }
    }
    acc
}

/// `gram · x`, i.e. the covector `(x, ·)` written in standard coordinates.
pub fn lower(gram: &[Vec<Rational>], x: &RationalVector) -> RationalVector {
    RationalVector(
        gram.iter()
            .map(|row| {
                row.iter()
                    .zip(x.coords())
                    .fold(Rational::zero(), |acc, (g, xi)| acc + g * xi)
            })
            .collect(),
    )
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[RationalVector]) -> (Vec<RationalVector>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.0.clone()).collect();
    let ncols = rows.first().map_or(0, |r| r.dim());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in &mut m[r] {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m.into_iter().map(RationalVector).collect(), pivots)
}

pub fn rank(rows: &[RationalVector]) -> usize {
    rref(rows).0.len()
}

/// Basis of `{x : row · x = 0 for every row}` in `dim` dimensions.
pub fn nullspace(rows: &[RationalVector], dim: usize) -> Vec<RationalVector> {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = RationalVector::zeros(dim);
            v.0[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v.0[p] = -row.0[f].clone();
            }
            v
        })
        .collect()
}

/// Coefficients `x` with `Σ x_i rows[i] = v`, when `rows` are independent and
/// `v` lies in their span.
pub fn solve_in_span(rows: &[RationalVector], v: &RationalVector) -> Option<Vec<Rational>> {
    let k = rows.len();
    let n = v.dim();
    // Transposed augmented system: n equations in k unknowns.
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut eq: Vec<Rational> = rows.iter().map(|r| r.0[j].clone()).collect();
            eq.push(v.0[j].clone());
            eq
        })
        .collect();
    let mut pivot_row_of = vec![usize::MAX; k];
    let mut r = 0;
    for c in 0..k {
        let p = (r..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in &mut m[r] {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=k {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivot_row_of[c] = r;
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some(pivot_row_of.iter().map(|&i| m[i][k].clone()).collect())
}

pub fn determinant(rows: &[RationalVector]) -> Rational {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    det
}

/// Inverse of a square matrix given by rows.
pub fn inverse(rows: &[RationalVector]) -> Option<Vec<RationalVector>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.0.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(p, c);
        let inv = m[c][c].recip();
        for x in &mut m[c] {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| RationalVector(row[n..].to_vec())).collect())
}

/// Row-style Hermite normal form of an integer matrix; zero rows dropped.
///
/// Pivots are positive and the entries above each pivot are reduced into
/// `[0, pivot)`, so the result is unique for the row lattice.
pub fn hnf_rows(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            // Row with the smallest nonzero entry in this column goes to r.
            let best = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(best) = best else { break };
            m.swap(r, best);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    let (head, tail) = m.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                        *x -= &q * y;
                    }
                    if !m[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in &mut m[r] {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                let (head, tail) = m.split_at_mut(r);
                for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

fn common_denominator<'a>(vs: impl IntoIterator<Item = &'a RationalVector>) -> BigInt {
    vs.into_iter()
        .flat_map(|v| v.coords())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Index of one lattice in another of equal rank, or infinite when the ranks
/// differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

/// A discrete subgroup of `Q^n` stored by its canonical Hermite basis, so
/// equal lattices compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    dim: usize,
    basis: Vec<RationalVector>,
    /// Inverse of the basis matrix when the lattice has full rank.
    inverse: Option<Vec<RationalVector>>,
}

impl Lattice {
    /// Canonical basis of the group of integer combinations of `generators`.
    pub fn from_generators(dim: usize, generators: &[RationalVector]) -> Result<Self, LinError> {
        for g in generators {
            if g.dim() != dim {
                return Err(LinError::DimensionMismatch { expected: dim, got: g.dim() });
            }
        }
        let d = common_denominator(generators);
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| g.coords().iter().map(|x| (x * &d).to_integer()).collect())
            .collect();
        let h = hnf_rows(&rows, dim);
        let basis = h
            .into_iter()
            .map(|row| RationalVector(row.into_iter().map(|x| Rational::new(x, d.clone())).collect()))
            .collect();
        Ok(Self::with_basis(dim, basis))
    }

    fn with_basis(dim: usize, basis: Vec<RationalVector>) -> Self {
        let inverse = if basis.len() == dim && dim > 0 { inverse(&basis) } else { None };
        Lattice { dim, basis, inverse }
    }

    pub fn standard(dim: usize) -> Self {
        Self::with_basis(dim, (0..dim).map(|i| RationalVector::unit(dim, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    fn check_dim(&self, v: &RationalVector) -> Result<(), LinError> {
        if v.dim() != self.dim {
            return Err(LinError::DimensionMismatch { expected: self.dim, got: v.dim() });
        }
        Ok(())
    }

    /// Rational coordinates of `v` in the lattice basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &RationalVector) -> Option<Vec<Rational>> {
        if self.basis.is_empty() {
            return v.is_zero().then(Vec::new);
        }
        if let Some(inv) = &self.inverse {
            // x B = v, so x = v B^{-1}.
            let mut x = vec![Rational::zero(); self.dim];
            for (vj, row) in v.0.iter().zip(inv) {
                if !vj.is_zero() {
                    for (xi, r) in x.iter_mut().zip(&row.0) {
                        *xi += vj * r;
                    }
                }
            }
            return Some(x);
        }
        solve_in_span(&self.basis, v)
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        self.check_dim(v).is_ok()
            && self
                .coordinates(v)
                .is_some_and(|x| x.iter().all(|c| c.is_integer()))
    }

    /// True iff `v` is not a proper positive multiple of another lattice vector.
    pub fn is_primitive(&self, v: &RationalVector) -> Result<bool, LinError> {
        self.check_dim(v)?;
        if v.is_zero() {
            return Err(LinError::ZeroVector);
        }
        let coords = self
            .coordinates(v)
            .filter(|x| x.iter().all(|c| c.is_integer()))
            .ok_or_else(|| LinError::NotInLattice(v.to_string()))?;
        let g = coords
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&c.to_integer()));
        Ok(g.is_one())
    }

    /// The primitive lattice vector on the ray through `v`, if that ray
    /// is rational and inside the span of the lattice.
    pub fn primitive_on_ray(&self, v: &RationalVector) -> Option<RationalVector> {
        let x = RationalVector(self.coordinates(v)?);
        let p = x.primitive_integer()?;
        Some(self.combine_int(&p))
    }

    fn combine_int(&self, coeffs: &[BigInt]) -> RationalVector {
        let mut out = RationalVector::zeros(self.dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.axpy(&Rational::from_integer(c.clone()), b);
            }
        }
        out
    }

    /// True iff `vs` is a basis of this lattice.
    pub fn is_basis(&self, vs: &[RationalVector]) -> bool {
        if vs.len() != self.rank() {
            return false;
        }
        let mut rows = Vec::with_capacity(vs.len());
        for v in vs {
            match self.coordinates(v) {
                Some(x) if x.iter().all(|c| c.is_integer()) => rows.push(RationalVector(x)),
                _ => return false,
            }
        }
        determinant(&rows).abs().is_one()
    }

    /// True iff `vs` extends to a basis: linearly independent lattice vectors
    /// spanning a saturated sublattice.
    pub fn is_part_of_basis(&self, vs: &[RationalVector]) -> bool {
        let mut rows = Vec::with_capacity(vs.len());
        for v in vs {
            match self.coordinates(v) {
                Some(x) if x.iter().all(|c| c.is_integer()) => {
                    rows.push(x.iter().map(|c| c.to_integer()).collect::<Vec<_>>())
                }
                _ => return false,
            }
        }
        if rows.is_empty() {
            return true;
        }
        let k = rows.len();
        let n = self.rank();
        if k > n {
            return false;
        }
        // Saturated and independent iff the k x k minors have gcd 1.
        let mut g = BigInt::zero();
        for cols in combinations(n, k) {
            let m: Vec<RationalVector> = rows
                .iter()
                .map(|r| RationalVector::from_bigints(&cols.iter().map(|&c| r[c].clone()).collect::<Vec<_>>()))
                .collect();
            g = g.gcd(&determinant(&m).to_integer());
            if g.is_one() {
                return true;
            }
        }
        false
    }

    pub fn is_sublattice_of(&self, sup: &Lattice) -> bool {
        self.dim == sup.dim && self.basis.iter().all(|b| sup.contains(b))
    }

    /// `[sup : self]`.
    pub fn index_in(&self, sup: &Lattice) -> Result<LatticeIndex, LinError> {
        if !self.is_sublattice_of(sup) {
            return Err(LinError::NotSublattice);
        }
        if self.rank() != sup.rank() {
            return Ok(LatticeIndex::Infinite);
        }
        let rows: Vec<RationalVector> = self
            .basis
            .iter()
            .map(|b| RationalVector(sup.coordinates(b).expect("sublattice")))
            .collect();
        Ok(LatticeIndex::Finite(determinant(&rows).abs().to_integer()))
    }

    /// `{w ∈ span : (w, b) ∈ Z for every b}` under the form `gram`.
    pub fn dual(&self, gram: &[Vec<Rational>]) -> Result<Lattice, LinError> {
        let g: Vec<RationalVector> = self
            .basis
            .iter()
            .map(|b| RationalVector(self.basis.iter().map(|c| pairing(gram, b, c)).collect()))
            .collect();
        if self.basis.is_empty() {
            return Ok(self.clone());
        }
        let ginv = inverse(&g).ok_or(LinError::DegenerateForm)?;
        let dual: Vec<RationalVector> = ginv
            .iter()
            .map(|row| {
                row.coords()
                    .iter()
                    .zip(&self.basis)
                    .fold(RationalVector::zeros(self.dim), |acc, (c, b)| acc.axpy(c, b))
            })
            .collect();
        Lattice::from_generators(self.dim, &dual)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Lattice::from_generators(self.dim, &gens).expect("same dimension")
    }

    pub fn with_generator(&self, v: &RationalVector) -> Lattice {
        let mut gens = self.basis.clone();
        gens.push(v.clone());
        Lattice::from_generators(self.dim, &gens).expect("same dimension")
    }

    /// Canonical representative of `v + self` for `v` in the span.
    pub fn coset_representative(&self, v: &RationalVector) -> Option<RationalVector> {
        let x = self.coordinates(v)?;
        let mut out = RationalVector::zeros(self.dim);
        for (c, b) in x.iter().zip(&self.basis) {
            let f = c - c.floor();
            if !f.is_zero() {
                out = out.axpy(&f, b);
            }
        }
        Some(out)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ">")
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Lexicographic order on integer vectors, used for canonical sorting.
pub fn cmp_int_vec(a: &[BigInt], b: &[BigInt]) -> Ordering {
    a.cmp(b)
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

    /// Brute-force membership: integer combinations of `gens` with
    /// coefficients in `-r..=r` that land in the box `[-b, b]^2`.
    fn box_points(gens: &[RationalVector], r: i64, b: i64) -> std::collections::BTreeSet<RationalVector> {
        let mut pts = std::collections::BTreeSet::new();
        let k = gens.len();
        let mut idx = vec![-r; k];
        loop {
            let p = gens
                .iter()
                .zip(&idx)
                .fold(RationalVector::zeros(2), |acc, (g, &c)| acc.axpy(&rat(c), g));
            if p.coords().iter().all(|x| x.abs() <= rat(b)) {
                pts.insert(p);
            }
            let mut i = 0;
            while i < k {
                idx[i] += 1;
                if idx[i] <= r {
                    break;
                }
                idx[i] = -r;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        pts
    }

    #[test]
    fn hnf_example_index_two() {
        let gens = [v(&[2, 0]), v(&[0, 2]), v(&[1, 1])];
        let l = Lattice::from_generators(2, &gens).unwrap();
        assert_eq!(l.basis(), &[v(&[1, 1]), v(&[0, 2])]);
        // Same points in a box as the brute-force span of the generators.
        let from_gens = box_points(&gens, 8, 4);
        let from_basis = box_points(l.basis(), 8, 4);
        assert_eq!(from_gens, from_basis);
    }

    #[test]
    fn hnf_trivial_cases() {
        assert_eq!(Lattice::from_generators(2, &[v(&[1, 0])]).unwrap().basis(), &[v(&[1, 0])]);
        assert!(Lattice::from_generators(2, &[v(&[0, 0])]).unwrap().basis().is_empty());
        assert_eq!(Lattice::from_generators(2, &[]).unwrap().rank(), 0);
    }

    #[test]
    fn membership() {
        let z2 = Lattice::standard(2);
        assert!(z2.contains(&v(&[0, 0])));
        let even = Lattice::from_generators(2, &[v(&[1, -1]), v(&[0, 2])]).unwrap();
        assert!(even.contains(&v(&[1, 1])));
        assert!(!even.contains(&v(&[1, 0])));
        assert!(!even.contains(&RationalVector::new(vec![frac(1, 2), frac(1, 2)])));
    }

    #[test]
    fn primitivity() {
        let z2 = Lattice::standard(2);
        assert!(!z2.is_primitive(&v(&[2, 2])).unwrap());
        assert!(z2.is_primitive(&v(&[2, 3])).unwrap());
        assert_eq!(z2.is_primitive(&v(&[0, 0])), Err(LinError::ZeroVector));
        let even = Lattice::from_generators(2, &[v(&[1, 1]), v(&[0, 2])]).unwrap();
        assert!(matches!(even.is_primitive(&v(&[1, 0])), Err(LinError::NotInLattice(_))));
        assert_eq!(z2.primitive_on_ray(&v(&[4, -6])), Some(v(&[2, -3])));
    }

    #[test]
    fn basis_checks() {
        let z2 = Lattice::standard(2);
        assert!(z2.is_basis(&[v(&[1, -1]), v(&[-1, 0])]));
        assert!(!z2.is_basis(&[v(&[1, 0]), v(&[2, 0])]));
        assert!(!z2.is_basis(&[v(&[1, 0]), v(&[1, 2])]));
        assert!(!z2.is_basis(&[v(&[1, 0])]));
        assert!(z2.is_part_of_basis(&[v(&[1, 2])]));
        assert!(!z2.is_part_of_basis(&[v(&[2, 2])]));
        let z3 = Lattice::standard(3);
        assert!(z3.is_part_of_basis(&[v(&[1, 0, 0]), v(&[0, 1, 1])]));
        assert!(!z3.is_part_of_basis(&[v(&[1, 1, 0]), v(&[1, -1, 0])]));
    }

    #[test]
    fn index_and_dual() {
        let z2 = Lattice::standard(2);
        assert_eq!(z2.index_in(&z2).unwrap(), LatticeIndex::Finite(BigInt::one()));
        let sub = Lattice::from_generators(2, &[v(&[1, 1]), v(&[0, 2])]).unwrap();
        assert_eq!(sub.index_in(&z2).unwrap(), LatticeIndex::Finite(BigInt::from(2)));
        assert_eq!(z2.index_in(&sub), Err(LinError::NotSublattice));
        let line = Lattice::from_generators(2, &[v(&[1, 0])]).unwrap();
        assert_eq!(line.index_in(&z2).unwrap(), LatticeIndex::Infinite);
        let g = identity(2);
        assert_eq!(z2.dual(&g).unwrap(), z2);
        assert_eq!(sub.dual(&g).unwrap().dual(&g).unwrap(), sub);
    }

    #[test]
    fn rational_helpers() {
        let rows = [v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        assert!(rows.iter().all(|r| r.dot(&ns[0]).is_zero()));
        assert_eq!(determinant(&[v(&[2, 1]), v(&[1, 1])]), rat(1));
        let inv = inverse(&[v(&[2, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(inv, vec![v(&[1, -1]), v(&[-1, 2])]);
        assert_eq!(solve_in_span(&[v(&[1, 0, 1]), v(&[0, 1, 1])], &v(&[2, 3, 5])), Some(vec![rat(2), rat(3)]));
        assert_eq!(solve_in_span(&[v(&[1, 0, 1])], &v(&[1, 0, 0])), None);
    }

    #[test]
    fn coset_representatives() {
        let sub = Lattice::from_generators(2, &[v(&[1, 1]), v(&[0, 2])]).unwrap();
        let a = sub.coset_representative(&v(&[3, 0])).unwrap();
        let b = sub.coset_representative(&v(&[1, 0])).unwrap();
        assert_eq!(a, b);
        assert!(sub.coset_representative(&v(&[2, 2])).unwrap().is_zero());
    }
}

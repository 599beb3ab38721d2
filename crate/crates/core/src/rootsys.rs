//! Restricted root systems: reduced types A–G, the non-reduced type BC, and
//! products.
//!
//! Every system lives in working coordinates `Q^rank` with a positive
//! definite Gram matrix:
//!
//! * `A_l` uses the basis `b_k = e_k - e_{l+1}` of the sum-zero hyperplane
//!   in `Q^{l+1}`, so `(b_i, b_j) = 1 + δ_ij`; display goes through the
//!   realization back into `Q^{l+1}`.
//! * `B_l`, `C_l`, `D_l`, `BC_l` use `e_1, ..., e_l` with the standard product.
//! * `E`, `F`, `G` use simple-root coordinates with the symmetrized Cartan
//!   matrix, short roots of squared length 2.
//!
//! Products stack components block-diagonally. Simple roots are numbered as
//! in Humphreys; type `E` has the chain `1-3-4-5-...` with `2` attached to `4`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cones::Cone;
use crate::exactlin::{frac, inverse, lower, pairing, rat, Lattice, Rational, RationalVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("invalid type label '{0}'")]
    BadLabel(String),
    #[error("type {family}{rank} is not admissible")]
    BadRank { family: Family, rank: usize },
    #[error("vector {0} is not a root")]
    NotARoot(String),
    #[error("index {0} is out of range")]
    BadIndex(usize),
    #[error("Weyl orbit exceeded {0} elements")]
    OrbitTooLarge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    BC,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::BC => "BC",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

impl Family {
    pub fn admits(self, rank: usize) -> bool {
        match self {
            Family::A | Family::BC => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

/// A product of irreducible types, e.g. `A1xA1` or `BC3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeLabel(pub Vec<(Family, usize)>);

impl TypeLabel {
    pub fn irreducible(family: Family, rank: usize) -> Self {
        TypeLabel(vec![(family, rank)])
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|c| c.1).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.0.len() == 1
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (fam, r)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{fam}{r}")?;
        }
        Ok(())
    }
}

impl FromStr for TypeLabel {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RootError::BadLabel(s.to_string());
        let mut parts = Vec::new();
        for part in s.trim().split(['x', 'X']) {
            let split = part.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
            let (name, num) = part.split_at(split);
            let family = match name.to_ascii_uppercase().as_str() {
                "A" => Family::A,
                "B" => Family::B,
                "C" => Family::C,
                "D" => Family::D,
                "BC" => Family::BC,
                "E" => Family::E,
                "F" => Family::F,
                "G" => Family::G,
                _ => return Err(bad()),
            };
            let rank: usize = num.parse().map_err(|_| bad())?;
            if !family.admits(rank) {
                return Err(RootError::BadRank { family, rank });
            }
            parts.push((family, rank));
        }
        if parts.is_empty() {
            return Err(bad());
        }
        Ok(TypeLabel(parts))
    }
}

/// One irreducible block of a [`RootSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
    /// First working coordinate and first simple-root index of the block.
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: TypeLabel,
    components: Vec<Component>,
    gram: Vec<Vec<Rational>>,
    simple: Vec<RationalVector>,
    roots: Vec<RationalVector>,
    positive: Vec<RationalVector>,
    reduced: bool,
    simple_coroots: Vec<RationalVector>,
    weights: Vec<RationalVector>,
    coweights: Vec<RationalVector>,
    to_simple: Vec<RationalVector>,
    valuation: std::sync::OnceLock<Cone>,
}

fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect()
}

fn cartan(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match family {
        Family::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..rank - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -2, -1);
            link(2, 3, -1, -1);
        }
        Family::G => link(0, 1, -1, -3),
        _ => unreachable!("classical types use e-coordinates"),
    }
    a
}

/// Simple roots and Gram matrix of one irreducible block in its own
/// working coordinates.
fn block(family: Family, l: usize) -> (Vec<RationalVector>, Vec<Vec<Rational>>) {
    let e = |i: usize| RationalVector::unit(l, i);
    match family {
        Family::A => {
            let gram = (0..l)
                .map(|i| (0..l).map(|j| if i == j { rat(2) } else { rat(1) }).collect())
                .collect();
            let mut simple: Vec<RationalVector> = (0..l - 1).map(|i| &e(i) - &e(i + 1)).collect();
            simple.push(e(l - 1));
            (simple, gram)
        }
        Family::B | Family::BC => {
            let mut simple: Vec<RationalVector> = (0..l - 1).map(|i| &e(i) - &e(i + 1)).collect();
            simple.push(e(l - 1));
            (simple, identity(l))
        }
        Family::C => {
            let mut simple: Vec<RationalVector> = (0..l - 1).map(|i| &e(i) - &e(i + 1)).collect();
            simple.push(e(l - 1).scale(&rat(2)));
            (simple, identity(l))
        }
        Family::D => {
            let mut simple: Vec<RationalVector> = (0..l - 1).map(|i| &e(i) - &e(i + 1)).collect();
            simple.push(&e(l - 2) + &e(l - 1));
            (simple, identity(l))
        }
        Family::E | Family::F | Family::G => {
            let a = cartan(family, l);
            // (α_i, α_j) = a_ij (α_j, α_j) / 2, short roots of length 2.
            let len: Vec<i64> = match family {
                Family::E => vec![2; l],
                Family::F => vec![4, 4, 2, 2],
                _ => vec![2, 6],
            };
            let gram = (0..l)
                .map(|i| (0..l).map(|j| rat(a[i][j] * len[j] / 2)).collect())
                .collect();
            ((0..l).map(e).collect(), gram)
        }
    }
}

impl RootSystem {
    pub fn build(label: &TypeLabel) -> Result<RootSystem, RootError> {
        for &(family, rank) in &label.0 {
            if !family.admits(rank) {
                return Err(RootError::BadRank { family, rank });
            }
        }
        let n = label.rank();
        let mut gram = vec![vec![Rational::zero(); n]; n];
        let mut simple = Vec::new();
        let mut components = Vec::new();
        let mut offset = 0;
        let mut reduced = true;
        for &(family, rank) in &label.0 {
            let (s, g) = block(family, rank);
            for i in 0..rank {
                for j in 0..rank {
                    gram[offset + i][offset + j] = g[i][j].clone();
                }
            }
            for v in s {
                let mut w = RationalVector::zeros(n);
                let mut coords = w.clone().into_coords();
                for (i, x) in v.coords().iter().enumerate() {
                    coords[offset + i] = x.clone();
                }
                w = RationalVector::new(coords);
                simple.push(w);
            }
            if family == Family::BC {
                reduced = false;
            }
            components.push(Component { family, rank, offset });
            offset += rank;
        }
        let mut rs = RootSystem {
            label: label.clone(),
            components,
            gram,
            simple,
            roots: Vec::new(),
            positive: Vec::new(),
            reduced,
            simple_coroots: Vec::new(),
            weights: Vec::new(),
            coweights: Vec::new(),
            to_simple: Vec::new(),
            valuation: std::sync::OnceLock::new(),
        };
        rs.to_simple = inverse_transpose_basis(&rs.simple);
        rs.generate_roots();
        rs.simple_coroots = rs
            .simple
            .iter()
            .map(|a| rs.coroot(a).expect("simple root"))
            .collect();
        rs.weights = dual_basis(&rs.gram, &rs.simple_coroots);
        rs.coweights = dual_basis(&rs.gram, &rs.simple);
        Ok(rs)
    }

    fn generate_roots(&mut self) {
        let mut set: BTreeSet<RationalVector> = self.simple.iter().cloned().collect();
        let mut frontier: Vec<RationalVector> = set.iter().cloned().collect();
        while let Some(r) = frontier.pop() {
            for a in &self.simple {
                let s = self.reflect(a, &r);
                if set.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        if !self.reduced {
            // BC blocks also carry 2α for each short root ±e_i.
            let extra: Vec<RationalVector> = set
                .iter()
                .filter(|r| {
                    let c = self.component_of(r);
                    c.is_some_and(|c| self.components[c].family == Family::BC)
                        && self.norm(r) == rat(1)
                })
                .map(|r| r.scale(&rat(2)))
                .collect();
            set.extend(extra);
        }
        self.roots = set.into_iter().collect();
        self.positive = self
            .roots
            .iter()
            .filter(|r| self.simple_coordinates(r).iter().all(|c| !c.is_negative()))
            .cloned()
            .collect();
    }

    fn component_of(&self, v: &RationalVector) -> Option<usize> {
        let nz: Vec<usize> = (0..v.dim()).filter(|&i| !v.coords()[i].is_zero()).collect();
        self.components.iter().position(|c| {
            nz.iter().all(|&i| i >= c.offset && i < c.offset + c.rank)
        })
    }

    pub fn label(&self) -> &TypeLabel {
        &self.label
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn roots(&self) -> &[RationalVector] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[RationalVector] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[RationalVector] {
        &self.simple
    }

    pub fn simple_root(&self, i: usize) -> &RationalVector {
        &self.simple[i]
    }

    pub fn simple_coroots(&self) -> &[RationalVector] {
        &self.simple_coroots
    }

    pub fn simple_coroot(&self, i: usize) -> &RationalVector {
        &self.simple_coroots[i]
    }

    /// Fundamental weights: `(ω_i, α_j^∨) = δ_ij`.
    pub fn fundamental_weights(&self) -> &[RationalVector] {
        &self.weights
    }

    /// Fundamental coweights: `(ω_i^∨, α_j) = δ_ij`.
    pub fn fundamental_coweights(&self) -> &[RationalVector] {
        &self.coweights
    }

    pub fn inner(&self, x: &RationalVector, y: &RationalVector) -> Rational {
        pairing(&self.gram, x, y)
    }

    pub fn norm(&self, x: &RationalVector) -> Rational {
        self.inner(x, x)
    }

    pub fn is_root(&self, v: &RationalVector) -> bool {
        self.roots.binary_search(v).is_ok()
    }

    /// `2b / (α, α) · α` with `b = 1/2` when `2α` is also a root.
    pub fn coroot(&self, alpha: &RationalVector) -> Result<RationalVector, RootError> {
        if !self.roots.is_empty() && !self.is_root(alpha) {
            return Err(RootError::NotARoot(alpha.to_string()));
        }
        let b = if self.is_root(&alpha.scale(&rat(2))) { frac(1, 2) } else { rat(1) };
        Ok(alpha.scale(&(rat(2) * b / self.norm(alpha))))
    }

    /// `σ_α(v) = v - 2 (v, α) / (α, α) · α`.
    pub fn reflect(&self, alpha: &RationalVector, v: &RationalVector) -> RationalVector {
        let c = rat(2) * self.inner(v, alpha) / self.norm(alpha);
        v.axpy(&(-c), alpha)
    }

    /// Coordinates of `v` in the basis of simple roots.
    pub fn simple_coordinates(&self, v: &RationalVector) -> Vec<Rational> {
        self.to_simple.iter().map(|row| row.dot(v)).collect()
    }

    /// Coefficients `(v, α_i)` in the fundamental coweight basis.
    pub fn coweight_coordinates(&self, v: &RationalVector) -> Vec<Rational> {
        self.simple.iter().map(|a| self.inner(v, a)).collect()
    }

    /// Cartan integer `<α_i, α_j^∨>`.
    pub fn cartan_entry(&self, i: usize, j: usize) -> Rational {
        self.inner(&self.simple[i], &self.simple_coroots[j])
    }

    pub fn root_lattice(&self) -> Lattice {
        Lattice::from_generators(self.rank(), &self.roots).expect("dimension")
    }

    pub fn weight_lattice(&self) -> Lattice {
        Lattice::from_generators(self.rank(), &self.weights).expect("dimension")
    }

    pub fn coroot_lattice(&self) -> Lattice {
        Lattice::from_generators(self.rank(), &self.simple_coroots).expect("dimension")
    }

    pub fn coweight_lattice(&self) -> Lattice {
        Lattice::from_generators(self.rank(), &self.coweights).expect("dimension")
    }

    /// `C⁺ = cone(ω_1^∨, ..., ω_l^∨)`.
    pub fn dominant_chamber(&self) -> Cone {
        Cone::from_generators(self.rank(), &self.coweights)
    }

    /// The valuation cone `-C⁺`.
    pub fn valuation_cone(&self) -> &Cone {
        self.valuation.get_or_init(|| {
            let neg: Vec<RationalVector> = self.coweights.iter().map(|w| -w).collect();
            Cone::from_generators(self.rank(), &neg)
        })
    }

    /// True iff `v` lies in `-C⁺`.
    pub fn in_valuation_cone(&self, v: &RationalVector) -> bool {
        self.simple.iter().all(|a| !self.inner(v, a).is_positive())
    }

    /// Simple roots `i, j` joined in the Dynkin diagram.
    pub fn linked(&self, i: usize, j: usize) -> bool {
        i != j && !self.inner(&self.simple[i], &self.simple[j]).is_zero()
    }

    /// True iff `2α_i` is a root.
    pub fn is_doubled(&self, i: usize) -> bool {
        self.is_root(&self.simple[i].scale(&rat(2)))
    }

    /// Subsystem generated by the simple roots with the given indices.
    pub fn parabolic_subsystem(&self, indices: &BTreeSet<usize>) -> Result<Subsystem, RootError> {
        if let Some(&i) = indices.iter().find(|&&i| i >= self.rank()) {
            return Err(RootError::BadIndex(i));
        }
        let mut components = Vec::new();
        let mut seen = BTreeSet::new();
        for &start in indices {
            if !seen.insert(start) {
                continue;
            }
            let mut nodes = vec![start];
            let mut k = 0;
            while k < nodes.len() {
                let u = nodes[k];
                for &w in indices {
                    if self.linked(u, w) && seen.insert(w) {
                        nodes.push(w);
                    }
                }
                k += 1;
            }
            nodes.sort_unstable();
            components.push(self.classify_component(&nodes));
        }
        let span: Vec<RationalVector> = indices.iter().map(|&i| self.simple[i].clone()).collect();
        let roots = self
            .roots
            .iter()
            .filter(|r| {
                let c = self.simple_coordinates(r);
                c.iter().enumerate().all(|(i, x)| x.is_zero() || indices.contains(&i))
            })
            .cloned()
            .collect();
        Ok(Subsystem { simple_indices: indices.iter().copied().collect(), simple: span, roots, components })
    }

    fn classify_component(&self, nodes: &[usize]) -> SubComponent {
        let n = nodes.len();
        let deg = |u: usize| nodes.iter().filter(|&&w| self.linked(u, w)).count();
        let bond = |u: usize, w: usize| -> i64 {
            let p = self.cartan_entry(u, w) * self.cartan_entry(w, u);
            p.to_integer().try_into().unwrap_or(0)
        };
        let mut family = Family::A;
        let mut max_bond = 1;
        for &u in nodes {
            for &w in nodes {
                if u < w && self.linked(u, w) {
                    max_bond = max_bond.max(bond(u, w));
                }
            }
        }
        if nodes.iter().any(|&u| self.is_doubled(u)) {
            family = Family::BC;
        } else if max_bond == 3 {
            family = Family::G;
        } else if max_bond == 2 {
            let (u, w) = nodes
                .iter()
                .flat_map(|&u| nodes.iter().map(move |&w| (u, w)))
                .find(|&(u, w)| u < w && self.linked(u, w) && bond(u, w) == 2)
                .expect("double bond");
            if n >= 3 && deg(u) == 2 && deg(w) == 2 {
                family = Family::F;
            } else {
                let end = if deg(u) == 1 && n > 2 { u } else if deg(w) == 1 && n > 2 { w } else { u };
                let other = if end == u { w } else { u };
                let end_short = self.norm(&self.simple[end]) < self.norm(&self.simple[other]);
                family = if n == 2 || end_short { Family::B } else { Family::C };
            }
        } else if nodes.iter().any(|&u| deg(u) == 3) {
            let center = *nodes.iter().find(|&&u| deg(u) == 3).expect("branch");
            let arms: Vec<usize> = nodes
                .iter()
                .filter(|&&w| self.linked(center, w))
                .map(|&w| {
                    let mut len = 1;
                    let (mut prev, mut cur) = (center, w);
                    while let Some(&nx) = nodes.iter().find(|&&x| x != prev && self.linked(cur, x)) {
                        prev = cur;
                        cur = nx;
                        len += 1;
                    }
                    len
                })
                .collect();
            family = if arms.iter().filter(|&&a| a == 1).count() >= 2 { Family::D } else { Family::E };
        }
        let path = (family == Family::A).then(|| {
            let start = *nodes.iter().find(|&&u| deg(u) <= 1).expect("path end");
            let mut order = vec![start];
            while let Some(&nx) = nodes.iter().find(|&&x| !order.contains(&x) && self.linked(*order.last().unwrap(), x)) {
                order.push(nx);
            }
            order
        });
        SubComponent { family, rank: n, nodes: nodes.to_vec(), path }
    }

    /// Permutations of the simple roots preserving the Cartan matrix and
    /// the doubled nodes, identity first.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let key = |i: usize| (self.norm(&self.simple[i]), self.is_doubled(i));
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(
            rs: &RootSystem,
            key: &dyn Fn(usize) -> (Rational, bool),
            perm: &mut Vec<usize>,
            used: &mut [bool],
            out: &mut Vec<Vec<usize>>,
        ) {
            let i = perm.len();
            if i == rs.rank() {
                out.push(perm.clone());
                return;
            }
            for j in 0..rs.rank() {
                if used[j] || key(i) != key(j) {
                    continue;
                }
                if (0..i).all(|k| rs.cartan_entry(i, k) == rs.cartan_entry(j, perm[k]) && rs.cartan_entry(k, i) == rs.cartan_entry(perm[k], j)) {
                    used[j] = true;
                    perm.push(j);
                    rec(rs, key, perm, used, out);
                    perm.pop();
                    used[j] = false;
                }
            }
        }
        rec(self, &key, &mut perm, &mut used, &mut out);
        out.sort();
        out
    }

    /// The linear map sending `α_i` to `α_{perm[i]}`.
    pub fn apply_automorphism(&self, perm: &[usize], v: &RationalVector) -> RationalVector {
        let c = self.simple_coordinates(v);
        c.iter()
            .zip(perm)
            .fold(RationalVector::zeros(self.rank()), |acc, (x, &j)| acc.axpy(x, &self.simple[j]))
    }

    /// Smallest cone containing `cone` and stable under the reflections in
    /// `reflections`, by closing the generator set under them.
    pub fn weyl_saturate_cone(&self, reflections: &[RationalVector], cone: &Cone) -> Result<Cone, RootError> {
        const LIMIT: usize = 200_000;
        let mut set: BTreeSet<RationalVector> = cone.rays().into_iter().collect();
        let lin = cone.lineality();
        for l in &lin {
            set.insert(l.clone());
            set.insert(-l);
        }
        // s_α(v) = v - (v, α^∨) α with the covector of α^∨ computed once.
        let maps: Vec<(RationalVector, &RationalVector)> = reflections
            .iter()
            .map(|a| (self.lower(a).scale(&(rat(2) / self.norm(a))), a))
            .collect();
        let mut frontier: Vec<RationalVector> = set.iter().cloned().collect();
        while let Some(g) = frontier.pop() {
            for (cov, a) in &maps {
                let s = g.axpy(&(-cov.dot(&g)), a);
                let s = RationalVector::from_bigints(&s.primitive_integer().unwrap_or_else(|| vec![num_bigint::BigInt::zero(); g.dim()]));
                if set.insert(s.clone()) {
                    if set.len() > LIMIT {
                        return Err(RootError::OrbitTooLarge(LIMIT));
                    }
                    frontier.push(s);
                }
            }
        }
        let gens: Vec<RationalVector> = set.into_iter().collect();
        Ok(Cone::from_generators(self.rank(), &gens))
    }

    /// Realization of a working vector in the module's display coordinates:
    /// `Q^{l+1}` for type `A_l` blocks, working coordinates otherwise.
    pub fn realize(&self, v: &RationalVector) -> RationalVector {
        let mut out = Vec::new();
        for c in &self.components {
            let block = &v.coords()[c.offset..c.offset + c.rank];
            out.extend(block.iter().cloned());
            if c.family == Family::A {
                let s = block.iter().fold(Rational::zero(), |acc, x| acc + x);
                out.push(-s);
            }
        }
        RationalVector::new(out)
    }

    pub fn realization_dim(&self) -> usize {
        self.components
            .iter()
            .map(|c| if c.family == Family::A { c.rank + 1 } else { c.rank })
            .sum()
    }

    /// Inverse of [`RootSystem::realize`]; `None` when the vector is off the
    /// sum-zero hyperplane of some type `A` block or has the wrong length.
    pub fn unrealize(&self, v: &RationalVector) -> Option<RationalVector> {
        if v.dim() != self.realization_dim() {
            return None;
        }
        let mut out = Vec::new();
        let mut pos = 0;
        for c in &self.components {
            let width = if c.family == Family::A { c.rank + 1 } else { c.rank };
            let block = &v.coords()[pos..pos + width];
            if c.family == Family::A && !block.iter().fold(Rational::zero(), |acc, x| acc + x).is_zero() {
                return None;
            }
            out.extend(block[..c.rank].iter().cloned());
            pos += width;
        }
        Some(RationalVector::new(out))
    }

    /// Names the simple coroots and fundamental coweights spanning `v`, in
    /// the form `a1 w1 + ...`; used only for readable reports.
    pub fn describe_coweight(&self, v: &RationalVector) -> String {
        let c = self.coweight_coordinates(v);
        let mut parts = Vec::new();
        for (i, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let coef = if x.is_one() {
                String::new()
            } else if *x == -Rational::one() {
                "-".to_string()
            } else {
                format!("{x}")
            };
            parts.push(format!("{coef}w{}", i + 1));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }

    /// Roots grouped by squared length, for diagnostics and tests.
    pub fn roots_by_length(&self) -> BTreeMap<Rational, usize> {
        let mut m = BTreeMap::new();
        for r in &self.roots {
            *m.entry(self.norm(r)).or_insert(0) += 1;
        }
        m
    }

    /// `G · v` for the Gram matrix `G`: the covector of `v` in standard coordinates.
    pub fn lower(&self, v: &RationalVector) -> RationalVector {
        lower(&self.gram, v)
    }
}

/// Rows `r_i` with `r_i · b_j = δ_ij`: coordinate functionals for the basis `b`.
fn inverse_transpose_basis(b: &[RationalVector]) -> Vec<RationalVector> {
    let n = b.len();
    // Matrix with columns b_j; its inverse has the functionals as rows.
    let cols: Vec<RationalVector> = (0..n)
        .map(|i| RationalVector::new(b.iter().map(|bj| bj.coords()[i].clone()).collect()))
        .collect();
    inverse(&cols).expect("simple roots form a basis")
}

/// Vectors `w_i` with `(w_i, b_j) = δ_ij` under `gram`.
fn dual_basis(gram: &[Vec<Rational>], b: &[RationalVector]) -> Vec<RationalVector> {
    let lowered: Vec<RationalVector> = b.iter().map(|x| lower(gram, x)).collect();
    // Rows of `lowered` times w_i = e_i: w_i is column i of the inverse.
    let inv = inverse(&lowered).expect("nondegenerate");
    let n = b.len();
    (0..n)
        .map(|i| RationalVector::new(inv.iter().map(|row| row.coords()[i].clone()).collect()))
        .collect()
}

/// Irreducible block of a parabolic subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubComponent {
    pub family: Family,
    pub rank: usize,
    /// Simple-root indices of the ambient system, ascending.
    pub nodes: Vec<usize>,
    /// For type `A`, the nodes in Dynkin path order.
    pub path: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct Subsystem {
    pub simple_indices: Vec<usize>,
    pub simple: Vec<RationalVector>,
    pub roots: Vec<RationalVector>,
    pub components: Vec<SubComponent>,
}

impl Subsystem {
    pub fn label(&self) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = self.components.iter().map(|c| format!("{}{}", c.family, c.rank)).collect();
        parts.sort();
        parts.join("x")
    }

    pub fn all_type_a(&self) -> bool {
        self.components.iter().all(|c| c.family == Family::A)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(&s.parse().unwrap()).unwrap()
    }

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    #[test]
    fn labels_round_trip() {
        for s in ["A2", "BC3", "A1xA1", "D4", "E8", "G2"] {
            assert_eq!(s.parse::<TypeLabel>().unwrap().to_string(), s);
        }
        assert!("D3".parse::<TypeLabel>().is_err());
        assert!("Q2".parse::<TypeLabel>().is_err());
        assert!("E9".parse::<TypeLabel>().is_err());
    }

    /// Positive roots counted by the standard formulas.
    #[test]
    fn root_counts() {
        let cases = [
            ("A1", 2), ("A2", 6), ("A5", 30), ("B2", 8), ("B4", 32), ("C3", 18),
            ("D4", 24), ("D6", 60), ("E6", 72), ("E7", 126), ("E8", 240), ("F4", 48),
            ("G2", 12), ("A1xA1", 4),
        ];
        for (s, n) in cases {
            assert_eq!(rs(s).roots().len(), n, "{s}");
        }
        // BC_l: ±e_i ± e_j (2l(l-1)), ±e_i (2l), ±2e_i (2l).
        for l in 1..=4 {
            let r = rs(&format!("BC{l}"));
            assert_eq!(r.roots().len(), 2 * l * (l - 1) + 4 * l);
            assert!(!r.is_reduced());
        }
        let bc2 = rs("BC2");
        assert!(bc2.is_root(&v(&[0, 1])) && bc2.is_root(&v(&[0, 2])));
    }

    #[test]
    fn a2_realization() {
        let a2 = rs("A2");
        let real: BTreeSet<RationalVector> = a2.roots().iter().map(|r| a2.realize(r)).collect();
        let mut expect = BTreeSet::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let mut x = vec![0; 3];
                    x[i] = 1;
                    x[j] = -1;
                    expect.insert(v(&x));
                }
            }
        }
        assert_eq!(real, expect);
        for r in a2.roots() {
            assert_eq!(a2.unrealize(&a2.realize(r)).as_ref(), Some(r));
        }
    }

    #[test]
    fn coroots() {
        let a2 = rs("A2");
        assert_eq!(a2.coroot(a2.simple_root(0)).unwrap(), a2.simple_root(0).clone());
        let b2 = rs("B2");
        assert_eq!(b2.simple_roots(), &[v(&[1, -1]), v(&[0, 1])]);
        assert_eq!(b2.coroot(&v(&[0, 1])).unwrap(), v(&[0, 2]));
        let bc = rs("BC3");
        assert_eq!(bc.coroot(&v(&[0, 0, 1])).unwrap(), v(&[0, 0, 1]));
        assert_eq!(bc.coroot(&v(&[0, 0, 2])).unwrap(), v(&[0, 0, 1]));
        assert!(b2.coroot(&v(&[1, 1, ])).is_ok());
        assert!(matches!(b2.coroot(&v(&[2, 1])), Err(RootError::NotARoot(_))));
    }

    #[test]
    fn bc_coroots_equal_roots_as_sets() {
        for l in 1..=4 {
            let r = rs(&format!("BC{l}"));
            let co: BTreeSet<RationalVector> = r.roots().iter().map(|a| r.coroot(a).unwrap()).collect();
            let reduced_part: BTreeSet<RationalVector> =
                r.roots().iter().filter(|a| r.norm(a) != rat(4)).cloned().collect();
            // Coroots of ±e_i and ±2e_i are both ±e_i, others are unchanged.
            assert_eq!(co, reduced_part);
        }
    }

    #[test]
    fn coweights_b2() {
        let b2 = rs("B2");
        let w = b2.fundamental_coweights();
        assert_eq!(w[0], v(&[1, 0]));
        assert_eq!(w[1], v(&[1, 1]));
        let lhs = -&w[1];
        let rhs = &w[0].scale(&rat(-2)) + b2.simple_coroot(0);
        assert_eq!(lhs, rhs);
        let a1 = rs("A1");
        assert_eq!(a1.fundamental_coweights()[0], a1.simple_coroot(0).scale(&frac(1, 2)));
    }

    #[test]
    fn weight_duality_all_types() {
        for s in ["A1", "A4", "B3", "C4", "BC3", "D5", "E6", "E7", "E8", "F4", "G2", "A1xA1"] {
            let r = rs(s);
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    let d = if i == j { rat(1) } else { rat(0) };
                    assert_eq!(r.inner(&r.fundamental_weights()[i], r.simple_coroot(j)), d, "{s}");
                    assert_eq!(r.inner(&r.fundamental_coweights()[i], r.simple_root(j)), d, "{s}");
                }
            }
        }
    }

    #[test]
    fn g2_lengths_and_cartan() {
        let g2 = rs("G2");
        assert_eq!(g2.norm(g2.simple_root(0)), rat(2));
        assert_eq!(g2.norm(g2.simple_root(1)), rat(6));
        assert_eq!(g2.cartan_entry(0, 1), rat(-1));
        assert_eq!(g2.cartan_entry(1, 0), rat(-3));
    }

    #[test]
    fn reflections() {
        let a2 = rs("A2");
        let a = a2.simple_root(0);
        assert_eq!(a2.reflect(a, a), -a);
        let w1 = &a2.fundamental_weights()[0];
        assert_eq!(a2.reflect(a, w1), w1 - a);
        let perp = a2.fundamental_weights()[1].clone();
        assert_eq!(a2.reflect(a, &perp), perp);
    }

    #[test]
    fn weyl_group_permutes_roots() {
        for s in ["A3", "B3", "C3", "BC2", "D4", "G2", "F4", "E6"] {
            let r = rs(s);
            let roots: BTreeSet<RationalVector> = r.roots().iter().cloned().collect();
            for a in r.simple_roots() {
                let img: BTreeSet<RationalVector> = roots.iter().map(|x| r.reflect(a, x)).collect();
                assert_eq!(img, roots, "{s}");
            }
        }
    }

    #[test]
    fn lattice_indices() {
        use crate::exactlin::LatticeIndex;
        let idx = |s: &str| {
            let r = rs(s);
            r.root_lattice().index_in(&r.weight_lattice()).unwrap()
        };
        assert_eq!(idx("A2"), LatticeIndex::Finite(3.into()));
        assert_eq!(idx("BC3"), LatticeIndex::Finite(1.into()));
        assert_eq!(idx("E8"), LatticeIndex::Finite(1.into()));
        assert_eq!(idx("D5"), LatticeIndex::Finite(4.into()));
        let a2 = rs("A2");
        assert!(!a2.root_lattice().contains(&a2.fundamental_weights()[0]));
        assert_eq!(a2.weight_lattice().dual(a2.gram()).unwrap(), a2.coroot_lattice());
    }

    #[test]
    fn parabolic_types() {
        let set = |xs: &[usize]| xs.iter().copied().collect::<BTreeSet<usize>>();
        assert_eq!(rs("B3").parabolic_subsystem(&set(&[0, 1])).unwrap().label(), "A2");
        assert_eq!(rs("D4").parabolic_subsystem(&set(&[0, 1, 2])).unwrap().label(), "A3");
        assert_eq!(rs("D4").parabolic_subsystem(&set(&[0, 1, 2, 3])).unwrap().label(), "D4");
        assert_eq!(rs("E6").parabolic_subsystem(&set(&[0, 2, 3, 4, 5])).unwrap().label(), "A5");
        assert_eq!(rs("E6").parabolic_subsystem(&set(&[1, 2, 3, 4, 5])).unwrap().label(), "D5");
        assert_eq!(rs("E7").parabolic_subsystem(&set(&[0, 1, 2, 3, 4, 5])).unwrap().label(), "E6");
        assert_eq!(rs("F4").parabolic_subsystem(&set(&[0, 1, 2])).unwrap().label(), "B3");
        assert_eq!(rs("F4").parabolic_subsystem(&set(&[1, 2, 3])).unwrap().label(), "C3");
        assert_eq!(rs("C4").parabolic_subsystem(&set(&[1, 2, 3])).unwrap().label(), "C3");
        assert_eq!(rs("B4").parabolic_subsystem(&set(&[2, 3])).unwrap().label(), "B2");
        assert_eq!(rs("BC3").parabolic_subsystem(&set(&[2])).unwrap().label(), "BC1");
        assert_eq!(rs("BC3").parabolic_subsystem(&set(&[0, 2])).unwrap().label(), "A1xBC1");
        assert_eq!(rs("G2").parabolic_subsystem(&set(&[0])).unwrap().label(), "A1");
        let empty = rs("A3").parabolic_subsystem(&BTreeSet::new()).unwrap();
        assert_eq!(empty.label(), "0");
        assert!(empty.roots.is_empty());
        let e6 = rs("E6").parabolic_subsystem(&set(&[0, 2, 3, 4, 5])).unwrap();
        assert_eq!(e6.components[0].path, Some(vec![0, 2, 3, 4, 5]));
        assert_eq!(e6.roots.len(), 30);
    }

    #[test]
    fn automorphism_groups() {
        let count = |s: &str| rs(s).diagram_automorphisms().len();
        assert_eq!(count("A1"), 1);
        assert_eq!(count("A3"), 2);
        assert_eq!(count("D4"), 6);
        assert_eq!(count("D5"), 2);
        assert_eq!(count("E6"), 2);
        assert_eq!(count("E7"), 1);
        assert_eq!(count("B3"), 1);
        assert_eq!(count("A1xA1"), 2);
        assert_eq!(count("BC2"), 1);
        let a3 = rs("A3");
        for p in a3.diagram_automorphisms() {
            for (i, &j) in p.iter().enumerate() {
                assert_eq!(a3.apply_automorphism(&p, a3.simple_root(i)), a3.simple_root(j).clone());
            }
            let img: BTreeSet<RationalVector> = a3.roots().iter().map(|r| a3.apply_automorphism(&p, r)).collect();
            assert_eq!(img, a3.roots().iter().cloned().collect());
        }
    }

    #[test]
    fn saturation() {
        let a2 = rs("A2");
        let c = Cone::from_generators(2, &[a2.fundamental_weights()[0].clone()]);
        assert_eq!(a2.weyl_saturate_cone(&[], &c).unwrap(), c);
        let s = a2.weyl_saturate_cone(&[a2.simple_root(0).clone()], &c).unwrap();
        assert!(s.contains(&(&a2.fundamental_weights()[0] - a2.simple_root(0))));
        assert_eq!(a2.weyl_saturate_cone(&[a2.simple_root(0).clone()], &s).unwrap(), s);
    }
}

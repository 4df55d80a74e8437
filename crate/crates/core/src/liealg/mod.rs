//! Finite-dimensional Lie algebras over Q: Chevalley-Eilenberg cochains
//! with module coefficients, the chain complex on the exterior algebra,
//! homology and cohomology by exact elimination, the induced action on
//! H_1 of an ideal, the characteristic class of an ideal, and connection
//! curvature.

pub mod matrix;

pub use matrix::{format_rational, parse_rational, QMatrix};

use crate::scalar::Rational;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// All strictly increasing k-tuples in 0..dim, lex order.
pub fn ktuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    if k > dim {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next increasing tuple.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < dim - (k - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Sorts an index tuple, returning the permutation sign or `None` on a
/// repeated index.
fn sort_indices(mut t: Vec<usize>) -> Option<(i32, Vec<usize>)> {
    let mut sign = 1;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] >= t[j] {
            if t[j - 1] == t[j] {
                return None;
            }
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    Some((sign, t))
}

/// A Lie algebra over Q given by structure constants on a fixed basis;
/// the Jacobi identity is validated at construction.
#[derive(Clone, PartialEq, Debug)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    /// c[(i,j)] with i < j is the coordinate vector of [e_i, e_j].
    c: BTreeMap<(usize, usize), Vec<Rational>>,
}

impl LieAlgebra {
    pub fn new(
        dim: usize,
        basis_names: Vec<String>,
        brackets: Vec<((usize, usize), Vec<Rational>)>,
    ) -> Result<LieAlgebra, String> {
        if basis_names.len() != dim {
            return Err(format!(
                "expected {} basis names, got {}",
                dim,
                basis_names.len()
            ));
        }
        let mut c = BTreeMap::new();
        for ((i, j), coeffs) in brackets {
            if i >= j || j >= dim {
                return Err(format!("bracket indices must satisfy i < j < dim, got ({}, {})", i, j));
            }
            if coeffs.len() != dim {
                return Err(format!("bracket ({}, {}) needs {} coefficients", i, j, dim));
            }
            if coeffs.iter().any(|v| !v.is_zero()) {
                c.insert((i, j), coeffs);
            }
        }
        let alg = LieAlgebra {
            dim,
            basis_names,
            c,
        };
        for t in ktuples(dim, 3) {
            let (i, j, k) = (t[0], t[1], t[2]);
            let mut jac = alg.bracket(&alg.bracket_basis(i, j), &alg.basis_vec(k));
            for (a, b, c2) in [(j, k, i), (k, i, j)] {
                let term = alg.bracket(&alg.bracket_basis(a, b), &alg.basis_vec(c2));
                for (x, y) in jac.iter_mut().zip(term) {
                    *x += y;
                }
            }
            if jac.iter().any(|v| !v.is_zero()) {
                return Err(format!(
                    "Jacobi identity fails on ({}, {}, {})",
                    alg.basis_names[i], alg.basis_names[j], alg.basis_names[k]
                ));
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// [e_i, e_j] as a coordinate vector (antisymmetric in i, j).
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        if i == j {
            return vec![Rational::zero(); self.dim];
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.c.get(&(a, b)) {
            Some(v) if flip => v.iter().map(|x| -x).collect(),
            Some(v) => v.clone(),
            None => vec![Rational::zero(); self.dim],
        }
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let scale = &u[i] * &v[j];
                for (o, b) in out.iter_mut().zip(self.bracket_basis(i, j)) {
                    *o += &scale * &b;
                }
            }
        }
        out
    }

    /// The 3-dimensional Heisenberg algebra, [e1, e2] = e3.
    pub fn heis3() -> LieAlgebra {
        LieAlgebra::new(
            3,
            vec!["e1".into(), "e2".into(), "e3".into()],
            vec![((0, 1), vec![Rational::zero(), Rational::zero(), Rational::one()])],
        )
        .unwrap()
    }

    /// sl2 in the (h, e, f) basis: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    pub fn sl2() -> LieAlgebra {
        let z = Rational::zero;
        LieAlgebra::new(
            3,
            vec!["h".into(), "e".into(), "f".into()],
            vec![
                ((0, 1), vec![z(), Rational::from_integer(2.into()), z()]),
                ((0, 2), vec![z(), z(), Rational::from_integer((-2).into())]),
                ((1, 2), vec![Rational::one(), z(), z()]),
            ],
        )
        .unwrap()
    }

    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> LieAlgebra {
        LieAlgebra::new(
            dim,
            (1..=dim).map(|i| format!("e{}", i)).collect(),
            Vec::new(),
        )
        .unwrap()
    }
}

/// An ideal of a Lie algebra, given by a linearly independent basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    /// The given basis, rows of length dim(L).
    basis: Vec<Vec<Rational>>,
    /// Echelon basis of the span (rref rows) and its pivot columns.
    rref: QMatrix,
    pivots: Vec<usize>,
}

impl Ideal {
    pub fn new(l: &LieAlgebra, basis: Vec<Vec<Rational>>) -> Result<Ideal, String> {
        if basis.iter().any(|v| v.len() != l.dim()) {
            return Err("ideal basis vectors must have length dim(L)".into());
        }
        let m = QMatrix::from_rows(basis.clone());
        let (rref_full, pivots) = m.rref();
        if pivots.len() != basis.len() {
            return Err("ideal basis is linearly dependent".into());
        }
        let rref = QMatrix::from_rows(
            (0..pivots.len()).map(|i| rref_full.row(i).to_vec()).collect(),
        );
        let ideal = Ideal {
            basis,
            rref,
            pivots,
        };
        // Closure: [e_i, v] must stay in the span for every basis element
        // of L and every ideal generator.
        for i in 0..l.dim() {
            for (vi, v) in ideal.basis.iter().enumerate() {
                let b = l.bracket(&l.basis_vec(i), v);
                if ideal.coords(&b).is_none() {
                    return Err(format!(
                        "not an ideal: [{}, v{}] leaves the span",
                        l.basis_names[i],
                        vi + 1
                    ));
                }
            }
        }
        Ok(ideal)
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Echelon basis rows in ambient coordinates.
    pub fn echelon_basis(&self) -> Vec<Vec<Rational>> {
        (0..self.dim()).map(|i| self.rref.row(i).to_vec()).collect()
    }

    /// Coordinates of x in the echelon basis, or `None` when x is outside
    /// the span. With rref rows the coordinates are just the pivot entries,
    /// verified by exact subtraction.
    pub fn coords(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let lam: Vec<Rational> = self.pivots.iter().map(|&p| x[p].clone()).collect();
        let mut rem = x.to_vec();
        for (i, l2) in lam.iter().enumerate() {
            for (r, e) in rem.iter_mut().zip(self.rref.row(i)) {
                *r -= l2 * e;
            }
        }
        rem.iter().all(Rational::is_zero).then_some(lam)
    }

    /// Embeds echelon coordinates back into the ambient algebra.
    pub fn embed(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rref.cols];
        for (i, c) in v.iter().enumerate() {
            for (o, e) in out.iter_mut().zip(self.rref.row(i)) {
                *o += c * e;
            }
        }
        out
    }

    /// The ideal as a Lie algebra in its echelon basis.
    pub fn as_algebra(&self, l: &LieAlgebra) -> LieAlgebra {
        let d = self.dim();
        let mut brackets = Vec::new();
        for t in ktuples(d, 2) {
            let b = l.bracket(&self.rref.row(t[0]).to_vec(), &self.rref.row(t[1]).to_vec());
            let coords = self
                .coords(&b)
                .expect("ideal is closed under the bracket");
            brackets.push(((t[0], t[1]), coords));
        }
        LieAlgebra::new(d, (1..=d).map(|i| format!("v{}", i)).collect(), brackets)
            .expect("a subalgebra inherits Jacobi")
    }

    /// Complement coordinates: indices of the standard basis vectors of L
    /// spanning the fixed echelon complement.
    pub fn complement(&self, l: &LieAlgebra) -> Vec<usize> {
        (0..l.dim()).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Splits x = v + k along span(V) + complement; returns (echelon
    /// coordinates of v, complement coordinates of k).
    pub fn split(&self, x: &[Rational], comp: &[usize]) -> (Vec<Rational>, Vec<Rational>) {
        let lam: Vec<Rational> = self.pivots.iter().map(|&p| x[p].clone()).collect();
        let mut rem = x.to_vec();
        for (i, l2) in lam.iter().enumerate() {
            for (r, e) in rem.iter_mut().zip(self.rref.row(i)) {
                *r -= l2 * e;
            }
        }
        let k = comp.iter().map(|&j| rem[j].clone()).collect();
        (lam, k)
    }
}

/// A finite-dimensional module over a Lie algebra: one matrix per basis
/// element, validated against the structure constants.
#[derive(Clone, Debug)]
pub struct LieModule {
    algebra_dim: usize,
    rank: usize,
    rho: Vec<QMatrix>,
}

impl LieModule {
    pub fn new(l: &LieAlgebra, rank: usize, rho: Vec<QMatrix>) -> Result<LieModule, String> {
        if rho.len() != l.dim() || rho.iter().any(|m| m.rows != rank || m.cols != rank) {
            return Err("module needs one rank x rank matrix per basis element".into());
        }
        let m = LieModule {
            algebra_dim: l.dim(),
            rank,
            rho,
        };
        for t in ktuples(l.dim(), 2) {
            let (i, j) = (t[0], t[1]);
            let comm = m.rho[i].mul(&m.rho[j]).sub(&m.rho[j].mul(&m.rho[i]));
            let mut lhs = QMatrix::zeros(rank, rank);
            for (k, c) in l.bracket_basis(i, j).iter().enumerate() {
                if !c.is_zero() {
                    for a in 0..rank {
                        for b in 0..rank {
                            let v = lhs.get(a, b) + &(c * m.rho[k].get(a, b));
                            lhs.set(a, b, v);
                        }
                    }
                }
            }
            if lhs != comm {
                return Err(format!(
                    "not a module: rho([{}, {}]) != [rho({0}), rho({1})]",
                    l.basis_names[i], l.basis_names[j]
                ));
            }
        }
        Ok(m)
    }

    pub fn trivial(l: &LieAlgebra, rank: usize) -> LieModule {
        LieModule {
            algebra_dim: l.dim(),
            rank,
            rho: vec![QMatrix::zeros(rank, rank); l.dim()],
        }
    }

    pub fn adjoint(l: &LieAlgebra) -> LieModule {
        let d = l.dim();
        let rho = (0..d)
            .map(|i| {
                let mut m = QMatrix::zeros(d, d);
                for j in 0..d {
                    for (k, c) in l.bracket_basis(i, j).iter().enumerate() {
                        m.set(k, j, c.clone());
                    }
                }
                m
            })
            .collect();
        LieModule::new(l, d, rho).expect("adjoint action satisfies Jacobi")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn act(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        self.rho[i].mul_vec(v)
    }
}

/// A module-valued alternating k-cochain, stored on increasing tuples.
#[derive(Clone, PartialEq, Debug)]
pub struct Cochain {
    pub degree: usize,
    pub dim: usize,
    pub rank: usize,
    comps: BTreeMap<Vec<usize>, Vec<Rational>>,
}

impl Cochain {
    pub fn zero(degree: usize, dim: usize, rank: usize) -> Cochain {
        Cochain {
            degree,
            dim,
            rank,
            comps: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, tuple: Vec<usize>, value: Vec<Rational>) {
        assert_eq!(tuple.len(), self.degree);
        assert_eq!(value.len(), self.rank);
        assert!(tuple.windows(2).all(|w| w[0] < w[1]), "tuple must increase");
        if value.iter().all(Rational::is_zero) {
            self.comps.remove(&tuple);
        } else {
            self.comps.insert(tuple, value);
        }
    }

    pub fn add_to(&mut self, tuple: Vec<usize>, value: &[Rational], scale: &Rational) {
        let mut cur = self.get(&tuple);
        for (c, v) in cur.iter_mut().zip(value) {
            *c += scale * v;
        }
        self.set(tuple, cur);
    }

    pub fn get(&self, tuple: &[usize]) -> Vec<Rational> {
        self.comps
            .get(tuple)
            .cloned()
            .unwrap_or_else(|| vec![Rational::zero(); self.rank])
    }

    /// Evaluation on an arbitrary tuple, with the alternating sign.
    pub fn eval(&self, tuple: &[usize]) -> Vec<Rational> {
        match sort_indices(tuple.to_vec()) {
            None => vec![Rational::zero(); self.rank],
            Some((sign, t)) => {
                let mut v = self.get(&t);
                if sign < 0 {
                    for x in v.iter_mut() {
                        *x = -x.clone();
                    }
                }
                v
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Rational>)> {
        self.comps.iter()
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.comps.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (t, v) in &self.comps {
            let label = if t.is_empty() {
                "()".to_string()
            } else {
                t.iter()
                    .map(|&i| names[i].clone())
                    .collect::<Vec<_>>()
                    .join("^")
            };
            let vals: Vec<String> = v.iter().map(format_rational).collect();
            let _ = writeln!(out, "{} -> [{}]", label, vals.join(", "));
        }
        out
    }
}

/// An element of the exterior algebra of the Lie algebra, with rational
/// coefficients on increasing basis tuples.
#[derive(Clone, PartialEq, Debug)]
pub struct Chain {
    pub degree: usize,
    pub dim: usize,
    comps: BTreeMap<Vec<usize>, Rational>,
}

impl Chain {
    pub fn zero(degree: usize, dim: usize) -> Chain {
        Chain {
            degree,
            dim,
            comps: BTreeMap::new(),
        }
    }

    pub fn basis(dim: usize, tuple: &[usize]) -> Chain {
        let mut c = Chain::zero(tuple.len(), dim);
        if let Some((sign, t)) = sort_indices(tuple.to_vec()) {
            c.add(t, Rational::from_integer(sign.into()));
        }
        c
    }

    pub fn add(&mut self, tuple: Vec<usize>, coeff: Rational) {
        assert_eq!(tuple.len(), self.degree);
        let entry = self.comps.entry(tuple).or_insert_with(Rational::zero);
        *entry += coeff;
        self.comps.retain(|_, v| !v.is_zero());
    }

    pub fn get(&self, tuple: &[usize]) -> Rational {
        self.comps.get(tuple).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.comps.iter()
    }

    pub fn scale(&self, c: &Rational) -> Chain {
        let mut out = Chain::zero(self.degree, self.dim);
        for (t, v) in &self.comps {
            out.add(t.clone(), c * v);
        }
        out
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (t, v) in &other.comps {
            out.add(t.clone(), v.clone());
        }
        out
    }

    pub fn wedge(&self, other: &Chain) -> Chain {
        let mut out = Chain::zero(self.degree + other.degree, self.dim);
        for (ta, ca) in &self.comps {
            for (tb, cb) in &other.comps {
                let mut concat = ta.clone();
                concat.extend_from_slice(tb);
                if let Some((sign, t)) = sort_indices(concat) {
                    out.add(t, ca * cb * Rational::from_integer(sign.into()));
                }
            }
        }
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.comps.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(t, c)| {
                let label = if t.is_empty() {
                    "1".to_string()
                } else {
                    t.iter()
                        .map(|&i| names[i].clone())
                        .collect::<Vec<_>>()
                        .join("^")
                };
                if c.is_one() && !t.is_empty() {
                    label
                } else {
                    format!("{}*{}", format_rational(c), label)
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Chevalley-Eilenberg differential via the Koszul formula.
pub fn ce_d(l: &LieAlgebra, s: &LieModule, omega: &Cochain) -> Cochain {
    assert_eq!(omega.dim, l.dim());
    assert_eq!(omega.rank, s.rank());
    assert_eq!(s.algebra_dim(), l.dim());
    let k = omega.degree;
    let mut out = Cochain::zero(k + 1, l.dim(), s.rank());
    for tuple in ktuples(l.dim(), k + 1) {
        let mut val = vec![Rational::zero(); s.rank()];
        for (t, &xi) in tuple.iter().enumerate() {
            let mut rest = tuple.clone();
            rest.remove(t);
            let acted = s.act(xi, &omega.get(&rest));
            let sign = if t % 2 == 0 { Rational::one() } else { -Rational::one() };
            for (v, a) in val.iter_mut().zip(acted) {
                *v += &sign * &a;
            }
        }
        for st in ktuples(k + 1, 2) {
            let (sp, tp) = (st[0], st[1]);
            let mut rest = tuple.clone();
            rest.remove(tp);
            rest.remove(sp);
            let sign = if (sp + tp) % 2 == 0 { Rational::one() } else { -Rational::one() };
            for (b, coeff) in l.bracket_basis(tuple[sp], tuple[tp]).iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let mut arg = vec![b];
                arg.extend_from_slice(&rest);
                let w = omega.eval(&arg);
                for (v, a) in val.iter_mut().zip(w) {
                    *v += &(&sign * coeff) * &a;
                }
            }
        }
        out.set(tuple, val);
    }
    out
}

/// Boundary operator on the exterior algebra of a Lie algebra.
pub fn boundary(g: &LieAlgebra, u: &Chain) -> Chain {
    assert_eq!(u.dim, g.dim());
    let m = u.degree;
    if m < 2 {
        return Chain::zero(m.saturating_sub(1), g.dim());
    }
    let mut out = Chain::zero(m - 1, g.dim());
    for (tuple, coeff) in u.components() {
        for st in ktuples(m, 2) {
            let (sp, tp) = (st[0], st[1]);
            let mut rest = tuple.clone();
            rest.remove(tp);
            rest.remove(sp);
            let sign = if (sp + tp) % 2 == 0 { 1 } else { -1 };
            for (b, c) in g.bracket_basis(tuple[sp], tuple[tp]).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut arg = vec![b];
                arg.extend_from_slice(&rest);
                if let Some((s2, t2)) = sort_indices(arg) {
                    out.add(
                        t2,
                        coeff * c * Rational::from_integer((sign * s2).into()),
                    );
                }
            }
        }
    }
    out
}

/// Chain-level supercommutator, defined by
/// [u, v] = delta(u) ^ v + (-1)^m u ^ delta(v) - delta(u ^ v)
/// for u of degree m. Its degree-1 restriction recovers the Lie bracket.
pub fn schouten_chain(g: &LieAlgebra, u: &Chain, v: &Chain) -> Chain {
    let m = u.degree;
    let mut out = boundary(g, u).wedge(v);
    let mid = u.wedge(&boundary(g, v));
    out = out.plus(&if m % 2 == 0 { mid.scale(&Rational::one()) } else { mid.scale(&(-Rational::one())) });
    out.plus(&boundary(g, &u.wedge(v)).scale(&(-Rational::one())))
}

fn vec_to_chain(v: &[Rational], tuples: &[Vec<usize>], degree: usize, dim: usize) -> Chain {
    let mut c = Chain::zero(degree, dim);
    for (t, x) in tuples.iter().zip(v) {
        if !x.is_zero() {
            c.add(t.clone(), x.clone());
        }
    }
    c
}

fn cochain_to_vec(c: &Cochain, tuples: &[Vec<usize>]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(tuples.len() * c.rank);
    for t in tuples {
        out.extend(c.get(t));
    }
    out
}

fn vec_to_cochain(
    v: &[Rational],
    tuples: &[Vec<usize>],
    degree: usize,
    dim: usize,
    rank: usize,
) -> Cochain {
    let mut c = Cochain::zero(degree, dim, rank);
    for (i, t) in tuples.iter().enumerate() {
        c.set(t.clone(), v[i * rank..(i + 1) * rank].to_vec());
    }
    c
}

/// Matrix of the boundary map from degree k to k-1 in the tuple bases.
fn boundary_matrix(g: &LieAlgebra, k: usize) -> QMatrix {
    let src = ktuples(g.dim(), k);
    let dst = ktuples(g.dim(), k.saturating_sub(1));
    let mut m = QMatrix::zeros(if k == 0 { 0 } else { dst.len() }, src.len());
    if k == 0 {
        return m;
    }
    for (j, t) in src.iter().enumerate() {
        let img = boundary(g, &Chain::basis(g.dim(), t));
        for (i, dt) in dst.iter().enumerate() {
            m.set(i, j, img.get(dt));
        }
    }
    m
}

/// Matrix of the CE differential from degree k to k+1.
fn ce_matrix(l: &LieAlgebra, s: &LieModule, k: usize) -> QMatrix {
    let src = ktuples(l.dim(), k);
    let dst = ktuples(l.dim(), k + 1);
    let rank = s.rank();
    let mut m = QMatrix::zeros(dst.len() * rank, src.len() * rank);
    for (j, t) in src.iter().enumerate() {
        for r in 0..rank {
            let mut unit = Cochain::zero(k, l.dim(), rank);
            let mut val = vec![Rational::zero(); rank];
            val[r] = Rational::one();
            unit.set(t.clone(), val);
            let img = cochain_to_vec(&ce_d(l, s, &unit), &dst);
            for (i, x) in img.into_iter().enumerate() {
                m.set(i, j * rank + r, x);
            }
        }
    }
    m
}

/// Representatives for ker/im: keeps each kernel vector that enlarges the
/// span of the image vectors, in deterministic order.
fn quotient_reps(kernel: Vec<Vec<Rational>>, image: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut rows = image;
    let mut rank = if rows.is_empty() {
        0
    } else {
        QMatrix::from_rows(rows.clone()).rank()
    };
    let mut reps = Vec::new();
    for v in kernel {
        rows.push(v.clone());
        let r = QMatrix::from_rows(rows.clone()).rank();
        if r > rank {
            rank = r;
            reps.push(v);
        } else {
            rows.pop();
        }
    }
    reps
}

/// Homology of a Lie algebra with trivial Q coefficients at degree k;
/// returns the dimension and an echelon-deterministic representative basis.
/// Ranks from rational elimination are cross-checked against the
/// fraction-free integer strategy.
pub fn homology(g: &LieAlgebra, k: usize) -> (usize, Vec<Chain>) {
    let tuples = ktuples(g.dim(), k);
    let dk = boundary_matrix(g, k);
    let dk1 = boundary_matrix(g, k + 1);
    assert_eq!(dk.rank(), dk.rank_bareiss(), "elimination strategies disagree");
    assert_eq!(dk1.rank(), dk1.rank_bareiss(), "elimination strategies disagree");
    let kernel = if k == 0 {
        (0..tuples.len()).map(|i| {
            let mut v = vec![Rational::zero(); tuples.len()];
            v[i] = Rational::one();
            v
        }).collect()
    } else {
        dk.nullspace()
    };
    let image: Vec<Vec<Rational>> = (0..dk1.cols).map(|j| dk1.col(j)).collect();
    let reps = quotient_reps(kernel, image);
    let chains = reps
        .iter()
        .map(|v| vec_to_chain(v, &tuples, k, g.dim()))
        .collect();
    (reps.len(), chains)
}

/// Cohomology of a Lie algebra with module coefficients at degree k, by
/// exact elimination with a fraction-free rank cross-check.
pub fn cohomology(l: &LieAlgebra, s: &LieModule, k: usize) -> (usize, Vec<Cochain>) {
    let tuples = ktuples(l.dim(), k);
    let dk = ce_matrix(l, s, k);
    assert_eq!(dk.rank(), dk.rank_bareiss(), "elimination strategies disagree");
    let kernel = dk.nullspace();
    let image = if k == 0 {
        Vec::new()
    } else {
        let dprev = ce_matrix(l, s, k - 1);
        assert_eq!(dprev.rank(), dprev.rank_bareiss(), "elimination strategies disagree");
        (0..dprev.cols).map(|j| dprev.col(j)).collect()
    };
    let reps = quotient_reps(kernel, image);
    let cochains = reps
        .iter()
        .map(|v| vec_to_cochain(v, &tuples, k, l.dim(), s.rank()))
        .collect();
    (reps.len(), cochains)
}

/// The quotient algebra L/V on the echelon complement, the reduction data
/// for H_1(V) = V/[V,V], and the induced L/V-module structure on H_1(V).
pub struct H1Module {
    pub quotient: LieAlgebra,
    pub module: LieModule,
    /// Standard-basis indices of L spanning the complement (quotient lift).
    pub complement: Vec<usize>,
    /// rref rows of [V,V] inside V-echelon coordinates.
    commutator_rref: QMatrix,
    commutator_pivots: Vec<usize>,
    /// V-echelon coordinate indices representing the H_1 basis.
    pub h1_reps: Vec<usize>,
}

impl H1Module {
    /// Reduces a vector in V-echelon coordinates to H_1 coordinates.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut rem = v.to_vec();
        for (i, &p) in self.commutator_pivots.iter().enumerate() {
            let lam = rem[p].clone();
            if lam.is_zero() {
                continue;
            }
            for (r, e) in rem.iter_mut().zip(self.commutator_rref.row(i)) {
                *r -= &lam * e;
            }
        }
        self.h1_reps.iter().map(|&q| rem[q].clone()).collect()
    }
}

/// Builds L/V with the induced brackets and the induced L/V-action on
/// H_1(V) = V/[V,V]; verifies that V itself acts trivially.
pub fn h1_module(l: &LieAlgebra, v: &Ideal) -> Result<H1Module, String> {
    let comp = v.complement(l);
    let dim_q = comp.len();
    let dim_v = v.dim();

    // Quotient structure constants via the echelon splitting.
    let mut brackets = Vec::new();
    for t in ktuples(dim_q, 2) {
        let b = l.bracket(&l.basis_vec(comp[t[0]]), &l.basis_vec(comp[t[1]]));
        let (_, k) = v.split(&b, &comp);
        brackets.push(((t[0], t[1]), k));
    }
    let quotient = LieAlgebra::new(
        dim_q,
        comp.iter().map(|&i| format!("{}~", l.basis_names[i])).collect(),
        brackets,
    )
    .map_err(|e| format!("quotient bracket failed: {}", e))?;

    // [V, V] in V-echelon coordinates.
    let vb = v.echelon_basis();
    let mut comm_rows = Vec::new();
    for t in ktuples(dim_v, 2) {
        let b = l.bracket(&vb[t[0]], &vb[t[1]]);
        comm_rows.push(v.coords(&b).expect("ideal closed under bracket"));
    }
    let (comm_rref_full, comm_pivots) = if comm_rows.is_empty() {
        (QMatrix::zeros(0, dim_v), Vec::new())
    } else {
        QMatrix::from_rows(comm_rows).rref()
    };
    let commutator_rref = QMatrix::from_rows(
        (0..comm_pivots.len())
            .map(|i| comm_rref_full.row(i).to_vec())
            .collect(),
    );
    let h1_reps: Vec<usize> = (0..dim_v).filter(|i| !comm_pivots.contains(i)).collect();
    let h1_rank = h1_reps.len();

    let mut data = H1Module {
        quotient: quotient.clone(),
        module: LieModule::trivial(&quotient, h1_rank),
        complement: comp.clone(),
        commutator_rref,
        commutator_pivots: comm_pivots,
        h1_reps,
    };

    // Induced action of the quotient on H_1(V).
    let rho: Vec<QMatrix> = comp
        .iter()
        .map(|&a| {
            let mut m = QMatrix::zeros(h1_rank, h1_rank);
            for (col, &rep) in data.h1_reps.iter().enumerate() {
                let rep_l = v.embed(&{
                    let mut e = vec![Rational::zero(); v.dim()];
                    e[rep] = Rational::one();
                    e
                });
                let acted = l.bracket(&l.basis_vec(a), &rep_l);
                let coords = v.coords(&acted).expect("ideal closed under bracket");
                for (row, val) in data.reduce(&coords).into_iter().enumerate() {
                    m.set(row, col, val);
                }
            }
            m
        })
        .collect();
    data.module = LieModule::new(&quotient, h1_rank, rho)
        .map_err(|e| format!("induced H1 action is not a module: {}", e))?;

    // Well-definedness: V acts trivially on H_1(V).
    for row in v.echelon_basis() {
        for &rep in &data.h1_reps {
            let mut e = vec![Rational::zero(); v.dim()];
            e[rep] = Rational::one();
            let acted = l.bracket(&row, &v.embed(&e));
            let coords = v.coords(&acted).expect("ideal closed under bracket");
            if data.reduce(&coords).iter().any(|x| !x.is_zero()) {
                return Err("V does not act trivially on H_1(V)".into());
            }
        }
    }
    Ok(data)
}

/// The characteristic class of an ideal: its coordinates in a
/// deterministic basis of H^2(L/V; H_1(V)), together with the cocycle
/// representative on the quotient.
pub struct CharClass {
    pub h2_dim: usize,
    pub coords: Vec<Rational>,
    pub cocycle: Cochain,
}

/// A projection alpha: L -> V given as a (dim V) x (dim L) matrix in
/// V-echelon coordinates; must restrict to the identity on V.
fn validate_projection(l: &LieAlgebra, v: &Ideal, alpha: &QMatrix) -> Result<(), String> {
    if alpha.rows != v.dim() || alpha.cols != l.dim() {
        return Err("projection must be (dim V) x (dim L)".into());
    }
    for (i, row) in v.echelon_basis().iter().enumerate() {
        let img = alpha.mul_vec(row);
        for (j, x) in img.iter().enumerate() {
            let expect = if i == j { Rational::one() } else { Rational::zero() };
            if *x != expect {
                return Err("alpha does not restrict to the identity on V".into());
            }
        }
    }
    Ok(())
}

/// The default echelon projection: x -> V-echelon coordinates of the
/// V-component of x in the fixed splitting.
pub fn default_projection(l: &LieAlgebra, v: &Ideal) -> QMatrix {
    let comp = v.complement(l);
    let mut m = QMatrix::zeros(v.dim(), l.dim());
    for j in 0..l.dim() {
        let (lam, _) = v.split(&l.basis_vec(j), &comp);
        for (i, x) in lam.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// char_class with an explicit projection choice.
pub fn char_class_with(
    l: &LieAlgebra,
    v: &Ideal,
    alpha: &QMatrix,
) -> Result<CharClass, String> {
    validate_projection(l, v, alpha)?;
    let data = h1_module(l, v)?;
    let q = &data.quotient;
    let s = &data.module;
    let h1_rank = s.rank();
    let comp = &data.complement;

    // alpha~ in H_1 coordinates, and the L-action on H_1 through the
    // quotient projection.
    let alpha_tilde: Vec<Vec<Rational>> = (0..l.dim())
        .map(|j| data.reduce(&alpha.col(j)))
        .collect();
    let act_l = |j: usize, h: &[Rational]| -> Vec<Rational> {
        let (_, k) = v.split(&l.basis_vec(j), comp);
        let mut out = vec![Rational::zero(); h1_rank];
        for (a, c) in k.iter().enumerate() {
            if !c.is_zero() {
                for (o, x) in out.iter_mut().zip(s.act(a, h)) {
                    *o += c * &x;
                }
            }
        }
        out
    };

    // d(alpha~) on L, Koszul formula for a 1-cochain.
    let d_alpha = |a: usize, b: usize| -> Vec<Rational> {
        let mut out = act_l(a, &alpha_tilde[b]);
        for (o, x) in out.iter_mut().zip(act_l(b, &alpha_tilde[a])) {
            *o -= &x;
        }
        for (k, c) in l.bracket_basis(a, b).iter().enumerate() {
            if !c.is_zero() {
                for (o, x) in out.iter_mut().zip(&alpha_tilde[k]) {
                    *o -= c * x;
                }
            }
        }
        out
    };

    // Horizontality: i_w(d alpha~) = 0 for every w in V.
    for row in v.echelon_basis() {
        for b in 0..l.dim() {
            let mut val = vec![Rational::zero(); h1_rank];
            for (a, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    for (o, x) in val.iter_mut().zip(d_alpha(a, b)) {
                        *o += c * &x;
                    }
                }
            }
            if val.iter().any(|x| !x.is_zero()) {
                return Err("d(alpha~) is not horizontal over V".into());
            }
        }
    }

    // Descend to a 2-cochain on the quotient via the complement lifts.
    let mut delta = Cochain::zero(2, q.dim(), h1_rank);
    for t in ktuples(q.dim(), 2) {
        delta.set(t.clone(), d_alpha(comp[t[0]], comp[t[1]]));
    }
    if !ce_d(q, s, &delta).is_zero() {
        return Err("descended cocycle is not closed".into());
    }

    // Coordinates in the deterministic H^2 basis.
    let (h2_dim, reps) = cohomology(q, s, 2);
    let tuples = ktuples(q.dim(), 2);
    let delta_vec = cochain_to_vec(&delta, &tuples);
    let dprev = ce_matrix(q, s, 1);
    let space = tuples.len() * h1_rank;
    let mut system = QMatrix::zeros(space, h2_dim + dprev.cols);
    for (j, rep) in reps.iter().enumerate() {
        for (i, x) in cochain_to_vec(rep, &tuples).into_iter().enumerate() {
            system.set(i, j, x);
        }
    }
    for j in 0..dprev.cols {
        for (i, x) in dprev.col(j).into_iter().enumerate() {
            system.set(i, h2_dim + j, x);
        }
    }
    let sol = system
        .solve(&delta_vec)
        .ok_or("cocycle not expressible in the H^2 basis")?;
    Ok(CharClass {
        h2_dim,
        coords: sol[..h2_dim].to_vec(),
        cocycle: delta,
    })
}

/// char_class with the default echelon projection.
pub fn char_class(l: &LieAlgebra, v: &Ideal) -> Result<CharClass, String> {
    char_class_with(l, v, &default_projection(l, v))
}

/// Curvature of the connection alpha: R(X, Y) = -alpha([X - aX, Y - aY]),
/// a V-valued 2-cochain on L. Vanishes iff ker(alpha) is a subalgebra.
pub fn curvature(l: &LieAlgebra, v: &Ideal, alpha: &QMatrix) -> Result<Cochain, String> {
    validate_projection(l, v, alpha)?;
    let horiz = |j: usize| -> Vec<Rational> {
        let mut x = l.basis_vec(j);
        let corr = v.embed(&alpha.col(j));
        for (a, b) in x.iter_mut().zip(corr) {
            *a -= b;
        }
        x
    };
    let mut out = Cochain::zero(2, l.dim(), v.dim());
    for t in ktuples(l.dim(), 2) {
        let b = l.bracket(&horiz(t[0]), &horiz(t[1]));
        let val: Vec<Rational> = alpha.mul_vec(&b).iter().map(|x| -x).collect();
        out.set(t, val);
    }
    Ok(out)
}

//! Constructions producing new algebras from old ones, and fixture builders.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::Serialize;

use crate::algebra::{
    check_bihom_associative, check_multiplicativity, default_basis_names, exhaustive_check, flipped_product,
    is_morphism, morphism_report, BiHomPoissonAlgebra, CheckReport, IdentityId, DEFAULT_VIOLATION_CAP,
};
use crate::error::{Error, Result};
use crate::linalg::{
    frac, int, is_zero_vector, sub_vectors, unit_vector, zero_vector, RatMatrix, RatTensor3, Rational,
    SubspaceBasis, Vector,
};

/// A pair of endomorphisms `(alpha', beta')` used to twist an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingPair {
    pub alpha_prime: RatMatrix,
    pub beta_prime: RatMatrix,
}

impl TwistingPair {
    pub fn new(alpha_prime: RatMatrix, beta_prime: RatMatrix) -> Self {
        TwistingPair { alpha_prime, beta_prime }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(RatMatrix::identity(dim), RatMatrix::identity(dim))
    }
}

/// A Lie algebra given by structure constants `[e_i, e_j] = sum_k c_ij^k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieStructure {
    pub dim: usize,
    pub generator_names: Vec<String>,
    pub bracket: RatTensor3,
}

impl LieStructure {
    pub fn new(generator_names: Vec<String>, bracket: RatTensor3) -> Result<Self> {
        let dim = generator_names.len();
        if bracket.dims() != [dim, dim, dim] {
            return Err(Error::dims(format!("Lie bracket has dims {:?}, expected {dim}^3", bracket.dims())));
        }
        Ok(LieStructure {
            dim,
            generator_names,
            bracket,
        })
    }

    /// `sl(2)` on the basis `(e, f, h)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        let mut c = RatTensor3::zeros(3, 3, 3);
        let (e, f, h) = (0, 1, 2);
        c.set(h, e, e, int(2));
        c.set(e, h, e, int(-2));
        c.set(h, f, f, int(-2));
        c.set(f, h, f, int(2));
        c.set(e, f, h, int(1));
        c.set(f, e, h, int(-1));
        LieStructure {
            dim: 3,
            generator_names: vec!["e".into(), "f".into(), "h".into()],
            bracket: c,
        }
    }

    /// Antisymmetry and the Jacobi identity on all generator triples.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        let c = &self.bracket;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c.get(i, j, k) != &-c.get(j, i, k).clone() {
                        return Err(Error::NotALieAlgebra(format!("bracket not antisymmetric at ({i},{j})")));
                    }
                }
            }
        }
        let basis: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t = |x: &Vector, y: &Vector, z: &Vector| c.apply(x, &c.apply(y, z));
                    let mut s = t(&basis[i], &basis[j], &basis[k]);
                    for (a, b) in s.iter_mut().zip(t(&basis[j], &basis[k], &basis[i])) {
                        *a += b;
                    }
                    for (a, b) in s.iter_mut().zip(t(&basis[k], &basis[i], &basis[j])) {
                        *a += b;
                    }
                    if !is_zero_vector(&s) {
                        return Err(Error::NotALieAlgebra(format!("Jacobi fails at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_square(name: &str, m: &RatMatrix, dim: usize) -> Result<()> {
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::dims(format!("{name} is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
    }
    Ok(())
}

/// `(A, {,} o (a' (x) b'), mu o (a' (x) b'), alpha a', beta b')`.
///
/// Validates that `alpha, beta, a', b'` pairwise commute and that `a'` and `b'`
/// are morphisms of both operations.
pub fn yau_twist(a: &BiHomPoissonAlgebra, tp: &TwistingPair) -> Result<BiHomPoissonAlgebra> {
    check_square("alpha'", &tp.alpha_prime, a.dim)?;
    check_square("beta'", &tp.beta_prime, a.dim)?;
    let maps = [
        ("alpha", &a.alpha),
        ("beta", &a.beta),
        ("alpha'", &tp.alpha_prime),
        ("beta'", &tp.beta_prime),
    ];
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            if !maps[i].1.commutes_with(maps[j].1)? {
                return Err(Error::NonCommutingTwists(format!("{} and {}", maps[i].0, maps[j].0)));
            }
        }
    }
    for (name, m) in [("alpha'", &tp.alpha_prime), ("beta'", &tp.beta_prime)] {
        let r = morphism_report(m, a, a, false)?;
        if let Some(id) = r.first_failure() {
            let identity = match id {
                IdentityId::MorphismProduct => "product",
                _ => "bracket",
            };
            return Err(Error::NotAMorphism {
                map: name.into(),
                identity: identity.into(),
            });
        }
    }
    Ok(twist_unchecked(a, tp))
}

pub(crate) fn twist_unchecked(a: &BiHomPoissonAlgebra, tp: &TwistingPair) -> BiHomPoissonAlgebra {
    BiHomPoissonAlgebra {
        dim: a.dim,
        basis_names: a.basis_names.clone(),
        bracket: a.bracket.precompose(&tp.alpha_prime, &tp.beta_prime),
        product: a.product.precompose(&tp.alpha_prime, &tp.beta_prime),
        alpha: &a.alpha * &tp.alpha_prime,
        beta: &a.beta * &tp.beta_prime,
    }
}

/// `A^-`: same product and twists, bracket `mu - mu o (a^-1 b (x) a b^-1) o tau`.
pub fn polarize_minus(a: &BiHomPoissonAlgebra) -> Result<BiHomPoissonAlgebra> {
    let flipped = flipped_product(a)?;
    if let Some(id) = check_bihom_associative(a).first_failure() {
        return Err(Error::NotAssociative(id.label().into()));
    }
    let mult = check_multiplicativity(a);
    if let Some(id) = mult
        .failed_identities()
        .into_iter()
        .find(|id| matches!(id, IdentityId::AlphaProductMorphism | IdentityId::BetaProductMorphism))
    {
        return Err(Error::NotAssociative(id.label().into()));
    }
    Ok(BiHomPoissonAlgebra {
        bracket: &a.product - &flipped,
        ..a.clone()
    })
}

fn block_tensor(a: &RatTensor3, b: &RatTensor3) -> RatTensor3 {
    let n = a.dims()[0];
    let m = b.dims()[0];
    let mut t = RatTensor3::zeros(n + m, n + m, n + m);
    for (i, j, k, v) in a.nonzero_entries() {
        t.set(i, j, k, v.clone());
    }
    for (i, j, k, v) in b.nonzero_entries() {
        t.set(n + i, n + j, n + k, v.clone());
    }
    t
}

pub fn direct_sum(a: &BiHomPoissonAlgebra, b: &BiHomPoissonAlgebra) -> BiHomPoissonAlgebra {
    let mut names: Vec<String> = a.basis_names.iter().map(|s| format!("{s}_1")).collect();
    names.extend(b.basis_names.iter().map(|s| format!("{s}_2")));
    if b.dim == 0 {
        names = a.basis_names.clone();
    } else if a.dim == 0 {
        names = b.basis_names.clone();
    }
    BiHomPoissonAlgebra {
        dim: a.dim + b.dim,
        basis_names: names,
        bracket: block_tensor(&a.bracket, &b.bracket),
        product: block_tensor(&a.product, &b.product),
        alpha: a.alpha.block_diag(&b.alpha),
        beta: a.beta.block_diag(&b.beta),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealSide {
    Left,
    Right,
    TwoSided,
}

/// Which closure conditions fail for the span of `basis`; empty means closed.
fn closure_failures(a: &BiHomPoissonAlgebra, h: &SubspaceBasis, products: &[(&str, bool, bool)]) -> Vec<String> {
    let mut fails = Vec::new();
    for (name, m) in [("alpha(H) in H", &a.alpha), ("beta(H) in H", &a.beta)] {
        if h.vectors().iter().any(|v| !h.contains(&m.apply(v))) {
            fails.push(name.to_string());
        }
    }
    let whole: Vec<Vector> = (0..a.dim).map(|i| a.basis_vector(i)).collect();
    for &(name, left_in_h, right_in_h) in products {
        let lefts: &[Vector] = if left_in_h { h.vectors() } else { &whole };
        let rights: &[Vector] = if right_in_h { h.vectors() } else { &whole };
        for (op, t) in [("mu", &a.product), ("bracket", &a.bracket)] {
            let bad = lefts
                .iter()
                .any(|x| rights.iter().any(|y| !h.contains(&t.apply(x, y))));
            if bad {
                fails.push(format!("{op}{name} in H"));
            }
        }
    }
    fails
}

fn as_subspace(a: &BiHomPoissonAlgebra, basis: &[Vector]) -> Result<SubspaceBasis> {
    if basis.iter().any(|v| v.len() != a.dim) {
        return Err(Error::dims("subspace vector length differs from algebra dimension"));
    }
    Ok(SubspaceBasis::from_spanning(a.dim, basis.iter().cloned()))
}

pub fn is_subalgebra(a: &BiHomPoissonAlgebra, basis: &[Vector]) -> Result<bool> {
    let h = as_subspace(a, basis)?;
    Ok(closure_failures(a, &h, &[("(H,H)", true, true)]).is_empty())
}

/// Failed closure conditions for an ideal of the given side.
pub fn ideal_failures(a: &BiHomPoissonAlgebra, basis: &[Vector], side: IdealSide) -> Result<Vec<String>> {
    let h = as_subspace(a, basis)?;
    let conds: &[(&str, bool, bool)] = match side {
        IdealSide::Left => &[("(A,H)", false, true)],
        IdealSide::Right => &[("(H,A)", true, false)],
        IdealSide::TwoSided => &[("(A,H)", false, true), ("(H,A)", true, false)],
    };
    Ok(closure_failures(a, &h, conds))
}

pub fn is_ideal(a: &BiHomPoissonAlgebra, basis: &[Vector], side: IdealSide) -> Result<bool> {
    Ok(ideal_failures(a, basis, side)?.is_empty())
}

/// A quotient algebra together with the canonical projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: BiHomPoissonAlgebra,
    /// `dim(A/I) x dim(A)` matrix of the projection.
    pub projection: RatMatrix,
    /// Ambient basis indices whose classes form the quotient basis.
    pub representatives: Vec<usize>,
}

/// `A / I` for a two-sided ideal `I`. The quotient basis consists of the
/// classes of the standard vectors at the non-pivot columns of `I`'s echelon basis.
pub fn quotient(a: &BiHomPoissonAlgebra, ideal_basis: &[Vector]) -> Result<Quotient> {
    let fails = ideal_failures(a, ideal_basis, IdealSide::TwoSided)?;
    if !fails.is_empty() {
        return Err(Error::NotAnIdeal(fails.join(", ")));
    }
    let h = as_subspace(a, ideal_basis)?;
    let reps = h.complement_columns();
    let q = reps.len();
    let project = |v: &[Rational]| -> Vector {
        let r = h.reduce(v);
        reps.iter().map(|&c| r[c].clone()).collect()
    };
    let projection = RatMatrix::from_fn(q, a.dim, |r, c| project(&a.basis_vector(c))[r].clone());
    let lift: Vec<Vector> = reps.iter().map(|&c| a.basis_vector(c)).collect();
    let tensor = |t: &RatTensor3| RatTensor3::from_fibers(q, q, q, |i, j| project(&t.apply(&lift[i], &lift[j])));
    let map = |m: &RatMatrix| RatMatrix::from_fn(q, q, |r, c| project(&m.apply(&lift[c]))[r].clone());
    let algebra = BiHomPoissonAlgebra {
        dim: q,
        basis_names: reps.iter().map(|&c| a.basis_names[c].clone()).collect(),
        bracket: tensor(&a.bracket),
        product: tensor(&a.product),
        alpha: map(&a.alpha),
        beta: map(&a.beta),
    };
    Ok(Quotient {
        algebra,
        projection,
        representatives: reps,
    })
}

/// `Z(A) = {x : {x,y} = mu(x,y) = 0 for all y}`.
pub fn centralizer(a: &BiHomPoissonAlgebra) -> SubspaceBasis {
    let n = a.dim;
    let mut rows = Vec::new();
    for t in [&a.bracket, &a.product] {
        for j in 0..n {
            for k in 0..n {
                let row: Vec<(usize, Rational)> = (0..n)
                    .filter(|&i| !t.get(i, j, k).is_zero())
                    .map(|i| (i, t.get(i, j, k).clone()))
                    .collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    crate::linalg::nullspace_of_rows(n, rows)
}

/// Whether the graph `{(x, f x)}` of `f: A -> B` is a subalgebra of `A (+) B`.
pub fn graph_subalgebra_check(f: &RatMatrix, a: &BiHomPoissonAlgebra, b: &BiHomPoissonAlgebra) -> Result<bool> {
    if f.rows() != b.dim || f.cols() != a.dim {
        return Err(Error::dims(format!("map is {}x{}, expected {}x{}", f.rows(), f.cols(), b.dim, a.dim)));
    }
    let sum = direct_sum(a, b);
    let graph: Vec<Vector> = (0..a.dim)
        .map(|i| {
            let mut v = a.basis_vector(i);
            v.extend(f.column(i));
            v
        })
        .collect();
    is_subalgebra(&sum, &graph)
}

/// Plain associator `m(m(x,y),z) - m(x,m(y,z))` of a product tensor.
pub fn plain_associator(m: &RatTensor3, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
    sub_vectors(&m.apply(&m.apply(x, y), z), &m.apply(x, &m.apply(y, z)))
}

/// Plain Jacobi sum `{x,{y,z}} + {y,{z,x}} + {z,{x,y}}`.
pub fn plain_jacobi(b: &RatTensor3, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
    let mut s = b.apply(x, &b.apply(y, z));
    for (acc, v) in s.iter_mut().zip(b.apply(y, &b.apply(z, x))) {
        *acc += v;
    }
    for (acc, v) in s.iter_mut().zip(b.apply(z, &b.apply(x, y))) {
        *acc += v;
    }
    s
}

/// Outcome of twisting an untwisted Poisson algebra by `(alpha, beta)`.
#[derive(Clone, Debug)]
pub struct NonrigidityReport {
    pub twisted_product: RatTensor3,
    pub twisted_bracket: RatTensor3,
    /// Plain associativity of the twisted product; violations carry basis triples.
    pub associator: CheckReport,
    /// Plain Jacobi identity of the twisted bracket.
    pub jacobi: CheckReport,
    /// Both twisted operations vanish.
    pub trivial: bool,
}

impl NonrigidityReport {
    pub fn associator_at(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        plain_associator(&self.twisted_product, x, y, z)
    }

    /// A failing identity for a non-trivial twisting certifies non-rigidity.
    pub fn witness_found(&self) -> bool {
        !self.trivial && (!self.associator.passed || !self.jacobi.passed)
    }
}

pub fn nonrigidity_witness(p: &BiHomPoissonAlgebra, tp: &TwistingPair) -> Result<NonrigidityReport> {
    if !p.alpha.is_identity() || !p.beta.is_identity() {
        return Err(Error::InvalidArgument("nonrigidity_witness needs an untwisted algebra".into()));
    }
    check_square("alpha", &tp.alpha_prime, p.dim)?;
    check_square("beta", &tp.beta_prime, p.dim)?;
    for (name, m) in [("alpha", &tp.alpha_prime), ("beta", &tp.beta_prime)] {
        if !is_morphism(m, p, p)? {
            return Err(Error::TwistNotEndomorphism(name.into()));
        }
    }
    if !tp.alpha_prime.commutes_with(&tp.beta_prime)? {
        return Err(Error::NonCommutingTwists("alpha and beta".into()));
    }
    let product = p.product.precompose(&tp.alpha_prime, &tp.beta_prime);
    let bracket = p.bracket.precompose(&tp.alpha_prime, &tp.beta_prime);
    let n = p.dim;
    let basis: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
    let mut associator = CheckReport::new();
    exhaustive_check(&mut associator, IdentityId::BihomAssociativity, &[n, n, n], DEFAULT_VIOLATION_CAP, |ix| {
        plain_associator(&product, &basis[ix[0]], &basis[ix[1]], &basis[ix[2]])
    });
    let mut jacobi = CheckReport::new();
    exhaustive_check(&mut jacobi, IdentityId::BihomJacobi, &[n, n, n], DEFAULT_VIOLATION_CAP, |ix| {
        plain_jacobi(&bracket, &basis[ix[0]], &basis[ix[1]], &basis[ix[2]])
    });
    Ok(NonrigidityReport {
        trivial: product.is_zero() && bracket.is_zero(),
        twisted_product: product,
        twisted_bracket: bracket,
        associator,
        jacobi,
    })
}

/// The two-dimensional regular BiHom-associative algebra with parameters
/// `a` (not 0 or 1) and `b`, equipped with its polarized bracket.
pub fn build_example_e1(a: &Rational, b: &Rational) -> Result<BiHomPoissonAlgebra> {
    if a.is_zero() || a.is_one() {
        return Err(Error::ParameterOutOfDomain(format!(
            "a = {} must differ from 0 and 1",
            crate::linalg::format_rational(a)
        )));
    }
    let one = Rational::one();
    let zero = Rational::zero();
    let c = b * (&one - a) / a;
    let alpha = RatMatrix::from_rows(vec![vec![one.clone(), c.clone()], vec![zero.clone(), a.clone()]])?;
    let beta = RatMatrix::from_rows(vec![vec![one.clone(), b.clone()], vec![zero.clone(), &one - a]])?;
    let mut mu = RatTensor3::zeros(2, 2, 2);
    mu.set(0, 0, 0, one.clone());
    mu.set(0, 1, 0, b.clone());
    mu.set(0, 1, 1, &one - a);
    mu.set(1, 0, 0, c);
    mu.set(1, 0, 1, a.clone());
    mu.set(1, 1, 1, b / a);
    let alg = BiHomPoissonAlgebra::new(default_basis_names(2), mu, RatTensor3::zeros(2, 2, 2), alpha, beta)?;
    polarize_minus(&alg)
}

/// Upper-triangular 2x2 matrices on the basis `(E11, E12, E22)`, untwisted,
/// with zero bracket.
pub fn upper_triangular_algebra() -> BiHomPoissonAlgebra {
    let mut mu = RatTensor3::zeros(3, 3, 3);
    mu.set(0, 0, 0, int(1));
    mu.set(0, 1, 1, int(1));
    mu.set(1, 2, 1, int(1));
    mu.set(2, 2, 2, int(1));
    BiHomPoissonAlgebra::untwisted(
        vec!["E11".into(), "E12".into(), "E22".into()],
        mu,
        RatTensor3::zeros(3, 3, 3),
    )
    .expect("shapes are consistent")
}

type Exponents = Vec<u32>;
type Poly = BTreeMap<Exponents, Rational>;

/// Monomial basis of the polynomial ring in `n` generators truncated at
/// `max_deg`, in graded lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSymBasis {
    pub generator_names: Vec<String>,
    pub max_deg: u32,
    pub monomials: Vec<Exponents>,
    index: BTreeMap<Exponents, usize>,
}

impl TruncatedSymBasis {
    pub fn new(generator_names: Vec<String>, max_deg: u32) -> Self {
        let n = generator_names.len();
        let mut monomials = Vec::new();
        for d in 0..=max_deg {
            let mut layer = Vec::new();
            compositions(n, d, &mut vec![0; n], 0, &mut layer);
            monomials.extend(layer);
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        TruncatedSymBasis {
            generator_names,
            max_deg,
            monomials,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Index of a monomial given as a word in generator indices, e.g. `[0, 2, 2]` for `e h^2`.
    pub fn index_of_word(&self, word: &[usize]) -> Option<usize> {
        let mut e = vec![0; self.generator_names.len()];
        for &g in word {
            e[g] += 1;
        }
        self.index_of(&e)
    }

    pub fn monomial_name(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(&self.generator_names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.monomials.iter().map(|m| self.monomial_name(m)).collect()
    }

    fn to_vector(&self, p: &Poly) -> Vector {
        let mut v = zero_vector(self.dim());
        for (m, c) in p {
            if let Some(i) = self.index_of(m) {
                v[i] += c;
            }
        }
        v
    }

    fn poly_of(&self, i: usize) -> Poly {
        let mut p = Poly::new();
        p.insert(self.monomials[i].clone(), Rational::one());
        p
    }
}

/// Exponent vectors of total degree `d`, in descending lexicographic order.
fn compositions(n: usize, d: u32, cur: &mut Vec<u32>, pos: usize, out: &mut Vec<Exponents>) {
    if pos + 1 == n {
        cur[pos] = d;
        out.push(cur.clone());
        return;
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=d).rev() {
        cur[pos] = e;
        compositions(n, d - e, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (m1, c1) in p {
        for (m2, c2) in q {
            let m: Exponents = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
            *out.entry(m).or_insert_with(Rational::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_add_scaled(acc: &mut Poly, c: &Rational, p: &Poly) {
    for (m, v) in p {
        *acc.entry(m.clone()).or_insert_with(Rational::zero) += c * v;
    }
    acc.retain(|_, v| !v.is_zero());
}

fn poly_diff(p: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (m, c) in p {
        if m[i] == 0 {
            continue;
        }
        let mut dm = m.clone();
        dm[i] -= 1;
        *out.entry(dm).or_insert_with(Rational::zero) += c * int(m[i] as i64);
    }
    out
}

fn generator_poly(n: usize, i: usize) -> Poly {
    let mut e = vec![0; n];
    e[i] = 1;
    let mut p = Poly::new();
    p.insert(e, Rational::one());
    p
}

/// Linear Poisson bracket of two polynomials:
/// `{F,G} = 1/2 sum c_ij^k e_k (dF/de_i dG/de_j - dF/de_j dG/de_i)`.
fn linear_poisson_bracket(l: &LieStructure, f: &Poly, g: &Poly) -> Poly {
    let n = l.dim;
    let half = frac(1, 2);
    let df: Vec<Poly> = (0..n).map(|i| poly_diff(f, i)).collect();
    let dg: Vec<Poly> = (0..n).map(|i| poly_diff(g, i)).collect();
    let mut out = Poly::new();
    for i in 0..n {
        for j in 0..n {
            let mut cross = poly_mul(&df[i], &dg[j]);
            poly_add_scaled(&mut cross, &-Rational::one(), &poly_mul(&df[j], &dg[i]));
            if cross.is_empty() {
                continue;
            }
            for k in 0..n {
                let c = l.bracket.get(i, j, k);
                if c.is_zero() {
                    continue;
                }
                let term = poly_mul(&generator_poly(n, k), &cross);
                poly_add_scaled(&mut out, &(c * &half), &term);
            }
        }
    }
    out
}

/// The symmetric algebra `S(g)` with its linear Poisson bracket, truncated
/// above degree `max_deg` (the quotient by the ideal of high-degree
/// polynomials). Twist maps are the identity.
pub fn build_truncated_sym_poisson(l: &LieStructure, max_deg: u32) -> Result<BiHomPoissonAlgebra> {
    if max_deg < 1 {
        return Err(Error::InvalidArgument("max_deg must be at least 1".into()));
    }
    l.validate()?;
    let basis = TruncatedSymBasis::new(l.generator_names.clone(), max_deg);
    let n = basis.dim();
    let polys: Vec<Poly> = (0..n).map(|i| basis.poly_of(i)).collect();
    let product = RatTensor3::from_fibers(n, n, n, |i, j| basis.to_vector(&poly_mul(&polys[i], &polys[j])));
    let bracket =
        RatTensor3::from_fibers(n, n, n, |i, j| basis.to_vector(&linear_poisson_bracket(l, &polys[i], &polys[j])));
    BiHomPoissonAlgebra::untwisted(basis.names(), product, bracket)
}

/// Extends a linear map on generators (given as a matrix on generator
/// coordinates) to the algebra endomorphism of the truncated symmetric algebra.
pub fn extend_multiplicatively(basis: &TruncatedSymBasis, gen_map: &RatMatrix) -> Result<RatMatrix> {
    let g = basis.generator_names.len();
    if gen_map.rows() != g || gen_map.cols() != g {
        return Err(Error::dims(format!("generator map must be {g}x{g}")));
    }
    let images: Vec<Poly> = (0..g)
        .map(|c| {
            let mut p = Poly::new();
            for r in 0..g {
                let v = gen_map.get(r, c);
                if !v.is_zero() {
                    let mut e = vec![0; g];
                    e[r] = 1;
                    p.insert(e, v.clone());
                }
            }
            p
        })
        .collect();
    let n = basis.dim();
    let columns: Vec<Vector> = basis
        .monomials
        .iter()
        .map(|m| {
            let mut p = Poly::new();
            p.insert(vec![0; g], Rational::one());
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    p = poly_mul(&p, &images[i]);
                }
            }
            basis.to_vector(&p)
        })
        .collect();
    RatMatrix::from_columns(n, &columns)
}

/// Truncated `S(sl2)` of degree at most `max_deg`.
pub fn build_sl2(max_deg: u32) -> Result<BiHomPoissonAlgebra> {
    build_truncated_sym_poisson(&LieStructure::sl2(), max_deg)
}

pub fn sl2_basis(max_deg: u32) -> TruncatedSymBasis {
    TruncatedSymBasis::new(LieStructure::sl2().generator_names, max_deg)
}

/// The automorphism `(e, f, h) -> (s e, s^-1 f, h)` of `sl2`, extended to the
/// truncated symmetric algebra.
pub fn sl2_diagonal_twist(s: &Rational, max_deg: u32) -> Result<RatMatrix> {
    if s.is_zero() {
        return Err(Error::ParameterOutOfDomain("diagonal twist scalar must be nonzero".into()));
    }
    let gen = RatMatrix::diagonal(&[s.clone(), s.recip(), Rational::one()]);
    extend_multiplicatively(&sl2_basis(max_deg), &gen)
}

pub fn sl2_twisting_pair(lambda: &Rational, gamma: &Rational, max_deg: u32) -> Result<TwistingPair> {
    Ok(TwistingPair::new(
        sl2_diagonal_twist(lambda, max_deg)?,
        sl2_diagonal_twist(gamma, max_deg)?,
    ))
}

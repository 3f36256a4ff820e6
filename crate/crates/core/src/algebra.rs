//! The BiHom-Poisson algebra type and checkers for its defining and derived identities.
//!
//! Every identity is multilinear in its vector arguments, so checking it on
//! all tuples of basis vectors decides it for all vectors. Identities are
//! evaluated through [`IdentityEvaluator`], which also serves random-vector
//! spot checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    frac, is_zero_vector, sub_vectors, unit_vector, zero_vector, RatMatrix, RatTensor3, Rational, Vector,
};

/// Default number of violations recorded per identity.
pub const DEFAULT_VIOLATION_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHomPoissonAlgebra {
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub bracket: RatTensor3,
    pub product: RatTensor3,
    pub alpha: RatMatrix,
    pub beta: RatMatrix,
}

pub fn default_basis_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl BiHomPoissonAlgebra {
    /// Assembles an algebra, checking shapes and that the twist maps commute.
    /// The Poisson axioms themselves are not validated here.
    pub fn new(
        basis_names: Vec<String>,
        product: RatTensor3,
        bracket: RatTensor3,
        alpha: RatMatrix,
        beta: RatMatrix,
    ) -> Result<Self> {
        let dim = basis_names.len();
        for (name, t) in [("product", &product), ("bracket", &bracket)] {
            if t.dims() != [dim, dim, dim] {
                return Err(Error::dims(format!("{name} tensor has dims {:?}, expected {dim}^3", t.dims())));
            }
        }
        for (name, m) in [("alpha", &alpha), ("beta", &beta)] {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::dims(format!(
                    "{name} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if !alpha.commutes_with(&beta)? {
            return Err(Error::NonCommutingTwists("alpha*beta != beta*alpha".into()));
        }
        Ok(BiHomPoissonAlgebra {
            dim,
            basis_names,
            bracket,
            product,
            alpha,
            beta,
        })
    }

    /// An algebra with `alpha = beta = id`.
    pub fn untwisted(basis_names: Vec<String>, product: RatTensor3, bracket: RatTensor3) -> Result<Self> {
        let n = basis_names.len();
        Self::new(basis_names, product, bracket, RatMatrix::identity(n), RatMatrix::identity(n))
    }

    pub fn zero_algebra(dim: usize) -> Self {
        BiHomPoissonAlgebra {
            dim,
            basis_names: default_basis_names(dim),
            bracket: RatTensor3::zeros(dim, dim, dim),
            product: RatTensor3::zeros(dim, dim, dim),
            alpha: RatMatrix::identity(dim),
            beta: RatMatrix::identity(dim),
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.dim, i)
    }

    pub fn mu(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.product.apply(x, y)
    }

    pub fn br(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.bracket.apply(x, y)
    }

    /// `alpha^k beta^l`.
    pub fn twist_power(&self, k: u32, l: u32) -> RatMatrix {
        &self.alpha.pow(k) * &self.beta.pow(l)
    }

    pub fn with_twists(&self, alpha: RatMatrix, beta: RatMatrix) -> Result<Self> {
        Self::new(self.basis_names.clone(), self.product.clone(), self.bracket.clone(), alpha, beta)
    }

    fn check_vec(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::dims(format!("vector of length {} in a {}-dimensional algebra", v.len(), self.dim)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    TwistsCommute,
    AlphaProductMorphism,
    BetaProductMorphism,
    AlphaBracketMorphism,
    BetaBracketMorphism,
    BihomCommutativity,
    BihomAssociativity,
    SkewSymmetry,
    BihomJacobi,
    BihomLeibniz,
    Flexibility,
    PolarizedFlexibility,
    Admissibility,
    CyclicAssociatorSum,
    MorphismProduct,
    MorphismBracket,
    MorphismAlpha,
    MorphismBeta,
    ModuleTwistsCommute,
    ModuleMorphismPhi,
    ModuleMorphismPsi,
    Lbhm1,
    Lbhm2,
    Lbhm3,
    Lbhm4,
    Rbhm1,
    Rbhm2,
    Rbhm3,
    Rbhm4,
}

impl IdentityId {
    pub fn label(self) -> &'static str {
        match self {
            IdentityId::TwistsCommute => "twists_commute",
            IdentityId::AlphaProductMorphism => "alpha_product_morphism",
            IdentityId::BetaProductMorphism => "beta_product_morphism",
            IdentityId::AlphaBracketMorphism => "alpha_bracket_morphism",
            IdentityId::BetaBracketMorphism => "beta_bracket_morphism",
            IdentityId::BihomCommutativity => "bihom_commutativity",
            IdentityId::BihomAssociativity => "bihom_associativity",
            IdentityId::SkewSymmetry => "skew_symmetry",
            IdentityId::BihomJacobi => "bihom_jacobi",
            IdentityId::BihomLeibniz => "bihom_leibniz",
            IdentityId::Flexibility => "flexibility",
            IdentityId::PolarizedFlexibility => "polarized_flexibility",
            IdentityId::Admissibility => "admissibility",
            IdentityId::CyclicAssociatorSum => "cyclic_associator_sum",
            IdentityId::MorphismProduct => "morphism_product",
            IdentityId::MorphismBracket => "morphism_bracket",
            IdentityId::MorphismAlpha => "morphism_alpha",
            IdentityId::MorphismBeta => "morphism_beta",
            IdentityId::ModuleTwistsCommute => "module_twists_commute",
            IdentityId::ModuleMorphismPhi => "module_morphism_phi",
            IdentityId::ModuleMorphismPsi => "module_morphism_psi",
            IdentityId::Lbhm1 => "lbhm1",
            IdentityId::Lbhm2 => "lbhm2",
            IdentityId::Lbhm3 => "lbhm3",
            IdentityId::Lbhm4 => "lbhm4",
            IdentityId::Rbhm1 => "rbhm1",
            IdentityId::Rbhm2 => "rbhm2",
            IdentityId::Rbhm3 => "rbhm3",
            IdentityId::Rbhm4 => "rbhm4",
        }
    }

    /// Number of algebra vectors taken by the algebra-level identities
    /// (those handled by [`IdentityEvaluator`]).
    pub fn algebra_arity(self) -> Option<usize> {
        use IdentityId::*;
        match self {
            TwistsCommute => Some(0),
            AlphaProductMorphism | BetaProductMorphism | AlphaBracketMorphism | BetaBracketMorphism
            | BihomCommutativity | SkewSymmetry => Some(2),
            BihomAssociativity | BihomJacobi | BihomLeibniz | Flexibility | PolarizedFlexibility
            | Admissibility | CyclicAssociatorSum => Some(3),
            _ => None,
        }
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// The identities making up the full BiHom-Poisson check, in reporting order.
pub const POISSON_IDENTITIES: [IdentityId; 10] = [
    IdentityId::TwistsCommute,
    IdentityId::AlphaProductMorphism,
    IdentityId::BetaProductMorphism,
    IdentityId::AlphaBracketMorphism,
    IdentityId::BetaBracketMorphism,
    IdentityId::BihomCommutativity,
    IdentityId::BihomAssociativity,
    IdentityId::SkewSymmetry,
    IdentityId::BihomJacobi,
    IdentityId::BihomLeibniz,
];

pub const MULTIPLICATIVITY_IDENTITIES: [IdentityId; 4] = [
    IdentityId::AlphaProductMorphism,
    IdentityId::BetaProductMorphism,
    IdentityId::AlphaBracketMorphism,
    IdentityId::BetaBracketMorphism,
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    pub identity_id: IdentityId,
    pub witness: Vec<usize>,
    #[serde(serialize_with = "crate::io::serialize_rational_vec")]
    pub residual: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checked: Vec<IdentityId>,
    pub violations: Vec<IdentityViolation>,
    pub passed: bool,
}

impl Default for CheckReport {
    fn default() -> Self {
        CheckReport {
            checked: Vec::new(),
            violations: Vec::new(),
            passed: true,
        }
    }
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record_checked(&mut self, id: IdentityId) {
        if !self.checked.contains(&id) {
            self.checked.push(id);
        }
    }

    pub fn push_violation(&mut self, v: IdentityViolation) {
        self.record_checked(v.identity_id);
        self.violations.push(v);
        self.passed = false;
    }

    pub fn merge(&mut self, other: CheckReport) {
        for id in other.checked {
            self.record_checked(id);
        }
        for v in other.violations {
            self.push_violation(v);
        }
    }

    /// Identities with at least one violation, in the order they were checked.
    pub fn failed_identities(&self) -> Vec<IdentityId> {
        self.checked
            .iter()
            .copied()
            .filter(|id| self.violations.iter().any(|v| v.identity_id == *id))
            .collect()
    }

    pub fn first_failure(&self) -> Option<IdentityId> {
        self.failed_identities().first().copied()
    }

    pub fn failed(&self, id: IdentityId) -> bool {
        self.violations.iter().any(|v| v.identity_id == id)
    }
}

/// Runs `eval` on every tuple of `arity` indices below `dim`, recording
/// nonzero residuals (at most `cap`).
pub(crate) fn exhaustive_check(
    report: &mut CheckReport,
    id: IdentityId,
    dims: &[usize],
    cap: usize,
    mut eval: impl FnMut(&[usize]) -> Vector,
) {
    report.record_checked(id);
    let mut count = 0;
    let mut idx = vec![0usize; dims.len()];
    if dims.contains(&0) {
        return;
    }
    loop {
        let r = eval(&idx);
        if !is_zero_vector(&r) {
            if count < cap {
                report.push_violation(IdentityViolation {
                    identity_id: id,
                    witness: idx.clone(),
                    residual: r,
                });
            }
            count += 1;
        }
        let mut pos = dims.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < dims[pos] {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Precomputed twist powers for evaluating identities on arbitrary vectors.
pub struct IdentityEvaluator<'a> {
    alg: &'a BiHomPoissonAlgebra,
    a: RatMatrix,
    b: RatMatrix,
    a2: RatMatrix,
    b2: RatMatrix,
    ab: RatMatrix,
    a2b: RatMatrix,
    ab2: RatMatrix,
    polar: Option<PolarParts>,
    cap: usize,
}

struct PolarParts {
    bracket: RatTensor3,
    diamond: RatTensor3,
}

impl<'a> IdentityEvaluator<'a> {
    pub fn new(alg: &'a BiHomPoissonAlgebra) -> Self {
        let a = alg.alpha.clone();
        let b = alg.beta.clone();
        let ab = &a * &b;
        let a2 = &a * &a;
        let b2 = &b * &b;
        let polar = polarized_parts(alg).ok();
        IdentityEvaluator {
            alg,
            a2b: &a2 * &b,
            ab2: &a * &b2,
            a,
            b,
            a2,
            b2,
            ab,
            polar,
            cap: DEFAULT_VIOLATION_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn algebra(&self) -> &BiHomPoissonAlgebra {
        self.alg
    }

    fn mu(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.alg.product.apply(x, y)
    }

    fn br(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.alg.bracket.apply(x, y)
    }

    pub fn associator(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        let left = self.mu(&self.mu(x, y), &self.b.apply(z));
        let right = self.mu(&self.a.apply(x), &self.mu(y, z));
        sub_vectors(&left, &right)
    }

    /// `as(b^2 x, ab y, a^2 z)`.
    fn twisted_associator(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        self.associator(&self.b2.apply(x), &self.ab.apply(y), &self.a2.apply(z))
    }

    pub fn cyclic_associator_sum(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        let mut s = self.twisted_associator(x, y, z);
        add_assign(&mut s, &self.twisted_associator(y, z, x));
        add_assign(&mut s, &self.twisted_associator(z, x, y));
        s
    }

    /// The two-variable flexibility expression
    /// `mu(mu(b^2 x, ab y), b a^2 x) - mu(a b^2 x, mu(ab y, a^2 x))`.
    pub fn flexibility_quadratic(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let left = self.mu(&self.mu(&self.b2.apply(x), &self.ab.apply(y)), &self.a2b.apply(x));
        let right = self.mu(&self.ab2.apply(x), &self.mu(&self.ab.apply(y), &self.a2.apply(x)));
        sub_vectors(&left, &right)
    }

    /// Residual of `id` at the given vectors. `args.len()` must equal the
    /// identity's arity.
    pub fn evaluate(&self, id: IdentityId, args: &[Vector]) -> Result<Vector> {
        let arity = id
            .algebra_arity()
            .ok_or_else(|| Error::InvalidArgument(format!("{id} is not an algebra identity")))?;
        if args.len() != arity {
            return Err(Error::InvalidArgument(format!("{id} takes {arity} vectors, got {}", args.len())));
        }
        for v in args {
            self.alg.check_vec(v)?;
        }
        self.eval_unchecked(id, args)
    }

    fn eval_unchecked(&self, id: IdentityId, v: &[Vector]) -> Result<Vector> {
        use IdentityId::*;
        let (a, b) = (&self.a, &self.b);
        Ok(match id {
            TwistsCommute => sub_vectors((a * b).as_flat(), (b * a).as_flat()),
            AlphaProductMorphism => sub_vectors(&a.apply(&self.mu(&v[0], &v[1])), &self.mu(&a.apply(&v[0]), &a.apply(&v[1]))),
            BetaProductMorphism => sub_vectors(&b.apply(&self.mu(&v[0], &v[1])), &self.mu(&b.apply(&v[0]), &b.apply(&v[1]))),
            AlphaBracketMorphism => sub_vectors(&a.apply(&self.br(&v[0], &v[1])), &self.br(&a.apply(&v[0]), &a.apply(&v[1]))),
            BetaBracketMorphism => sub_vectors(&b.apply(&self.br(&v[0], &v[1])), &self.br(&b.apply(&v[0]), &b.apply(&v[1]))),
            BihomCommutativity => sub_vectors(
                &self.mu(&b.apply(&v[0]), &a.apply(&v[1])),
                &self.mu(&b.apply(&v[1]), &a.apply(&v[0])),
            ),
            BihomAssociativity => self.associator(&v[0], &v[1], &v[2]),
            SkewSymmetry => {
                let mut r = self.br(&b.apply(&v[0]), &a.apply(&v[1]));
                add_assign(&mut r, &self.br(&b.apply(&v[1]), &a.apply(&v[0])));
                r
            }
            BihomJacobi => {
                let term = |x: &Vector, y: &Vector, z: &Vector| {
                    self.br(&self.b2.apply(x), &self.br(&b.apply(y), &a.apply(z)))
                };
                let mut r = term(&v[0], &v[1], &v[2]);
                add_assign(&mut r, &term(&v[1], &v[2], &v[0]));
                add_assign(&mut r, &term(&v[2], &v[0], &v[1]));
                r
            }
            BihomLeibniz => {
                let (x, y, z) = (&v[0], &v[1], &v[2]);
                let lhs = self.br(&self.ab.apply(x), &self.mu(y, z));
                let mut rhs = self.mu(&self.br(&b.apply(x), y), &b.apply(z));
                add_assign(&mut rhs, &self.mu(&b.apply(y), &self.br(&a.apply(x), z)));
                sub_vectors(&lhs, &rhs)
            }
            Flexibility => {
                let mut r = self.twisted_associator(&v[0], &v[1], &v[2]);
                add_assign(&mut r, &self.twisted_associator(&v[2], &v[1], &v[0]));
                r
            }
            PolarizedFlexibility => {
                let p = self.polar.as_ref().ok_or_else(|| singular_twists(self.alg))?;
                let (x, y, z) = (&v[0], &v[1], &v[2]);
                let br = |u: &Vector, w: &Vector| p.bracket.apply(u, w);
                let dia = |u: &Vector, w: &Vector| p.diamond.apply(u, w);
                let abx = self.ab.apply(x);
                let aby = self.ab.apply(y);
                let a2z = self.a2.apply(z);
                let mut r = br(&abx, &dia(&aby, &a2z));
                let t2 = dia(&br(&self.b2.apply(x), &aby), &self.a2b.apply(z));
                let t3 = dia(&self.ab2.apply(y), &br(&abx, &a2z));
                r = sub_vectors(&sub_vectors(&r, &t2), &t3);
                r
            }
            Admissibility => {
                let (x, y, z) = (&v[0], &v[1], &v[2]);
                let lhs = self.associator(&b.apply(x), &a.apply(y), &self.a2.apply(z));
                let a2x = self.a2.apply(x);
                let a2y = self.a2.apply(y);
                let mut s = self.mu(&self.mu(&b.apply(x), &self.ab.apply(z)), &a2y);
                s = sub_vectors(&s, &self.mu(&self.mu(&self.b2.apply(z), &a.apply(x)), &a2y));
                add_assign(&mut s, &self.mu(&self.mu(&b.apply(y), &self.ab.apply(z)), &a2x));
                s = sub_vectors(&s, &self.mu(&self.mu(&b.apply(y), &a.apply(x)), &self.a2b.apply(z)));
                let third = frac(1, 3);
                let rhs: Vector = s.iter().map(|c| c * &third).collect();
                sub_vectors(&lhs, &rhs)
            }
            CyclicAssociatorSum => self.cyclic_associator_sum(&v[0], &v[1], &v[2]),
            _ => unreachable!("non-algebra identity"),
        })
    }

    /// Checks `id` on every tuple of basis vectors.
    pub fn check(&self, id: IdentityId) -> Result<CheckReport> {
        let arity = id
            .algebra_arity()
            .ok_or_else(|| Error::InvalidArgument(format!("{id} is not an algebra identity")))?;
        if id == IdentityId::PolarizedFlexibility && self.polar.is_none() {
            return Err(singular_twists(self.alg));
        }
        let n = self.alg.dim;
        let basis: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        let mut report = CheckReport::new();
        let dims = vec![n; arity];
        let mut err = None;
        exhaustive_check(&mut report, id, &dims, self.cap, |idx| {
            let args: Vec<Vector> = idx.iter().map(|&i| basis[i].clone()).collect();
            match self.eval_unchecked(id, &args) {
                Ok(r) => r,
                Err(e) => {
                    err = Some(e);
                    zero_vector(0)
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(report),
        }
    }

    pub fn check_all(&self, ids: &[IdentityId]) -> Result<CheckReport> {
        let mut report = CheckReport::new();
        for &id in ids {
            report.merge(self.check(id)?);
        }
        Ok(report)
    }
}

fn add_assign(acc: &mut Vector, v: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

fn singular_twists(alg: &BiHomPoissonAlgebra) -> Error {
    let (ra, rb) = (alg.alpha.rank(), alg.beta.rank());
    Error::SingularMatrix {
        rank: ra.min(rb),
        dim: alg.dim,
    }
}

/// Half-difference bracket and half-sum product built from the product:
/// `(mu -/+ mu o (a^-1 b (x) a b^-1) o tau) / 2`.
fn polarized_parts(alg: &BiHomPoissonAlgebra) -> Result<PolarParts> {
    let flipped = flipped_product(alg)?;
    let half = frac(1, 2);
    Ok(PolarParts {
        bracket: (&alg.product - &flipped).scale(&half),
        diamond: (&alg.product + &flipped).scale(&half),
    })
}

/// `mu o (a^-1 b (x) a b^-1) o tau`, i.e. `(x, y) -> mu(a^-1 b y, a b^-1 x)`.
pub(crate) fn flipped_product(alg: &BiHomPoissonAlgebra) -> Result<RatTensor3> {
    let ai = alg.alpha.invert()?;
    let bi = alg.beta.invert()?;
    let left = &ai * &alg.beta;
    let right = &alg.alpha * &bi;
    alg.product.precompose(&left, &right).swap12()
}

pub fn associator(a: &BiHomPoissonAlgebra, x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<Vector> {
    IdentityEvaluator::new(a).evaluate(IdentityId::BihomAssociativity, &[x.to_vec(), y.to_vec(), z.to_vec()])
}

pub fn cyclic_associator_sum(a: &BiHomPoissonAlgebra, x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<Vector> {
    IdentityEvaluator::new(a).evaluate(IdentityId::CyclicAssociatorSum, &[x.to_vec(), y.to_vec(), z.to_vec()])
}

fn check_ids(a: &BiHomPoissonAlgebra, ids: &[IdentityId]) -> CheckReport {
    IdentityEvaluator::new(a)
        .check_all(ids)
        .expect("algebra identities without inverses cannot fail to evaluate")
}

pub fn check_multiplicativity(a: &BiHomPoissonAlgebra) -> CheckReport {
    check_ids(a, &MULTIPLICATIVITY_IDENTITIES)
}

pub fn check_bihom_commutative(a: &BiHomPoissonAlgebra) -> CheckReport {
    check_ids(a, &[IdentityId::BihomCommutativity])
}

pub fn check_bihom_associative(a: &BiHomPoissonAlgebra) -> CheckReport {
    check_ids(a, &[IdentityId::BihomAssociativity])
}

pub fn check_skew_symmetry(a: &BiHomPoissonAlgebra) -> CheckReport {
    check_ids(a, &[IdentityId::SkewSymmetry])
}

pub fn check_bihom_jacobi(a: &BiHomPoissonAlgebra) -> CheckReport {
    check_ids(a, &[IdentityId::BihomJacobi])
}

pub fn check_bihom_leibniz(a: &BiHomPoissonAlgebra) -> CheckReport {
    check_ids(a, &[IdentityId::BihomLeibniz])
}

/// Full BiHom-Poisson check. With `skip_commutativity` the product need not be
/// BiHom-commutative (the non-commutative variant).
pub fn check_bihom_poisson_with(a: &BiHomPoissonAlgebra, skip_commutativity: bool) -> CheckReport {
    let ids: Vec<IdentityId> = POISSON_IDENTITIES
        .iter()
        .copied()
        .filter(|id| !(skip_commutativity && *id == IdentityId::BihomCommutativity))
        .collect();
    check_ids(a, &ids)
}

pub fn check_bihom_poisson(a: &BiHomPoissonAlgebra) -> CheckReport {
    check_bihom_poisson_with(a, false)
}

/// BiHom-Lie check on the bracket alone: commuting twists, skew-symmetry and
/// Jacobi. Multiplicativity is checked separately.
pub fn check_bihom_lie(a: &BiHomPoissonAlgebra) -> CheckReport {
    check_ids(a, &[IdentityId::TwistsCommute, IdentityId::SkewSymmetry, IdentityId::BihomJacobi])
}

/// Flexibility, checked through its linearization in the outer variable.
pub fn check_flexible(a: &BiHomPoissonAlgebra) -> CheckReport {
    check_ids(a, &[IdentityId::Flexibility])
}

pub fn check_polarized_flexibility(a: &BiHomPoissonAlgebra) -> Result<CheckReport> {
    IdentityEvaluator::new(a).check(IdentityId::PolarizedFlexibility)
}

pub fn check_admissible(a: &BiHomPoissonAlgebra) -> CheckReport {
    check_ids(a, &[IdentityId::Admissibility])
}

pub fn check_cyclic_associator(a: &BiHomPoissonAlgebra) -> CheckReport {
    check_ids(a, &[IdentityId::CyclicAssociatorSum])
}

/// Morphism report for `f: A -> B`. With `full` the twist compatibilities
/// `f alpha_A = alpha_B f` and `f beta_A = beta_B f` are included.
pub fn morphism_report(f: &RatMatrix, a: &BiHomPoissonAlgebra, b: &BiHomPoissonAlgebra, full: bool) -> Result<CheckReport> {
    if f.rows() != b.dim || f.cols() != a.dim {
        return Err(Error::dims(format!(
            "map is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            b.dim,
            a.dim
        )));
    }
    let mut report = CheckReport::new();
    let cols: Vec<Vector> = (0..a.dim).map(|c| f.column(c)).collect();
    let n = a.dim;
    exhaustive_check(&mut report, IdentityId::MorphismProduct, &[n, n], DEFAULT_VIOLATION_CAP, |ix| {
        let lhs = f.apply(a.product.fiber(ix[0], ix[1]));
        sub_vectors(&lhs, &b.mu(&cols[ix[0]], &cols[ix[1]]))
    });
    exhaustive_check(&mut report, IdentityId::MorphismBracket, &[n, n], DEFAULT_VIOLATION_CAP, |ix| {
        let lhs = f.apply(a.bracket.fiber(ix[0], ix[1]));
        sub_vectors(&lhs, &b.br(&cols[ix[0]], &cols[ix[1]]))
    });
    if full {
        let fa = f * &a.alpha;
        let af = &b.alpha * f;
        let fb = f * &a.beta;
        let bf = &b.beta * f;
        exhaustive_check(&mut report, IdentityId::MorphismAlpha, &[n], DEFAULT_VIOLATION_CAP, |ix| {
            sub_vectors(&fa.column(ix[0]), &af.column(ix[0]))
        });
        exhaustive_check(&mut report, IdentityId::MorphismBeta, &[n], DEFAULT_VIOLATION_CAP, |ix| {
            sub_vectors(&fb.column(ix[0]), &bf.column(ix[0]))
        });
    }
    Ok(report)
}

pub fn is_weak_morphism(f: &RatMatrix, a: &BiHomPoissonAlgebra, b: &BiHomPoissonAlgebra) -> Result<bool> {
    Ok(morphism_report(f, a, b, false)?.passed)
}

pub fn is_morphism(f: &RatMatrix, a: &BiHomPoissonAlgebra, b: &BiHomPoissonAlgebra) -> Result<bool> {
    Ok(morphism_report(f, a, b, true)?.passed)
}

/// Both twist maps are invertible and are morphisms of both operations.
pub fn check_regular(a: &BiHomPoissonAlgebra) -> bool {
    a.alpha.rank() == a.dim && a.beta.rank() == a.dim && check_multiplicativity(a).passed
}

pub fn check_involutive(a: &BiHomPoissonAlgebra) -> bool {
    (&a.alpha * &a.alpha).is_identity() && (&a.beta * &a.beta).is_identity()
}

pub(crate) fn require_regular(a: &BiHomPoissonAlgebra) -> Result<(RatMatrix, RatMatrix)> {
    let ai = a.alpha.invert().map_err(|_| Error::NotRegular("alpha is not invertible".into()))?;
    let bi = a.beta.invert().map_err(|_| Error::NotRegular("beta is not invertible".into()))?;
    Ok((ai, bi))
}

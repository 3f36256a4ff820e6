//! Left and right BiHom-Poisson modules, their constructions, and the
//! semidirect product.
//!
//! Left structure maps are tensors with axes `(algebra, module, module)`;
//! right structure maps use `(module, algebra, module)`.

use serde::Serialize;

use crate::algebra::{
    exhaustive_check, is_morphism, require_regular, BiHomPoissonAlgebra, CheckReport, IdentityId,
    DEFAULT_VIOLATION_CAP,
};
use crate::constructions::{yau_twist, TwistingPair};
use crate::error::{Error, Result};
use crate::linalg::{
    add_vectors, sub_vectors, unit_vector, RatMatrix, RatTensor3, Rational, SubspaceBasis, Vector,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModuleRep {
    pub vdim: usize,
    pub phi: RatMatrix,
    pub psi: RatMatrix,
    /// `lambda(x, v)`.
    pub lambda_t: RatTensor3,
    /// `rho(x, v)`.
    pub rho_t: RatTensor3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModuleRep {
    pub vdim: usize,
    pub phi: RatMatrix,
    pub psi: RatMatrix,
    /// `wedge(v, x)`.
    pub wedge_t: RatTensor3,
    /// `delta(v, x)`.
    pub delta_t: RatTensor3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleSide {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleRep {
    Left(LeftModuleRep),
    Right(RightModuleRep),
}

fn check_map(name: &str, m: &RatMatrix, n: usize) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::dims(format!("{name} is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
    }
    Ok(())
}

fn check_tensor(name: &str, t: &RatTensor3, dims: [usize; 3]) -> Result<()> {
    if t.dims() != dims {
        return Err(Error::dims(format!("{name} has dims {:?}, expected {dims:?}", t.dims())));
    }
    Ok(())
}

impl LeftModuleRep {
    pub fn new(phi: RatMatrix, psi: RatMatrix, lambda_t: RatTensor3, rho_t: RatTensor3) -> Result<Self> {
        let vdim = phi.rows();
        check_map("phi", &phi, vdim)?;
        check_map("psi", &psi, vdim)?;
        let n = lambda_t.dims()[0];
        check_tensor("lambda", &lambda_t, [n, vdim, vdim])?;
        check_tensor("rho", &rho_t, [n, vdim, vdim])?;
        Ok(LeftModuleRep {
            vdim,
            phi,
            psi,
            lambda_t,
            rho_t,
        })
    }

    pub fn zero(alg_dim: usize, vdim: usize) -> Self {
        LeftModuleRep {
            vdim,
            phi: RatMatrix::identity(vdim),
            psi: RatMatrix::identity(vdim),
            lambda_t: RatTensor3::zeros(alg_dim, vdim, vdim),
            rho_t: RatTensor3::zeros(alg_dim, vdim, vdim),
        }
    }

    fn check_against(&self, a: &BiHomPoissonAlgebra) -> Result<()> {
        check_tensor("lambda", &self.lambda_t, [a.dim, self.vdim, self.vdim])?;
        check_tensor("rho", &self.rho_t, [a.dim, self.vdim, self.vdim])
    }

    /// Residual of a left-module identity. `args` holds the algebra vectors
    /// followed by one module vector: `(v)` for twist commutation,
    /// `(x, v)` for the morphism conditions, `(x, y, v)` for `lbhm1`-`lbhm4`.
    pub fn evaluate(&self, a: &BiHomPoissonAlgebra, id: IdentityId, args: &[Vector]) -> Result<Vector> {
        self.check_against(a)?;
        let want = match id {
            IdentityId::ModuleTwistsCommute => 1,
            IdentityId::ModuleMorphismPhi | IdentityId::ModuleMorphismPsi => 2,
            IdentityId::Lbhm1 | IdentityId::Lbhm2 | IdentityId::Lbhm3 | IdentityId::Lbhm4 => 3,
            _ => return Err(Error::InvalidArgument(format!("{id} is not a left-module identity"))),
        };
        if args.len() != want {
            return Err(Error::InvalidArgument(format!("{id} takes {want} vectors, got {}", args.len())));
        }
        let (alg_args, v) = args.split_at(want - 1);
        if alg_args.iter().any(|x| x.len() != a.dim) || v[0].len() != self.vdim {
            return Err(Error::dims("argument length mismatch"));
        }
        Ok(LeftEval::new(a, self).eval(id, alg_args, &v[0]))
    }
}

struct LeftEval<'a> {
    a: &'a BiHomPoissonAlgebra,
    m: &'a LeftModuleRep,
    ab: RatMatrix,
}

impl<'a> LeftEval<'a> {
    fn new(a: &'a BiHomPoissonAlgebra, m: &'a LeftModuleRep) -> Self {
        LeftEval {
            a,
            m,
            ab: &a.alpha * &a.beta,
        }
    }

    fn lam(&self, x: &[Rational], v: &[Rational]) -> Vector {
        self.m.lambda_t.apply(x, v)
    }

    fn rho(&self, x: &[Rational], v: &[Rational]) -> Vector {
        self.m.rho_t.apply(x, v)
    }

    fn eval(&self, id: IdentityId, xs: &[Vector], v: &[Rational]) -> Vector {
        let (a, m) = (self.a, self.m);
        let (al, be) = (&a.alpha, &a.beta);
        match id {
            IdentityId::ModuleTwistsCommute => sub_vectors(&m.phi.apply(&m.psi.apply(v)), &m.psi.apply(&m.phi.apply(v))),
            IdentityId::ModuleMorphismPhi | IdentityId::ModuleMorphismPsi => {
                let (s, t) = if id == IdentityId::ModuleMorphismPhi { (&m.phi, al) } else { (&m.psi, be) };
                let x = &xs[0];
                let mut r = sub_vectors(&s.apply(&self.lam(x, v)), &self.lam(&t.apply(x), &s.apply(v)));
                r.extend(sub_vectors(&s.apply(&self.rho(x, v)), &self.rho(&t.apply(x), &s.apply(v))));
                r
            }
            IdentityId::Lbhm1 => {
                let (x, y) = (&xs[0], &xs[1]);
                sub_vectors(&self.lam(&al.apply(x), &self.lam(y, v)), &self.lam(&a.mu(x, y), &m.psi.apply(v)))
            }
            IdentityId::Lbhm2 => {
                let (x, y) = (&xs[0], &xs[1]);
                let lhs = self.rho(&a.br(&be.apply(x), y), &m.psi.apply(v));
                let t1 = self.rho(&self.ab.apply(x), &self.rho(y, v));
                let t2 = self.rho(&be.apply(y), &self.rho(&al.apply(x), v));
                sub_vectors(&lhs, &sub_vectors(&t1, &t2))
            }
            IdentityId::Lbhm3 => {
                let (x, y) = (&xs[0], &xs[1]);
                let lhs = self.rho(&self.ab.apply(x), &self.lam(y, v));
                let t1 = self.lam(&a.br(&be.apply(x), y), &m.psi.apply(v));
                let t2 = self.lam(&be.apply(y), &self.rho(&al.apply(x), v));
                sub_vectors(&lhs, &add_vectors(&t1, &t2))
            }
            IdentityId::Lbhm4 => {
                let (x, y) = (&xs[0], &xs[1]);
                let lhs = self.rho(&a.mu(&be.apply(x), y), &m.psi.apply(v));
                let t1 = self.lam(&self.ab.apply(x), &self.rho(y, v));
                let t2 = self.lam(&be.apply(y), &self.rho(&al.apply(x), v));
                sub_vectors(&lhs, &add_vectors(&t1, &t2))
            }
            _ => unreachable!("filtered by the caller"),
        }
    }
}

pub const LEFT_MODULE_IDENTITIES: [IdentityId; 7] = [
    IdentityId::ModuleTwistsCommute,
    IdentityId::ModuleMorphismPhi,
    IdentityId::ModuleMorphismPsi,
    IdentityId::Lbhm1,
    IdentityId::Lbhm2,
    IdentityId::Lbhm3,
    IdentityId::Lbhm4,
];

pub const RIGHT_MODULE_IDENTITIES: [IdentityId; 7] = [
    IdentityId::ModuleTwistsCommute,
    IdentityId::ModuleMorphismPhi,
    IdentityId::ModuleMorphismPsi,
    IdentityId::Rbhm1,
    IdentityId::Rbhm2,
    IdentityId::Rbhm3,
    IdentityId::Rbhm4,
];

fn module_arity(id: IdentityId) -> usize {
    match id {
        IdentityId::ModuleTwistsCommute => 1,
        IdentityId::ModuleMorphismPhi | IdentityId::ModuleMorphismPsi => 2,
        _ => 3,
    }
}

/// Verifies the module identities and the structure-map conditions on all
/// basis tuples. Witnesses list algebra indices first, then the module index.
pub fn check_left_module(a: &BiHomPoissonAlgebra, m: &LeftModuleRep) -> Result<CheckReport> {
    m.check_against(a)?;
    let ev = LeftEval::new(a, m);
    let abasis: Vec<Vector> = (0..a.dim).map(|i| a.basis_vector(i)).collect();
    let vbasis: Vec<Vector> = (0..m.vdim).map(|i| unit_vector(m.vdim, i)).collect();
    let mut report = CheckReport::new();
    for id in LEFT_MODULE_IDENTITIES {
        let k = module_arity(id);
        let mut dims = vec![a.dim; k - 1];
        dims.push(m.vdim);
        exhaustive_check(&mut report, id, &dims, DEFAULT_VIOLATION_CAP, |ix| {
            let xs: Vec<Vector> = ix[..k - 1].iter().map(|&i| abasis[i].clone()).collect();
            ev.eval(id, &xs, &vbasis[ix[k - 1]])
        });
    }
    Ok(report)
}

impl RightModuleRep {
    pub fn new(phi: RatMatrix, psi: RatMatrix, wedge_t: RatTensor3, delta_t: RatTensor3) -> Result<Self> {
        let vdim = phi.rows();
        check_map("phi", &phi, vdim)?;
        check_map("psi", &psi, vdim)?;
        let n = wedge_t.dims()[1];
        check_tensor("wedge", &wedge_t, [vdim, n, vdim])?;
        check_tensor("delta", &delta_t, [vdim, n, vdim])?;
        Ok(RightModuleRep {
            vdim,
            phi,
            psi,
            wedge_t,
            delta_t,
        })
    }

    pub fn zero(alg_dim: usize, vdim: usize) -> Self {
        RightModuleRep {
            vdim,
            phi: RatMatrix::identity(vdim),
            psi: RatMatrix::identity(vdim),
            wedge_t: RatTensor3::zeros(vdim, alg_dim, vdim),
            delta_t: RatTensor3::zeros(vdim, alg_dim, vdim),
        }
    }

    fn check_against(&self, a: &BiHomPoissonAlgebra) -> Result<()> {
        check_tensor("wedge", &self.wedge_t, [self.vdim, a.dim, self.vdim])?;
        check_tensor("delta", &self.delta_t, [self.vdim, a.dim, self.vdim])
    }

    /// Residual of a right-module identity. `args` holds the module vector
    /// followed by the algebra vectors: `(v)`, `(v, x)` or `(v, x, y)`.
    pub fn evaluate(&self, a: &BiHomPoissonAlgebra, id: IdentityId, args: &[Vector]) -> Result<Vector> {
        self.check_against(a)?;
        let want = match id {
            IdentityId::ModuleTwistsCommute => 1,
            IdentityId::ModuleMorphismPhi | IdentityId::ModuleMorphismPsi => 2,
            IdentityId::Rbhm1 | IdentityId::Rbhm2 | IdentityId::Rbhm3 | IdentityId::Rbhm4 => 3,
            _ => return Err(Error::InvalidArgument(format!("{id} is not a right-module identity"))),
        };
        if args.len() != want {
            return Err(Error::InvalidArgument(format!("{id} takes {want} vectors, got {}", args.len())));
        }
        if args[0].len() != self.vdim || args[1..].iter().any(|x| x.len() != a.dim) {
            return Err(Error::dims("argument length mismatch"));
        }
        Ok(RightEval::new(a, self).eval(id, &args[0], &args[1..]))
    }
}

struct RightEval<'a> {
    a: &'a BiHomPoissonAlgebra,
    m: &'a RightModuleRep,
    ab: RatMatrix,
}

impl<'a> RightEval<'a> {
    fn new(a: &'a BiHomPoissonAlgebra, m: &'a RightModuleRep) -> Self {
        RightEval {
            a,
            m,
            ab: &a.alpha * &a.beta,
        }
    }

    fn wedge(&self, v: &[Rational], x: &[Rational]) -> Vector {
        self.m.wedge_t.apply(v, x)
    }

    fn delta(&self, v: &[Rational], x: &[Rational]) -> Vector {
        self.m.delta_t.apply(v, x)
    }

    fn eval(&self, id: IdentityId, v: &[Rational], xs: &[Vector]) -> Vector {
        let (a, m) = (self.a, self.m);
        let (al, be) = (&a.alpha, &a.beta);
        match id {
            IdentityId::ModuleTwistsCommute => sub_vectors(&m.phi.apply(&m.psi.apply(v)), &m.psi.apply(&m.phi.apply(v))),
            IdentityId::ModuleMorphismPhi | IdentityId::ModuleMorphismPsi => {
                let (s, t) = if id == IdentityId::ModuleMorphismPhi { (&m.phi, al) } else { (&m.psi, be) };
                let x = &xs[0];
                let mut r = sub_vectors(&s.apply(&self.wedge(v, x)), &self.wedge(&s.apply(v), &t.apply(x)));
                r.extend(sub_vectors(&s.apply(&self.delta(v, x)), &self.delta(&s.apply(v), &t.apply(x))));
                r
            }
            IdentityId::Rbhm1 => {
                let (x, y) = (&xs[0], &xs[1]);
                sub_vectors(&self.wedge(&self.wedge(v, x), &be.apply(y)), &self.wedge(&m.phi.apply(v), &a.mu(x, y)))
            }
            IdentityId::Rbhm2 => {
                let (x, y) = (&xs[0], &xs[1]);
                let lhs = self.delta(&m.phi.apply(v), &a.br(x, &al.apply(y)));
                let t1 = self.delta(&self.delta(v, x), &self.ab.apply(y));
                let t2 = self.delta(&self.delta(v, &be.apply(x)), &al.apply(y));
                sub_vectors(&lhs, &sub_vectors(&t1, &t2))
            }
            IdentityId::Rbhm3 => {
                let (x, y) = (&xs[0], &xs[1]);
                let lhs = self.delta(&self.wedge(v, x), &self.ab.apply(y));
                let t1 = self.delta(&m.phi.apply(v), &a.br(x, &al.apply(y)));
                let t2 = self.wedge(&self.delta(v, &be.apply(x)), &al.apply(y));
                sub_vectors(&lhs, &add_vectors(&t1, &t2))
            }
            IdentityId::Rbhm4 => {
                let (x, y) = (&xs[0], &xs[1]);
                let lhs = self.delta(&m.phi.apply(v), &a.mu(x, &al.apply(y)));
                let t1 = self.wedge(&self.delta(v, x), &self.ab.apply(y));
                let t2 = self.wedge(&self.delta(v, &be.apply(x)), &al.apply(y));
                sub_vectors(&lhs, &add_vectors(&t1, &t2))
            }
            _ => unreachable!("filtered by the caller"),
        }
    }
}

/// Right-module counterpart of [`check_left_module`]. Witnesses list the
/// module index first, then algebra indices.
pub fn check_right_module(a: &BiHomPoissonAlgebra, m: &RightModuleRep) -> Result<CheckReport> {
    m.check_against(a)?;
    let ev = RightEval::new(a, m);
    let abasis: Vec<Vector> = (0..a.dim).map(|i| a.basis_vector(i)).collect();
    let vbasis: Vec<Vector> = (0..m.vdim).map(|i| unit_vector(m.vdim, i)).collect();
    let mut report = CheckReport::new();
    for id in RIGHT_MODULE_IDENTITIES {
        let k = module_arity(id);
        let mut dims = vec![m.vdim];
        dims.extend(std::iter::repeat_n(a.dim, k - 1));
        exhaustive_check(&mut report, id, &dims, DEFAULT_VIOLATION_CAP, |ix| {
            let xs: Vec<Vector> = ix[1..].iter().map(|&i| abasis[i].clone()).collect();
            ev.eval(id, &vbasis[ix[0]], &xs)
        });
    }
    Ok(report)
}

pub fn check_module(a: &BiHomPoissonAlgebra, m: &ModuleRep) -> Result<CheckReport> {
    match m {
        ModuleRep::Left(l) => check_left_module(a, l),
        ModuleRep::Right(r) => check_right_module(a, r),
    }
}

/// `A` acting on itself: `lambda = mu`, `rho = {,}`, `phi = alpha`, `psi = beta`.
pub fn regular_module(a: &BiHomPoissonAlgebra) -> Result<LeftModuleRep> {
    require_regular(a)?;
    Ok(LeftModuleRep {
        vdim: a.dim,
        phi: a.alpha.clone(),
        psi: a.beta.clone(),
        lambda_t: a.product.clone(),
        rho_t: a.bracket.clone(),
    })
}

/// `A` acting on itself from the right: `wedge = mu`, `delta = {,}`.
pub fn regular_right_module(a: &BiHomPoissonAlgebra) -> Result<RightModuleRep> {
    require_regular(a)?;
    Ok(RightModuleRep {
        vdim: a.dim,
        phi: a.alpha.clone(),
        psi: a.beta.clone(),
        wedge_t: a.product.clone(),
        delta_t: a.bracket.clone(),
    })
}

/// A left ideal `B` of `A` as a module over `A`, in the coordinates of the
/// echelon basis of `B`.
pub fn ideal_module(a: &BiHomPoissonAlgebra, ideal_basis: &[Vector]) -> Result<LeftModuleRep> {
    require_regular(a)?;
    if !crate::constructions::is_ideal(a, ideal_basis, crate::constructions::IdealSide::Left)? {
        return Err(Error::NotAnIdeal("not a left ideal".into()));
    }
    let h = SubspaceBasis::from_spanning(a.dim, ideal_basis.iter().cloned());
    let k = h.dim();
    let coords = |v: &[Rational]| h.coordinates(v).expect("closure verified");
    let map = |t: &RatMatrix| {
        let cols: Vec<Vector> = h.vectors().iter().map(|b| coords(&t.apply(b))).collect();
        RatMatrix::from_columns(k, &cols).expect("consistent sizes")
    };
    let act = |t: &RatTensor3| {
        RatTensor3::from_fibers(a.dim, k, k, |i, j| coords(&t.apply(&a.basis_vector(i), &h.vectors()[j])))
    };
    Ok(LeftModuleRep {
        vdim: k,
        phi: map(&a.alpha),
        psi: map(&a.beta),
        lambda_t: act(&a.product),
        rho_t: act(&a.bracket),
    })
}

fn require_module_morphism(f: &RatMatrix, a: &BiHomPoissonAlgebra, b: &BiHomPoissonAlgebra) -> Result<()> {
    if !is_morphism(f, a, b)? {
        return Err(Error::NotAMorphism {
            map: "f".into(),
            identity: "morphism conditions".into(),
        });
    }
    b.alpha.invert()?;
    b.beta.invert()?;
    Ok(())
}

/// `B` as a left `A`-module through `f`: `lambda(a, b) = mu_B(f a, b)`,
/// `rho(a, b) = {f a, b}_B`.
pub fn left_module_via_morphism(f: &RatMatrix, a: &BiHomPoissonAlgebra, b: &BiHomPoissonAlgebra) -> Result<LeftModuleRep> {
    require_module_morphism(f, a, b)?;
    let id = RatMatrix::identity(b.dim);
    Ok(LeftModuleRep {
        vdim: b.dim,
        phi: b.alpha.clone(),
        psi: b.beta.clone(),
        lambda_t: b.product.precompose(f, &id),
        rho_t: b.bracket.precompose(f, &id),
    })
}

/// `B` as a right `A`-module through `f`: `wedge(b, a) = mu_B(b, f a)`,
/// `delta(b, a) = {b, f a}_B`.
pub fn right_module_via_morphism(f: &RatMatrix, a: &BiHomPoissonAlgebra, b: &BiHomPoissonAlgebra) -> Result<RightModuleRep> {
    require_module_morphism(f, a, b)?;
    let id = RatMatrix::identity(b.dim);
    Ok(RightModuleRep {
        vdim: b.dim,
        phi: b.alpha.clone(),
        psi: b.beta.clone(),
        wedge_t: b.product.precompose(&id, f),
        delta_t: b.bracket.precompose(&id, f),
    })
}

pub fn module_via_morphism(
    f: &RatMatrix,
    a: &BiHomPoissonAlgebra,
    b: &BiHomPoissonAlgebra,
    side: ModuleSide,
) -> Result<ModuleRep> {
    Ok(match side {
        ModuleSide::Left => ModuleRep::Left(left_module_via_morphism(f, a, b)?),
        ModuleSide::Right => ModuleRep::Right(right_module_via_morphism(f, a, b)?),
    })
}

/// `lambda o (alpha^n beta^m (x) id)` and likewise for `rho`.
pub fn shift_module(a: &BiHomPoissonAlgebra, m: &LeftModuleRep, n: u32, k: u32) -> Result<LeftModuleRep> {
    m.check_against(a)?;
    let s = a.twist_power(n, k);
    let id = RatMatrix::identity(m.vdim);
    Ok(LeftModuleRep {
        lambda_t: m.lambda_t.precompose(&s, &id),
        rho_t: m.rho_t.precompose(&s, &id),
        ..m.clone()
    })
}

/// `wedge o (id (x) alpha^n beta^m)` and likewise for `delta`.
pub fn shift_right_module(a: &BiHomPoissonAlgebra, m: &RightModuleRep, n: u32, k: u32) -> Result<RightModuleRep> {
    m.check_against(a)?;
    let s = a.twist_power(n, k);
    let id = RatMatrix::identity(m.vdim);
    Ok(RightModuleRep {
        wedge_t: m.wedge_t.precompose(&id, &s),
        delta_t: m.delta_t.precompose(&id, &s),
        ..m.clone()
    })
}

fn require_untwisted(p: &BiHomPoissonAlgebra) -> Result<()> {
    if !p.alpha.is_identity() || !p.beta.is_identity() {
        return Err(Error::InvalidArgument("module twisting needs an untwisted algebra".into()));
    }
    Ok(())
}

fn hypothesis(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(what.into()))
    }
}

/// Twists a plain left Poisson module `m` over the untwisted algebra `p`
/// into a left module over `yau_twist(p, ab)` with structure maps
/// `lambda o (alpha beta (x) psi)`, `rho o (alpha beta (x) psi)`.
///
/// Returns the twisted algebra together with the module.
pub fn twist_module(
    p: &BiHomPoissonAlgebra,
    m: &LeftModuleRep,
    ab: &TwistingPair,
    phi: &RatMatrix,
    psi: &RatMatrix,
) -> Result<(BiHomPoissonAlgebra, LeftModuleRep)> {
    require_untwisted(p)?;
    m.check_against(p)?;
    check_map("phi", phi, m.vdim)?;
    check_map("psi", psi, m.vdim)?;
    let plain = LeftModuleRep {
        phi: RatMatrix::identity(m.vdim),
        psi: RatMatrix::identity(m.vdim),
        ..m.clone()
    };
    let r = check_left_module(p, &plain)?;
    if let Some(id) = r.first_failure() {
        return Err(Error::ModuleCheckFailed(format!("plain module fails {id}")));
    }
    let (al, be) = (&ab.alpha_prime, &ab.beta_prime);
    hypothesis(phi.commutes_with(psi)?, "phi psi = psi phi")?;
    for (name, t) in [("lambda", &m.lambda_t), ("rho", &m.rho_t)] {
        hypothesis(
            t.postcompose(phi) == t.precompose(al, phi),
            &format!("phi o {name} = {name} o (alpha (x) phi)"),
        )?;
        hypothesis(
            t.postcompose(psi) == t.precompose(be, psi),
            &format!("psi o {name} = {name} o (beta (x) psi)"),
        )?;
    }
    let twisted = yau_twist(p, ab)?;
    let s = al * be;
    Ok((
        twisted,
        LeftModuleRep {
            vdim: m.vdim,
            phi: phi.clone(),
            psi: psi.clone(),
            lambda_t: m.lambda_t.precompose(&s, psi),
            rho_t: m.rho_t.precompose(&s, psi),
        },
    ))
}

/// Right-module analogue of [`twist_module`]: `wedge o (phi (x) alpha beta)`,
/// `delta o (phi (x) alpha beta)`.
pub fn twist_right_module(
    p: &BiHomPoissonAlgebra,
    m: &RightModuleRep,
    ab: &TwistingPair,
    phi: &RatMatrix,
    psi: &RatMatrix,
) -> Result<(BiHomPoissonAlgebra, RightModuleRep)> {
    require_untwisted(p)?;
    m.check_against(p)?;
    check_map("phi", phi, m.vdim)?;
    check_map("psi", psi, m.vdim)?;
    let (al, be) = (&ab.alpha_prime, &ab.beta_prime);
    hypothesis(phi.commutes_with(psi)?, "phi psi = psi phi")?;
    for (name, t) in [("wedge", &m.wedge_t), ("delta", &m.delta_t)] {
        hypothesis(
            t.postcompose(phi) == t.precompose(phi, al),
            &format!("phi o {name} = {name} o (phi (x) alpha)"),
        )?;
        hypothesis(
            t.postcompose(psi) == t.precompose(psi, be),
            &format!("psi o {name} = {name} o (psi (x) beta)"),
        )?;
    }
    let twisted = yau_twist(p, ab)?;
    let s = al * be;
    Ok((
        twisted,
        RightModuleRep {
            vdim: m.vdim,
            phi: phi.clone(),
            psi: psi.clone(),
            wedge_t: m.wedge_t.precompose(phi, &s),
            delta_t: m.delta_t.precompose(phi, &s),
        },
    ))
}

/// `A (+) V` with
/// `(a+u)*(b+v) = mu(a,b) + lambda(a,v) + lambda(a^-1 b (b), psi^-1 phi (u))`,
/// `[a+u, b+v] = {a,b} + rho(a,v) - rho(a^-1 b (b), psi^-1 phi (u))`,
/// and twists `alpha (+) phi`, `beta (+) psi`.
pub fn semidirect_product(a: &BiHomPoissonAlgebra, m: &LeftModuleRep) -> Result<BiHomPoissonAlgebra> {
    m.check_against(a)?;
    let ai = a.alpha.invert()?;
    let psi_i = m.psi.invert()?;
    let r = check_left_module(a, m)?;
    if let Some(id) = r.first_failure() {
        return Err(Error::ModuleCheckFailed(id.label().into()));
    }
    let n = a.dim;
    let k = m.vdim;
    let s = &ai * &a.beta;
    let t = &psi_i * &m.phi;
    let mut product = RatTensor3::zeros(n + k, n + k, n + k);
    let mut bracket = RatTensor3::zeros(n + k, n + k, n + k);
    let place = |dst: &mut RatTensor3, i: usize, j: usize, off: usize, v: &[Rational], sign: bool| {
        for (c, x) in v.iter().enumerate() {
            let cur = dst.get(i, j, off + c).clone();
            dst.set(i, j, off + c, if sign { cur + x } else { cur - x });
        }
    };
    for i in 0..n {
        for j in 0..n {
            place(&mut product, i, j, 0, a.product.fiber(i, j), true);
            place(&mut bracket, i, j, 0, a.bracket.fiber(i, j), true);
        }
        for j in 0..k {
            place(&mut product, i, n + j, n, m.lambda_t.fiber(i, j), true);
            place(&mut bracket, i, n + j, n, m.rho_t.fiber(i, j), true);
        }
    }
    for u in 0..k {
        let tu = t.column(u);
        for b in 0..n {
            let sb = s.column(b);
            place(&mut product, n + u, b, n, &m.lambda_t.apply(&sb, &tu), true);
            place(&mut bracket, n + u, b, n, &m.rho_t.apply(&sb, &tu), false);
        }
    }
    let mut names = a.basis_names.clone();
    names.extend((1..=k).map(|i| format!("v{i}")));
    BiHomPoissonAlgebra::new(names, product, bracket, a.alpha.block_diag(&m.phi), a.beta.block_diag(&m.psi))
}

/// Maps of the split null extension `V -> A (+) V -> A`: the inclusion `i`,
/// the projection `pi` and the section `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitNullMaps {
    pub inclusion: RatMatrix,
    pub projection: RatMatrix,
    pub section: RatMatrix,
}

pub fn split_null_maps(alg_dim: usize, vdim: usize) -> SplitNullMaps {
    let total = alg_dim + vdim;
    SplitNullMaps {
        inclusion: RatMatrix::from_fn(total, vdim, |r, c| unit_vector(total, alg_dim + c)[r].clone()),
        projection: RatMatrix::from_fn(alg_dim, total, |r, c| unit_vector(alg_dim, r).get(c).cloned().unwrap_or_default()),
        section: RatMatrix::from_fn(total, alg_dim, |r, c| unit_vector(total, c)[r].clone()),
    }
}

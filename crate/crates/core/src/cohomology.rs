//! Degree-1 and degree-2 cochains, the coboundaries δ¹ and δ², and the
//! resulting low-degree cohomology dimensions.
//!
//! A 1-cochain is a matrix (flat index `r * n + c`), a 2-cochain a tensor
//! with flat index `i * n^2 + j * n + k`.

use num::Zero;
use serde::Serialize;

use crate::algebra::{require_regular, BiHomPoissonAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{
    add_vectors, int, nullspace_of_rows, sub_vectors, RatMatrix, RatTensor3, Rational, SparseRow, SubspaceBasis, Vector,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain1 {
    pub map: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    pub tensor: RatTensor3,
}

/// Values of a trilinear map `A x A x A -> A`, flat index
/// `((i * n + j) * n + k) * n + out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain3 {
    pub dim: usize,
    pub values: Vec<Rational>,
}

impl Cochain3 {
    pub fn value(&self, i: usize, j: usize, k: usize) -> &[Rational] {
        let n = self.dim;
        let start = ((i * n + j) * n + k) * n;
        &self.values[start..start + n]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

fn equivariant(a: &BiHomPoissonAlgebra, m: &RatMatrix) -> Result<bool> {
    Ok(m.commutes_with(&a.alpha)? && m.commutes_with(&a.beta)?)
}

impl Cochain1 {
    pub fn new(a: &BiHomPoissonAlgebra, map: RatMatrix) -> Result<Self> {
        if map.rows() != a.dim || map.cols() != a.dim {
            return Err(Error::dims("cochain must be an n x n matrix"));
        }
        if !equivariant(a, &map)? {
            return Err(Error::InvalidArgument("1-cochain must commute with alpha and beta".into()));
        }
        Ok(Cochain1 { map })
    }
}

fn tensor_equivariant(t: &RatTensor3, m: &RatMatrix) -> bool {
    t.precompose(m, m) == t.postcompose(m)
}

impl Cochain2 {
    pub fn new(a: &BiHomPoissonAlgebra, tensor: RatTensor3) -> Result<Self> {
        if tensor.dims() != [a.dim; 3] {
            return Err(Error::dims("cochain must be an n x n x n tensor"));
        }
        if tensor.swap12()? != -&tensor {
            return Err(Error::InvalidArgument("2-cochain must be skew-symmetric".into()));
        }
        if !tensor_equivariant(&tensor, &a.alpha) || !tensor_equivariant(&tensor, &a.beta) {
            return Err(Error::InvalidArgument("2-cochain must commute with alpha and beta".into()));
        }
        Ok(Cochain2 { tensor })
    }
}

/// Reading of the third term of δ².
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Delta2Form {
    /// `+{αβ(z), f(x,y)}`, the alternating form.
    #[default]
    Alternating,
    /// `+{αβ(y), f(x,z)}`, cancelling the second term.
    RepeatedSecondTerm,
}

#[derive(Default)]
struct RowBuilder {
    rows: Vec<SparseRow>,
}

impl RowBuilder {
    fn push(&mut self, row: SparseRow) {
        if row.iter().any(|(_, v)| !v.is_zero()) {
            self.rows.push(row);
        }
    }
}

fn degree1_rows(a: &BiHomPoissonAlgebra, strict: bool) -> Vec<SparseRow> {
    let n = a.dim;
    let mut b = RowBuilder::default();
    for t in [&a.alpha, &a.beta] {
        // (F t - t F)_{rc}
        for r in 0..n {
            for c in 0..n {
                let mut row = SparseRow::new();
                for s in 0..n {
                    row.push((r * n + s, t.get(s, c).clone()));
                    row.push((s * n + c, -t.get(r, s).clone()));
                }
                b.push(row);
            }
        }
    }
    if strict {
        // F mu(e_p, e_q) = mu(F e_p, e_q) + mu(e_p, F e_q)
        for p in 0..n {
            for q in 0..n {
                for k in 0..n {
                    let mut row = SparseRow::new();
                    for r in 0..n {
                        row.push((k * n + r, a.product.get(p, q, r).clone()));
                    }
                    for s in 0..n {
                        row.push((s * n + p, -a.product.get(s, q, k).clone()));
                        row.push((s * n + q, -a.product.get(p, s, k).clone()));
                    }
                    b.push(row);
                }
            }
        }
    }
    b.rows
}

fn degree2_rows(a: &BiHomPoissonAlgebra, strict: bool) -> Vec<SparseRow> {
    let n = a.dim;
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let mut b = RowBuilder::default();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                if i == j {
                    b.push(vec![(idx(i, i, k), int(1))]);
                } else {
                    b.push(vec![
                        (idx(i, j, k), int(1)),
                        (idx(j, i, k), int(1)),
                    ]);
                }
            }
        }
    }
    for t in [&a.alpha, &a.beta] {
        // f(t e_i, t e_j)_k - (t f(e_i, e_j))_k
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut row = SparseRow::new();
                    for p in 0..n {
                        let tp = t.get(p, i);
                        if tp.is_zero() {
                            continue;
                        }
                        for q in 0..n {
                            let tq = t.get(q, j);
                            if !tq.is_zero() {
                                row.push((idx(p, q, k), tp * tq));
                            }
                        }
                    }
                    for r in 0..n {
                        row.push((idx(i, j, r), -t.get(k, r).clone()));
                    }
                    b.push(row);
                }
            }
        }
    }
    if strict {
        // f(mu(e_p, e_q), e_c) = mu(f(e_p, e_c), e_q) + mu(e_p, f(e_q, e_c))
        for p in 0..n {
            for q in 0..n {
                for c in 0..n {
                    for k in 0..n {
                        let mut row = SparseRow::new();
                        for r in 0..n {
                            row.push((idx(r, c, k), a.product.get(p, q, r).clone()));
                        }
                        for s in 0..n {
                            row.push((idx(p, c, s), -a.product.get(s, q, k).clone()));
                            row.push((idx(q, c, s), -a.product.get(p, s, k).clone()));
                        }
                        b.push(row);
                    }
                }
            }
        }
    }
    b.rows
}

/// Basis of the degree-1 or degree-2 cochain space. `strict` adds the
/// condition that each argument slot is a derivation of the product.
pub fn cochain_space(a: &BiHomPoissonAlgebra, degree: u8, strict: bool) -> Result<SubspaceBasis> {
    let n = a.dim;
    match degree {
        1 => Ok(nullspace_of_rows(n * n, degree1_rows(a, strict))),
        2 => Ok(nullspace_of_rows(n * n * n, degree2_rows(a, strict))),
        _ => Err(Error::InvalidArgument(format!("cochain degree must be 1 or 2, got {degree}"))),
    }
}

struct Coboundary<'a> {
    a: &'a BiHomPoissonAlgebra,
    alpha_cols: Vec<Vector>,
    beta_cols: Vec<Vector>,
    ab_cols: Vec<Vector>,
    /// `alpha^-1 beta` applied to basis vectors.
    s_cols: Vec<Vector>,
}

impl<'a> Coboundary<'a> {
    fn new(a: &'a BiHomPoissonAlgebra) -> Result<Self> {
        let (ai, _) = require_regular(a).map_err(|_| Error::SingularMatrix {
            rank: a.alpha.rank().min(a.beta.rank()),
            dim: a.dim,
        })?;
        let cols = |m: &RatMatrix| (0..a.dim).map(|c| m.column(c)).collect::<Vec<_>>();
        Ok(Coboundary {
            a,
            alpha_cols: cols(&a.alpha),
            beta_cols: cols(&a.beta),
            ab_cols: cols(&(&a.alpha * &a.beta)),
            s_cols: cols(&(&ai * &a.beta)),
        })
    }

    fn delta1(&self, f: &RatMatrix) -> RatTensor3 {
        let a = self.a;
        let n = a.dim;
        let fcols: Vec<Vector> = (0..n).map(|c| f.column(c)).collect();
        RatTensor3::from_fibers(n, n, n, |i, j| {
            let t1 = a.br(&self.alpha_cols[i], &fcols[j]);
            let t2 = a.br(&self.alpha_cols[j], &fcols[i]);
            let t3 = f.apply(&a.bracket.apply(&self.s_cols[i], &a.basis_vector(j)));
            sub_vectors(&sub_vectors(&t1, &t2), &t3)
        })
    }

    fn delta2(&self, f: &RatTensor3, form: Delta2Form) -> Cochain3 {
        let a = self.a;
        let n = a.dim;
        let e: Vec<Vector> = (0..n).map(|i| a.basis_vector(i)).collect();
        // {alpha^-1 beta e_i, e_j}
        let sb: Vec<Vec<Vector>> = (0..n)
            .map(|i| (0..n).map(|j| a.br(&self.s_cols[i], &e[j])).collect())
            .collect();
        let mut values = Vec::with_capacity(n * n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let third = match form {
                        Delta2Form::Alternating => a.br(&self.ab_cols[z], f.fiber(x, y)),
                        Delta2Form::RepeatedSecondTerm => a.br(&self.ab_cols[y], f.fiber(x, z)),
                    };
                    let mut v = sub_vectors(&a.br(&self.ab_cols[x], f.fiber(y, z)), &a.br(&self.ab_cols[y], f.fiber(x, z)));
                    v = add_vectors(&v, &third);
                    v = sub_vectors(&v, &f.apply(&sb[x][y], &self.beta_cols[z]));
                    v = add_vectors(&v, &f.apply(&sb[x][z], &self.beta_cols[y]));
                    v = sub_vectors(&v, &f.apply(&sb[y][z], &self.beta_cols[x]));
                    values.extend(v);
                }
            }
        }
        Cochain3 { dim: n, values }
    }
}

/// `δ¹f(x,y) = {α(x), f(y)} - {α(y), f(x)} - f({α⁻¹β(x), y})`.
pub fn delta1(a: &BiHomPoissonAlgebra, f: &Cochain1) -> Result<Cochain2> {
    if f.map.rows() != a.dim || f.map.cols() != a.dim {
        return Err(Error::dims("cochain size does not match the algebra"));
    }
    Ok(Cochain2 {
        tensor: Coboundary::new(a)?.delta1(&f.map),
    })
}

pub fn delta2(a: &BiHomPoissonAlgebra, f: &Cochain2) -> Result<Cochain3> {
    delta2_with(a, f, Delta2Form::Alternating)
}

pub fn delta2_with(a: &BiHomPoissonAlgebra, f: &Cochain2, form: Delta2Form) -> Result<Cochain3> {
    if f.tensor.dims() != [a.dim; 3] {
        return Err(Error::dims("cochain size does not match the algebra"));
    }
    Ok(Coboundary::new(a)?.delta2(&f.tensor, form))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    #[serde(rename = "C1")]
    pub dim_c1: usize,
    #[serde(rename = "C2")]
    pub dim_c2: usize,
    #[serde(rename = "Z1")]
    pub dim_z1: usize,
    #[serde(rename = "Z2")]
    pub dim_z2: usize,
    #[serde(rename = "B2")]
    pub dim_b2: usize,
    #[serde(rename = "H1")]
    pub dim_h1: usize,
    #[serde(rename = "H2")]
    pub dim_h2: usize,
    pub strict: bool,
    /// Operation used by the strict derivation condition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_operation: Option<&'static str>,
    /// Whether every δ¹ of a C¹ basis element is plain skew-symmetric.
    pub delta1_plain_skew: bool,
    /// Whether every δ¹ of a C¹ basis element satisfies
    /// `g(β(x), α(y)) = -g(β(y), α(x))`.
    pub delta1_bihom_skew: bool,
}

fn flat_tensor(n: usize, v: &[Rational]) -> RatTensor3 {
    RatTensor3::from_flat([n, n, n], v)
}

pub fn cohomology_dims(a: &BiHomPoissonAlgebra, strict: bool) -> Result<CohomologyReport> {
    let cob = Coboundary::new(a)?;
    let n = a.dim;
    let c1 = cochain_space(a, 1, strict)?;
    let c2 = cochain_space(a, 2, strict)?;

    let mut plain_skew = true;
    let mut bihom_skew = true;
    let mut images = Vec::with_capacity(c1.dim());
    let mut d1_rows: Vec<SparseRow> = Vec::new();
    for g in c1.vectors() {
        let d = cob.delta1(&RatMatrix::from_flat(n, n, g));
        let swapped = d.swap12()?;
        plain_skew &= swapped == -&d;
        let twisted = d.precompose(&a.beta, &a.alpha);
        bihom_skew &= twisted.swap12()? == -&twisted;
        images.push(d.as_flat().to_vec());
    }
    // rank of δ¹ as the rank of its image vectors; kernel from the transpose
    for row in 0..n * n * n {
        let r: SparseRow = images
            .iter()
            .enumerate()
            .filter(|(_, im)| !im[row].is_zero())
            .map(|(c, im)| (c, im[row].clone()))
            .collect();
        if !r.is_empty() {
            d1_rows.push(r);
        }
    }
    let z1 = nullspace_of_rows(c1.dim(), d1_rows);
    let b2 = SubspaceBasis::from_spanning(n * n * n, images);
    if !b2.is_subspace_of(&c2) {
        return Err(Error::HypothesisViolated("image of delta1 leaves the 2-cochain space".into()));
    }

    let d2_images: Vec<Vec<Rational>> = c2
        .vectors()
        .iter()
        .map(|f| cob.delta2(&flat_tensor(n, f), Delta2Form::Alternating).values)
        .collect();
    let mut d2_rows: Vec<SparseRow> = Vec::new();
    for row in 0..n.pow(4) {
        let r: SparseRow = d2_images
            .iter()
            .enumerate()
            .filter(|(_, im)| !im[row].is_zero())
            .map(|(c, im)| (c, im[row].clone()))
            .collect();
        if !r.is_empty() {
            d2_rows.push(r);
        }
    }
    let z2_coords = nullspace_of_rows(c2.dim(), d2_rows);
    for b in b2.vectors() {
        if !cob.delta2(&flat_tensor(n, b), Delta2Form::Alternating).is_zero() {
            return Err(Error::HypothesisViolated("image of delta1 is not in the kernel of delta2".into()));
        }
    }

    let dim_z2 = z2_coords.dim();
    Ok(CohomologyReport {
        dim_c1: c1.dim(),
        dim_c2: c2.dim(),
        dim_z1: z1.dim(),
        dim_z2,
        dim_b2: b2.dim(),
        dim_h1: z1.dim(),
        dim_h2: dim_z2 - b2.dim(),
        strict,
        strict_operation: strict.then_some("product"),
        delta1_plain_skew: plain_skew,
        delta1_bihom_skew: bihom_skew,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_example_e1, build_sl2};
    use crate::derivations::solve_commutant;

    #[test]
    fn trivial_counts() {
        let a = BiHomPoissonAlgebra::zero_algebra(2);
        assert_eq!(cochain_space(&a, 1, false).unwrap().dim(), 4);
        assert_eq!(cochain_space(&a, 2, false).unwrap().dim(), 2);
        let r = cohomology_dims(&a, false).unwrap();
        assert_eq!((r.dim_z2, r.dim_b2, r.dim_h2), (2, 0, 2));
        assert!(cochain_space(&a, 3, false).is_err());
    }

    #[test]
    fn c1_is_the_commutant() {
        let a = build_example_e1(&int(2), &int(3)).unwrap();
        let c1 = cochain_space(&a, 1, false).unwrap();
        let w = solve_commutant(&a);
        let flat = SubspaceBasis::from_spanning(4, w.matrices().iter().map(|m| m.as_flat().to_vec()));
        assert_eq!(c1, flat);
    }

    #[test]
    fn identity_cochain_gives_bracket() {
        let a = build_sl2(1).unwrap();
        let d = delta1(&a, &Cochain1::new(&a, RatMatrix::identity(4)).unwrap()).unwrap();
        assert_eq!(d.tensor, a.bracket);
    }

    #[test]
    fn delta_squared_vanishes() {
        for a in [build_example_e1(&int(2), &int(3)).unwrap(), build_sl2(1).unwrap()] {
            let c1 = cochain_space(&a, 1, false).unwrap();
            for g in c1.vectors() {
                let f = Cochain1::new(&a, RatMatrix::from_flat(a.dim, a.dim, g)).unwrap();
                let d = delta1(&a, &f).unwrap();
                assert!(delta2(&a, &d).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn repeated_second_term_breaks_delta_squared() {
        let a = build_sl2(1).unwrap();
        let c1 = cochain_space(&a, 1, false).unwrap();
        let broken = c1.vectors().iter().any(|g| {
            let d = delta1(&a, &Cochain1 { map: RatMatrix::from_flat(4, 4, g) }).unwrap();
            !delta2_with(&a, &d, Delta2Form::RepeatedSecondTerm).unwrap().is_zero()
        });
        assert!(broken);
    }

    #[test]
    fn sl2_report_is_consistent() {
        let a = build_sl2(1).unwrap();
        let r = cohomology_dims(&a, false).unwrap();
        assert_eq!(r.dim_c1, 16);
        assert_eq!(r.dim_z1 + r.dim_b2, r.dim_c1);
        assert!(r.dim_b2 <= r.dim_z2);
        assert!(r.delta1_plain_skew);
        let s = cohomology_dims(&a, true).unwrap();
        assert!(s.dim_c1 <= r.dim_c1);
        assert_eq!(s.strict_operation, Some("product"));
    }

    #[test]
    fn zero_bracket_example_has_zero_delta1() {
        let a = build_example_e1(&int(2), &int(3)).unwrap();
        let r = cohomology_dims(&a, false).unwrap();
        assert_eq!(r.dim_b2, 0);
        assert_eq!(r.dim_h2, r.dim_c2);
        assert_eq!(r.dim_z1, r.dim_c1);
    }

    #[test]
    fn singular_twist_is_rejected() {
        let mut a = BiHomPoissonAlgebra::zero_algebra(2);
        a.alpha = RatMatrix::zeros(2, 2);
        a.beta = RatMatrix::zeros(2, 2);
        assert!(matches!(cohomology_dims(&a, false), Err(Error::SingularMatrix { .. })));
    }
}

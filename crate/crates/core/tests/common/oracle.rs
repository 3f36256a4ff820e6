//! Reference computations written directly from definitions, sharing no
//! code with the library beyond its data types.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use bihom_poisson::linalg::{RatMatrix, RatTensor3, Rational, Vector};
use num::{One, Zero};

/// Dense Gauss-Jordan elimination. Returns the nonzero rows of the reduced
/// row echelon form and their pivot columns.
pub fn rref(mut m: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
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
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// Kernel of the row system, returned as the reduced echelon basis of the
/// kernel.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (red, pivots) = rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    rref(kernel, ncols).0
}

pub fn mat_vec(m: &RatMatrix, v: &[Rational]) -> Vector {
    (0..m.rows())
        .map(|r| (0..m.cols()).fold(Rational::zero(), |acc, c| acc + m.get(r, c) * &v[c]))
        .collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    RatMatrix::from_fn(a.rows(), b.cols(), |r, c| {
        (0..a.cols()).fold(Rational::zero(), |acc, k| acc + a.get(r, k) * b.get(k, c))
    })
}

pub fn mat_inverse(m: &RatMatrix) -> RatMatrix {
    let n = m.rows();
    let aug: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = m.row(r).to_vec();
            row.extend((0..n).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let (red, pivots) = rref(aug, 2 * n);
    assert!(pivots.len() == n && pivots[n - 1] == n - 1, "matrix is singular");
    RatMatrix::from_fn(n, n, |r, c| red[r][n + c].clone())
}

/// `t(x, y)` summed entry by entry.
pub fn bil(t: &RatTensor3, x: &[Rational], y: &[Rational]) -> Vector {
    let [d1, d2, d3] = t.dims();
    let mut out = vec![Rational::zero(); d3];
    for i in 0..d1 {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..d2 {
            if y[j].is_zero() {
                continue;
            }
            let c = &x[i] * &y[j];
            for (k, o) in out.iter_mut().enumerate() {
                *o += &c * t.get(i, j, k);
            }
        }
    }
    out
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn unit(n: usize, i: usize) -> Vector {
    (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
}

/// Polynomials in `e, f, h` keyed by exponent triples.
pub type Poly = BTreeMap<[u32; 3], Rational>;

pub fn monomial(exps: [u32; 3]) -> Poly {
    BTreeMap::from([(exps, Rational::one())])
}

fn poly_add_into(acc: &mut Poly, p: &Poly, scale: &Rational) {
    for (m, c) in p {
        let e = acc.entry(*m).or_insert_with(Rational::zero);
        *e += c * scale;
    }
    acc.retain(|_, c| !c.is_zero());
}

pub fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (m1, c1) in p {
        for (m2, c2) in q {
            let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
            poly_add_into(&mut out, &monomial(m), &(c1 * c2));
        }
    }
    out
}

pub fn partial(p: &Poly, var: usize) -> Poly {
    let mut out = Poly::new();
    for (m, c) in p {
        if m[var] > 0 {
            let mut d = *m;
            d[var] -= 1;
            poly_add_into(&mut out, &monomial(d), &(c * Rational::from_integer(m[var].into())));
        }
    }
    out
}

/// `[x_i, x_j]` in `sl2` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
fn sl2_generator_bracket(i: usize, j: usize) -> Poly {
    let (e, f, h) = (0, 1, 2);
    let lin = |var: usize, c: i64| BTreeMap::from([(unit_exps(var), Rational::from_integer(c.into()))]);
    match (i, j) {
        (a, b) if a == e && b == f => lin(h, 1),
        (a, b) if a == f && b == e => lin(h, -1),
        (a, b) if a == h && b == e => lin(e, 2),
        (a, b) if a == e && b == h => lin(e, -2),
        (a, b) if a == h && b == f => lin(f, -2),
        (a, b) if a == f && b == h => lin(f, 2),
        _ => Poly::new(),
    }
}

fn unit_exps(var: usize) -> [u32; 3] {
    let mut m = [0; 3];
    m[var] = 1;
    m
}

/// `{F, G} = sum_{i,j} dF/dx_i dG/dx_j [x_i, x_j]`.
pub fn sl2_poisson(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for i in 0..3 {
        let dp = partial(p, i);
        if dp.is_empty() {
            continue;
        }
        for j in 0..3 {
            let dq = partial(q, j);
            if dq.is_empty() {
                continue;
            }
            let term = poly_mul(&poly_mul(&dp, &dq), &sl2_generator_bracket(i, j));
            poly_add_into(&mut out, &term, &Rational::one());
        }
    }
    out
}

pub fn degree(m: &[u32; 3]) -> u32 {
    m.iter().sum()
}

/// Name used for a monomial: generators `e, f, h` joined by `*`, powers as `^k`.
pub fn monomial_name(m: &[u32; 3]) -> String {
    let parts: Vec<String> = ["e", "f", "h"]
        .iter()
        .zip(m)
        .filter(|(_, k)| **k > 0)
        .map(|(g, k)| if *k == 1 { g.to_string() } else { format!("{g}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// All exponent triples of total degree at most `max_deg`.
pub fn monomials_up_to(max_deg: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=max_deg {
        for b in 0..=max_deg - a {
            for c in 0..=max_deg - a - b {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Coordinates of a truncated polynomial in a basis given by names.
pub fn poly_to_vector(p: &Poly, names: &[String], max_deg: u32) -> Vector {
    let mut v = vec![Rational::zero(); names.len()];
    for (m, c) in p {
        if degree(m) > max_deg {
            continue;
        }
        let name = monomial_name(m);
        let i = names.iter().position(|n| *n == name).expect("monomial present in basis");
        v[i] += c;
    }
    v
}

/// `δ¹f(x,y) = {αx, f y} - {αy, f x} - f({α⁻¹β x, y})` on basis pairs.
pub fn delta1(bracket: &RatTensor3, alpha: &RatMatrix, beta: &RatMatrix, f: &RatMatrix) -> RatTensor3 {
    let n = alpha.rows();
    let s = mat_mul(&mat_inverse(alpha), beta);
    let mut out = RatTensor3::zeros(n, n, n);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (unit(n, i), unit(n, j));
            let t1 = bil(bracket, &mat_vec(alpha, &x), &mat_vec(f, &y));
            let t2 = bil(bracket, &mat_vec(alpha, &y), &mat_vec(f, &x));
            let t3 = mat_vec(f, &bil(bracket, &mat_vec(&s, &x), &y));
            for (k, v) in sub(&sub(&t1, &t2), &t3).into_iter().enumerate() {
                out.set(i, j, k, v);
            }
        }
    }
    out
}

/// Alternating δ² on a basis triple.
pub fn delta2_at(
    bracket: &RatTensor3,
    alpha: &RatMatrix,
    beta: &RatMatrix,
    f: &RatTensor3,
    i: usize,
    j: usize,
    k: usize,
) -> Vector {
    let n = alpha.rows();
    let ab = mat_mul(alpha, beta);
    let s = mat_mul(&mat_inverse(alpha), beta);
    let (x, y, z) = (unit(n, i), unit(n, j), unit(n, k));
    let br = |u: &[Rational], v: &[Rational]| bil(bracket, u, v);
    let fv = |u: &[Rational], v: &[Rational]| bil(f, u, v);
    let mv = |m: &RatMatrix, u: &[Rational]| mat_vec(m, u);
    let terms = [
        (1, br(&mv(&ab, &x), &fv(&y, &z))),
        (-1, br(&mv(&ab, &y), &fv(&x, &z))),
        (1, br(&mv(&ab, &z), &fv(&x, &y))),
        (-1, fv(&br(&mv(&s, &x), &y), &mv(beta, &z))),
        (1, fv(&br(&mv(&s, &x), &z), &mv(beta, &y))),
        (-1, fv(&br(&mv(&s, &y), &z), &mv(beta, &x))),
    ];
    let mut out = vec![Rational::zero(); n];
    for (sign, t) in terms {
        out = if sign > 0 { add(&out, &t) } else { sub(&out, &t) };
    }
    out
}

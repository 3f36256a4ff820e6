//! JSON file formats for algebras, modules, Lie structures and matrices.
//!
//! Rationals are strings `"p"` or `"p/q"` (JSON integers are also read).
//! Tensors are either dense nested arrays indexed `[i][j][k]` or sparse
//! lists of `[i, j, k, "p/q"]` entries.

use std::path::Path;

use serde::Serializer;
use serde_json::{json, Map, Value};

use crate::algebra::{default_basis_names, BiHomPoissonAlgebra};
use crate::constructions::LieStructure;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, RatMatrix, RatTensor3, Rational};
use crate::modules::{LeftModuleRep, ModuleRep, RightModuleRep};

/// Algebras of at least this dimension are written with sparse tensors.
pub const SPARSE_THRESHOLD: usize = 16;

pub fn serialize_rational_vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TensorEncoding {
    /// Dense below [`SPARSE_THRESHOLD`], sparse from it on.
    #[default]
    Auto,
    Dense,
    Sparse,
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str, ctx: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::parse(ctx, format!("missing field \"{name}\"")))
}

fn as_object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse(ctx, "expected an object"))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(ctx, "expected an array"))
}

fn as_count(v: &Value, ctx: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::parse(ctx, "expected a non-negative integer"))
}

fn rational_value(v: &Value, ctx: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(ctx, message),
            other => other,
        }),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(Error::parse(ctx, "numbers must be integers; write fractions as \"p/q\" strings")),
        },
        _ => Err(Error::parse(ctx, "expected a rational string")),
    }
}

fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn parse_matrix_value(v: &Value, rows: usize, cols: usize, ctx: &str) -> Result<RatMatrix> {
    let outer = as_array(v, ctx)?;
    if outer.len() != rows {
        return Err(Error::parse(ctx, format!("expected {rows} rows, found {}", outer.len())));
    }
    let mut m = RatMatrix::zeros(rows, cols);
    for (r, row) in outer.iter().enumerate() {
        let rctx = format!("{ctx}[{r}]");
        let entries = as_array(row, &rctx)?;
        if entries.len() != cols {
            return Err(Error::parse(&rctx, format!("ragged row: expected {cols} entries, found {}", entries.len())));
        }
        for (c, x) in entries.iter().enumerate() {
            m.set(r, c, rational_value(x, &format!("{rctx}[{c}]"))?);
        }
    }
    Ok(m)
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(rational_json).collect()))
            .collect(),
    )
}

fn is_sparse(arr: &[Value]) -> bool {
    match arr.first() {
        Some(Value::Array(inner)) => !inner.is_empty() && !inner[0].is_array(),
        _ => false,
    }
}

fn parse_tensor_value(v: &Value, dims: [usize; 3], ctx: &str) -> Result<RatTensor3> {
    let arr = as_array(v, ctx)?;
    let [d1, d2, d3] = dims;
    let mut t = RatTensor3::zeros(d1, d2, d3);
    if is_sparse(arr) {
        let mut seen = std::collections::HashSet::new();
        for (n, entry) in arr.iter().enumerate() {
            let ectx = format!("{ctx}[{n}]");
            let e = as_array(entry, &ectx)?;
            if e.len() != 4 {
                return Err(Error::parse(&ectx, "sparse entry must be [i, j, k, value]"));
            }
            let mut idx = [0usize; 3];
            for a in 0..3 {
                idx[a] = as_count(&e[a], &format!("{ectx}[{a}]"))?;
                if idx[a] >= dims[a] {
                    return Err(Error::parse(&ectx, format!("index {} out of range {}", idx[a], dims[a])));
                }
            }
            if !seen.insert(idx) {
                return Err(Error::parse(&ectx, "duplicate sparse entry"));
            }
            t.set(idx[0], idx[1], idx[2], rational_value(&e[3], &format!("{ectx}[3]"))?);
        }
        return Ok(t);
    }
    if arr.is_empty() && d1 != 0 {
        return Ok(t);
    }
    if arr.len() != d1 {
        return Err(Error::parse(ctx, format!("expected {d1} slices, found {}", arr.len())));
    }
    for (i, slice) in arr.iter().enumerate() {
        let m = parse_matrix_value(slice, d2, d3, &format!("{ctx}[{i}]"))?;
        for j in 0..d2 {
            for k in 0..d3 {
                t.set(i, j, k, m.get(j, k).clone());
            }
        }
    }
    Ok(t)
}

fn tensor_to_json(t: &RatTensor3, sparse: bool) -> Value {
    let [d1, d2, d3] = t.dims();
    if sparse {
        Value::Array(
            t.nonzero_entries()
                .map(|(i, j, k, v)| json!([i, j, k, format_rational(v)]))
                .collect(),
        )
    } else {
        Value::Array(
            (0..d1)
                .map(|i| {
                    Value::Array(
                        (0..d2)
                            .map(|j| Value::Array((0..d3).map(|k| rational_json(t.get(i, j, k))).collect()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

fn use_sparse(dim: usize, enc: TensorEncoding) -> bool {
    match enc {
        TensorEncoding::Auto => dim >= SPARSE_THRESHOLD,
        TensorEncoding::Dense => false,
        TensorEncoding::Sparse => true,
    }
}

fn parse_names(obj: &Map<String, Value>, key: &str, dim: usize) -> Result<Vec<String>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(default_basis_names(dim)),
        Some(v) => {
            let arr = as_array(v, key)?;
            if arr.len() != dim {
                return Err(Error::parse(key, format!("expected {dim} names, found {}", arr.len())));
            }
            arr.iter()
                .enumerate()
                .map(|(i, n)| {
                    n.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| Error::parse(format!("{key}[{i}]"), "expected a string"))
                })
                .collect()
        }
    }
}

fn optional_matrix(obj: &Map<String, Value>, key: &str, n: usize) -> Result<RatMatrix> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(RatMatrix::identity(n)),
        Some(v) => parse_matrix_value(v, n, n, key),
    }
}

fn optional_tensor(obj: &Map<String, Value>, key: &str, dims: [usize; 3]) -> Result<RatTensor3> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(RatTensor3::zeros(dims[0], dims[1], dims[2])),
        Some(v) => parse_tensor_value(v, dims, key),
    }
}

/// Reads an algebra from a JSON value. Missing `alpha`/`beta` default to
/// the identity, a missing `bracket` or `product` to zero.
pub fn algebra_from_json(v: &Value) -> Result<BiHomPoissonAlgebra> {
    let obj = as_object(v, "algebra")?;
    let dim = as_count(field(obj, "dim", "algebra")?, "dim")?;
    let names = parse_names(obj, "basis", dim)?;
    let alpha = optional_matrix(obj, "alpha", dim)?;
    let beta = optional_matrix(obj, "beta", dim)?;
    let product = optional_tensor(obj, "product", [dim; 3])?;
    let bracket = optional_tensor(obj, "bracket", [dim; 3])?;
    BiHomPoissonAlgebra::new(names, product, bracket, alpha, beta)
}

pub fn algebra_to_json(a: &BiHomPoissonAlgebra, enc: TensorEncoding) -> Value {
    let sparse = use_sparse(a.dim, enc);
    json!({
        "dim": a.dim,
        "basis": a.basis_names,
        "alpha": matrix_to_json(&a.alpha),
        "beta": matrix_to_json(&a.beta),
        "product": tensor_to_json(&a.product, sparse),
        "bracket": tensor_to_json(&a.bracket, sparse),
    })
}

pub fn parse_algebra_str(text: &str) -> Result<BiHomPoissonAlgebra> {
    algebra_from_json(&parse_json(text)?)
}

pub fn parse_algebra(path: impl AsRef<Path>) -> Result<BiHomPoissonAlgebra> {
    parse_algebra_str(&read_file(path.as_ref())?)
}

pub fn algebra_to_string(a: &BiHomPoissonAlgebra) -> String {
    pretty(&algebra_to_json(a, TensorEncoding::Auto))
}

/// Pretty JSON with a trailing newline.
pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// Accepts either a bare array of rows or an object with a `matrix` field.
pub fn matrix_from_json(v: &Value, n: usize) -> Result<RatMatrix> {
    match v {
        Value::Object(obj) => parse_matrix_value(field(obj, "matrix", "matrix file")?, n, n, "matrix"),
        _ => parse_matrix_value(v, n, n, "matrix"),
    }
}

pub fn parse_matrix_str(text: &str, n: usize) -> Result<RatMatrix> {
    matrix_from_json(&parse_json(text)?, n)
}

pub fn parse_matrix(path: impl AsRef<Path>, n: usize) -> Result<RatMatrix> {
    parse_matrix_str(&read_file(path.as_ref())?, n)
}

/// Reads a Lie structure: `dim`, optional `basis`, and `bracket`.
pub fn lie_from_json(v: &Value) -> Result<LieStructure> {
    let obj = as_object(v, "Lie structure")?;
    let dim = as_count(field(obj, "dim", "Lie structure")?, "dim")?;
    let names = parse_names(obj, "basis", dim)?;
    let bracket = parse_tensor_value(field(obj, "bracket", "Lie structure")?, [dim; 3], "bracket")?;
    LieStructure::new(names, bracket)
}

pub fn lie_to_json(l: &LieStructure) -> Value {
    json!({
        "dim": l.dim,
        "basis": l.generator_names,
        "bracket": tensor_to_json(&l.bracket, use_sparse(l.dim, TensorEncoding::Auto)),
    })
}

pub fn parse_lie_str(text: &str) -> Result<LieStructure> {
    lie_from_json(&parse_json(text)?)
}

pub fn parse_lie(path: impl AsRef<Path>) -> Result<LieStructure> {
    parse_lie_str(&read_file(path.as_ref())?)
}

/// Reads a module over an algebra of dimension `alg_dim`. `side` defaults
/// to `"left"`.
pub fn module_from_json(v: &Value, alg_dim: usize) -> Result<ModuleRep> {
    let obj = as_object(v, "module")?;
    let vdim = as_count(field(obj, "vdim", "module")?, "vdim")?;
    let phi = optional_matrix(obj, "phi", vdim)?;
    let psi = optional_matrix(obj, "psi", vdim)?;
    let side = match obj.get("side") {
        None | Some(Value::Null) => "left",
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(Error::parse("side", "expected \"left\" or \"right\"")),
    };
    match side {
        "left" => {
            let dims = [alg_dim, vdim, vdim];
            Ok(ModuleRep::Left(LeftModuleRep::new(
                phi,
                psi,
                optional_tensor(obj, "lambda", dims)?,
                optional_tensor(obj, "rho", dims)?,
            )?))
        }
        "right" => {
            let dims = [vdim, alg_dim, vdim];
            Ok(ModuleRep::Right(RightModuleRep::new(
                phi,
                psi,
                optional_tensor(obj, "wedge", dims)?,
                optional_tensor(obj, "delta", dims)?,
            )?))
        }
        other => Err(Error::parse("side", format!("unknown side {other:?}"))),
    }
}

pub fn module_to_json(m: &ModuleRep) -> Value {
    match m {
        ModuleRep::Left(l) => {
            let sparse = use_sparse(l.lambda_t.dims()[0].max(l.vdim), TensorEncoding::Auto);
            json!({
                "vdim": l.vdim,
                "side": "left",
                "phi": matrix_to_json(&l.phi),
                "psi": matrix_to_json(&l.psi),
                "lambda": tensor_to_json(&l.lambda_t, sparse),
                "rho": tensor_to_json(&l.rho_t, sparse),
            })
        }
        ModuleRep::Right(r) => {
            let sparse = use_sparse(r.wedge_t.dims()[1].max(r.vdim), TensorEncoding::Auto);
            json!({
                "vdim": r.vdim,
                "side": "right",
                "phi": matrix_to_json(&r.phi),
                "psi": matrix_to_json(&r.psi),
                "wedge": tensor_to_json(&r.wedge_t, sparse),
                "delta": tensor_to_json(&r.delta_t, sparse),
            })
        }
    }
}

pub fn parse_module_str(text: &str, alg_dim: usize) -> Result<ModuleRep> {
    module_from_json(&parse_json(text)?, alg_dim)
}

pub fn parse_module(path: impl AsRef<Path>, alg_dim: usize) -> Result<ModuleRep> {
    parse_module_str(&read_file(path.as_ref())?, alg_dim)
}

/// Vector of rational strings.
pub fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_bihom_poisson;
    use crate::constructions::{build_example_e1, build_sl2};
    use crate::linalg::{frac, int};
    use crate::modules::regular_module;

    #[test]
    fn point_algebra() {
        let a = parse_algebra_str(
            r#"{"dim":1,"basis":["u"],"alpha":[["1"]],"beta":[["1"]],
                "product":[[["1"]]],"bracket":[[["0"]]]}"#,
        )
        .unwrap();
        assert_eq!(a.product.get(0, 0, 0), &int(1));
        assert!(check_bihom_poisson(&a).passed);
    }

    #[test]
    fn round_trip_dense_and_sparse() {
        let a = build_example_e1(&frac(2, 1), &int(3)).unwrap();
        for enc in [TensorEncoding::Dense, TensorEncoding::Sparse, TensorEncoding::Auto] {
            let v = algebra_to_json(&a, enc);
            assert_eq!(algebra_from_json(&v).unwrap(), a);
        }
        let text = algebra_to_string(&a);
        assert_eq!(algebra_to_string(&parse_algebra_str(&text).unwrap()), text);
    }

    #[test]
    fn large_algebras_are_sparse() {
        let a = build_sl2(3).unwrap();
        let v = algebra_to_json(&a, TensorEncoding::Auto);
        assert!(is_sparse(v["product"].as_array().unwrap()));
        assert_eq!(algebra_from_json(&v).unwrap(), a);
    }

    #[test]
    fn rejects_ragged_and_noncommuting() {
        let ragged = r#"{"dim":2,"product":[[["1","0"],["0"]],[["0","0"],["0","0"]]]}"#;
        assert!(matches!(parse_algebra_str(ragged), Err(Error::Parse { .. })));
        let nc = r#"{"dim":2,"alpha":[["1","1"],["0","1"]],"beta":[["1","0"],["1","1"]]}"#;
        assert!(matches!(parse_algebra_str(nc), Err(Error::NonCommutingTwists(_))));
        let range = r#"{"dim":2,"product":[[0,0,2,"1"]]}"#;
        assert!(matches!(parse_algebra_str(range), Err(Error::Parse { .. })));
        let float = r#"{"dim":1,"product":[[[0.5]]]}"#;
        assert!(matches!(parse_algebra_str(float), Err(Error::Parse { .. })));
        match parse_algebra_str("{\n\"dim\": }") {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn module_round_trip() {
        let a = build_example_e1(&int(2), &int(3)).unwrap();
        let m = ModuleRep::Left(regular_module(&a).unwrap());
        let v = module_to_json(&m);
        assert_eq!(module_from_json(&v, 2).unwrap(), m);
    }

    #[test]
    fn lie_round_trip() {
        let l = LieStructure::sl2();
        assert_eq!(lie_from_json(&lie_to_json(&l)).unwrap(), l);
    }
}

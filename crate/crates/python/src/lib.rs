//! Python bindings for `jordan_core`.
//!
//! Partitions and deviation vectors cross the boundary as plain lists of
//! ints; records and census entries are small frozen classes.

use pyo3::create_exception;
use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use jordan_core::arith::{self, Prime};
use jordan_core::delta;
use jordan_core::oracle;
use jordan_core::partitions::{self, DeviationVector, Partition};
use jordan_core::survey::{self, TablePrime};
use jordan_core::{Engine, JordanError};

create_exception!(jordan_py, ResourceLimitError, PyRuntimeError);
create_exception!(jordan_py, InapplicableError, PyValueError);

fn to_py(err: JordanError) -> PyErr {
    let msg = err.to_string();
    match err {
        JordanError::NotPrime(_) | JordanError::InvalidArgument(_) => PyValueError::new_err(msg),
        JordanError::Overflow(_) => PyOverflowError::new_err(msg),
        JordanError::ResourceLimit { .. } => ResourceLimitError::new_err(msg),
        JordanError::Inapplicable(_) => InapplicableError::new_err(msg),
        JordanError::Internal(_) => PyRuntimeError::new_err(msg),
    }
}

fn prime(p: u64) -> PyResult<Prime> {
    Prime::new(p).map_err(to_py)
}

fn partition(parts: Vec<u64>) -> PyResult<Partition> {
    Partition::new(parts).map_err(to_py)
}

fn deviation_vector(entries: Vec<i64>) -> PyResult<DeviationVector> {
    DeviationVector::new(entries).map_err(to_py)
}

/// The Jordan partition of `J_r (x) J_s` with its deviation vector and
/// how it was obtained.
#[pyclass(frozen, get_all, module = "jordan_py")]
struct JordanRecord {
    r: u64,
    s: u64,
    p: u64,
    m: u32,
    #[pyo3(name = "lambda_")]
    lambda: Vec<u64>,
    epsilon: Vec<i64>,
    method: String,
    reductions: Vec<String>,
    json: String,
}

#[pymethods]
impl JordanRecord {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "JordanRecord(r={}, s={}, p={}, lambda={:?}, epsilon={:?}, method='{}')",
            self.r, self.s, self.p, self.lambda, self.epsilon, self.method
        )
    }
}

impl From<jordan_core::JordanRecord> for JordanRecord {
    fn from(rec: jordan_core::JordanRecord) -> Self {
        let json = serde_json::to_string(&rec).expect("record serializes");
        JordanRecord {
            r: rec.r,
            s: rec.s,
            p: rec.p,
            m: rec.m,
            lambda: rec.lambda.parts().to_vec(),
            epsilon: rec.epsilon.entries().to_vec(),
            method: rec.method.as_str().to_string(),
            reductions: rec.reductions.iter().map(ToString::to_string).collect(),
            json,
        }
    }
}

/// `lambda(r, s, p)`; `p = 0` is characteristic zero.
///
/// `method` is one of "auto", "oracle", "recurrence", "closed".
#[pyfunction]
#[pyo3(signature = (r, s, p, method = "auto", oracle_ceiling = oracle::DEFAULT_ORACLE_CEILING))]
fn jordan_partition(
    r: u64,
    s: u64,
    p: u64,
    method: &str,
    oracle_ceiling: u64,
) -> PyResult<JordanRecord> {
    let engine = match method {
        "auto" => Engine::Auto,
        "oracle" => Engine::Oracle {
            ceiling: oracle_ceiling,
        },
        "recurrence" => Engine::Recurrence,
        "closed" => Engine::Closed,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    jordan_core::jordan_partition_with(r, s, p, engine)
        .map(Into::into)
        .map_err(to_py)
}

/// Brute-force partition from ranks of `x + y` on `F_p[x,y]/(x^r, y^s)`.
#[pyfunction]
#[pyo3(signature = (r, s, p, ceiling = oracle::DEFAULT_ORACLE_CEILING))]
fn oracle_partition(r: u64, s: u64, p: u64, ceiling: u64) -> PyResult<Vec<u64>> {
    let lambda = oracle::oracle_partition_with_ceiling(r, s, prime(p)?, ceiling).map_err(to_py)?;
    Ok(lambda.into_inner())
}

#[pyfunction]
fn recurrence_partition(r: u64, s: u64, p: u64) -> PyResult<Vec<u64>> {
    let lambda = delta::recurrence_partition(r, s, prime(p)?).map_err(to_py)?;
    Ok(lambda.into_inner())
}

/// `[v_p(delta_0), ..., v_p(delta_r)]`.
#[pyfunction]
fn delta_valuations(r: u64, s: u64, p: u64) -> PyResult<Vec<u64>> {
    let seq = delta::delta_sequence(r, s, prime(p)?).map_err(to_py)?;
    Ok(seq.valuations().to_vec())
}

#[pyfunction]
fn deviation(lambda: Vec<u64>, s: u64) -> PyResult<Vec<i64>> {
    let eps = partitions::deviation(&partition(lambda)?, s).map_err(to_py)?;
    Ok(eps.into_inner())
}

#[pyfunction]
fn negative_reverse(epsilon: Vec<i64>) -> PyResult<Vec<i64>> {
    Ok(deviation_vector(epsilon)?.negative_reverse().into_inner())
}

#[pyfunction]
fn k_multiple(lambda: Vec<u64>, k: u64) -> PyResult<Vec<u64>> {
    Ok(partition(lambda)?
        .k_multiple(k)
        .map_err(to_py)?
        .into_inner())
}

#[pyfunction]
fn standard_partition(r: u64, s: u64) -> PyResult<Vec<u64>> {
    Ok(partitions::standard_partition(r, s)
        .map_err(to_py)?
        .into_inner())
}

#[pyfunction]
fn uniform_partition(r: u64, s: u64) -> PyResult<Vec<u64>> {
    Ok(partitions::uniform_partition(r, s)
        .map_err(to_py)?
        .into_inner())
}

/// One table entry: `(prime_label, modulus, residue, s, epsilon)`.
type TableEntry = (String, u64, u64, u64, Vec<i64>);

#[pyfunction]
fn deviation_table(r: u64) -> PyResult<Vec<TableEntry>> {
    let table = survey::deviation_table(r).map_err(to_py)?;
    Ok(table
        .rows
        .into_iter()
        .map(|row| {
            let label = match row.prime {
                TablePrime::Small(p) => p.to_string(),
                TablePrime::Generic(_) => "p'".to_string(),
            };
            (
                label,
                row.modulus,
                row.residue,
                row.s,
                row.epsilon.into_inner(),
            )
        })
        .collect())
}

#[pyclass(frozen, get_all, module = "jordan_py")]
struct Census {
    r: u64,
    prime_bound: u64,
    n_r: usize,
    bound: u64,
    /// `(epsilon, s, p)` witnesses, sorted by epsilon.
    vectors: Vec<(Vec<i64>, u64, u64)>,
}

#[pymethods]
impl Census {
    fn within_bound(&self) -> bool {
        self.n_r as u64 <= self.bound
    }

    fn __len__(&self) -> usize {
        self.n_r
    }

    fn __repr__(&self) -> String {
        format!(
            "Census(r={}, n_r={}, bound={})",
            self.r, self.n_r, self.bound
        )
    }
}

#[pyfunction]
#[pyo3(signature = (r, prime_bound = None))]
fn census(r: u64, prime_bound: Option<u64>) -> PyResult<Census> {
    let bound = prime_bound.unwrap_or_else(|| survey::default_prime_bound(r));
    let c = survey::enumerate_deviation_vectors(r, bound).map_err(to_py)?;
    Ok(Census {
        r,
        prime_bound: c.prime_bound,
        n_r: c.count(),
        bound: c.bound(),
        vectors: c
            .vectors()
            .map(|(eps, w)| (eps.entries().to_vec(), w.s, w.p.get()))
            .collect(),
    })
}

#[pyfunction]
fn is_prime(p: u64) -> bool {
    Prime::new(p).is_ok()
}

/// `(m, p^m)` with `p^m` the least power of `p` that is `>= r`.
#[pyfunction]
fn period(p: u64, r: u64) -> PyResult<(u32, u64)> {
    let pm = arith::period_for_rank(prime(p)?, r).map_err(to_py)?;
    Ok((pm.m, pm.q))
}

#[pyfunction]
fn binomial_mod_p(n: u64, k: i64, p: u64) -> PyResult<u64> {
    Ok(arith::binomial_mod_p(n, k, prime(p)?))
}

#[pyfunction]
fn legendre_valuation(n: u64, p: u64) -> PyResult<u64> {
    Ok(arith::legendre_valuation(n, prime(p)?))
}

#[pymodule]
fn jordan_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<JordanRecord>()?;
    m.add_class::<Census>()?;
    m.add(
        "ResourceLimitError",
        m.py().get_type::<ResourceLimitError>(),
    )?;
    m.add("InapplicableError", m.py().get_type::<InapplicableError>())?;
    m.add_function(wrap_pyfunction!(jordan_partition, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_partition, m)?)?;
    m.add_function(wrap_pyfunction!(recurrence_partition, m)?)?;
    m.add_function(wrap_pyfunction!(delta_valuations, m)?)?;
    m.add_function(wrap_pyfunction!(deviation, m)?)?;
    m.add_function(wrap_pyfunction!(negative_reverse, m)?)?;
    m.add_function(wrap_pyfunction!(k_multiple, m)?)?;
    m.add_function(wrap_pyfunction!(standard_partition, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_partition, m)?)?;
    m.add_function(wrap_pyfunction!(deviation_table, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(period, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_mod_p, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_valuation, m)?)?;
    Ok(())
}

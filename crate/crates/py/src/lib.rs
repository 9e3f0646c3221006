use std::collections::BTreeMap;

use clap::Parser;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use simpgd::cli::{run as run_cli, Cli};
use simpgd::fixtures::{corpus, read_site, CoefficientFile};
use simpgd::homotopy::weq_check;
use simpgd::kan::kan_check;
use simpgd::torsors::{classify as classify_torsors, ClassifyConfig, Kind};

fn err(e: simpgd::Error) -> PyErr {
  PyValueError::new_err(e.to_string())
}

fn coefficients(json: &str) -> PyResult<CoefficientFile> {
  CoefficientFile::from_json(json).map_err(err)
}

/// Level counts of W̄ for a coefficient file.
#[pyfunction]
#[pyo3(signature = (coefficients_json, trunc = 4))]
fn wbar_counts(coefficients_json: &str, trunc: usize) -> PyResult<Vec<usize>> {
  let h = coefficients(coefficients_json)?.simplicial(trunc).map_err(err)?;
  Ok(h.wbar().sset.counts().to_vec())
}

/// Whether j: dB → W̄ is a weak equivalence through π_maxdeg.
#[pyfunction]
#[pyo3(signature = (coefficients_json, trunc = 4, maxdeg = 2))]
fn j_weq(coefficients_json: &str, trunc: usize, maxdeg: usize) -> PyResult<bool> {
  let h = coefficients(coefficients_json)?.simplicial(trunc).map_err(err)?;
  let (db, w) = (h.db(), h.wbar());
  let j = h.j_map(&db, &w).map_err(err)?;
  Ok(weq_check(&db.sset, &w.sset, &j, maxdeg).map_err(err)?.is_pass())
}

/// Horn filling for dB and W̄ up to `maxdim`.
#[pyfunction]
#[pyo3(signature = (coefficients_json, trunc = 4, maxdim = 3))]
fn kan(coefficients_json: &str, trunc: usize, maxdim: usize) -> PyResult<(bool, bool)> {
  let h = coefficients(coefficients_json)?.simplicial(trunc).map_err(err)?;
  Ok((kan_check(&h.db().sset, maxdim).is_pass(), kan_check(&h.wbar().sset, maxdim).is_pass()))
}

/// The classification report as a JSON string.
#[pyfunction]
#[pyo3(signature = (site_json, coefficients_json, kind, trunc = 3))]
fn classify(site_json: &str, coefficients_json: &str, kind: &str, trunc: usize) -> PyResult<String> {
  let site = read_site(site_json).map_err(err)?;
  let kind: Kind = kind.parse().map_err(err)?;
  let coeffs = coefficients(coefficients_json)?.coefficients(&site, kind, trunc).map_err(err)?;
  let r = classify_torsors(&site, &coeffs, kind, &ClassifyConfig { trunc, ..Default::default() }).map_err(err)?;
  serde_json::to_string(&r).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// The built-in fixtures, by file name.
#[pyfunction]
fn fixtures() -> BTreeMap<&'static str, String> {
  corpus().into_iter().map(|f| (f.file, f.json)).collect()
}

/// Runs a command line in process; returns the exit code and the rendered report.
#[pyfunction]
fn run(args: Vec<String>) -> PyResult<(i32, String)> {
  let cli = match Cli::try_parse_from(std::iter::once("simpgd".to_string()).chain(args)) {
    Ok(c) => c,
    Err(e) => return Ok((2, e.to_string())),
  };
  Ok(match run_cli(&cli) {
    Ok(out) => (if out.all_pass() { 0 } else { 1 }, out.render(out.format)),
    Err(e) => (2, e.to_string()),
  })
}

#[pymodule]
fn pysimpgd(m: &Bound<'_, PyModule>) -> PyResult<()> {
  m.add_function(wrap_pyfunction!(wbar_counts, m)?)?;
  m.add_function(wrap_pyfunction!(j_weq, m)?)?;
  m.add_function(wrap_pyfunction!(kan, m)?)?;
  m.add_function(wrap_pyfunction!(classify, m)?)?;
  m.add_function(wrap_pyfunction!(fixtures, m)?)?;
  m.add_function(wrap_pyfunction!(run, m)?)?;
  Ok(())
}

//! Torsors for sheaves of groups and groupoids, 2-groupoids, simplicial groups and simplicial
//! groupoids, the translations between them, path components of torsor categories, and the
//! classification maps against homotopy classes of maps out of a Čech resolution.

use serde::Serialize;

use crate::error::Result;
use crate::homotopy::UnionFind;

pub mod action;
pub mod classify;
pub mod gset;
pub mod sgpd;
pub mod twogpd;

pub use action::*;
pub use classify::*;
pub use gset::*;
pub use sgpd::*;
pub use twogpd::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
  Coefficients,
  Action,
  Sheaf,
  NonEmpty,
  Free,
  Transitive,
  Pullback,
  Shape,
  Equivalence,
  Functoriality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TorsorVerdict {
  Pass,
  Fail { condition: Condition, object: Option<String>, detail: String },
}

impl TorsorVerdict {
  pub fn is_pass(&self) -> bool {
    matches!(self, TorsorVerdict::Pass)
  }

  pub fn fail(condition: Condition, object: Option<&str>, detail: impl Into<String>) -> Self {
    TorsorVerdict::Fail { condition, object: object.map(str::to_string), detail: detail.into() }
  }

  pub fn condition(&self) -> Option<Condition> {
    match self {
      TorsorVerdict::Pass => None,
      TorsorVerdict::Fail { condition, .. } => Some(*condition),
    }
  }
}

/// Path components of a list of torsors of one kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
  pub class: Vec<usize>,
  pub count: usize,
  /// Morphisms found while connecting candidates.
  pub morphisms: usize,
  /// Whether every morphism found was invertible.
  pub all_invertible: bool,
}

/// Union-find over `n` candidates. `morphism(i, j)` reports whether a morphism `i → j` exists
/// and, if so, whether it is invertible.
pub fn partition(n: usize, mut morphism: impl FnMut(usize, usize) -> Result<Option<bool>>) -> Result<Partition> {
  let mut uf = UnionFind::new(n);
  let (mut found, mut all_inv) = (0, true);
  for i in 0..n {
    for j in 0..n {
      if i == j || uf.find(i) == uf.find(j) {
        continue;
      }
      if let Some(inv) = morphism(i, j)? {
        found += 1;
        all_inv &= inv;
        uf.union(i, j);
      }
    }
  }
  let (class, count) = uf.classes();
  Ok(Partition { class, count, morphisms: found, all_invertible: all_inv })
}

//! Ordinal number maps `[m] -> [n]` and the poset join used by the
//! homotopy between the two projections of `holim dB(G ↓ -)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly monotone map `[m] -> [n]`, stored as its sequence of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrdinalMap {
  target: usize,
  values: Vec<usize>,
}

impl OrdinalMap {
  pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
    if values.is_empty() {
      return Err(Error::Invalid("ordinal map needs at least one value".into()));
    }
    if values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > target) {
      return Err(Error::Invalid(format!("{values:?} is not a monotone map into [{target}]")));
    }
    Ok(Self { target, values })
  }

  pub fn identity(n: usize) -> Self {
    Self { target: n, values: (0..=n).collect() }
  }

  /// Coface `δ_i : [n-1] -> [n]`, skipping `i`.
  pub fn coface(n: usize, i: usize) -> Self {
    assert!(n >= 1 && i <= n);
    Self { target: n, values: (0..n).map(|k| if k < i { k } else { k + 1 }).collect() }
  }

  /// Codegeneracy `σ_j : [n+1] -> [n]`, repeating `j`.
  pub fn codegeneracy(n: usize, j: usize) -> Self {
    assert!(j <= n);
    Self { target: n, values: (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect() }
  }

  /// The inclusion `[m] -> [n]` of the final segment `[n-m, n]`, i.e. `(d^0)^{n-m}`.
  pub fn final_segment(m: usize, n: usize) -> Self {
    assert!(m <= n);
    Self { target: n, values: (n - m..=n).collect() }
  }

  pub fn constant(source: usize, target: usize, value: usize) -> Self {
    assert!(value <= target);
    Self { target, values: vec![value; source + 1] }
  }

  pub fn source(&self) -> usize {
    self.values.len() - 1
  }

  pub fn target(&self) -> usize {
    self.target
  }

  pub fn values(&self) -> &[usize] {
    &self.values
  }

  pub fn apply(&self, i: usize) -> usize {
    self.values[i]
  }

  /// `self ∘ other`.
  pub fn compose(&self, other: &OrdinalMap) -> OrdinalMap {
    assert_eq!(other.target, self.source(), "ordinal maps are not composable");
    OrdinalMap { target: self.target, values: other.values.iter().map(|&v| self.values[v]).collect() }
  }

  /// The restriction `θ_i : [m-i] -> [n-θ(i)]`, `k ↦ θ(i+k) - θ(i)`, of `θ` to the
  /// final segment `[i, m]`.
  pub fn restrict_tail(&self, i: usize) -> OrdinalMap {
    let base = self.values[i];
    OrdinalMap { target: self.target - base, values: self.values[i..].iter().map(|&v| v - base).collect() }
  }

  pub fn is_injective(&self) -> bool {
    self.values.windows(2).all(|w| w[0] < w[1])
  }

  pub fn is_surjective(&self) -> bool {
    self.values[0] == 0
      && *self.values.last().unwrap() == self.target
      && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
  }

  /// Indices of `[n]` missed by the map, in increasing order.
  pub fn missed(&self) -> Vec<usize> {
    (0..=self.target).filter(|v| !self.values.contains(v)).collect()
  }

  /// Positions `j` where `θ(j) = θ(j+1)`, in increasing order.
  pub fn repeats(&self) -> Vec<usize> {
    (0..self.source()).filter(|&j| self.values[j] == self.values[j + 1]).collect()
  }

  /// Operator word for `θ^*`: first the faces `d_i` (largest missed index first), then the
  /// degeneracies `s_j` in increasing order of `j`.
  pub fn operator_word(&self) -> Vec<Operator> {
    let mut word: Vec<Operator> = self.missed().into_iter().rev().map(Operator::Face).collect();
    word.extend(self.repeats().into_iter().map(Operator::Degeneracy));
    word
  }

  /// All monotone maps `[m] -> [n]`.
  pub fn all(m: usize, n: usize) -> Vec<OrdinalMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<OrdinalMap>) {
      if cur.len() == m + 1 {
        out.push(OrdinalMap { target: n, values: cur.clone() });
        return;
      }
      for v in lo..=n {
        cur.push(v);
        rec(m, n, v, cur, out);
        cur.pop();
      }
    }
    rec(m, n, 0, &mut cur, &mut out);
    out
  }
}

impl fmt::Display for OrdinalMap {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "[{}]->[{}]{:?}", self.source(), self.target, self.values)
  }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
  Face(usize),
  Degeneracy(usize),
}

/// The join `[n] * [n]`: a chain with `2n+2` elements, the left copy `0..=n`
/// followed by the right copy `n+1..=2n+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PosetJoin {
  pub n: usize,
}

impl PosetJoin {
  pub fn new(n: usize) -> Self {
    Self { n }
  }

  pub fn len(&self) -> usize {
    2 * self.n + 2
  }

  pub fn is_empty(&self) -> bool {
    false
  }

  pub fn left(&self, i: usize) -> usize {
    i
  }

  pub fn right(&self, i: usize) -> usize {
    self.n + 1 + i
  }

  /// `θ * θ : [m]*[m] -> [n]*[n]`.
  pub fn join_map(theta: &OrdinalMap) -> OrdinalMap {
    let n = theta.target();
    let mut values: Vec<usize> = theta.values().to_vec();
    values.extend(theta.values().iter().map(|&v| n + 1 + v));
    OrdinalMap { target: 2 * n + 1, values }
  }

  /// `h_n : [n] × [1] -> [n]*[n]`, sending `(i,0)` to the left `i` and `(i,1)` to the right `i`.
  pub fn h(&self, i: usize, eps: usize) -> usize {
    assert!(i <= self.n && eps <= 1);
    if eps == 0 {
      self.left(i)
    } else {
      self.right(i)
    }
  }

  /// `h_n ∘ (1, ε)` for a 1-simplex-valued sequence `ε: [n] -> [1]`; returns a monotone map into the join.
  pub fn h_along(&self, eps: &OrdinalMap) -> OrdinalMap {
    assert_eq!(eps.target(), 1);
    assert_eq!(eps.source(), self.n);
    OrdinalMap { target: 2 * self.n + 1, values: (0..=self.n).map(|i| self.h(i, eps.apply(i))).collect() }
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn cofaces_and_codegeneracies() {
    assert_eq!(OrdinalMap::coface(2, 1).values(), &[0, 2]);
    assert_eq!(OrdinalMap::codegeneracy(1, 0).values(), &[0, 0, 1]);
    assert!(OrdinalMap::new(2, vec![1, 0]).is_err());
  }

  #[test]
  fn composition_is_associative() {
    for a in OrdinalMap::all(1, 2) {
      for b in OrdinalMap::all(2, 2) {
        for c in OrdinalMap::all(2, 1) {
          assert_eq!(a.compose(&c).compose(&b), a.compose(&c.compose(&b)));
        }
      }
    }
  }

  #[test]
  fn operator_word_reconstructs_the_map() {
    // Rebuild θ from its word acting on the identity sequence of [n].
    for m in 0..=3 {
      for n in 0..=3 {
        for theta in OrdinalMap::all(m, n) {
          let mut seq: Vec<usize> = (0..=n).collect();
          for op in theta.operator_word() {
            match op {
              Operator::Face(i) => {
                seq.remove(i);
              }
              Operator::Degeneracy(j) => {
                let v = seq[j];
                seq.insert(j, v);
              }
            }
          }
          assert_eq!(seq, theta.values(), "{theta}");
        }
      }
    }
  }

  #[test]
  fn restrict_tail_relation() {
    // (θτ)_i = θ_{τ(i)} ∘ τ_i on all composable triples with sizes <= 3.
    for k in 0..=3 {
      for m in 0..=3 {
        for n in 0..=3 {
          for tau in OrdinalMap::all(k, m) {
            for theta in OrdinalMap::all(m, n) {
              let comp = theta.compose(&tau);
              for i in 0..=k {
                let lhs = comp.restrict_tail(i);
                let rhs = theta.restrict_tail(tau.apply(i)).compose(&tau.restrict_tail(i));
                assert_eq!(lhs, rhs);
              }
            }
          }
        }
      }
    }
  }

  #[test]
  fn join_h0_and_h1() {
    let j0 = PosetJoin::new(0);
    assert_eq!(j0.len(), 2);
    assert_eq!((j0.h(0, 0), j0.h(0, 1)), (0, 1));
    let j1 = PosetJoin::new(1);
    let mut img: Vec<usize> = [(0, 0), (1, 0), (0, 1), (1, 1)].iter().map(|&(i, e)| j1.h(i, e)).collect();
    img.sort();
    assert_eq!(img, vec![0, 1, 2, 3]);
  }

  #[test]
  fn h_is_natural() {
    // (θ*θ) ∘ h_m = h_n ∘ (θ × 1) for all θ: [m] -> [n], m,n <= 3.
    for m in 0..=3 {
      for n in 0..=3 {
        for theta in OrdinalMap::all(m, n) {
          let jt = PosetJoin::join_map(&theta);
          for i in 0..=m {
            for e in 0..=1 {
              assert_eq!(jt.apply(PosetJoin::new(m).h(i, e)), PosetJoin::new(n).h(theta.apply(i), e));
            }
          }
        }
      }
    }
  }
}

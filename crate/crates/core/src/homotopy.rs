//! Path components, simplicial homotopy groups of Kan complexes, and weak equivalences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kan::{fill, kan_check, KanVerdict};
use crate::sset::{SSetMap, TruncSSet};

/// Plain union-find over `0..n`.
#[derive(Clone, Debug)]
pub struct UnionFind {
  parent: Vec<usize>,
}

impl UnionFind {
  pub fn new(n: usize) -> Self {
    Self { parent: (0..n).collect() }
  }

  pub fn find(&mut self, x: usize) -> usize {
    let mut r = x;
    while self.parent[r] != r {
      r = self.parent[r];
    }
    let mut c = x;
    while self.parent[c] != r {
      let next = self.parent[c];
      self.parent[c] = r;
      c = next;
    }
    r
  }

  pub fn union(&mut self, a: usize, b: usize) {
    let (ra, rb) = (self.find(a), self.find(b));
    if ra != rb {
      // Keep the smaller id as root so labels are canonical.
      let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
      self.parent[hi] = lo;
    }
  }

  /// Class index of every element, classes numbered by smallest member.
  pub fn classes(&mut self) -> (Vec<usize>, usize) {
    let n = self.parent.len();
    let mut label = vec![usize::MAX; n];
    let mut out = vec![0; n];
    let mut next = 0;
    for x in 0..n {
      let r = self.find(x);
      if label[r] == usize::MAX {
        label[r] = next;
        next += 1;
      }
      out[x] = label[r];
    }
    (out, next)
  }
}

/// Path components: the component index of each vertex and the number of components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
  pub of_vertex: Vec<usize>,
  pub count: usize,
}

impl Components {
  pub fn representatives(&self) -> Vec<usize> {
    (0..self.count).map(|c| self.of_vertex.iter().position(|&d| d == c).unwrap()).collect()
  }
}

pub fn pi0(x: &TruncSSet) -> Components {
  let mut uf = UnionFind::new(x.count(0));
  if x.trunc() >= 1 {
    for e in 0..x.count(1) {
      uf.union(x.face(1, 0, e), x.face(1, 1, e));
    }
  }
  let (of_vertex, count) = uf.classes();
  Components { of_vertex, count }
}

/// A finite group given by a multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
  pub mul: Vec<Vec<usize>>,
  pub identity: usize,
}

impl GroupTable {
  pub fn order(&self) -> usize {
    self.mul.len()
  }

  pub fn cyclic(n: usize) -> Self {
    Self { mul: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(), identity: 0 }
  }

  pub fn inverse(&self, a: usize) -> Option<usize> {
    (0..self.order()).find(|&b| self.mul[a][b] == self.identity)
  }

  /// Checks associativity, the identity, and inverses.
  pub fn is_group(&self) -> bool {
    let n = self.order();
    let e = self.identity;
    if e >= n || self.mul.iter().any(|row| row.len() != n || row.iter().any(|&c| c >= n)) {
      return false;
    }
    let assoc =
      (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul[self.mul[a][b]][c] == self.mul[a][self.mul[b][c]])));
    let unit = (0..n).all(|a| self.mul[e][a] == a && self.mul[a][e] == a);
    let inv = (0..n).all(|a| (0..n).any(|b| self.mul[a][b] == e && self.mul[b][a] == e));
    assoc && unit && inv
  }

  pub fn is_abelian(&self) -> bool {
    let n = self.order();
    (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
  }
}

/// `π_n(X, v)` for `n >= 1`: the group and, for each `n`-sphere at `v`, its class.
#[derive(Clone, Debug, Serialize)]
pub struct HomotopyGroup {
  pub n: usize,
  pub basepoint: usize,
  pub table: GroupTable,
  /// `(simplex, class)` for every `n`-simplex with all faces at the basepoint.
  pub spheres: Vec<(usize, usize)>,
  pub representatives: Vec<usize>,
}

impl HomotopyGroup {
  pub fn class_of(&self, s: usize) -> Option<usize> {
    self.spheres.binary_search_by_key(&s, |p| p.0).ok().map(|k| self.spheres[k].1)
  }
}

/// Computes `π_n(X, v)`. Kan-ness is checked up to dimension `n + 1`.
pub fn pi_n(x: &TruncSSet, v: usize, n: usize) -> Result<HomotopyGroup> {
  if let KanVerdict::Fail { horn, .. } = kan_check(x, n + 1) {
    return Err(Error::NotKan(horn.to_string()));
  }
  pi_n_kan(x, v, n)
}

/// `π_n` without re-running the Kan check; the caller vouches for the Kan condition up to `n + 1`.
pub fn pi_n_kan(x: &TruncSSet, v: usize, n: usize) -> Result<HomotopyGroup> {
  if n == 0 {
    return Err(Error::Invalid("use pi0 for dimension 0".into()));
  }
  if n + 1 > x.trunc() {
    return Err(Error::Truncation(n + 1, x.trunc()));
  }
  let star_low = x.degenerate_vertex(v, n - 1);
  let star = x.degenerate_vertex(v, n);
  let spheres: Vec<usize> = (0..x.count(n)).filter(|&s| (0..=n).all(|i| x.face(n, i, s) == star_low)).collect();
  let pos = |s: usize| spheres.binary_search(&s).ok();
  let mut uf = UnionFind::new(spheres.len());
  for z in 0..x.count(n + 1) {
    if (0..n).all(|i| x.face(n + 1, i, z) == star) {
      if let (Some(a), Some(b)) = (pos(x.face(n + 1, n, z)), pos(x.face(n + 1, n + 1, z))) {
        uf.union(a, b);
      }
    }
  }
  let (class, count) = uf.classes();
  let mut representatives = vec![usize::MAX; count];
  for (k, &c) in class.iter().enumerate() {
    if representatives[c] == usize::MAX {
      representatives[c] = spheres[k];
    }
  }
  let class_of = |s: usize| pos(s).map(|k| class[k]);
  let mut mul = vec![vec![0; count]; count];
  for a in 0..count {
    for b in 0..count {
      let mut horn = vec![Some(star); n + 2];
      horn[n - 1] = Some(representatives[a]);
      horn[n] = None;
      horn[n + 1] = Some(representatives[b]);
      let z = fill(x, n + 1, &horn)
        .ok_or_else(|| Error::NotKan(format!("product horn at basepoint {v} in dimension {}", n + 1)))?;
      mul[a][b] = class_of(x.face(n + 1, n, z)).ok_or_else(|| Error::NotKan("product is not a sphere".into()))?;
    }
  }
  let identity = class_of(star).expect("the degenerate sphere is a sphere");
  Ok(HomotopyGroup {
    n,
    basepoint: v,
    table: GroupTable { mul, identity },
    spheres: spheres.iter().enumerate().map(|(k, &s)| (s, class[k])).collect(),
    representatives,
  })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum WeqVerdict {
  Pass { maxdeg: usize, trunc: usize },
  Fail { degree: usize, basepoint: Option<usize>, reason: String },
  NotKan { side: String, horn: String },
}

impl WeqVerdict {
  pub fn is_pass(&self) -> bool {
    matches!(self, WeqVerdict::Pass { .. })
  }
}

/// Decides whether `f: X → Y` induces bijections on `π_0` and on `π_n` at every vertex of `X`
/// for `1 <= n <= maxdeg`. Both sides must be Kan up to `maxdeg + 1`.
pub fn weq_check(x: &TruncSSet, y: &TruncSSet, f: &SSetMap, maxdeg: usize) -> Result<WeqVerdict> {
  if maxdeg + 2 > x.trunc() || x.trunc() != y.trunc() {
    return Err(Error::Truncation(maxdeg + 2, x.trunc()));
  }
  for (side, s) in [("source", x), ("target", y)] {
    if let KanVerdict::Fail { horn, .. } = kan_check(s, maxdeg + 1) {
      return Ok(WeqVerdict::NotKan { side: side.into(), horn: horn.to_string() });
    }
  }
  Ok(weq_check_kan(x, y, f, maxdeg))
}

/// [`weq_check`] for inputs already known to be Kan.
pub fn weq_check_kan(x: &TruncSSet, y: &TruncSSet, f: &SSetMap, maxdeg: usize) -> WeqVerdict {
  let (cx, cy) = (pi0(x), pi0(y));
  let mut image = vec![None; cx.count];
  for v in 0..x.count(0) {
    let c = cy.of_vertex[f.apply(0, v)];
    match image[cx.of_vertex[v]] {
      None => image[cx.of_vertex[v]] = Some(c),
      Some(d) if d != c => unreachable!("maps preserve components"),
      _ => {}
    }
  }
  let mut hit = vec![false; cy.count];
  for c in image.iter().flatten() {
    if std::mem::replace(&mut hit[*c], true) {
      return WeqVerdict::Fail { degree: 0, basepoint: None, reason: "two components map to one".into() };
    }
  }
  if let Some(c) = hit.iter().position(|h| !h) {
    return WeqVerdict::Fail { degree: 0, basepoint: None, reason: format!("target component {c} is not hit") };
  }
  for n in 1..=maxdeg {
    for v in 0..x.count(0) {
      let gx = pi_n_kan(x, v, n);
      let gy = pi_n_kan(y, f.apply(0, v), n);
      let (gx, gy) = match (gx, gy) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return WeqVerdict::Fail { degree: n, basepoint: Some(v), reason: e.to_string() },
      };
      if gx.table.order() != gy.table.order() {
        return WeqVerdict::Fail {
          degree: n,
          basepoint: Some(v),
          reason: format!("orders differ: {} vs {}", gx.table.order(), gy.table.order()),
        };
      }
      let mut seen = vec![false; gy.table.order()];
      for &r in &gx.representatives {
        let c = gy.class_of(f.apply(n, r)).expect("maps send spheres to spheres");
        if std::mem::replace(&mut seen[c], true) {
          return WeqVerdict::Fail { degree: n, basepoint: Some(v), reason: "induced map is not injective".into() };
        }
      }
    }
  }
  WeqVerdict::Pass { maxdeg, trunc: x.trunc() }
}

/// `X → *` is a weak equivalence.
pub fn contractible(x: &TruncSSet, maxdeg: usize) -> Result<WeqVerdict> {
  let pt = TruncSSet::point(x.trunc());
  weq_check(x, &pt, &SSetMap::constant(x, &pt, 0), maxdeg)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::sset::standard_simplex;

  #[test]
  fn components() {
    assert_eq!(pi0(&TruncSSet::standard(3, 3)).count, 1);
    assert_eq!(pi0(&TruncSSet::discrete(2, 3)).count, 2);
  }

  #[test]
  fn point_has_trivial_groups() {
    let pt = TruncSSet::point(4);
    for n in 1..=3 {
      assert_eq!(pi_n(&pt, 0, n).unwrap().table.order(), 1);
    }
  }

  #[test]
  fn non_kan_input_is_rejected() {
    let d1 = standard_simplex(1, 3).sset;
    assert!(matches!(pi_n(&d1, 0, 1), Err(Error::NotKan(_))));
  }

  #[test]
  fn point_into_two_points_fails_at_pi0() {
    let two = TruncSSet::discrete(2, 3);
    let pt = TruncSSet::point(3);
    let f = SSetMap::constant(&pt, &two, 0);
    assert!(matches!(weq_check(&pt, &two, &f, 1).unwrap(), WeqVerdict::Fail { degree: 0, .. }));
    assert!(weq_check(&two, &two, &SSetMap::identity(&two), 1).unwrap().is_pass());
  }

  #[test]
  fn cyclic_groups_are_groups() {
    assert!(GroupTable::cyclic(3).is_group());
    let bad = GroupTable { mul: vec![vec![0, 1], vec![1, 1]], identity: 0 };
    assert!(!bad.is_group());
  }
}

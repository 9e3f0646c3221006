//! Finite groupoids, their nerves, and strict 2-groupoids.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::GroupTable;
use crate::ordinal::OrdinalMap;
use crate::sset::Labelled;

/// A finite groupoid with objects `0..objects` and morphisms `0..src.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinGroupoid {
  pub objects: usize,
  pub src: Vec<usize>,
  pub dst: Vec<usize>,
  pub identity: Vec<usize>,
  /// `(g, f, g ∘ f)` for every pair with `dst(f) = src(g)`.
  pub compose: Vec<(usize, usize, usize)>,
  pub inverse: Vec<usize>,
  #[serde(skip)]
  table: HashMap<(usize, usize), usize>,
}

impl FinGroupoid {
  pub fn new(
    objects: usize,
    src: Vec<usize>,
    dst: Vec<usize>,
    identity: Vec<usize>,
    compose: Vec<(usize, usize, usize)>,
    inverse: Vec<usize>,
  ) -> Result<Self> {
    let mut g = Self { objects, src, dst, identity, compose, inverse, table: HashMap::new() };
    g.reindex();
    g.validate()?;
    Ok(g)
  }

  fn reindex(&mut self) {
    self.compose.sort();
    self.compose.dedup();
    self.table = self.compose.iter().map(|&(g, f, h)| ((g, f), h)).collect();
  }

  /// Builds from an explicit composition function on composable pairs.
  pub fn from_fn(
    objects: usize,
    src: Vec<usize>,
    dst: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    comp: impl Fn(usize, usize) -> usize,
  ) -> Result<Self> {
    let m = src.len();
    let mut compose = Vec::new();
    for g in 0..m {
      for f in 0..m {
        if dst[f] == src[g] {
          compose.push((g, f, comp(g, f)));
        }
      }
    }
    Self::new(objects, src, dst, identity, compose, inverse)
  }

  pub fn from_group(t: &GroupTable) -> Self {
    let n = t.order();
    let inverse = (0..n).map(|a| t.inverse(a).expect("group")).collect();
    Self::from_fn(1, vec![0; n], vec![0; n], vec![t.identity], inverse, |g, f| t.mul[g][f])
      .expect("group table is a groupoid")
  }

  pub fn cyclic(n: usize) -> Self {
    Self::from_group(&GroupTable::cyclic(n))
  }

  /// Only identities.
  pub fn discrete(k: usize) -> Self {
    Self::from_fn(k, (0..k).collect(), (0..k).collect(), (0..k).collect(), (0..k).collect(), |g, _| g)
      .expect("discrete")
  }

  /// Exactly one morphism between any two objects; morphism `a * k + b` goes `a → b`.
  pub fn codiscrete(k: usize) -> Self {
    let src = (0..k * k).map(|m| m / k).collect();
    let dst = (0..k * k).map(|m| m % k).collect();
    let inverse = (0..k * k).map(|m| (m % k) * k + m / k).collect();
    Self::from_fn(k, src, dst, (0..k).map(|a| a * k + a).collect(), inverse, |g, f| (f / k) * k + g % k)
      .expect("codiscrete")
  }

  pub fn morphisms(&self) -> usize {
    self.src.len()
  }

  pub fn comp(&self, g: usize, f: usize) -> usize {
    *self.table.get(&(g, f)).unwrap_or_else(|| panic!("morphisms {g} and {f} are not composable"))
  }

  pub fn try_comp(&self, g: usize, f: usize) -> Option<usize> {
    self.table.get(&(g, f)).copied()
  }

  pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
    (0..self.morphisms()).filter(|&m| self.src[m] == a && self.dst[m] == b).collect()
  }

  pub fn validate(&self) -> Result<()> {
    let m = self.morphisms();
    let bad = |s: String| Err(Error::Invalid(s));
    if self.dst.len() != m || self.inverse.len() != m || self.identity.len() != self.objects {
      return bad("groupoid tables have inconsistent sizes".into());
    }
    if self.src.iter().chain(&self.dst).any(|&o| o >= self.objects) || self.inverse.iter().any(|&f| f >= m) {
      return bad("groupoid table entry out of range".into());
    }
    for (a, &e) in self.identity.iter().enumerate() {
      if e >= m || self.src[e] != a || self.dst[e] != a {
        return bad(format!("identity of object {a} is not an endomorphism of it"));
      }
    }
    for g in 0..m {
      for f in 0..m {
        match (self.dst[f] == self.src[g], self.table.get(&(g, f))) {
          (true, None) => return bad(format!("composite {g} ∘ {f} is missing")),
          (false, Some(_)) => return bad(format!("composite {g} ∘ {f} of non-composable morphisms")),
          (true, Some(&h)) if h >= m || self.src[h] != self.src[f] || self.dst[h] != self.dst[g] => {
            return bad(format!("composite {g} ∘ {f} has the wrong endpoints"))
          }
          _ => {}
        }
      }
    }
    for f in 0..m {
      if self.comp(self.identity[self.dst[f]], f) != f || self.comp(f, self.identity[self.src[f]]) != f {
        return bad(format!("identity law fails at {f}"));
      }
      let i = self.inverse[f];
      if self.try_comp(i, f) != Some(self.identity[self.src[f]])
        || self.try_comp(f, i) != Some(self.identity[self.dst[f]])
      {
        return bad(format!("inverse law fails at {f}"));
      }
    }
    for h in 0..m {
      for g in self.hom_from(self.dst[h]) {
        for f in self.hom_from(self.dst[g]) {
          if self.comp(f, self.comp(g, h)) != self.comp(self.comp(f, g), h) {
            return bad(format!("associativity fails at ({f}, {g}, {h})"));
          }
        }
      }
    }
    Ok(())
  }

  fn hom_from(&self, a: usize) -> Vec<usize> {
    (0..self.morphisms()).filter(|&m| self.src[m] == a).collect()
  }

  /// Composite of the forward string `mors[a..b]`, identity on `objs[a]` when empty.
  pub fn composite(&self, s: &NerveSimplex, a: usize, b: usize) -> usize {
    let mut acc = self.identity[s.objs[a]];
    for k in a..b {
      acc = self.comp(s.mors[k], acc);
    }
    acc
  }

  /// All forward strings `objs[0] → objs[1] → ⋯` of length `n`.
  pub fn strings(&self, n: usize) -> Vec<NerveSimplex> {
    let mut out = Vec::new();
    for a in 0..self.objects {
      let mut s = NerveSimplex { objs: vec![a], mors: Vec::new() };
      self.extend_strings(n, &mut s, &mut out);
    }
    out
  }

  fn extend_strings(&self, n: usize, s: &mut NerveSimplex, out: &mut Vec<NerveSimplex>) {
    if s.mors.len() == n {
      out.push(s.clone());
      return;
    }
    let last = *s.objs.last().unwrap();
    for f in self.hom_from(last) {
      s.mors.push(f);
      s.objs.push(self.dst[f]);
      self.extend_strings(n, s, out);
      s.mors.pop();
      s.objs.pop();
    }
  }

  /// `θ^*` on forward strings.
  pub fn act(&self, theta: &OrdinalMap, s: &NerveSimplex) -> NerveSimplex {
    let m = theta.source();
    NerveSimplex {
      objs: (0..=m).map(|k| s.objs[theta.apply(k)]).collect(),
      mors: (0..m).map(|k| self.composite(s, theta.apply(k), theta.apply(k + 1))).collect(),
    }
  }

  pub fn nerve(&self, trunc: usize) -> Labelled<NerveSimplex> {
    let levels = (0..=trunc).map(|n| self.strings(n)).collect();
    Labelled::build_with_action(trunc, levels, |t, s| self.act(t, s)).expect("nerve is simplicial")
  }

  /// Disjoint union; objects and morphisms of later summands are shifted.
  pub fn disjoint_union(parts: &[&FinGroupoid]) -> Self {
    let (mut objects, mut src, mut dst, mut identity, mut inverse, mut compose) =
      (0, vec![], vec![], vec![], vec![], vec![]);
    for p in parts {
      let base = src.len();
      src.extend(p.src.iter().map(|&o| o + objects));
      dst.extend(p.dst.iter().map(|&o| o + objects));
      identity.extend(p.identity.iter().map(|&e| e + base));
      inverse.extend(p.inverse.iter().map(|&f| f + base));
      compose.extend(p.compose.iter().map(|&(g, f, h)| (g + base, f + base, h + base)));
      objects += p.objects;
    }
    Self::new(objects, src, dst, identity, compose, inverse).expect("disjoint union")
  }

  /// Equivalence classes of objects under isomorphism.
  pub fn components(&self) -> (Vec<usize>, usize) {
    let mut uf = crate::homotopy::UnionFind::new(self.objects);
    for f in 0..self.morphisms() {
      uf.union(self.src[f], self.dst[f]);
    }
    uf.classes()
  }

  pub fn to_json(&self) -> String {
    serde_json::to_string(self).expect("groupoid serializes")
  }

  pub fn from_json(s: &str) -> Result<Self> {
    let mut g: FinGroupoid = serde_json::from_str(s)?;
    g.reindex();
    g.validate()?;
    Ok(g)
  }
}

/// A forward string: `mors[k]: objs[k] → objs[k+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NerveSimplex {
  pub objs: Vec<usize>,
  pub mors: Vec<usize>,
}

/// A functor between finite groupoids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidFunctor {
  pub on_objects: Vec<usize>,
  pub on_morphisms: Vec<usize>,
}

impl GroupoidFunctor {
  pub fn check(&self, a: &FinGroupoid, b: &FinGroupoid) -> Result<()> {
    if self.on_objects.len() != a.objects || self.on_morphisms.len() != a.morphisms() {
      return Err(Error::Invalid("functor tables have the wrong size".into()));
    }
    for f in 0..a.morphisms() {
      let h = self.on_morphisms[f];
      if b.src[h] != self.on_objects[a.src[f]] || b.dst[h] != self.on_objects[a.dst[f]] {
        return Err(Error::Invalid(format!("functor breaks endpoints of {f}")));
      }
    }
    for o in 0..a.objects {
      if self.on_morphisms[a.identity[o]] != b.identity[self.on_objects[o]] {
        return Err(Error::Invalid(format!("functor breaks identity at {o}")));
      }
    }
    for &(g, f, h) in &a.compose {
      if b.comp(self.on_morphisms[g], self.on_morphisms[f]) != self.on_morphisms[h] {
        return Err(Error::Invalid(format!("functor breaks composite {g} ∘ {f}")));
      }
    }
    Ok(())
  }
}

/// A strict 2-groupoid. 1-cells have strict inverses; 2-cells compose vertically and horizontally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fin2Groupoid {
  pub objects: usize,
  /// 1-cells as a groupoid on the objects.
  pub cells1: FinGroupoid,
  /// 2-cells as a groupoid on the 1-cells (vertical composition).
  pub cells2: FinGroupoid,
  /// Horizontal composite `β * α` for `α: f ⇒ f'`, `β: g ⇒ g'` with `g ∘ f` defined; keyed `(β, α)`.
  pub hcomp: Vec<(usize, usize, usize)>,
  #[serde(skip)]
  htable: HashMap<(usize, usize), usize>,
}

impl Fin2Groupoid {
  pub fn new(cells1: FinGroupoid, cells2: FinGroupoid, hcomp: Vec<(usize, usize, usize)>) -> Result<Self> {
    let mut g = Self { objects: cells1.objects, cells1, cells2, hcomp, htable: HashMap::new() };
    g.reindex();
    g.validate()?;
    Ok(g)
  }

  fn reindex(&mut self) {
    self.hcomp.sort();
    self.htable = self.hcomp.iter().map(|&(b, a, c)| ((b, a), c)).collect();
  }

  /// A 1-groupoid with only identity 2-cells.
  pub fn from_groupoid(g: &FinGroupoid) -> Self {
    let m = g.morphisms();
    let cells2 = FinGroupoid::discrete(m);
    let hcomp = g.compose.iter().map(|&(b, a, c)| (b, a, c)).collect();
    Self::new(g.clone(), cells2, hcomp).expect("1-groupoid as 2-groupoid")
  }

  /// One object, one 1-cell, and the given group of 2-cells.
  pub fn double_suspension(t: &GroupTable) -> Self {
    let cells1 = FinGroupoid::from_group(&GroupTable::cyclic(1));
    let cells2 = FinGroupoid::from_group(t);
    let n = t.order();
    let hcomp = (0..n).flat_map(|b| (0..n).map(move |a| (b, a, t.mul[b][a]))).collect();
    Self::new(cells1, cells2, hcomp).expect("abelian 2-cells").checked_abelian(t)
  }

  fn checked_abelian(self, t: &GroupTable) -> Self {
    assert!(t.is_abelian(), "interchange forces abelian 2-cells on a single 1-cell");
    self
  }

  pub fn hcomp2(&self, b: usize, a: usize) -> usize {
    *self.htable.get(&(b, a)).unwrap_or_else(|| panic!("2-cells {b} and {a} are not horizontally composable"))
  }

  /// 2-cells are morphisms of `cells2`; their source and target 1-cells are its objects.
  pub fn src2(&self, a: usize) -> usize {
    self.cells2.src[a]
  }

  pub fn dst2(&self, a: usize) -> usize {
    self.cells2.dst[a]
  }

  /// Horizontal inverse of a 2-cell `α: f ⇒ f'`, a 2-cell `f^{-1} ⇒ f'^{-1}`.
  pub fn hinv2(&self, a: usize) -> usize {
    let (f, f2) = (self.src2(a), self.dst2(a));
    let (fi, f2i) = (self.cells1.inverse[f], self.cells1.inverse[f2]);
    let id_src = self.cells2.identity[self.cells1.identity[self.cells1.src[f]]];
    (0..self.cells2.morphisms())
      .find(|&b| self.src2(b) == fi && self.dst2(b) == f2i && self.htable.get(&(b, a)) == Some(&id_src))
      .expect("2-cells are horizontally invertible")
  }

  pub fn validate(&self) -> Result<()> {
    let (c1, c2) = (&self.cells1, &self.cells2);
    if c2.objects != c1.morphisms() {
      return Err(Error::Invalid("2-cells must live over the 1-cells".into()));
    }
    if (0..c2.morphisms()).any(|a| {
      let (f, g) = (c2.src[a], c2.dst[a]);
      c1.src[f] != c1.src[g] || c1.dst[f] != c1.dst[g]
    }) {
      return Err(Error::Invalid("a 2-cell joins 1-cells with different endpoints".into()));
    }
    for b in 0..c2.morphisms() {
      for a in 0..c2.morphisms() {
        let composable = c1.dst[self.src2(a)] == c1.src[self.src2(b)];
        match (composable, self.htable.get(&(b, a))) {
          (true, None) => return Err(Error::Invalid(format!("horizontal composite {b} * {a} missing"))),
          (false, Some(_)) => {
            return Err(Error::Invalid(format!("horizontal composite {b} * {a} of non-composable cells")))
          }
          (true, Some(&c)) => {
            if self.src2(c) != c1.comp(self.src2(b), self.src2(a))
              || self.dst2(c) != c1.comp(self.dst2(b), self.dst2(a))
            {
              return Err(Error::Invalid(format!("horizontal composite {b} * {a} has the wrong boundary")));
            }
          }
          _ => {}
        }
      }
    }
    // identity 2-cells compose horizontally to identities
    for &(g, f, h) in &c1.compose {
      if self.hcomp2(c2.identity[g], c2.identity[f]) != c2.identity[h] {
        return Err(Error::Invalid(format!("horizontal composite of identities at {g} ∘ {f}")));
      }
    }
    // interchange: (β' · β) * (α' · α) = (β' * α') · (β * α)
    for a in 0..c2.morphisms() {
      for a2 in (0..c2.morphisms()).filter(|&x| self.src2(x) == self.dst2(a)) {
        for b in (0..c2.morphisms()).filter(|&x| c1.src[self.src2(x)] == c1.dst[self.src2(a)]) {
          for b2 in (0..c2.morphisms()).filter(|&x| self.src2(x) == self.dst2(b)) {
            let lhs = self.hcomp2(c2.comp(b2, b), c2.comp(a2, a));
            let rhs = c2.comp(self.hcomp2(b2, a2), self.hcomp2(b, a));
            if lhs != rhs {
              return Err(Error::Invalid(format!("interchange fails at ({b2}, {b}, {a2}, {a})")));
            }
          }
        }
      }
    }
    // associativity of horizontal composition
    for a in 0..c2.morphisms() {
      for b in (0..c2.morphisms()).filter(|&x| c1.src[self.src2(x)] == c1.dst[self.src2(a)]) {
        for c in (0..c2.morphisms()).filter(|&x| c1.src[self.src2(x)] == c1.dst[self.src2(b)]) {
          if self.hcomp2(c, self.hcomp2(b, a)) != self.hcomp2(self.hcomp2(c, b), a) {
            return Err(Error::Invalid(format!("horizontal associativity fails at ({c}, {b}, {a})")));
          }
        }
      }
    }
    for a in 0..c2.morphisms() {
      let unit_l = c2.identity[c1.identity[c1.dst[self.src2(a)]]];
      let unit_r = c2.identity[c1.identity[c1.src[self.src2(a)]]];
      if self.hcomp2(unit_l, a) != a || self.hcomp2(a, unit_r) != a {
        return Err(Error::Invalid(format!("horizontal unit law fails at {a}")));
      }
    }
    Ok(())
  }

  /// The hom-groupoid `G(x, y)`: 1-cells `x → y` and the 2-cells between them, reindexed.
  pub fn hom_groupoid(&self, x: usize, y: usize) -> (FinGroupoid, Vec<usize>, Vec<usize>) {
    let ones = self.cells1.hom(x, y);
    let twos: Vec<usize> = (0..self.cells2.morphisms()).filter(|&a| ones.contains(&self.src2(a))).collect();
    let o = |f: usize| ones.iter().position(|&g| g == f).unwrap();
    let t = |a: usize| twos.iter().position(|&b| b == a).unwrap();
    let g = FinGroupoid::from_fn(
      ones.len(),
      twos.iter().map(|&a| o(self.src2(a))).collect(),
      twos.iter().map(|&a| o(self.dst2(a))).collect(),
      ones.iter().map(|&f| t(self.cells2.identity[f])).collect(),
      twos.iter().map(|&a| t(self.cells2.inverse[a])).collect(),
      |b, a| t(self.cells2.comp(twos[b], twos[a])),
    )
    .expect("hom groupoid");
    (g, ones, twos)
  }

  pub fn to_json(&self) -> String {
    serde_json::to_string(self).expect("2-groupoid serializes")
  }

  pub fn from_json(s: &str) -> Result<Self> {
    let raw: Fin2Groupoid = serde_json::from_str(s)?;
    let c1 = FinGroupoid::from_json(&raw.cells1.to_json())?;
    let c2 = FinGroupoid::from_json(&raw.cells2.to_json())?;
    Self::new(c1, c2, raw.hcomp)
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::kan::kan_check;

  /// Number of composable strings of length n, counted by a path recursion on hom-set sizes.
  fn string_count(g: &FinGroupoid, n: usize) -> usize {
    let mut ways = vec![1usize; g.objects];
    for _ in 0..n {
      let mut next = vec![0; g.objects];
      for f in 0..g.morphisms() {
        next[g.dst[f]] += ways[g.src[f]];
      }
      ways = next;
    }
    ways.iter().sum()
  }

  #[test]
  fn nerve_of_z2_counts() {
    let g = FinGroupoid::cyclic(2);
    let n = g.nerve(4);
    assert_eq!(n.sset.counts(), &[1, 2, 4, 8, 16]);
    assert!(n.sset.validate().is_pass());
    assert!(kan_check(&n.sset, 3).is_pass());
  }

  #[test]
  fn nerve_counts_match_path_recursion() {
    let g = FinGroupoid::disjoint_union(&[&FinGroupoid::codiscrete(2), &FinGroupoid::cyclic(3)]);
    let n = g.nerve(3);
    for k in 0..=3 {
      assert_eq!(n.sset.count(k), string_count(&g, k));
    }
    assert!(n.sset.validate().is_pass());
  }

  #[test]
  fn codiscrete_is_a_groupoid() {
    let g = FinGroupoid::codiscrete(3);
    assert_eq!(g.morphisms(), 9);
    assert_eq!(g.components().1, 1);
  }

  #[test]
  fn bad_associativity_is_caught() {
    // Z/3 with a corrupted product 1·1.
    let t = GroupTable::cyclic(3);
    let r = FinGroupoid::from_fn(1, vec![0; 3], vec![0; 3], vec![0], vec![0, 2, 1], |g, f| {
      if (g, f) == (1, 1) {
        0
      } else {
        t.mul[g][f]
      }
    });
    assert!(r.is_err());
  }

  #[test]
  fn two_groupoid_fixtures_validate() {
    let b2 = Fin2Groupoid::double_suspension(&GroupTable::cyclic(2));
    assert_eq!(b2.hom_groupoid(0, 0).0.morphisms(), 2);
    let one = Fin2Groupoid::from_groupoid(&FinGroupoid::codiscrete(2));
    assert_eq!(one.hinv2(1), 2);
  }

  #[test]
  fn json_round_trip() {
    let g = FinGroupoid::codiscrete(2);
    let s = g.to_json();
    let h = FinGroupoid::from_json(&s).unwrap();
    assert_eq!(g, h);
    assert_eq!(s, h.to_json());
  }
}

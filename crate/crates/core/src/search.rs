//! Backtracking search for simplicial maps subject to fixed values and linking constraints.
//!
//! A problem has several components, each asking for a map `X_c → Y_c`. Links tie the value
//! of one simplex to another through a table on targets, which expresses naturality squares
//! and equivariance.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sset::{product, standard_simplex, SSetMap, TruncSSet};

/// A simplex of one component's source: `(component, dimension, id)`.
pub type Var = (usize, usize, usize);

/// `F(to) = via[F(from)]`, with `via` a table on target simplices of `from`'s dimension.
#[derive(Clone, Debug)]
pub struct Link {
  pub from: Var,
  pub to: Var,
  pub via: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct MapProblem<'a> {
  pub sources: Vec<&'a TruncSSet>,
  pub targets: Vec<&'a TruncSSet>,
  pub fixed: Vec<(Var, usize)>,
  pub links: Vec<Link>,
}

struct Solver<'a> {
  p: &'a MapProblem<'a>,
  /// `value[c][n][x]`, `usize::MAX` when unassigned.
  value: Vec<Vec<Vec<usize>>>,
  trail: Vec<Var>,
  links_from: HashMap<Var, Vec<usize>>,
  /// Per component and dimension: faces-tuple index of target simplices.
  by_faces: Vec<Vec<HashMap<Vec<usize>, Vec<usize>>>>,
  order: Vec<Var>,
}

const UNSET: usize = usize::MAX;

impl<'a> MapProblem<'a> {
  pub fn single(source: &'a TruncSSet, target: &'a TruncSSet) -> Self {
    Self { sources: vec![source], targets: vec![target], fixed: Vec::new(), links: Vec::new() }
  }

  /// Visits every solution; the callback returns false to stop. Returns the number visited.
  pub fn for_each(&self, mut visit: impl FnMut(&[SSetMap]) -> bool) -> Result<usize> {
    for (x, y) in self.sources.iter().zip(&self.targets) {
      if x.trunc() != y.trunc() {
        return Err(Error::Truncation(x.trunc(), y.trunc()));
      }
    }
    let mut s = Solver::new(self);
    for &(v, val) in &self.fixed {
      if !s.assign(v, val) {
        return Ok(0);
      }
    }
    let mut count = 0;
    s.search(0, &mut |sol| {
      count += 1;
      visit(sol)
    });
    Ok(count)
  }

  pub fn all(&self, limit: usize) -> Result<Vec<Vec<SSetMap>>> {
    let mut out = Vec::new();
    let mut over = false;
    self.for_each(|sol| {
      if out.len() == limit {
        over = true;
        return false;
      }
      out.push(sol.to_vec());
      true
    })?;
    if over {
      return Err(Error::BoundExceeded(format!("more than {limit} maps")));
    }
    Ok(out)
  }

  pub fn first(&self) -> Result<Option<Vec<SSetMap>>> {
    let mut out = None;
    self.for_each(|sol| {
      out = Some(sol.to_vec());
      false
    })?;
    Ok(out)
  }

  pub fn count(&self) -> Result<usize> {
    self.for_each(|_| true)
  }
}

impl<'a> Solver<'a> {
  fn new(p: &'a MapProblem<'a>) -> Self {
    let value = p.sources.iter().map(|x| (0..=x.trunc()).map(|n| vec![UNSET; x.count(n)]).collect()).collect();
    let mut links_from: HashMap<Var, Vec<usize>> = HashMap::new();
    for (k, l) in p.links.iter().enumerate() {
      links_from.entry(l.from).or_default().push(k);
    }
    let by_faces = p
      .targets
      .iter()
      .map(|y| {
        (0..=y.trunc())
          .map(|n| {
            let mut m: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for z in 0..y.count(n) {
              let key = if n == 0 { Vec::new() } else { (0..=n).map(|i| y.face(n, i, z)).collect() };
              m.entry(key).or_default().push(z);
            }
            m
          })
          .collect()
      })
      .collect();
    let trunc = p.sources.iter().map(|x| x.trunc()).max().unwrap_or(0);
    let mut order = Vec::new();
    for n in 0..=trunc {
      for (c, x) in p.sources.iter().enumerate() {
        if n <= x.trunc() {
          order.extend((0..x.count(n)).map(|s| (c, n, s)));
        }
      }
    }
    Self { p, value, trail: Vec::new(), links_from, by_faces, order }
  }

  fn get(&self, (c, n, x): Var) -> usize {
    self.value[c][n][x]
  }

  /// Assigns and propagates through degeneracies and links. Returns false on conflict; the
  /// trail records everything assigned so the caller can undo.
  fn assign(&mut self, v: Var, val: usize) -> bool {
    let mut stack = vec![(v, val)];
    while let Some((v @ (c, n, x), val)) = stack.pop() {
      let cur = self.get(v);
      if cur != UNSET {
        if cur != val {
          return false;
        }
        continue;
      }
      self.value[c][n][x] = val;
      self.trail.push(v);
      let (src, tgt) = (self.p.sources[c], self.p.targets[c]);
      if n < src.trunc() {
        for j in 0..=n {
          stack.push(((c, n + 1, src.degen(n, j, x)), tgt.degen(n, j, val)));
        }
      }
      if let Some(ls) = self.links_from.get(&v) {
        for &k in ls {
          let l = &self.p.links[k];
          stack.push((l.to, l.via[val]));
        }
      }
    }
    true
  }

  fn undo(&mut self, mark: usize) {
    while self.trail.len() > mark {
      let (c, n, x) = self.trail.pop().unwrap();
      self.value[c][n][x] = UNSET;
    }
  }

  fn face_key(&self, (c, n, x): Var) -> Vec<usize> {
    let src = self.p.sources[c];
    if n == 0 {
      Vec::new()
    } else {
      (0..=n).map(|i| self.value[c][n - 1][src.face(n, i, x)]).collect()
    }
  }

  fn search(&mut self, pos: usize, visit: &mut dyn FnMut(&[SSetMap]) -> bool) -> bool {
    if pos == self.order.len() {
      let sol: Vec<SSetMap> = self.value.iter().map(|m| SSetMap::new_unchecked(m.clone())).collect();
      return visit(&sol);
    }
    let v @ (c, n, _) = self.order[pos];
    let key = self.face_key(v);
    let cur = self.get(v);
    if cur != UNSET {
      let tgt = self.p.targets[c];
      if n > 0 && (0..=n).any(|i| tgt.face(n, i, cur) != key[i]) {
        return true;
      }
      return self.search(pos + 1, visit);
    }
    let candidates = match self.by_faces[c][n].get(&key) {
      Some(list) => list.clone(),
      None => return true,
    };
    for z in candidates {
      let mark = self.trail.len();
      if self.assign(v, z) && !self.search(pos + 1, visit) {
        self.undo(mark);
        return false;
      }
      self.undo(mark);
    }
    true
  }
}

/// All simplicial maps `X → Y`, up to `limit`.
pub fn all_maps(x: &TruncSSet, y: &TruncSSet, limit: usize) -> Result<Vec<SSetMap>> {
  Ok(MapProblem::single(x, y).all(limit)?.into_iter().map(|mut v| v.remove(0)).collect())
}

/// A homotopy `X × Δ^1 → Y` from `f` to `g`, found by exhaustive search.
#[derive(Clone, Debug)]
pub struct Homotopy {
  pub cylinder: TruncSSet,
  pub map: SSetMap,
  /// The inclusions `X → X × Δ^1` at the ends 0 and 1.
  pub ends: [SSetMap; 2],
}

/// Cylinder `X × Δ^1` with its two end inclusions.
pub fn cylinder(x: &TruncSSet) -> (TruncSSet, [SSetMap; 2]) {
  let d1 = standard_simplex(1, x.trunc());
  let cyl = product(x, &d1.sset).expect("equal truncation");
  let end = |e: usize| {
    SSetMap::new(
      x,
      &cyl.sset,
      (0..=x.trunc())
        .map(|n| (0..x.count(n)).map(|s| cyl.id_of(n, &(s, d1.id_of(n, &vec![e; n + 1]).unwrap())).unwrap()).collect())
        .collect(),
    )
    .expect("end inclusion")
  };
  let ends = [end(0), end(1)];
  (cyl.sset, ends)
}

/// Searches for a simplicial homotopy from `f` to `g`.
pub fn naive_homotopy_search(x: &TruncSSet, y: &TruncSSet, f: &SSetMap, g: &SSetMap) -> Result<Option<Homotopy>> {
  let (cyl, ends) = cylinder(x);
  let mut problem = MapProblem::single(&cyl, y);
  for (e, h) in [f, g].iter().enumerate() {
    for n in 0..=x.trunc() {
      for s in 0..x.count(n) {
        problem.fixed.push(((0, n, ends[e].apply(n, s)), h.apply(n, s)));
      }
    }
  }
  let found = problem.first()?;
  Ok(found.map(|mut sol| Homotopy { map: sol.remove(0), cylinder: cyl.clone(), ends: ends.clone() }))
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::groupoid::FinGroupoid;
  use crate::sset::circle;

  #[test]
  fn maps_from_simplex_are_simplices() {
    let y = FinGroupoid::cyclic(2).nerve(3).sset;
    for n in 0..=3 {
      let d = TruncSSet::standard(n, 3);
      assert_eq!(all_maps(&d, &y, 1000).unwrap().len(), y.count(n));
    }
  }

  #[test]
  fn maps_from_circle_model_are_loops() {
    // Maps Δ^1/∂ → Y are the 1-simplices with equal endpoints.
    let y = FinGroupoid::codiscrete(2).nerve(3).sset;
    let loops = (0..y.count(1)).filter(|&e| y.face(1, 0, e) == y.face(1, 1, e)).count();
    assert_eq!(all_maps(&circle(3).sset, &y, 1000).unwrap().len(), loops);
  }

  #[test]
  fn homotopy_found_and_checked() {
    let pt = TruncSSet::point(3);
    let y = FinGroupoid::codiscrete(2).nerve(3).sset;
    let f = SSetMap::constant(&pt, &y, 0);
    let g = SSetMap::constant(&pt, &y, 1);
    let h = naive_homotopy_search(&pt, &y, &f, &g).unwrap().expect("connecting edge");
    assert!(h.map.check(&h.cylinder, &y).is_ok());
    assert_eq!(h.ends[0].then(&h.map), f);
    assert_eq!(h.ends[1].then(&h.map), g);
    let self_h = naive_homotopy_search(&pt, &y, &f, &f).unwrap().unwrap();
    assert_eq!(self_h.ends[1].then(&self_h.map), f);
  }

  #[test]
  fn no_homotopy_between_discrete_points() {
    let pt = TruncSSet::point(3);
    let two = TruncSSet::discrete(2, 3);
    let r =
      naive_homotopy_search(&pt, &two, &SSetMap::constant(&pt, &two, 0), &SSetMap::constant(&pt, &two, 1)).unwrap();
    assert!(r.is_none());
  }

  #[test]
  fn limit_is_reported() {
    let y = TruncSSet::discrete(3, 2);
    assert!(matches!(all_maps(&TruncSSet::discrete(2, 2), &y, 5), Err(Error::BoundExceeded(_))));
  }
}

//! The cocycle construction `W̄H`, the comparison `j: dBH → W̄H`, the total object `WG`,
//! and transposes for the loop-groupoid adjunction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::NerveSimplex;
use crate::ordinal::OrdinalMap;
use crate::search::all_maps;
use crate::sgroupoid::{SgdFunctor, SimpGroupoid};
use crate::sset::{Labelled, SSetMap, TruncSSet};

/// An `n`-cocycle `x_0 ← x_1 ← ⋯ ← x_n`: `arrows[i]` is a level-`(n-i-1)` cell `x_{i+1} → x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cocycle {
  pub objs: Vec<usize>,
  pub arrows: Vec<usize>,
}

impl Cocycle {
  pub fn dim(&self) -> usize {
    self.objs.len() - 1
  }
}

impl SimpGroupoid {
  /// The composite `x_j → x_i` of a cocycle, a cell in level `n - j`.
  pub fn cocycle_composite(&self, c: &Cocycle, j: usize, i: usize) -> usize {
    let n = c.dim();
    assert!(i <= j && j <= n);
    let lvl = n - j;
    if i == j {
      return self.level(lvl).identity[c.objs[j]];
    }
    let mut acc = c.arrows[j - 1];
    for k in (i..j - 1).rev() {
      // arrows[k] sits in level n-k-1; bring it down to level n-j.
      let moved = self.d0_power(n - k - 1, j - k - 1, c.arrows[k]);
      acc = self.level(lvl).comp(moved, acc);
    }
    acc
  }

  /// `θ^*` on cocycles.
  pub fn act_cocycle(&self, theta: &OrdinalMap, c: &Cocycle) -> Cocycle {
    let m = theta.source();
    Cocycle {
      objs: (0..=m).map(|i| c.objs[theta.apply(i)]).collect(),
      arrows: (0..m)
        .map(|i| self.act(&theta.restrict_tail(i + 1), self.cocycle_composite(c, theta.apply(i + 1), theta.apply(i))))
        .collect(),
    }
  }

  /// All `n`-cocycles.
  pub fn cocycles(&self, n: usize) -> Vec<Cocycle> {
    let mut out = Vec::new();
    for last in 0..self.objects() {
      let mut objs = vec![0; n + 1];
      objs[n] = last;
      let mut arrows = vec![0; n];
      self.extend_cocycles(n, n, &mut objs, &mut arrows, &mut out);
    }
    out
  }

  fn extend_cocycles(
    &self,
    n: usize,
    k: usize,
    objs: &mut Vec<usize>,
    arrows: &mut Vec<usize>,
    out: &mut Vec<Cocycle>,
  ) {
    if k == 0 {
      out.push(Cocycle { objs: objs.clone(), arrows: arrows.clone() });
      return;
    }
    // arrows[k-1] lives in level n-k and starts at objs[k].
    let g = self.level(n - k);
    for a in 0..g.morphisms() {
      if g.src[a] == objs[k] {
        arrows[k - 1] = a;
        objs[k - 1] = g.dst[a];
        self.extend_cocycles(n, k - 1, objs, arrows, out);
      }
    }
  }

  pub fn wbar(&self) -> Labelled<Cocycle> {
    let levels = (0..=self.trunc()).map(|n| self.cocycles(n)).collect();
    Labelled::build_with_action(self.trunc(), levels, |t, c| self.act_cocycle(t, c)).expect("W̄ is simplicial")
  }

  /// The string `s` in level `n` goes to the cocycle with arrows `d_0^{i+1}(s_i^{-1})`.
  pub fn j_cocycle(&self, s: &NerveSimplex) -> Cocycle {
    let n = s.mors.len();
    Cocycle {
      objs: s.objs.clone(),
      arrows: (0..n).map(|i| self.d0_power(n, i + 1, self.level(n).inverse[s.mors[i]])).collect(),
    }
  }

  /// `j: dBH → W̄H`.
  pub fn j_map(&self, db: &Labelled<NerveSimplex>, wbar: &Labelled<Cocycle>) -> Result<SSetMap> {
    db.map_to(wbar, |_, s| self.j_cocycle(s))
  }
}

impl SgdFunctor {
  /// The induced map `W̄A → W̄B`.
  pub fn on_wbar(&self, a: &Labelled<Cocycle>, b: &Labelled<Cocycle>) -> Result<SSetMap> {
    a.map_to(b, |n, c| Cocycle {
      objs: c.objs.iter().map(|&o| self.on_objects[o]).collect(),
      arrows: c.arrows.iter().enumerate().map(|(i, &x)| self.on_cells.map[n - i - 1][x]).collect(),
    })
  }
}

/// The total object `WG` of a simplicial group, with its left `G`-action and the quotient to `W̄G`.
///
/// `WG_n` is `W̄G_{n+1}` with faces and degeneracies shifted by one; `g ∈ G_n` acts by
/// post-composition on the leading arrow.
#[derive(Clone, Debug)]
pub struct TotalObject {
  pub w: TruncSSet,
  /// The cocycle of `W̄G_{n+1}` underlying each simplex.
  pub labels: Vec<Vec<Cocycle>>,
  /// `action[n][g][x]`.
  pub action: Vec<Vec<Vec<usize>>>,
  pub projection: SSetMap,
}

pub fn w_total(g: &SimpGroupoid) -> Result<TotalObject> {
  if g.objects() != 1 {
    return Err(Error::Precondition(format!("WG needs a simplicial group, got {} objects", g.objects())));
  }
  let n_max = g.trunc();
  // W̄G_{N+1} only uses cells of levels <= N, and the shifted operators never need level N+1.
  let levels: Vec<Vec<Cocycle>> = (0..=n_max).map(|n| cocycles_extended(g, n + 1)).collect();
  let lab = Labelled::build(
    n_max,
    levels,
    |n, i, c: &Cocycle| g.act_cocycle(&OrdinalMap::coface(n + 1, i + 1), c),
    |n, j, c: &Cocycle| g.act_cocycle(&OrdinalMap::codegeneracy(n + 1, j + 1), c),
  )?;
  let wbar = g.wbar();
  let projection = lab.map_to(&wbar, |n, c| g.act_cocycle(&OrdinalMap::coface(n + 1, 0), c))?;
  let action = (0..=n_max)
    .map(|n| {
      (0..g.level(n).morphisms())
        .map(|a| {
          lab.labels[n]
            .iter()
            .map(|c| {
              let mut d = c.clone();
              d.arrows[0] = g.level(n).comp(a, c.arrows[0]);
              lab.id_of(n, &d).expect("action stays in WG")
            })
            .collect()
        })
        .collect()
    })
    .collect();
  Ok(TotalObject { w: lab.sset, labels: lab.labels, action, projection })
}

/// Cocycles of a one-object simplicial group in dimension `n <= trunc + 1`; the top arrow may sit
/// in any stored level.
fn cocycles_extended(g: &SimpGroupoid, n: usize) -> Vec<Cocycle> {
  let mut out = vec![Cocycle { objs: vec![0; n + 1], arrows: vec![0; n] }];
  for k in 0..n {
    let count = g.level(n - k - 1).morphisms();
    out = out
      .into_iter()
      .flat_map(|c| {
        (0..count).map(move |a| {
          let mut d = c.clone();
          d.arrows[k] = a;
          d
        })
      })
      .collect();
  }
  out.sort();
  out
}

/// Data of a map `G(X) → H` out of the loop groupoid: objects for vertices and, for each
/// `(n+1)`-simplex `x`, a level-`n` cell `φ(x): o(v_1 x) → o(v_0 x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LoopAssignment {
  pub objects: Vec<usize>,
  /// `cells[n][x]` for `x ∈ X_{n+1}`.
  pub cells: Vec<Vec<usize>>,
}

/// The relations a loop assignment must satisfy; returns the first violated one.
pub fn check_loop_assignment(x: &TruncSSet, h: &SimpGroupoid, a: &LoopAssignment) -> Result<()> {
  let bad = |s: String| Err(Error::Invalid(s));
  for n in 0..x.trunc() {
    let lvl = h.level(n);
    for s in 0..x.count(n + 1) {
      let phi = a.cells[n][s];
      let (v0, v1) = (x.vertex(n + 1, s, 0), x.vertex(n + 1, s, 1));
      if lvl.src[phi] != a.objects[v1] || lvl.dst[phi] != a.objects[v0] {
        return bad(format!("φ of simplex {s} in dimension {} has the wrong endpoints", n + 1));
      }
      if n >= 1 {
        let d1 = a.cells[n - 1][x.face(n + 1, 1, s)];
        let d0 = a.cells[n - 1][x.face(n + 1, 0, s)];
        let g = h.level(n - 1);
        if h.face(n, 0, phi) != g.comp(d1, g.inverse[d0]) {
          return bad(format!("d0 φ(x) = φ(d1 x) φ(d0 x)^-1 fails at simplex {s} in dimension {}", n + 1));
        }
        for i in 1..=n {
          if h.face(n, i, phi) != a.cells[n - 1][x.face(n + 1, i + 1, s)] {
            return bad(format!("d{i} φ(x) = φ(d{} x) fails at simplex {s} in dimension {}", i + 1, n + 1));
          }
        }
      }
    }
    for y in 0..x.count(n) {
      let z = a.cells[n][x.degen(n, 0, y)];
      if z != lvl.identity[lvl.src[z]] {
        return bad(format!("φ(s0 y) = id fails at simplex {y} in dimension {n}"));
      }
    }
    if n + 1 < x.trunc() {
      for s in 0..x.count(n + 1) {
        for i in 0..=n {
          if h.mor().degen(n, i, a.cells[n][s]) != a.cells[n + 1][x.degen(n + 1, i + 1, s)] {
            return bad(format!("s{i} φ(x) = φ(s{} x) fails at simplex {s} in dimension {}", i + 1, n + 1));
          }
        }
      }
    }
  }
  Ok(())
}

/// Transpose of `f: X → W̄H`: `φ(x)` is the leading arrow of `f(x)`.
pub fn transpose_to_loop(x: &TruncSSet, wbar: &Labelled<Cocycle>, f: &SSetMap) -> LoopAssignment {
  LoopAssignment {
    objects: (0..x.count(0)).map(|v| wbar.label(0, f.apply(0, v)).objs[0]).collect(),
    cells: (0..x.trunc())
      .map(|n| (0..x.count(n + 1)).map(|s| wbar.label(n + 1, f.apply(n + 1, s)).arrows[0]).collect())
      .collect(),
  }
}

/// Inverse transpose: `f(x)` has objects `o(v_k x)` and arrows `φ(d_0^k x)`.
pub fn transpose_from_loop(
  x: &TruncSSet,
  h: &SimpGroupoid,
  wbar: &Labelled<Cocycle>,
  a: &LoopAssignment,
) -> Result<SSetMap> {
  check_loop_assignment(x, h, a)?;
  let table = (0..=x.trunc())
    .map(|n| {
      (0..x.count(n))
        .map(|s| {
          let objs = (0..=n).map(|k| a.objects[x.vertex(n, s, k)]).collect();
          let mut arrows = Vec::with_capacity(n);
          let mut cur = s;
          for k in 0..n {
            arrows.push(a.cells[n - k - 1][cur]);
            cur = x.face(n - k, 0, cur);
          }
          wbar
            .id_of(n, &Cocycle { objs, arrows })
            .ok_or_else(|| Error::Invalid("assignment gives a non-cocycle".into()))
        })
        .collect::<Result<Vec<_>>>()
    })
    .collect::<Result<Vec<_>>>()?;
  SSetMap::new(x, &wbar.sset, table)
}

/// All loop assignments, by backtracking in order of dimension.
pub fn loop_assignments(x: &TruncSSet, h: &SimpGroupoid, limit: usize) -> Result<Vec<LoopAssignment>> {
  let mut out = Vec::new();
  let mut objects = vec![0; x.count(0)];
  fn objs(
    x: &TruncSSet,
    h: &SimpGroupoid,
    v: usize,
    objects: &mut Vec<usize>,
    out: &mut Vec<LoopAssignment>,
    limit: usize,
  ) -> Result<()> {
    if v == x.count(0) {
      let mut cells: Vec<Vec<usize>> = (0..x.trunc()).map(|n| vec![usize::MAX; x.count(n + 1)]).collect();
      return fill(x, h, 0, 0, objects, &mut cells, out, limit);
    }
    for o in 0..h.objects() {
      objects[v] = o;
      objs(x, h, v + 1, objects, out, limit)?;
    }
    Ok(())
  }
  #[allow(clippy::too_many_arguments)]
  fn fill(
    x: &TruncSSet,
    h: &SimpGroupoid,
    n: usize,
    s: usize,
    objects: &[usize],
    cells: &mut Vec<Vec<usize>>,
    out: &mut Vec<LoopAssignment>,
    limit: usize,
  ) -> Result<()> {
    if n == x.trunc() {
      let a = LoopAssignment { objects: objects.to_vec(), cells: cells.clone() };
      if check_loop_assignment(x, h, &a).is_ok() {
        if out.len() == limit {
          return Err(Error::BoundExceeded(format!("more than {limit} loop assignments")));
        }
        out.push(a);
      }
      return Ok(());
    }
    if s == x.count(n + 1) {
      return fill(x, h, n + 1, 0, objects, cells, out, limit);
    }
    let lvl = h.level(n);
    let (v0, v1) = (x.vertex(n + 1, s, 0), x.vertex(n + 1, s, 1));
    for c in 0..lvl.morphisms() {
      if lvl.src[c] != objects[v1] || lvl.dst[c] != objects[v0] {
        continue;
      }
      if n >= 1 {
        let g = h.level(n - 1);
        let d1 = cells[n - 1][x.face(n + 1, 1, s)];
        let d0 = cells[n - 1][x.face(n + 1, 0, s)];
        if h.face(n, 0, c) != g.comp(d1, g.inverse[d0])
          || (1..=n).any(|i| h.face(n, i, c) != cells[n - 1][x.face(n + 1, i + 1, s)])
        {
          continue;
        }
      }
      cells[n][s] = c;
      fill(x, h, n, s + 1, objects, cells, out, limit)?;
    }
    cells[n][s] = usize::MAX;
    Ok(())
  }
  objs(x, h, 0, &mut objects, &mut out, limit)?;
  Ok(out)
}

/// Enumerates `hom(X, W̄H)` and the loop assignments and checks that the transposes are
/// mutually inverse bijections. Returns the two cardinalities.
pub fn verify_adjunction(x: &TruncSSet, h: &SimpGroupoid, limit: usize) -> Result<(usize, usize)> {
  let wbar = h.wbar();
  let maps = all_maps(x, &wbar.sset, limit)?;
  let assigns = loop_assignments(x, h, limit)?;
  let mut images: Vec<LoopAssignment> = Vec::with_capacity(maps.len());
  for f in &maps {
    let a = transpose_to_loop(x, &wbar, f);
    check_loop_assignment(x, h, &a)?;
    if transpose_from_loop(x, h, &wbar, &a)? != *f {
      return Err(Error::Invalid("transposing a map twice does not return it".into()));
    }
    images.push(a);
  }
  for a in &assigns {
    let f = transpose_from_loop(x, h, &wbar, a)?;
    if transpose_to_loop(x, &wbar, &f) != *a {
      return Err(Error::Invalid("transposing an assignment twice does not return it".into()));
    }
  }
  images.sort();
  images.dedup();
  if images.len() != maps.len() || images.len() != assigns.len() {
    return Err(Error::Invalid(format!(
      "{} maps, {} distinct transposes, {} assignments",
      maps.len(),
      images.len(),
      assigns.len()
    )));
  }
  Ok((maps.len(), assigns.len()))
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::groupoid::{Fin2Groupoid, FinGroupoid};
  use crate::homotopy::{pi0, GroupTable};
  use crate::sset::circle;

  /// Functors from `[n]^op` into the Grothendieck construction, enumerated as all families
  /// `f_{ji}` (level `n-j`, `x_j → x_i`) with `f_{ki} = d_0^{k-j}(f_{ji}) ∘ f_{kj}`.
  fn lift_count(h: &SimpGroupoid, n: usize) -> usize {
    let mut count = 0;
    let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|j| (0..j).map(move |i| (j, i))).collect();
    let mut objs = vec![0; n + 1];
    let mut choice = vec![0usize; pairs.len()];
    fn go(
      h: &SimpGroupoid,
      n: usize,
      objs: &mut Vec<usize>,
      k: usize,
      count: &mut usize,
      pairs: &[(usize, usize)],
      choice: &mut Vec<usize>,
    ) {
      if k <= n {
        for o in 0..h.objects() {
          objs[k] = o;
          go(h, n, objs, k + 1, count, pairs, choice);
        }
        return;
      }
      fam(h, n, objs, 0, count, pairs, choice);
    }
    fn fam(
      h: &SimpGroupoid,
      n: usize,
      objs: &[usize],
      p: usize,
      count: &mut usize,
      pairs: &[(usize, usize)],
      choice: &mut Vec<usize>,
    ) {
      if p == pairs.len() {
        let get = |j: usize, i: usize| choice[pairs.iter().position(|&q| q == (j, i)).unwrap()];
        for k in 0..=n {
          for j in 0..k {
            for i in 0..j {
              let g = h.level(n - k);
              let lhs = get(k, i);
              let rhs = g.comp(h.d0_power(n - j, k - j, get(j, i)), get(k, j));
              if lhs != rhs {
                return;
              }
            }
          }
        }
        *count += 1;
        return;
      }
      let (j, i) = pairs[p];
      let g = h.level(n - j);
      for a in 0..g.morphisms() {
        if g.src[a] == objs[j] && g.dst[a] == objs[i] {
          choice[p] = a;
          fam(h, n, objs, p + 1, count, pairs, choice);
        }
      }
    }
    go(h, n, &mut objs, 0, &mut count, &pairs, &mut choice);
    count
  }

  fn z2(trunc: usize) -> SimpGroupoid {
    SimpGroupoid::constant(&FinGroupoid::cyclic(2), trunc)
  }

  #[test]
  fn wbar_counts_match_lift_oracle() {
    let fixtures = [
      z2(3),
      SimpGroupoid::constant(&FinGroupoid::codiscrete(2), 3),
      SimpGroupoid::from_2groupoid(&Fin2Groupoid::double_suspension(&GroupTable::cyclic(2)), 3).0,
    ];
    for h in &fixtures {
      let w = h.wbar();
      assert!(w.sset.validate().is_pass());
      for n in 0..=3 {
        assert_eq!(w.sset.count(n), lift_count(h, n), "dimension {n}");
      }
    }
  }

  #[test]
  fn wbar_of_z2() {
    assert_eq!(z2(4).wbar().sset.counts(), &[1, 2, 4, 8, 16]);
  }

  #[test]
  fn theta_action_is_functorial() {
    let (h, _) = SimpGroupoid::from_2groupoid(&Fin2Groupoid::double_suspension(&GroupTable::cyclic(2)), 3);
    let w = h.wbar();
    for k in 0..=3 {
      for m in 0..=3 {
        for n in 0..=3 {
          for tau in OrdinalMap::all(k, m) {
            for theta in OrdinalMap::all(m, n) {
              for c in &w.labels[n] {
                assert_eq!(h.act_cocycle(&theta.compose(&tau), c), h.act_cocycle(&tau, &h.act_cocycle(&theta, c)));
              }
            }
          }
        }
      }
    }
  }

  #[test]
  fn j_is_a_levelwise_bijection_for_constant_z2() {
    let h = z2(3);
    let (db, w) = (h.db(), h.wbar());
    let j = h.j_map(&db, &w).unwrap();
    assert!(j.is_bijective(&w.sset));
    for v in 0..db.sset.count(0) {
      assert_eq!(j.apply(0, v), v);
    }
  }

  #[test]
  fn total_object_of_z2() {
    let t = w_total(&z2(3)).unwrap();
    assert_eq!(t.w.counts(), &[2, 4, 8, 16]);
    assert!(t.w.validate().is_pass());
    let wbar = z2(3).wbar().sset;
    for n in 0..=3 {
      let mut fibre = vec![0; wbar.count(n)];
      for x in 0..t.w.count(n) {
        fibre[t.projection.apply(n, x)] += 1;
      }
      assert!(fibre.iter().all(|&c| c == 2));
    }
    assert_eq!(pi0(&t.w).count, 1);
    assert!(w_total(&SimpGroupoid::constant(&FinGroupoid::codiscrete(2), 2)).is_err());
  }

  #[test]
  fn adjunction_on_small_sources() {
    let h = z2(3);
    assert_eq!(verify_adjunction(&TruncSSet::point(3), &h, 100).unwrap(), (1, 1));
    assert_eq!(verify_adjunction(&TruncSSet::standard(1, 3), &h, 100).unwrap(), (2, 2));
    assert_eq!(verify_adjunction(&circle(3).sset, &h, 100).unwrap(), (2, 2));
  }
}

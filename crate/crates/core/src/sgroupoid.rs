//! Simplicial groupoids: a fixed object set with a groupoid of `n`-cells in each level.

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::bisset::BisSSet;
use crate::error::{Error, Result};
use crate::groupoid::{Fin2Groupoid, FinGroupoid, GroupoidFunctor, NerveSimplex};
use crate::ordinal::OrdinalMap;
use crate::sset::{Labelled, RawSSet, SSetMap, TruncSSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpGroupoid {
  objects: usize,
  levels: Vec<FinGroupoid>,
  /// All morphisms as one simplicial set; its `n`-simplices are the morphisms of `levels[n]`.
  mor: TruncSSet,
}

impl SimpGroupoid {
  pub fn new(levels: Vec<FinGroupoid>, mor: TruncSSet) -> Result<Self> {
    let objects = levels.first().map(|g| g.objects).unwrap_or(0);
    let h = Self { objects, levels, mor };
    h.validate()?;
    Ok(h)
  }

  /// Builds from labelled cells. `act` is the simplicial action on cells; it must fix endpoints.
  #[allow(clippy::too_many_arguments)]
  pub fn from_labels<T: Clone + Ord + Hash + Debug>(
    trunc: usize,
    objects: usize,
    cells: Vec<Vec<T>>,
    src: impl Fn(&T) -> usize,
    dst: impl Fn(&T) -> usize,
    identity: impl Fn(usize, usize) -> T,
    compose: impl Fn(usize, &T, &T) -> T,
    inverse: impl Fn(usize, &T) -> T,
    act: impl Fn(&OrdinalMap, &T) -> T,
  ) -> Result<(Self, Labelled<T>)> {
    let lab = Labelled::build_with_action(trunc, cells, act)?;
    let mut levels = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
      let ls = &lab.labels[n];
      let id = |t: &T| lab.id_of(n, t).ok_or_else(|| Error::Invalid(format!("cell {t:?} missing from level {n}")));
      let identity = (0..objects).map(|x| id(&identity(n, x))).collect::<Result<Vec<_>>>()?;
      let inverse = ls.iter().map(|t| id(&inverse(n, t))).collect::<Result<Vec<_>>>()?;
      let mut comp = Vec::new();
      for (g, tg) in ls.iter().enumerate() {
        for (f, tf) in ls.iter().enumerate() {
          if dst(tf) == src(tg) {
            comp.push((g, f, id(&compose(n, tg, tf))?));
          }
        }
      }
      levels.push(FinGroupoid::new(
        objects,
        ls.iter().map(&src).collect(),
        ls.iter().map(&dst).collect(),
        identity,
        comp,
        inverse,
      )?);
    }
    let h = Self::new(levels, lab.sset.clone())?;
    Ok((h, lab))
  }

  /// The constant simplicial groupoid on `g`.
  pub fn constant(g: &FinGroupoid, trunc: usize) -> Self {
    let mor = TruncSSet::discrete(g.morphisms(), trunc);
    Self::new(vec![g.clone(); trunc + 1], mor).expect("constant simplicial groupoid")
  }

  /// `B` of a strict 2-groupoid: level-`n` morphisms `x → y` are `n`-strings of 2-cells between
  /// 1-cells `x → y`, composed pointwise horizontally.
  pub fn from_2groupoid(g: &Fin2Groupoid, trunc: usize) -> (Self, Labelled<NerveSimplex>) {
    let c1 = &g.cells1;
    let c2 = &g.cells2;
    let cells = (0..=trunc).map(|n| c2.strings(n)).collect();
    Self::from_labels(
      trunc,
      g.objects,
      cells,
      |s: &NerveSimplex| c1.src[s.objs[0]],
      |s: &NerveSimplex| c1.dst[s.objs[0]],
      |n, x| NerveSimplex { objs: vec![c1.identity[x]; n + 1], mors: vec![c2.identity[c1.identity[x]]; n] },
      |_, b, a| NerveSimplex {
        objs: b.objs.iter().zip(&a.objs).map(|(&p, &q)| c1.comp(p, q)).collect(),
        mors: b.mors.iter().zip(&a.mors).map(|(&p, &q)| g.hcomp2(p, q)).collect(),
      },
      |_, a| NerveSimplex {
        objs: a.objs.iter().map(|&p| c1.inverse[p]).collect(),
        mors: a.mors.iter().map(|&p| g.hinv2(p)).collect(),
      },
      |t, s| c2.act(t, s),
    )
    .expect("B of a 2-groupoid")
  }

  pub fn disjoint_union(parts: &[&SimpGroupoid]) -> Result<Self> {
    let trunc = parts.first().map(|p| p.trunc()).unwrap_or(0);
    let levels = (0..=trunc)
      .map(|n| FinGroupoid::disjoint_union(&parts.iter().map(|p| &p.levels[n]).collect::<Vec<_>>()))
      .collect();
    let mor = crate::sset::coproduct(&parts.iter().map(|p| &p.mor).collect::<Vec<_>>())?.sset;
    Self::new(levels, mor)
  }

  pub fn trunc(&self) -> usize {
    self.mor.trunc()
  }

  pub fn objects(&self) -> usize {
    self.objects
  }

  pub fn level(&self, n: usize) -> &FinGroupoid {
    &self.levels[n]
  }

  pub fn mor(&self) -> &TruncSSet {
    &self.mor
  }

  /// `θ^*` on a level-`θ.target()` cell.
  pub fn act(&self, theta: &OrdinalMap, m: usize) -> usize {
    self.mor.act(theta, m)
  }

  pub fn face(&self, n: usize, i: usize, m: usize) -> usize {
    self.mor.face(n, i, m)
  }

  /// `d_0^k` applied to a level-`n` cell.
  pub fn d0_power(&self, n: usize, k: usize, m: usize) -> usize {
    let mut cur = m;
    for d in 0..k {
      cur = self.mor.face(n - d, 0, cur);
    }
    cur
  }

  pub fn validate(&self) -> Result<()> {
    let n = self.mor.trunc();
    if self.levels.len() != n + 1 {
      return Err(Error::Invalid("one groupoid per level is required".into()));
    }
    for (k, g) in self.levels.iter().enumerate() {
      if g.objects != self.objects {
        return Err(Error::Invalid(format!("level {k} has a different object set")));
      }
      if g.morphisms() != self.mor.count(k) {
        return Err(Error::Invalid(format!("level {k} morphisms do not match the cell simplicial set")));
      }
    }
    let report = self.mor.validate();
    if !report.is_pass() {
      return Err(Error::Invalid(format!("cells: {report}")));
    }
    let check = |from: usize, to: usize, table: &[usize], name: &str| -> Result<()> {
      let f = GroupoidFunctor { on_objects: (0..self.objects).collect(), on_morphisms: table.to_vec() };
      f.check(&self.levels[from], &self.levels[to])
        .map_err(|e| Error::Invalid(format!("{name} is not a functor fixing objects: {e}")))
    };
    for k in 0..=n {
      if k > 0 {
        for i in 0..=k {
          check(k, k - 1, self.mor.face_table(k, i), &format!("d{i} on level {k}"))?;
        }
      }
      if k < n {
        for j in 0..=k {
          check(k, k + 1, self.mor.degen_table(k, j), &format!("s{j} on level {k}"))?;
        }
      }
    }
    Ok(())
  }

  /// The hom simplicial set `H(x, y)` and the ids of its cells in each level.
  pub fn hom(&self, x: usize, y: usize) -> (TruncSSet, Vec<Vec<usize>>) {
    let keep: Vec<Vec<bool>> = (0..=self.trunc())
      .map(|n| (0..self.mor.count(n)).map(|m| self.levels[n].src[m] == x && self.levels[n].dst[m] == y).collect())
      .collect();
    self.mor.restrict(&keep).expect("hom sets are closed under the simplicial operators")
  }

  /// Objects modulo level-0 morphisms.
  pub fn pi0(&self) -> (Vec<usize>, usize) {
    self.levels[0].components()
  }

  /// `θ^*` on a string in level `θ.target()`: restrict the string, then move its cells down.
  pub fn act_string(&self, theta: &OrdinalMap, s: &NerveSimplex) -> NerveSimplex {
    let t = self.levels[theta.target()].act(theta, s);
    NerveSimplex { objs: t.objs, mors: t.mors.iter().map(|&m| self.act(theta, m)).collect() }
  }

  /// The diagonal `dB` of the nerve, with simplices labelled by strings in the matching level.
  pub fn db(&self) -> Labelled<NerveSimplex> {
    let levels = (0..=self.trunc()).map(|n| self.levels[n].strings(n)).collect();
    Labelled::build_with_action(self.trunc(), levels, |t, s| self.act_string(t, s)).expect("dB is simplicial")
  }

  /// The bisimplicial nerve: bidegree `(p, q)` holds strings of `p` composable level-`q` cells.
  pub fn nerve_bisimplicial(&self) -> BisSSet {
    let n = self.trunc();
    let levels = (0..=n).map(|p| (0..=n).map(|q| self.levels[q].strings(p)).collect()).collect();
    BisSSet::build(
      n,
      levels,
      &|_, q, i, s| self.levels[q].act(&OrdinalMap::coface(s.mors.len(), i), s),
      &|_, q, i, s: &NerveSimplex| NerveSimplex {
        objs: s.objs.clone(),
        mors: s.mors.iter().map(|&m| self.face(q, i, m)).collect(),
      },
      &|_, q, j, s| self.levels[q].act(&OrdinalMap::codegeneracy(s.mors.len(), j), s),
      &|_, q, j, s: &NerveSimplex| NerveSimplex {
        objs: s.objs.clone(),
        mors: s.mors.iter().map(|&m| self.mor.degen(q, j, m)).collect(),
      },
    )
    .expect("bisimplicial nerve")
  }

  pub fn to_raw(&self) -> RawSGroupoid {
    RawSGroupoid {
      trunc: self.trunc(),
      objects: self.objects,
      morphisms: self.mor.to_raw(),
      levels: self.levels.clone(),
    }
  }

  pub fn to_json(&self) -> String {
    serde_json::to_string(&self.to_raw()).expect("simplicial groupoid serializes")
  }

  pub fn from_json(s: &str) -> Result<Self> {
    let raw: RawSGroupoid = serde_json::from_str(s)?;
    raw.to_sgroupoid()
  }
}

/// JSON form. Each level is written as a groupoid table; `morphisms` carries the simplicial structure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawSGroupoid {
  pub trunc: usize,
  pub objects: usize,
  pub morphisms: RawSSet,
  pub levels: Vec<FinGroupoid>,
}

impl RawSGroupoid {
  pub fn to_sgroupoid(&self) -> Result<SimpGroupoid> {
    let mor = self.morphisms.to_sset()?;
    if mor.trunc() != self.trunc {
      return Err(Error::Truncation(self.trunc, mor.trunc()));
    }
    let levels = self.levels.iter().map(|g| FinGroupoid::from_json(&g.to_json())).collect::<Result<Vec<_>>>()?;
    if levels.iter().any(|g| g.objects != self.objects) {
      return Err(Error::Invalid("levels disagree with the object count".into()));
    }
    SimpGroupoid::new(levels, mor)
  }
}

/// A simplicial functor: a map on objects and a levelwise map on cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SgdFunctor {
  pub on_objects: Vec<usize>,
  pub on_cells: SSetMap,
}

impl SgdFunctor {
  pub fn identity(h: &SimpGroupoid) -> Self {
    Self { on_objects: (0..h.objects()).collect(), on_cells: SSetMap::identity(h.mor()) }
  }

  pub fn check(&self, a: &SimpGroupoid, b: &SimpGroupoid) -> Result<()> {
    self.on_cells.check(a.mor(), b.mor())?;
    for n in 0..=a.trunc() {
      GroupoidFunctor { on_objects: self.on_objects.clone(), on_morphisms: self.on_cells.map[n].clone() }
        .check(a.level(n), b.level(n))
        .map_err(|e| Error::Invalid(format!("level {n}: {e}")))?;
    }
    Ok(())
  }

  pub fn then(&self, other: &SgdFunctor) -> SgdFunctor {
    SgdFunctor {
      on_objects: self.on_objects.iter().map(|&o| other.on_objects[o]).collect(),
      on_cells: self.on_cells.then(&other.on_cells),
    }
  }

  /// The induced map `dB(A) → dB(B)`.
  pub fn on_db(&self, a: &Labelled<NerveSimplex>, b: &Labelled<NerveSimplex>) -> Result<SSetMap> {
    a.map_to(b, |n, s| NerveSimplex {
      objs: s.objs.iter().map(|&o| self.on_objects[o]).collect(),
      mors: s.mors.iter().map(|&m| self.on_cells.map[n][m]).collect(),
    })
  }
}

/// The pullback `A ×_C B` of two simplicial functors, with its projections.
pub fn pullback(
  a: &SimpGroupoid,
  f: &SgdFunctor,
  b: &SimpGroupoid,
  g: &SgdFunctor,
) -> Result<(SimpGroupoid, SgdFunctor, SgdFunctor)> {
  let trunc = a.trunc();
  let objs: Vec<(usize, usize)> = (0..a.objects())
    .flat_map(|x| (0..b.objects()).map(move |y| (x, y)))
    .filter(|&(x, y)| f.on_objects[x] == g.on_objects[y])
    .collect();
  let oid = |p: (usize, usize)| objs.binary_search(&p).expect("object of the pullback");
  let cells: Vec<Vec<(usize, usize)>> = (0..=trunc)
    .map(|n| {
      (0..a.mor().count(n))
        .flat_map(|x| (0..b.mor().count(n)).map(move |y| (x, y)))
        .filter(|&(x, y)| f.on_cells.map[n][x] == g.on_cells.map[n][y])
        .filter(|&(x, y)| {
          oid_opt(&objs, (a.level(n).src[x], b.level(n).src[y])).is_some()
            && oid_opt(&objs, (a.level(n).dst[x], b.level(n).dst[y])).is_some()
        })
        .collect()
    })
    .collect();
  // Cells carry their level so the closures below can find the right groupoid.
  let tagged: Vec<Vec<(usize, usize, usize)>> =
    cells.iter().enumerate().map(|(n, l)| l.iter().map(|&(x, y)| (n, x, y)).collect()).collect();
  let (p, lab) = SimpGroupoid::from_labels(
    trunc,
    objs.len(),
    tagged,
    |&(n, x, y)| oid((a.level(n).src[x], b.level(n).src[y])),
    |&(n, x, y)| oid((a.level(n).dst[x], b.level(n).dst[y])),
    |n, o| (n, a.level(n).identity[objs[o].0], b.level(n).identity[objs[o].1]),
    |n, &(_, x2, y2), &(_, x1, y1)| (n, a.level(n).comp(x2, x1), b.level(n).comp(y2, y1)),
    |n, &(_, x, y)| (n, a.level(n).inverse[x], b.level(n).inverse[y]),
    |t, &(_, x, y)| (t.source(), a.act(t, x), b.act(t, y)),
  )?;
  let pa = SgdFunctor {
    on_objects: objs.iter().map(|o| o.0).collect(),
    on_cells: lab.map_to_ids(a.mor(), |_, &(_, x, _)| x)?,
  };
  let pb = SgdFunctor {
    on_objects: objs.iter().map(|o| o.1).collect(),
    on_cells: lab.map_to_ids(b.mor(), |_, &(_, _, y)| y)?,
  };
  Ok((p, pa, pb))
}

fn oid_opt(objs: &[(usize, usize)], p: (usize, usize)) -> Option<usize> {
  objs.binary_search(&p).ok()
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homotopy::{pi0 as sset_pi0, GroupTable};

  fn z2() -> SimpGroupoid {
    SimpGroupoid::constant(&FinGroupoid::cyclic(2), 3)
  }

  #[test]
  fn db_of_constant_z2() {
    let h = z2();
    let db = h.db();
    assert_eq!(db.sset.counts(), &[1, 2, 4, 8]);
    assert!(db.sset.validate().is_pass());
    assert_eq!(db.sset, h.nerve_bisimplicial().diagonal());
  }

  #[test]
  fn bisimplicial_nerve_validates() {
    let (h, _) = SimpGroupoid::from_2groupoid(&Fin2Groupoid::double_suspension(&GroupTable::cyclic(2)), 3);
    let b = h.nerve_bisimplicial();
    assert!(b.validate().is_pass());
    assert_eq!(b.diagonal(), h.db().sset);
  }

  #[test]
  fn double_suspension_homs_are_a_nerve() {
    let (h, _) = SimpGroupoid::from_2groupoid(&Fin2Groupoid::double_suspension(&GroupTable::cyclic(2)), 4);
    let (hom, _) = h.hom(0, 0);
    assert_eq!(hom.counts(), &[1, 2, 4, 8, 16]);
  }

  #[test]
  fn discrete_2cells_give_the_constant_groupoid() {
    let g = FinGroupoid::codiscrete(2);
    let (h, _) = SimpGroupoid::from_2groupoid(&Fin2Groupoid::from_groupoid(&g), 3);
    for n in 0..=3 {
      assert_eq!(h.level(n).morphisms(), 4);
    }
    assert_eq!(h.db().sset.counts(), g.nerve(3).sset.counts());
  }

  #[test]
  fn components_agree_with_db() {
    let h = SimpGroupoid::disjoint_union(&[&z2(), &z2()]).unwrap();
    assert_eq!(h.pi0().1, 2);
    assert_eq!(sset_pi0(&h.db().sset).count, 2);
  }

  #[test]
  fn pullback_along_identity() {
    let h = z2();
    let id = SgdFunctor::identity(&h);
    let (p, pa, _) = pullback(&h, &id, &h, &id).unwrap();
    assert_eq!(p.mor().counts(), h.mor().counts());
    assert!(pa.on_cells.is_bijective(h.mor()));
  }

  #[test]
  fn json_round_trip() {
    let (h, _) = SimpGroupoid::from_2groupoid(&Fin2Groupoid::double_suspension(&GroupTable::cyclic(2)), 2);
    let s = h.to_json();
    let k = SimpGroupoid::from_json(&s).unwrap();
    assert_eq!(h, k);
    assert_eq!(s, k.to_json());
  }
}

//! Homotopy colimits of simplicial functors on simplicial groupoids, 2-groupoid homotopy
//! colimits, comma objects, the maps `α, β` and their homotopy through the poset join, and
//! the homotopy-fibre comparison.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{Fin2Groupoid, FinGroupoid, NerveSimplex};
use crate::homotopy::{weq_check, WeqVerdict};
use crate::kan::{fibration_check, KanVerdict};
use crate::ordinal::{OrdinalMap, PosetJoin};
use crate::sgroupoid::{SgdFunctor, SimpGroupoid};
use crate::sset::{product, standard_simplex, Labelled, SSetMap, TruncSSet};
use crate::wbar::Cocycle;

/// A simplicial functor `C → S`: a simplicial set for each object and, in each level `m`,
/// the action of every level-`m` cell on `m`-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFunctor {
  pub values: Vec<TruncSSet>,
  /// `act[m][cell][x]` for `x` an `m`-simplex over the source of `cell`.
  pub act: Vec<Vec<Vec<usize>>>,
}

impl SFunctor {
  pub fn from_fn(c: &SimpGroupoid, values: Vec<TruncSSet>, f: impl Fn(usize, usize, usize) -> usize) -> Self {
    let act = (0..=c.trunc())
      .map(|m| {
        (0..c.mor().count(m)).map(|g| (0..values[c.level(m).src[g]].count(m)).map(|x| f(m, g, x)).collect()).collect()
      })
      .collect();
    Self { values, act }
  }

  /// Every object goes to `x` and every cell acts trivially.
  pub fn constant(c: &SimpGroupoid, x: &TruncSSet) -> Self {
    Self::from_fn(c, vec![x.clone(); c.objects()], |_, _, x| x)
  }

  pub fn point(c: &SimpGroupoid) -> Self {
    Self::constant(c, &TruncSSet::point(c.trunc()))
  }

  /// `u ↦ C(a, u)` with cells acting by postcomposition.
  pub fn corepresented(c: &SimpGroupoid, a: usize) -> Self {
    let homs: Vec<(TruncSSet, Vec<Vec<usize>>)> = (0..c.objects()).map(|u| c.hom(a, u)).collect();
    let values = homs.iter().map(|h| h.0.clone()).collect();
    Self::from_fn(c, values, |m, g, x| {
      let lvl = c.level(m);
      let cell = lvl.comp(g, homs[lvl.src[g]].1[m][x]);
      homs[lvl.dst[g]].1[m].binary_search(&cell).expect("composite lies in the hom")
    })
  }

  pub fn check(&self, c: &SimpGroupoid) -> Result<()> {
    let bad = |msg: String| Err(Error::Invalid(msg));
    if self.values.len() != c.objects() || self.values.iter().any(|v| v.trunc() != c.trunc()) {
      return bad("functor values do not match the objects".into());
    }
    for m in 0..=c.trunc() {
      let lvl = c.level(m);
      for g in 0..lvl.morphisms() {
        let (a, b) = (lvl.src[g], lvl.dst[g]);
        let t = &self.act[m][g];
        if t.len() != self.values[a].count(m) || t.iter().any(|&y| y >= self.values[b].count(m)) {
          return bad(format!("cell {g} in level {m} has a malformed action"));
        }
        if m >= 1 {
          for i in 0..=m {
            let dg = c.face(m, i, g);
            for x in 0..t.len() {
              if self.values[b].face(m, i, t[x]) != self.act[m - 1][dg][self.values[a].face(m, i, x)] {
                return bad(format!("action of cell {g} in level {m} does not commute with d_{i}"));
              }
            }
          }
        }
        if m < c.trunc() {
          for j in 0..=m {
            let sg = c.mor().degen(m, j, g);
            for x in 0..t.len() {
              if self.values[b].degen(m, j, t[x]) != self.act[m + 1][sg][self.values[a].degen(m, j, x)] {
                return bad(format!("action of cell {g} in level {m} does not commute with s_{j}"));
              }
            }
          }
        }
      }
      for o in 0..c.objects() {
        if self.act[m][lvl.identity[o]].iter().enumerate().any(|(x, &y)| x != y) {
          return bad(format!("identity of object {o} acts nontrivially in level {m}"));
        }
      }
      for &(g, f, gf) in &lvl.compose {
        if (0..self.act[m][f].len()).any(|x| self.act[m][gf][x] != self.act[m][g][self.act[m][f][x]]) {
          return bad(format!("action does not respect the composite {g} ∘ {f} in level {m}"));
        }
      }
    }
    Ok(())
  }

  /// The map `X(a) → X(b)` induced by a level-0 cell, degenerated into every level.
  pub fn arrow_map(&self, c: &SimpGroupoid, g: usize) -> SSetMap {
    let a = c.level(0).src[g];
    SSetMap::new_unchecked(
      (0..=c.trunc())
        .map(|m| (0..self.values[a].count(m)).map(|x| self.act[m][c.mor().degenerate_vertex(g, m)][x]).collect())
        .collect(),
    )
  }
}

/// A simplex of `holim_C X`: a point over `objs[0]` and a string of cells in the same level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HolimSimplex {
  pub x: usize,
  pub s: NerveSimplex,
}

#[derive(Clone, Debug)]
pub struct Holim {
  pub labels: Labelled<HolimSimplex>,
  pub db: Labelled<NerveSimplex>,
  /// `d(π): holim_C X → dBC`.
  pub projection: SSetMap,
}

impl Holim {
  pub fn sset(&self) -> &TruncSSet {
    &self.labels.sset
  }
}

/// `holim_C X = d(BE_C X)`, the diagonal of the nerve of the translation simplicial category.
pub fn holim(c: &SimpGroupoid, x: &SFunctor) -> Holim {
  let levels = (0..=c.trunc())
    .map(|n| {
      c.level(n)
        .strings(n)
        .into_iter()
        .flat_map(|s| (0..x.values[s.objs[0]].count(n)).map(move |p| HolimSimplex { x: p, s: s.clone() }))
        .collect()
    })
    .collect();
  let labels = Labelled::build_with_action(c.trunc(), levels, |t, h: &HolimSimplex| {
    let n = t.target();
    let m = t.source();
    let moved = c.act(t, c.level(n).composite(&h.s, 0, t.apply(0)));
    HolimSimplex { x: x.act[m][moved][x.values[h.s.objs[0]].act(t, h.x)], s: c.act_string(t, &h.s) }
  })
  .expect("homotopy colimit is simplicial");
  let db = c.db();
  let projection = labels.map_to(&db, |_, h| h.s.clone()).expect("projection to dBC");
  Holim { labels, db, projection }
}

/// A 2-functor from a 2-groupoid to sets. 2-cells act trivially, so parallel 1-cells related by
/// a 2-cell must act equally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetTwoFunctor {
  pub sets: Vec<usize>,
  /// `act[f][x]` for a 1-cell `f`.
  pub act: Vec<Vec<usize>>,
}

impl SetTwoFunctor {
  pub fn point(g: &FinGroupoid) -> Self {
    Self { sets: vec![1; g.objects], act: vec![vec![0]; g.morphisms()] }
  }

  pub fn check_groupoid(&self, g: &FinGroupoid) -> Result<()> {
    for f in 0..g.morphisms() {
      let t = &self.act[f];
      if t.len() != self.sets[g.src[f]] || t.iter().any(|&y| y >= self.sets[g.dst[f]]) {
        return Err(Error::Invalid(format!("1-cell {f} has a malformed action")));
      }
    }
    for o in 0..g.objects {
      if self.act[g.identity[o]].iter().enumerate().any(|(x, &y)| x != y) {
        return Err(Error::Invalid(format!("identity of {o} acts nontrivially")));
      }
    }
    for &(b, a, ba) in &g.compose {
      if (0..self.sets[g.src[a]]).any(|x| self.act[ba][x] != self.act[b][self.act[a][x]]) {
        return Err(Error::Invalid(format!("action does not respect {b} ∘ {a}")));
      }
    }
    Ok(())
  }

  pub fn check(&self, g: &Fin2Groupoid) -> Result<()> {
    self.check_groupoid(&g.cells1)?;
    for a in 0..g.cells2.morphisms() {
      if self.act[g.src2(a)] != self.act[g.dst2(a)] {
        return Err(Error::Invalid(format!("2-cell {a} joins 1-cells acting differently")));
      }
    }
    Ok(())
  }
}

/// The translation groupoid of a set-valued functor: objects `(a, x)`, morphisms `(f, x)`
/// from `(src f, x)` to `(dst f, f·x)`. Returns the groupoid and its object labels.
pub fn translation_groupoid(g: &FinGroupoid, x: &SetTwoFunctor) -> (FinGroupoid, Vec<(usize, usize)>) {
  let objs: Vec<(usize, usize)> = (0..g.objects).flat_map(|a| (0..x.sets[a]).map(move |p| (a, p))).collect();
  let oid = |o: (usize, usize)| objs.binary_search(&o).expect("object of the translation groupoid");
  let mors: Vec<(usize, usize)> = (0..g.morphisms()).flat_map(|f| (0..x.sets[g.src[f]]).map(move |p| (f, p))).collect();
  let mid = |m: (usize, usize)| mors.binary_search(&m).expect("morphism of the translation groupoid");
  let src = mors.iter().map(|&(f, p)| oid((g.src[f], p))).collect();
  let dst = mors.iter().map(|&(f, p)| oid((g.dst[f], x.act[f][p]))).collect();
  let identity = objs.iter().map(|&(a, p)| mid((g.identity[a], p))).collect();
  let inverse = mors.iter().map(|&(f, p)| mid((g.inverse[f], x.act[f][p]))).collect();
  let t = FinGroupoid::from_fn(objs.len(), src, dst, identity, inverse, |b, a| {
    mid((g.comp(mors[b].0, mors[a].0), mors[a].1))
  })
  .expect("translation groupoid");
  (t, objs)
}

/// `holim` of a set-valued 2-functor on a 2-groupoid: an `n`-simplex is a point of `X(a_0)`
/// together with cells of `BG(a_0,a_1)_0 × BG(a_1,a_2)_1 × ⋯ × BG(a_{n-1},a_n)_{n-1}`.
/// Internally the cells are stored as a cocycle of `W̄(BG)` read from the bottom, so
/// `(x, c)` has `x` over `c.objs[n]`.
#[derive(Clone, Debug)]
pub struct Holim2 {
  pub bg: SimpGroupoid,
  pub bg_cells: Labelled<NerveSimplex>,
  pub labels: Labelled<(usize, Cocycle)>,
}

impl Holim2 {
  pub fn sset(&self) -> &TruncSSet {
    &self.labels.sset
  }

  /// The same simplex in the displayed order: `(x, [a_0..a_n], [c_1..c_n])` with `c_k` a level
  /// `k-1` cell `a_{k-1} → a_k`.
  pub fn display(&self, n: usize, id: usize) -> (usize, Vec<usize>, Vec<usize>) {
    let (x, c) = self.labels.label(n, id);
    (*x, c.objs.iter().rev().copied().collect(), c.arrows.iter().rev().copied().collect())
  }
}

pub fn holim_2gpd(g: &Fin2Groupoid, x: &SetTwoFunctor, trunc: usize) -> Result<Holim2> {
  x.check(g)?;
  let (bg, bg_cells) = SimpGroupoid::from_2groupoid(g, trunc);
  let levels = (0..=trunc)
    .map(|n| bg.cocycles(n).into_iter().flat_map(|c| (0..x.sets[c.objs[n]]).map(move |p| (p, c.clone()))).collect())
    .collect();
  let labels = Labelled::build_with_action(trunc, levels, |t, (p, c): &(usize, Cocycle)| {
    let cell = bg.cocycle_composite(c, t.target(), t.apply(t.source()));
    let one_cell = bg_cells.label(0, cell).objs[0];
    (x.act[one_cell][*p], bg.act_cocycle(t, c))
  })?;
  Ok(Holim2 { bg, bg_cells, labels })
}

/// The functor `u ↦ H(f u, a)` on `U`, cells acting by precomposition with inverses; its
/// homotopy colimit is `dB(f ↓ a)`.
pub fn comma_functor(u: &SimpGroupoid, h: &SimpGroupoid, f: &SgdFunctor, a: usize) -> SFunctor {
  let homs: Vec<(TruncSSet, Vec<Vec<usize>>)> = (0..u.objects()).map(|o| h.hom(f.on_objects[o], a)).collect();
  SFunctor::from_fn(u, homs.iter().map(|p| p.0.clone()).collect(), |m, g, x| {
    let (s, d) = (u.level(m).src[g], u.level(m).dst[g]);
    let fg_inv = h.level(m).inverse[f.on_cells.map[m][g]];
    let cell = h.level(m).comp(homs[s].1[m][x], fg_inv);
    homs[d].1[m].binary_search(&cell).expect("composite lies in the hom")
  })
}

/// `dB(f ↓ a)` with its labels: a simplex is a cell `f(objs[0]) → a` and a string in `U`.
pub fn comma(u: &SimpGroupoid, h: &SimpGroupoid, f: &SgdFunctor, a: usize) -> Result<Holim> {
  f.check(u, h)?;
  Ok(holim(u, &comma_functor(u, h, f, a)))
}

/// The comma 2-groupoid `G ↓ x0`: objects `(y, f: y → x0)`, 1-cells `(g, α: f ⇒ f'∘g)`, and
/// 2-cells `β: g ⇒ g'` with `α' = (f' * β)·α`.
pub fn comma_2gpd(g: &Fin2Groupoid, x0: usize) -> Result<Fin2Groupoid> {
  let (c1, c2) = (&g.cells1, &g.cells2);
  let objs: Vec<(usize, usize)> = (0..c1.morphisms()).filter(|&f| c1.dst[f] == x0).map(|f| (c1.src[f], f)).collect();
  let mut cells: Vec<(usize, usize, usize, usize)> = Vec::new();
  for (i, &(y, f)) in objs.iter().enumerate() {
    for (j, &(y2, f2)) in objs.iter().enumerate() {
      for k in c1.hom(y, y2) {
        for al in c2.hom(f, c1.comp(f2, k)) {
          cells.push((i, j, k, al));
        }
      }
    }
  }
  let cid = |c: (usize, usize, usize, usize)| cells.iter().position(|&d| d == c);
  let comp1 = |b: usize, a: usize| -> usize {
    let ((i, _, k, al), (_, l, h, ga)) = (cells[a], cells[b]);
    cid((i, l, c1.comp(h, k), c2.comp(g.hcomp2(ga, c2.identity[k]), al))).expect("composite 1-cell of the comma")
  };
  let src1: Vec<usize> = cells.iter().map(|c| c.0).collect();
  let dst1: Vec<usize> = cells.iter().map(|c| c.1).collect();
  let id1: Vec<usize> =
    objs.iter().enumerate().map(|(i, &(y, f))| cid((i, i, c1.identity[y], c2.identity[f])).unwrap()).collect();
  let inv1: Vec<usize> = (0..cells.len())
    .map(|a| {
      (0..cells.len())
        .find(|&b| src1[b] == dst1[a] && dst1[b] == src1[a] && comp1(b, a) == id1[src1[a]])
        .expect("1-cells of the comma are invertible")
    })
    .collect();
  let cells1 = FinGroupoid::from_fn(objs.len(), src1, dst1, id1, inv1, comp1)?;

  let mut twos: Vec<(usize, usize, usize)> = Vec::new();
  for (p, &(_, j, k, al)) in cells.iter().enumerate() {
    for (q, &(i2, j2, k2, al2)) in cells.iter().enumerate() {
      if (i2, j2) != (cells[p].0, j) {
        continue;
      }
      let f2 = objs[j].1;
      for b in c2.hom(k, k2) {
        if c2.comp(g.hcomp2(c2.identity[f2], b), al) == al2 {
          twos.push((p, q, b));
        }
      }
    }
  }
  let tid = |t: (usize, usize, usize)| twos.iter().position(|&u| u == t).expect("2-cell of the comma");
  let cells2 = FinGroupoid::from_fn(
    cells.len(),
    twos.iter().map(|t| t.0).collect(),
    twos.iter().map(|t| t.1).collect(),
    (0..cells.len()).map(|p| tid((p, p, c2.identity[cells[p].2]))).collect(),
    twos.iter().map(|&(p, q, b)| tid((q, p, c2.inverse[b]))).collect(),
    |b, a| tid((twos[a].0, twos[b].1, c2.comp(twos[b].2, twos[a].2))),
  )?;
  let mut hcomp = Vec::new();
  for (bi, &(p, q, b)) in twos.iter().enumerate() {
    for (ai, &(r, s, a)) in twos.iter().enumerate() {
      if cells[r].1 == cells[p].0 {
        hcomp.push((bi, ai, tid((cells1.comp(p, r), cells1.comp(q, s), g.hcomp2(b, a)))));
      }
    }
  }
  Fin2Groupoid::new(cells1, cells2, hcomp)
}

/// `holim_G dB(G ↓ –)` presented by functors on the poset join, the maps `α, β` to `dBG`
/// induced by the left and right inclusions, and the homotopy `H` assembled from `h_n`.
#[derive(Clone, Debug)]
pub struct AlphaBeta {
  /// `n`-simplices: strings of `2n+1` cells in level `n`.
  pub join: Labelled<NerveSimplex>,
  pub db: Labelled<NerveSimplex>,
  pub alpha: SSetMap,
  pub beta: SSetMap,
  pub cylinder: Labelled<(usize, usize)>,
  pub homotopy: SSetMap,
  pub ends: [SSetMap; 2],
}

fn inclusion(n: usize, offset: usize) -> OrdinalMap {
  OrdinalMap::new(2 * n + 1, (0..=n).map(|i| i + offset).collect()).expect("monotone inclusion")
}

pub fn join_holim(g: &SimpGroupoid) -> Labelled<NerveSimplex> {
  let levels = (0..=g.trunc()).map(|n| g.level(n).strings(2 * n + 1)).collect();
  Labelled::build_with_action(g.trunc(), levels, |t, s| {
    let r = g.level(t.target()).act(&PosetJoin::join_map(t), s);
    NerveSimplex { objs: r.objs, mors: r.mors.iter().map(|&c| g.act(t, c)).collect() }
  })
  .expect("join presentation is simplicial")
}

pub fn alpha_beta(g: &SimpGroupoid) -> Result<AlphaBeta> {
  let trunc = g.trunc();
  let join = join_holim(g);
  let db = g.db();
  let along = |offset: fn(usize) -> usize| join.map_to(&db, move |n, s| g.level(n).act(&inclusion(n, offset(n)), s));
  let alpha = along(|_| 0)?;
  let beta = along(|n| n + 1)?;
  let d1 = standard_simplex(1, trunc);
  let cylinder = product(&join.sset, &d1.sset)?;
  let homotopy = cylinder.map_to(&db, |n, &(s, e)| {
    let eps = OrdinalMap::new(1, d1.label(n, e).clone()).expect("Δ^1 simplex");
    g.level(n).act(&PosetJoin::new(n).h_along(&eps), join.label(n, s))
  })?;
  let end = |e: usize| {
    SSetMap::new_unchecked(
      (0..=trunc)
        .map(|n| {
          (0..join.sset.count(n))
            .map(|s| cylinder.id_of(n, &(s, d1.id_of(n, &vec![e; n + 1]).unwrap())).unwrap())
            .collect()
        })
        .collect(),
    )
  };
  let ends = [end(0), end(1)];
  Ok(AlphaBeta { join, db, alpha, beta, cylinder, homotopy, ends })
}

impl AlphaBeta {
  /// `H` restricted to the two ends equals `α` and `β` exactly.
  pub fn ends_agree(&self) -> bool {
    self.ends[0].then(&self.homotopy) == self.alpha && self.ends[1].then(&self.homotopy) == self.beta
  }

  /// Naturality of `H` under a functor `f: G → G'`.
  pub fn natural(&self, other: &AlphaBeta, f: &SgdFunctor) -> Result<bool> {
    let fj = self.join.map_to(&other.join, |n, s| apply_functor(f, n, s))?;
    let fd = self.db.map_to(&other.db, |n, s| apply_functor(f, n, s))?;
    let fcyl = self.cylinder.map_to(&other.cylinder, |n, &(s, e)| (fj.apply(n, s), e))?;
    Ok(fcyl.then(&other.homotopy) == self.homotopy.then(&fd) && fj.then(&other.alpha) == self.alpha.then(&fd))
  }
}

fn apply_functor(f: &SgdFunctor, n: usize, s: &NerveSimplex) -> NerveSimplex {
  NerveSimplex {
    objs: s.objs.iter().map(|&o| f.on_objects[o]).collect(),
    mors: s.mors.iter().map(|&m| f.on_cells.map[n][m]).collect(),
  }
}

#[derive(Clone, Debug, Serialize)]
pub struct FibreReport {
  pub object: usize,
  pub fibration: KanVerdict,
  /// The literal fibre over the vertex `a` equals `X(a)` simplex for simplex.
  pub fibre_is_value: bool,
  pub fibre_counts: Vec<usize>,
  /// For each object `b` in the component of `a`, the comparison `X(a) → F_b` through a level-0 cell.
  pub comparisons: Vec<(usize, WeqVerdict)>,
  pub trunc: usize,
}

impl FibreReport {
  pub fn is_pass(&self) -> bool {
    self.fibration.is_pass() && self.fibre_is_value && self.comparisons.iter().all(|(_, v)| v.is_pass())
  }
}

/// The literal fibre of `d(π)` over the vertex of `b`, and the inclusion of `X(b)` into it.
fn fibre(c: &SimpGroupoid, x: &SFunctor, h: &Holim, b: usize) -> (TruncSSet, Vec<Vec<usize>>, SSetMap) {
  let vb = h.db.id_of(0, &NerveSimplex { objs: vec![b], mors: vec![] }).expect("vertex of dBC");
  let keep: Vec<Vec<bool>> = (0..=c.trunc())
    .map(|n| (0..h.sset().count(n)).map(|s| h.projection.apply(n, s) == h.db.sset.degenerate_vertex(vb, n)).collect())
    .collect();
  let (f, ids) = h.sset().restrict(&keep).expect("fibres are subcomplexes");
  let incl = SSetMap::new_unchecked(
    (0..=c.trunc())
      .map(|n| {
        let s = NerveSimplex { objs: vec![b; n + 1], mors: vec![c.level(n).identity[b]; n] };
        (0..x.values[b].count(n))
          .map(|p| {
            let id = h.labels.id_of(n, &HolimSimplex { x: p, s: s.clone() }).expect("constant simplex");
            ids[n].binary_search(&id).expect("lies in the fibre")
          })
          .collect()
      })
      .collect(),
  );
  (f, ids, incl)
}

/// Fibration check of `d(π)`, the literal fibre over `a`, and comparisons into the fibres over
/// the other objects of the component of `a`. All checks are up to the truncation.
pub fn homotopy_fibre_check(c: &SimpGroupoid, x: &SFunctor, a: usize, maxdeg: usize) -> Result<FibreReport> {
  x.check(c)?;
  for g in 0..c.level(0).morphisms() {
    let (s, d) = (c.level(0).src[g], c.level(0).dst[g]);
    let m = x.arrow_map(c, g);
    m.check(&x.values[s], &x.values[d])?;
    if !m.is_bijective(&x.values[d]) {
      return Err(Error::Precondition(format!("level-0 arrow {g}: {s} → {d} does not act invertibly")));
    }
  }
  let h = holim(c, x);
  let fibration = fibration_check(h.sset(), &h.db.sset, &h.projection, maxdeg + 1);
  let (fa, _, incl) = fibre(c, x, &h, a);
  let fibre_is_value = incl.check(&x.values[a], &fa).is_ok() && incl.is_bijective(&fa);
  let (comp, _) = c.pi0();
  let mut comparisons = Vec::new();
  for b in (0..c.objects()).filter(|&b| comp[b] == comp[a]) {
    let g = c.level(0).hom(a, b)[0];
    let (fb, _, incl_b) = fibre(c, x, &h, b);
    let map = x.arrow_map(c, g).then(&incl_b);
    comparisons.push((b, weq_check(&x.values[a], &fb, &map, maxdeg)?));
  }
  Ok(FibreReport {
    object: a,
    fibration,
    fibre_is_value,
    fibre_counts: fa.counts().to_vec(),
    comparisons,
    trunc: c.trunc(),
  })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homotopy::{contractible, pi0, GroupTable};

  fn z2(n: usize) -> SimpGroupoid {
    SimpGroupoid::constant(&FinGroupoid::cyclic(2), n)
  }

  fn interval(n: usize) -> SimpGroupoid {
    SimpGroupoid::constant(&FinGroupoid::codiscrete(2), n)
  }

  #[test]
  fn point_functor_gives_db() {
    for c in
      [z2(3), interval(3), SimpGroupoid::from_2groupoid(&Fin2Groupoid::double_suspension(&GroupTable::cyclic(2)), 3).0]
    {
      let h = holim(&c, &SFunctor::point(&c));
      assert_eq!(h.sset().counts(), h.db.sset.counts());
      assert!(h.projection.is_bijective(&h.db.sset));
    }
  }

  #[test]
  fn free_transitive_action_is_contractible() {
    let c = z2(4);
    let x = SFunctor::corepresented(&c, 0);
    x.check(&c).unwrap();
    let h = holim(&c, &x);
    assert!(contractible(h.sset(), 2).unwrap().is_pass());
  }

  #[test]
  fn disjoint_points_components() {
    let c = SimpGroupoid::constant(&FinGroupoid::discrete(2), 3);
    let h = holim(&c, &SFunctor::point(&c));
    assert_eq!(pi0(h.sset()).count, 2);
    let i = interval(3);
    let h = holim(&i, &SFunctor::point(&i));
    assert_eq!(pi0(h.sset()).count, 1);
  }

  #[test]
  fn holim_2gpd_matches_translation_nerve_and_holim() {
    let g = FinGroupoid::codiscrete(2);
    let x = SetTwoFunctor {
      sets: vec![2, 2],
      act: (0..4).map(|m| if m == 1 || m == 2 { vec![1, 0] } else { vec![0, 1] }).collect(),
    };
    x.check_groupoid(&g).unwrap();
    let h2 = holim_2gpd(&Fin2Groupoid::from_groupoid(&g), &x, 3).unwrap();
    let (t, _) = translation_groupoid(&g, &x);
    assert_eq!(h2.sset().counts(), t.nerve(3).sset.counts());
    let c = SimpGroupoid::constant(&g, 3);
    let xs = SFunctor::from_fn(&c, vec![TruncSSet::discrete(2, 3); 2], |_, m, p| x.act[m][p]);
    assert_eq!(holim(&c, &xs).sset().counts(), h2.sset().counts());
  }

  #[test]
  fn holim_2gpd_point_is_wbar() {
    let g = Fin2Groupoid::double_suspension(&GroupTable::cyclic(2));
    let h2 = holim_2gpd(&g, &SetTwoFunctor::point(&g.cells1), 3).unwrap();
    assert_eq!(h2.sset().counts(), h2.bg.wbar().sset.counts());
    let (x, objs, cells) = h2.display(2, 0);
    assert_eq!((x, objs.len(), cells.len()), (0, 3, 2));
  }

  #[test]
  fn comma_of_identity_is_contractible() {
    for c in [z2(4), interval(4)] {
      let h = comma(&c, &c, &SgdFunctor::identity(&c), 0).unwrap();
      assert!(contractible(h.sset(), 2).unwrap().is_pass());
    }
    let empty = SimpGroupoid::constant(&FinGroupoid::discrete(0), 3);
    let f = SgdFunctor { on_objects: vec![], on_cells: SSetMap::new_unchecked(vec![vec![]; 4]) };
    assert_eq!(comma(&empty, &z2(3), &f, 0).unwrap().sset().count(0), 0);
  }

  #[test]
  fn comma_2gpd_wbar_contractible() {
    let g = Fin2Groupoid::double_suspension(&GroupTable::cyclic(2));
    let c = comma_2gpd(&g, 0).unwrap();
    let (b, _) = SimpGroupoid::from_2groupoid(&c, 4);
    assert!(contractible(&b.wbar().sset, 2).unwrap().is_pass());
  }

  #[test]
  fn alpha_beta_homotopy() {
    for g in [z2(3), interval(3)] {
      let ab = alpha_beta(&g).unwrap();
      assert!(ab.homotopy.check(&ab.cylinder.sset, &ab.db.sset).is_ok());
      assert!(ab.ends_agree());
    }
  }

  #[test]
  fn alpha_beta_natural_under_functors() {
    let (i, z) = (interval(3), z2(3));
    let (abi, abz) = (alpha_beta(&i).unwrap(), alpha_beta(&z).unwrap());
    let swap = SgdFunctor { on_objects: vec![1, 0], on_cells: SSetMap::new_unchecked(vec![vec![3, 2, 1, 0]; 4]) };
    swap.check(&i, &i).unwrap();
    assert!(abi.natural(&abi, &swap).unwrap());
    let collapse = SgdFunctor { on_objects: vec![0, 0], on_cells: SSetMap::new_unchecked(vec![vec![0; 4]; 4]) };
    collapse.check(&i, &z).unwrap();
    assert!(abi.natural(&abz, &collapse).unwrap());
  }

  #[test]
  fn join_presentation_counts_match_holim_of_commas() {
    let g = interval(3);
    let join = join_holim(&g);
    let commas: Vec<Holim> = (0..g.objects()).map(|a| comma(&g, &g, &SgdFunctor::identity(&g), a).unwrap()).collect();
    // a ↦ dB(G ↓ a), cells acting by postcomposition on the first cell
    let family = SFunctor::from_fn(&g, commas.iter().map(|h| h.sset().clone()).collect(), |m, cell, p| {
      let a = g.level(m).src[cell];
      let src = &commas[a];
      let hs = src.labels.label(m, p);
      let (_, ids_from) = g.hom(hs.s.objs[0], a);
      let (_, ids_to) = g.hom(hs.s.objs[0], g.level(m).dst[cell]);
      let moved = g.level(m).comp(cell, ids_from[m][hs.x]);
      let x2 = ids_to[m].binary_search(&moved).unwrap();
      commas[g.level(m).dst[cell]].labels.id_of(m, &HolimSimplex { x: x2, s: hs.s.clone() }).unwrap()
    });
    family.check(&g).unwrap();
    assert_eq!(holim(&g, &family).sset().counts(), join.sset.counts());
  }

  #[test]
  fn fibre_over_a_is_value() {
    let c = z2(3);
    let r = homotopy_fibre_check(&c, &SFunctor::corepresented(&c, 0), 0, 1).unwrap();
    assert!(r.is_pass(), "{r:?}");
    assert_eq!(r.fibre_counts, vec![2, 2, 2, 2]);
    let i = interval(3);
    let x = SFunctor::constant(&i, &FinGroupoid::codiscrete(2).nerve(3).sset);
    let r = homotopy_fibre_check(&i, &x, 0, 1).unwrap();
    assert!(r.is_pass(), "{r:?}");
    assert_eq!(r.comparisons.len(), 2);
  }
}

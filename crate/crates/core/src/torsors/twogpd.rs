//! Torsors for a constant presheaf of 2-groupoids: maps `Y → W̄(BG)` with `Y` the homotopy
//! colimit of a set-valued 2-functor in each section, and the construction `h(f)` from a
//! functor out of a Čech groupoid.

use std::collections::HashMap;

use super::action::{local_contractibility, GroupoidTorsorJT};
use super::sgpd::CechGroupoid;
use super::{Condition, TorsorVerdict};
use crate::error::{Error, Result};
use crate::groupoid::{Fin2Groupoid, FinGroupoid, GroupoidFunctor};
use crate::holim::{holim_2gpd, Holim2, SetTwoFunctor};
use crate::homotopy::UnionFind;
use crate::presheaf::SPresheaf;
use crate::search::MapProblem;
use crate::site::FinSite;
use crate::sset::{Labelled, SSetMap, TruncSSet};
use crate::wbar::Cocycle;

/// A presheaf of set-valued 2-functors on a constant 2-groupoid: `restrict[m][a]` maps
/// `X_d(a) → X_c(a)` for `m: c → d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGpdTorsor {
  pub functors: Vec<SetTwoFunctor>,
  pub restrict: Vec<Vec<Vec<usize>>>,
}

/// `Y → W̄(BG)` sectionwise.
#[derive(Clone, Debug)]
pub struct TwoGpdTotal {
  pub y: SPresheaf,
  pub wbar: SPresheaf,
  pub wbar_labels: Vec<Labelled<Cocycle>>,
  pub map: Vec<SSetMap>,
}

impl TwoGpdTorsor {
  pub fn check(&self, site: &FinSite, g: &Fin2Groupoid) -> Result<()> {
    if self.functors.len() != site.objects() || self.restrict.len() != site.morphisms() {
      return Err(Error::Invalid("2-functor presheaf does not match the site".into()));
    }
    for x in &self.functors {
      x.check(g)?;
    }
    for m in 0..site.morphisms() {
      let (xc, xd, r) = (&self.functors[site.src[m]], &self.functors[site.dst[m]], &self.restrict[m]);
      for a in 0..g.objects {
        if r[a].len() != xd.sets[a] || r[a].iter().any(|&y| y >= xc.sets[a]) {
          return Err(Error::Invalid(format!("restriction along {} is malformed", site.mor_names[m])));
        }
      }
      for f in 0..g.cells1.morphisms() {
        let (a, b) = (g.cells1.src[f], g.cells1.dst[f]);
        if (0..xd.sets[a]).any(|x| r[b][xd.act[f][x]] != xc.act[f][r[a][x]]) {
          return Err(Error::Invalid(format!("restriction along {} is not natural", site.mor_names[m])));
        }
      }
    }
    Ok(())
  }

  /// The 2-functor `a ↦ E_a` of a torsor for the underlying groupoid, with `f: a → b` acting by
  /// `x ↦ x·f⁻¹`. 2-cells must relate 1-cells that act equally.
  pub fn from_jt(site: &FinSite, g: &Fin2Groupoid, t: &GroupoidTorsorJT) -> Result<Self> {
    let g1 = &g.cells1;
    let index: Vec<Vec<Vec<usize>>> = (0..site.objects())
      .map(|c| (0..g.objects).map(|a| (0..t.e.sizes[c]).filter(|&x| t.over[c][x] == a).collect()).collect())
      .collect();
    let functors = (0..site.objects())
      .map(|c| SetTwoFunctor {
        sets: index[c].iter().map(Vec::len).collect(),
        act: (0..g1.morphisms())
          .map(|f| {
            let (a, b) = (g1.src[f], g1.dst[f]);
            index[c][a]
              .iter()
              .map(|&x| {
                let y = t.act[c][x][g1.inverse[f]].expect("action over the target");
                index[c][b].binary_search(&y).expect("lands over the source of the inverse")
              })
              .collect()
          })
          .collect(),
      })
      .collect();
    let restrict = (0..site.morphisms())
      .map(|m| {
        let (c, d) = (site.src[m], site.dst[m]);
        (0..g.objects)
          .map(|a| {
            index[d][a]
              .iter()
              .map(|&x| index[c][a].binary_search(&t.e.restrict[m][x]).expect("restriction keeps the fibre"))
              .collect()
          })
          .collect()
      })
      .collect();
    let out = Self { functors, restrict };
    out.check(site, g)?;
    Ok(out)
  }

  /// `Y = holim X` sectionwise with its projection to `W̄(BG)`.
  pub fn total(&self, site: &FinSite, g: &Fin2Groupoid, trunc: usize) -> Result<(TwoGpdTotal, Vec<Holim2>)> {
    self.check(site, g)?;
    let hs = self.functors.iter().map(|x| holim_2gpd(g, x, trunc)).collect::<Result<Vec<_>>>()?;
    let wl: Vec<Labelled<Cocycle>> = hs.iter().map(|h| h.bg.wbar()).collect();
    let restrict = (0..site.morphisms())
      .map(|m| {
        let (c, d) = (site.src[m], site.dst[m]);
        hs[d]
          .labels
          .map_to(&hs[c].labels, |n, (p, cc): &(usize, Cocycle)| (self.restrict[m][cc.objs[n]][*p], cc.clone()))
      })
      .collect::<Result<Vec<_>>>()?;
    let map =
      (0..site.objects()).map(|c| hs[c].labels.map_to(&wl[c], |_, (_, cc)| cc.clone())).collect::<Result<Vec<_>>>()?;
    let y = SPresheaf { sections: hs.iter().map(|h| h.sset().clone()).collect(), restrict };
    let wrestrict = (0..site.morphisms()).map(|m| SSetMap::identity(&wl[site.dst[m]].sset)).collect();
    let wbar = SPresheaf { sections: wl.iter().map(|l| l.sset.clone()).collect(), restrict: wrestrict };
    Ok((TwoGpdTotal { y, wbar, wbar_labels: wl, map }, hs))
  }
}

/// A natural map `a → b` of presheaves over a common base commuting with the projections.
pub fn over_map(
  site: &FinSite,
  a: &SPresheaf,
  pa: &[SSetMap],
  b: &SPresheaf,
  pb: &[SSetMap],
) -> Result<Option<Vec<SSetMap>>> {
  let mut out = None;
  a.map_problem(b, site).for_each(|f| {
    let ok = (0..site.objects()).all(|c| {
      (0..=a.trunc())
        .all(|n| (0..a.sections[c].count(n)).all(|s| pb[c].apply(n, f[c].apply(n, s)) == pa[c].apply(n, s)))
    });
    if ok {
      out = Some(f.to_vec());
    }
    !ok
  })?;
  Ok(out)
}

fn over_map_single(y: &TruncSSet, p: &SSetMap, z: &TruncSSet, q: &SSetMap) -> Result<Option<SSetMap>> {
  let mut out = None;
  MapProblem::single(y, z).for_each(|f| {
    let ok = (0..=y.trunc()).all(|n| (0..y.count(n)).all(|s| q.apply(n, f[0].apply(n, s)) == p.apply(n, s)));
    if ok && f[0].is_bijective(z) {
      out = Some(f[0].clone());
      return false;
    }
    true
  })?;
  Ok(out)
}

/// Whether `Y → W̄(BG)` is a torsor: in each section `Y` must be isomorphic over `W̄(BG)` to the
/// homotopy colimit of some 2-functor with the fibres of `Y_0` as values, and `Y → ∗` must be a
/// local weak equivalence. At most `limit` 2-functors are tried per section.
pub fn two_gpd_torsor_check(site: &FinSite, g: &Fin2Groupoid, t: &TwoGpdTotal, limit: usize) -> Result<TorsorVerdict> {
  let trunc = t.y.trunc();
  if let Err(e) = t.y.check(site) {
    return Ok(TorsorVerdict::fail(Condition::Functoriality, None, e.to_string()));
  }
  let g1 = &g.cells1;
  for c in 0..site.objects() {
    let (y, p, w) = (&t.y.sections[c], &t.map[c], &t.wbar_labels[c]);
    let sets: Vec<usize> =
      (0..g.objects).map(|a| (0..y.count(0)).filter(|&v| w.label(0, p.apply(0, v)).objs[0] == a).count()).collect();
    let mut found = false;
    let mut tried = 0;
    let mut act: Vec<Vec<usize>> = (0..g1.morphisms()).map(|f| vec![0; sets[g1.src[f]]]).collect();
    // odometer over all assignments of functions to 1-cells
    loop {
      let x = SetTwoFunctor { sets: sets.clone(), act: act.clone() };
      if x.check(g).is_ok() {
        tried += 1;
        if tried > limit {
          return Err(Error::BoundExceeded(format!("more than {limit} 2-functors at {}", site.names[c])));
        }
        let h = holim_2gpd(g, &x, trunc)?;
        let hp = h.labels.map_to(w, |_, (_, cc)| cc.clone())?;
        if over_map_single(y, p, h.sset(), &hp)?.is_some() {
          found = true;
          break;
        }
      }
      if !advance(&mut act, &sets, g1) {
        break;
      }
    }
    if !found {
      return Ok(TorsorVerdict::fail(
        Condition::Shape,
        Some(&site.names[c]),
        "not the homotopy colimit of a 2-functor over W̄(BG)",
      ));
    }
  }
  Ok(match local_contractibility(site, &t.y)? {
    TorsorVerdict::Pass => TorsorVerdict::Pass,
    TorsorVerdict::Fail { object, detail, .. } => {
      TorsorVerdict::Fail { condition: Condition::Equivalence, object, detail }
    }
  })
}

fn advance(act: &mut [Vec<usize>], sets: &[usize], g1: &FinGroupoid) -> bool {
  for (f, row) in act.iter_mut().enumerate() {
    let top = sets[g1.dst[f]];
    for v in row.iter_mut() {
      *v += 1;
      if *v < top {
        return true;
      }
      *v = 0;
    }
  }
  false
}

/// `π₀(f ↓ x)` for every object `x`: pairs `(p, α: f(p) → x)` glued along the cells of `U` and
/// along 2-cells. Returns the 2-functor and the class `(x, index)` of every pair.
fn comma_components(
  g: &Fin2Groupoid,
  u: &FinGroupoid,
  f: &GroupoidFunctor,
) -> (SetTwoFunctor, HashMap<(usize, usize), usize>) {
  let g1 = &g.cells1;
  let (comp2, _) = g.cells2.components();
  let pairs: Vec<(usize, usize)> = (0..u.objects)
    .flat_map(|p| (0..g1.morphisms()).filter(move |&a| g1.src[a] == f.on_objects[p]).map(move |a| (p, a)))
    .collect();
  let pid = |q: (usize, usize)| pairs.binary_search(&q).expect("pair of the comma");
  let mut uf = UnionFind::new(pairs.len());
  for (k, &(p, a)) in pairs.iter().enumerate() {
    // v: p → q in U sends (q, β) to (p, β ∘ f(v)), so (p, α) ~ (q, α ∘ f(v)⁻¹)
    for v in (0..u.morphisms()).filter(|&v| u.src[v] == p) {
      uf.union(k, pid((u.dst[v], g1.comp(a, g1.inverse[f.on_morphisms[v]]))));
    }
    for (l, &(q, b)) in pairs.iter().enumerate() {
      if p == q && comp2[a] == comp2[b] {
        uf.union(k, l);
      }
    }
  }
  let (class, _) = uf.classes();
  let mut reps: Vec<Vec<usize>> = vec![Vec::new(); g.objects];
  let mut number: HashMap<usize, usize> = HashMap::new();
  let mut of = HashMap::new();
  for (k, &(p, a)) in pairs.iter().enumerate() {
    let x = g1.dst[a];
    let id = *number.entry(class[k]).or_insert_with(|| {
      reps[x].push(k);
      reps[x].len() - 1
    });
    of.insert((p, a), id);
  }
  let act = (0..g1.morphisms())
    .map(|h| reps[g1.src[h]].iter().map(|&k| of[&(pairs[k].0, g1.comp(h, pairs[k].1))]).collect())
    .collect();
  (SetTwoFunctor { sets: reps.iter().map(Vec::len).collect(), act }, of)
}

/// `h(f)`: for a natural functor `f: I → G` out of a Čech groupoid, the 2-functor
/// `x ↦ π₀(f ↓ x)`, with 1-cells acting by postcomposition. `I` must be connected in every
/// section; it is codiscrete, so its vertex groups are trivial.
pub fn h_of_f(site: &FinSite, g: &Fin2Groupoid, i: &CechGroupoid, f: &[GroupoidFunctor]) -> Result<TwoGpdTorsor> {
  let mut parts = Vec::new();
  for c in 0..site.objects() {
    let u = i.groupoid.sections[c].level(0);
    if u.objects == 0 || u.components().1 != 1 {
      return Err(Error::Precondition(format!("the Čech groupoid is not connected at {}", site.names[c])));
    }
    parts.push(comma_components(g, u, &f[c]));
  }
  let g1 = &g.cells1;
  let restrict = (0..site.morphisms())
    .map(|m| {
      let (c, d) = (site.src[m], site.dst[m]);
      let im = &i.groupoid.restrict[m].on_objects;
      let mut r: Vec<Vec<usize>> = parts[d].0.sets.iter().map(|&k| vec![usize::MAX; k]).collect();
      for (&(p, a), &id) in &parts[d].1 {
        r[g1.dst[a]][id] = parts[c].1[&(im[p], a)];
      }
      r
    })
    .collect();
  let t = TwoGpdTorsor { functors: parts.into_iter().map(|p| p.0).collect(), restrict };
  t.check(site, g)?;
  Ok(t)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homotopy::GroupTable;
  use crate::presheaf::GroupPresheaf;
  use crate::torsors::{cech_gpd_functors, cech_groupoid, enumerate_jt, partition, GpdPresheaf};

  const N: usize = 3;

  fn pt() -> FinSite {
    FinSite::poset(&["*"], &[], &[]).unwrap()
  }

  fn s1() -> FinSite {
    FinSite::poset(&["U", "V", "A", "B"], &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V")], &[]).unwrap()
  }

  fn z2() -> Fin2Groupoid {
    Fin2Groupoid::from_groupoid(&FinGroupoid::cyclic(2))
  }

  #[test]
  fn jt_torsors_give_2gpd_torsors() {
    let s = s1();
    let g = z2();
    let gp = GpdPresheaf::from_groups(&s, &GroupPresheaf::constant(&s, &GroupTable::cyclic(2)));
    let jts = enumerate_jt(&s, &gp, 8).unwrap();
    let t = TwoGpdTorsor::from_jt(&s, &g, &jts[0]).unwrap();
    let (total, _) = t.total(&s, &g, N).unwrap();
    assert!(two_gpd_torsor_check(&s, &g, &total, 64).unwrap().is_pass());
  }

  #[test]
  fn trivial_action_fails_equivalence() {
    let s = pt();
    let g = z2();
    let t = TwoGpdTorsor {
      functors: vec![SetTwoFunctor { sets: vec![2], act: vec![vec![0, 1]; 2] }],
      restrict: vec![vec![vec![0, 1]]],
    };
    let (total, _) = t.total(&s, &g, N).unwrap();
    assert_eq!(two_gpd_torsor_check(&s, &g, &total, 64).unwrap().condition(), Some(Condition::Equivalence));
  }

  #[test]
  fn non_holim_shape_is_rejected() {
    let s = pt();
    let g = z2();
    let (mut total, _) = TwoGpdTorsor {
      functors: vec![SetTwoFunctor { sets: vec![2], act: vec![vec![0, 1], vec![1, 0]] }],
      restrict: vec![vec![vec![0, 1]]],
    }
    .total(&s, &g, N)
    .unwrap();
    assert!(two_gpd_torsor_check(&s, &g, &total, 64).unwrap().is_pass());
    // a single vertex over the base point is not the homotopy colimit of anything
    total.y = SPresheaf::point(&s, N);
    total.map = vec![SSetMap::constant(&total.y.sections[0], &total.wbar.sections[0], 0)];
    assert_eq!(two_gpd_torsor_check(&s, &g, &total, 64).unwrap().condition(), Some(Condition::Shape));
  }

  #[test]
  fn h_of_f_on_the_circle() {
    let s = s1();
    let g = z2();
    let i = cech_groupoid(&s, &[0, 1], N);
    let fs = cech_gpd_functors(&s, &GpdPresheaf::constant(&s, &g.cells1), &i, 100).unwrap();
    assert_eq!(fs.len(), 4);
    let totals: Vec<TwoGpdTotal> = fs
      .iter()
      .map(|f| {
        let (total, _) = h_of_f(&s, &g, &i, f).unwrap().total(&s, &g, N).unwrap();
        assert!(two_gpd_torsor_check(&s, &g, &total, 64).unwrap().is_pass());
        total
      })
      .collect();
    let p = partition(totals.len(), |a, b| {
      Ok(over_map(&s, &totals[a].y, &totals[a].map, &totals[b].y, &totals[b].map)?.map(|_| true))
    })
    .unwrap();
    assert_eq!(p.count, 2);
  }
}

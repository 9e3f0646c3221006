//! Torsors for sheaves of groups and of groupoids as sheaves with a free, locally transitive
//! right action, the pullback-tower presentation `Y → BG`, and the Čech cocycle oracle.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{partition, Condition, Partition, TorsorVerdict};
use crate::error::{Error, Result};
use crate::groupoid::{FinGroupoid, GroupoidFunctor, NerveSimplex};
use crate::homotopy::UnionFind;
use crate::ordinal::OrdinalMap;
use crate::presheaf::{GroupPresheaf, SPresheaf, SetPresheaf, SgdPresheaf};
use crate::sgroupoid::{SgdFunctor, SimpGroupoid};
use crate::sheaf::{is_sheaf, local_weq_check};
use crate::site::{FinSite, Sieve};
use crate::sset::{sphere, Labelled, SSetMap};

/// A presheaf of groupoids; `restrict[m]` is a functor `G(dst m) → G(src m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GpdPresheaf {
  pub sections: Vec<FinGroupoid>,
  pub restrict: Vec<GroupoidFunctor>,
}

impl GpdPresheaf {
  pub fn constant(site: &FinSite, g: &FinGroupoid) -> Self {
    let id = GroupoidFunctor { on_objects: (0..g.objects).collect(), on_morphisms: (0..g.morphisms()).collect() };
    Self { sections: vec![g.clone(); site.objects()], restrict: vec![id; site.morphisms()] }
  }

  /// One object per section.
  pub fn from_groups(site: &FinSite, g: &GroupPresheaf) -> Self {
    Self {
      sections: g.groups.iter().map(FinGroupoid::from_group).collect(),
      restrict: (0..site.morphisms())
        .map(|m| GroupoidFunctor { on_objects: vec![0], on_morphisms: g.sets.restrict[m].clone() })
        .collect(),
    }
  }

  pub fn check(&self, site: &FinSite) -> Result<()> {
    if self.sections.len() != site.objects() || self.restrict.len() != site.morphisms() {
      return Err(Error::Invalid("groupoid presheaf tables do not match the site".into()));
    }
    for m in 0..site.morphisms() {
      self.restrict[m].check(&self.sections[site.dst[m]], &self.sections[site.src[m]])?;
    }
    for g in 0..site.morphisms() {
      for f in (0..site.morphisms()).filter(|&f| site.dst[f] == site.src[g]) {
        let (rg, rf, rgf) = (&self.restrict[g], &self.restrict[f], &self.restrict[site.comp(g, f)]);
        let objs = (0..rg.on_objects.len()).all(|x| rgf.on_objects[x] == rf.on_objects[rg.on_objects[x]]);
        let mors = (0..rg.on_morphisms.len()).all(|x| rgf.on_morphisms[x] == rf.on_morphisms[rg.on_morphisms[x]]);
        if !objs || !mors {
          return Err(Error::Invalid(format!(
            "restriction is not functorial at {} ∘ {}",
            site.mor_names[g], site.mor_names[f]
          )));
        }
      }
    }
    Ok(())
  }

  pub fn objects_presheaf(&self) -> SetPresheaf {
    SetPresheaf {
      sizes: self.sections.iter().map(|g| g.objects).collect(),
      restrict: self.restrict.iter().map(|f| f.on_objects.clone()).collect(),
    }
  }

  pub fn morphisms_presheaf(&self) -> SetPresheaf {
    SetPresheaf {
      sizes: self.sections.iter().map(|g| g.morphisms()).collect(),
      restrict: self.restrict.iter().map(|f| f.on_morphisms.clone()).collect(),
    }
  }

  /// Sectionwise nerve `BG`.
  pub fn nerve(&self, site: &FinSite, trunc: usize) -> (SPresheaf, Vec<Labelled<NerveSimplex>>) {
    let labs: Vec<Labelled<NerveSimplex>> = self.sections.iter().map(|g| g.nerve(trunc)).collect();
    let restrict = (0..site.morphisms())
      .map(|m| {
        labs[site.dst[m]]
          .map_to(&labs[site.src[m]], |_, s| apply(&self.restrict[m], s))
          .expect("restriction of the nerve")
      })
      .collect();
    (SPresheaf { sections: labs.iter().map(|l| l.sset.clone()).collect(), restrict }, labs)
  }

  /// The presheaf of simplicial groupoids constant in the simplicial direction.
  pub fn as_sgd(&self, site: &FinSite, trunc: usize) -> SgdPresheaf {
    SgdPresheaf {
      sections: self.sections.iter().map(|g| SimpGroupoid::constant(g, trunc)).collect(),
      restrict: (0..site.morphisms())
        .map(|m| SgdFunctor {
          on_objects: self.restrict[m].on_objects.clone(),
          on_cells: SSetMap::new_unchecked(vec![self.restrict[m].on_morphisms.clone(); trunc + 1]),
        })
        .collect(),
    }
  }
}

fn apply(f: &GroupoidFunctor, s: &NerveSimplex) -> NerveSimplex {
  NerveSimplex {
    objs: s.objs.iter().map(|&o| f.on_objects[o]).collect(),
    mors: s.mors.iter().map(|&m| f.on_morphisms[m]).collect(),
  }
}

/// A sheaf `E` over `G_0` with a right action `a: E ×_{G_0} G_1 → E`: `x·g` is defined when
/// `over(x) = dst g` and lies over `src g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidTorsorJT {
  pub e: SetPresheaf,
  pub over: Vec<Vec<usize>>,
  /// `act[c][x][g]`.
  pub act: Vec<Vec<Vec<Option<usize>>>>,
}

/// A sheaf `E` with a right action of a sheaf of groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTorsorCandidate {
  pub e: SetPresheaf,
  /// `act[c][x][g] = x·g`.
  pub act: Vec<Vec<Vec<usize>>>,
}

impl GroupTorsorCandidate {
  pub fn to_jt(&self) -> GroupoidTorsorJT {
    GroupoidTorsorJT {
      e: self.e.clone(),
      over: self.e.sizes.iter().map(|&k| vec![0; k]).collect(),
      act: self.act.iter().map(|sec| sec.iter().map(|row| row.iter().map(|&y| Some(y)).collect()).collect()).collect(),
    }
  }

  pub fn from_jt(t: &GroupoidTorsorJT) -> Self {
    Self {
      e: t.e.clone(),
      act: t
        .act
        .iter()
        .map(|sec| sec.iter().map(|row| row.iter().map(|y| y.expect("group actions are total")).collect()).collect())
        .collect(),
    }
  }
}

/// `G` acting on itself by right multiplication.
pub fn trivial_group_torsor(g: &GroupPresheaf) -> GroupTorsorCandidate {
  GroupTorsorCandidate { e: g.sets.clone(), act: g.groups.iter().map(|t| t.mul.clone()).collect() }
}

/// The torsor represented by a global object `x0`: `E(c) = {h : dst h = x0(c)}` over the source,
/// acting by precomposition.
pub fn representable_torsor(site: &FinSite, g: &GpdPresheaf, x0: &[usize]) -> Result<GroupoidTorsorJT> {
  for m in 0..site.morphisms() {
    if g.restrict[m].on_objects[x0[site.dst[m]]] != x0[site.src[m]] {
      return Err(Error::Precondition(format!("the chosen objects are not compatible along {}", site.mor_names[m])));
    }
  }
  let elems: Vec<Vec<usize>> = (0..site.objects())
    .map(|c| (0..g.sections[c].morphisms()).filter(|&h| g.sections[c].dst[h] == x0[c]).collect())
    .collect();
  let pos = |c: usize, h: usize| elems[c].binary_search(&h).expect("element of the representable torsor");
  let e = SetPresheaf {
    sizes: elems.iter().map(Vec::len).collect(),
    restrict: (0..site.morphisms())
      .map(|m| elems[site.dst[m]].iter().map(|&h| pos(site.src[m], g.restrict[m].on_morphisms[h])).collect())
      .collect(),
  };
  let over = (0..site.objects()).map(|c| elems[c].iter().map(|&h| g.sections[c].src[h]).collect()).collect();
  let act = (0..site.objects())
    .map(|c| {
      let gc = &g.sections[c];
      elems[c].iter().map(|&h| (0..gc.morphisms()).map(|k| gc.try_comp(h, k).map(|hk| pos(c, hk))).collect()).collect()
    })
    .collect();
  Ok(GroupoidTorsorJT { e, over, act })
}

fn name(site: &FinSite, c: usize) -> Option<&str> {
  Some(site.names[c].as_str())
}

/// The torsor axioms: `E` a sheaf over `G_0` with an equivariant action, `E → ∗` a local
/// epimorphism, the action free, and any two sections locally related by the action.
pub fn jt_check(site: &FinSite, g: &GpdPresheaf, t: &GroupoidTorsorJT) -> TorsorVerdict {
  if let Err(e) = g.check(site) {
    return TorsorVerdict::fail(Condition::Coefficients, None, e.to_string());
  }
  if let Err(e) = t.e.check(site) {
    return TorsorVerdict::fail(Condition::Functoriality, None, e.to_string());
  }
  if t.over.len() != site.objects() || t.act.len() != site.objects() {
    return TorsorVerdict::fail(Condition::Action, None, "action tables do not match the site");
  }
  for c in 0..site.objects() {
    let gc = &g.sections[c];
    if t.over[c].len() != t.e.sizes[c] || t.act[c].len() != t.e.sizes[c] {
      return TorsorVerdict::fail(Condition::Action, name(site, c), "action tables do not match the section");
    }
    for x in 0..t.e.sizes[c] {
      if t.act[c][x].len() != gc.morphisms() {
        return TorsorVerdict::fail(
          Condition::Action,
          name(site, c),
          format!("element {x} has a malformed action row"),
        );
      }
      for k in 0..gc.morphisms() {
        let y = t.act[c][x][k];
        if y.is_some() != (gc.dst[k] == t.over[c][x]) {
          return TorsorVerdict::fail(Condition::Action, name(site, c), format!("{x}·{k} defined off the fibre"));
        }
        if let Some(y) = y {
          if y >= t.e.sizes[c] || t.over[c][y] != gc.src[k] {
            return TorsorVerdict::fail(
              Condition::Action,
              name(site, c),
              format!("{x}·{k} lands over the wrong object"),
            );
          }
        }
      }
      if t.act[c][x][gc.identity[t.over[c][x]]] != Some(x) {
        return TorsorVerdict::fail(Condition::Action, name(site, c), format!("identity moves {x}"));
      }
      for &(a, b, ab) in &gc.compose {
        if let Some(y) = t.act[c][x][a] {
          if t.act[c][y][b] != t.act[c][x][ab] {
            return TorsorVerdict::fail(Condition::Action, name(site, c), format!("({x}·{a})·{b} ≠ {x}·({a}∘{b})"));
          }
        }
      }
    }
  }
  for m in 0..site.morphisms() {
    let (c, d) = (site.src[m], site.dst[m]);
    let (r, f) = (&t.e.restrict[m], &g.restrict[m]);
    for x in 0..t.e.sizes[d] {
      if t.over[c][r[x]] != f.on_objects[t.over[d][x]] {
        return TorsorVerdict::fail(
          Condition::Action,
          name(site, d),
          format!("restriction along {} does not respect the projection", site.mor_names[m]),
        );
      }
      for k in 0..g.sections[d].morphisms() {
        if let Some(y) = t.act[d][x][k] {
          if t.act[c][r[x]][f.on_morphisms[k]] != Some(r[y]) {
            return TorsorVerdict::fail(
              Condition::Action,
              name(site, d),
              format!("restriction along {} is not equivariant", site.mor_names[m]),
            );
          }
        }
      }
    }
  }
  if !is_sheaf(site, &t.e) {
    return TorsorVerdict::fail(Condition::Sheaf, None, "E is not a sheaf");
  }
  for c in 0..site.objects() {
    let s: Sieve = site.into(c).into_iter().filter(|&f| t.e.sizes[site.src[f]] > 0).collect();
    if !site.is_covering(c, &s) {
      return TorsorVerdict::fail(Condition::NonEmpty, name(site, c), "E → ∗ is not locally surjective");
    }
    let gc = &g.sections[c];
    for x in 0..t.e.sizes[c] {
      for k in 0..gc.morphisms() {
        if t.act[c][x][k] == Some(x) && k != gc.identity[t.over[c][x]] {
          return TorsorVerdict::fail(Condition::Free, name(site, c), format!("{k} fixes {x}"));
        }
      }
    }
  }
  for c in 0..site.objects() {
    for x in 0..t.e.sizes[c] {
      for y in 0..t.e.sizes[c] {
        let s: Sieve = site
          .into(c)
          .into_iter()
          .filter(|&f| {
            let (b, r) = (site.src[f], &t.e.restrict[f]);
            t.act[b][r[x]].iter().any(|&z| z == Some(r[y]))
          })
          .collect();
        if !site.is_covering(c, &s) {
          return TorsorVerdict::fail(
            Condition::Transitive,
            name(site, c),
            format!("{x} and {y} are not locally related"),
          );
        }
      }
    }
  }
  TorsorVerdict::Pass
}

/// The group-torsor axioms; the coefficient presheaf must itself be a sheaf.
pub fn group_torsor_check(site: &FinSite, g: &GroupPresheaf, t: &GroupTorsorCandidate) -> TorsorVerdict {
  if let Err(e) = g.check(site) {
    return TorsorVerdict::fail(Condition::Coefficients, None, e.to_string());
  }
  if !is_sheaf(site, &g.sets) {
    return TorsorVerdict::fail(Condition::Coefficients, None, "G is not a sheaf");
  }
  jt_check(site, &g_of(site, g), &t.to_jt())
}

fn g_of(site: &FinSite, g: &GroupPresheaf) -> GpdPresheaf {
  GpdPresheaf::from_groups(site, g)
}

/// Cap on restriction assignments visited while enumerating.
const SEARCH_CAP: usize = 2_000_000;

/// All torsors whose sections are unions of free orbits with at most `bound` elements, one
/// orbit type per component of `G(c)`. Objects covered only by their maximal sieve carry exactly
/// one orbit, as transitivity forces. Candidates failing the axioms are dropped.
pub fn enumerate_jt(site: &FinSite, g: &GpdPresheaf, bound: usize) -> Result<Vec<GroupoidTorsorJT>> {
  g.check(site)?;
  let n = site.objects();
  let into_rep = |c: usize, r: usize| -> Vec<usize> {
    (0..g.sections[c].morphisms()).filter(|&h| g.sections[c].dst[h] == r).collect()
  };
  let mut configs: Vec<Vec<Vec<usize>>> = Vec::new();
  for c in 0..n {
    let (comp, k) = g.sections[c].components();
    let reps: Vec<usize> = (0..k).map(|i| comp.iter().position(|&x| x == i).unwrap()).collect();
    let size = |r: usize| into_rep(c, r).len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    if site.covering_sieves(c).len() == 1 {
      out.extend(reps.iter().filter(|&&r| size(r) <= bound).map(|&r| vec![r]));
      if out.is_empty() && !reps.is_empty() {
        return Err(Error::BoundExceeded(format!("an orbit at {} has more than {bound} elements", site.names[c])));
      }
    } else {
      fn multisets(
        reps: &[usize],
        size: &dyn Fn(usize) -> usize,
        room: usize,
        from: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
      ) {
        out.push(cur.clone());
        for i in from..reps.len() {
          let s = size(reps[i]);
          if s <= room {
            cur.push(reps[i]);
            multisets(reps, size, room - s, i, cur, out);
            cur.pop();
          }
        }
      }
      multisets(&reps, &size, bound, 0, &mut Vec::new(), &mut out);
    }
    configs.push(out);
  }
  let mut found = Vec::new();
  let mut visited = 0usize;
  let mut choice = vec![0; n];
  loop {
    let orbits: Vec<Vec<usize>> = (0..n).map(|c| configs[c][choice[c]].clone()).collect();
    enumerate_restrictions(site, g, &orbits, &mut visited, &mut found)?;
    let mut k = 0;
    while k < n {
      choice[k] += 1;
      if choice[k] < configs[k].len() {
        break;
      }
      choice[k] = 0;
      k += 1;
    }
    if k == n || configs.iter().any(Vec::is_empty) {
      break;
    }
  }
  Ok(found)
}

/// Elements `(orbit, h)` with `dst h` the orbit's object, in orbit order.
fn orbit_elements(g: &FinGroupoid, orbits: &[usize]) -> Vec<(usize, usize)> {
  orbits
    .iter()
    .enumerate()
    .flat_map(|(i, &r)| (0..g.morphisms()).filter(move |&h| g.dst[h] == r).map(move |h| (i, h)))
    .collect()
}

fn enumerate_restrictions(
  site: &FinSite,
  g: &GpdPresheaf,
  orbits: &[Vec<usize>],
  visited: &mut usize,
  found: &mut Vec<GroupoidTorsorJT>,
) -> Result<()> {
  let n = site.objects();
  let elems: Vec<Vec<(usize, usize)>> = (0..n).map(|c| orbit_elements(&g.sections[c], &orbits[c])).collect();
  let index: Vec<HashMap<(usize, usize), usize>> =
    elems.iter().map(|es| es.iter().enumerate().map(|(k, &e)| (e, k)).collect()).collect();
  let over: Vec<Vec<usize>> = (0..n).map(|c| elems[c].iter().map(|&(_, h)| g.sections[c].src[h]).collect()).collect();
  let act: Vec<Vec<Vec<Option<usize>>>> = (0..n)
    .map(|c| {
      let gc = &g.sections[c];
      elems[c]
        .iter()
        .map(|&(i, h)| (0..gc.morphisms()).map(|k| gc.try_comp(h, k).map(|hk| index[c][&(i, hk)])).collect())
        .collect()
    })
    .collect();
  let free: Vec<usize> = (0..site.morphisms()).filter(|&m| site.identity[site.src[m]] != m).collect();
  // Per free morphism, the candidate images of each orbit's base point.
  let options: Vec<Vec<Vec<usize>>> = free
    .iter()
    .map(|&m| {
      let (c, d) = (site.src[m], site.dst[m]);
      orbits[d]
        .iter()
        .map(|&r| (0..elems[c].len()).filter(|&y| over[c][y] == g.restrict[m].on_objects[r]).collect())
        .collect()
    })
    .collect();
  let mut restrict: Vec<Option<Vec<usize>>> = (0..site.morphisms())
    .map(|m| (site.identity[site.src[m]] == m).then(|| (0..elems[site.src[m]].len()).collect()))
    .collect();
  let full = |m: usize, images: &[usize]| -> Option<Vec<usize>> {
    let (c, d) = (site.src[m], site.dst[m]);
    elems[d]
      .iter()
      .map(|&(i, h)| {
        let base = images[i];
        let (_, hb) = elems[c][base];
        g.sections[c].try_comp(hb, g.restrict[m].on_morphisms[h]).map(|x| index[c][&(elems[c][base].0, x)])
      })
      .collect()
  };
  let consistent = |restrict: &[Option<Vec<usize>>]| -> bool {
    for gm in 0..site.morphisms() {
      for f in (0..site.morphisms()).filter(|&f| site.dst[f] == site.src[gm]) {
        if let (Some(rg), Some(rf), Some(rgf)) = (&restrict[gm], &restrict[f], &restrict[site.comp(gm, f)]) {
          if (0..rg.len()).any(|x| rgf[x] != rf[rg[x]]) {
            return false;
          }
        }
      }
    }
    true
  };
  #[allow(clippy::too_many_arguments)]
  fn rec(
    k: usize,
    free: &[usize],
    options: &[Vec<Vec<usize>>],
    restrict: &mut Vec<Option<Vec<usize>>>,
    full: &dyn Fn(usize, &[usize]) -> Option<Vec<usize>>,
    consistent: &dyn Fn(&[Option<Vec<usize>>]) -> bool,
    visited: &mut usize,
    emit: &mut dyn FnMut(&[Option<Vec<usize>>]),
  ) -> Result<()> {
    if k == free.len() {
      emit(restrict);
      return Ok(());
    }
    let m = free[k];
    let opts = &options[k];
    let mut pick = vec![0; opts.len()];
    if opts.iter().any(Vec::is_empty) {
      return Ok(());
    }
    loop {
      *visited += 1;
      if *visited > SEARCH_CAP {
        return Err(Error::BoundExceeded(format!("more than {SEARCH_CAP} restriction assignments")));
      }
      let images: Vec<usize> = pick.iter().enumerate().map(|(i, &p)| opts[i][p]).collect();
      if let Some(r) = full(m, &images) {
        restrict[m] = Some(r);
        if consistent(restrict) {
          rec(k + 1, free, options, restrict, full, consistent, visited, emit)?;
        }
        restrict[m] = None;
      }
      let mut i = 0;
      while i < pick.len() {
        pick[i] += 1;
        if pick[i] < opts[i].len() {
          break;
        }
        pick[i] = 0;
        i += 1;
      }
      if i == pick.len() {
        return Ok(());
      }
    }
  }
  let sizes: Vec<usize> = elems.iter().map(Vec::len).collect();
  let mut emit = |r: &[Option<Vec<usize>>]| {
    let t = GroupoidTorsorJT {
      e: SetPresheaf { sizes: sizes.clone(), restrict: r.iter().map(|x| x.clone().expect("assigned")).collect() },
      over: over.clone(),
      act: act.clone(),
    };
    if jt_check(site, g, &t).is_pass() {
      found.push(t);
    }
  };
  rec(0, &free, &options, &mut restrict, &full, &consistent, visited, &mut emit)
}

pub fn enumerate_group_torsors(site: &FinSite, g: &GroupPresheaf, bound: usize) -> Result<Vec<GroupTorsorCandidate>> {
  Ok(enumerate_jt(site, &g_of(site, g), bound)?.iter().map(GroupTorsorCandidate::from_jt).collect())
}

/// Some equivariant natural map `a → b` over `G_0`, if one exists.
pub fn jt_morphism(
  site: &FinSite,
  g: &GpdPresheaf,
  a: &GroupoidTorsorJT,
  b: &GroupoidTorsorJT,
) -> Option<Vec<Vec<usize>>> {
  let n = site.objects();
  // one representative per orbit of `a`; the rest of the orbit is forced by equivariance
  let reps: Vec<Vec<usize>> = (0..n)
    .map(|c| {
      let mut reached = vec![false; a.e.sizes[c]];
      let mut rs = Vec::new();
      for x in 0..a.e.sizes[c] {
        if !reached[x] {
          rs.push(x);
          for y in a.act[c][x].iter().flatten() {
            reached[*y] = true;
          }
        }
      }
      rs
    })
    .collect();
  let mut map: Vec<Vec<usize>> = (0..n).map(|c| vec![usize::MAX; a.e.sizes[c]]).collect();

  fn extend(
    c: usize,
    x: usize,
    y: usize,
    a: &GroupoidTorsorJT,
    b: &GroupoidTorsorJT,
    g: &GpdPresheaf,
    map: &mut [Vec<usize>],
  ) -> bool {
    let gc = &g.sections[c];
    for k in 0..gc.morphisms() {
      match (a.act[c][x][k], b.act[c][y][k]) {
        (Some(x2), Some(y2)) => {
          if map[c][x2] != usize::MAX && map[c][x2] != y2 {
            return false;
          }
          map[c][x2] = y2;
        }
        (None, None) => {}
        _ => return false,
      }
    }
    true
  }
  let natural = |map: &[Vec<usize>]| -> bool {
    (0..site.morphisms()).all(|m| {
      let (c, d) = (site.src[m], site.dst[m]);
      (0..a.e.sizes[d]).all(|x| {
        let (u, v) = (map[d][x], map[c][a.e.restrict[m][x]]);
        u == usize::MAX || v == usize::MAX || b.e.restrict[m][u] == v
      })
    })
  };
  let slots: Vec<(usize, usize)> = (0..n).flat_map(|c| reps[c].iter().map(move |&x| (c, x))).collect();
  fn rec(
    k: usize,
    slots: &[(usize, usize)],
    a: &GroupoidTorsorJT,
    b: &GroupoidTorsorJT,
    g: &GpdPresheaf,
    map: &mut Vec<Vec<usize>>,
    natural: &dyn Fn(&[Vec<usize>]) -> bool,
  ) -> bool {
    if k == slots.len() {
      return true;
    }
    let (c, x) = slots[k];
    for y in 0..b.e.sizes[c] {
      if b.over[c][y] != a.over[c][x] {
        continue;
      }
      let saved = map[c].clone();
      if extend(c, x, y, a, b, g, map) && natural(map) && rec(k + 1, slots, a, b, g, map, natural) {
        return true;
      }
      map[c] = saved;
    }
    false
  }
  if rec(0, &slots, a, b, g, &mut map, &natural) {
    Some(map)
  } else {
    None
  }
}

fn is_bijection(f: &[usize], target: usize) -> bool {
  let mut seen = vec![false; target];
  f.len() == target && f.iter().all(|&y| y < target && !std::mem::replace(&mut seen[y], true))
}

/// Path components by exhaustive morphism search; every morphism found is tested for invertibility.
pub fn pi0_jt(site: &FinSite, g: &GpdPresheaf, list: &[GroupoidTorsorJT]) -> Result<Partition> {
  partition(list.len(), |i, j| {
    Ok(
      jt_morphism(site, g, &list[i], &list[j])
        .map(|m| (0..site.objects()).all(|c| is_bijection(&m[c], list[j].e.sizes[c]))),
    )
  })
}

pub fn pi0_group_torsors(site: &FinSite, g: &GroupPresheaf, list: &[GroupTorsorCandidate]) -> Result<Partition> {
  let jts: Vec<GroupoidTorsorJT> = list.iter().map(GroupTorsorCandidate::to_jt).collect();
  pi0_jt(site, &g_of(site, g), &jts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Report {
  pub family: Vec<String>,
  pub cocycles: usize,
  pub classes: usize,
}

/// Čech 1-cocycles of `G` over a family of objects covering the terminal presheaf, modulo
/// 0-cochains. A cocycle assigns `c(a, b) ∈ G(W)` to each pair of maps `a: W → U_i`, `b: W → U_j`,
/// naturally in `W`, with `c(a,b)·c(b,c) = c(a,c)`. A 0-cochain `h ∈ ∏ G(U_i)` acts by
/// `c(a,b) ↦ h_a · c(a,b) · h_b^{-1}`.
pub fn h1_cech_oracle(site: &FinSite, g: &GroupPresheaf, family: &[usize]) -> Result<H1Report> {
  g.check(site)?;
  if !site.covers_terminal(family) {
    return Err(Error::Precondition("the family does not cover the terminal presheaf".into()));
  }
  let n = site.objects();
  let points: Vec<Vec<(usize, usize)>> = (0..n)
    .map(|w| family.iter().enumerate().flat_map(|(i, &u)| site.hom(w, u).into_iter().map(move |f| (i, f))).collect())
    .collect();
  let mut vars: Vec<(usize, usize, usize)> = Vec::new();
  let mut var_id: HashMap<(usize, usize, usize), usize> = HashMap::new();
  for (w, ps) in points.iter().enumerate() {
    for a in 0..ps.len() {
      for b in a + 1..ps.len() {
        var_id.insert((w, a, b), vars.len());
        vars.push((w, a, b));
      }
    }
  }
  let pidx = |w: usize, p: (usize, usize)| points[w].iter().position(|&q| q == p).expect("point of the Čech nerve");
  // A value reference: identity, a variable, or the inverse of one.
  #[derive(Clone, Copy)]
  enum Ref {
    One,
    Var(usize),
    Inv(usize),
  }
  let refer = |w: usize, a: usize, b: usize| match a.cmp(&b) {
    std::cmp::Ordering::Equal => Ref::One,
    std::cmp::Ordering::Less => Ref::Var(var_id[&(w, a, b)]),
    std::cmp::Ordering::Greater => Ref::Inv(var_id[&(w, b, a)]),
  };
  enum Constraint {
    Natural { m: usize, from: usize, to: Ref },
    Cocycle { w: usize, ab: Ref, bc: Ref, ac: Ref },
  }
  let mut cons: Vec<(usize, Constraint)> = Vec::new();
  let key = |r: Ref| match r {
    Ref::One => 0,
    Ref::Var(v) | Ref::Inv(v) => v,
  };
  for (v, &(w, a, b)) in vars.iter().enumerate() {
    for m in site.into(w) {
      if site.identity[w] == m {
        continue;
      }
      let w2 = site.src[m];
      let (pa, pb) = (points[w][a], points[w][b]);
      let a2 = pidx(w2, (pa.0, site.comp(pa.1, m)));
      let b2 = pidx(w2, (pb.0, site.comp(pb.1, m)));
      let to = refer(w2, a2, b2);
      cons.push((v.max(key(to)), Constraint::Natural { m, from: v, to }));
    }
  }
  for (w, ps) in points.iter().enumerate() {
    for a in 0..ps.len() {
      for b in a + 1..ps.len() {
        for c in b + 1..ps.len() {
          let (ab, bc, ac) = (refer(w, a, b), refer(w, b, c), refer(w, a, c));
          cons.push((key(ab).max(key(bc)).max(key(ac)), Constraint::Cocycle { w, ab, bc, ac }));
        }
      }
    }
  }
  let value = |r: Ref, w: usize, vals: &[usize]| match r {
    Ref::One => g.groups[w].identity,
    Ref::Var(v) => vals[v],
    Ref::Inv(v) => g.groups[w].inverse(vals[v]).expect("group"),
  };
  let holds = |c: &Constraint, vals: &[usize]| match *c {
    Constraint::Natural { m, from, to } => {
      let (w, w2) = (site.dst[m], site.src[m]);
      g.sets.restrict[m][vals[from]] == value(to, w2, vals) && w == vars[from].0
    }
    Constraint::Cocycle { w, ab, bc, ac } => {
      g.groups[w].mul[value(ab, w, vals)][value(bc, w, vals)] == value(ac, w, vals)
    }
  };
  let mut by_last: Vec<Vec<&Constraint>> = (0..vars.len().max(1)).map(|_| Vec::new()).collect();
  let mut free_cons: Vec<&Constraint> = Vec::new();
  for (k, c) in &cons {
    if vars.is_empty() {
      free_cons.push(c);
    } else {
      by_last[*k].push(c);
    }
  }
  let mut cocycles: Vec<Vec<usize>> = Vec::new();
  if free_cons.iter().all(|c| holds(c, &[])) {
    let mut vals = vec![0; vars.len()];
    fn rec(
      k: usize,
      vals: &mut Vec<usize>,
      vars: &[(usize, usize, usize)],
      g: &GroupPresheaf,
      by_last: &[Vec<&Constraint>],
      holds: &dyn Fn(&Constraint, &[usize]) -> bool,
      out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
      if k == vars.len() {
        if out.len() >= SEARCH_CAP {
          return Err(Error::BoundExceeded(format!("more than {SEARCH_CAP} cocycles")));
        }
        out.push(vals.clone());
        return Ok(());
      }
      for x in 0..g.groups[vars[k].0].order() {
        vals[k] = x;
        if by_last[k].iter().all(|c| holds(c, &vals[..])) {
          rec(k + 1, vals, vars, g, by_last, holds, out)?;
        }
      }
      Ok(())
    }
    rec(0, &mut vals, &vars, g, &by_last, &holds, &mut cocycles)?;
  }
  let index: HashMap<Vec<usize>, usize> = cocycles.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();
  let mut uf = UnionFind::new(cocycles.len());
  for (i, &u) in family.iter().enumerate() {
    for h in 0..g.groups[u].order() {
      for (k, coc) in cocycles.iter().enumerate() {
        let moved: Vec<usize> = vars
          .iter()
          .enumerate()
          .map(|(v, &(w, a, b))| {
            let gw = &g.groups[w];
            let part = |p: (usize, usize)| if p.0 == i { g.sets.restrict[p.1][h] } else { gw.identity };
            let (ha, hb) = (part(points[w][a]), part(points[w][b]));
            gw.mul[gw.mul[ha][coc[v]]][gw.inverse(hb).expect("group")]
          })
          .collect();
        let j = *index.get(&moved).ok_or_else(|| Error::Invalid("coboundary action leaves the cocycles".into()))?;
        uf.union(k, j);
      }
    }
  }
  let (_, classes) = uf.classes();
  Ok(H1Report { family: family.iter().map(|&u| site.names[u].clone()).collect(), cocycles: cocycles.len(), classes })
}

/// A map `Y → BG` of simplicial presheaves, `BG` the sectionwise nerve.
#[derive(Clone, Debug)]
pub struct GroupoidTorsorJ5 {
  pub y: SPresheaf,
  pub bg: SPresheaf,
  pub bg_labels: Vec<Labelled<NerveSimplex>>,
  pub pi: Vec<SSetMap>,
}

/// The translation groupoid of a right action: objects are elements, a morphism `(x, g)` goes
/// `x·g → x`.
#[derive(Clone, Debug)]
pub struct TranslationNerve {
  pub groupoid: FinGroupoid,
  pub mors: Vec<(usize, usize)>,
  pub nerve: Labelled<NerveSimplex>,
}

fn translation(g: &FinGroupoid, t: &GroupoidTorsorJT, c: usize, trunc: usize) -> Result<TranslationNerve> {
  let acts = &t.act[c];
  let mors: Vec<(usize, usize)> = (0..t.e.sizes[c])
    .flat_map(|x| (0..g.morphisms()).filter(move |&k| acts[x][k].is_some()).map(move |k| (x, k)))
    .collect();
  let mid = |p: (usize, usize)| mors.binary_search(&p).expect("morphism of the translation groupoid");
  let src = mors.iter().map(|&(x, k)| acts[x][k].unwrap()).collect();
  let dst = mors.iter().map(|&(x, _)| x).collect();
  let identity = (0..t.e.sizes[c]).map(|x| mid((x, g.identity[t.over[c][x]]))).collect();
  let inverse = mors.iter().map(|&(x, k)| mid((acts[x][k].unwrap(), g.inverse[k]))).collect();
  let groupoid = FinGroupoid::from_fn(t.e.sizes[c], src, dst, identity, inverse, |b, a| {
    mid((mors[b].0, g.comp(mors[b].1, mors[a].1)))
  })?;
  let nerve = groupoid.nerve(trunc);
  Ok(TranslationNerve { groupoid, mors, nerve })
}

/// The pullback tower `Y_n = E ×_{G_0} G_1 ×_{G_0} ⋯ ×_{G_0} G_1` as the nerve of the translation
/// groupoid, with its projection to `BG`.
pub fn jt_to_j5(
  site: &FinSite,
  g: &GpdPresheaf,
  t: &GroupoidTorsorJT,
  trunc: usize,
) -> Result<(GroupoidTorsorJ5, Vec<TranslationNerve>)> {
  let v = jt_check(site, g, t);
  if !v.is_pass() {
    return Err(Error::Precondition(format!("input is not a torsor: {}", serde_json::to_string(&v)?)));
  }
  let (bg, bg_labels) = g.nerve(site, trunc);
  let tn: Vec<TranslationNerve> =
    (0..site.objects()).map(|c| translation(&g.sections[c], t, c, trunc)).collect::<Result<_>>()?;
  let restrict = (0..site.morphisms())
    .map(|m| {
      let (c, d) = (site.src[m], site.dst[m]);
      let r = &t.e.restrict[m];
      tn[d].nerve.map_to(&tn[c].nerve, |_, s| NerveSimplex {
        objs: s.objs.iter().map(|&x| r[x]).collect(),
        mors: s
          .mors
          .iter()
          .map(|&k| {
            let (x, h) = tn[d].mors[k];
            tn[c].mors.binary_search(&(r[x], g.restrict[m].on_morphisms[h])).expect("restricted morphism")
          })
          .collect(),
      })
    })
    .collect::<Result<Vec<_>>>()?;
  let pi = (0..site.objects())
    .map(|c| {
      tn[c].nerve.map_to(&bg_labels[c], |_, s| NerveSimplex {
        objs: s.objs.iter().map(|&x| t.over[c][x]).collect(),
        mors: s.mors.iter().map(|&k| tn[c].mors[k].1).collect(),
      })
    })
    .collect::<Result<Vec<_>>>()?;
  let y = SPresheaf { sections: tn.iter().map(|x| x.nerve.sset.clone()).collect(), restrict };
  Ok((GroupoidTorsorJ5 { y, bg, bg_labels, pi }, tn))
}

/// The first square `Y_n → Y_0` over `BG_n → BG_0` (last vertex) that is not a pullback.
pub fn pullback_failure(site: &FinSite, y: &GroupoidTorsorJ5) -> Option<(usize, usize, String)> {
  for c in 0..site.objects() {
    let (ys, bs, p) = (&y.y.sections[c], &y.bg.sections[c], &y.pi[c]);
    for n in 1..=ys.trunc() {
      let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
      for s in 0..ys.count(n) {
        let key = (ys.vertex(n, s, n), p.apply(n, s));
        if let Some(&t) = seen.get(&key) {
          return Some((c, n, format!("simplices {t} and {s} share their last vertex and image")));
        }
        seen.insert(key, s);
      }
      let expect: usize =
        (0..bs.count(n)).map(|b| (0..ys.count(0)).filter(|&v| p.apply(0, v) == bs.vertex(n, b, n)).count()).sum();
      if expect != seen.len() {
        return Some((c, n, format!("{} simplices where the pullback has {expect}", seen.len())));
      }
    }
  }
  None
}

/// The tower invariants: a natural map, pullback squares in every level, and `Y → ∗` a local
/// weak equivalence.
pub fn j5_check(site: &FinSite, y: &GroupoidTorsorJ5) -> Result<TorsorVerdict> {
  for (p, which) in [(&y.y, "Y"), (&y.bg, "BG")] {
    if let Err(e) = p.check(site) {
      return Ok(TorsorVerdict::fail(Condition::Functoriality, None, format!("{which}: {e}")));
    }
  }
  for c in 0..site.objects() {
    if let Err(e) = y.pi[c].check(&y.y.sections[c], &y.bg.sections[c]) {
      return Ok(TorsorVerdict::fail(Condition::Functoriality, name(site, c), e.to_string()));
    }
  }
  if !y.y.is_natural(&y.bg, &y.pi, site) {
    return Ok(TorsorVerdict::fail(Condition::Functoriality, None, "Y → BG is not natural"));
  }
  if let Some((c, n, why)) = pullback_failure(site, y) {
    return Ok(TorsorVerdict::fail(Condition::Pullback, name(site, c), format!("level {n}: {why}")));
  }
  local_contractibility(site, &y.y)
}

/// `Y → ∗` as a local weak equivalence, checked in degrees up to `min(2, N - 2)`.
pub(crate) fn local_contractibility(site: &FinSite, y: &SPresheaf) -> Result<TorsorVerdict> {
  let trunc = y.trunc();
  if trunc < 2 {
    return Err(Error::Truncation(2, trunc));
  }
  let pt = SPresheaf::point(site, trunc);
  let maps: Vec<SSetMap> = y.sections.iter().map(|s| SSetMap::constant(s, &pt.sections[0], 0)).collect();
  let v = local_weq_check(site, y, &pt, &maps, 2.min(trunc - 2))?;
  Ok(if v.is_pass() {
    TorsorVerdict::Pass
  } else {
    TorsorVerdict::fail(Condition::Equivalence, None, serde_json::to_string(&v)?)
  })
}

/// `Y_0` over `G_0` with the action `d_1` read off the level-1 pullback square.
pub fn j5_to_jt(site: &FinSite, g: &GpdPresheaf, y: &GroupoidTorsorJ5) -> Result<GroupoidTorsorJT> {
  if let Some((c, n, why)) = pullback_failure(site, y) {
    return Err(Error::Precondition(format!("square at {} in level {n} is not a pullback: {why}", site.names[c])));
  }
  let e = y.y.vertices(site);
  let over: Vec<Vec<usize>> = (0..site.objects())
    .map(|c| (0..e.sizes[c]).map(|v| y.bg_labels[c].label(0, y.pi[c].apply(0, v)).objs[0]).collect())
    .collect();
  let act = (0..site.objects())
    .map(|c| {
      let (ys, gc) = (&y.y.sections[c], &g.sections[c]);
      let by_end: HashMap<(usize, usize), usize> =
        (0..ys.count(1)).map(|s| ((ys.vertex(1, s, 1), y.pi[c].apply(1, s)), s)).collect();
      (0..e.sizes[c])
        .map(|x| {
          (0..gc.morphisms())
            .map(|k| {
              if gc.dst[k] != over[c][x] {
                return Ok(None);
              }
              let edge = y.bg_labels[c]
                .id_of(1, &NerveSimplex { objs: vec![gc.src[k], gc.dst[k]], mors: vec![k] })
                .expect("edge of BG");
              let s =
                by_end.get(&(x, edge)).ok_or_else(|| Error::Precondition(format!("no edge over {k} ending at {x}")))?;
              Ok(Some(ys.vertex(1, *s, 0)))
            })
            .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()
    })
    .collect::<Result<Vec<_>>>()?;
  Ok(GroupoidTorsorJT { e, over, act })
}

/// `j5_to_jt ∘ jt_to_j5` is the identity on the nose.
pub fn jt_round_trip(site: &FinSite, g: &GpdPresheaf, t: &GroupoidTorsorJT, trunc: usize) -> Result<bool> {
  let (y, _) = jt_to_j5(site, g, t, trunc)?;
  Ok(&j5_to_jt(site, g, &y)? == t)
}

/// `jt_to_j5 ∘ j5_to_jt` is canonically isomorphic to the identity: each simplex goes to the
/// string of its vertices joined by the images of its edges.
pub fn j5_round_trip(site: &FinSite, g: &GpdPresheaf, y: &GroupoidTorsorJ5) -> Result<bool> {
  let t = j5_to_jt(site, g, y)?;
  let (y2, tn) = jt_to_j5(site, g, &t, y.y.trunc())?;
  let mut iso = Vec::new();
  for c in 0..site.objects() {
    let ys = &y.y.sections[c];
    let map = (0..=ys.trunc())
      .map(|n| {
        (0..ys.count(n))
          .map(|s| {
            let objs: Vec<usize> = (0..=n).map(|k| ys.vertex(n, s, k)).collect();
            let mors: Vec<usize> = (0..n)
              .map(|k| {
                let edge = ys.act(&OrdinalMap::new(n, vec![k, k + 1]).expect("edge"), s);
                let h = y.bg_labels[c].label(1, y.pi[c].apply(1, edge)).mors[0];
                tn[c].mors.binary_search(&(objs[k + 1], h)).expect("edge of the translation groupoid")
              })
              .collect();
            tn[c].nerve.id_of(n, &NerveSimplex { objs, mors }).expect("string of the translation groupoid")
          })
          .collect()
      })
      .collect();
    let f = SSetMap::new_unchecked(map);
    if f.check(ys, &y2.y.sections[c]).is_err() || !f.is_bijective(&y2.y.sections[c]) || f.then(&y2.pi[c]) != y.pi[c] {
      return Ok(false);
    }
    iso.push(f);
  }
  Ok(y.y.is_natural(&y2.y, &iso, site))
}

/// `Y × (Δ^n/∂Δ^n) → Y → BG`: the same vertices, but the level-`n` squares stop being pullbacks.
pub fn times_sphere(site: &FinSite, y: &GroupoidTorsorJ5, n: usize) -> Result<GroupoidTorsorJ5> {
  let s = SPresheaf::constant(site, &sphere(n, y.y.trunc()).sset);
  let (p, labs) = y.y.product(&s, site)?;
  let pi = (0..site.objects())
    .map(|c| labs[c].map_to_ids(&y.bg.sections[c], |k, &(a, _)| y.pi[c].apply(k, a)))
    .collect::<Result<Vec<_>>>()?;
  Ok(GroupoidTorsorJ5 { y: p, bg: y.bg.clone(), bg_labels: y.bg_labels.clone(), pi })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homotopy::GroupTable;

  fn s1() -> FinSite {
    FinSite::poset(&["U", "V", "A", "B"], &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V")], &[]).unwrap()
  }

  fn pt() -> FinSite {
    FinSite::poset(&["*"], &[], &[]).unwrap()
  }

  fn z2(site: &FinSite) -> GroupPresheaf {
    GroupPresheaf::constant(site, &GroupTable::cyclic(2))
  }

  fn twisted(site: &FinSite) -> GroupTorsorCandidate {
    let mut t = trivial_group_torsor(&z2(site));
    let m = site.hom(site.object("A").unwrap(), site.object("U").unwrap())[0];
    t.e.restrict[m] = vec![1, 0];
    t
  }

  #[test]
  fn trivial_and_twisted_torsors_pass() {
    let s = s1();
    let g = z2(&s);
    assert!(group_torsor_check(&s, &g, &trivial_group_torsor(&g)).is_pass());
    assert!(group_torsor_check(&s, &g, &twisted(&s)).is_pass());
  }

  #[test]
  fn empty_section_fails_nonemptiness() {
    let s = s1();
    let g = z2(&s);
    let u = s.object("U").unwrap();
    let mut t = trivial_group_torsor(&g);
    t.e.sizes[u] = 0;
    for m in FinSite::into(&s, u) {
      t.e.restrict[m] = vec![];
    }
    t.act[u] = vec![];
    assert_eq!(group_torsor_check(&s, &g, &t).condition(), Some(Condition::NonEmpty));
  }

  #[test]
  fn non_free_action_is_reported() {
    let s = pt();
    let g = z2(&s);
    let t = GroupTorsorCandidate { e: SetPresheaf::constant(&s, 1), act: vec![vec![vec![0, 0]]] };
    assert_eq!(group_torsor_check(&s, &g, &t).condition(), Some(Condition::Free));
  }

  #[test]
  fn s1_has_two_classes_and_morphisms_are_isos() {
    let s = s1();
    let g = z2(&s);
    let all = enumerate_group_torsors(&s, &g, 8).unwrap();
    assert_eq!(all.len(), 16);
    let p = pi0_group_torsors(&s, &g, &all).unwrap();
    assert_eq!(p.count, 2);
    assert!(p.all_invertible);
    let two = [trivial_group_torsor(&g), twisted(&s)];
    assert_eq!(pi0_group_torsors(&s, &g, &two).unwrap().count, 2);
    assert_eq!(pi0_group_torsors(&s, &g, &two[..1]).unwrap().count, 1);
  }

  #[test]
  fn cech_oracle_counts() {
    let p = pt();
    assert_eq!(h1_cech_oracle(&p, &z2(&p), &[0]).unwrap().classes, 1);
    let s = s1();
    let r = h1_cech_oracle(&s, &z2(&s), &[0, 1]).unwrap();
    assert_eq!((r.cocycles, r.classes), (4, 2));
    // the torus as a product of two circle posets
    let names = ["U", "V", "A", "B"];
    let below = |x: &str, y: &str| x == y || ((x == "A" || x == "B") && (y == "U" || y == "V"));
    let objs: Vec<String> = names.iter().flat_map(|a| names.iter().map(move |b| format!("{a}{b}"))).collect();
    let mut rel = Vec::new();
    for a in names {
      for b in names {
        for c in names {
          for d in names {
            if (a, b) != (c, d) && below(a, c) && below(b, d) {
              rel.push((format!("{a}{b}"), format!("{c}{d}")));
            }
          }
        }
      }
    }
    let objs_ref: Vec<&str> = objs.iter().map(String::as_str).collect();
    let rel_ref: Vec<(&str, &str)> = rel.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let t = FinSite::poset(&objs_ref, &rel_ref, &[]).unwrap();
    let fam: Vec<usize> = ["UU", "UV", "VU", "VV"].iter().map(|n| t.object(n).unwrap()).collect();
    assert_eq!(h1_cech_oracle(&t, &z2(&t), &fam).unwrap().classes, 4);
  }

  #[test]
  fn groupoid_enumeration_matches_the_group_case() {
    let s = s1();
    let g = GpdPresheaf::from_groups(&s, &z2(&s));
    let all = enumerate_jt(&s, &g, 8).unwrap();
    assert_eq!(pi0_jt(&s, &g, &all).unwrap().count, 2);
    let pair = GpdPresheaf::constant(&s, &FinGroupoid::codiscrete(2));
    let all = enumerate_jt(&s, &pair, 8).unwrap();
    assert_eq!(pi0_jt(&s, &pair, &all).unwrap().count, 1);
    assert!(jt_check(&s, &pair, &representable_torsor(&s, &pair, &[0; 4]).unwrap()).is_pass());
  }

  #[test]
  fn tower_round_trips() {
    let s = s1();
    let g = GpdPresheaf::from_groups(&s, &z2(&s));
    for t in [trivial_group_torsor(&z2(&s)), twisted(&s)] {
      let t = t.to_jt();
      assert!(jt_round_trip(&s, &g, &t, 3).unwrap());
      let (y, _) = jt_to_j5(&s, &g, &t, 3).unwrap();
      assert!(j5_check(&s, &y).unwrap().is_pass());
      assert!(j5_round_trip(&s, &g, &y).unwrap());
      // group case: sections are nerves of the codiscrete groupoid on two points
      assert_eq!(y.y.sections[0].counts(), &[2, 4, 8, 16]);
    }
  }

  #[test]
  fn non_pullback_tower_is_rejected() {
    let s = s1();
    let g = GpdPresheaf::from_groups(&s, &z2(&s));
    let (y, _) = jt_to_j5(&s, &g, &trivial_group_torsor(&z2(&s)).to_jt(), 3).unwrap();
    let bad = times_sphere(&s, &y, 2).unwrap();
    let (c, n, _) = pullback_failure(&s, &bad).unwrap();
    assert_eq!((c, n), (0, 2));
    assert_eq!(j5_check(&s, &bad).unwrap().condition(), Some(Condition::Pullback));
    assert!(j5_to_jt(&s, &g, &bad).is_err());
  }

  #[test]
  fn representable_tower_is_the_translation_nerve() {
    let s = pt();
    let g = GpdPresheaf::constant(&s, &FinGroupoid::codiscrete(2));
    let t = representable_torsor(&s, &g, &[0]).unwrap();
    let (y, tn) = jt_to_j5(&s, &g, &t, 3).unwrap();
    // E = G_1 into the chosen object acts freely and transitively, so `E ⇉ E` has one arrow between any two points
    assert_eq!(tn[0].groupoid.morphisms(), 4);
    assert_eq!(y.y.sections[0].counts(), &[2, 4, 8, 16]);
    assert!(j5_check(&s, &y).unwrap().is_pass());
  }
}

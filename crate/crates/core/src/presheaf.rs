//! Presheaves of sets, groups, simplicial sets and simplicial groupoids on a finite site.
//!
//! Restrictions are stored per morphism `m: c → d` as maps `P(d) → P(c)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::{pi0, GroupTable, UnionFind};
use crate::kan::{kan_check, KanVerdict};
use crate::search::{cylinder, Link, MapProblem};
use crate::sgroupoid::{SgdFunctor, SimpGroupoid};
use crate::site::FinSite;
use crate::sset::{product, Labelled, SSetMap, TruncSSet};
use crate::wbar::Cocycle;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetPresheaf {
  pub sizes: Vec<usize>,
  pub restrict: Vec<Vec<usize>>,
}

impl SetPresheaf {
  pub fn check(&self, site: &FinSite) -> Result<()> {
    if self.sizes.len() != site.objects() || self.restrict.len() != site.morphisms() {
      return Err(Error::Invalid("presheaf tables do not match the site".into()));
    }
    for m in 0..site.morphisms() {
      let t = &self.restrict[m];
      if t.len() != self.sizes[site.dst[m]] || t.iter().any(|&x| x >= self.sizes[site.src[m]]) {
        return Err(Error::Invalid(format!("restriction along {} has the wrong shape", site.mor_names[m])));
      }
    }
    for c in 0..site.objects() {
      let e = site.identity[c];
      if self.restrict[e].iter().enumerate().any(|(x, &y)| x != y) {
        return Err(Error::Invalid(format!("identity of {} acts nontrivially", site.names[c])));
      }
    }
    for g in 0..site.morphisms() {
      for f in (0..site.morphisms()).filter(|&f| site.dst[f] == site.src[g]) {
        let gf = site.comp(g, f);
        if (0..self.sizes[site.dst[g]]).any(|x| self.restrict[gf][x] != self.restrict[f][self.restrict[g][x]]) {
          return Err(Error::Invalid(format!(
            "restriction is not functorial at {} ∘ {}",
            site.mor_names[g], site.mor_names[f]
          )));
        }
      }
    }
    Ok(())
  }

  pub fn constant(site: &FinSite, k: usize) -> Self {
    Self { sizes: vec![k; site.objects()], restrict: (0..site.morphisms()).map(|_| (0..k).collect()).collect() }
  }

  pub fn empty(site: &FinSite) -> Self {
    Self::constant(site, 0)
  }

  /// A map of presheaves is natural when it commutes with every restriction.
  pub fn is_natural(&self, other: &SetPresheaf, map: &[Vec<usize>], site: &FinSite) -> bool {
    (0..site.morphisms()).all(|m| {
      (0..self.sizes[site.dst[m]])
        .all(|x| map[site.src[m]][self.restrict[m][x]] == other.restrict[m][map[site.dst[m]][x]])
    })
  }

  pub fn to_json(&self, site: &FinSite) -> String {
    let v = serde_json::json!({
      "sections": site.names.iter().zip(&self.sizes).map(|(n, s)| (n.clone(), *s)).collect::<std::collections::BTreeMap<_, _>>(),
      "restrictions": site.mor_names.iter().zip(&self.restrict).map(|(n, t)| (n.clone(), t.clone())).collect::<std::collections::BTreeMap<_, _>>(),
    });
    v.to_string()
  }
}

/// A presheaf of groups: a set presheaf whose sections carry group tables preserved by restriction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresheaf {
  pub sets: SetPresheaf,
  pub groups: Vec<GroupTable>,
}

impl GroupPresheaf {
  pub fn constant(site: &FinSite, g: &GroupTable) -> Self {
    Self { sets: SetPresheaf::constant(site, g.order()), groups: vec![g.clone(); site.objects()] }
  }

  pub fn check(&self, site: &FinSite) -> Result<()> {
    self.sets.check(site)?;
    for (c, g) in self.groups.iter().enumerate() {
      if !g.is_group() || g.order() != self.sets.sizes[c] {
        return Err(Error::Invalid(format!("section at {} is not a group", site.names[c])));
      }
    }
    for m in 0..site.morphisms() {
      let (g, h, r) = (&self.groups[site.dst[m]], &self.groups[site.src[m]], &self.sets.restrict[m]);
      for a in 0..g.order() {
        for b in 0..g.order() {
          if r[g.mul[a][b]] != h.mul[r[a]][r[b]] {
            return Err(Error::Invalid(format!("restriction along {} is not a homomorphism", site.mor_names[m])));
          }
        }
      }
    }
    Ok(())
  }

  /// The presheaf of simplicial groups constant in the simplicial direction.
  pub fn as_sgd(&self, site: &FinSite, trunc: usize) -> SgdPresheaf {
    let sections: Vec<SimpGroupoid> =
      self.groups.iter().map(|g| SimpGroupoid::constant(&crate::groupoid::FinGroupoid::from_group(g), trunc)).collect();
    let restrict = (0..site.morphisms())
      .map(|m| SgdFunctor {
        on_objects: vec![0],
        on_cells: SSetMap::new_unchecked((0..=trunc).map(|_| self.sets.restrict[m].clone()).collect()),
      })
      .collect();
    SgdPresheaf { sections, restrict }
  }
}

/// A presheaf of truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPresheaf {
  pub sections: Vec<TruncSSet>,
  pub restrict: Vec<SSetMap>,
}

impl SPresheaf {
  pub fn trunc(&self) -> usize {
    self.sections.first().map(|s| s.trunc()).unwrap_or(0)
  }

  pub fn check(&self, site: &FinSite) -> Result<()> {
    if self.sections.len() != site.objects() || self.restrict.len() != site.morphisms() {
      return Err(Error::Invalid("presheaf tables do not match the site".into()));
    }
    for (c, s) in self.sections.iter().enumerate() {
      let r = s.validate();
      if !r.is_pass() {
        return Err(Error::Invalid(format!("section at {}: {r}", site.names[c])));
      }
    }
    for m in 0..site.morphisms() {
      self.restrict[m].check(&self.sections[site.dst[m]], &self.sections[site.src[m]])?;
    }
    for c in 0..site.objects() {
      if self.restrict[site.identity[c]] != SSetMap::identity(&self.sections[c]) {
        return Err(Error::Invalid(format!("identity of {} acts nontrivially", site.names[c])));
      }
    }
    for g in 0..site.morphisms() {
      for f in (0..site.morphisms()).filter(|&f| site.dst[f] == site.src[g]) {
        if self.restrict[site.comp(g, f)] != self.restrict[g].then(&self.restrict[f]) {
          return Err(Error::Invalid(format!(
            "restriction is not functorial at {} ∘ {}",
            site.mor_names[g], site.mor_names[f]
          )));
        }
      }
    }
    Ok(())
  }

  pub fn point(site: &FinSite, trunc: usize) -> Self {
    Self::constant(site, &TruncSSet::point(trunc))
  }

  pub fn constant(site: &FinSite, x: &TruncSSet) -> Self {
    Self { sections: vec![x.clone(); site.objects()], restrict: vec![SSetMap::identity(x); site.morphisms()] }
  }

  /// Sections discrete in the simplicial direction.
  pub fn discrete(site: &FinSite, p: &SetPresheaf, trunc: usize) -> Self {
    Self {
      sections: p.sizes.iter().map(|&k| TruncSSet::discrete(k, trunc)).collect(),
      restrict: (0..site.morphisms())
        .map(|m| SSetMap::new_unchecked((0..=trunc).map(|_| p.restrict[m].clone()).collect()))
        .collect(),
    }
  }

  /// The set presheaf of components.
  pub fn pi0(&self, site: &FinSite) -> (SetPresheaf, Vec<Vec<usize>>) {
    let comps: Vec<_> = self.sections.iter().map(pi0).collect();
    let restrict = (0..site.morphisms())
      .map(|m| {
        let (a, b) = (site.dst[m], site.src[m]);
        comps[a].representatives().iter().map(|&v| comps[b].of_vertex[self.restrict[m].apply(0, v)]).collect()
      })
      .collect();
    let of_vertex = comps.iter().map(|c| c.of_vertex.clone()).collect();
    (SetPresheaf { sizes: comps.iter().map(|c| c.count).collect(), restrict }, of_vertex)
  }

  /// Vertex sets as a set presheaf.
  pub fn vertices(&self, site: &FinSite) -> SetPresheaf {
    SetPresheaf {
      sizes: self.sections.iter().map(|s| s.count(0)).collect(),
      restrict: (0..site.morphisms()).map(|m| self.restrict[m].map[0].clone()).collect(),
    }
  }

  pub fn kan_check(&self, maxdim: usize) -> std::result::Result<(), (usize, KanVerdict)> {
    for (c, s) in self.sections.iter().enumerate() {
      let v = kan_check(s, maxdim);
      if !v.is_pass() {
        return Err((c, v));
      }
    }
    Ok(())
  }

  pub fn product(&self, other: &SPresheaf, site: &FinSite) -> Result<(SPresheaf, Vec<Labelled<(usize, usize)>>)> {
    let labs = self.sections.iter().zip(&other.sections).map(|(x, y)| product(x, y)).collect::<Result<Vec<_>>>()?;
    let restrict = (0..site.morphisms())
      .map(|m| {
        let (a, b) = (site.dst[m], site.src[m]);
        labs[a].map_to(&labs[b], |n, &(x, y)| (self.restrict[m].apply(n, x), other.restrict[m].apply(n, y)))
      })
      .collect::<Result<Vec<_>>>()?;
    Ok((SPresheaf { sections: labs.iter().map(|l| l.sset.clone()).collect(), restrict }, labs))
  }

  /// A map of presheaves is natural when it commutes with every restriction.
  pub fn is_natural(&self, other: &SPresheaf, f: &[SSetMap], site: &FinSite) -> bool {
    (0..site.morphisms()).all(|m| self.restrict[m].then(&f[site.src[m]]) == f[site.dst[m]].then(&other.restrict[m]))
  }

  /// The constraint problem whose solutions are the natural maps `self → other`.
  pub fn map_problem<'a>(&'a self, other: &'a SPresheaf, site: &FinSite) -> MapProblem<'a> {
    let mut links = Vec::new();
    for m in 0..site.morphisms() {
      let (c, d) = (site.dst[m], site.src[m]);
      if c == d && m == site.identity[c] {
        continue;
      }
      for n in 0..=self.trunc() {
        for x in 0..self.sections[c].count(n) {
          links.push(Link {
            from: (c, n, x),
            to: (d, n, self.restrict[m].apply(n, x)),
            via: other.restrict[m].map[n].clone(),
          });
        }
      }
    }
    MapProblem {
      sources: self.sections.iter().collect(),
      targets: other.sections.iter().collect(),
      fixed: Vec::new(),
      links,
    }
  }

  pub fn all_maps(&self, other: &SPresheaf, site: &FinSite, limit: usize) -> Result<Vec<Vec<SSetMap>>> {
    self.map_problem(other, site).all(limit)
  }

  /// Sectionwise cylinder `X × Δ^1` with its end inclusions.
  pub fn cylinder(&self, site: &FinSite) -> Result<(SPresheaf, [Vec<SSetMap>; 2])> {
    let d1 = SPresheaf::constant(site, &TruncSSet::standard(1, self.trunc()));
    let (cyl, _) = self.product(&d1, site)?;
    let mut ends: [Vec<SSetMap>; 2] = [Vec::new(), Vec::new()];
    for s in &self.sections {
      let (_, e) = cylinder(s);
      ends[0].push(e[0].clone());
      ends[1].push(e[1].clone());
    }
    Ok((cyl, ends))
  }

  /// A natural homotopy from `f` to `g`, if there is one.
  pub fn homotopy(
    &self,
    other: &SPresheaf,
    site: &FinSite,
    f: &[SSetMap],
    g: &[SSetMap],
  ) -> Result<Option<Vec<SSetMap>>> {
    let (cyl, ends) = self.cylinder(site)?;
    let mut problem = cyl.map_problem(other, site);
    for (e, h) in [f, g].iter().enumerate() {
      for c in 0..site.objects() {
        for n in 0..=self.trunc() {
          for s in 0..self.sections[c].count(n) {
            problem.fixed.push(((c, n, ends[e][c].apply(n, s)), h[c].apply(n, s)));
          }
        }
      }
    }
    problem.first()
  }

  /// Classes of natural maps `self → other` under the equivalence generated by naive homotopy.
  pub fn homotopy_classes(&self, other: &SPresheaf, site: &FinSite, limit: usize) -> Result<HomotopyClasses> {
    let maps = self.all_maps(other, site, limit)?;
    let mut uf = UnionFind::new(maps.len());
    for i in 0..maps.len() {
      for j in i + 1..maps.len() {
        if uf.find(i) == uf.find(j) {
          continue;
        }
        if self.homotopy(other, site, &maps[i], &maps[j])?.is_some()
          || self.homotopy(other, site, &maps[j], &maps[i])?.is_some()
        {
          uf.union(i, j);
        }
      }
    }
    let (class, count) = uf.classes();
    Ok(HomotopyClasses { maps, class, count })
  }
}

#[derive(Clone, Debug)]
pub struct HomotopyClasses {
  pub maps: Vec<Vec<SSetMap>>,
  pub class: Vec<usize>,
  pub count: usize,
}

impl HomotopyClasses {
  pub fn class_of(&self, f: &[SSetMap]) -> Option<usize> {
    self.maps.iter().position(|g| g == f).map(|k| self.class[k])
  }
}

/// The free presheaf `L_U(Y)`: at `V`, one copy of `Y` for each morphism `V → U`.
pub fn free_presheaf(site: &FinSite, u: usize, y: &TruncSSet) -> (SPresheaf, Vec<Labelled<(usize, usize)>>) {
  let labs: Vec<Labelled<(usize, usize)>> = (0..site.objects())
    .map(|v| {
      let homs = site.hom(v, u);
      let levels =
        (0..=y.trunc()).map(|n| homs.iter().flat_map(|&f| (0..y.count(n)).map(move |s| (f, s))).collect()).collect();
      Labelled::build(y.trunc(), levels, |n, i, &(f, s)| (f, y.face(n, i, s)), |n, j, &(f, s)| (f, y.degen(n, j, s)))
        .expect("free presheaf section")
    })
    .collect();
  let restrict = (0..site.morphisms())
    .map(|m| {
      labs[site.dst[m]]
        .map_to(&labs[site.src[m]], |_, &(f, s)| (site.comp(f, m), s))
        .expect("restriction by precomposition")
    })
    .collect();
  (SPresheaf { sections: labs.iter().map(|l| l.sset.clone()).collect(), restrict }, labs)
}

/// A simplex of a Čech resolution over `W`: the structure map `W → V` (absent over the
/// terminal presheaf) and the tuple of `(member, W → U_member)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CechSimplex {
  pub base: Option<usize>,
  pub tuple: Vec<(usize, usize)>,
}

/// A covering family, either of objects over the terminal presheaf or of morphisms into an object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverFamily {
  Terminal(Vec<usize>),
  Over { object: usize, morphisms: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct CechResolution {
  pub family: CoverFamily,
  pub presheaf: SPresheaf,
  pub labels: Vec<Labelled<CechSimplex>>,
}

/// The Čech resolution `C(U)`. Iterated fibre products are computed as presheaves, so they need
/// not be representable.
pub fn cech_nerve(site: &FinSite, family: &CoverFamily, trunc: usize) -> CechResolution {
  let members: Vec<(usize, Option<usize>)> = match family {
    CoverFamily::Terminal(objs) => objs.iter().map(|&u| (u, None)).collect(),
    CoverFamily::Over { morphisms, .. } => morphisms.iter().map(|&m| (site.src[m], Some(m))).collect(),
  };
  let labs: Vec<Labelled<CechSimplex>> = (0..site.objects())
    .map(|w| {
      let bases: Vec<Option<usize>> = match family {
        CoverFamily::Terminal(_) => vec![None],
        CoverFamily::Over { object, .. } => site.hom(w, *object).into_iter().map(Some).collect(),
      };
      let levels = (0..=trunc)
        .map(|n| {
          let mut out = Vec::new();
          for &b in &bases {
            let points: Vec<(usize, usize)> = members
              .iter()
              .enumerate()
              .flat_map(|(i, &(u, p))| {
                site
                  .hom(w, u)
                  .into_iter()
                  .filter(move |&f| p.is_none_or(|p| Some(site.comp(p, f)) == b))
                  .map(move |f| (i, f))
              })
              .collect();
            let mut tuples: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
            for _ in 0..=n {
              tuples =
                tuples.into_iter().flat_map(|t| points.iter().map(move |&p| [t.clone(), vec![p]].concat())).collect();
            }
            out.extend(tuples.into_iter().map(|tuple| CechSimplex { base: b, tuple }));
          }
          out
        })
        .collect();
      Labelled::build_with_action(trunc, levels, |t, s: &CechSimplex| CechSimplex {
        base: s.base,
        tuple: t.values().iter().map(|&k| s.tuple[k]).collect(),
      })
      .expect("Čech nerve section")
    })
    .collect();
  let restrict = (0..site.morphisms())
    .map(|m| {
      labs[site.dst[m]]
        .map_to(&labs[site.src[m]], |_, s| CechSimplex {
          base: s.base.map(|b| site.comp(b, m)),
          tuple: s.tuple.iter().map(|&(i, f)| (i, site.comp(f, m))).collect(),
        })
        .expect("Čech restriction")
    })
    .collect();
  CechResolution {
    family: family.clone(),
    presheaf: SPresheaf { sections: labs.iter().map(|l| l.sset.clone()).collect(), restrict },
    labels: labs,
  }
}

/// A presheaf of simplicial groupoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgdPresheaf {
  pub sections: Vec<SimpGroupoid>,
  pub restrict: Vec<SgdFunctor>,
}

impl SgdPresheaf {
  pub fn constant(site: &FinSite, h: &SimpGroupoid) -> Self {
    Self { sections: vec![h.clone(); site.objects()], restrict: vec![SgdFunctor::identity(h); site.morphisms()] }
  }

  pub fn trunc(&self) -> usize {
    self.sections[0].trunc()
  }

  pub fn check(&self, site: &FinSite) -> Result<()> {
    for m in 0..site.morphisms() {
      self.restrict[m].check(&self.sections[site.dst[m]], &self.sections[site.src[m]])?;
    }
    for g in 0..site.morphisms() {
      for f in (0..site.morphisms()).filter(|&f| site.dst[f] == site.src[g]) {
        if self.restrict[site.comp(g, f)] != self.restrict[g].then(&self.restrict[f]) {
          return Err(Error::Invalid(format!(
            "restriction is not functorial at {} ∘ {}",
            site.mor_names[g], site.mor_names[f]
          )));
        }
      }
    }
    Ok(())
  }

  /// Sectionwise `W̄`, with the cocycle labels of each section.
  pub fn wbar(&self, site: &FinSite) -> (SPresheaf, Vec<Labelled<Cocycle>>) {
    let labs: Vec<Labelled<Cocycle>> = self.sections.iter().map(|h| h.wbar()).collect();
    let restrict = (0..site.morphisms())
      .map(|m| self.restrict[m].on_wbar(&labs[site.dst[m]], &labs[site.src[m]]).expect("restriction of W̄"))
      .collect();
    (SPresheaf { sections: labs.iter().map(|l| l.sset.clone()).collect(), restrict }, labs)
  }

  /// Sectionwise `dB`.
  pub fn db(&self, site: &FinSite) -> (SPresheaf, Vec<Labelled<crate::groupoid::NerveSimplex>>) {
    let labs: Vec<_> = self.sections.iter().map(|h| h.db()).collect();
    let restrict = (0..site.morphisms())
      .map(|m| self.restrict[m].on_db(&labs[site.dst[m]], &labs[site.src[m]]).expect("restriction of dB"))
      .collect();
    (SPresheaf { sections: labs.iter().map(|l| l.sset.clone()).collect(), restrict }, labs)
  }
}

/// A map of presheaves of simplicial groupoids, one functor per object.
pub type SgdPresheafMap = Vec<SgdFunctor>;

/// Objectwise pullback of `A → C ← B`, with both projections.
pub fn pullback_sgd(
  site: &FinSite,
  a: &SgdPresheaf,
  f: &SgdPresheafMap,
  b: &SgdPresheaf,
  g: &SgdPresheafMap,
) -> Result<(SgdPresheaf, SgdPresheafMap, SgdPresheafMap)> {
  let mut sections = Vec::new();
  let mut pa = Vec::new();
  let mut pb = Vec::new();
  for c in 0..site.objects() {
    let (p, x, y) = crate::sgroupoid::pullback(&a.sections[c], &f[c], &b.sections[c], &g[c])?;
    sections.push(p);
    pa.push(x);
    pb.push(y);
  }
  // restriction of the pullback: componentwise on pairs
  let mut restrict = Vec::new();
  for m in 0..site.morphisms() {
    let (c, d) = (site.dst[m], site.src[m]);
    let (sc, sd) = (&sections[c], &sections[d]);
    let pair_obj = |o: usize, p: &SgdFunctor, q: &SgdFunctor| (p.on_objects[o], q.on_objects[o]);
    let on_objects = (0..sc.objects())
      .map(|o| {
        let (x, y) = pair_obj(o, &pa[c], &pb[c]);
        let target = (a.restrict[m].on_objects[x], b.restrict[m].on_objects[y]);
        (0..sd.objects())
          .find(|&o2| pair_obj(o2, &pa[d], &pb[d]) == target)
          .expect("restricted object lies in the pullback")
      })
      .collect();
    let on_cells = (0..=sc.trunc())
      .map(|n| {
        (0..sc.mor().count(n))
          .map(|k| {
            let target = (
              a.restrict[m].on_cells.map[n][pa[c].on_cells.map[n][k]],
              b.restrict[m].on_cells.map[n][pb[c].on_cells.map[n][k]],
            );
            (0..sd.mor().count(n))
              .find(|&k2| (pa[d].on_cells.map[n][k2], pb[d].on_cells.map[n][k2]) == target)
              .expect("restricted cell lies in the pullback")
          })
          .collect()
      })
      .collect();
    restrict.push(SgdFunctor { on_objects, on_cells: SSetMap::new_unchecked(on_cells) });
  }
  let p = SgdPresheaf { sections, restrict };
  p.check(site)?;
  Ok((p, pa, pb))
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::groupoid::FinGroupoid;

  fn s1() -> FinSite {
    FinSite::poset(&["U", "V", "A", "B"], &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V")], &[]).unwrap()
  }

  #[test]
  fn free_presheaf_counts_homs() {
    let s = s1();
    let u = s.object("U").unwrap();
    let (p, _) = free_presheaf(&s, u, &TruncSSet::point(2));
    p.check(&s).unwrap();
    for v in 0..s.objects() {
      assert_eq!(p.sections[v].count(0), s.hom(v, u).len());
    }
  }

  #[test]
  fn cech_level_zero_at_a() {
    let s = s1();
    let (u, v, a) = (s.object("U").unwrap(), s.object("V").unwrap(), s.object("A").unwrap());
    let c = cech_nerve(&s, &CoverFamily::Terminal(vec![u, v]), 3);
    c.presheaf.check(&s).unwrap();
    assert_eq!(c.presheaf.sections[a].count(0), 2);
    assert_eq!(c.presheaf.sections[u].count(0), 1);
  }

  #[test]
  fn cech_of_identity_is_representable() {
    let s = s1();
    let u = s.object("U").unwrap();
    let c = cech_nerve(&s, &CoverFamily::Over { object: u, morphisms: vec![s.identity[u]] }, 2);
    for w in 0..s.objects() {
      let homs = s.hom(w, u).len();
      assert_eq!(c.presheaf.sections[w].counts(), &vec![homs; 3][..]);
    }
  }

  #[test]
  fn natural_maps_and_classes() {
    let s = s1();
    let (u, v) = (s.object("U").unwrap(), s.object("V").unwrap());
    let c = cech_nerve(&s, &CoverFamily::Terminal(vec![u, v]), 3);
    let bz2 = SgdPresheaf::constant(&s, &SimpGroupoid::constant(&FinGroupoid::cyclic(2), 3));
    let (w, _) = bz2.wbar(&s);
    let classes = c.presheaf.homotopy_classes(&w, &s, 1000).unwrap();
    assert_eq!(classes.maps.len(), 4);
    assert_eq!(classes.count, 2);
    for f in &classes.maps {
      assert!(c.presheaf.is_natural(&w, f, &s));
    }
  }

  #[test]
  fn wbar_presheaf_is_natural() {
    let s = s1();
    let h = SgdPresheaf::constant(&s, &SimpGroupoid::constant(&FinGroupoid::codiscrete(2), 3));
    let (w, _) = h.wbar(&s);
    w.check(&s).unwrap();
  }
}

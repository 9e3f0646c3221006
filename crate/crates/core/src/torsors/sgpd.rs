//! Torsors for a presheaf of simplicial groupoids: simplicial functors `X: G → SPre` whose
//! homotopy colimit is locally contractible, the comma construction `ψ` out of functors on a
//! Čech groupoid, and `φ` sending a torsor to `holim_G X → dBG → W̄G`.

use serde::Serialize;

use super::action::{local_contractibility, GpdPresheaf};
use super::{partition, Condition, Partition, TorsorVerdict};
use crate::error::{Error, Result};
use crate::groupoid::{FinGroupoid, GroupoidFunctor, NerveSimplex};
use crate::holim::{comma, holim, Holim, HolimSimplex, SFunctor};
use crate::homotopy::weq_check;
use crate::presheaf::{cech_nerve, CechResolution, CechSimplex, CoverFamily, SPresheaf, SgdPresheaf};
use crate::search::{Link, MapProblem};
use crate::sgroupoid::SgdFunctor;
use crate::site::FinSite;
use crate::sset::SSetMap;

/// A simplicial functor `X: G → SPre`: per section an `SFunctor` on `G(c)`, and for each site
/// morphism `m: c → d` and object `a` of `G(d)`, the restriction `X_d(a) → X_c(F_m a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgdTorsorCandidate {
  pub functors: Vec<SFunctor>,
  pub restrict: Vec<Vec<SSetMap>>,
}

impl SgdTorsorCandidate {
  pub fn check(&self, site: &FinSite, g: &SgdPresheaf) -> Result<()> {
    g.check(site)?;
    if self.functors.len() != site.objects() || self.restrict.len() != site.morphisms() {
      return Err(Error::Invalid("candidate does not match the site".into()));
    }
    for (c, x) in self.functors.iter().enumerate() {
      x.check(&g.sections[c]).map_err(|e| Error::Invalid(format!("at {}: {e}", site.names[c])))?;
    }
    for m in 0..site.morphisms() {
      let (c, d) = (site.src[m], site.dst[m]);
      let f = &g.restrict[m];
      let (xc, xd) = (&self.functors[c], &self.functors[d]);
      if self.restrict[m].len() != g.sections[d].objects() {
        return Err(Error::Invalid(format!(
          "restriction along {} has the wrong number of components",
          site.mor_names[m]
        )));
      }
      for (a, r) in self.restrict[m].iter().enumerate() {
        r.check(&xd.values[a], &xc.values[f.on_objects[a]])?;
      }
      let h = &g.sections[d];
      for n in 0..=h.trunc() {
        let lvl = h.level(n);
        for k in 0..lvl.morphisms() {
          let (a, b) = (lvl.src[k], lvl.dst[k]);
          let fk = f.on_cells.map[n][k];
          for s in 0..xd.values[a].count(n) {
            if self.restrict[m][b].apply(n, xd.act[n][k][s]) != xc.act[n][fk][self.restrict[m][a].apply(n, s)] {
              return Err(Error::Invalid(format!(
                "restriction along {} is not natural in level {n}",
                site.mor_names[m]
              )));
            }
          }
        }
      }
    }
    Ok(())
  }

  /// `G` acting on itself, for one object per section.
  pub fn trivial_group(site: &FinSite, g: &SgdPresheaf) -> Result<Self> {
    if g.sections.iter().any(|h| h.objects() != 1) {
      return Err(Error::Precondition("the trivial torsor here needs one object per section".into()));
    }
    let functors: Vec<SFunctor> = g.sections.iter().map(|h| SFunctor::corepresented(h, 0)).collect();
    let restrict = (0..site.morphisms())
      .map(|m| {
        let (c, d) = (site.src[m], site.dst[m]);
        let f = &g.restrict[m];
        // both values list the cells of the group in id order
        let r = SSetMap::new_unchecked(
          (0..=g.trunc()).map(|n| (0..g.sections[d].mor().count(n)).map(|k| f.on_cells.map[n][k]).collect()).collect(),
        );
        r.check(&functors[d].values[0], &functors[c].values[0])?;
        Ok(vec![r])
      })
      .collect::<Result<Vec<_>>>()?;
    let t = Self { functors, restrict };
    t.check(site, g)?;
    Ok(t)
  }
}

/// `holim_G X` sectionwise, with the homotopy colimit of each section.
pub fn holim_presheaf(site: &FinSite, g: &SgdPresheaf, t: &SgdTorsorCandidate) -> Result<(SPresheaf, Vec<Holim>)> {
  let hs: Vec<Holim> = (0..site.objects()).map(|c| holim(&g.sections[c], &t.functors[c])).collect();
  let restrict = (0..site.morphisms())
    .map(|m| {
      let (c, d) = (site.src[m], site.dst[m]);
      let f = &g.restrict[m];
      hs[d].labels.map_to(&hs[c].labels, |n, h: &HolimSimplex| HolimSimplex {
        x: t.restrict[m][h.s.objs[0]].apply(n, h.x),
        s: on_string(f, n, &h.s),
      })
    })
    .collect::<Result<Vec<_>>>()?;
  Ok((SPresheaf { sections: hs.iter().map(|h| h.sset().clone()).collect(), restrict }, hs))
}

fn on_string(f: &SgdFunctor, n: usize, s: &NerveSimplex) -> NerveSimplex {
  NerveSimplex {
    objs: s.objs.iter().map(|&o| f.on_objects[o]).collect(),
    mors: s.mors.iter().map(|&k| f.on_cells.map[n][k]).collect(),
  }
}

/// Functoriality, then local contractibility of the homotopy colimit.
pub fn sgd_torsor_check(site: &FinSite, g: &SgdPresheaf, t: &SgdTorsorCandidate) -> Result<TorsorVerdict> {
  if let Err(e) = t.check(site, g) {
    return Ok(TorsorVerdict::fail(Condition::Functoriality, None, e.to_string()));
  }
  let (h, _) = holim_presheaf(site, g, t)?;
  Ok(match local_contractibility(site, &h)? {
    TorsorVerdict::Pass => TorsorVerdict::Pass,
    TorsorVerdict::Fail { object, detail, .. } => {
      TorsorVerdict::Fail { condition: Condition::Equivalence, object, detail }
    }
  })
}

/// A map `W → B` with a certificate that `W → ∗` is a local weak equivalence.
#[derive(Clone, Debug)]
pub struct TrivObject {
  pub w: SPresheaf,
  pub map: Vec<SSetMap>,
  pub certificate: TorsorVerdict,
}

/// `φ(X)`: the projection `holim_G X → dBG`, and its composite with `j` into `W̄G`.
pub fn phi(site: &FinSite, g: &SgdPresheaf, t: &SgdTorsorCandidate) -> Result<(TrivObject, Vec<SSetMap>)> {
  let (w, hs) = holim_presheaf(site, g, t)?;
  let certificate = local_contractibility(site, &w)?;
  let (_, dbl) = g.db(site);
  let (_, wbl) = g.wbar(site);
  let to_wbar = (0..site.objects())
    .map(|c| Ok(hs[c].projection.then(&g.sections[c].j_map(&dbl[c], &wbl[c])?)))
    .collect::<Result<Vec<_>>>()?;
  let map = hs.iter().map(|h| h.projection.clone()).collect();
  Ok((TrivObject { w, map, certificate }, to_wbar))
}

/// The Čech groupoid of a terminal covering family: sectionwise the codiscrete groupoid on the
/// points of `C(F)_0`, constant in the simplicial direction, so that `dB(I) = C(F)`.
#[derive(Clone, Debug)]
pub struct CechGroupoid {
  pub cech: CechResolution,
  pub groupoid: SgdPresheaf,
}

pub fn cech_groupoid(site: &FinSite, family: &[usize], trunc: usize) -> CechGroupoid {
  let cech = cech_nerve(site, &CoverFamily::Terminal(family.to_vec()), trunc);
  let k: Vec<usize> = cech.presheaf.sections.iter().map(|s| s.count(0)).collect();
  let sections: Vec<FinGroupoid> = k.iter().map(|&k| FinGroupoid::codiscrete(k)).collect();
  let restrict = (0..site.morphisms())
    .map(|m| {
      let (c, d) = (site.src[m], site.dst[m]);
      let r = &cech.presheaf.restrict[m].map[0];
      GroupoidFunctor {
        on_objects: r.clone(),
        on_morphisms: (0..k[d] * k[d]).map(|ab| r[ab / k[d]] * k[c] + r[ab % k[d]]).collect(),
      }
    })
    .collect();
  let groupoid = GpdPresheaf { sections, restrict }.as_sgd(site, trunc);
  CechGroupoid { cech, groupoid }
}

/// The identification `C(F) ≅ dB(I)`: a tuple of points is the string of its consecutive pairs.
pub fn cech_to_db(site: &FinSite, i: &CechGroupoid) -> Result<Vec<SSetMap>> {
  (0..site.objects())
    .map(|c| {
      let (cl, db) = (&i.cech.labels[c], i.groupoid.sections[c].db());
      let k = cl.labels[0].len();
      cl.map_to(&db, |_, t: &CechSimplex| {
        let objs: Vec<usize> = t
          .tuple
          .iter()
          .map(|&p| cl.id_of(0, &CechSimplex { base: None, tuple: vec![p] }).expect("point of C(F)"))
          .collect();
        NerveSimplex { mors: objs.windows(2).map(|w| w[0] * k + w[1]).collect(), objs }
      })
    })
    .collect()
}

/// The composite `C(F) ≅ dB(I) → dBG → W̄G` of a functor out of the Čech groupoid.
pub fn functor_to_wbar(site: &FinSite, g: &SgdPresheaf, i: &CechGroupoid, f: &[SgdFunctor]) -> Result<Vec<SSetMap>> {
  let iso = cech_to_db(site, i)?;
  let (_, dbl) = g.db(site);
  let (_, wbl) = g.wbar(site);
  (0..site.objects())
    .map(|c| {
      let dbf = f[c].on_db(&i.groupoid.sections[c].db(), &dbl[c])?;
      Ok(iso[c].then(&dbf).then(&g.sections[c].j_map(&dbl[c], &wbl[c])?))
    })
    .collect()
}

/// Every natural functor `I_0 → G` into a presheaf of groupoids, found as natural maps of
/// 2-truncated nerves.
pub fn cech_gpd_functors(
  site: &FinSite,
  g: &GpdPresheaf,
  i: &CechGroupoid,
  limit: usize,
) -> Result<Vec<Vec<GroupoidFunctor>>> {
  let (n0, n0l) = g.nerve(site, 2);
  let c2 = cech_nerve(site, &i.cech.family, 2);
  let maps = c2.presheaf.all_maps(&n0, site, limit)?;
  maps
    .iter()
    .map(|f| {
      (0..site.objects())
        .map(|c| {
          let pts = &c2.labels[c].labels[0];
          let k = pts.len();
          let on_objects = (0..k).map(|p| n0l[c].label(0, f[c].apply(0, p)).objs[0]).collect();
          let on_morphisms = (0..k * k)
            .map(|ab| {
              let tuple = vec![pts[ab / k].tuple[0], pts[ab % k].tuple[0]];
              let e = c2.labels[c].id_of(1, &CechSimplex { base: None, tuple }).expect("edge of C(F)");
              n0l[c].label(1, f[c].apply(1, e)).mors[0]
            })
            .collect();
          let functor = GroupoidFunctor { on_objects, on_morphisms };
          functor.check(i.groupoid.sections[c].level(0), &g.sections[c])?;
          Ok(functor)
        })
        .collect::<Result<Vec<_>>>()
    })
    .collect()
}

/// Every natural functor `I → G` out of the Čech groupoid. Since `I` is constant these are the
/// natural functors `I_0 → G_0`, degenerated into every level.
pub fn cech_functors(site: &FinSite, g: &SgdPresheaf, i: &CechGroupoid, limit: usize) -> Result<Vec<Vec<SgdFunctor>>> {
  let trunc = g.trunc();
  let g0 = GpdPresheaf {
    sections: g.sections.iter().map(|h| h.level(0).clone()).collect(),
    restrict: g
      .restrict
      .iter()
      .map(|f| GroupoidFunctor { on_objects: f.on_objects.clone(), on_morphisms: f.on_cells.map[0].clone() })
      .collect(),
  };
  cech_gpd_functors(site, &g0, i, limit)?
    .into_iter()
    .map(|fs| {
      fs.into_iter()
        .enumerate()
        .map(|(c, f0)| {
          let h = &g.sections[c];
          let on_cells = SSetMap::new_unchecked(
            (0..=trunc).map(|n| f0.on_morphisms.iter().map(|&a| h.mor().degenerate_vertex(a, n)).collect()).collect(),
          );
          let functor = SgdFunctor { on_objects: f0.on_objects, on_cells };
          functor.check(&i.groupoid.sections[c], h)?;
          Ok(functor)
        })
        .collect::<Result<Vec<_>>>()
    })
    .collect()
}

/// `ψ(f)`: the functor `a ↦ dB(f ↓ a)`, with `G` acting by postcomposition.
pub fn psi(site: &FinSite, g: &SgdPresheaf, i: &CechGroupoid, f: &[SgdFunctor]) -> Result<SgdTorsorCandidate> {
  let trunc = g.trunc();
  let mut commas: Vec<Vec<Holim>> = Vec::new();
  let mut functors = Vec::new();
  for c in 0..site.objects() {
    let (u, h) = (&i.groupoid.sections[c], &g.sections[c]);
    let cs = (0..h.objects()).map(|a| comma(u, h, &f[c], a)).collect::<Result<Vec<_>>>()?;
    let homs: Vec<Vec<Vec<Vec<usize>>>> =
      (0..u.objects()).map(|o| (0..h.objects()).map(|a| h.hom(f[c].on_objects[o], a).1).collect()).collect();
    let act = (0..=trunc)
      .map(|n| {
        (0..h.mor().count(n))
          .map(|k| {
            let (a, b) = (h.level(n).src[k], h.level(n).dst[k]);
            cs[a].labels.labels[n]
              .iter()
              .map(|s| {
                let o = s.s.objs[0];
                let cell = h.level(n).comp(k, homs[o][a][n][s.x]);
                let x = homs[o][b][n].binary_search(&cell).expect("postcomposite lies in the hom");
                cs[b].labels.id_of(n, &HolimSimplex { x, s: s.s.clone() }).expect("postcomposition stays in the comma")
              })
              .collect()
          })
          .collect()
      })
      .collect();
    functors.push(SFunctor { values: cs.iter().map(|x| x.sset().clone()).collect(), act });
    commas.push(cs);
  }
  let restrict = (0..site.morphisms())
    .map(|m| {
      let (c, d) = (site.src[m], site.dst[m]);
      let (fm, im) = (&g.restrict[m], &i.groupoid.restrict[m]);
      (0..g.sections[d].objects())
        .map(|a| {
          let hd = &g.sections[d];
          let hc = &g.sections[c];
          commas[d][a].labels.map_to(&commas[c][fm.on_objects[a]].labels, |n, s: &HolimSimplex| {
            let o = s.s.objs[0];
            let cell = fm.on_cells.map[n][hd.hom(f[d].on_objects[o], a).1[n][s.x]];
            let o2 = im.on_objects[o];
            let x = hc.hom(f[c].on_objects[o2], fm.on_objects[a]).1[n]
              .binary_search(&cell)
              .expect("restricted cell lies in the hom");
            HolimSimplex { x, s: on_string(im, n, &s.s) }
          })
        })
        .collect::<Result<Vec<_>>>()
    })
    .collect::<Result<Vec<_>>>()?;
  let t = SgdTorsorCandidate { functors, restrict };
  t.check(site, g)?;
  Ok(t)
}

/// Search problem for natural transformations `x → y` of simplicial functors.
fn morphism_problem<'a>(
  site: &FinSite,
  g: &SgdPresheaf,
  x: &'a SgdTorsorCandidate,
  y: &'a SgdTorsorCandidate,
) -> MapProblem<'a> {
  let mut offset = vec![0];
  for c in 0..site.objects() {
    offset.push(offset[c] + g.sections[c].objects());
  }
  let mut p = MapProblem { sources: Vec::new(), targets: Vec::new(), fixed: Vec::new(), links: Vec::new() };
  for c in 0..site.objects() {
    for a in 0..g.sections[c].objects() {
      p.sources.push(&x.functors[c].values[a]);
      p.targets.push(&y.functors[c].values[a]);
    }
  }
  for c in 0..site.objects() {
    let h = &g.sections[c];
    for n in 0..=g.trunc() {
      for k in 0..h.mor().count(n) {
        let (a, b) = (h.level(n).src[k], h.level(n).dst[k]);
        for (s, &t) in x.functors[c].act[n][k].iter().enumerate() {
          p.links.push(Link {
            from: (offset[c] + a, n, s),
            to: (offset[c] + b, n, t),
            via: y.functors[c].act[n][k].clone(),
          });
        }
      }
    }
  }
  for m in 0..site.morphisms() {
    let (c, d) = (site.src[m], site.dst[m]);
    for a in 0..g.sections[d].objects() {
      let fa = g.restrict[m].on_objects[a];
      for n in 0..=g.trunc() {
        for (s, &t) in x.restrict[m][a].map[n].iter().enumerate() {
          p.links.push(Link {
            from: (offset[d] + a, n, s),
            to: (offset[c] + fa, n, t),
            via: y.restrict[m][a].map[n].clone(),
          });
        }
      }
    }
  }
  p
}

/// A natural transformation `x → y`, flattened over `(section, object)`.
pub fn sgd_morphism(
  site: &FinSite,
  g: &SgdPresheaf,
  x: &SgdTorsorCandidate,
  y: &SgdTorsorCandidate,
) -> Result<Option<Vec<SSetMap>>> {
  morphism_problem(site, g, x, y).first()
}

/// Path components under natural transformations. These need not be isomorphisms, so a morphism
/// counts as invertible when it is an objectwise weak equivalence up to `maxdeg`.
pub fn pi0_sgd(site: &FinSite, g: &SgdPresheaf, list: &[SgdTorsorCandidate], maxdeg: usize) -> Result<Partition> {
  partition(list.len(), |i, j| {
    let Some(f) = sgd_morphism(site, g, &list[i], &list[j])? else { return Ok(None) };
    let pairs = (0..site.objects()).flat_map(|c| list[i].functors[c].values.iter().zip(&list[j].functors[c].values));
    for (m, (x, y)) in f.iter().zip(pairs) {
      if !weq_check(x, y, m, maxdeg)?.is_pass() {
        return Ok(Some(false));
      }
    }
    Ok(Some(true))
  })
}

/// Size summary of a candidate, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct SgdSummary {
  pub value_counts: Vec<Vec<Vec<usize>>>,
}

impl SgdTorsorCandidate {
  pub fn summary(&self) -> SgdSummary {
    SgdSummary {
      value_counts: self.functors.iter().map(|f| f.values.iter().map(|v| v.counts().to_vec()).collect()).collect(),
    }
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::sgroupoid::SimpGroupoid;
  use crate::sset::TruncSSet;

  const N: usize = 3;

  fn pt() -> FinSite {
    FinSite::poset(&["*"], &[], &[]).unwrap()
  }

  fn s1() -> FinSite {
    FinSite::poset(&["U", "V", "A", "B"], &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V")], &[]).unwrap()
  }

  fn z2() -> SimpGroupoid {
    SimpGroupoid::constant(&FinGroupoid::cyclic(2), N)
  }

  fn twocomp() -> SimpGroupoid {
    SimpGroupoid::disjoint_union(&[&z2(), &SimpGroupoid::constant(&FinGroupoid::discrete(1), N)]).unwrap()
  }

  #[test]
  fn group_acting_on_itself_is_a_torsor() {
    let s = pt();
    let g = SgdPresheaf::constant(&s, &z2());
    let t = SgdTorsorCandidate::trivial_group(&s, &g).unwrap();
    assert!(sgd_torsor_check(&s, &g, &t).unwrap().is_pass());
    assert!(phi(&s, &g, &t).unwrap().0.certificate.is_pass());
  }

  #[test]
  fn two_fixed_points_fail_equivalence() {
    let s = pt();
    let g = SgdPresheaf::constant(&s, &z2());
    let t = SgdTorsorCandidate {
      functors: vec![SFunctor::constant(&g.sections[0], &TruncSSet::discrete(2, N))],
      restrict: vec![vec![SSetMap::identity(&TruncSSet::discrete(2, N))]],
    };
    assert_eq!(sgd_torsor_check(&s, &g, &t).unwrap().condition(), Some(Condition::Equivalence));
    let mut bad = t.clone();
    bad.functors[0].act[0][1] = vec![1, 1];
    assert_eq!(sgd_torsor_check(&s, &g, &bad).unwrap().condition(), Some(Condition::Functoriality));
  }

  #[test]
  fn comma_torsors_on_the_point() {
    let s = pt();
    let g = SgdPresheaf::constant(&s, &twocomp());
    let i = cech_groupoid(&s, &[0], N);
    let fs = cech_functors(&s, &g, &i, 100).unwrap();
    assert_eq!(fs.len(), 2);
    let ts: Vec<_> = fs.iter().map(|f| psi(&s, &g, &i, f).unwrap()).collect();
    for t in &ts {
      assert!(sgd_torsor_check(&s, &g, t).unwrap().is_pass());
    }
    let p = pi0_sgd(&s, &g, &ts, 1).unwrap();
    assert_eq!(p.count, 2);
  }

  #[test]
  fn comma_torsors_on_the_circle() {
    let s = s1();
    let g = SgdPresheaf::constant(&s, &z2());
    let i = cech_groupoid(&s, &[0, 1], N);
    let fs = cech_functors(&s, &g, &i, 100).unwrap();
    assert_eq!(fs.len(), 4);
    let mut ts: Vec<_> = fs.iter().map(|f| psi(&s, &g, &i, f).unwrap()).collect();
    for (t, f) in ts.iter().zip(&fs) {
      assert!(sgd_torsor_check(&s, &g, t).unwrap().is_pass());
      functor_to_wbar(&s, &g, &i, f).unwrap();
    }
    ts.push(SgdTorsorCandidate::trivial_group(&s, &g).unwrap());
    let p = pi0_sgd(&s, &g, &ts, 1).unwrap();
    assert_eq!(p.count, 2);
    assert!(p.all_invertible);
  }
}

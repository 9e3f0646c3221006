//! Simplicial `G`-presheaves for a presheaf of simplicial groups: free actions, orbit quotients,
//! the total object `WG` as cofibrant model, the Borel construction, and the maps `ψ_G, φ_G`.

use serde::Serialize;

use super::action::{local_contractibility, GroupTorsorCandidate};
use super::{partition, Condition, Partition, TorsorVerdict};
use crate::error::{Error, Result};
use crate::homotopy::{weq_check, UnionFind, WeqVerdict};
use crate::kan::{fibration_check, KanVerdict};
use crate::presheaf::{SPresheaf, SgdPresheaf};
use crate::search::{Link, MapProblem};
use crate::site::FinSite;
use crate::sset::{pullback, SSetMap, TruncSSet};
use crate::wbar::{w_total, Cocycle};

/// A simplicial presheaf with a left action `act[c][n][g][x] = g·x` of `G_n(c)` on `X_n(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialGPresheaf {
  pub x: SPresheaf,
  pub act: Vec<Vec<Vec<Vec<usize>>>>,
}

fn require_groups(g: &SgdPresheaf) -> Result<()> {
  if let Some(c) = g.sections.iter().position(|h| h.objects() != 1) {
    return Err(Error::Precondition(format!("section {c} of G is not a simplicial group")));
  }
  Ok(())
}

impl SimplicialGPresheaf {
  /// The action diagrams: unit, associativity, compatibility with the simplicial operators and
  /// with restriction.
  pub fn check(&self, site: &FinSite, g: &SgdPresheaf) -> Result<()> {
    require_groups(g)?;
    self.x.check(site)?;
    let bad = |c: usize, msg: String| Err(Error::Invalid(format!("at {}: {msg}", site.names[c])));
    for c in 0..site.objects() {
      let (h, xs) = (&g.sections[c], &self.x.sections[c]);
      for n in 0..=xs.trunc() {
        let lvl = h.level(n);
        let t = &self.act[c][n];
        if t.len() != lvl.morphisms() || t.iter().any(|r| r.len() != xs.count(n) || r.iter().any(|&y| y >= xs.count(n)))
        {
          return bad(c, format!("action table in level {n} is malformed"));
        }
        if t[lvl.identity[0]].iter().enumerate().any(|(x, &y)| x != y) {
          return bad(c, format!("the unit acts nontrivially in level {n}"));
        }
        for &(a, b, ab) in &lvl.compose {
          if (0..xs.count(n)).any(|x| t[ab][x] != t[a][t[b][x]]) {
            return bad(c, format!("action is not associative at {a}·{b} in level {n}"));
          }
        }
        for a in 0..lvl.morphisms() {
          for x in 0..xs.count(n) {
            if n > 0 && (0..=n).any(|i| xs.face(n, i, t[a][x]) != self.act[c][n - 1][h.face(n, i, a)][xs.face(n, i, x)])
            {
              return bad(c, format!("action does not commute with a face in level {n}"));
            }
            if n < xs.trunc()
              && (0..=n)
                .any(|j| xs.degen(n, j, t[a][x]) != self.act[c][n + 1][h.mor().degen(n, j, a)][xs.degen(n, j, x)])
            {
              return bad(c, format!("action does not commute with a degeneracy in level {n}"));
            }
          }
        }
      }
    }
    for m in 0..site.morphisms() {
      let (c, d) = (site.src[m], site.dst[m]);
      let (r, f) = (&self.x.restrict[m], &g.restrict[m]);
      for n in 0..=self.x.trunc() {
        for a in 0..g.sections[d].level(n).morphisms() {
          for x in 0..self.x.sections[d].count(n) {
            if r.apply(n, self.act[d][n][a][x]) != self.act[c][n][f.on_cells.map[n][a]][r.apply(n, x)] {
              return bad(d, format!("restriction along {} is not equivariant", site.mor_names[m]));
            }
          }
        }
      }
    }
    Ok(())
  }

  /// A sheaf with a free action of a discrete group presheaf, placed in every level.
  pub fn discrete(site: &FinSite, g: &SgdPresheaf, t: &GroupTorsorCandidate) -> Result<Self> {
    require_groups(g)?;
    let trunc = g.trunc();
    if g.sections.iter().any(|h| (0..=trunc).any(|n| h.mor().count(n) != h.mor().count(0))) {
      return Err(Error::Precondition("discrete G-sets need G constant in the simplicial direction".into()));
    }
    // a constant simplicial group has the same cells in every level; g acts through its vertex
    let act = (0..site.objects())
      .map(|c| {
        let h = &g.sections[c];
        (0..=trunc)
          .map(|n| {
            (0..h.mor().count(n))
              .map(|a| (0..t.e.sizes[c]).map(|x| t.act[c][x][h.level(n).inverse[a]]).collect())
              .collect()
          })
          .collect()
      })
      .collect();
    let s = Self { x: SPresheaf::discrete(site, &t.e, trunc), act };
    s.check(site, g)?;
    Ok(s)
  }
}

/// Whether `G` acts freely in every section and level, with a stabilised simplex as witness.
pub fn sgroup_free_action_check(site: &FinSite, g: &SgdPresheaf, x: &SimplicialGPresheaf) -> Result<TorsorVerdict> {
  x.check(site, g)?;
  for c in 0..site.objects() {
    let h = &g.sections[c];
    for n in 0..=x.x.trunc() {
      let e = h.level(n).identity[0];
      for a in (0..h.level(n).morphisms()).filter(|&a| a != e) {
        if let Some(s) = (0..x.x.sections[c].count(n)).find(|&s| x.act[c][n][a][s] == s) {
          return Ok(TorsorVerdict::fail(
            Condition::Free,
            Some(&site.names[c]),
            format!("level {n}: cell {a} fixes simplex {s}"),
          ));
        }
      }
    }
  }
  Ok(TorsorVerdict::Pass)
}

/// The orbit presheaf `X/G` with the quotient map and the orbit of every simplex.
#[derive(Clone, Debug)]
pub struct Quotient {
  pub presheaf: SPresheaf,
  pub map: Vec<SSetMap>,
}

/// Sectionwise orbits; faces and degeneracies are computed on representatives.
pub fn quotient(site: &FinSite, g: &SgdPresheaf, x: &SimplicialGPresheaf) -> Result<Quotient> {
  x.check(site, g)?;
  let trunc = x.x.trunc();
  let mut sections = Vec::new();
  let mut maps = Vec::new();
  for c in 0..site.objects() {
    let xs = &x.x.sections[c];
    let mut of: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for n in 0..=trunc {
      let mut uf = UnionFind::new(xs.count(n));
      for row in &x.act[c][n] {
        for (s, &t) in row.iter().enumerate() {
          uf.union(s, t);
        }
      }
      let (class, k) = uf.classes();
      let mut r = vec![usize::MAX; k];
      for (s, &o) in class.iter().enumerate() {
        if r[o] == usize::MAX {
          r[o] = s;
        }
      }
      of.push(class);
      reps.push(r);
    }
    let counts: Vec<usize> = reps.iter().map(Vec::len).collect();
    let faces = (0..=trunc)
      .map(|n| {
        if n == 0 {
          vec![]
        } else {
          (0..=n).map(|i| reps[n].iter().map(|&s| of[n - 1][xs.face(n, i, s)]).collect()).collect()
        }
      })
      .collect();
    let degens = (0..=trunc)
      .map(|n| {
        if n == trunc {
          vec![]
        } else {
          (0..=n).map(|j| reps[n].iter().map(|&s| of[n + 1][xs.degen(n, j, s)]).collect()).collect()
        }
      })
      .collect();
    let q = TruncSSet::from_tables(trunc, counts, faces, degens)?;
    let report = q.validate();
    if !report.is_pass() {
      return Err(Error::Invalid(format!("orbit quotient at {}: {report}", site.names[c])));
    }
    maps.push(SSetMap::new(xs, &q, of)?);
    sections.push(q);
  }
  let restrict = (0..site.morphisms())
    .map(|m| {
      let (c, d) = (site.src[m], site.dst[m]);
      let table = (0..=trunc)
        .map(|n| {
          (0..sections[d].count(n))
            .map(|o| {
              let s = (0..x.x.sections[d].count(n)).find(|&s| maps[d].apply(n, s) == o).expect("orbits are nonempty");
              maps[c].apply(n, x.x.restrict[m].apply(n, s))
            })
            .collect()
        })
        .collect();
      SSetMap::new(&sections[d], &sections[c], table)
    })
    .collect::<Result<Vec<_>>>()?;
  Ok(Quotient { presheaf: SPresheaf { sections, restrict }, map: maps })
}

/// Freeness, the quotient map as a sectionwise Kan fibration up to `maxdim`, and whether the
/// quotient is locally contractible.
#[derive(Clone, Debug, Serialize)]
pub struct BundleReport {
  pub free: TorsorVerdict,
  pub fibration: Vec<KanVerdict>,
  pub quotient_kan: bool,
  pub torsor: TorsorVerdict,
  pub maxdim: usize,
}

impl BundleReport {
  pub fn is_bundle(&self) -> bool {
    self.free.is_pass() && self.fibration.iter().all(KanVerdict::is_pass)
  }
}

/// Membership in `tors_0`: a free action, whose quotient map is a fibration and whose quotient
/// is sectionwise Kan and locally weakly equivalent to a point.
pub fn bundle_check(site: &FinSite, g: &SgdPresheaf, x: &SimplicialGPresheaf, maxdim: usize) -> Result<BundleReport> {
  let free = sgroup_free_action_check(site, g, x)?;
  if !free.is_pass() {
    return Ok(BundleReport { free: free.clone(), fibration: vec![], quotient_kan: false, torsor: free, maxdim });
  }
  let q = quotient(site, g, x)?;
  let fibration: Vec<KanVerdict> = (0..site.objects())
    .map(|c| fibration_check(&x.x.sections[c], &q.presheaf.sections[c], &q.map[c], maxdim))
    .collect();
  let quotient_kan = q.presheaf.kan_check(maxdim).is_ok();
  let torsor = if !quotient_kan {
    TorsorVerdict::fail(Condition::Shape, None, "X/G is not sectionwise Kan")
  } else {
    local_contractibility(site, &q.presheaf)?
  };
  Ok(BundleReport { free, fibration, quotient_kan, torsor, maxdim })
}

/// `WG` sectionwise, as a simplicial `G`-presheaf, with its cocycle labels.
pub fn wg_presheaf(
  site: &FinSite,
  g: &SgdPresheaf,
) -> Result<(SimplicialGPresheaf, Vec<Vec<Vec<Cocycle>>>, Vec<SSetMap>)> {
  require_groups(g)?;
  let totals = g.sections.iter().map(w_total).collect::<Result<Vec<_>>>()?;
  let trunc = g.trunc();
  let restrict = (0..site.morphisms())
    .map(|m| {
      let (c, d) = (site.src[m], site.dst[m]);
      let f = &g.restrict[m];
      let table = (0..=trunc)
        .map(|n| {
          totals[d].labels[n]
            .iter()
            .map(|w| {
              let moved = Cocycle {
                objs: w.objs.clone(),
                arrows: w.arrows.iter().enumerate().map(|(i, &a)| f.on_cells.map[n - i][a]).collect(),
              };
              totals[c].labels[n]
                .iter()
                .position(|v| *v == moved)
                .ok_or_else(|| Error::Invalid("restriction leaves WG".into()))
            })
            .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
      SSetMap::new(&totals[d].w, &totals[c].w, table)
    })
    .collect::<Result<Vec<_>>>()?;
  let x = SPresheaf { sections: totals.iter().map(|t| t.w.clone()).collect(), restrict };
  let act = totals.iter().map(|t| t.action.clone()).collect();
  let labels = totals.iter().map(|t| t.labels.clone()).collect();
  let projection = totals.iter().map(|t| t.projection.clone()).collect();
  Ok((SimplicialGPresheaf { x, act }, labels, projection))
}

/// `d(WG ×_G X)`, the quotient of `WG × X` by the diagonal action, with the projections to
/// `W̄G = WG/G` and, for free `X`, to `X/G`.
#[derive(Clone, Debug)]
pub struct Borel {
  pub presheaf: SPresheaf,
  pub to_wbar: Vec<SSetMap>,
  pub to_quotient: Option<Vec<SSetMap>>,
}

pub fn borel(site: &FinSite, g: &SgdPresheaf, x: &SimplicialGPresheaf) -> Result<Borel> {
  x.check(site, g)?;
  let (wg, _, wproj) = wg_presheaf(site, g)?;
  let (prod, labs) = wg.x.product(&x.x, site)?;
  let trunc = x.x.trunc();
  let act = (0..site.objects())
    .map(|c| {
      (0..=trunc)
        .map(|n| {
          (0..g.sections[c].level(n).morphisms())
            .map(|a| {
              labs[c].labels[n]
                .iter()
                .map(|&(w, y)| labs[c].id_of(n, &(wg.act[c][n][a][w], x.act[c][n][a][y])).unwrap())
                .collect()
            })
            .collect()
        })
        .collect()
    })
    .collect();
  let diag = SimplicialGPresheaf { x: prod, act };
  let q = quotient(site, g, &diag)?;
  let wbar = g.wbar(site).0;
  let via = |c: usize, f: &dyn Fn(usize, (usize, usize)) -> usize, target: &TruncSSet| -> Result<SSetMap> {
    let table = (0..=trunc)
      .map(|n| {
        (0..q.presheaf.sections[c].count(n))
          .map(|o| {
            let s = (0..diag.x.sections[c].count(n)).find(|&s| q.map[c].apply(n, s) == o).expect("orbits are nonempty");
            f(n, labs[c].labels[n][s])
          })
          .collect()
      })
      .collect();
    SSetMap::new(&q.presheaf.sections[c], target, table)
  };
  let to_wbar = (0..site.objects())
    .map(|c| via(c, &|n, (w, _)| wproj[c].apply(n, w), &wbar.sections[c]))
    .collect::<Result<Vec<_>>>()?;
  let to_quotient = if sgroup_free_action_check(site, g, x)?.is_pass() {
    let xq = quotient(site, g, x)?;
    Some(
      (0..site.objects())
        .map(|c| via(c, &|n, (_, y)| xq.map[c].apply(n, y), &xq.presheaf.sections[c]))
        .collect::<Result<Vec<_>>>()?,
    )
  } else {
    None
  };
  Ok(Borel { presheaf: q.presheaf, to_wbar, to_quotient })
}

/// `borel(X) → X/G` is a sectionwise weak equivalence for free `X`.
pub fn borel_comparison(
  site: &FinSite,
  g: &SgdPresheaf,
  x: &SimplicialGPresheaf,
  maxdeg: usize,
) -> Result<Vec<WeqVerdict>> {
  let b = borel(site, g, x)?;
  let q = quotient(site, g, x)?;
  let maps = b.to_quotient.ok_or_else(|| Error::Precondition("the action is not free".into()))?;
  (0..site.objects()).map(|c| weq_check(&b.presheaf.sections[c], &q.presheaf.sections[c], &maps[c], maxdeg)).collect()
}

/// Membership in `tors_1`: the Borel construction is locally weakly equivalent to a point.
pub fn tors1_check(site: &FinSite, g: &SgdPresheaf, x: &SimplicialGPresheaf) -> Result<TorsorVerdict> {
  let b = borel(site, g, x)?;
  local_contractibility(site, &b.presheaf)
}

/// `ψ_G(u) = U ×_{W̄G} WG` for a map `u: U → W̄G`, acting on the second factor, together with the
/// equivariant projection to `WG`.
pub fn psi_g(
  site: &FinSite,
  g: &SgdPresheaf,
  u: &SPresheaf,
  f: &[SSetMap],
) -> Result<(SimplicialGPresheaf, Vec<SSetMap>)> {
  let (wg, _, wproj) = wg_presheaf(site, g)?;
  let labs = (0..site.objects())
    .map(|c| pullback(&u.sections[c], &f[c], &wg.x.sections[c], &wproj[c]))
    .collect::<Result<Vec<_>>>()?;
  let restrict = (0..site.morphisms())
    .map(|m| {
      let (c, d) = (site.src[m], site.dst[m]);
      labs[d].map_to(&labs[c], |n, &(a, b)| (u.restrict[m].apply(n, a), wg.x.restrict[m].apply(n, b)))
    })
    .collect::<Result<Vec<_>>>()?;
  let act = (0..site.objects())
    .map(|c| {
      (0..=u.trunc())
        .map(|n| {
          (0..g.sections[c].level(n).morphisms())
            .map(|a| {
              labs[c].labels[n]
                .iter()
                .map(|&(p, w)| labs[c].id_of(n, &(p, wg.act[c][n][a][w])).expect("the action fixes the base"))
                .collect()
            })
            .collect()
        })
        .collect()
    })
    .collect();
  let to_wg =
    (0..site.objects()).map(|c| labs[c].map_to_ids(&wg.x.sections[c], |_, &(_, w)| w)).collect::<Result<Vec<_>>>()?;
  let x =
    SimplicialGPresheaf { x: SPresheaf { sections: labs.iter().map(|l| l.sset.clone()).collect(), restrict }, act };
  x.check(site, g)?;
  Ok((x, to_wg))
}

/// The search problem for equivariant natural maps `x → y`.
fn equivariant_problem<'a>(site: &FinSite, x: &'a SimplicialGPresheaf, y: &'a SimplicialGPresheaf) -> MapProblem<'a> {
  let mut p = x.x.map_problem(&y.x, site);
  for c in 0..site.objects() {
    for n in 0..=x.x.trunc() {
      for (a, row) in x.act[c][n].iter().enumerate() {
        for (s, &t) in row.iter().enumerate() {
          if s != t {
            p.links.push(Link { from: (c, n, s), to: (c, n, t), via: y.act[c][n][a].clone() });
          }
        }
      }
    }
  }
  p
}

pub fn equivariant_map(
  site: &FinSite,
  x: &SimplicialGPresheaf,
  y: &SimplicialGPresheaf,
) -> Result<Option<Vec<SSetMap>>> {
  equivariant_problem(site, x, y).first()
}

/// `φ_G(X)`: the Borel construction with its map to `W̄G`. For free `X` the base is weakly
/// equivalent to `X/G`; a direct equivariant map `X → WG` need not exist when `X` is not
/// cofibrant, e.g. for twisted discrete torsors.
pub fn phi_g(site: &FinSite, g: &SgdPresheaf, x: &SimplicialGPresheaf) -> Result<Borel> {
  borel(site, g, x)
}

/// An equivariant map `ψ_G(φ_G(X)) → X` that is a sectionwise weak equivalence up to `maxdeg`.
pub fn psi_phi_unit(
  site: &FinSite,
  g: &SgdPresheaf,
  x: &SimplicialGPresheaf,
  maxdeg: usize,
) -> Result<Option<Vec<SSetMap>>> {
  let b = phi_g(site, g, x)?;
  let (y, _) = psi_g(site, g, &b.presheaf, &b.to_wbar)?;
  let Some(f) = equivariant_map(site, &y, x)? else { return Ok(None) };
  for c in 0..site.objects() {
    if !weq_check(&y.x.sections[c], &x.x.sections[c], &f[c], maxdeg)?.is_pass() {
      return Ok(None);
    }
  }
  Ok(Some(f))
}

/// Path components of simplicial `G`-presheaves under equivariant natural maps.
pub fn pi0_sgroup(site: &FinSite, list: &[SimplicialGPresheaf]) -> Result<Partition> {
  partition(list.len(), |i, j| {
    Ok(
      equivariant_map(site, &list[i], &list[j])?
        .map(|f| (0..site.objects()).all(|c| f[c].is_bijective(&list[j].x.sections[c]))),
    )
  })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homotopy::GroupTable;
  use crate::presheaf::GroupPresheaf;
  use crate::torsors::trivial_group_torsor;

  const N: usize = 3;

  fn s1() -> FinSite {
    FinSite::poset(&["U", "V", "A", "B"], &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V")], &[]).unwrap()
  }

  fn pt() -> FinSite {
    FinSite::poset(&["*"], &[], &[]).unwrap()
  }

  fn z2(site: &FinSite) -> GroupPresheaf {
    GroupPresheaf::constant(site, &GroupTable::cyclic(2))
  }

  fn trivial(site: &FinSite) -> (SgdPresheaf, SimplicialGPresheaf) {
    let g = z2(site);
    let sg = g.as_sgd(site, N);
    let x = SimplicialGPresheaf::discrete(site, &sg, &trivial_group_torsor(&g)).unwrap();
    (sg, x)
  }

  fn twisted(site: &FinSite) -> SimplicialGPresheaf {
    let g = z2(site);
    let mut t = trivial_group_torsor(&g);
    let m = site.hom(site.object("A").unwrap(), site.object("U").unwrap())[0];
    t.e.restrict[m] = vec![1, 0];
    SimplicialGPresheaf::discrete(site, &g.as_sgd(site, N), &t).unwrap()
  }

  #[test]
  fn wg_is_free_with_quotient_wbar() {
    let s = pt();
    let g = z2(&s).as_sgd(&s, N);
    let (wg, labels, proj) = wg_presheaf(&s, &g).unwrap();
    assert_eq!(labels[0][0].len(), 2);
    assert!(sgroup_free_action_check(&s, &g, &wg).unwrap().is_pass());
    let q = quotient(&s, &g, &wg).unwrap();
    let wbar = g.wbar(&s).0;
    assert_eq!(q.presheaf.sections[0].counts(), wbar.sections[0].counts());
    // the projection is constant on orbits, so it descends to the quotient
    for n in 0..=N {
      for x in 0..wg.x.sections[0].count(n) {
        for a in 0..2 {
          assert_eq!(proj[0].apply(n, wg.act[0][n][a][x]), proj[0].apply(n, x));
        }
      }
    }
    let r = bundle_check(&s, &g, &wg, 2).unwrap();
    assert!(r.is_bundle());
    assert!(!r.torsor.is_pass());
  }

  #[test]
  fn trivial_action_is_not_free() {
    let s = pt();
    let g = z2(&s).as_sgd(&s, N);
    let act = vec![(0..=N).map(|_| vec![vec![0], vec![0]]).collect()];
    let x = SimplicialGPresheaf { x: SPresheaf::point(&s, N), act };
    let v = sgroup_free_action_check(&s, &g, &x).unwrap();
    assert_eq!(v.condition(), Some(Condition::Free));
    assert!(!tors1_check(&s, &g, &x).unwrap().is_pass());
  }

  #[test]
  fn discrete_torsors_are_bundles_over_a_point() {
    let s = s1();
    let (g, x) = trivial(&s);
    for x in [x, twisted(&s)] {
      let r = bundle_check(&s, &g, &x, 2).unwrap();
      assert!(r.is_bundle() && r.torsor.is_pass(), "{r:?}");
      assert!(tors1_check(&s, &g, &x).unwrap().is_pass());
      assert!(borel_comparison(&s, &g, &x, 1).unwrap().iter().all(WeqVerdict::is_pass));
    }
  }

  #[test]
  fn twisting_gives_a_second_component() {
    let s = s1();
    let (_, x) = trivial(&s);
    let p = pi0_sgroup(&s, &[x.clone(), twisted(&s), x]).unwrap();
    assert_eq!(p.count, 2);
    assert!(p.all_invertible);
  }

  #[test]
  fn psi_inverts_phi() {
    let s = s1();
    let (g, x) = trivial(&s);
    assert!(equivariant_map(&s, &twisted(&s), &wg_presheaf(&s, &g).unwrap().0).unwrap().is_none());
    for x in [x, twisted(&s)] {
      assert!(psi_phi_unit(&s, &g, &x, 1).unwrap().is_some());
    }
  }
}

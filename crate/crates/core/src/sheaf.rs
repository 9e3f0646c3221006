//! The plus construction, sheafification of set and group presheaves, and local weak equivalences.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homotopy::{pi_n_kan, GroupTable, HomotopyGroup, UnionFind};
use crate::presheaf::{GroupPresheaf, SPresheaf, SetPresheaf};
use crate::site::{FinSite, Sieve};
use crate::sset::SSetMap;

/// A matching family over a covering sieve, `family[k]` sitting over `sieve[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
  pub sieve: Sieve,
  pub family: Vec<usize>,
}

/// `L P` together with a representative matching family for every element.
#[derive(Clone, Debug)]
pub struct Plus {
  pub presheaf: SetPresheaf,
  pub groups: Option<Vec<GroupTable>>,
  pub reps: Vec<Vec<Matching>>,
  /// The canonical map `P → L P`.
  pub eta: Vec<Vec<usize>>,
  index: Vec<HashMap<Matching, usize>>,
}

impl Plus {
  pub fn class_of(&self, c: usize, m: &Matching) -> Option<usize> {
    self.index[c].get(m).copied()
  }

  pub fn as_group_presheaf(&self) -> Option<GroupPresheaf> {
    self.groups.as_ref().map(|g| GroupPresheaf { sets: self.presheaf.clone(), groups: g.clone() })
  }
}

/// All matching families of `p` over the sieve `s` on `c`.
pub fn matching_families(site: &FinSite, p: &SetPresheaf, s: &Sieve) -> Vec<Vec<usize>> {
  let pos = |m: usize| s.binary_search(&m).ok();
  // (i, g, j): family[j] must equal P(g)(family[i])
  let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); s.len()];
  for (i, &f) in s.iter().enumerate() {
    for g in (0..site.morphisms()).filter(|&g| site.dst[g] == site.src[f]) {
      let j = pos(site.comp(f, g)).expect("sieves are closed under precomposition");
      checks[i.max(j)].push((i, g, j));
    }
  }
  let mut out = Vec::new();
  let mut cur = vec![0; s.len()];
  fn go(
    k: usize,
    cur: &mut Vec<usize>,
    s: &Sieve,
    site: &FinSite,
    p: &SetPresheaf,
    checks: &[Vec<(usize, usize, usize)>],
    out: &mut Vec<Vec<usize>>,
  ) {
    if k == s.len() {
      out.push(cur.clone());
      return;
    }
    for x in 0..p.sizes[site.src[s[k]]] {
      cur[k] = x;
      if checks[k].iter().all(|&(i, g, j)| cur[j] == p.restrict[g][cur[i]]) {
        go(k + 1, cur, s, site, p, checks, out);
      }
    }
  }
  go(0, &mut cur, s, site, p, &checks, &mut out);
  out
}

fn intersect(a: &Sieve, b: &Sieve) -> Sieve {
  a.iter().copied().filter(|m| b.binary_search(m).is_ok()).collect()
}

fn agree(site: &FinSite, c: usize, a: &Matching, b: &Matching) -> bool {
  let both: Sieve = a
    .sieve
    .iter()
    .enumerate()
    .filter_map(|(i, &f)| b.sieve.binary_search(&f).ok().filter(|&j| a.family[i] == b.family[j]).map(|_| f))
    .collect();
  site.is_covering(c, &both)
}

fn restrict_matching(site: &FinSite, h: usize, m: &Matching) -> Matching {
  let sieve = site.pullback_sieve(h, &m.sieve);
  let family =
    sieve.iter().map(|&g| m.family[m.sieve.binary_search(&site.comp(h, g)).expect("pulled back sieve")]).collect();
  Matching { sieve, family }
}

/// The plus construction. Group tables, when given, are carried over sectionwise.
pub fn plus(site: &FinSite, p: &SetPresheaf, groups: Option<&[GroupTable]>) -> Plus {
  let n = site.objects();
  let mut reps = Vec::with_capacity(n);
  let mut index = Vec::with_capacity(n);
  for c in 0..n {
    let all: Vec<Matching> = site
      .covering_sieves(c)
      .into_iter()
      .flat_map(|s| matching_families(site, p, &s).into_iter().map(move |family| Matching { sieve: s.clone(), family }))
      .collect();
    let mut uf = UnionFind::new(all.len());
    for i in 0..all.len() {
      for j in i + 1..all.len() {
        if uf.find(i) != uf.find(j) && agree(site, c, &all[i], &all[j]) {
          uf.union(i, j);
        }
      }
    }
    let (class, count) = uf.classes();
    let mut r: Vec<Option<Matching>> = vec![None; count];
    for (k, m) in all.iter().enumerate() {
      r[class[k]].get_or_insert_with(|| m.clone());
    }
    reps.push(r.into_iter().map(Option::unwrap).collect::<Vec<_>>());
    index.push(all.into_iter().zip(class).collect::<HashMap<_, _>>());
  }
  let restrict = (0..site.morphisms())
    .map(|h| reps[site.dst[h]].iter().map(|m| index[site.src[h]][&restrict_matching(site, h, m)]).collect())
    .collect();
  let eta: Vec<Vec<usize>> = (0..n)
    .map(|c| {
      let s = site.maximal_sieve(c);
      (0..p.sizes[c])
        .map(|x| index[c][&Matching { sieve: s.clone(), family: s.iter().map(|&f| p.restrict[f][x]).collect() }])
        .collect()
    })
    .collect();
  let groups = groups.map(|gs| {
    (0..n)
      .map(|c| {
        let k = reps[c].len();
        let mul = (0..k)
          .map(|a| {
            (0..k)
              .map(|b| {
                let (ma, mb) = (&reps[c][a], &reps[c][b]);
                let sieve = intersect(&ma.sieve, &mb.sieve);
                let family = sieve
                  .iter()
                  .map(|f| {
                    let (i, j) = (ma.sieve.binary_search(f).unwrap(), mb.sieve.binary_search(f).unwrap());
                    gs[site.src[*f]].mul[ma.family[i]][mb.family[j]]
                  })
                  .collect();
                index[c][&Matching { sieve, family }]
              })
              .collect()
          })
          .collect();
        GroupTable { mul, identity: eta[c][gs[c].identity] }
      })
      .collect()
  });
  let presheaf = SetPresheaf { sizes: reps.iter().map(|r| r.len()).collect(), restrict };
  Plus { presheaf, groups, reps, eta, index }
}

/// `L φ: L P → L Q` for a natural map `φ: P → Q`.
pub fn plus_map(site: &FinSite, lp: &Plus, lq: &Plus, phi: &[Vec<usize>]) -> Vec<Vec<usize>> {
  (0..site.objects())
    .map(|c| {
      lp.reps[c]
        .iter()
        .map(|m| {
          let family = m.sieve.iter().zip(&m.family).map(|(&f, &x)| phi[site.src[f]][x]).collect();
          lq.class_of(c, &Matching { sieve: m.sieve.clone(), family }).expect("image of a matching family matches")
        })
        .collect()
    })
    .collect()
}

/// `L² P` with the unit `P → L² P`.
#[derive(Clone, Debug)]
pub struct Sheafification {
  pub once: Plus,
  pub twice: Plus,
  pub unit: Vec<Vec<usize>>,
}

impl Sheafification {
  pub fn sheaf(&self) -> &SetPresheaf {
    &self.twice.presheaf
  }

  pub fn groups(&self) -> Option<&[GroupTable]> {
    self.twice.groups.as_deref()
  }
}

pub fn sheafify(site: &FinSite, p: &SetPresheaf, groups: Option<&[GroupTable]>) -> Sheafification {
  let once = plus(site, p, groups);
  let twice = plus(site, &once.presheaf, once.groups.as_deref());
  let unit = (0..site.objects()).map(|c| once.eta[c].iter().map(|&y| twice.eta[c][y]).collect()).collect();
  Sheafification { once, twice, unit }
}

pub fn sheafify_group(site: &FinSite, g: &GroupPresheaf) -> (GroupPresheaf, Sheafification) {
  let sh = sheafify(site, &g.sets, Some(&g.groups));
  (sh.twice.as_group_presheaf().expect("groups carried"), sh)
}

/// `L² φ` for a natural map `φ: P → Q`.
pub fn sheafify_map(site: &FinSite, sp: &Sheafification, sq: &Sheafification, phi: &[Vec<usize>]) -> Vec<Vec<usize>> {
  let once = plus_map(site, &sp.once, &sq.once, phi);
  plus_map(site, &sp.twice, &sq.twice, &once)
}

/// A presheaf is a sheaf when `P → L P` is a bijection everywhere.
pub fn is_sheaf(site: &FinSite, p: &SetPresheaf) -> bool {
  let lp = plus(site, p, None);
  (0..site.objects()).all(|c| lp.presheaf.sizes[c] == p.sizes[c] && is_bijection(&lp.eta[c], p.sizes[c]))
}

fn is_bijection(f: &[usize], target: usize) -> bool {
  let mut seen = vec![false; target];
  f.len() == target && f.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LocalWeqVerdict {
  Pass { maxdeg: usize, trunc: usize },
  Fail { degree: usize, object: String, basepoint: Option<usize>, reason: String },
  NotKan { side: String, object: String, horn: String },
}

impl LocalWeqVerdict {
  pub fn is_pass(&self) -> bool {
    matches!(self, LocalWeqVerdict::Pass { .. })
  }
}

/// Checks that a natural map of sectionwise Kan presheaves induces isomorphisms of the sheaves
/// `π_0` and of the sheaves `π_n` on the site of elements of the source's vertices, for `n ≤ maxdeg`.
pub fn local_weq_check(
  site: &FinSite,
  x: &SPresheaf,
  y: &SPresheaf,
  f: &[SSetMap],
  maxdeg: usize,
) -> Result<LocalWeqVerdict> {
  let trunc = x.trunc();
  if maxdeg + 2 > trunc {
    return Err(Error::Truncation(maxdeg + 2, trunc));
  }
  if !x.is_natural(y, f, site) {
    return Err(Error::Invalid("map of presheaves is not natural".into()));
  }
  for (side, p) in [("source", x), ("target", y)] {
    if let Err((c, v)) = p.kan_check(maxdeg + 1) {
      let horn = match v {
        crate::kan::KanVerdict::Fail { horn, .. } => horn.to_string(),
        _ => unreachable!(),
      };
      return Ok(LocalWeqVerdict::NotKan { side: side.into(), object: site.names[c].clone(), horn });
    }
  }

  let (px, ofx) = x.pi0(site);
  let (py, ofy) = y.pi0(site);
  let phi0: Vec<Vec<usize>> = (0..site.objects())
    .map(|c| (0..px.sizes[c]).map(|k| ofy[c][f[c].apply(0, ofx[c].iter().position(|&d| d == k).unwrap())]).collect())
    .collect();
  let (sx, sy) = (sheafify(site, &px, None), sheafify(site, &py, None));
  let l0 = sheafify_map(site, &sx, &sy, &phi0);
  for c in 0..site.objects() {
    if !is_bijection(&l0[c], sy.sheaf().sizes[c]) {
      return Ok(LocalWeqVerdict::Fail {
        degree: 0,
        object: site.names[c].clone(),
        basepoint: None,
        reason: format!("sheaf of components: {} source vs {} target", sx.sheaf().sizes[c], sy.sheaf().sizes[c]),
      });
    }
  }

  let verts = x.vertices(site);
  let el = site.elements(&verts.sizes, &verts.restrict);
  for n in 1..=maxdeg {
    let gx: Vec<HomotopyGroup> =
      el.objects.iter().map(|&(c, v)| pi_n_kan(&x.sections[c], v, n)).collect::<Result<_>>()?;
    let gy: Vec<HomotopyGroup> =
      el.objects.iter().map(|&(c, v)| pi_n_kan(&y.sections[c], f[c].apply(0, v), n)).collect::<Result<_>>()?;
    let induced = |gs: &[HomotopyGroup], p: &SPresheaf| -> GroupPresheaf {
      let restrict = el
        .morphisms
        .iter()
        .enumerate()
        .map(|(k, &(m, _))| {
          let (t, s) = (el.site.dst[k], el.site.src[k]);
          gs[t]
            .representatives
            .iter()
            .map(|&z| gs[s].class_of(p.restrict[m].apply(n, z)).expect("restriction of a sphere"))
            .collect()
        })
        .collect();
      GroupPresheaf {
        sets: SetPresheaf { sizes: gs.iter().map(|g| g.table.order()).collect(), restrict },
        groups: gs.iter().map(|g| g.table.clone()).collect(),
      }
    };
    let (hx, hy) = (induced(&gx, x), induced(&gy, y));
    let phi: Vec<Vec<usize>> = el
      .objects
      .iter()
      .enumerate()
      .map(|(k, &(c, _))| {
        gx[k].representatives.iter().map(|&z| gy[k].class_of(f[c].apply(n, z)).expect("image of a sphere")).collect()
      })
      .collect();
    let (sx, sy) = (sheafify(&el.site, &hx.sets, None), sheafify(&el.site, &hy.sets, None));
    let ln = sheafify_map(&el.site, &sx, &sy, &phi);
    for (k, &(c, v)) in el.objects.iter().enumerate() {
      if !is_bijection(&ln[k], sy.sheaf().sizes[k]) {
        return Ok(LocalWeqVerdict::Fail {
          degree: n,
          object: site.names[c].clone(),
          basepoint: Some(v),
          reason: format!(
            "sheaf of homotopy groups: order {} source vs {} target",
            sx.sheaf().sizes[k],
            sy.sheaf().sizes[k]
          ),
        });
      }
    }
  }
  Ok(LocalWeqVerdict::Pass { maxdeg, trunc })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::groupoid::FinGroupoid;
  use crate::presheaf::{cech_nerve, CoverFamily};
  use crate::sset::TruncSSet;

  fn s1_cov() -> FinSite {
    FinSite::poset(
      &["T", "U", "V", "A", "B"],
      &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V"), ("U", "T"), ("V", "T")],
      &[("T", &["U", "V"])],
    )
    .unwrap()
  }

  /// Sections over T are pairs of sections over U and V agreeing on A and B.
  fn glued(site: &FinSite, p: &SetPresheaf) -> usize {
    let o = |n: &str| site.object(n).unwrap();
    let r = |a: &str, b: &str, x| p.restrict[site.hom(o(a), o(b))[0]][x];
    let mut k = 0;
    for u in 0..p.sizes[o("U")] {
      for v in 0..p.sizes[o("V")] {
        if r("A", "U", u) == r("A", "V", v) && r("B", "U", u) == r("B", "V", v) {
          k += 1;
        }
      }
    }
    k
  }

  #[test]
  fn missing_global_section_is_glued() {
    let s = s1_cov();
    assert!(is_sheaf(&s, &SetPresheaf::constant(&s, 2)));
    let t = s.object("T").unwrap();
    let p = SetPresheaf {
      sizes: (0..s.objects()).map(|c| if c == t { 1 } else { 2 }).collect(),
      restrict: (0..s.morphisms()).map(|m| if s.dst[m] == t { vec![0] } else { vec![0, 1] }).collect(),
    };
    p.check(&s).unwrap();
    assert!(!is_sheaf(&s, &p));
    let sh = sheafify(&s, &p, None);
    sh.sheaf().check(&s).unwrap();
    assert!(is_sheaf(&s, sh.sheaf()));
    assert_eq!(sh.sheaf().sizes[t], glued(&s, &p));
    assert_eq!(glued(&s, &p), 2);
    assert_eq!(sh.sheaf().sizes[s.object("A").unwrap()], 2);
  }

  #[test]
  fn trivial_topology_changes_nothing() {
    let s = FinSite::poset(&["a", "b"], &[("a", "b")], &[]).unwrap();
    let idx = |sname: &str| -> usize { s.mor_names.iter().position(|m| m == sname).unwrap() };
    let mut q = SetPresheaf { sizes: vec![3, 2], restrict: vec![Vec::new(); 3] };
    q.restrict[idx("id_a")] = vec![0, 1, 2];
    q.restrict[idx("id_b")] = vec![0, 1];
    q.restrict[idx("a<=b")] = vec![0, 2];
    q.check(&s).unwrap();
    assert!(is_sheaf(&s, &q));
  }

  #[test]
  fn group_structure_survives() {
    let s = s1_cov();
    let g = GroupPresheaf::constant(&s, &GroupTable::cyclic(2));
    let (sg, _) = sheafify_group(&s, &g);
    sg.check(&s).unwrap();
    assert_eq!(sg.groups[s.object("T").unwrap()].order(), 2);
  }

  #[test]
  fn cech_augmentation_is_local_weq() {
    let s = s1_cov();
    let (u, v) = (s.object("U").unwrap(), s.object("V").unwrap());
    let c = cech_nerve(&s, &CoverFamily::Terminal(vec![u, v]), 4);
    let pt = SPresheaf::point(&s, 4);
    let f: Vec<SSetMap> = c.presheaf.sections.iter().map(|x| SSetMap::constant(x, &TruncSSet::point(4), 0)).collect();
    let verdict = local_weq_check(&s, &c.presheaf, &pt, &f, 2).unwrap();
    assert!(verdict.is_pass(), "{verdict:?}");
  }

  #[test]
  fn discrete_two_points_not_local_weq_to_point() {
    let s = s1_cov();
    let two = SPresheaf::constant(&s, &TruncSSet::discrete(2, 3));
    let pt = SPresheaf::point(&s, 3);
    let f: Vec<SSetMap> = two.sections.iter().map(|x| SSetMap::constant(x, &TruncSSet::point(3), 0)).collect();
    let verdict = local_weq_check(&s, &two, &pt, &f, 1).unwrap();
    assert!(matches!(verdict, LocalWeqVerdict::Fail { degree: 0, .. }));
  }

  #[test]
  fn nerve_of_interval_is_locally_contractible() {
    let s = s1_cov();
    let x = SPresheaf::constant(&s, &FinGroupoid::codiscrete(2).nerve(3).sset);
    let pt = SPresheaf::point(&s, 3);
    let f: Vec<SSetMap> = x.sections.iter().map(|z| SSetMap::constant(z, &TruncSSet::point(3), 0)).collect();
    assert!(local_weq_check(&s, &x, &pt, &f, 1).unwrap().is_pass());
  }
}

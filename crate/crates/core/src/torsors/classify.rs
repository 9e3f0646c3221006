//! Classification of torsors against homotopy classes of maps out of a Čech resolution, for every
//! torsor kind. Each torsor is presented as a locally contractible `Y → B`; its class is that of
//! `C(F) → Y → B` for any section `C(F) → Y`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::action::*;
use super::gset::*;
use super::sgpd::*;
use super::twogpd::*;
use super::{partition, Partition};
use crate::error::{Error, Result};
use crate::groupoid::Fin2Groupoid;
use crate::presheaf::{GroupPresheaf, HomotopyClasses, SPresheaf, SgdPresheaf};
use crate::site::FinSite;
use crate::sset::SSetMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
  Group,
  GroupoidJt,
  GroupoidJ5,
  #[serde(rename = "2gpd")]
  TwoGpd,
  Sgroup,
  Sgpd,
}

impl Kind {
  pub const ALL: [Kind; 6] = [Kind::Group, Kind::GroupoidJt, Kind::GroupoidJ5, Kind::TwoGpd, Kind::Sgroup, Kind::Sgpd];

  pub fn name(self) -> &'static str {
    match self {
      Kind::Group => "group",
      Kind::GroupoidJt => "groupoid-jt",
      Kind::GroupoidJ5 => "groupoid-j5",
      Kind::TwoGpd => "2gpd",
      Kind::Sgroup => "sgroup",
      Kind::Sgpd => "sgpd",
    }
  }
}

impl fmt::Display for Kind {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(self.name())
  }
}

impl FromStr for Kind {
  type Err = Error;

  fn from_str(s: &str) -> Result<Self> {
    Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Invalid(format!("unknown torsor kind {s:?}")))
  }
}

/// Coefficients in the shape each kind expects.
#[derive(Clone, Debug)]
pub enum Coefficients {
  Group(GroupPresheaf),
  Groupoid(GpdPresheaf),
  TwoGroupoid(Fin2Groupoid),
  Simplicial(SgdPresheaf),
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClassifyConfig {
  pub trunc: usize,
  /// Bound on enumerated torsor candidates and 2-functors tried per section.
  pub bound: usize,
  /// Bound on enumerated maps out of the Čech resolution.
  pub limit: usize,
  /// Largest covering family considered.
  pub max_cover: usize,
}

impl Default for ClassifyConfig {
  fn default() -> Self {
    Self { trunc: 3, bound: 8, limit: 10_000, max_cover: 4 }
  }
}

/// `φψ` and `ψφ` on the enumerated representatives.
#[derive(Clone, Debug, Serialize)]
pub struct RoundTrips {
  /// `φ(ψ(u))` lies in the class of `u` for every enumerated `u`.
  pub phi_psi: bool,
  /// `ψ(φ(X))` lies in the component of `X` for every torsor class.
  pub psi_phi: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
  pub kind: Kind,
  pub family: Vec<String>,
  pub trunc: usize,
  pub candidates: usize,
  pub torsor_classes: usize,
  pub homotopy_classes: usize,
  pub maps: usize,
  /// For each torsor class, the homotopy classes its members land in.
  pub matching: Vec<Vec<usize>>,
  pub well_defined: bool,
  pub injective: bool,
  pub surjective: bool,
  pub all_invertible: bool,
  pub h1: Option<usize>,
  pub round_trips: Option<RoundTrips>,
  /// Points where the bounded Čech family may not compute the answer.
  pub flags: Vec<String>,
}

impl ClassifyReport {
  pub fn is_bijection(&self) -> bool {
    self.well_defined && self.injective && self.surjective
  }
}

/// A torsor presented by a locally contractible `Y` over the base.
struct Presented {
  y: SPresheaf,
  map: Vec<SSetMap>,
}

/// The class of `C(F) → Y → B`, if a section `C(F) → Y` exists.
fn class_of(site: &FinSite, cech: &SPresheaf, p: &Presented, classes: &HomotopyClasses) -> Result<Option<usize>> {
  let Some(s) = cech.map_problem(&p.y, site).first()? else { return Ok(None) };
  let composite: Vec<SSetMap> = s.iter().zip(&p.map).map(|(a, b)| a.then(b)).collect();
  Ok(classes.class_of(&composite))
}

fn assemble(
  kind: Kind,
  site: &FinSite,
  family: &[usize],
  cfg: &ClassifyConfig,
  cech: &SPresheaf,
  base: &SPresheaf,
  torsors: &[Presented],
  part: &Partition,
) -> Result<(ClassifyReport, HomotopyClasses)> {
  let hc = cech.homotopy_classes(base, site, cfg.limit)?;
  let mut flags = Vec::new();
  let mut hit: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); part.count];
  for (k, t) in torsors.iter().enumerate() {
    match class_of(site, cech, t, &hc)? {
      Some(h) => {
        hit[part.class[k]].insert(h);
      }
      None => flags.push(format!("candidate {k} has no section over the Čech resolution")),
    }
  }
  let matching: Vec<Vec<usize>> = hit.iter().map(|s| s.iter().copied().collect()).collect();
  let well_defined = matching.iter().all(|m| m.len() == 1);
  let images: BTreeSet<usize> = matching.iter().flatten().copied().collect();
  let injective = well_defined && images.len() == part.count;
  let surjective = images.len() == hc.count;
  if !surjective {
    flags.push(format!(
      "{} of {} homotopy classes are not hit by an enumerated torsor",
      hc.count - images.len(),
      hc.count
    ));
  }
  let report = ClassifyReport {
    kind,
    family: family.iter().map(|&u| site.names[u].clone()).collect(),
    trunc: cfg.trunc,
    candidates: torsors.len(),
    torsor_classes: part.count,
    homotopy_classes: hc.count,
    maps: hc.maps.len(),
    matching,
    well_defined,
    injective,
    surjective,
    all_invertible: part.all_invertible,
    h1: None,
    round_trips: None,
    flags,
  };
  Ok((report, hc))
}

/// Classify torsors of the given kind, comparing `π₀` of the enumerated torsors with homotopy
/// classes `[C(F), B]` over the finest bounded covering family `F` of the terminal presheaf.
pub fn classify(site: &FinSite, coeffs: &Coefficients, kind: Kind, cfg: &ClassifyConfig) -> Result<ClassifyReport> {
  if cfg.trunc < 2 {
    return Err(Error::Truncation(2, cfg.trunc));
  }
  let family = site.finest_terminal_cover(cfg.max_cover)?;
  let i = cech_groupoid(site, &family, cfg.trunc);
  let cech = i.cech.presheaf.clone();
  let n = cfg.trunc;
  let mismatch = || Error::Precondition(format!("kind {kind} does not accept these coefficients"));
  match kind {
    Kind::Group | Kind::GroupoidJt | Kind::GroupoidJ5 => {
      let (g, h1) = match (coeffs, kind) {
        (Coefficients::Group(g), _) => {
          (GpdPresheaf::from_groups(site, g), Some(h1_cech_oracle(site, g, &family)?.classes))
        }
        (Coefficients::Groupoid(g), Kind::GroupoidJt | Kind::GroupoidJ5) => (g.clone(), None),
        _ => return Err(mismatch()),
      };
      let jts = enumerate_jt(site, &g, cfg.bound)?;
      let j5s = jts.iter().map(|t| jt_to_j5(site, &g, t, n).map(|p| p.0)).collect::<Result<Vec<_>>>()?;
      let part = match (coeffs, kind) {
        (Coefficients::Group(gp), Kind::Group) => {
          pi0_group_torsors(site, gp, &jts.iter().map(GroupTorsorCandidate::from_jt).collect::<Vec<_>>())?
        }
        (_, Kind::GroupoidJ5) => partition(j5s.len(), |a, b| {
          Ok(
            over_map(site, &j5s[a].y, &j5s[a].pi, &j5s[b].y, &j5s[b].pi)?
              .map(|f| (0..site.objects()).all(|c| f[c].is_bijective(&j5s[b].y.sections[c]))),
          )
        })?,
        _ => pi0_jt(site, &g, &jts)?,
      };
      let base = g.nerve(site, n).0;
      let ps: Vec<Presented> = j5s.into_iter().map(|y| Presented { y: y.y, map: y.pi }).collect();
      let (mut r, _) = assemble(kind, site, &family, cfg, &cech, &base, &ps, &part)?;
      r.h1 = h1;
      Ok(r)
    }
    Kind::TwoGpd => {
      let g = match coeffs {
        Coefficients::TwoGroupoid(g) => g.clone(),
        Coefficients::Group(gp) if gp.groups.windows(2).all(|w| w[0] == w[1]) => {
          Fin2Groupoid::from_groupoid(&crate::groupoid::FinGroupoid::from_group(&gp.groups[0]))
        }
        _ => return Err(mismatch()),
      };
      let fs = cech_gpd_functors(site, &GpdPresheaf::constant(site, &g.cells1), &i, cfg.limit)?;
      let totals =
        fs.iter().map(|f| h_of_f(site, &g, &i, f)?.total(site, &g, n).map(|p| p.0)).collect::<Result<Vec<_>>>()?;
      let part = partition(totals.len(), |a, b| {
        Ok(
          over_map(site, &totals[a].y, &totals[a].map, &totals[b].y, &totals[b].map)?
            .map(|f| (0..site.objects()).all(|c| f[c].is_bijective(&totals[b].y.sections[c]))),
        )
      })?;
      let base = match totals.first() {
        Some(t) => t.wbar.clone(),
        None => TwoGpdTorsor { functors: vec![], restrict: vec![] }.total(site, &g, n)?.0.wbar,
      };
      let mut flags = Vec::new();
      for (k, t) in totals.iter().enumerate() {
        let v = two_gpd_torsor_check(site, &g, t, cfg.bound.max(64))?;
        if !v.is_pass() {
          flags.push(format!("h(f) for functor {k} fails the torsor check: {}", serde_json::to_string(&v)?));
        }
      }
      let ps: Vec<Presented> = totals.into_iter().map(|t| Presented { y: t.y, map: t.map }).collect();
      let (mut r, _) = assemble(kind, site, &family, cfg, &cech, &base, &ps, &part)?;
      r.flags.extend(flags);
      Ok(r)
    }
    Kind::Sgroup => {
      let (g, discrete) = match coeffs {
        Coefficients::Simplicial(g) => (g.clone(), None),
        Coefficients::Group(gp) => (gp.as_sgd(site, n), Some(gp)),
        _ => return Err(mismatch()),
      };
      let (wbar, _) = g.wbar(site);
      let us = cech.all_maps(&wbar, site, cfg.limit)?;
      let mut xs = us.iter().map(|u| psi_g(site, &g, &cech, u).map(|p| p.0)).collect::<Result<Vec<_>>>()?;
      let from_psi = xs.len();
      if let Some(gp) = discrete {
        for t in enumerate_group_torsors(site, gp, cfg.bound)? {
          xs.push(SimplicialGPresheaf::discrete(site, &g, &t)?);
        }
      }
      let part = pi0_sgroup(site, &xs)?;
      let borels = xs.iter().map(|x| phi_g(site, &g, x)).collect::<Result<Vec<_>>>()?;
      let ps: Vec<Presented> =
        borels.iter().map(|b| Presented { y: b.presheaf.clone(), map: b.to_wbar.clone() }).collect();
      let (mut r, hc) = assemble(kind, site, &family, cfg, &cech, &wbar, &ps, &part)?;
      // ψ_G(u) is the k-th candidate, so φψ compares its class with that of u
      let mut phi_psi = true;
      for (k, u) in us.iter().enumerate() {
        phi_psi &= class_of(site, &cech, &ps[k], &hc)? == hc.class_of(u);
      }
      let mut psi_phi = true;
      for (k, p) in ps.iter().enumerate().skip(from_psi) {
        let Some(h) = class_of(site, &cech, p, &hc)? else {
          psi_phi = false;
          continue;
        };
        let j = us.iter().position(|u| hc.class_of(u) == Some(h)).expect("every class has a representative map");
        psi_phi &= part.class[j] == part.class[k];
      }
      r.round_trips = Some(RoundTrips { phi_psi, psi_phi });
      Ok(r)
    }
    Kind::Sgpd => {
      let g = match coeffs {
        Coefficients::Simplicial(g) => g.clone(),
        Coefficients::Group(gp) => gp.as_sgd(site, n),
        Coefficients::Groupoid(gp) => gp.as_sgd(site, n),
        _ => return Err(mismatch()),
      };
      let (wbar, _) = g.wbar(site);
      let fs = cech_functors(site, &g, &i, cfg.limit)?;
      let mut ts = fs.iter().map(|f| psi(site, &g, &i, f)).collect::<Result<Vec<_>>>()?;
      let from_psi = ts.len();
      if g.sections.iter().all(|h| h.objects() == 1) {
        ts.push(SgdTorsorCandidate::trivial_group(site, &g)?);
      }
      let part = pi0_sgd(site, &g, &ts, n.saturating_sub(2).min(2))?;
      let phis = ts.iter().map(|t| phi(site, &g, t)).collect::<Result<Vec<_>>>()?;
      let mut flags = Vec::new();
      for (k, (triv, _)) in phis.iter().enumerate() {
        if !triv.certificate.is_pass() {
          flags.push(format!("candidate {k} is not locally contractible"));
        }
      }
      let ps: Vec<Presented> = phis.into_iter().map(|(t, m)| Presented { y: t.w, map: m }).collect();
      let (mut r, hc) = assemble(kind, site, &family, cfg, &cech, &wbar, &ps, &part)?;
      let us = fs.iter().map(|f| functor_to_wbar(site, &g, &i, f)).collect::<Result<Vec<_>>>()?;
      let mut phi_psi = true;
      for (k, u) in us.iter().enumerate() {
        phi_psi &= class_of(site, &cech, &ps[k], &hc)? == hc.class_of(u);
      }
      // each torsor class should contain ψ of a functor landing in its homotopy class
      let mut psi_phi = true;
      for (k, p) in ps.iter().enumerate() {
        let h = class_of(site, &cech, p, &hc)?;
        psi_phi &= h.is_some() && (0..from_psi).any(|j| hc.class_of(&us[j]) == h && part.class[j] == part.class[k]);
      }
      r.round_trips = Some(RoundTrips { phi_psi, psi_phi });
      r.flags.extend(flags);
      Ok(r)
    }
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::groupoid::FinGroupoid;
  use crate::homotopy::GroupTable;
  use crate::sgroupoid::SimpGroupoid;

  fn pt() -> FinSite {
    FinSite::poset(&["*"], &[], &[]).unwrap()
  }

  fn s1() -> FinSite {
    FinSite::poset(&["U", "V", "A", "B"], &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V")], &[]).unwrap()
  }

  fn cfg() -> ClassifyConfig {
    ClassifyConfig { trunc: 3, ..Default::default() }
  }

  #[test]
  fn kinds_parse() {
    for k in Kind::ALL {
      assert_eq!(k.name().parse::<Kind>().unwrap(), k);
    }
    assert!("torus".parse::<Kind>().is_err());
  }

  #[test]
  fn z2_on_the_circle_in_every_kind() {
    let s = s1();
    let g = GroupPresheaf::constant(&s, &GroupTable::cyclic(2));
    let gp = GpdPresheaf::from_groups(&s, &g);
    let runs = [
      (Kind::Group, Coefficients::Group(g.clone())),
      (Kind::GroupoidJt, Coefficients::Groupoid(gp.clone())),
      (Kind::GroupoidJ5, Coefficients::Groupoid(gp)),
      (Kind::TwoGpd, Coefficients::TwoGroupoid(Fin2Groupoid::from_groupoid(&FinGroupoid::cyclic(2)))),
      (Kind::Sgroup, Coefficients::Group(g.clone())),
      (Kind::Sgpd, Coefficients::Simplicial(g.as_sgd(&s, 3))),
    ];
    for (k, c) in runs {
      let r = classify(&s, &c, k, &cfg()).unwrap();
      assert_eq!((r.torsor_classes, r.homotopy_classes), (2, 2), "{k}: {r:?}");
      assert!(r.is_bijection(), "{k}: {r:?}");
      if let Some(rt) = &r.round_trips {
        assert!(rt.phi_psi && rt.psi_phi, "{k}: {rt:?}");
      }
    }
  }

  #[test]
  fn two_components_on_the_point() {
    let s = pt();
    let z2 = SimpGroupoid::constant(&FinGroupoid::cyclic(2), 3);
    let g = SimpGroupoid::disjoint_union(&[&z2, &SimpGroupoid::constant(&FinGroupoid::discrete(1), 3)]).unwrap();
    let r = classify(&s, &Coefficients::Simplicial(SgdPresheaf::constant(&s, &g)), Kind::Sgpd, &cfg()).unwrap();
    assert_eq!((r.torsor_classes, r.homotopy_classes), (2, 2));
    assert!(r.is_bijection());
    let rt = r.round_trips.unwrap();
    assert!(rt.phi_psi && rt.psi_phi);
  }

  #[test]
  fn mismatched_coefficients_are_rejected() {
    let s = pt();
    let g = Fin2Groupoid::from_groupoid(&FinGroupoid::cyclic(2));
    assert!(classify(&s, &Coefficients::TwoGroupoid(g), Kind::Group, &cfg()).is_err());
  }
}

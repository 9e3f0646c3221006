//! Instance checks of right properness for presheaves of simplicial groupoids: for a square
//! `P = A ×_C B` with `W̄A → W̄C` a sectionwise Kan fibration, `W̄` of the pullback is the
//! pullback of `W̄`, and `W̄P → W̄A` is a local weak equivalence whenever `W̄B → W̄C` is.

use serde::Serialize;

use crate::error::Result;
use crate::kan::{fibration_check, KanVerdict};
use crate::presheaf::{pullback_sgd, SPresheaf, SgdPresheaf, SgdPresheafMap};
use crate::sgroupoid::{SgdFunctor, SimpGroupoid};
use crate::sheaf::{local_weq_check, LocalWeqVerdict};
use crate::site::FinSite;
use crate::sset::{pullback, SSetMap};

#[derive(Clone, Debug, Serialize)]
pub struct ProperReport {
  /// `W̄f` sectionwise, for the leg `f: A → C`.
  pub fibration: Vec<KanVerdict>,
  /// Levelwise counts of `W̄P` and of `W̄A ×_{W̄C} W̄B`, per section.
  pub counts: Vec<(Vec<usize>, Vec<usize>)>,
  /// The canonical map `W̄P → W̄A ×_{W̄C} W̄B` is a bijection in every section.
  pub wbar_preserves_pullback: bool,
  pub base: LocalWeqVerdict,
  pub base_change: LocalWeqVerdict,
}

impl ProperReport {
  pub fn legs_are_fibrations(&self) -> bool {
    self.fibration.iter().all(KanVerdict::is_pass)
  }

  /// The instance of the property: the comparison holds, and a weak equivalence at the base
  /// pulls back to one.
  pub fn holds(&self) -> bool {
    self.wbar_preserves_pullback && (!self.base.is_pass() || self.base_change.is_pass())
  }
}

fn wbar_map(
  site: &FinSite,
  a: &SgdPresheaf,
  b: &SgdPresheaf,
  f: &SgdPresheafMap,
) -> Result<(SPresheaf, SPresheaf, Vec<SSetMap>)> {
  let (wa, la) = a.wbar(site);
  let (wb, lb) = b.wbar(site);
  let maps = (0..site.objects()).map(|c| f[c].on_wbar(&la[c], &lb[c])).collect::<Result<Vec<_>>>()?;
  Ok((wa, wb, maps))
}

/// `f: A → C` is the fibration leg and `g: B → C` the base map.
pub fn right_proper_square(
  site: &FinSite,
  a: &SgdPresheaf,
  f: &SgdPresheafMap,
  b: &SgdPresheaf,
  g: &SgdPresheafMap,
  c: &SgdPresheaf,
  maxdeg: usize,
) -> Result<ProperReport> {
  let trunc = a.trunc();
  let (p, pa, pb) = pullback_sgd(site, a, f, b, g)?;
  let (wa, wc, wf) = wbar_map(site, a, c, f)?;
  let (wb, _, wg) = wbar_map(site, b, c, g)?;
  let (wp, _, wpa) = wbar_map(site, &p, a, &pa)?;
  let (_, _, wpb) = wbar_map(site, &p, b, &pb)?;
  let fibration =
    (0..site.objects()).map(|x| fibration_check(&wa.sections[x], &wc.sections[x], &wf[x], trunc.min(3))).collect();
  let mut counts = Vec::new();
  let mut preserved = true;
  for x in 0..site.objects() {
    let q = pullback(&wa.sections[x], &wf[x], &wb.sections[x], &wg[x])?;
    counts.push((wp.sections[x].counts().to_vec(), q.sset.counts().to_vec()));
    let table: Vec<Vec<usize>> = (0..=trunc)
      .map(|n| {
        (0..wp.sections[x].count(n))
          .map(|s| q.id_of(n, &(wpa[x].apply(n, s), wpb[x].apply(n, s))).unwrap_or(usize::MAX))
          .collect()
      })
      .collect();
    preserved &=
      table.iter().flatten().all(|&v| v != usize::MAX) && SSetMap::new_unchecked(table).is_bijective(&q.sset);
  }
  Ok(ProperReport {
    fibration,
    counts,
    wbar_preserves_pullback: preserved,
    base: local_weq_check(site, &wb, &wc, &wg, maxdeg)?,
    base_change: local_weq_check(site, &wp, &wa, &wpa, maxdeg)?,
  })
}

/// The unique functor to the trivial group.
pub fn to_point(h: &SimpGroupoid, point: &SimpGroupoid) -> SgdFunctor {
  SgdFunctor { on_objects: vec![0; h.objects()], on_cells: SSetMap::constant(h.mor(), point.mor(), 0) }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::groupoid::FinGroupoid;

  const N: usize = 3;

  fn s1() -> FinSite {
    FinSite::poset(&["U", "V", "A", "B"], &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V")], &[]).unwrap()
  }

  fn constant(site: &FinSite, g: &FinGroupoid) -> (SimpGroupoid, SgdPresheaf) {
    let h = SimpGroupoid::constant(g, N);
    (h.clone(), SgdPresheaf::constant(site, &h))
  }

  #[test]
  fn weak_equivalence_pulls_back_along_a_fibration() {
    let s = s1();
    let (z2, a) = constant(&s, &FinGroupoid::cyclic(2));
    let (iv, b) = constant(&s, &FinGroupoid::codiscrete(2));
    let (pt, c) = constant(&s, &FinGroupoid::discrete(1));
    let f = vec![to_point(&z2, &pt); 4];
    let g = vec![to_point(&iv, &pt); 4];
    let r = right_proper_square(&s, &a, &f, &b, &g, &c, 1).unwrap();
    assert!(r.legs_are_fibrations());
    assert!(r.wbar_preserves_pullback, "{:?}", r.counts);
    assert!(r.base.is_pass() && r.base_change.is_pass());
    assert!(r.holds());
  }

  #[test]
  fn non_equivalence_at_the_base_is_reported() {
    let s = s1();
    let (iv, a) = constant(&s, &FinGroupoid::codiscrete(2));
    let (z2, b) = constant(&s, &FinGroupoid::cyclic(2));
    let (pt, c) = constant(&s, &FinGroupoid::discrete(1));
    let r = right_proper_square(&s, &a, &vec![to_point(&iv, &pt); 4], &b, &vec![to_point(&z2, &pt); 4], &c, 1).unwrap();
    assert!(r.legs_are_fibrations() && r.wbar_preserves_pullback);
    assert!(!r.base.is_pass());
    assert!(r.holds());
  }
}

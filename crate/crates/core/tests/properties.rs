use proptest::prelude::*;

use simpgd::fixtures::{read_site, site_json, CoefficientFile};
use simpgd::groupoid::FinGroupoid;
use simpgd::homotopy::weq_check;
use simpgd::ordinal::OrdinalMap;
use simpgd::sgroupoid::{SgdFunctor, SimpGroupoid};
use simpgd::site::FinSite;
use simpgd::sset::{pullback, SSetMap};

/// Disjoint unions of small cyclic groups and codiscrete groupoids.
fn groupoid() -> impl Strategy<Value = FinGroupoid> {
  prop::collection::vec((any::<bool>(), 1usize..=3), 1..=2).prop_map(|parts| {
    let gs: Vec<FinGroupoid> =
      parts.iter().map(|&(cyc, k)| if cyc { FinGroupoid::cyclic(k) } else { FinGroupoid::codiscrete(k) }).collect();
    FinGroupoid::disjoint_union(&gs.iter().collect::<Vec<_>>())
  })
}

fn poset() -> impl Strategy<Value = FinSite> {
  (1usize..=4, prop::collection::vec(any::<bool>(), 6)).prop_map(|(k, edges)| {
    let names: Vec<String> = (0..k).map(|i| format!("o{i}")).collect();
    let mut rels = Vec::new();
    let mut e = edges.iter();
    for b in 0..k {
      for a in 0..b {
        if *e.next().unwrap() {
          rels.push((names[a].as_str(), names[b].as_str()));
        }
      }
    }
    let objs: Vec<&str> = names.iter().map(String::as_str).collect();
    FinSite::poset(&objs, &rels, &[]).unwrap()
  })
}

proptest! {
  #![proptest_config(ProptestConfig::with_cases(24))]

  #[test]
  fn coefficient_json_round_trips(g in groupoid()) {
    let c = CoefficientFile::Groupoid { name: "g".into(), groupoid: g };
    let s = c.to_json();
    prop_assert_eq!(CoefficientFile::from_json(&s).unwrap().to_json(), s);
  }

  #[test]
  fn simplicial_groupoid_json_round_trips(g in groupoid()) {
    let h = SimpGroupoid::constant(&g, 3);
    let c = CoefficientFile::Simplicial { name: "h".into(), simplicial: h.to_raw() };
    let s = c.to_json();
    let back = CoefficientFile::from_json(&s).unwrap();
    prop_assert_eq!(back.to_json(), s);
    let h2 = back.simplicial(3).unwrap();
    prop_assert_eq!(h2.mor(), h.mor());
  }

  #[test]
  fn site_json_round_trips(site in poset()) {
    let s = site_json(&site);
    prop_assert_eq!(site_json(&read_site(&s).unwrap()), s);
  }

  #[test]
  fn theta_action_on_cocycles_is_functorial(g in groupoid(), k in 0usize..=2, m in 0usize..=3, pick in any::<prop::sample::Index>()) {
    let h = SimpGroupoid::constant(&g, 3);
    let w = h.wbar();
    for tau in OrdinalMap::all(k, m) {
      for theta in OrdinalMap::all(m, 3) {
        let c = &w.labels[3][pick.index(w.labels[3].len())];
        prop_assert_eq!(h.act_cocycle(&theta.compose(&tau), c), h.act_cocycle(&tau, &h.act_cocycle(&theta, c)));
      }
    }
  }

  #[test]
  fn wbar_validates_and_j_is_an_isomorphism_for_constant_groupoids(g in groupoid()) {
    let h = SimpGroupoid::constant(&g, 3);
    let (db, w) = (h.db(), h.wbar());
    prop_assert!(w.sset.validate().is_pass());
    let j = h.j_map(&db, &w).unwrap();
    prop_assert!(j.check(&db.sset, &w.sset).is_ok());
    prop_assert!(j.is_bijective(&w.sset));
  }

  #[test]
  fn identity_is_a_weak_equivalence(g in groupoid()) {
    let w = SimpGroupoid::constant(&g, 3).wbar().sset;
    prop_assert!(weq_check(&w, &w, &SSetMap::identity(&w), 1).unwrap().is_pass());
  }

  #[test]
  fn pullback_along_identity_is_the_source(g in groupoid()) {
    let x = SimpGroupoid::constant(&g, 3).wbar().sset;
    let id = SSetMap::identity(&x);
    let p = pullback(&x, &id, &x, &id).unwrap();
    prop_assert_eq!(p.sset.counts(), x.counts());
    prop_assert!(p.sset.validate().is_pass());
  }

  /// `j` commutes with the maps induced by `a ↦ k·a` from `ℤ/m` to `ℤ/n`.
  #[test]
  fn j_is_natural_for_group_maps(m in 1usize..=4, n in 1usize..=4, k in 0usize..4) {
    prop_assume!((k * m) % n == 0);
    let (a, b) = (SimpGroupoid::constant(&FinGroupoid::cyclic(m), 3), SimpGroupoid::constant(&FinGroupoid::cyclic(n), 3));
    let f = SgdFunctor { on_objects: vec![0], on_cells: SSetMap::new_unchecked(vec![(0..m).map(|x| k * x % n).collect(); 4]) };
    f.check(&a, &b).unwrap();
    let (da, wa, db, wb) = (a.db(), a.wbar(), b.db(), b.wbar());
    let (ja, jb) = (a.j_map(&da, &wa).unwrap(), b.j_map(&db, &wb).unwrap());
    prop_assert_eq!(f.on_db(&da, &db).unwrap().then(&jb), ja.then(&f.on_wbar(&wa, &wb).unwrap()));
  }
}

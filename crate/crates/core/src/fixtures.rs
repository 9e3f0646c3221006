//! The built-in corpus of sites and coefficient groupoids, and the JSON file formats the CLI reads.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;

use crate::error::{Error, Result};
use crate::groupoid::{Fin2Groupoid, FinGroupoid};
use crate::homotopy::GroupTable;
use crate::presheaf::{GroupPresheaf, SgdPresheaf};
use crate::sgroupoid::{RawSGroupoid, SimpGroupoid};
use crate::site::{FinSite, RawSite};
use crate::torsors::{Coefficients, GpdPresheaf, Kind};

fn pointer(path: &serde_path_to_error::Path) -> String {
  let mut out = String::from("#");
  for seg in path.iter() {
    out.push('/');
    match seg {
      Segment::Seq { index } => out.push_str(&index.to_string()),
      Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
      Segment::Enum { variant } => out.push_str(variant),
      Segment::Unknown => out.push('?'),
    }
  }
  out
}

/// Deserializes with errors located by JSON pointer.
pub fn parse<T: DeserializeOwned>(s: &str) -> Result<T> {
  let de = &mut serde_json::Deserializer::from_str(s);
  serde_path_to_error::deserialize(de).map_err(|e| Error::Invalid(format!("at {}: {}", pointer(e.path()), e.inner())))
}

fn field<T: DeserializeOwned>(v: &serde_json::Value, key: &str) -> Result<T> {
  let inner = v.get(key).cloned().unwrap_or(serde_json::Value::Null);
  serde_path_to_error::deserialize(inner).map_err(|e| {
    let rest = pointer(e.path());
    Error::Invalid(format!("at #/{key}{}: {}", &rest[1..], e.inner()))
  })
}

fn at<T>(ptr: &str, r: Result<T>) -> Result<T> {
  r.map_err(|e| Error::Invalid(format!("at {ptr}: {e}")))
}

pub fn read_site(s: &str) -> Result<FinSite> {
  at("#", FinSite::from_raw(&parse::<RawSite>(s)?))
}

pub fn site_json(site: &FinSite) -> String {
  pretty(&site.to_raw())
}

fn pretty<T: Serialize>(v: &T) -> String {
  let mut s = serde_json::to_string_pretty(v).expect("fixture serializes");
  s.push('\n');
  s
}

/// A coefficient file: a groupoid taken constant in the simplicial direction, a strict
/// 2-groupoid, or an explicit truncated simplicial groupoid. Over a site, each is constant.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CoefficientFile {
  Groupoid { name: String, groupoid: FinGroupoid },
  TwoGroupoid { name: String, two_groupoid: Fin2Groupoid },
  Simplicial { name: String, simplicial: RawSGroupoid },
}

impl CoefficientFile {
  pub fn from_json(s: &str) -> Result<Self> {
    // internally tagged enums lose the error path, so dispatch on the tag by hand
    let v: serde_json::Value = parse(s)?;
    let name: String = field(&v, "name")?;
    match v.get("type").and_then(serde_json::Value::as_str) {
      Some("groupoid") => {
        let g: FinGroupoid = field(&v, "groupoid")?;
        Ok(CoefficientFile::Groupoid { name, groupoid: at("#/groupoid", FinGroupoid::from_json(&g.to_json()))? })
      }
      Some("two-groupoid") => {
        let g: Fin2Groupoid = field(&v, "two_groupoid")?;
        Ok(CoefficientFile::TwoGroupoid {
          name,
          two_groupoid: at("#/two_groupoid", Fin2Groupoid::from_json(&g.to_json()))?,
        })
      }
      Some("simplicial") => {
        let simplicial: RawSGroupoid = field(&v, "simplicial")?;
        at("#/simplicial", simplicial.to_sgroupoid())?;
        Ok(CoefficientFile::Simplicial { name, simplicial })
      }
      _ => Err(Error::Invalid("at #/type: expected \"groupoid\", \"two-groupoid\" or \"simplicial\"".into())),
    }
  }

  pub fn to_json(&self) -> String {
    pretty(self)
  }

  pub fn name(&self) -> &str {
    match self {
      CoefficientFile::Groupoid { name, .. }
      | CoefficientFile::TwoGroupoid { name, .. }
      | CoefficientFile::Simplicial { name, .. } => name,
    }
  }

  pub fn simplicial(&self, trunc: usize) -> Result<SimpGroupoid> {
    match self {
      CoefficientFile::Groupoid { groupoid, .. } => Ok(SimpGroupoid::constant(groupoid, trunc)),
      CoefficientFile::TwoGroupoid { two_groupoid, .. } => Ok(SimpGroupoid::from_2groupoid(two_groupoid, trunc).0),
      CoefficientFile::Simplicial { simplicial, .. } => {
        if simplicial.trunc != trunc {
          return Err(Error::Truncation(trunc, simplicial.trunc));
        }
        simplicial.to_sgroupoid()
      }
    }
  }

  /// The group of a one-object groupoid file.
  pub fn group(&self) -> Option<GroupTable> {
    let CoefficientFile::Groupoid { groupoid: g, .. } = self else { return None };
    if g.objects != 1 {
      return None;
    }
    let m = g.morphisms();
    Some(GroupTable { mul: (0..m).map(|a| (0..m).map(|b| g.comp(a, b)).collect()).collect(), identity: g.identity[0] })
  }

  /// The constant coefficients in the shape `kind` expects.
  pub fn coefficients(&self, site: &FinSite, kind: Kind, trunc: usize) -> Result<Coefficients> {
    let constant = || -> Result<Coefficients> {
      Ok(Coefficients::Simplicial(SgdPresheaf::constant(site, &self.simplicial(trunc)?)))
    };
    match (kind, self) {
      (Kind::Group | Kind::Sgroup, _) if self.group().is_some() => {
        Ok(Coefficients::Group(GroupPresheaf::constant(site, &self.group().unwrap())))
      }
      (Kind::GroupoidJt | Kind::GroupoidJ5, CoefficientFile::Groupoid { groupoid, .. }) => {
        Ok(Coefficients::Groupoid(GpdPresheaf::constant(site, groupoid)))
      }
      (Kind::TwoGpd, CoefficientFile::Groupoid { groupoid, .. }) => {
        Ok(Coefficients::TwoGroupoid(Fin2Groupoid::from_groupoid(groupoid)))
      }
      (Kind::TwoGpd, CoefficientFile::TwoGroupoid { two_groupoid, .. }) => {
        Ok(Coefficients::TwoGroupoid(two_groupoid.clone()))
      }
      (Kind::Sgpd, _) => constant(),
      (Kind::Sgroup, _) if self.simplicial(trunc)?.objects() == 1 => constant(),
      _ => Err(Error::Invalid(format!("{} coefficients do not fit torsors of kind {kind}", self.name()))),
    }
  }
}

pub fn pt_site() -> FinSite {
  FinSite::poset(&["*"], &[], &[]).expect("point site")
}

/// `U, V ≥ A, B` with the trivial topology; its nerve is a circle.
pub fn s1_site() -> FinSite {
  FinSite::poset(&["U", "V", "A", "B"], &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V")], &[]).expect("circle site")
}

/// The circle site with a terminal object `T` covered by `U` and `V`.
pub fn s1_site_cov() -> FinSite {
  FinSite::poset(
    &["T", "U", "V", "A", "B"],
    &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V"), ("U", "T"), ("V", "T")],
    &[("T", &["U", "V"])],
  )
  .expect("covered circle site")
}

pub fn z2const() -> CoefficientFile {
  CoefficientFile::Groupoid { name: "z2const".into(), groupoid: FinGroupoid::cyclic(2) }
}

pub fn interval() -> CoefficientFile {
  CoefficientFile::Groupoid { name: "interval".into(), groupoid: FinGroupoid::codiscrete(2) }
}

/// `ℤ/2 ⊔ 1`.
pub fn twocomp() -> CoefficientFile {
  CoefficientFile::Groupoid {
    name: "twocomp".into(),
    groupoid: FinGroupoid::disjoint_union(&[&FinGroupoid::cyclic(2), &FinGroupoid::discrete(1)]),
  }
}

/// `ℤ/2` in 2-cells over a single object and 1-cell.
pub fn b2z2() -> CoefficientFile {
  CoefficientFile::TwoGroupoid {
    name: "b2z2".into(),
    two_groupoid: Fin2Groupoid::double_suspension(&GroupTable::cyclic(2)),
  }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureKind {
  Site,
  Coefficients,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
  pub file: &'static str,
  pub kind: FixtureKind,
  pub json: String,
}

pub fn corpus() -> Vec<Fixture> {
  let site = |file, s: FinSite| Fixture { file, kind: FixtureKind::Site, json: site_json(&s) };
  let coeff = |file, c: CoefficientFile| Fixture { file, kind: FixtureKind::Coefficients, json: c.to_json() };
  vec![
    site("pt.json", pt_site()),
    site("s1.json", s1_site()),
    site("s1cov.json", s1_site_cov()),
    coeff("z2const.json", z2const()),
    coeff("interval.json", interval()),
    coeff("twocomp.json", twocomp()),
    coeff("b2z2.json", b2z2()),
  ]
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
  pub file: &'static str,
  pub valid: bool,
  pub round_trip: bool,
  pub detail: Option<String>,
}

impl FixtureReport {
  pub fn is_pass(&self) -> bool {
    self.valid && self.round_trip
  }
}

/// Re-parses a fixture, validates it (for coefficients: the groupoid, `dB` and `W̄` at `trunc`),
/// and compares the re-emitted JSON with the original.
pub fn check_fixture(f: &Fixture, trunc: usize) -> FixtureReport {
  let run = || -> Result<String> {
    match f.kind {
      FixtureKind::Site => Ok(site_json(&read_site(&f.json)?)),
      FixtureKind::Coefficients => {
        let c = CoefficientFile::from_json(&f.json)?;
        let h = c.simplicial(trunc)?;
        h.validate()?;
        for (what, s) in [("dB", &h.db().sset), ("W̄", &h.wbar().sset)] {
          if !s.validate().is_pass() {
            return Err(Error::Invalid(format!("{what} fails validation")));
          }
        }
        Ok(c.to_json())
      }
    }
  };
  match run() {
    Ok(s) => FixtureReport { file: f.file, valid: true, round_trip: s == f.json, detail: None },
    Err(e) => FixtureReport { file: f.file, valid: false, round_trip: false, detail: Some(e.to_string()) },
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homotopy::pi0;

  #[test]
  fn corpus_validates_and_round_trips() {
    for f in corpus() {
      let r = check_fixture(&f, 3);
      assert!(r.is_pass(), "{r:?}");
    }
  }

  #[test]
  fn circle_site_is_connected_with_two_z2_classes() {
    let s = s1_site();
    let mut uf = crate::homotopy::UnionFind::new(s.objects());
    for m in 0..s.morphisms() {
      uf.union(s.src[m], s.dst[m]);
    }
    assert_eq!(uf.classes().1, 1);
    let g = GroupPresheaf::constant(&s, &GroupTable::cyclic(2));
    let family = s.finest_terminal_cover(4).unwrap();
    assert_eq!(crate::torsors::h1_cech_oracle(&s, &g, &family).unwrap().classes, 2);
  }

  #[test]
  fn twocomp_has_two_components() {
    let h = twocomp().simplicial(3).unwrap();
    assert_eq!(h.pi0().1, 2);
    assert_eq!(pi0(&h.wbar().sset).count, 2);
  }

  #[test]
  fn schema_errors_carry_a_pointer() {
    let bad = r#"{"type": "groupoid", "name": "x", "groupoid": {"objects": 1, "src": [0], "dst": "no"}}"#;
    let e = CoefficientFile::from_json(bad).unwrap_err().to_string();
    assert!(e.contains("#/groupoid/dst"), "{e}");
    let bad = r#"{"objects": ["a"], "morphisms": [{"id": "1", "src": "a", "dst": "b"}], "composition": []}"#;
    assert!(read_site(bad).is_err());
  }

  #[test]
  fn kinds_get_matching_coefficients() {
    let s = s1_site();
    assert!(matches!(z2const().coefficients(&s, Kind::Group, 3).unwrap(), Coefficients::Group(_)));
    assert!(matches!(interval().coefficients(&s, Kind::GroupoidJt, 3).unwrap(), Coefficients::Groupoid(_)));
    assert!(interval().coefficients(&s, Kind::Group, 3).is_err());
    assert!(matches!(b2z2().coefficients(&s, Kind::Sgroup, 3).unwrap(), Coefficients::Simplicial(_)));
    assert!(matches!(twocomp().coefficients(&s, Kind::Sgpd, 3).unwrap(), Coefficients::Simplicial(_)));
  }
}

//! Finite sites: a finite category with covering families, and the Grothendieck topology
//! they generate.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sieve on an object: a sorted set of morphisms into it, closed under precomposition.
pub type Sieve = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
  pub id: String,
  pub src: String,
  pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCover {
  pub object: String,
  pub family: Vec<String>,
}

/// JSON form of a site.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSite {
  pub objects: Vec<String>,
  pub morphisms: Vec<RawMorphism>,
  pub composition: Vec<[String; 3]>,
  #[serde(default)]
  pub covers: Vec<RawCover>,
}

#[derive(Clone, Debug)]
pub struct FinSite {
  pub names: Vec<String>,
  pub mor_names: Vec<String>,
  pub src: Vec<usize>,
  pub dst: Vec<usize>,
  pub identity: Vec<usize>,
  comp: HashMap<(usize, usize), usize>,
  /// Generating covering families, as `(object, morphisms)`.
  pub families: Vec<(usize, Vec<usize>)>,
  /// Covering sieves per object.
  topology: Vec<HashSet<Sieve>>,
}

impl PartialEq for FinSite {
  fn eq(&self, other: &Self) -> bool {
    self.to_raw() == other.to_raw()
  }
}

/// Lists every failure of the category and cover axioms.
pub fn validate_site(raw: &RawSite) -> Vec<String> {
  let mut errs = Vec::new();
  let obj: HashMap<&str, usize> = raw.objects.iter().enumerate().map(|(k, s)| (s.as_str(), k)).collect();
  if obj.len() != raw.objects.len() {
    errs.push("duplicate object names".into());
  }
  let mor: HashMap<&str, usize> = raw.morphisms.iter().enumerate().map(|(k, m)| (m.id.as_str(), k)).collect();
  if mor.len() != raw.morphisms.len() {
    errs.push("duplicate morphism ids".into());
  }
  let mut src = Vec::new();
  let mut dst = Vec::new();
  for m in &raw.morphisms {
    match (obj.get(m.src.as_str()), obj.get(m.dst.as_str())) {
      (Some(&a), Some(&b)) => {
        src.push(a);
        dst.push(b);
      }
      _ => {
        errs.push(format!("morphism {} has an unknown endpoint", m.id));
        src.push(usize::MAX);
        dst.push(usize::MAX);
      }
    }
  }
  if !errs.is_empty() {
    return errs;
  }
  let n = raw.morphisms.len();
  let mut comp: HashMap<(usize, usize), usize> = HashMap::new();
  for [g, f, h] in &raw.composition {
    match (mor.get(g.as_str()), mor.get(f.as_str()), mor.get(h.as_str())) {
      (Some(&g), Some(&f), Some(&h)) => {
        if dst[f] != src[g] {
          errs.push(format!("composite {} ∘ {} of non-composable morphisms", raw.morphisms[g].id, raw.morphisms[f].id));
        } else if src[h] != src[f] || dst[h] != dst[g] {
          errs.push(format!("composite {} ∘ {} has the wrong endpoints", raw.morphisms[g].id, raw.morphisms[f].id));
        } else if comp.insert((g, f), h).is_some_and(|old| old != h) {
          errs.push(format!("composite {} ∘ {} is given twice", raw.morphisms[g].id, raw.morphisms[f].id));
        }
      }
      _ => errs.push(format!("composition entry [{g}, {f}, {h}] names an unknown morphism")),
    }
  }
  for g in 0..n {
    for f in 0..n {
      if dst[f] == src[g] && !comp.contains_key(&(g, f)) {
        errs.push(format!("composite {} ∘ {} is missing", raw.morphisms[g].id, raw.morphisms[f].id));
      }
    }
  }
  if !errs.is_empty() {
    return errs;
  }
  for (k, name) in raw.objects.iter().enumerate() {
    let is_id = |e: usize| {
      src[e] == k
        && dst[e] == k
        && (0..n).all(|f| (dst[f] != k || comp[&(e, f)] == f) && (src[f] != k || comp[&(f, e)] == f))
    };
    if !(0..n).any(is_id) {
      errs.push(format!("object {name} has no identity morphism"));
    }
  }
  for h in 0..n {
    for g in (0..n).filter(|&g| src[g] == dst[h]) {
      for f in (0..n).filter(|&f| src[f] == dst[g]) {
        if comp[&(f, comp[&(g, h)])] != comp[&(comp[&(f, g)], h)] {
          errs.push(format!(
            "associativity fails at ({}, {}, {})",
            raw.morphisms[f].id, raw.morphisms[g].id, raw.morphisms[h].id
          ));
        }
      }
    }
  }
  for c in &raw.covers {
    let Some(&o) = obj.get(c.object.as_str()) else {
      errs.push(format!("cover of unknown object {}", c.object));
      continue;
    };
    for m in &c.family {
      match mor.get(m.as_str()) {
        Some(&k) if dst[k] == o => {}
        Some(_) => errs.push(format!("cover member {m} does not land in {}", c.object)),
        None => errs.push(format!("cover member {m} is unknown")),
      }
    }
  }
  errs
}

impl FinSite {
  pub fn from_raw(raw: &RawSite) -> Result<Self> {
    let errs = validate_site(raw);
    if !errs.is_empty() {
      return Err(Error::Invalid(errs.join("; ")));
    }
    let obj: HashMap<&str, usize> = raw.objects.iter().enumerate().map(|(k, s)| (s.as_str(), k)).collect();
    let mor: HashMap<&str, usize> = raw.morphisms.iter().enumerate().map(|(k, m)| (m.id.as_str(), k)).collect();
    let src: Vec<usize> = raw.morphisms.iter().map(|m| obj[m.src.as_str()]).collect();
    let dst: Vec<usize> = raw.morphisms.iter().map(|m| obj[m.dst.as_str()]).collect();
    let comp: HashMap<(usize, usize), usize> =
      raw.composition.iter().map(|[g, f, h]| ((mor[g.as_str()], mor[f.as_str()]), mor[h.as_str()])).collect();
    let n = src.len();
    let identity = (0..raw.objects.len())
      .map(|k| {
        (0..n)
          .find(|&e| {
            src[e] == k
              && dst[e] == k
              && (0..n).all(|f| (dst[f] != k || comp[&(e, f)] == f) && (src[f] != k || comp[&(f, e)] == f))
          })
          .unwrap()
      })
      .collect();
    let families =
      raw.covers.iter().map(|c| (obj[c.object.as_str()], c.family.iter().map(|m| mor[m.as_str()]).collect())).collect();
    let mut site = Self {
      names: raw.objects.clone(),
      mor_names: raw.morphisms.iter().map(|m| m.id.clone()).collect(),
      src,
      dst,
      identity,
      comp,
      families,
      topology: Vec::new(),
    };
    site.topology = site.generate_topology();
    Ok(site)
  }

  pub fn from_json(s: &str) -> Result<Self> {
    Self::from_raw(&serde_json::from_str(s)?)
  }

  pub fn to_raw(&self) -> RawSite {
    let mut composition: Vec<[String; 3]> = self
      .comp
      .iter()
      .map(|(&(g, f), &h)| [self.mor_names[g].clone(), self.mor_names[f].clone(), self.mor_names[h].clone()])
      .collect();
    composition.sort();
    RawSite {
      objects: self.names.clone(),
      morphisms: (0..self.src.len())
        .map(|k| RawMorphism {
          id: self.mor_names[k].clone(),
          src: self.names[self.src[k]].clone(),
          dst: self.names[self.dst[k]].clone(),
        })
        .collect(),
      composition,
      covers: self
        .families
        .iter()
        .map(|(o, fam)| RawCover {
          object: self.names[*o].clone(),
          family: fam.iter().map(|&m| self.mor_names[m].clone()).collect(),
        })
        .collect(),
    }
  }

  pub fn to_json(&self) -> String {
    serde_json::to_string(&self.to_raw()).expect("site serializes")
  }

  /// A poset site: one morphism `a → b` whenever `a <= b` in the reflexive-transitive closure of
  /// `relations`. Covers name the members by object.
  pub fn poset(objects: &[&str], relations: &[(&str, &str)], covers: &[(&str, &[&str])]) -> Result<Self> {
    let k = objects.len();
    let idx =
      |s: &str| objects.iter().position(|&o| o == s).ok_or_else(|| Error::Invalid(format!("unknown object {s}")));
    let mut le = vec![vec![false; k]; k];
    for (a, row) in le.iter_mut().enumerate() {
      row[a] = true;
    }
    for &(a, b) in relations {
      le[idx(a)?][idx(b)?] = true;
    }
    for m in 0..k {
      for a in 0..k {
        for b in 0..k {
          if le[a][m] && le[m][b] {
            le[a][b] = true;
          }
        }
      }
    }
    let name = |a: usize, b: usize| {
      if a == b {
        format!("id_{}", objects[a])
      } else {
        format!("{}<={}", objects[a], objects[b])
      }
    };
    let mut morphisms = Vec::new();
    let mut composition = Vec::new();
    for a in 0..k {
      for b in 0..k {
        if le[a][b] {
          morphisms.push(RawMorphism { id: name(a, b), src: objects[a].into(), dst: objects[b].into() });
          for c in 0..k {
            if le[b][c] {
              composition.push([name(b, c), name(a, b), name(a, c)]);
            }
          }
        }
      }
    }
    let covers = covers
      .iter()
      .map(|&(o, fam)| {
        Ok(RawCover {
          object: o.into(),
          family: fam.iter().map(|&m| Ok(name(idx(m)?, idx(o)?))).collect::<Result<_>>()?,
        })
      })
      .collect::<Result<_>>()?;
    Self::from_raw(&RawSite {
      objects: objects.iter().map(|s| s.to_string()).collect(),
      morphisms,
      composition,
      covers,
    })
  }

  pub fn objects(&self) -> usize {
    self.names.len()
  }

  pub fn morphisms(&self) -> usize {
    self.src.len()
  }

  pub fn object(&self, name: &str) -> Option<usize> {
    self.names.iter().position(|n| n == name)
  }

  pub fn comp(&self, g: usize, f: usize) -> usize {
    self.comp[&(g, f)]
  }

  pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
    (0..self.morphisms()).filter(|&m| self.src[m] == a && self.dst[m] == b).collect()
  }

  /// Morphisms with target `c`.
  pub fn into(&self, c: usize) -> Vec<usize> {
    (0..self.morphisms()).filter(|&m| self.dst[m] == c).collect()
  }

  pub fn maximal_sieve(&self, c: usize) -> Sieve {
    self.into(c)
  }

  /// The sieve generated by a family of morphisms into `c`.
  pub fn generated(&self, family: &[usize]) -> Sieve {
    let set: BTreeSet<usize> = family
      .iter()
      .flat_map(|&g| (0..self.morphisms()).filter(move |&f| self.dst[f] == self.src[g]).map(move |f| self.comp(g, f)))
      .collect();
    set.into_iter().collect()
  }

  /// `h^* S = { f : h ∘ f ∈ S }` for `h: d → c`.
  pub fn pullback_sieve(&self, h: usize, s: &Sieve) -> Sieve {
    self.into(self.src[h]).into_iter().filter(|&f| s.binary_search(&self.comp(h, f)).is_ok()).collect()
  }

  pub fn is_covering(&self, c: usize, s: &Sieve) -> bool {
    self.topology[c].contains(s)
  }

  pub fn covering_sieves(&self, c: usize) -> Vec<Sieve> {
    let mut v: Vec<Sieve> = self.topology[c].iter().cloned().collect();
    v.sort();
    v
  }

  /// True when every object has only its maximal sieve as a cover.
  pub fn is_trivial_topology(&self) -> bool {
    (0..self.objects()).all(|c| self.topology[c].len() == 1)
  }

  fn all_sieves(&self, c: usize) -> Vec<Sieve> {
    let into = self.into(c);
    let k = into.len();
    assert!(k < 24, "too many morphisms into an object to enumerate sieves");
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
      let s: Sieve = (0..k).filter(|&b| mask & (1 << b) != 0).map(|b| into[b]).collect();
      let closed = s.iter().all(|&g| {
        (0..self.morphisms()).filter(|&f| self.dst[f] == self.src[g]).all(|f| s.binary_search(&self.comp(g, f)).is_ok())
      });
      if closed {
        out.push(s);
      }
    }
    out
  }

  /// Smallest Grothendieck topology containing the generating families.
  fn generate_topology(&self) -> Vec<HashSet<Sieve>> {
    let n = self.objects();
    let sieves: Vec<Vec<Sieve>> = (0..n).map(|c| self.all_sieves(c)).collect();
    let mut j: Vec<HashSet<Sieve>> = (0..n).map(|c| HashSet::from([self.maximal_sieve(c)])).collect();
    for (c, fam) in &self.families {
      j[*c].insert(self.generated(fam));
    }
    loop {
      let mut changed = false;
      // stability under pullback
      for h in 0..self.morphisms() {
        let c = self.dst[h];
        let pulled: Vec<Sieve> = j[c].iter().map(|s| self.pullback_sieve(h, s)).collect();
        for s in pulled {
          changed |= j[self.src[h]].insert(s);
        }
      }
      // transitivity, which also gives upward closure
      for c in 0..n {
        for r in &sieves[c] {
          if j[c].contains(r) {
            continue;
          }
          let local = j[c].iter().any(|s| s.iter().all(|&f| j[self.src[f]].contains(&self.pullback_sieve(f, r))));
          if local {
            j[c].insert(r.clone());
            changed = true;
          }
        }
      }
      if !changed {
        return j;
      }
    }
  }

  /// Whether the objects `family` cover the terminal presheaf: at every `c`, the sieve of maps
  /// whose source maps into some member covers `c`.
  pub fn covers_terminal(&self, family: &[usize]) -> bool {
    (0..self.objects()).all(|c| {
      let s: Sieve =
        self.into(c).into_iter().filter(|&f| family.iter().any(|&u| !self.hom(self.src[f], u).is_empty())).collect();
      self.is_covering(c, &s)
    })
  }

  /// `family` refines `other` when every member maps to some member of `other`.
  pub fn refines(&self, family: &[usize], other: &[usize]) -> bool {
    family.iter().all(|&u| other.iter().any(|&v| !self.hom(u, v).is_empty()))
  }

  /// Object families of at most `max_size` members covering the terminal presheaf.
  pub fn terminal_covers(&self, max_size: usize) -> Vec<Vec<usize>> {
    let n = self.objects();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
      let fam: Vec<usize> = (0..n).filter(|&b| mask & (1 << b) != 0).collect();
      if fam.len() <= max_size && self.covers_terminal(&fam) {
        out.push(fam);
      }
    }
    out.sort_by_key(|f| (f.len(), f.clone()));
    out
  }

  /// A family in the bounded list that refines every other one, preferring fewer members.
  pub fn finest_terminal_cover(&self, max_size: usize) -> Result<Vec<usize>> {
    let fams = self.terminal_covers(max_size);
    fams.iter().find(|f| fams.iter().all(|g| self.refines(f, g))).cloned().ok_or_else(|| {
      Error::Precondition(format!("no finest covering family of the terminal presheaf with at most {max_size} members"))
    })
  }

  /// The site of elements of a set-valued presheaf, with the topology transported from this site.
  /// `sizes[c] = |P(c)|` and `restrict[m]` maps `P(dst m) → P(src m)`.
  pub fn elements(&self, sizes: &[usize], restrict: &[Vec<usize>]) -> Elements {
    let objs: Vec<(usize, usize)> = (0..self.objects()).flat_map(|c| (0..sizes[c]).map(move |x| (c, x))).collect();
    let oid: HashMap<(usize, usize), usize> = objs.iter().enumerate().map(|(k, &o)| (o, k)).collect();
    let mut mors: Vec<(usize, usize)> = Vec::new();
    for m in 0..self.morphisms() {
      for x in 0..sizes[self.dst[m]] {
        mors.push((m, x));
      }
    }
    let mid: HashMap<(usize, usize), usize> = mors.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let src: Vec<usize> = mors.iter().map(|&(m, x)| oid[&(self.src[m], restrict[m][x])]).collect();
    let dst: Vec<usize> = mors.iter().map(|&(m, x)| oid[&(self.dst[m], x)]).collect();
    let mut comp = HashMap::new();
    for (g, &(mg, xg)) in mors.iter().enumerate() {
      for (f, &(mf, _)) in mors.iter().enumerate() {
        if dst[f] == src[g] {
          comp.insert((g, f), mid[&(self.comp(mg, mf), xg)]);
        }
      }
    }
    let identity = objs.iter().map(|&(c, x)| mid[&(self.identity[c], x)]).collect();
    let lift = |x: usize, s: &Sieve| -> Sieve {
      let mut v: Vec<usize> = s.iter().map(|&m| mid[&(m, x)]).collect();
      v.sort();
      v
    };
    let topology = objs.iter().map(|&(c, x)| self.topology[c].iter().map(|s| lift(x, s)).collect()).collect();
    let site = FinSite {
      names: objs.iter().map(|&(c, x)| format!("({},{x})", self.names[c])).collect(),
      mor_names: mors.iter().map(|&(m, x)| format!("({},{x})", self.mor_names[m])).collect(),
      src,
      dst,
      identity,
      comp,
      families: Vec::new(),
      topology,
    };
    Elements { site, objects: objs, morphisms: mors }
  }
}

/// A site of elements: object `k` is `objects[k] = (c, x)` and morphism `k` is
/// `morphisms[k] = (m, x)`, the base morphism `m` with `x` in the section over its target.
#[derive(Clone, Debug)]
pub struct Elements {
  pub site: FinSite,
  pub objects: Vec<(usize, usize)>,
  pub morphisms: Vec<(usize, usize)>,
}

#[cfg(test)]
mod tests {
  use super::*;

  fn s1() -> FinSite {
    FinSite::poset(&["U", "V", "A", "B"], &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V")], &[]).unwrap()
  }

  fn s1_cov() -> FinSite {
    FinSite::poset(
      &["T", "U", "V", "A", "B"],
      &[("A", "U"), ("A", "V"), ("B", "U"), ("B", "V"), ("U", "T"), ("V", "T")],
      &[("T", &["U", "V"])],
    )
    .unwrap()
  }

  #[test]
  fn point_and_circle_sites_validate() {
    let pt = FinSite::poset(&["*"], &[], &[]).unwrap();
    assert!(pt.is_trivial_topology());
    let s = s1();
    assert_eq!(s.morphisms(), 8);
    assert!(validate_site(&s.to_raw()).is_empty());
    assert!(s.is_trivial_topology());
  }

  #[test]
  fn non_associative_composition_is_reported() {
    // Z/2 as a one-object category with 1 ∘ 1 declared to be 1.
    let raw = RawSite {
      objects: vec!["*".into()],
      morphisms: vec![
        RawMorphism { id: "e".into(), src: "*".into(), dst: "*".into() },
        RawMorphism { id: "a".into(), src: "*".into(), dst: "*".into() },
        RawMorphism { id: "b".into(), src: "*".into(), dst: "*".into() },
      ],
      composition: [
        ("e", "e", "e"),
        ("e", "a", "a"),
        ("a", "e", "a"),
        ("e", "b", "b"),
        ("b", "e", "b"),
        ("a", "a", "b"),
        ("a", "b", "a"),
        ("b", "a", "e"),
        ("b", "b", "a"),
      ]
      .iter()
      .map(|&(g, f, h)| [g.to_string(), f.to_string(), h.to_string()])
      .collect(),
      covers: vec![],
    };
    let errs = validate_site(&raw);
    assert!(errs.iter().any(|e| e.starts_with("associativity fails at")), "{errs:?}");
  }

  #[test]
  fn covered_top_has_two_covering_sieves() {
    let s = s1_cov();
    let t = s.object("T").unwrap();
    assert_eq!(s.covering_sieves(t).len(), 2);
    assert!(!s.is_trivial_topology());
  }

  #[test]
  fn terminal_covers() {
    let s = s1();
    let (u, v) = (s.object("U").unwrap(), s.object("V").unwrap());
    assert!(s.covers_terminal(&[u, v]));
    assert!(!s.covers_terminal(&[u]));
    assert_eq!(s.finest_terminal_cover(2).unwrap(), vec![u, v]);
    let c = s1_cov();
    let (u, v) = (c.object("U").unwrap(), c.object("V").unwrap());
    assert_eq!(c.finest_terminal_cover(2).unwrap(), vec![u, v]);
  }

  #[test]
  fn json_round_trip() {
    let s = s1_cov();
    let j = s.to_json();
    let t = FinSite::from_json(&j).unwrap();
    assert_eq!(t.to_json(), j);
  }
}

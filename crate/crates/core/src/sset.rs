//! Truncated simplicial sets with explicit face and degeneracy tables.
//!
//! Simplices of dimension `n` are the ids `0..count(n)`. Every dimension up to the
//! truncation level is stored, degenerate simplices included.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::{Operator, OrdinalMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSSet {
  trunc: usize,
  counts: Vec<usize>,
  /// `faces[n][i][x]` for `1 <= n <= trunc`; `faces[0]` is empty.
  faces: Vec<Vec<Vec<usize>>>,
  /// `degens[n][j][x]` for `n < trunc`; `degens[trunc]` is empty.
  degens: Vec<Vec<Vec<usize>>>,
}

/// Outcome of [`validate_sset`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ValidationReport {
  Pass,
  Malformed { detail: String },
  Violation { identity: String, dim: usize, simplex: usize },
}

impl ValidationReport {
  pub fn is_pass(&self) -> bool {
    matches!(self, ValidationReport::Pass)
  }
}

impl fmt::Display for ValidationReport {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      ValidationReport::Pass => write!(f, "PASS"),
      ValidationReport::Malformed { detail } => write!(f, "MALFORMED: {detail}"),
      ValidationReport::Violation { identity, dim, simplex } => {
        write!(f, "FAIL: {identity} at simplex {simplex} of dimension {dim}")
      }
    }
  }
}

impl TruncSSet {
  /// Builds from tables, checking only their shape. Use [`TruncSSet::validate`] for the
  /// simplicial identities.
  pub fn from_tables(
    trunc: usize,
    counts: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degens: Vec<Vec<Vec<usize>>>,
  ) -> Result<Self> {
    if counts.len() != trunc + 1 || faces.len() != trunc + 1 || degens.len() != trunc + 1 {
      return Err(Error::Malformed(format!("tables must cover dimensions 0..={trunc}")));
    }
    for n in 0..=trunc {
      if n == 0 {
        if !faces[0].is_empty() {
          return Err(Error::Malformed("vertices have no faces".into()));
        }
      } else {
        if faces[n].len() != n + 1 {
          return Err(Error::Malformed(format!("dimension {n} needs {} face maps", n + 1)));
        }
        for (i, table) in faces[n].iter().enumerate() {
          if table.len() != counts[n] {
            return Err(Error::Malformed(format!("face d_{i} of dimension {n} is missing simplices")));
          }
          if let Some(x) = table.iter().position(|&y| y >= counts[n - 1]) {
            return Err(Error::Malformed(format!("face d_{i} of simplex {x} in dimension {n} is out of range")));
          }
        }
      }
      if n < trunc {
        if degens[n].len() != n + 1 {
          return Err(Error::Malformed(format!("dimension {n} needs {} degeneracies", n + 1)));
        }
        for (j, table) in degens[n].iter().enumerate() {
          if table.len() != counts[n] {
            return Err(Error::Malformed(format!("degeneracy s_{j} of dimension {n} is missing simplices")));
          }
          if let Some(x) = table.iter().position(|&y| y >= counts[n + 1]) {
            return Err(Error::Malformed(format!("degeneracy s_{j} of simplex {x} in dimension {n} is out of range")));
          }
        }
      } else if !degens[n].is_empty() {
        return Err(Error::Malformed("top dimension has no degeneracies".into()));
      }
    }
    Ok(Self { trunc, counts, faces, degens })
  }

  pub fn trunc(&self) -> usize {
    self.trunc
  }

  pub fn count(&self, n: usize) -> usize {
    self.counts[n]
  }

  pub fn counts(&self) -> &[usize] {
    &self.counts
  }

  pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
    self.faces[n][i][x]
  }

  pub fn degen(&self, n: usize, j: usize, x: usize) -> usize {
    self.degens[n][j][x]
  }

  pub fn face_table(&self, n: usize, i: usize) -> &[usize] {
    &self.faces[n][i]
  }

  pub fn degen_table(&self, n: usize, j: usize) -> &[usize] {
    &self.degens[n][j]
  }

  /// `θ^* x` for `θ: [m] -> [n]` and `x` an `n`-simplex.
  pub fn act(&self, theta: &OrdinalMap, x: usize) -> usize {
    let mut dim = theta.target();
    let mut cur = x;
    for op in theta.operator_word() {
      match op {
        Operator::Face(i) => {
          cur = self.faces[dim][i][cur];
          dim -= 1;
        }
        Operator::Degeneracy(j) => {
          cur = self.degens[dim][j][cur];
          dim += 1;
        }
      }
    }
    cur
  }

  /// The `k`-th vertex of an `n`-simplex.
  pub fn vertex(&self, n: usize, x: usize, k: usize) -> usize {
    self.act(&OrdinalMap::constant(0, n, k), x)
  }

  /// The totally degenerate `n`-simplex on a vertex.
  pub fn degenerate_vertex(&self, v: usize, n: usize) -> usize {
    let mut cur = v;
    for d in 0..n {
      cur = self.degens[d][0][cur];
    }
    cur
  }

  pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
    n > 0 && (0..n).any(|j| (0..self.counts[n - 1]).any(|y| self.degens[n - 1][j][y] == x))
  }

  /// Flags for degenerate simplices, per dimension.
  pub fn degenerate_flags(&self) -> Vec<Vec<bool>> {
    (0..=self.trunc)
      .map(|n| {
        let mut flags = vec![false; self.counts[n]];
        if n > 0 {
          for table in &self.degens[n - 1] {
            for &y in table {
              flags[y] = true;
            }
          }
        }
        flags
      })
      .collect()
  }

  pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
    let flags = &self.degenerate_flags()[n];
    (0..self.counts[n]).filter(|&x| !flags[x]).collect()
  }

  /// Checks all simplicial identities on the stored data.
  pub fn validate(&self) -> ValidationReport {
    let n_max = self.trunc;
    for n in 2..=n_max {
      for j in 1..=n {
        for i in 0..j {
          for x in 0..self.counts[n] {
            let lhs = self.faces[n - 1][i][self.faces[n][j][x]];
            let rhs = self.faces[n - 1][j - 1][self.faces[n][i][x]];
            if lhs != rhs {
              return ValidationReport::Violation {
                identity: format!("d{i}d{j} = d{}d{i}", j - 1),
                dim: n,
                simplex: x,
              };
            }
          }
        }
      }
    }
    for n in 0..n_max {
      for j in 0..=n {
        for i in 0..=n + 1 {
          for x in 0..self.counts[n] {
            let lhs = self.faces[n + 1][i][self.degens[n][j][x]];
            let (ok, name) = if i < j {
              (lhs == self.degens[n - 1][j - 1][self.faces[n][i][x]], format!("d{i}s{j} = s{}d{i}", j - 1))
            } else if i == j || i == j + 1 {
              (lhs == x, format!("d{i}s{j} = id"))
            } else {
              (lhs == self.degens[n - 1][j][self.faces[n][i - 1][x]], format!("d{i}s{j} = s{j}d{}", i - 1))
            };
            if !ok {
              return ValidationReport::Violation { identity: name, dim: n, simplex: x };
            }
          }
        }
      }
    }
    for n in 0..n_max.saturating_sub(1) {
      for j in 0..=n {
        for i in 0..=j {
          for x in 0..self.counts[n] {
            let lhs = self.degens[n + 1][i][self.degens[n][j][x]];
            let rhs = self.degens[n + 1][j + 1][self.degens[n][i][x]];
            if lhs != rhs {
              return ValidationReport::Violation {
                identity: format!("s{i}s{j} = s{}s{i}", j + 1),
                dim: n,
                simplex: x,
              };
            }
          }
        }
      }
    }
    ValidationReport::Pass
  }

  pub fn to_raw(&self) -> RawSSet {
    let mut simplices = BTreeMap::new();
    let mut faces = BTreeMap::new();
    let mut degeneracies = BTreeMap::new();
    for n in 0..=self.trunc {
      simplices.insert(n.to_string(), (0..self.counts[n]).collect());
      if n > 0 {
        let per: BTreeMap<String, BTreeMap<String, usize>> = (0..=n)
          .map(|i| (i.to_string(), self.faces[n][i].iter().enumerate().map(|(x, &y)| (x.to_string(), y)).collect()))
          .collect();
        faces.insert(n.to_string(), per);
      }
      if n < self.trunc {
        let per: BTreeMap<String, BTreeMap<String, usize>> = (0..=n)
          .map(|j| (j.to_string(), self.degens[n][j].iter().enumerate().map(|(x, &y)| (x.to_string(), y)).collect()))
          .collect();
        degeneracies.insert(n.to_string(), per);
      }
    }
    RawSSet { trunc: self.trunc, simplices, faces, degeneracies }
  }

  pub fn to_json(&self) -> String {
    serde_json::to_string(&self.to_raw()).expect("sset serializes")
  }

  pub fn from_json(s: &str) -> Result<Self> {
    let raw: RawSSet = serde_json::from_str(s)?;
    raw.to_sset()
  }

  /// The simplicial set with one simplex in every dimension.
  pub fn point(trunc: usize) -> Self {
    Self::discrete(1, trunc)
  }

  /// `k` points, constant in every dimension.
  pub fn discrete(k: usize, trunc: usize) -> Self {
    let levels = (0..=trunc).map(|_| (0..k).collect()).collect();
    Labelled::build(trunc, levels, |_, _, &p| p, |_, _, &p| p).expect("discrete").sset
  }

  pub fn empty(trunc: usize) -> Self {
    Self::discrete(0, trunc)
  }

  /// The standard `n`-simplex truncated at `trunc`.
  pub fn standard(n: usize, trunc: usize) -> Self {
    standard_simplex(n, trunc).sset
  }

  /// The sub-simplicial set on the simplices flagged in `keep`, which must be closed under
  /// faces and degeneracies. Also returns the old ids of the kept simplices.
  pub fn restrict(&self, keep: &[Vec<bool>]) -> Result<(TruncSSet, Vec<Vec<usize>>)> {
    let ids: Vec<Vec<usize>> =
      (0..=self.trunc).map(|n| (0..self.counts[n]).filter(|&x| keep[n][x]).collect()).collect();
    let levels = ids.clone();
    let lab = Labelled::build(self.trunc, levels, |n, i, &x| self.face(n, i, x), |n, j, &x| self.degen(n, j, x))?;
    Ok((lab.sset, ids))
  }
}

/// JSON form of a truncated simplicial set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSSet {
  pub trunc: usize,
  pub simplices: BTreeMap<String, Vec<usize>>,
  #[serde(default)]
  pub faces: BTreeMap<String, BTreeMap<String, BTreeMap<String, usize>>>,
  #[serde(default)]
  pub degeneracies: BTreeMap<String, BTreeMap<String, BTreeMap<String, usize>>>,
}

impl RawSSet {
  pub fn to_sset(&self) -> Result<TruncSSet> {
    let trunc = self.trunc;
    let mut counts = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
      let ids = self
        .simplices
        .get(&n.to_string())
        .ok_or_else(|| Error::Malformed(format!("no simplices listed for dimension {n}")))?;
      if ids.iter().enumerate().any(|(k, &id)| k != id) {
        return Err(Error::Malformed(format!("simplex ids of dimension {n} must be 0..{}", ids.len())));
      }
      counts.push(ids.len());
    }
    let table = |src: &BTreeMap<String, BTreeMap<String, BTreeMap<String, usize>>>,
                 n: usize,
                 k: usize,
                 what: &str|
     -> Result<Vec<usize>> {
      let per = src
        .get(&n.to_string())
        .and_then(|m| m.get(&k.to_string()))
        .ok_or_else(|| Error::Malformed(format!("missing {what}_{k} table in dimension {n}")))?;
      (0..counts[n])
        .map(|x| {
          per
            .get(&x.to_string())
            .copied()
            .ok_or_else(|| Error::Malformed(format!("missing {what}_{k} of simplex {x} in dimension {n}")))
        })
        .collect()
    };
    let mut faces = vec![Vec::new()];
    let mut degens = Vec::new();
    for n in 0..=trunc {
      if n > 0 {
        faces.push((0..=n).map(|i| table(&self.faces, n, i, "d")).collect::<Result<_>>()?);
      }
      if n < trunc {
        degens.push((0..=n).map(|j| table(&self.degeneracies, n, j, "s")).collect::<Result<_>>()?);
      } else {
        degens.push(Vec::new());
      }
    }
    TruncSSet::from_tables(trunc, counts, faces, degens)
  }
}

/// Validates raw JSON-shaped data: malformed tables are reported apart from identity failures.
pub fn validate_sset(raw: &RawSSet) -> ValidationReport {
  match raw.to_sset() {
    Ok(x) => x.validate(),
    Err(e) => ValidationReport::Malformed { detail: e.to_string() },
  }
}

/// A simplicial set whose simplices carry structured labels, with a reverse index.
#[derive(Clone, Debug)]
pub struct Labelled<T> {
  pub sset: TruncSSet,
  pub labels: Vec<Vec<T>>,
  index: Vec<HashMap<T, usize>>,
}

impl<T: Clone + Ord + Hash + fmt::Debug> Labelled<T> {
  /// Builds from per-dimension label sets and label-level face/degeneracy functions.
  /// Labels are sorted, so ids are canonical.
  pub fn build<F, D>(trunc: usize, mut levels: Vec<Vec<T>>, face: F, degen: D) -> Result<Self>
  where
    F: Fn(usize, usize, &T) -> T,
    D: Fn(usize, usize, &T) -> T,
  {
    if levels.len() != trunc + 1 {
      return Err(Error::Malformed(format!("need {} levels, got {}", trunc + 1, levels.len())));
    }
    for level in &mut levels {
      level.sort();
      level.dedup();
    }
    let index: Vec<HashMap<T, usize>> =
      levels.iter().map(|l| l.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect()).collect();
    let lookup = |n: usize, t: &T| -> Result<usize> {
      index[n].get(t).copied().ok_or_else(|| Error::Malformed(format!("label {t:?} missing from dimension {n}")))
    };
    let mut faces = vec![Vec::new()];
    let mut degens = Vec::new();
    for n in 0..=trunc {
      if n > 0 {
        let mut per = Vec::with_capacity(n + 1);
        for i in 0..=n {
          per.push(levels[n].iter().map(|t| lookup(n - 1, &face(n, i, t))).collect::<Result<Vec<_>>>()?);
        }
        faces.push(per);
      }
      if n < trunc {
        let mut per = Vec::with_capacity(n + 1);
        for j in 0..=n {
          per.push(levels[n].iter().map(|t| lookup(n + 1, &degen(n, j, t))).collect::<Result<Vec<_>>>()?);
        }
        degens.push(per);
      } else {
        degens.push(Vec::new());
      }
    }
    let counts = levels.iter().map(Vec::len).collect();
    let sset = TruncSSet::from_tables(trunc, counts, faces, degens)?;
    Ok(Self { sset, labels: levels, index })
  }

  /// Builds from labels with a general `θ^*` action on labels; faces and degeneracies are the
  /// cofaces and codegeneracies.
  pub fn build_with_action<A>(trunc: usize, levels: Vec<Vec<T>>, act: A) -> Result<Self>
  where
    A: Fn(&OrdinalMap, &T) -> T,
  {
    Self::build(
      trunc,
      levels,
      |n, i, t| act(&OrdinalMap::coface(n, i), t),
      |n, j, t| act(&OrdinalMap::codegeneracy(n, j), t),
    )
  }

  pub fn id_of(&self, n: usize, t: &T) -> Option<usize> {
    self.index[n].get(t).copied()
  }

  pub fn label(&self, n: usize, x: usize) -> &T {
    &self.labels[n][x]
  }

  /// The map induced by a label-level function into another labelled set.
  pub fn map_to<U, F>(&self, other: &Labelled<U>, f: F) -> Result<SSetMap>
  where
    U: Clone + Ord + Hash + fmt::Debug,
    F: Fn(usize, &T) -> U,
  {
    let mut table = Vec::with_capacity(self.sset.trunc + 1);
    for n in 0..=self.sset.trunc {
      let mut row = Vec::with_capacity(self.labels[n].len());
      for t in &self.labels[n] {
        let u = f(n, t);
        row.push(other.id_of(n, &u).ok_or_else(|| Error::Malformed(format!("image {u:?} of {t:?} not found")))?);
      }
      table.push(row);
    }
    SSetMap::new(&self.sset, &other.sset, table)
  }

  /// Map into an unlabelled target given ids directly.
  pub fn map_to_ids<F>(&self, target: &TruncSSet, f: F) -> Result<SSetMap>
  where
    F: Fn(usize, &T) -> usize,
  {
    let table = (0..=self.sset.trunc).map(|n| self.labels[n].iter().map(|t| f(n, t)).collect()).collect();
    SSetMap::new(&self.sset, target, table)
  }
}

/// A simplicial map given by its action on simplex ids in each dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Hash, PartialOrd, Ord)]
pub struct SSetMap {
  pub map: Vec<Vec<usize>>,
}

impl SSetMap {
  /// Checks that the table commutes with faces and degeneracies.
  pub fn new(source: &TruncSSet, target: &TruncSSet, map: Vec<Vec<usize>>) -> Result<Self> {
    let f = Self { map };
    f.check(source, target)?;
    Ok(f)
  }

  pub fn new_unchecked(map: Vec<Vec<usize>>) -> Self {
    Self { map }
  }

  pub fn check(&self, source: &TruncSSet, target: &TruncSSet) -> Result<()> {
    if source.trunc != target.trunc {
      return Err(Error::Truncation(source.trunc, target.trunc));
    }
    if self.map.len() != source.trunc + 1 {
      return Err(Error::Malformed("map table has wrong number of dimensions".into()));
    }
    for n in 0..=source.trunc {
      if self.map[n].len() != source.count(n) {
        return Err(Error::Malformed(format!("map table misses simplices in dimension {n}")));
      }
      if let Some(x) = self.map[n].iter().position(|&y| y >= target.count(n)) {
        return Err(Error::Malformed(format!("image of simplex {x} in dimension {n} out of range")));
      }
    }
    for n in 1..=source.trunc {
      for i in 0..=n {
        for x in 0..source.count(n) {
          if self.map[n - 1][source.face(n, i, x)] != target.face(n, i, self.map[n][x]) {
            return Err(Error::Identity {
              identity: format!("f d{i} = d{i} f"),
              witness: format!("simplex {x} of dimension {n}"),
            });
          }
        }
      }
    }
    for n in 0..source.trunc {
      for j in 0..=n {
        for x in 0..source.count(n) {
          if self.map[n + 1][source.degen(n, j, x)] != target.degen(n, j, self.map[n][x]) {
            return Err(Error::Identity {
              identity: format!("f s{j} = s{j} f"),
              witness: format!("simplex {x} of dimension {n}"),
            });
          }
        }
      }
    }
    Ok(())
  }

  pub fn identity(x: &TruncSSet) -> Self {
    Self { map: (0..=x.trunc).map(|n| (0..x.count(n)).collect()).collect() }
  }

  /// `other ∘ self`.
  pub fn then(&self, other: &SSetMap) -> SSetMap {
    SSetMap {
      map: self.map.iter().enumerate().map(|(n, row)| row.iter().map(|&y| other.map[n][y]).collect()).collect(),
    }
  }

  pub fn apply(&self, n: usize, x: usize) -> usize {
    self.map[n][x]
  }

  pub fn is_bijective(&self, target: &TruncSSet) -> bool {
    self.map.iter().enumerate().all(|(n, row)| {
      let mut seen = vec![false; target.count(n)];
      row.len() == target.count(n) && row.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    })
  }

  /// The constant map onto a vertex.
  pub fn constant(source: &TruncSSet, target: &TruncSSet, v: usize) -> Self {
    Self { map: (0..=source.trunc).map(|n| vec![target.degenerate_vertex(v, n); source.count(n)]).collect() }
  }
}

/// `Δ^n` with simplices labelled by monotone sequences into `[n]`.
pub fn standard_simplex(n: usize, trunc: usize) -> Labelled<Vec<usize>> {
  let levels = (0..=trunc).map(|k| OrdinalMap::all(k, n).into_iter().map(|t| t.values().to_vec()).collect()).collect();
  Labelled::build_with_action(trunc, levels, |theta, seq: &Vec<usize>| theta.values().iter().map(|&k| seq[k]).collect())
    .expect("standard simplex")
}

/// `Δ^1/∂Δ^1`: one vertex and one nondegenerate edge. Constant sequences collapse to `None`.
pub fn circle(trunc: usize) -> Labelled<Option<Vec<usize>>> {
  let collapse = |seq: Vec<usize>| if seq.iter().all(|&v| v == seq[0]) { None } else { Some(seq) };
  let levels =
    (0..=trunc).map(|k| OrdinalMap::all(k, 1).into_iter().map(|t| collapse(t.values().to_vec())).collect()).collect();
  Labelled::build_with_action(trunc, levels, |theta, s: &Option<Vec<usize>>| match s {
    None => None,
    Some(seq) => collapse(theta.values().iter().map(|&k| seq[k]).collect()),
  })
  .expect("circle")
}

/// `Δ^n/∂Δ^n`: simplices of `Δ^n` missing some vertex collapse to the base point `None`.
pub fn sphere(n: usize, trunc: usize) -> Labelled<Option<Vec<usize>>> {
  let collapse = move |seq: Vec<usize>| if (0..=n).all(|v| seq.contains(&v)) { Some(seq) } else { None };
  let levels =
    (0..=trunc).map(|k| OrdinalMap::all(k, n).into_iter().map(|t| collapse(t.values().to_vec())).collect()).collect();
  Labelled::build_with_action(trunc, levels, |theta, s: &Option<Vec<usize>>| match s {
    None => None,
    Some(seq) => collapse(theta.values().iter().map(|&k| seq[k]).collect()),
  })
  .expect("sphere")
}

/// Levelwise product with componentwise structure maps.
pub fn product(x: &TruncSSet, y: &TruncSSet) -> Result<Labelled<(usize, usize)>> {
  if x.trunc != y.trunc {
    return Err(Error::Truncation(x.trunc, y.trunc));
  }
  let levels =
    (0..=x.trunc).map(|n| (0..x.count(n)).flat_map(|a| (0..y.count(n)).map(move |b| (a, b))).collect()).collect();
  Labelled::build(
    x.trunc,
    levels,
    |n, i, &(a, b)| (x.face(n, i, a), y.face(n, i, b)),
    |n, j, &(a, b)| (x.degen(n, j, a), y.degen(n, j, b)),
  )
}

/// Disjoint union, labelled by `(summand, id)`.
pub fn coproduct(parts: &[&TruncSSet]) -> Result<Labelled<(usize, usize)>> {
  let trunc = parts.first().map(|p| p.trunc).unwrap_or(0);
  if let Some(p) = parts.iter().find(|p| p.trunc != trunc) {
    return Err(Error::Truncation(trunc, p.trunc));
  }
  let levels = (0..=trunc)
    .map(|n| parts.iter().enumerate().flat_map(|(k, p)| (0..p.count(n)).map(move |x| (k, x))).collect())
    .collect();
  Labelled::build(
    trunc,
    levels,
    |n, i, &(k, x)| (k, parts[k].face(n, i, x)),
    |n, j, &(k, x)| (k, parts[k].degen(n, j, x)),
  )
}

/// Pullback `X ×_Z Y` of two maps into a common target.
pub fn pullback(x: &TruncSSet, f: &SSetMap, y: &TruncSSet, g: &SSetMap) -> Result<Labelled<(usize, usize)>> {
  if x.trunc != y.trunc {
    return Err(Error::Truncation(x.trunc, y.trunc));
  }
  let levels = (0..=x.trunc)
    .map(|n| {
      (0..x.count(n))
        .flat_map(|a| (0..y.count(n)).filter(move |&b| f.map[n][a] == g.map[n][b]).map(move |b| (a, b)))
        .collect()
    })
    .collect();
  Labelled::build(
    x.trunc,
    levels,
    |n, i, &(a, b)| (x.face(n, i, a), y.face(n, i, b)),
    |n, j, &(a, b)| (x.degen(n, j, a), y.degen(n, j, b)),
  )
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn standard_two_simplex_validates() {
    let d2 = TruncSSet::standard(2, 3);
    assert!(d2.validate().is_pass());
    assert_eq!(d2.counts(), &[3, 6, 10, 15]);
  }

  #[test]
  fn swapped_faces_fail_with_face_identity() {
    let lab = standard_simplex(2, 2);
    let sigma = lab.id_of(2, &vec![0, 1, 2]).unwrap();
    let mut faces = lab.sset.faces.clone();
    let (a, b) = (faces[2][0][sigma], faces[2][1][sigma]);
    faces[2][0][sigma] = b;
    faces[2][1][sigma] = a;
    let bad = TruncSSet::from_tables(2, lab.sset.counts.clone(), faces, lab.sset.degens.clone()).unwrap();
    match bad.validate() {
      ValidationReport::Violation { identity, dim, simplex } => {
        assert!(identity.starts_with('d') && identity.contains(" = d"), "{identity}");
        assert_eq!((dim, simplex), (2, sigma));
      }
      other => panic!("expected violation, got {other:?}"),
    }
  }

  #[test]
  fn missing_face_is_malformed() {
    let mut raw = TruncSSet::standard(1, 2).to_raw();
    raw.faces.get_mut("1").unwrap().get_mut("0").unwrap().remove("0");
    assert!(matches!(validate_sset(&raw), ValidationReport::Malformed { .. }));
  }

  #[test]
  fn product_counts() {
    let d1 = TruncSSet::standard(1, 3);
    let sq = product(&d1, &d1).unwrap();
    assert_eq!(sq.sset.count(1), 9);
    assert!(sq.sset.validate().is_pass());
    assert_eq!(sq.sset.nondegenerate(2).len(), 2);
    let unit = product(&d1, &TruncSSet::point(3)).unwrap();
    assert_eq!(unit.sset.counts(), d1.counts());
  }

  #[test]
  fn circle_model() {
    let c = circle(3);
    assert_eq!(c.sset.counts(), &[1, 2, 3, 4]);
    assert!(c.sset.validate().is_pass());
    assert_eq!(c.sset.nondegenerate(1).len(), 1);
  }

  #[test]
  fn sphere_model() {
    let s = sphere(2, 3);
    assert_eq!(s.sset.counts(), &[1, 1, 2, 4]);
    assert!(s.sset.validate().is_pass());
    assert_eq!(s.sset.nondegenerate(2).len(), 1);
    assert_eq!(sphere(1, 3).sset.counts(), circle(3).sset.counts());
  }

  #[test]
  fn json_round_trip_is_bit_exact() {
    let x = product(&TruncSSet::standard(1, 2), &circle(2).sset).unwrap().sset;
    let s = x.to_json();
    let y = TruncSSet::from_json(&s).unwrap();
    assert_eq!(x, y);
    assert_eq!(s, y.to_json());
  }

  #[test]
  fn act_matches_labels() {
    let lab = standard_simplex(3, 3);
    for theta in OrdinalMap::all(1, 3) {
      let top = lab.id_of(3, &vec![0, 1, 2, 3]).unwrap();
      let img = lab.sset.act(&theta, top);
      assert_eq!(lab.label(1, img), &theta.values().to_vec());
    }
  }
}

//! Truncated bisimplicial sets and their diagonals.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sset::{TruncSSet, ValidationReport};

/// Bidegree `(p, q)` with `p` horizontal and `q` vertical, both at most `trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisSSet {
  trunc: usize,
  counts: Vec<Vec<usize>>,
  /// `hfaces[p][q][i][x]`, lands in `(p-1, q)`.
  hfaces: Vec<Vec<Vec<Vec<usize>>>>,
  vfaces: Vec<Vec<Vec<Vec<usize>>>>,
  hdegens: Vec<Vec<Vec<Vec<usize>>>>,
  vdegens: Vec<Vec<Vec<Vec<usize>>>>,
}

type Ops<'a, T> = &'a dyn Fn(usize, usize, usize, &T) -> T;

impl BisSSet {
  /// Builds from labels per bidegree. The closures take `(p, q, index, label)`.
  pub fn build<T: Clone + Ord + Hash + Debug>(
    trunc: usize,
    mut levels: Vec<Vec<Vec<T>>>,
    hface: Ops<T>,
    vface: Ops<T>,
    hdegen: Ops<T>,
    vdegen: Ops<T>,
  ) -> Result<Self> {
    for row in &mut levels {
      for l in row.iter_mut() {
        l.sort();
        l.dedup();
      }
    }
    let index: Vec<Vec<HashMap<T, usize>>> = levels
      .iter()
      .map(|row| row.iter().map(|l| l.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect()).collect())
      .collect();
    let look = |p: usize, q: usize, t: T| -> Result<usize> {
      index[p][q]
        .get(&t)
        .copied()
        .ok_or_else(|| Error::Malformed(format!("label {t:?} missing from bidegree ({p},{q})")))
    };
    let mut hfaces = vec![vec![Vec::new(); trunc + 1]; trunc + 1];
    let mut vfaces = hfaces.clone();
    let mut hdegens = hfaces.clone();
    let mut vdegens = hfaces.clone();
    for p in 0..=trunc {
      for q in 0..=trunc {
        let here = &levels[p][q];
        if p > 0 {
          hfaces[p][q] =
            (0..=p).map(|i| here.iter().map(|t| look(p - 1, q, hface(p, q, i, t))).collect()).collect::<Result<_>>()?;
        }
        if q > 0 {
          vfaces[p][q] =
            (0..=q).map(|i| here.iter().map(|t| look(p, q - 1, vface(p, q, i, t))).collect()).collect::<Result<_>>()?;
        }
        if p < trunc {
          hdegens[p][q] = (0..=p)
            .map(|j| here.iter().map(|t| look(p + 1, q, hdegen(p, q, j, t))).collect())
            .collect::<Result<_>>()?;
        }
        if q < trunc {
          vdegens[p][q] = (0..=q)
            .map(|j| here.iter().map(|t| look(p, q + 1, vdegen(p, q, j, t))).collect())
            .collect::<Result<_>>()?;
        }
      }
    }
    let counts = levels.iter().map(|row| row.iter().map(Vec::len).collect()).collect();
    Ok(Self { trunc, counts, hfaces, vfaces, hdegens, vdegens })
  }

  /// The bisimplicial set constant in the horizontal direction: `B_{p,q} = X_q`.
  pub fn horizontally_constant(x: &TruncSSet) -> Self {
    let n = x.trunc();
    let levels = (0..=n).map(|_| (0..=n).map(|q| (0..x.count(q)).collect()).collect()).collect();
    Self::build(n, levels, &|_, _, _, &s| s, &|_, q, i, &s| x.face(q, i, s), &|_, _, _, &s| s, &|_, q, j, &s| {
      x.degen(q, j, s)
    })
    .expect("constant bisimplicial set")
  }

  /// `B_{p,q} = X_p × Y_q`.
  pub fn external_product(x: &TruncSSet, y: &TruncSSet) -> Result<Self> {
    if x.trunc() != y.trunc() {
      return Err(Error::Truncation(x.trunc(), y.trunc()));
    }
    let n = x.trunc();
    let levels = (0..=n)
      .map(|p| (0..=n).map(|q| (0..x.count(p)).flat_map(|a| (0..y.count(q)).map(move |b| (a, b))).collect()).collect())
      .collect();
    Self::build(
      n,
      levels,
      &|p, _, i, &(a, b)| (x.face(p, i, a), b),
      &|_, q, i, &(a, b)| (a, y.face(q, i, b)),
      &|p, _, j, &(a, b)| (x.degen(p, j, a), b),
      &|_, q, j, &(a, b)| (a, y.degen(q, j, b)),
    )
  }

  pub fn trunc(&self) -> usize {
    self.trunc
  }

  pub fn count(&self, p: usize, q: usize) -> usize {
    self.counts[p][q]
  }

  pub fn hface(&self, p: usize, q: usize, i: usize, x: usize) -> usize {
    self.hfaces[p][q][i][x]
  }

  pub fn vface(&self, p: usize, q: usize, i: usize, x: usize) -> usize {
    self.vfaces[p][q][i][x]
  }

  /// Row `q`: the simplicial set `p ↦ B_{p,q}`.
  pub fn row(&self, q: usize) -> Result<TruncSSet> {
    let n = self.trunc;
    TruncSSet::from_tables(
      n,
      (0..=n).map(|p| self.counts[p][q]).collect(),
      (0..=n).map(|p| self.hfaces[p][q].clone()).collect(),
      (0..=n).map(|p| self.hdegens[p][q].clone()).collect(),
    )
  }

  /// Column `p`: the simplicial set `q ↦ B_{p,q}`.
  pub fn column(&self, p: usize) -> Result<TruncSSet> {
    let n = self.trunc;
    TruncSSet::from_tables(n, self.counts[p].clone(), self.vfaces[p].clone(), self.vdegens[p].clone())
  }

  /// Checks both directions and that horizontal and vertical operators commute.
  pub fn validate(&self) -> ValidationReport {
    let n = self.trunc;
    for k in 0..=n {
      for (dir, s) in [("row", self.row(k)), ("column", self.column(k))] {
        match s {
          Err(e) => return ValidationReport::Malformed { detail: e.to_string() },
          Ok(s) => {
            if let ValidationReport::Violation { identity, dim, simplex } = s.validate() {
              return ValidationReport::Violation { identity: format!("{dir} {k}: {identity}"), dim, simplex };
            }
          }
        }
      }
    }
    let fail =
      |name: &str, p: usize, x: usize| ValidationReport::Violation { identity: name.to_string(), dim: p, simplex: x };
    for p in 0..=n {
      for q in 0..=n {
        for x in 0..self.counts[p][q] {
          for i in 0..=p {
            for j in 0..=q {
              if p > 0
                && q > 0
                && self.vfaces[p - 1][q][j][self.hfaces[p][q][i][x]]
                  != self.hfaces[p][q - 1][i][self.vfaces[p][q][j][x]]
              {
                return fail(&format!("d{i}h d{j}v = d{j}v d{i}h at bidegree ({p},{q})"), p, x);
              }
              if p < n
                && q > 0
                && self.vfaces[p + 1][q][j][self.hdegens[p][q][i][x]]
                  != self.hdegens[p][q - 1][i][self.vfaces[p][q][j][x]]
              {
                return fail(&format!("s{i}h d{j}v = d{j}v s{i}h at bidegree ({p},{q})"), p, x);
              }
              if q < n
                && p > 0
                && self.hfaces[p][q + 1][i][self.vdegens[p][q][j][x]]
                  != self.vdegens[p - 1][q][j][self.hfaces[p][q][i][x]]
              {
                return fail(&format!("d{i}h s{j}v = s{j}v d{i}h at bidegree ({p},{q})"), p, x);
              }
              if p < n
                && q < n
                && self.vdegens[p + 1][q][j][self.hdegens[p][q][i][x]]
                  != self.hdegens[p][q + 1][i][self.vdegens[p][q][j][x]]
              {
                return fail(&format!("s{i}h s{j}v = s{j}v s{i}h at bidegree ({p},{q})"), p, x);
              }
            }
          }
        }
      }
    }
    ValidationReport::Pass
  }

  /// `d(B)_n = B_{n,n}` with `d_i = d_i^h d_i^v` and `s_j = s_j^h s_j^v`.
  pub fn diagonal(&self) -> TruncSSet {
    let n = self.trunc;
    let counts = (0..=n).map(|k| self.counts[k][k]).collect();
    let faces = (0..=n)
      .map(|k| {
        if k == 0 {
          return Vec::new();
        }
        (0..=k).map(|i| self.vfaces[k][k][i].iter().map(|&y| self.hfaces[k][k - 1][i][y]).collect()).collect()
      })
      .collect();
    let degens = (0..=n)
      .map(|k| {
        if k == n {
          return Vec::new();
        }
        (0..=k).map(|j| self.vdegens[k][k][j].iter().map(|&y| self.hdegens[k][k + 1][j][y]).collect()).collect()
      })
      .collect();
    TruncSSet::from_tables(n, counts, faces, degens).expect("diagonal tables have the right shape")
  }

  pub fn to_raw(&self) -> RawBisSSet {
    let key = |p: usize, q: usize| format!("{p},{q}");
    let tables = |t: &Vec<Vec<Vec<Vec<usize>>>>| {
      let mut out = BTreeMap::new();
      for p in 0..=self.trunc {
        for q in 0..=self.trunc {
          if t[p][q].is_empty() {
            continue;
          }
          let per: BTreeMap<String, BTreeMap<String, usize>> = t[p][q]
            .iter()
            .enumerate()
            .map(|(i, row)| (i.to_string(), row.iter().enumerate().map(|(x, &y)| (x.to_string(), y)).collect()))
            .collect();
          out.insert(key(p, q), per);
        }
      }
      out
    };
    let mut simplices = BTreeMap::new();
    for p in 0..=self.trunc {
      for q in 0..=self.trunc {
        simplices.insert(key(p, q), (0..self.counts[p][q]).collect());
      }
    }
    RawBisSSet {
      trunc: self.trunc,
      simplices,
      hfaces: tables(&self.hfaces),
      vfaces: tables(&self.vfaces),
      hdegeneracies: tables(&self.hdegens),
      vdegeneracies: tables(&self.vdegens),
    }
  }

  pub fn to_json(&self) -> String {
    serde_json::to_string(&self.to_raw()).expect("bisimplicial set serializes")
  }

  pub fn from_json(s: &str) -> Result<Self> {
    let raw: RawBisSSet = serde_json::from_str(s)?;
    raw.to_bisset()
  }
}

type RawTables = BTreeMap<String, BTreeMap<String, BTreeMap<String, usize>>>;

/// JSON form: bidegrees are keyed `"p,q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawBisSSet {
  pub trunc: usize,
  pub simplices: BTreeMap<String, Vec<usize>>,
  pub hfaces: RawTables,
  pub vfaces: RawTables,
  pub hdegeneracies: RawTables,
  pub vdegeneracies: RawTables,
}

impl RawBisSSet {
  pub fn to_bisset(&self) -> Result<BisSSet> {
    let n = self.trunc;
    let key = |p: usize, q: usize| format!("{p},{q}");
    let mut counts = vec![vec![0; n + 1]; n + 1];
    for p in 0..=n {
      for q in 0..=n {
        let ids = self
          .simplices
          .get(&key(p, q))
          .ok_or_else(|| Error::Malformed(format!("no simplices in bidegree ({p},{q})")))?;
        if ids.iter().enumerate().any(|(k, &id)| k != id) {
          return Err(Error::Malformed(format!("simplex ids in bidegree ({p},{q}) must be contiguous")));
        }
        counts[p][q] = ids.len();
      }
    }
    let read = |t: &RawTables, p: usize, q: usize, ops: usize, present: bool| -> Result<Vec<Vec<usize>>> {
      if !present {
        return Ok(Vec::new());
      }
      let per =
        t.get(&key(p, q)).ok_or_else(|| Error::Malformed(format!("missing operators in bidegree ({p},{q})")))?;
      (0..ops)
        .map(|i| {
          let row = per
            .get(&i.to_string())
            .ok_or_else(|| Error::Malformed(format!("missing operator {i} in bidegree ({p},{q})")))?;
          (0..counts[p][q])
            .map(|x| {
              row
                .get(&x.to_string())
                .copied()
                .ok_or_else(|| Error::Malformed(format!("missing image of {x} in bidegree ({p},{q})")))
            })
            .collect()
        })
        .collect()
    };
    let mut out = BisSSet {
      trunc: n,
      counts: counts.clone(),
      hfaces: vec![vec![Vec::new(); n + 1]; n + 1],
      vfaces: vec![vec![Vec::new(); n + 1]; n + 1],
      hdegens: vec![vec![Vec::new(); n + 1]; n + 1],
      vdegens: vec![vec![Vec::new(); n + 1]; n + 1],
    };
    for p in 0..=n {
      for q in 0..=n {
        out.hfaces[p][q] = read(&self.hfaces, p, q, p + 1, p > 0)?;
        out.vfaces[p][q] = read(&self.vfaces, p, q, q + 1, q > 0)?;
        out.hdegens[p][q] = read(&self.hdegeneracies, p, q, p + 1, p < n)?;
        out.vdegens[p][q] = read(&self.vdegeneracies, p, q, q + 1, q < n)?;
      }
    }
    for k in 0..=n {
      out.row(k)?;
      out.column(k)?;
    }
    Ok(out)
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::sset::{circle, standard_simplex};

  #[test]
  fn diagonal_of_constant_is_identity() {
    let x = circle(3).sset;
    let b = BisSSet::horizontally_constant(&x);
    assert!(b.validate().is_pass());
    assert_eq!(b.diagonal(), x);
  }

  #[test]
  fn diagonal_of_external_square() {
    let d1 = standard_simplex(1, 3).sset;
    let b = BisSSet::external_product(&d1, &d1).unwrap();
    assert!(b.validate().is_pass());
    let d = b.diagonal();
    assert!(d.validate().is_pass());
    for n in 0..=3 {
      assert_eq!(d.count(n), d1.count(n) * d1.count(n));
    }
  }

  #[test]
  fn json_round_trip() {
    let d1 = standard_simplex(1, 2).sset;
    let b = BisSSet::external_product(&d1, &circle(2).sset).unwrap();
    let s = b.to_json();
    let c = BisSSet::from_json(&s).unwrap();
    assert_eq!(b, c);
    assert_eq!(s, c.to_json());
  }
}

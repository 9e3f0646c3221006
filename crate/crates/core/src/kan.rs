//! Horn enumeration and filling, absolute and relative to a map.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::sset::{SSetMap, TruncSSet};

/// A horn `Λ^n_k → X`, given by the faces `y_i` for `i ≠ k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Horn {
  pub n: usize,
  pub k: usize,
  pub faces: Vec<Option<usize>>,
}

impl fmt::Display for Horn {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parts: Vec<String> =
      self.faces.iter().enumerate().filter_map(|(i, y)| y.map(|y| format!("d{i}={y}"))).collect();
    write!(f, "horn Λ^{}_{} [{}]", self.n, self.k, parts.join(", "))
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum KanVerdict {
  Pass { maxdim: usize },
  Fail { horn: Horn, base_filler: Option<usize> },
}

impl KanVerdict {
  pub fn is_pass(&self) -> bool {
    matches!(self, KanVerdict::Pass { .. })
  }
}

/// Calls `visit` on every compatible horn tuple `Λ^n_k → X`; stops early when `visit` returns false.
pub fn for_each_horn(x: &TruncSSet, n: usize, k: usize, mut visit: impl FnMut(&[Option<usize>]) -> bool) {
  assert!(n >= 1 && k <= n && n <= x.trunc());
  let lower = n - 1;
  // by_face[i][v]: the (n-1)-simplices y with d_i y = v.
  let by_face: Vec<HashMap<usize, Vec<usize>>> = if lower == 0 {
    Vec::new()
  } else {
    (0..=lower)
      .map(|i| {
        let mut m: HashMap<usize, Vec<usize>> = HashMap::new();
        for y in 0..x.count(lower) {
          m.entry(x.face(lower, i, y)).or_default().push(y);
        }
        m
      })
      .collect()
  };
  let positions: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
  let mut chosen: Vec<Option<usize>> = vec![None; n + 1];
  let all: Vec<usize> = (0..x.count(lower)).collect();
  fn rec(
    x: &TruncSSet,
    lower: usize,
    positions: &[usize],
    depth: usize,
    chosen: &mut Vec<Option<usize>>,
    by_face: &[HashMap<usize, Vec<usize>>],
    all: &[usize],
    visit: &mut dyn FnMut(&[Option<usize>]) -> bool,
  ) -> bool {
    if depth == positions.len() {
      return visit(chosen);
    }
    let j = positions[depth];
    // Constraint d_i y_j = d_{j-1} y_i for chosen i < j.
    let earlier: Vec<usize> = positions[..depth].to_vec();
    let empty = Vec::new();
    let candidates: &Vec<usize> = match earlier.first() {
      Some(&i) if lower > 0 => by_face[i].get(&x.face(lower, j - 1, chosen[i].unwrap())).unwrap_or(&empty),
      _ => {
        return all.iter().all(|&y| {
          chosen[j] = Some(y);
          let go = rec(x, lower, positions, depth + 1, chosen, by_face, all, visit);
          chosen[j] = None;
          go
        })
      }
    };
    for &y in candidates {
      if lower > 0 && !earlier.iter().all(|&i| x.face(lower, i, y) == x.face(lower, j - 1, chosen[i].unwrap())) {
        continue;
      }
      chosen[j] = Some(y);
      let go = rec(x, lower, positions, depth + 1, chosen, by_face, all, visit);
      chosen[j] = None;
      if !go {
        return false;
      }
    }
    true
  }
  rec(x, lower, &positions, 0, &mut chosen, &by_face, &all, &mut visit);
}

/// The horn of an `n`-simplex obtained by deleting face `k`.
pub fn horn_of(x: &TruncSSet, n: usize, k: usize, s: usize) -> Vec<Option<usize>> {
  (0..=n).map(|i| if i == k { None } else { Some(x.face(n, i, s)) }).collect()
}

/// Checks that every horn `Λ^n_k → X` with `1 <= n <= maxdim` has a filler.
pub fn kan_check(x: &TruncSSet, maxdim: usize) -> KanVerdict {
  let maxdim = maxdim.min(x.trunc());
  for n in 1..=maxdim {
    for k in 0..=n {
      let filled: HashSet<Vec<Option<usize>>> = (0..x.count(n)).map(|s| horn_of(x, n, k, s)).collect();
      let mut witness = None;
      for_each_horn(x, n, k, |h| {
        if filled.contains(h) {
          true
        } else {
          witness = Some(h.to_vec());
          false
        }
      });
      if let Some(faces) = witness {
        return KanVerdict::Fail { horn: Horn { n, k, faces }, base_filler: None };
      }
    }
  }
  KanVerdict::Pass { maxdim }
}

/// Checks that `p: E → B` has the right lifting property against `Λ^n_k ⊂ Δ^n` for `n <= maxdim`.
pub fn fibration_check(e: &TruncSSet, b: &TruncSSet, p: &SSetMap, maxdim: usize) -> KanVerdict {
  let maxdim = maxdim.min(e.trunc());
  for n in 1..=maxdim {
    for k in 0..=n {
      let filled: HashSet<(Vec<Option<usize>>, usize)> =
        (0..e.count(n)).map(|s| (horn_of(e, n, k, s), p.apply(n, s))).collect();
      let base_horns: HashMap<Vec<Option<usize>>, Vec<usize>> = {
        let mut m: HashMap<Vec<Option<usize>>, Vec<usize>> = HashMap::new();
        for s in 0..b.count(n) {
          m.entry(horn_of(b, n, k, s)).or_default().push(s);
        }
        m
      };
      let mut witness = None;
      for_each_horn(e, n, k, |h| {
        let image: Vec<Option<usize>> = h.iter().map(|y| y.map(|y| p.apply(n - 1, y))).collect();
        for &bs in base_horns.get(&image).map(Vec::as_slice).unwrap_or(&[]) {
          if !filled.contains(&(h.to_vec(), bs)) {
            witness = Some((h.to_vec(), bs));
            return false;
          }
        }
        true
      });
      if let Some((faces, bs)) = witness {
        return KanVerdict::Fail { horn: Horn { n, k, faces }, base_filler: Some(bs) };
      }
    }
  }
  KanVerdict::Pass { maxdim }
}

/// Finds a filler of a horn, if one exists.
pub fn fill(x: &TruncSSet, n: usize, horn: &[Option<usize>]) -> Option<usize> {
  (0..x.count(n)).find(|&s| (0..=n).all(|i| horn[i].is_none_or(|y| x.face(n, i, s) == y)))
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::sset::{circle, standard_simplex, TruncSSet};

  #[test]
  fn interval_is_not_kan() {
    let lab = standard_simplex(1, 3);
    match kan_check(&lab.sset, 3) {
      KanVerdict::Fail { horn, .. } => {
        assert_eq!((horn.n, horn.k), (2, 0));
        let edge = |i: usize| lab.label(1, horn.faces[i].unwrap()).clone();
        assert_eq!(edge(1), vec![0, 0]);
        assert_eq!(edge(2), vec![0, 1]);
      }
      v => panic!("{v:?}"),
    }
  }

  #[test]
  fn circle_model_is_not_kan_but_point_is() {
    assert!(!kan_check(&circle(3).sset, 2).is_pass());
    assert!(kan_check(&TruncSSet::point(4), 3).is_pass());
  }

  #[test]
  fn horn_count_for_simplex_boundary() {
    // Λ^2_1 → Δ^2: compatible pairs (y_0, y_2) with d_0 y_2 = d_1 y_0.
    let x = TruncSSet::standard(2, 2);
    let mut count = 0;
    for_each_horn(&x, 2, 1, |_| {
      count += 1;
      true
    });
    // y_2 = [a,b], y_0 = [b,c] with a <= b <= c in [2]: 10 triples.
    assert_eq!(count, 10);
  }

  #[test]
  fn projection_of_product_is_a_fibration() {
    let d1 = standard_simplex(1, 3).sset;
    let pt = TruncSSet::discrete(2, 3);
    let prod = crate::sset::product(&pt, &d1).unwrap();
    let p = prod.map_to_ids(&d1, |_, &(_, b)| b).unwrap();
    assert!(fibration_check(&prod.sset, &d1, &p, 3).is_pass());
  }
}

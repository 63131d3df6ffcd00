//! Exhaustive search for non-isomorphic trees sharing a (truncated) U-polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{CodeMode, RootedTree};
use crate::invariants::u_tree;
use crate::reconstruction::RootedTrees;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{size} vertices exceeds the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Which part of `U` is compared: `U_m` (partitions of length at most `m + 1`) or all of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Truncated(usize),
    Full,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Truncated(m) => write!(f, "{m}"),
            Level::Full => f.write_str("full"),
        }
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("full") {
            return Ok(Level::Full);
        }
        s.parse()
            .map(Level::Truncated)
            .map_err(|_| format!("expected a non-negative integer or \"full\", got {s:?}"))
    }
}

impl Serialize for Level {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Level::Truncated(m) => s.serialize_u64(*m as u64),
            Level::Full => s.serialize_str("full"),
        }
    }
}

/// Free trees on `n` vertices sharing the same polynomial at level `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionRecord {
    pub n: usize,
    pub m: Level,
    /// Free canonical codes, ascending.
    pub members: Vec<String>,
    /// Common polynomial in text form.
    pub shared: String,
}

impl CollisionRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// Free trees on `n` vertices, one per isomorphism class.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    rooted: RootedTrees,
}

impl Iterator for FreeTrees {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        self.rooted.by_ref().find(centroid_representative)
    }
}

/// Keeps a rooted tree when its root is a centroid and, if there is a second
/// centroid, the rooting at the root has the smaller code.
fn centroid_representative(t: &RootedTree) -> bool {
    let n = t.vertex_count();
    let size = t.subtree_sizes();
    let ch = &t.children()[t.root()];
    let Some(&heavy) = ch.iter().max_by_key(|&&c| size[c]) else {
        return true;
    };
    if 2 * size[heavy] > n {
        return false;
    }
    if 2 * size[heavy] < n {
        return true;
    }
    let other = t.reroot(heavy).expect("vertex exists");
    t.canonical_form(CodeMode::Rooted) <= other.canonical_form(CodeMode::Rooted)
}

pub fn enumerate_free(n: usize) -> Result<FreeTrees, SearchError> {
    enumerate_free_with(n, &Limits::default())
}

pub fn enumerate_free_with(n: usize, limits: &Limits) -> Result<FreeTrees, SearchError> {
    if n > limits.free_vertices {
        return Err(SearchError::CapExceeded {
            size: n,
            cap: limits.free_vertices,
        });
    }
    Ok(FreeTrees {
        rooted: RootedTrees::new(n),
    })
}

fn scan_size(n: usize, level: Level, limits: &Limits) -> Result<Vec<CollisionRecord>, SearchError> {
    let trees: Vec<RootedTree> = enumerate_free_with(n, limits)?.collect();
    let keyed: Vec<(String, String)> = trees
        .par_iter()
        .map(|t| {
            let u = u_tree(t);
            let key = match level {
                Level::Full => u,
                Level::Truncated(m) => u.truncate_length(m).expect("tree polynomials have no y or z"),
            };
            (key.to_string(), t.canonical_form(CodeMode::Free).to_string())
        })
        .collect();
    let mut buckets: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (key, code) in keyed {
        buckets.entry(key).or_default().push(code);
    }
    let mut records: Vec<CollisionRecord> = buckets
        .into_iter()
        .filter(|(_, members)| members.len() >= 2)
        .map(|(shared, mut members)| {
            members.sort();
            CollisionRecord {
                n,
                m: level,
                members,
                shared,
            }
        })
        .collect();
    records.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(records)
}

fn in_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T, SearchError> {
    match threads {
        None => Ok(job()),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map(|pool| pool.install(job))
            .map_err(|e| SearchError::ThreadPool(e.to_string())),
    }
}

pub fn collision_scan(n_max: usize, level: Level) -> Result<Vec<CollisionRecord>, SearchError> {
    collision_scan_with(n_max, level, None, &Limits::default())
}

/// Every bucket of two or more free trees on `n <= n_max` vertices with equal
/// polynomial at `level`, ordered by `n` and then by member codes. The output
/// does not depend on the thread count.
pub fn collision_scan_with(
    n_max: usize,
    level: Level,
    threads: Option<usize>,
    limits: &Limits,
) -> Result<Vec<CollisionRecord>, SearchError> {
    if n_max > limits.free_vertices {
        return Err(SearchError::CapExceeded {
            size: n_max,
            cap: limits.free_vertices,
        });
    }
    in_pool(threads, || {
        let mut out = Vec::new();
        for n in 1..=n_max {
            out.extend(scan_size(n, level, limits)?);
        }
        Ok(out)
    })?
}

pub fn phi_restricted(m: usize, n_max: usize) -> Result<Option<usize>, SearchError> {
    phi_restricted_with(m, n_max, None, &Limits::default())
}

/// Smallest `n <= n_max` with two non-isomorphic trees sharing `U_m`, if any.
pub fn phi_restricted_with(
    m: usize,
    n_max: usize,
    threads: Option<usize>,
    limits: &Limits,
) -> Result<Option<usize>, SearchError> {
    if n_max > limits.free_vertices {
        return Err(SearchError::CapExceeded {
            size: n_max,
            cap: limits.free_vertices,
        });
    }
    in_pool(threads, || {
        for n in 1..=n_max {
            if !scan_size(n, Level::Truncated(m), limits)?.is_empty() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    })?
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Free codes of every recursive tree on `n` vertices.
    fn brute_force_classes(n: usize) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut parent = vec![0usize; n];
        loop {
            let p: Vec<Option<usize>> = (0..n).map(|i| (i > 0).then(|| parent[i])).collect();
            out.insert(RootedTree::from_parents(p).unwrap().canonical_form(CodeMode::Free).to_string());
            let mut i = n.saturating_sub(1);
            while i > 0 && parent[i] == i - 1 {
                parent[i] = 0;
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            parent[i] += 1;
        }
    }

    #[test]
    fn free_counts() {
        let counts: Vec<usize> = (1..=12).map(|n| enumerate_free(n).unwrap().count()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]);
        assert!(enumerate_free(19).is_err());
    }

    #[test]
    fn free_enumeration_matches_brute_force() {
        for n in 1..=8 {
            let codes: Vec<String> = enumerate_free(n)
                .unwrap()
                .map(|t| t.canonical_form(CodeMode::Free).to_string())
                .collect();
            let distinct: BTreeSet<String> = codes.iter().cloned().collect();
            assert_eq!(distinct.len(), codes.len(), "duplicates at n = {n}");
            assert_eq!(distinct, brute_force_classes(n), "n = {n}");
        }
    }

    #[test]
    fn level_text() {
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert_eq!("3".parse::<Level>().unwrap(), Level::Truncated(3));
        assert!("x".parse::<Level>().is_err());
        assert_eq!(Level::Full.to_string(), "full");
    }

    #[test]
    fn no_collisions_below_ten_at_level_two() {
        assert!(collision_scan(9, Level::Truncated(2)).unwrap().is_empty());
        assert_eq!(phi_restricted(2, 9).unwrap(), None);
    }

    #[test]
    fn low_levels_collide_early() {
        // U_0 only sees x_n, so every pair of distinct trees collides.
        let r = collision_scan(5, Level::Truncated(0)).unwrap();
        assert_eq!(r.iter().map(|c| c.n).collect::<Vec<_>>(), [4, 5]);
        assert_eq!(r[1].members.len(), 3);
        assert_eq!(r[0].shared, "x4");
        assert_eq!(
            r[0].to_json(),
            format!(r#"{{"n":4,"m":0,"members":["{}","{}"],"shared":"x4"}}"#, r[0].members[0], r[0].members[1])
        );
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let one = collision_scan_with(8, Level::Truncated(1), Some(1), &Limits::default()).unwrap();
        let four = collision_scan_with(8, Level::Truncated(1), Some(4), &Limits::default()).unwrap();
        assert_eq!(one, four);
        assert!(!one.is_empty());
    }
}

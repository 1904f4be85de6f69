//! Progressive edge growth (PEG) construction of parity-check matrices.
//!
//! Columns are processed in order of increasing target degree. Each new edge
//! of a column goes to the check node that is farthest from the column in the
//! current Tanner graph (ties broken by lowest current check degree, then
//! lowest index). The first edge of a column goes to the lowest-degree check.
//! The seed only permutes column labels at the end, so the Tanner graph shape
//! is fixed by `(n, m, distribution)` and the labelling by the seed.

use std::collections::BTreeSet;

use super::ParityCheckMatrix;
use crate::error::{Error, Result};
use crate::rng::shuffled_indices;

/// Node-perspective column-degree distribution: `(degree, fraction of columns)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    entries: Vec<(usize, f64)>,
}

impl DegreeDistribution {
    pub fn new(entries: Vec<(usize, f64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::argument("degree distribution is empty"));
        }
        for &(d, f) in &entries {
            if d == 0 {
                return Err(Error::argument("column degree must be positive"));
            }
            if !(0.0..=1.0).contains(&f) {
                return Err(Error::argument(format!(
                    "fraction {f} for degree {d} outside [0, 1]"
                )));
            }
        }
        let mut degrees: Vec<usize> = entries.iter().map(|e| e.0).collect();
        degrees.sort_unstable();
        if degrees.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::argument("degree listed twice in distribution"));
        }
        let total: f64 = entries.iter().map(|e| e.1).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::argument(format!(
                "fractions sum to {total}, expected 1"
            )));
        }
        Ok(DegreeDistribution { entries })
    }

    /// Parses `degree fraction` pairs, one per line, separated by whitespace
    /// or a comma. `#` starts a comment.
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|f| !f.is_empty())
                .collect();
            let bad = || {
                Error::parse(
                    source_name,
                    i + 1,
                    format!("expected `degree fraction`, got {line:?}"),
                )
            };
            let [d, f] = fields[..] else {
                return Err(bad());
            };
            entries.push((d.parse().map_err(|_| bad())?, f.parse().map_err(|_| bad())?));
        }
        Self::new(entries).map_err(|e| Error::parse(source_name, 0, e.to_string()))
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Single-degree (column-regular) distribution.
    pub fn regular(degree: usize) -> Result<Self> {
        Self::new(vec![(degree, 1.0)])
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    /// Mean column degree.
    pub fn mean_degree(&self) -> f64 {
        self.entries.iter().map(|&(d, f)| d as f64 * f).sum()
    }

    /// Splits `n` columns among degrees with the largest-remainder method.
    /// Returned counts follow the order of `entries()` and sum to `n`.
    pub fn column_counts(&self, n: usize) -> Vec<usize> {
        let quotas: Vec<f64> = self.entries.iter().map(|e| e.1 * n as f64).collect();
        let mut counts: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
        let assigned: usize = counts.iter().sum();
        let mut order: Vec<usize> = (0..counts.len()).collect();
        // Largest fractional part first; equal remainders go to the smaller degree.
        order.sort_by(|&a, &b| {
            let ra = quotas[a] - quotas[a].floor();
            let rb = quotas[b] - quotas[b].floor();
            rb.total_cmp(&ra)
                .then(self.entries[a].0.cmp(&self.entries[b].0))
        });
        for &i in order.iter().cycle().take(n.saturating_sub(assigned)) {
            counts[i] += 1;
        }
        counts
    }

    /// Target degree of every column, ascending.
    pub fn column_degrees(&self, n: usize) -> Vec<usize> {
        let mut pairs: Vec<(usize, usize)> = self
            .entries
            .iter()
            .map(|e| e.0)
            .zip(self.column_counts(n))
            .collect();
        pairs.sort_unstable();
        pairs
            .into_iter()
            .flat_map(|(d, c)| std::iter::repeat_n(d, c))
            .collect()
    }
}

/// Tuning knobs for [`construct_peg_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PegOptions {
    /// Limit on the breadth-first expansion depth (in check-node levels). With
    /// a limit `L` a new edge closes only cycles of length at least `2L + 4`,
    /// unless the whole check set is already reached within `L` levels, in
    /// which case the classical choice applies. `None` expands until the tree
    /// stops growing, which costs `O(edges)` per edge.
    pub max_depth: Option<usize>,
}

/// Classical PEG construction; see [`construct_peg_with`].
pub fn construct_peg(
    n: usize,
    m: usize,
    distribution: &DegreeDistribution,
    seed: u64,
) -> Result<ParityCheckMatrix> {
    construct_peg_with(n, m, distribution, seed, PegOptions::default())
}

pub fn construct_peg_with(
    n: usize,
    m: usize,
    distribution: &DegreeDistribution,
    seed: u64,
    options: PegOptions,
) -> Result<ParityCheckMatrix> {
    if m == 0 || m >= n {
        return Err(Error::argument(format!("need 0 < m < n, got m={m} n={n}")));
    }
    let degrees = distribution.column_degrees(n);
    if let Some(&d) = degrees.iter().find(|&&d| d > m) {
        return Err(Error::Construction(format!(
            "column degree {d} exceeds the number of check nodes {m}"
        )));
    }
    let edges: usize = degrees.iter().sum();
    if edges < m {
        return Err(Error::Construction(format!(
            "{edges} edges cannot cover {m} check nodes; some row would be empty"
        )));
    }

    let mut graph = PegGraph::new(n, m);
    for (v, &deg) in degrees.iter().enumerate() {
        for k in 0..deg {
            let c = if k == 0 {
                graph.lowest_degree_check(|_| true)
            } else {
                graph.farthest_check(v, options.max_depth)
            };
            graph.connect(v, c);
        }
    }

    let labels = shuffled_indices(n, seed);
    let rows = graph
        .check_adj
        .into_iter()
        .map(|row| row.into_iter().map(|v| labels[v]).collect())
        .collect();
    ParityCheckMatrix::new(n, rows)
}

/// Gallager-style regular construction: `column_degree` seeded column
/// permutations are laid end to end and cut into rows of `row_degree`. A row
/// that straddles two permutations and repeats a column swaps the repeat with
/// a later position. Every row has exactly `row_degree` ones and every column
/// `column_degree`. Requires `row_degree | n * column_degree`.
pub fn construct_gallager(
    n: usize,
    column_degree: usize,
    row_degree: usize,
    seed: u64,
) -> Result<ParityCheckMatrix> {
    if column_degree == 0
        || row_degree < 2
        || row_degree > n
        || !(n * column_degree).is_multiple_of(row_degree)
    {
        return Err(Error::argument(format!(
            "Gallager construction needs column degree > 0 and 2 <= row degree <= n dividing n * column degree \
             (n={n}, column degree={column_degree}, row degree={row_degree})"
        )));
    }
    let mut sockets: Vec<usize> = (0..n).collect();
    for band in 1..column_degree {
        sockets.extend(shuffled_indices(
            n,
            crate::rng::derive_seed(seed, band as u64),
        ));
    }
    let m = sockets.len() / row_degree;
    let mut rows = Vec::with_capacity(m);
    for r in 0..m {
        let start = r * row_degree;
        for k in start..start + row_degree {
            if !sockets[start..k].contains(&sockets[k]) {
                continue;
            }
            let swap = (start + row_degree..sockets.len())
                .find(|&j| !sockets[start..start + row_degree].contains(&sockets[j]))
                .ok_or_else(|| {
                    Error::Construction(format!("no duplicate-free completion for row {r}"))
                })?;
            sockets.swap(k, swap);
        }
        let mut row = sockets[start..start + row_degree].to_vec();
        row.sort_unstable();
        rows.push(row);
    }
    ParityCheckMatrix::new(n, rows)
}

struct PegGraph {
    var_adj: Vec<Vec<usize>>,
    check_adj: Vec<Vec<usize>>,
    /// Check nodes bucketed by their current degree.
    by_degree: Vec<BTreeSet<usize>>,
    check_stamp: Vec<u32>,
    var_stamp: Vec<u32>,
    stamp: u32,
}

impl PegGraph {
    fn new(n: usize, m: usize) -> Self {
        PegGraph {
            var_adj: vec![Vec::new(); n],
            check_adj: vec![Vec::new(); m],
            by_degree: vec![(0..m).collect()],
            check_stamp: vec![0; m],
            var_stamp: vec![0; n],
            stamp: 0,
        }
    }

    fn connect(&mut self, v: usize, c: usize) {
        let d = self.check_adj[c].len();
        self.by_degree[d].remove(&c);
        if self.by_degree.len() <= d + 1 {
            self.by_degree.push(BTreeSet::new());
        }
        self.by_degree[d + 1].insert(c);
        self.check_adj[c].push(v);
        self.var_adj[v].push(c);
    }

    fn lowest_degree_check(&self, eligible: impl Fn(usize) -> bool) -> usize {
        self.by_degree
            .iter()
            .find_map(|bucket| bucket.iter().copied().find(|&c| eligible(c)))
            .expect("an eligible check node exists")
    }

    fn farthest_check(&mut self, v: usize, max_depth: Option<usize>) -> usize {
        self.stamp += 1;
        let stamp = self.stamp;
        let m = self.check_adj.len();

        let mut frontier: Vec<usize> = self.var_adj[v].clone();
        for &c in &frontier {
            self.check_stamp[c] = stamp;
        }
        self.var_stamp[v] = stamp;
        let mut reached = frontier.len();
        let mut depth = 0;

        loop {
            if max_depth.is_some_and(|limit| depth >= limit) {
                break;
            }
            let mut next = Vec::new();
            for &c in &frontier {
                for &u in &self.check_adj[c] {
                    if self.var_stamp[u] == stamp {
                        continue;
                    }
                    self.var_stamp[u] = stamp;
                    for &c2 in &self.var_adj[u] {
                        if self.check_stamp[c2] != stamp {
                            self.check_stamp[c2] = stamp;
                            next.push(c2);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            reached += next.len();
            if reached == m {
                // Everything is reachable: pick among the checks first reached
                // at the deepest level.
                return next
                    .into_iter()
                    .min_by_key(|&c| (self.check_adj[c].len(), c))
                    .expect("non-empty level");
            }
            frontier = next;
            depth += 1;
        }

        let check_stamp = &self.check_stamp;
        self.lowest_degree_check(|c| check_stamp[c] != stamp)
    }
}

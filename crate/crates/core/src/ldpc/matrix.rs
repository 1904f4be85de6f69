use std::collections::VecDeque;

use crate::bits::BitBlock;
use crate::error::{Error, Result};

/// Sparse binary `m × n` parity-check matrix stored row-major as the sorted
/// column positions of the ones in each row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl ParityCheckMatrix {
    /// Builds a matrix from per-row position sets. Rows are sorted; duplicates,
    /// empty rows, out-of-range positions and `m >= n` are rejected.
    pub fn new(n: usize, mut rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::argument("matrix must have at least one row"));
        }
        if rows.len() >= n {
            return Err(Error::argument(format!(
                "need m < n, got m={} n={n}",
                rows.len()
            )));
        }
        for (i, row) in rows.iter_mut().enumerate() {
            if row.is_empty() {
                return Err(Error::argument(format!("row {i} is empty")));
            }
            row.sort_unstable();
            if let Some(&last) = row.last() {
                if last >= n {
                    return Err(Error::argument(format!(
                        "row {i} has position {last} outside 0..{n}"
                    )));
                }
            }
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::argument(format!("row {i} repeats a position")));
            }
        }
        Ok(ParityCheckMatrix { n, rows })
    }

    /// Number of rows (syndrome length).
    #[inline]
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns (frame length).
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn column_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &j in self.rows.iter().flatten() {
            deg[j] += 1;
        }
        deg
    }

    /// Column adjacency: for each column, the sorted rows containing a one.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.n];
        for (i, row) in self.rows.iter().enumerate() {
            for &j in row {
                cols[j].push(i);
            }
        }
        cols
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `H · k (mod 2)`.
    pub fn syndrome(&self, key: &BitBlock) -> Result<BitBlock> {
        if key.len() != self.n {
            return Err(Error::argument(format!(
                "key length {} does not match frame length {}",
                key.len(),
                self.n
            )));
        }
        let bits = key.as_slice();
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().fold(false, |acc, &j| acc ^ bits[j]))
            .collect())
    }

    /// Length of the shortest cycle in the Tanner graph, or `None` if acyclic.
    pub fn girth(&self) -> Option<usize> {
        // Vertices 0..n are variable nodes, n..n+m check nodes.
        let n = self.n;
        let cols = self.columns();
        let neighbours = |v: usize| -> &[usize] {
            if v < n {
                &cols[v]
            } else {
                &self.rows[v - n]
            }
        };
        let offset = |v: usize, w: usize| if v < n { w + n } else { w };

        let total = n + self.m();
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut touched = Vec::new();
        let mut best = usize::MAX;
        let mut queue = VecDeque::new();

        for start in 0..n {
            for &v in &touched {
                dist[v] = usize::MAX;
                parent[v] = usize::MAX;
            }
            touched.clear();
            queue.clear();
            dist[start] = 0;
            touched.push(start);
            queue.push_back(start);
            'bfs: while let Some(u) = queue.pop_front() {
                // Any cycle found beyond this depth is no shorter than `best`.
                if best != usize::MAX && 2 * dist[u] + 1 >= best {
                    break;
                }
                for &raw in neighbours(u) {
                    let w = offset(u, raw);
                    if w == parent[u] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[u] + dist[w] + 1);
                        if best == 4 {
                            break 'bfs;
                        }
                    }
                }
            }
            if best == 4 {
                break;
            }
        }
        (best != usize::MAX).then_some(best)
    }
}

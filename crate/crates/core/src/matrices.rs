//! Squared distance matrices, built either from the block closed form or
//! from an explicit graph by breadth-first search.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Dense symmetric matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseSymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl DenseSymMatrix {
    /// Builds the matrix from `f(i, j)` evaluated on the upper triangle.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut entries = vec![0.0; order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                entries[i * order + j] = v;
                entries[j * order + i] = v;
            }
        }
        Self { order, entries }
    }

    /// Returns `None` unless `rows` is square and exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Option<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return None;
        }
        if !(0..order).all(|i| (0..i).all(|j| rows[i][j] == rows[j][i])) {
            return None;
        }
        Some(Self {
            order,
            entries: rows.concat(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entry as an integer; panics if the entry is not integral.
    pub fn exact_entry(&self, i: usize, j: usize) -> i64 {
        let v = self.get(i, j);
        assert!(v.fract() == 0.0, "entry ({i},{j}) = {v} is not an integer");
        v as i64
    }

    pub fn to_exact_rows(&self) -> Vec<Vec<i64>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.exact_entry(i, j)).collect())
            .collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Integer CSV, one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.to_exact_rows() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    /// Rejects loops and out-of-range endpoints; repeated edges collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) out of range for {n} vertices"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self { n, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// Part index of every vertex, parts in canonical order and contiguous.
fn part_labels(p: &Partition) -> Vec<usize> {
    p.parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &size)| std::iter::repeat_n(i, size))
        .collect()
}

/// `Δ(K_{n_1,...,n_t})`: 0 on the diagonal, 4 within a part, 1 across parts.
pub fn sqdist_from_partition(p: &Partition) -> DenseSymMatrix {
    let labels = part_labels(p);
    DenseSymMatrix::from_fn(labels.len(), |i, j| {
        if i == j {
            0.0
        } else if labels[i] == labels[j] {
            4.0
        } else {
            1.0
        }
    })
}

/// `K_{n_1,...,n_t}` with an edge between every pair of vertices in different parts.
pub fn multipartite_graph(p: &Partition) -> SimpleGraph {
    let labels = part_labels(p);
    let n = labels.len();
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| labels[i] != labels[j]);
    SimpleGraph::new(n, edges).expect("multipartite edges are valid")
}

/// All-pairs BFS distances, squared entrywise.
pub fn sqdist_from_graph(g: &SimpleGraph) -> Result<DenseSymMatrix> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut dist = vec![vec![usize::MAX; n]; n];
    for (src, row) in dist.iter_mut().enumerate() {
        row[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if row[v] == usize::MAX {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if row.contains(&usize::MAX) {
            return Err(Error::DisconnectedGraph);
        }
    }
    Ok(DenseSymMatrix::from_fn(n, |i, j| {
        let d = dist[i][j] as f64;
        d * d
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn rows(m: &DenseSymMatrix) -> Vec<Vec<i64>> {
        m.to_exact_rows()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            rows(&sqdist_from_partition(&p("2,2"))),
            vec![
                vec![0, 4, 1, 1],
                vec![4, 0, 1, 1],
                vec![1, 1, 0, 4],
                vec![1, 1, 4, 0]
            ]
        );
        assert_eq!(
            rows(&sqdist_from_partition(&p("1,1"))),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(
            rows(&sqdist_from_partition(&p("2,1,1"))),
            vec![
                vec![0, 4, 1, 1],
                vec![4, 0, 1, 1],
                vec![1, 1, 0, 1],
                vec![1, 1, 1, 0]
            ]
        );
    }

    #[test]
    fn graph_examples() {
        let c4 = multipartite_graph(&p("2,2"));
        assert_eq!(
            c4.edges().collect::<Vec<_>>(),
            vec![(0, 2), (0, 3), (1, 2), (1, 3)]
        );
        assert_eq!(multipartite_graph(&p("1,1,1")).edge_count(), 3);
        let star = multipartite_graph(&p("3,1"));
        assert_eq!(
            star.edges().collect::<Vec<_>>(),
            vec![(0, 3), (1, 3), (2, 3)]
        );
    }

    #[test]
    fn bfs_examples() {
        let g = multipartite_graph(&p("2,2"));
        assert_eq!(
            sqdist_from_graph(&g).unwrap(),
            sqdist_from_partition(&p("2,2"))
        );

        let path = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            rows(&sqdist_from_graph(&path).unwrap()),
            vec![vec![0, 1, 4], vec![1, 0, 1], vec![4, 1, 0]]
        );

        let g = multipartite_graph(&p("3,2,2"));
        assert_eq!(
            sqdist_from_graph(&g).unwrap(),
            sqdist_from_partition(&p("3,2,2"))
        );
    }

    #[test]
    fn graph_errors() {
        let g = SimpleGraph::new(3, [(0, 1)]).unwrap();
        assert_eq!(sqdist_from_graph(&g), Err(Error::DisconnectedGraph));
        assert!(SimpleGraph::new(2, [(1, 1)]).is_err());
        assert!(SimpleGraph::new(2, [(0, 2)]).is_err());
        assert_eq!(
            SimpleGraph::new(2, [(0, 1), (1, 0)]).unwrap().edge_count(),
            1
        );
    }

    #[test]
    fn csv_dump() {
        assert_eq!(sqdist_from_partition(&p("1,1")).to_csv(), "0,1\n1,0\n");
    }

    #[test]
    fn from_rows_rejects_asymmetric() {
        assert!(DenseSymMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).is_none());
        assert!(DenseSymMatrix::from_rows(&[vec![0.0, 1.0]]).is_none());
        assert!(DenseSymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).is_some());
    }
}

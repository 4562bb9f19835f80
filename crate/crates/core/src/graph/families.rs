//! Standard small graphs used throughout the tests and the CLI.

use super::Graph;

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    complete_multipartite(&vec![1; n])
}

pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    complete_multipartite(&[m, n])
}

/// Complete multipartite graph; class `i` occupies a consecutive id range.
pub fn complete_multipartite(sizes: &[usize]) -> Graph {
    let total: usize = sizes.iter().sum();
    let mut class = Vec::with_capacity(total);
    for (i, &s) in sizes.iter().enumerate() {
        class.extend(std::iter::repeat(i).take(s));
    }
    let mut g = Graph::empty(total);
    for u in 0..total {
        for v in u + 1..total {
            if class[u] != class[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges)
}

/// `rows x cols` grid graph.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges)
}

pub fn hypercube(dim: u32) -> Graph {
    let n = 1usize << dim;
    let mut edges = Vec::new();
    for v in 0..n {
        for b in 0..dim {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Perfect matching on `2n` vertices: edges `{2i, 2i+1}`.
pub fn matching(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
    Graph::from_edges(2 * n, &edges)
}

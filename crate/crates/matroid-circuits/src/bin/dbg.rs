use matroid_circuits::fixtures;
use matroid_circuits::linalg::{is_tu, IntMatrix};

fn main() {
    let rep = fixtures::r10().binary_rep().unwrap();
    let (r, n) = (rep.nrows(), rep.ncols());
    // bipartite forest (same BFS as camion): recompute chords
    let total = r + n;
    let mut adj: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); total];
    for i in 0..r {
        for j in 0..n {
            if rep.entry(i, j) == 1 {
                adj[i].push((r + j, i, j));
                adj[r + j].push((i, i, j));
            }
        }
    }
    let mut visited = vec![false; total];
    let mut in_forest = std::collections::BTreeSet::new();
    for start in 0..total {
        if visited[start] { continue; }
        visited[start] = true;
        let mut q = std::collections::VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            for &(w, i, j) in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    in_forest.insert((i, j));
                    q.push_back(w);
                }
            }
        }
    }
    let chords: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| rep.entry(i, j) == 1 && !in_forest.contains(&(i, j)))
        .collect();
    println!("nonzeros={} forest={} chords={}", in_forest.len() + chords.len(), in_forest.len(), chords.len());
    let mut found = 0u32;
    let mut example = None;
    for mask in 0..(1u32 << chords.len()) {
        let mut m = IntMatrix::zeros(r, n);
        for i in 0..r {
            for j in 0..n {
                if rep.entry(i, j) == 1 {
                    m.set(i, j, 1);
                }
            }
        }
        for (k, &(i, j)) in chords.iter().enumerate() {
            if (mask >> k) & 1 == 1 {
                m.set(i, j, -1);
            }
        }
        if is_tu(&m).unwrap() {
            found += 1;
            if example.is_none() { example = Some(m.clone()); }
        }
    }
    println!("TU signings with forest=+1: {found}");
    if let Some(m) = example {
        for i in 0..r {
            println!("{:?}", m.row(i));
        }
    }
}

//! Extended persistence by boundary-matrix reduction over Z/2.
//!
//! The complex `K` is coned off from a new vertex `ω`. The filtration is
//! `ω`, then `K` in ascending lower-star order, then the cone simplices
//! `ω * σ` in descending upper-star order. Relative homology of `K` modulo a
//! superlevel set is the homology of `K` with that superlevel set coned off,
//! so persistence of this one filtration is extended persistence.

use std::cmp::Ordering;

use crate::diagram::{ExtParam, ExtendedDiagram, Interval, Phase};
use crate::error::{Error, Result};
use crate::geometry::Direction;
use crate::persistence::{CurvePersistence, EssentialRecord, FinitePair};

use super::complex::Complex;

#[derive(Clone, Debug)]
struct Cell {
    /// Vertex indices into the complex; the cone vertex is not listed.
    vertices: Vec<usize>,
    coned: bool,
}

impl Cell {
    fn dim(&self) -> usize {
        self.vertices.len() - 1 + usize::from(self.coned)
    }
}

/// Position of every vertex in the tie-broken height order.
fn vertex_ranks(complex: &Complex, v: Direction) -> Vec<usize> {
    let mut order: Vec<usize> = (0..complex.vertices.len()).collect();
    order.sort_by(|&a, &b| {
        let (ka, kb) = (v.tie_break_key(complex.vertices[a]), v.tie_break_key(complex.vertices[b]));
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
    let mut rank = vec![0; order.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

fn simplices(complex: &Complex) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..complex.vertices.len()).map(|i| vec![i]).collect();
    out.extend(complex.edges.iter().map(|e| e.to_vec()));
    out.extend(complex.triangles.iter().map(|t| t.to_vec()));
    out
}

/// Sorts `items` by `key` and lets `permute` reorder every run of equal keys.
fn sort_with_ties<K: Ord + Copy>(
    items: &mut [Vec<usize>],
    key: impl Fn(&[usize]) -> K,
    permute: &mut dyn FnMut(&mut [Vec<usize>]),
) {
    items.sort_by_key(|s| key(s));
    let mut start = 0;
    while start < items.len() {
        let k = key(&items[start]);
        let mut end = start + 1;
        while end < items.len() && key(&items[end]) == k {
            end += 1;
        }
        permute(&mut items[start..end]);
        start = end;
    }
}

/// Reduces the columns in place; returns `low` for every column.
fn reduce(columns: &mut [Vec<usize>]) -> Vec<Option<usize>> {
    let mut pivot_owner: Vec<Option<usize>> = vec![None; columns.len()];
    let mut lows = vec![None; columns.len()];
    for j in 0..columns.len() {
        while let Some(&low) = columns[j].last() {
            match pivot_owner[low] {
                Some(other) => {
                    let merged = symmetric_difference(&columns[j], &columns[other]);
                    columns[j] = merged;
                }
                None => {
                    pivot_owner[low] = Some(j);
                    lows[j] = Some(low);
                    break;
                }
            }
        }
    }
    lows
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Extended persistence diagram of `h_v` on the complex.
pub fn extended_persistence_reduction(complex: &Complex, v: Direction) -> Result<ExtendedDiagram> {
    extended_persistence_reduction_with(complex, v, &mut |_| {})
}

/// [`extended_persistence_reduction`] where `permute` may reorder each run
/// of simplices that share a filtration key. The diagram must not depend on
/// those choices.
pub fn extended_persistence_reduction_with(
    complex: &Complex,
    v: Direction,
    permute: &mut dyn FnMut(&mut [Vec<usize>]),
) -> Result<ExtendedDiagram> {
    let rank = vertex_ranks(complex, v);
    let height = |i: usize| v.height(complex.vertices[i]);

    let mut ascending = simplices(complex);
    sort_with_ties(&mut ascending, |s| (s.iter().map(|&i| rank[i]).max().unwrap(), s.len()), permute);
    let mut descending = simplices(complex);
    sort_with_ties(
        &mut descending,
        |s| (std::cmp::Reverse(s.iter().map(|&i| rank[i]).min().unwrap()), s.len()),
        permute,
    );

    // Column 0 is the cone vertex.
    let mut cells = vec![Cell { vertices: Vec::new(), coned: true }];
    cells.extend(ascending.into_iter().map(|vertices| Cell { vertices, coned: false }));
    cells.extend(descending.into_iter().map(|vertices| Cell { vertices, coned: true }));

    let mut position = std::collections::HashMap::with_capacity(cells.len());
    for (idx, cell) in cells.iter().enumerate() {
        position.insert((cell.vertices.clone(), cell.coned), idx);
    }
    let mut columns: Vec<Vec<usize>> = cells
        .iter()
        .map(|cell| {
            let mut col = Vec::new();
            // Faces of ω * σ are σ and ω * τ for the facets τ of σ, with ω * ∅ = ω.
            if cell.coned && !cell.vertices.is_empty() {
                col.push(position[&(cell.vertices.clone(), false)]);
            }
            if cell.coned || cell.vertices.len() > 1 {
                for skip in 0..cell.vertices.len() {
                    let mut face = cell.vertices.clone();
                    face.remove(skip);
                    col.push(position[&(face, cell.coned)]);
                }
            }
            col.sort_unstable();
            col
        })
        .collect();

    let value = |cell: &Cell| -> ExtParam {
        if cell.coned {
            ExtParam { value: height(*cell.vertices.iter().min_by_key(|&&i| rank[i]).unwrap()), phase: Phase::Rel }
        } else {
            ExtParam { value: height(*cell.vertices.iter().max_by_key(|&&i| rank[i]).unwrap()), phase: Phase::Ord }
        }
    };

    let lows = reduce(&mut columns);
    let mut paired = vec![false; cells.len()];
    let mut diagram = ExtendedDiagram::default();
    for (death, low) in lows.iter().enumerate() {
        let Some(birth) = *low else { continue };
        paired[birth] = true;
        paired[death] = true;
        let bar = Interval::new(value(&cells[birth]), value(&cells[death]));
        if bar.birth == bar.death {
            continue;
        }
        let dim = cells[birth].dim();
        if dim >= 2 {
            return Err(Error::InvalidDiagram(format!("a class of dimension {dim} appeared")));
        }
        diagram.dim_mut(dim).push(bar);
    }
    let unpaired: Vec<usize> = (0..cells.len()).filter(|&i| !paired[i]).collect();
    if unpaired != [0] {
        return Err(Error::InvalidDiagram(format!("{} unpaired simplices in an acyclic cone", unpaired.len())));
    }
    Ok(diagram)
}

/// 0-dimensional persistence of `h_v` on a closed curve by matrix reduction.
///
/// Vertex indices in the result refer to positions along `curve`, as in
/// [`crate::persistence::curve_ph0`].
pub fn ph0_reduction(curve: &[crate::geometry::Point], v: Direction) -> CurvePersistence {
    let complex = super::complex::curve_complex(curve);
    let rank = vertex_ranks(&complex, v);
    let n = curve.len();
    let mut vertex_order: Vec<usize> = (0..n).collect();
    vertex_order.sort_by_key(|&i| rank[i]);
    let mut edges = complex.edges.clone();
    edges.sort_by_key(|e| rank[e[0]].max(rank[e[1]]));

    // Rows are vertex ranks; columns are edges in order.
    let mut columns: Vec<Vec<usize>> = edges
        .iter()
        .map(|e| {
            let mut c = vec![rank[e[0]], rank[e[1]]];
            c.sort_unstable();
            c
        })
        .collect();
    let mut pivot_owner: Vec<Option<usize>> = vec![None; n];
    let mut finite_pairs = Vec::new();
    for j in 0..columns.len() {
        while let Some(&low) = columns[j].last() {
            match pivot_owner[low] {
                Some(other) => columns[j] = symmetric_difference(&columns[j], &columns[other]),
                None => {
                    pivot_owner[low] = Some(j);
                    let birth_vertex = vertex_order[low];
                    let e = edges[j];
                    let death_vertex = if rank[e[0]] > rank[e[1]] { e[0] } else { e[1] };
                    let (birth, death) = (v.height(curve[birth_vertex]), v.height(curve[death_vertex]));
                    if birth_vertex != death_vertex {
                        finite_pairs.push(FinitePair { birth_vertex, birth, death });
                    }
                    break;
                }
            }
        }
    }
    let min_vertex = vertex_order[0];
    let max_vertex = vertex_order[n - 1];
    CurvePersistence {
        finite_pairs,
        essential: EssentialRecord { min_vertex, min: v.height(curve[min_vertex]), max: v.height(curve[max_vertex]) },
    }
    .sorted()
}

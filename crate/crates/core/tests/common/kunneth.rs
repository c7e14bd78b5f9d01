//! Independent homology oracle over GF(2).
//!
//! Betti numbers are recomputed from honest cell structures: spheres as
//! boundaries of simplices, circles with two vertices and two edges,
//! surfaces as triangulated polygon fans — all with nonzero boundary
//! maps — then products are formed at the *chain* level and ranks are
//! extracted by Gaussian elimination. No Betti arithmetic from the library
//! is reused.

use std::collections::HashMap;

use integrability::ManifoldExpr;

/// Cap on the total cell count of a tensor complex; factors degrade to
/// their minimal cell structures once the budget is exhausted.
const CELL_BUDGET: usize = 3000;

/// A bit-packed GF(2) vector.
pub type BitVec = Vec<u64>;

fn bitvec(len: usize) -> BitVec {
    vec![0u64; len.div_ceil(64)]
}

fn set_bit(v: &mut BitVec, i: usize) {
    v[i / 64] ^= 1 << (i % 64);
}

/// Rank of a set of GF(2) row vectors, by elimination.
pub fn gf2_rank(rows: &[BitVec]) -> usize {
    let mut pivots: Vec<BitVec> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (p, &col) in pivots.iter().zip(&pivot_cols) {
            if r[col / 64] >> (col % 64) & 1 == 1 {
                for (a, b) in r.iter_mut().zip(p) {
                    *a ^= b;
                }
            }
        }
        if let Some(word) = r.iter().position(|&w| w != 0) {
            let col = word * 64 + r[word].trailing_zeros() as usize;
            pivots.push(r);
            pivot_cols.push(col);
        }
    }
    pivots.len()
}

/// A chain complex of GF(2) vector spaces, one boundary matrix per degree.
pub struct ChainComplex {
    /// dims[i] = number of i-cells.
    pub dims: Vec<usize>,
    /// boundaries[i][j] = ∂(j-th i-cell) as a bitset over (i-1)-cells;
    /// boundaries[0] is a list of empty vectors.
    pub boundaries: Vec<Vec<BitVec>>,
}

impl ChainComplex {
    fn zero_maps(dims: Vec<usize>) -> ChainComplex {
        let boundaries = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let below = if i == 0 { 0 } else { dims[i - 1] };
                vec![bitvec(below); d]
            })
            .collect();
        ChainComplex { dims, boundaries }
    }

    pub fn total_cells(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Betti numbers b₀ … b_top via rank([∂_i]) elimination.
    pub fn betti(&self) -> Vec<u64> {
        let top = self.dims.len() - 1;
        let rank: Vec<usize> = (0..=top + 1)
            .map(|i| {
                if i == 0 || i > top {
                    0
                } else {
                    gf2_rank(&self.boundaries[i])
                }
            })
            .collect();
        (0..=top)
            .map(|i| (self.dims[i] - rank[i] - rank[i + 1]) as u64)
            .collect()
    }

    /// Chain-level tensor product: cells are pairs, and the boundary obeys
    /// the Leibniz rule (signs vanish over GF(2)).
    pub fn tensor(&self, other: &ChainComplex) -> ChainComplex {
        let top = self.dims.len() + other.dims.len() - 2;
        // offsets[n][p] = index of the first cell of block C_p ⊗ D_{n-p}.
        let mut dims = vec![0usize; top + 1];
        let mut offsets: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        for n in 0..=top {
            for p in 0..self.dims.len() {
                let Some(q) = n.checked_sub(p) else { break };
                offsets[n].push(dims[n]);
                if q < other.dims.len() {
                    dims[n] += self.dims[p] * other.dims[q];
                }
            }
        }
        let index = |n: usize, p: usize, a: usize, b: usize| -> usize {
            offsets[n][p] + a * other.dims[n - p] + b
        };
        let mut boundaries: Vec<Vec<BitVec>> = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let below = if n == 0 { 0 } else { dims[n - 1] };
            let mut maps = vec![bitvec(below); dims[n]];
            for p in 0..self.dims.len() {
                let Some(q) = n.checked_sub(p) else { break };
                if q >= other.dims.len() {
                    continue;
                }
                for a in 0..self.dims[p] {
                    for b in 0..other.dims[q] {
                        let cell = index(n, p, a, b);
                        if p > 0 {
                            let da = &self.boundaries[p][a];
                            for c in 0..self.dims[p - 1] {
                                if da[c / 64] >> (c % 64) & 1 == 1 {
                                    set_bit(&mut maps[cell], index(n - 1, p - 1, c, b));
                                }
                            }
                        }
                        if q > 0 {
                            let db = &other.boundaries[q][b];
                            for e in 0..other.dims[q - 1] {
                                if db[e / 64] >> (e % 64) & 1 == 1 {
                                    set_bit(&mut maps[cell], index(n - 1, p, a, e));
                                }
                            }
                        }
                    }
                }
            }
            boundaries.push(maps);
        }
        ChainComplex { dims, boundaries }
    }
}

/// A circle with two vertices and two parallel edges (nonzero ∂₁).
pub fn circle_rich() -> ChainComplex {
    let mut c = ChainComplex::zero_maps(vec![2, 2]);
    for e in 0..2 {
        set_bit(&mut c.boundaries[1][e], 0);
        set_bit(&mut c.boundaries[1][e], 1);
    }
    c
}

/// A circle with one vertex and one loop edge (zero boundary).
pub fn circle_min() -> ChainComplex {
    ChainComplex::zero_maps(vec![1, 1])
}

/// The minimal CW sphere: one 0-cell and one k-cell.
pub fn sphere_min(k: u32) -> ChainComplex {
    let mut dims = vec![0usize; k as usize + 1];
    dims[0] = 1;
    dims[k as usize] += 1;
    ChainComplex::zero_maps(dims)
}

/// The k-sphere as the boundary of a (k+1)-simplex: cells are the proper
/// nonempty faces, boundaries are simplicial face sums.
pub fn sphere_simplicial(k: u32) -> ChainComplex {
    let verts = k as usize + 2;
    // faces[s] = all subsets of {0..verts-1} of size s+1, as sorted vectors.
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); k as usize + 1];
    for mask in 1u32..(1 << verts) {
        let size = mask.count_ones() as usize;
        if size == 0 || size > k as usize + 1 {
            continue;
        }
        let subset: Vec<usize> = (0..verts).filter(|&v| mask >> v & 1 == 1).collect();
        faces[size - 1].push(subset);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = faces
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, f)| (f.clone(), i))
                .collect()
        })
        .collect();
    let dims: Vec<usize> = faces.iter().map(Vec::len).collect();
    let mut c = ChainComplex::zero_maps(dims);
    for s in 1..=k as usize {
        for (j, face) in faces[s].iter().enumerate() {
            for drop in 0..face.len() {
                let mut sub = face.clone();
                sub.remove(drop);
                set_bit(&mut c.boundaries[s][j], index[s - 1][&sub]);
            }
        }
    }
    c
}

/// The genus-g surface as a fan of 4g triangles over the standard
/// identified polygon: 2 vertices, 4g spokes + 2g side edges, 4g faces.
pub fn surface_fan(g: u32) -> ChainComplex {
    assert!(g >= 1);
    let g = g as usize;
    let spokes = 4 * g;
    let mut c = ChainComplex::zero_maps(vec![2, 6 * g, 4 * g]);
    for s in 0..spokes {
        // Every spoke runs from the cone point to the identified vertex.
        set_bit(&mut c.boundaries[1][s], 0);
        set_bit(&mut c.boundaries[1][s], 1);
    }
    // Polygon sides carry the letters a_t b_t a_t b_t per block; a side
    // edge starts and ends at the identified vertex, so its boundary
    // vanishes over GF(2).
    let letter = |i: usize| -> usize {
        let block = i / 4;
        let within = i % 4;
        spokes + 2 * block + (within % 2)
    };
    for i in 0..4 * g {
        set_bit(&mut c.boundaries[2][i], i);
        set_bit(&mut c.boundaries[2][i], (i + 1) % spokes);
        set_bit(&mut c.boundaries[2][i], letter(i));
    }
    c
}

/// The minimal CW surface: one 0-cell, 2g 1-cells, one 2-cell, all
/// attaching maps vanishing over GF(2).
pub fn surface_min(g: u32) -> ChainComplex {
    ChainComplex::zero_maps(vec![1, 2 * g as usize, 1])
}

/// Flattens an expression into tensor factors (tori become circles).
fn flatten_factors(m: &ManifoldExpr, out: &mut Vec<ManifoldExpr>) {
    match m {
        ManifoldExpr::Product(fs) => {
            for f in fs {
                flatten_factors(f, out);
            }
        }
        ManifoldExpr::Torus { dim } => {
            for _ in 0..*dim {
                out.push(ManifoldExpr::Torus { dim: 1 });
            }
        }
        other => out.push(other.clone()),
    }
}

fn atom_complex(m: &ManifoldExpr, rich: bool) -> ChainComplex {
    match m {
        ManifoldExpr::Sphere { dim: 1 } | ManifoldExpr::Torus { dim: 1 } => {
            if rich {
                circle_rich()
            } else {
                circle_min()
            }
        }
        ManifoldExpr::Sphere { dim } => {
            if rich {
                sphere_simplicial(*dim)
            } else {
                sphere_min(*dim)
            }
        }
        ManifoldExpr::OrientedSurface { genus: 0 } => {
            if rich {
                sphere_simplicial(2)
            } else {
                sphere_min(2)
            }
        }
        ManifoldExpr::OrientedSurface { genus } => {
            if rich {
                surface_fan(*genus)
            } else {
                surface_min(*genus)
            }
        }
        other => panic!("no oracle cell structure for {other:?}"),
    }
}

/// Chain-level Betti oracle for products of spheres, tori and surfaces.
pub fn oracle_betti(m: &ManifoldExpr) -> Vec<u64> {
    let mut factors = Vec::new();
    flatten_factors(m, &mut factors);
    assert!(!factors.is_empty());
    let mut complex: Option<ChainComplex> = None;
    let remaining_min: Vec<usize> = {
        // Minimal cell counts of the factors still to be tensored.
        let mins: Vec<usize> = factors
            .iter()
            .map(|f| atom_complex(f, false).total_cells())
            .collect();
        let mut suffix = vec![1usize; mins.len() + 1];
        for i in (0..mins.len()).rev() {
            suffix[i] = suffix[i + 1].saturating_mul(mins[i]);
        }
        suffix
    };
    for (i, f) in factors.iter().enumerate() {
        let so_far = complex.as_ref().map_or(1, ChainComplex::total_cells);
        let rich = atom_complex(f, true);
        let use_rich =
            so_far.saturating_mul(rich.total_cells()).saturating_mul(remaining_min[i + 1])
                <= CELL_BUDGET;
        let next = if use_rich { rich } else { atom_complex(f, false) };
        complex = Some(match complex {
            None => next,
            Some(c) => c.tensor(&next),
        });
    }
    complex.expect("at least one factor").betti()
}

//! String modules, degree-one band modules and a brute-force Hom oracle.
//!
//! Every module here has a basis of vertex-tagged vectors on which each arrow
//! acts by sending a basis vector to another basis vector or to zero.

use std::collections::HashMap;

use crate::gentle::{Band, GentleAlgebra, StringWord};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringModule {
    /// Vertex of each basis vector, in walk order.
    pub basis: Vec<usize>,
    /// `(arrow, from, to)`: the arrow sends basis vector `from` to `to`.
    pub actions: Vec<(usize, usize, usize)>,
    vertex_count: usize,
    arrow_ends: Vec<(usize, usize)>,
}

impl StringModule {
    pub fn dimension_vector(&self) -> Vec<usize> {
        let mut dims = vec![0; self.vertex_count];
        for &v in &self.basis {
            dims[v] += 1;
        }
        dims
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    fn basis_at(&self, vertex: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i] == vertex).collect()
    }

    fn image(&self, arrow: usize, from: usize) -> Option<usize> {
        self.actions.iter().find(|&&(a, f, _)| a == arrow && f == from).map(|&(_, _, t)| t)
    }

    /// The 0/1 matrix of an arrow: rows index the basis at its target, columns
    /// the basis at its source.
    pub fn arrow_matrix(&self, algebra: &GentleAlgebra, arrow: usize) -> Vec<Vec<u8>> {
        let rows = self.basis_at(algebra.arrow_target(arrow));
        let cols = self.basis_at(algebra.arrow_source(arrow));
        rows.iter().map(|&r| cols.iter().map(|&c| u8::from(self.image(arrow, c) == Some(r))).collect()).collect()
    }

    /// Whether every relation acts as zero.
    pub fn satisfies_relations(&self, algebra: &GentleAlgebra) -> bool {
        algebra
            .relations()
            .all(|(x, y)| (0..self.basis.len()).all(|i| self.image(x, i).and_then(|j| self.image(y, j)).is_none()))
    }
}

/// `M(w)`: basis `x₀ … x_d` along the walk; a direct step `i` sends `xᵢ` to
/// `xᵢ₊₁`, an inverse step sends `xᵢ₊₁` to `xᵢ`.
pub fn string_module(algebra: &GentleAlgebra, w: &StringWord) -> StringModule {
    let basis = algebra.walk(w);
    let actions = w
        .steps()
        .iter()
        .enumerate()
        .map(|(i, s)| if s.direct { (s.arrow, i, i + 1) } else { (s.arrow, i + 1, i) })
        .collect();
    StringModule { basis, actions, vertex_count: algebra.vertex_count(), arrow_ends: arrow_ends(algebra) }
}

/// The band module of degree one with parameter `1`: the string rule on the
/// cyclic walk, closing step included.
pub fn band_module(algebra: &GentleAlgebra, band: &Band) -> StringModule {
    let steps = band.representative.steps();
    let n = steps.len();
    let mut basis = algebra.walk(&band.representative);
    basis.pop();
    let actions = steps
        .iter()
        .enumerate()
        .map(|(i, s)| if s.direct { (s.arrow, i, (i + 1) % n) } else { (s.arrow, (i + 1) % n, i) })
        .collect();
    StringModule { basis, actions, vertex_count: algebra.vertex_count(), arrow_ends: arrow_ends(algebra) }
}

fn arrow_ends(algebra: &GentleAlgebra) -> Vec<(usize, usize)> {
    (0..algebra.arrow_count()).map(|a| (algebra.arrow_source(a), algebra.arrow_target(a))).collect()
}

/// `dim Hom(M, N)`, solving `N_α f_s = f_t M_α` for every arrow exactly.
pub fn hom_dim(m: &StringModule, n: &StringModule) -> usize {
    assert_eq!(m.arrow_ends, n.arrow_ends, "modules over different quivers");
    // unknown (i, j): coefficient of N-basis j in f(M-basis i), same vertex
    let mut index = HashMap::new();
    for i in 0..m.basis.len() {
        for j in 0..n.basis.len() {
            if m.basis[i] == n.basis[j] {
                let k = index.len();
                index.insert((i, j), k);
            }
        }
    }
    let unknowns = index.len();
    let m_image: HashMap<(usize, usize), usize> = m.actions.iter().map(|&(a, f, t)| ((a, f), t)).collect();
    let mut n_preimages: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for &(a, f, t) in &n.actions {
        n_preimages.entry((a, t)).or_default().push(f);
    }
    let mut rows = Vec::new();
    for (arrow, &(s, t)) in m.arrow_ends.iter().enumerate() {
        for i in m.basis_at(s) {
            for jt in n.basis_at(t) {
                // entry (jt, i) of N_α f_s − f_t M_α
                let mut row: Vec<(usize, i64)> =
                    n_preimages.get(&(arrow, jt)).into_iter().flatten().map(|&from| (index[&(i, from)], 1)).collect();
                if let Some(&it) = m_image.get(&(arrow, i)) {
                    row.push((index[&(it, jt)], -1));
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    unknowns - linalg::rank_sparse(rows)
}

pub fn hom_dim_oracle(algebra: &GentleAlgebra, u: &StringWord, v: &StringWord) -> usize {
    hom_dim(&string_module(algebra, u), &string_module(algebra, v))
}

/// `dim End` of the degree-one, parameter-one band module; `1` means a brick.
pub fn band_module_end_dim(algebra: &GentleAlgebra, band: &Band) -> usize {
    let m = band_module(algebra, band);
    hom_dim(&m, &m)
}

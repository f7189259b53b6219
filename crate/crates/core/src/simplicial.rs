//! Finite simplicial complexes on the vertex set {1, ..., n}, stored by facets.

use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactla::ScalarMatrix;
use crate::field::{Field, FieldSpec};
use crate::setfamily::{self, bits, full_mask, is_subset, popcount, Mask};
use crate::with_field;

/// Largest supported vertex count (faces are `u64` masks).
pub const MAX_VERTICES: usize = 64;

/// A simplicial complex given by its facets. No facets is the void complex;
/// the single facet ∅ is the empty complex {∅}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Mask>,
}

impl SimplicialComplex {
    /// Build from arbitrary faces; non-maximal ones are dropped.
    pub fn new(n: usize, faces: Vec<Mask>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidInput(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let all = full_mask(n);
        if let Some(f) = faces.iter().find(|&&f| !is_subset(f, all)) {
            return Err(Error::InvalidInput(format!(
                "face {:?} uses a vertex outside 1..{n}",
                mask_to_vertices(*f)
            )));
        }
        Ok(SimplicialComplex {
            n,
            facets: setfamily::maximalize(faces),
        })
    }

    /// Build from 1-based vertex lists. Also returns the lists that were
    /// dropped as non-maximal.
    pub fn from_vertex_lists(n: usize, lists: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>)> {
        let mut masks = Vec::with_capacity(lists.len());
        for l in lists {
            let mut m: Mask = 0;
            for &v in l {
                if v == 0 || v > n {
                    return Err(Error::InvalidInput(format!("vertex {v} outside 1..{n}")));
                }
                m |= 1 << (v - 1);
            }
            masks.push(m);
        }
        let complex = Self::new(n, masks.clone())?;
        let mut dropped = Vec::new();
        let mut seen = Vec::new();
        for (m, l) in masks.iter().zip(lists) {
            if complex.facets.binary_search(m).is_err() || seen.contains(m) {
                dropped.push(l.clone());
            } else {
                seen.push(*m);
            }
        }
        Ok((complex, dropped))
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    /// The complex {∅}.
    pub fn empty(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![0] }
    }

    /// The full simplex on {1..n}.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![full_mask(n)],
        }
    }

    /// Boundary of the simplex on {1..n}: all proper subsets.
    pub fn boundary(n: usize) -> Self {
        let all = full_mask(n);
        let mut facets: Vec<Mask> = (0..n).map(|v| all & !(1 << v)).collect();
        if n == 0 {
            facets.clear();
        }
        facets.sort_unstable();
        SimplicialComplex { n, facets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Mask] {
        &self.facets
    }

    /// Facets as sorted 1-based vertex lists.
    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| mask_to_vertices(f)).collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_full_simplex(&self) -> bool {
        self.facets == [full_mask(self.n)]
    }

    pub fn contains(&self, face: Mask) -> bool {
        self.facets.iter().any(|&f| is_subset(face, f))
    }

    /// Dimension; -1 for {∅}, `None` for the void complex.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|&f| popcount(f) as isize - 1).max()
    }

    /// Largest facet size (Krull dimension of the Stanley-Reisner ring).
    pub fn max_facet_size(&self) -> usize {
        self.facets.iter().map(|&f| popcount(f) as usize).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| popcount(w[0]) == popcount(w[1]))
    }

    /// All faces (including ∅), sorted by size then mask.
    pub fn faces(&self) -> Result<Vec<Mask>> {
        self.faces_within(Budget::default().faces)
    }

    pub fn faces_within(&self, limit: usize) -> Result<Vec<Mask>> {
        let set = setfamily::down_closure(&self.facets, limit)
            .ok_or_else(|| Error::budget("face enumeration", limit.saturating_add(1), limit))?;
        let mut faces: Vec<Mask> = set.into_iter().collect();
        faces.sort_unstable_by_key(|&f| (popcount(f), f));
        Ok(faces)
    }

    /// f-vector (f_{-1}, f_0, ..., f_dim).
    pub fn f_vector(&self) -> Result<Vec<usize>> {
        let faces = self.faces()?;
        let mut f = vec![0usize; self.max_facet_size() + 1];
        for face in faces {
            f[popcount(face) as usize] += 1;
        }
        if self.is_void() {
            f.clear();
        }
        Ok(f)
    }

    /// Minimal nonfaces, sorted by size then mask. The void complex has ∅.
    pub fn minimal_nonfaces(&self) -> Vec<Mask> {
        setfamily::minimal_uncovered(self.n, &self.facets, Budget::default().faces)
    }

    /// Δ∨ = {F : complement of F is not a face}. The dual of the full simplex
    /// is the void complex.
    pub fn alexander_dual(&self) -> Self {
        let all = full_mask(self.n);
        let mut facets: Vec<Mask> = self
            .minimal_nonfaces()
            .into_iter()
            .map(|m| all & !m)
            .collect();
        facets.sort_unstable();
        SimplicialComplex { n: self.n, facets }
    }

    /// Δ|σ re-indexed on the vertices of σ in increasing order.
    pub fn restriction(&self, sigma: Mask) -> Self {
        let sigma = sigma & full_mask(self.n);
        let verts: Vec<usize> = bits(sigma).collect();
        let squeeze = |f: Mask| {
            verts
                .iter()
                .enumerate()
                .filter(|(_, &v)| f & (1 << v) != 0)
                .fold(0u64, |m, (i, _)| m | (1 << i))
        };
        let faces: Vec<Mask> = self.facets.iter().map(|&f| squeeze(f & sigma)).collect();
        SimplicialComplex {
            n: verts.len(),
            facets: setfamily::maximalize(faces),
        }
    }

    /// dim H̃_i(Δ; k) for i = -1, ..., dim Δ; entry `j` is degree `j - 1`.
    pub fn reduced_homology_dims(&self, field: FieldSpec) -> Result<Vec<usize>> {
        with_field!(field, f => self.reduced_homology_dims_in(&f))
    }

    pub fn reduced_homology_dims_in<F: Field>(&self, field: &F) -> Result<Vec<usize>> {
        if self.is_void() {
            return Err(Error::VoidComplex);
        }
        let faces = self.faces()?;
        let top = self.max_facet_size();
        let mut by_size: Vec<Vec<Mask>> = vec![Vec::new(); top + 1];
        for f in faces {
            by_size[popcount(f) as usize].push(f);
        }
        // rank of ∂ from size s to size s-1, for s = 1..=top
        let mut ranks = vec![0usize; top + 2];
        for s in 1..=top {
            ranks[s] = boundary_matrix(field, &by_size[s], &by_size[s - 1]).rank(field);
        }
        Ok((0..=top)
            .map(|s| by_size[s].len() - ranks[s] - ranks[s + 1])
            .collect())
    }

    /// Reduced Euler characteristic Σ (-1)^{dim F} over all faces, including ∅.
    pub fn reduced_euler_characteristic(&self) -> Result<i64> {
        Ok(self
            .f_vector()?
            .iter()
            .enumerate()
            .map(|(s, &c)| if s % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum())
    }

    /// Connected components of the subcomplex spanned by facets of
    /// dimension at least 1 (isolated points are ignored).
    pub fn connected_components_nonisolated(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let next = p[x];
                p[x] = r;
                x = next;
            }
            r
        }
        let mut used: Mask = 0;
        for &f in self.facets.iter().filter(|&&f| popcount(f) >= 2) {
            used |= f;
            let first = f.trailing_zeros() as usize;
            for v in bits(f) {
                let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                parent[a] = b;
            }
        }
        let mut roots: Vec<usize> = bits(used).map(|v| find(&mut parent, v)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Components of the facet graph (edges between facets sharing a
    /// codimension-one face). Requires a pure complex.
    pub fn codim_one_component_count(&self) -> Result<usize> {
        if !self.is_pure() {
            return Err(Error::NonPure);
        }
        let k = self.facets.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (self.facets[i], self.facets[j]);
                if popcount(a & b) + 1 == popcount(a) {
                    let (ra, rb) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ra] = rb;
                }
            }
        }
        Ok((0..k).filter(|&i| find(&mut parent, i) == i).count())
    }

    /// Barycentric subdivision: vertices are the nonempty faces (ordered by
    /// size, then mask), faces are chains. Errors past `max_vertices`.
    pub fn barycentric_subdivision(&self, max_vertices: usize) -> Result<Self> {
        if self.is_void() {
            return Ok(Self::void(0));
        }
        let limit = max_vertices.min(MAX_VERTICES);
        let count: usize = self
            .facets
            .iter()
            .map(|&f| (1usize << popcount(f)) - 1)
            .sum();
        if count > limit.saturating_mul(64) {
            return Err(Error::budget("subdivision vertices", count, limit));
        }
        let faces = self.faces()?;
        let vertices: Vec<Mask> = faces.into_iter().filter(|&f| f != 0).collect();
        if vertices.len() > limit {
            return Err(Error::budget("subdivision vertices", vertices.len(), limit));
        }
        let index: HashMap<Mask, usize> =
            vertices.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut chains = Vec::new();
        for &facet in &self.facets {
            maximal_chains(facet, 0, 0, &index, &mut chains);
        }
        Self::new(vertices.len(), chains)
    }
}

/// All maximal chains from `current` up to `facet`, accumulated as masks of
/// subdivision vertices.
fn maximal_chains(
    facet: Mask,
    current: Mask,
    chain: Mask,
    index: &HashMap<Mask, usize>,
    out: &mut Vec<Mask>,
) {
    if current == facet {
        out.push(chain);
        return;
    }
    for v in bits(facet & !current) {
        let next = current | (1 << v);
        maximal_chains(facet, next, chain | (1 << index[&next]), index, out);
    }
}

/// Boundary matrix from faces of size s (columns) to faces of size s-1
/// (rows). For s = 1 the single row is the augmentation onto ∅.
fn boundary_matrix<F: Field>(field: &F, cols: &[Mask], rows: &[Mask]) -> ScalarMatrix<F::Elem> {
    let row_index: HashMap<Mask, usize> = rows.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut m = ScalarMatrix::zeros(field, rows.len(), cols.len());
    let one = field.one();
    let minus = field.neg(&one);
    for (c, &face) in cols.iter().enumerate() {
        for (pos, v) in bits(face).enumerate() {
            let r = row_index[&(face & !(1 << v))];
            m.set(r, c, if pos % 2 == 0 { one.clone() } else { minus.clone() });
        }
    }
    m
}

pub fn mask_to_vertices(m: Mask) -> Vec<usize> {
    bits(m).map(|v| v + 1).collect()
}

pub fn vertices_to_mask(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |m, &v| m | (1 << (v - 1)))
}

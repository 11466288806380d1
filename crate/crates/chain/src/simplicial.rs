//! Simplicial chain and cochain complexes from explicit simplex lists.

use std::collections::HashMap;

use exactalg::{Domain, SparseMatrix};

use crate::complex::CochainComplex;
use crate::ChainError;

/// Boundary matrix `∂_k` from `k`-simplices to `(k-1)`-simplices. Every
/// simplex is a strictly increasing vertex list.
pub fn boundary_matrix(faces: &[Vec<usize>], simplices: &[Vec<usize>], domain: Domain) -> Result<SparseMatrix, ChainError> {
    let index: HashMap<&[usize], usize> = faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut t = Vec::new();
    let mut face = Vec::new();
    for (j, s) in simplices.iter().enumerate() {
        for drop in 0..s.len() {
            face.clear();
            face.extend(s.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, v)| *v));
            let &i = index
                .get(face.as_slice())
                .ok_or_else(|| ChainError::Shape(format!("face {face:?} of {s:?} is missing")))?;
            t.push((i, j, domain.from_i64(if drop % 2 == 0 { 1 } else { -1 })));
        }
    }
    Ok(SparseMatrix::from_triplets(faces.len(), simplices.len(), domain, t))
}

/// Chains graded cohomologically: degree `-k` holds the `k`-simplices and
/// the differential is the boundary. `by_dim[k]` lists the `k`-simplices.
pub fn simplicial_chains(by_dim: &[Vec<Vec<usize>>], domain: Domain) -> Result<CochainComplex, ChainError> {
    let mut c = CochainComplex::new(domain);
    for (k, s) in by_dim.iter().enumerate() {
        c.set_dim(-(k as i64), s.len());
    }
    for k in 1..by_dim.len() {
        c.set_diff(-(k as i64), boundary_matrix(&by_dim[k - 1], &by_dim[k], domain)?)?;
    }
    Ok(c)
}

/// Cochains in degrees `0..`, with the transposed boundary as coboundary.
pub fn simplicial_cochains(by_dim: &[Vec<Vec<usize>>], domain: Domain) -> Result<CochainComplex, ChainError> {
    let mut c = CochainComplex::new(domain);
    for (k, s) in by_dim.iter().enumerate() {
        c.set_dim(k as i64, s.len());
    }
    for k in 1..by_dim.len() {
        c.set_diff(k as i64 - 1, boundary_matrix(&by_dim[k - 1], &by_dim[k], domain)?.transpose())?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology;
    use crate::verify_complex;

    fn triangle_boundary() -> Vec<Vec<Vec<usize>>> {
        vec![vec![vec![0], vec![1], vec![2]], vec![vec![0, 1], vec![0, 2], vec![1, 2]]]
    }

    #[test]
    fn triangle_boundary_cochains() {
        let c = simplicial_cochains(&triangle_boundary(), Domain::Rational).unwrap();
        assert!(verify_complex(&c).passed);
        assert_eq!(cohomology(&c).unwrap().dims(), [(0, 1), (1, 1)].into_iter().collect());
    }

    #[test]
    fn filled_triangle_chains() {
        let mut s = triangle_boundary();
        s.push(vec![vec![0, 1, 2]]);
        let c = simplicial_chains(&s, Domain::Integer).unwrap();
        assert!(verify_complex(&c).passed);
        let h = cohomology(&c).unwrap();
        assert_eq!(h.dims(), [(0, 1)].into_iter().collect());
        assert!(h.is_torsion_free());
    }
}

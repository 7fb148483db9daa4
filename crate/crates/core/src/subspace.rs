//! Subspaces of `k^n` kept in reduced row echelon form.

use crate::error::Result;
use crate::scalar::{Domain, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    domain: Domain,
    ambient: usize,
    /// RREF rows, sorted by pivot column.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(domain: &Domain, ambient: usize) -> Subspace {
        Subspace {
            domain: domain.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(domain: &Domain, ambient: usize) -> Subspace {
        let mut s = Subspace::zero(domain, ambient);
        for i in 0..ambient {
            let mut v = vec![Scalar::zero(domain); ambient];
            v[i] = Scalar::one(domain);
            s.insert(&v);
        }
        s
    }

    pub fn span(domain: &Domain, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut s = Subspace::zero(domain, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns not used as pivots; their unit vectors span a complement.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` modulo the subspace, on the complement columns.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let w = self.reduce(v);
        self.complement().into_iter().map(|c| w[c].clone()).collect()
    }

    /// Add `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("subspaces live over fields");
        let w: Vec<Scalar> = w.iter().map(|x| x * &inv).collect();
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&w) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Intersection with `other` via the kernel of `[A; -B]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(&self.domain, self.ambient));
        }
        let m = Matrix::from_fn(&self.domain, self.ambient, a + b, |r, c| {
            if c < a {
                self.rows[c][r].clone()
            } else {
                -&other.rows[c - a][r]
            }
        });
        let mut out = Subspace::zero(&self.domain, self.ambient);
        for k in crate::scalar::nullspace(&m)? {
            let mut v = vec![Scalar::zero(&self.domain); self.ambient];
            for (c, coef) in k.iter().enumerate().take(a) {
                if coef.is_zero() {
                    continue;
                }
                for (x, r) in v.iter_mut().zip(&self.rows[c]) {
                    *x = &*x + &(coef * r);
                }
            }
            out.insert(&v);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarDomain;

    fn v(d: &Domain, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(d, x)).collect()
    }

    #[test]
    fn insert_and_project() {
        let q = ScalarDomain::rational();
        let mut s = Subspace::zero(&q, 3);
        assert!(s.insert(&v(&q, &[0, 2, 2])));
        assert!(!s.insert(&v(&q, &[0, 1, 1])));
        assert!(s.contains(&v(&q, &[0, -3, -3])));
        assert_eq!(s.complement(), vec![0, 2]);
        assert_eq!(s.project(&v(&q, &[1, 1, 0])), v(&q, &[1, -1]));
    }

    #[test]
    fn intersection_of_planes() {
        let q = ScalarDomain::rational();
        let a = Subspace::span(&q, 3, &[v(&q, &[1, 0, 0]), v(&q, &[0, 1, 0])]);
        let b = Subspace::span(&q, 3, &[v(&q, &[0, 1, 0]), v(&q, &[0, 0, 1])]);
        let c = a.intersect(&b).unwrap();
        assert_eq!(c.basis(), &[v(&q, &[0, 1, 0])]);
    }
}

//! Dense matrices over a single scalar domain, with exact elimination.

use std::fmt;

use super::{Domain, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    domain: Domain,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(domain: &Domain, rows: usize, cols: usize) -> Matrix {
        Matrix {
            domain: domain.clone(),
            rows,
            cols,
            data: vec![Scalar::zero(domain); rows * cols],
        }
    }

    pub fn identity(domain: &Domain, n: usize) -> Matrix {
        let mut m = Matrix::zeros(domain, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(domain));
        }
        m
    }

    pub fn from_rows(domain: &Domain, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for s in row {
                if !s.domain().eq(domain) {
                    return Err(Error::DomainMismatch(s.domain().to_string(), domain.to_string()));
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            domain: domain.clone(),
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Matrix from integer literals, mapped into `domain`.
    pub fn from_ints(domain: &Domain, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(domain, v)).collect())
            .collect();
        Matrix::from_rows(domain, rows).unwrap()
    }

    pub fn column(domain: &Domain, entries: Vec<Scalar>) -> Result<Matrix> {
        Matrix::from_rows(domain, entries.into_iter().map(|s| vec![s]).collect())
    }

    pub fn from_fn(domain: &Domain, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            domain: domain.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Entries of a single-column matrix.
    pub fn column_entries(&self) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, 0).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.domain, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, target: &Domain, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Matrix> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            domain: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn check_domain(&self, other: &Matrix) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(self.domain.to_string(), other.domain.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_domain(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("add".into()));
        }
        Ok(Matrix {
            domain: self.domain.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            domain: self.domain.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Product skipping zero entries; the matrices in this crate are sparse.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_domain(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let other_nz: Vec<Vec<usize>> = (0..other.rows)
            .map(|k| (0..other.cols).filter(|&j| !other.get(k, j).is_zero()).collect())
            .collect();
        let mut out = Matrix::zeros(&self.domain, self.rows, other.cols);
        for i in 0..self.rows {
            for (k, cols) in other_nz.iter().enumerate() {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in cols {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut acc = Matrix::identity(&self.domain, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Reduced row echelon form and pivot columns. Field domains only.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        if !self.domain.is_field() {
            return Err(Error::NotAField(self.domain.to_string()));
        }
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv()?;
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// Solution with every free variable set to zero.
    pub particular: Matrix,
    /// Basis of the kernel of the coefficient matrix, as columns.
    pub nullspace: Vec<Matrix>,
}

/// Solve `m * x = b` over a field. Returns `None` when inconsistent.
pub fn solve_linear(m: &Matrix, b: &Matrix) -> Result<Option<LinearSolution>> {
    m.check_domain(b)?;
    if !m.domain.is_field() {
        return Err(Error::NotAField(m.domain.to_string()));
    }
    if b.cols != 1 || b.rows != m.rows {
        return Err(Error::DimensionMismatch("right-hand side must be a column of matching height".into()));
    }
    let aug = Matrix::from_fn(&m.domain, m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m.get(i, j).clone()
        } else {
            b.get(i, 0).clone()
        }
    });
    let (r, pivots) = aug.rref()?;
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let zero = Scalar::zero(&m.domain);
    let mut particular = vec![zero.clone(); m.cols];
    for (row, &c) in pivots.iter().enumerate() {
        particular[c] = r.get(row, m.cols).clone();
    }
    let nullspace = kernel_from_rref(&r, &pivots, m.cols)
        .into_iter()
        .map(|v| Matrix::column(&m.domain, v).unwrap())
        .collect();
    Ok(Some(LinearSolution {
        particular: Matrix::column(&m.domain, particular)?,
        nullspace,
    }))
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], ncols: usize) -> Vec<Vec<Scalar>> {
    let zero = Scalar::zero(r.domain());
    let one = Scalar::one(r.domain());
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = -r.get(row, free);
        }
        out.push(v);
    }
    out
}

/// Basis of `{x : m x = 0}` as coefficient vectors.
pub fn nullspace(m: &Matrix) -> Result<Vec<Vec<Scalar>>> {
    let (r, pivots) = m.rref()?;
    Ok(kernel_from_rref(&r, &pivots, m.cols))
}

/// Exact determinant: Gaussian elimination over fields, Bareiss fraction-free
/// elimination over polynomial domains.
pub fn determinant(m: &Matrix) -> Result<Scalar> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut negate = false;
    if m.domain.is_field() {
        let mut det = Scalar::one(&m.domain);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Ok(Scalar::zero(&m.domain));
            };
            if p != c {
                a.swap_rows(p, c);
                negate = !negate;
            }
            let pivot = a.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for i in c + 1..n {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c) * &inv;
                for j in c..n {
                    let v = a.get(i, j) - &(&f * a.get(c, j));
                    a.set(i, j, v);
                }
            }
        }
        return Ok(if negate { -det } else { det });
    }
    let mut prev = Scalar::one(&m.domain);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
            return Ok(Scalar::zero(&m.domain));
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(a.get(k, k) * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                a.set(i, j, num.checked_div(&prev)?);
            }
            a.set(i, k, Scalar::zero(&m.domain));
        }
        prev = a.get(k, k).clone();
    }
    let det = if n == 0 { Scalar::one(&m.domain) } else { a.get(n - 1, n - 1).clone() };
    Ok(if negate { -det } else { det })
}

/// Univariate polynomial over a scalar domain, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    domain: Domain,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(domain: &Domain, mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly {
            domain: domain.clone(),
            coeffs,
        }
    }

    /// `z^n`.
    pub fn monomial(domain: &Domain, n: usize) -> UniPoly {
        let mut c = vec![Scalar::zero(domain); n + 1];
        c[n] = Scalar::one(domain);
        UniPoly::new(domain, c)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(&self.domain))
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(&self.domain, vec![]);
        }
        let mut c = vec![Scalar::zero(&self.domain); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UniPoly::new(&self.domain, c)
    }

    /// Remainder modulo a monic polynomial; valid over any commutative domain.
    pub fn rem_monic(&self, modulus: &UniPoly) -> UniPoly {
        let n = modulus.degree().expect("nonzero modulus");
        debug_assert!(modulus.coeffs[n].is_one());
        let mut r = self.coeffs.clone();
        while r.len() > n {
            let top = r.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - n;
            for (i, m) in modulus.coeffs[..n].iter().enumerate() {
                r[i + shift] = &r[i + shift] - &(&top * m);
            }
        }
        UniPoly::new(&self.domain, r)
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if !m.is_square() {
            return Err(Error::NotSquare(m.rows, m.cols));
        }
        let n = m.rows;
        let mut acc = Matrix::zeros(&self.domain, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&Matrix::identity(&self.domain, n).scale(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let cs = c.to_string();
            let needs_parens = cs.contains(' ');
            parts.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs.clone(),
                (false, "1") => mono,
                (false, _) if needs_parens => format!("({cs})*{mono}"),
                (false, _) => format!("{cs}*{mono}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Characteristic polynomial `det(z I - m)` by Berkowitz's division-free
/// algorithm, so it works over polynomial domains too.
pub fn char_poly(m: &Matrix) -> Result<UniPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    let dom = &m.domain;
    // coefficient vector, highest degree first
    let mut p: Vec<Scalar> = vec![Scalar::one(dom)];
    for r in 0..n {
        // leading r x r block A_r, column s = m[0..r, r], row = m[r, 0..r], corner a = m[r, r]
        let a = m.get(r, r).clone();
        let mut t = Vec::with_capacity(r + 2);
        t.push(Scalar::one(dom));
        t.push(-&a);
        // powers A_r^k s for k = 0..r-1
        let mut v: Vec<Scalar> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for _ in 0..r {
            let dot = (0..r).fold(Scalar::zero(dom), |acc, j| &acc + &(m.get(r, j) * &v[j]));
            t.push(-&dot);
            v = (0..r)
                .map(|i| (0..r).fold(Scalar::zero(dom), |acc, j| &acc + &(m.get(i, j) * &v[j])))
                .collect();
        }
        // new p = T * p where T is (r+2) x (r+1) lower-triangular Toeplitz
        let mut next = vec![Scalar::zero(dom); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if i >= j && !pj.is_zero() {
                    *slot = &*slot + &(&t[i - j] * pj);
                }
            }
        }
        p = next;
    }
    p.reverse();
    Ok(UniPoly::new(dom, p))
}

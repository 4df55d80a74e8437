//! Exact linear algebra over Q: Gauss-Jordan reduced row echelon form with
//! deterministic pivoting, plus an independent fraction-free (Bareiss)
//! integer elimination used to cross-check ranks.

use crate::scalar::Rational;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Dense matrix over Q, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> QMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    /// Reduced row echelon form with the list of pivot columns. Pivots are
    /// chosen left-to-right, first nonzero row: fully deterministic.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j).clone(), m.get(p, j).clone());
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &(&factor * m.get(r, j));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace, one vector per free column, in
    /// ascending free-column order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Rational::zero(); self.cols];
                v[fc] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, fc).clone();
                }
                v
            })
            .collect()
    }

    /// Solves self * x = b exactly; `None` when inconsistent. Free
    /// variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "shape mismatch");
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Rank via Bareiss fraction-free elimination over the integers, after
    /// clearing denominators row by row. Independent of `rref`; used to
    /// cross-check homological dimensions.
    pub fn rank_bareiss(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let lcm = self
                    .row(i)
                    .iter()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                self.row(i)
                    .iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect()
            })
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        let mut r = 0;
        for c in 0..cols {
            // Deterministic pivot: largest-magnitude entry would also work,
            // but first nonzero keeps the strategy distinct from rref only
            // in arithmetic, not in pivot geometry.
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in (r + 1)..rows {
                for j in (c + 1)..cols {
                    let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = &num / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            rank += 1;
            r += 1;
            if r == rows {
                break;
            }
        }
        rank
    }
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("bad rational numerator: {:?}", s))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("bad rational denominator: {:?}", s))?;
    if d.is_zero() {
        return Err(format!("zero denominator in rational: {:?}", s));
    }
    Ok(BigRational::new(n, d))
}

/// Formats a rational as "p" or "p/q".
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.denom().is_negative() {
        // num::BigRational keeps denominators positive; defensive only.
        format!("{}/{}", -r.numer(), -r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.rank_bareiss(), 2);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.get(0, 0), &rat(1, 1));
    }

    #[test]
    fn nullspace_is_kernel() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn solve_exact() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let x = a.solve(&[rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 2), rat(1, 3)]);
        let b = m(&[&[1, 1], &[1, 1]]);
        assert!(b.solve(&[rat(0, 1), rat(1, 1)]).is_none());
    }

    #[test]
    fn bareiss_matches_rref_on_fractions() {
        let a = QMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), rat(1, 6)],
            vec![rat(3, 1), rat(2, 1), rat(1, 1)],
            vec![rat(0, 1), rat(1, 7), rat(2, 7)],
        ]);
        assert_eq!(a.rank(), a.rank_bareiss());
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-5").unwrap(), rat(-5, 1));
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert!(parse_rational("1/0").is_err());
    }
}

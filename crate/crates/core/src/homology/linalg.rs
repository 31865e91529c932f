//! Exact ranks of small integer matrices: Smith normal form over `Z` (rank
//! over `Q` plus torsion) and Gaussian elimination over `GF(p)`.

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for j in 0..self.cols {
            let v = self
                .get(src, j)
                .checked_mul(q)
                .and_then(|p| self.get(dst, j).checked_sub(p))
                .ok_or(Error::ExponentOverflow)?;
            self.set(dst, j, v);
        }
        Ok(())
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for i in 0..self.rows {
            let v = self
                .get(i, src)
                .checked_mul(q)
                .and_then(|p| self.get(i, dst).checked_sub(p))
                .ok_or(Error::ExponentOverflow)?;
            self.set(i, dst, v);
        }
        Ok(())
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) of the Smith
/// normal form. `r` is the rank over `Q`; factors above 1 are torsion.
pub fn smith_normal_form(m: &IntMatrix) -> Result<Vec<i64>> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let p = a.get(t, t);
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a.get(i, t) / p;
                if q != 0 {
                    a.row_axpy(i, t, q)?;
                }
                if a.get(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a.get(t, j) / p;
                if q != 0 {
                    a.col_axpy(j, t, q)?;
                }
                if a.get(t, j) != 0 {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = smallest_in_cross(&a, t);
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| a.get(i, j) % p != 0);
            match bad {
                Some((i, _)) => a.row_axpy(t, i, -1)?,
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
        t += 1;
    }
    Ok(diag)
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j).abs();
            if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                best = Some((v, i, j));
                if v == 1 {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (a.get(t, t).abs(), t, t);
    for i in t + 1..a.rows {
        let v = a.get(i, t).abs();
        if v != 0 && v < best.0 {
            best = (v, i, t);
        }
    }
    for j in t + 1..a.cols {
        let v = a.get(t, j).abs();
        if v != 0 && v < best.0 {
            best = (v, t, j);
        }
    }
    (best.1, best.2)
}

/// Rank over `Q`.
pub fn rank_rational(m: &IntMatrix) -> Result<usize> {
    Ok(smith_normal_form(m)?.len())
}

/// Rank over `GF(p)`, `p` prime.
pub fn rank_mod_p(m: &IntMatrix, p: u32) -> usize {
    let p = u64::from(p);
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<u64> = m
        .data
        .iter()
        .map(|&v| v.rem_euclid(p as i64) as u64)
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i * cols + col] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(piv * cols + j, rank * cols + j);
        }
        let inv = mod_pow(a[rank * cols + col], p - 2, p);
        for j in col..cols {
            a[rank * cols + j] = a[rank * cols + j] * inv % p;
        }
        for i in 0..rows {
            if i == rank {
                continue;
            }
            let f = a[i * cols + col];
            if f == 0 {
                continue;
            }
            for j in col..cols {
                let sub = f * a[rank * cols + j] % p;
                a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

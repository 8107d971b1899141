//! Integer Smith normal form, generic over the scalar.
//!
//! Fixed-width scalars are driven with checked arithmetic; an overflow aborts
//! the reduction so the caller can retry over arbitrary precision.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

/// Scalars the reduction can run over.
pub trait Scalar:
    Integer + Signed + Clone + Debug + CheckedAdd + CheckedSub + CheckedMul + From<i8>
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + CheckedAdd + CheckedSub + CheckedMul + From<i8>
{
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Row-sparse integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    pub rows: usize,
    pub cols: usize,
    /// Per row: `(column, nonzero entry)`, sorted by column.
    pub entries: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> SparseMatrix<T> {
        SparseMatrix {
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    pub fn push(&mut self, row: usize, col: usize, value: T) {
        if value.is_zero() {
            return;
        }
        let r = &mut self.entries[row];
        match r.binary_search_by_key(&col, |e| e.0) {
            Ok(k) => {
                let sum = r[k].1.clone() + value;
                if sum.is_zero() {
                    r.remove(k);
                } else {
                    r[k].1 = sum;
                }
            }
            Err(k) => r.insert(k, (col, value)),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|(c, v)| (*c, f(v))).collect())
                .collect(),
        }
    }

    /// `self · other`, densely accumulated per row.
    pub fn mul(&self, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (i, row) in self.entries.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.entries[*k] {
                    let e = acc.entry(*j).or_insert_with(T::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            out.entries[i] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ...` (positive).
pub fn invariant_factors<T: Scalar>(m: &SparseMatrix<T>) -> Result<Vec<T>, Overflow> {
    let (mut factors, rest) = eliminate_units(m)?;
    factors.extend(dense_diagonal(rest)?);
    normalise(factors)
}

/// Invariant factors, over `i64` first and over `BigInt` on overflow.
pub fn invariant_factors_exact(m: &SparseMatrix<i64>) -> Vec<BigInt> {
    match invariant_factors(m) {
        Ok(f) => f.into_iter().map(BigInt::from).collect(),
        Err(Overflow) => invariant_factors(&m.map(|v| BigInt::from(*v)))
            .expect("arbitrary precision does not overflow"),
    }
}

pub fn rank_exact(m: &SparseMatrix<i64>) -> usize {
    invariant_factors_exact(m).len()
}

fn checked_axpy<T: Scalar>(target: &[(usize, T)], factor: &T, pivot: &[(usize, T)]) -> Result<Vec<(usize, T)>, Overflow> {
    // target - factor * pivot
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < pivot.len() {
        let ca = target.get(a).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = pivot.get(b).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(target[a].clone());
            a += 1;
        } else {
            let scaled = factor.checked_mul(&pivot[b].1).ok_or(Overflow)?;
            let v = if ca == cb {
                let v = target[a].1.checked_sub(&scaled).ok_or(Overflow)?;
                a += 1;
                v
            } else {
                T::zero().checked_sub(&scaled).ok_or(Overflow)?
            };
            if !v.is_zero() {
                out.push((cb, v));
            }
            b += 1;
        }
    }
    Ok(out)
}

/// Pivots on entries `±1`, sparsest first. Returns one unit factor per
/// pivot and the rows left over.
fn eliminate_units<T: Scalar>(m: &SparseMatrix<T>) -> Result<(Vec<T>, Vec<Vec<(usize, T)>>), Overflow> {
    let mut rows: Vec<Option<Vec<(usize, T)>>> = m.entries.iter().cloned().map(Some).collect();
    let mut by_col: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (i, r) in m.entries.iter().enumerate() {
        for (c, _) in r {
            by_col.entry(*c).or_default().insert(i);
        }
    }
    let mut candidates: BTreeSet<(usize, usize)> = rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.as_ref().map(|r| (r.len(), i)))
        .filter(|(len, _)| *len > 0)
        .collect();
    let mut factors = Vec::new();
    while let Some((len, i)) = candidates.pop_first() {
        let Some(row) = rows[i].as_ref() else { continue };
        if row.len() != len {
            continue;
        }
        let Some((col, unit)) = row
            .iter()
            .filter(|(_, v)| v.abs().is_one())
            .min_by_key(|(c, _)| by_col.get(c).map(|s| s.len()).unwrap_or(0))
            .cloned()
        else {
            continue;
        };
        let pivot = rows[i].take().expect("present");
        for (c, _) in &pivot {
            if let Some(s) = by_col.get_mut(c) {
                s.remove(&i);
            }
        }
        let others: Vec<usize> = by_col.get(&col).map(|s| s.iter().copied().collect()).unwrap_or_default();
        for k in others {
            let target = rows[k].take().expect("indexed row");
            let a = target
                .iter()
                .find(|(c, _)| *c == col)
                .map(|(_, v)| v.clone())
                .expect("column entry");
            let factor = a.checked_mul(&unit).ok_or(Overflow)?;
            let next = checked_axpy(&target, &factor, &pivot)?;
            for (c, _) in &target {
                if let Some(s) = by_col.get_mut(c) {
                    s.remove(&k);
                }
            }
            for (c, _) in &next {
                by_col.entry(*c).or_default().insert(k);
            }
            if !next.is_empty() {
                candidates.insert((next.len(), k));
            }
            rows[k] = Some(next);
        }
        by_col.remove(&col);
        factors.push(T::one());
    }
    let rest: Vec<Vec<(usize, T)>> = rows.into_iter().flatten().filter(|r| !r.is_empty()).collect();
    Ok((factors, rest))
}

/// Diagonalises the leftover rows densely; returns the nonzero diagonal.
fn dense_diagonal<T: Scalar>(rows: Vec<Vec<(usize, T)>>) -> Result<Vec<T>, Overflow> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    let index: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let (n, m) = (rows.len(), cols.len());
    let mut a = vec![vec![T::zero(); m]; n];
    for (i, r) in rows.iter().enumerate() {
        for (c, v) in r {
            a[i][index[c]] = v.clone();
        }
    }
    let mut diag = Vec::new();
    let mut top = 0;
    while top < n.min(m) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(top) {
            for (j, v) in row.iter().enumerate().skip(top) {
                if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(top, pi);
        for row in a.iter_mut() {
            row.swap(top, pj);
        }
        loop {
            let p = a[top][top].clone();
            let mut done = true;
            for i in top + 1..n {
                if a[i][top].is_zero() {
                    continue;
                }
                let q = a[i][top].div_floor(&p);
                for j in top..m {
                    let s = q.checked_mul(&a[top][j]).ok_or(Overflow)?;
                    a[i][j] = a[i][j].checked_sub(&s).ok_or(Overflow)?;
                }
                if !a[i][top].is_zero() {
                    done = false;
                }
            }
            for j in top + 1..m {
                if a[top][j].is_zero() {
                    continue;
                }
                let q = a[top][j].div_floor(&p);
                for row in a.iter_mut().skip(top) {
                    let s = q.checked_mul(&row[top]).ok_or(Overflow)?;
                    row[j] = row[j].checked_sub(&s).ok_or(Overflow)?;
                }
                if !a[top][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
            // move the smallest remainder into the pivot position
            let mut best = (top, top);
            for i in top..n {
                let v = &a[i][top];
                if !v.is_zero() && v.abs() < a[best.0][best.1].abs() {
                    best = (i, top);
                }
            }
            for j in top..m {
                let v = &a[top][j];
                if !v.is_zero() && v.abs() < a[best.0][best.1].abs() {
                    best = (top, j);
                }
            }
            a.swap(top, best.0);
            for row in a.iter_mut() {
                row.swap(top, best.1);
            }
        }
        diag.push(a[top][top].abs());
        top += 1;
    }
    Ok(diag)
}

/// Rewrites a diagonal into a divisibility chain.
fn normalise<T: Scalar>(mut d: Vec<T>) -> Result<Vec<T>, Overflow> {
    d.retain(|v| !v.is_zero());
    for v in d.iter_mut() {
        *v = v.abs();
    }
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = (d[i].clone() / g.clone()).checked_mul(&d[j]).ok_or(Overflow)?;
            d[i] = g;
            d[j] = l;
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix<i64> {
        let mut m = SparseMatrix::zeros(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.push(i, j, *v);
            }
        }
        m
    }

    #[test]
    fn known_forms() {
        assert_eq!(invariant_factors(&dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).unwrap(), vec![2, 6, 12]);
        assert_eq!(invariant_factors(&dense(&[&[2, 0], &[0, 3]])).unwrap(), vec![1, 6]);
        assert_eq!(invariant_factors(&dense(&[&[1, 1], &[1, 1]])).unwrap(), vec![1]);
        assert!(invariant_factors(&dense(&[&[0, 0]])).unwrap().is_empty());
    }

    #[test]
    fn big_and_small_agree() {
        let m = dense(&[&[4, 6, 0], &[6, 9, 3], &[1, 0, 5]]);
        let small: Vec<BigInt> = invariant_factors(&m).unwrap().into_iter().map(BigInt::from).collect();
        assert_eq!(small, invariant_factors(&m.map(|v| BigInt::from(*v))).unwrap());
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 2;
        let m = dense(&[&[big, 3], &[5, big]]);
        let f = invariant_factors_exact(&m);
        assert_eq!(f.len(), 2);
        let det = BigInt::from(big) * BigInt::from(big) - BigInt::from(15);
        assert_eq!(&f[0] * &f[1], det.abs());
    }

    #[test]
    fn boundary_of_a_triangle_squares_to_zero() {
        // rows: simplices, columns: their faces
        let d1 = dense(&[&[-1, 1, 0], &[-1, 0, 1], &[0, -1, 1]]);
        let d2 = dense(&[&[1, -1, 1]]);
        assert!(d2.mul(&d1).is_zero());
        assert_eq!(rank_exact(&d1), 2);
        assert_eq!(rank_exact(&d2), 1);
    }
}

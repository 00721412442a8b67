//! Dense exact matrices over a [`Field`].

use crate::scalar::Field;

pub type Mat<T> = Vec<Vec<T>>;

pub fn identity<T: Field>(n: usize) -> Mat<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

pub fn zeros<T: Field>(r: usize, c: usize) -> Mat<T> {
    vec![vec![T::zero(); c]; r]
}

pub fn from_i64<T: Field>(m: &[Vec<i64>]) -> Mat<T> {
    m.iter()
        .map(|row| row.iter().map(|&x| T::from_i64(x).unwrap()).collect())
        .collect()
}

pub fn transpose<T: Field>(m: &Mat<T>) -> Mat<T> {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mul<T: Field>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = T::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s = s + row[k].clone() * b[k][j].clone();
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mul_vec<T: Field>(a: &Mat<T>, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(T::zero(), |s, (x, y)| s + x.clone() * y.clone())
        })
        .collect()
}

pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (x, y)| s + x.clone() * y.clone())
}

pub fn scale<T: Field>(m: &Mat<T>, c: &T) -> Mat<T> {
    m.iter().map(|r| r.iter().map(|x| x.clone() * c.clone()).collect()).collect()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse<T: Field>(m: &Mat<T>) -> Option<Mat<T>> {
    let n = m.len();
    let mut a: Mat<T> = m.clone();
    let mut inv = identity::<T>(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].clone() / p.clone();
            inv[col][j] = inv[col][j].clone() / p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].clone() - f.clone() * a[col][j].clone();
                    inv[r][j] = inv[r][j].clone() - f.clone() * inv[col][j].clone();
                }
            }
        }
    }
    Some(inv)
}

pub fn det<T: Field>(m: &Mat<T>) -> T {
    let n = m.len();
    let mut a = m.clone();
    let mut d = T::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return T::zero();
        };
        if piv != col {
            a.swap(col, piv);
            d = -d;
        }
        let p = a[col][col].clone();
        d = d * p.clone();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = a[r][col].clone() / p.clone();
                for j in col..n {
                    a[r][j] = a[r][j].clone() - f.clone() * a[col][j].clone();
                }
            }
        }
    }
    d
}

/// Row rank by elimination.
pub fn rank<T: Field>(m: &Mat<T>) -> usize {
    let mut a = m.clone();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let p = a[rank][col].clone();
        for r in rank + 1..a.len() {
            if !a[r][col].is_zero() {
                let f = a[r][col].clone() / p.clone();
                for j in col..cols {
                    a[r][j] = a[r][j].clone() - f.clone() * a[rank][j].clone();
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn is_upper_triangular<T: Field>(m: &Mat<T>) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().take(i).all(|x| x.is_zero()))
}

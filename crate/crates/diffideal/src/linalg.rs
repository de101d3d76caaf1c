//! Small exact linear algebra over Q: just enough for kernel computations.

use crate::poly::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    /// Basis of the right kernel `{ x : A x = 0 }` via Gauss-Jordan
    /// elimination. Deterministic: pivots are chosen left to right, kernel
    /// vectors are emitted per free column in ascending order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; m.cols];
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(row * m.cols + c, p * m.cols + c);
                }
            }
            let inv = {
                let v = m.get(row, col).clone();
                Rat::new(v.denom().clone(), v.numer().clone())
            };
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c) - &(&factor * m.get(row, c));
                        m.set(r, c, v);
                    }
                }
            }
            pivot_of_col[col] = Some(row);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); m.cols];
            v[free] = Rat::from(BigInt::from(1));
            for (col, pivot) in pivot_of_col.iter().enumerate() {
                if let Some(r) = pivot {
                    v[col] = -m.get(*r, free).clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive. Returns None for the zero vector.
pub fn primitive_integer_vector(v: &[Rat]) -> Option<Vec<BigInt>> {
    if v.iter().all(Rat::is_zero) {
        return None;
    }
    let mut den_lcm = BigInt::from(1);
    for x in v {
        den_lcm = den_lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&den_lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    for x in &mut ints {
        *x = &*x / &g;
    }
    let first = ints.iter().find(|x| !x.is_zero()).expect("nonzero vector");
    if first.is_negative() {
        for x in &mut ints {
            *x = -&*x;
        }
    }
    Some(ints)
}

//! Dense exact Gaussian elimination.

use crate::field::Field;

/// Incrementally maintained reduced row echelon basis of a subspace of `F^n`.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    n: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [F]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for k in 0..self.n {
                    if !row[k].is_zero() {
                        v[k] = v[k].clone() - c.clone() * row[k].clone();
                    }
                }
            }
        }
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for k in 0..self.n {
                    if !v[k].is_zero() {
                        row[k] = row[k].clone() - c.clone() * v[k].clone();
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Basis of the solution space of `row · x = 0` for all stored rows.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut is_pivot = vec![None; self.n];
        for (r, &p) in self.pivots.iter().enumerate() {
            is_pivot[p] = Some(r);
        }
        let mut out = Vec::new();
        for free in 0..self.n {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![F::zero(); self.n];
            v[free] = F::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    v[p] = -row[free].clone();
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn rank<F: Field>(rows: Vec<Vec<F>>) -> usize {
    let Some(n) = rows.first().map(Vec::len) else { return 0 };
    let mut e = Echelon::new(n);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn is_invertible<F: Field>(m: Vec<Vec<F>>) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && rank(m) == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Rat};

    fn r(n: i64) -> Rat {
        Rat::from_i64(n)
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)], vec![r(0), r(1), r(1)]];
        assert_eq!(rank(rows.clone()), 2);
        let mut e = Echelon::new(3);
        for x in rows.clone() {
            e.insert(x);
        }
        let ns = e.nullspace();
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let dot = (0..3).fold(r(0), |acc, k| acc + row[k].clone() * ns[0][k].clone());
            assert!(dot.is_zero());
        }
    }
}

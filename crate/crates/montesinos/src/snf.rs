//! Smith normal form over the integers and finitely generated abelian
//! groups presented by integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Diagonal of the Smith normal form of `m` (rows are relations, columns
/// generators). Entries are non-negative and each divides the next; zeros
/// come last.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let dims = rows.min(cols);
    let mut diag = Vec::with_capacity(dims);
    let mut t = 0;
    while t < dims {
        // smallest nonzero entry of the trailing submatrix becomes the pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }

        // clear the pivot row and column; a nonzero remainder becomes a
        // smaller pivot candidate, so restart the scan
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = &m[i][t] / &m[t][t];
            for j in t..cols {
                let sub = &q * &m[t][j];
                m[i][j] -= sub;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = &m[t][j] / &m[t][t];
            for row in m.iter_mut().skip(t) {
                let sub = &q * &row[t];
                row[j] -= sub;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }

        // divisibility: the pivot must divide the rest of the submatrix
        let mut fixed = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    for jj in t..cols {
                        let add = m[i][jj].clone();
                        m[t][jj] += add;
                    }
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue;
        }

        diag.push(m[t][t].abs());
        t += 1;
    }
    diag.resize(dims, BigInt::zero());
    diag
}

/// A finitely generated abelian group in invariant factor form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroup {
    /// Torsion coefficients, each at least 2, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroup {
    /// Cokernel of the presentation matrix (rows are relations among
    /// `m[0].len()` generators).
    pub fn from_presentation(m: Vec<Vec<BigInt>>) -> Self {
        let generators = if m.is_empty() { 0 } else { m[0].len() };
        let diag = smith_diagonal(m);
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        let invariant_factors = diag
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect();
        Self { invariant_factors, free_rank: generators - rank }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

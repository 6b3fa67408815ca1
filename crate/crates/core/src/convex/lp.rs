//! Seidel's randomized incremental linear programming for 1–4 variables.
//!
//! Every program carries explicit per-variable bounds, so it is always
//! bounded. When an added constraint is violated by the current optimum,
//! the new optimum lies on its boundary; we eliminate the variable with the
//! largest coefficient and recurse one dimension down. Eliminating a
//! variable keeps the remaining ones as original coordinates, so their
//! bounds stay axis-aligned; the bounds of the eliminated variable become
//! two ordinary constraints of the subproblem.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const MAX_DIM: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("linear program has dimension {0}, supported range is 1..={MAX_DIM}")]
    BadDimension(usize),
    #[error("constraint {index} has {got} coefficients, expected {expected}")]
    ShapeMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("variable bounds are empty or not finite")]
    BadBounds,
    #[error("linear program is infeasible")]
    Infeasible,
}

/// Halfspace `a·x ≤ b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace {
    pub a: Vec<f64>,
    pub b: f64,
}

impl Halfspace {
    pub fn new(a: impl Into<Vec<f64>>, b: f64) -> Self {
        Halfspace { a: a.into(), b }
    }
}

/// Maximize `objective·x` subject to `constraints` and `lower ≤ x ≤ upper`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Halfspace>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

#[derive(Clone, Copy)]
struct Row {
    a: [f64; MAX_DIM],
    b: f64,
}

impl LinearProgram {
    pub fn dim(&self) -> usize {
        self.objective.len()
    }

    /// Solves the program. The constraint order is shuffled with a ChaCha
    /// stream seeded by `seed`, so results are reproducible per seed.
    pub fn solve(&self, seed: u64) -> Result<LpSolution, LpError> {
        let d = self.dim();
        if d == 0 || d > MAX_DIM {
            return Err(LpError::BadDimension(d));
        }
        if self.lower.len() != d || self.upper.len() != d {
            return Err(LpError::BadBounds);
        }
        let mut lo = [0.0; MAX_DIM];
        let mut hi = [0.0; MAX_DIM];
        for k in 0..d {
            let (l, h) = (self.lower[k], self.upper[k]);
            if !l.is_finite() || !h.is_finite() || l > h {
                return Err(LpError::BadBounds);
            }
            lo[k] = l;
            hi[k] = h;
        }
        let scale = (0..d)
            .map(|k| lo[k].abs().max(hi[k].abs()))
            .fold(1.0f64, f64::max);

        let mut rows = Vec::with_capacity(self.constraints.len());
        for (index, h) in self.constraints.iter().enumerate() {
            if h.a.len() != d {
                return Err(LpError::ShapeMismatch {
                    index,
                    got: h.a.len(),
                    expected: d,
                });
            }
            let mut a = [0.0; MAX_DIM];
            a[..d].copy_from_slice(&h.a);
            rows.push(Row { a, b: h.b });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rows.shuffle(&mut rng);

        let mut c = [0.0; MAX_DIM];
        c[..d].copy_from_slice(&self.objective);
        let x = seidel(d, &c, &rows, &lo, &hi, scale).ok_or(LpError::Infeasible)?;
        let value = (0..d).map(|k| c[k] * x[k]).sum();
        Ok(LpSolution {
            x: x[..d].to_vec(),
            value,
        })
    }
}

fn row_violated(row: &Row, x: &[f64; MAX_DIM], d: usize, scale: f64) -> bool {
    let lhs: f64 = (0..d).map(|k| row.a[k] * x[k]).sum();
    let mag: f64 = (0..d).map(|k| row.a[k].abs()).sum::<f64>() * scale + row.b.abs();
    lhs - row.b > 1e-12 * (1.0 + mag)
}

fn seidel(
    d: usize,
    c: &[f64; MAX_DIM],
    rows: &[Row],
    lo: &[f64; MAX_DIM],
    hi: &[f64; MAX_DIM],
    scale: f64,
) -> Option<[f64; MAX_DIM]> {
    if d == 1 {
        return solve_1d(c[0], rows, lo[0], hi[0], scale);
    }
    let mut x = [0.0; MAX_DIM];
    for k in 0..d {
        x[k] = if c[k] > 0.0 { hi[k] } else { lo[k] };
    }
    for i in 0..rows.len() {
        let row = &rows[i];
        if !row_violated(row, &x, d, scale) {
            continue;
        }
        // pivot on the largest coefficient
        let (j, pivot) = (0..d)
            .map(|k| (k, row.a[k]))
            .max_by(|p, q| p.1.abs().total_cmp(&q.1.abs()))
            .expect("d >= 2");
        let amax: f64 = (0..d).map(|k| row.a[k].abs()).fold(0.0, f64::max);
        if amax <= 1e-14 * (1.0 + row.b.abs()) {
            // 0·x ≤ b with b < 0
            return None;
        }
        let keep: Vec<usize> = (0..d).filter(|&k| k != j).collect();
        let sub_d = d - 1;
        // x_j = (b - Σ a_k x_k) / pivot
        let subst = |r: &Row| -> Row {
            let f = r.a[j] / pivot;
            let mut a = [0.0; MAX_DIM];
            for (s, &k) in keep.iter().enumerate() {
                a[s] = r.a[k] - f * row.a[k];
            }
            Row {
                a,
                b: r.b - f * row.b,
            }
        };
        let mut sub_rows = Vec::with_capacity(i + 2);
        // bounds of the eliminated variable: x_j ≤ hi_j and -x_j ≤ -lo_j
        let mut up = Row {
            a: [0.0; MAX_DIM],
            b: hi[j],
        };
        up.a[j] = 1.0;
        let mut down = Row {
            a: [0.0; MAX_DIM],
            b: -lo[j],
        };
        down.a[j] = -1.0;
        sub_rows.push(subst(&up));
        sub_rows.push(subst(&down));
        sub_rows.extend(rows[..i].iter().map(subst));

        let mut sub_c = [0.0; MAX_DIM];
        let mut sub_lo = [0.0; MAX_DIM];
        let mut sub_hi = [0.0; MAX_DIM];
        for (s, &k) in keep.iter().enumerate() {
            sub_c[s] = c[k] - c[j] * row.a[k] / pivot;
            sub_lo[s] = lo[k];
            sub_hi[s] = hi[k];
        }
        let y = seidel(sub_d, &sub_c, &sub_rows, &sub_lo, &sub_hi, scale)?;
        let mut acc = row.b;
        for (s, &k) in keep.iter().enumerate() {
            x[k] = y[s];
            acc -= row.a[k] * y[s];
        }
        x[j] = (acc / pivot).clamp(lo[j], hi[j]);
    }
    Some(x)
}

fn solve_1d(c: f64, rows: &[Row], mut lo: f64, mut hi: f64, scale: f64) -> Option<[f64; MAX_DIM]> {
    for r in rows {
        let a = r.a[0];
        let tol = 1e-12 * (1.0 + a.abs() * scale + r.b.abs());
        if a.abs() <= 1e-14 * (1.0 + r.b.abs()) {
            if r.b < -tol {
                return None;
            }
            continue;
        }
        let bound = r.b / a;
        if a > 0.0 {
            hi = hi.min(bound);
        } else {
            lo = lo.max(bound);
        }
    }
    let slack = 1e-12 * (1.0 + scale);
    if lo > hi + slack {
        return None;
    }
    let mut x = [0.0; MAX_DIM];
    x[0] = if lo > hi {
        0.5 * (lo + hi)
    } else if c > 0.0 {
        hi
    } else {
        lo
    };
    Some(x)
}

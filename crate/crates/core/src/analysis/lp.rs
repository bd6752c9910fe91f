//! The small linear program behind the contraction success bounds:
//!
//! minimise   Σ_{j=2..r} (x_j − y_j)·f(n−j+1)
//! subject to 0 ≤ y_j ≤ x_j,  Σ x_j = 1,  γ·Σ y_j ≤ Σ j·x_j
//!
//! with `n ≥ γ ≥ r+1 > 2` and `f > 0`. Its optimum has the closed form
//! `min_j (1 − j/(γ−r+j))·f(n−j+1)`. [`lp_bruteforce`] recomputes the
//! optimum independently, from the extreme points and a feasibility grid.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Parameters of one program instance. `f_table[k]` holds `f(n − r + 1 + k)`
/// for `k = 0..r−1`, i.e. the arguments `n−r+1 ..= n−1` in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpInstance {
    pub r: u64,
    pub gamma: u64,
    pub n: u64,
    pub f_table: Vec<BigRational>,
}

impl LpInstance {
    pub fn new(r: u64, gamma: u64, n: u64, f_table: Vec<BigRational>) -> Result<Self> {
        let inst = LpInstance {
            r,
            gamma,
            n,
            f_table,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Instance with `f ≡ 1`.
    pub fn constant(r: u64, gamma: u64, n: u64) -> Result<Self> {
        let len = r.saturating_sub(1) as usize;
        Self::new(r, gamma, n, vec![BigRational::one(); len])
    }

    pub fn validate(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::input("r must be at least 2"));
        }
        if self.gamma <= self.r {
            return Err(Error::input(format!(
                "gamma = {} must be at least r + 1 = {}",
                self.gamma,
                self.r + 1
            )));
        }
        if self.n < self.gamma {
            return Err(Error::input("n must be at least gamma"));
        }
        if self.f_table.len() as u64 != self.r - 1 {
            return Err(Error::input(format!(
                "f table has {} entries, expected r - 1 = {}",
                self.f_table.len(),
                self.r - 1
            )));
        }
        if self.f_table.iter().any(|v| !v.is_positive()) {
            return Err(Error::input("f must be strictly positive"));
        }
        Ok(())
    }

    /// `f(n − j + 1)` for `j` in `2..=r`.
    pub fn f_for_size(&self, j: u64) -> &BigRational {
        // n-j+1 = n-r+1 + (r-j)
        &self.f_table[(self.r - j) as usize]
    }
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Random valid instance: `r ∈ 2..=6`, `γ ∈ r+1..=12`, `n ∈ γ..=γ+8`, and
/// `f` values `p/q` with `p, q ∈ 1..=30`.
pub fn random_lp_instance<R: Rng + ?Sized>(rng: &mut R) -> LpInstance {
    let r: u64 = rng.gen_range(2..=6);
    let gamma: u64 = rng.gen_range(r + 1..=12);
    let n: u64 = rng.gen_range(gamma..=gamma + 8);
    let f = (0..r - 1)
        .map(|_| crate::analysis::rational(rng.gen_range(1..=30u64), rng.gen_range(1..=30u64)))
        .collect();
    LpInstance::new(r, gamma, n, f).expect("parameters drawn inside the valid range")
}

/// `min_{2≤j≤r} (1 − j/(γ−r+j))·f(n−j+1)`.
pub fn lp_closed_form(inst: &LpInstance) -> Result<BigRational> {
    inst.validate()?;
    let (r, g) = (inst.r as i64, inst.gamma as i64);
    let best = (2..=r)
        .map(|j| (BigRational::one() - q(j, g - r + j)) * inst.f_for_size(j as u64))
        .min()
        .expect("r >= 2 gives a nonempty range");
    Ok(best)
}

/// Step of the feasibility grid over the `x` simplex, chosen so the grid
/// stays small for every supported `r`.
fn grid_denominator(r: u64) -> u64 {
    match r {
        2 | 3 => 256,
        4 => 48,
        5 => 24,
        6 => 16,
        7 => 10,
        _ => 8,
    }
}

/// Optimal objective for a fixed `x`: spend the `y` budget `Σ j·x_j / γ` on
/// the sizes with the largest `f` first (a fractional knapsack).
fn best_y_objective(inst: &LpInstance, x: &[BigRational]) -> BigRational {
    let g = BigRational::from_integer(BigInt::from(inst.gamma));
    let mut budget: BigRational = x
        .iter()
        .enumerate()
        .map(|(i, xi)| xi * BigRational::from_integer(BigInt::from(i as u64 + 2)))
        .sum::<BigRational>()
        / g;
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| {
        inst.f_for_size(b as u64 + 2)
            .cmp(inst.f_for_size(a as u64 + 2))
    });
    let mut obj: BigRational = x
        .iter()
        .enumerate()
        .map(|(i, xi)| xi * inst.f_for_size(i as u64 + 2))
        .sum();
    for i in order {
        if budget.is_zero() {
            break;
        }
        let take = if x[i] < budget {
            x[i].clone()
        } else {
            budget.clone()
        };
        obj -= &take * inst.f_for_size(i as u64 + 2);
        budget -= take;
    }
    obj
}

fn grid_points(dims: usize, den: u64, prefix: &mut Vec<u64>, out: &mut dyn FnMut(&[u64])) {
    let used: u64 = prefix.iter().sum();
    if prefix.len() + 1 == dims {
        prefix.push(den - used);
        out(prefix);
        prefix.pop();
        return;
    }
    for a in 0..=(den - used) {
        prefix.push(a);
        grid_points(dims, den, prefix, out);
        prefix.pop();
    }
}

/// Report from the brute-force evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpBruteforce {
    /// Minimum over the extreme-point candidates.
    pub optimum: BigRational,
    /// Minimum over the feasibility grid (always `≥ optimum`).
    pub grid_min: BigRational,
    pub candidates: usize,
}

/// Evaluates every candidate extreme point of the program and a dense grid of
/// feasible points. Supports `r ≤ 8`.
///
/// Extreme points have at most two slack constraints, `0 ≤ y_{j1}` and
/// `y_{j2} ≤ x_{j2}`. With `j1 = j2 = j` the point is `x_j = 1, y_j = j/γ`;
/// otherwise `x_{j1} = y_{j1} = j2/(γ − j1 + j2)` and `x_{j2} = 1 − x_{j1}`.
pub fn lp_bruteforce_report(inst: &LpInstance) -> Result<LpBruteforce> {
    inst.validate()?;
    if inst.r > 8 {
        return Err(Error::TooLarge(format!(
            "r = {} exceeds the r <= 8 guard",
            inst.r
        )));
    }
    let (r, g) = (inst.r as i64, inst.gamma as i64);
    let mut best: Option<BigRational> = None;
    let mut candidates = 0;
    let mut consider = |v: BigRational| {
        candidates += 1;
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    };
    for j in 2..=r {
        let y = q(j, g);
        consider((BigRational::one() - y) * inst.f_for_size(j as u64));
    }
    for j1 in 2..=r {
        for j2 in 2..=r {
            if j1 == j2 {
                continue;
            }
            let x1 = q(j2, g - j1 + j2);
            debug_assert!(x1 > BigRational::zero() && x1 < BigRational::one());
            consider((BigRational::one() - x1) * inst.f_for_size(j2 as u64));
        }
    }
    let optimum = best.expect("at least one candidate");

    let den = grid_denominator(inst.r);
    let dims = (inst.r - 1) as usize;
    let mut grid_min: Option<BigRational> = None;
    grid_points(dims, den, &mut Vec::with_capacity(dims), &mut |pt| {
        let x: Vec<BigRational> = pt.iter().map(|&a| q(a as i64, den as i64)).collect();
        let v = best_y_objective(inst, &x);
        if grid_min.as_ref().is_none_or(|b| v < *b) {
            grid_min = Some(v);
        }
    });
    let grid_min = grid_min.expect("grid is nonempty");
    if grid_min < optimum {
        return Err(Error::Input(format!(
            "grid point {grid_min} beats every extreme point ({optimum})"
        )));
    }
    Ok(LpBruteforce {
        optimum,
        grid_min,
        candidates,
    })
}

pub fn lp_bruteforce(inst: &LpInstance) -> Result<BigRational> {
    lp_bruteforce_report(inst).map(|r| r.optimum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        let a = LpInstance::constant(3, 4, 4).unwrap();
        assert_eq!(lp_closed_form(&a).unwrap(), q(1, 4));

        // r = 2: single term (1 - 2/γ) f(n-1)
        let b = LpInstance::new(2, 5, 7, vec![q(3, 1)]).unwrap();
        assert_eq!(lp_closed_form(&b).unwrap(), q(9, 5));

        // f(n-1) = 2, f(n-2) = 1 with table order f(n-2), f(n-1)
        let c = LpInstance::new(3, 5, 5, vec![q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(lp_closed_form(&c).unwrap(), q(2, 5));
        assert_eq!(lp_bruteforce(&c).unwrap(), q(2, 5));
    }

    #[test]
    fn bruteforce_matches_examples() {
        let a = LpInstance::constant(3, 4, 4).unwrap();
        let rep = lp_bruteforce_report(&a).unwrap();
        assert_eq!(rep.optimum, q(1, 4));
        assert_eq!(rep.candidates, 4);
        assert!(rep.grid_min >= rep.optimum);
    }

    #[test]
    fn preconditions() {
        assert!(LpInstance::constant(3, 3, 5).is_err());
        assert!(LpInstance::constant(1, 3, 5).is_err());
        assert!(LpInstance::constant(3, 6, 5).is_err());
        assert!(LpInstance::new(3, 5, 5, vec![q(1, 1), q(0, 1)]).is_err());
        assert!(LpInstance::new(3, 5, 5, vec![q(1, 1), q(-1, 2)]).is_err());
    }
}

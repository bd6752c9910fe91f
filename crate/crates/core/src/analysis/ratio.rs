use crate::analysis::binomial::binomial;
use crate::error::{Error, Result};

/// Checks `C(n−e,σ)/C(n,σ) · 1/C(n−e+1,2σ) ≥ 1/C(n,2σ)` exactly, by
/// cross-multiplying: `C(n−e,σ)·C(n,2σ) ≥ C(n,σ)·C(n−e+1,2σ)`.
///
/// Requires positive integers with `e ≥ 2` and `n − e + 1 > 2σ`.
pub fn ratio_inequality_check(n: u64, e: u64, sigma: u64) -> Result<bool> {
    if n == 0 || sigma == 0 || e < 2 || e > n || n - e < 2 * sigma {
        return Err(Error::input(format!(
            "(n, e, sigma) = ({n}, {e}, {sigma}) violates e >= 2 and n - e + 1 > 2 sigma"
        )));
    }
    let lhs = binomial(n - e, sigma) * binomial(n, 2 * sigma);
    let rhs = binomial(n, sigma) * binomial(n - e + 1, 2 * sigma);
    Ok(lhs >= rhs)
}

/// Every valid `(n, e, σ)` with `n ≤ max_n`, with its check result.
pub fn ratio_sweep(max_n: u64) -> Vec<((u64, u64, u64), bool)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for e in 2..=n {
            let mut sigma = 1;
            while n - e + 1 > 2 * sigma {
                let ok =
                    ratio_inequality_check(n, e, sigma).expect("hypothesis holds by construction");
                out.push(((n, e, sigma), ok));
                sigma += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(ratio_inequality_check(10, 2, 2).unwrap());
        assert!(ratio_inequality_check(9, 2, 1).unwrap());
        assert!(ratio_inequality_check(5, 2, 2).is_err());
        assert!(ratio_inequality_check(10, 1, 2).is_err());
    }
}

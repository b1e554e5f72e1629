//! Quantum integers, factorials, binomials and Pochhammer symbols as
//! Laurent polynomials in `u = q^{1/4}`.

use super::laurent::QuarterLaurent;
use crate::error::{precondition, Result};

/// `{n} = v^n - v^{-n}`.
pub fn qbrace(n: i64) -> QuarterLaurent {
    QuarterLaurent::v_pow(n) - QuarterLaurent::v_pow(-n)
}

/// The quantum integer `[n] = {n}/{1} = v^{n-1} + v^{n-3} + … + v^{1-n}`; `[-n] = -[n]`.
pub fn qint(n: i64) -> QuarterLaurent {
    let mut p = QuarterLaurent::zero();
    let m = n.abs();
    for k in 0..m {
        p.add_term(2 * (m - 1 - 2 * k), num_traits::One::one());
    }
    if n < 0 {
        -p
    } else {
        p
    }
}

/// The quantum factorial `[n]! = [1][2]…[n]`.
pub fn qfact(n: u32) -> QuarterLaurent {
    (1..=n as i64).fold(QuarterLaurent::one(), |acc, k| &acc * &qint(k))
}

/// The quantum binomial `[n]!/([k]![n-k]!)`, by exact division.
pub fn qbinom(n: u32, k: u32) -> Result<QuarterLaurent> {
    if k > n {
        return precondition(format!("qbinom needs 0 <= k <= n, got n={n}, k={k}"));
    }
    let den = &qfact(k) * &qfact(n - k);
    qfact(n).exact_div(&den)
}

/// `∏_{j=0}^{n-1} (1 - q^{a + j·step})` with `a` and `step` given in quarters
/// (`a_quarters = 4a`).
pub fn pochhammer_step(a_quarters: i64, step_quarters: i64, n: u32) -> QuarterLaurent {
    let mut acc = QuarterLaurent::one();
    for j in 0..n as i64 {
        let f = QuarterLaurent::one() - QuarterLaurent::u_pow(a_quarters + j * step_quarters);
        acc = &acc * &f;
    }
    acc
}

/// `∏_{j=0}^{n-1} (1 - q^{a+j})` for a quarter-integer `a = a_quarters/4`.
pub fn pochhammer(a_quarters: i64, n: u32) -> QuarterLaurent {
    pochhammer_step(a_quarters, 4, n)
}

/// `(q^a; q)_n` for integer `a`.
pub fn q_pochhammer(a: i64, n: u32) -> QuarterLaurent {
    pochhammer(4 * a, n)
}

/// Operation selector for [`qcalc`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QCalc {
    QInt(i64),
    QFact(u32),
    QBinom(u32, u32),
    Pochhammer { a_quarters: i64, n: u32 },
}

/// Dispatches one of the q-calculus primitives.
pub fn qcalc(kind: QCalc) -> Result<QuarterLaurent> {
    match kind {
        QCalc::QInt(n) => Ok(qint(n)),
        QCalc::QFact(n) => Ok(qfact(n)),
        QCalc::QBinom(n, k) => qbinom(n, k),
        QCalc::Pochhammer { a_quarters, n } => Ok(pochhammer(a_quarters, n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(qint(0), QuarterLaurent::zero());
        assert_eq!(qint(2), QuarterLaurent::u_pow(2) + QuarterLaurent::u_pow(-2));
        assert_eq!(qbinom(2, 1).unwrap(), qint(2));
        assert!(qbinom(1, 2).is_err());
    }

    #[test]
    fn qint_is_brace_ratio() {
        for n in -8..=8 {
            assert_eq!(qbrace(n).exact_div(&qbrace(1)).unwrap(), qint(n));
        }
    }

    #[test]
    fn pascal_rule() {
        // [n choose k] = v^{k} [n-1 choose k] + v^{-(n-k)} [n-1 choose k-1]
        for n in 1..9u32 {
            for k in 1..n {
                let lhs = qbinom(n, k).unwrap();
                let rhs = &QuarterLaurent::v_pow(k as i64) * &qbinom(n - 1, k).unwrap()
                    + &QuarterLaurent::v_pow(-((n - k) as i64)) * &qbinom(n - 1, k - 1).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pochhammer_small() {
        let p = q_pochhammer(1, 2);
        assert_eq!(p, QuarterLaurent::from_int_terms(&[(0, 1), (4, -1), (8, -1), (12, 1)]));
        assert_eq!(pochhammer(2, 0), QuarterLaurent::one());
        assert_eq!(pochhammer_step(4, 8, 2), QuarterLaurent::from_int_terms(&[(0, 1), (4, -1), (12, -1), (16, 1)]));
    }
}

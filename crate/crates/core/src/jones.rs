//! Colored Jones values for the unknot and Hopf chains, the cyclotomic
//! basis `A(n,k)`, and the triangular solve for the coefficients `C(k)`.

use crate::error::{precondition, Error, Result};
use crate::exactalg::qcalc::{q_pochhammer, qint};
use crate::exactalg::QuarterLaurent;

/// Link families with closed-form colored Jones polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JonesFamily {
    /// The unknot with the given framing.
    Unknot { framing: i64 },
    /// A chain of unknots, consecutive ones forming Hopf links, with the last
    /// one linked to an extra zero-framed unknot of fixed color `d`.
    HopfChain { framings: Vec<i64>, d: u64 },
}

impl JonesFamily {
    pub fn hopf_chain(framings: Vec<i64>, d: u64) -> Result<Self> {
        if framings.is_empty() {
            return precondition("Hopf chain needs at least one component");
        }
        if d == 0 {
            return precondition("terminal color must be positive");
        }
        Ok(JonesFamily::HopfChain { framings, d })
    }

    /// Number of components with varying colors.
    pub fn components(&self) -> usize {
        match self {
            JonesFamily::Unknot { .. } => 1,
            JonesFamily::HopfChain { framings, .. } => framings.len(),
        }
    }

    /// Framings of the varying components.
    pub fn framings(&self) -> Vec<i64> {
        match self {
            JonesFamily::Unknot { framing } => vec![*framing],
            JonesFamily::HopfChain { framings, .. } => framings.clone(),
        }
    }

    /// `J(colors)`, framing factors included.
    pub fn value(&self, colors: &[u64]) -> Result<QuarterLaurent> {
        if colors.len() != self.components() {
            return precondition(format!("expected {} colors, got {}", self.components(), colors.len()));
        }
        match self {
            JonesFamily::Unknot { framing } => Ok(jones_unknot_framed(colors[0], *framing)?),
            JonesFamily::HopfChain { framings, d } => jones_hopf_chain(colors, *d, framings),
        }
    }
}

fn framing_factor(n: u64, f: i64) -> QuarterLaurent {
    let n = n as i64;
    QuarterLaurent::u_pow(f * (n * n - 1))
}

/// `J_U(n) = [n]`.
pub fn jones_unknot(n: u64) -> Result<QuarterLaurent> {
    jones_unknot_framed(n, 0)
}

/// `q^{f(n²-1)/4}[n]`, the unknot with framing `f`.
pub fn jones_unknot_framed(n: u64, f: i64) -> Result<QuarterLaurent> {
    if n == 0 {
        return precondition("colors start at 1");
    }
    Ok(framing_factor(n, f) * qint(n as i64))
}

/// `[j_1]·∏[j_i j_{i+1}]/[j_i]·[j_n d]/[j_n]` times `∏ q^{m_i(j_i²-1)/4}`.
pub fn jones_hopf_chain(colors: &[u64], d: u64, framings: &[i64]) -> Result<QuarterLaurent> {
    if colors.is_empty() || colors.len() != framings.len() {
        return precondition("colors and framings must be nonempty and of equal length");
    }
    if d == 0 || colors.contains(&0) {
        return precondition("colors start at 1");
    }
    let mut acc = qint(colors[0] as i64);
    let mut next = colors.iter().skip(1).copied().chain(std::iter::once(d));
    for &j in colors {
        let k = next.next().unwrap();
        let num = &acc * &qint((j * k) as i64);
        acc = num
            .exact_div(&qint(j as i64))
            .map_err(|_| Error::InexactDivision(format!("[{}]/[{j}] in Hopf chain", j * k)))?;
    }
    for (&j, &m) in colors.iter().zip(framings) {
        acc = acc * framing_factor(j, m);
    }
    Ok(acc)
}

/// `A(n,k) = ∏_{i=0}^{k}(q^n + q^{-n} - q^i - q^{-i}) / ((1-q)(q^{k+1};q)_{k+1})`.
#[allow(non_snake_case)]
pub fn cyclotomic_A(n: u64, k: u64) -> Result<QuarterLaurent> {
    if n == 0 {
        return precondition("colors start at 1");
    }
    if k >= n {
        return Ok(QuarterLaurent::zero());
    }
    let (n, k) = (n as i64, k as i64);
    let mut num = QuarterLaurent::one();
    for i in 0..=k {
        let f = QuarterLaurent::from_int_terms(&[(4 * n, 1), (-4 * n, 1), (4 * i, -1), (-4 * i, -1)]);
        num = num * f;
    }
    let den = QuarterLaurent::from_int_terms(&[(0, 1), (4, -1)]) * q_pochhammer(k + 1, k as u32 + 1);
    num.exact_div(&den)
        .map_err(|_| Error::InexactDivision(format!("A({n},{k}) is not a Laurent polynomial")))
}

/// Solved cyclotomic coefficients `C(0..T)` with per-entry integrality flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycCoeffs {
    pub entries: Vec<QuarterLaurent>,
    /// `integral[k]`: `C(k)(1-q)/(q^{k+1};q)_{k+1}` lies in `Z[q^{±1}]`.
    pub integral: Vec<bool>,
}

impl CycCoeffs {
    pub fn horizon(&self) -> usize {
        self.entries.len()
    }

    pub fn all_integral(&self) -> bool {
        self.integral.iter().all(|&b| b)
    }
}

/// `C(k)(1-q)/(q^{k+1};q)_{k+1} ∈ Z[q^{±1}]`.
pub fn integrality_flag(c: &QuarterLaurent, k: u64) -> bool {
    let den = q_pochhammer(k as i64 + 1, k as u32 + 1);
    let num = c * &QuarterLaurent::from_int_terms(&[(0, 1), (4, -1)]);
    match num.exact_div(&den) {
        Ok(p) => p.is_integral() && p.exps_divisible_by(4),
        Err(_) => false,
    }
}

/// Solves `J(n)[n] = Σ_{k<n} C(k)A(n,k)` for `n = 1..=T`, given `values[n-1] = J(n)`.
///
/// The system is triangular with diagonal `A(n,n-1)`. Coefficients are
/// sought as Laurent polynomials; a non-Laurent quotient is reported as
/// an inconsistent system.
pub fn cyclotomic_coeffs(values: &[QuarterLaurent], horizon: usize) -> Result<CycCoeffs> {
    if values.len() < horizon {
        return precondition(format!("need Jones values for colors 1..={horizon}, got {}", values.len()));
    }
    let mut a_rows: Vec<Vec<QuarterLaurent>> = Vec::with_capacity(horizon);
    let mut entries: Vec<QuarterLaurent> = Vec::with_capacity(horizon);
    for n in 1..=horizon as u64 {
        let row: Vec<QuarterLaurent> = (0..n).map(|k| cyclotomic_A(n, k)).collect::<Result<_>>()?;
        let target = &values[n as usize - 1] * &qint(n as i64);
        let mut rest = target;
        for (c, a) in entries.iter().zip(&row) {
            rest = rest - c * a;
        }
        let c = rest.exact_div(&row[n as usize - 1]).map_err(|_| {
            Error::Inconsistent(format!("no Laurent coefficient C({}) solves color {n}", n - 1))
        })?;
        entries.push(c);
        a_rows.push(row);
    }
    for (n, row) in a_rows.iter().enumerate() {
        let mut s = QuarterLaurent::zero();
        for (c, a) in entries.iter().zip(row) {
            s = s + c * a;
        }
        if s != &values[n] * &qint(n as i64 + 1) {
            return Err(Error::Inconsistent(format!("reconstruction fails at color {}", n + 1)));
        }
    }
    let integral = entries.iter().enumerate().map(|(k, c)| integrality_flag(c, k as u64)).collect();
    Ok(CycCoeffs { entries, integral })
}

/// `J_U(n) = [n]` for `n = 1..=T`.
pub fn unknot_values(horizon: usize) -> Vec<QuarterLaurent> {
    (1..=horizon as i64).map(qint).collect()
}

/// Hopf link with one component of fixed color `j`: `J(n) = [nj]`.
pub fn hopf_pair_values(j: u64, horizon: usize) -> Vec<QuarterLaurent> {
    (1..=horizon as i64).map(|n| qint(n * j as i64)).collect()
}

/// `C(k)` of the Hopf link with fixed color `j` (`j = 1` gives the unknot).
pub fn hopf_pair_coeffs(j: u64, horizon: usize) -> Result<CycCoeffs> {
    cyclotomic_coeffs(&hopf_pair_values(j, horizon), horizon)
}

/// `(q^{k+1};q)_{k+1}/(1-q)`, the divisor guaranteed for `C(k)`.
pub fn coeff_divisor(k: u64) -> QuarterLaurent {
    q_pochhammer(k as i64 + 1, k as u32 + 1)
        .exact_div(&QuarterLaurent::from_int_terms(&[(0, 1), (4, -1)]))
        .expect("(1-q) divides the Pochhammer symbol")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_examples() {
        assert_eq!(jones_unknot(1).unwrap(), QuarterLaurent::one());
        assert_eq!(jones_unknot(2).unwrap(), QuarterLaurent::v_pow(1) + QuarterLaurent::v_pow(-1));
        assert!(jones_unknot(0).is_err());
        let f = jones_unknot_framed(3, 2).unwrap();
        assert_eq!(f, QuarterLaurent::q_pow(4) * qint(3));
    }

    #[test]
    fn hopf_chain_examples() {
        for j in 1..8 {
            assert_eq!(jones_hopf_chain(&[j], 1, &[0]).unwrap(), qint(j as i64));
            assert_eq!(jones_hopf_chain(&[j], 3, &[0]).unwrap(), qint(3 * j as i64));
            let framed = jones_hopf_chain(&[j], 1, &[5]).unwrap();
            assert_eq!(framed, jones_unknot_framed(j, 5).unwrap());
        }
        // two-component chain against a direct product of quantum integers
        let v = jones_hopf_chain(&[2, 3], 5, &[0, 0]).unwrap();
        let expect = (qint(2) * qint(6) * qint(15)).exact_div(&(qint(2) * qint(3))).unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn strong_integrality() {
        for c1 in [1u64, 3, 5] {
            for c2 in [1u64, 3] {
                for m in [-2i64, 2, 4] {
                    let v = jones_hopf_chain(&[c1, c2], 3, &[m, 2]).unwrap();
                    assert!(v.exps_divisible_by(4) && v.is_integral(), "{c1} {c2} {m}");
                }
            }
        }
        for c in 1..6u64 {
            let v = jones_hopf_chain(&[c, c + 1], 2, &[3, -1]).unwrap();
            assert!(v.single_quarter_class().is_some());
        }
    }

    #[test]
    fn a_examples_and_vanishing() {
        assert_eq!(cyclotomic_A(1, 0).unwrap(), QuarterLaurent::q_pow(-1));
        assert!(cyclotomic_A(2, 3).unwrap().is_zero());
        assert_eq!(cyclotomic_A(2, 0).unwrap(), QuarterLaurent::from_int_terms(&[(0, 1), (-4, 2), (-8, 1)]));
        for n in 1..=12u64 {
            for k in 0..=12u64 {
                assert_eq!(cyclotomic_A(n, k).unwrap().is_zero(), k >= n, "n={n} k={k}");
            }
            let sq = qint(n as i64).pow(2) * QuarterLaurent::q_pow(-1);
            assert_eq!(cyclotomic_A(n, 0).unwrap(), sq);
        }
    }

    #[test]
    fn diagonal_entry() {
        for k in 0..8u64 {
            let expect = QuarterLaurent::q_pow(-((k as i64 + 1).pow(2))) * q_pochhammer(2, k as u32);
            assert_eq!(cyclotomic_A(k + 1, k).unwrap(), expect);
        }
    }

    #[test]
    fn unknot_coefficients() {
        let c = cyclotomic_coeffs(&unknot_values(1), 1).unwrap();
        assert_eq!(c.entries[0], QuarterLaurent::q_pow(1));
        let c = cyclotomic_coeffs(&unknot_values(8), 8).unwrap();
        assert!(c.all_integral());
        assert!(c.entries[1..].iter().all(|e| e.is_zero()));
    }

    #[test]
    fn hopf_coefficients_integral() {
        let c = hopf_pair_coeffs(3, 9).unwrap();
        assert!(c.all_integral(), "{:?}", c.integral);
        let c = hopf_pair_coeffs(5, 6).unwrap();
        assert!(c.all_integral());
    }

    #[test]
    fn non_jones_sequence_rejected() {
        let mut vals = unknot_values(4);
        vals[2] = QuarterLaurent::constant(7);
        assert!(cyclotomic_coeffs(&vals, 4).is_err());
    }
}

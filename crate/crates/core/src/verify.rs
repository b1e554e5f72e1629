//! Verification suites. Each suite pits a closed form or structural claim
//! against an independent route over a fixed grid and reports the first
//! disagreement in canonical serialization.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::qcalc::qint;
use crate::exactalg::{CycNumber, QuarterLaurent, RootSpec, Theory};
use crate::frobenius::{expected_lattice_index, lattice_index, qth_root, rigidity_holds, QuotientElement};
use crate::gauss::{gamma, gamma_is_zero, gauss_brute, gauss_closed, reciprocity_check, reciprocity_grid, GammaMode};
use crate::habiro::{laplace_identity_check, q_eval_qbk, unified_diagonal_eval, unified_lens, Eps, ZLaurent};
use crate::jones::{cyclotomic_A, cyclotomic_coeffs, hopf_pair_values, jones_hopf_chain, unknot_values};
use crate::numtheory::{as_prime_power, gcd, lens_star, star_inverse};
use crate::wrt::{chain_linking_matrix, lens_tau_prime_closed, signature, Evaluator, LensPiece, ManifoldSpec};

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub suite: String,
    pub run: usize,
    pub passed: usize,
    /// Inputs and both values of the first failing case.
    pub first_failure: Option<String>,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.run
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{} passed", self.suite, self.passed, self.run)?;
        if let Some(fail) = &self.first_failure {
            write!(f, "; first failure: {fail}")?;
        }
        Ok(())
    }
}

/// Suite names with a one-line description, in acceptance order.
pub const SUITES: [(&str, &str); 14] = [
    ("gauss-closed-vs-brute", "closed Gauss sums against direct summation"),
    ("gamma", "closed γ_b against direct summation, and the zero criterion"),
    ("reciprocity", "one dimensional Gauss sum reciprocity"),
    ("lens-closed-vs-brute", "lens space closed forms against state sums"),
    ("lens-normalization", "τ' of L(b,1) and L(-b,1)"),
    ("su2-so3", "SU(2) = SO(3)·SU(2)(e_3) at odd orders"),
    ("lens-invariance", "homeomorphism invariance and orientation reversal"),
    ("cyclotomic-coeffs", "integrality and reconstruction of cyclotomic coefficients"),
    ("qbk", "ring membership and Galois equivariance of Q_{b,k}"),
    ("laplace", "Laplace transform identity on monomials"),
    ("frobenius", "lattice index and b-th roots of q"),
    ("unified-lens", "unified lens invariants against state sums"),
    ("unified-diagonal", "unified diagonal assembly against state sums"),
    ("float-sanity", "complex embeddings against floating point state sums"),
];

/// Runs the named suite.
pub fn run_suite(name: &str) -> Result<RunReport> {
    let outcomes = match name {
        "gauss-closed-vs-brute" => suite_gauss(),
        "gamma" => suite_gamma(),
        "reciprocity" => suite_reciprocity(),
        "lens-closed-vs-brute" => suite_lens_closed(),
        "lens-normalization" => suite_lens_normalization(),
        "su2-so3" => suite_su2_so3(),
        "lens-invariance" => suite_invariance(),
        "cyclotomic-coeffs" => suite_cyclotomic(),
        "qbk" => suite_qbk(),
        "laplace" => suite_laplace(),
        "frobenius" => suite_frobenius(),
        "unified-lens" => suite_unified_lens(),
        "unified-diagonal" => suite_unified_diagonal(),
        "float-sanity" => suite_float(100, 0x5eed),
        _ => return Err(Error::Parse(format!("unknown suite {name:?}"))),
    };
    Ok(report(name, outcomes))
}

type Outcome = std::result::Result<(), String>;

fn report(name: &str, outcomes: Vec<Outcome>) -> RunReport {
    let run = outcomes.len();
    let passed = outcomes.iter().filter(|o| o.is_ok()).count();
    let first_failure = outcomes.into_iter().find_map(|o| o.err());
    RunReport { suite: name.to_string(), run, passed, first_failure }
}

/// Evaluates independent work units in parallel and keeps the case order.
fn run_units<U, F>(units: Vec<U>, f: F) -> Vec<Outcome>
where
    U: Sync,
    F: Fn(&U) -> Vec<Outcome> + Sync + Send,
{
    units.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
}

fn same(what: impl fmt::Display, lhs: &Result<CycNumber>, rhs: &Result<CycNumber>) -> Outcome {
    match (lhs, rhs) {
        (Ok(x), Ok(y)) if x == y => Ok(()),
        (Ok(x), Ok(y)) => Err(format!("{what}: {} != {}", x.to_canonical_string(), y.to_canonical_string())),
        (Err(e), _) | (_, Err(e)) => Err(format!("{what}: {e}")),
    }
}

fn holds(what: impl fmt::Display, r: Result<bool>) -> Outcome {
    match r {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("{what}: does not hold")),
        Err(e) => Err(format!("{what}: {e}")),
    }
}

/// One root per primitive `r`-th root of unity, each lifted to an exponent
/// that is a unit modulo `4r`.
pub fn primitive_roots(r: u64, theory: Theory) -> Vec<RootSpec> {
    let ri = r as i64;
    (1..=ri)
        .filter(|&l| gcd(l, ri) == 1)
        .map(|l| {
            let lift = (0..4).map(|t| l + t * ri).find(|&m| gcd(m, 4 * ri) == 1).expect("unit lift");
            RootSpec::new(r, lift, theory).expect("valid root")
        })
        .collect()
}

fn theory_roots(theory: Theory, rs: impl IntoIterator<Item = u64>) -> Vec<RootSpec> {
    rs.into_iter()
        .filter(|r| theory == Theory::SU2 || r % 2 == 1)
        .flat_map(|r| primitive_roots(r, theory))
        .collect()
}

fn coprime_residues(b: i64) -> Vec<i64> {
    (1..b.abs()).flat_map(|a| [a, -a]).filter(|&a| gcd(a, b) == 1).collect()
}

fn galois_image(x: &CycNumber, r: u64, l: i64) -> Result<CycNumber> {
    let n = 4 * r;
    if !n.is_multiple_of(x.modulus()) {
        return Err(Error::Inconsistent(format!("value at modulus {} outside Q(e_{n})", x.modulus())));
    }
    x.lift(n).galois(l)
}

fn suite_gauss() -> Vec<Outcome> {
    run_units((1..=40u64).collect(), |&r| {
        let mut out = Vec::new();
        for x in 1..=12 {
            for y in 0..=12 {
                out.push(same(format!("G({r},{x},{y})"), &Ok(gauss_closed(r, x, y)), &Ok(gauss_brute(r, x, y))));
            }
        }
        out
    })
}

fn suite_gamma() -> Vec<Outcome> {
    let mut roots = theory_roots(Theory::SO3, 1..=35);
    roots.extend(theory_roots(Theory::SU2, 1..=35));
    run_units(roots, |xi| {
        let mut out = Vec::new();
        for b in -20..=20 {
            let brute = gamma(b, xi, GammaMode::Brute);
            out.push(same(format!("gamma b={b} {xi}"), &gamma(b, xi, GammaMode::Closed), &brute));
            let zero = brute.as_ref().map(CycNumber::is_zero).unwrap_or(false);
            out.push(if zero == gamma_is_zero(b, xi) {
                Ok(())
            } else {
                Err(format!("gamma zero criterion b={b} {xi}: value zero = {zero}"))
            });
        }
        out
    })
}

fn suite_reciprocity() -> Vec<Outcome> {
    run_units(reciprocity_grid(12), |&(m, n, psi, phi)| {
        vec![holds(format!("reciprocity m={m} n={n} ψ={psi} φ={phi}"), reciprocity_check(m, n, psi, phi))]
    })
}

fn lens_grid(theory: Theory) -> (Vec<i64>, Vec<u64>) {
    match theory {
        Theory::SO3 => ((2..=12).flat_map(|b| [b, -b]).collect(), vec![3, 5, 7, 9, 11]),
        Theory::SU2 => ([3, 5, 7, 9].into_iter().flat_map(|b| [b, -b]).collect(), (3..=8).collect()),
    }
}

fn suite_lens_closed() -> Vec<Outcome> {
    let mut units = Vec::new();
    for theory in [Theory::SO3, Theory::SU2] {
        let (bs, rs) = lens_grid(theory);
        for xi in theory_roots(theory, rs) {
            units.push((xi, bs.clone()));
        }
    }
    run_units(units, |(xi, bs)| {
        let mut out = Vec::new();
        let mut ev = match Evaluator::new(xi) {
            Ok(ev) => ev,
            Err(e) => return vec![Err(format!("{xi}: {e}"))],
        };
        for &b in bs {
            for a in coprime_residues(b) {
                for d in [1u64, 3, 5] {
                    let what = format!("L({b},{a}) d={d} {xi}");
                    let closed = lens_tau_prime_closed(b, a, d, xi);
                    let piece = LensPiece::new(b, a, d).expect("grid piece");
                    out.push(same(&what, &closed, &ev.tau_lens_normalized(&piece)));
                    if as_prime_power(b).is_some() {
                        let m = ManifoldSpec::lens(b, a, d).expect("grid piece");
                        out.push(same(format!("τ' {what}"), &closed, &ev.tau_prime(&m).map(|v| v.value)));
                    }
                }
            }
        }
        out
    })
}

/// `τ_{L(-b,1)}/τ_{L(b,1)}` for `b >= 2` in closed form.
fn negative_lens_value(b: i64, xi: &RootSpec) -> Result<CycNumber> {
    let r = xi.r as i64;
    let c = gcd(b, r);
    let chi = (c == 1) as i64;
    let bs = if chi == 1 { star_inverse(b, r)? } else { 0 };
    let parity = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(match xi.theory {
        Theory::SO3 => xi.xi_pow(star_inverse(2, r)? * (b - 3) + bs * chi).scale_int(parity((c + 1) / 2 - chi)),
        Theory::SU2 => xi.xi_pow((b - 3) / 2 + bs * chi).scale_int(parity((b / c + 1) / 2 + chi)),
    })
}

fn suite_lens_normalization() -> Vec<Outcome> {
    let mut roots = theory_roots(Theory::SO3, [3, 5, 7, 9, 11]);
    roots.extend(theory_roots(Theory::SU2, 3..=8));
    run_units(roots, |xi| {
        let mut out = Vec::new();
        let mut ev = Evaluator::new(xi).expect("admissible root");
        let one = Ok(CycNumber::from_integer(1));
        for b in 1..=12i64 {
            if xi.theory == Theory::SU2 && b % 2 == 0 {
                continue;
            }
            // composite b: τ' over prime powers differs from τ/τ_{L(b,1)}, see the README
            if as_prime_power(b).is_some() || b == 1 {
                let m = ManifoldSpec::lens(b, 1, 1).expect("lens");
                out.push(same(format!("τ'(L({b},1)) {xi}"), &ev.tau_prime(&m).map(|v| v.value), &one));
            }
            if b >= 2 {
                let expect = negative_lens_value(b, xi);
                let p = LensPiece::new(-b, 1, 1).expect("lens");
                out.push(same(format!("τ(L(-{b},1))/τ(L({b},1)) {xi}"), &ev.tau_lens_normalized(&p), &expect));
                out.push(same(format!("closed L(-{b},1) {xi}"), &lens_tau_prime_closed(-b, 1, 1, xi), &expect));
            }
        }
        out
    })
}

fn odd_lens_list() -> Vec<ManifoldSpec> {
    let mut v = Vec::new();
    for b in [3i64, 5, 7, 9, 11] {
        for a in (1..b).filter(|&a| gcd(a, b) == 1) {
            for s in [1, -1] {
                v.push(ManifoldSpec::lens(s * b, a, 1).expect("lens"));
            }
        }
    }
    v
}

fn suite_su2_so3() -> Vec<Outcome> {
    use crate::wrt::su2_so3_relation_check;
    let lenses = odd_lens_list();
    let mut units: Vec<(RootSpec, Vec<ManifoldSpec>)> = Vec::new();
    for xi in theory_roots(Theory::SO3, [3, 5, 7, 9, 11]) {
        units.push((xi, lenses.clone()));
    }
    // connected sums at the first primitive root of each order
    for r in [3u64, 5, 7, 9, 11] {
        let xi = RootSpec::new(r, 1, Theory::SO3).expect("root");
        for (i, m) in lenses.iter().enumerate() {
            let sums = lenses[i + 1..].iter().map(|n| m.connect(n)).collect();
            units.push((xi, sums));
        }
    }
    run_units(units, |(xi, ms)| {
        ms.iter().map(|m| holds(format!("{m} {xi}"), su2_so3_relation_check(m, xi))).collect()
    })
}

fn suite_invariance() -> Vec<Outcome> {
    let mut roots = theory_roots(Theory::SO3, [3, 5, 7, 9, 11]);
    roots.extend(theory_roots(Theory::SU2, 3..=8));
    run_units(roots, |xi| {
        let mut out = Vec::new();
        let mut ev = Evaluator::new(xi).expect("admissible root");
        let n = 4 * xi.r as i64;
        for b in 2..=12i64 {
            if xi.theory == Theory::SU2 && b % 2 == 0 {
                continue;
            }
            for a in (1..b).filter(|&a| gcd(a, b) == 1) {
                let mut tau = |b: i64, a: i64| ev.tau_lens(&LensPiece::new(b, a, 1).expect("piece"));
                let t = tau(b, a);
                out.push(same(format!("L({b},{a}) vs L({b},{}) {xi}", a + b), &tau(b, a + b), &t));
                let inv = lens_star(a, b).expect("coprime");
                out.push(same(format!("L({b},{a}) vs L({b},{inv}) {xi}"), &tau(b, inv), &t));
                let rev = tau(-b, a);
                out.push(same(format!("L(-{b},{a}) vs conj {xi}"), &rev, &t.as_ref().map(CycNumber::conj).map_err(clone_err)));
                let gal = t.as_ref().map_err(clone_err).and_then(|x| galois_image(x, xi.r, n - 1));
                out.push(same(format!("L(-{b},{a}) vs σ_{{-1}} {xi}"), &rev, &gal));
            }
        }
        out
    })
}

fn clone_err(e: &Error) -> Error {
    e.clone()
}

fn suite_cyclotomic() -> Vec<Outcome> {
    const HORIZON: usize = 12;
    let families: Vec<(String, Vec<QuarterLaurent>, u64)> = std::iter::once(("unknot".to_string(), unknot_values(HORIZON), 1))
        .chain([1u64, 3, 5, 7].into_iter().map(|j| (format!("Hopf j={j}"), hopf_pair_values(j, HORIZON), j)))
        .collect();
    run_units(families, |(name, values, j)| {
        let mut out = Vec::new();
        // the values themselves against the Hopf chain state
        for (n, v) in values.iter().enumerate() {
            let chain = jones_hopf_chain(&[n as u64 + 1], *j, &[0]);
            out.push(match chain {
                Ok(c) if &c == v => Ok(()),
                Ok(_) => Err(format!("{name}: J({}) differs from the Hopf chain value", n + 1)),
                Err(e) => Err(format!("{name}: {e}")),
            });
        }
        let coeffs = match cyclotomic_coeffs(values, HORIZON) {
            Ok(c) => c,
            Err(e) => {
                out.push(Err(format!("{name}: {e}")));
                return out;
            }
        };
        for k in 0..=10 {
            out.push(if coeffs.integral[k] { Ok(()) } else { Err(format!("{name}: C({k}) fails integrality")) });
        }
        for n in 1..=HORIZON as u64 {
            let mut s = QuarterLaurent::zero();
            for (k, c) in coeffs.entries.iter().enumerate().take(n as usize) {
                s = s + c * &cyclotomic_A(n, k as u64).expect("A(n,k)");
            }
            let target = &values[n as usize - 1] * &qint(n as i64);
            out.push(if s == target { Ok(()) } else { Err(format!("{name}: reconstruction fails at n={n}")) });
        }
        out
    })
}

const B_GRID: [i64; 14] = [1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 8, -8, 9, -9];

/// Orders admissible for `b`: SO(3) needs odd `r`; even `b` is only claimed at odd `r`.
fn admissible(theory: Theory, b: i64, r: u64) -> bool {
    r % 2 == 1 || (theory == Theory::SU2 && b % 2 != 0)
}

fn suite_qbk() -> Vec<Outcome> {
    let mut units = Vec::new();
    for theory in [Theory::SO3, Theory::SU2] {
        for r in 2..=30u64 {
            for b in B_GRID {
                for k in 0..=4u64 {
                    if admissible(theory, b, r) && r > 2 * k + 2 {
                        units.push((theory, r, b, k));
                    }
                }
            }
        }
    }
    run_units(units, |&(theory, r, b, k)| {
        let roots = primitive_roots(r, theory);
        let base = match q_eval_qbk(b, k, &roots[0]) {
            Ok(v) => v.value,
            Err(Error::DivisionByZero(_)) => return Vec::new(),
            Err(e) => return vec![Err(format!("Q({b},{k}) {}: {e}", roots[0]))],
        };
        roots
            .iter()
            .map(|xi| {
                let what = format!("Q({b},{k}) {xi}");
                let v = q_eval_qbk(b, k, xi).map_err(|e| format!("{what}: {e}"))?;
                if !v.b_integral {
                    return Err(format!("{what}: {} not in Z[1/b]", v.value.to_canonical_string()));
                }
                same(&what, &Ok(v.value), &galois_image(&base, r, xi.l))
            })
            .collect()
    })
}

fn suite_laplace() -> Vec<Outcome> {
    let mut units = Vec::new();
    for theory in [Theory::SO3, Theory::SU2] {
        for r in 1..=25u64 {
            for b in B_GRID {
                if admissible(theory, b, r) {
                    let n = 4 * r as i64;
                    for l in [1, n - 1] {
                        units.push((RootSpec::new(r, l, theory).expect("root"), b));
                    }
                }
            }
        }
    }
    run_units(units, |(xi, b)| {
        (-10..=10)
            .map(|a| holds(format!("Laplace z^{a} b={b} {xi}"), laplace_identity_check(&ZLaurent::z_pow(a), *b, xi)))
            .collect()
    })
}

fn suite_frobenius() -> Vec<Outcome> {
    let mut units = Vec::new();
    for b in [2u64, 3, 5] {
        for n in 1..=10u64 {
            for k in 1..=3u32 {
                if gcd(n as i64, b as i64) == 1 {
                    units.push((n, k, b));
                }
            }
        }
    }
    run_units(units, |&(n, k, b)| {
        let what = format!("(n,k,b)=({n},{k},{b})");
        let index = match lattice_index(n, k, b) {
            Ok(i) if i == expected_lattice_index(n, k, b) => Ok(()),
            Ok(i) => Err(format!("{what}: index {i} != {}", expected_lattice_index(n, k, b))),
            Err(e) => Err(format!("{what}: {e}")),
        };
        let root = match qth_root(n, k, b) {
            Ok(y) if y.pow(b) == QuotientElement::monomial(n, k, 1, 1) && y.is_b_integral(b as i64) => Ok(()),
            Ok(_) => Err(format!("{what}: y^b != q or y not in Z[1/b]")),
            Err(e) => Err(format!("{what}: {e}")),
        };
        let rigid = holds(&what, rigidity_holds(n, k, b, 2 * (n as usize) * (k as usize) + 2));
        vec![index, root, rigid]
    })
}

fn suite_unified_lens() -> Vec<Outcome> {
    let mut units = Vec::new();
    for xi in theory_roots(Theory::SO3, 3..=27) {
        units.push((xi, vec![3i64, 4, 5, 9]));
    }
    for xi in theory_roots(Theory::SU2, 2..=27) {
        units.push((xi, vec![3, 5, 9]));
    }
    run_units(units, |(xi, bs)| {
        let mut out = Vec::new();
        let mut ev = Evaluator::new(xi).expect("admissible root");
        for &b in bs {
            let eps = match Eps::for_root(b, xi.r) {
                Ok(e) => e,
                Err(e) => return vec![Err(format!("b={b} {xi}: {e}"))],
            };
            for a in coprime_residues(b) {
                let what = format!("I^{eps}(L({b},{a})) {xi}");
                let inv = match unified_lens(b, a, eps, xi.theory) {
                    Ok(inv) => inv,
                    Err(e) => {
                        out.push(Err(format!("{what}: {e}")));
                        continue;
                    }
                };
                let m = ManifoldSpec::lens(b, a, inv.d).expect("lens");
                out.push(same(&what, &inv.eval(xi), &ev.tau_prime(&m).map(|v| v.value)));
            }
        }
        out
    })
}

/// Connected sum pieces `(b, j)` of `L(b,1)` with color `j`.
type DiagonalCase = Vec<(i64, u64)>;

fn diagonal_pieces() -> Vec<(i64, u64)> {
    let mut v = Vec::new();
    for b in [3i64, 5, 9, 4, 8] {
        for s in [1, -1] {
            for j in [1u64, 3, 5] {
                v.push((s * b, j));
            }
        }
    }
    v
}

fn diagonal_case(pieces: &[(i64, u64)], xi: &RootSpec) -> Option<Outcome> {
    let mut m = ManifoldSpec::sphere();
    for &(b, j) in pieces {
        // the C-support of color j reaches k = (j-1)/2
        // the unified SU(2) invariant is defined for odd b only
        if !admissible(xi.theory, b, xi.r) || xi.r <= j + 1 || (xi.theory == Theory::SU2 && b % 2 == 0) {
            return None;
        }
        m = m.connect(&ManifoldSpec::lens(b, 1, j).expect("lens"));
    }
    let what = format!("{m} {xi}");
    match unified_diagonal_eval(&m, xi) {
        Err(Error::DivisionByZero(_)) => None,
        lhs => Some(same(&what, &lhs, &crate::wrt::tau_prime(&m, xi).map(|v| v.value))),
    }
}

fn suite_unified_diagonal() -> Vec<Outcome> {
    let pieces = diagonal_pieces();
    let mut units: Vec<(RootSpec, Vec<DiagonalCase>)> = Vec::new();
    let singles: Vec<DiagonalCase> = pieces.iter().map(|&p| vec![p]).collect();
    for theory in [Theory::SO3, Theory::SU2] {
        for xi in theory_roots(theory, 2..=19) {
            units.push((xi, singles.clone()));
        }
    }
    for theory in [Theory::SO3, Theory::SU2] {
        for r in (2..=13u64).filter(|r| theory == Theory::SU2 || r % 2 == 1) {
            let xi = RootSpec::new(r, 1, theory).expect("root");
            let mut pairs = Vec::new();
            for (i, &p) in pieces.iter().enumerate() {
                for &q in &pieces[i..] {
                    pairs.push(vec![p, q]);
                }
            }
            units.push((xi, pairs));
        }
    }
    run_units(units, |(xi, cases)| cases.iter().filter_map(|c| diagonal_case(c, xi)).collect())
}

/// `q^{e/4}` at the complex root `exp(2πi l/4r)`.
fn quarter(xi: &RootSpec, e: i64) -> Complex64 {
    let m = 4 * xi.r as i64;
    Complex64::from_polar(1.0, 2.0 * PI * ((xi.l * e).rem_euclid(m)) as f64 / m as f64)
}

/// `[k]` at `q^{j}`: `Σ_{s<k} q^{j(k-1-2s)/2}`.
fn qint_float(xi: &RootSpec, j: i64, k: i64) -> Complex64 {
    (0..k).map(|s| quarter(xi, 2 * j * (k - 1 - 2 * s))).sum()
}

/// Floating point state sum `Σ ∏[n_i] J(n)` over the color set for a Hopf chain.
fn float_chain_sum(framings: &[i64], xi: &RootSpec) -> Complex64 {
    let colors: Vec<i64> = crate::gauss::colors(xi.theory, xi.r).into_iter().filter(|&n| n > 0).collect();
    let k = framings.len();
    let mut idx = vec![0usize; k];
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        let ns: Vec<i64> = idx.iter().map(|&i| colors[i]).collect();
        // ∏[n_i]·[n_1]∏[n_i n_{i+1}]/[n_i], with [n_i n_{i+1}]/[n_i] = [n_{i+1}] at q^{n_i}
        let mut term = qint_float(xi, 1, ns[0]) * qint_float(xi, 1, ns[0]);
        for i in 0..k {
            if i + 1 < k {
                term *= qint_float(xi, ns[i], ns[i + 1]) * qint_float(xi, 1, ns[i + 1]);
            }
            term *= quarter(xi, framings[i] * (ns[i] * ns[i] - 1));
        }
        total += term;
        let mut p = 0;
        loop {
            if p == k {
                return total;
            }
            idx[p] += 1;
            if idx[p] < colors.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

fn float_tau_lens(b: i64, a: i64, xi: &RootSpec) -> Result<Complex64> {
    let framings = LensPiece::new(b, a, 1)?.chain_framings()?;
    let (sp, sm) = signature(&chain_linking_matrix(&framings))?;
    let f = float_chain_sum(&framings, xi);
    let norm = float_chain_sum(&[1], xi).powi(sp as i32) * float_chain_sum(&[-1], xi).powi(sm as i32);
    Ok(f / norm)
}

fn close(what: impl fmt::Display, exact: &Result<CycNumber>, float: Result<Complex64>) -> Outcome {
    let (x, y) = match (exact, float) {
        (Ok(x), Ok(y)) => (x.to_complex(), y),
        (Err(e), _) => return Err(format!("{what}: {e}")),
        (_, Err(e)) => return Err(format!("{what}: {e}")),
    };
    let err = (x - y).norm() / y.norm().max(1.0);
    if err <= 1e-9 {
        Ok(())
    } else {
        Err(format!("{what}: exact {x} vs float {y} (relative error {err:e})"))
    }
}

/// Random subsample of Gauss sums, `γ_b`, lens `τ` and unified lens values
/// compared against floating point recomputations of the defining sums.
pub fn suite_float(cases: usize, seed: u64) -> Vec<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = Vec::with_capacity(cases);
    for i in 0..cases {
        let theory = if rng.gen_bool(0.5) { Theory::SO3 } else { Theory::SU2 };
        let r = loop {
            let r = rng.gen_range(2..=15u64);
            if theory == Theory::SU2 || r % 2 == 1 {
                break r;
            }
        };
        let roots = primitive_roots(r, theory);
        let xi = roots[rng.gen_range(0..roots.len())];
        let b = loop {
            let b = rng.gen_range(-9..=9i64);
            if b != 0 && (theory == Theory::SO3 || b % 2 != 0) {
                break b;
            }
        };
        let a = loop {
            let a = rng.gen_range(1..=b.abs().max(2));
            if gcd(a, b) == 1 {
                break a;
            }
        };
        let x = rng.gen_range(1..=12i64);
        let y = rng.gen_range(0..=12i64);
        picks.push((i % 4, xi, b, a, x, y));
    }
    run_units(picks, |&(kind, xi, b, a, x, y)| {
        let out = match kind {
            0 => {
                let r = xi.r as i64;
                let float = (0..r).map(|j| Complex64::from_polar(1.0, 2.0 * PI * (x * j * j + y * j) as f64 / r as f64)).sum();
                close(format!("G({},{x},{y})", xi.r), &Ok(gauss_closed(xi.r, x, y)), Ok(float))
            }
            1 => {
                let float = crate::gauss::colors(xi.theory, xi.r).into_iter().map(|n| quarter(&xi, b * (n * n - 1))).sum();
                close(format!("gamma b={b} {xi}"), &gamma(b, &xi, GammaMode::Closed), Ok(float))
            }
            2 => {
                let exact = Evaluator::new(&xi).and_then(|mut ev| ev.tau_lens(&LensPiece::new(b, a, 1)?));
                close(format!("τ(L({b},{a})) {xi}"), &exact, float_tau_lens(b, a, &xi))
            }
            _ => {
                let exact = Eps::for_root(b, xi.r)
                    .and_then(|eps| unified_lens(b, a, eps, xi.theory))
                    .and_then(|inv| if inv.d == 1 { inv.eval(&xi) } else { Err(Error::Precondition("knot inside".into())) });
                match exact {
                    Err(Error::Precondition(_)) => {
                        let exact = gauss_closed(xi.r, b, a);
                        let r = xi.r as i64;
                        let float = (0..r).map(|j| Complex64::from_polar(1.0, 2.0 * PI * (b * j * j + a * j) as f64 / r as f64)).sum();
                        close(format!("G({},{b},{a})", xi.r), &Ok(exact), Ok(float))
                    }
                    exact => {
                        let float = float_tau_lens(b, a, &xi).and_then(|t| Ok(t / float_tau_lens(b.abs(), 1, &xi)?));
                        close(format!("I(L({b},{a})) {xi}"), &exact, float)
                    }
                }
            }
        };
        vec![out]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_roots_cover_each_order_once() {
        let roots = primitive_roots(12, Theory::SU2);
        assert_eq!(roots.len(), 4);
        for xi in &roots {
            assert_eq!(gcd(xi.l, 48), 1);
        }
        let mut ls: Vec<i64> = roots.iter().map(|xi| xi.l % 12).collect();
        ls.sort();
        assert_eq!(ls, vec![1, 5, 7, 11]);
    }

    #[test]
    fn report_keeps_first_failure() {
        let r = report("x", vec![Ok(()), Err("a".into()), Err("b".into())]);
        assert_eq!((r.run, r.passed), (3, 1));
        assert_eq!(r.first_failure.as_deref(), Some("a"));
        assert!(!r.all_passed());
        assert!(run_suite("nope").is_err());
    }

    #[test]
    fn float_sanity_small() {
        let out = suite_float(12, 7);
        assert_eq!(out.len(), 12);
        assert!(out.iter().all(|o| o.is_ok()), "{out:?}");
    }
}

//! Quadratic Gauss sums `G(r,x,y) = Σ_{j<r} e_r^{xj²+yj}`, the normalizers
//! `γ_b`, and the one dimensional reciprocity formula.
//!
//! Closed forms are realized inside cyclotomic fields: `√m` for odd `m` is
//! `ε(m)^{-1}·Σ_{j<m} e_m^{j²}`, `√2 = e_8 + e_8^{-1}`, and `√(2^a m)`
//! is assembled multiplicatively.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{precondition, Result};
use crate::exactalg::{CycNumber, RootSpec, RootSum, Theory};
use crate::numtheory::{epsilon4_exp, gcd, jacobi, lcm, mod_inverse};

/// A square root `√m` realized as a cyclotomic number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtSymbol {
    pub radicand: u64,
    /// Element of `Q(e_{8m})` whose square is `m`.
    pub realization: CycNumber,
}

/// Realizes `√m` in `Q(e_{8m})`.
pub fn sqrt_symbol(m: u64) -> Result<SqrtSymbol> {
    if m == 0 {
        return precondition("sqrt radicand must be positive");
    }
    let realization = sqrt_rootsum(m, 8 * m).to_cyc();
    Ok(SqrtSymbol { radicand: m, realization })
}

/// `√k` as an element of `Z[Z/N]`; needs `8·odd(k) | N`.
pub(crate) fn sqrt_rootsum(k: u64, n: u64) -> RootSum {
    let a = k.trailing_zeros();
    let odd = k >> a;
    assert!(n.is_multiple_of(8 * odd), "modulus {n} cannot carry sqrt({k})");
    let ni = n as i64;
    // ε(odd)^{-1} Σ_j e_odd^{j²}
    let eps = epsilon4_exp(odd as i64).expect("odd");
    let step = ni / odd as i64;
    let mut s = RootSum::zero(n);
    for j in 0..odd as i64 {
        s.add_term_i64(((j * j) % odd as i64) * step - eps * (ni / 4), 1);
    }
    if a % 2 == 1 {
        let mut root2 = RootSum::zero(n);
        root2.add_term_i64(ni / 8, 1);
        root2.add_term_i64(-ni / 8, 1);
        s = s.mul(&root2);
    }
    let pow2 = BigInt::from(1u64) << (a / 2);
    s.scale(&pow2)
}

/// `G(r,x,y)` by direct summation, in `Q(e_r)`.
pub fn gauss_brute(r: u64, x: i64, y: i64) -> CycNumber {
    gauss_brute_sum(r, x, y).to_cyc()
}

fn gauss_brute_sum(r: u64, x: i64, y: i64) -> RootSum {
    let ri = r as i128;
    let mut s = RootSum::zero(r);
    for j in 0..ri {
        let e = ((x as i128) * j * j + (y as i128) * j).rem_euclid(ri);
        s.add_term_i64(e as i64, 1);
    }
    s
}

/// `G(r,x,y)` from the closed-form case analysis, as an element of `Q(e_{8r})`.
pub fn gauss_closed(r: u64, x: i64, y: i64) -> CycNumber {
    gauss_closed_sum(r, x, y, 8 * r).to_cyc()
}

/// Closed form of `G(r,x,y)` inside `Z[Z/N]` for any `N` divisible by `8r`.
pub(crate) fn gauss_closed_sum(r: u64, x: i64, y: i64, n: u64) -> RootSum {
    assert!(n.is_multiple_of(8 * r));
    let ri = r as i64;
    let x = x.rem_euclid(ri);
    let y = y.rem_euclid(ri);
    let g = gcd(ri, x);
    if y % g != 0 {
        return RootSum::zero(n);
    }
    let (r1, x1, y1) = (ri / g, x / g, y / g);
    let core = gauss_coprime(r1, x1, y1, n);
    core.scale(&BigInt::from(g))
}

/// Closed form for `gcd(r,x) = 1` inside `Z[Z/N]`, `8r | N`.
fn gauss_coprime(r: i64, x: i64, y: i64, n: u64) -> RootSum {
    let ni = n as i64;
    let er = ni / r; // e_r = e_N^{er}
    if r == 1 {
        return RootSum::monomial(n, 0, 1);
    }
    let xs = mod_inverse(x, r).expect("coprime after reduction") as i128;
    let y2 = (y as i128) * (y as i128);
    let r128 = r as i128;
    let rot = |e: i128| -> i64 { (e.rem_euclid(r128) as i64) * er };
    if r % 2 == 1 {
        // ε(r) (x/r) √r e_r^{-x_* y² ((r+1)/2)²}
        let h = (r128 + 1) / 2;
        let e = -xs * y2 * h * h;
        let sign = jacobi(x, r).expect("odd") as i64;
        let mut s = RootSum::zero(n);
        s.add_rotated(&sqrt_rootsum(r as u64, n), rot(e) + epsilon4_exp(r).unwrap() * (ni / 4), sign);
        return s;
    }
    if (r % 4 == 2 && y % 2 == 0) || (r % 4 == 0 && y % 2 == 1) {
        return RootSum::zero(n);
    }
    if r % 4 == 2 {
        // ε(r/2) (2x/(r/2)) √(2r) e_r^{-x_* y² ((r+2)/2)³ / 4}
        let h = (r128 + 2) / 2;
        let e = -(xs * y2 * h * h * h) / 4;
        let half = r / 2;
        let sign = jacobi(2 * x, half).expect("odd") as i64;
        let mut s = RootSum::zero(n);
        s.add_rotated(&sqrt_rootsum(2 * r as u64, n), rot(e) + epsilon4_exp(half).unwrap() * (ni / 4), sign);
        return s;
    }
    // r ≡ 0 mod 4, y even: conj(ε(x)) (r/x) (1+i) √r e_r^{-x_* y²/4}
    let e = -(xs * (y2 / 4));
    let sign = jacobi(r, x).expect("x odd") as i64;
    let eps_conj = -epsilon4_exp(x).unwrap() * (ni / 4);
    let mut one_plus_i = RootSum::zero(n);
    one_plus_i.add_term_i64(0, 1);
    one_plus_i.add_term_i64(ni / 4, 1);
    let base = sqrt_rootsum(r as u64, n).mul(&one_plus_i);
    let mut s = RootSum::zero(n);
    s.add_rotated(&base, rot(e) + eps_conj, sign);
    s
}

/// Evaluation route for [`gamma`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaMode {
    Brute,
    Closed,
}

/// `γ_b(ξ) = Σ_{n ∈ N_G} q^{b(n²-1)/4}` with `q^{1/4} = e_{4r}^l`.
pub fn gamma(b: i64, xi: &RootSpec, mode: GammaMode) -> Result<CycNumber> {
    Ok(match mode {
        GammaMode::Brute => gamma_brute_sum(b, xi).to_cyc(),
        GammaMode::Closed => gamma_closed(b, xi),
    })
}

/// The color set `N_G`: `0..2r` for SU(2), its odd members for SO(3).
pub(crate) fn colors(theory: Theory, r: u64) -> Vec<i64> {
    let all = 0..(2 * r as i64);
    match theory {
        Theory::SU2 => all.collect(),
        Theory::SO3 => all.filter(|n| n % 2 == 1).collect(),
    }
}

fn gamma_brute_sum(b: i64, xi: &RootSpec) -> RootSum {
    let m = 4 * xi.r as i64;
    let mut s = RootSum::zero(m as u64);
    for n in colors(xi.theory, xi.r) {
        let e = (b as i128 * (n as i128 * n as i128 - 1)).rem_euclid(m as i128) as i64;
        s.add_term_i64(e * xi.l, 1);
    }
    s
}

/// An exponent `l' ≡ l (mod r)` that is a unit modulo `8r`, so that the
/// automorphism `e_{8r} ↦ e_{8r}^{l'}` restricts to `e_r ↦ e_r^l`.
pub(crate) fn galois_lift(l: i64, r: u64) -> i64 {
    let ri = r as i64;
    let m = 8 * ri;
    let mut c = l.rem_euclid(ri);
    if ri == 1 {
        return 1;
    }
    while gcd(c, m) != 1 {
        c += ri;
    }
    c
}

fn gamma_closed(b: i64, xi: &RootSpec) -> CycNumber {
    let r = xi.r;
    let n = 8 * r;
    let lp = galois_lift(xi.l, r);
    let g_bb = gauss_closed_sum(r, b, b, n).to_cyc().galois(lp).expect("unit");
    match xi.theory {
        Theory::SO3 => g_bb,
        Theory::SU2 => {
            let g_b0 = gauss_closed_sum(r, b, 0, n).to_cyc().galois(lp).expect("unit");
            xi.xi_quarter_pow(-b) * g_b0 + g_bb
        }
    }
}

/// True exactly when `γ_b(ξ) = 0`: SU(2), `r/(r,b)` odd and `b/(r,b) ≡ 2 (mod 4)`.
///
/// The criterion assumes `ξ^{1/4}` is a primitive `4r`-th root, i.e. `l` is a unit mod `4r`.
pub fn gamma_is_zero(b: i64, xi: &RootSpec) -> bool {
    if xi.theory != Theory::SU2 {
        return false;
    }
    let c = gcd(xi.r as i64, b);
    (xi.r as i64 / c) % 2 == 1 && (b / c).rem_euclid(4) == 2
}

/// Checks `Σ_{λ<n} e_{2n}^{mλ²} e_φ^{ψλ} = (1+i)√(n/2m) Σ_{λ<m} e_{2mφ²}^{-n(λφ+ψ)²}`.
///
/// Both sides are summed directly; `√(n/2m)` is realized as `√(2mn)/(2m)`.
pub fn reciprocity_check(m: i64, n: i64, psi: i64, phi: i64) -> Result<bool> {
    if m <= 0 || n <= 0 || phi <= 0 || psi < 0 {
        return precondition("reciprocity needs positive m, n, φ and ψ >= 0");
    }
    if (n * m) % 2 != 0 {
        return precondition(format!("reciprocity needs nm even, got m={m}, n={n}"));
    }
    if (n * psi) % phi != 0 {
        return precondition(format!("reciprocity needs φ | nψ, got φ={phi}, nψ={}", n * psi));
    }
    let k = (2 * m * n) as u64;
    let odd = k >> k.trailing_zeros();
    let big = [2 * n as u64, phi as u64, (2 * m * phi * phi) as u64, 8 * odd]
        .into_iter()
        .fold(1u64, lcm);
    let bi = big as i64;
    let mut lhs = RootSum::zero(big);
    for lam in 0..n {
        let e1 = (m * lam * lam).rem_euclid(2 * n) * (bi / (2 * n));
        let e2 = (psi * lam).rem_euclid(phi) * (bi / phi);
        lhs.add_term_i64(e1 + e2, 2 * m);
    }
    let mm = 2 * m * phi * phi;
    let mut sum = RootSum::zero(big);
    for lam in 0..m {
        let t = (lam * phi + psi) as i128;
        let e = (-(n as i128) * t * t).rem_euclid(mm as i128) as i64;
        sum.add_term_i64(e * (bi / mm), 1);
    }
    let mut one_plus_i = RootSum::zero(big);
    one_plus_i.add_term_i64(0, 1);
    one_plus_i.add_term_i64(bi / 4, 1);
    let rhs = sqrt_rootsum(k, big).mul(&one_plus_i).mul(&sum);
    let mut diff = lhs;
    diff.add_rotated(&rhs, 0, -1);
    Ok(diff.to_cyc().is_zero())
}

/// All admissible reciprocity parameters with `m, n, φ ∈ 1..=bound`, `ψ ∈ 0..=bound`.
pub fn reciprocity_grid(bound: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for m in 1..=bound {
        for n in 1..=bound {
            if (m * n).is_odd() {
                continue;
            }
            for psi in 0..=bound {
                for phi in 1..=bound {
                    if (n * psi) % phi == 0 {
                        out.push((m, n, psi, phi));
                    }
                }
            }
        }
    }
    out
}

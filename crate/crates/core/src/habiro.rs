//! Habiro type elements at the level of their values at roots of unity.
//!
//! Elements of the completed rings are handled through truncated expansions
//! or through explicit projections `π_j`. The special elements `z_{b,a}`,
//! `x_b` and `q^{1/b}` are evaluated by their closed values, the Laplace
//! transform sends `z^a ↦ z_{b,a}`, and `Q_{b,k}` is evaluated as a ratio of
//! state sums. The unified invariants of lens spaces and diagonal manifolds
//! are assembled from these pieces.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{precondition, Error, Result};
use crate::exactalg::qcalc::{pochhammer_step, q_pochhammer, qbinom, qbrace};
use crate::exactalg::{eval_at_root, CycNumber, QuarterLaurent, RootSpec, RootSum, Theory};
use crate::gauss::{gamma, GammaMode};
use crate::jones::{cyclotomic_A, hopf_pair_coeffs};
use crate::numtheory::{as_prime_power, dedekind_sum, gcd, jacobi, sn, star_inverse};
use crate::wrt::{f_sum_chain, ManifoldSpec, Piece};

/// Basis of a truncated expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HabiroBasis {
    /// `(q;q)_n`
    QQ,
    /// `(q;q²)_n`, usable at roots of odd order only.
    QQ2,
}

/// `Σ_{n<T} f_n(q)·basis_n` with `f_n ∈ Z[1/b][q^{±1}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HabiroElement {
    pub basis: HabiroBasis,
    pub inverted: i64,
    truncation: usize,
    coeffs: Vec<QuarterLaurent>,
}

impl HabiroElement {
    /// Builds an element whose known terms are `coeffs`; the truncation is `coeffs.len()`.
    pub fn new(basis: HabiroBasis, inverted: i64, coeffs: Vec<QuarterLaurent>) -> Result<HabiroElement> {
        let truncation = coeffs.len();
        Self::with_truncation(basis, inverted, coeffs, truncation)
    }

    /// Like [`new`](Self::new) with an explicit truncation `T ≥ coeffs.len()`;
    /// the missing coefficients are zero.
    pub fn with_truncation(
        basis: HabiroBasis,
        inverted: i64,
        coeffs: Vec<QuarterLaurent>,
        truncation: usize,
    ) -> Result<HabiroElement> {
        if inverted == 0 {
            return precondition("inverted integer must be nonzero");
        }
        if truncation < coeffs.len() {
            return precondition("truncation shorter than the coefficient list");
        }
        for (n, f) in coeffs.iter().enumerate() {
            if !f.exps_divisible_by(4) {
                return precondition(format!("f_{n} has fractional powers of q"));
            }
            if !f.is_b_integral(inverted) {
                return Err(Error::RingViolation(format!("f_{n} is not over Z[1/{inverted}]")));
            }
        }
        Ok(HabiroElement { basis, inverted, truncation, coeffs })
    }

    /// A constant.
    pub fn constant(c: i64, truncation: usize) -> HabiroElement {
        HabiroElement { basis: HabiroBasis::QQ, inverted: 1, truncation, coeffs: vec![QuarterLaurent::constant(c)] }
    }

    /// `q^{-1} = Σ_n q^n (q;q)_n`, truncated at `T`.
    pub fn q_inverse(truncation: usize) -> HabiroElement {
        let coeffs = (0..truncation as i64).map(QuarterLaurent::q_pow).collect();
        HabiroElement { basis: HabiroBasis::QQ, inverted: 1, truncation, coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeffs(&self) -> &[QuarterLaurent] {
        &self.coeffs
    }

    fn basis_elem(&self, n: usize) -> QuarterLaurent {
        match self.basis {
            HabiroBasis::QQ => q_pochhammer(1, n as u32),
            HabiroBasis::QQ2 => pochhammer_step(4, 8, n as u32),
        }
    }

    /// The known part as one Laurent polynomial.
    pub fn to_laurent(&self) -> QuarterLaurent {
        let mut acc = QuarterLaurent::zero();
        for (n, f) in self.coeffs.iter().enumerate() {
            if !f.is_zero() {
                acc = acc + f * &self.basis_elem(n);
            }
        }
        acc
    }

    /// Exact value at `ξ`; refused unless `T ≥ r`.
    pub fn eval(&self, xi: &RootSpec) -> Result<CycNumber> {
        let r = xi.r as usize;
        if self.truncation < r {
            return Err(Error::Truncation(format!("T = {} < r = {r}", self.truncation)));
        }
        if self.basis == HabiroBasis::QQ2 && r.is_multiple_of(2) {
            return precondition("the (q;q²) basis evaluates at odd order only");
        }
        let mut acc = CycNumber::zero(xi.r);
        for (n, f) in self.coeffs.iter().enumerate().take(r) {
            if f.is_zero() {
                continue;
            }
            acc = acc + eval_at_root(&(f * &self.basis_elem(n)), xi);
        }
        Ok(acc.simplify())
    }

    fn combine(&self, other: &HabiroElement) -> Result<(i64, usize)> {
        if self.basis != other.basis {
            return precondition("cannot combine elements in different bases");
        }
        Ok((lcm_i64(self.inverted, other.inverted), self.truncation.min(other.truncation)))
    }

    /// Coefficientwise sum.
    pub fn add(&self, other: &HabiroElement) -> Result<HabiroElement> {
        let (inverted, truncation) = self.combine(other)?;
        let len = self.coeffs.len().max(other.coeffs.len()).min(truncation);
        let zero = QuarterLaurent::zero();
        let coeffs = (0..len)
            .map(|n| self.coeffs.get(n).unwrap_or(&zero) + other.coeffs.get(n).unwrap_or(&zero))
            .collect();
        Ok(HabiroElement { basis: self.basis, inverted, truncation, coeffs })
    }

    /// Product, stored as a single polynomial coefficient `f_0`.
    pub fn mul(&self, other: &HabiroElement) -> Result<HabiroElement> {
        let (inverted, truncation) = self.combine(other)?;
        let p = self.to_laurent() * other.to_laurent();
        Ok(HabiroElement { basis: self.basis, inverted, truncation, coeffs: vec![p] })
    }
}

fn lcm_i64(a: i64, b: i64) -> i64 {
    a.unsigned_abs().lcm(&b.unsigned_abs()) as i64
}

/// `(p, l)` with `|b| = p^l`; `None` for `b = ±1`.
fn prime_of(b: i64) -> Result<Option<(u64, u32)>> {
    match b.abs() {
        0 => precondition("b must be nonzero"),
        1 => Ok(None),
        m => as_prime_power(m)
            .map(Some)
            .ok_or_else(|| Error::Precondition(format!("{b} is not ±1 or ± a prime power"))),
    }
}

/// The exponent of `p` in `r`.
pub fn p_valuation(mut r: u64, p: u64) -> u32 {
    let mut j = 0;
    while p > 1 && r.is_multiple_of(p) {
        r /= p;
        j += 1;
    }
    j
}

/// The projection index selected by a root of order `r`.
pub fn projection_index(b: i64, r: u64) -> Result<u32> {
    Ok(match prime_of(b)? {
        Some((p, _)) => p_valuation(r, p),
        None => 0,
    })
}

/// `ev_ξ(z_{b,a})`: zero unless `c = (r,b)` divides `a`, then `(ξ^c)^{a_1² b'_{*r'}}`.
pub fn z_eval(b: i64, a: i64, xi: &RootSpec) -> Result<CycNumber> {
    prime_of(b)?;
    let r = xi.r as i64;
    let c = gcd(r, b);
    if a % c != 0 {
        return Ok(CycNumber::zero(xi.r));
    }
    let (a1, rp, bp) = (a / c, r / c, b / c);
    if rp == 1 {
        return Ok(CycNumber::from_integer(1));
    }
    let bs = star_inverse(bp, rp)? as i128;
    let e = ((a1 as i128 % rp as i128).pow(2) * bs).rem_euclid(rp as i128) as i64;
    Ok(xi.xi_pow(c * e))
}

/// `ev_ξ(x_b) = (ξ^c)^{b'_{*r'}}`.
pub fn x_eval(b: i64, xi: &RootSpec) -> Result<CycNumber> {
    let c = gcd(xi.r as i64, b);
    z_eval(b, c, xi)
}

/// `ev_ξ(q^{1/b}) = ξ^{b_{*r}}`, defined when `(r,b) = 1`.
pub fn qroot_eval(b: i64, xi: &RootSpec) -> Result<CycNumber> {
    if b == 0 || gcd(b, xi.r as i64) != 1 {
        return precondition(format!("q^(1/{b}) is evaluated only at orders coprime to {b}"));
    }
    Ok(xi.xi_pow(star_inverse(b, xi.r as i64)?))
}

/// A Laurent polynomial in `z` with coefficients Laurent in `q^{1/4}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZLaurent {
    terms: BTreeMap<i64, QuarterLaurent>,
}

impl ZLaurent {
    pub fn zero() -> ZLaurent {
        ZLaurent::default()
    }

    /// `c·z^a`.
    pub fn monomial(a: i64, c: QuarterLaurent) -> ZLaurent {
        let mut z = ZLaurent::zero();
        z.add_term(a, c);
        z
    }

    /// `z^a`.
    pub fn z_pow(a: i64) -> ZLaurent {
        ZLaurent::monomial(a, QuarterLaurent::one())
    }

    pub fn add_term(&mut self, a: i64, c: QuarterLaurent) {
        let e = self.terms.entry(a).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &QuarterLaurent)> {
        self.terms.iter().map(|(a, c)| (*a, c))
    }

    pub fn add(&self, other: &ZLaurent) -> ZLaurent {
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_term(a, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &ZLaurent) -> ZLaurent {
        let mut out = ZLaurent::zero();
        for (a, c) in self.terms() {
            for (b, d) in other.terms() {
                out.add_term(a + b, c * d);
            }
        }
        out
    }

    /// `f̂ = f|_{z=q^n}`.
    pub fn at_q_power(&self, n: i64) -> QuarterLaurent {
        let mut acc = QuarterLaurent::zero();
        for (a, c) in self.terms() {
            acc = acc + c * &QuarterLaurent::q_pow(n * a);
        }
        acc
    }

    /// `∏_{i=0}^{k} (z + z^{-1} - q^i - q^{-i})`.
    pub fn a_numerator(k: u64) -> ZLaurent {
        let mut acc = ZLaurent::z_pow(0);
        for i in 0..=k as i64 {
            let mut f = ZLaurent::z_pow(1).add(&ZLaurent::z_pow(-1));
            f.add_term(0, -(QuarterLaurent::q_pow(i) + QuarterLaurent::q_pow(-i)));
            acc = acc.mul(&f);
        }
        acc
    }
}

/// `Σ_n c_n·x_{b;j}^{n²}`, the image of the Laplace transform on projection `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplaceImage {
    pub b: i64,
    pub j: u32,
    pub terms: BTreeMap<i64, QuarterLaurent>,
}

impl LaplaceImage {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `ev_ξ` of the image; `ξ` must select projection `j`.
    pub fn eval(&self, xi: &RootSpec) -> Result<CycNumber> {
        let j = projection_index(self.b, xi.r)?;
        if j != self.j {
            return Err(Error::ProjectionMismatch(format!(
                "image lives on π_{} but a root of order {} selects π_{j}",
                self.j, xi.r
            )));
        }
        let x = x_eval(self.b, xi)?;
        let mut acc = CycNumber::zero(xi.r);
        for (&n, c) in &self.terms {
            acc = acc + eval_at_root(c, xi) * x.pow(n * n)?;
        }
        Ok(acc)
    }
}

/// `L_{b;j}`: `z^a ↦ z_{b,a;j}`, which is `x_{b;j}^{n²}` for `a = cn`,
/// `c = (b, p^j)`, and zero otherwise.
pub fn laplace_transform(f: &ZLaurent, b: i64, j: u32) -> Result<LaplaceImage> {
    let c = match prime_of(b)? {
        Some((p, _)) => gcd(b, p.pow(j) as i64),
        None => 1,
    };
    let mut terms: BTreeMap<i64, QuarterLaurent> = BTreeMap::new();
    for (a, coeff) in f.terms() {
        if a % c != 0 {
            continue;
        }
        let n = (a / c).abs();
        let e = terms.entry(n).or_default();
        *e = &*e + coeff;
        if e.is_zero() {
            terms.remove(&n);
        }
    }
    Ok(LaplaceImage { b, j, terms })
}

/// `Σ^{ξ,G}_n q^{b(n²-1)/4}·g(n)` over the color set.
/// Integer terms `(u-exponent, coefficient)` of a Laurent polynomial over `Z`.
fn integer_terms(p: &QuarterLaurent) -> Result<Arc<[(i64, BigInt)]>> {
    p.terms()
        .map(|(e, c)| {
            if c.is_integer() {
                Ok((e, c.to_integer()))
            } else {
                Err(Error::RingViolation(format!("summand coefficient {c} is not an integer")))
            }
        })
        .collect()
}

/// `Σ_{n ∈ N_G} q^{b(n²-1)/4} g(n)` at `ξ`, for integral Laurent summands `g(n)`.
///
/// All terms are collected in `Z[Z/4r]` and reduced once.
fn color_sum(b: i64, xi: &RootSpec, g: impl Fn(i64) -> Result<Option<Arc<[(i64, BigInt)]>>>) -> Result<CycNumber> {
    crate::wrt::color_set(xi.theory, xi.r)?;
    let m = 4 * xi.r as i64;
    let mut acc = RootSum::zero(m as u64);
    for n in crate::gauss::colors(xi.theory, xi.r) {
        if let Some(terms) = g(n)? {
            let shift = b * (n * n - 1);
            for (e, c) in terms.iter() {
                acc.add_term(((e + shift).rem_euclid(m) * xi.l).rem_euclid(m), c);
            }
        }
    }
    Ok(acc.to_cyc().simplify())
}

/// Compares `Σ^{ξ,G} q^{b(n²-1)/4} f̂` with `γ_b(ξ)·ev_ξ(L_{-b}(f))`.
///
/// For even `b` the identity holds at odd orders; at even orders the sum over
/// `z^a` with `c ∤ a` does not vanish and the check reports `false`.
pub fn laplace_identity_check(f: &ZLaurent, b: i64, xi: &RootSpec) -> Result<bool> {
    let lhs = color_sum(b, xi, |n| integer_terms(&f.at_q_power(n)).map(Some))?;
    let j = projection_index(b, xi.r)?;
    let rhs = gamma(b, xi, GammaMode::Closed)? * laplace_transform(f, -b, j)?.eval(xi)?;
    Ok(lhs == rhs)
}

type TermCache = Mutex<HashMap<(u64, u64), Arc<[(i64, BigInt)]>>>;

fn a_cache() -> &'static TermCache {
    static CACHE: OnceLock<TermCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_a(n: u64, k: u64) -> Result<Arc<[(i64, BigInt)]>> {
    if let Some(v) = a_cache().lock().expect("cache lock").get(&(n, k)) {
        return Ok(v.clone());
    }
    let v = integer_terms(&cyclotomic_A(n, k)?)?;
    a_cache().lock().expect("cache lock").insert((n, k), v.clone());
    Ok(v)
}

/// `1/F_{U^b}(ξ)`, memoized since every `Q_{b,k}` at `ξ` shares it.
fn unknot_sum_inverse(b: i64, xi: &RootSpec) -> Result<CycNumber> {
    type InvCache = Mutex<HashMap<(i64, RootSpec), CycNumber>>;
    static CACHE: OnceLock<InvCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache lock").get(&(b, *xi)) {
        return Ok(v.clone());
    }
    let f = f_sum_chain(&[b], 1, xi)?;
    if f.is_zero() {
        return Err(Error::DivisionByZero(format!("F_U^{b} vanishes at {xi}")));
    }
    let inv = f.simplify().inverse()?;
    cache.lock().expect("cache lock").insert((b, *xi), inv.clone());
    Ok(inv)
}

/// Value of `Q^G_{b,k}` at a root together with the ring check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QbkValue {
    pub value: CycNumber,
    /// Every canonical coefficient lies in `Z[1/b]`.
    pub b_integral: bool,
}

/// `ev_ξ(Q_{b,k}) = Σ^{ξ,G} q^{b(n²-1)/4}A(n,k) / F_{U^b}(ξ)`.
///
/// Requires `(ξ^{k+1};ξ)_{k+1} ≠ 0`, i.e. `r > 2k+1`, and `F_{U^b}(ξ) ≠ 0`.
pub fn q_eval_qbk(b: i64, k: u64, xi: &RootSpec) -> Result<QbkValue> {
    prime_of(b)?;
    if xi.r <= 2 * k + 1 {
        return precondition(format!("(q^{};q)_{} vanishes at order {}", k + 1, k + 1, xi.r));
    }
    let f_inv = unknot_sum_inverse(b, xi)?;
    let num = color_sum(b, xi, |n| {
        if n <= k as i64 {
            return Ok(None);
        }
        Ok(Some(cached_a(n as u64, k)?))
    })?;
    let value = (num * f_inv).simplify();
    let b_integral = value.is_b_integral(b);
    Ok(QbkValue { value, b_integral })
}

/// Which projection of a lens invariant is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Eps {
    /// Orders coprime to `p`.
    Zero,
    /// Orders divisible by `p`.
    ZeroBar,
}

impl Eps {
    /// The component selected by a root of order `r`.
    pub fn for_root(b: i64, r: u64) -> Result<Eps> {
        Ok(if projection_index(b, r)? == 0 { Eps::Zero } else { Eps::ZeroBar })
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eps::Zero => "0",
            Eps::ZeroBar => "0bar",
        })
    }
}

/// `sign·q^{exponent}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedQPower {
    pub sign: i64,
    pub exponent: BigRational,
}

impl SignedQPower {
    /// Evaluates with `q^{1/D} ↦ ξ^{D_{*r}}`.
    pub fn eval(&self, xi: &RootSpec) -> Result<CycNumber> {
        let r = xi.r as i64;
        let den = self.exponent.denom().to_i64().unwrap_or(0);
        let num = (self.exponent.numer() % BigInt::from(r)).to_i64().expect("reduced mod r");
        let e = if den == 1 { num } else { num * star_inverse(den, r)? };
        Ok(xi.xi_pow(e).scale_int(self.sign))
    }
}

impl fmt::Display for SignedQPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "" };
        write!(f, "{s}q^({})", self.exponent)
    }
}

/// `I^ε_{M^ε(b,a)}` given by its projections `π_j`; for `ε = 0̄` the entry `l`
/// stands for every `j ≥ l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnifiedLensInvariant {
    pub b: i64,
    pub a: i64,
    pub eps: Eps,
    pub theory: Theory,
    /// The knot color `d(ε)`.
    pub d: u64,
    pub projections: BTreeMap<u32, SignedQPower>,
}

fn to_integer(x: &BigRational, what: &str) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::Inconsistent(format!("{what} = {x} is not an integer")));
    }
    Ok(x.to_integer())
}

fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The knot color: `1` for `ε = 0`, else the least odd `d` with `|a|d ≡ 1 (mod b)`.
pub fn d_eps(b: i64, a: i64, eps: Eps) -> u64 {
    match eps {
        Eps::Zero => 1,
        Eps::ZeroBar => (1..).step_by(2).find(|d| (a.abs() * d - 1).rem_euclid(b.abs()) == 0).unwrap() as u64,
    }
}

/// Builds the projections of `I^ε_{M^ε(b,a)}`. Negative `b` is reduced via
/// `L(-b,a) ≅ L(b,-a)`.
pub fn unified_lens(b: i64, a: i64, eps: Eps, theory: Theory) -> Result<UnifiedLensInvariant> {
    if b == 0 || gcd(a, b) != 1 || a == 0 {
        return precondition(format!("need b ≠ 0, a ≠ 0 and (a,b) = 1, got b={b}, a={a}"));
    }
    let (b, a) = if b < 0 { (-b, -a) } else { (b, a) };
    let mut projections = BTreeMap::new();
    let Some((p, l)) = prime_of(b)? else {
        projections.insert(0, SignedQPower { sign: 1, exponent: BigRational::zero() });
        return Ok(UnifiedLensInvariant { b, a, eps: Eps::Zero, theory, d: 1, projections });
    };
    if theory == Theory::SU2 && p == 2 {
        return precondition("SU(2) unified lens invariant needs odd b");
    }
    if theory == Theory::SO3 && p == 2 && eps == Eps::ZeroBar {
        return precondition("for p = 2 only the π_0 component exists");
    }
    let d = d_eps(b, a, eps);
    let di = d as i64;
    let dede4 = BigRational::from_integer(3.into()) * (dedekind_sum(1, b)? - dedekind_sum(a, b)?);
    let leg = if p == 2 { 1 } else { jacobi(a.abs(), p as i64)? as i64 };
    let sa = sn(a);
    let neg_a = (sa - 1) / 2;
    match eps {
        Eps::Zero => {
            let sign = match theory {
                Theory::SO3 => 1,
                Theory::SU2 => parity_sign((b + 3) / 2 * neg_a) * leg.pow(l),
            };
            projections.insert(0, SignedQPower { sign, exponent: dede4 });
        }
        Eps::ZeroBar => {
            let a_star = crate::numtheory::lens_star(a, b)?;
            let dede = &dede4 * BigRational::from_integer(4.into());
            let rb = |x: i128| BigRational::new(x.into(), b.into());
            let (a128, d128, as128) = (a as i128, di as i128, a_star as i128);
            let lin = a128 * (1 - d128 * d128) + 2 * (sa as i128 * d128 - 1);
            for j in 1..=l {
                let (u_prime, sign) = match theory {
                    Theory::SO3 => {
                        let sq = a128 * (as128 - sa as i128 * d128).pow(2);
                        let u = to_integer(&(&dede + rb(lin + sq)), "u^SO3")?;
                        let u_prime = to_integer(&(BigRational::from_integer(u) - rb(sq)), "u'^SO3")?;
                        let c = p.pow(j) as i64;
                        (u_prime, parity_sign((c + 1) / 2 * neg_a) * leg.pow(j))
                    }
                    Theory::SU2 => {
                        let e = l - j;
                        let bp = p.pow(e) as i128;
                        let w = (sa as i128 * a128 * d128 - 1).pow(2) * as128;
                        let u = to_integer(&(&dede + rb(lin + w * (bp - 1).pow(2))), "u^SU2")?;
                        let u_prime = to_integer(&(BigRational::from_integer(u) - rb(w * (bp - 1).pow(2))), "u'^SU2")?;
                        (u_prime, parity_sign((p.pow(e) as i64 + 1) / 2 * neg_a) * leg.pow(e))
                    }
                };
                if !(&u_prime % BigInt::from(4)).is_zero() {
                    return Err(Error::Inconsistent(format!("u' = {u_prime} is not divisible by 4")));
                }
                let exponent = BigRational::from_integer(u_prime / 4);
                projections.insert(j, SignedQPower { sign, exponent });
            }
        }
    }
    Ok(UnifiedLensInvariant { b, a, eps, theory, d, projections })
}

impl UnifiedLensInvariant {
    /// `ev_ξ(I^ε)`; the root must select this component.
    pub fn eval(&self, xi: &RootSpec) -> Result<CycNumber> {
        if xi.theory != self.theory {
            return precondition(format!("invariant is for {}, root is {}", self.theory, xi.theory));
        }
        let j = projection_index(self.b, xi.r)?;
        if self.b == 1 {
            return Ok(CycNumber::from_integer(1));
        }
        let want = if j == 0 { Eps::Zero } else { Eps::ZeroBar };
        if want != self.eps {
            return Err(Error::ProjectionMismatch(format!(
                "root of order {} selects the {want} component, invariant is {}",
                xi.r, self.eps
            )));
        }
        let last = *self.projections.keys().next_back().expect("nonempty projections");
        self.projections[&j.min(last)].eval(xi)
    }
}

/// `ev_ξ(I^ε_{M^ε(b,a)})`.
pub fn unified_lens_eval(inv: &UnifiedLensInvariant, xi: &RootSpec) -> Result<CycNumber> {
    inv.eval(xi)
}

/// Cyclotomic coefficients `C(k)` of a Hopf pair with fixed color `j`, with
/// trailing zeros removed (support is `k ≤ (j-1)/2`).
fn c_support(j: u64) -> Result<Vec<QuarterLaurent>> {
    let horizon = j as usize + 2;
    let mut c = hopf_pair_coeffs(j, horizon)?.entries;
    while c.last().is_some_and(QuarterLaurent::is_zero) {
        c.pop();
    }
    if c.len() > (j as usize).div_ceil(2) {
        return Err(Error::Inconsistent(format!("C(k) support of color {j} exceeds the horizon")));
    }
    Ok(c)
}

/// `ev_ξ(I_{(M,L)})` for connected sums of diagonal pieces and lens spaces
/// `L(b,±1)`, assembled as `∏ I_{L(b_i,1)} · Σ_k C(k) ∏ Q_{b_i,k_i}`.
pub fn unified_diagonal_eval(m: &ManifoldSpec, xi: &RootSpec) -> Result<CycNumber> {
    let mut comps: Vec<(i64, u64)> = Vec::new();
    for piece in &m.pieces {
        match piece {
            Piece::Lens(p) if p.a.abs() == 1 => comps.push((p.b * p.a, p.d)),
            Piece::Lens(p) => {
                return precondition(format!("L({},{}) is not diagonal", p.b, p.a));
            }
            Piece::Diagonal(dp) => {
                for (i, &b) in dp.framings.iter().enumerate() {
                    let j = if i == 0 { dp.knot_color.unwrap_or(1) } else { 1 };
                    comps.push((b, j));
                }
            }
        }
    }
    let mut acc = CycNumber::from_integer(1);
    for (b, j) in comps {
        if j % 2 == 0 {
            return precondition(format!("knot color must be odd, got {j}"));
        }
        let eps = Eps::for_root(b, xi.r)?;
        acc = acc * unified_lens(b, 1, eps, xi.theory)?.eval(xi)?;
        let mut sum = CycNumber::zero(xi.r);
        for (k, c) in c_support(j)?.iter().enumerate() {
            let ev = eval_at_root(c, xi);
            if ev.is_zero() {
                continue;
            }
            sum = sum + ev * q_eval_qbk(b, k as u64, xi)?.value;
        }
        acc = acc * sum;
    }
    Ok(acc.simplify())
}

/// Checks both equalities relating the two orientation normalizations of `Q_k`:
/// `(-1)^{k+1}[2k+1 k](q^{k+1};q)_{k+1}^{-1} = (-1)^{k+1}q^{-k(k+1)/2}/(q;q)_{k+1}
/// = q^{-(k+1)²}/(q^{-1};q^{-1})_{k+1}`, with the balanced binomial, and the
/// factorization `(q^{k+1};q)_{k+1} = (-1)^{k+1}q^{(3k²+5k+2)/4}{2k+1}!/{k}!`.
pub fn orientation_identity(k: u32) -> Result<bool> {
    let kk = k as i64;
    let sign = QuarterLaurent::constant(if k.is_multiple_of(2) { -1 } else { 1 });
    let poch_hi = q_pochhammer(kk + 1, k + 1);
    let poch = q_pochhammer(1, k + 1);
    let poch_inv = pochhammer_step(-4, -4, k + 1);
    // first equality cross-multiplied: [2k+1 k]·(q;q)_{k+1} = q^{-k(k+1)/2}·(q^{k+1};q)_{k+1}
    let first = qbinom(2 * k + 1, k)? * &poch == QuarterLaurent::u_pow(-2 * kk * (kk + 1)) * &poch_hi;
    // second: (-1)^{k+1}q^{-k(k+1)/2}(q^{-1};q^{-1})_{k+1} = q^{-(k+1)²}(q;q)_{k+1}
    let second = &sign * &QuarterLaurent::u_pow(-2 * kk * (kk + 1)) * poch_inv
        == QuarterLaurent::u_pow(-4 * (kk + 1) * (kk + 1)) * &poch;
    let brace_fact = |n: i64| (1..=n).fold(QuarterLaurent::one(), |acc, i| acc * qbrace(i));
    let ratio = brace_fact(2 * kk + 1).exact_div(&brace_fact(kk))?;
    let third = poch_hi == sign * QuarterLaurent::u_pow(3 * kk * kk + 5 * kk + 2) * ratio;
    Ok(first && second && third)
}

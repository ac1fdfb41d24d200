//! Numerical special values and the exact identity layer.
//!
//! The quantities needed downstream are the Riemann zeta function at odd
//! integers >= 3, the Dirichlet L-function of the odd conductor-3 character
//! at integers >= 2, Hurwitz zeta at rational shifts, and depth-1
//! polylogarithms on the closed unit disk (all unit-circle arguments that
//! occur are sixth roots of unity). Every headline value is computed by two
//! structurally different methods:
//!
//! - zeta: Euler-Maclaurin tail correction on direct summation, against the
//!   alternating-series (eta) acceleration with Chebyshev weights;
//! - L(chi_-3, s): the Hurwitz decomposition 3^-s (zeta(s,1/3) - zeta(s,2/3)),
//!   against Euler-Maclaurin applied to the period-grouped character series
//!   f(m) = (3m+1)^-s - (3m+2)^-s.
//!
//! All internal accumulation is fixed-point over BigInt with explicit guard
//! bits, so the returned rational approximants carry rigorous error budgets.

use crate::error::{Error, Result};
use crate::numbers::{PrecisionContext, Rational, Real, SqrtThree};
use crate::series::BernoulliTable;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The odd primitive character of conductor 3: chi(n) depends on n mod 3
/// with values chi(0) = 0, chi(1) = 1, chi(2) = -1.
#[derive(Clone, Copy, Debug, Default)]
pub struct CharacterChi3;

impl CharacterChi3 {
    pub fn value(&self, n: i64) -> i64 {
        match n.rem_euclid(3) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    /// Plain partial sum of the character series, for sanity checks only
    /// (convergence is far too slow for production precision).
    pub fn partial_sum_f64(&self, s: u32, terms: usize) -> f64 {
        let mut acc = 0.0;
        for n in 1..=terms {
            let c = self.value(n as i64);
            if c != 0 {
                acc += c as f64 / (n as f64).powi(s as i32);
            }
        }
        acc
    }
}

/// Basis values that Mahler-measure expressions are written against.
///
/// Critical kinds carry the pi power in the value itself:
/// `ZetaCritical(h)` is zeta(2h+1)/pi^{2h} (h >= 1) and `LCritical(h)` is
/// L(chi_-3, 2h+2)/pi^{2h+1} (h >= 0). Derivative kinds are zeta'(-2h) and
/// L'(chi_-3, -2h-1), each an exact rational (resp. sqrt3-rational) multiple
/// of the matching critical value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisTerm {
    ZetaCritical(u32),
    LCritical(u32),
    ZetaDeriv(u32),
    LDeriv(u32),
}

impl BasisTerm {
    pub fn validate(&self) -> Result<()> {
        match self {
            BasisTerm::ZetaCritical(h) | BasisTerm::ZetaDeriv(h) if *h == 0 => Err(
                Error::Domain("zeta basis terms require h >= 1".to_string()),
            ),
            _ => Ok(()),
        }
    }
}

// ---------------------------------------------------------------------------
// fixed-point Euler-Maclaurin engines
// ---------------------------------------------------------------------------

const FP_GUARD: u32 = 24;

/// (num/den)^s * 2^w, truncated.
fn fp_pow_ratio(num: &BigInt, den: &BigInt, s: u32, w: u32) -> BigInt {
    (num.pow(s) << u64::from(w)) / den.pow(s)
}

fn fp_to_rational(acc: BigInt, w: u32) -> Rational {
    Rational::new(acc, BigInt::one() << u64::from(w))
}

/// Hurwitz zeta(s, a) for integer s >= 2 and rational a in (0, 1], as a
/// rational approximation with absolute error below 2^-err_bits.
pub fn hurwitz_zeta_rational(s: u32, a: &Rational, err_bits: u32) -> Result<Rational> {
    if s < 2 {
        return Err(Error::Domain(format!("hurwitz zeta needs s >= 2, got {s}")));
    }
    if !a.is_positive() || a > &Rational::one() {
        return Err(Error::Domain(format!("hurwitz shift {a} outside (0, 1]")));
    }
    let w = err_bits + FP_GUARD;
    let bern = BernoulliTable::new();
    let p = a.numer().clone();
    let q = a.denom().clone();
    let mut n_terms: u64 = (u64::from(err_bits) / 3).max(16);

    for _attempt in 0..10 {
        // sum_{k=0}^{N-1} (k + a)^{-s} = sum (q / (kq + p))^s
        let mut acc = BigInt::zero();
        for k in 0..n_terms {
            let kqp = BigInt::from(k) * &q + &p;
            acc += fp_pow_ratio(&q, &kqp, s, w);
        }
        // integral tail (N+a)^{1-s}/(s-1) and midpoint (N+a)^{-s}/2
        let nqp = BigInt::from(n_terms) * &q + &p; // (N + a) = nqp / q
        acc += fp_pow_ratio(&q, &nqp, s - 1, w) / BigInt::from(s - 1);
        let pow_s = fp_pow_ratio(&q, &nqp, s, w);
        acc += &pow_s >> 1u32;

        // correction terms B_{2j}/(2j)! (s)_{2j-1} (N+a)^{-s-2j+1}; the power
        // is carried as an exact num/den pair so it can never underflow the
        // fixed-point scale while the Bernoulli factor grows
        let mut pow_num = q.pow(s + 1);
        let mut pow_den = nqp.pow(s + 1); // (N+a)^{-s-1} = pow_num / pow_den
        let step_num = &q * &q;
        let step_den = &nqp * &nqp;
        let mut poch = BigInt::from(s); // (s)_{2j-1}, j = 1
        let mut fact = Rational::from_int(2); // (2j)!
        let mut prev_mag: Option<BigInt> = None;
        let mut j = 1usize;
        let threshold = BigInt::one() << u64::from(FP_GUARD - 4); // well under the budget
        let converged = loop {
            let b = bern.get(2 * j);
            let coef = &(&b / &fact) * &Rational::from(poch.clone());
            let term = ((&pow_num * coef.numer()) << u64::from(w)) / (&pow_den * coef.denom());
            let mag = term.abs();
            if mag < threshold {
                break true;
            }
            if let Some(pm) = &prev_mag {
                if &mag >= pm {
                    break false; // asymptotic divergence: enlarge N
                }
            }
            acc += term;
            prev_mag = Some(mag);
            j += 1;
            poch *= BigInt::from(u64::from(s) + 2 * j as u64 - 3)
                * BigInt::from(u64::from(s) + 2 * j as u64 - 2);
            fact = &fact * &Rational::from_int((2 * j as i64 - 1) * 2 * j as i64);
            pow_num *= &step_num;
            pow_den *= &step_den;
        };
        if converged {
            return Ok(fp_to_rational(acc, w));
        }
        n_terms *= 2;
    }
    Err(Error::PrecisionUnreachable(format!(
        "hurwitz zeta({s}, {a}) at {err_bits} bits"
    )))
}

/// zeta(s) by Euler-Maclaurin (the direct-summation route).
pub fn zeta_em_rational(s: u32, err_bits: u32) -> Result<Rational> {
    hurwitz_zeta_rational(s, &Rational::one(), err_bits)
}

/// zeta(s) through the alternating series eta(s) = (1 - 2^{1-s}) zeta(s),
/// accelerated with Chebyshev weights; structurally independent of the
/// Euler-Maclaurin route.
pub fn zeta_alternating_rational(s: u32, err_bits: u32) -> Result<Rational> {
    if s < 2 {
        return Err(Error::Domain(format!("zeta needs s >= 2, got {s}")));
    }
    // truncation error <= 3/(3+sqrt8)^n and 3+sqrt8 > 2^2.54
    let n = ((f64::from(err_bits) + 6.0) / 2.54).ceil() as u64 + 2;
    let w = err_bits + FP_GUARD;
    // d_k = sum_{i<=k} u_i with u_i = n (n+i-1)! 4^i / ((n-i)! (2i)!);
    // u_0 = 1 and u_i = u_{i-1} (n+i-1)(n-i+1) 4 / ((2i-1)(2i))
    let mut ds = Vec::with_capacity(n as usize + 1);
    let mut t = BigInt::one();
    let mut acc_d = t.clone();
    ds.push(acc_d.clone());
    for i in 1..=n {
        t = t * BigInt::from(n + i - 1) * BigInt::from(n - i + 1) * 4
            / (BigInt::from(2 * i - 1) * BigInt::from(2 * i));
        acc_d += &t;
        ds.push(acc_d.clone());
    }
    let dn = ds[n as usize].clone();
    let mut acc = BigInt::zero();
    for k in 0..n {
        let diff = &ds[k as usize] - &dn; // d_k - d_n
        let kp1 = BigInt::from(k + 1);
        let contrib = ((diff << u64::from(w)) / kp1.pow(s)) * if k % 2 == 0 { 1 } else { -1 };
        acc += contrib;
    }
    // eta(s) = -(1/d_n) sum; zeta = eta / (1 - 2^{1-s})
    let eta = Rational::new(-acc, dn << u64::from(w));
    let one_minus = &Rational::one() - &Rational::from_int(2).pow(1 - i64::from(s));
    Ok(&eta / &one_minus)
}

/// L(chi_-3, s) by the Hurwitz decomposition (primary route).
pub fn l_chi3_hurwitz_rational(s: u32, err_bits: u32) -> Result<Rational> {
    let h1 = hurwitz_zeta_rational(s, &Rational::new(1, 3), err_bits + 3)?;
    let h2 = hurwitz_zeta_rational(s, &Rational::new(2, 3), err_bits + 3)?;
    Ok(&(&h1 - &h2) / &Rational::from_int(3).pow(i64::from(s)))
}

/// L(chi_-3, s) by Euler-Maclaurin on the period-grouped character series
/// f(m) = (3m+1)^{-s} - (3m+2)^{-s} (the direct-summation route).
pub fn l_chi3_direct_rational(s: u32, err_bits: u32) -> Result<Rational> {
    if s < 2 {
        return Err(Error::Domain(format!("L(chi_-3) needs s >= 2, got {s}")));
    }
    let w = err_bits + FP_GUARD;
    let bern = BernoulliTable::new();
    let one = BigInt::one();
    let mut n_terms: u64 = (u64::from(err_bits) / 3).max(16);
    for _attempt in 0..10 {
        let mut acc = BigInt::zero();
        for m in 0..n_terms {
            let a = BigInt::from(3 * m + 1);
            let b = BigInt::from(3 * m + 2);
            acc += fp_pow_ratio(&one, &a, s, w) - fp_pow_ratio(&one, &b, s, w);
        }
        let na = BigInt::from(3 * n_terms + 1);
        let nb = BigInt::from(3 * n_terms + 2);
        // integral: [(3N+1)^{1-s} - (3N+2)^{1-s}] / (3(s-1))
        acc += (fp_pow_ratio(&one, &na, s - 1, w) - fp_pow_ratio(&one, &nb, s - 1, w))
            / BigInt::from(3 * (s - 1));
        // f(N)/2
        let fa = fp_pow_ratio(&one, &na, s, w);
        let fb = fp_pow_ratio(&one, &nb, s, w);
        acc += (&fa - &fb) >> 1u32;
        // corrections: + B_{2j}/(2j)! 3^{2j-1} (s)_{2j-1}
        //              * [(3N+1)^{-s-2j+1} - (3N+2)^{-s-2j+1}];
        // powers carried exactly (denominators only, numerators are 1)
        let mut den_a = na.pow(s + 1);
        let mut den_b = nb.pow(s + 1);
        let step_a = &na * &na;
        let step_b = &nb * &nb;
        let mut poch = BigInt::from(s);
        let mut three_pow = BigInt::from(3); // 3^{2j-1}
        let mut fact = Rational::from_int(2);
        let mut prev_mag: Option<BigInt> = None;
        let mut j = 1usize;
        let threshold = BigInt::one() << u64::from(FP_GUARD - 4);
        let converged = loop {
            let coef = &(&bern.get(2 * j) / &fact) * &Rational::from(&poch * &three_pow);
            let pow_a = (coef.numer() << u64::from(w)) / (&den_a * coef.denom());
            let pow_b = (coef.numer() << u64::from(w)) / (&den_b * coef.denom());
            let term = &pow_a - &pow_b;
            // bound the remainder by the sum of the two monotone pieces
            let bound = pow_a.abs() + pow_b.abs();
            if bound < threshold {
                break true;
            }
            if let Some(pm) = &prev_mag {
                if &bound >= pm {
                    break false;
                }
            }
            acc += term;
            prev_mag = Some(bound);
            j += 1;
            poch *= BigInt::from(u64::from(s) + 2 * j as u64 - 3)
                * BigInt::from(u64::from(s) + 2 * j as u64 - 2);
            three_pow *= 9;
            fact = &fact * &Rational::from_int((2 * j as i64 - 1) * 2 * j as i64);
            den_a *= &step_a;
            den_b *= &step_b;
        };
        if converged {
            return Ok(fp_to_rational(acc, w));
        }
        n_terms *= 2;
    }
    Err(Error::PrecisionUnreachable(format!(
        "L(chi_-3, {s}) at {err_bits} bits"
    )))
}

// ---------------------------------------------------------------------------
// public dual-checked evaluators
// ---------------------------------------------------------------------------

fn dual_check(what: &str, primary: Rational, oracle: Rational, err_bits: u32) -> Result<Rational> {
    let diff = (&primary - &oracle).abs();
    let tol = Rational::new(BigInt::from(4), BigInt::one() << u64::from(err_bits));
    if diff > tol {
        return Err(Error::Inconsistent(format!(
            "{what}: dual evaluation methods disagree by {}",
            diff.to_f64()
        )));
    }
    Ok(primary)
}

/// zeta(m) for odd m >= 3, correct to the context's target digits, with the
/// Euler-Maclaurin and alternating-series routes cross-checked at full
/// working precision.
pub fn zeta_odd(m: u32, ctx: &PrecisionContext) -> Result<Real> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::Domain(format!("zeta_odd needs odd m >= 3, got {m}")));
    }
    let bits = ctx.budget_bits();
    let v = dual_check(
        &format!("zeta({m})"),
        zeta_em_rational(m, bits)?,
        zeta_alternating_rational(m, bits)?,
        bits,
    )?;
    Ok(Real::from_rational(&v, ctx.bits()))
}

/// L(chi_-3, s) for s >= 2, dual-checked.
pub fn l_chi3(s: u32, ctx: &PrecisionContext) -> Result<Real> {
    let bits = ctx.budget_bits();
    let v = dual_check(
        &format!("L(chi_-3, {s})"),
        l_chi3_hurwitz_rational(s, bits)?,
        l_chi3_direct_rational(s, bits)?,
        bits,
    )?;
    Ok(Real::from_rational(&v, ctx.bits()))
}

/// Rational approximants for exact-pipeline consumers that fold the value
/// into larger expressions before rounding.
pub fn zeta_odd_rational(m: u32, err_bits: u32) -> Result<Rational> {
    zeta_em_rational(m, err_bits)
}

pub fn l_chi3_rational(s: u32, err_bits: u32) -> Result<Rational> {
    l_chi3_hurwitz_rational(s, err_bits)
}

// ---------------------------------------------------------------------------
// polylogarithms
// ---------------------------------------------------------------------------

/// Argument of a depth-1 polylogarithm on the closed unit disk.
#[derive(Clone, Debug)]
pub enum PolylogArg {
    /// exp(2 pi i p / q); only q | 6 admits exact Q(sqrt3) trigonometry.
    UnitRoot { p: i64, q: i64 },
    /// A point strictly inside the unit disk (or zero).
    Inside { re: Rational, im: Rational },
}

/// Li_n(z) as (re, im) at the context precision.
///
/// On the unit circle the argument must be a sixth root of unity and the
/// value is assembled from Hurwitz zeta values at thirds/sixths; inside the
/// disk the defining series is summed with the explicit tail bound
/// `|tail| <= |z|^{K+1} / ((1 - |z|) K^n)`.
pub fn polylog(n: u32, z: &PolylogArg, ctx: &PrecisionContext) -> Result<(Real, Real)> {
    if n < 2 {
        return Err(Error::Domain(format!("polylog needs n >= 2, got {n}")));
    }
    match z {
        PolylogArg::UnitRoot { p, q } => polylog_unit_root(n, *p, *q, ctx),
        PolylogArg::Inside { re, im } => polylog_inside(n, re, im, ctx),
    }
}

fn polylog_unit_root(n: u32, p: i64, q: i64, ctx: &PrecisionContext) -> Result<(Real, Real)> {
    if !(q == 1 || q == 2 || q == 3 || q == 6) {
        return Err(Error::Domain(format!(
            "unit-root polylog supports q in {{1,2,3,6}}, got {q}"
        )));
    }
    let bits = ctx.budget_bits();
    // Li_n(e^{2 pi i p/q}) = q^{-n} sum_{r=1}^{q} e^{2 pi i p r / q} zeta(n, r/q)
    let mut re_rat = Rational::zero();
    let mut re_root = Rational::zero();
    let mut im_rat = Rational::zero();
    let mut im_root = Rational::zero();
    for r in 1..=q {
        let h = hurwitz_zeta_rational(n, &Rational::new(r, q), bits + 4)?;
        // phase 2 p r / q in units of pi
        let phase = Rational::new(2 * p * r, q);
        let (c, s) = crate::series::phase_cos_sin(&phase)?;
        re_rat = &re_rat + &(c.rat() * &h);
        re_root = &re_root + &(c.root() * &h);
        im_rat = &im_rat + &(s.rat() * &h);
        im_root = &im_root + &(s.root() * &h);
    }
    let scale = Rational::from_int(q).pow(-i64::from(n));
    let bits_out = ctx.bits();
    let sqrt3 = Real::sqrt3(bits_out);
    let assemble = |rat: &Rational, root: &Rational| -> Real {
        let a = Real::from_rational(&(rat * &scale), bits_out);
        let b = Real::from_rational(&(root * &scale), bits_out).mul(&sqrt3);
        a.add(&b)
    };
    Ok((assemble(&re_rat, &re_root), assemble(&im_rat, &im_root)))
}

fn polylog_inside(
    n: u32,
    re: &Rational,
    im: &Rational,
    ctx: &PrecisionContext,
) -> Result<(Real, Real)> {
    let norm2 = &(re * re) + &(im * im);
    if norm2 >= Rational::one() {
        return Err(Error::Domain(
            "polylog series argument must satisfy |z| < 1 (use UnitRoot on the circle)"
                .to_string(),
        ));
    }
    let bits_out = ctx.bits();
    if norm2.is_zero() {
        return Ok((Real::zero(bits_out), Real::zero(bits_out)));
    }
    let eps = Rational::new(BigInt::one(), BigInt::one() << u64::from(ctx.budget_bits()));
    // |z| <= rho := (1 + |z|^2)/2 < 1
    let rho = &(&Rational::one() + &norm2) / &Rational::from_int(2);
    let one_minus_rho = &Rational::one() - &rho;
    let mut zr = re.clone();
    let mut zi = im.clone();
    let mut sum_r = Rational::zero();
    let mut sum_i = Rational::zero();
    let mut rho_pow = rho.clone();
    let mut k: u64 = 1;
    loop {
        let kn = Rational::from_int(k as i64).pow(i64::from(n));
        sum_r = &sum_r + &(&zr / &kn);
        sum_i = &sum_i + &(&zi / &kn);
        rho_pow = &rho_pow * &rho;
        // tail bound |z|^{K+1}/((1-|z|) K^n)
        let bound = &(&rho_pow / &one_minus_rho) / &kn;
        if bound < eps {
            break;
        }
        if k > 200_000 {
            return Err(Error::PrecisionUnreachable(
                "polylog series converges too slowly for the requested precision".to_string(),
            ));
        }
        k += 1;
        let nr = &(&zr * re) - &(&zi * im);
        let ni = &(&zr * im) + &(&zi * re);
        zr = nr;
        zi = ni;
    }
    Ok((
        Real::from_rational(&sum_r, bits_out),
        Real::from_rational(&sum_i, bits_out),
    ))
}

// ---------------------------------------------------------------------------
// exact identity layer
// ---------------------------------------------------------------------------

/// Named sixth-root-of-unity polylog identities. `w` denotes exp(2 pi i/3).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// Li_{2h+1}(1) = zeta(2h+1), h >= 1
    LiOne,
    /// Li_{2h+1}(-1) = -(1 - 4^-h) zeta(2h+1), h >= 1
    LiMinusOne,
    /// Li_{2h+1}(w) + Li_{2h+1}(w^2) = -(1 - 9^-h) zeta(2h+1), h >= 1
    LiOmegaSum,
    /// Li_{2h+1}(-w) + Li_{2h+1}(-w^2) = (1 - 9^-h)(1 - 4^-h) zeta(2h+1), h >= 1
    LiMinusOmegaSum,
    /// Li_{2h+2}(w^2) - Li_{2h+2}(w) = -sqrt3 i L(chi_-3, 2h+2), h >= 0
    LOmegaDiff,
    /// Li_{2h+2}(-w) - Li_{2h+2}(-w^2) = -sqrt3 i (1 + 2^{-2h-1}) L(chi_-3, 2h+2), h >= 0
    LMinusOmegaDiff,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::LiOne,
        Identity::LiMinusOne,
        Identity::LiOmegaSum,
        Identity::LiMinusOmegaSum,
        Identity::LOmegaDiff,
        Identity::LMinusOmegaDiff,
    ];

    pub fn parse(s: &str) -> Option<Identity> {
        match s {
            "li-one" | "Li(1)" => Some(Identity::LiOne),
            "li-minus-one" | "Li(-1)" => Some(Identity::LiMinusOne),
            "li-omega-sum" | "Li(w)+Li(w^2)" => Some(Identity::LiOmegaSum),
            "li-minus-omega-sum" | "Li(-w)+Li(-w^2)" => Some(Identity::LiMinusOmegaSum),
            "l-omega-diff" | "Li(w^2)-Li(w)" => Some(Identity::LOmegaDiff),
            "l-minus-omega-diff" | "Li(-w)-Li(-w^2)" => Some(Identity::LMinusOmegaDiff),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Identity::LiOne => "li-one",
            Identity::LiMinusOne => "li-minus-one",
            Identity::LiOmegaSum => "li-omega-sum",
            Identity::LiMinusOmegaSum => "li-minus-omega-sum",
            Identity::LOmegaDiff => "l-omega-diff",
            Identity::LMinusOmegaDiff => "l-minus-omega-diff",
        }
    }

    /// Is this a zeta-weight (odd) identity, requiring h >= 1?
    pub fn is_zeta_kind(&self) -> bool {
        matches!(
            self,
            Identity::LiOne
                | Identity::LiMinusOne
                | Identity::LiOmegaSum
                | Identity::LiMinusOmegaSum
        )
    }
}

/// The exact prefactor on the right-hand side of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityCoeff {
    /// Combination = coeff * zeta(2h+1).
    Zeta(Rational),
    /// Combination = coeff * i * L(chi_-3, 2h+2); coeff lies in sqrt3*Q.
    LTimesI(SqrtThree),
}

pub fn reduce_identity(id: Identity, h: u32) -> Result<IdentityCoeff> {
    let four = Rational::from_int(4);
    let nine = Rational::from_int(9);
    let one = Rational::one();
    if id.is_zeta_kind() && h < 1 {
        return Err(Error::Domain(format!(
            "identity {} requires h >= 1",
            id.name()
        )));
    }
    match id {
        Identity::LiOne => Ok(IdentityCoeff::Zeta(one)),
        Identity::LiMinusOne => Ok(IdentityCoeff::Zeta(-(&one - &four.pow(-i64::from(h))))),
        Identity::LiOmegaSum => Ok(IdentityCoeff::Zeta(-(&one - &nine.pow(-i64::from(h))))),
        Identity::LiMinusOmegaSum => Ok(IdentityCoeff::Zeta(
            &(&one - &nine.pow(-i64::from(h))) * &(&one - &four.pow(-i64::from(h))),
        )),
        Identity::LOmegaDiff => Ok(IdentityCoeff::LTimesI(SqrtThree::new(
            Rational::zero(),
            Rational::from_int(-1),
        ))),
        Identity::LMinusOmegaDiff => {
            let factor = &one + &Rational::from_int(2).pow(-(2 * i64::from(h) + 1));
            Ok(IdentityCoeff::LTimesI(SqrtThree::new(
                Rational::zero(),
                -factor,
            )))
        }
    }
}

/// The polylog arguments on the left-hand side of an identity, with signs:
/// the combination is `sum sign * Li_weight(arg)`.
pub fn identity_terms(id: Identity) -> Vec<(i64, PolylogArg)> {
    let root = |p: i64, q: i64| PolylogArg::UnitRoot { p, q };
    match id {
        Identity::LiOne => vec![(1, root(0, 1))],
        Identity::LiMinusOne => vec![(1, root(1, 2))],
        Identity::LiOmegaSum => vec![(1, root(1, 3)), (1, root(2, 3))],
        // -w = exp(2 pi i * 5/6), -w^2 = exp(2 pi i * 1/6)
        Identity::LiMinusOmegaSum => vec![(1, root(5, 6)), (1, root(1, 6))],
        Identity::LOmegaDiff => vec![(1, root(2, 3)), (-1, root(1, 3))],
        Identity::LMinusOmegaDiff => vec![(1, root(5, 6)), (-1, root(1, 6))],
    }
}

/// Weight of the polylogarithms in an identity at parameter h.
pub fn identity_weight(id: Identity, h: u32) -> u32 {
    if id.is_zeta_kind() {
        2 * h + 1
    } else {
        2 * h + 2
    }
}

// ---------------------------------------------------------------------------
// derivative basis
// ---------------------------------------------------------------------------

/// Exact factor kappa with `zeta'(-2h) = kappa * zeta(2h+1)/pi^{2h}`:
/// kappa = (-1)^h (2h)! / 2^{2h+1}.
pub fn zeta_deriv_factor(h: u32) -> Rational {
    let mut fact = Rational::one();
    for i in 2..=(2 * h) {
        fact = &fact * &Rational::from_int(i64::from(i));
    }
    let sign = if h % 2 == 0 { 1 } else { -1 };
    &(&fact * &Rational::from_int(sign)) / &Rational::from_int(2).pow(2 * i64::from(h) + 1)
}

/// Exact factor kappa with
/// `L'(chi_-3, -2h-1) = kappa * L(chi_-3, 2h+2)/pi^{2h+1}`:
/// kappa = (-1)^h (2h+1)! 3^{2h+2} / (2^{2h+2} sqrt3), an element of sqrt3*Q.
pub fn l_deriv_factor(h: u32) -> SqrtThree {
    let mut fact = Rational::one();
    for i in 2..=(2 * h + 1) {
        fact = &fact * &Rational::from_int(i64::from(i));
    }
    let sign = if h % 2 == 0 { 1 } else { -1 };
    // 3^{2h+2}/sqrt3 = 3^{2h+1} * sqrt3
    let mag = &(&fact * &Rational::from_int(3).pow(2 * i64::from(h) + 1))
        / &Rational::from_int(2).pow(2 * i64::from(h) + 2);
    SqrtThree::new(Rational::zero(), &mag * &Rational::from_int(sign))
}

/// A derivative-basis value with its exact conversion factor.
#[derive(Clone, Debug)]
pub struct DerivValue {
    /// zeta'(-2h) = factor * zeta(2h+1)/pi^{2h} (factor rational), or
    /// L'(chi_-3,-2h-1) = factor * L(chi_-3,2h+2)/pi^{2h+1} (factor in sqrt3*Q).
    pub factor: SqrtThree,
    pub value: Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivKind {
    Zeta,
    L,
}

/// zeta'(-2h) (h >= 1) or L'(chi_-3, -2h-1) (h >= 0) via the
/// functional-equation factor times the critical value.
pub fn deriv_basis(h: u32, which: DerivKind, ctx: &PrecisionContext) -> Result<DerivValue> {
    let bits = ctx.bits();
    match which {
        DerivKind::Zeta => {
            if h < 1 {
                return Err(Error::Domain("zeta'(-2h) needs h >= 1".to_string()));
            }
            let factor = SqrtThree::from_rational(zeta_deriv_factor(h));
            let crit = zeta_odd(2 * h + 1, ctx)?.div(&Real::pi(bits).powi(2 * h));
            Ok(DerivValue {
                value: factor.eval(ctx).mul(&crit),
                factor,
            })
        }
        DerivKind::L => {
            let factor = l_deriv_factor(h);
            let crit = l_chi3(2 * h + 2, ctx)?.div(&Real::pi(bits).powi(2 * h + 1));
            Ok(DerivValue {
                value: factor.eval(ctx).mul(&crit),
                factor,
            })
        }
    }
}

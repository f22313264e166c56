//! The coefficient ring of transfer-matrix weights.
//!
//! Four interchangeable modes: dense big-integer polynomials in Q at a fixed
//! rational v, dense bivariate polynomials in Q and v, residue polynomials
//! modulo a prime below 2^31, and plain f64 scalars at fixed numeric (Q, v).
//! Polynomials never store trailing zero coefficients; the zero polynomial
//! is the empty list.
//!
//! Primes stay below 2^31 so a product of two residues fits in a u64
//! intermediate. Reconstruction from residues uses a symmetric-range
//! Chinese-remainder lift, which recovers the alternating signs of
//! chromatic coefficients.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("weight mode mismatch in {0}")]
    ModeMismatch(&'static str),
    #[error("modular weights with different primes: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("duplicate prime {0} in residue set")]
    DuplicatePrime(u32),
    #[error("prime schedule exhausted after {0} primes without stabilisation")]
    ScheduleExhausted(usize),
    #[error("prime {prime} divides the denominator of v")]
    PrimeDividesDenominator { prime: u32 },
    #[error("polynomial parse error: {0}")]
    Parse(String),
}

/// Exact rational value for the temperature-like variable v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let mut num = num;
        let mut den = den;
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_zero() {
            num /= &g;
            den /= &g;
        }
        Some(Rational { num, den })
    }

    pub fn from_integer(n: i64) -> Self {
        Rational {
            num: BigInt::from(n),
            den: BigInt::one(),
        }
    }

    /// Parses `p` or `p/q` with optional sign on the numerator.
    pub fn parse(text: &str) -> Result<Self, WeightError> {
        let text = text.trim();
        let (num_s, den_s) = match text.split_once('/') {
            Some((a, b)) => (a, b),
            None => (text, "1"),
        };
        let num: BigInt = num_s
            .parse()
            .map_err(|_| WeightError::Parse(format!("bad rational numerator {num_s:?}")))?;
        let den: BigInt = den_s
            .parse()
            .map_err(|_| WeightError::Parse(format!("bad rational denominator {den_s:?}")))?;
        Rational::new(num, den).ok_or_else(|| WeightError::Parse("zero denominator".into()))
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_minus_one(&self) -> bool {
        self.den.is_one() && self.num == BigInt::from(-1)
    }

    pub fn to_f64(&self) -> f64 {
        // accurate enough for scalar mode: both parts reduced
        self.num.to_f64().unwrap_or(f64::NAN) / self.den.to_f64().unwrap_or(f64::NAN)
    }

    /// Residues (num mod p, den mod p). Fails when p divides the denominator.
    pub fn reduce_mod(&self, p: u32) -> Result<(u32, u32), WeightError> {
        let pm = BigInt::from(p);
        let to_res = |x: &BigInt| -> u32 {
            let r = x.mod_floor(&pm);
            r.to_u32().unwrap()
        };
        let den = to_res(&self.den);
        if den == 0 {
            return Err(WeightError::PrimeDividesDenominator { prime: p });
        }
        Ok((to_res(&self.num), den))
    }
}

/// Which coefficient ring a computation runs in, with the fixed values the
/// ring needs bound up front.
#[derive(Clone, Debug)]
pub enum WeightMode {
    /// Polynomial in Q with v fixed to an exact rational. For non-integer
    /// v = p/q the computation carries the q^M-scaled integer polynomial; the
    /// caller divides the denominator back out (see [`crate::cli`]).
    Univariate { v: Rational },
    /// Polynomial in both Q and v.
    Bivariate,
    /// Polynomial in Q with coefficients modulo `prime`, v fixed.
    Modular { prime: u32, v: Rational },
    /// Double-precision evaluation at fixed numeric Q and v.
    Scalar { q: f64, v: f64 },
}

impl WeightMode {
    pub fn name(&self) -> &'static str {
        match self {
            WeightMode::Univariate { .. } => "univariate",
            WeightMode::Bivariate => "bivariate",
            WeightMode::Modular { .. } => "modular",
            WeightMode::Scalar { .. } => "scalar",
        }
    }

    /// True when the bound v is exactly -1 in an exact mode, the premise of
    /// the pruning projector.
    pub fn allows_pruning(&self) -> bool {
        match self {
            WeightMode::Univariate { v } | WeightMode::Modular { v, .. } => v.is_minus_one(),
            _ => false,
        }
    }
}

/// A transfer-matrix weight: one element of the configured coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    /// Dense coefficients over Q, ascending degree, no trailing zeros.
    Univariate(Vec<BigInt>),
    /// `grid[j][i]` is the coefficient of v^j Q^i; no trailing zero rows, no
    /// trailing zeros within a row.
    Bivariate(Vec<Vec<BigInt>>),
    /// Dense residues over Q modulo `prime`.
    Modular { prime: u32, coeffs: Vec<u32> },
    Scalar(f64),
}

fn trim_int(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn trim_mod(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn trim_grid(g: &mut Vec<Vec<BigInt>>) {
    for row in g.iter_mut() {
        trim_int(row);
    }
    while g.last().is_some_and(|r| r.is_empty()) {
        g.pop();
    }
}

#[inline]
fn addm(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
fn mulm(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

impl Weight {
    /// The multiplicative identity of `mode`.
    pub fn one(mode: &WeightMode) -> Weight {
        match mode {
            WeightMode::Univariate { .. } => Weight::Univariate(vec![BigInt::one()]),
            WeightMode::Bivariate => Weight::Bivariate(vec![vec![BigInt::one()]]),
            WeightMode::Modular { prime, .. } => Weight::Modular {
                prime: *prime,
                coeffs: vec![1],
            },
            WeightMode::Scalar { .. } => Weight::Scalar(1.0),
        }
    }

    pub fn zero(mode: &WeightMode) -> Weight {
        match mode {
            WeightMode::Univariate { .. } => Weight::Univariate(Vec::new()),
            WeightMode::Bivariate => Weight::Bivariate(Vec::new()),
            WeightMode::Modular { prime, .. } => Weight::Modular {
                prime: *prime,
                coeffs: Vec::new(),
            },
            WeightMode::Scalar { .. } => Weight::Scalar(0.0),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Weight::Univariate(c) => c.is_empty(),
            Weight::Bivariate(g) => g.is_empty(),
            Weight::Modular { coeffs, .. } => coeffs.is_empty(),
            Weight::Scalar(x) => *x == 0.0,
        }
    }

    pub fn add(&self, other: &Weight) -> Result<Weight, WeightError> {
        match (self, other) {
            (Weight::Univariate(a), Weight::Univariate(b)) => {
                let mut out = vec![BigInt::zero(); a.len().max(b.len())];
                for (i, c) in a.iter().enumerate() {
                    out[i] += c;
                }
                for (i, c) in b.iter().enumerate() {
                    out[i] += c;
                }
                trim_int(&mut out);
                Ok(Weight::Univariate(out))
            }
            (Weight::Bivariate(a), Weight::Bivariate(b)) => {
                let mut out: Vec<Vec<BigInt>> = vec![Vec::new(); a.len().max(b.len())];
                for (j, row) in a.iter().enumerate() {
                    out[j] = row.clone();
                }
                for (j, row) in b.iter().enumerate() {
                    if out[j].len() < row.len() {
                        out[j].resize(row.len(), BigInt::zero());
                    }
                    for (i, c) in row.iter().enumerate() {
                        out[j][i] += c;
                    }
                }
                trim_grid(&mut out);
                Ok(Weight::Bivariate(out))
            }
            (
                Weight::Modular { prime: p, coeffs: a },
                Weight::Modular {
                    prime: q,
                    coeffs: b,
                },
            ) => {
                if p != q {
                    return Err(WeightError::PrimeMismatch(*p, *q));
                }
                let mut out = vec![0_u32; a.len().max(b.len())];
                for (i, &c) in a.iter().enumerate() {
                    out[i] = addm(out[i], c, *p);
                }
                for (i, &c) in b.iter().enumerate() {
                    out[i] = addm(out[i], c, *p);
                }
                trim_mod(&mut out);
                Ok(Weight::Modular {
                    prime: *p,
                    coeffs: out,
                })
            }
            (Weight::Scalar(a), Weight::Scalar(b)) => Ok(Weight::Scalar(a + b)),
            _ => Err(WeightError::ModeMismatch("add")),
        }
    }

    pub fn mul(&self, other: &Weight) -> Result<Weight, WeightError> {
        match (self, other) {
            (Weight::Univariate(a), Weight::Univariate(b)) => {
                Ok(Weight::Univariate(mul_poly(a, b)))
            }
            (Weight::Bivariate(a), Weight::Bivariate(b)) => {
                if a.is_empty() || b.is_empty() {
                    return Ok(Weight::Bivariate(Vec::new()));
                }
                let mut out: Vec<Vec<BigInt>> = vec![Vec::new(); a.len() + b.len() - 1];
                for (ja, ra) in a.iter().enumerate() {
                    for (jb, rb) in b.iter().enumerate() {
                        if ra.is_empty() || rb.is_empty() {
                            continue;
                        }
                        let prod = mul_poly(ra, rb);
                        let row = &mut out[ja + jb];
                        if row.len() < prod.len() {
                            row.resize(prod.len(), BigInt::zero());
                        }
                        for (i, c) in prod.into_iter().enumerate() {
                            row[i] += c;
                        }
                    }
                }
                trim_grid(&mut out);
                Ok(Weight::Bivariate(out))
            }
            (
                Weight::Modular { prime: p, coeffs: a },
                Weight::Modular {
                    prime: q,
                    coeffs: b,
                },
            ) => {
                if p != q {
                    return Err(WeightError::PrimeMismatch(*p, *q));
                }
                if a.is_empty() || b.is_empty() {
                    return Ok(Weight::Modular {
                        prime: *p,
                        coeffs: Vec::new(),
                    });
                }
                let mut out = vec![0_u32; a.len() + b.len() - 1];
                for (i, &ca) in a.iter().enumerate() {
                    for (j, &cb) in b.iter().enumerate() {
                        out[i + j] = addm(out[i + j], mulm(ca, cb, *p), *p);
                    }
                }
                trim_mod(&mut out);
                Ok(Weight::Modular {
                    prime: *p,
                    coeffs: out,
                })
            }
            (Weight::Scalar(a), Weight::Scalar(b)) => Ok(Weight::Scalar(a * b)),
            _ => Err(WeightError::ModeMismatch("mul")),
        }
    }

    /// Multiplies by Q: a degree shift in exact modes, a numeric factor in
    /// scalar mode.
    pub fn scale_q(&self, mode: &WeightMode) -> Weight {
        match self {
            Weight::Univariate(c) => {
                if c.is_empty() {
                    return self.clone();
                }
                let mut out = Vec::with_capacity(c.len() + 1);
                out.push(BigInt::zero());
                out.extend(c.iter().cloned());
                Weight::Univariate(out)
            }
            Weight::Bivariate(g) => Weight::Bivariate(
                g.iter()
                    .map(|row| {
                        if row.is_empty() {
                            Vec::new()
                        } else {
                            let mut out = Vec::with_capacity(row.len() + 1);
                            out.push(BigInt::zero());
                            out.extend(row.iter().cloned());
                            out
                        }
                    })
                    .collect(),
            ),
            Weight::Modular { prime, coeffs } => {
                if coeffs.is_empty() {
                    return self.clone();
                }
                let mut out = Vec::with_capacity(coeffs.len() + 1);
                out.push(0);
                out.extend(coeffs.iter().copied());
                Weight::Modular {
                    prime: *prime,
                    coeffs: out,
                }
            }
            Weight::Scalar(x) => match mode {
                WeightMode::Scalar { q, .. } => Weight::Scalar(x * q),
                _ => unreachable!("scalar weight in non-scalar mode"),
            },
        }
    }

    /// Multiplies by the bound v: a numeric factor at fixed v, a shift in
    /// the v dimension for bivariate weights. For rational v the factor is
    /// the numerator; pair with [`Weight::scale_v_den`] on the identity
    /// branch of the edge operator.
    pub fn scale_v(&self, mode: &WeightMode) -> Weight {
        match self {
            Weight::Univariate(c) => match mode {
                WeightMode::Univariate { v } => {
                    let mut out: Vec<BigInt> = c.iter().map(|x| x * v.num()).collect();
                    trim_int(&mut out);
                    Weight::Univariate(out)
                }
                _ => unreachable!("univariate weight in mismatched mode"),
            },
            Weight::Bivariate(g) => {
                if g.is_empty() {
                    return self.clone();
                }
                let mut out = Vec::with_capacity(g.len() + 1);
                out.push(Vec::new());
                out.extend(g.iter().cloned());
                Weight::Bivariate(out)
            }
            Weight::Modular { prime, coeffs } => match mode {
                WeightMode::Modular { v, .. } => {
                    let (vn, _) = v.reduce_mod(*prime).expect("checked at engine setup");
                    let mut out: Vec<u32> =
                        coeffs.iter().map(|&c| mulm(c, vn, *prime)).collect();
                    trim_mod(&mut out);
                    Weight::Modular {
                        prime: *prime,
                        coeffs: out,
                    }
                }
                _ => unreachable!("modular weight in mismatched mode"),
            },
            Weight::Scalar(x) => match mode {
                WeightMode::Scalar { v, .. } => Weight::Scalar(x * v),
                _ => unreachable!("scalar weight in non-scalar mode"),
            },
        }
    }

    /// Multiplies by the denominator of the bound rational v (the identity
    /// branch of the scaled edge operator `den·1 + num·J`). A no-op in
    /// bivariate and scalar modes and whenever v is an integer.
    pub fn scale_v_den(&self, mode: &WeightMode) -> Weight {
        match mode {
            WeightMode::Univariate { v } => {
                if v.is_integer() {
                    return self.clone();
                }
                match self {
                    Weight::Univariate(c) => {
                        let mut out: Vec<BigInt> = c.iter().map(|x| x * v.den()).collect();
                        trim_int(&mut out);
                        Weight::Univariate(out)
                    }
                    _ => unreachable!(),
                }
            }
            WeightMode::Modular { prime, v } => {
                if v.is_integer() {
                    return self.clone();
                }
                match self {
                    Weight::Modular { coeffs, .. } => {
                        let (_, vd) = v.reduce_mod(*prime).expect("checked at engine setup");
                        let mut out: Vec<u32> =
                            coeffs.iter().map(|&c| mulm(c, vd, *prime)).collect();
                        trim_mod(&mut out);
                        Weight::Modular {
                            prime: *prime,
                            coeffs: out,
                        }
                    }
                    _ => unreachable!(),
                }
            }
            _ => self.clone(),
        }
    }
}

fn mul_poly(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    trim_int(&mut out);
    out
}

/// Horner evaluation of an integer polynomial.
pub fn eval_univariate(coeffs: &[BigInt], q: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * q + c;
    }
    acc
}

/// Reduces signed coefficients into [0, p).
pub fn reduce_univariate_mod(coeffs: &[BigInt], p: u32) -> Vec<u32> {
    let pm = BigInt::from(p);
    let mut out: Vec<u32> = coeffs
        .iter()
        .map(|c| c.mod_floor(&pm).to_u32().unwrap())
        .collect();
    trim_mod(&mut out);
    out
}

// ---------------------------------------------------------------------------
// Primes and Chinese-remainder reconstruction
// ---------------------------------------------------------------------------

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for n < 3.3e24 with this witness set
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1_u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct primes below 2^31, generated on demand in strictly descending
/// order from the largest.
pub struct PrimeSchedule {
    primes: Vec<u32>,
}

impl PrimeSchedule {
    pub fn new() -> Self {
        PrimeSchedule { primes: Vec::new() }
    }

    /// The `i`-th prime of the schedule (0-based).
    pub fn prime(&mut self, i: usize) -> u32 {
        while self.primes.len() <= i {
            let mut candidate = match self.primes.last() {
                Some(&p) => p - 1,
                None => (1_u32 << 31) - 1,
            };
            while !is_prime_u64(candidate as u64) {
                candidate -= 1;
            }
            self.primes.push(candidate);
        }
        self.primes[i]
    }
}

impl Default for PrimeSchedule {
    fn default() -> Self {
        Self::new()
    }
}

/// Per-coefficient Chinese-remainder lift into the symmetric range
/// (-P/2, P/2), P being the product of the supplied primes.
pub fn crt_reconstruct(residues: &[(u32, Vec<u32>)]) -> Result<Vec<BigInt>, WeightError> {
    let mut seen: Vec<u32> = residues.iter().map(|&(p, _)| p).collect();
    seen.sort_unstable();
    for w in seen.windows(2) {
        if w[0] == w[1] {
            return Err(WeightError::DuplicatePrime(w[0]));
        }
    }
    let degree = residues.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    let mut product = BigUint::one();
    for &(p, _) in residues {
        product *= BigUint::from(p);
    }
    let product = BigInt::from_biguint(Sign::Plus, product);
    let half = &product >> 1;

    let mut out = Vec::with_capacity(degree);
    for i in 0..degree {
        // Garner-style incremental combination
        let mut x = BigInt::zero();
        let mut modulus = BigInt::one();
        for &(p, ref coeffs) in residues {
            let pb = BigInt::from(p);
            let r = BigInt::from(coeffs.get(i).copied().unwrap_or(0));
            let diff = (&r - &x).mod_floor(&pb);
            let inv = modinv(&modulus.mod_floor(&pb), &pb);
            let t = (diff * inv).mod_floor(&pb);
            x += &modulus * t;
            modulus *= pb;
        }
        if x > half {
            x -= &product;
        }
        out.push(x);
    }
    trim_int(&mut out);
    Ok(out)
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    // extended Euclid; m prime to a by construction
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// Runs modular computations over successive schedule primes, reconstructing
/// after each, until two consecutive reconstructions agree and the result
/// survives point-evaluation verification against a fresh unused prime.
///
/// `compute_mod(p)` must return the target polynomial reduced mod p;
/// `verify_eval(q0, p)` must return the target evaluated at Q = q0, mod p.
/// Both must be deterministic per prime.
pub fn adaptive_crt_run<E>(
    max_primes: usize,
    mut compute_mod: impl FnMut(u32) -> Result<Vec<u32>, E>,
    mut verify_eval: impl FnMut(&BigInt, u32) -> Result<u32, E>,
) -> Result<Vec<BigInt>, AdaptiveCrtError<E>> {
    let mut schedule = PrimeSchedule::new();
    let mut residues: Vec<(u32, Vec<u32>)> = Vec::new();
    let mut previous: Option<Vec<BigInt>> = None;
    for k in 0..max_primes {
        let p = schedule.prime(k);
        let coeffs = compute_mod(p).map_err(AdaptiveCrtError::Callback)?;
        residues.push((p, coeffs));
        let current = crt_reconstruct(&residues).map_err(AdaptiveCrtError::Weight)?;
        let stable = previous.as_ref() == Some(&current);
        previous = Some(current);
        if !stable {
            continue;
        }
        let candidate = previous.as_ref().unwrap();
        let fresh = schedule.prime(k + 1);
        let mut rng = ChaCha8Rng::seed_from_u64(fresh as u64);
        let mut verified = true;
        for _ in 0..3 {
            let q0 = BigInt::from(rng.gen_range(0..fresh));
            let expected = verify_eval(&q0, fresh).map_err(AdaptiveCrtError::Callback)?;
            let got = eval_univariate(candidate, &q0)
                .mod_floor(&BigInt::from(fresh))
                .to_u32()
                .unwrap();
            if got != expected {
                verified = false;
                break;
            }
        }
        if verified {
            return Ok(previous.unwrap());
        }
    }
    Err(AdaptiveCrtError::Weight(WeightError::ScheduleExhausted(
        max_primes,
    )))
}

#[derive(Debug, Error)]
pub enum AdaptiveCrtError<E> {
    #[error(transparent)]
    Weight(WeightError),
    #[error("modular computation failed")]
    Callback(#[source] E),
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// `c0 c1 ... cd`, space-separated signed decimal, ascending degree. The
/// zero polynomial prints as `0`.
pub fn format_univariate(coeffs: &[BigInt]) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{c}").unwrap();
    }
    out
}

/// One line per v-degree, ascending; each line in the univariate format.
pub fn format_bivariate(grid: &[Vec<BigInt>]) -> String {
    if grid.is_empty() {
        return "0".to_string();
    }
    grid.iter()
        .map(|row| format_univariate(row))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn parse_univariate(line: &str) -> Result<Vec<BigInt>, WeightError> {
    let mut out = Vec::new();
    for tok in line.split_whitespace() {
        let c: BigInt = tok
            .parse()
            .map_err(|_| WeightError::Parse(format!("bad coefficient {tok:?}")))?;
        out.push(c);
    }
    trim_int(&mut out);
    Ok(out)
}

pub fn parse_bivariate(text: &str) -> Result<Vec<Vec<BigInt>>, WeightError> {
    let mut grid: Vec<Vec<BigInt>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_univariate)
        .collect::<Result<_, _>>()?;
    trim_grid(&mut grid);
    Ok(grid)
}

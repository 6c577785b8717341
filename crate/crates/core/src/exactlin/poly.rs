//! Univariate polynomials over `Q`: gcd, squarefree parts, Sturm sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{qi, Q};
use super::LinAlgError;

/// Dense polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| qi(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `t`
    pub fn x() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * qi(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
                        + other.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lc;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic gcd.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(Q::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(Q::one()));
        while !r1.is_zero() {
            let (quot, rem) = r0.div_rem(&r1);
            let s2 = s0.sub(&quot.mul(&s1));
            let t2 = t0.sub(&quot.mul(&t1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc = r0.leading();
        if lc.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Q::one() / lc;
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Product of the distinct irreducible factors (monic): `p / gcd(p, p')`.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// `p(a + b·t)`.
    pub fn compose_affine(&self, a: &Q, b: &Q) -> Self {
        let lin = Self::new(vec![a.clone(), b.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(&lin).add(&Self::constant(c.clone()))
        })
    }

    /// Sturm sequence `p, p', −rem(p, p'), …`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            seq.push(r.neg());
        }
        seq.pop();
        seq
    }

    fn sign_variations(values: impl Iterator<Item = Q>) -> usize {
        let mut last: Option<bool> = None;
        let mut count = 0;
        for v in values {
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    fn sign_at_neg_infinity(&self) -> Q {
        let lc = self.leading();
        if self.degree().unwrap_or(0).is_multiple_of(2) {
            lc
        } else {
            -lc
        }
    }

    /// Number of distinct real roots, via the Sturm sequence.
    pub fn real_root_count(&self) -> Result<usize, LinAlgError> {
        if self.is_zero() {
            return Err(LinAlgError::ZeroPolynomial);
        }
        let seq = self.sturm_sequence();
        let at_minus = Self::sign_variations(seq.iter().map(|p| p.sign_at_neg_infinity()));
        let at_plus = Self::sign_variations(seq.iter().map(|p| p.leading()));
        Ok(at_minus - at_plus)
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn real_roots_between(&self, lo: &Q, hi: &Q) -> Result<usize, LinAlgError> {
        if self.is_zero() {
            return Err(LinAlgError::ZeroPolynomial);
        }
        let seq = self.sturm_sequence();
        let v_lo = Self::sign_variations(seq.iter().map(|p| p.eval(lo)));
        let v_hi = Self::sign_variations(seq.iter().map(|p| p.eval(hi)));
        Ok(v_lo - v_hi)
    }

    /// Cauchy bound on the absolute value of every root.
    pub fn root_bound(&self) -> Q {
        let lc = self.leading().abs();
        let m = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs() / &lc)
            .fold(Q::zero(), |a, b| if b > a { b } else { a });
        m + Q::one()
    }

    /// Distinct real roots that are `≤ 0`.
    pub fn nonpositive_root_count(&self) -> Result<usize, LinAlgError> {
        let b = self.root_bound();
        let below = self.real_roots_between(&(-b - Q::one()), &Q::zero())?;
        Ok(below)
    }

    /// All rational roots (distinct), found by exact real-root isolation.
    pub fn rational_roots(&self) -> Result<Vec<Q>, LinAlgError> {
        let sf = self.squarefree();
        if sf.degree() == Some(0) {
            return Ok(Vec::new());
        }
        // Scale to a primitive integer polynomial; rational roots p/q then have
        // q | leading coefficient. Substitute t = s / lc to make it monic in s
        // with integer coefficients so rational roots in s are integers.
        let den = sf
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = sf
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        let n = ints.len() - 1;
        let lc = ints[n].clone();
        // s^n + Σ a_i lc^{n-1-i} s^i
        let mut monic = Vec::with_capacity(n + 1);
        let mut pow = BigInt::one();
        let mut powers = vec![BigInt::one(); n];
        for i in (0..n).rev() {
            powers[i] = pow.clone();
            pow *= &lc;
        }
        for i in 0..n {
            monic.push(Q::from_integer(&ints[i] * &powers[i]));
        }
        monic.push(Q::one());
        let ps = Poly::new(monic);
        let mut roots = Vec::new();
        for s in ps.integer_roots()? {
            roots.push(Q::from_integer(s) / Q::from_integer(lc.clone()));
        }
        roots.sort();
        Ok(roots)
    }

    /// Integer roots of a squarefree polynomial, by bisection on Sturm counts.
    fn integer_roots(&self) -> Result<Vec<BigInt>, LinAlgError> {
        let bound = self.root_bound().ceil().to_integer() + BigInt::one();
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let count =
                self.real_roots_between(&Q::from_integer(lo.clone()), &Q::from_integer(hi.clone()))?;
            if count == 0 {
                continue;
            }
            if &hi - &lo <= BigInt::from(1) {
                if self.eval(&Q::from_integer(hi.clone())).is_zero() {
                    out.push(hi);
                }
                continue;
            }
            let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        out.sort();
        Ok(out)
    }

    /// Multiplicity of `root` as a zero of `self`.
    pub fn multiplicity(&self, root: &Q) -> usize {
        let lin = Poly::new(vec![-root.clone(), Q::one()]);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() && p.eval(root).is_zero() {
            p = p.div_rem(&lin).0;
            k += 1;
        }
        k
    }
}

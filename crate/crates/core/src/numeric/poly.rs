use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Interval, Rational};

/// Univariate polynomial with rational coefficients in ascending degree.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has no
/// coefficients. A scaled integer copy of the coefficients is kept for fast
/// exact evaluation.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
    // coeffs[i] == int_coeffs[i] / denom
    int_coeffs: Vec<BigInt>,
    denom: BigInt,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let denom = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let int_coeffs = coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        Self { coeffs, int_coeffs, denom }
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Exact value at `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        let n = match self.int_coeffs.len() {
            0 => return Rational::zero(),
            1 => return self.coeffs[0].clone(),
            n => n - 1,
        };
        // Homogeneous Horner: sum c_i a^i b^(n-i) over a common denominator.
        let a = x.numer();
        let b = x.denom();
        let mut bpow = BigInt::one();
        let mut acc = self.int_coeffs[n].clone();
        for c in self.int_coeffs[..n].iter().rev() {
            bpow *= b;
            acc = acc * a + c * &bpow;
        }
        Rational::new(acc, bpow * &self.denom)
    }

    /// Natural interval extension in Horner form.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut iter = self.coeffs.iter().rev();
        let Some(lead) = iter.next() else {
            return Interval::point(Rational::zero());
        };
        let mut acc = Interval::point(lead.clone());
        for c in iter {
            acc = (&acc * x).shift(c);
        }
        acc
    }

    /// Outer bound on the range over `x`: Horner form intersected with the
    /// mean-value form `p(m) + p'(X)(X - m)`.
    pub fn enclose(&self, x: &Interval) -> Interval {
        self.enclose_using(&self.derivative(), x)
    }

    /// [`Polynomial::enclose`] with a precomputed derivative.
    pub fn enclose_using(&self, derivative: &Polynomial, x: &Interval) -> Interval {
        let horner = self.eval_interval(x);
        if self.degree() < 2 || x.is_degenerate() {
            return horner;
        }
        let m = x.midpoint();
        let slope = derivative.eval_interval(x);
        let offset = x.shift(&-&m);
        let mean_value = (&slope * &offset).shift(&self.eval(&m));
        horner
            .intersect(&mean_value)
            .expect("both forms enclose the same range")
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// `self - c`.
    pub fn sub_constant(&self, c: &Rational) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        coeffs[0] -= c;
        Polynomial::new(coeffs)
    }

    /// The polynomial `t -> self(origin + step * t)`.
    pub fn compose_affine(&self, origin: &Rational, step: &Rational) -> Polynomial {
        let mut acc: Vec<Rational> = Vec::new();
        for c in self.coeffs.iter().rev() {
            // acc = acc * (origin + step t) + c
            let mut next = vec![Rational::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] += a * origin;
                next[i + 1] += a * step;
            }
            next[0] += c;
            acc = next;
        }
        Polynomial::new(acc)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})y")?,
                _ => write!(f, "({c})y^{i}")?,
            }
        }
        Ok(())
    }
}

/// Exact evaluation of a polynomial on the arithmetic grid `origin + step * i`
/// for integer `i`, without per-point fraction normalization.
///
/// `p(origin + step * i) = numerator(i) / denominator()`, with the same
/// positive denominator for every `i`, so grid values can be compared and
/// summed as plain integers.
#[derive(Debug, Clone)]
pub struct GridEvaluator {
    coeffs: Vec<BigInt>,
    denom: BigInt,
}

impl GridEvaluator {
    pub fn new(p: &Polynomial, origin: &Rational, step: &Rational) -> Self {
        let shifted = p.compose_affine(origin, step);
        Self { coeffs: shifted.int_coeffs, denom: shifted.denom }
    }

    pub fn numerator(&self, i: &BigInt) -> BigInt {
        let mut iter = self.coeffs.iter().rev();
        let Some(lead) = iter.next() else {
            return BigInt::zero();
        };
        let mut acc = lead.clone();
        for c in iter {
            acc *= i;
            acc += c;
        }
        acc
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn value(&self, i: &BigInt) -> Rational {
        Rational::new(self.numerator(i), self.denom.clone())
    }
}

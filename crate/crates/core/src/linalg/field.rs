use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. Always reduced with a positive denominator.
pub type Scalar = BigRational;

/// The operations exact elimination needs from a coefficient field.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_scalar(q: &Scalar) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn from_i64(v: i64) -> Self {
        Self::from_scalar(&Scalar::from_integer(BigInt::from(v)))
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }

    /// Rough size of the stored numbers, used for pivot selection.
    fn weight(&self) -> u64;
}

impl Field for Scalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_scalar(q: &Scalar) -> Self {
        q.clone()
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = a * b;
        *self -= prod;
    }
    fn weight(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

/// An element `re + i·im` of the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian {
    pub re: Scalar,
    pub im: Scalar,
}

impl Gaussian {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        Self { re, im }
    }

    pub fn i() -> Self {
        Self::new(Zero::zero(), One::one())
    }

    pub fn real(re: Scalar) -> Self {
        Self::new(re, Zero::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(int(re), int(im))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    /// The real part, provided the imaginary part vanishes.
    pub fn to_real(&self) -> Option<Scalar> {
        self.is_real().then(|| self.re.clone())
    }
}

impl From<Scalar> for Gaussian {
    fn from(q: Scalar) -> Self {
        Gaussian::real(q)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", self.re)
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Field for Gaussian {
    fn zero() -> Self {
        Gaussian::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Gaussian::new(One::one(), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        Gaussian::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        Gaussian::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        if Zero::is_zero(&self.im) && Zero::is_zero(&o.im) {
            return Gaussian::real(&self.re * &o.re);
        }
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg(&self) -> Self {
        Gaussian::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero");
        let norm = &self.re * &self.re + &self.im * &self.im;
        Gaussian::new(&self.re / &norm, -&self.im / &norm)
    }
    fn from_scalar(q: &Scalar) -> Self {
        Gaussian::real(q.clone())
    }
    fn weight(&self) -> u64 {
        self.re.weight() + self.im.weight()
    }
}

/// Integer shorthand for building scalars.
pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// `num/den` shorthand for building scalars.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a scalar as `"num/den"`; the wire format for exact values.
pub fn scalar_to_string(q: &Scalar) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"` or a plain integer.
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Scalar::new(n, d))
    } else {
        BigInt::from_str(s)
            .map(Scalar::from_integer)
            .map_err(|e| format!("bad scalar {s:?}: {e}"))
    }
}

/// Removes the content of a rational vector: the result has integer entries
/// with gcd 1 and the first nonzero entry positive.
pub fn primitive_integer_vector(v: &[Scalar]) -> Vec<Scalar> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v.iter().filter(|x| !Zero::is_zero(*x)) {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let lead_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if lead_negative {
        g = -g;
    }
    ints.into_iter().map(|x| Scalar::from_integer(x / &g)).collect()
}

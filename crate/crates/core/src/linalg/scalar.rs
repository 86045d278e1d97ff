//! Rational scalars and dense coordinate vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// Dense coordinate vector.
pub type Vector = Vec<Scalar>;

/// Sparse vector as sorted `(index, value)` pairs with no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `n / d` reduced to lowest terms. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Scalar {
    assert!(d != 0, "zero denominator");
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`.
pub fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn sub_vec(u: &[Scalar], v: &[Scalar]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn scale_vec(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(n: usize, v: &[(usize, Scalar)]) -> Vector {
    let mut out = zeros(n);
    for (i, x) in v {
        out[*i] += x;
    }
    out
}

/// Iterator over the nonzero entries of a dense vector.
pub fn nonzeros(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero())
}

/// Renders a scalar as `p/q`, or `p` when the denominator is one.
pub fn render(x: &Scalar) -> String {
    x.to_string()
}

pub fn render_vec(v: &[Scalar]) -> Vec<String> {
    v.iter().map(render).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid exact scalar literal `{0}`")]
pub struct ParseScalarError(pub String);

/// Parses `p`, `-p` or `p/q`. Decimal points and exponents are rejected so that no
/// floating-point literal can sneak into an instance.
pub fn parse_scalar(s: &str) -> Result<Scalar, ParseScalarError> {
    let t = s.trim();
    let err = || ParseScalarError(s.to_string());
    if t.is_empty() || t.contains(['.', 'e', 'E']) {
        return Err(err());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| err())?;
    let d: BigInt = den.parse().map_err(|_| err())?;
    if d.is_zero() || d.is_negative() && den.starts_with('-') && num.starts_with('-') {
        return Err(err());
    }
    Ok(Scalar::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_fractions_and_rejects_floats() {
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("-4/6").unwrap(), frac(-2, 3));
        assert_eq!(parse_scalar(" 1/2 ").unwrap(), frac(1, 2));
        assert!(parse_scalar("0.5").is_err());
        assert!(parse_scalar("1e3").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn lowest_terms_and_rendering() {
        let x = frac(6, -4);
        assert_eq!(x, frac(-3, 2));
        assert_eq!(render(&x), "-3/2");
        assert_eq!(render(&int(5)), "5");
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;

/// Field element of the ground field. Always kept in lowest terms by `num-rational`.
pub type Scalar = BigRational;

pub fn scalar(value: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(value))
}

/// `numer / denom`, reduced. Panics on a zero denominator.
pub fn scalar_ratio(numer: i64, denom: i64) -> Scalar {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `INT` or `INT/INT` (optional leading sign on the numerator).
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().ok()?;
    let denom: BigInt = denom.parse().ok()?;
    if denom == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(numer, denom))
}

//! Exact integer and rational helpers.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{domain, Result};

/// Binomial coefficient `C(n, r)`, exact.
pub fn binomial(n: u32, r: u32) -> Result<Integer> {
    if r > n {
        return domain(format!("binomial({n}, {r}): r exceeds n"));
    }
    Ok(Integer::from(Integer::binomial_u(n, r)))
}

/// The central binomial coefficient `C(2k, k)`.
pub fn central_binomial(k: u32) -> Integer {
    Integer::from(Integer::binomial_u(2 * k, k))
}

/// Squares `C(k, j)^2` for `j = 0..=k`.
pub fn squared_binomials(k: u32) -> Vec<Integer> {
    (0..=k)
        .map(|j| Integer::from(Integer::binomial_u(k, j)).square())
        .collect()
}

/// Exact `n`-th root of a nonnegative integer, if it is a perfect `n`-th power.
pub fn exact_integer_root(value: &Integer, n: u32) -> Option<Integer> {
    if n == 0 || *value < 0 {
        return None;
    }
    let (root, rem) = value.clone().root_rem(Integer::new(), n);
    (rem == 0).then_some(root)
}

/// Exact `n`-th root of a nonnegative rational, if both numerator and denominator
/// (in lowest terms) are perfect `n`-th powers.
pub fn exact_rational_root(value: &Rational, n: u32) -> Option<Rational> {
    if *value < 0 {
        return None;
    }
    let num = exact_integer_root(value.numer(), n)?;
    let den = exact_integer_root(value.denom(), n)?;
    Some(Rational::from((num, den)))
}

/// `base^exponent` for a nonnegative rational base and rational exponent, when the
/// result is itself rational. `0^0` is `1`; `0^e` with `e < 0` is `None`.
pub fn exact_rational_pow(base: &Rational, exponent: &Rational) -> Option<Rational> {
    if *base < 0 {
        return None;
    }
    if *exponent == 0 {
        return Some(Rational::from(1));
    }
    if *base == 0 {
        return (*exponent > 0).then(Rational::new);
    }
    let den = exponent.denom().to_u32()?;
    let num = exponent.numer().to_i32()?;
    let root = exact_rational_root(base, den)?;
    let mag = num.unsigned_abs();
    let powered = root.pow(mag);
    if num < 0 {
        Some(powered.recip())
    } else {
        Some(powered)
    }
}

/// Whether `value` is `2^m` for some `m >= 0`; returns `m`.
pub fn power_of_two_exponent(value: u64) -> Option<u32> {
    value.is_power_of_two().then(|| value.trailing_zeros())
}

/// Parse `p/q`, an integer, or a finite decimal such as `2.57` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || crate::error::Error::Parse(format!("not a rational number: {text:?}"));
    if text.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: Integer = num.trim().parse().map_err(|_| bad())?;
        let den: Integer = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::from((num, den)));
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: Integer = digits.parse().map_err(|_| bad())?;
    let den = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
    let value = Rational::from((num, den));
    Ok(if neg { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![1u64]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![1u64; i + 1];
            for j in 1..i {
                row[j] = prev[j - 1] + prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let rows = pascal(30);
        for (n, row) in rows.iter().enumerate() {
            for (r, &v) in row.iter().enumerate() {
                assert_eq!(binomial(n as u32, r as u32).unwrap(), v);
            }
        }
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(10, 5).unwrap(), 252);
        assert_eq!(binomial(7, 0).unwrap(), 1);
    }

    #[test]
    fn binomial_rejects_r_above_n() {
        assert!(matches!(binomial(3, 4), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn rational_roots() {
        let q = Rational::from((27, 8));
        assert_eq!(exact_rational_root(&q, 3), Some(Rational::from((3, 2))));
        assert_eq!(exact_rational_root(&Rational::from(2), 2), None);
        assert_eq!(
            exact_rational_pow(&Rational::from(4), &Rational::from((3, 2))),
            Some(Rational::from(8))
        );
        assert_eq!(
            exact_rational_pow(&Rational::new(), &Rational::new()),
            Some(Rational::from(1))
        );
        assert_eq!(
            exact_rational_pow(&Rational::from((1, 4)), &Rational::from((-1, 2))),
            Some(Rational::from(2))
        );
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3/10").unwrap(), Rational::from((3, 10)));
        assert_eq!(parse_rational("2.57").unwrap(), Rational::from((257, 100)));
        assert_eq!(parse_rational("-0.5").unwrap(), Rational::from((-1, 2)));
        assert_eq!(parse_rational("7").unwrap(), Rational::from(7));
        assert_eq!(parse_rational(".25").unwrap(), Rational::from((1, 4)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1e5").is_err());
    }
}

use std::fmt;
use std::str::FromStr;

use super::{EisensteinInt, Scalar};
use crate::error::Error;

impl<T: Scalar> fmt::Display for EisensteinInt<T> {
    /// Writes `a+b*w`, dropping zero parts and unit coefficients of `w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.a, self.b);
        let w_term = |b: T| -> String {
            if b.is_one() {
                "w".to_string()
            } else if b == -T::one() {
                "-w".to_string()
            } else {
                format!("{b}*w")
            }
        };
        match (a.is_zero(), b.is_zero()) {
            (_, true) => write!(f, "{a}"),
            (true, false) => write!(f, "{}", w_term(b)),
            (false, false) => {
                let t = w_term(b);
                if t.starts_with('-') {
                    write!(f, "{a}{t}")
                } else {
                    write!(f, "{a}+{t}")
                }
            }
        }
    }
}

impl<T: Scalar> FromStr for EisensteinInt<T> {
    type Err = Error;

    /// Parses sums of terms `k`, `k*w`, `kw` or `w` with optional signs,
    /// e.g. `-2-3*w`, `w`, `7`, `4 + 3w`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not an Eisenstein integer: {s:?}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let cleaned = cleaned.replace('ω', "w");
        if cleaned.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = cleaned.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'*' {
                terms.push(&cleaned[start..i]);
                start = i;
            }
        }
        terms.push(&cleaned[start..]);

        let (mut a, mut b) = (T::zero(), T::zero());
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'+') => (false, &term[1..]),
                Some(b'-') => (true, &term[1..]),
                _ => (false, term),
            };
            let parse_int = |t: &str| -> Result<T, Error> {
                if t.is_empty() || !t.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                T::from_str_radix(t, 10).map_err(|_| bad())
            };
            let (is_w, coeff) = if let Some(k) = body.strip_suffix('w') {
                let k = k.strip_suffix('*').unwrap_or(k);
                (true, if k.is_empty() { T::one() } else { parse_int(k)? })
            } else {
                (false, parse_int(body)?)
            };
            let coeff = if neg { T::zero() - coeff } else { coeff };
            let slot = if is_w { &mut b } else { &mut a };
            *slot = slot.checked_add(&coeff).ok_or_else(bad)?;
        }
        Ok(Self::new(a, b))
    }
}

#[cfg(test)]
mod tests {
    use crate::Eisenstein;

    #[test]
    fn round_trip_examples() {
        for (s, a, b) in [
            ("-2-3*w", -2, -3),
            ("7", 7, 0),
            ("w", 0, 1),
            ("-w", 0, -1),
            ("4+3*w", 4, 3),
            ("1-w", 1, -1),
            ("-5*w", 0, -5),
            ("0", 0, 0),
        ] {
            let z: Eisenstein = s.parse().unwrap();
            assert_eq!(z, Eisenstein::new(a, b));
            assert_eq!(z.to_string(), s);
        }
    }

    #[test]
    fn lenient_forms() {
        assert_eq!("4 + 3w".parse::<Eisenstein>().unwrap(), Eisenstein::new(4, 3));
        assert_eq!("3*w+1".parse::<Eisenstein>().unwrap(), Eisenstein::new(1, 3));
        assert_eq!("2+ω".parse::<Eisenstein>().unwrap(), Eisenstein::new(2, 1));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "x", "2+", "1.5", "w*w", "--1"] {
            assert!(s.parse::<Eisenstein>().is_err(), "{s}");
        }
    }
}

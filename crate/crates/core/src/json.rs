//! Text and JSON rendering of numbers, matrices and coordinate tuples.
//!
//! Reals are written with 17 significant digits (`%.17g` style, trailing
//! zeros dropped), which round-trips every `f64` exactly. Parsing goes through
//! `serde_json` and the `Deserialize` impls on the value types.

use num_complex::Complex64;

use crate::sl2::Mat2;

/// `%.17g`-style formatting; always a valid JSON number for finite input.
pub fn fmt17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };
    if (-5..17).contains(&exp) {
        let body = if exp >= 0 {
            let point = exp as usize + 1;
            let (int, frac) = digits.split_at(point);
            let frac = frac.trim_end_matches('0');
            if frac.is_empty() {
                int.to_string()
            } else {
                format!("{int}.{frac}")
            }
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            format!("0.{zeros}{}", digits.trim_end_matches('0'))
        };
        format!("{sign}{body}")
    } else {
        let (lead, rest) = digits.split_at(1);
        let rest = rest.trim_end_matches('0');
        if rest.is_empty() {
            format!("{sign}{lead}e{exp}")
        } else {
            format!("{sign}{lead}.{rest}e{exp}")
        }
    }
}

/// `a + bi` / `a - bi` with both parts in [`fmt17`] form.
pub fn complex_text(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{} - {}i", fmt17(z.re), fmt17(-z.im))
    } else {
        format!("{} + {}i", fmt17(z.re), fmt17(z.im.abs()))
    }
}

/// `[re, im]`.
pub fn complex(z: Complex64) -> String {
    format!("[{}, {}]", fmt17(z.re), fmt17(z.im))
}

pub fn complex_list(zs: &[Complex64]) -> String {
    let inner: Vec<String> = zs.iter().map(|z| complex(*z)).collect();
    format!("[{}]", inner.join(", "))
}

/// `[[a, b], [c, d]]` with complex entries.
pub fn mat2(m: &Mat2) -> String {
    format!(
        "[[{}, {}], [{}, {}]]",
        complex(m.a),
        complex(m.b),
        complex(m.c),
        complex(m.d)
    )
}

pub fn mat2_list(ms: &[Mat2]) -> String {
    let inner: Vec<String> = ms.iter().map(mat2).collect();
    format!("[{}]", inner.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fmt17_examples() {
        assert_eq!(fmt17(2.0), "2");
        assert_eq!(fmt17(-2.5), "-2.5");
        assert_eq!(fmt17(0.1), "0.10000000000000001");
        assert_eq!(fmt17(1e-7), "9.9999999999999995e-8");
        assert_eq!(fmt17(1e20), "1e20");
        assert_eq!(fmt17(123456.0), "123456");
        assert_eq!(fmt17(0.0), "0");
        assert_eq!(fmt17(-0.0), "-0");
        assert_eq!(complex_text(Complex64::new(2.0, 0.0)), "2 + 0i");
        assert_eq!(complex_text(Complex64::new(0.5, -1.0)), "0.5 - 1i");
    }

    #[test]
    fn matrix_json_parses_back() {
        let m = Mat2::new(
            Complex64::new(0.1, -0.3),
            Complex64::new(1e-300, 7.0),
            Complex64::new(-2.0, 0.0),
            Complex64::new(3.5e12, 1.0 / 3.0),
        );
        let back: Mat2 = serde_json::from_str(&mat2(&m)).unwrap();
        assert_eq!(back, m);
    }

    proptest! {
        #[test]
        fn fmt17_round_trips_bit_exactly(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let s = fmt17(x);
            let back: f64 = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back.to_bits(), x.to_bits(), "{}", s);
        }
    }
}

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Monomial, MultiPoly, VarRegistry};
use crate::error::{Error, Result};

pub(super) fn canonical_string(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&term_body(&p.reg, m, &c.abs()));
    }
    out
}

fn term_body(reg: &VarRegistry, m: &Monomial, c: &BigInt) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !c.is_one() || m.is_one() {
        parts.push(c.to_string());
    }
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(reg.name(i)),
            _ => parts.push(format!("{}^{}", reg.name(i), e)),
        }
    }
    parts.join("*")
}

/// Parser for the canonical syntax: signed terms joined by `+`/`-`, each a
/// `*`-separated product of integers and `name` or `name^exp` factors.
pub(super) fn parse(reg: &VarRegistry, input: &str) -> Result<MultiPoly> {
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s: Vec<char> = input.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < s.len() && s[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == s.len() {
        return Err(err("empty input"));
    }
    let mut out = MultiPoly::zero_in(reg);
    let mut first = true;
    while pos < s.len() {
        let mut negative = false;
        if s[pos] == '+' || s[pos] == '-' {
            negative = s[pos] == '-';
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err("expected `+` or `-` between terms"));
        }
        first = false;

        let mut coeff = BigInt::one();
        let mut mono = Monomial::one();
        loop {
            if pos >= s.len() {
                return Err(err("dangling operator"));
            }
            let c = s[pos];
            if c.is_ascii_digit() {
                let start = pos;
                while pos < s.len() && s[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = s[start..pos].iter().collect();
                coeff *= digits.parse::<BigInt>().map_err(|_| err("bad integer"))?;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = pos;
                while pos < s.len() && (s[pos].is_ascii_alphanumeric() || s[pos] == '_') {
                    pos += 1;
                }
                let name: String = s[start..pos].iter().collect();
                let mut exp: i32 = 1;
                skip_ws(&mut pos);
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let start = pos;
                    if pos < s.len() && s[pos] == '-' {
                        pos += 1;
                    }
                    while pos < s.len() && s[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let digits: String = s[start..pos].iter().collect();
                    exp = digits.parse().map_err(|_| err("bad exponent"))?;
                }
                mono = mono.mul(&Monomial::var(reg.register(&name), exp));
            } else {
                return Err(err(&format!("unexpected character `{c}`")));
            }
            skip_ws(&mut pos);
            if pos < s.len() && s[pos] == '*' {
                pos += 1;
                skip_ws(&mut pos);
                continue;
            }
            break;
        }
        if negative {
            coeff = -coeff;
        }
        out = &out + &MultiPoly::term_in(reg, mono, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn printing() {
        let hopf = -MultiPoly::monomial(VAR_A, 4) - MultiPoly::monomial(VAR_A, -4);
        assert_eq!(hopf.canonical_string(), "-A^4 - A^-4");
        assert_eq!(MultiPoly::zero().canonical_string(), "0");
        assert_eq!(MultiPoly::monomial(VAR_D, 2).canonical_string(), "d^2");
        let a = MultiPoly::var(VAR_A);
        let b = MultiPoly::var(VAR_B);
        let d = MultiPoly::var(VAR_D);
        let p = a.pow(2).unwrap() * &d + MultiPoly::constant(2) * &a * &b + b.pow(2).unwrap() * &d;
        assert_eq!(p.canonical_string(), "A^2*d + 2*A*B + B^2*d");
        assert_eq!(MultiPoly::constant(-3).canonical_string(), "-3");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["-A^4 - A^-4", "A^2*d + 2*A*B + B^2*d", "0", "-3", "-7*w + q + x_1^2"] {
            let p = MultiPoly::parse(s).unwrap();
            assert_eq!(p.canonical_string(), s);
        }
        let p = MultiPoly::parse(" A*A + 2 * 3 *B - B").unwrap();
        assert_eq!(p.canonical_string(), "A^2 + 5*B");
    }

    #[test]
    fn parse_errors() {
        for s in ["", "A +", "A ^", "A $ B", "A B"] {
            assert!(MultiPoly::parse(s).is_err(), "{s}");
        }
    }
}

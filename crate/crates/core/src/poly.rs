//! Dense integer polynomials and the structural transforms the rest of the
//! crate is built on: coefficient reversal, sign normalization, stripping
//! roots at the origin, exact multiplication, and text parsing.
//!
//! Coefficients are stored constant term first: index `i` holds `a_i`, so a
//! polynomial of degree `n` occupies `n + 1` slots and textbook identities
//! (`d_i = a_{n-i}` and friends) are direct array identities.

use std::fmt;
use std::str::FromStr;

use rug::ops::NegAssign;
use rug::{Complete, Integer};

use crate::error::{Error, Result};

/// An integer polynomial with arbitrary-precision coefficients, constant
/// term first.  The leading coefficient is always nonzero; the zero
/// polynomial is the empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    /// Builds a polynomial from coefficients (constant term first),
    /// trimming trailing zeros so the representation invariant holds.
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Convenience constructor from machine integers, constant term first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![Integer::from(1)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// All coefficients, constant term first.
    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Coefficient `a_i`, with zeros beyond the degree.
    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Leading coefficient `a_n`; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    /// Constant term `a_0`; `None` for the zero polynomial.
    pub fn constant(&self) -> Option<&Integer> {
        self.coeffs.first()
    }

    /// `-f`.
    pub fn neg(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for c in &mut coeffs {
            c.neg_assign();
        }
        IntPolynomial { coeffs }
    }

    /// The reversed polynomial `f*(x) = x^n f(1/x)`.  Degree drops when the
    /// constant term is zero; the constructor re-trims accordingly.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Self::new(coeffs))
    }

    /// Whether `f = f*` or `f = -f*`.  The zero polynomial is reported as
    /// not reciprocal.
    pub fn is_reciprocal(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let n = self.coeffs.len();
        let same = (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i]);
        if same {
            return true;
        }
        (0..n).all(|i| self.coeffs[i] == (-&self.coeffs[n - 1 - i]).complete())
    }

    /// Exact product `f * g` by schoolbook convolution; degrees in this
    /// problem regime are far too small for anything fancier to pay off.
    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += (a * b).complete();
            }
        }
        Self::new(out)
    }

    /// Factors out the highest power of `x`, returning `(g, m)` with
    /// `f = x^m g` and `g(0) != 0`.
    pub fn strip_zero_roots(&self) -> Result<(Self, usize)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let m = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial has a nonzero coefficient");
        Ok((
            IntPolynomial {
                coeffs: self.coeffs[m..].to_vec(),
            },
            m,
        ))
    }

    /// Normalizes endpoint signs: returns `g` in `{f, -f, (x-1)f, -(x-1)f}`
    /// with positive leading and constant coefficients.  Multiplying by
    /// `x - 1` leaves both the Mahler measure and the detected index `k`
    /// unchanged, so every downstream quantity survives the transform.
    pub fn normalize_signs(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.constant().is_none_or(|c| c.is_zero()) {
            return Err(Error::ConstantTermZero);
        }
        let mut g = if self.leading().unwrap().is_negative() {
            self.neg()
        } else {
            self.clone()
        };
        if g.constant().unwrap().is_negative() {
            // (x - 1) f flips the constant term's sign and keeps the leader.
            let x_minus_one = IntPolynomial::from_i64(&[-1, 1]);
            g = g.multiply(&x_minus_one);
            if g.leading().unwrap().is_negative() {
                g = g.neg();
            }
        }
        debug_assert!(g.leading().unwrap().is_positive());
        debug_assert!(g.constant().unwrap().is_positive());
        Ok(g)
    }

    /// Exact evaluation at an integer point by Horner's rule.
    pub fn eval_int(&self, t: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= t;
            acc += c;
        }
        acc
    }

    /// Exact multiplicity of the root at `x = 1` (zero when `f(1) != 0`),
    /// by repeated synthetic division.  Returns 0 for the zero polynomial.
    pub fn multiplicity_at_one(&self) -> usize {
        let mut cur = self.coeffs.clone();
        let mut mult = 0;
        while cur.len() > 1 {
            // Synthetic division by (x - 1): quotient coefficients top-down,
            // the final accumulator is the remainder f(1).
            let mut quot = vec![Integer::new(); cur.len() - 1];
            let mut carry = Integer::new();
            for i in (1..cur.len()).rev() {
                carry += &cur[i];
                quot[i - 1] = carry.clone();
            }
            carry += &cur[0];
            if !carry.is_zero() {
                break;
            }
            mult += 1;
            cur = quot;
        }
        mult
    }

    /// Formal derivative `f'`.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Integer::from(i) * c)
            .collect();
        Self::new(coeffs)
    }

    /// Content: the gcd of all coefficients (nonnegative), 0 for the zero
    /// polynomial.
    fn content(&self) -> Integer {
        let mut g = Integer::new();
        for c in &self.coeffs {
            g.gcd_mut(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut content = self.content();
        if self.leading().unwrap().is_negative() {
            content.neg_assign();
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| (c / &content).complete())
            .collect();
        IntPolynomial { coeffs }
    }

    /// Greatest common divisor over the rationals, returned as the
    /// primitive integer polynomial with positive leading coefficient.
    /// Degrees here are small, so the plain rational Euclid chain is fine.
    pub fn gcd(&self, other: &Self) -> Self {
        use rug::Rational;
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let to_rat = |p: &IntPolynomial| -> Vec<Rational> {
            p.coeffs.iter().map(Rational::from).collect()
        };
        let mut a = to_rat(self);
        let mut b = to_rat(other);
        while !b.is_empty() {
            // a mod b by rational long division
            while a.len() >= b.len() && !a.is_empty() {
                let q = Rational::from(a.last().unwrap() / b.last().unwrap());
                let shift = a.len() - b.len();
                for (i, bc) in b.iter().enumerate() {
                    let t = Rational::from(bc * &q);
                    a[shift + i] -= t;
                }
                while a.last().is_some_and(|c| *c == 0u32) {
                    a.pop();
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        // Clear denominators and strip content.
        let mut denom_lcm = Integer::from(1);
        for c in &a {
            denom_lcm.lcm_mut(c.denom());
        }
        let ints: Vec<Integer> = a
            .iter()
            .map(|c| Integer::from(c.numer() * &denom_lcm) / c.denom())
            .collect();
        IntPolynomial::new(ints).primitive_part()
    }

    /// Exact quotient `self / d` when the division is exact over the
    /// integers; `None` otherwise (including division by zero).
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        use rug::Rational;
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let mut rem: Vec<Rational> = self.coeffs.iter().map(Rational::from).collect();
        let mut quot = vec![Rational::new(); self.coeffs.len() - d.coeffs.len() + 1];
        let dl = Rational::from(d.leading().unwrap());
        while rem.len() >= d.coeffs.len() {
            let q = Rational::from(rem.last().unwrap() / &dl);
            let shift = rem.len() - d.coeffs.len();
            quot[shift] = q.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let t = Rational::from(dc * &q);
                rem[shift + i] -= t;
            }
            rem.pop(); // leading term cancels exactly by construction
            while rem.last().is_some_and(|c| *c == 0u32) {
                rem.pop();
            }
        }
        if !rem.is_empty() {
            return None;
        }
        let mut out = Vec::with_capacity(quot.len());
        for c in quot {
            if !c.is_integer() {
                return None;
            }
            out.push(c.into_numer_denom().0);
        }
        Some(IntPolynomial::new(out))
    }

    /// Human-readable monomial form, highest power first, e.g.
    /// `x^5+x^4-x^3-x^2-x+1`.
    pub fn to_monomial_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.clone().abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            let unit = mag == 1u32;
            if i == 0 || !unit {
                out.push_str(&mag.to_string());
            }
            if i > 0 {
                out.push('x');
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
        out
    }
}

/// Canonical emitted form: dense, comma-separated, constant term first.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for c in &self.coeffs {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// Replaces typographic minus signs and superscript digits so text pasted
/// from typeset sources parses like its ASCII equivalent.
fn normalize_input(s: &str) -> String {
    const SUPERSCRIPTS: [(char, char); 10] = [
        ('⁰', '0'),
        ('¹', '1'),
        ('²', '2'),
        ('³', '3'),
        ('⁴', '4'),
        ('⁵', '5'),
        ('⁶', '6'),
        ('⁷', '7'),
        ('⁸', '8'),
        ('⁹', '9'),
    ];
    let mut out = String::with_capacity(s.len());
    let mut in_superscript = false;
    for ch in s.chars() {
        if let Some(&(_, d)) = SUPERSCRIPTS.iter().find(|&&(sup, _)| sup == ch) {
            if !in_superscript {
                out.push('^');
                in_superscript = true;
            }
            out.push(d);
            continue;
        }
        in_superscript = false;
        match ch {
            '−' | '–' => out.push('-'),
            c if c.is_whitespace() => {}
            c => out.push(c),
        }
    }
    out
}

fn parse_dense(s: &str) -> Result<IntPolynomial> {
    let mut coeffs = Vec::new();
    for tok in s.split(',') {
        if tok.is_empty() {
            return Err(Error::Parse("empty coefficient token".to_string()));
        }
        let c = Integer::from_str(tok)
            .map_err(|_| Error::Parse(format!("bad integer coefficient {tok:?}")))?;
        coeffs.push(c);
    }
    Ok(IntPolynomial::new(coeffs))
}

fn parse_monomials(s: &str) -> Result<IntPolynomial> {
    // Split into signed terms; signs only ever occur at term boundaries.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    let mut seen_any = false;
    for ch in s.chars() {
        match ch {
            '+' | '-' => {
                if seen_any && !cur.is_empty() {
                    terms.push((negative, std::mem::take(&mut cur)));
                } else if seen_any && cur.is_empty() {
                    return Err(Error::Parse("consecutive signs".to_string()));
                }
                negative = ch == '-';
                seen_any = true;
            }
            _ => {
                cur.push(ch);
                seen_any = true;
            }
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse("trailing sign or empty input".to_string()));
    }
    terms.push((negative, cur));

    let mut acc: Vec<Integer> = Vec::new();
    for (neg, term) in terms {
        let (coeff_part, power) = match term.find(['x', 'X']) {
            Some(pos) => {
                let after = &term[pos + 1..];
                let power = if after.is_empty() {
                    1usize
                } else if let Some(exp) = after.strip_prefix('^') {
                    exp.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
                } else {
                    return Err(Error::Parse(format!("unexpected text after x in {term:?}")));
                };
                (term[..pos].trim_end_matches('*'), power)
            }
            None => (term.as_str(), 0usize),
        };
        let mut c = if coeff_part.is_empty() {
            Integer::from(1)
        } else {
            Integer::from_str(coeff_part)
                .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
        };
        if neg {
            c.neg_assign();
        }
        if acc.len() <= power {
            acc.resize(power + 1, Integer::new());
        }
        acc[power] += c;
    }
    Ok(IntPolynomial::new(acc))
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Accepts both text formats: dense comma-separated coefficients
    /// (constant term first, e.g. `1,-1,-1,0,0,1`) and monomial sums
    /// (e.g. `x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1`).
    fn from_str(s: &str) -> Result<Self> {
        let s = normalize_input(s);
        if s.is_empty() {
            return Err(Error::Parse("empty input".to_string()));
        }
        if s.contains(['x', 'X']) {
            parse_monomials(&s)
        } else {
            parse_dense(&s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    #[test]
    fn reciprocal_reverses_coefficients() {
        // x^3 - x + 1 reversed
        assert_eq!(p(&[1, -1, 0, 1]).reciprocal().unwrap(), p(&[1, 0, -1, 1]));
        // palindrome fixed point
        assert_eq!(p(&[1, 2, 1]).reciprocal().unwrap(), p(&[1, 2, 1]));
        // x^2 + x - 1
        assert_eq!(p(&[-1, 1, 1]).reciprocal().unwrap(), p(&[1, 1, -1]));
    }

    #[test]
    fn reciprocal_rejects_zero() {
        assert_eq!(
            IntPolynomial::zero().reciprocal(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn reciprocal_drops_degree_when_constant_term_vanishes() {
        // x^2 + x -> reversed is x + 1 (degree drops)
        let f = p(&[0, 1, 1]);
        assert_eq!(f.reciprocal().unwrap(), p(&[1, 1]));
    }

    #[test]
    fn is_reciprocal_cases() {
        assert!(p(&[1, 1, 1]).is_reciprocal()); // x^2 + x + 1
        assert!(p(&[-1, 1]).is_reciprocal()); // x - 1 = -f*
        assert!(!p(&[-1, -1, 0, 1]).is_reciprocal()); // x^3 - x - 1
        assert!(!IntPolynomial::zero().is_reciprocal());
    }

    #[test]
    fn multiply_matches_hand_expansion() {
        let f = p(&[-1, 1, 1]); // x^2 + x - 1
        let g = p(&[-1, 0, 0, 1]); // x^3 - 1
        assert_eq!(f.multiply(&g), p(&[1, -1, -1, -1, 1, 1]));
    }

    #[test]
    fn multiply_identity_and_zero() {
        let f = p(&[3, 0, -2, 7]);
        assert_eq!(f.multiply(&IntPolynomial::one()), f);
        assert!(f.multiply(&IntPolynomial::zero()).is_zero());
    }

    #[test]
    fn multiply_degrees_add() {
        let f = p(&[1, 2, 3]);
        let g = p(&[5, -4]);
        assert_eq!(f.multiply(&g).degree(), Some(3));
    }

    #[test]
    fn strip_zero_roots_cases() {
        assert_eq!(p(&[0, 0, 1, 1]).strip_zero_roots().unwrap(), (p(&[1, 1]), 2));
        let smyth = p(&[-1, -1, 0, 1]);
        assert_eq!(smyth.strip_zero_roots().unwrap(), (smyth.clone(), 0));
        assert_eq!(
            p(&[0, 0, 0, 0, 0, 1]).strip_zero_roots().unwrap(),
            (IntPolynomial::one(), 5)
        );
    }

    #[test]
    fn normalize_signs_cases() {
        // -x^2 - x + 1: negate, then one (x-1) factor
        assert_eq!(
            p(&[1, -1, -1]).normalize_signs().unwrap(),
            p(&[1, -2, 0, 1])
        );
        // already positive endpoints: unchanged
        assert_eq!(p(&[1, 1, 1]).normalize_signs().unwrap(), p(&[1, 1, 1]));
        // x^2 + x - 1 -> (x-1)(x^2+x-1) = x^3 - 2x + 1
        assert_eq!(p(&[-1, 1, 1]).normalize_signs().unwrap(), p(&[1, -2, 0, 1]));
    }

    #[test]
    fn normalize_signs_preconditions() {
        assert_eq!(
            IntPolynomial::zero().normalize_signs(),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(
            p(&[0, 1, 1]).normalize_signs(),
            Err(Error::ConstantTermZero)
        );
    }

    #[test]
    fn eval_int_horner() {
        let f = p(&[1, -1, -1, -1, 1, 1]); // x^5+x^4-x^3-x^2-x+1
        assert_eq!(f.eval_int(&Integer::from(1)), 0);
        assert_eq!(f.eval_int(&Integer::from(2)), 32 + 16 - 8 - 4 - 2 + 1);
        assert_eq!(f.eval_int(&Integer::from(0)), 1);
    }

    #[test]
    fn multiplicity_at_one_counts_exactly() {
        assert_eq!(p(&[-1, -1, 0, 1]).multiplicity_at_one(), 0); // f(1) = -1
        assert_eq!(p(&[1, -1, -1, -1, 1, 1]).multiplicity_at_one(), 1);
        // (x-1)^2 = x^2 - 2x + 1
        assert_eq!(p(&[1, -2, 1]).multiplicity_at_one(), 2);
        // (x-1)^3 (x+2)
        let f = p(&[1, -3, 3, -1]).multiply(&p(&[2, 1]));
        assert_eq!(f.multiplicity_at_one(), 3);
        assert_eq!(IntPolynomial::zero().multiplicity_at_one(), 0);
    }

    #[test]
    fn parse_dense_form() {
        let f: IntPolynomial = "1,-1,-1,0,0,1".parse().unwrap();
        assert_eq!(f, p(&[1, -1, -1, 0, 0, 1]));
        let c: IntPolynomial = "5".parse().unwrap();
        assert_eq!(c, p(&[5]));
        let z: IntPolynomial = "0".parse().unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn parse_monomial_form() {
        let lehmer: IntPolynomial = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1".parse().unwrap();
        assert_eq!(lehmer, p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]));
        let f: IntPolynomial = "2x^3 + x^2 - 5".parse().unwrap();
        assert_eq!(f, p(&[-5, 0, 1, 2]));
        let g: IntPolynomial = "-x".parse().unwrap();
        assert_eq!(g, p(&[0, -1]));
        let h: IntPolynomial = "3*x^2-1".parse().unwrap();
        assert_eq!(h, p(&[-1, 0, 3]));
    }

    #[test]
    fn parse_typeset_characters() {
        let f: IntPolynomial = "x³−x−1".parse().unwrap();
        assert_eq!(f, p(&[-1, -1, 0, 1]));
        let g: IntPolynomial = "1,−2,1".parse().unwrap();
        assert_eq!(g, p(&[1, -2, 1]));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<IntPolynomial>().is_err());
        assert!("1,,2".parse::<IntPolynomial>().is_err());
        assert!("x^".parse::<IntPolynomial>().is_err());
        assert!("x^y".parse::<IntPolynomial>().is_err());
        assert!("2y+1".parse::<IntPolynomial>().is_err());
        assert!("x+".parse::<IntPolynomial>().is_err());
        assert!("+-x".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for coeffs in [
            vec![1, -1, -1, -1, 1, 1],
            vec![5],
            vec![0, 0, 7],
            vec![-2, 3],
        ] {
            let f = p(&coeffs);
            let back: IntPolynomial = f.to_string().parse().unwrap();
            assert_eq!(back, f);
            let sparse: IntPolynomial = f.to_monomial_string().parse().unwrap();
            assert_eq!(sparse, f);
        }
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn monomial_string_formatting() {
        assert_eq!(
            p(&[1, -1, -1, -1, 1, 1]).to_monomial_string(),
            "x^5+x^4-x^3-x^2-x+1"
        );
        assert_eq!(p(&[-3, 0, 2]).to_monomial_string(), "2x^2-3");
        assert_eq!(p(&[0, 1]).to_monomial_string(), "x");
    }

    #[test]
    fn new_trims_trailing_zeros() {
        let f = IntPolynomial::new(vec![
            Integer::from(1),
            Integer::from(2),
            Integer::new(),
            Integer::new(),
        ]);
        assert_eq!(f.degree(), Some(1));
        assert_eq!(f, p(&[1, 2]));
    }

    #[test]
    fn coeff_beyond_degree_is_zero() {
        let f = p(&[1, 2]);
        assert_eq!(f.coeff(5), Integer::new());
    }

    #[test]
    fn derivative_cases() {
        assert_eq!(p(&[1, -1, 0, 1]).derivative(), p(&[-1, 0, 3]));
        assert_eq!(p(&[7]).derivative(), IntPolynomial::zero());
        assert_eq!(IntPolynomial::zero().derivative(), IntPolynomial::zero());
    }

    #[test]
    fn gcd_finds_common_factor() {
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = p(&[1, -2, 1]).multiply(&p(&[2, 1]));
        let b = p(&[-1, 1]).multiply(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        // coprime inputs
        assert_eq!(p(&[1, 1]).gcd(&p(&[-1, 1])), IntPolynomial::one());
        // content and sign are normalized away
        let c = p(&[-2, -2]); // -2(x+1)
        let d = p(&[4, 8, 4]); // 4(x+1)^2
        assert_eq!(c.gcd(&d), p(&[1, 1]));
        assert_eq!(IntPolynomial::zero().gcd(&c), p(&[1, 1]));
    }

    #[test]
    fn div_exact_cases() {
        let f = p(&[-1, 1, 1]).multiply(&p(&[-1, 0, 0, 1]));
        assert_eq!(f.div_exact(&p(&[-1, 0, 0, 1])), Some(p(&[-1, 1, 1])));
        assert_eq!(f.div_exact(&p(&[1, 1])), None); // not a divisor
        assert_eq!(p(&[1, 1]).div_exact(&IntPolynomial::zero()), None);
        assert_eq!(
            IntPolynomial::zero().div_exact(&p(&[1, 1])),
            Some(IntPolynomial::zero())
        );
        // 2x+2 over x+1 is exact with integer quotient 2
        assert_eq!(p(&[2, 2]).div_exact(&p(&[1, 1])), Some(p(&[2])));
        // x+1 over 2x+2 is exact over Q but not over Z
        assert_eq!(p(&[1, 1]).div_exact(&p(&[2, 2])), None);
    }

    #[test]
    fn primitive_part_normalizes() {
        assert_eq!(p(&[-6, -9]).primitive_part(), p(&[2, 3]));
        assert_eq!(p(&[4, 2]).primitive_part(), p(&[2, 1]));
    }
}

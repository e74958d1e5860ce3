//! Exact amplitudes (x + y√2)/2^k with Gaussian-integer x, y.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type GaussInt = Complex<i64>;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Amplitude {
    x: GaussInt,
    y: GaussInt,
    k: u32,
}

fn even(z: GaussInt) -> bool {
    z.re % 2 == 0 && z.im % 2 == 0
}

impl Amplitude {
    pub const ZERO: Amplitude = Amplitude {
        x: Complex::new(0, 0),
        y: Complex::new(0, 0),
        k: 0,
    };
    pub const ONE: Amplitude = Amplitude {
        x: Complex::new(1, 0),
        y: Complex::new(0, 0),
        k: 0,
    };
    pub const I: Amplitude = Amplitude {
        x: Complex::new(0, 1),
        y: Complex::new(0, 0),
        k: 0,
    };
    /// 1/√2 = √2/2.
    pub const FRAC_1_SQRT_2: Amplitude = Amplitude {
        x: Complex::new(0, 0),
        y: Complex::new(1, 0),
        k: 1,
    };
    /// e^{iπ/4} = (1 + i)√2/2.
    pub const OMEGA: Amplitude = Amplitude {
        x: Complex::new(0, 0),
        y: Complex::new(1, 1),
        k: 1,
    };

    pub fn new(x: GaussInt, y: GaussInt, k: u32) -> Self {
        Self { x, y, k }.reduced()
    }

    pub fn int(n: i64) -> Self {
        Self::new(Complex::new(n, 0), Complex::new(0, 0), 0)
    }

    pub fn x(&self) -> GaussInt {
        self.x
    }

    pub fn y(&self) -> GaussInt {
        self.y
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    fn reduced(mut self) -> Self {
        if self.x == Complex::new(0, 0) && self.y == Complex::new(0, 0) {
            return Self::ZERO;
        }
        while self.k > 0 && even(self.x) && even(self.y) {
            self.x /= 2;
            self.y /= 2;
            self.k -= 1;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn conj(&self) -> Self {
        Self {
            x: self.x.conj(),
            y: self.y.conj(),
            k: self.k,
        }
    }

    /// |a|², real but in general with a √2 part, e.g. (√2 − 1)² = 3 − 2√2.
    pub fn norm_sqr(&self) -> Self {
        *self * self.conj()
    }

    /// Multiplication by 2^{-e}.
    pub fn halve(&self, e: u32) -> Self {
        Self {
            x: self.x,
            y: self.y,
            k: self.k + e,
        }
        .reduced()
    }

    /// i^p for any integer exponent.
    pub fn i_pow(p: i64) -> Self {
        [Self::ONE, Self::I, -Self::ONE, -Self::I][p.rem_euclid(4) as usize]
    }

    /// 2^{-e/2} for a signed exponent e.
    pub fn inv_sqrt_pow2(e: i32) -> Self {
        if e <= 0 {
            let m = -e;
            let base = Self::int(1i64 << (m / 2));
            if m % 2 == 1 {
                base * Self::new(Complex::new(0, 0), Complex::new(1, 0), 0)
            } else {
                base
            }
        } else if e % 2 == 0 {
            Self::ONE.halve(e as u32 / 2)
        } else {
            Self::FRAC_1_SQRT_2.halve(e as u32 / 2)
        }
    }

    /// The value as a dyadic rational p/2^k when it is real and rational.
    pub fn as_dyadic(&self) -> Option<(i64, u32)> {
        (self.y == Complex::new(0, 0) && self.x.im == 0).then_some((self.x.re, self.k))
    }

    /// If the value is a power of two 2^e (e possibly negative), returns e.
    pub fn log2_exact(&self) -> Option<i32> {
        let (p, k) = self.as_dyadic()?;
        (p > 0 && p.count_ones() == 1).then(|| p.trailing_zeros() as i32 - k as i32)
    }

    pub fn to_complex(&self) -> Complex<f64> {
        let scale = 2f64.powi(-(self.k as i32));
        let x = Complex::new(self.x.re as f64, self.x.im as f64);
        let y = Complex::new(self.y.re as f64, self.y.im as f64);
        (x + y * std::f64::consts::SQRT_2) * scale
    }

    /// Parses sums and products of integers, `i`, `sqrt2`, with `+ - * /`
    /// and parentheses; division is restricted to powers of two and √2.
    pub fn parse_expr(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = ExprParser { tokens, pos: 0 };
        let v = p.sum()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in `{s}`")));
        }
        Ok(v)
    }

    /// Exact inverse when the value is a unit times a power of √2.
    pub fn checked_inverse(&self) -> Option<Self> {
        let n = self.norm_sqr();
        let e = n.log2_exact()?;
        // a⁻¹ = conj(a)/|a|², with |a|² = 2^e
        Some(self.conj() * Self::inv_sqrt_pow2(2 * e))
    }
}

fn align(a: &Amplitude, b: &Amplitude) -> (GaussInt, GaussInt, GaussInt, GaussInt, u32) {
    let k = a.k.max(b.k);
    let sa = 1i64 << (k - a.k);
    let sb = 1i64 << (k - b.k);
    (a.x * sa, a.y * sa, b.x * sb, b.y * sb, k)
}

impl Add for Amplitude {
    type Output = Amplitude;

    fn add(self, rhs: Self) -> Self {
        let (ax, ay, bx, by, k) = align(&self, &rhs);
        Amplitude::new(ax + bx, ay + by, k)
    }
}

impl AddAssign for Amplitude {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Amplitude {
    type Output = Amplitude;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Amplitude {
    type Output = Amplitude;

    fn neg(self) -> Self {
        Amplitude {
            x: -self.x,
            y: -self.y,
            k: self.k,
        }
    }
}

impl Mul for Amplitude {
    type Output = Amplitude;

    fn mul(self, rhs: Self) -> Self {
        let x = self.x * rhs.x + self.y * rhs.y * 2;
        let y = self.x * rhs.y + self.y * rhs.x;
        Amplitude::new(x, y, self.k + rhs.k)
    }
}

impl std::iter::Sum for Amplitude {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Amplitude::ZERO, |a, b| a + b)
    }
}

impl From<i64> for Amplitude {
    fn from(n: i64) -> Self {
        Amplitude::int(n)
    }
}

impl fmt::Debug for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+{}√2)/2^{}", self.x, self.y, self.k)
    }
}

/// Bit-exact dump form `x_re,x_im,y_re,y_im,k`.
impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.x.re, self.x.im, self.y.re, self.y.im, self.k)
    }
}

impl Serialize for Amplitude {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(i64),
    I,
    Sqrt2,
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(
                text.parse().map_err(|_| Error::Parse(format!("bad number `{text}`")))?,
            ));
        } else if "+-*/()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else if chars[i..].starts_with(&['s', 'q', 'r', 't', '2']) {
            out.push(Token::Sqrt2);
            i += 5;
        } else if c == 'i' {
            out.push(Token::I);
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct ExprParser {
    tokens: Vec<Token>,
    pos: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn sum(&mut self) -> Result<Amplitude> {
        let mut v = self.product()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.product()?;
            v = if c == '+' { v + rhs } else { v - rhs };
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<Amplitude> {
        let mut v = self.unary()?;
        loop {
            match self.peek().cloned() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    v = v * self.unary()?;
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    let inv = d
                        .checked_inverse()
                        .ok_or_else(|| Error::Parse("division only by units times powers of sqrt2".into()))?;
                    v = v * inv;
                }
                Some(Token::Num(_) | Token::I | Token::Sqrt2 | Token::Op('(')) => {
                    // implicit multiplication, as in `2i` or `i sqrt2`
                    v = v * self.unary()?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> Result<Amplitude> {
        match self.peek().cloned() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Amplitude> {
        let t = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match t {
            Token::Num(n) => Ok(Amplitude::int(n)),
            Token::I => Ok(Amplitude::I),
            Token::Sqrt2 => Ok(Amplitude::new(Complex::new(0, 0), Complex::new(1, 0), 0)),
            Token::Op('(') => {
                let v = self.sum()?;
                match self.peek() {
                    Some(Token::Op(')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            Token::Op(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_amp() -> impl Strategy<Value = Amplitude> {
        (-9i64..10, -9i64..10, -9i64..10, -9i64..10, 0u32..5)
            .prop_map(|(a, b, c, d, k)| Amplitude::new(Complex::new(a, b), Complex::new(c, d), k))
    }

    #[test]
    fn constants() {
        let s = Amplitude::FRAC_1_SQRT_2;
        assert_eq!(s * s, Amplitude::ONE.halve(1));
        let w = Amplitude::OMEGA;
        assert_eq!(w * w, Amplitude::I);
        assert_eq!((w * w * w * w), -Amplitude::ONE);
        assert_eq!(
            Amplitude::new(Complex::new(4, 0), Complex::new(2, 0), 2),
            Amplitude::new(Complex::new(2, 0), Complex::new(1, 0), 1)
        );
        assert_eq!(Amplitude::new(Complex::new(0, 0), Complex::new(0, 0), 5).k(), 0);
    }

    #[test]
    fn inverse_square_roots() {
        assert_eq!(Amplitude::inv_sqrt_pow2(1), Amplitude::FRAC_1_SQRT_2);
        assert_eq!(Amplitude::inv_sqrt_pow2(2), Amplitude::ONE.halve(1));
        assert_eq!(Amplitude::inv_sqrt_pow2(-3), Amplitude::parse_expr("2 sqrt2").unwrap());
        for e in -6..6 {
            let a = Amplitude::inv_sqrt_pow2(e);
            assert_eq!(a * a, Amplitude::inv_sqrt_pow2(2 * e));
            assert_eq!(a.norm_sqr().log2_exact(), Some(-e));
        }
    }

    #[test]
    fn expression_parser() {
        let p = |s| Amplitude::parse_expr(s).unwrap();
        assert_eq!(p("1/sqrt2"), Amplitude::FRAC_1_SQRT_2);
        assert_eq!(p("i/sqrt2"), Amplitude::I * Amplitude::FRAC_1_SQRT_2);
        assert_eq!(p("(1+i)/2"), Amplitude::OMEGA * Amplitude::FRAC_1_SQRT_2);
        assert_eq!(
            p("-3 + 2*i"),
            Amplitude::new(Complex::new(-3, 2), Complex::new(0, 0), 0)
        );
        assert_eq!(p("sqrt2*sqrt2/4"), Amplitude::ONE.halve(1));
        assert!(Amplitude::parse_expr("1/3").is_err());
        assert!(Amplitude::parse_expr("1/0").is_err());
        assert!(Amplitude::parse_expr("(1").is_err());
        assert!(Amplitude::parse_expr("x").is_err());
    }

    #[test]
    fn display_is_bit_exact() {
        assert_eq!(Amplitude::OMEGA.to_string(), "0,0,1,1,1");
        assert_eq!((-Amplitude::ONE.halve(2)).to_string(), "-1,0,0,0,2");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_amp(), b in arb_amp(), c in arb_amp()) {
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a - a, Amplitude::ZERO);
            prop_assert_eq!((a * b).conj(), a.conj() * b.conj());
        }

        #[test]
        fn norm_is_real(a in arb_amp()) {
            let n = a.norm_sqr();
            prop_assert_eq!(n.x().im, 0);
            prop_assert_eq!(n.y().im, 0);
            let z = a.to_complex();
            prop_assert!((n.to_complex().re - z.norm_sqr()).abs() < 1e-9);
        }
    }
}

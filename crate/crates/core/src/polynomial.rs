//! Sparse multivariate polynomials over [`Scalar`].
//!
//! A monomial is stored as the sorted multiset of its variable indices, so
//! `x₁²x₃` is `[0, 0, 2]`. For monomials of equal degree the derived
//! ordering of these sequences is the reverse of lexicographic order on
//! exponent vectors, which makes the first map entry the leading term.
//!
//! Text form: terms `coeff*x1^a*x2^b` joined by `+`/`-`, variables
//! 1-based. A coefficient with a `√3` part and a rational part is written
//! in parentheses, e.g. `(1+1/2r3)*x1*x2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::{parse_scalar_prefix, Rational, Scalar};

pub type Monomial = SmallVec<[u16; 6]>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("malformed polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

fn merge(a: &[u16], b: &[u16]) -> Monomial {
    let mut out = Monomial::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a / b` as multisets, if `b ⊆ a`.
fn monomial_quotient(a: &[u16], b: &[u16]) -> Option<Monomial> {
    let mut out = Monomial::new();
    let mut j = 0;
    for &v in a {
        if j < b.len() && b[j] == v {
            j += 1;
        } else if j < b.len() && b[j] < v {
            return None;
        } else {
            out.push(v);
        }
    }
    (j == b.len()).then_some(out)
}

/// Exponent vector of a monomial.
pub fn exponents(m: &[u16], nvars: usize) -> Vec<u32> {
    let mut e = vec![0; nvars];
    for &v in m {
        e[v as usize] += 1;
    }
    e
}

/// `x1^2*x3` style rendering of a monomial.
pub fn format_monomial(m: &[u16]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let v = m[i];
        let mut e = 0;
        while i < m.len() && m[i] == v {
            e += 1;
            i += 1;
        }
        parts.push(if e == 1 { format!("x{}", v + 1) } else { format!("x{}^{}", v + 1, e) });
    }
    parts.join("*")
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::new(), c);
        p
    }

    /// The coordinate function `xᵢ` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = Self::zero(nvars);
        p.add_term(smallvec::smallvec![i as u16], Scalar::ONE);
        p
    }

    /// Linear form `Σ cᵢ xᵢ`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let mut p = Self::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(smallvec::smallvec![i as u16], c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u16]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or(Scalar::ZERO)
    }

    /// Adds `c·m`, dropping the entry if it cancels. `m` must be sorted.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(m.iter().all(|&v| (v as usize) < self.nvars));
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `m` given by exponents.
    pub fn add_term_exponents(&mut self, exps: &[u32], c: Scalar) {
        let mut m = Monomial::new();
        for (v, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                m.push(v as u16);
            }
        }
        self.add_term(m, c);
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    pub fn is_homogeneous(&self, deg: usize) -> bool {
        self.terms.keys().all(|m| m.len() == deg)
    }

    fn check_arity(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::ONE);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self += s·other`.
    pub fn add_assign_scaled(&mut self, other: &Polynomial, s: &Scalar) {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), if s.is_one() { c.clone() } else { c * s });
        }
    }

    /// `self += s·a·b` without materializing the product.
    pub fn add_product(&mut self, a: &Polynomial, b: &Polynomial, s: &Scalar) {
        assert!(self.nvars == a.nvars && a.nvars == b.nvars, "polynomial arity mismatch");
        if s.is_zero() {
            return;
        }
        for (ma, ca) in &a.terms {
            let cs = ca * s;
            for (mb, cb) in &b.terms {
                self.add_term(merge(ma, mb), &cs * cb);
            }
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        out.add_product(self, other, &Scalar::ONE);
        out
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        out.add_assign_scaled(self, s);
        out
    }

    /// Multiplies by the monomial `m` and the scalar `s`.
    pub fn mul_monomial(&self, m: &[u16], s: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (mm, c) in &self.terms {
            out.add_term(merge(mm, m), c * s);
        }
        out
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.nvars {
            return Err(PolyError::VariableOutOfRange { index: i, nvars: self.nvars });
        }
        let v = i as u16;
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.iter().filter(|&&x| x == v).count();
            if e == 0 {
                continue;
            }
            let pos = m.iter().position(|&x| x == v).expect("present");
            let mut mm = m.clone();
            mm.remove(pos);
            out.add_term(mm, c * &Scalar::from_int(e as i64));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.partial_derivative(i).expect("in range")).collect()
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        let mut acc = Scalar::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &v in m {
                t = &t * &point[v as usize];
                if t.is_zero() {
                    break;
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms.iter().map(|(m, c)| m.iter().fold(c.to_f64(), |acc, &v| acc * point[v as usize])).sum()
    }

    /// Leading term (lex-largest exponent vector among the smallest-degree terms).
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next()
    }

    /// Division of homogeneous polynomials: `self = q·g + r` where no term
    /// of `r` is divisible by the leading monomial of `g`. When `g` divides
    /// `self` the remainder is zero.
    pub fn divide(&self, g: &Polynomial) -> (Polynomial, Polynomial) {
        assert_eq!(self.nvars, g.nvars, "polynomial arity mismatch");
        let (lm, lc) = g.leading_term().expect("division by the zero polynomial");
        let lc_inv = lc.checked_inv().expect("nonzero leading coefficient");
        let mut p = self.clone();
        let mut q = Polynomial::zero(self.nvars);
        let mut r = Polynomial::zero(self.nvars);
        while let Some((m, c)) = p.terms.iter().next().map(|(m, c)| (m.clone(), c.clone())) {
            match monomial_quotient(&m, lm) {
                Some(qm) => {
                    let qc = &c * &lc_inv;
                    p.add_assign_scaled(&g.mul_monomial(&qm, &Scalar::ONE), &-&qc);
                    q.add_term(qm, qc);
                }
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        (q, r)
    }

    /// Parses with an explicit variable count.
    pub fn parse_with_nvars(text: &str, nvars: usize) -> Result<Polynomial, PolyError> {
        let terms = parse_terms(text)?;
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            if let Some(&v) = m.last() {
                if v as usize >= nvars {
                    return Err(PolyError::VariableOutOfRange { index: v as usize + 1, nvars });
                }
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

fn parse_terms(text: &str) -> Result<Vec<(Monomial, Scalar)>, PolyError> {
    let s: Vec<u8> = text.bytes().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < s.len() && s[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let err = |pos: usize, msg: &str| PolyError::Parse { pos, msg: msg.to_string() };
    let mut out = Vec::new();
    skip_ws(&mut pos);
    if pos == s.len() {
        return Err(err(pos, "empty polynomial"));
    }
    let mut first = true;
    while pos < s.len() {
        let mut negative = false;
        if s[pos] == b'+' || s[pos] == b'-' {
            negative = s[pos] == b'-';
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err(pos, "expected '+' or '-' between terms"));
        }
        first = false;
        let mut coeff = Scalar::ONE;
        let mut have_coeff = false;
        if pos < s.len() && s[pos] == b'(' {
            let close = s[pos..].iter().position(|&c| c == b')').ok_or_else(|| err(pos, "unclosed parenthesis"))? + pos;
            let inner = std::str::from_utf8(&s[pos + 1..close]).expect("ascii");
            coeff = inner.trim().parse().map_err(|e| match e {
                crate::scalar::ScalarError::Parse { pos: p, msg } => err(pos + 1 + p, &msg),
                other => err(pos, &other.to_string()),
            })?;
            pos = close + 1;
            have_coeff = true;
        } else if pos < s.len() && s[pos].is_ascii_digit() {
            // Unparenthesized: a rational, optionally times √3.
            let rest = std::str::from_utf8(&s[pos..]).expect("ascii");
            let end = rest.find(|c: char| !(c.is_ascii_digit() || c == '/' || c == 'r')).unwrap_or(rest.len());
            let (c, used) = parse_scalar_prefix(&rest[..end]).map_err(|e| match e {
                crate::scalar::ScalarError::Parse { pos: p, msg } => err(pos + p, &msg),
                other => err(pos, &other.to_string()),
            })?;
            if used != end {
                return Err(err(pos + used, "unexpected character in coefficient"));
            }
            coeff = c;
            pos += used;
            have_coeff = true;
        }
        skip_ws(&mut pos);
        let mut m = Monomial::new();
        let mut need_factor = !have_coeff;
        loop {
            if have_coeff || !need_factor {
                if pos < s.len() && s[pos] == b'*' {
                    pos += 1;
                    skip_ws(&mut pos);
                } else if !need_factor {
                    break;
                }
            }
            if pos >= s.len() || s[pos] != b'x' {
                return Err(err(pos, "expected variable 'x<index>'"));
            }
            pos += 1;
            let start = pos;
            while pos < s.len() && s[pos].is_ascii_digit() {
                pos += 1;
            }
            let idx: usize = std::str::from_utf8(&s[start..pos])
                .expect("ascii")
                .parse()
                .map_err(|_| err(start, "expected variable index"))?;
            if idx == 0 || idx > u16::MAX as usize {
                return Err(err(start, "variable indices start at 1"));
            }
            let mut e = 1u32;
            if pos < s.len() && s[pos] == b'^' {
                pos += 1;
                let st = pos;
                while pos < s.len() && s[pos].is_ascii_digit() {
                    pos += 1;
                }
                e = std::str::from_utf8(&s[st..pos])
                    .expect("ascii")
                    .parse()
                    .map_err(|_| err(st, "expected exponent"))?;
            }
            for _ in 0..e {
                m.push((idx - 1) as u16);
            }
            skip_ws(&mut pos);
            need_factor = false;
            have_coeff = true;
        }
        m.sort_unstable();
        out.push((m, if negative { -coeff } else { coeff }));
        skip_ws(&mut pos);
    }
    Ok(out)
}

impl FromStr for Polynomial {
    type Err = PolyError;

    /// Infers the variable count from the largest index used.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let terms = parse_terms(text)?;
        let nvars = terms.iter().filter_map(|(m, _)| m.last()).map(|&v| v as usize + 1).max().unwrap_or(0);
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mono = format_monomial(m);
            let (neg, body) = if c.is_rational() || c.a().is_zero() {
                let neg = c.signum() < 0;
                let mag = if neg { -c } else { c.clone() };
                let body = if mag.is_one() && !m.is_empty() {
                    String::new()
                } else if mag.is_rational() {
                    mag.to_string()
                } else {
                    // pure √3 multiple; `r3` form without the leading 0
                    let b = mag.b();
                    format!("{}r3", b)
                };
                (neg, body)
            } else {
                (false, format!("({c})"))
            };
            if neg {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            match (body.is_empty(), mono.is_empty()) {
                (true, _) => f.write_str(&mono)?,
                (false, true) => f.write_str(&body)?,
                (false, false) => write!(f, "{body}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial arity mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-Scalar::ONE);
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::ONE)
    }
}

/// Multinomial weight `Π eᵢ!` of a monomial.
pub fn exponent_factorial(m: &[u16]) -> Rational {
    let mut acc: i64 = 1;
    let mut i = 0;
    while i < m.len() {
        let v = m[i];
        let mut e = 0i64;
        while i < m.len() && m[i] == v {
            e += 1;
            i += 1;
            acc *= e;
        }
    }
    Rational::from_integer(acc)
}

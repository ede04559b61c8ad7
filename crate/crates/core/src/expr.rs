//! Canonical polynomials over split-complex rationals.
//!
//! An [`Expr`] is a sparse map from monomials to nonzero coefficients. The
//! imaginary unit `j` never appears as a symbol; it is absorbed into the
//! coefficients, so two expressions are mathematically equal iff they are
//! structurally equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chart::{Chart, Symbol};
use crate::split::SplitComplex;

type IntPair = (BigInt, BigInt);

fn int_mul(a: &IntPair, b: &IntPair) -> IntPair {
    (&a.0 * &b.0 + &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn int_pow(x: &IntPair, e: u32) -> IntPair {
    (1..e).fold(x.clone(), |acc, _| int_mul(&acc, x))
}

/// A product of symbol powers. Factors are kept sorted by print rank with
/// positive exponents only; the empty monomial is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Self(vec![(s, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut acc: BTreeMap<(u8, u32), (Symbol, u32)> = BTreeMap::new();
        for (s, e) in factors {
            if e == 0 {
                continue;
            }
            acc.entry(s.print_rank()).or_insert((s, 0)).1 += e;
        }
        Self(acc.into_values().collect())
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0.iter().find(|(t, _)| *t == s).map_or(0, |&(_, e)| e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut k) = (0, 0);
        while i < a.len() && k < b.len() {
            match a[i].0.print_rank().cmp(&b[k].0.print_rank()) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[k]);
                    k += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[k].1));
                    i += 1;
                    k += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[k..]);
        Monomial(out)
    }

    /// `(exponent, monomial with that factor lowered by one)`, if `s` occurs.
    fn lower(&self, s: Symbol) -> Option<(u32, Monomial)> {
        let pos = self.0.iter().position(|(t, _)| *t == s)?;
        let e = self.0[pos].1;
        let mut f = self.0.clone();
        if e == 1 {
            f.remove(pos);
        } else {
            f[pos].1 -= 1;
        }
        Some((e, Monomial(f)))
    }
}

/// Graded order, higher total degree first, ties broken lexicographically
/// with larger exponents on higher-priority symbols first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(other.0.iter()) {
                let by_symbol = x.0.print_rank().cmp(&y.0.print_rank());
                if by_symbol != Ordering::Equal {
                    return by_symbol;
                }
                let by_exp = y.1.cmp(&x.1);
                if by_exp != Ordering::Equal {
                    return by_exp;
                }
            }
            other.0.len().cmp(&self.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, (s, e)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Expr {
    terms: BTreeMap<Monomial, SplitComplex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("assignment has no value for symbol {0}")]
    MissingSymbol(Symbol),
}

impl Expr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(SplitComplex::one())
    }

    pub fn j() -> Self {
        Self::constant(SplitComplex::j())
    }

    pub fn constant(c: SplitComplex) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(SplitComplex::from_ints(n, 0))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(SplitComplex::one(), Monomial::var(s))
    }

    pub fn term(c: SplitComplex, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &SplitComplex)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value of a constant expression.
    pub fn as_constant(&self) -> Option<SplitComplex> {
        match self.terms.len() {
            0 => Some(SplitComplex::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.0.is_empty().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(s, _)| s))
            .collect()
    }

    pub fn is_over(&self, chart: &Chart) -> bool {
        self.symbols().into_iter().all(|s| chart.contains(s))
    }

    fn add_term(&mut self, m: Monomial, c: SplitComplex) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &SplitComplex) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        let mut out = Expr::zero();
        for (m, a) in &self.terms {
            // products of nonzero split-complex numbers may vanish
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Expr {
        let mut base = self.clone();
        let mut acc = Expr::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative; every other symbol, including the
    /// conjugate of `s`, is held fixed.
    pub fn differentiate(&self, s: Symbol) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(s) {
                out.add_term(lowered, c.scale_int(e as i64));
            }
        }
        out
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<SplitComplex, EvalError> {
        // Everything is scaled to one common denominator so the sum is
        // accumulated over integers, without a gcd per term.
        let mut values = BTreeMap::new();
        let mut d = BigInt::one();
        for s in self.symbols() {
            let v = a.get(s).ok_or(EvalError::MissingSymbol(s))?;
            d = d.lcm(v.re.denom()).lcm(v.jm.denom());
            values.insert(s, v);
        }
        let scaled = |q: &BigRational, den: &BigInt| q.numer() * (den / q.denom());
        let base: BTreeMap<Symbol, (BigInt, BigInt)> = values
            .into_iter()
            .map(|(s, v)| (s, (scaled(&v.re, &d), scaled(&v.jm, &d))))
            .collect();
        let l = self
            .terms
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.re.denom()).lcm(c.jm.denom()));
        let top = self.degree();
        let mut d_pows = vec![BigInt::one()];
        for k in 0..top as usize {
            d_pows.push(&d_pows[k] * &d);
        }
        let mut powers: BTreeMap<(Symbol, u32), (BigInt, BigInt)> = BTreeMap::new();
        let (mut re, mut jm) = (BigInt::zero(), BigInt::zero());
        for (m, c) in &self.terms {
            let mut v = (scaled(&c.re, &l), scaled(&c.jm, &l));
            for &(s, e) in &m.0 {
                let p = powers
                    .entry((s, e))
                    .or_insert_with(|| int_pow(&base[&s], e));
                v = int_mul(&v, p);
            }
            let pad = &d_pows[(top - m.degree()) as usize];
            re += &v.0 * pad;
            jm += &v.1 * pad;
        }
        let den = l * &d_pows[top as usize];
        Ok(SplitComplex::new(
            BigRational::new(re, den.clone()),
            BigRational::new(jm, den),
        ))
    }

    /// Decomposes `self = p + j*q` with `p`, `q` having real coefficients.
    pub fn split_parts(&self) -> (Expr, Expr) {
        let mut p = Expr::zero();
        let mut q = Expr::zero();
        for (m, c) in &self.terms {
            if !c.re.is_zero() {
                p.add_term(m.clone(), SplitComplex::real(c.re.clone()));
            }
            if !c.jm.is_zero() {
                q.add_term(m.clone(), SplitComplex::real(c.jm.clone()));
            }
        }
        (p, q)
    }

    /// `true` when every coefficient has zero `j` part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(SplitComplex::is_real)
    }

    /// Replaces each symbol by an expression; symbols without an image are kept.
    pub fn substitute(&self, map: &BTreeMap<Symbol, Expr>) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let mut t = Expr::constant(c.clone());
            for &(s, e) in &m.0 {
                let f = match map.get(&s) {
                    Some(img) => img.pow(e),
                    None => Expr::term(SplitComplex::one(), Monomial(vec![(s, e)])),
                };
                t = &t * &f;
            }
            out = &out + &t;
        }
        out
    }
}

impl From<Symbol> for Expr {
    fn from(s: Symbol) -> Self {
        Expr::symbol(s)
    }
}

impl From<SplitComplex> for Expr {
    fn from(c: SplitComplex) -> Self {
        Expr::constant(c)
    }
}

impl<'a> Add<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(mut self, rhs: Expr) -> Expr {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Sub<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        &self * &rhs
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |acc, e| acc + e)
    }
}

/// Canonical printing: terms in monomial order, e.g.
/// `2*z1^2*zb1 + (1+1*j)*u1`. Mixed coefficients are parenthesised, pure
/// `j` coefficients print as `b*j`, and single-part negatives become ` - `.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let several = self.terms.len() > 1;
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_single();
            let c = if negative { -c } else { c.clone() };
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mixed = !c.re.is_zero() && !c.jm.is_zero();
            if m.0.is_empty() {
                if mixed && several {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "{c}")?;
                }
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else if mixed {
                write!(f, "({c})*{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Values for the symbols of a chart.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Assignment(BTreeMap<Symbol, SplitComplex>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, s: Symbol, v: SplitComplex) -> Self {
        self.0.insert(s, v);
        self
    }

    pub fn insert(&mut self, s: Symbol, v: SplitComplex) {
        self.0.insert(s, v);
    }

    pub fn get(&self, s: Symbol) -> Option<&SplitComplex> {
        self.0.get(&s)
    }

    pub fn covers(&self, chart: &Chart) -> bool {
        chart.symbols().all(|s| self.0.contains_key(&s))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &SplitComplex)> {
        self.0.iter()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (s, v)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s} = {v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z1() -> Expr {
        Expr::symbol(Symbol::z(1))
    }
    fn zb1() -> Expr {
        Expr::symbol(Symbol::zb(1))
    }
    fn u1() -> Expr {
        Expr::symbol(Symbol::u(1))
    }

    #[test]
    fn golden_printing() {
        let e = &(&z1().pow(2) * &zb1()).scale(&SplitComplex::from_ints(2, 0))
            + &u1().scale(&SplitComplex::from_ints(1, 1));
        assert_eq!(e.to_string(), "2*z1^2*zb1 + (1+1*j)*u1");
    }

    #[test]
    fn fiber_symbols_lead_in_lifted_terms() {
        let ub1 = Expr::symbol(Symbol::ub(1));
        let e = &(&u1() * &zb1()) + &(&ub1 * &z1());
        assert_eq!(e.to_string(), "u1*zb1 + ub1*z1");
    }

    #[test]
    fn printing_signs_and_constants() {
        assert_eq!(Expr::zero().to_string(), "0");
        assert_eq!((&z1() - &Expr::int(2)).to_string(), "z1 - 2");
        assert_eq!((-z1()).to_string(), "-z1");
        assert_eq!(z1().scale(&SplitComplex::from_ints(0, -3)).to_string(), "-3*j*z1");
        assert_eq!(
            (&z1() + &Expr::constant(SplitComplex::from_ints(1, -1))).to_string(),
            "z1 + (1-1*j)"
        );
        assert_eq!(Expr::constant(SplitComplex::from_ints(1, 1)).to_string(), "1+1*j");
    }

    #[test]
    fn zero_divisor_product_cancels() {
        let a = Expr::constant(SplitComplex::from_ints(1, 1));
        let b = Expr::constant(SplitComplex::from_ints(1, -1));
        assert!((&a * &b).is_zero());
        assert!((&a.clone() * &z1()).scale(&SplitComplex::from_ints(1, -1)).is_zero());
    }

    #[test]
    fn derivatives() {
        assert_eq!(z1().pow(2).differentiate(Symbol::z(1)), z1().scale(&SplitComplex::from_ints(2, 0)));
        assert_eq!((&z1() * &zb1()).differentiate(Symbol::z(1)), zb1());
        assert!((&Expr::j() * &z1()).differentiate(Symbol::zb(1)).is_zero());
    }

    #[test]
    fn evaluation() {
        let a = Assignment::new().with(Symbol::z(1), SplitComplex::from_ints(2, 0));
        assert_eq!(z1().pow(2).evaluate(&a).unwrap(), SplitComplex::from_ints(4, 0));
        let a = Assignment::new().with(Symbol::z(1), SplitComplex::from_ints(1, 1));
        assert_eq!((&Expr::j() * &z1()).evaluate(&a).unwrap(), SplitComplex::from_ints(1, 1));
        let a = Assignment::new().with(Symbol::z(1), SplitComplex::from_ints(1, -1));
        let e = z1().scale(&SplitComplex::from_ints(1, 1));
        assert!(e.evaluate(&a).unwrap().is_zero());
        assert_eq!(
            zb1().evaluate(&a),
            Err(EvalError::MissingSymbol(Symbol::zb(1)))
        );
    }

    #[test]
    fn split_parts_examples() {
        let e = &z1() + &(&Expr::j() * &zb1());
        assert_eq!(e.split_parts(), (z1(), zb1()));
        let e = z1().pow(2).scale(&SplitComplex::from_ints(2, 3));
        assert_eq!(
            e.split_parts(),
            (z1().pow(2).scale(&SplitComplex::from_ints(2, 0)), z1().pow(2).scale(&SplitComplex::from_ints(3, 0)))
        );
        assert_eq!(Expr::zero().split_parts(), (Expr::zero(), Expr::zero()));
    }

    #[test]
    fn monomial_order_is_graded() {
        let e = &(&z1() + &Expr::one()) + &z1().pow(3);
        assert_eq!(e.to_string(), "z1^3 + z1 + 1");
    }

    #[test]
    fn substitution() {
        let mut map = BTreeMap::new();
        map.insert(Symbol::z(1), &zb1() + &Expr::one());
        let e = (&z1() * &z1()).substitute(&map);
        assert_eq!(e, (&zb1() + &Expr::one()).pow(2));
    }
}

//! Graded-commutative polynomial algebra with even and odd generators.
//!
//! An [`Expression`] is a finite map from [`Monomial`] to a nonzero
//! [`Rational`] coefficient. A monomial stores its even generators with
//! positive exponents and its odd generators as a strictly increasing
//! sequence; reordering odd factors into that sequence produces the Koszul
//! sign, and a repeated odd factor kills the term. Because the map is keyed
//! on the monomial and zero coefficients are never stored, two expressions
//! are equal iff they compare equal structurally.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact coefficient type.
pub type Rational = num_rational::BigRational;

/// Generator families. The derived order is the canonical generator order:
/// family first, then index. Odd families come after the even ones, and
/// `Xi` precedes `XiStar`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Base coordinate `x^i`.
    X,
    /// Dual (winding) coordinate `x̃_i`.
    XTilde,
    /// Momentum `p_a` conjugate to `x^a` in the doubled chart.
    P,
    /// Momentum `p̃^a` conjugate to `x̃_a`.
    PTilde,
    /// Momentum `x*_i` conjugate to `x^i` in the base chart.
    XStar,
    /// Odd fibre coordinate `ξ^i`.
    Xi,
    /// Odd momentum `ξ*_i`.
    XiStar,
    /// Odd fibre coordinate `θ_i` on `ΠA*`.
    Theta,
    /// Odd momentum `θ*^i` on `T*ΠA*`.
    ThetaStar,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::X,
        Family::XTilde,
        Family::P,
        Family::PTilde,
        Family::XStar,
        Family::Xi,
        Family::XiStar,
        Family::Theta,
        Family::ThetaStar,
    ];

    pub fn parity(self) -> Parity {
        match self {
            Family::Xi | Family::XiStar | Family::Theta | Family::ThetaStar => Parity::Odd,
            _ => Parity::Even,
        }
    }

    pub fn is_odd(self) -> bool {
        self.parity() == Parity::Odd
    }

    /// Surface name prefix used by the text grammar, e.g. `xt_` or `xi`.
    pub fn prefix(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::XTilde => "xt_",
            Family::P => "p",
            Family::PTilde => "pt_",
            Family::XStar => "xs_",
            Family::Xi => "xi",
            Family::XiStar => "xis_",
            Family::Theta => "th_",
            Family::ThetaStar => "ths_",
        }
    }
}

/// A single generator: a family together with a 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub family: Family,
    pub index: u16,
}

impl Generator {
    pub const fn new(family: Family, index: u16) -> Self {
        Generator { family, index }
    }

    pub fn parity(self) -> Parity {
        self.family.parity()
    }

    pub fn is_odd(self) -> bool {
        self.family.is_odd()
    }

    pub fn x(i: usize) -> Self {
        Self::indexed(Family::X, i)
    }
    pub fn xt(i: usize) -> Self {
        Self::indexed(Family::XTilde, i)
    }
    pub fn p(i: usize) -> Self {
        Self::indexed(Family::P, i)
    }
    pub fn pt(i: usize) -> Self {
        Self::indexed(Family::PTilde, i)
    }
    pub fn xs(i: usize) -> Self {
        Self::indexed(Family::XStar, i)
    }
    pub fn xi(i: usize) -> Self {
        Self::indexed(Family::Xi, i)
    }
    pub fn xis(i: usize) -> Self {
        Self::indexed(Family::XiStar, i)
    }
    pub fn theta(i: usize) -> Self {
        Self::indexed(Family::Theta, i)
    }
    pub fn theta_star(i: usize) -> Self {
        Self::indexed(Family::ThetaStar, i)
    }

    fn indexed(family: Family, i: usize) -> Self {
        let index = u16::try_from(i).expect("generator index fits in u16");
        Generator { family, index }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.index)
    }
}

/// ℤ₂ grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^(|a||b|)` as a boolean "negate" flag.
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator {generator} is outside the chart (dimension {dim})")]
    ChartMismatch { generator: Generator, dim: usize },
    #[error("generator {generator} has parity {expected:?} but the substituted value is not {expected:?}")]
    ParityMismatch { generator: Generator, expected: Parity },
    #[error("expression is not a section lift: term is not linear in a single odd fibre generator")]
    NotASection,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// Coefficient-free power product: even generators with exponents and a
/// strictly increasing list of odd generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    even: Vec<(Generator, u32)>,
    odd: Vec<Generator>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn even(&self) -> &[(Generator, u32)] {
        &self.even
    }

    pub fn odd(&self) -> &[Generator] {
        &self.odd
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.odd.len())
    }

    pub fn degree_of(&self, g: Generator) -> u32 {
        if g.is_odd() {
            u32::from(self.odd.contains(&g))
        } else {
            self.even
                .iter()
                .find(|(h, _)| *h == g)
                .map_or(0, |&(_, e)| e)
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.even.iter().map(|&(_, e)| e).sum::<u32>() + self.odd.len() as u32
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.even.iter().map(|&(g, _)| g).chain(self.odd.iter().copied())
    }

    /// Product of two monomials; `None` if an odd generator repeats, otherwise
    /// the product and whether the Koszul sign is negative.
    fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut negate = false;
        let (mut i, mut j) = (0, 0);
        while i < self.odd.len() && j < other.odd.len() {
            match self.odd[i].cmp(&other.odd[j]) {
                core::cmp::Ordering::Less => {
                    odd.push(self.odd[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    // other.odd[j] jumps over the remaining factors of self
                    if (self.odd.len() - i) % 2 == 1 {
                        negate = !negate;
                    }
                    odd.push(other.odd[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => return None,
            }
        }
        odd.extend_from_slice(&self.odd[i..]);
        odd.extend_from_slice(&other.odd[j..]);

        let mut even = Vec::with_capacity(self.even.len() + other.even.len());
        let (mut i, mut j) = (0, 0);
        while i < self.even.len() && j < other.even.len() {
            let (a, ea) = self.even[i];
            let (b, eb) = other.even[j];
            match a.cmp(&b) {
                core::cmp::Ordering::Less => {
                    even.push((a, ea));
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    even.push((b, eb));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    even.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        even.extend_from_slice(&self.even[i..]);
        even.extend_from_slice(&other.even[j..]);
        Some((Monomial { even, odd }, negate))
    }
}

/// An unnormalized product `coeff · g₁^e₁ · g₂^e₂ ⋯` in the given factor
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub coeff: Rational,
    pub factors: Vec<(Generator, u32)>,
}

impl RawTerm {
    pub fn new(coeff: Rational, factors: Vec<(Generator, u32)>) -> Self {
        RawTerm { coeff, factors }
    }

    /// Canonical monomial and sign, or `None` when an odd factor repeats.
    fn canonicalize(&self) -> Option<(Monomial, bool)> {
        let mut odd: Vec<Generator> = Vec::new();
        let mut even: BTreeMap<Generator, u32> = BTreeMap::new();
        for &(g, e) in &self.factors {
            if e == 0 {
                continue;
            }
            if g.is_odd() {
                if e > 1 {
                    return None;
                }
                odd.push(g);
            } else {
                *even.entry(g).or_insert(0) += e;
            }
        }
        // insertion sort, counting adjacent transpositions
        let mut negate = false;
        for i in 1..odd.len() {
            let mut j = i;
            while j > 0 && odd[j - 1] > odd[j] {
                odd.swap(j - 1, j);
                negate = !negate;
                j -= 1;
            }
            if j > 0 && odd[j - 1] == odd[j] {
                return None;
            }
        }
        Some((
            Monomial {
                even: even.into_iter().collect(),
                odd,
            },
            negate,
        ))
    }
}

/// Normalized sum of graded monomials with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Expression {
    terms: BTreeMap<Monomial, Rational>,
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Expression {
    pub fn zero() -> Self {
        Expression::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// `n/d` as a constant.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn generator(g: Generator) -> Self {
        let m = if g.is_odd() {
            Monomial {
                even: Vec::new(),
                odd: alloc::vec![g],
            }
        } else {
            Monomial {
                even: alloc::vec![(g, 1)],
                odd: Vec::new(),
            }
        };
        Self::from_term(m, Rational::one())
    }

    pub fn from_term(m: Monomial, c: Rational) -> Self {
        let mut e = Expression::zero();
        e.add_term(m, c);
        e
    }

    /// Builds the normal form of a list of raw terms: odd factors sorted with
    /// their Koszul sign, odd squares dropped, like terms combined.
    pub fn normalize<I: IntoIterator<Item = RawTerm>>(raw: I) -> Self {
        let mut e = Expression::zero();
        for t in raw {
            if let Some((m, negate)) = t.canonicalize() {
                e.add_term(m, if negate { -t.coeff } else { t.coeff });
            }
        }
        e
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
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

    /// Terms in canonical (monomial) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term.
    pub fn constant_part(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn scale(&self, c: &Rational) -> Expression {
        if c.is_zero() {
            return Expression::zero();
        }
        Expression {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// `Some(parity)` when every term has the same parity; the zero
    /// expression counts as even. `None` marks an inhomogeneous expression.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = match it.next() {
            Some(p) => p,
            None => return Some(Parity::Even),
        };
        it.all(|p| p == first).then_some(first)
    }

    /// Splits into even and odd parts.
    pub fn split_parity(&self) -> (Expression, Expression) {
        let mut even = Expression::zero();
        let mut odd = Expression::zero();
        for (m, c) in &self.terms {
            let target = if m.parity().is_odd() { &mut odd } else { &mut even };
            target.terms.insert(m.clone(), c.clone());
        }
        (even, odd)
    }

    /// Every generator appearing in some term, in canonical order.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gs: Vec<Generator> = self.terms.keys().flat_map(Monomial::generators).collect();
        gs.sort();
        gs.dedup();
        gs
    }

    pub fn contains_generator(&self, g: Generator) -> bool {
        self.terms.keys().any(|m| m.degree_of(g) > 0)
    }

    /// True when only generators of the listed families occur.
    pub fn only_families(&self, allowed: &[Family]) -> bool {
        self.terms
            .keys()
            .flat_map(Monomial::generators)
            .all(|g| allowed.contains(&g.family))
    }

    /// Largest total degree among the terms (0 for the zero expression).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn product(&self, other: &Expression) -> Expression {
        let mut out = Expression::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negate)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negate { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Expression {
        let mut acc = Expression::one();
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// Partial derivative with respect to `g`. For odd `g` this is the left
    /// derivative: `g` is moved to the front of the odd factors (collecting
    /// the Koszul sign) and then deleted.
    pub fn partial(&self, g: Generator) -> Expression {
        self.derivative(g, Side::Left)
    }

    /// Right derivative with respect to `g`; agrees with [`partial`](Self::partial)
    /// for even `g`.
    pub fn partial_right(&self, g: Generator) -> Expression {
        self.derivative(g, Side::Right)
    }

    fn derivative(&self, g: Generator, side: Side) -> Expression {
        let mut out = Expression::zero();
        for (m, c) in &self.terms {
            if g.is_odd() {
                let Some(pos) = m.odd.iter().position(|&h| h == g) else {
                    continue;
                };
                let swaps = match side {
                    Side::Left => pos,
                    Side::Right => m.odd.len() - 1 - pos,
                };
                let mut odd = m.odd.clone();
                odd.remove(pos);
                let dm = Monomial {
                    even: m.even.clone(),
                    odd,
                };
                out.add_term(dm, if swaps % 2 == 1 { -c.clone() } else { c.clone() });
            } else {
                let Some(pos) = m.even.iter().position(|&(h, _)| h == g) else {
                    continue;
                };
                let e = m.even[pos].1;
                let mut even = m.even.clone();
                if e == 1 {
                    even.remove(pos);
                } else {
                    even[pos].1 = e - 1;
                }
                let dm = Monomial {
                    even,
                    odd: m.odd.clone(),
                };
                out.add_term(dm, c * rat(i64::from(e)));
            }
        }
        out
    }

    /// Replaces every occurrence of `g` by `value`. Odd generators are first
    /// moved to the front of their term.
    pub fn substitute(&self, g: Generator, value: &Expression) -> Result<Expression, AlgebraError> {
        if !value.is_zero() && value.parity() != Some(g.parity()) {
            return Err(AlgebraError::ParityMismatch {
                generator: g,
                expected: g.parity(),
            });
        }
        let mut out = Expression::zero();
        for (m, c) in &self.terms {
            let deg = m.degree_of(g);
            if deg == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            if g.is_odd() {
                // m = ± g · rest, with the sign of the left derivative
                let rest = Expression::from_term(m.clone(), c.clone()).partial(g);
                out += &value.product(&rest);
            } else {
                let even = m.even.iter().copied().filter(|&(h, _)| h != g).collect();
                let rest = Monomial {
                    even,
                    odd: m.odd.clone(),
                };
                out += &value.pow(deg).product(&Expression::from_term(rest, c.clone()));
            }
        }
        Ok(out)
    }

    /// Renames generators through `f`, renormalizing afterwards. The map must
    /// preserve parity.
    pub fn rename(&self, f: impl Fn(Generator) -> Generator) -> Expression {
        Expression::normalize(self.terms.iter().map(|(m, c)| {
            let factors = m
                .even
                .iter()
                .map(|&(g, e)| (f(g), e))
                .chain(m.odd.iter().map(|&g| (f(g), 1)))
                .inspect(|(g, _)| debug_assert_eq!(f(*g).parity(), g.parity()))
                .collect();
            RawTerm::new(c.clone(), factors)
        }))
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Expression {
        Expression {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Expression>>(items: I) -> Expression {
        let mut acc = Expression::zero();
        for e in items {
            acc += e;
        }
        acc
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

impl From<Generator> for Expression {
    fn from(g: Generator) -> Self {
        Expression::generator(g)
    }
}

impl AddAssign<&Expression> for Expression {
    fn add_assign(&mut self, rhs: &Expression) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add<&Expression> for &Expression {
    type Output = Expression;
    fn add(self, rhs: &Expression) -> Expression {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Expression {
    type Output = Expression;
    fn add(mut self, rhs: Expression) -> Expression {
        self += &rhs;
        self
    }
}

impl Neg for &Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        Expression {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        -&self
    }
}

impl Sub<&Expression> for &Expression {
    type Output = Expression;
    fn sub(self, rhs: &Expression) -> Expression {
        self + &(-rhs)
    }
}

impl Sub for Expression {
    type Output = Expression;
    fn sub(self, rhs: Expression) -> Expression {
        &self - &rhs
    }
}

impl Mul<&Expression> for &Expression {
    type Output = Expression;
    fn mul(self, rhs: &Expression) -> Expression {
        Expression::product(self, rhs)
    }
}

impl Mul for Expression {
    type Output = Expression;
    fn mul(self, rhs: Expression) -> Expression {
        Expression::product(&self, &rhs)
    }
}

impl fmt::Debug for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use superbracket_core::{Chart, ChartMode, Expression, Generator, Parity, Rational, RawTerm};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// A raw product of up to four generators of `chart`, in arbitrary order and
/// with possibly repeated odd factors.
pub fn raw_term(chart: Chart) -> impl Strategy<Value = RawTerm> {
    let gens = chart.generators();
    (rational(), prop::collection::vec((0..gens.len(), 1u32..=2), 0..=4)).prop_map(move |(c, fs)| {
        let factors = fs
            .into_iter()
            .map(|(i, e)| {
                let g = gens[i];
                (g, if g.is_odd() { 1 } else { e })
            })
            .collect();
        RawTerm::new(c, factors)
    })
}

pub fn expression(chart: Chart) -> impl Strategy<Value = Expression> {
    prop::collection::vec(raw_term(chart), 0..=4).prop_map(Expression::normalize)
}

/// A single monomial of the given parity: even part of total degree at most
/// three, odd part a random subset of the odd generators.
pub fn monomial_of(chart: Chart, parity: Parity) -> impl Strategy<Value = Expression> {
    let gens = chart.generators();
    let even: Vec<Generator> = gens.iter().copied().filter(|g| !g.is_odd()).collect();
    let odd: Vec<Generator> = gens.iter().copied().filter(|g| g.is_odd()).collect();
    let n_odd = odd.len();
    (
        rational(),
        prop::collection::vec(0..even.len(), 0..=3),
        prop::collection::vec(any::<bool>(), n_odd),
        0..n_odd,
    )
        .prop_map(move |(c, ev, mut mask, flip)| {
            let count = mask.iter().filter(|b| **b).count();
            if Parity::from_count(count) != parity {
                mask[flip] = !mask[flip];
            }
            let mut factors: Vec<(Generator, u32)> = ev.into_iter().map(|i| (even[i], 1)).collect();
            factors.extend(odd.iter().zip(&mask).filter(|(_, b)| **b).map(|(g, _)| (*g, 1)));
            Expression::normalize([RawTerm::new(c, factors)])
        })
}

pub fn homogeneous(chart: Chart) -> impl Strategy<Value = (Expression, Parity)> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)].prop_flat_map(move |p| {
        prop::collection::vec(monomial_of(chart, p), 1..=2).prop_map(move |v| (Expression::sum(&v), p))
    })
}

pub fn chart() -> impl Strategy<Value = Chart> {
    (1usize..=3, prop_oneof![Just(ChartMode::Base), Just(ChartMode::Doubled)])
        .prop_map(|(d, m)| Chart::new(d, m))
}

pub fn sign(odd_pair: bool) -> Rational {
    Rational::from_integer(BigInt::from(if odd_pair { -1 } else { 1 }))
}

pub fn koszul(a: Parity, b: Parity) -> Rational {
    sign(a.is_odd() && b.is_odd())
}

/// Polynomial in the listed even generators, total degree at most `deg`.
pub fn poly(gens: Vec<Generator>, deg: usize) -> impl Strategy<Value = Expression> {
    let n = gens.len();
    prop::collection::vec((rational(), prop::collection::vec(0..n, 0..=deg)), 0..=3).prop_map(move |terms| {
        Expression::normalize(
            terms
                .into_iter()
                .map(|(c, idx)| RawTerm::new(c, idx.into_iter().map(|i| (gens[i], 1)).collect())),
        )
    })
}

pub fn base_coords(d: usize) -> Vec<Generator> {
    (1..=d).map(Generator::x).collect()
}

pub fn double_coords(d: usize) -> Vec<Generator> {
    (1..=d).map(Generator::x).chain((1..=d).map(Generator::xt)).collect()
}

pub fn section(gens: Vec<Generator>, d: usize, deg: usize) -> impl Strategy<Value = superbracket_core::Section> {
    (
        prop::collection::vec(poly(gens.clone(), deg), d),
        prop::collection::vec(poly(gens, deg), d),
    )
        .prop_map(|(v, f)| superbracket_core::Section { vector: v, form: f })
}

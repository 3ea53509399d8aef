//! Seeded random polynomials, monomials and sections.
//!
//! A [`Sampler`] wraps a ChaCha8 generator seeded with `seed_from_u64`, so a
//! seed together with the requested dimension and degree fixes every sample.
//! Coefficients are `n/m` with `n ∈ [-5, 5] \ {0}` and `m ∈ [1, 3]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superbracket_core::metric::RatMatrix;
use superbracket_core::{Chart, Expression, Generator, Parity, Rational, RawTerm, Section};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    pub fn rational(&mut self) -> Rational {
        let mut n = 0;
        while n == 0 {
            n = self.integer(-5, 5);
        }
        Rational::new(n.into(), self.integer(1, 3).into())
    }

    /// Up to four terms, each a product of at most `degree` of `gens`.
    pub fn poly(&mut self, gens: &[Generator], degree: usize) -> Expression {
        let terms = self.rng.random_range(1..=4);
        let raw: Vec<RawTerm> = (0..terms)
            .map(|_| {
                let deg = self.rng.random_range(0..=degree);
                let factors = (0..deg).map(|_| (gens[self.rng.random_range(0..gens.len())], 1)).collect();
                RawTerm::new(self.rational(), factors)
            })
            .collect();
        Expression::normalize(raw)
    }

    pub fn section(&mut self, gens: &[Generator], dim: usize, degree: usize) -> Section {
        Section {
            vector: (0..dim).map(|_| self.poly(gens, degree)).collect(),
            form: (0..dim).map(|_| self.poly(gens, degree)).collect(),
        }
    }

    /// A single term of the requested parity: even part of total degree at
    /// most `degree`, odd part a random subset of the chart's odd generators.
    pub fn monomial(&mut self, chart: Chart, parity: Parity, degree: usize) -> Expression {
        let gens = chart.generators();
        let even: Vec<Generator> = gens.iter().copied().filter(|g| !g.is_odd()).collect();
        let odd: Vec<Generator> = gens.iter().copied().filter(|g| g.is_odd()).collect();
        let mut mask: Vec<bool> = odd.iter().map(|_| self.coin()).collect();
        if Parity::from_count(mask.iter().filter(|b| **b).count()) != parity {
            let flip = self.rng.random_range(0..mask.len());
            mask[flip] = !mask[flip];
        }
        let deg = self.rng.random_range(0..=degree);
        let mut factors: Vec<(Generator, u32)> =
            (0..deg).map(|_| (even[self.rng.random_range(0..even.len())], 1)).collect();
        // odd factors in shuffled order so that normalization has work to do
        let mut chosen: Vec<Generator> = odd.iter().zip(&mask).filter(|(_, b)| **b).map(|(g, _)| *g).collect();
        for i in (1..chosen.len()).rev() {
            chosen.swap(i, self.rng.random_range(0..=i));
        }
        factors.extend(chosen.into_iter().map(|g| (g, 1)));
        Expression::normalize([RawTerm::new(self.rational(), factors)])
    }

    /// Arbitrary normalized expression over all generators of `chart`.
    pub fn expression(&mut self, chart: Chart, degree: usize) -> Expression {
        let terms = self.rng.random_range(0..=5);
        let mut out = Expression::zero();
        for _ in 0..terms {
            let parity = if self.coin() { Parity::Odd } else { Parity::Even };
            out += &self.monomial(chart, parity, degree);
        }
        out
    }

    /// Random `d × d` integer matrix with entries in `[-3, 3]`.
    pub fn int_matrix(&mut self, d: usize) -> RatMatrix {
        RatMatrix::from_rows(
            (0..d)
                .map(|_| (0..d).map(|_| Rational::from_integer(self.integer(-3, 3).into())).collect())
                .collect(),
        )
    }

    /// `(G, B)` with `G = M Mᵀ + 1` symmetric positive definite and `B`
    /// antisymmetric with rational entries.
    pub fn metric_pair(&mut self, d: usize) -> (RatMatrix, RatMatrix) {
        let m = self.int_matrix(d);
        let mut g = &m * &m.transpose();
        for i in 0..d {
            g[(i, i)] += Rational::from_integer(1.into());
        }
        let mut b = RatMatrix::zeros(d, d);
        for i in 0..d {
            for j in i + 1..d {
                let v = if self.coin() { self.rational() } else { Rational::from_integer(0.into()) };
                b[(j, i)] = -v.clone();
                b[(i, j)] = v;
            }
        }
        (g, b)
    }
}

pub fn base_coords(d: usize) -> Vec<Generator> {
    (1..=d).map(Generator::x).collect()
}

pub fn double_coords(d: usize) -> Vec<Generator> {
    (1..=d).map(Generator::x).chain((1..=d).map(Generator::xt)).collect()
}

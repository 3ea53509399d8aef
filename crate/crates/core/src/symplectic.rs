//! The canonical even Poisson bracket on `T*ΠA` and its doubled variant.
//!
//! Sign conventions, fixed once for every chart:
//!
//! * even pairs (coordinate `q`, momentum `P`): `{P, q} = 1`, so
//!   `{x*_i, x^j} = {p_i, x^j} = {p̃^i, x̃_j} = δ`;
//! * odd pairs (coordinate `c`, momentum `m`): `{c, m} = {m, c} = 1`.
//!
//! With right derivatives on the left argument and left derivatives on the
//! right argument the bracket is
//!
//! ```text
//! {f, g} = Σ (∂f/∂P ∂g/∂q − ∂f/∂q ∂g/∂P) + Σ (f∂⃖_c ∂⃗_m g + f∂⃖_m ∂⃗_c g)
//! ```
//!
//! which makes `{μ, f} = ∂_a f ξ^a + ∂̃^a f ξ*_a` for
//! `μ = ξ^a p_a + ξ*_a p̃^a`.

use alloc::vec::Vec;

use crate::algebra::{AlgebraError, Expression, Family, Generator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChartMode {
    /// `T*ΠA` with `(x, x*, ξ, ξ*)`.
    Base,
    /// Doubled configuration space with `(x, x̃, p, p̃, ξ, ξ*)`.
    Doubled,
    /// `T*ΠA*` with `(x, x*, θ, θ*)`; the source of the Legendre transform.
    Dual,
}

impl ChartMode {
    pub fn families(self) -> &'static [Family] {
        match self {
            ChartMode::Base => &[Family::X, Family::XStar, Family::Xi, Family::XiStar],
            ChartMode::Doubled => &[
                Family::X,
                Family::XTilde,
                Family::P,
                Family::PTilde,
                Family::Xi,
                Family::XiStar,
            ],
            ChartMode::Dual => &[Family::X, Family::XStar, Family::Theta, Family::ThetaStar],
        }
    }

    /// Conjugate pairs as (coordinate family, momentum family).
    pub fn pairs(self) -> &'static [(Family, Family)] {
        match self {
            ChartMode::Base => &[(Family::X, Family::XStar), (Family::Xi, Family::XiStar)],
            ChartMode::Doubled => &[
                (Family::X, Family::P),
                (Family::XTilde, Family::PTilde),
                (Family::Xi, Family::XiStar),
            ],
            ChartMode::Dual => &[(Family::X, Family::XStar), (Family::Theta, Family::ThetaStar)],
        }
    }
}

/// Which side of a conjugate pair a generator sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Coordinate,
    Momentum,
}

/// Base dimension plus generator layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    dim: usize,
    mode: ChartMode,
    faulty_signs: bool,
}

impl Chart {
    pub fn new(dim: usize, mode: ChartMode) -> Self {
        assert!(dim > 0, "chart dimension must be positive");
        Chart {
            dim,
            mode,
            faulty_signs: false,
        }
    }

    pub fn base(dim: usize) -> Self {
        Self::new(dim, ChartMode::Base)
    }

    pub fn doubled(dim: usize) -> Self {
        Self::new(dim, ChartMode::Doubled)
    }

    pub fn dual(dim: usize) -> Self {
        Self::new(dim, ChartMode::Dual)
    }

    /// The same chart with `{m, c}` for odd pairs flipped to `-1`. Exists only
    /// so that verification suites can be shown to catch a broken sign table.
    #[doc(hidden)]
    pub fn with_corrupted_sign_table(mut self) -> Self {
        self.faulty_signs = true;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> ChartMode {
        self.mode
    }

    /// All generators of the chart in canonical order.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for &fam in self.mode.families() {
            for i in 1..=self.dim {
                out.push(Generator::new(fam, i as u16));
            }
        }
        out
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.mode.families().contains(&g.family) && g.index >= 1 && usize::from(g.index) <= self.dim
    }

    pub fn check(&self, e: &Expression) -> Result<(), AlgebraError> {
        match e.generators().into_iter().find(|&g| !self.contains(g)) {
            Some(generator) => Err(AlgebraError::ChartMismatch {
                generator,
                dim: self.dim,
            }),
            None => Ok(()),
        }
    }

    fn conjugate(&self, g: Generator) -> Option<(Generator, Role)> {
        self.mode.pairs().iter().find_map(|&(c, m)| {
            if g.family == c {
                Some((Generator::new(m, g.index), Role::Coordinate))
            } else if g.family == m {
                Some((Generator::new(c, g.index), Role::Momentum))
            } else {
                None
            }
        })
    }

    /// The generator conjugate to `g` in this chart, if any.
    pub fn conjugate_of(&self, g: Generator) -> Option<Generator> {
        self.conjugate(g).map(|(h, _)| h)
    }

    /// Canonical bracket without chart validation. Generators outside the
    /// chart's conjugate pairs behave as Casimirs.
    pub fn bracket(&self, f: &Expression, g: &Expression) -> Expression {
        let mut out = Expression::zero();
        if f.is_zero() || g.is_zero() {
            return out;
        }
        let in_g = g.generators();
        for a in f.generators() {
            let Some((b, role)) = self.conjugate(a) else {
                continue;
            };
            if in_g.binary_search(&b).is_err() {
                continue;
            }
            let dg = g.partial(b);
            if a.is_odd() {
                let df = f.partial_right(a);
                let term = df.product(&dg);
                if self.faulty_signs && role == Role::Momentum {
                    out = &out - &term;
                } else {
                    out += &term;
                }
            } else {
                let term = f.partial(a).product(&dg);
                match role {
                    Role::Momentum => out += &term,
                    Role::Coordinate => out = &out - &term,
                }
            }
        }
        out
    }

    /// `{f, g}` after checking both arguments live on this chart.
    pub fn poisson(&self, f: &Expression, g: &Expression) -> Result<Expression, AlgebraError> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.bracket(f, g))
    }

    /// `{h, f}`: the Hamiltonian vector field of `h` applied to `f`.
    pub fn hamiltonian_action(&self, h: &Expression, f: &Expression) -> Result<Expression, AlgebraError> {
        self.poisson(h, f)
    }

    /// Derived bracket `{{h, f}, g}`.
    pub fn derived(&self, h: &Expression, f: &Expression, g: &Expression) -> Result<Expression, AlgebraError> {
        self.check(h)?;
        self.check(f)?;
        self.check(g)?;
        Ok(self.derived_unchecked(h, f, g))
    }

    pub(crate) fn derived_unchecked(&self, h: &Expression, f: &Expression, g: &Expression) -> Expression {
        self.bracket(&self.bracket(h, f), g)
    }
}

/// Legendre transform `T*ΠA* → T*ΠA` on functions: `θ_i ↦ ξ*_i`,
/// `θ*^i ↦ ξ^i`, base coordinates and their momenta fixed.
pub fn legendre(f: &Expression) -> Expression {
    f.rename(|g| match g.family {
        Family::Theta => Generator::new(Family::XiStar, g.index),
        Family::ThetaStar => Generator::new(Family::Xi, g.index),
        _ => g,
    })
}

/// Inverse of [`legendre`]: `ξ*_i ↦ θ_i`, `ξ^i ↦ θ*^i`.
pub fn legendre_inverse(f: &Expression) -> Expression {
    f.rename(|g| match g.family {
        Family::XiStar => Generator::new(Family::Theta, g.index),
        Family::Xi => Generator::new(Family::ThetaStar, g.index),
        _ => g,
    })
}

//! Lie bialgebroid data, the Hamiltonians `h_dA` and `L*h_dA*`, Courant
//! algebroid brackets on `A ⊕ A*`, Lie derivatives, the Chevalley–Eilenberg
//! differential and proto-bialgebroids with `H`/`R` flux.
//!
//! Structure functions are polynomials in the base coordinates `x`. Indices
//! are 0-based in the API.
//!
//! Two independent routes compute the Dorfman operation: the derived bracket
//! `{{μ, lift s₁}, lift s₂}` on the base chart ([`dorfman_derived`]) and the
//! component formula `([X,Y]_A + L^{A*}_η Y − i_ω d_{A*}X) + ([η,ω]_{A*} +
//! L^A_X ω − i_Y d_A η)` built directly from the structure data
//! ([`dorfman_components`]).

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::{rat, AlgebraError, Expression, Family, Generator, Rational};
use crate::report::VerificationReport;
use crate::section::Section;
use crate::symplectic::Chart;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{name}{} is not skew-symmetric against {name}{}", slots(.indices), slots(.swapped))]
    NotSkew {
        name: &'static str,
        indices: [usize; 3],
        swapped: [usize; 3],
    },
    #[error("{name}{} depends on generators other than the base coordinates", slots(.index))]
    NotBaseFunction { name: &'static str, index: Vec<usize> },
    #[error("{name} has {got} entries, expected {expected}")]
    WrongLength {
        name: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("form degree {0} is not supported (k must be at most 2)")]
    UnsupportedDegree(usize),
    #[error("k-form is not a homogeneous polynomial in ξ of degree {0} with coefficients in x")]
    NotAForm(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `[i][j]…` with 1-based indices, as entries are written in structure files.
fn slots(idx: &[usize]) -> String {
    idx.iter().map(|i| alloc::format!("[{}]", i + 1)).collect()
}

fn check_len(name: &'static str, v: &[Expression], expected: usize) -> Result<(), StructureError> {
    if v.len() != expected {
        return Err(StructureError::WrongLength {
            name,
            got: v.len(),
            expected,
        });
    }
    Ok(())
}

fn check_base(name: &'static str, v: &[Expression], dim: usize, arity: u32) -> Result<(), StructureError> {
    let chart = Chart::base(dim);
    for (n, e) in v.iter().enumerate() {
        if !e.only_families(&[Family::X]) || chart.check(e).is_err() {
            let index = (0..arity).rev().map(|k| n / dim.pow(k) % dim).collect();
            return Err(StructureError::NotBaseFunction { name, index });
        }
    }
    Ok(())
}

// v[(a*d + b)*d + c] == -v[(a*d + c)*d + b] for all a, b, c
fn check_skew_last_two(name: &'static str, v: &[Expression], d: usize) -> Result<(), StructureError> {
    for a in 0..d {
        for b in 0..d {
            for c in b..d {
                if v[(a * d + b) * d + c] != -&v[(a * d + c) * d + b] {
                    return Err(StructureError::NotSkew {
                        name,
                        indices: [a, b, c],
                        swapped: [a, c, b],
                    });
                }
            }
        }
    }
    Ok(())
}

fn x(i: usize) -> Generator {
    Generator::x(i + 1)
}

fn xi(i: usize) -> Expression {
    Generator::xi(i + 1).into()
}

fn xis(i: usize) -> Expression {
    Generator::xis(i + 1).into()
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Anchor `a(e_i) = a^j_i ∂_j` and bracket `[e_i, e_j] = f^k_ij e_k` of a
/// Lie algebroid `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebroidData {
    dim: usize,
    anchor: Vec<Expression>,
    structure: Vec<Expression>,
}

impl LieAlgebroidData {
    /// `anchor[i*d + j] = a^j_i`, `structure[(k*d + i)*d + j] = f^k_ij`.
    pub fn new(dim: usize, anchor: Vec<Expression>, structure: Vec<Expression>) -> Result<Self, StructureError> {
        check_len("a", &anchor, dim * dim)?;
        check_len("f", &structure, dim * dim * dim)?;
        check_base("a", &anchor, dim, 2)?;
        check_base("f", &structure, dim, 3)?;
        check_skew_last_two("f", &structure, dim)?;
        Ok(LieAlgebroidData {
            dim,
            anchor,
            structure,
        })
    }

    /// `TM` over `ℝ^d`: identity anchor, vanishing structure functions.
    pub fn tangent(dim: usize) -> Self {
        let mut anchor = alloc::vec![Expression::zero(); dim * dim];
        for i in 0..dim {
            anchor[i * dim + i] = Expression::one();
        }
        LieAlgebroidData {
            dim,
            anchor,
            structure: alloc::vec![Expression::zero(); dim * dim * dim],
        }
    }

    pub fn zero(dim: usize) -> Self {
        LieAlgebroidData {
            dim,
            anchor: alloc::vec![Expression::zero(); dim * dim],
            structure: alloc::vec![Expression::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `a^j_i`.
    pub fn a(&self, i: usize, j: usize) -> &Expression {
        &self.anchor[i * self.dim + j]
    }

    /// `f^k_ij`.
    pub fn f(&self, k: usize, i: usize, j: usize) -> &Expression {
        &self.structure[(k * self.dim + i) * self.dim + j]
    }

    /// `a(X) g = X^i a^j_i ∂_j g`.
    pub fn anchor_apply(&self, vector: &[Expression], g: &Expression) -> Expression {
        let mut out = Expression::zero();
        for j in 0..self.dim {
            let dg = g.partial(x(j));
            if dg.is_zero() {
                continue;
            }
            for (i, v) in vector.iter().enumerate() {
                out += &v.product(self.a(i, j)).product(&dg);
            }
        }
        out
    }

    /// `[X, Y]_A^k = a(X)Y^k − a(Y)X^k + X^i Y^j f^k_ij`.
    pub fn bracket(&self, xv: &[Expression], yv: &[Expression]) -> Vec<Expression> {
        let d = self.dim;
        (0..d)
            .map(|k| {
                let mut out = &self.anchor_apply(xv, &yv[k]) - &self.anchor_apply(yv, &xv[k]);
                for i in 0..d {
                    for j in 0..d {
                        out += &xv[i].product(&yv[j]).product(self.f(k, i, j));
                    }
                }
                out
            })
            .collect()
    }

    /// `(d_A g)_i = a^j_i ∂_j g`.
    pub fn d_function(&self, g: &Expression) -> Vec<Expression> {
        (0..self.dim).map(|i| self.anchor_apply(&unit(self.dim, i), g)).collect()
    }

    /// `(d_A η)(e_i, e_j) = a(e_i)η_j − a(e_j)η_i − f^k_ij η_k`, row-major.
    pub fn d_form(&self, form: &[Expression]) -> Vec<Expression> {
        let d = self.dim;
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut e = &self.anchor_apply(&unit(d, i), &form[j]) - &self.anchor_apply(&unit(d, j), &form[i]);
                for (k, w) in form.iter().enumerate() {
                    e = &e - &self.f(k, i, j).product(w);
                }
                out.push(e);
            }
        }
        out
    }

    /// `(L^A_X ω)_j = X^i (d_A ω)_{ij} + a(e_j)(ω(X))`.
    pub fn lie_derivative_components(&self, vector: &[Expression], form: &[Expression]) -> Vec<Expression> {
        let d = self.dim;
        let dw = self.d_form(form);
        let contraction = dot(vector, form);
        let dc = self.d_function(&contraction);
        (0..d)
            .map(|j| {
                let mut e = dc[j].clone();
                for i in 0..d {
                    e += &vector[i].product(&dw[i * d + j]);
                }
                e
            })
            .collect()
    }
}

/// Anchor `a_*(e^i) = a^{ij} ∂_j` and bracket `[e^i, e^j] = Q_k^{ij} e^k` of
/// the dual algebroid `A*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualAlgebroidData {
    dim: usize,
    coanchor: Vec<Expression>,
    structure: Vec<Expression>,
}

impl DualAlgebroidData {
    /// `coanchor[i*d + j] = a^{ij}`, `structure[(k*d + i)*d + j] = Q_k^{ij}`.
    pub fn new(dim: usize, coanchor: Vec<Expression>, structure: Vec<Expression>) -> Result<Self, StructureError> {
        check_len("astar", &coanchor, dim * dim)?;
        check_len("Q", &structure, dim * dim * dim)?;
        check_base("astar", &coanchor, dim, 2)?;
        check_base("Q", &structure, dim, 3)?;
        check_skew_last_two("Q", &structure, dim)?;
        Ok(DualAlgebroidData {
            dim,
            coanchor,
            structure,
        })
    }

    pub fn zero(dim: usize) -> Self {
        DualAlgebroidData {
            dim,
            coanchor: alloc::vec![Expression::zero(); dim * dim],
            structure: alloc::vec![Expression::zero(); dim * dim * dim],
        }
    }

    /// Cotangent algebroid of a bivector `π` (`pi[i*d + j] = π^{ij}`):
    /// `a^{ij} = π^{ij}`, `Q_k^{ij} = ∂_k π^{ij}`. This is a Lie algebroid
    /// exactly when `π` is Poisson.
    pub fn from_bivector(dim: usize, pi: Vec<Expression>) -> Result<Self, StructureError> {
        check_len("astar", &pi, dim * dim)?;
        let mut q = Vec::with_capacity(dim * dim * dim);
        for k in 0..dim {
            for entry in &pi {
                q.push(entry.partial(x(k)));
            }
        }
        Self::new(dim, pi, q)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `a^{ij}`.
    pub fn a(&self, i: usize, j: usize) -> &Expression {
        &self.coanchor[i * self.dim + j]
    }

    /// `Q_k^{ij}`.
    pub fn q(&self, k: usize, i: usize, j: usize) -> &Expression {
        &self.structure[(k * self.dim + i) * self.dim + j]
    }

    /// `a_*(η) g = η_i a^{ij} ∂_j g`.
    pub fn anchor_apply(&self, form: &[Expression], g: &Expression) -> Expression {
        let mut out = Expression::zero();
        for j in 0..self.dim {
            let dg = g.partial(x(j));
            if dg.is_zero() {
                continue;
            }
            for (i, w) in form.iter().enumerate() {
                out += &w.product(self.a(i, j)).product(&dg);
            }
        }
        out
    }

    /// `[η, ω]_{A*k} = a_*(η)ω_k − a_*(ω)η_k + η_i ω_j Q_k^{ij}`.
    pub fn bracket(&self, eta: &[Expression], omega: &[Expression]) -> Vec<Expression> {
        let d = self.dim;
        (0..d)
            .map(|k| {
                let mut out = &self.anchor_apply(eta, &omega[k]) - &self.anchor_apply(omega, &eta[k]);
                for i in 0..d {
                    for j in 0..d {
                        out += &eta[i].product(&omega[j]).product(self.q(k, i, j));
                    }
                }
                out
            })
            .collect()
    }

    /// `(d_{A*} g)^i = a^{ij} ∂_j g`.
    pub fn d_function(&self, g: &Expression) -> Vec<Expression> {
        (0..self.dim).map(|i| self.anchor_apply(&unit(self.dim, i), g)).collect()
    }

    /// `(d_{A*} X)(e^i, e^j) = a_*(e^i)X^j − a_*(e^j)X^i − Q_k^{ij} X^k`.
    pub fn d_vector(&self, vector: &[Expression]) -> Vec<Expression> {
        let d = self.dim;
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut e =
                    &self.anchor_apply(&unit(d, i), &vector[j]) - &self.anchor_apply(&unit(d, j), &vector[i]);
                for (k, v) in vector.iter().enumerate() {
                    e = &e - &self.q(k, i, j).product(v);
                }
                out.push(e);
            }
        }
        out
    }

    /// `(L^{A*}_η Y)^j = η_i (d_{A*} Y)^{ij} + a_*(e^j)(η(Y))`.
    pub fn lie_derivative_components(&self, form: &[Expression], vector: &[Expression]) -> Vec<Expression> {
        let d = self.dim;
        let dy = self.d_vector(vector);
        let contraction = dot(vector, form);
        let dc = self.d_function(&contraction);
        (0..d)
            .map(|j| {
                let mut e = dc[j].clone();
                for i in 0..d {
                    e += &form[i].product(&dy[i * d + j]);
                }
                e
            })
            .collect()
    }
}

/// A pair `(A, A*)` of dual algebroids. Whether it is a Lie bialgebroid is
/// decided by [`check_bialgebroid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebroidData {
    pub primal: LieAlgebroidData,
    pub dual: DualAlgebroidData,
}

impl BialgebroidData {
    pub fn new(primal: LieAlgebroidData, dual: DualAlgebroidData) -> Result<Self, StructureError> {
        if primal.dim != dual.dim {
            return Err(StructureError::DimensionMismatch {
                left: primal.dim,
                right: dual.dim,
            });
        }
        Ok(BialgebroidData { primal, dual })
    }

    pub fn dim(&self) -> usize {
        self.primal.dim
    }

    /// `(TM, T*M)` with zero dual structure.
    pub fn tangent(dim: usize) -> Self {
        BialgebroidData {
            primal: LieAlgebroidData::tangent(dim),
            dual: DualAlgebroidData::zero(dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        BialgebroidData {
            primal: LieAlgebroidData::zero(dim),
            dual: DualAlgebroidData::zero(dim),
        }
    }

    pub fn chart(&self) -> Chart {
        Chart::base(self.dim())
    }

    fn check_section(&self, s: &Section) -> Result<(), StructureError> {
        if s.dim() != self.dim() {
            return Err(StructureError::DimensionMismatch {
                left: self.dim(),
                right: s.dim(),
            });
        }
        Ok(())
    }
}

/// Totally antisymmetric three-form `H_ijk` and three-vector `R^ijk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FluxData {
    dim: usize,
    h: Vec<Expression>,
    r: Vec<Expression>,
}

impl FluxData {
    /// `h[(i*d + j)*d + k] = H_ijk`, likewise for `r`.
    pub fn new(dim: usize, h: Vec<Expression>, r: Vec<Expression>) -> Result<Self, StructureError> {
        check_len("H", &h, dim * dim * dim)?;
        check_len("R", &r, dim * dim * dim)?;
        check_base("H", &h, dim, 3)?;
        check_base("R", &r, dim, 3)?;
        for (name, v) in [("H", &h), ("R", &r)] {
            check_skew_last_two(name, v, dim)?;
            // skew in the first two slots as well
            for i in 0..dim {
                for j in i..dim {
                    for k in 0..dim {
                        if v[(i * dim + j) * dim + k] != -&v[(j * dim + i) * dim + k] {
                            return Err(StructureError::NotSkew {
                                name,
                                indices: [i, j, k],
                                swapped: [j, i, k],
                            });
                        }
                    }
                }
            }
        }
        Ok(FluxData { dim, h, r })
    }

    pub fn zero(dim: usize) -> Self {
        FluxData {
            dim,
            h: alloc::vec![Expression::zero(); dim * dim * dim],
            r: alloc::vec![Expression::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self, i: usize, j: usize, k: usize) -> &Expression {
        &self.h[(i * self.dim + j) * self.dim + k]
    }

    pub fn r(&self, i: usize, j: usize, k: usize) -> &Expression {
        &self.r[(i * self.dim + j) * self.dim + k]
    }
}

fn unit(d: usize, i: usize) -> Vec<Expression> {
    let mut v = alloc::vec![Expression::zero(); d];
    v[i] = Expression::one();
    v
}

fn dot(a: &[Expression], b: &[Expression]) -> Expression {
    let mut out = Expression::zero();
    for (u, v) in a.iter().zip(b) {
        out += &u.product(v);
    }
    out
}

fn add_vec(a: &[Expression], b: &[Expression]) -> Vec<Expression> {
    a.iter().zip(b).map(|(u, v)| u + v).collect()
}

fn sub_vec(a: &[Expression], b: &[Expression]) -> Vec<Expression> {
    a.iter().zip(b).map(|(u, v)| u - v).collect()
}

/// `h_dA = a^j_i x*_j ξ^i − ½ f^k_ij ξ^i ξ^j ξ*_k`.
pub fn build_h_da(l: &LieAlgebroidData) -> Expression {
    let d = l.dim;
    let mut out = Expression::zero();
    for i in 0..d {
        for j in 0..d {
            let a = l.a(i, j);
            if !a.is_zero() {
                out += &a.product(&Generator::xs(j + 1).into()).product(&xi(i));
            }
        }
    }
    let minus_half = -half();
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let f = l.f(k, i, j);
                if !f.is_zero() {
                    out += &f.product(&xi(i)).product(&xi(j)).product(&xis(k)).scale(&minus_half);
                }
            }
        }
    }
    out
}

/// `L* h_dA* = a^{ij} x*_j ξ*_i − ½ Q_k^{ij} ξ^k ξ*_i ξ*_j`, the Legendre
/// image of the homological vector field `a^{ij} θ_i ∂_j − ½ Q_k^{ij} θ_i θ_j
/// ∂/∂θ_k` of `A*`.
pub fn build_h_dastar(dual: &DualAlgebroidData) -> Expression {
    let d = dual.dim;
    let mut out = Expression::zero();
    for i in 0..d {
        for j in 0..d {
            let a = dual.a(i, j);
            if !a.is_zero() {
                out += &a.product(&Generator::xs(j + 1).into()).product(&xis(i));
            }
        }
    }
    let minus_half = -half();
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let q = dual.q(k, i, j);
                if !q.is_zero() {
                    out += &q.product(&xi(k)).product(&xis(i)).product(&xis(j)).scale(&minus_half);
                }
            }
        }
    }
    out
}

/// `μ = h_dA + L* h_dA*`.
pub fn build_mu(b: &BialgebroidData) -> Expression {
    &build_h_da(&b.primal) + &build_h_dastar(&b.dual)
}

/// `(A, A*)` is a Lie bialgebroid iff `{μ, μ} = 0`; the residual is `{μ, μ}`.
pub fn check_bialgebroid(b: &BialgebroidData) -> VerificationReport {
    let mu = build_mu(b);
    VerificationReport::new("bialgebroid.mu_mu", b.chart().bracket(&mu, &mu))
}

/// `X^i ξ*_i`.
pub fn lift_vector(vector: &[Expression]) -> Expression {
    Section::vector(vector.to_vec()).lift()
}

/// `ω_i ξ^i`.
pub fn lift_form(form: &[Expression]) -> Expression {
    Section::form(form.to_vec()).lift()
}

/// `s₁ ∘ s₂` as the derived bracket `{{μ, lift s₁}, lift s₂}`.
pub fn dorfman_derived(b: &BialgebroidData, s1: &Section, s2: &Section) -> Result<Expression, StructureError> {
    b.check_section(s1)?;
    b.check_section(s2)?;
    Ok(dorfman_derived_with(b, &build_mu(b), s1, s2))
}

fn dorfman_derived_with(b: &BialgebroidData, mu: &Expression, s1: &Section, s2: &Section) -> Expression {
    b.chart().derived_unchecked(mu, &s1.lift(), &s2.lift())
}

/// `s₁ ∘ s₂` evaluated from the component formula.
pub fn dorfman_components(b: &BialgebroidData, s1: &Section, s2: &Section) -> Result<Section, StructureError> {
    b.check_section(s1)?;
    b.check_section(s2)?;
    let (p, q) = (&b.primal, &b.dual);
    let d = b.dim();
    let (xv, eta) = (&s1.vector, &s1.form);
    let (yv, omega) = (&s2.vector, &s2.form);

    // [X,Y]_A + L^{A*}_η Y − i_ω d_{A*} X
    let dx = q.d_vector(xv);
    let i_omega_dx: Vec<Expression> = (0..d)
        .map(|j| {
            let mut e = Expression::zero();
            for i in 0..d {
                e += &omega[i].product(&dx[i * d + j]);
            }
            e
        })
        .collect();
    let vector = sub_vec(&add_vec(&p.bracket(xv, yv), &q.lie_derivative_components(eta, yv)), &i_omega_dx);

    // [η,ω]_{A*} + L^A_X ω − i_Y d_A η
    let deta = p.d_form(eta);
    let i_y_deta: Vec<Expression> = (0..d)
        .map(|j| {
            let mut e = Expression::zero();
            for i in 0..d {
                e += &yv[i].product(&deta[i * d + j]);
            }
            e
        })
        .collect();
    let form = sub_vec(&add_vec(&q.bracket(eta, omega), &p.lie_derivative_components(xv, omega)), &i_y_deta);

    Ok(Section { vector, form })
}

/// Courant bracket `½(s₁∘s₂ − s₂∘s₁)`.
pub fn courant_bracket(b: &BialgebroidData, s1: &Section, s2: &Section) -> Result<Section, StructureError> {
    let a = dorfman_components(b, s1, s2)?;
    let c = dorfman_components(b, s2, s1)?;
    Ok((&a - &c).scale(&half()))
}

/// `⟨X+η, Y+ω⟩ = η(Y) + ω(X)`.
pub fn pairing(s1: &Section, s2: &Section) -> Expression {
    s1.pairing(s2)
}

/// `ρ(X+η) = a(X) + a_*(η)` as the coefficient family of a vector field.
pub fn anchor_rho(b: &BialgebroidData, s: &Section) -> Vec<Expression> {
    let d = b.dim();
    (0..d)
        .map(|j| {
            let mut e = Expression::zero();
            for i in 0..d {
                e += &s.vector[i].product(b.primal.a(i, j));
                e += &s.form[i].product(b.dual.a(i, j));
            }
            e
        })
        .collect()
}

/// Applies a vector field `V^j ∂_j` to a function.
pub fn apply_vector_field(v: &[Expression], f: &Expression) -> Expression {
    let mut out = Expression::zero();
    for (j, c) in v.iter().enumerate() {
        out += &c.product(&f.partial(x(j)));
    }
    out
}

/// Coordinate Lie bracket of vector fields on the base.
pub fn vector_field_bracket(u: &[Expression], v: &[Expression]) -> Vec<Expression> {
    (0..u.len())
        .map(|k| &apply_vector_field(u, &v[k]) - &apply_vector_field(v, &u[k]))
        .collect()
}

/// `𝒟f`, defined by `⟨𝒟f, s⟩ = ρ(s) f`: vector part `a^{ij} ∂_j f`, form
/// part `a^j_i ∂_j f`.
pub fn script_d(b: &BialgebroidData, f: &Expression) -> Section {
    Section {
        vector: b.dual.d_function(f),
        form: b.primal.d_function(f),
    }
}

/// One sample for [`check_courant_axioms`]: three sections and a function.
#[derive(Clone, Debug)]
pub struct CourantSample {
    pub s1: Section,
    pub s2: Section,
    pub s3: Section,
    pub f: Expression,
}

/// Names of the five axioms, in report order.
pub const COURANT_AXIOMS: [&str; 5] = [
    "courant.axiom1.leibniz_jacobi",
    "courant.axiom2.anchor_homomorphism",
    "courant.axiom3.module_leibniz",
    "courant.axiom4.square",
    "courant.axiom5.metric_invariance",
];

/// Evaluates the five Courant algebroid axioms for `∘ = ` the derived
/// Dorfman bracket on every sample. Each report carries the first nonzero
/// residual found for that axiom, or zero.
pub fn check_courant_axioms(b: &BialgebroidData, samples: &[CourantSample]) -> Vec<VerificationReport> {
    let mu = build_mu(b);
    let d = b.dim();
    let circ = |l: &Section, r: &Section| -> Section {
        Section::unlift(&dorfman_derived_with(b, &mu, l, r), d).expect("derived Dorfman bracket is a section")
    };
    let mut residuals: [Expression; 5] = Default::default();
    for s in samples {
        let (s1, s2, s3) = (&s.s1, &s.s2, &s.s3);
        let s12 = circ(s1, s2);
        let s13 = circ(s1, s3);
        let s23 = circ(s2, s3);
        let mut found = [Expression::zero(), Expression::zero(), Expression::zero(), Expression::zero(), Expression::zero()];

        // s₁∘(s₂∘s₃) − (s₁∘s₂)∘s₃ − s₂∘(s₁∘s₃)
        let lhs = circ(s1, &s23);
        let rhs = &circ(&s12, s3) + &circ(s2, &s13);
        found[0] = (&lhs - &rhs).lift();

        // ρ(s₁∘s₂) − [ρ(s₁), ρ(s₂)]
        let rho = anchor_rho(b, &s12);
        let br = vector_field_bracket(&anchor_rho(b, s1), &anchor_rho(b, s2));
        found[1] = lift_vector(&sub_vec(&rho, &br));

        // s₁∘(f s₂) − f (s₁∘s₂) − (ρ(s₁) f) s₂
        let lhs = circ(s1, &s2.times(&s.f));
        let rho_f = apply_vector_field(&anchor_rho(b, s1), &s.f);
        let rhs = &s12.times(&s.f) + &s2.times(&rho_f);
        found[2] = (&lhs - &rhs).lift();

        // s∘s − ½𝒟⟨s,s⟩
        let lhs = circ(s1, s1);
        let rhs = script_d(b, &s1.pairing(s1)).scale(&half());
        found[3] = (&lhs - &rhs).lift();

        // ρ(s₁)⟨s₂,s₃⟩ − ⟨s₁∘s₂, s₃⟩ − ⟨s₂, s₁∘s₃⟩
        let lhs = apply_vector_field(&anchor_rho(b, s1), &s2.pairing(s3));
        let rhs = &s12.pairing(s3) + &s2.pairing(&s13);
        found[4] = &lhs - &rhs;

        for (slot, r) in residuals.iter_mut().zip(found) {
            if slot.is_zero() {
                *slot = r;
            }
        }
    }
    COURANT_AXIOMS
        .iter()
        .zip(residuals)
        .map(|(name, r)| VerificationReport::new(*name, r))
        .collect()
}

/// `L^A_X ω` through the derived bracket `{{h_dA, h_{i_X}}, p*ω}`.
pub fn lie_derivative(
    l: &LieAlgebroidData,
    vector: &[Expression],
    form: &[Expression],
) -> Result<Vec<Expression>, StructureError> {
    let d = l.dim;
    if vector.len() != d || form.len() != d {
        return Err(StructureError::DimensionMismatch {
            left: d,
            right: vector.len().max(form.len()),
        });
    }
    let chart = Chart::base(d);
    let e = chart.derived_unchecked(&build_h_da(l), &lift_vector(vector), &lift_form(form));
    Ok(Section::unlift(&e, d)?.form)
}

/// Interior product `i_X ω = X^i ∂ω/∂ξ^i` (left derivative).
pub fn contract(vector: &[Expression], form: &Expression) -> Expression {
    let mut out = Expression::zero();
    for (i, v) in vector.iter().enumerate() {
        if !v.is_zero() {
            out += &v.product(&form.partial(Generator::xi(i + 1)));
        }
    }
    out
}

/// `ω(X₀, …, X_k)` for a `k`-form written as a polynomial in `ξ`; `X₀` is
/// inserted first.
pub fn evaluate_form(form: &Expression, sections: &[Vec<Expression>]) -> Expression {
    sections.iter().fold(form.clone(), |acc, v| contract(v, &acc))
}

fn check_k_form(l: &LieAlgebroidData, form: &Expression, k: usize) -> Result<(), StructureError> {
    let ok = form.terms().all(|(m, _)| {
        m.odd().len() == k && m.odd().iter().all(|g| g.family == Family::Xi && usize::from(g.index) <= l.dim)
    }) && form.only_families(&[Family::X, Family::Xi])
        && Chart::base(l.dim).check(form).is_ok();
    if ok {
        Ok(())
    } else {
        Err(StructureError::NotAForm(k))
    }
}

/// `(d_A ω)(X₀, …, X_k)` from the alternating-sum formula
/// `Σ (−1)^i a(X_i) ω(…X̂_i…) + Σ_{i<j} (−1)^{i+j} ω([X_i, X_j], …X̂_i…X̂_j…)`.
pub fn ce_oracle(
    l: &LieAlgebroidData,
    form: &Expression,
    k: usize,
    sections: &[Vec<Expression>],
) -> Result<Expression, StructureError> {
    if k > 2 {
        return Err(StructureError::UnsupportedDegree(k));
    }
    check_k_form(l, form, k)?;
    if sections.len() != k + 1 {
        return Err(StructureError::DimensionMismatch {
            left: k + 1,
            right: sections.len(),
        });
    }
    let mut out = Expression::zero();
    for i in 0..=k {
        let rest: Vec<Vec<Expression>> = without(sections, &[i]);
        let term = l.anchor_apply(&sections[i], &evaluate_form(form, &rest));
        out = if i % 2 == 0 { &out + &term } else { &out - &term };
    }
    for i in 0..=k {
        for j in i + 1..=k {
            let mut args = alloc::vec![l.bracket(&sections[i], &sections[j])];
            args.extend(without(sections, &[i, j]));
            let term = evaluate_form(form, &args);
            out = if (i + j) % 2 == 0 { &out + &term } else { &out - &term };
        }
    }
    Ok(out)
}

fn without(v: &[Vec<Expression>], skip: &[usize]) -> Vec<Vec<Expression>> {
    v.iter()
        .enumerate()
        .filter(|(n, _)| !skip.contains(n))
        .map(|(_, e)| e.clone())
        .collect()
}

/// `(d_A ω)(X₀, …, X_k)` through the Hamiltonian route `{h_dA, ω}` followed
/// by contraction.
pub fn ce_hamiltonian(
    l: &LieAlgebroidData,
    form: &Expression,
    k: usize,
    sections: &[Vec<Expression>],
) -> Result<Expression, StructureError> {
    check_k_form(l, form, k)?;
    let dw = Chart::base(l.dim).bracket(&build_h_da(l), form);
    Ok(evaluate_form(&dw, sections))
}

/// `ν = h_dA + L*h_dA* + (1/3!) H_ijk ξ^i ξ^j ξ^k + (1/3!) R^{ijk} ξ*_i ξ*_j ξ*_k`.
pub fn build_nu(b: &BialgebroidData, flux: &FluxData) -> Result<Expression, StructureError> {
    if flux.dim != b.dim() {
        return Err(StructureError::DimensionMismatch {
            left: b.dim(),
            right: flux.dim,
        });
    }
    let d = b.dim();
    let sixth = Rational::new(1.into(), 6.into());
    let mut out = build_mu(b);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let h = flux.h(i, j, k);
                if !h.is_zero() {
                    out += &h.product(&xi(i)).product(&xi(j)).product(&xi(k)).scale(&sixth);
                }
                let r = flux.r(i, j, k);
                if !r.is_zero() {
                    out += &r.product(&xis(i)).product(&xis(j)).product(&xis(k)).scale(&sixth);
                }
            }
        }
    }
    Ok(out)
}

/// Proto-bialgebroid condition `{ν, ν} = 0`.
pub fn check_proto(b: &BialgebroidData, flux: &FluxData) -> Result<VerificationReport, StructureError> {
    let nu = build_nu(b, flux)?;
    Ok(VerificationReport::new("proto.nu_nu", b.chart().bracket(&nu, &nu)))
}

/// The `so(3)` Lie–Poisson bialgebroid on `ℝ³`: `A = Tℝ³` and `A* = T*ℝ³`
/// with `π^{ij} = ε^{ijk} x^k`.
pub fn so3_lie_poisson() -> BialgebroidData {
    let mut pi = alloc::vec![Expression::zero(); 9];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let e = levi_civita(i, j, k);
                if e != 0 {
                    pi[i * 3 + j] += &Expression::from(x(k)).scale(&rat(e));
                }
            }
        }
    }
    BialgebroidData {
        primal: LieAlgebroidData::tangent(3),
        dual: DualAlgebroidData::from_bivector(3, pi).expect("so(3) bivector is skew"),
    }
}

pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

//! Double sections on the doubled chart `(x, x̃, p, p̃, ξ, ξ*)`, the C-bracket
//! as a derived bracket of `μ = ξ^a p_a + ξ*_a p̃^a`, the strong constraint,
//! the projection to half the coordinates and the generalized Lie
//! derivative.
//!
//! `∂_a` differentiates along `x^a` and `∂̃^a` along `x̃_a`. In `O(d,d)`
//! notation an index `M < d` is a vector slot and `M ≥ d` a form slot:
//! `Σ^M = (X^i, η_i)`, `Σ_M = (η_i, X^i)`, `∂_M = (∂_i, ∂̃^i)` and
//! `∂^M = (∂̃^i, ∂_i)`.

use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::{Expression, Family, Generator, Rational};
use crate::section::Section;
use crate::symplectic::Chart;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DftError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("double field must be a polynomial in x and x̃ only")]
    NotADoubleField,
}

const DOUBLE_FIELD: &[Family] = &[Family::X, Family::XTilde];

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

fn d_x(i: usize, f: &Expression) -> Expression {
    f.partial(Generator::x(i + 1))
}

fn d_xt(i: usize, f: &Expression) -> Expression {
    f.partial(Generator::xt(i + 1))
}

fn check_field(f: &Expression, dim: usize) -> Result<(), DftError> {
    if f.only_families(DOUBLE_FIELD) && Chart::doubled(dim.max(1)).check(f).is_ok() {
        Ok(())
    } else {
        Err(DftError::NotADoubleField)
    }
}

fn check_scalar(f: &Expression) -> Result<(), DftError> {
    if f.only_families(DOUBLE_FIELD) {
        Ok(())
    } else {
        Err(DftError::NotADoubleField)
    }
}

fn check_section(s: &Section) -> Result<(), DftError> {
    for e in s.vector.iter().chain(&s.form) {
        check_field(e, s.dim())?;
    }
    Ok(())
}

fn check_pair(s1: &Section, s2: &Section) -> Result<usize, DftError> {
    if s1.dim() != s2.dim() {
        return Err(DftError::DimensionMismatch {
            left: s1.dim(),
            right: s2.dim(),
        });
    }
    check_section(s1)?;
    check_section(s2)?;
    Ok(s1.dim())
}

/// `X^i ξ*_i + η_i ξ^i` for a double section.
pub fn lift_double(s: &Section) -> Result<Expression, DftError> {
    check_section(s)?;
    Ok(s.lift())
}

/// `μ = ξ^a p_a + ξ*_a p̃^a`.
pub fn mu_dft(dim: usize) -> Expression {
    let mut out = Expression::zero();
    for a in 1..=dim {
        out += &(Expression::from(Generator::xi(a)) * Generator::p(a).into());
        out += &(Expression::from(Generator::xis(a)) * Generator::pt(a).into());
    }
    out
}

/// `Σ¹ ∘ Σ² = {{μ, Σ¹}, Σ²}`.
pub fn circle(s1: &Section, s2: &Section) -> Result<Expression, DftError> {
    let d = check_pair(s1, s2)?;
    Ok(circle_unchecked(d, s1, s2))
}

fn circle_unchecked(d: usize, s1: &Section, s2: &Section) -> Expression {
    Chart::doubled(d.max(1)).derived_unchecked(&mu_dft(d), &s1.lift(), &s2.lift())
}

/// `½(Σ¹∘Σ² − Σ²∘Σ¹)`.
pub fn c_bracket(s1: &Section, s2: &Section) -> Result<Expression, DftError> {
    let d = check_pair(s1, s2)?;
    Ok((&circle_unchecked(d, s1, s2) - &circle_unchecked(d, s2, s1)).scale(&half()))
}

/// Component form of the C-bracket, sorted by vector and form parts of the
/// two arguments. The `[η, Y]` form row uses `∂_i` in its half-weighted
/// term, which is what antisymmetry against the `[X, ω]` row requires.
pub fn c_bracket_components(s1: &Section, s2: &Section) -> Result<Section, DftError> {
    let d = check_pair(s1, s2)?;
    let (xv, eta) = (&s1.vector, &s1.form);
    let (yv, omega) = (&s2.vector, &s2.form);
    let h = half();

    // Σ_k a_k ∂b/∂(·)
    let transport = |a: &[Expression], b: &Expression, tilde: bool| -> Expression {
        let mut out = Expression::zero();
        for (k, c) in a.iter().enumerate() {
            let db = if tilde { d_xt(k, b) } else { d_x(k, b) };
            out += &c.product(&db);
        }
        out
    };
    // Σ_k a_k ∂_i b_k − b_k ∂_i a_k
    let skew = |a: &[Expression], b: &[Expression], i: usize, tilde: bool| -> Expression {
        let mut out = Expression::zero();
        for k in 0..d {
            let (da, db) = if tilde {
                (d_xt(i, &a[k]), d_xt(i, &b[k]))
            } else {
                (d_x(i, &a[k]), d_x(i, &b[k]))
            };
            out += &a[k].product(&db);
            out = &out - &b[k].product(&da);
        }
        out
    };

    let mut vector = Vec::with_capacity(d);
    let mut form = Vec::with_capacity(d);
    for i in 0..d {
        // ([X,Y]_C)^i = X^k ∂_k Y^i − Y^k ∂_k X^i
        let xy = &transport(xv, &yv[i], false) - &transport(yv, &xv[i], false);
        // ([X,ω]_C)^i = −ω_k ∂̃^k X^i − ½(X^k ∂̃^i ω_k − ω_k ∂̃^i X^k)
        let xw = &(-transport(omega, &xv[i], true)) - &skew(xv, omega, i, true).scale(&h);
        // ([η,Y]_C)^i = η_k ∂̃^k Y^i + ½(Y^k ∂̃^i η_k − η_k ∂̃^i Y^k)
        let ey = &transport(eta, &yv[i], true) + &skew(yv, eta, i, true).scale(&h);
        vector.push(&(&xy + &xw) + &ey);

        // ([X,ω]_C)_i = X^k ∂_k ω_i − ½(X^k ∂_i ω_k − ω_k ∂_i X^k)
        let xw = &transport(xv, &omega[i], false) - &skew(xv, omega, i, false).scale(&h);
        // ([η,Y]_C)_i = −Y^k ∂_k η_i + ½(Y^k ∂_i η_k − η_k ∂_i Y^k)
        let ey = &(-transport(yv, &eta[i], false)) + &skew(yv, eta, i, false).scale(&h);
        // ([η,ω]_C)_i = η_k ∂̃^k ω_i − ω_k ∂̃^k η_i
        let ew = &transport(eta, &omega[i], true) - &transport(omega, &eta[i], true);
        form.push(&(&xw + &ey) + &ew);
    }
    Ok(Section { vector, form })
}

/// `Σ^M` as a flat `2d` array.
pub fn upper(s: &Section) -> Vec<Expression> {
    s.vector.iter().chain(&s.form).cloned().collect()
}

/// `Σ_M = η_{MN} Σ^N`.
pub fn lower(s: &Section) -> Vec<Expression> {
    s.form.iter().chain(&s.vector).cloned().collect()
}

fn from_upper(v: Vec<Expression>, d: usize) -> Section {
    let mut vector = v;
    let form = vector.split_off(d);
    Section { vector, form }
}

fn from_lower(v: Vec<Expression>, d: usize) -> Section {
    let mut form = v;
    let vector = form.split_off(d);
    Section { vector, form }
}

/// `∂_M f`.
pub fn partial_lower(d: usize, m: usize, f: &Expression) -> Expression {
    if m < d {
        d_x(m, f)
    } else {
        d_xt(m - d, f)
    }
}

/// `∂^M f`.
pub fn partial_upper(d: usize, m: usize, f: &Expression) -> Expression {
    if m < d {
        d_xt(m, f)
    } else {
        d_x(m - d, f)
    }
}

/// `Σ^K ∂_K f`.
fn flow(d: usize, up: &[Expression], f: &Expression) -> Expression {
    let mut out = Expression::zero();
    for (k, c) in up.iter().enumerate() {
        if !c.is_zero() {
            out += &c.product(&partial_lower(d, k, f));
        }
    }
    out
}

/// `Σ₁^K ∂_K Σ₂^M − Σ₂^K ∂_K Σ₁^M − ½(Σ₁^K ∂^M Σ₂_K − Σ₂^K ∂^M Σ₁_K)`.
pub fn c_bracket_index_form(s1: &Section, s2: &Section) -> Result<Section, DftError> {
    let d = check_pair(s1, s2)?;
    let (u1, u2) = (upper(s1), upper(s2));
    let (l1, l2) = (lower(s1), lower(s2));
    let h = half();
    let out = (0..2 * d)
        .map(|m| {
            let mut e = &flow(d, &u1, &u2[m]) - &flow(d, &u2, &u1[m]);
            let mut skew = Expression::zero();
            for k in 0..2 * d {
                skew += &u1[k].product(&partial_upper(d, m, &l2[k]));
                skew = &skew - &u2[k].product(&partial_upper(d, m, &l1[k]));
            }
            e = &e - &skew.scale(&h);
            e
        })
        .collect();
    Ok(from_upper(out, d))
}

/// `D²φ = p_a ∂̃^a φ + p̃^a ∂_a φ`.
pub fn d_squared(dim: usize, phi: &Expression) -> Result<Expression, DftError> {
    check_field(phi, dim)?;
    let mut out = Expression::zero();
    for a in 0..dim {
        out += &d_xt(a, phi).product(&Generator::p(a + 1).into());
        out += &d_x(a, phi).product(&Generator::pt(a + 1).into());
    }
    Ok(out)
}

/// `{μ, {μ, φ}}` on the doubled chart.
pub fn d_squared_derived(dim: usize, phi: &Expression) -> Result<Expression, DftError> {
    check_field(phi, dim)?;
    let chart = Chart::doubled(dim);
    let mu = mu_dft(dim);
    Ok(chart.bracket(&mu, &chart.bracket(&mu, phi)))
}

/// `∂_a φ ∂̃^a ψ + ∂̃^a φ ∂_a ψ`.
pub fn strong_constraint_pair(dim: usize, phi: &Expression, psi: &Expression) -> Result<Expression, DftError> {
    check_field(phi, dim)?;
    check_field(psi, dim)?;
    let mut out = Expression::zero();
    for a in 0..dim {
        out += &d_x(a, phi).product(&d_xt(a, psi));
        out += &d_xt(a, phi).product(&d_x(a, psi));
    }
    Ok(out)
}

/// Sets every `p̃^a` to zero.
pub fn project_half(e: &Expression) -> Expression {
    e.filter_terms(|m| m.even().iter().all(|(g, _)| g.family != Family::PTilde))
}

/// `ℒ_Σ φ = Σ^M ∂_M φ = X^a ∂_a φ + η_a ∂̃^a φ`.
pub fn gen_lie_scalar(s: &Section, phi: &Expression) -> Result<Expression, DftError> {
    check_section(s)?;
    check_scalar(phi)?;
    Ok(flow(s.dim(), &upper(s), phi))
}

/// `(ℒ_Σ W)^M = Σ^K ∂_K W^M − (∂_K Σ^M − ∂^M Σ_K) W^K` for a double vector
/// `W` given by its upper components `(W^i, W_i)`.
pub fn gen_lie_vector(s: &Section, w: &Section) -> Result<Section, DftError> {
    let d = check_pair(s, w)?;
    let (su, sl, wu) = (upper(s), lower(s), upper(w));
    let out = (0..2 * d)
        .map(|m| {
            let mut e = flow(d, &su, &wu[m]);
            for k in 0..2 * d {
                let c = &partial_lower(d, k, &su[m]) - &partial_upper(d, m, &sl[k]);
                e = &e - &c.product(&wu[k]);
            }
            e
        })
        .collect();
    Ok(from_upper(out, d))
}

/// `(ℒ_Σ V)_M = Σ^K ∂_K V_M + (∂_M Σ^K − ∂^K Σ_M) V_K` for a double vector
/// `V` given by its upper components; the result is returned with upper
/// components as well, so it is directly comparable to [`gen_lie_vector`].
pub fn gen_lie_covector(s: &Section, v: &Section) -> Result<Section, DftError> {
    let d = check_pair(s, v)?;
    let (su, sl, vl) = (upper(s), lower(s), lower(v));
    let out = (0..2 * d)
        .map(|m| {
            let mut e = flow(d, &su, &vl[m]);
            for k in 0..2 * d {
                let c = &partial_lower(d, m, &su[k]) - &partial_upper(d, k, &sl[m]);
                e += &c.product(&vl[k]);
            }
            e
        })
        .collect();
    Ok(from_lower(out, d))
}

/// `ℒ_{Σ₁}(ℒ_{Σ₂} φ) − ℒ_{Σ₂}(ℒ_{Σ₁} φ)` as a composition of operators.
pub fn gen_lie_commutator_scalar(s1: &Section, s2: &Section, phi: &Expression) -> Result<Expression, DftError> {
    check_pair(s1, s2)?;
    let a = gen_lie_scalar(s1, &gen_lie_scalar(s2, phi)?)?;
    let b = gen_lie_scalar(s2, &gen_lie_scalar(s1, phi)?)?;
    Ok(&a - &b)
}

/// `[δ₁, δ₂] φ` for gauge variations `δ_i φ = ℒ_{Σ_i} φ` acting on fields,
/// where `δ₁(δ₂ φ)` varies the field inside `δ₂ φ` and so equals
/// `ℒ_{Σ₂} ℒ_{Σ₁} φ`. This is the negative of the operator commutator.
pub fn variation_commutator_scalar(s1: &Section, s2: &Section, phi: &Expression) -> Result<Expression, DftError> {
    Ok(-gen_lie_commutator_scalar(s1, s2, phi)?)
}

/// `ℒ_Σ φ` evaluated with the C-bracket of two sections as `Σ`.
pub fn gen_lie_of_c_bracket(s1: &Section, s2: &Section, phi: &Expression) -> Result<Expression, DftError> {
    let c = c_bracket_components(s1, s2)?;
    gen_lie_scalar(&c, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use alloc::vec;

    fn x(i: usize) -> Expression {
        Generator::x(i).into()
    }

    fn xt(i: usize) -> Expression {
        Generator::xt(i).into()
    }

    fn g(v: Generator) -> Expression {
        v.into()
    }

    #[test]
    fn lift_examples() {
        let s = Section::vector(vec![Expression::one()]);
        assert_eq!(lift_double(&s).unwrap(), g(Generator::xis(1)));
        let s = Section::form(vec![xt(1)]);
        assert_eq!(lift_double(&s).unwrap(), xt(1) * g(Generator::xi(1)));
        let bad = Section::form(vec![g(Generator::p(1))]);
        assert_eq!(lift_double(&bad), Err(DftError::NotADoubleField));
    }

    #[test]
    fn mu_self_bracket() {
        let mu = mu_dft(1);
        let expect = g(Generator::xi(1)) * g(Generator::p(1)) + g(Generator::xis(1)) * g(Generator::pt(1));
        assert_eq!(mu, expect);
        for d in 1..=3 {
            let mu = mu_dft(d);
            assert_eq!(mu.parity(), Some(crate::Parity::Odd));
            // {ξ^a p_a, ξ*_b p̃^b} = p_a p̃^a from the odd pair, twice
            let mut pp = Expression::zero();
            for a in 1..=d {
                pp += &(g(Generator::p(a)) * g(Generator::pt(a))).scale(&rat(2));
            }
            assert_eq!(Chart::doubled(d).bracket(&mu, &mu), pp);
            // D² = ½{{μ, μ}, ·}
            let phi = x(1) * xt(1) + xt(d) * xt(d);
            let dd = Chart::doubled(d).bracket(&pp, &phi).scale(&half());
            assert_eq!(dd, d_squared(d, &phi).unwrap());
        }
    }

    #[test]
    fn circle_vector_form_matches_hand_expansion() {
        // X = x̃₁ ∂₁ (d = 1), ω = x¹ dx¹:
        // (ω∂X + X∂ω) ξ + (ω∂̃X − ω∂̃X) ξ* = x̃₁ ξ¹
        let s1 = Section::vector(vec![xt(1)]);
        let s2 = Section::form(vec![x(1)]);
        assert_eq!(circle(&s1, &s2).unwrap(), xt(1) * g(Generator::xi(1)));
        // ω ∘ X = (X∂ω − X∂ω) ξ + (X∂̃ω + ω∂̃X) ξ* = x¹ ξ*₁
        assert_eq!(circle(&s2, &s1).unwrap(), x(1) * g(Generator::xis(1)));
    }

    #[test]
    fn c_bracket_hand_example() {
        let s1 = Section::vector(vec![x(1)]);
        let s2 = Section::form(vec![xt(1)]);
        let expect = (xt(1) * g(Generator::xi(1))).scale(&half()) - (x(1) * g(Generator::xis(1))).scale(&half());
        assert_eq!(c_bracket(&s1, &s2).unwrap(), expect);
        assert_eq!(c_bracket_components(&s1, &s2).unwrap().lift(), expect);
        assert_eq!(c_bracket_index_form(&s1, &s2).unwrap().lift(), expect);
        assert!(c_bracket(&s1, &s1).unwrap().is_zero());
    }

    #[test]
    fn c_bracket_component_rows() {
        let s1 = Section::new(vec![x(1) * xt(2), xt(1)], vec![x(2), x(1) * x(1)]).unwrap();
        let s2 = Section::new(vec![xt(2) * xt(2), x(1)], vec![xt(1) * x(2), Expression::int(3)]).unwrap();
        let comp = c_bracket_components(&s1, &s2).unwrap();
        assert_eq!(comp.lift(), c_bracket(&s1, &s2).unwrap());
        assert_eq!(comp, c_bracket_index_form(&s1, &s2).unwrap());

        let vv = c_bracket_components(&s1.vector_part(), &s2.vector_part()).unwrap();
        assert!(vv.form.iter().all(Expression::is_zero));
        let ff = c_bracket_components(&s1.form_part(), &s2.form_part()).unwrap();
        assert!(ff.vector.iter().all(Expression::is_zero));
    }

    #[test]
    fn dimension_mismatch() {
        let s1 = Section::zero(1);
        let s2 = Section::zero(2);
        assert_eq!(c_bracket(&s1, &s2), Err(DftError::DimensionMismatch { left: 1, right: 2 }));
    }

    #[test]
    fn d_squared_examples() {
        let phi = x(1) * xt(1);
        let expect = x(1) * g(Generator::p(1)) + xt(1) * g(Generator::pt(1));
        assert_eq!(d_squared(1, &phi).unwrap(), expect);
        assert_eq!(d_squared_derived(1, &phi).unwrap(), expect);
        assert_eq!(d_squared(1, &x(1)).unwrap(), g(Generator::pt(1)));
        assert!(d_squared(1, &Expression::int(4)).unwrap().is_zero());
    }

    #[test]
    fn strong_constraint_examples() {
        assert_eq!(strong_constraint_pair(2, &x(1), &xt(1)).unwrap(), Expression::one());
        assert!(strong_constraint_pair(2, &x(1), &x(2)).unwrap().is_zero());
        let f = x(1) + xt(1);
        assert_eq!(strong_constraint_pair(1, &f, &f).unwrap(), Expression::int(2));
        let chart = Chart::doubled(1);
        assert_eq!(chart.bracket(&d_squared(1, &f).unwrap(), &f), Expression::int(2));
    }

    #[test]
    fn projection() {
        assert_eq!(project_half(&mu_dft(2)), g(Generator::xi(1)) * g(Generator::p(1)) + g(Generator::xi(2)) * g(Generator::p(2)));
        let e = x(1) * g(Generator::p(1));
        assert_eq!(project_half(&e), e);
    }

    #[test]
    fn generalized_lie_examples() {
        let s = Section::vector(vec![Expression::one()]);
        assert_eq!(gen_lie_scalar(&s, &x(1)).unwrap(), Expression::one());
        let c = Section::new(vec![Expression::int(2)], vec![Expression::constant(rat(3))]).unwrap();
        assert!(gen_lie_vector(&c, &c).unwrap().is_zero());

        let s1 = Section::new(vec![x(1) * x(2), Expression::one()], vec![x(2), x(1) * x(1)]).unwrap();
        let s2 = Section::new(vec![x(2), x(1)], vec![Expression::zero(), x(1) * x(2)]).unwrap();
        let phi = x(1) * x(1) * x(2);
        let comm = gen_lie_commutator_scalar(&s1, &s2, &phi).unwrap();
        let lc = gen_lie_of_c_bracket(&s1, &s2, &phi).unwrap();
        assert_eq!(comm, lc);
        assert_eq!(variation_commutator_scalar(&s1, &s2, &phi).unwrap(), -lc);

        // upper and lower forms of the generalized Lie derivative agree
        let w = Section::new(vec![x(2) * xt(1), xt(2)], vec![x(1), Expression::one()]).unwrap();
        let s = Section::new(vec![xt(1), x(1) * x(2)], vec![x(2) * xt(2), x(1)]).unwrap();
        assert_eq!(gen_lie_vector(&s, &w).unwrap(), gen_lie_covector(&s, &w).unwrap());
    }
}

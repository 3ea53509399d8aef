//! Algebroid operations checked against independent component oracles.

mod common;

use common::*;
use proptest::prelude::*;
use superbracket_core::algebroid::*;
use superbracket_core::{Chart, Expression, Generator, Section};

fn x(i: usize) -> Expression {
    Generator::x(i).into()
}

fn d(i: usize, f: &Expression) -> Expression {
    f.partial(Generator::x(i + 1))
}

/// `J^{ijk} = π^{il}∂_lπ^{jk} + π^{jl}∂_lπ^{ki} + π^{kl}∂_lπ^{ij}`, 0-based.
fn jacobiator(n: usize, pi: &[Expression]) -> Vec<Expression> {
    let p = |i: usize, j: usize| &pi[i * n + j];
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut e = Expression::zero();
                for l in 0..n {
                    e += &p(i, l).product(&d(l, p(j, k)));
                    e += &p(j, l).product(&d(l, p(k, i)));
                    e += &p(k, l).product(&d(l, p(i, j)));
                }
                out.push(e);
            }
        }
    }
    out
}

fn bivector(n: usize, upper: &[(usize, usize, Expression)]) -> Vec<Expression> {
    let mut pi = vec![Expression::zero(); n * n];
    for (i, j, e) in upper {
        pi[i * n + j] = e.clone();
        pi[j * n + i] = -e.clone();
    }
    pi
}

fn poisson_bialgebroid(n: usize, pi: Vec<Expression>) -> BialgebroidData {
    BialgebroidData::new(LieAlgebroidData::tangent(n), DualAlgebroidData::from_bivector(n, pi).unwrap()).unwrap()
}

/// Courant bracket on `TM ⊕ T*M` twisted by `π`, written out by hand:
/// vector `[X,Y] + L_ηY − L_ωX − ½ d_π(η(Y) − ω(X))`,
/// form `[η,ω]_π + L_Xω − L_Yη + ½ d(η(Y) − ω(X))`.
fn courant_oracle(b: &BialgebroidData, s1: &Section, s2: &Section) -> Section {
    let n = s1.dim();
    let (p, q) = (&b.primal, &b.dual);
    let (xv, eta, yv, om) = (&s1.vector, &s1.form, &s2.vector, &s2.form);
    let mut c = Expression::zero();
    for i in 0..n {
        c += &eta[i].product(&yv[i]);
        c = &c - &om[i].product(&xv[i]);
    }
    let half = superbracket_core::Rational::new(1.into(), 2.into());
    let br_v = p.bracket(xv, yv);
    let le_y = q.lie_derivative_components(eta, yv);
    let lo_x = q.lie_derivative_components(om, xv);
    let dc_star = q.d_function(&c);
    let br_f = q.bracket(eta, om);
    let lx_o = p.lie_derivative_components(xv, om);
    let ly_e = p.lie_derivative_components(yv, eta);
    let dc = p.d_function(&c);
    Section {
        vector: (0..n)
            .map(|i| &(&(&br_v[i] + &le_y[i]) - &lo_x[i]) - &dc_star[i].scale(&half))
            .collect(),
        form: (0..n)
            .map(|i| &(&(&br_f[i] + &lx_o[i]) - &ly_e[i]) + &dc[i].scale(&half))
            .collect(),
    }
}

#[test]
fn jacobiator_controls() {
    let so3 = so3_lie_poisson();
    assert!(check_bialgebroid(&so3).passed());
    let pi = bivector(3, &[(0, 1, x(3)), (1, 2, x(1)), (2, 0, x(2))]);
    assert!(jacobiator(3, &pi).iter().all(Expression::is_zero));

    let pi = bivector(3, &[(0, 1, x(1)), (0, 2, x(2))]);
    let j = jacobiator(3, &pi);
    assert_eq!(j[(0 * 3 + 1) * 3 + 2], -x(2));
    let report = check_bialgebroid(&poisson_bialgebroid(3, pi));
    assert!(!report.passed());
}

#[test]
fn corrupted_structure_constants_break_jacobi() {
    let mut f = vec![Expression::zero(); 27];
    for &(k, i, j) in &[(0, 0, 1), (1, 1, 2), (2, 2, 0)] {
        f[(k * 3 + i) * 3 + j] = Expression::one();
        f[(k * 3 + j) * 3 + i] = Expression::int(-1);
    }
    let mut anchor = vec![Expression::zero(); 9];
    for i in 0..3 {
        anchor[i * 3 + i] = Expression::one();
    }
    let primal = LieAlgebroidData::new(3, anchor, f).unwrap();
    let h = build_h_da(&primal);
    assert!(!Chart::base(3).bracket(&h, &h).is_zero());
    let b = BialgebroidData::new(primal, so3_lie_poisson().dual).unwrap();
    assert!(!check_bialgebroid(&b).passed());
}

#[test]
fn closed_and_non_closed_three_forms() {
    // H_123 = x⁴ on ℝ⁴: (dH)_4123 = ∂₄H_123 = 1
    let n = 4;
    let mut h = vec![Expression::zero(); 64];
    let perms = [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1), (1, 0, 2, -1), (0, 2, 1, -1), (2, 1, 0, -1)];
    for &(i, j, k, s) in &perms {
        h[(i * n + j) * n + k] = x(4).scale(&superbracket_core::Rational::from_integer(s.into()));
    }
    let flux = FluxData::new(n, h.clone(), vec![Expression::zero(); 64]).unwrap();
    let report = check_proto(&BialgebroidData::tangent(n), &flux).unwrap();
    assert!(!report.passed());
    let dh = d(3, &h[(0 * n + 1) * n + 2]);
    assert_eq!(dh, Expression::one());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dorfman_components_match_derived((s1, s2) in (section(base_coords(3), 3, 2), section(base_coords(3), 3, 2))) {
        for b in [so3_lie_poisson(), BialgebroidData::tangent(3)] {
            let derived = dorfman_derived(&b, &s1, &s2).unwrap();
            prop_assert_eq!(dorfman_components(&b, &s1, &s2).unwrap().lift(), derived);
        }
    }

    #[test]
    fn courant_matches_explicit_formula((s1, s2) in (section(base_coords(3), 3, 2), section(base_coords(3), 3, 2))) {
        let b = so3_lie_poisson();
        let c = courant_bracket(&b, &s1, &s2).unwrap();
        prop_assert_eq!(&c, &courant_oracle(&b, &s1, &s2));
        prop_assert_eq!(c, courant_bracket(&b, &s2, &s1).unwrap().scale(&superbracket_core::Rational::from_integer((-1).into())));
    }

    #[test]
    fn cartan_formula((xv, om) in (prop::collection::vec(poly(base_coords(2), 2), 2), prop::collection::vec(poly(base_coords(2), 2), 2))) {
        // (L_X ω)_i = X^k ∂_k ω_i + ω_k ∂_i X^k
        let expect: Vec<Expression> = (0..2)
            .map(|i| {
                let mut e = Expression::zero();
                for k in 0..2 {
                    e += &xv[k].product(&d(k, &om[i]));
                    e += &om[k].product(&d(i, &xv[k]));
                }
                e
            })
            .collect();
        prop_assert_eq!(lie_derivative(&LieAlgebroidData::tangent(2), &xv, &om).unwrap(), expect);
    }

    #[test]
    fn ce_routes_agree(
        (w0, w1, w2, args) in (
            poly(base_coords(3), 2),
            prop::collection::vec(poly(base_coords(3), 2), 3),
            prop::collection::vec(poly(base_coords(3), 1), 3),
            prop::collection::vec(prop::collection::vec(poly(base_coords(3), 2), 3), 3),
        )
    ) {
        let b = so3_lie_poisson();
        let mut f = vec![Expression::zero(); 27];
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    f[(k * 3 + i) * 3 + j] = Expression::int(levi_civita(i, j, k));
                }
            }
        }
        // so(3) action algebroid: a(e_i) = ε_ijk x^k ∂_j, so that [a(e_i), a(e_j)] = ε_ijk a(e_k)
        let mut anchor = vec![Expression::zero(); 9];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    anchor[i * 3 + j] += &x(k + 1).scale(&superbracket_core::Rational::from_integer(levi_civita(i, j, k).into()));
                }
            }
        }
        let action = LieAlgebroidData::new(3, anchor, f).unwrap();
        let xi = |i: usize| -> Expression { Generator::xi(i).into() };
        let form1 = &(&w1[0].product(&xi(1)) + &w1[1].product(&xi(2))) + &w1[2].product(&xi(3));
        let form2 = &(&w2[0].product(&xi(2)).product(&xi(3)) + &w2[1].product(&xi(3)).product(&xi(1)))
            + &w2[2].product(&xi(1)).product(&xi(2));
        for l in [b.primal.clone(), action] {
            let h = build_h_da(&l);
            prop_assert!(Chart::base(3).bracket(&h, &h).is_zero());
            prop_assert_eq!(ce_oracle(&l, &w0, 0, &args[..1]).unwrap(), ce_hamiltonian(&l, &w0, 0, &args[..1]).unwrap());
            prop_assert_eq!(ce_oracle(&l, &form1, 1, &args[..2]).unwrap(), ce_hamiltonian(&l, &form1, 1, &args[..2]).unwrap());
            prop_assert_eq!(ce_oracle(&l, &form2, 2, &args).unwrap(), ce_hamiltonian(&l, &form2, 2, &args).unwrap());
        }
    }
}

#[test]
fn courant_axioms_so3() {
    let s = |v: [Expression; 3], f: [Expression; 3]| Section::new(v.to_vec(), f.to_vec()).unwrap();
    let sample = CourantSample {
        s1: s([x(1) * x(2), Expression::one(), x(3)], [x(2), Expression::zero(), x(1) * x(1)]),
        s2: s([x(3), x(1), Expression::zero()], [Expression::int(2), x(3) * x(2), x(1)]),
        s3: s([Expression::zero(), x(2) * x(2), x(1)], [x(3), x(1), Expression::one()]),
        f: x(1) * x(3) + x(2),
    };
    for r in check_courant_axioms(&so3_lie_poisson(), &[sample]) {
        assert!(r.passed(), "{r}");
    }
}

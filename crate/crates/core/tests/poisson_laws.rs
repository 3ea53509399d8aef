mod common;

use common::*;
use proptest::prelude::*;
use superbracket_core::symplectic::{legendre, legendre_inverse};
use superbracket_core::{Chart, Expression, Family, Generator};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn antisymmetry_leibniz_jacobi_parity(
        (c, (f, pf), (g, pg), (h, _)) in chart().prop_flat_map(|c| (Just(c), homogeneous(c), homogeneous(c), homogeneous(c)))
    ) {
        let fg = c.bracket(&f, &g);
        prop_assert_eq!(&fg, &-c.bracket(&g, &f).scale(&koszul(pf, pg)));

        let lhs = c.bracket(&f, &g.product(&h));
        let rhs = &fg.product(&h) + &g.product(&c.bracket(&f, &h)).scale(&koszul(pf, pg));
        prop_assert_eq!(lhs, rhs);

        let lhs = c.bracket(&f, &c.bracket(&g, &h));
        let rhs = &c.bracket(&fg, &h) + &c.bracket(&g, &c.bracket(&f, &h)).scale(&koszul(pf, pg));
        prop_assert_eq!(lhs, rhs);

        if !fg.is_zero() {
            prop_assert_eq!(fg.parity(), Some(pf + pg));
        }
    }

    #[test]
    fn legendre_is_a_symplectomorphism(
        (f, g) in (expression(Chart::dual(3)), expression(Chart::dual(3)))
    ) {
        let d = 3;
        let lhs = legendre(&Chart::dual(d).bracket(&f, &g));
        let rhs = Chart::base(d).bracket(&legendre(&f), &legendre(&g));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(legendre_inverse(&legendre(&f)), f);
    }

    #[test]
    fn homological_hamiltonians_square_to_zero(f in expression(Chart::base(3))) {
        let c = Chart::base(3);
        let mu = superbracket_core::algebroid::build_mu(&superbracket_core::algebroid::so3_lie_poisson());
        prop_assert!(c.bracket(&mu, &mu).is_zero());
        prop_assert!(c.bracket(&mu, &c.bracket(&mu, &f)).is_zero());
    }
}

#[test]
fn generator_table() {
    for d in 1..=3 {
        for chart in [Chart::base(d), Chart::doubled(d), Chart::dual(d)] {
            for a in chart.generators() {
                for b in chart.generators() {
                    let got = chart.bracket(&a.into(), &b.into());
                    let expect = match chart.conjugate_of(a) {
                        Some(c) if c == b => {
                            let momentum_first = matches!(
                                a.family,
                                Family::XStar | Family::P | Family::PTilde
                            );
                            if a.is_odd() || momentum_first {
                                Expression::one()
                            } else {
                                Expression::int(-1)
                            }
                        }
                        _ => Expression::zero(),
                    };
                    assert_eq!(got, expect, "{{{a}, {b}}}");
                }
            }
        }
    }
    let _ = Generator::x(1);
}

use core::fmt::{self, Write};

use num_traits::{One, Signed};

use crate::algebra::{Expression, Monomial, Rational};

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for &(g, e) in m.even() {
        if !first {
            f.write_char('*')?;
        }
        first = false;
        write!(f, "{g}")?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    for g in m.odd() {
        if !first {
            f.write_char('*')?;
        }
        first = false;
        write!(f, "{g}")?;
    }
    Ok(())
}

fn write_magnitude(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

// A unit coefficient is omitted only for positive terms with at least one
// generator; negative terms always carry an explicit magnitude.
fn write_body(f: &mut fmt::Formatter<'_>, m: &Monomial, c: &Rational, negative: bool) -> fmt::Result {
    let magnitude = c.abs();
    if m.is_one() {
        return write_magnitude(f, &magnitude);
    }
    if !negative && magnitude.is_one() {
        return write_monomial(f, m);
    }
    write_magnitude(f, &magnitude)?;
    f.write_char('*')?;
    write_monomial(f, m)
}

/// Canonical text form: terms in monomial order, `^k` exponents on even
/// generators, `" + "`/`" - "` separators and `"0"` for the zero expression.
impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_char('0');
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_char('-')?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_body(f, m, c, negative)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use alloc::string::ToString;

    use crate::algebra::{Expression, Generator};

    #[test]
    fn prints_canonical_forms() {
        assert_eq!(Expression::zero().to_string(), "0");
        let xi = |i| Expression::from(Generator::xi(i));
        assert_eq!((xi(2) * xi(1)).to_string(), "-1*xi1*xi2");
        let mu = Expression::from(Generator::xi(1)) * Generator::p(1).into()
            + Expression::from(Generator::xis(1)) * Generator::pt(1).into();
        assert_eq!(mu.to_string(), "p1*xi1 + pt_1*xis_1");
        let x1: Expression = Generator::x(1).into();
        assert_eq!(x1.scale(&crate::algebra::rat(-1)).product(&Expression::ratio(1, 2)).to_string(), "-1/2*x1");
        let e = &(&Expression::int(3) + &x1.pow(2)) - &xi(1);
        assert_eq!(e.to_string(), "3 - 1*xi1 + x1^2");
    }
}

//! Sections `X + η` of `A ⊕ A*` with polynomial coefficients, and their
//! lift `X^i ξ*_i + η_i ξ^i` to functions on `T*ΠA`.

use alloc::vec::Vec;
use core::ops::{Add, Sub};

use crate::algebra::{AlgebraError, Expression, Family, Generator, Rational};

/// A vector part `X^i` and a form part `η_i`, both of length `dim`.
///
/// The same type carries classical Courant sections (coefficients in `x`)
/// and double sections (coefficients in `x` and `x̃`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Section {
    pub vector: Vec<Expression>,
    pub form: Vec<Expression>,
}

impl Section {
    pub fn zero(dim: usize) -> Self {
        Section {
            vector: alloc::vec![Expression::zero(); dim],
            form: alloc::vec![Expression::zero(); dim],
        }
    }

    pub fn new(vector: Vec<Expression>, form: Vec<Expression>) -> Result<Self, AlgebraError> {
        if vector.len() != form.len() {
            return Err(AlgebraError::DimensionMismatch {
                left: vector.len(),
                right: form.len(),
            });
        }
        Ok(Section { vector, form })
    }

    pub fn vector(vector: Vec<Expression>) -> Self {
        let dim = vector.len();
        Section {
            vector,
            form: alloc::vec![Expression::zero(); dim],
        }
    }

    pub fn form(form: Vec<Expression>) -> Self {
        let dim = form.len();
        Section {
            vector: alloc::vec![Expression::zero(); dim],
            form,
        }
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vector.iter().chain(&self.form).all(Expression::is_zero)
    }

    pub fn vector_part(&self) -> Section {
        Section::vector(self.vector.clone())
    }

    pub fn form_part(&self) -> Section {
        Section::form(self.form.clone())
    }

    /// True when every coefficient only involves the listed families.
    pub fn coefficients_in(&self, allowed: &[Family]) -> bool {
        self.vector.iter().chain(&self.form).all(|e| e.only_families(allowed))
    }

    pub fn scale(&self, c: &Rational) -> Section {
        self.map(|e| e.scale(c))
    }

    /// Multiplies every coefficient by the (even) function `f`.
    pub fn times(&self, f: &Expression) -> Section {
        self.map(|e| f.product(e))
    }

    pub fn map(&self, f: impl Fn(&Expression) -> Expression) -> Section {
        Section {
            vector: self.vector.iter().map(&f).collect(),
            form: self.form.iter().map(&f).collect(),
        }
    }

    /// `X^i ξ*_i + η_i ξ^i`.
    pub fn lift(&self) -> Expression {
        let mut out = Expression::zero();
        for (i, (v, w)) in self.vector.iter().zip(&self.form).enumerate() {
            out += &v.product(&Generator::xis(i + 1).into());
            out += &w.product(&Generator::xi(i + 1).into());
        }
        out
    }

    /// Inverse of [`lift`](Self::lift): reads off the coefficients of `ξ*_i`
    /// and `ξ^i`. Fails if some term is not linear in exactly one of them or
    /// carries an index beyond `dim`.
    pub fn unlift(e: &Expression, dim: usize) -> Result<Section, AlgebraError> {
        let mut s = Section::zero(dim);
        for (m, c) in e.terms() {
            let [g] = m.odd() else {
                return Err(AlgebraError::NotASection);
            };
            let i = usize::from(g.index);
            if i == 0 || i > dim {
                return Err(AlgebraError::ChartMismatch { generator: *g, dim });
            }
            let target = match g.family {
                Family::XiStar => &mut s.vector[i - 1],
                Family::Xi => &mut s.form[i - 1],
                _ => return Err(AlgebraError::NotASection),
            };
            let coeff = Expression::from_term(m.clone(), c.clone()).partial(*g);
            *target += &coeff;
        }
        Ok(s)
    }

    /// `⟨X+η, Y+ω⟩ = η(Y) + ω(X)`.
    pub fn pairing(&self, other: &Section) -> Expression {
        let mut out = Expression::zero();
        for i in 0..self.dim() {
            out += &self.form[i].product(&other.vector[i]);
            out += &other.form[i].product(&self.vector[i]);
        }
        out
    }

    fn zip_with(&self, other: &Section, f: impl Fn(&Expression, &Expression) -> Expression) -> Section {
        assert_eq!(self.dim(), other.dim(), "section dimensions differ");
        Section {
            vector: self.vector.iter().zip(&other.vector).map(|(a, b)| f(a, b)).collect(),
            form: self.form.iter().zip(&other.form).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Add<&Section> for &Section {
    type Output = Section;
    fn add(self, rhs: &Section) -> Section {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&Section> for &Section {
    type Output = Section;
    fn sub(self, rhs: &Section) -> Section {
        self.zip_with(rhs, |a, b| a - b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn lift_and_unlift() {
        let x1: Expression = Generator::x(1).into();
        let xt2: Expression = Generator::xt(2).into();
        let s = Section::new(vec![x1.clone(), Expression::zero()], vec![Expression::zero(), xt2.clone()]).unwrap();
        let lifted = s.lift();
        let expect = &x1 * &Generator::xis(1).into() + &xt2 * &Generator::xi(2).into();
        assert_eq!(lifted, expect);
        assert_eq!(Section::unlift(&lifted, 2).unwrap(), s);
        assert!(Section::unlift(&Expression::one(), 2).is_err());
    }

    #[test]
    fn pairing_is_dual() {
        let d1 = Section::vector(vec![Expression::one(), Expression::zero()]);
        let dx1 = Section::form(vec![Expression::one(), Expression::zero()]);
        assert_eq!(d1.pairing(&dx1), Expression::one());
        assert!(d1.pairing(&d1).is_zero());
    }
}

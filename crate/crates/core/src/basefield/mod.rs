//! Exact arithmetic for the base field `k = F_q`, rational function fields
//! `K = k(y1..ym)` and one-level towers of p-th roots over `K`.
//!
//! Arithmetic goes through ring objects (`FiniteField`, `FunctionField`,
//! `Tower`, `PolyRing`, ...) that own the context; elements are plain data.

use std::fmt;
use std::hash::Hash;

use crate::error::Result;

mod fq;
mod gcd;
pub mod parse;
pub mod poly;
mod ratfunc;
mod tower;

pub use fq::FiniteField;
pub use poly::{Monomial, MonomialOrder, Poly, PolyRing};
pub use ratfunc::{FunctionField, RatFunc};
pub use tower::{Tower, TowerElem};

/// A commutative `k`-algebra.
pub trait Ring: Clone + fmt::Debug {
    type Elem: Clone + Eq + Hash + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of an element of the base field `k`.
    fn from_base(&self, c: u32) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// How a field element prints when used as a polynomial coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRepr {
    /// The element is `-text`.
    pub negative: bool,
    pub text: String,
    /// `text` can be used as a product factor without parentheses.
    pub atomic: bool,
}

pub trait Field: Ring + PartialEq {
    fn base(&self) -> &FiniteField;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// `Some(b)` with `b^p = a` when `a` is a p-th power, `None` otherwise.
    fn pth_root(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn display(&self, a: &Self::Elem) -> String;
    fn coeff_repr(&self, a: &Self::Elem) -> CoeffRepr;

    fn characteristic(&self) -> u32 {
        self.base().p()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u64)
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_base(self.base().from_int(n))
    }

    /// The p-th root function that is zero outside the p-th powers.
    fn lambda0(&self, a: &Self::Elem) -> Self::Elem {
        self.pth_root(a).unwrap_or_else(|| self.zero())
    }
}

use std::fmt;

use super::gcd::gcd;
use super::{CoeffRepr, Field, FiniteField, Monomial, Poly, PolyRing, Ring};
use crate::error::{Error, Result};

/// An element of `k(y1..ym)` stored as `num/den` with `gcd(num, den) = 1`
/// and `den` monic under degrevlex. Structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly<u32>,
    den: Poly<u32>,
}

impl RatFunc {
    pub fn num(&self) -> &Poly<u32> {
        &self.num
    }

    pub fn den(&self) -> &Poly<u32> {
        &self.den
    }
}

/// The rational function field `K = k(y1..ym)`; `m = 0` gives `k` itself.
#[derive(Clone, PartialEq)]
pub struct FunctionField {
    ring: PolyRing<FiniteField>,
}

impl fmt::Debug for FunctionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.ring.field(), self.ring.vars().join(","))
    }
}

impl FunctionField {
    pub fn new(base: FiniteField, vars: Vec<String>) -> Self {
        FunctionField {
            ring: PolyRing::degrevlex(base, vars),
        }
    }

    pub fn poly_ring(&self) -> &PolyRing<FiniteField> {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn var(&self, i: usize) -> RatFunc {
        self.from_poly(self.ring.var(i))
    }

    pub fn from_poly(&self, num: Poly<u32>) -> RatFunc {
        RatFunc {
            num,
            den: self.ring.one(),
        }
    }

    /// `num/den` brought to normal form.
    pub fn fraction(&self, num: Poly<u32>, den: Poly<u32>) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.normalize(num, den))
    }

    fn normalize(&self, num: Poly<u32>, den: Poly<u32>) -> RatFunc {
        let r = &self.ring;
        if num.is_zero() {
            return RatFunc {
                num,
                den: r.one(),
            };
        }
        let (num, den) = if r.is_constant(&den) {
            (num, den)
        } else {
            let g = gcd(r, &num, &den);
            if r.is_constant(&g) {
                (num, den)
            } else {
                (
                    r.divide_exact(&num, &g).expect("gcd divides"),
                    r.divide_exact(&den, &g).expect("gcd divides"),
                )
            }
        };
        let lc = r.leading_coeff(&den);
        if lc == 1 {
            return RatFunc { num, den };
        }
        let inv = r.field().inv(&lc).expect("nonzero");
        RatFunc {
            num: r.scale(&inv, &num),
            den: r.scale(&inv, &den),
        }
    }

    pub fn is_polynomial(&self, a: &RatFunc) -> bool {
        self.ring.is_one(&a.den)
    }

    /// The value of `a` when it lies in `k`.
    pub fn as_constant(&self, a: &RatFunc) -> Option<u32> {
        if self.is_polynomial(a) {
            self.ring.constant_value(&a.num)
        } else {
            None
        }
    }

    /// Maps `a` into `target`, matching variables by name.
    pub fn transfer(&self, a: &RatFunc, target: &FunctionField) -> Result<RatFunc> {
        if self.ring.field() != target.ring.field() {
            return Err(Error::FieldMismatch(format!("{self:?} vs {target:?}")));
        }
        // only variables that occur need a counterpart in the target
        let used: Vec<usize> = a.num.support().into_iter().chain(a.den.support()).collect();
        let map = self
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| match target.ring.var_index(v) {
                Some(j) => Ok(j),
                None if !used.contains(&i) => Ok(0),
                None => Err(Error::VariableMismatch(format!("{v} is not a variable of the target field"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let num = self.ring.convert(&a.num, &target.ring, &map, |c| *c);
        let den = self.ring.convert(&a.den, &target.ring, &map, |c| *c);
        // renaming can change which term leads
        target.fraction(num, den)
    }

    /// Coordinates of `a` over `K^p` in the basis `{y^b : b in {0..p-1}^m}`:
    /// returns `d` of length `p^m` with `a = sum_b d[b]^p * y^b`, where the
    /// index of `b` is `sum b_i p^i`.
    pub fn pth_decompose(&self, a: &RatFunc) -> Vec<RatFunc> {
        let r = &self.ring;
        let fq = r.field();
        let p = fq.p();
        let m = self.vars().len();
        let size = (p as usize).pow(m as u32);
        // a = num * den^(p-1) / den^p
        let scaled = r.mul(&a.num, &r.pow(&a.den, p as u64 - 1));
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); size];
        for (mono, c) in scaled.terms() {
            let mut idx = 0usize;
            let mut place = 1usize;
            let mut root_exps = Vec::with_capacity(m);
            for &e in mono.exponents() {
                idx += (e % p) as usize * place;
                place *= p as usize;
                root_exps.push(e / p);
            }
            let root_c = fq.pth_root(c).expect("finite fields are perfect");
            buckets[idx].push((Monomial::from_exponents(root_exps), root_c));
        }
        buckets
            .into_iter()
            .map(|b| self.normalize(r.from_terms(b), a.den.clone()))
            .collect()
    }
}

fn poly_pth_root(ring: &PolyRing<FiniteField>, a: &Poly<u32>) -> Option<Poly<u32>> {
    let p = ring.field().p();
    let mut terms = Vec::with_capacity(a.len());
    for (m, c) in a.terms() {
        if m.exponents().iter().any(|e| e % p != 0) {
            return None;
        }
        let exps = m.exponents().iter().map(|e| e / p).collect();
        terms.push((Monomial::from_exponents(exps), ring.field().pth_root(c)?));
    }
    Some(ring.from_terms(terms))
}

impl Ring for FunctionField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        self.from_poly(self.ring.zero())
    }

    fn one(&self) -> RatFunc {
        self.from_poly(self.ring.one())
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let r = &self.ring;
        if a.den == b.den {
            let num = r.add(&a.num, &b.num);
            if r.is_one(&a.den) {
                return self.from_poly(num);
            }
            return self.normalize(num, a.den.clone());
        }
        let num = r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den));
        self.normalize(num, r.mul(&a.den, &b.den))
    }

    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: self.ring.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let r = &self.ring;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        if r.is_one(&a.den) && r.is_one(&b.den) {
            return self.from_poly(r.mul(&a.num, &b.num));
        }
        // cross-cancel so that the product is already reduced
        let g1 = gcd(r, &a.num, &b.den);
        let g2 = gcd(r, &b.num, &a.den);
        let n1 = r.divide_exact(&a.num, &g1).expect("gcd divides");
        let d2 = r.divide_exact(&b.den, &g1).expect("gcd divides");
        let n2 = r.divide_exact(&b.num, &g2).expect("gcd divides");
        let d1 = r.divide_exact(&a.den, &g2).expect("gcd divides");
        let num = r.mul(&n1, &n2);
        let den = r.mul(&d1, &d2);
        let lc = r.leading_coeff(&den);
        if lc == 1 {
            return RatFunc { num, den };
        }
        let inv = r.field().inv(&lc).expect("nonzero");
        RatFunc {
            num: r.scale(&inv, &num),
            den: r.scale(&inv, &den),
        }
    }

    fn from_base(&self, c: u32) -> RatFunc {
        self.from_poly(self.ring.constant(c))
    }
}

impl Field for FunctionField {
    fn base(&self) -> &FiniteField {
        self.ring.field()
    }

    fn inv(&self, a: &RatFunc) -> Result<RatFunc> {
        if a.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = &self.ring;
        let lc = r.leading_coeff(&a.num);
        let inv = r.field().inv(&lc)?;
        Ok(RatFunc {
            num: r.scale(&inv, &a.den),
            den: r.scale(&inv, &a.num),
        })
    }

    /// For coprime `num/den`, the element is a p-th power iff both parts are,
    /// i.e. every exponent is divisible by `p`.
    fn pth_root(&self, a: &RatFunc) -> Option<RatFunc> {
        let num = poly_pth_root(&self.ring, &a.num)?;
        let den = poly_pth_root(&self.ring, &a.den)?;
        Some(RatFunc { num, den })
    }

    fn frobenius(&self, a: &RatFunc) -> RatFunc {
        // (num/den)^p stays reduced and monic
        let r = &self.ring;
        let fq = r.field();
        let p = fq.p();
        let frob = |x: &Poly<u32>| {
            let terms = x
                .terms()
                .iter()
                .map(|(m, c)| (m.pow(p), fq.frobenius(c)))
                .collect();
            r.from_terms(terms)
        };
        RatFunc {
            num: frob(&a.num),
            den: frob(&a.den),
        }
    }

    fn display(&self, a: &RatFunc) -> String {
        let r = &self.ring;
        let num = r.display(&a.num);
        if r.is_one(&a.den) {
            return num;
        }
        let num = if a.num.len() > 1 {
            format!("({num})")
        } else if let Some((m, c)) = a.num.leading() {
            // "2*y" would bind as (2*y); "-y" keeps its sign in front
            let repr = r.field().coeff_repr(c);
            if m.is_one() || repr.text == "1" {
                num
            } else {
                format!("({num})")
            }
        } else {
            num
        };
        let den_simple = a.den.len() == 1 && {
            let (m, c) = &a.den.terms()[0];
            *c == 1 && m.exponents().iter().filter(|&&e| e > 0).count() <= 1
        };
        let den = r.display(&a.den);
        if den_simple {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }

    fn coeff_repr(&self, a: &RatFunc) -> CoeffRepr {
        let r = &self.ring;
        if r.is_one(&a.den) && a.num.len() == 1 {
            let (m, c) = &a.num.terms()[0];
            let cr = r.field().coeff_repr(c);
            if m.is_one() {
                return cr;
            }
            let mono = r.display_monomial(m);
            let text = if cr.text == "1" {
                mono
            } else if cr.atomic {
                format!("{}*{}", cr.text, mono)
            } else {
                format!("({})*{}", cr.text, mono)
            };
            return CoeffRepr {
                negative: cr.negative,
                text,
                atomic: true,
            };
        }
        CoeffRepr {
            negative: false,
            text: self.display(a),
            atomic: false,
        }
    }
}

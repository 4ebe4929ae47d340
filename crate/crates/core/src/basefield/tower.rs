use std::fmt;
use std::sync::Arc;

use super::{CoeffRepr, Field, FiniteField, FunctionField, Monomial, PolyRing, RatFunc, Ring};
use crate::error::{Error, Result};
use crate::linalg;

/// `L = K(z1..zr)` with `zi^p = ti`, `ti` in `K`, and the `ti` p-independent
/// over `K^p`. Every `z`-degree in an element is `< p`.
#[derive(Clone)]
pub struct Tower {
    inner: Arc<TowerInner>,
}

struct TowerInner {
    base: FunctionField,
    names: Vec<String>,
    roots: Vec<RatFunc>,
    /// `carry[mask]` is the product of the `ti` with bit `i` set.
    carry: Vec<RatFunc>,
}

/// Dense coefficients over `K`, indexed by `sum a_i p^i` for `z^a`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TowerElem {
    coeffs: Vec<RatFunc>,
}

impl TowerElem {
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base
                && self.inner.names == other.inner.names
                && self.inner.roots == other.inner.roots)
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}(", self.inner.base)?;
        for (i, (n, t)) in self.inner.names.iter().zip(&self.inner.roots).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}^p={}", self.inner.base.display(t))?;
        }
        write!(f, ")")
    }
}

impl Tower {
    /// Adjoins `names[i] = roots[i]^(1/p)`. Each root must stay outside the
    /// p-th powers of the tower built so far.
    pub fn new(base: FunctionField, names: Vec<String>, roots: Vec<RatFunc>) -> Result<Self> {
        if names.len() != roots.len() {
            return Err(Error::UnsupportedTower(
                "one name per adjoined root required".into(),
            ));
        }
        for (i, n) in names.iter().enumerate() {
            if base.vars().contains(n) || names[..i].contains(n) || n == "g" {
                return Err(Error::UnsupportedTower(format!("generator name {n} is taken")));
            }
        }
        let mut tower = Self::trivial(base.clone());
        for (n, t) in names.into_iter().zip(roots) {
            if tower.pth_root_coeffs(&t).is_some() {
                return Err(Error::UnsupportedTower(format!(
                    "{} is a p-th power in {:?}",
                    base.display(&t),
                    tower
                )));
            }
            let mut ns = tower.inner.names.clone();
            let mut ts = tower.inner.roots.clone();
            ns.push(n);
            ts.push(t);
            tower = Self::build(base.clone(), ns, ts);
        }
        Ok(tower)
    }

    /// The tower with no adjoined roots, isomorphic to `K`.
    pub fn trivial(base: FunctionField) -> Self {
        Self::build(base, Vec::new(), Vec::new())
    }

    fn build(base: FunctionField, names: Vec<String>, roots: Vec<RatFunc>) -> Self {
        let r = roots.len();
        let carry = (0..1usize << r)
            .map(|mask| {
                (0..r)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(base.one(), |acc, i| base.mul(&acc, &roots[i]))
            })
            .collect();
        Tower {
            inner: Arc::new(TowerInner {
                base,
                names,
                roots,
                carry,
            }),
        }
    }

    pub fn base_field(&self) -> &FunctionField {
        &self.inner.base
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn roots(&self) -> &[RatFunc] {
        &self.inner.roots
    }

    pub fn depth(&self) -> usize {
        self.inner.roots.len()
    }

    fn size(&self) -> usize {
        (self.characteristic() as usize).pow(self.depth() as u32)
    }

    fn digits(&self, mut idx: usize) -> Vec<usize> {
        let p = self.characteristic() as usize;
        (0..self.depth())
            .map(|_| {
                let d = idx % p;
                idx /= p;
                d
            })
            .collect()
    }

    pub fn embed(&self, a: &RatFunc) -> TowerElem {
        let mut coeffs = vec![self.inner.base.zero(); self.size()];
        coeffs[0] = a.clone();
        TowerElem { coeffs }
    }

    /// The adjoined root `zi`.
    pub fn generator(&self, i: usize) -> TowerElem {
        let mut coeffs = vec![self.inner.base.zero(); self.size()];
        coeffs[(self.characteristic() as usize).pow(i as u32)] = self.inner.base.one();
        TowerElem { coeffs }
    }

    /// `z^a` for the multi-index with encoding `idx`.
    pub fn monomial(&self, idx: usize) -> TowerElem {
        let mut coeffs = vec![self.inner.base.zero(); self.size()];
        coeffs[idx] = self.inner.base.one();
        TowerElem { coeffs }
    }

    /// The element of `K` when `a` has no `z`-components.
    pub fn as_base(&self, a: &TowerElem) -> Option<RatFunc> {
        let k = &self.inner.base;
        if a.coeffs[1..].iter().all(|c| k.is_zero(c)) {
            Some(a.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Coefficients `c` with `w = sum_a c[a]^p * t^a`, if they exist.
    ///
    /// Expands `w` and each `t^a` over the `K^p`-basis of monomials
    /// `y^b`, `b in {0..p-1}^m`, and solves the resulting linear system over
    /// `K` (identified with `K^p` through Frobenius).
    pub fn pth_root_coeffs(&self, w: &RatFunc) -> Option<Vec<RatFunc>> {
        let k = &self.inner.base;
        let p = self.characteristic() as u64;
        let n = self.size();
        let columns: Vec<Vec<RatFunc>> = (0..n)
            .map(|idx| {
                let t_pow = self
                    .digits(idx)
                    .iter()
                    .zip(&self.inner.roots)
                    .fold(k.one(), |acc, (&d, t)| k.mul(&acc, &k.pow(t, d as u64)));
                k.pth_decompose(&t_pow)
            })
            .collect();
        let target = k.pth_decompose(w);
        let rows: Vec<Vec<RatFunc>> = (0..target.len())
            .map(|b| columns.iter().map(|col| col[b].clone()).collect())
            .collect();
        let sol = linalg::solve(k, &rows, &target, n)?;
        debug_assert_eq!(
            sol.iter().enumerate().fold(k.zero(), |acc, (idx, c)| {
                let t_pow = self
                    .digits(idx)
                    .iter()
                    .zip(&self.inner.roots)
                    .fold(k.one(), |a, (&d, t)| k.mul(&a, &k.pow(t, d as u64)));
                k.add(&acc, &k.mul(&k.pow(c, p), &t_pow))
            }),
            *w
        );
        Some(sol)
    }

    /// Whether `w` in `K` is a p-th power in `L`.
    pub fn is_pth_power_of_base(&self, w: &RatFunc) -> bool {
        self.pth_root_coeffs(w).is_some()
    }

    /// `a^p`, which always lies in `K`.
    pub fn norm_p(&self, a: &TowerElem) -> RatFunc {
        let k = &self.inner.base;
        a.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .fold(k.zero(), |acc, (idx, c)| {
                let t_pow = self
                    .digits(idx)
                    .iter()
                    .zip(&self.inner.roots)
                    .fold(k.one(), |a, (&d, t)| k.mul(&a, &k.pow(t, d as u64)));
                k.add(&acc, &k.mul(&k.frobenius(c), &t_pow))
            })
    }

    fn display_ring(&self) -> PolyRing<FunctionField> {
        PolyRing::degrevlex(self.inner.base.clone(), self.inner.names.clone())
    }

    fn as_poly(&self, a: &TowerElem) -> super::Poly<RatFunc> {
        let ring = self.display_ring();
        let terms = a
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let exps = self.digits(idx).into_iter().map(|d| d as u32).collect();
                (Monomial::from_exponents(exps), c.clone())
            })
            .collect();
        ring.from_terms(terms)
    }
}

impl Ring for Tower {
    type Elem = TowerElem;

    fn zero(&self) -> TowerElem {
        TowerElem {
            coeffs: vec![self.inner.base.zero(); self.size()],
        }
    }

    fn one(&self) -> TowerElem {
        self.embed(&self.inner.base.one())
    }

    fn is_zero(&self, a: &TowerElem) -> bool {
        a.coeffs.iter().all(|c| self.inner.base.is_zero(c))
    }

    fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        let k = &self.inner.base;
        TowerElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| k.add(x, y)).collect(),
        }
    }

    fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        let k = &self.inner.base;
        TowerElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| k.sub(x, y)).collect(),
        }
    }

    fn neg(&self, a: &TowerElem) -> TowerElem {
        let k = &self.inner.base;
        TowerElem {
            coeffs: a.coeffs.iter().map(|x| k.neg(x)).collect(),
        }
    }

    fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        let k = &self.inner.base;
        let p = self.characteristic() as usize;
        let mut out = self.zero();
        for (i, x) in a.coeffs.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            let di = self.digits(i);
            for (j, y) in b.coeffs.iter().enumerate() {
                if k.is_zero(y) {
                    continue;
                }
                let dj = self.digits(j);
                let (mut idx, mut place, mut mask) = (0usize, 1usize, 0usize);
                for (bit, (u, v)) in di.iter().zip(&dj).enumerate() {
                    let mut s = u + v;
                    if s >= p {
                        s -= p;
                        mask |= 1 << bit;
                    }
                    idx += s * place;
                    place *= p;
                }
                let mut prod = k.mul(x, y);
                if mask != 0 {
                    prod = k.mul(&prod, &self.inner.carry[mask]);
                }
                out.coeffs[idx] = k.add(&out.coeffs[idx], &prod);
            }
        }
        out
    }

    fn from_base(&self, c: u32) -> TowerElem {
        self.embed(&self.inner.base.from_base(c))
    }
}

impl Field for Tower {
    fn base(&self) -> &FiniteField {
        self.inner.base.base()
    }

    /// `a^-1 = a^(p-1) / a^p` with `a^p` in `K`.
    fn inv(&self, a: &TowerElem) -> Result<TowerElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let k = &self.inner.base;
        let norm_inv = k.inv(&self.norm_p(a))?;
        let partial = self.pow(a, self.characteristic() as u64 - 1);
        Ok(TowerElem {
            coeffs: partial.coeffs.iter().map(|c| k.mul(c, &norm_inv)).collect(),
        })
    }

    /// `L^p` lies in `K`, so a p-th power has no `z`-components.
    fn pth_root(&self, a: &TowerElem) -> Option<TowerElem> {
        let w = self.as_base(a)?;
        let coeffs = self.pth_root_coeffs(&w)?;
        Some(TowerElem { coeffs })
    }

    fn frobenius(&self, a: &TowerElem) -> TowerElem {
        self.embed(&self.norm_p(a))
    }

    fn display(&self, a: &TowerElem) -> String {
        self.display_ring().display(&self.as_poly(a))
    }

    fn coeff_repr(&self, a: &TowerElem) -> CoeffRepr {
        if let Some(w) = self.as_base(a) {
            return self.inner.base.coeff_repr(&w);
        }
        let poly = self.as_poly(a);
        if poly.len() == 1 {
            let (m, c) = &poly.terms()[0];
            let cr = self.inner.base.coeff_repr(c);
            if cr.atomic {
                let mono = self.display_ring().display_monomial(m);
                let text = if cr.text == "1" {
                    mono
                } else {
                    format!("{}*{}", cr.text, mono)
                };
                return CoeffRepr {
                    negative: cr.negative,
                    text,
                    atomic: true,
                };
            }
        }
        CoeffRepr {
            negative: false,
            text: self.display(a),
            atomic: false,
        }
    }
}

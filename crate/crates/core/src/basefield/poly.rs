//! Sparse multivariate polynomials over a field, kept sorted in descending
//! order for the ring's monomial order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{Field, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Degrevlex on the first `block` variables, ties broken by degrevlex on
    /// the rest. Eliminates the first block.
    Elimination { block: usize },
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Elimination { block } => degrevlex(&a.0[..block], &b.0[..block])
                .then_with(|| degrevlex(&a.0[block..], &b.0[block..])),
        }
    }
}

/// Terms in strictly descending monomial order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E> Poly<E> {
    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let n = self.terms.first().map_or(0, |(m, _)| m.0.len());
        (0..n)
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .collect()
    }
}

#[derive(Clone)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Arc<[String]>,
    order: MonomialOrder,
}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.vars == other.vars && self.field == other.field
    }
}

impl<F: Field> fmt::Debug for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.field, self.vars.join(","))
    }
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: Vec<String>, order: MonomialOrder) -> Self {
        PolyRing {
            field,
            vars: vars.into(),
            order,
        }
    }

    pub fn degrevlex(field: F, vars: Vec<String>) -> Self {
        Self::new(field, vars, MonomialOrder::DegRevLex)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyRing {
            field: self.field.clone(),
            vars: self.vars.clone(),
            order,
        }
    }

    pub fn var(&self, i: usize) -> Poly<F::Elem> {
        Poly {
            terms: vec![(Monomial::var(self.nvars(), i), self.field.one())],
        }
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(&c) {
            Poly { terms: Vec::new() }
        } else {
            Poly {
                terms: vec![(Monomial::one(self.nvars()), c)],
            }
        }
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(&c) {
            Poly { terms: Vec::new() }
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Sorts, merges repeated monomials and drops zero coefficients.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, F::Elem)>) -> Poly<F::Elem> {
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        Poly { terms: out }
    }

    pub fn is_constant(&self, p: &Poly<F::Elem>) -> bool {
        p.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self, p: &Poly<F::Elem>) -> Option<F::Elem> {
        match p.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_coeff(&self, p: &Poly<F::Elem>) -> F::Elem {
        p.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, c: &F::Elem, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return Poly { terms: Vec::new() };
        }
        Poly {
            terms: p
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), self.field.mul(c, x)))
                .filter(|(_, x)| !self.field.is_zero(x))
                .collect(),
        }
    }

    pub fn mul_term(&self, p: &Poly<F::Elem>, m: &Monomial, c: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return Poly { terms: Vec::new() };
        }
        Poly {
            terms: p
                .terms
                .iter()
                .map(|(pm, x)| (pm.mul(m), self.field.mul(c, x)))
                .filter(|(_, x)| !self.field.is_zero(x))
                .collect(),
        }
    }

    /// `a - c * m * b`, the elementary reduction step.
    fn sub_mul_term(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        m: &Monomial,
        c: &F::Elem,
    ) -> Poly<F::Elem> {
        let shifted = self.mul_term(b, m, c);
        self.sub(a, &shifted)
    }

    fn merge(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        negate_b: bool,
    ) -> Poly<F::Elem> {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            let (ma, ca) = &a.terms[i];
            let (mb, cb) = &b.terms[j];
            match self.order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_b { f.neg(cb) } else { cb.clone() };
                    out.push((mb.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        for (m, c) in &b.terms[j..] {
            let c = if negate_b { f.neg(c) } else { c.clone() };
            out.push((m.clone(), c));
        }
        Poly { terms: out }
    }

    pub fn monic(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        match p.terms.first() {
            None => p.clone(),
            Some((_, c)) if self.field.is_one(c) => p.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(&inv, p)
            }
        }
    }

    /// Full normal form of `f` modulo `basis` (every term reduced).
    pub fn reduce(&self, f: &Poly<F::Elem>, basis: &[Poly<F::Elem>]) -> Poly<F::Elem> {
        let mut p = f.clone();
        let mut rem: Vec<(Monomial, F::Elem)> = Vec::new();
        while let Some((m, c)) = p.terms.first().cloned() {
            let divisor = basis
                .iter()
                .find(|g| g.terms.first().is_some_and(|(gm, _)| gm.divides(&m)));
            match divisor {
                Some(g) => {
                    let (gm, gc) = &g.terms[0];
                    let factor = self
                        .field
                        .div(&c, gc)
                        .expect("basis elements have nonzero leading coefficients");
                    p = self.sub_mul_term(&p, g, &gm.quotient_of(&m), &factor);
                }
                None => {
                    rem.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        Poly { terms: rem }
    }

    /// `a / b` when `b` divides `a` exactly.
    pub fn divide_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (bm, bc) = b.terms.first()?;
        let bc_inv = self.field.inv(bc).ok()?;
        let mut q = Vec::new();
        let mut r = a.clone();
        while let Some((rm, rc)) = r.terms.first().cloned() {
            if !bm.divides(&rm) {
                return None;
            }
            let m = bm.quotient_of(&rm);
            let c = self.field.mul(&rc, &bc_inv);
            r = self.sub_mul_term(&r, b, &m, &c);
            q.push((m, c));
        }
        Some(Poly { terms: q })
    }

    pub fn eval(&self, p: &Poly<F::Elem>, point: &[F::Elem]) -> F::Elem {
        self.eval_in(p, &self.field, |c| c.clone(), point)
    }

    /// Evaluates `p` in a target ring: coefficients go through `coeff`,
    /// variable `i` is sent to `values[i]`.
    pub fn eval_in<R: Ring>(
        &self,
        p: &Poly<F::Elem>,
        target: &R,
        coeff: impl Fn(&F::Elem) -> R::Elem,
        values: &[R::Elem],
    ) -> R::Elem {
        let mut powers: HashMap<(usize, u32), R::Elem> = HashMap::new();
        let mut acc = target.zero();
        for (m, c) in &p.terms {
            let mut t = coeff(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| target.pow(&values[i], e as u64))
                    .clone();
                t = target.mul(&t, &pw);
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// Moves `p` into another polynomial ring: variable `i` becomes variable
    /// `var_map[i]` of `target`, coefficients go through `coeff`.
    pub fn convert<G: Field>(
        &self,
        p: &Poly<F::Elem>,
        target: &PolyRing<G>,
        var_map: &[usize],
        coeff: impl Fn(&F::Elem) -> G::Elem,
    ) -> Poly<G::Elem> {
        let n = target.nvars();
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; n];
                for (i, &x) in m.0.iter().enumerate() {
                    if x > 0 {
                        e[var_map[i]] += x;
                    }
                }
                (Monomial(e), coeff(c))
            })
            .collect();
        target.from_terms(terms)
    }

    /// Name-based variable map into `target`.
    pub fn var_map_to<G: Field>(&self, target: &PolyRing<G>) -> Result<Vec<usize>> {
        self.vars
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .ok_or_else(|| Error::VariableMismatch(format!("{v} is not a variable of the target ring")))
            })
            .collect()
    }

    /// Coefficients of `p` viewed as a polynomial in variable `v`; entry `d`
    /// holds the coefficient of `v^d` (free of `v`).
    pub fn coeffs_in(&self, p: &Poly<F::Elem>, v: usize) -> Vec<Poly<F::Elem>> {
        let deg = p.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &p.terms {
            let mut e = m.0.clone();
            let d = e[v] as usize;
            e[v] = 0;
            buckets[d].push((Monomial(e), c.clone()));
        }
        buckets.into_iter().map(|b| self.from_terms(b)).collect()
    }

    pub fn display(&self, p: &Poly<F::Elem>) -> String {
        if p.terms.is_empty() {
            return "0".into();
        }
        if let [(m, c)] = p.terms.as_slice() {
            if m.is_one() {
                return self.field.display(c);
            }
        }
        let mut s = String::new();
        for (i, (m, c)) in p.terms.iter().enumerate() {
            let r = self.field.coeff_repr(c);
            if i == 0 {
                if r.negative {
                    s.push('-');
                }
            } else {
                s.push_str(if r.negative { " - " } else { " + " });
            }
            let coeff = if r.atomic {
                r.text.clone()
            } else {
                format!("({})", r.text)
            };
            if m.is_one() {
                s.push_str(&coeff);
            } else {
                if r.text != "1" {
                    s.push_str(&coeff);
                    s.push('*');
                }
                s.push_str(&self.display_monomial(m));
            }
        }
        s
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl<F: Field> Ring for PolyRing<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly { terms: Vec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.field.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.merge(a, b, false)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.merge(a, b, true)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.terms.is_empty() || b.terms.is_empty() {
            return self.zero();
        }
        if b.terms.len() == 1 {
            let (m, c) = &b.terms[0];
            return self.mul_term(a, m, c);
        }
        if a.terms.len() == 1 {
            let (m, c) = &a.terms[0];
            return self.mul_term(b, m, c);
        }
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let prod = self.field.mul(ca, cb);
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(c) => *c = self.field.add(c, &prod),
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        self.from_terms(acc.into_iter().collect())
    }

    fn from_base(&self, c: u32) -> Self::Elem {
        self.constant(self.field.from_base(c))
    }
}

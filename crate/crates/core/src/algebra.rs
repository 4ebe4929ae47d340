//! Finite commutative `k`-algebras given by structure constants, their
//! distinguished ideals, and the companionability classification.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::basefield::{Field, FiniteField, Ring};
use crate::error::{Error, Result};
use crate::linalg;

/// Coordinates over `k` in the algebra's basis.
pub type AlgVec = Vec<u32>;

/// A commutative, associative, unital `k`-algebra of finite dimension.
#[derive(Clone)]
pub struct CommAlgebra {
    inner: Arc<AlgInner>,
}

struct AlgInner {
    field: FiniteField,
    names: Vec<String>,
    table: Vec<Vec<AlgVec>>,
    /// Nonzero structure constants of `b_i * b_j` as `(l, c)`.
    sparse: Vec<Vec<Vec<(usize, u32)>>>,
    unit: AlgVec,
}

impl PartialEq for CommAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field == other.inner.field
                && self.inner.names == other.inner.names
                && self.inner.table == other.inner.table
                && self.inner.unit == other.inner.unit)
    }
}

impl fmt::Debug for CommAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({:?}; {})", self.inner.field, self.inner.names.join(", "))
    }
}

impl CommAlgebra {
    /// Validates commutativity, associativity and the unit law.
    pub fn new(
        field: FiniteField,
        names: Vec<String>,
        table: Vec<Vec<AlgVec>>,
        unit: AlgVec,
    ) -> Result<Self> {
        let e = names.len();
        if e == 0 {
            return Err(Error::InvalidInput("algebra must have positive dimension".into()));
        }
        let q = field.order();
        let bad_vec = |v: &AlgVec| v.len() != e || v.iter().any(|&c| c >= q);
        if table.len() != e
            || table.iter().any(|row| row.len() != e || row.iter().any(bad_vec))
            || bad_vec(&unit)
        {
            return Err(Error::InvalidInput(format!(
                "multiplication table and unit must be {e}x{e} arrays of {e}-vectors over F_{q}"
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate basis name {n}")));
            }
        }
        let sparse = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.iter()
                            .enumerate()
                            .filter(|(_, &c)| c != 0)
                            .map(|(l, &c)| (l, c))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let alg = CommAlgebra {
            inner: Arc::new(AlgInner {
                field,
                names,
                table,
                sparse,
                unit,
            }),
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let e = self.dim();
        let t = &self.inner.table;
        for i in 0..e {
            for j in i + 1..e {
                if t[i][j] != t[j][i] {
                    return Err(Error::NotCommutative(i, j));
                }
            }
        }
        for i in 0..e {
            for j in 0..e {
                for l in 0..e {
                    let left = self.mul(&t[i][j], &self.basis(l));
                    let right = self.mul(&self.basis(i), &t[j][l]);
                    if left != right {
                        return Err(Error::NotAssociative(i, j, l));
                    }
                }
            }
        }
        for i in 0..e {
            if self.mul(&self.inner.unit, &self.basis(i)) != self.basis(i) {
                return Err(Error::BadUnit);
            }
        }
        Ok(())
    }

    /// `k[X]/(f)` for monic `f` of positive degree (coefficients ascending);
    /// basis `1, X, ..., X^(n-1)` named with `var`.
    pub fn monogenic(field: FiniteField, f: &[u32], var: &str) -> Result<Self> {
        let n = f.len().saturating_sub(1);
        if n == 0 || f[n] != 1 {
            return Err(Error::InvalidInput(
                "monogenic algebra needs a monic polynomial of positive degree".into(),
            ));
        }
        // X^m reduced mod f, for m < 2n - 1
        let mut powers: Vec<AlgVec> = Vec::with_capacity(2 * n);
        let mut cur = vec![0u32; n];
        cur[0] = 1;
        for _ in 0..2 * n - 1 {
            powers.push(cur.clone());
            let top = cur[n - 1];
            let mut next = vec![0u32; n];
            next[1..n].copy_from_slice(&cur[..n - 1]);
            for (i, x) in next.iter_mut().enumerate() {
                *x = field.sub(x, &field.mul(&top, &f[i]));
            }
            cur = next;
        }
        let table = (0..n)
            .map(|i| (0..n).map(|j| powers[i + j].clone()).collect())
            .collect();
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            })
            .collect();
        Self::new(field, names, table, powers[0].clone())
    }

    /// `k^e` with the standard idempotents `e0..e(e-1)`.
    pub fn split(field: FiniteField, e: usize) -> Result<Self> {
        let table = (0..e)
            .map(|i| {
                (0..e)
                    .map(|j| {
                        let mut v = vec![0; e];
                        if i == j {
                            v[i] = 1;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let names = (0..e).map(|i| format!("e{i}")).collect();
        Self::new(field, names, table, vec![1; e])
    }

    pub fn field(&self) -> &FiniteField {
        &self.inner.field
    }

    pub fn dim(&self) -> usize {
        self.inner.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn table(&self) -> &[Vec<AlgVec>] {
        &self.inner.table
    }

    /// Nonzero structure constants of `b_i * b_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.inner.sparse[i][j]
    }

    pub fn unit(&self) -> &AlgVec {
        &self.inner.unit
    }

    pub fn basis(&self, i: usize) -> AlgVec {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Tensor product over `k`, basis `b_i ⊗ c_j` at index `i * dim(other) + j`.
    pub fn tensor(&self, other: &CommAlgebra) -> Result<CommAlgebra> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch("tensor factors over different fields".into()));
        }
        let k = self.field();
        let (e, r) = (self.dim(), other.dim());
        let mut table = vec![vec![vec![0u32; e * r]; e * r]; e * r];
        for i1 in 0..e {
            for j1 in 0..r {
                for i2 in 0..e {
                    for j2 in 0..r {
                        let out = &mut table[i1 * r + j1][i2 * r + j2];
                        for &(l, c) in self.structure(i1, i2) {
                            for &(m, d) in other.structure(j1, j2) {
                                let x = &mut out[l * r + m];
                                *x = k.add(x, &k.mul(&c, &d));
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![0u32; e * r];
        for (i, a) in self.unit().iter().enumerate() {
            for (j, b) in other.unit().iter().enumerate() {
                unit[i * r + j] = k.mul(a, b);
            }
        }
        let names = self
            .names()
            .iter()
            .flat_map(|a| other.names().iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        CommAlgebra::new(k.clone(), names, table, unit)
    }

    /// Human-readable linear combination of basis names.
    pub fn display(&self, v: &AlgVec) -> String {
        let k = self.field();
        let mut s = String::new();
        for (i, c) in v.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let r = k.coeff_repr(c);
            if s.is_empty() {
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
            let name = &self.inner.names[i];
            if name == "1" {
                s.push_str(&coeff);
            } else if r.text == "1" {
                s.push_str(name);
            } else {
                s.push_str(&format!("{coeff}*{name}"));
            }
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }

    /// Kernel of an `F_p`-linear self-map of `B`, as a `k`-subspace.
    fn fp_kernel(&self, map: impl Fn(&AlgVec) -> AlgVec) -> SubspaceIdeal {
        let k = self.field();
        let (e, n) = (self.dim(), k.degree());
        let fp = FiniteField::prime(k.p()).expect("characteristic is prime");
        let source = |i: usize, j: usize| {
            let mut digits = vec![0u32; n];
            digits[j] = 1;
            let mut v = vec![0u32; e];
            v[i] = k.from_digits(&digits);
            v
        };
        let images: Vec<Vec<u32>> = (0..e * n)
            .map(|c| {
                map(&source(c / n, c % n))
                    .iter()
                    .flat_map(|x| k.to_digits(*x))
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<u32>> = (0..e * n)
            .map(|r| images.iter().map(|col| col[r]).collect())
            .collect();
        let ker: Vec<AlgVec> = linalg::kernel(&fp, &rows, e * n)
            .into_iter()
            .map(|x| (0..e).map(|i| k.from_digits(&x[i * n..(i + 1) * n])).collect())
            .collect();
        SubspaceIdeal::span(k, e, ker)
    }

    /// `{x : x^p = 0}`.
    pub fn ker_frobenius(&self) -> SubspaceIdeal {
        let p = self.field().p() as u64;
        self.fp_kernel(|x| self.pow(x, p))
    }

    /// The nilradical: kernel of `x -> x^(p^m)` for the least `m` with
    /// `p^m >= e`.
    pub fn nilradical(&self) -> SubspaceIdeal {
        let p = self.field().p() as u64;
        let mut m = 0;
        while (p.pow(m) as usize) < self.dim() {
            m += 1;
        }
        self.fp_kernel(|x| (0..m).fold(x.clone(), |acc, _| self.pow(&acc, p)))
    }

    /// The ideal generated by all products `u * v`.
    pub fn ideal_product(&self, a: &SubspaceIdeal, b: &SubspaceIdeal) -> SubspaceIdeal {
        let mut gens = Vec::new();
        for u in &a.basis {
            for v in &b.basis {
                gens.push(self.mul(u, v));
            }
        }
        SubspaceIdeal::span(self.field(), self.dim(), gens)
    }
}

impl Ring for CommAlgebra {
    type Elem = AlgVec;

    fn zero(&self) -> AlgVec {
        vec![0; self.dim()]
    }

    fn one(&self) -> AlgVec {
        self.inner.unit.clone()
    }

    fn is_zero(&self, a: &AlgVec) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &AlgVec, b: &AlgVec) -> AlgVec {
        let k = self.field();
        a.iter().zip(b).map(|(x, y)| k.add(x, y)).collect()
    }

    fn sub(&self, a: &AlgVec, b: &AlgVec) -> AlgVec {
        let k = self.field();
        a.iter().zip(b).map(|(x, y)| k.sub(x, y)).collect()
    }

    fn neg(&self, a: &AlgVec) -> AlgVec {
        let k = self.field();
        a.iter().map(|x| k.neg(x)).collect()
    }

    fn mul(&self, a: &AlgVec, b: &AlgVec) -> AlgVec {
        let k = self.field();
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if *y == 0 {
                    continue;
                }
                let xy = k.mul(x, y);
                for &(l, c) in self.structure(i, j) {
                    out[l] = k.add(&out[l], &k.mul(&xy, &c));
                }
            }
        }
        out
    }

    fn from_base(&self, c: u32) -> AlgVec {
        let k = self.field();
        self.inner.unit.iter().map(|u| k.mul(u, &c)).collect()
    }
}

/// A `k`-subspace of `B` kept in reduced echelon form, so equality of
/// subspaces is structural equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceIdeal {
    dim: usize,
    basis: Vec<AlgVec>,
}

impl SubspaceIdeal {
    pub fn span(field: &FiniteField, ambient: usize, gens: Vec<AlgVec>) -> Self {
        SubspaceIdeal {
            dim: ambient,
            basis: linalg::row_space(field, &gens, ambient),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        SubspaceIdeal {
            dim: ambient,
            basis: Vec::new(),
        }
    }

    pub fn basis(&self) -> &[AlgVec] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, field: &FiniteField, v: &AlgVec) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.clone());
        linalg::rank(field, &rows, self.dim) == self.basis.len()
    }

    pub fn is_subspace_of(&self, field: &FiniteField, other: &SubspaceIdeal) -> bool {
        self.basis.iter().all(|v| other.contains(field, v))
    }

    /// Closed under multiplication by every basis element of `alg`.
    pub fn is_ideal(&self, alg: &CommAlgebra) -> bool {
        (0..alg.dim()).all(|i| {
            self.basis
                .iter()
                .all(|v| self.contains(alg.field(), &alg.mul(&alg.basis(i), v)))
        })
    }
}

/// A finite algebra `B` together with its augmentation `π: B -> k`.
///
/// The basis is normalized: `π(b0) = 1` and `π(bi) = 0` for `i > 0`; when
/// `B` is local, `b0` is the unit.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra {
    alg: CommAlgebra,
    pi: Vec<u32>,
    local: bool,
}

impl FiniteAlgebra {
    pub fn new(alg: CommAlgebra, pi: Vec<u32>) -> Result<Self> {
        let e = alg.dim();
        if pi.len() != e || pi.iter().any(|&c| c >= alg.field().order()) {
            return Err(Error::InvalidInput(format!("augmentation must be an {e}-vector over k")));
        }
        if pi[0] != 1 || pi[1..].iter().any(|&c| c != 0) {
            return Err(Error::BasisNotNormalized);
        }
        let k = alg.field();
        let eval = |v: &AlgVec| {
            v.iter()
                .zip(&pi)
                .fold(0, |acc, (a, b)| k.add(&acc, &k.mul(a, b)))
        };
        for i in 0..e {
            for j in i..e {
                if eval(&alg.table()[i][j]) != k.mul(&pi[i], &pi[j]) {
                    return Err(Error::BadAugmentation(i));
                }
            }
        }
        let mut out = FiniteAlgebra {
            alg,
            pi,
            local: false,
        };
        out.local = out.is_local()?;
        if out.local && out.alg.unit() != &out.alg.basis(0) {
            return Err(Error::BasisNotNormalized);
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &CommAlgebra {
        &self.alg
    }

    pub fn field(&self) -> &FiniteField {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// Locality as established at construction.
    pub fn local(&self) -> bool {
        self.local
    }

    pub fn pi(&self) -> &[u32] {
        &self.pi
    }

    /// `π(v)`; under the normalization this is the `b0` coordinate.
    pub fn augment(&self, v: &AlgVec) -> u32 {
        v[0]
    }

    /// `k[X]/(X^e)` with basis `1, t, ..., t^(e-1)`.
    pub fn truncated_poly(field: FiniteField, e: usize) -> Result<Self> {
        let mut f = vec![0u32; e + 1];
        f[e] = 1;
        let alg = CommAlgebra::monogenic(field, &f, "t")?;
        let mut pi = vec![0; e];
        pi[0] = 1;
        Self::new(alg, pi)
    }

    /// `k^e` with `π` the projection to the first factor.
    pub fn endo_algebra(field: FiniteField, e: usize) -> Result<Self> {
        let alg = CommAlgebra::split(field, e)?;
        let mut pi = vec![0; e];
        pi[0] = 1;
        Self::new(alg, pi)
    }

    /// `self × other` with `π` taken from `self`; the basis lists `self`'s
    /// basis first, then `other`'s.
    pub fn direct_product(&self, other: &CommAlgebra) -> Result<Self> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch("product factors over different fields".into()));
        }
        let (e, r) = (self.dim(), other.dim());
        let n = e + r;
        let mut table = vec![vec![vec![0u32; n]; n]; n];
        for i in 0..e {
            for j in 0..e {
                table[i][j][..e].copy_from_slice(&self.alg.table()[i][j]);
            }
        }
        for i in 0..r {
            for j in 0..r {
                table[e + i][e + j][e..].copy_from_slice(&other.table()[i][j]);
            }
        }
        let mut unit = self.alg.unit().clone();
        unit.extend_from_slice(other.unit());
        let mut pi = self.pi.clone();
        pi.extend(std::iter::repeat(0).take(r));
        let names = merge_names(self.alg.names(), other.names());
        Self::new(
            CommAlgebra::new(self.field().clone(), names, table, unit)?,
            pi,
        )
    }

    /// The subalgebra of `self × other` of pairs with equal augmentation,
    /// with basis `(b0, b0'), (bi, 0), (0, bj')`.
    pub fn fiber_product(&self, other: &FiniteAlgebra) -> Result<Self> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch("fiber product over different fields".into()));
        }
        let (e, f) = (self.dim(), other.dim());
        let n = e + f - 1;
        // (u, u') with u0 = u0' has coordinates (u0, u1.., u1'..)
        let pack = |u: &AlgVec, v: &AlgVec| -> AlgVec {
            debug_assert_eq!(u[0], v[0]);
            let mut out = u.clone();
            out.extend_from_slice(&v[1..]);
            out
        };
        let zero_a = self.alg.zero();
        let zero_b = other.alg.zero();
        let pair = |i: usize| -> (AlgVec, AlgVec) {
            if i == 0 {
                (self.alg.basis(0), other.alg.basis(0))
            } else if i < e {
                (self.alg.basis(i), zero_b.clone())
            } else {
                (zero_a.clone(), other.alg.basis(i - e + 1))
            }
        };
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (a1, b1) = pair(i);
                        let (a2, b2) = pair(j);
                        pack(&self.alg.mul(&a1, &a2), &other.alg.mul(&b1, &b2))
                    })
                    .collect()
            })
            .collect();
        let unit = pack(self.alg.unit(), other.alg.unit());
        let mut pi = vec![0; n];
        pi[0] = 1;
        let names = merge_names(self.alg.names(), &other.alg.names()[1..]);
        Self::new(
            CommAlgebra::new(self.field().clone(), names, table, unit)?,
            pi,
        )
    }

    pub fn ker_pi(&self) -> SubspaceIdeal {
        let k = self.field();
        let ker = linalg::kernel(k, &[self.pi.clone()], self.dim());
        SubspaceIdeal::span(k, self.dim(), ker)
    }

    pub fn ker_frobenius(&self) -> SubspaceIdeal {
        self.alg.ker_frobenius()
    }

    pub fn nilradical(&self) -> SubspaceIdeal {
        self.alg.nilradical()
    }

    /// `(ker π)^e = 0`, by iterated ideal products.
    pub fn is_local_by_powers(&self) -> bool {
        let m = self.ker_pi();
        let mut power = m.clone();
        for _ in 1..self.dim() {
            if power.is_zero() {
                break;
            }
            power = self.alg.ideal_product(&power, &m);
        }
        power.is_zero()
    }

    /// `nil(B) = ker π`.
    pub fn is_local_by_nilradical(&self) -> bool {
        self.nilradical() == self.ker_pi()
    }

    pub fn is_local(&self) -> Result<bool> {
        let a = self.is_local_by_powers();
        let b = self.is_local_by_nilradical();
        if a != b {
            return Err(Error::InternalInconsistency(format!(
                "locality by ideal powers ({a}) disagrees with locality by nilradical ({b})"
            )));
        }
        Ok(a)
    }

    /// `v^p = 0` for every basis vector `v` of `ker π`.
    pub fn assumption2(&self) -> bool {
        let p = self.field().p() as u64;
        self.ker_pi()
            .basis()
            .iter()
            .all(|v| self.alg.is_zero(&self.alg.pow(v, p)))
    }

    pub fn companionability(&self) -> Result<ClassificationReport> {
        let local = self.is_local()?;
        let nil = self.nilradical();
        let kfr = self.ker_frobenius();
        let kpi = self.ker_pi();
        let cond1 = nil == kfr;
        let cond2 = local || nil.is_zero();
        let companionable = cond1 && cond2;
        let clause = match (companionable, local) {
            (false, _) => Clause::None,
            (true, true) => Clause::Local,
            (true, false) => Clause::SeparableProduct,
        };
        let show = |s: &SubspaceIdeal| s.basis().iter().map(|v| self.alg.display(v)).collect();
        Ok(ClassificationReport {
            dim: self.dim(),
            local,
            nil_basis: show(&nil),
            ker_frobenius_basis: show(&kfr),
            ker_pi_basis: show(&kpi),
            assumption2: self.assumption2(),
            cond1,
            cond2,
            companionable,
            clause,
        })
    }
}

fn merge_names(first: &[String], second: &[String]) -> Vec<String> {
    let mut names = first.to_vec();
    for n in second {
        let mut n = n.clone();
        while names.contains(&n) {
            n.push('\'');
        }
        names.push(n);
    }
    names
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    Local,
    SeparableProduct,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub dim: usize,
    pub local: bool,
    pub nil_basis: Vec<String>,
    pub ker_frobenius_basis: Vec<String>,
    pub ker_pi_basis: Vec<String>,
    pub assumption2: bool,
    /// The nilradical equals the kernel of Frobenius.
    pub cond1: bool,
    /// Local, or reduced.
    pub cond2: bool,
    pub companionable: bool,
    pub clause: Clause,
}

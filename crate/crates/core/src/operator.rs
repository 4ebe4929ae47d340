//! B-operators: `k`-algebra maps `∂: K -> K ⊗ B` with `π ∘ ∂ = id`, given by
//! the images of the generators of `K = k(y1..ym)`, and their extensions to
//! p-th-root towers.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{CommAlgebra, FiniteAlgebra};
use crate::basefield::{Field, FunctionField, Poly, RatFunc, Ring, Tower, TowerElem};
use crate::error::{Error, Result};

/// `R ⊗_k B` as coordinate vectors in the basis of `B`.
#[derive(Clone, PartialEq)]
pub struct TensorRing<R: Ring> {
    ring: R,
    alg: CommAlgebra,
}

impl<R: Ring> fmt::Debug for TensorRing<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊗ {:?}", self.ring, self.alg)
    }
}

impl<R: Ring> TensorRing<R> {
    pub fn new(ring: R, alg: CommAlgebra) -> Self {
        TensorRing { ring, alg }
    }

    pub fn base_ring(&self) -> &R {
        &self.ring
    }

    pub fn algebra(&self) -> &CommAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// `r ⊗ 1`.
    pub fn scalar(&self, r: &R::Elem) -> Vec<R::Elem> {
        self.alg
            .unit()
            .iter()
            .map(|&u| {
                if u == 0 {
                    self.ring.zero()
                } else {
                    self.ring.mul(&self.ring.from_base(u), r)
                }
            })
            .collect()
    }

    /// `r ⊗ b_i`.
    pub fn basis_multiple(&self, r: &R::Elem, i: usize) -> Vec<R::Elem> {
        let mut v = vec![self.ring.zero(); self.dim()];
        v[i] = r.clone();
        v
    }

    pub fn scale(&self, r: &R::Elem, v: &[R::Elem]) -> Vec<R::Elem> {
        v.iter().map(|x| self.ring.mul(r, x)).collect()
    }
}

impl<F: Field> TensorRing<F> {
    /// Inverse in `K ⊗ B` for local `B` with `b0 = 1`:
    /// `u^-1 = u0^-1 * sum_{j<e} (-n)^j` where `u = u0 (1 + n)`.
    pub fn invert_local(&self, u: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let k = &self.ring;
        if k.is_zero(&u[0]) {
            return Err(Error::NotInvertible);
        }
        let u0_inv = k.inv(&u[0])?;
        let mut neg_n: Vec<F::Elem> = u.iter().map(|x| k.neg(&k.mul(x, &u0_inv))).collect();
        neg_n[0] = k.zero();
        let mut acc = self.one();
        let mut power = self.one();
        for _ in 1..self.dim() {
            power = self.mul(&power, &neg_n);
            if self.is_zero(&power) {
                break;
            }
            acc = self.add(&acc, &power);
        }
        Ok(self.scale(&u0_inv, &acc))
    }

    pub fn display(&self, v: &[F::Elem]) -> Vec<String> {
        v.iter().map(|x| self.ring.display(x)).collect()
    }
}

impl<R: Ring> Ring for TensorRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.ring.zero(); self.dim()]
    }

    fn one(&self) -> Self::Elem {
        self.scalar(&self.ring.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.ring.is_zero(x))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.ring.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.ring.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.ring.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.ring.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.ring.is_zero(y) {
                    continue;
                }
                let xy = self.ring.mul(x, y);
                for &(l, c) in self.alg.structure(i, j) {
                    let term = if c == 1 {
                        xy.clone()
                    } else {
                        self.ring.mul(&self.ring.from_base(c), &xy)
                    };
                    out[l] = self.ring.add(&out[l], &term);
                }
            }
        }
        out
    }

    fn from_base(&self, c: u32) -> Self::Elem {
        self.scalar(&self.ring.from_base(c))
    }
}

/// Common interface of operators on `K` and on towers over `K`.
pub trait BOperator {
    type F: Field;

    fn field(&self) -> &Self::F;
    fn algebra(&self) -> &FiniteAlgebra;
    fn apply(&self, f: &<Self::F as Ring>::Elem) -> Result<Vec<<Self::F as Ring>::Elem>>;

    fn tensor_ring(&self) -> TensorRing<Self::F> {
        TensorRing::new(self.field().clone(), self.algebra().algebra().clone())
    }

    /// `∂(f) = f ⊗ 1`.
    fn is_constant(&self, f: &<Self::F as Ring>::Elem) -> Result<bool> {
        Ok(self.apply(f)? == self.tensor_ring().scalar(f))
    }

    /// `∂(f^p) = f^p ⊗ 1`, which must hold under Assumption 2.
    fn check_frl(&self, f: &<Self::F as Ring>::Elem) -> Result<bool> {
        self.require_assumption2()?;
        let fp = self.field().frobenius(f);
        self.is_constant(&fp)
    }

    /// Whether `f` is a constant and whether it is a p-th power; a constant
    /// that is not a p-th power witnesses non-strictness.
    fn strictness_witness(&self, f: &<Self::F as Ring>::Elem) -> Result<StrictnessWitness> {
        self.require_assumption2()?;
        let constant = self.is_constant(f)?;
        let pth_power = self.field().pth_root(f).is_some();
        Ok(StrictnessWitness {
            constant,
            pth_power,
            counterexample: constant && !pth_power,
        })
    }

    fn require_assumption2(&self) -> Result<()> {
        if self.algebra().assumption2() {
            Ok(())
        } else {
            Err(Error::PreconditionViolated(
                "the algebra fails Assumption 2 (some element of ker π has nonzero p-th power)".into(),
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StrictnessWitness {
    pub constant: bool,
    pub pth_power: bool,
    pub counterexample: bool,
}

/// A B-operator on `K = k(y1..ym)` given by generator images.
#[derive(Clone, PartialEq)]
pub struct OperatorSpec {
    algebra: FiniteAlgebra,
    field: FunctionField,
    images: Vec<Vec<RatFunc>>,
}

impl fmt::Debug for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.tensor_ring();
        write!(f, "Operator on {:?}:", self.field)?;
        for (v, img) in self.field.vars().iter().zip(&self.images) {
            write!(f, " ∂({v}) = ({})", t.display(img).join(", "))?;
        }
        Ok(())
    }
}

impl OperatorSpec {
    /// `images[j]` is the coordinate vector of `∂(y_j)`; its component 0 must
    /// be `y_j`.
    pub fn new(algebra: FiniteAlgebra, field: FunctionField, images: Vec<Vec<RatFunc>>) -> Result<Self> {
        if algebra.field() != field.base() {
            return Err(Error::FieldMismatch(
                "operator algebra and function field have different base fields".into(),
            ));
        }
        if images.len() != field.vars().len() {
            return Err(Error::InvalidInput(format!(
                "expected {} generator images, got {}",
                field.vars().len(),
                images.len()
            )));
        }
        for (j, img) in images.iter().enumerate() {
            let v = &field.vars()[j];
            if img.len() != algebra.dim() {
                return Err(Error::DimensionMismatch {
                    expected: algebra.dim(),
                    got: img.len(),
                });
            }
            if img[0] != field.var(j) {
                return Err(Error::InvalidInput(format!(
                    "component 0 of the image of {v} must be {v}"
                )));
            }
        }
        Ok(OperatorSpec {
            algebra,
            field,
            images,
        })
    }

    /// `∂(y) = y ⊗ 1` for every generator.
    pub fn trivial(algebra: FiniteAlgebra, field: FunctionField) -> Result<Self> {
        let t = TensorRing::new(field.clone(), algebra.algebra().clone());
        let images = (0..field.vars().len()).map(|j| t.scalar(&field.var(j))).collect();
        Self::new(algebra, field, images)
    }

    pub fn images(&self) -> &[Vec<RatFunc>] {
        &self.images
    }

    pub fn image(&self, var: &str) -> Option<&[RatFunc]> {
        self.field
            .vars()
            .iter()
            .position(|v| v == var)
            .map(|j| self.images[j].as_slice())
    }

    /// The unique extension to `k[y]`.
    pub fn apply_poly(&self, p: &Poly<u32>) -> Vec<RatFunc> {
        let t = self.tensor_ring();
        self.field
            .poly_ring()
            .eval_in(p, &t, |c| t.from_base(*c), &self.images)
    }

    /// `u^-1` in `K ⊗ B`; needs `B` local.
    pub fn invert(&self, u: &[RatFunc]) -> Result<Vec<RatFunc>> {
        if !self.algebra.local() {
            return Err(Error::NonLocalFractionUnsupported);
        }
        self.tensor_ring().invert_local(u)
    }

    /// Tensor product with an operator on disjoint variables over the same
    /// `B`: the operator on `k(u ∪ v)` with the union of the images.
    pub fn tensor(&self, other: &OperatorSpec) -> Result<OperatorSpec> {
        if self.algebra != other.algebra {
            return Err(Error::InvalidInput("operators over different algebras".into()));
        }
        if let Some(v) = other.field.vars().iter().find(|v| self.field.vars().contains(v)) {
            return Err(Error::VariableClash(v.clone()));
        }
        let mut vars = self.field.vars().to_vec();
        vars.extend_from_slice(other.field.vars());
        let field = FunctionField::new(self.field.base().clone(), vars);
        let mut images = Vec::new();
        for op in [self, other] {
            for img in &op.images {
                images.push(
                    img.iter()
                        .map(|c| op.field.transfer(c, &field))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
        }
        OperatorSpec::new(self.algebra.clone(), field, images)
    }

    /// The operator on the subfield generated by `vars`; every image of those
    /// variables must lie in it.
    pub fn restrict(&self, vars: &[String]) -> Result<OperatorSpec> {
        let field = FunctionField::new(self.field.base().clone(), vars.to_vec());
        let images = vars
            .iter()
            .map(|v| {
                let img = self
                    .image(v)
                    .ok_or_else(|| Error::VariableMismatch(format!("{v} is not an operator variable")))?;
                img.iter().map(|c| self.field.transfer(c, &field)).collect()
            })
            .collect::<Result<Vec<_>>>()?;
        OperatorSpec::new(self.algebra.clone(), field, images)
    }

    /// Adjoins `z = t^(1/p)` for a constant `t` that is not a p-th power and
    /// makes `z` a constant. Only the local case is supported.
    pub fn extend_pth_root(&self, name: &str, t: &RatFunc) -> Result<TowerOperator> {
        TowerOperator {
            base: self.clone(),
            tower: Tower::trivial(self.field.clone()),
        }
        .extend_pth_root(name, t)
    }
}

impl BOperator for OperatorSpec {
    type F = FunctionField;

    fn field(&self) -> &FunctionField {
        &self.field
    }

    fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    fn apply(&self, f: &RatFunc) -> Result<Vec<RatFunc>> {
        let num = self.apply_poly(f.num());
        if self.field.poly_ring().is_one(f.den()) {
            return Ok(num);
        }
        let den = self.apply_poly(f.den());
        let inv = self.invert(&den)?;
        Ok(self.tensor_ring().mul(&num, &inv))
    }
}

/// A B-operator on a tower `K(z1..zr)` extending one on `K`, with every
/// `zi` a constant.
#[derive(Clone, Debug, PartialEq)]
pub struct TowerOperator {
    base: OperatorSpec,
    tower: Tower,
}

impl TowerOperator {
    pub fn base(&self) -> &OperatorSpec {
        &self.base
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn extend_pth_root(&self, name: &str, t: &RatFunc) -> Result<TowerOperator> {
        if !self.base.algebra.local() {
            return Err(Error::PreconditionViolated(
                "p-th root extension is implemented for local algebras only".into(),
            ));
        }
        let k = &self.base.field;
        if !self.base.is_constant(t)? {
            return Err(Error::NotAConstant(k.display(t)));
        }
        if self.tower.is_pth_power_of_base(t) {
            return Err(Error::AlreadyPthPower(k.display(t)));
        }
        let mut names = self.tower.names().to_vec();
        let mut roots = self.tower.roots().to_vec();
        names.push(name.to_string());
        roots.push(t.clone());
        let tower = Tower::new(k.clone(), names, roots)?;
        Ok(TowerOperator {
            base: self.base.clone(),
            tower,
        })
    }
}

impl BOperator for TowerOperator {
    type F = Tower;

    fn field(&self) -> &Tower {
        &self.tower
    }

    fn algebra(&self) -> &FiniteAlgebra {
        &self.base.algebra
    }

    /// `∂(sum c_a z^a) = sum ∂(c_a) (z^a ⊗ 1)`.
    fn apply(&self, f: &TowerElem) -> Result<Vec<TowerElem>> {
        let l = &self.tower;
        let t = self.tensor_ring();
        let k = self.base.field();
        let mut acc = t.zero();
        for (idx, c) in f.coeffs().iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            let dc: Vec<TowerElem> = self.base.apply(c)?.iter().map(|x| l.embed(x)).collect();
            let z_pow = l.monomial(idx);
            acc = t.add(&acc, &t.scale(&z_pow, &dc));
        }
        Ok(acc)
    }
}

/// `∂` of each distinct coefficient.
pub(crate) fn apply_all(
    op: &OperatorSpec,
    coeffs: impl IntoIterator<Item = RatFunc>,
) -> Result<HashMap<RatFunc, Vec<RatFunc>>> {
    let mut out = HashMap::new();
    for c in coeffs {
        if !out.contains_key(&c) {
            let img = op.apply(&c)?;
            out.insert(c, img);
        }
    }
    Ok(out)
}

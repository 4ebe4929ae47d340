//! Affine `K`-varieties, prolongation spaces `τ(V)`, the equalizer
//! `E ⊆ τ(W)`, dominance by elimination, generic fibers over p-th-root
//! towers, and the point-count check of the prolongation adjunction.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{CommAlgebra, FiniteAlgebra};
use crate::basefield::{Field, FiniteField, FunctionField, Poly, PolyRing, RatFunc, Ring, Tower, TowerElem};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::operator::{apply_all, BOperator, OperatorSpec, TensorRing};

type KPoly = Poly<RatFunc>;

/// Bound on the number of points enumerated by [`adjunction_census`].
pub const CENSUS_LIMIT: u128 = 1_000_000;

/// `V(I) ⊆ A^n_K` with a caller-asserted primality flag.
#[derive(Clone, Debug)]
pub struct AffineVariety {
    ring: PolyRing<FunctionField>,
    gens: Vec<KPoly>,
    prime: bool,
}

impl AffineVariety {
    pub fn new(field: FunctionField, vars: Vec<String>, gens: Vec<KPoly>, prime: bool) -> Result<Self> {
        check_names(&field, &vars)?;
        let ring = PolyRing::degrevlex(field, vars);
        Ok(Self::in_ring(ring, gens, prime))
    }

    fn in_ring(ring: PolyRing<FunctionField>, gens: Vec<KPoly>, prime: bool) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        AffineVariety { ring, gens, prime }
    }

    /// `A^n`.
    pub fn affine_space(field: FunctionField, vars: Vec<String>) -> Result<Self> {
        Self::new(field, vars, Vec::new(), true)
    }

    pub fn ring(&self) -> &PolyRing<FunctionField> {
        &self.ring
    }

    pub fn field(&self) -> &FunctionField {
        self.ring.field()
    }

    pub fn vars(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn gens(&self) -> &[KPoly] {
        &self.gens
    }

    pub fn prime(&self) -> bool {
        self.prime
    }

    pub fn ideal(&self) -> Ideal<FunctionField> {
        Ideal::new(self.ring.clone(), self.gens.clone())
    }

    pub fn display(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.display(g)).collect()
    }

    /// The generators moved into `ring`, matching variables by name.
    fn gens_in(&self, ring: &PolyRing<FunctionField>) -> Result<Vec<KPoly>> {
        let map = self.ring.var_map_to(ring)?;
        Ok(self
            .gens
            .iter()
            .map(|g| self.ring.convert(g, ring, &map, |c| c.clone()))
            .collect())
    }
}

fn check_names(field: &FunctionField, vars: &[String]) -> Result<()> {
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) || field.vars().contains(v) || v == "g" {
            return Err(Error::VariableClash(v.clone()));
        }
    }
    Ok(())
}

/// `τ(V)` with its coordinate bookkeeping: `components[j][i]` is the
/// variable holding the `b_i`-coordinate of the `j`-th variable of `V`.
#[derive(Clone, Debug)]
pub struct Prolongation {
    variety: AffineVariety,
    components: Vec<Vec<String>>,
}

impl Prolongation {
    pub fn variety(&self) -> &AffineVariety {
        &self.variety
    }

    pub fn components(&self) -> &[Vec<String>] {
        &self.components
    }

    /// The variables of the projection `π: τ(V) -> V`.
    pub fn projection_vars(&self) -> Vec<String> {
        self.components.iter().map(|c| c[0].clone()).collect()
    }
}

/// `τ(V)` with variables `v_i`.
pub fn prolong(op: &OperatorSpec, v: &AffineVariety) -> Result<Prolongation> {
    let e = op.algebra().dim();
    let names = v
        .vars()
        .iter()
        .map(|x| (0..e).map(|i| format!("{x}_{i}")).collect())
        .collect();
    prolong_named(op, v, names)
}

/// `τ(V)` with caller-chosen component names.
pub fn prolong_named(op: &OperatorSpec, v: &AffineVariety, components: Vec<Vec<String>>) -> Result<Prolongation> {
    if op.field() != v.field() {
        return Err(Error::FieldMismatch(format!(
            "operator on {:?}, variety over {:?}",
            op.field(),
            v.field()
        )));
    }
    let vars: Vec<String> = components.iter().flatten().cloned().collect();
    check_names(v.field(), &vars)?;
    let ring = PolyRing::degrevlex(v.field().clone(), vars);
    let t = TensorRing::new(ring.clone(), op.algebra().algebra().clone());
    let values: Vec<Vec<KPoly>> = components
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|name| ring.var(ring.var_index(name).expect("declared above")))
                .collect()
        })
        .collect();
    let images = apply_all(op, v.gens().iter().flat_map(|g| g.terms().iter().map(|(_, c)| c.clone())))?;
    let mut gens = Vec::new();
    for g in v.gens() {
        let expanded = v.ring().eval_in(
            g,
            &t,
            |c| images[c].iter().map(|x| ring.constant(x.clone())).collect(),
            &values,
        );
        gens.extend(expanded.into_iter().filter(|p| !p.is_zero()));
    }
    Ok(Prolongation {
        variety: AffineVariety::in_ring(ring, gens, false),
        components,
    })
}

/// `∇(a) = (∂(a_1), ..., ∂(a_n))` flattened in the order of `prolong`'s
/// variables.
pub fn nabla_point(op: &OperatorSpec, v: &AffineVariety, a: &[RatFunc]) -> Result<Vec<RatFunc>> {
    if a.len() != v.vars().len() {
        return Err(Error::DimensionMismatch {
            expected: v.vars().len(),
            got: a.len(),
        });
    }
    let k = v.field();
    if v.gens().iter().any(|g| !k.is_zero(&v.ring().eval(g, a))) {
        return Err(Error::PointNotOnVariety);
    }
    let mut out = Vec::new();
    for x in a {
        out.extend(op.apply(x)?);
    }
    let tau = prolong(op, v)?;
    let tv = tau.variety();
    if tv.gens().iter().any(|g| !k.is_zero(&tv.ring().eval(g, &out))) {
        return Err(Error::InternalInconsistency(
            "image of a point does not satisfy the prolongation ideal".into(),
        ));
    }
    Ok(out)
}

fn same_var_set(a: &[String], b: &[String]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x))
}

/// `W ⊆ τ(V)`: every generator of `I(τ(V))` lies in `I(W)`. `W` must live
/// in the variables of `τ(V)`.
pub fn is_kernel(op: &OperatorSpec, v: &AffineVariety, w: &AffineVariety) -> Result<bool> {
    let tau = prolong(op, v)?;
    if !same_var_set(tau.variety().vars(), w.vars()) {
        return Err(Error::VariableMismatch(format!(
            "W must use the prolongation variables {}",
            tau.variety().vars().join(", ")
        )));
    }
    let gb = w.ideal().reduced_gb()?;
    Ok(tau
        .variety()
        .gens_in(w.ring())?
        .iter()
        .all(|g| w.ring().reduce(g, &gb).is_zero()))
}

/// `x1 -> xp1`, `x -> xp`: a `p` before the trailing digits.
pub fn primed(name: &str) -> String {
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    format!("{}p{}", &name[..split], &name[split..])
}

/// `E ⊆ τ(W)` cut out by `τ(α) = ι ∘ π`, with the projection `π_E: E -> W`.
#[derive(Clone, Debug)]
pub struct Equalizer {
    pub variety: AffineVariety,
    /// The added linear equations `v_i - vp_i_0`, `i = 1..d`.
    pub identifications: Vec<KPoly>,
    /// `(variable of E, variable of W)` pairs describing `π_E`.
    pub projection: Vec<(String, String)>,
}

/// Builds `E`. The components of the `W`-variable `v_0` are named `v_i`;
/// those of `v_i` (`i >= 1`) are named `vp_i_j`.
pub fn equalizer(op: &OperatorSpec, v: &AffineVariety, w: &AffineVariety) -> Result<Equalizer> {
    if !is_kernel(op, v, w)? {
        return Err(Error::PreconditionViolated("W is not contained in τ(V)".into()));
    }
    let e = op.algebra().dim();
    let tau_v = prolong(op, v)?;
    // W variable -> (V variable index, component)
    let mut origin: HashMap<&str, (usize, usize)> = HashMap::new();
    for (j, comp) in tau_v.components().iter().enumerate() {
        for (i, name) in comp.iter().enumerate() {
            origin.insert(name.as_str(), (j, i));
        }
    }
    let components: Vec<Vec<String>> = w
        .vars()
        .iter()
        .map(|name| {
            let (j, i) = origin[name.as_str()];
            let comp = &tau_v.components()[j];
            if i == 0 {
                comp.clone()
            } else {
                let base = primed(&v.vars()[j]);
                (0..e).map(|l| format!("{base}_{i}_{l}")).collect()
            }
        })
        .collect();
    let tau_w = prolong_named(op, w, components)?;
    let ring = tau_w.variety().ring().clone();
    let var = |name: &str| ring.var(ring.var_index(name).expect("prolongation variable"));
    let mut identifications = Vec::new();
    let mut projection = Vec::new();
    for (j, x) in v.vars().iter().enumerate() {
        let comp = &tau_v.components()[j];
        projection.push((comp[0].clone(), comp[0].clone()));
        for (i, wi) in comp.iter().enumerate().skip(1) {
            let image = format!("{}_{i}_0", primed(x));
            identifications.push(ring.sub(&var(&comp[i]), &var(&image)));
            projection.push((image, wi.clone()));
        }
    }
    let mut gens = tau_w.variety().gens().to_vec();
    gens.extend(identifications.iter().cloned());
    Ok(Equalizer {
        variety: AffineVariety::in_ring(ring, gens, false),
        identifications,
        projection,
    })
}

/// `I(X) ∩ K[projected vars]`, renamed into `Y`'s variables.
pub fn projection_ideal(
    x: &AffineVariety,
    y: &AffineVariety,
    projection: &[(String, String)],
) -> Result<Ideal<FunctionField>> {
    let keep: Vec<String> = projection.iter().map(|(a, _)| a.clone()).collect();
    let elim = x.ideal().eliminate(&keep)?;
    let map = projection
        .iter()
        .map(|(_, b)| {
            y.ring()
                .var_index(b)
                .ok_or_else(|| Error::VariableMismatch(format!("{b} is not a variable of the target")))
        })
        .collect::<Result<Vec<_>>>()?;
    let gens = elim
        .gens()
        .iter()
        .map(|g| elim.ring().convert(g, y.ring(), &map, |c| c.clone()))
        .collect();
    Ideal::new(y.ring().clone(), gens).reduced()
}

/// The projection `X -> Y` is dominant, decided as equality of the
/// elimination ideal with `I(Y)`; `Y` must be asserted prime.
pub fn dominant(x: &AffineVariety, y: &AffineVariety, projection: &[(String, String)]) -> Result<bool> {
    if !y.prime() {
        return Err(Error::PrimalityNotAsserted);
    }
    if projection.len() != y.vars().len() {
        return Err(Error::VariableMismatch("projection must cover every target variable".into()));
    }
    projection_ideal(x, y, projection)?.equal(&y.ideal())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub kernel_valid: bool,
    pub dominant_w_over_v: bool,
    pub e_generators: Vec<String>,
    /// `I(E) ∩ K[W]`, in the variables of `W`.
    pub e_elimination_ideal: Vec<String>,
    pub dominant_e_over_w: bool,
    pub prolongable: bool,
    pub axiom_premise: bool,
}

/// Checks the premises of the geometric axioms for `(V, W)`: `W` is a
/// B-kernel over `V`, `W -> V` is dominant, and `E -> W` is dominant.
pub fn kernel_check(op: &OperatorSpec, v: &AffineVariety, w: &AffineVariety) -> Result<KernelReport> {
    if !v.prime() || !w.prime() {
        return Err(Error::PrimalityNotAsserted);
    }
    if !is_kernel(op, v, w)? {
        return Ok(KernelReport {
            kernel_valid: false,
            dominant_w_over_v: false,
            e_generators: Vec::new(),
            e_elimination_ideal: Vec::new(),
            dominant_e_over_w: false,
            prolongable: false,
            axiom_premise: false,
        });
    }
    let tau_v = prolong(op, v)?;
    let w_over_v: Vec<(String, String)> = tau_v
        .projection_vars()
        .into_iter()
        .zip(v.vars().iter().cloned())
        .collect();
    let dominant_w_over_v = dominant(w, v, &w_over_v)?;
    let eq = equalizer(op, v, w)?;
    let elim = projection_ideal(&eq.variety, w, &eq.projection)?;
    let dominant_e_over_w = elim.equal(&w.ideal())?;
    Ok(KernelReport {
        kernel_valid: true,
        dominant_w_over_v,
        e_generators: eq.variety.display(),
        e_elimination_ideal: elim.display(),
        dominant_e_over_w,
        prolongable: dominant_e_over_w,
        axiom_premise: dominant_w_over_v && dominant_e_over_w,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberVerdict {
    Consistent,
    Empty,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub fiber: FiberVerdict,
    /// The fiber equations over `L` after substituting the point.
    pub equations: Vec<String>,
}

/// Decides whether the fiber of `τ(W) -> W` over `b ∈ W(L)` has an
/// `L`-point, within the fragment of equations that are linear in some
/// unknown or of the form `u^(p^k) = c`.
pub fn generic_fiber_test(op: &OperatorSpec, w: &AffineVariety, tower: &Tower, b: &[TowerElem]) -> Result<FiberReport> {
    check_point(w, tower, b)?;
    let tau = prolong(op, w)?;
    let assignment: Vec<(String, TowerElem)> = tau.projection_vars().into_iter().zip(b.iter().cloned()).collect();
    fiber_test(tau.variety(), tower, &assignment)
}

/// The same test for `π_E: E -> W` over `b ∈ W(L)`.
pub fn equalizer_fiber_test(
    op: &OperatorSpec,
    v: &AffineVariety,
    w: &AffineVariety,
    tower: &Tower,
    b: &[TowerElem],
) -> Result<FiberReport> {
    check_point(w, tower, b)?;
    let eq = equalizer(op, v, w)?;
    let assignment = eq
        .projection
        .iter()
        .map(|(ev, wv)| {
            let j = w.ring().var_index(wv).expect("projection targets W");
            (ev.clone(), b[j].clone())
        })
        .collect::<Vec<_>>();
    fiber_test(&eq.variety, tower, &assignment)
}

fn check_point(w: &AffineVariety, tower: &Tower, b: &[TowerElem]) -> Result<()> {
    if b.len() != w.vars().len() {
        return Err(Error::DimensionMismatch {
            expected: w.vars().len(),
            got: b.len(),
        });
    }
    if tower.base_field() != w.field() {
        return Err(Error::FieldMismatch("tower is not built over the variety's field".into()));
    }
    for g in w.gens() {
        let val = w.ring().eval_in(g, tower, |c| tower.embed(c), b);
        if !tower.is_zero(&val) {
            return Err(Error::BadEmbedding);
        }
    }
    Ok(())
}

/// Substitutes `assignment` into `I(X)` and decides the remaining system
/// over `L`.
pub fn fiber_test(x: &AffineVariety, tower: &Tower, assignment: &[(String, TowerElem)]) -> Result<FiberReport> {
    let free: Vec<String> = x
        .vars()
        .iter()
        .filter(|v| !assignment.iter().any(|(a, _)| a == *v))
        .cloned()
        .collect();
    let lring = PolyRing::degrevlex(tower.clone(), free);
    let values = x
        .vars()
        .iter()
        .map(|v| match assignment.iter().find(|(a, _)| a == v) {
            Some((_, val)) => Ok(lring.constant(val.clone())),
            None => Ok(lring.var(lring.var_index(v).expect("free variable"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut system: Vec<Poly<TowerElem>> = x
        .gens()
        .iter()
        .map(|g| x.ring().eval_in(g, &lring, |c| lring.constant(tower.embed(c)), &values))
        .filter(|p| !p.is_zero())
        .collect();
    let equations = system.iter().map(|p| lring.display(p)).collect();
    let fiber = solve_system(&lring, &mut system);
    Ok(FiberReport { fiber, equations })
}

fn solve_system(ring: &PolyRing<Tower>, system: &mut Vec<Poly<TowerElem>>) -> FiberVerdict {
    let l = ring.field();
    let p = l.characteristic();
    loop {
        system.retain(|q| !q.is_zero());
        if system.iter().any(|q| ring.is_constant(q)) {
            return FiberVerdict::Empty;
        }
        if system.is_empty() {
            return FiberVerdict::Consistent;
        }
        let Some((u, value)) = find_substitution(ring, system, p) else {
            return FiberVerdict::Undecided;
        };
        let Some(value) = value else {
            return FiberVerdict::Empty;
        };
        let values: Vec<Poly<TowerElem>> = (0..ring.nvars())
            .map(|i| if i == u { value.clone() } else { ring.var(i) })
            .collect();
        *system = system
            .iter()
            .map(|q| ring.eval_in(q, ring, |c| ring.constant(c.clone()), &values))
            .collect();
    }
}

/// Finds an unknown `u` and an equation that determines it:
/// `a*u + r = 0` with `r` free of `u` gives `u = -r/a`; `a*u^(p^k) + c = 0`
/// with `c` constant gives the unique root, or `None` if it is not in `L`.
#[allow(clippy::type_complexity)]
fn find_substitution(
    ring: &PolyRing<Tower>,
    system: &[Poly<TowerElem>],
    p: u32,
) -> Option<(usize, Option<Poly<TowerElem>>)> {
    let l = ring.field();
    for q in system {
        for u in q.support() {
            let with_u: Vec<_> = q.terms().iter().filter(|(m, _)| m.exponents()[u] > 0).collect();
            let [(m, a)] = with_u.as_slice() else {
                continue;
            };
            let deg = m.exponents()[u];
            if m.degree() != deg {
                continue;
            }
            let rest = ring.sub(q, &ring.term(m.clone(), a.clone()));
            let a_inv = l.inv(a).expect("nonzero coefficient");
            let rhs = ring.scale(&l.neg(&a_inv), &rest);
            if deg == 1 {
                return Some((u, Some(rhs)));
            }
            if !is_power_of(deg, p) {
                continue;
            }
            let Some(c) = ring.constant_value(&rhs).or_else(|| rhs.is_zero().then(|| l.zero())) else {
                continue;
            };
            let mut root = c;
            let mut d = deg;
            while d > 1 {
                match l.pth_root(&root) {
                    Some(r) => root = r,
                    None => return Some((u, None)),
                }
                d /= p;
            }
            return Some((u, Some(ring.constant(root))));
        }
    }
    None
}

fn is_power_of(mut n: u32, p: u32) -> bool {
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Census {
    /// `|V(B ⊗ R)|`.
    pub algebra_points: u128,
    /// `|τ(V)(R)|`.
    pub prolongation_points: u128,
}

/// Counts `V(B ⊗ R)` and `τ(V)(R)` by enumeration for `V` over a finite
/// field `k` with the trivial operator.
pub fn adjunction_census(b: &FiniteAlgebra, v: &AffineVariety, r: &CommAlgebra) -> Result<Census> {
    let k = v.field();
    if !k.vars().is_empty() {
        return Err(Error::InvalidInput("census needs a variety over the finite base field".into()));
    }
    if b.field() != k.base() || r.field() != k.base() {
        return Err(Error::FieldMismatch("algebra, ring and variety must share k".into()));
    }
    let op = OperatorSpec::trivial(b.clone(), k.clone())?;
    let tau = prolong(&op, v)?;
    let br = b.algebra().tensor(r)?;
    let n = v.vars().len();
    let algebra_points = count_points(v, &br, n)?;
    let prolongation_points = count_points(tau.variety(), r, n * b.dim())?;
    Ok(Census {
        algebra_points,
        prolongation_points,
    })
}

/// Points of `X` (over `k`) with coordinates in the finite algebra `r`.
fn count_points(x: &AffineVariety, r: &CommAlgebra, nvars: usize) -> Result<u128> {
    let fq: &FiniteField = r.field();
    let size = (fq.order() as u128).pow(r.dim() as u32);
    let total = size
        .checked_pow(nvars as u32)
        .filter(|&t| t <= CENSUS_LIMIT)
        .ok_or(Error::TooLarge(size.saturating_pow(nvars as u32)))?;
    let k = x.field();
    let elems: Vec<Vec<u32>> = (0..size)
        .map(|mut idx| {
            (0..r.dim())
                .map(|_| {
                    let d = (idx % fq.order() as u128) as u32;
                    idx /= fq.order() as u128;
                    d
                })
                .collect()
        })
        .collect();
    let gens: Vec<&KPoly> = x.gens().iter().collect();
    let coeff = |c: &RatFunc| r.from_base(k.as_constant(c).expect("coefficients lie in k"));
    let mut count = 0u128;
    let mut point = vec![r.zero(); nvars];
    for idx in 0..total {
        let mut rest = idx;
        for slot in point.iter_mut() {
            *slot = elems[(rest % size) as usize].clone();
            rest /= size;
        }
        if gens
            .iter()
            .all(|g| r.is_zero(&x.ring().eval_in(g, r, coeff, &point)))
        {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::parse::{parse_poly_over_k, parse_ratfunc, parse_tower_elem};

    fn fp(p: u32) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    fn variety(k: &FunctionField, vars: &[&str], gens: &[&str]) -> AffineVariety {
        let ring = PolyRing::degrevlex(k.clone(), vars.iter().map(|s| s.to_string()).collect());
        let gens = gens.iter().map(|g| parse_poly_over_k(&ring, g).unwrap()).collect();
        AffineVariety::new(k.clone(), ring.vars().to_vec(), gens, true).unwrap()
    }

    fn trivial(p: u32, e: usize, kvars: &[&str]) -> OperatorSpec {
        let b = FiniteAlgebra::truncated_poly(fp(p), e).unwrap();
        let k = FunctionField::new(fp(p), kvars.iter().map(|s| s.to_string()).collect());
        OperatorSpec::trivial(b, k).unwrap()
    }

    #[test]
    fn prolongation_examples() {
        let op = trivial(3, 2, &[]);
        let v = variety(op.field(), &["x1", "x2"], &["x2 - x1^2"]);
        let tau = prolong(&op, &v).unwrap();
        assert_eq!(tau.variety().display(), ["-x1_0^2 + x2_0", "x1_0*x1_1 + x2_1"]);
        let op2 = trivial(2, 2, &[]);
        let v2 = variety(op2.field(), &["x1", "x2"], &["x2 - x1^2"]);
        assert_eq!(prolong(&op2, &v2).unwrap().variety().display(), ["x1_0^2 + x2_0", "x2_1"]);
        let a1 = variety(trivial(2, 3, &[]).field(), &["x"], &[]);
        let tau = prolong(&trivial(2, 3, &[]), &a1).unwrap();
        assert_eq!(tau.variety().vars(), ["x_0", "x_1", "x_2"]);
        assert!(tau.variety().gens().is_empty());
    }

    #[test]
    fn equalizer_of_example_configuration() {
        let op = trivial(3, 3, &[]);
        let v = variety(op.field(), &["x1"], &[]);
        let w = variety(op.field(), &["x1_0", "x1_1", "x1_2"], &[]);
        let eq = equalizer(&op, &v, &w).unwrap();
        let shown: Vec<String> = eq.identifications.iter().map(|p| eq.variety.ring().display(p)).collect();
        assert_eq!(shown, ["x1_1 - xp1_1_0", "x1_2 - xp1_2_0"]);
        assert_eq!(eq.variety.vars().len(), 9);
    }

    #[test]
    fn kernel_prolongation_positive_case() {
        let op = trivial(3, 2, &[]);
        let v = variety(op.field(), &["x"], &[]);
        let w = variety(op.field(), &["x_0", "x_1"], &["x_1 - x_0"]);
        let r = kernel_check(&op, &v, &w).unwrap();
        assert!(r.kernel_valid && r.dominant_w_over_v && r.dominant_e_over_w && r.axiom_premise);
        assert_eq!(r.e_elimination_ideal, ["x_0 - x_1"]);
        assert_eq!(r.e_generators, ["-x_0 + xp_1_0", "-x_1 + xp_1_1", "x_1 - xp_1_0"]);
    }

    #[test]
    fn kernel_membership() {
        let op = trivial(2, 2, &[]);
        let v = variety(op.field(), &["x1", "x2"], &["x2 - x1^2"]);
        let tau_vars = ["x1_0", "x1_1", "x2_0", "x2_1"];
        let w = variety(op.field(), &tau_vars, &["x2_0 - x1_0^2", "x2_1"]);
        assert!(is_kernel(&op, &v, &w).unwrap());
        let w_bad = variety(op.field(), &tau_vars, &["x2_0 - x1_0^2", "x2_1 - 1"]);
        assert!(!is_kernel(&op, &v, &w_bad).unwrap());
        let w_wrong = variety(op.field(), &["a", "b"], &[]);
        assert!(matches!(is_kernel(&op, &v, &w_wrong), Err(Error::VariableMismatch(_))));
        let r = kernel_check(&op, &v, &w_bad).unwrap();
        assert!(!r.kernel_valid && !r.axiom_premise);
    }

    #[test]
    fn dominance() {
        let op = trivial(2, 2, &[]);
        let v = variety(op.field(), &["x1", "x2"], &["x2 - x1^2"]);
        let tau = prolong(&op, &v).unwrap();
        let x = variety(op.field(), tau.variety().vars().iter().map(String::as_str).collect::<Vec<_>>().as_slice(), &["x1_0", "x2_0 - x1_0^2", "x2_1"]);
        let proj: Vec<(String, String)> = tau.projection_vars().into_iter().zip(v.vars().iter().cloned()).collect();
        assert!(!dominant(&x, &v, &proj).unwrap());
        assert!(dominant(tau.variety(), &v, &proj).unwrap());
        let mut not_prime = v.clone();
        not_prime.prime = false;
        assert_eq!(dominant(&x, &not_prime, &proj), Err(Error::PrimalityNotAsserted));
    }

    #[test]
    fn nabla_points() {
        let b = FiniteAlgebra::truncated_poly(fp(2), 2).unwrap();
        let k = FunctionField::new(fp(2), vec!["u".into()]);
        let op = OperatorSpec::new(b, k.clone(), vec![vec![k.var(0), k.one()]]).unwrap();
        let a1 = variety(&k, &["x"], &[]);
        let a = parse_ratfunc(&k, "u^2 + u").unwrap();
        let img = nabla_point(&op, &a1, &[a.clone()]).unwrap();
        assert_eq!(img, vec![a, k.one()]);
        let line = variety(&k, &["x"], &["x - u"]);
        assert_eq!(nabla_point(&op, &line, &[k.one()]), Err(Error::PointNotOnVariety));
    }

    fn counterexample(e: usize) -> (OperatorSpec, AffineVariety, Tower) {
        let b = FiniteAlgebra::truncated_poly(fp(2), e).unwrap();
        let k = FunctionField::new(fp(2), vec!["x".into(), "y".into()]);
        let (x, y) = (k.var(0), k.var(1));
        let mut dx = vec![x.clone(), k.zero()];
        let mut dy = vec![y.clone(), k.zero()];
        if e == 3 {
            dx.push(y.clone());
            dy.push(k.zero());
        }
        let op = OperatorSpec::new(b, k.clone(), vec![dx, dy]).unwrap();
        let w = variety(&k, &["X"], &["X^2 - x"]);
        let l = Tower::new(k.clone(), vec!["z".into()], vec![x]).unwrap();
        (op, w, l)
    }

    #[test]
    fn counterexample_fiber_is_empty() {
        let (op, w, l) = counterexample(3);
        let b = parse_tower_elem(&l, "z").unwrap();
        let r = generic_fiber_test(&op, &w, &l, &[b.clone()]).unwrap();
        assert_eq!(r.fiber, FiberVerdict::Empty);
        assert_eq!(r.equations, ["X_1^2 + y"]);
        let (op2, w2, l2) = counterexample(2);
        let r = generic_fiber_test(&op2, &w2, &l2, &[parse_tower_elem(&l2, "z").unwrap()]).unwrap();
        assert_eq!(r.fiber, FiberVerdict::Consistent);
        let bad = parse_tower_elem(&l, "z + 1").unwrap();
        assert_eq!(generic_fiber_test(&op, &w, &l, &[bad]), Err(Error::BadEmbedding));
    }

    #[test]
    fn linear_fibers_are_solved() {
        let op = trivial(3, 2, &["s"]);
        let k = op.field().clone();
        let v = variety(&k, &["x"], &[]);
        let w = variety(&k, &["x_0", "x_1"], &["x_1 - s*x_0"]);
        let l = Tower::trivial(k.clone());
        let b = vec![l.embed(&k.var(0)), l.embed(&k.pow(&k.var(0), 2))];
        let r = equalizer_fiber_test(&op, &v, &w, &l, &b).unwrap();
        assert_eq!(r.fiber, FiberVerdict::Consistent);
    }

    #[test]
    fn census_counts_agree() {
        let k = FunctionField::new(fp(2), vec![]);
        let b = FiniteAlgebra::truncated_poly(fp(2), 2).unwrap();
        let v = variety(&k, &["x1", "x2"], &["x2 - x1^2"]);
        let r = CommAlgebra::split(fp(2), 1).unwrap();
        let c = adjunction_census(&b, &v, &r).unwrap();
        assert_eq!((c.algebra_points, c.prolongation_points), (4, 4));
        let big = CommAlgebra::split(fp(2), 12).unwrap();
        assert!(matches!(adjunction_census(&b, &v, &big), Err(Error::TooLarge(_))));
    }
}

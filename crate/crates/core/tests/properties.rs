//! Randomized law checks with fixed seeds.

use bopfield_core::algebra::{CommAlgebra, FiniteAlgebra};
use bopfield_core::basefield::parse::{parse_poly, parse_poly_over_k, parse_ratfunc};
use bopfield_core::basefield::{
    Field, FiniteField, FunctionField, Monomial, Poly, PolyRing, RatFunc, Ring, Tower,
};
use bopfield_core::groebner::Ideal;
use bopfield_core::operator::{BOperator, OperatorSpec};
use bopfield_core::scheme::{nabla_point, prolong, projection_ideal, AffineVariety};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fp(p: u32) -> FiniteField {
    FiniteField::prime(p).unwrap()
}

fn elem(rng: &mut ChaCha8Rng, k: &FiniteField) -> u32 {
    let digits: Vec<u32> = (0..k.degree()).map(|_| rng.gen_range(0..k.p())).collect();
    k.from_digits(&digits)
}

fn poly(rng: &mut ChaCha8Rng, ring: &PolyRing<FiniteField>, deg: u32, terms: usize) -> Poly<u32> {
    let n = ring.nvars();
    let terms = (0..terms)
        .map(|_| {
            let mut e = vec![0u32; n];
            let mut left = rng.gen_range(0..=deg);
            for x in e.iter_mut() {
                let d = rng.gen_range(0..=left);
                *x = d;
                left -= d;
            }
            (Monomial::from_exponents(e), elem(rng, ring.field()))
        })
        .collect();
    ring.from_terms(terms)
}

fn ratfunc(rng: &mut ChaCha8Rng, k: &FunctionField) -> RatFunc {
    let ring = k.poly_ring();
    let num = poly(rng, ring, 3, 3);
    let mut den = poly(rng, ring, 2, 2);
    if den.is_zero() {
        den = ring.one();
    }
    k.fraction(num, den).unwrap()
}

/// Operators with local algebras, so fractions are allowed.
fn operators() -> Vec<OperatorSpec> {
    let spec = |alg: FiniteAlgebra, vars: &[&str], images: &[&[&str]]| {
        let k = FunctionField::new(alg.field().clone(), vars.iter().map(|s| s.to_string()).collect());
        let images = images
            .iter()
            .map(|img| img.iter().map(|s| parse_ratfunc(&k, s).unwrap()).collect())
            .collect();
        OperatorSpec::new(alg, k, images).unwrap()
    };
    let dual2 = FiniteAlgebra::truncated_poly(fp(2), 2).unwrap();
    let f4 = FiniteField::new(2, &[1, 1, 1]).unwrap();
    vec![
        spec(FiniteAlgebra::truncated_poly(fp(3), 2).unwrap(), &["y"], &[&["y", "1"]]),
        spec(
            FiniteAlgebra::truncated_poly(fp(2), 3).unwrap(),
            &["x", "y"],
            &[&["x", "0", "y"], &["y", "0", "0"]],
        ),
        spec(FiniteAlgebra::truncated_poly(fp(3), 3).unwrap(), &["y"], &[&["y", "1", "y^2"]]),
        spec(dual2.fiber_product(&dual2).unwrap(), &["y"], &[&["y", "1", "y"]]),
        spec(FiniteAlgebra::truncated_poly(f4, 2).unwrap(), &["y", "w"], &[&["y", "g"], &["w", "y*w"]]),
    ]
}

#[test]
fn apply_is_a_ring_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    for op in operators() {
        let k = op.field().clone();
        let t = op.tensor_ring();
        for _ in 0..100 {
            let (f, g) = (ratfunc(&mut rng, &k), ratfunc(&mut rng, &k));
            let (df, dg) = (op.apply(&f).unwrap(), op.apply(&g).unwrap());
            assert_eq!(op.apply(&k.mul(&f, &g)).unwrap(), t.mul(&df, &dg), "{op:?}");
            assert_eq!(op.apply(&k.add(&f, &g)).unwrap(), t.add(&df, &dg), "{op:?}");
            assert_eq!(df[0], f);
        }
        assert_eq!(op.apply(&k.one()).unwrap(), t.one());
    }
}

#[test]
fn pth_powers_are_constants_under_assumption2() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for op in operators() {
        if !op.algebra().assumption2() {
            assert!(op.check_frl(&op.field().one()).is_err());
            continue;
        }
        for _ in 0..50 {
            let f = ratfunc(&mut rng, op.field());
            assert!(op.check_frl(&f).unwrap());
            checked += 1;
        }
    }
    assert!(checked >= 150);
}

#[test]
fn local_inverses() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for op in operators() {
        let k = op.field().clone();
        let t = op.tensor_ring();
        for _ in 0..50 {
            let mut u: Vec<RatFunc> = (0..t.dim()).map(|_| ratfunc(&mut rng, &k)).collect();
            if k.is_zero(&u[0]) {
                u[0] = k.one();
            }
            let inv = op.invert(&u).unwrap();
            assert_eq!(t.mul(&u, &inv), t.one());
        }
    }
}

#[test]
fn frobenius_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for p in [2, 3] {
        let k = FunctionField::new(fp(p), vec!["x".into(), "y".into()]);
        let l = Tower::new(k.clone(), vec!["z".into()], vec![k.var(0)]).unwrap();
        for _ in 0..50 {
            let (a, b) = (ratfunc(&mut rng, &k), ratfunc(&mut rng, &k));
            assert_eq!(k.frobenius(&k.add(&a, &b)), k.add(&k.frobenius(&a), &k.frobenius(&b)));
            let za = l.add(&l.embed(&a), &l.mul(&l.generator(0), &l.embed(&b)));
            let zb = l.embed(&ratfunc(&mut rng, &k));
            assert_eq!(l.frobenius(&l.add(&za, &zb)), l.add(&l.frobenius(&za), &l.frobenius(&zb)));
            assert_eq!(l.frobenius(&za), l.pow(&za, p as u64));
            assert_eq!(l.pth_root(&l.frobenius(&za)), Some(za));
        }
    }
}

#[test]
fn groebner_bases_ignore_generator_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for p in [2, 3] {
        let ring = PolyRing::degrevlex(fp(p), vec!["x".into(), "y".into(), "z".into()]);
        for _ in 0..40 {
            let mut gens: Vec<Poly<u32>> = (0..3).map(|_| poly(&mut rng, &ring, 3, 3)).collect();
            let gb = Ideal::new(ring.clone(), gens.clone()).reduced_gb().unwrap();
            gens.shuffle(&mut rng);
            let c = elem(&mut rng, ring.field()).max(1);
            gens[0] = ring.scale(&c, &gens[0]);
            gens.push(ring.mul(&gens[1], &poly(&mut rng, &ring, 1, 2)));
            assert_eq!(Ideal::new(ring.clone(), gens).reduced_gb().unwrap(), gb);
        }
    }
}

fn points(n: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..1u32 << n).map(move |m| (0..n).map(|i| (m >> i) & 1).collect())
}

#[test]
fn elimination_matches_brute_force_over_f2() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let k = fp(2);
    let ring = PolyRing::degrevlex(k.clone(), vec!["x".into(), "y".into(), "z".into()]);
    let field_eqs: Vec<Poly<u32>> = ["x^2 + x", "y^2 + y", "z^2 + z"]
        .iter()
        .map(|s| parse_poly(&ring, s).unwrap())
        .collect();
    let keep = vec!["y".to_string(), "z".to_string()];
    for _ in 0..60 {
        let mut gens: Vec<Poly<u32>> = (0..2).map(|_| poly(&mut rng, &ring, 3, 3)).collect();
        gens.extend(field_eqs.iter().cloned());
        let ideal = Ideal::new(ring.clone(), gens.clone());
        let elim = ideal.eliminate(&keep).unwrap();
        let sub = elim.ring().clone();
        let zeros: Vec<Vec<u32>> = points(3)
            .filter(|pt| gens.iter().all(|g| ring.eval(g, pt) == 0))
            .collect();
        for pt in points(2) {
            let on_elim = elim.gens().iter().all(|g| sub.eval(g, &pt) == 0);
            let projected = zeros.iter().any(|z| z[1..] == pt[..]);
            assert_eq!(on_elim, projected, "{:?} at {pt:?}", ideal.display());
        }
        // membership: elements of the elimination ideal lie in I
        let map = sub.var_map_to(&ring).unwrap();
        for g in elim.gens() {
            assert!(ideal.member(&sub.convert(g, &ring, &map, |c| *c)).unwrap());
        }
    }
}

fn variety(k: &FunctionField, vars: &[&str], gens: &[&str]) -> AffineVariety {
    let ring = PolyRing::degrevlex(k.clone(), vars.iter().map(|s| s.to_string()).collect());
    let gens = gens.iter().map(|g| parse_poly_over_k(&ring, g).unwrap()).collect();
    AffineVariety::new(k.clone(), ring.vars().to_vec(), gens, true).unwrap()
}

#[test]
fn nabla_points_lie_on_the_prolongation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for op in operators() {
        let k = op.field().clone();
        let v = variety(&k, &["a", "b"], &["b - a^2 - a"]);
        for _ in 0..20 {
            let a = ratfunc(&mut rng, &k);
            let b = k.add(&k.mul(&a, &a), &a);
            let img = nabla_point(&op, &v, &[a, b]).unwrap();
            let tau = prolong(&op, &v).unwrap();
            let tv = tau.variety();
            assert!(tv.gens().iter().all(|g| k.is_zero(&tv.ring().eval(g, &img))));
        }
    }
}

#[test]
fn prolongation_commutes_with_dropping_graph_coordinates() {
    for op in operators() {
        let k = op.field().clone();
        let e = op.algebra().dim();
        for (gens, kept_gens) in [
            (vec!["x2 - x1^2"], vec![]),
            (vec!["x1^2 + x1 + 1", "x2 - x1^3"], vec!["x1^2 + x1 + 1"]),
        ] {
            let v = variety(&k, &["x1", "x2"], &gens);
            let v1 = variety(&k, &["x1"], &kept_gens);
            let tau = prolong(&op, &v).unwrap();
            let tau1 = prolong(&op, &v1).unwrap();
            let proj: Vec<(String, String)> = (0..e)
                .map(|i| (format!("x1_{i}"), format!("x1_{i}")))
                .collect();
            let elim = projection_ideal(tau.variety(), tau1.variety(), &proj).unwrap();
            assert!(elim.equal(&tau1.variety().ideal()).unwrap(), "{op:?} {gens:?}");
        }
    }
}

/// `k[X]/(f)` with `f(0) = 0` augmented by `X -> 0`.
fn monogenic_at_zero(p: u32, f: &[u32]) -> FiniteAlgebra {
    let alg = CommAlgebra::monogenic(fp(p), f, "t").unwrap();
    let mut pi = vec![0; alg.dim()];
    pi[0] = 1;
    FiniteAlgebra::new(alg, pi).unwrap()
}

#[test]
fn locality_methods_agree_on_random_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..80 {
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let deg = rng.gen_range(1..=4);
        let mut f: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
        f[0] = 0;
        f.push(1);
        let b = monogenic_at_zero(p, &f);
        assert_eq!(b.is_local_by_powers(), b.is_local_by_nilradical());
        let pure_power = f[..deg].iter().all(|&c| c == 0);
        assert_eq!(b.is_local().unwrap(), pure_power, "{f:?}");
    }
}

/// Reorders `b1..bd`, keeping `b0` in place.
fn permuted(b: &FiniteAlgebra, perm: &[usize]) -> FiniteAlgebra {
    let alg = b.algebra();
    let e = alg.dim();
    let mut order = vec![0];
    order.extend(perm.iter().map(|&i| i + 1));
    let pos: Vec<usize> = (0..e).map(|i| order.iter().position(|&o| o == i).unwrap()).collect();
    let remap = |v: &[u32]| {
        let mut out = vec![0; e];
        for (i, &c) in v.iter().enumerate() {
            out[pos[i]] = c;
        }
        out
    };
    let table = order
        .iter()
        .map(|&i| order.iter().map(|&j| remap(&alg.table()[i][j])).collect())
        .collect();
    let names = order.iter().map(|&i| alg.names()[i].clone()).collect();
    let alg = CommAlgebra::new(alg.field().clone(), names, table, remap(alg.unit())).unwrap();
    FiniteAlgebra::new(alg, remap(b.pi())).unwrap()
}

#[test]
fn classification_ignores_basis_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let dual2 = FiniteAlgebra::truncated_poly(fp(2), 2).unwrap();
    let algebras = [
        FiniteAlgebra::truncated_poly(fp(2), 3).unwrap(),
        FiniteAlgebra::truncated_poly(fp(3), 4).unwrap(),
        dual2.fiber_product(&dual2).unwrap(),
        dual2.direct_product(&CommAlgebra::split(fp(2), 1).unwrap()).unwrap(),
    ];
    for b in &algebras {
        let base = b.companionability().unwrap();
        for _ in 0..5 {
            let mut perm: Vec<usize> = (0..b.dim() - 1).collect();
            perm.shuffle(&mut rng);
            let r = permuted(b, &perm).companionability().unwrap();
            assert_eq!((r.companionable, r.clause, r.local), (base.companionable, base.clause, base.local));
            assert_eq!((r.cond1, r.cond2, r.assumption2), (base.cond1, base.cond2, base.assumption2));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn f9_field_axioms(a in 0u32..9, b in 0u32..9, c in 0u32..9) {
        let k = FiniteField::new(3, &[1, 0, 1]).unwrap();
        let (a, b, c) = (k.from_digits(&[a % 3, a / 3]), k.from_digits(&[b % 3, b / 3]), k.from_digits(&[c % 3, c / 3]));
        prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
        prop_assert_eq!(k.frobenius(&k.add(&a, &b)), k.add(&k.frobenius(&a), &k.frobenius(&b)));
        if !k.is_zero(&a) {
            prop_assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
        }
        prop_assert_eq!(k.frobenius(&k.pth_root(&a).unwrap()), a);
    }

    #[test]
    fn polynomial_pth_roots(coeffs in prop::collection::vec(0u32..3, 1..5)) {
        let k = FunctionField::new(fp(3), vec!["y".into()]);
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (Monomial::from_exponents(vec![i as u32]), c))
            .collect();
        let f = k.from_poly(k.poly_ring().from_terms(terms));
        prop_assert_eq!(k.pth_root(&k.frobenius(&f)), Some(f.clone()));
        let shifted = k.mul(&f, &k.var(0));
        if !k.is_zero(&f) {
            prop_assert!(k.pth_root(&k.frobenius(&shifted)).is_some());
            prop_assert_eq!(k.lambda0(&shifted) == k.zero(), k.pth_root(&shifted).is_none());
        }
    }
}

//! Multivariate gcd over `F_q` by recursive primitive pseudo-remainder
//! sequences.

use super::{FiniteField, Poly, PolyRing, Ring};

type P = Poly<u32>;

/// Monic gcd of `a` and `b`; `gcd(0, 0) = 0`.
pub(crate) fn gcd(ring: &PolyRing<FiniteField>, a: &P, b: &P) -> P {
    if a.is_zero() {
        return ring.monic(b);
    }
    if b.is_zero() {
        return ring.monic(a);
    }
    if ring.is_constant(a) || ring.is_constant(b) {
        return ring.one();
    }
    if a == b {
        return ring.monic(a);
    }
    let sa = a.support();
    let sb = b.support();
    let v = *sa.iter().chain(&sb).max().expect("non-constant polynomial");
    let in_a = a.degree_in(v) > 0;
    let in_b = b.degree_in(v) > 0;
    match (in_a, in_b) {
        (true, false) => gcd(ring, &content(ring, a, v), b),
        (false, true) => gcd(ring, a, &content(ring, b, v)),
        _ => {
            let ca = content(ring, a, v);
            let cb = content(ring, b, v);
            let c = gcd(ring, &ca, &cb);
            let mut x = ring.divide_exact(a, &ca).expect("content divides");
            let mut y = ring.divide_exact(b, &cb).expect("content divides");
            if x.degree_in(v) < y.degree_in(v) {
                std::mem::swap(&mut x, &mut y);
            }
            while !y.is_zero() {
                let r = prem(ring, &x, &y, v);
                x = y;
                y = if r.is_zero() {
                    r
                } else {
                    primitive_part(ring, &r, v)
                };
            }
            let g = primitive_part(ring, &x, v);
            ring.monic(&ring.mul(&c, &g))
        }
    }
}

/// Gcd of the coefficients of `p` as a polynomial in variable `v`.
fn content(ring: &PolyRing<FiniteField>, p: &P, v: usize) -> P {
    let mut acc = ring.zero();
    for c in ring.coeffs_in(p, v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(ring, &acc, &c);
        if ring.is_constant(&acc) {
            return ring.one();
        }
    }
    acc
}

fn primitive_part(ring: &PolyRing<FiniteField>, p: &P, v: usize) -> P {
    let c = content(ring, p, v);
    ring.divide_exact(p, &c).expect("content divides")
}

/// A pseudo-remainder of `x` by `y` with respect to `v`.
fn prem(ring: &PolyRing<FiniteField>, x: &P, y: &P, v: usize) -> P {
    let dy = y.degree_in(v);
    let ycoeffs = ring.coeffs_in(y, v);
    let lcy = &ycoeffs[dy as usize];
    let mut r = x.clone();
    while !r.is_zero() && r.degree_in(v) >= dy {
        let dr = r.degree_in(v);
        let lcr = ring.coeffs_in(&r, v).swap_remove(dr as usize);
        let mut shift = vec![0; ring.nvars()];
        shift[v] = dr - dy;
        let shifted = ring.mul(&lcr, &ring.mul_term(y, &super::Monomial::from_exponents(shift), &1));
        r = ring.sub(&ring.mul(lcy, &r), &shifted);
    }
    r
}

//! Buchberger's algorithm with the normal selection strategy, reduced
//! bases, ideal membership and elimination.

use crate::basefield::{Field, Monomial, MonomialOrder, Poly, PolyRing, Ring};
use crate::error::{Error, Result};

/// Default cap on S-polynomial reductions per basis computation.
pub const DEFAULT_BUDGET: usize = 200_000;

/// The reduced Gröbner basis of `gens`: monic, sorted by descending leading
/// monomial. Fails with `BudgetExceeded` after `budget` S-pair reductions.
pub fn reduced_gb<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Poly<F::Elem>],
    budget: usize,
) -> Result<Vec<Poly<F::Elem>>> {
    let order = ring.order();
    let lm = |p: &Poly<F::Elem>| p.leading().expect("basis elements are nonzero").0.clone();

    let mut basis: Vec<Poly<F::Elem>> = Vec::new();
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    let add = |basis: &mut Vec<Poly<F::Elem>>, pairs: &mut Vec<(usize, usize, Monomial)>, g: Poly<F::Elem>| {
        let j = basis.len();
        let gm = lm(&g);
        for (i, b) in basis.iter().enumerate() {
            pairs.push((i, j, lm(b).lcm(&gm)));
        }
        basis.push(g);
    };

    for g in gens {
        let r = ring.reduce(g, &basis);
        if !r.is_zero() {
            if ring.is_constant(&r) {
                return Ok(vec![ring.one()]);
            }
            add(&mut basis, &mut pairs, ring.monic(&r));
        }
    }

    let mut steps = 0usize;
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first, ties by index
        let pos = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                order
                    .cmp(&pa.2, &pb.2)
                    .then((pa.1, pa.0).cmp(&(pb.1, pb.0)))
            })
            .expect("nonempty");
        let (i, j, l) = pairs.remove(pos);
        let (mi, mj) = (lm(&basis[i]), lm(&basis[j]));
        if mi.coprime(&mj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&l)
                && !pending(&pairs, i, k)
                && !pending(&pairs, j, k)
        });
        if chain {
            continue;
        }
        steps += 1;
        if steps > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let s = spoly(ring, &basis[i], &basis[j], &l);
        let r = ring.reduce(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if ring.is_constant(&r) {
            return Ok(vec![ring.one()]);
        }
        add(&mut basis, &mut pairs, ring.monic(&r));
    }

    // minimal basis: drop elements whose leading monomial is divisible by
    // another's (the earlier one wins on equality)
    let lms: Vec<Monomial> = basis.iter().map(lm).collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|j| {
                j != i && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i)
            })
        })
        .collect();
    let minimal: Vec<Poly<F::Elem>> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut reduced: Vec<Poly<F::Elem>> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Poly<F::Elem>> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            ring.monic(&ring.reduce(&minimal[i], &others))
        })
        .collect();
    reduced.sort_by(|a, b| order.cmp(&lm(b), &lm(a)));
    Ok(reduced)
}

fn pending(pairs: &[(usize, usize, Monomial)], a: usize, b: usize) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    pairs.iter().any(|&(i, j, _)| i == lo && j == hi)
}

fn spoly<F: Field>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
    g: &Poly<F::Elem>,
    l: &Monomial,
) -> Poly<F::Elem> {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let k = ring.field();
    let a = ring.mul_term(f, &fm.quotient_of(l), &k.inv(fc).expect("nonzero"));
    let b = ring.mul_term(g, &gm.quotient_of(l), &k.inv(gc).expect("nonzero"));
    ring.sub(&a, &b)
}

/// A finitely generated ideal of a polynomial ring.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: PolyRing<F>,
    gens: Vec<Poly<F::Elem>>,
    budget: usize,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: PolyRing<F>, gens: Vec<Poly<F::Elem>>) -> Self {
        Ideal {
            ring,
            gens,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<F::Elem>] {
        &self.gens
    }

    pub fn reduced_gb(&self) -> Result<Vec<Poly<F::Elem>>> {
        reduced_gb(&self.ring, &self.gens, self.budget)
    }

    /// The ideal presented by its reduced Gröbner basis.
    pub fn reduced(&self) -> Result<Ideal<F>> {
        Ok(Ideal {
            ring: self.ring.clone(),
            gens: self.reduced_gb()?,
            budget: self.budget,
        })
    }

    pub fn member(&self, f: &Poly<F::Elem>) -> Result<bool> {
        let gb = self.reduced_gb()?;
        Ok(self.ring.reduce(f, &gb).is_zero())
    }

    pub fn equal(&self, other: &Ideal<F>) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.reduced_gb()? == other.reduced_gb()?)
    }

    /// `self ⊆ other`.
    pub fn contained_in(&self, other: &Ideal<F>) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let gb = other.reduced_gb()?;
        Ok(self.gens.iter().all(|g| self.ring.reduce(g, &gb).is_zero()))
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.reduced_gb()?.first().is_some_and(|g| self.ring.is_constant(g)))
    }

    /// `I ∩ K[keep]`, returned in the degrevlex ring on `keep` (in the
    /// given order).
    pub fn eliminate(&self, keep: &[String]) -> Result<Ideal<F>> {
        let vars = self.ring.vars();
        for v in keep {
            if self.ring.var_index(v).is_none() {
                return Err(Error::VariableMismatch(format!("{v} is not a variable of the ring")));
            }
        }
        let mut order: Vec<String> = vars.iter().filter(|v| !keep.contains(v)).cloned().collect();
        let block = order.len();
        order.extend_from_slice(keep);
        let elim_ring = PolyRing::new(
            self.ring.field().clone(),
            order,
            MonomialOrder::Elimination { block },
        );
        let map = self.ring.var_map_to(&elim_ring)?;
        let gens: Vec<Poly<F::Elem>> = self
            .gens
            .iter()
            .map(|g| self.ring.convert(g, &elim_ring, &map, |c| c.clone()))
            .collect();
        let gb = reduced_gb(&elim_ring, &gens, self.budget)?;
        let target = PolyRing::degrevlex(self.ring.field().clone(), keep.to_vec());
        let back: Vec<usize> = (0..elim_ring.nvars())
            .map(|i| i.saturating_sub(block))
            .collect();
        let kept: Vec<Poly<F::Elem>> = gb
            .iter()
            .filter(|g| g.support().iter().all(|&i| i >= block))
            .map(|g| elim_ring.convert(g, &target, &back, |c| c.clone()))
            .collect();
        Ideal::new(target, kept).with_budget(self.budget).reduced()
    }

    pub fn display(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.display(g)).collect()
    }
}

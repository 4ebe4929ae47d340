use std::fmt;
use std::sync::Arc;

use super::{CoeffRepr, Field, Ring};
use crate::error::{Error, Result};

const TABLE_LIMIT: u32 = 1 << 16;
const ORDER_LIMIT: u64 = 1 << 31;

/// The finite field `F_q = F_p[g]/(min_poly)`.
///
/// Elements are encoded as `u32` integers `sum c_i p^i`, where `c_i` is the
/// coefficient of `g^i`.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<FqInner>,
}

struct FqInner {
    p: u32,
    n: usize,
    q: u32,
    /// Monic defining polynomial, ascending, length `n + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.q)?;
        if self.inner.n > 1 {
            write!(f, "[g]/({:?})", self.inner.modulus)?;
        }
        Ok(())
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    /// Builds `F_p[g]/(min_poly)`; coefficients ascending, reduced mod `p`.
    pub fn new(p: u32, min_poly: &[i64]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let mut modulus: Vec<u32> = min_poly
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u32)
            .collect();
        upoly::trim(&mut modulus);
        if modulus.len() < 2 {
            return Err(Error::InvalidField(
                "defining polynomial must have degree at least 1".into(),
            ));
        }
        let lead_inv = inv_mod(*modulus.last().unwrap(), p);
        for c in modulus.iter_mut() {
            *c = mul_mod(*c, lead_inv, p);
        }
        let n = modulus.len() - 1;
        let q = (p as u64)
            .checked_pow(n as u32)
            .filter(|&q| q < ORDER_LIMIT)
            .ok_or_else(|| Error::InvalidField(format!("field of order {p}^{n} is too large")))?;
        if !upoly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!(
                "defining polynomial {:?} is reducible over F_{p}",
                min_poly
            )));
        }
        let mut inner = FqInner {
            p,
            n,
            q: q as u32,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if n > 1 && inner.q <= TABLE_LIMIT {
            inner.build_tables();
        }
        Ok(FiniteField {
            inner: Arc::new(inner),
        })
    }

    /// The prime field `F_p`, with `g = 0`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, &[0, 1])
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.n
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Defining polynomial, monic, ascending coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The distinguished generator `g`, a root of the defining polynomial.
    pub fn generator(&self) -> u32 {
        if self.inner.n == 1 {
            (self.inner.p - self.inner.modulus[0]) % self.inner.p
        } else {
            self.inner.p
        }
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.inner.p as i64) as u32
    }

    /// Reduces a decimal literal of arbitrary length mod `p`.
    pub fn from_decimal(&self, digits: &str) -> u32 {
        let p = self.inner.p as u64;
        digits
            .bytes()
            .filter(u8::is_ascii_digit)
            .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p) as u32
    }

    /// Coefficients of `a` as a polynomial in `g` over `F_p`, length `n`.
    pub fn to_digits(&self, a: u32) -> Vec<u32> {
        let p = self.inner.p;
        let mut out = vec![0; self.inner.n];
        let mut x = a;
        for d in out.iter_mut() {
            *d = x % p;
            x /= p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        let p = self.inner.p;
        let mut acc = 0u32;
        for &d in digits.iter().rev() {
            acc = acc * p + d % p;
        }
        acc
    }

    /// Every element of the field, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.inner.q
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        let prod = upoly::mul(&self.to_digits(a), &self.to_digits(b), p);
        let r = upoly::rem(&prod, &self.inner.modulus, p);
        self.from_digits(&r)
    }
}

impl FqInner {
    fn build_tables(&mut self) {
        let field = FiniteField {
            inner: Arc::new(FqInner {
                p: self.p,
                n: self.n,
                q: self.q,
                modulus: self.modulus.clone(),
                exp: Vec::new(),
                log: Vec::new(),
            }),
        };
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        let gen = (2..self.q)
            .find(|&c| {
                factors
                    .iter()
                    .all(|&r| field.pow(&c, order / r) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for i in 0..order as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = field.mul_slow(x, gen);
        }
        self.exp = exp;
        self.log = log;
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime: a^(p-2)
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

impl Ring for FiniteField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let p = self.inner.p;
        if self.inner.n == 1 {
            return ((*a as u64 + *b as u64) % p as u64) as u32;
        }
        let (mut x, mut y) = (*a, *b);
        let (mut acc, mut place) = (0u32, 1u32);
        for _ in 0..self.inner.n {
            acc += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        acc
    }

    fn neg(&self, a: &u32) -> u32 {
        let p = self.inner.p;
        if self.inner.n == 1 {
            return (p - *a) % p;
        }
        let mut x = *a;
        let (mut acc, mut place) = (0u32, 1u32);
        for _ in 0..self.inner.n {
            acc += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        acc
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        if self.inner.n == 1 {
            return mul_mod(*a, *b, self.inner.p);
        }
        if !self.inner.exp.is_empty() {
            let order = self.inner.q - 1;
            let l = (self.inner.log[*a as usize] as u64 + self.inner.log[*b as usize] as u64)
                % order as u64;
            return self.inner.exp[l as usize];
        }
        self.mul_slow(*a, *b)
    }

    fn from_base(&self, c: u32) -> u32 {
        c
    }
}

impl Field for FiniteField {
    fn base(&self) -> &FiniteField {
        self
    }

    fn inv(&self, a: &u32) -> Result<u32> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.inner.n == 1 {
            return Ok(inv_mod(*a, self.inner.p));
        }
        if !self.inner.exp.is_empty() {
            let order = self.inner.q - 1;
            let l = (order - self.inner.log[*a as usize]) % order;
            return Ok(self.inner.exp[l as usize]);
        }
        Ok(self.pow(a, self.inner.q as u64 - 2))
    }

    /// Every element of a finite field is a p-th power: the root is
    /// `a^(p^(n-1))`.
    fn pth_root(&self, a: &u32) -> Option<u32> {
        let mut x = *a;
        for _ in 1..self.inner.n {
            x = self.frobenius(&x);
        }
        Some(x)
    }

    fn display(&self, a: &u32) -> String {
        let r = self.coeff_repr(a);
        if r.negative {
            if r.atomic {
                format!("-{}", r.text)
            } else {
                format!("-({})", r.text)
            }
        } else {
            r.text
        }
    }

    fn coeff_repr(&self, a: &u32) -> CoeffRepr {
        let p = self.inner.p;
        if self.inner.n == 1 {
            let (negative, mag) = if *a > p / 2 && p > 2 {
                (true, p - *a)
            } else {
                (false, *a)
            };
            return CoeffRepr {
                negative,
                text: mag.to_string(),
                atomic: true,
            };
        }
        // polynomial in g with symmetric digits
        let digits = self.to_digits(*a);
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let (neg, mag) = if d > p / 2 && p > 2 {
                (true, p - d)
            } else {
                (false, d)
            };
            let mono = match i {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            };
            let text = if mono.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            terms.push((neg, text));
        }
        if terms.is_empty() {
            return CoeffRepr {
                negative: false,
                text: "0".into(),
                atomic: true,
            };
        }
        if terms.len() == 1 {
            let (neg, text) = terms.pop().unwrap();
            return CoeffRepr {
                negative: neg,
                text,
                atomic: true,
            };
        }
        let mut s = String::new();
        for (i, (neg, text)) in terms.iter().enumerate() {
            if i == 0 {
                if *neg {
                    s.push('-');
                }
            } else {
                s.push_str(if *neg { " - " } else { " + " });
            }
            s.push_str(text);
        }
        CoeffRepr {
            negative: false,
            text: s,
            atomic: false,
        }
    }
}

/// Dense univariate polynomials over `F_p`, ascending coefficients.
pub(crate) mod upoly {
    use super::{inv_mod, mul_mod};

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut v: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut v);
        v
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = mul_mod(r[dr], lead_inv, p);
            if c != 0 {
                for (i, &mi) in m.iter().enumerate() {
                    let idx = dr - dm + i;
                    r[idx] = (r[idx] + p - mul_mod(c, mi, p)) % p;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            e >>= 1;
            if e > 0 {
                b = rem(&mul(&b, &b, p), m, p);
            }
        }
        acc
    }

    /// Distinct-degree test: `f` of degree `n` is irreducible iff
    /// `gcd(x^(p^i) - x, f) = 1` for all `1 <= i <= n/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n <= 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = powmod(&h, p as u64, f, p);
            let g = gcd(&sub(&h, &x, p), f, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

//! Dirichlet characters as full value tables.
//!
//! `(ℤ/qℤ)*` is decomposed over the prime powers of `q`: a primitive root for
//! odd `p^e`, `3` for `4`, and the pair `−1, 5` for `2^e` with `e ≥ 3`. A
//! character is an exponent vector over these generators; its values are
//! stored both as exact phases `k/N` (`N` the group exponent) and as complex
//! numbers.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};

/// A Dirichlet character mod `q`, tabulated on residues `0..q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirichletCharacter {
    pub modulus: u64,
    /// Index in the enumeration of [`enumerate_characters`]; `0` is principal.
    pub label: usize,
    pub conductor: u64,
    /// `χ(−1)`.
    pub parity: i8,
    pub is_principal: bool,
    /// Denominator `N` of the exact phases.
    pub phase_denominator: u64,
    /// `χ(n) = e^{2πi·phase/N}`, `None` when `gcd(n, q) > 1`.
    pub phases: Vec<Option<u64>>,
    pub values: Vec<Complex64>,
}

impl DirichletCharacter {
    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_real(&self) -> bool {
        self.phases
            .iter()
            .flatten()
            .all(|p| (2 * p) % self.phase_denominator == 0)
    }

    /// `χ(n)` for any integer `n`.
    pub fn value(&self, n: i64) -> Complex64 {
        self.values[n.rem_euclid(self.modulus as i64) as usize]
    }

    /// The conjugate character, found in the same enumeration.
    pub fn conj(&self) -> DirichletCharacter {
        let den = self.phase_denominator;
        let phases: Vec<Option<u64>> = self
            .phases
            .iter()
            .map(|p| p.map(|k| (den - k) % den))
            .collect();
        enumerate_characters(self.modulus)
            .into_iter()
            .find(|c| c.phases == phases)
            .expect("the dual group is closed under conjugation")
    }

    /// `τ(χ, n) = Σ_{a=1}^{q} χ(a) e^{2πina/q}`.
    pub fn gauss_sum(&self, n: i64) -> Complex64 {
        let q = self.modulus as i64;
        (1..=q)
            .map(|a| {
                let phase = 2.0 * PI * ((n * a).rem_euclid(q)) as f64 / q as f64;
                self.value(a) * Complex64::from_polar(1.0, phase)
            })
            .sum()
    }

    /// `Σ_{1≤a≤x} χ(a)` for a non-principal character.
    pub fn partial_sum(&self, x: f64) -> Result<Complex64> {
        if self.is_principal {
            return Err(Error::PrincipalCharacter);
        }
        if !(x >= 0.0) {
            return Err(domain("x", x, "a nonnegative real"));
        }
        let q = self.modulus;
        let n = x.floor() as u64;
        // full periods vanish
        let rest = n % q;
        Ok((1..=rest).map(|a| self.values[a as usize]).sum())
    }

    /// The character mod `modulus` induced by `self`.
    pub fn induce(&self, modulus: u64) -> Result<DirichletCharacter> {
        if modulus == 0 || !modulus.is_multiple_of(self.modulus) {
            return Err(domain(
                "modulus",
                modulus,
                "a multiple of the character's modulus",
            ));
        }
        let values: Vec<Complex64> = (0..modulus)
            .map(|n| {
                if gcd(n, modulus) == 1 {
                    self.values[(n % self.modulus) as usize]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok(enumerate_characters(modulus)
            .into_iter()
            .find(|c| {
                c.values
                    .iter()
                    .zip(&values)
                    .all(|(a, b)| (a - b).norm() < 1e-12)
            })
            .expect("an induced character is a character"))
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, g, m);
        k += 1;
    }
    k
}

/// Generators of `(ℤ/p^eℤ)*` in canonical order.
fn prime_power_generators(p: u64, e: u32) -> Vec<(u64, u64)> {
    let m = p.pow(e);
    if p == 2 {
        return match e {
            1 => vec![],
            2 => vec![(3, 2)],
            _ => vec![(m - 1, 2), (5, m / 4)],
        };
    }
    let phi = m / p * (p - 1);
    let g = (2..m)
        .find(|&g| gcd(g, p) == 1 && multiplicative_order(g, m) == phi)
        .expect("odd prime powers have primitive roots");
    vec![(g, phi)]
}

struct Decomposition {
    components: Vec<u64>,
    /// Orders of the cyclic factors, in canonical generator order.
    orders: Vec<u64>,
    /// `dlog[i][r]`: exponents of residue `r mod components[i]` over the
    /// generators of component `i`.
    dlog: Vec<Vec<Option<Vec<u64>>>>,
}

fn decompose(q: u64) -> Decomposition {
    let mut components = Vec::new();
    let mut orders = Vec::new();
    let mut dlog = Vec::new();
    for (p, e) in factorize(q) {
        let m = p.pow(e);
        let gens = prime_power_generators(p, e);
        let mut table: Vec<Option<Vec<u64>>> = vec![None; m as usize];
        // enumerate all products of generator powers
        let mut exps = vec![0u64; gens.len()];
        loop {
            let r = gens.iter().zip(&exps).fold(1 % m, |acc, (&(g, _), &k)| {
                mul_mod(acc, mod_pow(g, k, m), m)
            });
            table[r as usize] = Some(exps.clone());
            let mut j = 0;
            while j < gens.len() {
                exps[j] += 1;
                if exps[j] < gens[j].1 {
                    break;
                }
                exps[j] = 0;
                j += 1;
            }
            if j == gens.len() {
                break;
            }
        }
        if m == 2 {
            table[1] = Some(vec![]);
        }
        orders.extend(gens.iter().map(|&(_, order)| order));
        components.push(m);
        dlog.push(table);
    }
    Decomposition {
        components,
        orders,
        dlog,
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// All `φ(q)` characters mod `q`, labelled lexicographically by their
/// exponent vectors over the canonical generators.
pub fn enumerate_characters(q: u64) -> Vec<DirichletCharacter> {
    assert!(q >= 1, "modulus must be positive");
    let dec = decompose(q);
    let den = dec.orders.iter().fold(1, |acc, &o| lcm(acc, o));
    // per residue: exponent vector over all generators, or None
    let logs: Vec<Option<Vec<u64>>> = (0..q)
        .map(|n| {
            if gcd(n, q) != 1 {
                return None;
            }
            let mut v = Vec::with_capacity(dec.orders.len());
            for (i, &m) in dec.components.iter().enumerate() {
                v.extend(dec.dlog[i][(n % m) as usize].clone().expect("unit residue"));
            }
            Some(v)
        })
        .collect();
    let orders = &dec.orders;
    let count: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(count as usize);
    for label in 0..count {
        // mixed radix, first generator most significant
        let mut ks = vec![0u64; orders.len()];
        let mut rest = label;
        for j in (0..orders.len()).rev() {
            ks[j] = rest % orders[j];
            rest /= orders[j];
        }
        let phases: Vec<Option<u64>> = logs
            .iter()
            .map(|l| {
                l.as_ref().map(|l| {
                    l.iter()
                        .zip(&ks)
                        .zip(orders)
                        .map(|((&e, &k), &o)| e * k % o * (den / o))
                        .sum::<u64>()
                        % den
                })
            })
            .collect();
        out.push(build(q, label as usize, den, phases));
    }
    out
}

fn build(q: u64, label: usize, den: u64, phases: Vec<Option<u64>>) -> DirichletCharacter {
    let values: Vec<Complex64> = phases
        .iter()
        .map(|p| match p {
            None => Complex64::new(0.0, 0.0),
            Some(k) => root_of_unity(*k, den),
        })
        .collect();
    let is_principal = phases.iter().flatten().all(|&k| k == 0);
    let conductor = conductor_of(q, &phases);
    let minus_one = phases[((q as i64 - 1).rem_euclid(q as i64)) as usize].expect("−1 is a unit");
    let parity = if minus_one == 0 { 1 } else { -1 };
    DirichletCharacter {
        modulus: q,
        label,
        conductor,
        parity,
        is_principal,
        phase_denominator: den,
        phases,
        values,
    }
}

/// `e^{2πik/n}` with exact values at the quarter turns.
fn root_of_unity(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

/// Smallest `f | q` with `χ(n) = 1` whenever `n ≡ 1 (mod f)` and
/// `gcd(n, q) = 1`; that is exactly when `χ` is induced from modulus `f`.
fn conductor_of(q: u64, phases: &[Option<u64>]) -> u64 {
    (1..=q)
        .filter(|f| q.is_multiple_of(*f))
        .find(|&f| {
            (1..q.max(2))
                .step_by(f as usize)
                .all(|n| phases[(n % q) as usize].is_none_or(|k| k == 0))
        })
        .unwrap_or(q)
}

/// The character mod `q` with the given label.
pub fn character(q: u64, label: usize) -> Result<DirichletCharacter> {
    if q == 0 {
        return Err(domain("q", q, "a positive integer"));
    }
    let all = enumerate_characters(q);
    let n = all.len();
    all.into_iter().nth(label).ok_or_else(|| Error::Domain {
        name: "label",
        value: label.to_string(),
        expected: if n == 1 { "0" } else { "an index below φ(q)" },
    })
}

/// Primitive characters mod `q`, in enumeration order.
pub fn primitive_characters(q: u64) -> Vec<DirichletCharacter> {
    enumerate_characters(q)
        .into_iter()
        .filter(|c| c.is_primitive())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_moduli() {
        let one = enumerate_characters(1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].values, vec![Complex64::new(1.0, 0.0)]);
        assert_eq!(one[0].conductor, 1);

        let four = enumerate_characters(4);
        assert_eq!(four.len(), 2);
        assert!(four[0].is_principal);
        assert_eq!(four[1].values[1], Complex64::new(1.0, 0.0));
        assert_eq!(four[1].values[3], Complex64::new(-1.0, 0.0));
        assert_eq!(four[1].conductor, 4);
        assert_eq!(four[1].parity, -1);

        let five = enumerate_characters(5);
        assert_eq!(five.len(), 4);
        assert_eq!(
            five.iter()
                .filter(|c| c.is_real() && !c.is_principal)
                .count(),
            1
        );
    }

    #[test]
    fn conductors() {
        assert_eq!(enumerate_characters(12)[0].conductor, 1);
        let chi4 = &enumerate_characters(4)[1];
        let chi8 = chi4.induce(8).unwrap();
        assert_eq!(chi8.modulus, 8);
        assert_eq!(chi8.conductor, 4);
        assert!(!chi8.is_primitive());
        // no primitive characters mod 2 or mod 6
        assert!(primitive_characters(2).is_empty());
        assert!(primitive_characters(6).is_empty());
    }

    #[test]
    fn gauss_sum_mod_four() {
        let chi = &enumerate_characters(4)[1];
        let t = chi.gauss_sum(1);
        assert!((t - Complex64::new(0.0, 2.0)).norm() < 1e-14);
        assert!(chi.gauss_sum(0).norm() < 1e-14);
    }

    #[test]
    fn partial_sums() {
        let chi = &enumerate_characters(4)[1];
        assert_eq!(chi.partial_sum(3.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(chi.partial_sum(1.0).unwrap(), Complex64::new(1.0, 0.0));
        assert!(enumerate_characters(4)[0].partial_sum(2.0).is_err());
    }

    #[test]
    fn conjugation_is_closed() {
        for q in [5, 7, 8, 15, 16] {
            for chi in enumerate_characters(q) {
                let c = chi.conj();
                for n in 0..q as i64 {
                    assert!((c.value(n) - chi.value(n).conj()).norm() < 1e-15);
                }
            }
        }
    }
}

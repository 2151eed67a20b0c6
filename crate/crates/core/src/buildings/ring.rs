//! Small finite coefficient rings: prime fields, `GF(4)` and `Z/m`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Elem = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteRing {
    /// `Z/m`; a field exactly when `m` is prime.
    Zmod(u32),
    /// `F_2[x] / (x^2 + x + 1)`, elements `a + b x` encoded as `a | b << 1`.
    Gf4,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

impl FiniteRing {
    /// The field with `q` elements (`q` prime or 4).
    pub fn field(q: u32) -> Result<Self> {
        match q {
            4 => Ok(FiniteRing::Gf4),
            q if is_prime(q) && q <= 97 => Ok(FiniteRing::Zmod(q)),
            _ => Err(Error::UnsupportedRing(format!("no supported field with {q} elements"))),
        }
    }

    pub fn zmod(m: u32) -> Result<Self> {
        if !(2..=64).contains(&m) {
            return Err(Error::UnsupportedRing(format!("Z/{m}")));
        }
        Ok(FiniteRing::Zmod(m))
    }

    pub fn size(&self) -> u32 {
        match self {
            FiniteRing::Zmod(m) => *m,
            FiniteRing::Gf4 => 4,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            FiniteRing::Zmod(m) => is_prime(*m),
            FiniteRing::Gf4 => true,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size()
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match self {
            FiniteRing::Zmod(m) => (a + b) % m,
            FiniteRing::Gf4 => a ^ b,
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match self {
            FiniteRing::Zmod(m) => (m - a) % m,
            FiniteRing::Gf4 => a,
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match self {
            FiniteRing::Zmod(m) => (a * b) % m,
            FiniteRing::Gf4 => {
                // carry-less product, then x^2 = x + 1
                let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
                let c0 = (a0 & b0) ^ (a1 & b1);
                let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
                c0 | (c1 << 1)
            }
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.mul(a, b) == 1)
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inv(a).is_some()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    /// Primes dividing the characteristic data: for `Z/m` the primes of `m`,
    /// for a field just its characteristic.
    pub fn residue_primes(&self) -> Vec<u32> {
        match self {
            FiniteRing::Gf4 => vec![2],
            FiniteRing::Zmod(m) => (2..=*m).filter(|&p| is_prime(p) && m % p == 0).collect(),
        }
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteRing::Zmod(m) if is_prime(*m) => write!(f, "F{m}"),
            FiniteRing::Zmod(m) => write!(f, "Z/{m}"),
            FiniteRing::Gf4 => f.write_str("F4"),
        }
    }
}

impl FromStr for FiniteRing {
    type Err = Error;

    /// Accepts `F4`, `GF(4)`, `Z/6`, or a bare prime power `5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |t: &str| t.parse::<u32>().map_err(|_| Error::UnsupportedRing(s.to_string()));
        if let Some(m) = s.strip_prefix("Z/") {
            return FiniteRing::zmod(num(m)?);
        }
        if let Some(q) = s.strip_prefix("GF(").and_then(|t| t.strip_suffix(')')) {
            return FiniteRing::field(num(q)?);
        }
        if let Some(q) = s.strip_prefix('F') {
            return FiniteRing::field(num(q)?);
        }
        FiniteRing::field(num(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_is_a_field() {
        let k = FiniteRing::Gf4;
        for a in 1..4 {
            let b = k.inv(a).unwrap();
            assert_eq!(k.mul(a, b), 1);
        }
        // associativity and distributivity on all triples
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                    assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn zmod_units() {
        let r = FiniteRing::zmod(6).unwrap();
        assert_eq!(r.units(), vec![1, 5]);
        assert!(!r.is_field());
        assert_eq!(r.residue_primes(), vec![2, 3]);
    }

    #[test]
    fn parsing() {
        assert_eq!("F4".parse::<FiniteRing>().unwrap(), FiniteRing::Gf4);
        assert_eq!("Z/6".parse::<FiniteRing>().unwrap(), FiniteRing::Zmod(6));
        assert_eq!("3".parse::<FiniteRing>().unwrap(), FiniteRing::Zmod(3));
        assert!("F6".parse::<FiniteRing>().is_err());
    }
}

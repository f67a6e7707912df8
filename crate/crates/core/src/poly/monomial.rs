use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 8]>;

/// A monomial `x^a` stored as its exponent vector with the total degree cached.
/// The derived `Ord` is plain lexicographic on exponents; it only serves as
/// a deterministic key. Use [`MonomialOrder`](crate::poly::MonomialOrder)
/// for term orders.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn from_slice(exps: &[u16]) -> Self {
        Monomial::new(Exponents::from_slice(exps))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    /// Does `self` divide `other`?
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: Exponents = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(a, b)| a - b)
            .collect();
        Monomial {
            exps,
            degree: other.degree - self.degree,
        }
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if divisor.divides(self) {
            Some(divisor.quotient_of(self))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial::new(exps)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.min(b))
            .collect();
        Monomial::new(exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let exps: Exponents = self.exps.iter().map(|&e| e * k as u16).collect();
        Monomial {
            exps,
            degree: self.degree * k,
        }
    }

    /// Bit mask with bit `i % 64` set when variable `i` occurs; used to reject
    /// divisibility tests cheaply.
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << (i % 64);
            }
        }
        mask
    }

    /// All monomials of total degree `d` in `nvars` variables, in
    /// lexicographically decreasing exponent order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left as u16;
                out.push(Monomial::from_slice(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_slice(&[1, 2, 0]);
        let b = Monomial::from_slice(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Monomial::from_slice(&[1, 0, 1]));
        assert_eq!(a.lcm(&Monomial::from_slice(&[0, 3, 1])), Monomial::from_slice(&[1, 3, 1]));
        assert!(Monomial::from_slice(&[1, 0, 0]).is_coprime(&Monomial::from_slice(&[0, 4, 1])));
    }

    #[test]
    fn enumerates_degree_pieces() {
        assert_eq!(Monomial::all_of_degree(4, 2).len(), 10);
        assert_eq!(Monomial::all_of_degree(3, 0).len(), 1);
        assert!(Monomial::all_of_degree(6, 4).iter().all(|m| m.degree() == 4));
    }
}

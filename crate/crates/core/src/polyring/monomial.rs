use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of variables of any ring (including auxiliary
/// elimination variables).
pub const MAX_VARS: usize = 16;

/// A monomial `x_0^{e_0} ... x_{n}^{e_n}`. Unused trailing slots are zero, so
/// monomials compare correctly without knowing the variable count.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], deg: 0 };

    pub fn new(exps: &[u16]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut e = [0u16; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial { exps: e, deg: exps.iter().map(|&x| x as u32).sum() }
    }

    pub fn var(i: usize) -> Monomial {
        Monomial::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u16) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Sum of exponents over the variables `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&x| x as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial { exps: e, deg: self.deg + other.deg }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.exps;
        for (a, b) in e.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        Some(Monomial { exps: e, deg: other.deg - self.deg })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for ((x, a), b) in e.iter_mut().zip(&self.exps).zip(&other.exps) {
            *x = (*a).max(*b);
            deg += *x as u32;
        }
        Monomial { exps: e, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for ((x, a), b) in e.iter_mut().zip(&self.exps).zip(&other.exps) {
            *x = (*a).min(*b);
            deg += *x as u32;
        }
        Monomial { exps: e, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Lowers the exponent of `x_i` by one.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[i] -= 1;
        m.deg -= 1;
        Some(m)
    }

    /// Re-indexes variables: variable `i` goes to `map[i]`.
    pub fn remap(&self, map: &[usize]) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        for (i, &target) in map.iter().enumerate() {
            e[target] += self.exps[i];
        }
        Monomial { exps: e, deg: self.deg }
    }

    /// Bit mask of the variables that occur.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut m = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| revlex_tail(self, other, 0, MAX_VARS))
    }

    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

/// Reverse-lex tiebreak on the variables `lo..hi`: the monomial with the
/// smaller exponent in the last differing variable is bigger.
#[inline]
pub(crate) fn revlex_tail(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = Monomial::new(&[2, 1, 0, 0]);
        let b = Monomial::new(&[1, 0, 3, 0]);
        assert_eq!(a.mul(&b), Monomial::new(&[3, 1, 3]));
        assert_eq!(a.lcm(&b), Monomial::new(&[2, 1, 3]));
        assert_eq!(a.gcd(&b), Monomial::new(&[1]));
        assert!(Monomial::new(&[1, 1]).divides(&a));
        assert_eq!(Monomial::new(&[1, 1]).quotient_of(&a), Some(Monomial::new(&[1])));
        assert_eq!(b.quotient_of(&a), None);
    }

    #[test]
    fn grevlex_examples() {
        // x0^2 > x0 x1 > x1^2 > x0 x2 in grevlex
        let m = |e: &[u16]| Monomial::new(e);
        assert_eq!(m(&[2, 0, 0]).grevlex_cmp(&m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(m(&[0, 2, 0]).grevlex_cmp(&m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(m(&[0, 0, 3]).grevlex_cmp(&m(&[1, 0, 0])), Ordering::Greater);
    }
}

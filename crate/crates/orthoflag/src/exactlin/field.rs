use crate::error::{Error, Result};

/// Prime field F_p with p at most 2^15, so products of two reduced values fit in a u32.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    p: u32,
}

pub const MAX_P: u32 = 1 << 15;

pub fn is_prime(p: u32) -> bool {
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

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("{p} is not prime")));
        }
        if p > MAX_P {
            return Err(Error::Validation(format!("p = {p} exceeds 2^15")));
        }
        Ok(Field { p })
    }

    /// Field for p = 2 through 2^15 known to be prime; panics otherwise.
    pub fn of(p: u32) -> Self {
        Field::new(p).expect("prime modulus")
    }

    pub fn p(self) -> u32 {
        self.p
    }

    /// The orthogonal side needs 1/2.
    pub fn require_odd(self) -> Result<()> {
        if self.p == 2 {
            Err(Error::Validation(
                "orthogonal forms need p odd (the representatives use 1/2)".into(),
            ))
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, (self.p - 2) as u64)
    }

    pub fn div(self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Signed representative in (-p/2, p/2].
    pub fn to_i64(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn half(self) -> u32 {
        self.inv(2 % self.p)
    }

    pub fn sqrt(self, a: u32) -> Option<u32> {
        (0..self.p).find(|&x| self.mul(x, x) == a)
    }

    pub fn is_square(self, a: u32) -> bool {
        self.sqrt(a).is_some()
    }

    pub fn primitive_root(self) -> u32 {
        if self.p == 2 {
            return 1;
        }
        let q = self.p - 1;
        let mut factors = vec![];
        let mut m = q;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, (q / f) as u64) != 1))
            .unwrap()
    }

    pub fn elements(self) -> std::ops::Range<u32> {
        0..self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_large() {
        assert!(Field::new(9).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(32771).is_err());
        assert!(Field::new(32749).is_ok());
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 101] {
            let f = Field::of(p);
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn primitive_roots() {
        for p in [3, 5, 7, 11, 13] {
            let f = Field::of(p);
            let g = f.primitive_root();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..p - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, p - 1);
        }
    }

    #[test]
    fn minus_half_mod_3_is_one() {
        let f = Field::of(3);
        assert_eq!(f.neg(f.half()), 1);
    }
}

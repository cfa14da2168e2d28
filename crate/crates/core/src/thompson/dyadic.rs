//! Exact dyadic rationals `num / 2^exp` with a hard exponent cap.
//!
//! Overflow past the cap is a fatal configuration error: the point of
//! the type is that no arithmetic ever rounds.

use std::cmp::Ordering;
use std::fmt;

/// Hard limit on the binary exponent; exceeding it panics.
pub const DYADIC_EXP_CAP: u32 = 64;

/// `num / 2^exp`, canonical: `num` odd or `exp == 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: i128, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.canonicalize();
        d.check_cap();
        d
    }

    pub fn zero() -> Self {
        Dyadic { num: 0, exp: 0 }
    }

    pub const fn int(n: i128) -> Self {
        Dyadic { num: n, exp: 0 }
    }

    /// `n / 2`.
    pub fn half_int(n: i128) -> Self {
        Dyadic::new(n, 1)
    }

    fn canonicalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num % 2 == 0 {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    fn check_cap(&self) {
        assert!(
            self.exp <= DYADIC_EXP_CAP,
            "dyadic exponent {} exceeds the cap {DYADIC_EXP_CAP}; increase the cap",
            self.exp
        );
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn to_integer(&self) -> Option<i128> {
        if self.exp == 0 { Some(self.num) } else { None }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let exp = self.exp.max(other.exp);
        let a = self.num.checked_shl(exp - self.exp).expect("dyadic numerator overflow");
        let b = other.num.checked_shl(exp - other.exp).expect("dyadic numerator overflow");
        Dyadic::new(a.checked_add(b).expect("dyadic numerator overflow"), exp)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { num: -self.num, exp: self.exp }
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(
            self.num.checked_mul(other.num).expect("dyadic numerator overflow"),
            self.exp + other.exp,
        )
    }

    /// Multiplication by `2^j`.
    pub fn mul_pow2(&self, j: i32) -> Dyadic {
        if self.num == 0 {
            return Dyadic::zero();
        }
        if j >= 0 {
            Dyadic::new(
                self.num.checked_shl(j as u32).expect("dyadic numerator overflow"),
                self.exp,
            )
        } else {
            Dyadic::new(self.num, self.exp + (-j) as u32)
        }
    }

    pub fn add_int(&self, n: i128) -> Dyadic {
        self.add(&Dyadic::int(n))
    }

    /// Floor of `self / 2^k` as an integer.
    pub fn div_floor_pow2(&self, k: u32) -> i128 {
        let shift = self.exp + k;
        assert!(shift < 127);
        self.num.div_euclid(1i128 << shift)
    }

    /// `2^j` exactly equal to `self`, if it is a power of two.
    pub fn log2_exact(&self) -> Option<i32> {
        if self.num <= 0 {
            return None;
        }
        if self.num.count_ones() != 1 {
            return None;
        }
        Some(self.num.trailing_zeros() as i32 - self.exp as i32)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.max(other.exp);
        let a = self.num << (exp - self.exp);
        let b = other.num << (exp - other.exp);
        a.cmp(&b)
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::int(n as i128)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Dyadic::new(4, 2), Dyadic::int(1));
        assert_eq!(Dyadic::new(6, 1), Dyadic::int(3));
        assert_eq!(Dyadic::new(0, 7), Dyadic::zero());
        assert_eq!(Dyadic::new(3, 2).exponent(), 2);
    }

    #[test]
    fn arithmetic() {
        let half = Dyadic::new(1, 1);
        assert_eq!(half.add(&half), Dyadic::int(1));
        assert_eq!(half.sub(&Dyadic::int(1)), Dyadic::new(-1, 1));
        assert_eq!(half.mul_pow2(3), Dyadic::int(4));
        assert_eq!(Dyadic::int(3).mul_pow2(-1), Dyadic::new(3, 1));
        assert_eq!(half.mul(&half), Dyadic::new(1, 2));
    }

    #[test]
    fn ordering() {
        assert!(Dyadic::new(1, 1) < Dyadic::int(1));
        assert!(Dyadic::new(-3, 1) < Dyadic::new(-1, 1));
    }

    #[test]
    fn floor_by_eight() {
        assert_eq!(Dyadic::int(17).div_floor_pow2(3), 2);
        assert_eq!(Dyadic::int(-1).div_floor_pow2(3), -1);
        assert_eq!(Dyadic::new(33, 1).div_floor_pow2(3), 2); // 16.5 / 8
    }

    #[test]
    fn power_of_two_detection() {
        assert_eq!(Dyadic::int(4).log2_exact(), Some(2));
        assert_eq!(Dyadic::new(1, 3).log2_exact(), Some(-3));
        assert_eq!(Dyadic::int(3).log2_exact(), None);
        assert_eq!(Dyadic::int(-2).log2_exact(), None);
    }

    #[test]
    #[should_panic(expected = "exceeds the cap")]
    fn cap_is_fatal() {
        let _ = Dyadic::new(1, DYADIC_EXP_CAP + 1);
    }
}

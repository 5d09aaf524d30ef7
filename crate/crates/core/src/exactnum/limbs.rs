//! Stack-allocated unsigned powers used by the hot floor/membership loops.
//!
//! Only two operations are needed there: `x^e` for a machine-word base and a
//! comparison between two such powers. Both are done on a fixed array of
//! little-endian `u64` limbs, so enumerating 10^8 sequence terms never touches
//! the allocator. Anything that does not fit returns `None` and the caller
//! falls back to `BigUint`.

use std::cmp::Ordering;

#[cfg(test)]
use num_bigint::BigUint;

pub(crate) const CAP: usize = 24;

#[derive(Clone, Copy)]
pub(crate) struct Limbs {
    len: usize,
    d: [u64; CAP],
}

impl Limbs {
    pub(crate) fn from_u64(x: u64) -> Self {
        let mut d = [0u64; CAP];
        d[0] = x;
        Limbs {
            len: usize::from(x != 0),
            d,
        }
    }

    /// Multiplies in place by a single word; `false` on overflow of `CAP` limbs.
    fn mul_word(&mut self, w: u64) -> bool {
        if w == 0 || self.len == 0 {
            self.len = 0;
            return true;
        }
        let mut carry: u128 = 0;
        for i in 0..self.len {
            let t = self.d[i] as u128 * w as u128 + carry;
            self.d[i] = t as u64;
            carry = t >> 64;
        }
        if carry != 0 {
            if self.len == CAP {
                return false;
            }
            self.d[self.len] = carry as u64;
            self.len += 1;
        }
        true
    }

    /// `x^e`, or `None` when the result needs more than `64 * CAP` bits.
    pub(crate) fn pow(x: u64, e: u32) -> Option<Self> {
        if e == 0 {
            return Some(Self::from_u64(1));
        }
        // Fold x^2 into one word when it fits: halves the multiply count.
        let mut acc = Self::from_u64(1);
        let (base, mut rem) = match x.checked_mul(x) {
            Some(sq) if e >= 2 => (sq, e),
            _ => (x, e),
        };
        if base != x {
            while rem >= 2 {
                if !acc.mul_word(base) {
                    return None;
                }
                rem -= 2;
            }
            if rem == 1 && !acc.mul_word(x) {
                return None;
            }
        } else {
            for _ in 0..rem {
                if !acc.mul_word(x) {
                    return None;
                }
            }
        }
        Some(acc)
    }

    pub(crate) fn cmp(&self, other: &Self) -> Ordering {
        if self.len != other.len {
            return self.len.cmp(&other.len);
        }
        for i in (0..self.len).rev() {
            match self.d[i].cmp(&other.d[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    #[cfg(test)]
    pub(crate) fn to_biguint(self) -> BigUint {
        let mut digits = Vec::with_capacity(self.len * 2);
        for &w in &self.d[..self.len] {
            digits.push(w as u32);
            digits.push((w >> 32) as u32);
        }
        BigUint::new(digits)
    }
}

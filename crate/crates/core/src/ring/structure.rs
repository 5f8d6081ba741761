use super::FiniteRing;

/// Units, zero-divisors, nilradical and idempotents of a ring, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingStructure {
    pub units: Vec<usize>,
    pub zero_divisors: Vec<usize>,
    pub nilradical: Vec<usize>,
    pub idempotents: Vec<usize>,
}

impl FiniteRing {
    pub fn is_unit(&self, x: usize) -> bool {
        (0..self.size()).any(|y| self.mul(x, y) == self.one())
    }

    /// `x` is killed by some nonzero element. Zero counts in a nonzero ring.
    pub fn is_zero_divisor(&self, x: usize) -> bool {
        (0..self.size()).any(|y| y != self.zero() && self.mul(x, y) == self.zero())
    }

    pub fn is_nilpotent(&self, x: usize) -> bool {
        self.pow(x, self.size() as u64) == self.zero()
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn units(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    pub fn zero_divisors(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.is_zero_divisor(x)).collect()
    }

    pub fn nilradical(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.is_nilpotent(x)).collect()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn structure(&self) -> RingStructure {
        RingStructure {
            units: self.units(),
            zero_divisors: self.zero_divisors(),
            nilradical: self.nilradical(),
            idempotents: self.idempotents(),
        }
    }

    /// Additive order of `x`.
    pub fn additive_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != self.zero() {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }
}

use super::{Poly, RankedVar};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

impl<V: RankedVar> AddAssign<&Poly<V>> for Poly<V> {
    fn add_assign(&mut self, rhs: &Poly<V>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<V: RankedVar> SubAssign<&Poly<V>> for Poly<V> {
    fn sub_assign(&mut self, rhs: &Poly<V>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<V: RankedVar> Add<&Poly<V>> for &Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        big += small;
        big
    }
}

impl<V: RankedVar> Sub<&Poly<V>> for &Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<V: RankedVar> Mul<&Poly<V>> for &Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = Poly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl<V: RankedVar> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<V: RankedVar> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(mut self) -> Poly<V> {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<V: RankedVar> $tr<Poly<V>> for Poly<V> {
            type Output = Poly<V>;
            fn $f(self, rhs: Poly<V>) -> Poly<V> {
                (&self).$f(&rhs)
            }
        }
        impl<V: RankedVar> $tr<&Poly<V>> for Poly<V> {
            type Output = Poly<V>;
            fn $f(self, rhs: &Poly<V>) -> Poly<V> {
                (&self).$f(rhs)
            }
        }
        impl<V: RankedVar> $tr<Poly<V>> for &Poly<V> {
            type Output = Poly<V>;
            fn $f(self, rhs: Poly<V>) -> Poly<V> {
                self.$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

use crate::error::{Error, Result};
use crate::pc::{Element, PcPresentation};
use crate::subgroup::Subgroup;

/// `G/N` as a new presentation, plus the projection from `G`.
///
/// The quotient's generators are the images of the pc generators of `G`
/// whose indices are not depths of `N`, numbered in increasing order.
#[derive(Debug, Clone)]
pub struct QuotientResult<'p> {
    quotient: PcPresentation,
    kernel: Subgroup<'p>,
    survivors: Vec<usize>,
}

impl<'p> QuotientResult<'p> {
    pub fn quotient(&self) -> &PcPresentation {
        &self.quotient
    }

    pub fn into_quotient(self) -> PcPresentation {
        self.quotient
    }

    pub fn kernel(&self) -> &Subgroup<'p> {
        &self.kernel
    }

    /// Parent generator indices that survive, in quotient order.
    pub fn survivors(&self) -> &[usize] {
        &self.survivors
    }

    /// The coset representative of `x N` with zero exponents at every depth of `N`.
    fn reduce(&self, mut x: Element) -> Element {
        let pres = self.kernel.presentation();
        let p = pres.prime();
        for t in self.kernel.igs() {
            let d = t.depth().unwrap();
            let e = x.exponents()[d];
            if e != 0 {
                x = pres.multiply(&x, &pres.power_unsigned(t, (p - e) as u64));
            }
        }
        x
    }

    pub fn project(&self, x: &Element) -> Element {
        let r = self.reduce(x.clone());
        let exps: Vec<u32> = self.survivors.iter().map(|&c| r.exponents()[c]).collect();
        Element::from_exponents(&exps)
    }

    /// The canonical preimage of a quotient element.
    pub fn lift(&self, q: &Element) -> Element {
        let mut x = self.kernel.presentation().identity();
        for (a, &c) in self.survivors.iter().enumerate() {
            x.exponents_mut()[c] = q.exponents()[a];
        }
        x
    }
}

impl<'p> Subgroup<'p> {
    /// Builds `G/N` for `N = self`, which must be normal in the whole group.
    pub fn quotient(&self) -> Result<QuotientResult<'p>> {
        let pres = self.presentation();
        if !self.is_normal_in(&Subgroup::full(pres)) {
            return Err(Error::NotNormal);
        }
        let depths = self.depths();
        let survivors: Vec<usize> = (0..pres.ngens()).filter(|c| !depths.contains(c)).collect();
        let mut partial = QuotientResult {
            quotient: PcPresentation::builder(pres.prime(), 0).build()?,
            kernel: self.clone(),
            survivors,
        };
        let m = partial.survivors.len();
        let mut builder = PcPresentation::builder(pres.prime(), m);
        for (a, &c) in partial.survivors.iter().enumerate() {
            let tail = partial.project(pres.power_tail(c));
            builder = builder.power(a, tail.exponents());
            for (b, &c2) in partial.survivors.iter().enumerate().skip(a + 1) {
                let conj = pres.conjugate(&pres.generator(c2), &pres.generator(c));
                let mut tail = partial.project(&conj);
                debug_assert_eq!(tail.exponents()[b], 1);
                tail.exponents_mut()[b] = 0;
                builder = builder.conj(b, a, tail.exponents());
            }
        }
        partial.quotient = builder.build()?;
        Ok(partial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_kernel_reproduces_group() {
        let h = PcPresentation::builder(3, 3)
            .conj(1, 0, &[0, 0, 1])
            .build()
            .unwrap();
        let q = Subgroup::trivial(&h).quotient().unwrap();
        assert_eq!(q.quotient(), &h);
    }

    #[test]
    fn cyclic_quotient() {
        let c = PcPresentation::builder(3, 2)
            .power(0, &[0, 1])
            .build()
            .unwrap();
        let n = Subgroup::generated(&c, [c.generator(1)]);
        let q = n.quotient().unwrap();
        assert_eq!(q.quotient().order(), 3);
        assert_eq!(q.project(&c.generator(0)).exponents(), &[1]);
        assert!(q.project(&c.generator(1)).is_identity());
    }

    #[test]
    fn heisenberg_mod_center_is_abelian() {
        let h = PcPresentation::builder(3, 3)
            .conj(1, 0, &[0, 0, 1])
            .build()
            .unwrap();
        let z = Subgroup::generated(&h, [h.generator(2)]);
        let q = z.quotient().unwrap();
        assert_eq!(q.quotient().order(), 9);
        assert!(q.quotient().is_abelian());
    }

    #[test]
    fn rejects_non_normal() {
        let h = PcPresentation::builder(3, 3)
            .conj(1, 0, &[0, 0, 1])
            .build()
            .unwrap();
        let n = Subgroup::generated(&h, [h.generator(0)]);
        assert_eq!(n.quotient().unwrap_err(), Error::NotNormal);
    }
}

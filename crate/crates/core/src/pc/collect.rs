//! Normal-form arithmetic by collection from the left.

use crate::error::{Error, Result};
use crate::pc::element::Element;
use crate::pc::presentation::{Letter, PcPresentation};

impl PcPresentation {
    /// Multiplies the normal form held in `state` on the right by the word
    /// `letters`, leaving the normal form of the product in `state`.
    ///
    /// The leftmost uncollected letter is always processed first. Moving a
    /// generator `g_i` past the collected suffix `w` over higher generators
    /// uses `w g_i = g_i w^{g_i}`, and `w^{g_i}` is expanded letter by letter
    /// from the conjugate relations.
    pub(crate) fn collect_into(&self, state: &mut [u32], letters: &[Letter]) {
        let p = self.prime();
        let n = self.ngens();
        // Top of the stack is the next letter to multiply in.
        let mut stack: Vec<Letter> = letters.iter().rev().copied().collect();
        while let Some((g, count)) = stack.pop() {
            if count == 0 {
                continue;
            }
            let suffix_start = g + 1;
            let suffix_trivial = state[suffix_start..].iter().all(|&e| e == 0);
            if suffix_trivial {
                let sum = state[g] + count;
                if sum >= p {
                    state[g] = sum - p;
                    stack.extend(self.power_letters(g).iter().rev().copied());
                } else {
                    state[g] = sum;
                }
                continue;
            }
            if count > 1 {
                stack.push((g, count - 1));
            }
            for k in (suffix_start..n).rev() {
                let e = state[k];
                if e == 0 {
                    continue;
                }
                let tail = self.conj_letters(g, k);
                if tail.is_empty() {
                    stack.push((k, e));
                } else {
                    for _ in 0..e {
                        stack.extend(tail.iter().rev().copied());
                        stack.push((k, 1));
                    }
                }
                state[k] = 0;
            }
            state[g] += 1;
            if state[g] == p {
                state[g] = 0;
                stack.extend(self.power_letters(g).iter().rev().copied());
            }
        }
    }

    fn letters(a: &Element) -> Vec<Letter> {
        a.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
            .collect()
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = a.clone();
        let state = out.exponents_mut();
        for (g, &e) in b.exponents().iter().enumerate() {
            if e != 0 {
                self.collect_into(state, &[(g, e)]);
            }
        }
        out
    }

    pub fn inverse(&self, a: &Element) -> Element {
        // Right-multiply by generator powers that clear positions in order;
        // the multipliers already form a normal-form word.
        let p = self.prime();
        let mut rest = a.clone();
        let mut inv = self.identity();
        for g in 0..self.ngens() {
            let e = rest.exponents()[g];
            if e != 0 {
                let c = p - e;
                inv.exponents_mut()[g] = c;
                self.collect_into(rest.exponents_mut(), &[(g, c)]);
            }
        }
        debug_assert!(rest.is_identity());
        inv
    }

    /// `a^m`; negative exponents raise the inverse.
    pub fn power(&self, a: &Element, m: i64) -> Element {
        let base = if m < 0 { self.inverse(a) } else { a.clone() };
        self.power_unsigned(&base, m.unsigned_abs())
    }

    pub fn power_unsigned(&self, a: &Element, mut m: u64) -> Element {
        let mut result = self.identity();
        let mut base = a.clone();
        while m > 0 {
            if m & 1 == 1 {
                result = self.multiply(&result, &base);
            }
            m >>= 1;
            if m > 0 {
                base = self.multiply(&base, &base);
            }
        }
        result
    }

    /// `a^{p^k}` by `k` successive `p`-th powers.
    pub fn power_p(&self, a: &Element, k: u32) -> Element {
        let mut x = a.clone();
        for _ in 0..k {
            if x.is_identity() {
                break;
            }
            x = self.power_unsigned(&x, self.prime() as u64);
        }
        x
    }

    /// The `k` with `o(a) = p^k`.
    pub fn log_order(&self, a: &Element) -> u32 {
        let mut k = 0;
        let mut x = a.clone();
        while !x.is_identity() {
            x = self.power_unsigned(&x, self.prime() as u64);
            k += 1;
        }
        k
    }

    /// Exact order `o(a)`, a power of `p`.
    pub fn element_order(&self, a: &Element) -> u128 {
        (self.prime() as u128).pow(self.log_order(a))
    }

    /// `[x, y] = x^{-1} y^{-1} x y`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        let xy = self.multiply(x, y);
        let yx = self.multiply(y, x);
        self.multiply(&self.inverse(&yx), &xy)
    }

    /// `x^g = g^{-1} x g`.
    pub fn conjugate(&self, x: &Element, g: &Element) -> Element {
        let xg = self.multiply(x, g);
        self.multiply(&self.inverse(g), &xg)
    }

    fn collect_word(&self, start: &Element, letters: &[Letter]) -> Element {
        let mut out = start.clone();
        self.collect_into(out.exponents_mut(), letters);
        out
    }

    /// Runs all overlap tests; `Err` names the first pair that disagrees.
    pub(crate) fn check_consistency(&self) -> Result<()> {
        let n = self.ngens();
        let p = self.prime();
        let gen = |i: usize| self.generator(i);
        let fail = |test: String, l: Element, r: Element| -> Result<()> {
            if l == r {
                Ok(())
            } else {
                Err(Error::Inconsistent {
                    test,
                    left: l.to_vec(),
                    right: r.to_vec(),
                })
            }
        };
        // (g_k g_j) g_i = g_k (g_j g_i)
        for i in 0..n {
            for j in i + 1..n {
                let ji = self.collect_word(&gen(j), &[(i, 1)]);
                for k in j + 1..n {
                    let left = self.collect_word(&self.collect_word(&gen(k), &[(j, 1)]), &[(i, 1)]);
                    let right = self.collect_word(&gen(k), &Self::letters(&ji));
                    fail(
                        format!("(g{0} g{1}) g{2} vs g{0} (g{1} g{2})", k + 1, j + 1, i + 1),
                        left,
                        right,
                    )?;
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                // (g_j^p) g_i = g_j^{p-1} (g_j g_i)
                let ji = self.collect_word(&gen(j), &[(i, 1)]);
                let left = self.collect_word(self.power_tail(j), &[(i, 1)]);
                let mut start = self.identity();
                start.exponents_mut()[j] = p - 1;
                let right = self.collect_word(&start, &Self::letters(&ji));
                fail(
                    format!("(g{0}^p) g{1} vs g{0}^(p-1) (g{0} g{1})", j + 1, i + 1),
                    left,
                    right,
                )?;
                // g_j (g_i^p) = (g_j g_i) g_i^{p-1}
                let left = self.collect_word(&gen(j), self.power_letters(i));
                let right = self.collect_word(&ji, &[(i, p - 1)]);
                fail(
                    format!("g{0} (g{1}^p) vs (g{0} g{1}) g{1}^(p-1)", j + 1, i + 1),
                    left,
                    right,
                )?;
            }
        }
        // (g_i^p) g_i = g_i (g_i^p)
        for i in 0..n {
            let left = self.collect_word(self.power_tail(i), &[(i, 1)]);
            let right = self.collect_word(&gen(i), self.power_letters(i));
            fail(
                format!("(g{0}^p) g{0} vs g{0} (g{0}^p)", i + 1),
                left,
                right,
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c9() -> PcPresentation {
        PcPresentation::builder(3, 2)
            .power(0, &[0, 1])
            .build()
            .unwrap()
    }

    fn heis27() -> PcPresentation {
        PcPresentation::builder(3, 3)
            .conj(1, 0, &[0, 0, 1])
            .build()
            .unwrap()
    }

    fn el(v: &[u32]) -> Element {
        Element::from_exponents(v)
    }

    #[test]
    fn heisenberg_products() {
        let h = heis27();
        assert_eq!(h.multiply(&el(&[1, 0, 0]), &el(&[0, 1, 0])), el(&[1, 1, 0]));
        assert_eq!(h.multiply(&el(&[0, 1, 0]), &el(&[1, 0, 0])), el(&[1, 1, 1]));
        assert_eq!(h.multiply(&h.identity(), &el(&[2, 1, 0])), el(&[2, 1, 0]));
    }

    #[test]
    fn cyclic_nine_inverse_and_order() {
        let c = c9();
        assert_eq!(c.inverse(&el(&[1, 0])), el(&[2, 2]));
        assert_eq!(c.element_order(&el(&[1, 0])), 9);
        assert_eq!(c.power(&el(&[1, 0]), 3), el(&[0, 1]));
        assert_eq!(c.power(&el(&[1, 0]), -1), el(&[2, 2]));
        assert_eq!(c.power(&el(&[1, 1]), 0), c.identity());
        assert_eq!(c.element_order(&c.identity()), 1);
    }

    #[test]
    fn heisenberg_exponent_three() {
        let h = heis27();
        assert_eq!(h.power(&el(&[1, 1, 0]), 3), h.identity());
        assert_eq!(h.element_order(&el(&[1, 1, 1])), 3);
    }

    #[test]
    fn commutator_orientation() {
        let h = heis27();
        let g1 = h.generator(0);
        let g2 = h.generator(1);
        // g2^g1 = g2 g3 gives [g2, g1] = g3 and [g1, g2] = g3^{-1}.
        assert_eq!(h.commutator(&g2, &g1), el(&[0, 0, 1]));
        assert_eq!(h.commutator(&g1, &g2), el(&[0, 0, 2]));
        assert_eq!(h.commutator(&g1, &g1), h.identity());
        assert_eq!(h.conjugate(&g2, &g1), el(&[0, 1, 1]));
    }

    #[test]
    fn inconsistent_power_relation_rejected() {
        // g1 commutes with g1^3 = g2, so g2^g1 = g2 g3 cannot hold.
        let err = PcPresentation::builder(3, 3)
            .power(0, &[0, 1, 0])
            .conj(1, 0, &[0, 0, 1])
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::Inconsistent { .. }), "{err}");
    }

    #[test]
    fn inconsistent_power_of_central_rejected() {
        let err = PcPresentation::builder(2, 4)
            .power(1, &[0, 0, 1, 0])
            .conj(2, 0, &[0, 0, 0, 1])
            .build();
        // g2 commutes with g1 but its square g3 does not.
        assert!(matches!(err, Err(Error::Inconsistent { .. })), "{err:?}");
    }

    #[test]
    fn rejects_composite_prime() {
        assert_eq!(
            PcPresentation::builder(4, 1).build().unwrap_err(),
            Error::NotPrime(4)
        );
    }

    #[test]
    fn rejects_lower_index_in_tail() {
        let err = PcPresentation::builder(3, 2)
            .power(0, &[1, 0])
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::Triangularity(_)));
    }
}

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::sparse::{sparse_from_map, SparseVec};
use crate::symalg::{graded_monomials, LinearForm, Monomial, Polynomial, Q};

/// One free summand `A(-shift)` of a graded free module, or its quotient by
/// a root when `modulus` is set (values are then kept reduced).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub shift: u32,
    pub modulus: Option<LinearForm>,
}

/// A direct sum of slots. Elements are `Vec<Polynomial>`, one entry per slot.
#[derive(Clone, Debug)]
pub struct GradedLayout {
    nvars: usize,
    slots: Vec<Slot>,
}

/// Column indexing of the degree-`d` slice of a layout: slot-major, then
/// monomials in graded-lex order (largest first).
#[derive(Clone, Debug)]
pub struct SliceColumns {
    pub degree: u32,
    offsets: Vec<usize>,
    monomials: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl SliceColumns {
    pub fn len(&self) -> usize {
        *self.offsets.last().expect("offsets are nonempty")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn slot_range(&self, slot: usize) -> std::ops::Range<usize> {
        self.offsets[slot]..self.offsets[slot + 1]
    }

    pub fn monomials(&self, slot: usize) -> &[Monomial] {
        &self.monomials[slot]
    }

    pub fn column(&self, slot: usize, m: &Monomial) -> Option<usize> {
        self.index[slot].get(m).copied()
    }

    /// `(slot, monomial)` of a column.
    pub fn describe(&self, col: usize) -> (usize, Monomial) {
        let slot = self.offsets.partition_point(|&o| o <= col) - 1;
        (slot, self.monomials[slot][col - self.offsets[slot]])
    }
}

impl GradedLayout {
    pub fn new(nvars: usize, slots: Vec<Slot>) -> Self {
        GradedLayout { nvars, slots }
    }

    /// Free module with the given shifts.
    pub fn free(nvars: usize, shifts: &[u32]) -> Self {
        Self::new(nvars, shifts.iter().map(|&shift| Slot { shift, modulus: None }).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_slots(&self) -> usize {
        self.slots.len()
    }

    pub fn slot(&self, j: usize) -> &Slot {
        &self.slots[j]
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn zero_element(&self) -> Vec<Polynomial> {
        vec![Polynomial::zero(); self.slots.len()]
    }

    pub fn columns(&self, d: u32) -> SliceColumns {
        let mut offsets = vec![0];
        let mut monomials = Vec::with_capacity(self.slots.len());
        let mut index = Vec::with_capacity(self.slots.len());
        for slot in &self.slots {
            let ms: Vec<Monomial> = if d < slot.shift {
                Vec::new()
            } else {
                let all = graded_monomials(self.nvars, d - slot.shift);
                match &slot.modulus {
                    None => all,
                    Some(a) => all.into_iter().filter(|m| m.exp(a.pivot()) == 0).collect(),
                }
            };
            offsets.push(offsets.last().expect("nonempty") + ms.len());
            index.push(ms.iter().enumerate().map(|(i, m)| (*m, i + offsets[offsets.len() - 2])).collect());
            monomials.push(ms);
        }
        SliceColumns { degree: d, offsets, monomials, index }
    }

    /// Canonical form of an element: entries in modulus slots reduced.
    pub fn normalize(&self, elem: &[Polynomial]) -> Vec<Polynomial> {
        elem.iter()
            .zip(&self.slots)
            .map(|(p, s)| match &s.modulus {
                Some(a) => a.reduce(p),
                None => p.clone(),
            })
            .collect()
    }

    /// Coordinates of the degree-`d` component of `elem`.
    pub fn vectorize(&self, cols: &SliceColumns, elem: &[Polynomial]) -> SparseVec {
        let mut out = Vec::new();
        for (j, p) in self.normalize(elem).iter().enumerate() {
            if cols.degree < self.slots[j].shift {
                continue;
            }
            let want = cols.degree - self.slots[j].shift;
            let mut entries: Vec<(usize, Q)> = p
                .terms()
                .filter(|(m, _)| m.degree() == want)
                .map(|(m, c)| (cols.column(j, m).expect("monomial belongs to the slice"), c.clone()))
                .collect();
            entries.sort_by_key(|(k, _)| *k);
            out.extend(entries);
        }
        out
    }

    pub fn devectorize(&self, cols: &SliceColumns, v: &SparseVec) -> Vec<Polynomial> {
        let mut out = self.zero_element();
        for (k, c) in v {
            let (slot, m) = cols.describe(*k);
            out[slot].add_term(m, c.clone());
        }
        out
    }

    /// `p * elem`, normalized.
    pub fn scale_element(&self, p: &Polynomial, elem: &[Polynomial]) -> Vec<Polynomial> {
        self.normalize(&elem.iter().map(|e| p * e).collect::<Vec<_>>())
    }
}

/// `sum_j coeff_j * x_{slot_j} == 0`, either exactly or modulo `alpha^k`.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub terms: Vec<(usize, Polynomial)>,
    pub modulus: Option<(LinearForm, u32)>,
}

impl Congruence {
    pub fn exact(terms: Vec<(usize, Polynomial)>) -> Self {
        Congruence { terms, modulus: None }
    }

    /// Returns `None` when the condition is vacuous (`k <= 0`).
    pub fn modulo(terms: Vec<(usize, Polynomial)>, alpha: LinearForm, k: i64) -> Option<Self> {
        (k > 0).then_some(Congruence { terms, modulus: Some((alpha, k as u32)) })
    }

    /// Direct evaluation on an element.
    pub fn holds(&self, elem: &[Polynomial]) -> bool {
        let mut p = Polynomial::zero();
        for (slot, c) in &self.terms {
            p += &(c * &elem[*slot]);
        }
        match &self.modulus {
            None => p.is_zero(),
            Some((a, k)) => a.divides_power(&p, *k as i64),
        }
    }

    /// Linear equations on the coordinates of the degree-`d` slice.
    pub fn linearize(&self, cols: &SliceColumns) -> Vec<SparseVec> {
        let mut rows: BTreeMap<Monomial, BTreeMap<usize, Q>> = BTreeMap::new();
        for (slot, coeff) in &self.terms {
            for (offset, m) in cols.monomials(*slot).iter().enumerate() {
                let col = cols.slot_range(*slot).start + offset;
                for (cm, cc) in coeff.terms() {
                    let mono = cm.mul(m);
                    let mut push = |key: Monomial, v: Q| {
                        let e = rows.entry(key).or_default().entry(col).or_insert_with(Q::zero);
                        *e += v;
                    };
                    match &self.modulus {
                        None => push(mono, cc.clone()),
                        Some((a, k)) => with_chart_image(a, &mono, |img| {
                            for (ym, yc) in img.terms() {
                                if (ym.exp(a.pivot()) as u32) < *k {
                                    push(*ym, cc * yc);
                                }
                            }
                        }),
                    }
                }
            }
        }
        rows.into_values().map(sparse_from_map).filter(|r| !r.is_empty()).collect()
    }
}

thread_local! {
    static CHARTS: RefCell<HashMap<(Vec<i64>, Monomial), Polynomial>> = RefCell::new(HashMap::new());
}

/// Image of a monomial in coordinates where the pivot variable is replaced
/// by `alpha` itself; divisibility by `alpha^k` becomes a condition on the
/// pivot exponent.
fn with_chart_image<R>(alpha: &LinearForm, m: &Monomial, f: impl FnOnce(&Polynomial) -> R) -> R {
    CHARTS.with(|cache| {
        let key = (alpha.coords().to_vec(), *m);
        if let Some(p) = cache.borrow().get(&key) {
            return f(p);
        }
        let p = alpha.pivot();
        let c = crate::symalg::q(alpha.pivot_coeff());
        // x_p = (y_p - sum_{i != p} a_i y_i) / a_p
        let mut sub = Polynomial::var(p).scale(&c.recip());
        for (i, &a) in alpha.coords().iter().enumerate() {
            if i != p && a != 0 {
                sub.add_term(Monomial::var(i), -crate::symalg::q(a) / &c);
            }
        }
        let img = Polynomial::term(num_traits::One::one(), *m).substitute(p, &sub);
        let r = f(&img);
        cache.borrow_mut().insert(key, img);
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::q;

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::new(c).unwrap()
    }

    #[test]
    fn columns_respect_shift_and_modulus() {
        let layout = GradedLayout::new(
            2,
            vec![Slot { shift: 0, modulus: None }, Slot { shift: 1, modulus: Some(lf(&[1, 1])) }],
        );
        let c = layout.columns(2);
        assert_eq!(c.monomials(0).len(), 3);
        assert_eq!(c.monomials(1), &[Monomial([0, 1, 0, 0])]);
        assert_eq!(c.len(), 4);
        assert_eq!(c.describe(3), (1, Monomial([0, 1, 0, 0])));
        let elem = vec![Polynomial::var(0).pow(2), Polynomial::var(0)];
        let v = layout.vectorize(&c, &elem);
        assert_eq!(v, vec![(0, q(1)), (3, q(-1))]);
        assert_eq!(layout.devectorize(&c, &v), vec![Polynomial::var(0).pow(2), -Polynomial::var(1)]);
    }

    #[test]
    fn linearized_congruence_matches_direct_check() {
        // x0 - x1 == 0 mod (a1 + a2)^2 on a free rank-2 layout in degree 2.
        let alpha = lf(&[1, 1]);
        let layout = GradedLayout::free(2, &[0, 0]);
        let cong = Congruence::modulo(vec![(0, Polynomial::one()), (1, Polynomial::int(-1))], alpha.clone(), 2).unwrap();
        let cols = layout.columns(2);
        let rows = cong.linearize(&cols);
        let mut rref = super::super::sparse::Rref::new();
        for r in &rows {
            rref.insert(r);
        }
        for v in rref.nullspace(cols.len()) {
            assert!(cong.holds(&layout.devectorize(&cols, &v)));
        }
        // Only the coefficients of a2^2 and alpha*a2 must vanish.
        assert_eq!(rref.rank(), 2);
        assert!(Congruence::modulo(vec![], alpha, 0).is_none());
    }
}

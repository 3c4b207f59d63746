use num_traits::Zero;

use super::layout::{Congruence, GradedLayout, SliceColumns};
use super::sparse::{solve_linear, Rref, SparseVec};
use crate::error::{Error, Result};
use crate::symalg::{graded_monomials, Polynomial};

/// A Q-basis of the degree-`d` solutions of a congruence system.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub degree: u32,
    pub unknowns: usize,
    pub conditions: usize,
    pub elements: Vec<Vec<Polynomial>>,
}

impl SliceBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// Echelon form of all equations imposed by `conds` on the degree-`d` slice.
pub fn condition_rref(conds: &[Congruence], cols: &SliceColumns) -> (Rref, usize) {
    let mut rref = Rref::new();
    let mut count = 0;
    for c in conds {
        for row in c.linearize(cols) {
            count += 1;
            rref.insert(&row);
        }
    }
    (rref, count)
}

pub fn solve_slice(layout: &GradedLayout, conds: &[Congruence], d: u32) -> SliceBasis {
    let cols = layout.columns(d);
    let (rref, conditions) = condition_rref(conds, &cols);
    let elements = rref.nullspace(cols.len()).iter().map(|v| layout.devectorize(&cols, v)).collect();
    SliceBasis { degree: d, unknowns: cols.len(), conditions, elements }
}

/// A homogeneous generator of a graded submodule.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub degree: u32,
    pub element: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub layout: GradedLayout,
    pub generators: Vec<Generator>,
    /// Slice dimensions of the module, indexed by degree.
    pub slice_dims: Vec<usize>,
}

impl GeneratorSet {
    /// Number of generators in each degree `0..=max`.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.generators.iter().map(|g| g.degree as usize).max().map_or(0, |d| d + 1);
        let mut c = vec![0; top];
        for g in &self.generators {
            c[g.degree as usize] += 1;
        }
        c
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }
}

/// Coordinates of all products `m * g` of degree `d`, for generators `g` of
/// degree at most `d` and monomials `m`.
fn multiples(layout: &GradedLayout, gens: &[Generator], cols: &SliceColumns) -> Vec<(usize, Polynomial, SparseVec)> {
    let mut out = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.degree > cols.degree {
            continue;
        }
        for m in graded_monomials(layout.nvars(), cols.degree - g.degree) {
            let mp = Polynomial::term(num_traits::One::one(), m);
            let v = layout.vectorize(cols, &layout.scale_element(&mp, &g.element));
            out.push((i, mp, v));
        }
    }
    out
}

/// Minimal homogeneous generators, degree by degree: in each degree the
/// slice basis is reduced against the span of multiples of the generators
/// found so far and every nonzero remainder becomes a new generator.
///
/// `slice` returns a Q-basis of the module in a given degree. Degrees up to
/// `max_degree` are searched; degree `max_degree + 1` is then checked to
/// contribute nothing new.
pub fn minimal_generators(
    layout: &GradedLayout,
    max_degree: u32,
    mut slice: impl FnMut(u32) -> Result<Vec<Vec<Polynomial>>>,
) -> Result<GeneratorSet> {
    let mut gens: Vec<Generator> = Vec::new();
    let mut slice_dims = Vec::new();
    for d in 0..=max_degree + 1 {
        let cols = layout.columns(d);
        let basis = slice(d)?;
        let mut module = Rref::new();
        for b in &basis {
            module.insert(&layout.vectorize(&cols, b));
        }
        slice_dims.push(module.rank());
        let mut span = Rref::new();
        for (_, _, v) in multiples(layout, &gens, &cols) {
            if !module.contains(&v) {
                return Err(Error::invariant(format!("module is not closed under multiplication in degree {d}")));
            }
            span.insert(&v);
        }
        for b in &basis {
            let v = layout.vectorize(&cols, b);
            let rem = span.reduce(&v);
            if rem.is_empty() {
                continue;
            }
            if d > max_degree {
                return Err(Error::invariant(format!(
                    "new generator in degree {d} beyond the bound {max_degree}"
                )));
            }
            span.insert(&rem);
            gens.push(Generator { degree: d, element: layout.devectorize(&cols, &rem) });
        }
    }
    slice_dims.pop();
    Ok(GeneratorSet { layout: layout.clone(), generators: gens, slice_dims })
}

/// Generators of the solution module of a congruence system.
pub fn generators_of_system(layout: &GradedLayout, conds: &[Congruence], max_degree: u32) -> Result<GeneratorSet> {
    minimal_generators(layout, max_degree, |d| Ok(solve_slice(layout, conds, d).elements))
}

/// Polynomial coefficients `c` with `f = sum_i c_i g_i`, found degree by
/// degree; `None` if `f` is not in the span.
pub fn membership(f: &[Polynomial], gens: &GeneratorSet) -> Option<Vec<Polynomial>> {
    membership_ordered(f, gens, false)
}

/// As [`membership`]; `reverse` eliminates unknowns in the opposite order,
/// which selects a different solution when the generators are dependent.
pub fn membership_ordered(f: &[Polynomial], gens: &GeneratorSet, reverse: bool) -> Option<Vec<Polynomial>> {
    let layout = &gens.layout;
    let f = layout.normalize(f);
    let top = f.iter().zip(layout.slots()).filter_map(|(p, s)| p.degree().map(|d| d + s.shift)).max();
    let mut coeffs = vec![Polynomial::zero(); gens.generators.len()];
    let Some(top) = top else { return Some(coeffs) };
    let low = f
        .iter()
        .zip(layout.slots())
        .filter_map(|(p, s)| p.terms().next().map(|(m, _)| m.degree() + s.shift))
        .min()
        .unwrap_or(0);
    for d in low..=top {
        let cols = layout.columns(d);
        let target = layout.vectorize(&cols, &f);
        if target.is_empty() {
            continue;
        }
        let mults = multiples(layout, &gens.generators, &cols);
        let columns: Vec<SparseVec> = mults.iter().map(|(_, _, v)| v.clone()).collect();
        let mut order: Vec<usize> = (0..columns.len()).collect();
        if reverse {
            order.reverse();
        }
        let x = solve_linear(&columns, &target, &order)?;
        for ((i, m, _), c) in mults.iter().zip(&x) {
            if !c.is_zero() {
                coeffs[*i] += &m.scale(c);
            }
        }
    }
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::{q, LinearForm};

    fn alpha() -> LinearForm {
        LinearForm::new(&[1]).unwrap()
    }

    /// The single congruence `f(id) - f(s) == 0 mod alpha` on two galleries.
    fn sl2_r1() -> (GradedLayout, Vec<Congruence>) {
        let layout = GradedLayout::free(1, &[0, 0]);
        let c = Congruence::modulo(vec![(0, Polynomial::one()), (1, Polynomial::int(-1))], alpha(), 1).unwrap();
        (layout, vec![c])
    }

    #[test]
    fn slice_dimensions() {
        let layout = GradedLayout::free(1, &[0, 0]);
        assert_eq!(solve_slice(&layout, &[], 0).dim(), 2);
        let (layout, conds) = sl2_r1();
        let d0 = solve_slice(&layout, &conds, 0).dim();
        let d1 = solve_slice(&layout, &conds, 1).dim();
        assert_eq!(d0, 1);
        assert_eq!(d1, 2);
        // Through degree one the solution space is 3-dimensional.
        assert_eq!(d0 + d1, 3);
    }

    #[test]
    fn free_module_generators() {
        let layout = GradedLayout::free(2, &[0, 0]);
        let g = generators_of_system(&layout, &[], 2).unwrap();
        assert_eq!(g.degrees(), vec![0, 0]);
    }

    #[test]
    fn sl2_r1_generators_and_membership() {
        let (layout, conds) = sl2_r1();
        let g = generators_of_system(&layout, &conds, 1).unwrap();
        assert_eq!(g.degrees(), vec![0, 1]);
        for (i, gen) in g.generators.iter().enumerate() {
            let c = membership(&gen.element, &g).unwrap();
            for (j, cj) in c.iter().enumerate() {
                assert_eq!(*cj, if i == j { Polynomial::one() } else { Polynomial::zero() });
            }
            let a = Polynomial::var(0);
            let scaled: Vec<Polynomial> = gen.element.iter().map(|p| p * &a).collect();
            assert_eq!(membership(&scaled, &g).unwrap()[i], a);
        }
        assert!(membership(&[Polynomial::zero(), Polynomial::one()], &g).is_none());
        assert!(membership(&[Polynomial::zero(), Polynomial::var(0).scale(&q(3))], &g).is_some());
    }

    #[test]
    fn bound_violation_detected() {
        let (layout, conds) = sl2_r1();
        assert!(generators_of_system(&layout, &conds, 0).is_err());
    }
}

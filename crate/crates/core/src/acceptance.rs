//! The acceptance suite: eight criteria, each exact, each with a runtime
//! budget. Shared by the `selftest` command and the `acceptance` test target.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fibres::{check_down_kernel, check_shape, ey_symmetry_check, fibre_dual_basis, rho_fold, FibreSystem};
use crate::galleries::{check_counting_all_words, Word};
use crate::momentsheaf::{binomial_row, build_sheaf, decompose, purity_check, word_global_sections, BmCache};
use crate::rootsys::{CartanType, RootSystem};
use crate::sl2kit::Sl2;
use crate::symalg::Polynomial;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let budget = self.budget.map_or(String::new(), |b| format!(" / {}s", b.as_secs()));
        format!(
            "[{}] criterion {}: {} ({:.2}s{}) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            budget,
            self.detail
        )
    }
}

fn run(id: u8, title: &'static str, budget: Option<u64>, f: impl FnOnce() -> Result<String>) -> CriterionOutcome {
    let start = Instant::now();
    let res = f();
    let elapsed = start.elapsed();
    let budget = budget.map(Duration::from_secs);
    let (mut passed, mut detail) = match res {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    if let Some(b) = budget {
        if elapsed > b {
            passed = false;
            detail = format!("{detail}; over the runtime budget");
        }
    }
    CriterionOutcome { id, title, passed, detail, elapsed, budget }
}

fn rs(t: CartanType, n: usize) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(t, n).expect("valid type"))
}

/// Every word of length at most `max_len` over `rank` letters.
pub fn all_words(rank: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (1..=rank as u8).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Words used by the fibre, rho and symmetry criteria.
pub fn fibre_word_list() -> Vec<(CartanType, usize, Vec<u8>)> {
    vec![
        (CartanType::A, 2, vec![1]),
        (CartanType::A, 2, vec![1, 2]),
        (CartanType::A, 2, vec![1, 2, 1]),
        (CartanType::A, 2, vec![1, 2, 1, 2]),
        (CartanType::B, 2, vec![1, 2, 1, 2]),
        (CartanType::G, 2, vec![1, 2, 1]),
    ]
}

/// Words used by the global-section and purity criteria.
pub fn section_word_list() -> Vec<(CartanType, usize, Vec<u8>)> {
    let mut out: Vec<_> = (0..=8).map(|l| (CartanType::A, 1, vec![1; l])).collect();
    for t in [CartanType::A, CartanType::B] {
        out.extend(all_words(2, 6).into_iter().map(|w| (t, 2, w)));
    }
    out
}

fn word_label(t: CartanType, n: usize, w: &[u8]) -> String {
    format!("{}{} {}", t, n, Word::new(w.to_vec(), n).expect("valid word"))
}

fn fibre_systems() -> Result<Vec<(String, FibreSystem)>> {
    fibre_word_list()
        .into_par_iter()
        .map(|(t, n, w)| Ok((word_label(t, n, &w), FibreSystem::new(rs(t, n), &Word::new(w, n)?)?)))
        .collect()
}

pub fn criterion1() -> CriterionOutcome {
    run(1, "gallery combinatorics", Some(120), || {
        let cases = [
            (CartanType::A, 1, 12),
            (CartanType::A, 2, 10),
            (CartanType::A, 3, 10),
            (CartanType::B, 2, 10),
            (CartanType::G, 2, 10),
        ];
        let mut words = 0;
        let mut galleries = 0;
        for (t, n, len) in cases {
            let rep = check_counting_all_words(&rs(t, n), len)?;
            words += rep.words;
            galleries += rep.galleries;
        }
        Ok(format!("{words} words, {galleries} galleries"))
    })
}

pub fn criterion2() -> CriterionOutcome {
    run(2, "SL2 matrix identities", Some(60), || {
        (1..=8).into_par_iter().map(|r| Sl2::new(r)?.check_all()).collect::<Result<Vec<_>>>()?;
        Ok("r = 1..8".into())
    })
}

pub fn criterion3() -> CriterionOutcome {
    run(3, "fibre bases", Some(300), || {
        let systems = fibre_systems()?;
        let mut endpoints = 0;
        for (label, sys) in &systems {
            let gs = sys.galleries();
            let mut total = 0;
            for (x, b) in sys.bases() {
                check_shape(gs, b)?;
                let mut expect = vec![0; gs.r() + 1];
                for &g in gs.fibre(*x) {
                    expect[gs.d(g).count_ones() as usize] += 1;
                }
                let mut got = b.graded_rank();
                got.resize(expect.len(), 0);
                if got != expect {
                    return Err(Error::invariant(format!("{label}: graded rank of F_{} is {got:?}, expected {expect:?}", x.0)));
                }
                total += b.rank();
                endpoints += 1;
            }
            if total != gs.len() {
                return Err(Error::invariant(format!("{label}: fibre ranks sum to {total}")));
            }
        }
        Ok(format!("{} words, {endpoints} fibres", systems.len()))
    })
}

fn random_coords(rng: &mut ChaCha8Rng, nvars: usize, n: usize) -> Vec<Polynomial> {
    (0..n)
        .map(|_| {
            let c = Polynomial::int(rng.gen_range(-3..=3));
            if rng.gen_bool(0.5) {
                &c * &Polynomial::var(rng.gen_range(0..nvars))
            } else {
                c
            }
        })
        .collect()
}

fn random_linear(rng: &mut ChaCha8Rng, nvars: usize) -> Polynomial {
    let coords: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-2..=2)).collect();
    Polynomial::linear(&coords)
}

pub fn criterion4(seed: u64) -> CriterionOutcome {
    run(4, "rho maps and kernels", None, || {
        let systems = fibre_systems()?;
        let mut samples = 0;
        let mut checked = 0;
        for (label, sys) in &systems {
            let gs = sys.galleries();
            let rsys = sys.root_system();
            let w = rsys.weyl();
            let r = gs.r() as u32;
            let nvars = rsys.rank();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ label.len() as u64);
            for (&x, bx) in sys.bases() {
                check_down_kernel(sys, x, r)?;
                let dual = fibre_dual_basis(sys, x, r)?;
                if !dual.matches_prediction() {
                    return Err(Error::invariant(format!(
                        "{label}: generators of F_{}* have degree counts {:?}, expected {:?}",
                        w.name(x),
                        dual.counts(),
                        dual.expected
                    )));
                }
                checked += 1;
                for k in w.left_inversions(x) {
                    let l = w.mul(w.reflection(k), x);
                    let Some(bl) = sys.basis(l) else { continue };
                    for _ in 0..4 {
                        let f = bl.combine(&random_coords(&mut rng, nvars, bl.rank()));
                        let g = bl.combine(&random_coords(&mut rng, nvars, bl.rank()));
                        let p = random_linear(&mut rng, nvars);
                        let sum: Vec<Polynomial> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
                        let pf: Vec<Polynomial> = f.iter().map(|a| a * &p).collect();
                        let (cf, cg) = (rho_fold(gs, bx, k, &f)?, rho_fold(gs, bx, k, &g)?);
                        let add_ok = rho_fold(gs, bx, k, &sum)? == cf.add(rsys, &cg);
                        let scale_ok = rho_fold(gs, bx, k, &pf)? == cf.scale(rsys, &p);
                        let alpha_f: Vec<Polynomial> =
                            f.iter().map(|a| a * &crate::gkm::root_poly(rsys, k)).collect();
                        let zero_ok = rho_fold(gs, bx, k, &alpha_f)?.is_zero();
                        if !(add_ok && scale_ok && zero_ok) {
                            return Err(Error::invariant(format!(
                                "{label}: fold {} -> {} is not linear",
                                w.name(l),
                                w.name(x)
                            )));
                        }
                        samples += 1;
                    }
                }
            }
        }
        Ok(format!("{checked} fibres, {samples} linearity samples, seed {seed}"))
    })
}

pub fn criterion5() -> CriterionOutcome {
    run(5, "global sections", Some(600), || {
        let words = section_word_list();
        let n = words.len();
        words
            .into_par_iter()
            .map(|(t, rank, w)| {
                let label = word_label(t, rank, &w);
                let r = w.len();
                let ws = build_sheaf(rs(t, rank), &Word::new(w, rank)?)?;
                let gens = word_global_sections(&ws, r as u32).map_err(|e| Error::invariant(format!("{label}: {e}")))?;
                let mut c = gens.counts();
                c.resize(r + 1, 0);
                if gens.rank() != 1 << r || c != binomial_row(r) {
                    return Err(Error::invariant(format!("{label}: section degrees {c:?}")));
                }
                Ok(())
            })
            .collect::<Result<Vec<()>>>()?;
        Ok(format!("{n} words"))
    })
}

pub fn criterion6() -> CriterionOutcome {
    run(6, "purity", None, || {
        let words = section_word_list();
        let n = words.len();
        words
            .into_par_iter()
            .map(|(t, rank, w)| {
                let label = word_label(t, rank, &w);
                let r = w.len() as u32;
                let ws = build_sheaf(rs(t, rank), &Word::new(w, rank)?)?;
                let rep = purity_check(&ws.sheaf, r);
                if !rep.passed() {
                    return Err(Error::invariant(format!("{label}: {}", rep.failures.join("; "))));
                }
                Ok(())
            })
            .collect::<Result<Vec<()>>>()?;
        Ok(format!("{n} sheaves"))
    })
}

fn is_reduced(rs: &RootSystem, w: &[u8]) -> bool {
    rs.weyl().length(rs.weyl().element_from_word(w)) as usize == w.len()
}

pub fn criterion7() -> CriterionOutcome {
    run(7, "decomposition", None, || {
        let a1 = rs(CartanType::A, 1);
        let a2 = rs(CartanType::A, 2);
        let mut cache1 = BmCache::new(a1.clone());
        let mut cache2 = BmCache::new(a2.clone());
        let s = a1.weyl().simple(1);
        let rep = decompose(&build_sheaf(a1.clone(), &Word::new(vec![1, 1], 1)?)?.sheaf, &mut cache1)?;
        if !rep.complete() || rep.summands.len() != 2 || rep.multiplicity(s, 0) != 1 || rep.multiplicity(s, 1) != 1 {
            return Err(Error::invariant(format!("A1 (1,1): {}", rep.formula(&a1))));
        }
        let w0 = a2.weyl().longest();
        let s1 = a2.weyl().simple(1);
        let rep = decompose(&build_sheaf(a2.clone(), &Word::new(vec![1, 2, 1], 2)?)?.sheaf, &mut cache2)?;
        if !rep.complete() || rep.summands.len() != 2 || rep.multiplicity(w0, 0) != 1 || rep.multiplicity(s1, 1) != 1 {
            return Err(Error::invariant(format!("A2 (1,2,1): {}", rep.formula(&a2))));
        }
        let mut reduced = 0;
        for (t, n, max) in [(CartanType::A, 1, 1), (CartanType::A, 2, 3), (CartanType::B, 2, 4), (CartanType::G, 2, 6)] {
            let root = rs(t, n);
            let mut cache = BmCache::new(root.clone());
            for w in all_words(n, max).into_iter().filter(|w| is_reduced(&root, w)) {
                let top = root.weyl().element_from_word(&w);
                let ws = build_sheaf(root.clone(), &Word::new(w.clone(), n)?)?;
                let rep = decompose(&ws.sheaf, &mut cache)?;
                if !rep.complete() || rep.multiplicity(top, 0) != 1 {
                    return Err(Error::invariant(format!("{}: {}", word_label(t, n, &w), rep.render(&root))));
                }
                reduced += 1;
            }
        }
        Ok(format!("B(s) ⊕ B(s)⟨1⟩, B(w0) ⊕ B(s1)⟨1⟩, {reduced} reduced words"))
    })
}

pub fn criterion8() -> CriterionOutcome {
    run(8, "E_y symmetry", None, || {
        let systems = fibre_systems()?;
        let mut n = 0;
        for (label, sys) in &systems {
            for b in sys.bases().values() {
                ey_symmetry_check(sys.galleries(), b).map_err(|e| Error::invariant(format!("{label}: {e}")))?;
                n += 1;
            }
        }
        Ok(format!("{n} fibres"))
    })
}

/// Runs one criterion by number.
pub fn run_one(id: u8, seed: u64) -> Option<CriterionOutcome> {
    Some(match id {
        1 => criterion1(),
        2 => criterion2(),
        3 => criterion3(),
        4 => criterion4(seed),
        5 => criterion5(),
        6 => criterion6(),
        7 => criterion7(),
        8 => criterion8(),
        _ => return None,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    (1..=8).filter_map(|id| run_one(id, seed)).collect()
}

//! Batch front-end: job configuration, command dispatch and report text.
//! Reports are deterministic for a fixed configuration and seed.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::acceptance;
use crate::error::{Error, Result};
use crate::fibres::{fibre_dual_basis, FibreSystem};
use crate::galleries::{fmt_index_set, Galleries, Word, MAX_ENUMERATION_LENGTH};
use crate::gkm::{bxalpha_basis, bxalpha_report, diag_euler, htbs1_failure, root_poly};
use crate::momentsheaf::{build_sheaf, decompose, fmt_graded, purity_check, word_global_sections, BmCache};
use crate::rootsys::{CartanType, RootSystem};
use crate::sl2kit::Sl2;
use crate::symalg::Polynomial;

/// Longest word accepted by commands that build modules or sheaves.
pub const MAX_SHEAF_LENGTH: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Galleries,
    Stats,
    Sl2,
    GkmCheck,
    FibreBasis,
    Sheaf,
    Purity,
    Decompose,
    Selftest,
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "galleries" => Command::Galleries,
            "stats" => Command::Stats,
            "sl2" => Command::Sl2,
            "gkm-check" => Command::GkmCheck,
            "fibre-basis" => Command::FibreBasis,
            "sheaf" => Command::Sheaf,
            "purity" => Command::Purity,
            "decompose" => Command::Decompose,
            "selftest" => Command::Selftest,
            _ => return Err(Error::config(format!("unknown command {s:?}"))),
        })
    }
}

impl Command {
    fn enumeration_only(self) -> bool {
        matches!(self, Command::Galleries | Command::Stats)
    }
}

/// A fully specified job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub word: Vec<u8>,
    pub command: Command,
    pub max_degree: Option<u32>,
    pub seed: u64,
}

/// Raw `key=value` settings; later settings override earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub cartan_type: Option<String>,
    pub rank: Option<String>,
    pub word: Option<String>,
    pub command: Option<String>,
    pub max_degree: Option<String>,
    pub seed: Option<String>,
}

impl Settings {
    /// Parses a flat `key=value` file. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Settings::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("line {}: expected key=value", n + 1)))?;
            let v = Some(v.trim().to_string());
            match k.trim() {
                "type" => s.cartan_type = v,
                "rank" => s.rank = v,
                "word" => s.word = v,
                "cmd" | "command" => s.command = v,
                "max-degree" | "max_degree" => s.max_degree = v,
                "seed" => s.seed = v,
                other => return Err(Error::config(format!("line {}: unknown key {other:?}", n + 1))),
            }
        }
        Ok(s)
    }

    pub fn overlay(self, top: Settings) -> Settings {
        Settings {
            cartan_type: top.cartan_type.or(self.cartan_type),
            rank: top.rank.or(self.rank),
            word: top.word.or(self.word),
            command: top.command.or(self.command),
            max_degree: top.max_degree.or(self.max_degree),
            seed: top.seed.or(self.seed),
        }
    }

    pub fn resolve(&self) -> Result<JobConfig> {
        let need = |v: &Option<String>, k: &str| v.clone().ok_or_else(|| Error::config(format!("missing {k}")));
        let t = need(&self.cartan_type, "type")?;
        let mut chars = t.chars();
        let cartan_type = match (chars.next(), chars.next()) {
            (Some(c), None) => CartanType::from_letter(c)?,
            _ => return Err(Error::config(format!("type must be a single letter, got {t:?}"))),
        };
        let rank: usize =
            need(&self.rank, "rank")?.parse().map_err(|_| Error::config("rank must be a positive integer"))?;
        let command: Command = need(&self.command, "cmd")?.parse()?;
        let word = match &self.word {
            Some(w) => Word::parse(w, rank)?.letters().to_vec(),
            None => Vec::new(),
        };
        let max_degree = match &self.max_degree {
            Some(d) => Some(d.parse().map_err(|_| Error::config("max-degree must be a nonnegative integer"))?),
            None => None,
        };
        let seed = match &self.seed {
            Some(s) => s.parse().map_err(|_| Error::config("seed must be an unsigned integer"))?,
            None => acceptance::DEFAULT_SEED,
        };
        let cfg = JobConfig { cartan_type, rank, word, command, max_degree, seed };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl JobConfig {
    pub fn validate(&self) -> Result<()> {
        let limit = if self.command.enumeration_only() { MAX_ENUMERATION_LENGTH } else { MAX_SHEAF_LENGTH };
        if self.word.len() > limit {
            return Err(Error::config(format!("word length {} exceeds {limit} for this command", self.word.len())));
        }
        if let Some(&a) = self.word.iter().find(|&&a| a == 0 || a as usize > self.rank) {
            return Err(Error::config(format!("letter {a} out of range 1..={}", self.rank)));
        }
        if self.command == Command::Sl2 && (self.cartan_type != CartanType::A || self.rank != 1) {
            return Err(Error::config("sl2 requires type A, rank 1"));
        }
        Ok(())
    }

    fn root_system(&self) -> Result<Arc<RootSystem>> {
        Ok(Arc::new(RootSystem::new(self.cartan_type, self.rank)?))
    }

    fn word(&self) -> Result<Word> {
        Word::new(self.word.clone(), self.rank)
    }

    fn degree_bound(&self) -> u32 {
        self.max_degree.unwrap_or(self.word.len() as u32)
    }
}

/// Outcome of a job: exit status and report text. When the job could not
/// run at all, `report` holds the error message and `error` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub report: String,
    pub error: bool,
}

/// Runs a job; configuration errors give status 2, failed checks status 1.
pub fn run(cfg: &JobConfig) -> Outcome {
    match dispatch(cfg) {
        Ok((ok, report)) => Outcome { status: if ok { 0 } else { 1 }, report, error: false },
        Err(e) => Outcome { status: if e.is_config() { 2 } else { 1 }, report: format!("error: {e}\n"), error: true },
    }
}

fn header(cfg: &JobConfig, rs: &RootSystem) -> Result<String> {
    Ok(format!("# {} word {} command {:?}\n", rs.name(), cfg.word()?, cfg.command))
}

fn dispatch(cfg: &JobConfig) -> Result<(bool, String)> {
    if cfg.command == Command::Selftest {
        let mut out = String::new();
        let mut ok = true;
        for o in acceptance::run_all(cfg.seed) {
            ok &= o.passed;
            let _ = writeln!(out, "{}", o.line());
        }
        return Ok((ok, out));
    }
    let rs = cfg.root_system()?;
    let mut out = header(cfg, &rs)?;
    let ok = match cfg.command {
        Command::Galleries => galleries_report(cfg, rs, &mut out)?,
        Command::Stats => stats_report(cfg, rs, &mut out)?,
        Command::Sl2 => sl2_report(cfg, &mut out)?,
        Command::GkmCheck => gkm_report(cfg, rs, &mut out)?,
        Command::FibreBasis => fibre_report(cfg, rs, &mut out)?,
        Command::Sheaf => sheaf_report(cfg, rs, &mut out)?,
        Command::Purity => purity_report(cfg, rs, &mut out)?,
        Command::Decompose => decompose_report(cfg, rs, &mut out)?,
        Command::Selftest => unreachable!("handled above"),
    };
    Ok((ok, out))
}

fn galleries_report(cfg: &JobConfig, rs: Arc<RootSystem>, out: &mut String) -> Result<bool> {
    let gs = Galleries::new(rs.clone(), cfg.word()?)?;
    let w = rs.weyl();
    let _ = writeln!(out, "galleries: {}", gs.len());
    let _ = writeln!(out, "gallery\tend\tJ\tD");
    for g in gs.enumerate() {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", gs.display(g), w.name(gs.end(g)), fmt_index_set(gs.j(g)), fmt_index_set(gs.d(g)));
    }
    Ok(true)
}

fn stats_report(cfg: &JobConfig, rs: Arc<RootSystem>, out: &mut String) -> Result<bool> {
    let report = crate::galleries::check_counting(&rs, &cfg.word()?)?;
    let gs = Galleries::new(rs.clone(), cfg.word()?)?;
    let w = rs.weyl();
    let _ = writeln!(out, "galleries: {} (2^r = {})", report.galleries, 1u64 << gs.r());
    let _ = writeln!(out, "counting checks: pass");
    let _ = writeln!(out, "endpoint\tlength\t#fibre\tgraded D\tgraded J");
    for (x, fib) in gs.fibres() {
        let mut dd = vec![0; gs.r() + 1];
        let mut jj = vec![0; gs.r() + 1];
        for &g in fib {
            dd[gs.d(g).count_ones() as usize] += 1;
            jj[gs.j(g).count_ones() as usize] += 1;
        }
        let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", w.name(*x), w.length(*x), fib.len(), fmt_graded(&dd), fmt_graded(&jj));
    }
    Ok(true)
}

fn sl2_report(cfg: &JobConfig, out: &mut String) -> Result<bool> {
    let s = Sl2::new(cfg.word.len())?;
    let _ = writeln!(out, "order: {}", s.order().iter().map(|&g| s.galleries().display(g)).collect::<Vec<_>>().join(" "));
    let _ = writeln!(out, "H (rows delta, columns gamma):");
    for row in s.h_matrix() {
        let _ = writeln!(out, "  {}", row.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\t"));
    }
    match s.check_all() {
        Ok(()) => {
            let _ = writeln!(out, "matrix identities: pass");
            Ok(true)
        }
        Err(e) => {
            let _ = writeln!(out, "matrix identities: FAIL ({e})");
            Ok(false)
        }
    }
}

fn random_function(rng: &mut ChaCha8Rng, nvars: usize, n: usize) -> Vec<Polynomial> {
    (0..n)
        .map(|_| {
            let c = Polynomial::int(rng.gen_range(-2..=2));
            match rng.gen_range(0..3) {
                0 => c,
                1 => &c * &Polynomial::var(rng.gen_range(0..nvars)),
                _ => &c * &(&Polynomial::var(rng.gen_range(0..nvars)) * &Polynomial::var(rng.gen_range(0..nvars))),
            }
        })
        .collect()
}

fn gkm_report(cfg: &JobConfig, rs: Arc<RootSystem>, out: &mut String) -> Result<bool> {
    let gs = Galleries::new(rs.clone(), cfg.word()?)?;
    let w = rs.weyl();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ok = true;
    let _ = writeln!(out, "endpoint\troot\trank\tbasis members\trandom agreement");
    for x in gs.support() {
        let n = gs.fibre(x).len();
        for k in 0..rs.num_positive_roots() {
            let basis = bxalpha_basis(&gs, x, k)?;
            let mut members = true;
            for e in basis.elements() {
                let rep = bxalpha_report(&gs, x, k, &e.values)?;
                members &= rep.agree() && rep.direct;
            }
            let mut agree = 0;
            const SAMPLES: usize = 16;
            for _ in 0..SAMPLES {
                let f = random_function(&mut rng, rs.rank(), n);
                if bxalpha_report(&gs, x, k, &f)?.agree() {
                    agree += 1;
                }
            }
            ok &= members && agree == SAMPLES;
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{agree}/{SAMPLES}",
                w.name(x),
                root_poly(&rs, k),
                basis.rank(),
                if members { "pass" } else { "FAIL" }
            );
        }
    }
    let euler: Vec<Polynomial> = gs.all().map(|g| diag_euler(&gs, g).full).collect();
    match htbs1_failure(&gs, &euler) {
        None => {
            let _ = writeln!(out, "total-space congruences on the full Euler class: pass");
        }
        Some(f) => {
            ok = false;
            let _ = writeln!(out, "{}", f.describe(&gs));
        }
    }
    Ok(ok)
}

fn fibre_report(cfg: &JobConfig, rs: Arc<RootSystem>, out: &mut String) -> Result<bool> {
    let sys = FibreSystem::new(rs.clone(), &cfg.word()?)?;
    let gs = sys.galleries();
    let w = rs.weyl();
    let mut ok = true;
    for (x, b) in sys.bases() {
        let _ = writeln!(out, "F_{}: rank {}, graded {}", w.name(*x), b.rank(), fmt_graded(&b.graded_rank()));
        let _ = writeln!(out, "  galleries: {}", b.galleries.iter().map(|&g| gs.display(g)).collect::<Vec<_>>().join(" "));
        for e in &b.elements {
            let vals: Vec<String> = e.values.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "  {}\tdeg {}\t[{}]", gs.display(e.gallery), e.degree, vals.join(", "));
        }
        let dual = fibre_dual_basis(&sys, *x, cfg.degree_bound())?;
        let matches = dual.matches_prediction();
        ok &= matches;
        let _ = writeln!(
            out,
            "  dual generators: {} (predicted {}){}",
            fmt_graded(&dual.counts()),
            fmt_graded(&dual.expected),
            if matches { "" } else { " FAIL" }
        );
    }
    Ok(ok)
}

fn sheaf_report(cfg: &JobConfig, rs: Arc<RootSystem>, out: &mut String) -> Result<bool> {
    let ws = build_sheaf(rs, &cfg.word()?)?;
    out.push_str(&ws.sheaf.summary());
    let gens = word_global_sections(&ws, cfg.degree_bound())?;
    let _ = writeln!(out, "global sections: rank {}, graded {}", gens.rank(), fmt_graded(&gens.counts()));
    Ok(gens.rank() == 1 << cfg.word.len())
}

/// Graphviz text of the sheaf of a word.
pub fn sheaf_dot(cfg: &JobConfig) -> Result<String> {
    Ok(build_sheaf(cfg.root_system()?, &cfg.word()?)?.sheaf.to_dot())
}

fn purity_report(cfg: &JobConfig, rs: Arc<RootSystem>, out: &mut String) -> Result<bool> {
    let ws = build_sheaf(rs, &cfg.word()?)?;
    let rep = purity_check(&ws.sheaf, cfg.degree_bound());
    out.push_str(&rep.render());
    Ok(rep.passed())
}

fn decompose_report(cfg: &JobConfig, rs: Arc<RootSystem>, out: &mut String) -> Result<bool> {
    let ws = build_sheaf(rs.clone(), &cfg.word()?)?;
    let mut cache = BmCache::new(rs.clone());
    let rep = decompose(&ws.sheaf, &mut cache)?;
    let w = rs.weyl();
    for s in &rep.summands {
        let b = cache.get(s.x)?;
        let ranks: Vec<String> =
            b.support().iter().map(|&y| format!("{}:{}", w.name(y), fmt_graded(&b.stalk_graded_rank(y)))).collect();
        let _ = writeln!(out, "B({}) stalks {}", w.name(s.x), ranks.join(" "));
    }
    out.push_str(&rep.render(&rs));
    Ok(rep.complete())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> JobConfig {
        Settings::parse(text).unwrap().resolve().unwrap()
    }

    #[test]
    fn parse_and_overlay() {
        let base = Settings::parse("# job\ntype=A\nrank=2\nword=1,2,1\ncmd=galleries\n").unwrap();
        let top = Settings { command: Some("decompose".into()), ..Default::default() };
        let c = base.overlay(top).resolve().unwrap();
        assert_eq!(c.command, Command::Decompose);
        assert_eq!(c.word, vec![1, 2, 1]);
        assert!(Settings::parse("nonsense").is_err());
        assert!(Settings::parse("colour=red").is_err());
    }

    #[test]
    fn config_errors_exit_two() {
        let s = Settings::parse("type=A\nrank=1\nword=1,2\ncmd=galleries").unwrap();
        assert!(s.resolve().unwrap_err().is_config());
        let s = Settings::parse("type=A\nrank=2\nword=1\ncmd=sl2").unwrap();
        assert!(s.resolve().is_err());
        let long = vec!["1"; 13].join(",");
        let s = Settings::parse(&format!("type=A\nrank=1\nword={long}\ncmd=sheaf")).unwrap();
        assert!(s.resolve().is_err());
    }

    #[test]
    fn galleries_table() {
        let o = run(&cfg("type=A\nrank=1\nword=1,1\ncmd=galleries"));
        assert_eq!(o.status, 0);
        assert!(o.report.contains("galleries: 4"));
        assert_eq!(o.report.lines().count(), 7);
    }

    #[test]
    fn decompose_a2() {
        let o = run(&cfg("type=A\nrank=2\nword=1,2,1\ncmd=decompose"));
        assert_eq!(o.status, 0, "{}", o.report);
        assert!(o.report.contains("decomposition: B(s1s2s1) ⊕ B(s1)⟨1⟩"));
    }

    #[test]
    fn deterministic_reports() {
        let c = cfg("type=B\nrank=2\nword=1,2\ncmd=gkm-check\nseed=7");
        let a = run(&c);
        assert_eq!(a.status, 0, "{}", a.report);
        assert_eq!(a, run(&c));
    }
}

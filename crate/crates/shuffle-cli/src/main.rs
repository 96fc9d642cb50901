//! Command-line front end for the shuffle-algebra engine.
//!
//! Subcommands expose expression evaluation (`eval`, `psi`), specialization
//! maps (`specialize`), root-system enumeration (`roots`, `kp`), the
//! verification suites (`verify`), and the R-matrix Yang–Baxter check
//! (`rtt`). Exit codes: 0 success/pass, 1 suite failure, 2 usage error.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use shuffle_core::ring::{ULaurent, VRatFunc};
use shuffle_core::rootsys::{parse_word, Kind, KostantPartition, RootSystem};
use shuffle_core::rootvec::{vcomm, FreeElement};
use shuffle_core::rtt::RttContext;
use shuffle_core::shuffle::{Flavor, ShuffleContext, ShuffleElement};
use shuffle_core::specmaps::phi;
use shuffle_core::verify::{self, SuiteConfig, SuiteReport};

#[derive(Parser)]
#[command(name = "shuffle", about = "Exact shuffle-algebra engine", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct AlgebraOpts {
    /// Root-system type: A, B, or G2.
    #[arg(long = "type", default_value = "G2")]
    kind: String,
    /// Rank (ignored for G2).
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Flavor: trig (quantum loop) or rational (Yangian).
    #[arg(long, default_value = "trig")]
    flavor: String,
    /// Emit JSON instead of human-readable text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression in the free algebra; `--psi` maps it into the
    /// shuffle algebra.
    Eval {
        #[command(flatten)]
        opts: AlgebraOpts,
        #[arg(long)]
        expr: String,
        /// Apply the shuffle-algebra homomorphism to the result.
        #[arg(long)]
        psi: bool,
    },
    /// Evaluate an expression and map it into the shuffle algebra.
    Psi {
        #[command(flatten)]
        opts: AlgebraOpts,
        #[arg(long)]
        expr: String,
    },
    /// Apply the specialization map for a Kostant partition to Ψ(expr).
    Specialize {
        #[command(flatten)]
        opts: AlgebraOpts,
        #[arg(long)]
        expr: String,
        /// Kostant partition, e.g. "[1]:1,[2]:2" (root word : multiplicity).
        #[arg(long)]
        d: String,
    },
    /// List the positive roots in convex order.
    Roots {
        #[command(flatten)]
        opts: AlgebraOpts,
    },
    /// Enumerate Kostant partitions of a grading vector.
    Kp {
        #[command(flatten)]
        opts: AlgebraOpts,
        /// Grading vector, e.g. "1,2".
        #[arg(long)]
        grading: String,
    },
    /// Run verification suites; exit 1 if any check fails.
    Verify {
        #[command(flatten)]
        opts: AlgebraOpts,
        /// Suite name or "all": homomorphism, root_images, diagonal,
        /// vanishing, triangular, factorization, integral, yangian, ybe.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Inclusive loop-exponent window "lo:hi".
        #[arg(long, default_value = "0:1")]
        window: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Check the Yang–Baxter equation for the type-B R-matrix.
    Rtt {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Perturb one R-matrix entry first (the equation must then fail).
        #[arg(long)]
        mutate: bool,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn parse_kind(s: &str) -> Result<Kind> {
    match s {
        "A" | "a" => Ok(Kind::A),
        "B" | "b" => Ok(Kind::B),
        "G2" | "g2" | "G" | "g" => Ok(Kind::G2),
        other => bail!("unknown type {other:?}; expected A, B, or G2"),
    }
}

fn parse_flavor(s: &str) -> Result<Flavor> {
    match s {
        "trig" => Ok(Flavor::Trig),
        "rational" => Ok(Flavor::Rational),
        other => bail!("unknown flavor {other:?}; expected trig or rational"),
    }
}

fn context(opts: &AlgebraOpts) -> Result<ShuffleContext> {
    let kind = parse_kind(&opts.kind)?;
    let rs = RootSystem::new(kind, opts.n).map_err(|e| anyhow!("{e}"))?;
    Ok(ShuffleContext { rs, flavor: parse_flavor(&opts.flavor)? })
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s.split_once(':').context("window must look like lo:hi")?;
    let lo: i64 = lo.trim().parse().context("window lower bound")?;
    let hi: i64 = hi.trim().parse().context("window upper bound")?;
    if lo > hi {
        bail!("empty window {lo}:{hi}");
    }
    Ok((lo, hi))
}

fn parse_partition(rs: &RootSystem, s: &str) -> Result<KostantPartition> {
    let roots = rs.positive_roots();
    let mut d = vec![0u32; roots.len()];
    for piece in split_partition_entries(s) {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let (word, mult) = piece.rsplit_once(':').context("expected word:multiplicity")?;
        let word = parse_word(word).map_err(|e| anyhow!("{e}"))?;
        let idx = roots
            .iter()
            .position(|b| b.word == word)
            .with_context(|| format!("unknown root word {word:?}"))?;
        d[idx] += mult.trim().parse::<u32>().context("multiplicity")?;
    }
    Ok(KostantPartition { d })
}

/// Rejoin comma-separated pieces of `--d` whose root words contain commas.
fn split_partition_entries(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '[' => {
                depth += 1;
                cur.push(c);
            }
            ']' => {
                depth -= 1;
                cur.push(c);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

// --- expression parser ------------------------------------------------------
//
// expr   := term (('+' | '-') term)*
// term   := factor ('*' factor)*
// factor := atom ('^' integer)?
// atom   := e[i,r] | x[i,r] | comm(expr, expr; scalar) | '(' expr ')'
//         | rational literal | v '^' integer | hbar

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
    ctx: ShuffleContext,
}

impl<'a> ExprParser<'a> {
    fn new(src: &'a str, ctx: ShuffleContext) -> Self {
        ExprParser { src, pos: 0, ctx }
    }

    fn error(&self, expected: &str) -> anyhow::Error {
        anyhow!(
            "parse error at byte {} (near {:?}): expected {expected}",
            self.pos,
            &self.src[self.pos..self.src.len().min(self.pos + 12)]
        )
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("{c:?}")))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src[self.pos..].starts_with('-') {
            self.pos += 1;
        }
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| self.error("integer"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn expr(&mut self) -> Result<FreeElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?).map_err(|e| anyhow!("{e}"))?;
            } else if self.peek() == Some('-') && !self.src[self.pos..].starts_with("->") {
                self.pos += 1;
                acc = acc.sub(&self.term()?).map_err(|e| anyhow!("{e}"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FreeElement> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?).map_err(|e| anyhow!("{e}"))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreeElement> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("non-negative exponent"))?;
            return base.pow(e).map_err(|e| anyhow!("{e}"));
        }
        Ok(base)
    }

    fn generator(&mut self) -> Result<FreeElement> {
        self.expect('[')?;
        let i = self.integer()?;
        self.expect(',')?;
        let r = self.integer()?;
        self.expect(']')?;
        let i = usize::try_from(i).map_err(|_| self.error("positive generator index"))?;
        FreeElement::generator(self.ctx.clone(), i, r).map_err(|e| anyhow!("{e}"))
    }

    fn scalar(&mut self) -> Result<VRatFunc> {
        // Scalars inside comm(...;·) use the Laurent-polynomial grammar,
        // e.g. `v^3`, `-1`, `v^2 + v^-2`, `hbar`.
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0i32;
        for (i, c) in self.src[self.pos..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    self.pos += i;
                    let u = ULaurent::parse(self.src[start..start + i].trim())
                        .map_err(|e| anyhow!("{e}"))?;
                    return Ok(VRatFunc::from_laurent(u));
                }
                ')' => depth -= 1,
                _ => {}
            }
        }
        Err(self.error("scalar followed by ')'"))
    }

    fn atom(&mut self) -> Result<FreeElement> {
        self.skip_ws();
        if self.eat('(') {
            let inner = self.expr()?;
            self.expect(')')?;
            return Ok(inner);
        }
        let rest = &self.src[self.pos..];
        if rest.starts_with(|c: char| c.is_ascii_digit()) {
            // Rational literal: integer or integer/integer.
            let num = self.integer()?;
            let mut text = num.to_string();
            if self.eat('/') {
                text = format!("{num}/{}", self.integer()?);
            }
            let c = VRatFunc::from_laurent(ULaurent::parse(&text).map_err(|e| anyhow!("{e}"))?);
            return Ok(FreeElement::one(self.ctx.clone()).scale(&c));
        }
        let id = self.ident();
        match id.as_str() {
            "e" | "x" => self.generator(),
            "comm" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(';')?;
                let u = self.scalar()?;
                self.expect(')')?;
                vcomm(&a, &b, &u).map_err(|e| anyhow!("{e}"))
            }
            "v" | "hbar" => {
                let z = if self.eat('^') { self.integer()? } else { 1 };
                Ok(FreeElement::one(self.ctx.clone()).scale(&VRatFunc::v_pow(z)))
            }
            _ => Err(self.error("e[i,r], x[i,r], comm(...), literal, v^z, or hbar")),
        }
    }

    fn finish(mut self, out: FreeElement) -> Result<FreeElement> {
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.error("end of input"));
        }
        Ok(out)
    }
}

fn parse_expr(ctx: &ShuffleContext, src: &str) -> Result<FreeElement> {
    let mut p = ExprParser::new(src, ctx.clone());
    let out = p.expr()?;
    p.finish(out)
}

fn print_shuffle(elt: &ShuffleElement, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(elt)?);
    } else {
        println!("grading: {:?}", elt.k);
        println!("numerator: {}", elt.f);
        println!("denominator: {}", elt.denominator());
    }
    Ok(())
}

fn suite_by_name(cfg: &SuiteConfig, name: &str) -> Result<Vec<SuiteReport>> {
    let rep = match name {
        "all" => return Ok(verify::run_all(cfg)),
        "homomorphism" => verify::suite_homomorphism(cfg),
        "root_images" => verify::suite_root_images(cfg),
        "diagonal" => verify::suite_diagonal(cfg),
        "vanishing" => verify::suite_vanishing(cfg),
        "triangular" => verify::suite_triangular_independence(cfg),
        "factorization" => verify::suite_factorization(cfg),
        "integral" => verify::suite_integral_forms(cfg, 10),
        "yangian" => verify::suite_yangian(cfg, 10),
        "ybe" => verify::suite_ybe(cfg.rs.n, 2, cfg.seed),
        other => bail!("unknown suite {other:?}"),
    };
    Ok(vec![rep])
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Eval { opts, expr, psi } => {
            let ctx = context(&opts)?;
            let elt = parse_expr(&ctx, &expr)?;
            if psi {
                print_shuffle(&elt.psi().map_err(|e| anyhow!("{e}"))?, opts.json)?;
            } else if opts.json {
                println!("{}", serde_json::to_string_pretty(&elt.to_string())?);
            } else {
                println!("{elt}");
            }
            Ok(0)
        }
        Cmd::Psi { opts, expr } => {
            let ctx = context(&opts)?;
            let elt = parse_expr(&ctx, &expr)?.psi().map_err(|e| anyhow!("{e}"))?;
            print_shuffle(&elt, opts.json)?;
            Ok(0)
        }
        Cmd::Specialize { opts, expr, d } => {
            let ctx = context(&opts)?;
            let elt = parse_expr(&ctx, &expr)?.psi().map_err(|e| anyhow!("{e}"))?;
            let spec_d = parse_partition(&ctx.rs, &d)?;
            let result = phi(&spec_d, &elt).map_err(|e| anyhow!("{e}"))?;
            if opts.json {
                println!("{}", serde_json::to_string_pretty(&result)?);
            } else {
                println!("partition: {:?}", result.partition);
                println!("value: {}", result.poly);
            }
            Ok(0)
        }
        Cmd::Roots { opts } => {
            let ctx = context(&opts)?;
            let roots = ctx.rs.positive_roots();
            if opts.json {
                let words: Vec<String> = roots.iter().map(|b| b.word_string()).collect();
                println!("{}", serde_json::to_string_pretty(&words)?);
            } else {
                for b in roots {
                    println!("{b}");
                }
            }
            Ok(0)
        }
        Cmd::Kp { opts, grading } => {
            let ctx = context(&opts)?;
            let k: Vec<u32> = grading
                .split(',')
                .map(|s| s.trim().parse::<u32>().context("grading entry"))
                .collect::<Result<_>>()?;
            if k.len() != ctx.rs.n {
                bail!("grading must have {} entries", ctx.rs.n);
            }
            let parts = ctx.rs.kostant_partitions(&k);
            if opts.json {
                let maps: Vec<_> = parts.iter().map(|p| p.to_map(&ctx.rs)).collect();
                println!("{}", serde_json::to_string_pretty(&maps)?);
            } else {
                for p in parts {
                    let map = p.to_map(&ctx.rs);
                    let line: Vec<String> =
                        map.iter().map(|(w, m)| format!("{w}:{m}")).collect();
                    println!("{}", if line.is_empty() { "0".into() } else { line.join(", ") });
                }
            }
            Ok(0)
        }
        Cmd::Verify { opts, suite, window, seed } => {
            let ctx = context(&opts)?;
            let mut cfg = SuiteConfig::new(ctx.rs, ctx.flavor);
            cfg.window = parse_window(&window)?;
            cfg.seed = seed;
            let reports = suite_by_name(&cfg, &suite)?;
            let all_pass = reports.iter().all(|r| r.pass());
            if opts.json {
                println!("{}", serde_json::to_string_pretty(&reports)?);
            } else {
                for r in &reports {
                    println!(
                        "{}: {} ({} checks, {} ms)",
                        r.suite,
                        if r.pass() { "pass" } else { "FAIL" },
                        r.checks,
                        r.elapsed_ms
                    );
                    for f in &r.failures {
                        println!("  failed: {} — {}", f.check, f.detail);
                    }
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Cmd::Rtt { n, trials, seed, mutate, json } => {
            let ctx = RttContext::new(n).map_err(|e| anyhow!("{e}"))?;
            let report = shuffle_core::rtt::check_ybe(&ctx, trials, seed, mutate);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                for t in &report.trials {
                    println!(
                        "v={} spectral=({}, {}, {}): {}",
                        t.v,
                        t.spectral[0],
                        t.spectral[1],
                        t.spectral[2],
                        if t.holds { "holds" } else { "FAILS" }
                    );
                }
                println!("all_hold: {}", report.all_hold);
            }
            Ok(if report.all_hold { 0 } else { 1 })
        }
    }
}

//! Execution of each subcommand into a [`Report`].

use std::path::Path;

use anyhow::{bail, Context, Result};
use hypercert_core::arith::{
    certified_compare, escalate, parse_rational, pk, pk_bounds_check, stirling_bounds_check,
    verify_with_escalation,
};
use hypercert_core::energy::{
    energy_bruteforce, exhaustive_verify, random_verify, sum_tally, verify_energy_bound,
    EnergySweep, DEFAULT_BRUTEFORCE_CAP,
};
use hypercert_core::inequality::{
    legendre_reformulation_check, ode_residual, verify_ck_negative, verify_main_inequality,
    verify_psi_nine, verify_small_x_ranges,
};
use hypercert_core::means::{
    expansion_coefficient, expansion_limit, hk_ode_residual, r_k, ray_grid, tilde_c_positivity,
    verify_hk_min, verify_lower, verify_prior_bounds, verify_upper, MeanComparisonReport,
};
use hypercert_core::rug::Rational;
use hypercert_core::walk::{
    equivalence_check, sharpness_scan, simulate, verify_probineq_exponent, WalkExponent,
};
use hypercert_core::{
    Certainty, GridSpec, HypercubeSubset, Interval, PrecisionPolicy, Verdict, WalkLaw,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::{
    Command, Direction, EnergyCommand, GlobalOpts, IneqCommand, MeansCommand, OdeCommand, SetInput,
    WalkCommand,
};
use crate::report::{Record, Report};

/// Inclusive `lo..hi` (or `lo..=hi`), or a single value.
pub fn parse_range(text: &str) -> Result<(u32, u32)> {
    let text = text.trim();
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (text, text),
    };
    let lo: u32 = lo
        .trim()
        .parse()
        .with_context(|| format!("bad range start in {text:?}"))?;
    let hi: u32 = hi
        .trim()
        .parse()
        .with_context(|| format!("bad range end in {text:?}"))?;
    if lo > hi {
        bail!("empty range {text:?}");
    }
    Ok((lo, hi))
}

fn range_text((lo, hi): (u32, u32)) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("{lo}..{hi}")
    }
}

fn positive_range(text: &str) -> Result<(u32, u32)> {
    let r = parse_range(text)?;
    if r.0 == 0 {
        bail!("k must be positive");
    }
    Ok(r)
}

fn rational(text: &str) -> Result<Rational> {
    Ok(parse_rational(text)?)
}

fn certainty_verdict(c: Certainty) -> Verdict {
    c.into()
}

struct Ctx {
    policy: PrecisionPolicy,
    digits: usize,
    global: Vec<(String, String)>,
}

impl Ctx {
    fn report(&self, path: &str, mut params: Vec<(&str, String)>) -> Report {
        let mut all: Vec<(String, String)> =
            params.drain(..).map(|(k, v)| (k.to_string(), v)).collect();
        all.extend(self.global.iter().cloned());
        Report::new(path, all, self.digits as u32)
    }

    fn interval(&self, i: &Interval) -> String {
        format!(
            "[{}, {}]",
            i.lo_decimal(self.digits),
            i.hi_decimal(self.digits)
        )
    }
}

pub fn execute(command: &Command, g: &GlobalOpts) -> Result<Report> {
    if g.prec > g.prec_cap {
        bail!("--prec {} exceeds --prec-cap {}", g.prec, g.prec_cap);
    }
    let ctx = Ctx {
        policy: PrecisionPolicy::new(g.prec, g.prec_cap),
        digits: g.digits as usize,
        global: vec![
            ("prec".into(), g.prec.to_string()),
            ("prec-cap".into(), g.prec_cap.to_string()),
            ("digits".into(), g.digits.to_string()),
        ],
    };
    let mut report = match command {
        Command::Pk(a) => pk_cmd(&ctx, &a.k)?,
        Command::Ineq(IneqCommand::Main { k, grid }) => ineq_main(&ctx, k, *grid)?,
        Command::Ineq(IneqCommand::Lemmas { k, grid }) => ineq_lemmas(&ctx, k, *grid)?,
        Command::Ineq(IneqCommand::Legendre { k, samples, seed }) => {
            ineq_legendre(&ctx, k, *samples, *seed)?
        }
        Command::Ode(OdeCommand::Residual { k, samples, seed }) => {
            ode_residuals(&ctx, k, *samples, *seed)?
        }
        Command::Energy(EnergyCommand::Compute { k, input }) => {
            energy_single(&ctx, *k, input, false)?
        }
        Command::Energy(EnergyCommand::Verify { k, input }) => {
            energy_single(&ctx, *k, input, true)?
        }
        Command::Energy(EnergyCommand::Exhaustive { d, k }) => energy_exhaustive(&ctx, *d, k)?,
        Command::Energy(EnergyCommand::Random {
            d,
            k,
            samples,
            seed,
        }) => energy_random(&ctx, *d, *k, *samples, *seed)?,
        Command::Walk(WalkCommand::Verify { k, q_grid, p }) => {
            walk_verify(&ctx, k, *q_grid, p.as_deref())?
        }
        Command::Walk(WalkCommand::Equivalence { k, q_grid }) => {
            walk_equivalence(&ctx, k, *q_grid)?
        }
        Command::Walk(WalkCommand::Sharpness { k, deficit }) => walk_sharpness(&ctx, k, deficit)?,
        Command::Walk(WalkCommand::Simulate {
            q,
            right_prob,
            k,
            trials,
            seed,
            z_max,
        }) => walk_simulate(
            &ctx,
            q.as_deref(),
            right_prob.as_deref(),
            *k,
            *trials,
            *seed,
            *z_max,
        )?,
        Command::Means(MeansCommand::Verify {
            k,
            grid,
            direction,
            x_max,
            prior,
        }) => means_verify(&ctx, k, *grid, *direction, x_max, *prior)?,
        Command::Means(MeansCommand::Expand { k, eps, tolerance }) => {
            means_expand(&ctx, k, eps, tolerance)?
        }
        Command::Means(MeansCommand::Hk { k, grid }) => means_hk(&ctx, k, *grid)?,
    };
    report.finish();
    Ok(report)
}

fn pk_cmd(ctx: &Ctx, k: &str) -> Result<Report> {
    let range = positive_range(k)?;
    let mut report = ctx.report("pk", vec![("k", range_text(range))]);
    let recs: Vec<Record> = (range.0..=range.1)
        .into_par_iter()
        .map(|k| {
            let prec = ctx.policy.start;
            let verdict = if k == 1 {
                Verdict::ExactEquality
            } else {
                verify_with_escalation(|p| pk_bounds_check(k, p), prec, ctx.policy.cap).into()
            };
            Record::new(format!("p_k bounds k={k}"), verdict, prec)
                .detail("p_k", ctx.interval(&pk(k, prec)))
                .detail("r_k", ctx.interval(&r_k(k, prec).expect("k positive")))
        })
        .collect();
    recs.into_iter().for_each(|r| report.push(r));
    Ok(report)
}

fn ineq_main(ctx: &Ctx, k: &str, grid: usize) -> Result<Report> {
    let range = positive_range(k)?;
    let spec = GridSpec::unit(grid)?;
    let mut report = ctx.report(
        "ineq main",
        vec![("k", range_text(range)), ("grid", grid.to_string())],
    );
    for k in range.0..=range.1 {
        for r in verify_main_inequality(k, &spec, ctx.policy)? {
            report.push(Record::from_report(&r, ctx.digits));
        }
    }
    Ok(report)
}

fn ineq_lemmas(ctx: &Ctx, k: &str, grid: usize) -> Result<Report> {
    let range = positive_range(k)?;
    let mut report = ctx.report(
        "ineq lemmas",
        vec![("k", range_text(range)), ("grid", grid.to_string())],
    );
    let lo2 = range.0.max(2);
    if lo2 <= range.1 {
        for r in verify_small_x_ranges(lo2, range.1, ctx.policy)? {
            report.push(Record::from_report(&r, ctx.digits));
        }
        let spec = GridSpec::right_open(Rational::from((1, 10)), Rational::from((1, 2)), grid)?;
        for k in lo2..=range.1 {
            for r in verify_ck_negative(k, &spec, ctx.policy)? {
                report.push(Record::from_report(&r, ctx.digits));
            }
        }
        for k in lo2..=range.1.min(10) {
            let c = verify_psi_nine(k, ctx.policy)?;
            report.push(Record::new(
                format!("psi(9)>0 k={k}"),
                c.into(),
                ctx.policy.start,
            ));
        }
        for k in lo2..=range.1 {
            let c =
                verify_with_escalation(|p| pk_bounds_check(k, p), ctx.policy.start, ctx.policy.cap);
            report.push(Record::new(
                format!("p_k bounds k={k}"),
                c.into(),
                ctx.policy.start,
            ));
        }
    }
    for n in range.0..=range.1 {
        let c = verify_with_escalation(
            |p| stirling_bounds_check(n, p),
            ctx.policy.start,
            ctx.policy.cap,
        );
        report.push(Record::new(
            format!("stirling n={n}"),
            c.into(),
            ctx.policy.start,
        ));
    }
    Ok(report)
}

/// Random rational in `(0, 1)` with denominator in `2..=1000`.
fn sample_unit(rng: &mut ChaCha8Rng) -> Rational {
    let d: i64 = rng.gen_range(2..=1000);
    let n: i64 = rng.gen_range(1..d);
    Rational::from((n, d))
}

fn ineq_legendre(ctx: &Ctx, k: &str, samples: u64, seed: u64) -> Result<Report> {
    let range = positive_range(k)?;
    let mut report = ctx.report(
        "ineq legendre",
        vec![
            ("k", range_text(range)),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
        ],
    );
    let mut cases = Vec::new();
    for k in range.0..=range.1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::from(k));
        for _ in 0..samples {
            let mut x = sample_unit(&mut rng);
            while x == (1, 2) {
                x = sample_unit(&mut rng);
            }
            cases.push((k, x));
        }
    }
    let recs: Vec<Record> = cases
        .par_iter()
        .map(|(k, x)| {
            let c = legendre_reformulation_check(*k, x, ctx.policy).expect("x != 1/2");
            Record::new(
                format!("legendre k={k} x={x}"),
                certainty_verdict(c),
                ctx.policy.start,
            )
        })
        .collect::<Vec<_>>();
    recs.into_iter().for_each(|r| report.push(r));
    Ok(report)
}

fn residual_record(ctx: &Ctx, case: String, f: impl Fn(u32) -> Interval) -> Record {
    let e = escalate(ctx.policy, |prec| {
        let r = f(prec);
        let c = if !r.contains_zero() {
            Certainty::CertainFalse
        } else if r.log2_width() <= -f64::from(prec / 2) {
            Certainty::CertainTrue
        } else {
            Certainty::Undecided
        };
        (c, r)
    });
    let width = e.value.log2_width();
    Record::new(case, e.certainty.into(), e.precision)
        .detail("residual", ctx.interval(&e.value))
        .detail("log2_width", format!("{width:.1}"))
}

fn ode_residuals(ctx: &Ctx, k: &str, samples: u64, seed: u64) -> Result<Report> {
    let range = positive_range(k)?;
    let mut report = ctx.report(
        "ode residual",
        vec![
            ("k", range_text(range)),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
        ],
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(u32, Rational)> = (0..samples)
        .map(|_| (rng.gen_range(range.0..=range.1), sample_unit(&mut rng)))
        .collect();
    let recs: Vec<[Record; 2]> = cases
        .par_iter()
        .map(|(k, x)| {
            [
                residual_record(ctx, format!("f_k residual k={k} x={x}"), |p| {
                    ode_residual(*k, x, p).expect("x in (0,1)")
                }),
                residual_record(ctx, format!("h_k residual k={k} x={x}"), |p| {
                    hk_ode_residual(*k, x, p).expect("x in (0,1)")
                }),
            ]
        })
        .collect();
    recs.into_iter().flatten().for_each(|r| report.push(r));
    Ok(report)
}

fn load_set(input: &SetInput) -> Result<(HypercubeSubset, (&'static str, String))> {
    match (&input.set, &input.mask, input.d) {
        (Some(path), None, None) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read set file {}", path.display()))?;
            let a = HypercubeSubset::parse_set_file(&text)
                .with_context(|| format!("malformed set file {}", path.display()))?;
            Ok((a, ("set", path_text(path))))
        }
        (None, Some(mask), Some(d)) => {
            let a = HypercubeSubset::from_hex(d, mask)?;
            Ok((a, ("mask", format!("{} --d {d}", a_hex(mask)))))
        }
        _ => bail!("give either --set FILE or --mask HEX --d D"),
    }
}

fn a_hex(mask: &str) -> String {
    mask.trim()
        .trim_start_matches("0x")
        .trim_start_matches("0X")
        .to_string()
}

fn path_text(p: &Path) -> String {
    p.display().to_string()
}

fn energy_single(ctx: &Ctx, k: u32, input: &SetInput, verify: bool) -> Result<Report> {
    let (a, source) = load_set(input)?;
    if a.is_empty() {
        bail!("the set is empty");
    }
    let path = if verify {
        "energy verify"
    } else {
        "energy compute"
    };
    let mut report = ctx.report(path, vec![("k", k.to_string()), source]);
    let r = verify_energy_bound(&a, k, ctx.policy)?;
    let mut rec = Record::new(format!("k={k} A=0x{}", a.to_hex()), r.verdict, r.precision)
        .margin(&r.margin, ctx.digits)
        .detail("d", a.dim())
        .detail("size", r.size)
        .detail("energy", &r.energy)
        .detail("bound", ctx.interval(&r.bound(k)));
    if verify {
        let brute = match energy_bruteforce(&a, k, DEFAULT_BRUTEFORCE_CAP) {
            Ok(e) if e == r.energy => "agrees",
            Ok(_) => {
                rec.raw = Verdict::CertainFalse;
                rec.verdict = Verdict::CertainFalse.label();
                "disagrees"
            }
            Err(_) => "skipped",
        };
        rec = rec.detail("bruteforce", brute);
    }
    report.push(rec);
    if !verify {
        let tally = sum_tally(&a, k)?;
        let nz = tally.nonzero();
        report.note("tally_support", nz.len());
        report.note("tally_mass", tally.mass());
        if nz.len() <= 64 {
            let listing = nz
                .iter()
                .map(|(s, c)| {
                    let s: Vec<String> = s.iter().map(u32::to_string).collect();
                    format!("({}):{c}", s.join(","))
                })
                .collect::<Vec<_>>()
                .join(" ");
            report.note("tally", listing);
        }
    }
    Ok(report)
}

fn sweep_into(
    ctx: &Ctx,
    report: &mut Report,
    sweep: &EnergySweep,
    label: impl Fn(usize, &HypercubeSubset) -> String,
) {
    let k = sweep.k;
    for (i, (a, r)) in sweep.cases.iter().enumerate() {
        report.push(
            Record::new(label(i, a), r.verdict, r.precision)
                .margin(&r.margin, ctx.digits)
                .detail("size", r.size)
                .detail("energy", &r.energy),
        );
    }
    report.note(
        &format!("k={k} equality_witnesses"),
        sweep.equality_witnesses.len(),
    );
    if let Some((a, ratio)) = &sweep.maximizer {
        report.note(
            &format!("k={k} maximizer"),
            format!("0x{} log2E/log2|A|={}", a.to_hex(), ctx.interval(ratio)),
        );
    }
}

fn energy_exhaustive(ctx: &Ctx, d: u32, k: &str) -> Result<Report> {
    let range = positive_range(k)?;
    let mut report = ctx.report(
        "energy exhaustive",
        vec![("d", d.to_string()), ("k", range_text(range))],
    );
    for k in range.0..=range.1 {
        let sweep = exhaustive_verify(d, k, ctx.policy)?;
        sweep_into(ctx, &mut report, &sweep, |_, a| {
            format!("k={k} A=0x{}", a.to_hex())
        });
    }
    Ok(report)
}

fn energy_random(ctx: &Ctx, d: u32, k: u32, samples: u64, seed: u64) -> Result<Report> {
    let mut report = ctx.report(
        "energy random",
        vec![
            ("d", d.to_string()),
            ("k", k.to_string()),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
        ],
    );
    let sweep = random_verify(d, k, samples, seed, ctx.policy)?;
    sweep_into(ctx, &mut report, &sweep, |i, a| {
        format!("k={k} sample={i} A=0x{}", a.to_hex())
    });
    Ok(report)
}

fn q_values(n: usize) -> Result<Vec<Rational>> {
    Ok(GridSpec::unit(n)?.points())
}

fn walk_verify(ctx: &Ctx, k: &str, q_grid: usize, p: Option<&str>) -> Result<Report> {
    let range = positive_range(k)?;
    let mut params = vec![("k", range_text(range)), ("q-grid", q_grid.to_string())];
    let exponent = match p {
        Some(text) => {
            let r = rational(text)?;
            if r <= 0 {
                bail!("--p must be positive");
            }
            params.push(("p", r.to_string()));
            WalkExponent::Rational(r)
        }
        None => WalkExponent::Sharp,
    };
    let mut report = ctx.report("walk verify", params);
    let qs = q_values(q_grid)?;
    let cases: Vec<(u32, &Rational)> = (range.0..=range.1)
        .flat_map(|k| qs.iter().map(move |q| (k, q)))
        .collect();
    let recs = cases
        .par_iter()
        .map(|(k, q)| {
            let law = WalkLaw::new((*q).clone())?;
            let r = verify_probineq_exponent(&law, *k, &exponent, ctx.policy)?;
            Ok(Record::from_report(&r, ctx.digits))
        })
        .collect::<Result<Vec<_>>>()?;
    recs.into_iter().for_each(|r| report.push(r));
    Ok(report)
}

fn walk_equivalence(ctx: &Ctx, k: &str, q_grid: usize) -> Result<Report> {
    let range = positive_range(k)?;
    let mut report = ctx.report(
        "walk equivalence",
        vec![("k", range_text(range)), ("q-grid", q_grid.to_string())],
    );
    let qs = q_values(q_grid)?;
    let cases: Vec<(u32, &Rational)> = (range.0..=range.1)
        .flat_map(|k| qs.iter().map(move |q| (k, q)))
        .collect();
    let recs = cases
        .par_iter()
        .map(|(k, q)| {
            let law = WalkLaw::new((*q).clone())?;
            let c = equivalence_check(&law, *k, ctx.policy)?;
            Ok(Record::new(
                format!("equivalence k={k} q={q}"),
                c.into(),
                ctx.policy.start,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    recs.into_iter().for_each(|r| report.push(r));
    Ok(report)
}

fn walk_sharpness(ctx: &Ctx, k: &str, deficit: &str) -> Result<Report> {
    let range = positive_range(k)?;
    let deficit = rational(deficit)?;
    let mut report = ctx.report(
        "walk sharpness",
        vec![("k", range_text(range)), ("deficit", deficit.to_string())],
    );
    for k in range.0..=range.1 {
        let c = sharpness_scan(k, &deficit, ctx.policy)?;
        report.push(
            Record::new(
                format!("p=p_k-{deficit} k={k} q=1/2"),
                c.into(),
                ctx.policy.start,
            )
            .detail(
                "p",
                ctx.interval(
                    &pk(k, ctx.policy.start)
                        .sub(&Interval::from_rational(&deficit, ctx.policy.start)),
                ),
            ),
        );
    }
    Ok(report)
}

fn walk_simulate(
    ctx: &Ctx,
    q: Option<&str>,
    right_prob: Option<&str>,
    k: u32,
    trials: u64,
    seed: u64,
    z_max: f64,
) -> Result<Report> {
    let (law, source) = match (q, right_prob) {
        (Some(q), None) => {
            let law = WalkLaw::new(rational(q)?)?;
            let s = ("q", law.q().to_string());
            (law, s)
        }
        (None, Some(p)) => {
            let p = rational(p)?;
            (
                WalkLaw::from_right_prob(p.clone())?,
                ("right-prob", p.to_string()),
            )
        }
        _ => bail!("give exactly one of --q and --right-prob"),
    };
    if z_max.is_nan() || z_max <= 0.0 {
        bail!("--z-max must be positive");
    }
    let mut report = ctx.report(
        "walk simulate",
        vec![
            source,
            ("k", k.to_string()),
            ("trials", trials.to_string()),
            ("seed", seed.to_string()),
            ("z-max", z_max.to_string()),
        ],
    );
    let sim = simulate(&law, k, trials, seed)?;
    for e in &sim.endpoints {
        let verdict = if e.z.abs() <= z_max {
            Verdict::CertainTrue
        } else {
            Verdict::CertainFalse
        };
        report.push(
            Record::new(format!("S_k={} k={k} q={}", e.value, law.q()), verdict, 0)
                .detail("exact", &e.exact)
                .detail("count", e.count)
                .detail("frequency", format!("{:.6}", e.frequency))
                .detail("z", format!("{:.3}", e.z)),
        );
    }
    let hist = sim
        .histogram
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{}:{c}", i as i64 - i64::from(k)))
        .collect::<Vec<_>>()
        .join(" ");
    report.note("histogram", hist);
    report.note("max_abs_z", format!("{:.3}", sim.max_abs_z));
    Ok(report)
}

fn push_comparison(ctx: &Ctx, report: &mut Report, c: &MeanComparisonReport) {
    for r in &c.reports {
        report.push(Record::from_report(r, ctx.digits));
    }
    if let Some(m) = &c.worst_margin {
        report.note(&format!("{} worst margin", c.relation), ctx.interval(m));
    }
}

fn means_verify(
    ctx: &Ctx,
    k: &str,
    grid: usize,
    direction: Direction,
    x_max: &str,
    prior: bool,
) -> Result<Report> {
    let range = positive_range(k)?;
    let x_max = rational(x_max)?;
    if x_max <= 0 {
        bail!("--x-max must be positive");
    }
    let dir = match direction {
        Direction::Upper => "upper",
        Direction::Lower => "lower",
        Direction::Both => "both",
    };
    let mut params = vec![
        ("k", range_text(range)),
        ("grid", grid.to_string()),
        ("direction", dir.to_string()),
        ("x-max", x_max.to_string()),
    ];
    if prior {
        params.push(("prior", "true".to_string()));
    }
    let mut report = ctx.report("means verify", params);
    let pairs = ray_grid(grid, &x_max)?;
    for k in range.0..=range.1 {
        if matches!(direction, Direction::Upper | Direction::Both) {
            push_comparison(ctx, &mut report, &verify_upper(k, &pairs, ctx.policy)?);
        }
        if matches!(direction, Direction::Lower | Direction::Both) {
            push_comparison(ctx, &mut report, &verify_lower(k, &pairs, ctx.policy)?);
        }
        if prior {
            for c in verify_prior_bounds(k, &pairs, ctx.policy)? {
                push_comparison(ctx, &mut report, &c);
            }
        }
    }
    Ok(report)
}

fn means_expand(ctx: &Ctx, k: &str, eps: &str, tolerance: &str) -> Result<Report> {
    let range = positive_range(k)?;
    let eps = rational(eps)?;
    let tol = rational(tolerance)?;
    if tol <= 0 {
        bail!("--tolerance must be positive");
    }
    let mut report = ctx.report(
        "means expand",
        vec![
            ("k", range_text(range)),
            ("eps", eps.to_string()),
            ("tolerance", tol.to_string()),
        ],
    );
    for k in range.0..=range.1 {
        expansion_coefficient(k, &eps, ctx.policy.start)?;
        let target = expansion_limit(k);
        let e = escalate(ctx.policy, |prec| {
            let c = expansion_coefficient(k, &eps, prec).expect("eps checked");
            if target == 0 {
                let exact = c.is_point() && c.contains_zero();
                let verdict = if exact {
                    Certainty::CertainTrue
                } else {
                    let abs = c.max(&c.neg());
                    certified_compare(&abs, &Interval::from_rational(&tol, prec))
                };
                return (verdict, (c, None));
            }
            let t = Interval::from_rational(&target, prec);
            let diff = c.sub(&t);
            let rel = diff.max(&diff.neg()).div(&t);
            let verdict = certified_compare(&rel, &Interval::from_rational(&tol, prec));
            (verdict, (c, Some(rel)))
        });
        let (c, rel) = e.value;
        let verdict = if target == 0 && c.is_point() && c.contains_zero() {
            Verdict::ExactEquality
        } else {
            e.certainty.into()
        };
        let mut rec = Record::new(format!("expansion k={k} eps={eps}"), verdict, e.precision)
            .detail("coefficient", ctx.interval(&c))
            .detail("limit", &target);
        if let Some(rel) = rel {
            rec = rec.detail("relative_error", ctx.interval(&rel));
        }
        report.push(rec);
    }
    Ok(report)
}

fn means_hk(ctx: &Ctx, k: &str, grid: usize) -> Result<Report> {
    let range = positive_range(k)?;
    if grid < 3 {
        bail!("--grid must be at least 3");
    }
    let mut report = ctx.report(
        "means hk",
        vec![("k", range_text(range)), ("grid", grid.to_string())],
    );
    let unit = GridSpec::unit(grid)?;
    let n = grid as i64;
    let inner = GridSpec::closed(
        Rational::from((1, 2 * n)),
        Rational::from((n - 1, 2 * n)),
        grid - 1,
    )?;
    for k in range.0..=range.1 {
        for r in verify_hk_min(k, &unit, ctx.policy)? {
            report.push(Record::from_report(&r, ctx.digits));
        }
        if k >= 2 {
            for r in tilde_c_positivity(k, &inner, ctx.policy)? {
                report.push(Record::from_report(&r, ctx.digits));
            }
        }
    }
    Ok(report)
}

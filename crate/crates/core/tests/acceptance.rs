//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or exceeds its runtime budget.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use khseq::ff::{FieldChar, Poly};
use khseq::laurent::{cf_expand, LaurentSeries};
use khseq::quality::FpMatrix;
use khseq::report::{format_rational, to_f64};
use khseq::seqgen::{
    digital_point, halton_point, residue_block_indices, GeneratingMatrix, HybridSpec,
};
use khseq::theorems::{
    example2_check, lemma3_mc, lemma4_mc, lemma56_sweep, prop1_check, prop2_bound,
    quadratic_identity_residuals, thm1_sweep, thm2_scaling, thm3_witness, CylinderSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;
const MC_SAMPLES: u64 = 100_000;
const Z_LIMIT: f64 = 3.0;

/// Frozen `N D*_N` for the Gap2 / base-X hybrid at precision 32, N = 2^4..2^12.
const THM2_FROZEN: [(u64, &str); 9] = [
    (16, "5132197/2^21"),
    (32, "4083621/2^20"),
    (64, "6590217/2^20"),
    (128, "10308501/2^20"),
    (256, "28095885/2^21"),
    (512, "39156891/2^21"),
    (1024, "4439183/2^20"),
    (2048, "15800115/2^21"),
    (4096, "27815773/2^21"),
];
/// Fitted once on the frozen table: `N D*_N <= C sqrt(N) ln^2 N`.
const THM2_C: f64 = 0.08;
/// Fitted once on the frozen table: `N D*_N <= C' * prop2 bound` for `p = 2, t = 1`.
const PROP2_C: f64 = 0.0012;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn f2() -> FieldChar {
    FieldChar::TWO
}

fn x1() -> Poly {
    Poly::from_coeffs(f2(), &[1, 1])
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_van_der_corput() -> Outcome {
    for n in 0..1u64 << 12 {
        let pt = halton_point(n, &[Poly::x(f2())], 12).map_err(err)?;
        let reversed = (0..12).fold(0u128, |acc, b| (acc << 1) | ((n >> b) & 1) as u128);
        ensure(pt.leading(0, 12) == reversed, format!("n = {n}"))?;
    }
    Ok("4096 points equal the bit-reversal radical inverse".into())
}

fn c2_pascal() -> Outcome {
    let p = f2();
    for m in 1..=16 {
        let c = GeneratingMatrix::Halton(x1()).truncate(m, m).map_err(err)?;
        let pascal = FpMatrix::from_fn(p, m, m, |j, k| (k & j == j) as u16);
        ensure(c == pascal, format!("implied matrix differs at m = {m}"))?;
    }
    let m = 10;
    let mats = [
        FpMatrix::identity(p, m),
        FpMatrix::from_fn(p, m, m, |j, k| (k & j == j) as u16),
    ];
    for n in 0..1u64 << m {
        let h = halton_point(n, &[Poly::x(p), x1()], m).map_err(err)?;
        let d = digital_point(&mats, n).map_err(err)?;
        ensure(h == d, format!("point {n} differs from the Pascal construction"))?;
    }
    Ok("Pascal matrix for m <= 16, 1024 points match".into())
}

fn c3_example2() -> Outcome {
    let g = LaurentSeries::gap2();
    let cf = cf_expand(&g, 64).map_err(err)?;
    let (x, xx) = (Poly::x(f2()), Poly::monomial(f2(), 1, 2));
    let alternating = cf
        .quotients()
        .iter()
        .enumerate()
        .all(|(i, a)| a == if i % 2 == 0 { &x } else { &xx });
    ensure(alternating && cf.certified_count() >= 10, "continued fraction prefix")?;
    let res = quadratic_identity_residuals(&g, 64).map_err(err)?;
    ensure(res.iter().all(|&c| c == 0), "L^2 + X^2 L + X does not vanish")?;
    let report = example2_check(12).map_err(err)?;
    ensure(report.pass, report.to_string())?;
    Ok(format!("{} quotients certified, identity and (1,m,1)-nets for m <= 12", cf.certified_count()))
}

fn c4_prop1() -> Outcome {
    let g = LaurentSeries::gap2();
    let bases = [Poly::x(f2()), x1(), Poly::from_coeffs(f2(), &[1, 1, 1])];
    let mut claims = Vec::new();
    for b in &bases {
        let r = prop1_check(&g, b, 12).map_err(err)?;
        ensure(r.t_claim == 2 + b.deg().unwrap() - 1, format!("t_claim for B = {b}"))?;
        ensure(
            r.rows.iter().all(|row| row.net == Some(true) && row.t_rank <= r.t_claim),
            r.to_report().to_string(),
        )?;
        claims.push(format!("{b}:t={}", r.t_claim));
    }
    Ok(claims.join(" "))
}

fn c5_thm3() -> Outcome {
    let mut out = Vec::new();
    for (level, n, nl) in [(1, 8u64, 2u64), (2, 512, 16), (3, 2_097_152, 1024)] {
        let w = thm3_witness(level).map_err(err)?;
        ensure(w.n_points == n && w.n_lambda == nl, format!("level {level} parameters"))?;
        ensure(w.count == 0, format!("level {level}: {} points in I_n", w.count))?;
        ensure(w.identity_ok, format!("level {level}: exponent identity"))?;
        out.push(format!("N={n}:ND>={nl}"));
    }
    Ok(out.join(" "))
}

fn c6_thm2() -> Outcome {
    let spec = HybridSpec::new(vec![LaurentSeries::gap2()], vec![Poly::x(f2())], 32).map_err(err)?;
    let ns: Vec<u64> = THM2_FROZEN.iter().map(|&(n, _)| n).collect();
    let tab = thm2_scaling(&spec, &ns).map_err(err)?;
    for (row, &(n, frozen)) in tab.rows.iter().zip(&THM2_FROZEN) {
        let got = format_rational(&row.nd, f2());
        ensure(got == frozen, format!("N = {n}: N D* = {got}, frozen {frozen}"))?;
        ensure(row.ratio <= THM2_C, format!("N = {n}: ratio {:.6} > {THM2_C}", row.ratio))?;
        let bound = prop2_bound(&LaurentSeries::gap2(), &[Poly::x(f2())], n).map_err(err)?;
        let scaled = to_f64(&row.nd) / bound.value as f64;
        ensure(scaled <= PROP2_C, format!("N = {n}: N D* / prop2 = {scaled:.6}"))?;
    }
    ensure(!tab.growth_flag, "ratio grows across the last doublings")?;
    Ok(format!("max ratio {:.6} <= {THM2_C}", tab.max_ratio()))
}

fn c7_thm1() -> Outcome {
    let spec = HybridSpec::new(vec![LaurentSeries::gap2()], vec![Poly::x(f2())], 8).map_err(err)?;
    let r = thm1_sweep(&spec, 4, 3, 8).map_err(err)?;
    ensure(r.pass, r.to_string())?;
    Ok(format!(
        "{} interval/block pairs fair, max u = {}",
        r.get("checked").unwrap_or("?"),
        r.get("max_u").unwrap_or("?")
    ))
}

fn c8_lemma2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..100 {
        let p = FieldChar::new(if rng.gen_bool(0.5) { 2 } else { 3 }).map_err(err)?;
        let e = rng.gen_range(1..=3usize);
        let mut bc: Vec<u16> = (0..e).map(|_| rng.gen_range(0..p.get())).collect();
        bc.push(1);
        let b = Poly::from_residues(p, bc);
        let r = Poly::from_residues(p, (0..e).map(|_| rng.gen_range(0..p.get())).collect());
        let u = rng.gen_range(0..=6u32);
        let k = rng.gen_range(0..=4u64);
        let blk = residue_block_indices(p, k, u, &b, &r).map_err(err)?;
        let w = p.as_u64().pow(u + e as u32);
        let brute: Vec<u64> = (k * w..(k + 1) * w)
            .filter(|&n| Poly::from_int(n, p).rem(&b).map(|x| x == r).unwrap_or(false))
            .collect();
        ensure(blk.indices == brute, format!("case {case}: p={p} B={b} R={r} u={u} K={k}"))?;
        ensure(blk.indices.len() as u64 == p.as_u64().pow(u), format!("case {case}: count"))?;
    }
    Ok("100 random blocks equal brute-force filtering".into())
}

fn c9_lemma56() -> Outcome {
    let r2 = lemma56_sweep(f2(), 200, SEED, 16, 10).map_err(err)?;
    ensure(r2.pass, r2.to_string())?;
    let r3 = lemma56_sweep(FieldChar::new(3).map_err(err)?, 200, SEED, 16, 6).map_err(err)?;
    ensure(r3.pass, r3.to_string())?;
    Ok(format!(
        "F_2 rank_ok={} undecided={} block_ok={}; F_3 rank_ok={} block_ok={}",
        r2.get("rank_ok").unwrap_or("?"),
        r2.get("rank_undecided").unwrap_or("?"),
        r2.get("block_ok").unwrap_or("?"),
        r3.get("rank_ok").unwrap_or("?"),
        r3.get("block_ok").unwrap_or("?"),
    ))
}

fn c10_lemma34() -> Outcome {
    let f3 = FieldChar::new(3).map_err(err)?;
    let cylinders = [
        vec![Poly::x(f2())],
        vec![Poly::x(f2()), Poly::x(f2())],
        vec![Poly::x(f3)],
    ];
    let mut out = Vec::new();
    for (i, q) in cylinders.into_iter().enumerate() {
        let cyl = CylinderSpec::new(q).map_err(err)?;
        let r = lemma3_mc(&cyl, MC_SAMPLES, 32, SEED + i as u64).map_err(err)?;
        ensure(r.z.abs() < Z_LIMIT, r.to_report().to_string())?;
        out.push(format!("z={:.2}", r.z));
    }
    for (i, b) in [Poly::x(f2()), x1(), Poly::from_coeffs(f2(), &[1, 1, 1])].iter().enumerate() {
        let r = lemma4_mc(b, MC_SAMPLES, SEED + 10 + i as u64, 3).map_err(err)?;
        ensure(r.statistic < r.threshold, r.to_report().to_string())?;
        out.push(format!("chi2={:.2}", r.statistic));
    }
    Ok(out.join(" "))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("1 van der Corput equivalence", 1, c1_van_der_corput),
        ("2 Pascal / Faure equivalence", 5, c2_pascal),
        ("3 gap2 continued fraction and nets", 30, c3_example2),
        ("4 multiplied Kronecker t-values", 60, c4_prop1),
        ("5 empty-interval witnesses", 60, c5_thm3),
        ("6 hybrid discrepancy scaling", 600, c6_thm2),
        ("7 hybrid fair counts", 60, c7_thm1),
        ("8 residue blocks", 5, c8_lemma2),
        ("9 truncated-series rank and block bounds", 60, c9_lemma56),
        ("10 cylinder and leading-coefficient statistics", 60, c10_lemma34),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget}s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} criterion {name} [{:.2}s] {detail}", elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use std::fs::File;
use std::io::{self, BufWriter, Write};

use khseq::laurent::{cf_expand, certify_quotients};
use khseq::quality::{star_disc_1d, star_disc_exact};
use khseq::report::{format_rational, to_f64, Report};
use khseq::seqgen::{default_precision, read_points, DigitPoint, PointWriter};
use khseq::theorems::{
    example2_check, lemma3_mc, lemma4_mc, lemma56_sweep, nets_check, prop1_check, prop2_bound,
    thm1_sweep, thm2_normalizer, thm2_scaling, thm3_witness, CylinderSpec,
};
use khseq::{Error, FieldChar, HybridSpec, LaurentSeries, Poly, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{CfArgs, Command, DiscArgs, GenArgs, SeqArgs, Target, VerifyArgs};

/// Points generated per batch when streaming `gen` output.
const GEN_CHUNK: u64 = 1 << 14;
const MC_SAMPLES: u64 = 100_000;
const LEMMA56_SAMPLES: u64 = 200;

/// Runs a subcommand; `Ok(false)` means an experiment reported FAIL.
pub fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Gen(a) => gen(a).map(|()| true),
        Command::Cf(a) => cf(a),
        Command::Verify(a) => verify(a),
        Command::Disc(a) => disc(a),
    }
}

fn io_err(e: io::Error) -> Error {
    Error::Invalid(format!("i/o error: {e}"))
}

fn field(p: u64) -> Result<FieldChar> {
    FieldChar::new(p)
}

fn parse_polys(p: FieldChar, specs: &[String]) -> Result<Vec<Poly>> {
    specs.iter().map(|s| Poly::parse(s, p)).collect()
}

impl SeqArgs {
    /// Builds the hybrid spec with precision sufficient for `n` points.
    fn spec(&self, n: u64) -> Result<HybridSpec> {
        let p = field(self.p)?;
        if self.kronecker.is_empty() && self.halton.is_empty() {
            return Err(Error::Invalid("give at least one --kronecker or --halton".into()));
        }
        let kron = self
            .kronecker
            .iter()
            .map(|s| LaurentSeries::parse(s, p))
            .collect::<Result<Vec<_>>>()?;
        let halton = parse_polys(p, &self.halton)?;
        let prec = self.prec.unwrap_or_else(|| default_precision(p, n));
        HybridSpec::new(kron, halton, prec)
    }

    /// Header label, e.g. `kronecker:gap2;halton:X`.
    fn label(&self) -> String {
        self.kronecker
            .iter()
            .map(|s| format!("kronecker:{s}"))
            .chain(self.halton.iter().map(|h| format!("halton:{h}")))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn gen(a: GenArgs) -> Result<()> {
    let spec = a.seq.spec(a.n)?;
    let out: Box<dyn Write> = match &a.out {
        Some(path) => Box::new(File::create(path).map_err(io_err)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = PointWriter::new(BufWriter::new(out), spec.field(), &a.seq.label(), spec.precision())?;
    let g = spec.generator(a.n)?;
    let mut lo = 0;
    while lo < a.n {
        let hi = (lo + GEN_CHUNK).min(a.n);
        for (i, pt) in g.points(lo, hi)?.iter().enumerate() {
            w.write(lo + i as u64, pt)?;
        }
        lo = hi;
    }
    w.finish()?.flush().map_err(io_err)
}

fn cf(a: CfArgs) -> Result<bool> {
    let p = field(a.p)?;
    let l = LaurentSeries::parse(&a.series, p)?;
    let rational = l.is_rational();
    let exp = match (rational, a.terms) {
        (true, _) => cf_expand(&l, 0)?,
        (false, t) => certify_quotients(&l, t.unwrap_or(10))?,
    };
    let shown = a.terms.map_or(exp.certified_count(), |t| t.min(exp.certified_count()));
    let mut out = io::stdout().lock();
    let mut emit = |s: String| writeln!(out, "{s}").map_err(io_err);
    emit(format!(
        "p={p} series={} rational={rational} certified={} A0={}",
        a.series,
        exp.certified_count(),
        exp.a0()
    ))?;
    for h in 1..=shown {
        let (num, den) = exp.convergent(h)?;
        emit(format!(
            "h={h} A={} d={} P={num} Q={den}",
            exp.quotient(h).expect("certified"),
            exp.d(h).expect("certified")
        ))?;
    }
    emit(format!("K={} horizon={shown}", exp.max_degree(shown)))?;
    match a.terms {
        Some(t) if t > exp.certified_count() => Err(Error::IndexBeyondCertified {
            index: t,
            certified: exp.certified_count(),
        }),
        _ => Ok(true),
    }
}

fn verify(a: VerifyArgs) -> Result<bool> {
    let p = field(a.p)?;
    let halton = if a.halton.is_empty() {
        vec![Poly::x(p)]
    } else {
        parse_polys(p, &a.halton)?
    };
    let series = || LaurentSeries::parse(&a.series, p);
    let report: Report = match a.target {
        Target::Thm1 => {
            let spec = HybridSpec::new(vec![series()?], halton, 8)?;
            thm1_sweep(&spec, a.dmax, a.lmax, a.blocks)?
        }
        Target::Thm2 => {
            let n_max = a.nlist.iter().copied().max().unwrap_or(0);
            let spec = HybridSpec::new(vec![series()?], halton, default_precision(p, n_max))?;
            thm2_scaling(&spec, &a.nlist)?.to_report(&spec)
        }
        Target::Thm3 => thm3_witness(a.level)?.to_report(),
        Target::Prop1 => prop1_check(&series()?, &Poly::parse(&a.b, p)?, a.mmax)?.to_report(),
        Target::Prop2 => {
            let b = prop2_bound(&series()?, &halton, a.n)?;
            let mut r = Report::new("prop2")
                .field("N", a.n)
                .field("log_term", b.log_term)
                .field("terms", b.terms.len())
                .field("bound", b.value);
            for t in &b.terms {
                r.line(format!("l={:?} h={} deg={} contribution={}", t.l, t.h, t.deg, t.contribution));
            }
            r
        }
        Target::Lemma3 => {
            let q = a.cyl.split(',').map(|s| Poly::parse(s, p)).collect::<Result<Vec<_>>>()?;
            lemma3_mc(&CylinderSpec::new(q)?, a.samples.unwrap_or(MC_SAMPLES), a.budget, a.seed)?.to_report()
        }
        Target::Lemma4 => lemma4_mc(&Poly::parse(&a.b, p)?, a.samples.unwrap_or(MC_SAMPLES), a.seed, a.r)?.to_report(),
        Target::Lemma56 => lemma56_sweep(p, a.samples.unwrap_or(LEMMA56_SAMPLES), a.seed, a.mmax, a.mmax.min(10))?,
        Target::Example2 => example2_check(a.mmax)?,
        Target::Nets => nets_check(&halton, a.mmax.min(16))?,
    };
    writeln!(io::stdout().lock(), "{report}").map_err(io_err)?;
    Ok(report.pass)
}

fn star(points: &[DigitPoint]) -> Result<BigRational> {
    match points.first().map(DigitPoint::dim) {
        Some(1) => star_disc_1d(points),
        _ => star_disc_exact(points),
    }
}

fn disc(a: DiscArgs) -> Result<bool> {
    let (points, t) = match &a.input {
        Some(path) => {
            let dump = read_points(File::open(path).map_err(io_err)?)?;
            if dump.rows.is_empty() {
                return Err(Error::Invalid(format!("{} holds no points", path.display())));
            }
            let t = dump.spec.matches("halton:").count();
            (dump.points(), t)
        }
        None => {
            let n_max = a.nlist.iter().copied().max().ok_or_else(|| {
                Error::Invalid("inline generation needs --nlist".into())
            })?;
            let spec = a.seq.spec(n_max)?;
            (spec.generator(n_max)?.points(0, n_max)?, spec.halton().len())
        }
    };
    let p = points[0].field();
    let n_list = if a.nlist.is_empty() { vec![points.len() as u64] } else { a.nlist.clone() };
    let mut out = io::stdout().lock();
    let header = if a.normalize.is_some() {
        "N,star_disc,star_disc_p,decimal,ND,ratio"
    } else {
        "N,star_disc,star_disc_p,decimal"
    };
    writeln!(out, "{header}").map_err(io_err)?;
    for n in n_list {
        if n == 0 || n as usize > points.len() {
            return Err(Error::Invalid(format!("N = {n} outside 1..={}", points.len())));
        }
        let d = star(&points[..n as usize])?;
        let mut row = format!("{n},{d},{},{:.6}", format_rational(&d, p), to_f64(&d));
        if a.normalize.is_some() {
            let nd = &d * BigRational::from_integer(BigInt::from(n));
            let ratio = to_f64(&nd) / thm2_normalizer(n, t);
            row.push_str(&format!(",{},{ratio:.6}", format_rational(&nd, p)));
        }
        writeln!(out, "{row}").map_err(io_err)?;
    }
    Ok(true)
}

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sicwitness::criteria::{compare_with, g_criterion, ppt_check, CriterionReport, GConvention};
use sicwitness::fixtures::{self, EXAMPLE3_G_OFFSET, EXAMPLE3_WITNESS};
use sicwitness::operator::DensityMatrix;
use sicwitness::povm::{build_gsic, build_sic, fiducial_search, parse_povm, validate_povm, Povm};
use sicwitness::rotation::{save_rotation, AxisRotation};
use sicwitness::states::maximally_entangled;
use sicwitness::witness::{
    build_witness, evaluate, optimize_rotation, scan_bell_diagonal, scan_isotropic,
    serialize_witness, Verdict,
};

use crate::args::{
    CheckPovmArgs, Common, CompareArgs, Convention, DemoArgs, EvalArgs, Family, OptimizeArgs,
    ScanArgs,
};
use crate::sources;
use crate::CliError;

type Outcome = Result<u8, CliError>;

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

pub fn check_povm(args: CheckPovmArgs) -> Outcome {
    let p = if let Some(d) = args.source.builtin_sic {
        build_sic(d)?
    } else if let Some(d) = args.source.gsic {
        let a = args.a.ok_or_else(|| CliError::usage("--gsic needs --a"))?;
        build_gsic(d, a)?
    } else {
        let path = args.source.file.expect("clap enforces one source");
        let text = fs::read_to_string(&path)
            .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
        parse_povm(&text)?
    };
    let report = validate_povm(&p, args.tol);
    println!("dimension      {}", p.dim());
    println!("{report}");
    let ok = report.max_violation <= args.tol;
    println!(
        "status         {} (tolerance {:.1e})",
        if ok { "pass" } else { "fail" },
        args.tol
    );
    Ok(if ok { 0 } else { 2 })
}

struct Resolved {
    povm: Povm,
    rho: DensityMatrix,
}

fn resolve(common: &Common, state: &str) -> Result<Resolved, CliError> {
    let povm = sources::povm(&common.povm, common.d, common.seed)?;
    let rho = sources::state(state, common.d, common.repair > 0, common.state_tol)?;
    Ok(Resolved { povm, rho })
}

fn rotation_for(spec: &str, common: &Common, r: &Resolved) -> Result<AxisRotation, CliError> {
    if spec == "optimize" {
        return Ok(optimize_rotation(&r.povm, &r.rho)?.rotation);
    }
    sources::rotation(spec, common.d, common.repair > 0, common.rotation_tol)
}

pub fn eval(args: EvalArgs) -> Outcome {
    let c = &args.common;
    let r = resolve(c, &args.state)?;
    let rotation = rotation_for(&args.rotation, c, &r)?;
    let w = build_witness(&r.povm, &rotation)?;
    let value = evaluate(&w, &r.rho)?;
    println!("povm      {} d={}", r.povm.kind(), c.d);
    println!("rotation  {}", args.rotation);
    println!("state     {}", args.state);
    println!("constant  {:.10}", w.constant());
    println!("value     {value:.10}");
    println!("verdict   {}", Verdict::from_witness_value(value));
    if let Some(path) = &args.write_witness {
        write_file(path, &serialize_witness(&w))?;
    }
    Ok(0)
}

pub fn scan(args: ScanArgs) -> Outcome {
    let d = args.d;
    let povm = match args.a {
        Some(a) => build_gsic(d, a)?,
        None => sources::povm("builtin", d, args.seed)?,
    };
    let rotation = sources::rotation(&args.rotation, d, args.repair > 0, args.rotation_tol)?;
    let csv = match args.family {
        Family::Isotropic => {
            let spec = args.alpha.as_deref().ok_or_else(|| {
                CliError::usage("the isotropic family needs --alpha start:end:step")
            })?;
            scan_isotropic(&povm, &rotation, &sources::grid(spec)?)?.to_csv()
        }
        Family::BellDiagonal => {
            let spec = args.p.as_deref().ok_or_else(|| {
                CliError::usage("the bell-diagonal family needs --p start:end:step")
            })?;
            scan_bell_diagonal(&povm, &rotation, &sources::grid(spec)?)?.to_csv()
        }
    };
    match &args.output {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(0)
}

pub fn optimize(args: OptimizeArgs) -> Outcome {
    let c = &args.common;
    let r = resolve(c, &args.state)?;
    let opt = optimize_rotation(&r.povm, &r.rho)?;
    println!("optimized value  {:.10}", opt.value);
    println!("identity value   {:.10}", opt.identity_value);
    println!(
        "verdict          {}",
        Verdict::from_witness_value(opt.value)
    );
    if let Some(path) = &args.output {
        save_rotation(&opt.rotation, path)?;
        println!("rotation written to {}", path.display());
    }
    Ok(0)
}

pub fn compare(args: CompareArgs) -> Outcome {
    let c = &args.common;
    let r = resolve(c, &args.state)?;
    let rotation = rotation_for(&args.rotation, c, &r)?;
    let convention = match args.convention {
        Convention::Plain => GConvention::Plain,
        Convention::Conjugated => GConvention::Conjugated,
    };
    let reports = compare_with(&r.povm, &rotation, &r.rho, convention)?;
    if args.csv {
        println!("{}", CriterionReport::csv_header());
        for rep in &reports {
            println!("{}", rep.to_csv());
        }
    } else {
        for rep in &reports {
            println!("{rep}");
        }
    }
    Ok(0)
}

/// Expected-versus-computed table.
struct Table {
    out: String,
    failures: usize,
}

impl Table {
    fn new(title: &str) -> Self {
        let mut out = format!("{title}\n");
        let _ = writeln!(
            out,
            "{:<28} {:>14} {:>14} {:>9}  status",
            "quantity", "expected", "computed", "tolerance"
        );
        Self { out, failures: 0 }
    }

    fn row(&mut self, name: &str, expected: f64, computed: f64, tol: f64) {
        let ok = (expected - computed).abs() <= tol;
        self.failures += usize::from(!ok);
        let _ = writeln!(
            self.out,
            "{name:<28} {expected:>14.10} {computed:>14.10} {tol:>9.1e}  {}",
            if ok { "pass" } else { "FAIL" }
        );
    }

    fn check(&mut self, name: &str, expected: &str, computed: &str) {
        let ok = expected == computed;
        self.failures += usize::from(!ok);
        let _ = writeln!(
            self.out,
            "{name:<28} {expected:>14} {computed:>14} {:>9}  {}",
            "",
            if ok { "pass" } else { "FAIL" }
        );
    }

    fn note(&mut self, line: &str) {
        let _ = writeln!(self.out, "{line}");
    }

    fn finish(self) -> String {
        let mut out = self.out;
        let _ = writeln!(out, "{} check(s) failed", self.failures);
        out
    }
}

fn sic_any(d: usize, seed: u64) -> Result<Povm, CliError> {
    if d <= 3 {
        Ok(build_sic(d)?)
    } else {
        Ok(fiducial_search(d, seed, 1e-12)?)
    }
}

pub fn demo(args: DemoArgs) -> Outcome {
    let text = match args.example {
        1 => demo_maximally_entangled(args.seed)?,
        2 => demo_isotropic(args.seed)?,
        _ => demo_rounded_state()?,
    };
    print!("{text}");
    Ok(0)
}

fn demo_maximally_entangled(seed: u64) -> Result<String, CliError> {
    let mut t = Table::new("maximally entangled states, O = I: (1 - d)/(d(d + 1))");
    for d in 2..=4usize {
        let df = d as f64;
        let w = build_witness(&sic_any(d, seed)?, &AxisRotation::identity(d))?;
        let v = evaluate(&w, &maximally_entangled(d).density())?;
        t.row(
            &format!("d={d} witness value"),
            (1.0 - df) / (df * (df + 1.0)),
            v,
            1e-12,
        );
    }
    Ok(t.finish())
}

fn demo_isotropic(seed: u64) -> Result<String, CliError> {
    let mut t = Table::new("isotropic states, O = I: threshold 1/(d + 1)");
    for d in 2..=4usize {
        let df = d as f64;
        let povm = sic_any(d, seed)?;
        let rot = AxisRotation::identity(d);
        let scan = scan_isotropic(&povm, &rot, &[0.0, 0.5, 1.0])?;
        let line = |alpha: f64| 2.0 / (df * (df + 1.0)) - ((df - 1.0) * alpha + 1.0) / (df * df);
        for row in &scan.rows {
            t.row(
                &format!("d={d} value at alpha={}", row.parameter),
                line(row.parameter),
                row.value,
                1e-12,
            );
        }
        t.row(
            &format!("d={d} threshold"),
            1.0 / (df + 1.0),
            scan.threshold.unwrap_or(f64::NAN),
            1e-9,
        );
    }
    Ok(t.finish())
}

fn demo_rounded_state() -> Result<String, CliError> {
    let mut t = Table::new(
        "rounded 9x9 example state with the printed rotation (both repaired), built-in SIC",
    );
    let (rho, repair) = fixtures::example3_state()?;
    let (rot, change) = fixtures::appendix_rotation()?;
    t.note(&format!(
        "state repair: input trace {:.4}, distance {:.3e}; rotation repair: largest change {change:.3e}",
        repair.input_trace, repair.distance
    ));
    let povm = build_sic(3)?;
    let w = build_witness(&povm, &rot)?;
    let value = evaluate(&w, &rho)?;
    let g = g_criterion(&povm, &rho, GConvention::default())?;
    let opt = optimize_rotation(&povm, &rho)?;
    let ppt = ppt_check(&rho, 3, 3)?;
    t.row("witness value", EXAMPLE3_WITNESS, value, 5e-3);
    t.row(
        &format!("G - 1/6 ({})", GConvention::default()),
        EXAMPLE3_G_OFFSET,
        g.value - 1.0 / 6.0,
        2e-3,
    );
    t.check(
        "witness verdict",
        "entangled",
        &Verdict::from_witness_value(value).to_string(),
    );
    t.check("G verdict", "inconclusive", &g.verdict.to_string());
    t.note(&format!("optimized witness value      {:.10}", opt.value));
    t.note(&format!(
        "PPT smallest eigenvalue      {:.10} ({})",
        ppt.value, ppt.verdict
    ));
    Ok(t.finish())
}

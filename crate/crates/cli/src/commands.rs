use std::path::Path;

use pdakit::constructions::{
    construct as build, tabulate_design, tabulate_pg, to_csv, to_text, ConstructionError, ConstructionSpec, Family,
    NamedDesign, ParameterTableRow,
};
use pdakit::designs::{resolve_design, DesignError, DesignTag, CATALOG};
use pdakit::pda::{direct_product, Orientation, Pda, PdaError};
use pdakit::sim::{verify_scheme, FileLibrary, SimError, VerifyMode};

use crate::{
    read, write, CertifyAs, ConstructArgs, DesignAction, FamilyName, Failure, Format, Mode, SimulateArgs,
    TabulateArgs, EXIT_DECODE, EXIT_HYPOTHESIS, EXIT_VALIDATION,
};

fn from_construction(e: ConstructionError) -> Failure {
    match e {
        ConstructionError::Pda(PdaError::Inadmissible(_))
        | ConstructionError::Hypothesis(_)
        | ConstructionError::Design(_)
        | ConstructionError::Geometry(_)
        | ConstructionError::NonIntegral(_) => Failure::new(EXIT_HYPOTHESIS, e.to_string()),
        ConstructionError::Pda(_) => Failure::new(EXIT_VALIDATION, e.to_string()),
    }
}

fn from_design(e: DesignError) -> Failure {
    Failure::new(EXIT_HYPOTHESIS, e.to_string())
}

fn required<T>(value: Option<T>, family: &str, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::new(EXIT_HYPOTHESIS, format!("{family} requires --{flag}")))
}

fn named_design(spec: Option<String>, family: &str) -> Result<NamedDesign, Failure> {
    let spec = required(spec, family, "design")?;
    let design = resolve_design(&spec).map_err(from_design)?;
    Ok(NamedDesign::new(spec, design))
}

fn family_of(args: &ConstructArgs) -> Result<Family, Failure> {
    let design = || named_design(args.design.clone(), family_id(args.family));
    let id = family_id(args.family);
    Ok(match args.family {
        FamilyName::Pg => Family::ProjectiveGeometry {
            q: required(args.q, id, "q")?,
            k: required(args.k, id, "k")?,
            m: required(args.m, id, "m")?,
            t: required(args.t, id, "t")?,
        },
        FamilyName::Config => Family::Configuration { design: design()? },
        FamilyName::TdesignA => Family::TDesignA { design: design()?, t0: required(args.t0, id, "t0")? },
        FamilyName::TdesignB => Family::TDesignB {
            design: design()?,
            t1: required(args.t1, id, "t1")?,
            t2: required(args.t2, id, "t2")?,
        },
        FamilyName::TdesignLambda => {
            let (t1, t2) = (required(args.t1, id, "t1")?, required(args.t2, id, "t2")?);
            Family::TDesignLambda { design: design()?, t0: args.t0.unwrap_or(t1 + t2), t1, t2 }
        }
    })
}

fn family_id(f: FamilyName) -> &'static str {
    match f {
        FamilyName::Pg => "pg",
        FamilyName::Config => "config",
        FamilyName::TdesignA => "tdesign-a",
        FamilyName::TdesignB => "tdesign-b",
        FamilyName::TdesignLambda => "tdesign-lambda",
    }
}

fn describe_row(row: &ParameterTableRow) -> String {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    format!(
        "{} {} set {}: K={} F={} Q={} S={} M/N={} R={} R*={} R/R*={} F*={}",
        row.family,
        row.params,
        row.orientation,
        row.k,
        row.f,
        row.q,
        row.s,
        row.memory_ratio,
        row.rate,
        row.baseline_rate,
        opt(row.rate_ratio.as_ref().map(ToString::to_string)),
        opt(row.mn_subpacketization.as_ref().map(ToString::to_string)),
    )
}

fn emit(p: &Pda, out: Option<&Path>, json: bool) -> Result<(), Failure> {
    let text = if json { p.to_json() + "\n" } else { p.to_text() };
    match out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn construct(args: ConstructArgs) -> Result<(), Failure> {
    let family = family_of(&args)?;
    let orientation = Orientation::from_index(args.set).expect("clap restricts --set to 1..=3");
    let c = build(&ConstructionSpec::new(family, orientation)).map_err(from_construction)?;
    emit(&c.pda, args.out.as_deref(), args.json)?;
    let row = describe_row(&c.row);
    if args.out.is_some() {
        println!("{row}");
    } else {
        eprintln!("{row}");
    }
    Ok(())
}

fn load(path: &Path) -> Result<Pda, Failure> {
    Pda::parse(&read(path)?).map_err(|e| Failure::new(EXIT_HYPOTHESIS, format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<Pda, Failure> {
    let p = load(path)?;
    p.validate()
        .map_err(|v| Failure::new(EXIT_VALIDATION, format!("{}: {v}", path.display())))?;
    Ok(p)
}

pub fn validate(path: &Path) -> Result<(), Failure> {
    let p = load_valid(path)?;
    let sp = p.scheme_parameters();
    println!("valid PDA {}: M/N = {}, R = {}", p.params(), sp.memory_ratio, sp.rate);
    Ok(())
}

pub fn simulate(args: SimulateArgs) -> Result<(), Failure> {
    let p = load_valid(&args.path)?;
    let files = args.files.unwrap_or(p.k().min(4));
    let lib = FileLibrary::random(files, p.f(), args.packet_size, args.seed)
        .map_err(|e| Failure::new(EXIT_HYPOTHESIS, e.to_string()))?;
    let mode = match args.mode {
        Mode::Auto => VerifyMode::Auto { samples: args.samples, seed: args.seed },
        Mode::Exhaustive => VerifyMode::Exhaustive,
        Mode::Sampled => VerifyMode::Sampled { samples: args.samples, seed: args.seed },
        Mode::Adversarial => VerifyMode::Adversarial,
    };
    let report = verify_scheme(&p, &lib, mode).map_err(|e| match e {
        SimError::Invalid(_) => Failure::new(EXIT_VALIDATION, e.to_string()),
        _ => Failure::new(EXIT_HYPOTHESIS, e.to_string()),
    })?;
    println!("{}", report.to_json());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_DECODE, format!("{} decode failures", report.failures.len())))
    }
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<usize>, Failure> {
    let bad = || Failure::new(EXIT_HYPOTHESIS, format!("--k expects N or A..B, got {text:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let k = num(text)?;
            Ok(k..=k)
        }
    }
}

pub fn tabulate(args: TabulateArgs) -> Result<(), Failure> {
    let id = family_id(args.family);
    let rows = match args.family {
        FamilyName::Pg => {
            let q = required(args.q, id, "q")?;
            let ks = parse_range(&required(args.k, id, "k")?)?;
            tabulate_pg(q, ks)
        }
        _ => tabulate_design(id, &named_design(args.design, id)?),
    }
    .map_err(from_construction)?;
    match args.format {
        Format::Text => print!("{}", to_text(&rows)),
        Format::Csv => print!("{}", to_csv(&rows)),
    }
    Ok(())
}

pub fn product(a: &Path, b: &Path, out: Option<&Path>, json: bool) -> Result<(), Failure> {
    let (pa, pb) = (load_valid(a)?, load_valid(b)?);
    let p = direct_product(&pa, &pb).map_err(|e| match e {
        PdaError::Inadmissible(msg) => {
            Failure::new(EXIT_VALIDATION, format!("degenerate product: {msg}"))
        }
        other => Failure::new(EXIT_VALIDATION, other.to_string()),
    })?;
    emit(&p, out, json)?;
    let (sa, sb, sp) = (pa.scheme_parameters(), pb.scheme_parameters(), p.scheme_parameters());
    let summary = format!(
        "K = {}·{} = {}, F = {}·{} = {}, M/N = {} + {} - {}·{} = {}, R = {}",
        pa.k(),
        pb.k(),
        p.k(),
        pa.f(),
        pb.f(),
        p.f(),
        sa.memory_ratio,
        sb.memory_ratio,
        sa.memory_ratio,
        sb.memory_ratio,
        sp.memory_ratio,
        sp.rate
    );
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

pub fn designs(action: DesignAction) -> Result<(), Failure> {
    match action {
        DesignAction::List => {
            for (name, description) in CATALOG {
                println!("{name:<12} {description}");
            }
            println!("{:<12} complete design on v points, blocks of size k", "complete:v:k");
            println!("{:<12} Steiner triple system, v ≡ 1, 3 (mod 6)", "sts:v");
            println!("{:<12} transversal design from F_n, 2 ≤ k ≤ n+1", "td:k:n");
        }
        DesignAction::Show { spec } => println!("{}", resolve_design(&spec).map_err(from_design)?.to_json()),
        DesignAction::Certify { spec, kind } => {
            let d = resolve_design(&spec).map_err(from_design)?;
            let tagged = matches!(d.tag(), Some(DesignTag::TDesign { .. }));
            let certified = match (kind, tagged) {
                (CertifyAs::TDesign, _) | (CertifyAs::Auto, true) => {
                    d.as_t_design().map(|c| serde_json::to_string(&c).expect("certificate serializes"))
                }
                _ => d.as_configuration().map(|c| serde_json::to_string(&c).expect("certificate serializes")),
            };
            match certified {
                Ok(json) => println!("{json}"),
                Err(e) => return Err(Failure::new(EXIT_VALIDATION, e.to_string())),
            }
        }
    }
    Ok(())
}

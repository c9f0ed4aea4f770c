use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use swsurg_core::format::{self, ManifoldFile};
use swsurg_core::report::{self, SurgeryReport};
use swsurg_core::{floer, surgery, Error, LatticeVector, Result, Severity};

use crate::Command;

pub fn run(command: &Command) -> Result<u8> {
    match command {
        Command::Validate { file } => validate(file),
        Command::Blowup { file, on, times, output, report } => {
            blowup(file, on.as_deref(), *times, output.as_deref(), report.as_deref())
        }
        Command::Fibersum { first, second, output, report } => {
            fibersum(first, second, output.as_deref(), report.as_deref())
        }
        Command::Moduli { genus, pairing } => {
            let m = parse_int(pairing, "--pairing")?;
            println!("{}", floer::moduli_descriptor(*genus, &m)?);
            Ok(0)
        }
        Command::Dimension { file, class } => {
            let f = ManifoldFile::read(file)?;
            let coords = class
                .split(',')
                .map(|s| parse_int(s.trim(), "--class"))
                .collect::<Result<Vec<_>>>()?;
            let c = LatticeVector::new(coords);
            println!("{}", f.manifold.expected_dimension(&c)?);
            Ok(0)
        }
        Command::Report { file } => {
            print!("{}", summary(file)?);
            Ok(0)
        }
    }
}

fn parse_int(s: &str, what: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::Parse { line: 0, column: 0, message: format!("{what}: not an integer: {s:?}") })
}

fn read_unvalidated(path: &Path) -> Result<ManifoldFile> {
    ManifoldFile::parse(&std::fs::read_to_string(path)?)
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => format::write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn validate(path: &Path) -> Result<u8> {
    let f = read_unvalidated(path)?;
    let violations = f.validate();
    for v in &violations {
        println!("{v}");
    }
    if violations.iter().any(|v| v.severity == Severity::Error) {
        return Ok(1);
    }
    let m = &f.manifold;
    let inertia = m.lattice.inertia();
    println!(
        "ok: {} (chi={}, sigma={}, b2={}, b+={}, b-={})",
        m.name,
        m.chi,
        m.sigma,
        m.b2(),
        inertia.positive,
        inertia.negative
    );
    Ok(0)
}

fn blowup(
    path: &Path,
    on: Option<&str>,
    times: usize,
    output: Option<&Path>,
    report_path: Option<&Path>,
) -> Result<u8> {
    let input = ManifoldFile::read(path)?;
    let x = &input.manifold;
    let (manifold, surfaces, traced) = match on {
        None => {
            let mut m = x.clone();
            for _ in 0..times {
                m = surgery::blow_up(&m)?;
            }
            let surfaces = input
                .surfaces
                .iter()
                .map(|(n, s)| (n.clone(), surgery::pad_surface(s, times)))
                .collect();
            (m, surfaces, None)
        }
        Some(name) => {
            let s = input
                .surface(name)
                .ok_or_else(|| Error::Rejected(format!("no surface named {name:?}")))?;
            let (m, transformed) = surgery::blow_up_on_surface(x, s, times)?;
            let surfaces = input
                .surfaces
                .iter()
                .map(|(n, s)| {
                    let s = if n == name { transformed.clone() } else { surgery::pad_surface(s, times) };
                    (n.clone(), s)
                })
                .collect();
            (m, surfaces, Some(transformed))
        }
    };
    let out = ManifoldFile::new(manifold, surfaces);
    out.ensure_valid()?;
    let rep = SurgeryReport::for_blow_up(&input, &out, traced.as_ref())?;
    if let Some(p) = report_path {
        format::write_atomic(p, rep.to_json().as_bytes())?;
    }
    emit(output, &out.serialize_default())?;
    Ok(0)
}

fn split_operand(arg: &str) -> Result<(PathBuf, String)> {
    match arg.rsplit_once(':') {
        Some((file, surface)) if !file.is_empty() && !surface.is_empty() => {
            Ok((PathBuf::from(file), surface.to_string()))
        }
        _ => Err(Error::Parse { line: 0, column: 0, message: format!("expected FILE:SURFACE, got {arg:?}") }),
    }
}

fn fibersum(first: &str, second: &str, output: Option<&Path>, report_path: Option<&Path>) -> Result<u8> {
    let (p1, n1) = split_operand(first)?;
    let (p2, n2) = split_operand(second)?;
    let f1 = ManifoldFile::read(&p1)?;
    let f2 = ManifoldFile::read(&p2)?;
    let lookup = |f: &ManifoldFile, n: &str| {
        f.surface(n).cloned().ok_or_else(|| Error::Rejected(format!("{}: no surface named {n:?}", f.manifold.name)))
    };
    let s1 = lookup(&f1, &n1)?;
    let s2 = lookup(&f2, &n2)?;
    let ((x1, t1), (x2, t2)) = surgery::normalize_pair(&f1.manifold, &s1, &f2.manifold, &s2)?;
    let blow_ups = [x1.b2() - f1.manifold.b2(), x2.b2() - f2.manifold.b2()];
    let result = surgery::fiber_sum(&x1, &t1, &x2, &t2)?;
    let out = ManifoldFile::new(result.manifold.clone(), vec![("S".into(), result.surface.clone())]);
    out.ensure_valid()?;
    let rep = SurgeryReport::for_fiber_sum([&f1, &f2], &result, &out, blow_ups)?;
    if let Some(p) = report_path {
        format::write_atomic(p, rep.to_json().as_bytes())?;
    }
    emit(output, &out.serialize_default())?;
    if result.manifold.basic_classes.is_empty() && !result.undetermined.is_empty() {
        eprintln!(
            "swsurg: no glued class is determined; {} pair(s) left undetermined",
            result.undetermined.len()
        );
        return Ok(2);
    }
    Ok(0)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn summary(path: &Path) -> Result<String> {
    let f = read_unvalidated(path)?;
    let m = &f.manifold;
    let l = &m.lattice;
    let inertia = l.inertia();
    let mut s = String::new();
    let _ = writeln!(s, "manifold: {}", m.name);
    let _ = writeln!(s, "chi: {}", m.chi);
    let _ = writeln!(s, "sigma: {}", m.sigma);
    let _ = writeln!(s, "b2: {} (b+ = {}, b- = {})", m.b2(), inertia.positive, inertia.negative);
    let _ = writeln!(
        s,
        "form: {}, det = {}{}",
        if l.is_even() { "even" } else { "odd" },
        l.determinant(),
        if l.is_unimodular() { ", unimodular" } else { "" }
    );
    let _ = writeln!(s, "simple type: {}", yes(m.simple_type));
    let violations = f.validate();
    if violations.is_empty() {
        let _ = writeln!(s, "validation: ok");
    } else {
        let _ = writeln!(s, "validation:");
        for v in &violations {
            let _ = writeln!(s, "  {v}");
        }
    }
    if violations.iter().any(|v| v.severity == Severity::Error) {
        return Ok(s);
    }
    let _ = writeln!(s, "K^2 = 2chi + 3sigma = {}", m.canonical_square());
    let _ = writeln!(s, "basic classes ({}):", m.basic_classes.len());
    for (i, c) in m.basic_classes.iter().enumerate() {
        let row = report::audit_class(m, c, None, None)?;
        let _ = writeln!(
            s,
            "  [{i}] {} sw={} characteristic={} square={} d={}",
            c.k,
            c.sw,
            yes(row.characteristic),
            yes(row.square_condition),
            m.expected_dimension(&c.k)?
        );
    }
    let _ = writeln!(s, "surfaces ({}):", f.surfaces.len());
    for (name, surface) in &f.surfaces {
        let self_int = surface.self_intersection(l)?;
        let _ = writeln!(
            s,
            "  {name}: genus {}, self-intersection {}, divisibility {}, dual {}",
            surface.genus,
            self_int,
            l.divisibility(&surface.surface_class)?,
            if surface.dual_class.is_some() { "present" } else { "absent" }
        );
        for (i, c) in m.basic_classes.iter().enumerate() {
            let dot = l.pair(&c.k, &surface.surface_class)?;
            let mut line = format!("    [{i}] k.{name} = {dot}");
            if self_int == BigInt::from(0) {
                let pass = surgery::surface_bound_filter(l, surface, &c.k, None)?;
                let _ = write!(line, ", adjunction bound {}", if pass { "holds" } else { "fails" });
                if surface.genus >= 1 {
                    match floer::moduli_descriptor(surface.genus, &dot) {
                        Ok(d) => {
                            let _ = write!(line, ", moduli {d}");
                        }
                        Err(e) => {
                            let _ = write!(line, ", moduli unavailable ({e})");
                        }
                    }
                }
            }
            let _ = writeln!(s, "{line}");
        }
    }
    Ok(s)
}

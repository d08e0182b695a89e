use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use cubic_hecke::analytic::weight_by_name;
use cubic_hecke::gauss::{gauss_batch, gauss_sum};
use cubic_hecke::lfunctions::{cutoff_for, find_zeros, hecke_l, LSeriesHandle, Mode, Side};
use cubic_hecke::moments::{
    first_moment, logderiv_moment, negative_moment, one_level_density, q_side_suite, ratios_sum, MomentKind,
    MomentOptions, MomentReport,
};
use cubic_hecke::primes::sieve_family;
use cubic_hecke::symbols::cubic_symbol;
use cubic_hecke::verify::{format_line, run_suite, Suite};
use cubic_hecke::{Eisenstein, Error, ErrorKind, C64};

use crate::cache::{Cache, Outcome};
use crate::Command;

/// Exit status for a failed command.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()).map(Error::kind) {
        Some(ErrorKind::Precondition) => 1,
        Some(ErrorKind::Numeric) => 2,
        Some(ErrorKind::Resource) => 3,
        // file system and other environment failures
        None => 3,
    }
}

fn bad(msg: String) -> anyhow::Error {
    Error::Parse(msg).into()
}

/// Positive integer given in any float notation, e.g. `1e6`.
fn parse_count(s: &str) -> Result<u64> {
    let v: f64 = s.trim().parse().map_err(|_| bad(format!("'{s}' is not a number")))?;
    if !(v.is_finite() && v >= 1.0 && v.fract() == 0.0 && v < 2f64.powi(53)) {
        return Err(bad(format!("'{s}' is not a positive integer")));
    }
    Ok(v as u64)
}

/// `RE,IM` or a bare real part.
fn parse_complex(s: &str) -> Result<C64> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad(format!("'{s}' is not RE,IM")));
    let v = match s.split_once(',') {
        Some((re, im)) => C64::new(num(re)?, num(im)?),
        None => C64::new(num(s)?, 0.0),
    };
    if !v.is_finite() {
        return Err(bad(format!("'{s}' is not finite")));
    }
    Ok(v)
}

fn parse_element(s: &str) -> Result<Eisenstein> {
    Ok(s.parse::<Eisenstein>()?)
}

fn emit(out: Option<&Path>, payload: &[u8]) -> Result<()> {
    match out {
        Some(p) => fs::write(p, payload).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(payload)?;
            Ok(o.flush()?)
        }
    }
}

fn note(command: &str, outcome: Outcome) {
    match outcome {
        Outcome::Hit => eprintln!("{command}: cache hit"),
        Outcome::Repaired => eprintln!("{command}: cache entry failed its checksum and was recomputed"),
        Outcome::Computed | Outcome::Disabled => {}
    }
}

fn csv_bytes<F>(header: &[&str], fill: F) -> Result<Vec<u8>>
where
    F: FnOnce(&mut csv::Writer<&mut Vec<u8>>) -> Result<()>,
{
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        fill(&mut w)?;
        w.flush()?;
    }
    Ok(buf)
}

fn json_bytes<T: serde::Serialize>(v: &T) -> Result<Vec<u8>> {
    let mut buf = serde_json::to_vec_pretty(v)?;
    buf.push(b'\n');
    Ok(buf)
}

fn fmt_complex(z: C64) -> String {
    format!("{},{}", z.re, z.im)
}

fn terms_csv(report: &MomentReport) -> Result<Vec<u8>> {
    csv_bytes(&["a", "b", "norm", "weight", "lambda", "re", "im", "flag"], |w| {
        for t in &report.terms {
            w.serialize((t.a, t.b, t.norm, t.weight, t.lambda, t.re, t.im, t.flag.as_deref().unwrap_or("")))?;
        }
        Ok(())
    })
}

fn handle_for(pi: &Eisenstein, s: C64, q_side: bool) -> Result<LSeriesHandle> {
    let n = pi.norm()? as u64;
    Ok(if q_side {
        LSeriesHandle::dirichlet(pi, cutoff_for(Side::Dirichlet, n, s))?
    } else {
        LSeriesHandle::hecke(pi, cutoff_for(Side::Hecke, n, s))?
    })
}

/// Lists flagged terms and returns the numeric-guard status when any exist.
fn guard_status(report: &MomentReport) -> u8 {
    if report.flags.is_empty() {
        return 0;
    }
    eprintln!("numeric guard tripped on {} item(s):", report.flags.len());
    for f in &report.flags {
        eprintln!("  {f}");
    }
    2
}

pub fn dispatch(command: Command, cache: &Cache) -> Result<u8> {
    match command {
        Command::Sieve { limit, split_only, out } => {
            let limit = parse_count(&limit)?;
            let params = format!("limit={limit};split_only={split_only}");
            let (payload, o) = cache.get_or_compute("sieve", &params, || {
                let fam = sieve_family(limit, split_only)?;
                csv_bytes(&["a", "b", "norm", "splitting"], |w| {
                    for p in &fam {
                        w.serialize((p.pi.a, p.pi.b, p.norm, p.splitting.as_str()))?;
                    }
                    Ok(())
                })
            })?;
            note("sieve", o);
            emit(out.as_deref(), &payload)?;
        }
        Command::Symbol { a, n } => {
            println!("{}", cubic_symbol(&parse_element(&a)?, &parse_element(&n)?)?);
        }
        Command::Gauss { k, n } => {
            println!("{}", fmt_complex(gauss_sum(&parse_element(&k)?, &parse_element(&n)?)?));
        }
        Command::GaussBatch { limit, out } => {
            let limit = parse_count(&limit)?;
            let (payload, o) = cache.get_or_compute("gauss-batch", &format!("limit={limit}"), || {
                let rows = gauss_batch(limit, false)?;
                csv_bytes(&["a", "b", "norm", "re", "im"], |w| {
                    for (p, g) in &rows {
                        w.serialize((p.pi.a, p.pi.b, p.norm, g.re, g.im))?;
                    }
                    Ok(())
                })
            })?;
            note("gauss-batch", o);
            emit(out.as_deref(), &payload)?;
        }
        Command::Lvalue { pi, s, q_side } => {
            let pi = parse_element(&pi)?;
            let s = parse_complex(&s)?;
            let h = handle_for(&pi, s, q_side)?;
            println!("{}", fmt_complex(hecke_l(&h, s, Mode::Auto)?));
        }
        Command::Zeros { pi, t, q_side, out } => {
            let pi = parse_element(&pi)?;
            let params = format!("pi={pi};T={t:e};q_side={q_side}");
            let (payload, o) = cache.get_or_compute("zeros", &params, || {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(Error::Precondition(format!("height T = {t} must be positive")).into());
                }
                let h = handle_for(&pi, C64::new(0.5, t), q_side)?;
                let zeros = find_zeros(&h, t)?;
                csv_bytes(&["ordinate", "refined_error"], |w| {
                    for (g, e) in zeros.ordinates.iter().zip(&zeros.errors) {
                        w.serialize((g, e))?;
                    }
                    Ok(())
                })
            })?;
            note("zeros", o);
            emit(out.as_deref(), &payload)?;
        }
        Command::Moment { kind, x, alpha, beta, q_side, weight, split_only, out, dump_terms } => {
            let kind = kind.parse::<MomentKind>()?.with_side(q_side);
            if matches!(kind, MomentKind::Density | MomentKind::QDensity) {
                return Err(
                    Error::Precondition("use the density command for the one-level density".into()).into()
                );
            }
            let w = weight_by_name(&weight)
                .ok_or_else(|| Error::Precondition(format!("unknown weight '{weight}'")))?;
            let alpha = alpha.as_deref().map(parse_complex).transpose()?.unwrap_or_default();
            let beta = beta.as_deref().map(parse_complex).transpose()?;
            if kind == MomentKind::Ratios || kind == MomentKind::QRatios {
                beta.ok_or_else(|| Error::Precondition("the ratios sum needs --beta".into()))?;
            }
            let beta = beta.unwrap_or(alpha);
            let params = format!(
                "kind={kind:?};X={x:e};alpha={};beta={};weight={weight};split_only={split_only};terms={}",
                fmt_complex(alpha),
                fmt_complex(beta),
                dump_terms.is_some()
            );
            let (payload, o) = cache.get_or_compute("moment", &params, || {
                let opts = MomentOptions { weight: &w, split_only };
                let report = match kind {
                    MomentKind::Ratios => ratios_sum(x, alpha, beta, opts)?,
                    MomentKind::First => first_moment(x, alpha, opts)?,
                    MomentKind::Negative => negative_moment(x, beta, opts)?,
                    MomentKind::Logderiv => logderiv_moment(x, alpha, opts)?,
                    k => q_side_suite(x, k, alpha, beta, opts)?,
                };
                let mut payload = json_bytes(&report)?;
                if dump_terms.is_some() {
                    payload.push(0);
                    payload.extend(terms_csv(&report)?);
                }
                Ok(payload)
            })?;
            note("moment", o);
            let (json, terms) = match payload.iter().position(|&b| b == 0) {
                Some(i) => (&payload[..i], Some(&payload[i + 1..])),
                None => (&payload[..], None),
            };
            emit(out.as_deref(), json)?;
            if let (Some(path), Some(csv)) = (dump_terms.as_deref(), terms) {
                fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
            }
            let report: MomentReport = serde_json::from_slice(json)?;
            return Ok(guard_status(&report));
        }
        Command::Density { x, a, q_side, weight, split_only, out } => {
            let w = weight_by_name(&weight)
                .ok_or_else(|| Error::Precondition(format!("unknown weight '{weight}'")))?;
            let params = format!("X={x:e};a={a:e};q_side={q_side};weight={weight};split_only={split_only}");
            let (payload, o) = cache.get_or_compute("density", &params, || {
                let opts = MomentOptions { weight: &w, split_only };
                json_bytes(&one_level_density(x, a, q_side, opts)?)
            })?;
            note("density", o);
            emit(out.as_deref(), &payload)?;
            let report: MomentReport = serde_json::from_slice(&payload)?;
            return Ok(guard_status(&report));
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let results = run_suite(suite);
            for r in &results {
                println!("{}", format_line(r));
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            println!("{} of {} criteria passed", results.len() - failed, results.len());
            return Ok(if failed == 0 { 0 } else { 2 });
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_accept_float_notation() {
        assert_eq!(parse_count("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_count("250").unwrap(), 250);
        assert!(parse_count("2.5").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("abc").is_err());
    }

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex("0.2,-1").unwrap(), C64::new(0.2, -1.0));
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert!(parse_complex("1,x").is_err());
    }

    #[test]
    fn parse_errors_are_preconditions() {
        let e = parse_count("x").unwrap_err();
        assert_eq!(exit_code(&e), 1);
        let e: anyhow::Error = Error::NumericGuard("t".into()).into();
        assert_eq!(exit_code(&e), 2);
        let e: anyhow::Error = Error::ResourceLimit("t".into()).into();
        assert_eq!(exit_code(&e), 3);
    }
}

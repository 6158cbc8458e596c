//! Declarative potential configuration: a line-oriented text format with
//! one `piece`/`plateau`/`disk`/`angular` statement per line, plus builtin
//! references `builtin:name[key=value,...]`. Every builtin round-trips
//! through this format.

use anyhow::{anyhow, bail, Context, Result};
use speclab::constructions;
use speclab::potentials::{
    parse_formula, AngularFactor, DiskBump, LogPlateau, Potential, PotentialForm, PowerLog,
    RadialPiece,
};

fn fmt_f(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{v:?}")
    }
}

fn parse_f(s: &str) -> Result<f64> {
    if s == "inf" {
        Ok(f64::INFINITY)
    } else if s == "-inf" {
        Ok(f64::NEG_INFINITY)
    } else {
        s.parse::<f64>().with_context(|| format!("bad number `{s}`"))
    }
}

fn behavior_text(p: &PowerLog) -> String {
    format!(
        "coeff {} u {} ln {} lnln {}",
        fmt_f(p.coeff),
        fmt_f(p.pow_u),
        fmt_f(p.pow_ln),
        fmt_f(p.pow_lnln)
    )
}

fn parse_behavior(s: &str) -> Result<PowerLog> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    if toks.len() != 8 || toks[0] != "coeff" || toks[2] != "u" || toks[4] != "ln" || toks[6] != "lnln"
    {
        bail!("bad decay annotation `{s}` (expected: coeff C u A ln B lnln D)");
    }
    Ok(PowerLog::new(
        parse_f(toks[1])?,
        parse_f(toks[3])?,
        parse_f(toks[5])?,
        parse_f(toks[7])?,
    ))
}

/// Serialize a potential to config text.
pub fn potential_to_text(p: &Potential) -> String {
    let mut out = String::new();
    match &p.form {
        PotentialForm::Radial(pieces) => {
            out.push_str("kind radial\n");
            if p.nonincreasing {
                out.push_str("nonincreasing true\n");
            }
            for piece in pieces {
                out.push_str(&piece_line(piece));
            }
        }
        PotentialForm::Separable { radial, angular } => {
            out.push_str("kind separable\n");
            for piece in radial {
                out.push_str(&piece_line(piece));
            }
            out.push_str(&format!("angular : {}", angular.expr));
            if let Some(b) = &angular.zero_behavior {
                out.push_str(&format!(" ; zero {}", behavior_text(b)));
            }
            out.push('\n');
        }
        PotentialForm::LogPlateaus(plats) => {
            out.push_str("kind plateaus\n");
            for pl in plats {
                out.push_str(&format!(
                    "plateau {} {} : {}\n",
                    fmt_f(pl.s_lo),
                    fmt_f(pl.s_hi),
                    fmt_f(pl.q)
                ));
            }
        }
        PotentialForm::DiskBumps(disks) => {
            out.push_str("kind disks\n");
            for d in disks {
                out.push_str(&format!(
                    "disk {} {} : {}\n",
                    fmt_f(d.center_x),
                    fmt_f(d.radius),
                    fmt_f(d.height)
                ));
            }
        }
    }
    out
}

fn piece_line(piece: &RadialPiece) -> String {
    let mut line = format!(
        "piece {} {} : {}",
        fmt_f(piece.lo),
        fmt_f(piece.hi),
        piece.expr
    );
    if let Some(b) = &piece.lo_behavior {
        line.push_str(&format!(" ; lo {}", behavior_text(b)));
    }
    if let Some(b) = &piece.hi_behavior {
        line.push_str(&format!(" ; hi {}", behavior_text(b)));
    }
    line.push('\n');
    line
}

/// Parse config text back into a potential.
pub fn parse_potential_text(src: &str) -> Result<Potential> {
    let mut kind: Option<String> = None;
    let mut nonincreasing = false;
    let mut pieces: Vec<RadialPiece> = Vec::new();
    let mut angular: Option<AngularFactor> = None;
    let mut plateaus: Vec<LogPlateau> = Vec::new();
    let mut disks: Vec<DiskBump> = Vec::new();
    for raw in src.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
        match head {
            "kind" => kind = Some(rest.trim().to_string()),
            "nonincreasing" => nonincreasing = rest.trim() == "true",
            "piece" => {
                let (bounds_part, tail) =
                    rest.split_once(':').ok_or_else(|| anyhow!("piece needs `lo hi : formula`"))?;
                let b: Vec<&str> = bounds_part.split_whitespace().collect();
                if b.len() != 2 {
                    bail!("piece needs exactly two bounds");
                }
                let (formula, annos) = split_annotations(tail);
                let expr = parse_formula(&formula, &["r"])
                    .map_err(|e| anyhow!("formula error: {e}"))?;
                let mut piece = RadialPiece::new(parse_f(b[0])?, parse_f(b[1])?, expr);
                for a in annos {
                    let (tag, spec) =
                        a.trim().split_once(' ').ok_or_else(|| anyhow!("bad annotation `{a}`"))?;
                    match tag {
                        "lo" => piece.lo_behavior = Some(parse_behavior(spec)?),
                        "hi" => piece.hi_behavior = Some(parse_behavior(spec)?),
                        other => bail!("unknown annotation `{other}`"),
                    }
                }
                pieces.push(piece);
            }
            "angular" => {
                let tail = rest.trim_start_matches(':').trim();
                let (formula, annos) = split_annotations(tail);
                let expr = parse_formula(&formula, &["theta"])
                    .map_err(|e| anyhow!("angular formula error: {e}"))?;
                let mut zero_behavior = None;
                for a in annos {
                    let (tag, spec) =
                        a.trim().split_once(' ').ok_or_else(|| anyhow!("bad annotation `{a}`"))?;
                    if tag == "zero" {
                        zero_behavior = Some(parse_behavior(spec)?);
                    } else {
                        bail!("unknown angular annotation `{tag}`");
                    }
                }
                angular = Some(AngularFactor::new(expr, zero_behavior));
            }
            "plateau" => {
                let (bounds_part, q) =
                    rest.split_once(':').ok_or_else(|| anyhow!("plateau needs `s_lo s_hi : q`"))?;
                let b: Vec<&str> = bounds_part.split_whitespace().collect();
                if b.len() != 2 {
                    bail!("plateau needs exactly two bounds");
                }
                plateaus.push(LogPlateau {
                    s_lo: parse_f(b[0])?,
                    s_hi: parse_f(b[1])?,
                    q: parse_f(q.trim())?,
                });
            }
            "disk" => {
                let (pos, h) =
                    rest.split_once(':').ok_or_else(|| anyhow!("disk needs `cx radius : height`"))?;
                let b: Vec<&str> = pos.split_whitespace().collect();
                if b.len() != 2 {
                    bail!("disk needs center and radius");
                }
                disks.push(DiskBump {
                    center_x: parse_f(b[0])?,
                    radius: parse_f(b[1])?,
                    height: parse_f(h.trim())?,
                });
            }
            other => bail!("unknown config statement `{other}`"),
        }
    }
    let kind = kind.ok_or_else(|| anyhow!("config must declare `kind`"))?;
    let mut pot = match kind.as_str() {
        "radial" => Potential::radial(pieces),
        "separable" => Potential::separable(
            pieces,
            angular.ok_or_else(|| anyhow!("separable config needs an `angular` line"))?,
        ),
        "plateaus" => Potential::log_plateaus(plateaus),
        "disks" => Potential::disk_bumps(disks),
        other => bail!("unknown kind `{other}`"),
    };
    if nonincreasing {
        pot = pot.mark_nonincreasing();
    }
    Ok(pot)
}

fn split_annotations(tail: &str) -> (String, Vec<String>) {
    let mut parts = tail.split(';');
    let formula = parts.next().unwrap_or("").trim().to_string();
    (formula, parts.map(|s| s.trim().to_string()).collect())
}

/// Resolve `builtin:name[key=value,...]`, a config file path, or inline
/// config text (when it contains a newline).
pub fn resolve_potential(spec: &str, extra: &[(String, f64)]) -> Result<(Potential, String)> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let (name, mut params) = parse_builtin_ref(rest)?;
        params.extend(extra.iter().cloned());
        let c = constructions::build(&name, &params)
            .map_err(|e| anyhow!("builtin `{name}`: {e}"))?;
        let text = potential_to_text(&c.potential);
        return Ok((c.potential, text));
    }
    let text = if spec.contains('\n') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec).with_context(|| format!("reading config `{spec}`"))?
    };
    let pot = parse_potential_text(&text)?;
    pot.validate().map_err(|e| anyhow!("potential validation failed: {e}"))?;
    Ok((pot, text))
}

pub fn parse_builtin_ref(rest: &str) -> Result<(String, Vec<(String, f64)>)> {
    if let Some((name, args)) = rest.split_once('[') {
        let args = args.trim_end_matches(']');
        let mut params = Vec::new();
        for kv in args.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| anyhow!("builtin parameter `{kv}` must be key=value"))?;
            params.push((k.trim().to_string(), parse_f(v.trim())?));
        }
        Ok((name.to_string(), params))
    } else {
        Ok((rest.to_string(), Vec::new()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_round_trip() {
        for id in constructions::BUILTIN_IDS {
            let params: Vec<(String, f64)> = if id == "alpha1_i" {
                vec![("N".to_string(), 2.0)]
            } else {
                vec![]
            };
            let c = constructions::build(id, &params).unwrap();
            let text = potential_to_text(&c.potential);
            let back = parse_potential_text(&text)
                .unwrap_or_else(|e| panic!("{id}: reparse failed: {e}\n{text}"));
            // sampled pointwise agreement
            for i in 1..60 {
                let r = 0.11 * i as f64 + 0.3;
                for th in [0.013f64, 0.4, -1.2] {
                    let (v1, v2) = (c.potential.eval(r, th), back.eval(r, th));
                    if !v1.is_finite() {
                        continue; // singular sample point
                    }
                    assert!(
                        (v1 - v2).abs() <= 1e-12 * (1.0 + v1.abs()),
                        "{id} at r={r} θ={th}: {v1} vs {v2}"
                    );
                }
            }
        }
    }
}

//! The system file format: labelled `params:`, `vars:` and `polys:`
//! sections, `#` comments, one polynomial per line.

use rrc_core::arith::{parse_poly_at, ArithError, MultiPoly, VarContext};
use rrc_core::grobner::ParametricSystem;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Poly(#[from] ArithError),
    #[error("no polynomials given")]
    EmptyPolys,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Params,
    Vars,
    Polys,
}

/// Names and raw polynomial lines of a system file, before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawSystem {
    pub params: Vec<String>,
    pub vars: Vec<String>,
    /// `(line, column offset, text)` of each polynomial.
    pub polys: Vec<(usize, usize, String)>,
}

fn names(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(str::to_string)
}

pub fn scan(text: &str) -> Result<RawSystem, InputError> {
    let mut raw = RawSystem::default();
    let mut section = None;
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let body = full.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let mut offset = full.len() - full.trim_start().len();
        let mut rest = trimmed;
        for (label, s) in [("params:", Section::Params), ("vars:", Section::Vars), ("polys:", Section::Polys)] {
            if let Some(r) = trimmed.strip_prefix(label) {
                section = Some(s);
                rest = r;
                offset += label.len();
                break;
            }
        }
        if rest.trim().is_empty() {
            continue;
        }
        match section {
            None => return Err(InputError::Syntax { line, message: "content before any section label".into() }),
            Some(Section::Params) => raw.params.extend(names(rest)),
            Some(Section::Vars) => raw.vars.extend(names(rest)),
            Some(Section::Polys) => {
                let lead = rest.len() - rest.trim_start().len();
                let col = full[..offset + lead].chars().count();
                raw.polys.push((line, col, rest.trim().to_string()));
            }
        }
    }
    if raw.polys.is_empty() {
        return Err(InputError::EmptyPolys);
    }
    Ok(raw)
}

/// Parses the polynomials of `raw` over `ctx`.
pub fn polys_over(raw: &RawSystem, ctx: &std::sync::Arc<VarContext>) -> Result<Vec<MultiPoly>, InputError> {
    raw.polys.iter().map(|(line, col, src)| Ok(parse_poly_at(src, ctx, *line, *col)?)).collect()
}

pub fn parse_system(text: &str) -> Result<ParametricSystem, InputError> {
    let raw = scan(text)?;
    let params: Vec<&str> = raw.params.iter().map(String::as_str).collect();
    let vars: Vec<&str> = raw.vars.iter().map(String::as_str).collect();
    let ctx = VarContext::new(&params, &vars)?;
    let polys = polys_over(&raw, &ctx)?;
    ParametricSystem::new(ctx, polys).map_err(|e| InputError::Invalid(e.to_string()))
}

/// Writes `sys` back in the file format.
pub fn render_system(sys: &ParametricSystem) -> String {
    let mut out = format!("params: {}\nvars: {}\npolys:\n", sys.ctx().params().join(" "), sys.ctx().vars().join(" "));
    for p in sys.polys() {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = "# two circles\nparams: y1 y2 y3\nvars: x1 x2\npolys:\nx1^2 + x2^2 - y1\nx1*x2 + y2*x2 + y3*x1  # second\n";

    #[test]
    fn fixture_shape() {
        let sys = parse_system(FIXTURE).unwrap();
        assert_eq!((sys.m(), sys.n(), sys.t(), sys.d()), (2, 2, 3, 2));
    }

    #[test]
    fn toy_and_round_trip() {
        let sys = parse_system("params: y1 y2\nvars: x\npolys:\nx^2 + y1*x + y2").unwrap();
        assert_eq!(sys.t(), 2);
        assert_eq!(parse_system(&render_system(&sys)).unwrap(), sys);
        let fx = parse_system(FIXTURE).unwrap();
        assert_eq!(parse_system(&render_system(&fx)).unwrap(), fx);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_system("params: y\nvars: x\npolys:\n"), Err(InputError::EmptyPolys));
        assert_eq!(parse_system("polys:"), Err(InputError::EmptyPolys));
        let e = parse_system("params: y\nvars: x\npolys:\n  x + z").unwrap_err();
        assert!(matches!(e, InputError::Poly(ArithError::UndeclaredIdentifier { ref name, line: 4, column: 7 }) if name == "z"), "{e:?}");
        assert!(matches!(parse_system("x + 1\npolys:\nx"), Err(InputError::Syntax { line: 1, .. })));
        assert!(matches!(parse_system("params: y\nvars: x\npolys:\nx +* y"), Err(InputError::Poly(ArithError::Parse { line: 4, .. }))));
    }

    #[test]
    fn labels_share_lines() {
        let raw = scan("params: a, b\nvars:\n x\npolys: x - a\n x - b").unwrap();
        assert_eq!(raw.params, ["a", "b"]);
        assert_eq!(raw.vars, ["x"]);
        assert_eq!(raw.polys.len(), 2);
        assert_eq!(raw.polys[0].1, 7);
    }
}

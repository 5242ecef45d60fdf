use hlbranch::exactalg::{parse_rational, Rational};
use hlbranch::hallittlewood::{plancherel_functional, principal_functional, two_point_functional, HlFunctional, Parity};
use hlbranch::measures::OmegaPoint;

use crate::cli::FamilyArgs;
use crate::error::{usage, CliResult};

/// Which side a short family name such as `planch` belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Gl,
    Unitary(Parity),
}

#[derive(Clone, Debug)]
pub enum Family {
    Gl(OmegaPoint),
    Unitary(Parity, HlFunctional),
}

fn parse_list(v: &[String]) -> CliResult<Vec<Rational>> {
    v.iter().map(|s| Ok(parse_rational(s)?)).collect()
}

fn split(name: &str, default: Option<Side>) -> CliResult<(Side, &str)> {
    if let Some(rest) = name.strip_prefix("gl-") {
        return Ok((Side::Gl, rest));
    }
    if let Some(rest) = name.strip_prefix("u-even-") {
        return Ok((Side::Unitary(Parity::Even), rest));
    }
    if let Some(rest) = name.strip_prefix("u-odd-") {
        return Ok((Side::Unitary(Parity::Odd), rest));
    }
    match default {
        Some(side) => Ok((side, name)),
        None => Err(usage(format!("family {name:?} needs a gl-, u-even- or u-odd- prefix"))),
    }
}

/// Builds the boundary point or functional named by `args` at parameter `t`.
pub fn resolve(args: &FamilyArgs, t: &Rational, default: Option<Side>) -> CliResult<Family> {
    let (side, base) = split(&args.family, default)?;
    let unknown = || usage(format!("unknown family {:?}", args.family));
    match side {
        Side::Gl => {
            let omega = match base {
                "haar" => OmegaPoint::haar(t.clone())?,
                "planch" | "plancherel" => OmegaPoint::plancherel(t.clone())?,
                "dirac" => OmegaPoint::dirac_zero(t.clone())?,
                "omega" => OmegaPoint::new(parse_list(&args.alpha)?, parse_list(&args.beta)?, t.clone())?,
                _ => return Err(unknown()),
            };
            Ok(Family::Gl(omega))
        }
        Side::Unitary(parity) => {
            let f = match base {
                "planch" | "plancherel" => plancherel_functional(parity),
                "principal" => principal_functional(args.m, t.clone())?,
                "haar" => principal_functional(None, t.clone())?,
                "two-point" => two_point_functional(parse_rational(&args.a1)?, parse_rational(&args.a2)?)?,
                _ => return Err(unknown()),
            };
            Ok(Family::Unitary(parity, f))
        }
    }
}

//! Text forms for field specs, elements and polynomials.
//!
//! An element is its comma-joined residues `c0,c1,...` (basis order, constant
//! term first). A polynomial lists coefficients ascending; a coefficient in the
//! prime field is a bare residue, anything else is a parenthesized element.

use std::fmt;
use std::str::FromStr;

use subfield_core::arith::prime_power;
use subfield_core::{ElemIndex, FieldCtx, PolyRep, PrimePoly};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("malformed field spec {0:?} (expected p^e:m[:modulus])")]
    Spec(String),
    #[error("malformed number {0:?}")]
    Number(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("residue {value} out of range for characteristic {p}")]
    Residue { value: u64, p: u32 },
    #[error("element has {found} residues, field degree is {degree}")]
    ElementLength { found: usize, degree: usize },
    #[error("unbalanced parentheses in {0:?}")]
    Parens(String),
    #[error(transparent)]
    Core(#[from] subfield_core::Error),
}

fn number<T: FromStr>(s: &str) -> Result<T, FormatError> {
    s.trim().parse().map_err(|_| FormatError::Number(s.to_string()))
}

/// Parsed `p^e:m[:modulus]`. The `p^e` part may also be given as the prime
/// power itself, so `4:2` means `2^2:2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub m: u32,
    pub modulus: Option<PrimePoly>,
}

impl FieldSpec {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }

    pub fn build(&self) -> Result<FieldCtx, FormatError> {
        Ok(FieldCtx::new(self.p, self.e, self.m, self.modulus.clone())?)
    }
}

impl FromStr for FieldSpec {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, FormatError> {
        let mut parts = s.trim().splitn(3, ':');
        let (Some(base), Some(m)) = (parts.next(), parts.next()) else {
            return Err(FormatError::Spec(s.to_string()));
        };
        let (p, e) = match base.split_once('^') {
            Some((p, e)) => (number::<u32>(p)?, number::<u32>(e)?),
            None => {
                let q: u64 = number(base)?;
                let (p, e) = prime_power(q).ok_or(FormatError::NotPrimePower(q))?;
                (p as u32, e)
            }
        };
        let modulus = parts.next().map(parse_prime_poly).transpose()?;
        Ok(FieldSpec { p, e, m: number(m)?, modulus })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "{}:{}", self.p, self.m)?;
        } else {
            write!(f, "{}^{}:{}", self.p, self.e, self.m)?;
        }
        if let Some(modulus) = &self.modulus {
            write!(f, ":{}", join(modulus.coeffs()))?;
        }
        Ok(())
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Modulus over `F_p`, ascending residues (must be monic).
pub fn parse_prime_poly(s: &str) -> Result<PrimePoly, FormatError> {
    let coeffs = s.split(',').map(number).collect::<Result<Vec<u32>, _>>()?;
    Ok(PrimePoly::new(coeffs)?)
}

pub fn format_prime_poly(poly: &PrimePoly) -> String {
    join(poly.coeffs())
}

pub fn format_element(ctx: &FieldCtx, a: ElemIndex) -> String {
    join(ctx.element(a).coeffs())
}

/// Accepts `r0,r1,...`, optionally parenthesized; missing residues are zero.
pub fn parse_element(ctx: &FieldCtx, s: &str) -> Result<ElemIndex, FormatError> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    let residues = s.split(',').map(number).collect::<Result<Vec<u64>, _>>()?;
    element_from_residues(ctx, &residues)
}

fn element_from_residues(ctx: &FieldCtx, residues: &[u64]) -> Result<ElemIndex, FormatError> {
    let p = ctx.characteristic();
    if residues.len() > ctx.degree() {
        return Err(FormatError::ElementLength { found: residues.len(), degree: ctx.degree() });
    }
    if let Some(&value) = residues.iter().find(|&&r| r >= p as u64) {
        return Err(FormatError::Residue { value, p });
    }
    let coeffs: Vec<u32> = residues.iter().map(|&r| r as u32).collect();
    Ok(ctx.index_of(&ctx.elem(&coeffs)?))
}

fn is_prime_field(ctx: &FieldCtx, c: ElemIndex) -> bool {
    (c as u64) < ctx.characteristic() as u64
}

fn format_coeff(ctx: &FieldCtx, c: ElemIndex) -> String {
    if is_prime_field(ctx, c) {
        c.to_string()
    } else {
        format!("({})", format_element(ctx, c))
    }
}

/// Ascending coefficients with trailing zeros dropped; the zero polynomial is `0`.
pub fn format_poly(ctx: &FieldCtx, poly: &PolyRep) -> String {
    let coeffs = poly.trimmed();
    if coeffs.is_empty() {
        return "0".to_string();
    }
    coeffs.iter().map(|&c| format_coeff(ctx, c)).collect::<Vec<_>>().join(",")
}

pub fn parse_poly(ctx: &FieldCtx, s: &str) -> Result<PolyRep, FormatError> {
    let mut coeffs = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    let s = s.trim();
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or_else(|| FormatError::Parens(s.to_string()))?,
            ',' if depth == 0 => {
                coeffs.push(parse_coeff(ctx, &s[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(FormatError::Parens(s.to_string()));
    }
    coeffs.push(parse_coeff(ctx, &s[start..])?);
    Ok(PolyRep::reduce(ctx, &coeffs)?)
}

fn parse_coeff(ctx: &FieldCtx, s: &str) -> Result<ElemIndex, FormatError> {
    let s = s.trim();
    if s.starts_with('(') {
        parse_element(ctx, s)
    } else {
        element_from_residues(ctx, &[number(s)?])
    }
}

/// Human form, highest degree first: `x^3+x+1`.
pub fn pretty_poly(ctx: &FieldCtx, poly: &PolyRep) -> String {
    let terms: Vec<String> = poly
        .trimmed()
        .iter()
        .enumerate()
        .rev()
        .filter(|&(_, &c)| c != 0)
        .map(|(d, &c)| {
            let mono = match d {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{d}"),
            };
            match (c == ctx.one_idx(), d) {
                (true, 0) => "1".to_string(),
                (true, _) => mono,
                (false, 0) => format_coeff(ctx, c),
                (false, _) => format!("{}*{mono}", format_coeff(ctx, c)),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trips() {
        for s in ["2:2", "2^2:2", "3:1", "2:4:1,1,0,0,1"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
        assert_eq!("4:2".parse::<FieldSpec>().unwrap().to_string(), "2^2:2");
        assert!("6:2".parse::<FieldSpec>().is_err());
        assert!("2".parse::<FieldSpec>().is_err());
        assert!("2:x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn polys_round_trip_over_extension_base() {
        let ctx: FieldCtx = "4:2".parse::<FieldSpec>().unwrap().build().unwrap();
        let p = PolyRep::reduce(&ctx, &[5, 0, 1, 12]).unwrap();
        let text = format_poly(&ctx, &p);
        assert_eq!(text, "(1,0,1,0),0,1,(0,0,1,1)");
        assert_eq!(parse_poly(&ctx, &text).unwrap(), p);
    }

    #[test]
    fn prime_field_text() {
        let ctx = FieldCtx::new(2, 1, 2, None).unwrap();
        let p = parse_poly(&ctx, "1,1,0,1").unwrap();
        assert_eq!(format_poly(&ctx, &p), "1,1,0,1");
        assert_eq!(pretty_poly(&ctx, &p), "x^3+x+1");
        assert_eq!(format_poly(&ctx, &PolyRep::zero(&ctx)), "0");
        assert_eq!(parse_element(&ctx, "0,1").unwrap(), 2);
        assert_eq!(parse_element(&ctx, "1").unwrap(), 1);
        assert_eq!(format_element(&ctx, 3), "1,1");
        assert!(parse_poly(&ctx, "2").is_err());
        assert!(parse_poly(&ctx, "(1,1").is_err());
        assert!(parse_element(&ctx, "1,1,1").is_err());
    }
}

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::intmath::perfect_square_root;
use crate::solver::{candidate_zs, solve, solve_quadratic_for_x, SolutionSet, TripleSystem};
use crate::{Error, Result};

/// One step of a derivation, with numbers substituted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// 1-based position in the trace.
    pub index: usize,
    pub label: String,
    pub equation_text: String,
    pub note: String,
}

pub mod labels {
    pub const REARRANGE_LINEAR: &str = "rearrange-linear";
    pub const REARRANGE_CUBIC: &str = "rearrange-cubic";
    pub const DIVIDE: &str = "divide";
    pub const SUBSTITUTE: &str = "substitute";
    pub const DIVISIBILITY: &str = "divisibility";
    pub const CANDIDATES: &str = "candidates";
    pub const QUADRATIC: &str = "quadratic";
    pub const SOLUTIONS: &str = "solutions";
    pub const FACTOR: &str = "factor";
    pub const FAMILY: &str = "family";
}

/// Linear combination of monomials rendered in ASCII, e.g. `X^2 - 8X + 16`.
/// Zero terms are dropped; an all-zero sum renders as `0`.
fn sum(terms: &[(BigInt, &str)]) -> String {
    let mut out = String::new();
    for (coef, monomial) in terms {
        if coef.is_zero() {
            continue;
        }
        let magnitude = coef.abs();
        if out.is_empty() {
            if coef.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if coef.is_negative() { " - " } else { " + " });
        }
        if monomial.is_empty() {
            let _ = write!(out, "{magnitude}");
        } else if magnitude.is_one() {
            out.push_str(monomial);
        } else {
            let _ = write!(out, "{magnitude}{monomial}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `Z - s`, the pivot shifted by the sum.
fn pivot_shift(s: &BigInt) -> String {
    sum(&[(int(1), "Z"), (-s, "")])
}

/// Wraps compound expressions in parentheses.
fn group(expr: &str) -> String {
    if expr.contains(' ') {
        format!("({expr})")
    } else {
        expr.to_string()
    }
}

fn join_values<T: ToString>(values: impl IntoIterator<Item = T>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

struct Builder(Vec<TraceStep>);

impl Builder {
    fn push(&mut self, label: &str, equation_text: String, note: impl Into<String>) {
        self.0.push(TraceStep {
            index: self.0.len() + 1,
            label: label.to_string(),
            equation_text,
            note: note.into(),
        });
    }
}

/// The reduction of `(s, c)` to a divisibility condition on the pivot `Z`
/// and a quadratic in `X`, ending with the solution set.
///
/// Degenerate systems (`c = s^3`) stop after factoring the quadratic and
/// state the infinite family instead.
pub fn derive_trace(system: &TripleSystem) -> Result<Vec<TraceStep>> {
    let s = &system.s;
    let c = &system.c;
    let d0 = system.remainder();
    let shift = pivot_shift(s);
    let mut steps = Builder(Vec::new());

    steps.push(
        labels::REARRANGE_LINEAR,
        format!("X + Y = {}", sum(&[(s.clone(), ""), (int(-1), "Z")])),
        "Move the pivot Z to the right side of the linear equation.",
    );
    steps.push(
        labels::REARRANGE_CUBIC,
        format!("X^3 + Y^3 = {}", sum(&[(c.clone(), ""), (int(-1), "Z^3")])),
        "Move Z^3 to the right side of the cubic equation.",
    );

    // (X^3 + Y^3)/(X + Y) = X^2 - XY + Y^2 and c - Z^3 = (s - Z)(s^2 + sZ + Z^2) + (c - s^3)
    let divided = sum(&[
        (int(1), "X^2"),
        (int(1), "Y^2"),
        (int(-1), "XY"),
        (int(-1), "Z^2"),
        (-s, "Z"),
        (-(s * s), ""),
    ]);
    let divide_rhs = if d0.is_zero() {
        "0".to_string()
    } else {
        format!("{}/{}", -&d0, group(&shift))
    };
    steps.push(
        labels::DIVIDE,
        format!("{divided} = {divide_rhs}"),
        format!("Divide the cubic equation by the linear one, which requires Z != {s}."),
    );

    // Y = s - Z - X turns the left side into 3(X^2 + (Z - s)X - sZ).
    let substituted = sum(&[
        (int(1), "X^2"),
        (int(1), &format!("{}X", group(&shift))),
        (-s, "Z"),
    ]);
    let (third, rem) = d0.div_rem(&int(3));
    let substitute_rhs = if d0.is_zero() {
        "0".to_string()
    } else if rem.is_zero() {
        format!("{}/{}", -&third, group(&shift))
    } else {
        let denominator = if s.is_zero() {
            "3Z".to_string()
        } else {
            format!("3({shift})")
        };
        format!("{}/({denominator})", -&d0)
    };
    steps.push(
        labels::SUBSTITUTE,
        format!("{substituted} = {substitute_rhs}"),
        format!(
            "Substitute Y = {} and divide by 3.",
            sum(&[(s.clone(), ""), (int(-1), "Z"), (int(-1), "X")])
        ),
    );

    if d0.is_zero() {
        let factored = format!("{}(X + Z) = 0", group(&sum(&[(int(1), "X"), (-s, "")])));
        steps.push(
            labels::FACTOR,
            factored,
            format!("Either X = {s} or X = -Z, so two coordinates sum to zero; Z = {s} forces X + Y = 0 as well."),
        );
        steps.push(
            labels::FAMILY,
            format!("(X, Y, Z) = permutations of ({s}, t, -t) for every integer t"),
            "c = s^3, so there are infinitely many solutions.",
        );
        return Ok(steps.0);
    }

    if rem.is_zero() {
        steps.push(
            labels::DIVISIBILITY,
            format!("{shift} must divide {}", third.abs()),
            "The left side is an integer whenever X and Z are.",
        );
    } else {
        steps.push(
            labels::DIVISIBILITY,
            format!("3({shift}) must divide {}", d0.abs()),
            format!("3 does not divide {}, so no pivot is admissible.", d0.abs()),
        );
    }

    let candidates = candidate_zs(system)?;
    steps.push(
        labels::CANDIDATES,
        format!("Z in {{{}}}", join_values(candidates.iter().map(|c| &c.z))),
        format!("{} admissible pivot values.", candidates.len()),
    );

    for candidate in &candidates {
        let quadratic = sum(&[
            (int(1), "X^2"),
            (-&candidate.k, "X"),
            (candidate.constant_term(system), ""),
        ]);
        let discriminant = candidate.discriminant(system);
        let roots = solve_quadratic_for_x(candidate, system);
        let note = if discriminant.is_negative() {
            format!("Discriminant {discriminant} < 0, rejected.")
        } else if perfect_square_root(&discriminant).is_none() {
            format!("Discriminant {discriminant} is not a perfect square, rejected.")
        } else if roots.is_empty() {
            format!("Discriminant {discriminant} has the wrong parity, rejected.")
        } else {
            let found = roots
                .iter()
                .map(|x| format!("X = {x} gives ({x}, {}, {})", &candidate.k - x, candidate.z))
                .collect::<Vec<_>>()
                .join("; ");
            format!("Discriminant {discriminant}. {found}.")
        };
        steps.push(
            labels::QUADRATIC,
            format!("Z = {}: {quadratic} = 0", candidate.z),
            note,
        );
    }

    let SolutionSet::Finite(triples) = solve(system)? else {
        unreachable!("non-degenerate system")
    };
    let (equation_text, note) = if triples.is_empty() {
        (
            "(X, Y, Z) in {}".to_string(),
            "No integer solutions.".to_string(),
        )
    } else {
        (
            format!("(X, Y, Z) = {}", join_values(&triples)),
            format!(
                "{} solutions after closing under the six permutations.",
                triples.len()
            ),
        )
    };
    steps.push(labels::SOLUTIONS, equation_text, note);
    Ok(steps.0)
}

/// The integer `X` with `a = bX + c`, if one exists.
pub fn solve_linear_diophantus(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<Option<BigInt>> {
    if b.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    let (x, rem) = (a - c).div_rem(b);
    Ok(rem.is_zero().then_some(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceFormat {
    Plain,
    Markdown,
    /// One JSON object per line.
    Records,
}

impl FromStr for TraceFormat {
    type Err = Error;

    fn from_str(name: &str) -> Result<Self> {
        match name {
            "plain" | "text" => Ok(TraceFormat::Plain),
            "markdown" | "md" => Ok(TraceFormat::Markdown),
            "json" | "records" | "structured-records" => Ok(TraceFormat::Records),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

pub fn render(trace: &[TraceStep], format: TraceFormat) -> String {
    let mut out = String::new();
    match format {
        TraceFormat::Plain => {
            for step in trace {
                let _ = writeln!(
                    out,
                    "{}. {}: {}",
                    step.index, step.label, step.equation_text
                );
                let _ = writeln!(out, "   {}", step.note);
            }
        }
        TraceFormat::Markdown => {
            if trace.is_empty() {
                return out;
            }
            out.push_str("## Derivation\n\n");
            for step in trace {
                let _ = writeln!(
                    out,
                    "{}. **{}**: `{}`  \n   {}",
                    step.index, step.label, step.equation_text, step.note
                );
            }
        }
        TraceFormat::Records => {
            for step in trace {
                let _ = writeln!(
                    out,
                    "{{\"index\":{},\"label\":{},\"equation_text\":{},\"note\":{}}}",
                    step.index,
                    json_string(&step.label),
                    json_string(&step.equation_text),
                    json_string(&step.note)
                );
            }
        }
    }
    out
}

//! Named equations: the axioms, derived division laws and guard lemmas.

use crate::syntax::{parse, parse_divisive};
use crate::term::{Signature, Term};

/// An equation given in concrete syntax.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub signature: Signature,
}

impl Identity {
    const fn div(name: &'static str, lhs: &'static str, rhs: &'static str) -> Identity {
        Identity {
            name,
            lhs,
            rhs,
            signature: Signature::Divisive,
        }
    }

    const fn inv(name: &'static str, lhs: &'static str, rhs: &'static str) -> Identity {
        Identity {
            name,
            lhs,
            rhs,
            signature: Signature::Inversive,
        }
    }

    pub fn terms(&self) -> (Term, Term) {
        let p = |s: &str| parse(s, self.signature).expect("built-in identity parses");
        (p(self.lhs), p(self.rhs))
    }
}

/// Commutative ring with unit.
pub const COMMUTATIVE_RING: [Identity; 8] = [
    Identity::div("add-assoc", "(x + y) + z", "x + (y + z)"),
    Identity::div("add-comm", "x + y", "y + x"),
    Identity::div("add-zero", "x + 0", "x"),
    Identity::div("add-inverse", "x + -x", "0"),
    Identity::div("mul-assoc", "(x * y) * z", "x * (y * z)"),
    Identity::div("mul-comm", "x * y", "y * x"),
    Identity::div("mul-one", "x * 1", "x"),
    Identity::div("distrib", "x * (y + z)", "x * y + x * z"),
];

/// Division axioms.
pub const DIVISIVE: [Identity; 3] = [
    Identity::div("reflexive-div", "1 / (1 / x)", "x"),
    Identity::div("restricted-cancel", "(x * x) / x", "x"),
    Identity::div("div-as-mul", "x / y", "x * (1 / y)"),
];

/// Inverse axioms, stated over the inverse operator.
pub const INVERSIVE: [Identity; 2] = [
    Identity::inv("reflexive-inv", "inv(inv(x))", "x"),
    Identity::inv("restricted-inverse", "x * (x * inv(x))", "x"),
];

/// Consequences of the division axioms.
pub const DERIVED_DIVISION: [Identity; 6] = [
    Identity::div("inv-zero", "1 / 0", "0"),
    Identity::div("inv-one", "1 / 1", "1"),
    Identity::div("inv-neg", "1 / -x", "-(1 / x)"),
    Identity::div("inv-mul", "1 / (x * y)", "(1 / x) * (1 / y)"),
    Identity::div("frac-mul", "(x / y) * (z / w)", "(x * z) / (y * w)"),
    Identity::div("frac-div", "(x / y) / (z / w)", "(x * w) / (y * z)"),
];

/// Facts about guards `r / r` used by the fraction decompositions.
pub const GUARD_LEMMAS: [Identity; 7] = [
    Identity::div("guard-idempotent", "(x / x) * (x / x)", "x / x"),
    Identity::div("guard-absorbs", "(x / x) * x", "x"),
    Identity::div("guard-kills-vanishing", "(u / x) * (1 - x / x)", "0"),
    Identity::div(
        "guard-partition",
        "(x/x)*(y/y) + (x/x)*(1 - y/y) + (1 - x/x)*(y/y) + (1 - x/x)*(1 - y/y)",
        "1",
    ),
    Identity::div(
        "guard-select-one",
        "(x/x)*(1 - y/y) * (1 / (u/x + v/y))",
        "(x/x)*(1 - y/y) * (x / u)",
    ),
    Identity::div(
        "guard-select-both",
        "(x/x)*(y/y) * (1 / (u/x + v/y))",
        "(x/x)*(y/y) * ((x*y) / (y*u + x*v))",
    ),
    Identity::div(
        "guard-select-none",
        "(1 - x/x)*(1 - y/y) * (1 / (u/x + v/y))",
        "0",
    ),
];

/// At most one of two coprime numerals vanishes, which splits closed
/// quotients by characteristic.
pub const CHARACTERISTIC_SPLIT: [Identity; 2] = [
    Identity::div("split-2-3", "6/6 + (1 - 2/2) + (1 - 3/3)", "1"),
    Identity::div(
        "split-4-9-5",
        "180/180 + (1 - 4/4) + (1 - 9/9) + (1 - 5/5)",
        "1",
    ),
];

/// Parses both sides of a user equation `lhs = rhs` over division.
pub fn parse_equation(src: &str) -> Result<(Term, Term), crate::error::Error> {
    let Some((l, r)) = src.split_once('=') else {
        return Err(crate::error::ParseError {
            line: 1,
            column: src.chars().count() + 1,
            expected: "`=`".into(),
            found: "end of input".into(),
        }
        .into());
    };
    let lhs = parse_divisive(l)?;
    let rhs = parse_divisive(r).map_err(|e| shift_columns(e, l.chars().count() + 1))?;
    Ok((lhs, rhs))
}

/// Moves parse positions on the first line right by `offset`.
fn shift_columns(e: crate::error::Error, offset: usize) -> crate::error::Error {
    use crate::error::Error;
    match e {
        Error::Parse(mut p) if p.line == 1 => {
            p.column += offset;
            Error::Parse(p)
        }
        Error::SignatureError {
            operator,
            signature,
            line: 1,
            column,
        } => Error::SignatureError {
            operator,
            signature,
            line: 1,
            column: column + offset,
        },
        other => other,
    }
}

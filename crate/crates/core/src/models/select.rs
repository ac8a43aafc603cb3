use std::fmt;
use std::str::FromStr;

use super::{gf, mk, q0, GaloisField, ModK, Q0};
use crate::error::Error;

/// One of the shipped models, chosen at runtime from a specifier string:
/// `q0`, `mk:<k>` or `gf:<p>^<n>`.
#[derive(Clone, Debug)]
pub enum AnyModel {
    Q0(Q0),
    Mk(ModK),
    Gf(GaloisField),
}

/// Runs `$body` with `$m` bound to the concrete model inside an [`AnyModel`].
#[macro_export]
macro_rules! with_model {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::models::AnyModel::Q0($m) => $body,
            $crate::models::AnyModel::Mk($m) => $body,
            $crate::models::AnyModel::Gf($m) => $body,
        }
    };
}

impl FromStr for AnyModel {
    type Err = Error;

    fn from_str(spec: &str) -> Result<AnyModel, Error> {
        let unknown = || Error::UnknownModel(spec.to_string());
        let spec_t = spec.trim();
        if spec_t == "q0" {
            return Ok(AnyModel::Q0(q0()));
        }
        if let Some(k) = spec_t.strip_prefix("mk:") {
            let k: u64 = k.parse().map_err(|_| unknown())?;
            return mk(k).map(AnyModel::Mk);
        }
        if let Some(rest) = spec_t.strip_prefix("gf:") {
            let (p, n) = rest.split_once('^').unwrap_or((rest, "1"));
            let p: u64 = p.parse().map_err(|_| unknown())?;
            let n: u32 = n.parse().map_err(|_| unknown())?;
            return gf(p, n).map(AnyModel::Gf);
        }
        Err(unknown())
    }
}

impl fmt::Display for AnyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use super::Meadow;
        let name = with_model!(self, m => m.name());
        f.write_str(&name)
    }
}

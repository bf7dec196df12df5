//! Property names as accepted on the command line: `pk_free:K`,
//! `d_bounded:D`, `st_disc:S,T` and `st_disc:S,T,L` with an explicit path
//! length bound.

use std::fmt;
use std::str::FromStr;

use discstream_core::Builtin;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropertySpec(pub Builtin);

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unrecognized property `{0}` (expected pk_free:K, d_bounded:D or st_disc:S,T[,L])")]
pub struct PropertyError(String);

impl FromStr for PropertySpec {
    type Err = PropertyError;

    fn from_str(s: &str) -> Result<Self, PropertyError> {
        let err = || PropertyError(s.to_string());
        let (name, args) = s.split_once(':').ok_or_else(err)?;
        let nums: Vec<u32> = args
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| err()))
            .collect::<Result<_, _>>()?;
        let b = match (name, nums.as_slice()) {
            ("pk_free", [k]) => Builtin::PkFree { k: *k },
            ("d_bounded", [d]) => Builtin::DBounded { d: *d },
            ("st_disc", [s, t]) => Builtin::StDisconnectivity { s: *s, t: *t, max_len: None },
            ("st_disc", [s, t, l]) => Builtin::StDisconnectivity { s: *s, t: *t, max_len: Some(*l) },
            _ => return Err(err()),
        };
        Ok(PropertySpec(b))
    }
}

impl fmt::Display for PropertySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Builtin::PkFree { k } => write!(f, "pk_free:{k}"),
            Builtin::DBounded { d } => write!(f, "d_bounded:{d}"),
            Builtin::StDisconnectivity { s, t, max_len: None } => write!(f, "st_disc:{s},{t}"),
            Builtin::StDisconnectivity { s, t, max_len: Some(l) } => write!(f, "st_disc:{s},{t},{l}"),
        }
    }
}

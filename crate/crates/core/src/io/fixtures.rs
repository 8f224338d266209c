use thiserror::Error;

use crate::io::json::{parse_complex, IoError};
use crate::molecule::{globe, interval_chain, u_nm};
use crate::ogp::Ogp;

const POWER: &str = include_str!("../../fixtures/power.json");
const FROB: &str = include_str!("../../fixtures/frob.json");

/// Named shapes: `O<n>`, `I<n>`, `U<n>,<m>`, `power`, `frob`.
pub const SHAPE_NAMES: [&str; 5] = ["O<n>", "I<n>", "U<n>,<m>", "power", "frob"];

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Io(#[from] IoError),
}

fn num(s: &str) -> Option<usize> {
    s.parse().ok().filter(|&n: &usize| n <= 8)
}

pub fn fixture_complex(name: &str) -> Result<Ogp, FixtureError> {
    let unknown = || FixtureError::Unknown(name.to_string());
    match name {
        "power" => return Ok(parse_complex(POWER)?),
        "frob" => return Ok(parse_complex(FROB)?),
        _ => {}
    }
    if let Some(r) = name.strip_prefix('O') {
        return Ok(globe(num(r).ok_or_else(unknown)?));
    }
    if let Some(r) = name.strip_prefix('I') {
        return Ok(interval_chain(num(r).ok_or_else(unknown)?).shape);
    }
    if let Some(r) = name.strip_prefix('U') {
        let (n, m) = r.split_once(',').ok_or_else(unknown)?;
        return Ok(u_nm(num(n).ok_or_else(unknown)?, num(m).ok_or_else(unknown)?).shape);
    }
    Err(unknown())
}

pub fn power() -> Ogp {
    fixture_complex("power").expect("shipped fixture")
}

pub fn frob() -> Ogp {
    fixture_complex("frob").expect("shipped fixture")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::json::serialize_complex;

    #[test]
    fn shipped_files_are_canonical() {
        assert_eq!(serialize_complex(&power()), POWER);
        assert_eq!(serialize_complex(&frob()), FROB);
        assert_eq!(power().len(), 29);
        assert_eq!(frob().len(), 27);
    }

    #[test]
    fn builders() {
        assert_eq!(fixture_complex("O2").unwrap().len(), 5);
        assert_eq!(fixture_complex("U2,1").unwrap().len(), 7);
        assert!(fixture_complex("Q").is_err());
    }
}

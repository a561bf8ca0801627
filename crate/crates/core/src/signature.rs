use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `self · value`.
    pub fn apply(self, value: &Rational) -> Rational {
        match self {
            Sign::Plus => value.clone(),
            Sign::Minus => -value.clone(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self.flip()
    }
}

/// Per-order sign pattern `(e_1, e_2, ...)`; order-`k` minors must carry
/// sign `e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature(Vec<Sign>);

impl Signature {
    pub fn new(signs: Vec<Sign>) -> Self {
        Signature(signs)
    }

    pub fn uniform(sign: Sign, len: usize) -> Self {
        Signature(vec![sign; len])
    }

    /// `(+1, +1, ...)`, the signature of total positivity and nonnegativity.
    pub fn all_positive(len: usize) -> Self {
        Signature::uniform(Sign::Plus, len)
    }

    pub fn from_i8s(values: &[i8]) -> Result<Self> {
        values
            .iter()
            .map(|&v| Sign::from_i8(v).ok_or_else(|| Error::Argument(format!("signature entry {v} is not +1 or -1"))))
            .collect::<Result<Vec<_>>>()
            .map(Signature)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `e_order`, with `order` counted from 1.
    pub fn sign(&self, order: usize) -> Sign {
        self.0[order - 1]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn is_all_positive(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Plus)
    }

    /// Keeps `e_1 .. e_{k-1}` and negates every sign from order `k` on.
    pub fn flipped_from(&self, k: usize) -> Signature {
        Signature(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &s)| if i + 1 >= k { s.flip() } else { s })
                .collect(),
        )
    }

    /// The first `len` signs.
    pub fn truncated(&self, len: usize) -> Signature {
        Signature(self.0[..len.min(self.0.len())].to_vec())
    }

    /// All `2^len` signatures of the given length, in binary order with `+`
    /// before `-`.
    pub fn enumerate(len: usize) -> impl Iterator<Item = Signature> {
        (0u64..1 << len).map(move |bits| {
            Signature(
                (0..len)
                    .map(|i| if bits >> (len - 1 - i) & 1 == 0 { Sign::Plus } else { Sign::Minus })
                    .collect(),
            )
        })
    }
}

/// Parses `+,-,+`; `+1`, `1` and `-1` are accepted as well.
impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(1, None, "empty signature"));
        }
        s.split(',')
            .enumerate()
            .map(|(i, tok)| match tok.trim() {
                "+" | "+1" | "1" => Ok(Sign::Plus),
                "-" | "-1" => Ok(Sign::Minus),
                other => Err(Error::parse(1, Some(i + 1), format!("bad signature token `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Signature)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(|s| s.symbol()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s: Signature = "+,-,+".parse().unwrap();
        assert_eq!(s.signs(), &[Sign::Plus, Sign::Minus, Sign::Plus]);
        assert_eq!(s.to_string(), "+,-,+");
        let t: Signature = "1, -1".parse().unwrap();
        assert_eq!(t.to_string(), "+,-");
        assert!("+,x".parse::<Signature>().is_err());
        assert!("".parse::<Signature>().is_err());
    }

    #[test]
    fn flip_from_order() {
        let e = Signature::all_positive(4);
        assert_eq!(e.flipped_from(2).to_string(), "+,-,-,-");
        assert_eq!(e.flipped_from(1).to_string(), "-,-,-,-");
        let g: Signature = "+,-,+".parse().unwrap();
        assert_eq!(g.flipped_from(3).to_string(), "+,-,-");
    }

    #[test]
    fn enumerates_all_signatures() {
        let all: Vec<_> = Signature::enumerate(3).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0].to_string(), "+,+,+");
        assert_eq!(all[7].to_string(), "-,-,-");
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
    }

    #[test]
    fn from_i8s_rejects_zero() {
        assert!(Signature::from_i8s(&[1, -1]).is_ok());
        assert!(Signature::from_i8s(&[1, 0]).is_err());
    }
}

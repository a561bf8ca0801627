//! Method selection shared by the command line and the C interface.

use std::fmt;
use std::str::FromStr;

use crate::biclique::{biclique_partial_check, biclique_partial_check_parallel};
use crate::dodgson::tp_check_dodgson;
use crate::error::{Error, Result};
use crate::matrix::PartialMatrix;
use crate::oracle::{check_property_brute, PropertySpec};
use crate::partial::{full_checker_for, recursive_partial_check};
use crate::report::CheckReport;
use crate::signature::Signature;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Tp,
    Tn,
    Ssr,
    Wsr,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Tp => "tp",
            Property::Tn => "tn",
            Property::Ssr => "ssr",
            Property::Wsr => "wsr",
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Property::Tp | Property::Ssr)
    }

    /// The sign condition for an `m`×`n` matrix. TP and TN take no
    /// signature; SSR and WSR require one covering every minor order.
    pub fn spec(self, signature: Option<&Signature>, rows: usize, cols: usize) -> Result<PropertySpec> {
        let order = rows.min(cols);
        match (self, signature) {
            (Property::Tp | Property::Tn, Some(_)) => Err(Error::Argument(format!(
                "--signature does not apply to {}",
                self.name()
            ))),
            (Property::Tp, None) => Ok(PropertySpec::tp(order)),
            (Property::Tn, None) => Ok(PropertySpec::tn(order)),
            (Property::Ssr | Property::Wsr, None) => Err(Error::Argument(format!(
                "{} needs --signature",
                self.name()
            ))),
            (Property::Ssr | Property::Wsr, Some(sig)) => {
                if sig.len() < order {
                    return Err(Error::Argument(format!(
                        "signature has {} signs, a {rows}x{cols} matrix needs {order}",
                        sig.len()
                    )));
                }
                Ok(PropertySpec::new(sig.truncated(order), self.is_strict()))
            }
        }
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tp" => Ok(Property::Tp),
            "tn" => Ok(Property::Tn),
            "ssr" => Ok(Property::Ssr),
            "wsr" => Ok(Property::Wsr),
            other => Err(Error::Argument(format!("unknown property `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Dodgson for a fully specified TP check, recursive otherwise.
    Auto,
    Dodgson,
    Brute,
    Recursive,
    Biclique,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Dodgson => "dodgson",
            Method::Brute => "brute",
            Method::Recursive => "recursive",
            Method::Biclique => "biclique",
        }
    }

    /// Resolves `Auto` and rejects Dodgson where it does not apply.
    pub fn resolve(self, matrix: &PartialMatrix, spec: &PropertySpec) -> Result<Method> {
        let dodgson_ok = matrix.is_fully_specified() && spec.is_tp();
        match self {
            Method::Auto if dodgson_ok => Ok(Method::Dodgson),
            Method::Auto => Ok(Method::Recursive),
            Method::Dodgson if !spec.is_tp() => Err(Error::Argument(
                "the dodgson method only decides total positivity".into(),
            )),
            Method::Dodgson if !dodgson_ok => Err(Error::Argument(
                "the dodgson method needs a fully specified matrix".into(),
            )),
            other => Ok(other),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "dodgson" => Ok(Method::Dodgson),
            "brute" => Ok(Method::Brute),
            "recursive" => Ok(Method::Recursive),
            "biclique" => Ok(Method::Biclique),
            other => Err(Error::Argument(format!("unknown method `{other}`"))),
        }
    }
}

/// Runs `method` (after resolution). `parallel` spreads independent
/// per-biclique checks over the current rayon pool.
pub fn check(matrix: &PartialMatrix, spec: &PropertySpec, method: Method, parallel: bool) -> Result<CheckReport> {
    spec.ensure_covers(matrix)?;
    match method.resolve(matrix, spec)? {
        Method::Dodgson => tp_check_dodgson(matrix),
        Method::Brute => check_property_brute(matrix, spec),
        Method::Recursive => recursive_partial_check(matrix, &full_checker_for(spec)),
        Method::Biclique if parallel => biclique_partial_check_parallel(matrix, &full_checker_for(spec)),
        Method::Biclique => biclique_partial_check(matrix, &full_checker_for(spec)),
        Method::Auto => unreachable!("resolve never returns Auto"),
    }
}

//! JSON input for covers.
//!
//! ```json
//! { "builder": "Sp6", "Qt": 1, "n": 2 }
//! { "builder": "GSp", "rank": 2, "Q": [0, 1], "n": 2 }
//! { "root_datum": { ... }, "B": [[2]], "n": 2 }
//! ```
//!
//! Exactly one of `root_datum` and `builder` is required, and exactly one
//! of `B` (the polarization), `Qt` (value on short coroots) and `Q` (the
//! pair `(q, c)` for `GL_r`, `(kappa, nu)` for `GSp_{2r}`).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{glr_form, gsp_form, qt_form, Cover, CoverError, QuadraticForm};
use crate::lattice::IntMatrix;
use crate::rootdata::{build_from_code, RootDataError, RootDatum};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_datum: Option<RootDatum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builder: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<IntMatrix>,
    #[serde(rename = "Qt", default, skip_serializing_if = "Option::is_none")]
    pub qt: Option<i64>,
    #[serde(rename = "Q", default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<i64>>,
    pub n: u64,
}

impl CoverSpec {
    pub fn root_datum(&self) -> Result<RootDatum, InputError> {
        match (&self.root_datum, &self.builder) {
            (Some(rd), None) => Ok(rd.clone().checked()?),
            (None, Some(code)) => Ok(build_from_code(code, self.rank)?),
            _ => Err(InputError::Malformed("give exactly one of root_datum and builder".into())),
        }
    }

    pub fn build(&self) -> Result<Cover, InputError> {
        let rd = self.root_datum()?;
        let form = match (&self.b, self.qt, &self.q) {
            (Some(b), None, None) => QuadraticForm::new(b.clone())?,
            (None, Some(t), None) => qt_form(&rd, t)?,
            (None, None, Some(pair)) => {
                let [a, b] = pair[..] else {
                    return Err(InputError::Malformed("Q takes two integers".into()));
                };
                let code = self.builder.as_deref().unwrap_or("");
                match code {
                    c if c.starts_with("GSp") => gsp_form(rd.rank - 1, a, b)?,
                    c if c.starts_with("GL") => glr_form(rd.rank, a, b)?,
                    _ => return Err(InputError::Malformed("Q = (a, b) needs the GL or GSp builder".into())),
                }
            }
            _ => return Err(InputError::Malformed("give exactly one of B, Qt and Q".into())),
        };
        Ok(Cover::new(rd, form, self.n)?)
    }
}

pub fn parse_cover(text: &str) -> Result<Cover, InputError> {
    serde_json::from_str::<CoverSpec>(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::identify_dual;

    #[test]
    fn builder_forms() {
        let c = parse_cover(r#"{"builder": "SL2", "Qt": 1, "n": 2}"#).unwrap();
        assert_eq!(identify_dual(&c).unwrap().starred_name(), "*SL_2");
        let c = parse_cover(r#"{"builder": "GSp", "rank": 2, "Q": [0, 1], "n": 2}"#).unwrap();
        assert_eq!(identify_dual(&c).unwrap().display_name, "PGSp_4 × GL_1");
        let c = parse_cover(r#"{"builder": "GL3", "Q": [1, 0], "n": 2}"#).unwrap();
        assert_eq!(c.rank(), 3);
    }

    #[test]
    fn explicit_datum_round_trip() {
        let c = parse_cover(r#"{"builder": "Sp6", "Qt": 1, "n": 3}"#).unwrap();
        let spec = CoverSpec {
            root_datum: Some(c.root_datum.clone()),
            b: Some(c.q.gram_b.clone()),
            n: 3,
            ..Default::default()
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(parse_cover(&text).unwrap(), c);
    }

    #[test]
    fn rejects_ambiguous_input() {
        assert!(parse_cover(r#"{"builder": "SL2", "n": 2}"#).is_err());
        assert!(parse_cover(r#"{"builder": "SL2", "Qt": 1, "B": [[2]], "n": 2}"#).is_err());
        assert!(parse_cover(r#"{"builder": "SL2", "Q": [1, 0], "n": 2}"#).is_err());
        assert!(parse_cover(r#"{"builder": "SL2", "Qt": 1, "n": 0}"#).is_err());
    }
}

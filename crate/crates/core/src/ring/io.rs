use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{AdditiveType, FiniteRing};
use crate::error::{Error, Result};

/// On-disk ring: `{"p": int, "exps": [int], "mul": [[[int]]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    pub p: u64,
    pub exps: Vec<u32>,
    pub mul: Vec<Vec<Vec<u64>>>,
}

impl From<&FiniteRing> for RingFile {
    fn from(r: &FiniteRing) -> Self {
        RingFile {
            p: r.p(),
            exps: r.atype().exps().to_vec(),
            mul: r.tensor().to_vec(),
        }
    }
}

impl TryFrom<RingFile> for FiniteRing {
    type Error = Error;

    fn try_from(f: RingFile) -> Result<Self> {
        FiniteRing::new(AdditiveType::new(f.p, f.exps)?, f.mul)
    }
}

impl FiniteRing {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: RingFile = serde_json::from_str(text)?;
        f.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&RingFile::from(self)).expect("ring file serializes")
    }
}

pub fn load_ring(path: impl AsRef<Path>) -> Result<FiniteRing> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::io(path.as_ref(), e))?;
    FiniteRing::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_and_rejects() {
        let r = FiniteRing::from_json(r#"{"p":3,"exps":[2],"mul":[[[3]]]}"#).unwrap();
        assert_eq!(r.order(), 9);
        assert_eq!(FiniteRing::from_json(&r.to_json()).unwrap(), r);

        // b0 b0 = b1, b1 b0 = b1, b0 b1 = 0 on F_2^2: (b0 b0) b0 = b1 b0 = b1 but b0 (b0 b0) = b0 b1 = 0
        let text = r#"{"p":2,"exps":[1,1],"mul":[[[0,1],[0,0]],[[0,1],[0,0]]]}"#;
        let err = FiniteRing::from_json(text).unwrap_err().to_string();
        assert!(err.contains("(0,0,0)"), "{err}");
    }
}

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{build::from_permutation_generators, FiniteGroup};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum GroupFile {
    Cayley {
        order: usize,
        identity: usize,
        table: Vec<Vec<usize>>,
    },
    Permutations {
        degree: usize,
        perm_gens: Vec<Vec<usize>>,
    },
}

impl GroupFile {
    pub fn into_group(self) -> Result<FiniteGroup> {
        match self {
            GroupFile::Cayley { order, identity, table } => {
                if table.len() != order || table.iter().any(|row| row.len() != order) {
                    return Err(Error::InvalidGroup(format!("table must be {order}x{order}")));
                }
                let flat = table.into_iter().flatten().map(|x| x as u32).collect();
                FiniteGroup::from_table(order, identity, flat)
            }
            GroupFile::Permutations { degree, perm_gens } => from_permutation_generators(degree, &perm_gens),
        }
    }
}

impl From<&FiniteGroup> for GroupFile {
    fn from(g: &FiniteGroup) -> Self {
        let n = g.order();
        GroupFile::Cayley {
            order: n,
            identity: g.identity(),
            table: (0..n).map(|a| (0..n).map(|b| g.op(a, b)).collect()).collect(),
        }
    }
}

impl FiniteGroup {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<GroupFile>(text)?.into_group()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupFile::from(self)).expect("serializable")
    }
}

pub fn load_group(path: &Path) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    FiniteGroup::from_json(&text)
}

use serde::{Deserialize, Serialize};

use super::model::{AbelianGroup, FiniteGroup, GroupModel};
use super::table::FiniteGroupTable;
use crate::error::{invalid, Result};

/// JSON description of a group with generators, one per orbit under
/// inversion.
///
/// ```json
/// {"variant":"cyclic","n":8,"gens":[1]}
/// {"variant":"abelian","rank":2,"moduli":[],"gens":[[1,0],[0,1]]}
/// {"variant":"free","rank":2}
/// {"variant":"free_product","H":{"variant":"cyclic","n":8},"K":{"variant":"cyclic","n":2}}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// Z/n; `gens` defaults to `[1]`.
    Cyclic {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gens: Option<Vec<i64>>,
    },
    /// Z^rank x Z/m_1 x ...; `gens` defaults to the unit vectors.
    Abelian {
        rank: usize,
        #[serde(default)]
        moduli: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gens: Option<Vec<Vec<i64>>>,
    },
    Free {
        rank: usize,
    },
    /// A finite group by explicit multiplication table.
    Table {
        #[serde(default)]
        name: Option<String>,
        rows: Vec<Vec<usize>>,
        gens: Vec<usize>,
    },
    FreeProduct {
        #[serde(rename = "H")]
        h: Box<GroupSpec>,
        #[serde(rename = "K")]
        k: Box<GroupSpec>,
    },
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| invalid(format!("group spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group specs always serialize")
    }

    pub fn build(&self) -> Result<GroupModel> {
        match self {
            GroupSpec::Cyclic { .. } | GroupSpec::Table { .. } => {
                Ok(GroupModel::Finite(self.build_finite()?))
            }
            GroupSpec::Abelian { rank, moduli, gens } => {
                let gens = gens
                    .clone()
                    .unwrap_or_else(|| unit_vectors(rank + moduli.len()));
                GroupModel::abelian(*rank, moduli, &gens)
            }
            GroupSpec::Free { rank } => GroupModel::free(*rank),
            GroupSpec::FreeProduct { h, k } => {
                GroupModel::free_product(h.build_finite()?, k.build_finite()?)
            }
        }
    }

    /// Builds a finite group, accepting cyclic, table, and rank-0 abelian specs.
    pub fn build_finite(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic { n, gens } => match gens {
                Some(g) => FiniteGroup::cyclic(*n, g),
                None => FiniteGroup::cycle(*n),
            },
            GroupSpec::Abelian {
                rank: 0,
                moduli,
                gens,
            } => {
                let gens = gens.clone().unwrap_or_else(|| unit_vectors(moduli.len()));
                AbelianGroup::new(0, moduli, &gens)?.to_finite()
            }
            GroupSpec::Table { name, rows, gens } => {
                let table = FiniteGroupTable::from_rows(
                    name.clone().unwrap_or_else(|| "G".into()),
                    rows.clone(),
                )?;
                FiniteGroup::new(table, gens)
            }
            other => Err(invalid(format!(
                "expected a finite group spec, got {}",
                other.to_json()
            ))),
        }
    }
}

fn unit_vectors(dim: usize) -> Vec<Vec<i64>> {
    (0..dim)
        .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_variant() {
        let g = GroupSpec::from_json(r#"{"variant":"cyclic","n":8,"gens":[1]}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(g.order(), Some(8));
        let g = GroupSpec::from_json(
            r#"{"variant":"abelian","rank":2,"moduli":[],"gens":[[1,0],[0,1]]}"#,
        )
        .unwrap()
        .build()
        .unwrap();
        assert_eq!(g.generators().len(), 4);
        let g = GroupSpec::from_json(r#"{"variant":"free","rank":2}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(g.name(), "F2");
        let fp = r#"{"variant":"free_product","H":{"variant":"cyclic","n":8,"gens":[1]},"K":{"variant":"cyclic","n":2}}"#;
        let g = GroupSpec::from_json(fp).unwrap().build().unwrap();
        assert_eq!(g.generators().len(), 3);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(
            GroupSpec::from_json(r#"{"variant":"cyclic","n":6,"gens":[2]}"#)
                .unwrap()
                .build()
                .is_err()
        );
        assert!(GroupSpec::from_json(r#"{"variant":"nope"}"#).is_err());
        let fp = r#"{"variant":"free_product","H":{"variant":"free","rank":1},"K":{"variant":"cyclic","n":2}}"#;
        assert!(GroupSpec::from_json(fp).unwrap().build().is_err());
    }

    #[test]
    fn round_trips_through_json() {
        let spec = GroupSpec::FreeProduct {
            h: Box::new(GroupSpec::Cyclic {
                n: 4,
                gens: Some(vec![1]),
            }),
            k: Box::new(GroupSpec::Abelian {
                rank: 0,
                moduli: vec![2, 2],
                gens: None,
            }),
        };
        assert_eq!(GroupSpec::from_json(&spec.to_json()).unwrap(), spec);
        assert!(spec.build().is_ok());
    }
}

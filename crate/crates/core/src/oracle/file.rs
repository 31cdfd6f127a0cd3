//! JSON instance files.
//!
//! ```json
//! {"type": "packets", "users": [["a","c","e","f"], ["a","d","h"]]}
//! {"type": "table", "n": 2, "values": [["1","1"], ["2","1/2"], ["3","3/2"]]}
//! ```
//!
//! Table masks are unsigned integers (as JSON numbers or strings) with bit `i`
//! for user `i + 1`. The empty set may be omitted; every other subset must be
//! listed exactly once.

use std::fmt;
use std::path::Path;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{EntropyOracle, EntropyTable, PacketInstance};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subset::{GroundSet, Subset};

/// The on-disk representation of an instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum InstanceFile {
    Packets {
        users: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Table {
        n: usize,
        values: Vec<(Mask, Rational)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

/// A subset mask that reads from either a JSON number or a decimal string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mask(pub u64);

impl Serialize for Mask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Mask {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MaskVisitor;

        impl Visitor<'_> for MaskVisitor {
            type Value = Mask;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a subset bitmask")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Mask, E> {
                Ok(Mask(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Mask, E> {
                u64::try_from(v)
                    .map(Mask)
                    .map_err(|_| E::custom("negative bitmask"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Mask, E> {
                v.trim()
                    .parse()
                    .map(Mask)
                    .map_err(|_| E::custom(format!("bad bitmask {v:?}")))
            }
        }

        deserializer.deserialize_any(MaskVisitor)
    }
}

/// A loaded instance of either class.
#[derive(Clone, Debug)]
pub enum Instance {
    Packets(PacketInstance),
    Table(EntropyTable),
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Self> {
        Instance::from_json_with(text, true)
    }

    /// Parses an instance; `validate = false` skips the polymatroid check on tables.
    pub fn from_json_with(text: &str, validate: bool) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        Instance::from_file(file, validate)
    }

    pub fn load(path: impl AsRef<Path>, validate: bool) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Instance(format!("cannot read {}: {e}", path.display())))?;
        Instance::from_json_with(&text, validate)
    }

    pub fn from_file(file: InstanceFile, validate: bool) -> Result<Self> {
        match file {
            InstanceFile::Packets { users, labels } => {
                let instance = match labels {
                    Some(labels) => PacketInstance::with_labels(&users, labels)?,
                    None => PacketInstance::new(&users)?,
                };
                Ok(Instance::Packets(instance))
            }
            InstanceFile::Table { n, values, labels } => {
                let ground = match labels {
                    Some(labels) if labels.len() != n => {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            found: labels.len(),
                        })
                    }
                    Some(labels) => GroundSet::with_labels(labels)?,
                    None => GroundSet::new(n)?,
                };
                if n > super::TABLE_LIMIT {
                    return Err(Error::TooLarge {
                        what: "entropy table ground set",
                        size: n,
                        limit: super::TABLE_LIMIT,
                    });
                }
                let mut table: Vec<Option<Rational>> = vec![None; 1usize << n];
                table[0] = Some(Rational::ZERO);
                let mut empty_given = false;
                for (Mask(mask), value) in values {
                    let x = Subset::from_mask(mask);
                    ground.check(x)?;
                    if mask == 0 && !empty_given {
                        empty_given = true;
                    } else if table[mask as usize].is_some() {
                        return Err(Error::Instance(format!("subset {x} listed twice")));
                    }
                    table[mask as usize] = Some(value);
                }
                let values = table
                    .into_iter()
                    .enumerate()
                    .map(|(mask, v)| {
                        v.ok_or_else(|| {
                            Error::Instance(format!(
                                "missing value for subset {}",
                                Subset::from_mask(mask as u64)
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let table = if validate {
                    EntropyTable::new(ground, values)?
                } else {
                    EntropyTable::unvalidated(ground, values)?
                };
                Ok(Instance::Table(table))
            }
        }
    }

    pub fn to_file(&self) -> InstanceFile {
        let labels = self.ground_set().labels().map(<[String]>::to_vec);
        match self {
            Instance::Packets(p) => InstanceFile::Packets {
                users: (0..p.len())
                    .map(|i| p.holdings(i).into_iter().map(str::to_string).collect())
                    .collect(),
                labels,
            },
            Instance::Table(t) => InstanceFile::Table {
                n: t.len(),
                values: t
                    .values()
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(mask, v)| (Mask(mask as u64), *v))
                    .collect(),
                labels,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("instance files always serialize")
    }
}

impl EntropyOracle for Instance {
    fn ground_set(&self) -> &GroundSet {
        match self {
            Instance::Packets(p) => p.ground_set(),
            Instance::Table(t) => t.ground_set(),
        }
    }

    fn entropy(&self, x: Subset) -> Rational {
        match self {
            Instance::Packets(p) => p.entropy(x),
            Instance::Table(t) => t.entropy(x),
        }
    }

    fn is_integral(&self) -> bool {
        match self {
            Instance::Packets(p) => p.is_integral(),
            Instance::Table(t) => t.is_integral(),
        }
    }

    fn is_validated(&self) -> bool {
        match self {
            Instance::Packets(p) => p.is_validated(),
            Instance::Table(t) => t.is_validated(),
        }
    }
}

impl From<PacketInstance> for Instance {
    fn from(p: PacketInstance) -> Self {
        Instance::Packets(p)
    }
}

impl From<EntropyTable> for Instance {
    fn from(t: EntropyTable) -> Self {
        Instance::Table(t)
    }
}

//! Domain-level solutions.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// Problem vertex → chain of hardware vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Embedding {
    chains: BTreeMap<usize, Vec<usize>>,
}

impl Embedding {
    pub fn new() -> Self {
        Self::default()
    }

    /// Chains given in problem-vertex order `0..n`.
    pub fn from_chains(chains: Vec<Vec<usize>>) -> Self {
        Embedding {
            chains: chains.into_iter().enumerate().collect(),
        }
    }

    pub fn insert(&mut self, vertex: usize, chain: Vec<usize>) {
        self.chains.insert(vertex, chain);
    }

    pub fn remove(&mut self, vertex: usize) -> Option<Vec<usize>> {
        self.chains.remove(&vertex)
    }

    pub fn chain(&self, vertex: usize) -> Option<&[usize]> {
        self.chains.get(&vertex).map(Vec::as_slice)
    }

    pub fn chain_mut(&mut self, vertex: usize) -> Option<&mut Vec<usize>> {
        self.chains.get_mut(&vertex)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.chains.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    /// Number of problem vertices with an entry.
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Total hardware vertices used, counting each chain entry.
    pub fn total_vertices(&self) -> usize {
        self.chains.values().map(Vec::len).sum()
    }

    /// Sorts every chain ascending.
    pub fn normalized(mut self) -> Self {
        for c in self.chains.values_mut() {
            c.sort_unstable();
        }
        self
    }
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        // numeric key order, not string order
        let mut map = s.serialize_map(Some(self.chains.len()))?;
        for (k, v) in &self.chains {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Embedding {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, Vec<usize>> = BTreeMap::deserialize(d)?;
        let mut chains = BTreeMap::new();
        for (k, v) in raw {
            let key: usize = k
                .trim()
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad problem vertex key {k:?}")))?;
            if chains.insert(key, v).is_some() {
                return Err(serde::de::Error::custom(format!("duplicate key {key}")));
            }
        }
        Ok(Embedding { chains })
    }
}

/// Color per vertex.
pub type Coloring = Vec<usize>;

/// Number of distinct colors in a coloring.
pub fn colors_used(coloring: &[usize]) -> usize {
    let mut c = coloring.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solution {
    Embedding(Embedding),
    Coloring(Coloring),
}

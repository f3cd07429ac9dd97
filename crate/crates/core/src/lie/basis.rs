use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(bit: u8) -> Parity {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    /// `(−1)^{|a||b|}` as ±1.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Ordered generator names with Z₂ parities. The order doubles as the PBW order.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    names: Vec<String>,
    parities: Vec<Parity>,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedBasis {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.parities == other.parities
    }
}

impl Eq for GradedBasis {}

impl GradedBasis {
    pub fn new<S: Into<String>>(items: impl IntoIterator<Item = (S, Parity)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut parities = Vec::new();
        let mut index = HashMap::new();
        for (name, parity) in items {
            let name = name.into();
            if name.is_empty() {
                return Err(Error::definition("empty generator name"));
            }
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(Error::definition(format!("generator {name} declared twice")));
            }
            names.push(name);
            parities.push(parity);
        }
        Ok(Self {
            names,
            parities,
            index,
        })
    }

    pub fn even<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(names.into_iter().map(|n| (n, Parity::Even)))
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::definition(format!("unknown generator {name}")))
    }

    pub fn is_super(&self) -> bool {
        self.parities.iter().any(|p| p.is_odd())
    }

    /// Basis of the dual space: `hat_<name>`, parities inherited.
    pub fn dual(&self) -> Self {
        Self::new(
            self.names
                .iter()
                .zip(&self.parities)
                .map(|(n, p)| (format!("hat_{n}"), *p)),
        )
        .expect("dual names are unique when the originals are")
    }
}

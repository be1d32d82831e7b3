//! The named Morse clustering instances.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PseudoDistance;
use crate::morse::{morse_partition, MorseClustering};
use crate::preorder::{
    delta_preorders_with, k_preorders_with, sir_preorders_with, unsupervised_preorders,
    LabelOrder, StrongestEdge, TieTolerance,
};

/// Choice of vertex and edge preorders. Parses from and prints as
/// `sir`, `k:<int>`, `delta:<float>` or `unsup`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum MorseInstance {
    Sir,
    K(usize),
    Delta(f64),
    Unsupervised,
}

impl MorseInstance {
    pub fn run(&self, d: &PseudoDistance) -> Result<MorseClustering> {
        self.run_with(d, &LabelOrder::identity(), TieTolerance::default())
    }

    /// Runs the instance with a custom vertex labelling and tie tolerance.
    /// The unsupervised instance derives its own vertex order and ignores
    /// both.
    pub fn run_with(
        &self,
        d: &PseudoDistance,
        labels: &LabelOrder,
        tol: TieTolerance,
    ) -> Result<MorseClustering> {
        let g = d.graph();
        Ok(match *self {
            MorseInstance::Sir => {
                let (pv, pe) = sir_preorders_with(d, labels.clone(), tol);
                morse_partition(g, &pe, &pv)
            }
            MorseInstance::K(k) => {
                let (pv, pe) = k_preorders_with(d, k, labels.clone(), tol)?;
                morse_partition(g, &pe, &pv)
            }
            MorseInstance::Delta(delta) => {
                let (pv, pe) = delta_preorders_with(d, delta, labels.clone(), tol)?;
                morse_partition(g, &pe, &pv)
            }
            MorseInstance::Unsupervised => {
                let (pv, similarity) = unsupervised_preorders(g);
                morse_partition(g, &StrongestEdge::new(&similarity), &pv)
            }
        })
    }
}

impl fmt::Display for MorseInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorseInstance::Sir => write!(f, "sir"),
            MorseInstance::K(k) => write!(f, "k:{k}"),
            MorseInstance::Delta(delta) => write!(f, "delta:{delta}"),
            MorseInstance::Unsupervised => write!(f, "unsup"),
        }
    }
}

impl FromStr for MorseInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown instance `{s}`; expected sir, k:<int>, delta:<float> or unsup"));
        match s.split_once(':') {
            None => match s {
                "sir" => Ok(MorseInstance::Sir),
                "unsup" => Ok(MorseInstance::Unsupervised),
                _ => Err(bad()),
            },
            Some(("k", k)) => {
                let k: usize = k.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(Error::Parameter("k must be at least 1".into()));
                }
                Ok(MorseInstance::K(k))
            }
            Some(("delta", delta)) => {
                let delta: f64 = delta.parse().map_err(|_| bad())?;
                if !(delta.is_finite() && delta > 0.0) {
                    return Err(Error::Parameter(format!("delta must be positive, got {delta}")));
                }
                Ok(MorseInstance::Delta(delta))
            }
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for MorseInstance {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<MorseInstance> for String {
    fn from(i: MorseInstance) -> String {
        i.to_string()
    }
}

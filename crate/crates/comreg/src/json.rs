//! JSON form of a grid: `alphabet`, `axes` and lexicographically sorted
//! `finals`.

use comreg_core::{Axis, GridAutomaton, ParikhVector};
use serde::{Deserialize, Serialize};

use crate::expr::Alphabet;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisJson {
    pub index: usize,
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridJson {
    pub alphabet: Vec<String>,
    pub axes: Vec<AxisJson>,
    pub finals: Vec<Vec<usize>>,
}

impl GridJson {
    pub fn from_grid(g: &GridAutomaton, alphabet: &Alphabet) -> Self {
        GridJson {
            alphabet: alphabet.letters().iter().map(char::to_string).collect(),
            axes: g
                .axes()
                .iter()
                .map(|a| AxisJson {
                    index: a.index,
                    period: a.period,
                })
                .collect(),
            finals: g
                .finals()
                .into_iter()
                .map(ParikhVector::into_inner)
                .collect(),
        }
    }

    pub fn to_grid(&self) -> Result<(GridAutomaton, Alphabet), Error> {
        let alphabet = Alphabet::new(&self.alphabet.concat())?;
        if alphabet.size() != self.alphabet.len() {
            return Err(Error::Json(
                "alphabet entries must be single letters".into(),
            ));
        }
        let axes = self
            .axes
            .iter()
            .map(|a| Axis::new(a.index, a.period))
            .collect::<Result<Vec<_>, _>>()?;
        if axes.len() != alphabet.size() {
            return Err(Error::Json(format!(
                "{} axes for {} letters",
                axes.len(),
                alphabet.size()
            )));
        }
        let finals = self.finals.iter().cloned().map(ParikhVector::new);
        Ok((GridAutomaton::new(axes, finals)?, alphabet))
    }
}

pub fn to_string(g: &GridAutomaton, alphabet: &Alphabet) -> String {
    serde_json::to_string_pretty(&GridJson::from_grid(g, alphabet)).expect("plain data")
}

pub fn from_str(text: &str) -> Result<(GridAutomaton, Alphabet), Error> {
    let raw: GridJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    raw.to_grid()
}

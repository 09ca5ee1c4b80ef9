use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Index, IndexScheme, SeqError, Window};
use crate::system::FiniteSystem;

/// A state for every in-window index, stored in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedSequence {
    window: Window,
    states: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceRepr {
    scheme: IndexScheme,
    entries: Vec<EntryRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRepr {
    index: Value,
    state: String,
}

impl IndexedSequence {
    pub fn new(window: Window, states: Vec<usize>) -> Result<Self, SeqError> {
        if states.len() != window.len() {
            return Err(SeqError::LengthMismatch {
                expected: window.len(),
                got: states.len(),
            });
        }
        Ok(IndexedSequence { window, states })
    }

    /// Assigns every index by a function of the index.
    pub fn from_fn(scheme: IndexScheme, f: impl FnMut(&Index) -> usize) -> Result<Self, SeqError> {
        let window = Window::new(scheme)?;
        let states = window.indices().iter().map(f).collect();
        IndexedSequence::new(window, states)
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn scheme(&self) -> &IndexScheme {
        self.window.scheme()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[usize] {
        &self.states
    }

    pub fn get(&self, index: &Index) -> Option<usize> {
        self.window.position(index).map(|p| self.states[p])
    }

    pub fn at(&self, position: usize) -> usize {
        self.states[position]
    }

    pub fn set(&mut self, position: usize, state: usize) {
        self.states[position] = state;
    }

    /// `(index, state)` pairs in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&Index, usize)> {
        self.window.indices().iter().zip(self.states.iter().copied())
    }

    /// Whether every entry is a state of `sys`.
    pub fn fits(&self, sys: &FiniteSystem) -> bool {
        self.states.iter().all(|&s| s < sys.len())
    }

    pub fn to_json(&self, sys: &FiniteSystem) -> String {
        let repr = SequenceRepr {
            scheme: self.scheme().clone(),
            entries: self
                .entries()
                .map(|(i, s)| EntryRepr {
                    index: i.to_json(),
                    state: sys.label(s).to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&repr).expect("sequence serializes")
    }

    /// Reads the JSON form. Every in-window index must appear exactly once;
    /// entries may come in any order.
    pub fn from_json(text: &str, sys: &FiniteSystem) -> Result<Self, SeqError> {
        let repr: SequenceRepr = serde_json::from_str(text)?;
        let window = Window::new(repr.scheme)?;
        let mut states = vec![None; window.len()];
        for entry in &repr.entries {
            let index = Index::from_json(&entry.index, window.scheme())?;
            let pos = window
                .position(&index)
                .ok_or_else(|| SeqError::BadIndex(format!("{index} is outside the window")))?;
            if states[pos].is_some() {
                return Err(SeqError::BadIndex(format!("{index} appears twice")));
            }
            states[pos] = Some(sys.state(&entry.state)?);
        }
        let states = states
            .into_iter()
            .enumerate()
            .map(|(p, s)| s.ok_or_else(|| SeqError::BadIndex(format!("{} is unassigned", window.indices()[p]))))
            .collect::<Result<Vec<_>, _>>()?;
        IndexedSequence::new(window, states)
    }
}

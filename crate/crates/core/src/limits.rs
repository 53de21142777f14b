use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource caps for the exponential parts of the library.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest n accepted by exhaustive FS searches.
    pub explorer_vertices: usize,
    /// Largest number of configurations a single search may visit.
    pub max_states: u64,
    /// Largest graph handed to cycle/barbell/theta enumeration.
    pub subgraph_vertices: usize,
    /// Cap on the number of enumerated subgraphs.
    pub subgraph_results: usize,
    /// Largest component turned into a dense transition matrix.
    pub dense_states: usize,
    /// Longest swap program kept in memory.
    pub program_swaps: u64,
    /// Node cap for bounded-depth walk searches.
    pub search_nodes: u64,
    /// Largest graph whose acyclic orientations are enumerated.
    pub orientation_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            explorer_vertices: 10,
            max_states: 3_628_800,
            subgraph_vertices: 12,
            subgraph_results: 500_000,
            dense_states: 5040,
            program_swaps: 10_000_000,
            search_nodes: 50_000_000,
            orientation_vertices: 10,
        }
    }
}

impl Limits {
    pub fn check_explorer(&self, n: usize) -> Result<()> {
        if n > self.explorer_vertices {
            return Err(Error::budget(
                "explorer vertex count",
                self.explorer_vertices as u64,
                n as u64,
            ));
        }
        Ok(())
    }

    pub fn check_subgraph(&self, n: usize) -> Result<()> {
        if n > self.subgraph_vertices {
            return Err(Error::budget(
                "subgraph enumeration vertex count",
                self.subgraph_vertices as u64,
                n as u64,
            ));
        }
        Ok(())
    }

    pub fn check_orientation(&self, n: usize) -> Result<()> {
        if n > self.orientation_vertices {
            return Err(Error::budget(
                "orientation enumeration vertex count",
                self.orientation_vertices as u64,
                n as u64,
            ));
        }
        Ok(())
    }

    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let parse = |v: &str| -> Result<u64> {
            let cleaned: String = v.chars().filter(|c| *c != '_').collect();
            cleaned
                .parse::<u64>()
                .or_else(|_| cleaned.parse::<f64>().map(|f| f as u64).map_err(|_| ()))
                .map_err(|_| Error::Parse(format!("bad value for {key}: {v}")))
        };
        let v = parse(value)?;
        match key {
            "explorer_vertices" | "budget" => self.explorer_vertices = v as usize,
            "max_states" => self.max_states = v,
            "subgraph_vertices" => self.subgraph_vertices = v as usize,
            "subgraph_results" => self.subgraph_results = v as usize,
            "dense_states" => self.dense_states = v as usize,
            "program_swaps" => self.program_swaps = v,
            "search_nodes" => self.search_nodes = v,
            "orientation_vertices" => self.orientation_vertices = v as usize,
            _ => return Err(Error::Parse(format!("unknown limit key: {key}"))),
        }
        Ok(())
    }
}

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::json;

use super::ModuleCohomology;
use crate::error::{Error, Result};

/// Window `[-(2 reg + 5), 2 reg + 5]`.
pub fn default_window(reg: i64) -> (i64, i64) {
    let w = 2 * reg.max(0) + 5;
    (-w, w)
}

/// Sheaf cohomology dimensions `h^i(M~(k))` over a window of twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    module: String,
    window: (i64, i64),
    entries: BTreeMap<(usize, i64), u64>,
}

impl CohomologyTable {
    /// Fills `h^i` for `i = 0..r-1` and every `k` in the window.
    pub fn compute(module: impl Into<String>, coh: &ModuleCohomology, window: (i64, i64)) -> Result<Self> {
        if window.0 > window.1 {
            return Err(Error::InvalidArgument(format!("empty window [{}, {}]", window.0, window.1)));
        }
        let mut entries = BTreeMap::new();
        for i in 0..coh.nvars().max(1) {
            for k in window.0..=window.1 {
                entries.insert((i, k), coh.sheaf(i as i64, k)?);
            }
        }
        Ok(CohomologyTable {
            module: module.into(),
            window,
            entries,
        })
    }

    pub fn module(&self) -> &str {
        &self.module
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn get(&self, i: usize, k: i64) -> Option<u64> {
        self.entries.get(&(i, k)).copied()
    }

    pub fn entries(&self) -> &BTreeMap<(usize, i64), u64> {
        &self.entries
    }

    /// Largest cohomological index present.
    pub fn top_index(&self) -> usize {
        self.entries.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn euler_characteristic(&self, k: i64) -> Option<i128> {
        let mut acc = 0i128;
        for i in 0..=self.top_index() {
            let h = self.get(i, k)? as i128;
            acc += if i % 2 == 0 { h } else { -h };
        }
        Some(acc)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,k,h\n");
        for ((i, k), h) in &self.entries {
            let _ = writeln!(s, "{i},{k},{h}");
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self.entries.iter().map(|((i, k), h)| json!({"i": i, "k": k, "h": h})).collect();
        json!({
            "module": self.module,
            "window": [self.window.0, self.window.1],
            "entries": entries,
        })
    }

    /// Text grid: one row per index, one column per twist.
    pub fn to_text(&self) -> String {
        let ks: Vec<i64> = (self.window.0..=self.window.1).collect();
        let cells: Vec<Vec<String>> = (0..=self.top_index())
            .map(|i| ks.iter().map(|&k| self.get(i, k).unwrap_or(0).to_string()).collect())
            .collect();
        let width = ks
            .iter()
            .map(|k| k.to_string().len())
            .chain(cells.iter().flatten().map(|c| c.len()))
            .max()
            .unwrap_or(1);
        let mut s = format!("{}\n  k:", self.module);
        for k in &ks {
            let _ = write!(s, " {k:>width$}");
        }
        s.push('\n');
        for (i, row) in cells.iter().enumerate() {
            let _ = write!(s, "h^{i}:");
            for c in row {
                let _ = write!(s, " {c:>width$}");
            }
            s.push('\n');
        }
        s
    }
}

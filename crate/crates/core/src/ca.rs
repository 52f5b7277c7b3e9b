//! Synchronous cellular automata with finite support over grid addresses.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Address, Grid};
use crate::nav::neighbors;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The neighborhood is summarized by how many neighbors hold each state.
    Totalistic,
    /// The neighborhood is the tuple of neighbor states by edge index.
    Ordered,
}

/// A local rule with state 0 quiescent. The table is total over its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    states: u8,
    mode: Mode,
    arity: u8,
    table: HashMap<(u8, Vec<u8>), u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleEntry {
    pub state: u8,
    pub summary: Vec<u8>,
    pub next: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleFile {
    pub states: u8,
    pub mode: Mode,
    pub entries: Vec<RuleEntry>,
}

/// Every summary the mode admits for `states` states and `arity` neighbors.
fn summaries(mode: Mode, states: u8, arity: u8) -> Vec<Vec<u8>> {
    let mut out = vec![];
    match mode {
        Mode::Ordered => {
            let mut cur = vec![0u8; arity as usize];
            loop {
                out.push(cur.clone());
                let mut i = cur.len();
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    cur[i] += 1;
                    if cur[i] < states {
                        break;
                    }
                    cur[i] = 0;
                }
            }
        }
        Mode::Totalistic => {
            fn rec(k: usize, left: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
                if k + 1 == cur.len() {
                    cur[k] = left;
                    out.push(cur.clone());
                    return;
                }
                for c in 0..=left {
                    cur[k] = c;
                    rec(k + 1, left - c, cur, out);
                }
            }
            rec(0, arity, &mut vec![0; states as usize], &mut out);
            out
        }
    }
}

impl Rule {
    /// Builds a rule by evaluating `f(state, summary)` over the whole domain.
    pub fn from_fn(states: u8, mode: Mode, arity: u8, mut f: impl FnMut(u8, &[u8]) -> u8) -> Result<Rule> {
        let mut entries = vec![];
        for s in 0..states {
            for summary in summaries(mode, states, arity) {
                let next = f(s, &summary);
                entries.push(RuleEntry { state: s, summary, next });
            }
        }
        Rule::from_file(RuleFile { states, mode, entries })
    }

    /// "Become live when a neighbor is live, stay live": two states, totalistic.
    pub fn flood(arity: u8) -> Rule {
        Rule::from_fn(2, Mode::Totalistic, arity, |s, h| u8::from(s == 1 || h[1] > 0)).expect("flood rule is total")
    }

    pub fn from_file(file: RuleFile) -> Result<Rule> {
        let states = file.states;
        if states < 2 {
            return Err(Error::InvalidRule("at least two states are required".into()));
        }
        let first = file.entries.first().ok_or_else(|| Error::InvalidRule("no entries".into()))?;
        let arity = match file.mode {
            Mode::Ordered => first.summary.len(),
            Mode::Totalistic => first.summary.iter().map(|&c| c as usize).sum(),
        };
        if arity != 5 && arity != 7 {
            return Err(Error::InvalidRule(format!("neighborhood size {arity} matches no grid")));
        }
        let arity = arity as u8;
        let mut table = HashMap::new();
        for e in &file.entries {
            if e.state >= states || e.next >= states {
                let bad = if e.state >= states { e.state } else { e.next };
                return Err(Error::StateOutOfRange { state: bad as u32, states: states as u32 });
            }
            let ok = match file.mode {
                Mode::Ordered => e.summary.len() == arity as usize && e.summary.iter().all(|&x| x < states),
                Mode::Totalistic => {
                    e.summary.len() == states as usize && e.summary.iter().map(|&c| c as usize).sum::<usize>() == arity as usize
                }
            };
            if !ok {
                return Err(Error::InvalidRule(format!("summary {:?} for state {} is malformed", e.summary, e.state)));
            }
            if let Some(prev) = table.insert((e.state, e.summary.clone()), e.next) {
                if prev != e.next {
                    return Err(Error::InvalidRule(format!("conflicting entries for {:?} in state {}", e.summary, e.state)));
                }
            }
        }
        let domain = states as usize * summaries(file.mode, states, arity).len();
        if table.len() != domain {
            return Err(Error::InvalidRule(format!("table covers {} of {} cases", table.len(), domain)));
        }
        let rule = Rule { states, mode: file.mode, arity, table };
        if rule.next(0, &vec![0; arity as usize]) != 0 {
            return Err(Error::InvalidRule("a quiescent cell with quiescent neighbors must stay quiescent".into()));
        }
        Ok(rule)
    }

    pub fn to_file(&self) -> RuleFile {
        let mut entries: Vec<RuleEntry> = self
            .table
            .iter()
            .map(|((state, summary), &next)| RuleEntry { state: *state, summary: summary.clone(), next })
            .collect();
        entries.sort_by(|a, b| (a.state, &a.summary).cmp(&(b.state, &b.summary)));
        RuleFile { states: self.states, mode: self.mode, entries }
    }

    pub fn states(&self) -> u8 {
        self.states
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of neighbors the rule expects.
    pub fn arity(&self) -> u8 {
        self.arity
    }

    /// Next state from the own state and the neighbor states by edge index.
    pub fn next(&self, state: u8, neighborhood: &[u8]) -> u8 {
        let summary = match self.mode {
            Mode::Ordered => neighborhood.to_vec(),
            Mode::Totalistic => {
                let mut h = vec![0u8; self.states as usize];
                for &s in neighborhood {
                    h[s as usize] += 1;
                }
                h
            }
        };
        self.table[&(state, summary)]
    }
}

/// States of finitely many cells; every other cell is quiescent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    grid: Grid,
    cells: BTreeMap<Address, u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellState {
    pub address: Address,
    pub state: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationFile {
    pub grid: Grid,
    pub cells: Vec<CellState>,
}

impl Configuration {
    pub fn empty(grid: Grid) -> Configuration {
        Configuration { grid, cells: BTreeMap::new() }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn set(&mut self, a: Address, state: u8) -> Result<()> {
        if a.grid != self.grid {
            return Err(Error::GridMismatch { left: self.grid.tag(), right: a.grid.tag() });
        }
        if state == 0 {
            self.cells.remove(&a);
        } else {
            self.cells.insert(a, state);
        }
        Ok(())
    }

    pub fn get(&self, a: &Address) -> u8 {
        self.cells.get(a).copied().unwrap_or(0)
    }

    /// Number of non-quiescent cells.
    pub fn support(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Address, u8)> {
        self.cells.iter().map(|(a, &s)| (a, s))
    }

    pub fn from_file(file: ConfigurationFile) -> Result<Configuration> {
        let mut c = Configuration::empty(file.grid);
        for cell in file.cells {
            if c.cells.contains_key(&cell.address) {
                return Err(Error::InvalidConfiguration(format!("{} listed twice", cell.address)));
            }
            c.set(cell.address, cell.state)?;
        }
        Ok(c)
    }

    pub fn to_file(&self) -> ConfigurationFile {
        ConfigurationFile {
            grid: self.grid,
            cells: self.cells.iter().map(|(a, &state)| CellState { address: a.clone(), state }).collect(),
        }
    }
}

fn check(rule: &Rule, c: &Configuration) -> Result<()> {
    if rule.arity != c.grid.p() {
        return Err(Error::InvalidRule(format!(
            "rule expects {} neighbors but {} tiles have {}",
            rule.arity,
            c.grid.name(),
            c.grid.p()
        )));
    }
    if let Some((_, s)) = c.cells().find(|&(_, s)| s >= rule.states) {
        return Err(Error::StateOutOfRange { state: s as u32, states: rule.states as u32 });
    }
    Ok(())
}

/// One synchronous update. Only cells in the support or next to it can change.
pub fn step(rule: &Rule, c: &Configuration) -> Result<Configuration> {
    check(rule, c)?;
    let mut candidates: BTreeSet<Address> = BTreeSet::new();
    for a in c.cells.keys() {
        candidates.insert(a.clone());
        candidates.extend(neighbors(a));
    }
    let candidates: Vec<Address> = candidates.into_iter().collect();
    let next: Vec<(Address, u8)> = candidates
        .into_par_iter()
        .filter_map(|a| {
            let around: Vec<u8> = neighbors(&a).iter().map(|n| c.get(n)).collect();
            let s = rule.next(c.get(&a), &around);
            (s != 0).then_some((a, s))
        })
        .collect();
    Ok(Configuration { grid: c.grid, cells: next.into_iter().collect() })
}

/// `steps` updates, with the support size before the first and after each one.
pub fn run(rule: &Rule, c: &Configuration, steps: usize) -> Result<(Configuration, Vec<usize>)> {
    check(rule, c)?;
    let mut cur = c.clone();
    let mut supports = vec![cur.support()];
    for _ in 0..steps {
        cur = step(rule, &cur)?;
        supports.push(cur.support());
    }
    Ok((cur, supports))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn domain_sizes() {
        assert_eq!(summaries(Mode::Ordered, 2, 5).len(), 32);
        assert_eq!(summaries(Mode::Ordered, 3, 7).len(), 2187);
        for (k, p) in [(2u8, 5u8), (3, 7), (4, 5)] {
            assert_eq!(summaries(Mode::Totalistic, k, p).len(), binom(p as usize + k as usize - 1, k as usize - 1));
        }
    }

    #[test]
    fn flood_from_center() {
        let rule = Rule::flood(5);
        let mut c = Configuration::empty(Grid::Pentagrid);
        assert_eq!(step(&rule, &c).unwrap().support(), 0);
        c.set(Address::center(Grid::Pentagrid), 1).unwrap();
        let (_, supports) = run(&rule, &c, 2).unwrap();
        assert_eq!(supports, vec![1, 6, 21]);
        assert_eq!(run(&rule, &c, 0).unwrap().0, c);
    }

    #[test]
    fn rejects_bad_rules() {
        let mut file = Rule::flood(5).to_file();
        file.entries.pop();
        assert!(matches!(Rule::from_file(file), Err(Error::InvalidRule(_))));
        let bad = Rule::from_fn(2, Mode::Totalistic, 5, |_, _| 1);
        assert!(bad.is_err());
        let rule = Rule::flood(7);
        let mut c = Configuration::empty(Grid::Pentagrid);
        c.set(Address::center(Grid::Pentagrid), 1).unwrap();
        assert!(step(&rule, &c).is_err());
        let rule = Rule::flood(5);
        let mut c = Configuration::empty(Grid::Pentagrid);
        c.set(Address::center(Grid::Pentagrid), 3).unwrap();
        assert!(matches!(step(&rule, &c), Err(Error::StateOutOfRange { .. })));
    }

    #[test]
    fn files_round_trip() {
        let rule = Rule::from_fn(3, Mode::Ordered, 5, |s, n| (s + n[0] + 2 * n[3]) % 3).unwrap();
        let json = serde_json::to_string(&rule.to_file()).unwrap();
        let back = Rule::from_file(serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, rule);

        let text = r#"{"grid":"H7","cells":[{"address":"H7:C","state":1},{"address":"H7:3:101","state":2}]}"#;
        let c = Configuration::from_file(serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(c.support(), 2);
        assert_eq!(serde_json::to_string(&c.to_file()).unwrap(), text);
        let mixed = r#"{"grid":"H7","cells":[{"address":"P5:C","state":1}]}"#;
        assert!(Configuration::from_file(serde_json::from_str(mixed).unwrap()).is_err());
    }
}

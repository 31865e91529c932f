use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::poset::{CharacteristicPoset, IntervalPartition, ABSENT};
use crate::bits::VarSet;
use crate::decomp::ModuleKind;
use crate::error::Result;
use crate::monomial::MonomialIdeal;

/// Default number of backtracking nodes per decision.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// Failed covered-sets remembered per decision.
const MEMO_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum Decision {
    Yes { witness: IntervalPartition },
    No,
    BudgetExceeded,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes { .. })
    }
}

/// Is there an interval partition of the characteristic poset whose tops
/// all have `ρ ≥ k`? Returns the answer and the number of nodes used.
pub fn sdepth_decision(
    ideal: &MonomialIdeal,
    kind: ModuleKind,
    k: usize,
    budget: u64,
) -> Result<(Decision, u64)> {
    let poset = CharacteristicPoset::new(ideal, kind)?;
    Ok(decide(&poset, k, budget))
}

struct Frame {
    elem: usize,
    cands: Vec<VarSet>,
    next: usize,
    /// cells covered by the candidate currently applied
    cells: Vec<u32>,
}

struct Search<'a> {
    poset: &'a CharacteristicPoset,
    covered: Vec<u64>,
    memo: HashSet<Vec<u64>>,
}

impl Search<'_> {
    fn is_covered(&self, i: usize) -> bool {
        self.covered[i / 64] >> (i % 64) & 1 == 1
    }

    fn flip(&mut self, i: usize) {
        self.covered[i / 64] ^= 1 << (i % 64);
    }

    fn lowest_uncovered(&self, from: usize) -> Option<usize> {
        (from..self.poset.len()).find(|&i| !self.is_covered(i))
    }

    /// Interval tops worth trying from `a`: WLOG every top `b` has
    /// `b_j ∈ {a_j, g_j}`, so a top is a set `Z` of coordinates raised to the
    /// bound. Ordered by size (largest first), then by bits.
    fn candidates(&self, a: &[u16], k: usize) -> Vec<VarSet> {
        let g = &self.poset.bound;
        let fixed = a.iter().zip(g).filter(|(x, y)| x == y).count();
        let free: VarSet = (0..a.len()).filter(|&j| a[j] < g[j]).collect();
        let need = k.saturating_sub(fixed);
        let mut out: Vec<VarSet> = free.subsets().filter(|z| z.len() >= need).collect();
        out.sort_by(|x, y| y.len().cmp(&x.len()).then(x.bits().cmp(&y.bits())));
        out
    }

    /// Element indices of `[a, a + Σ_{j∈Z} (g_j - a_j) e_j]`, or `None` if
    /// the interval leaves the poset or meets a covered element.
    fn interval_cells(&self, a: &[u16], z: VarSet, out: &mut Vec<u32>) -> bool {
        out.clear();
        let p = self.poset;
        let dirs: Vec<usize> = z.iter().collect();
        let mut cur = a.to_vec();
        if p.kind == ModuleKind::Quotient {
            let mut top = a.to_vec();
            for &j in &dirs {
                top[j] = p.bound[j];
            }
            if p.index[p.code(&top)] == ABSENT {
                return false;
            }
        }
        loop {
            let idx = p.index[p.code(&cur)];
            if idx == ABSENT || self.is_covered(idx as usize) {
                return false;
            }
            out.push(idx);
            // odometer over the raised coordinates
            let mut pos = 0;
            loop {
                if pos == dirs.len() {
                    return true;
                }
                let j = dirs[pos];
                if cur[j] < p.bound[j] {
                    cur[j] += 1;
                    break;
                }
                cur[j] = a[j];
                pos += 1;
            }
        }
    }
}

pub(crate) fn decide(poset: &CharacteristicPoset, k: usize, budget: u64) -> (Decision, u64) {
    let mut s = Search {
        poset,
        covered: vec![0; poset.len().div_ceil(64)],
        memo: HashSet::new(),
    };
    let mut stack: Vec<Frame> = Vec::new();
    let mut nodes = 0u64;
    let mut cursor = Some(0usize);

    loop {
        // descend into a new node at the lowest uncovered element
        if let Some(from) = cursor.take() {
            match s.lowest_uncovered(from) {
                None => return (Decision::Yes { witness: witness(poset, &stack) }, nodes),
                Some(elem) => {
                    nodes += 1;
                    if nodes > budget {
                        return (Decision::BudgetExceeded, nodes);
                    }
                    if !s.memo.contains(&s.covered) {
                        let cands = s.candidates(&poset.elements[elem], k);
                        stack.push(Frame {
                            elem,
                            cands,
                            next: 0,
                            cells: Vec::new(),
                        });
                    }
                }
            }
        }

        let Some(top) = stack.last_mut() else {
            return (Decision::No, nodes);
        };
        let mut cells = std::mem::take(&mut top.cells);
        let (elem, start) = (top.elem, top.next);
        for &c in &cells {
            s.flip(c as usize);
        }
        let a = &poset.elements[elem];
        let mut chosen = None;
        let n_cands = stack.last().map_or(0, |f| f.cands.len());
        for i in start..n_cands {
            let z = stack.last().expect("frame present").cands[i];
            if s.interval_cells(a, z, &mut cells) {
                chosen = Some(i);
                break;
            }
        }
        match chosen {
            Some(i) => {
                for &c in &cells {
                    s.flip(c as usize);
                }
                let top = stack.last_mut().expect("frame present");
                top.next = i + 1;
                top.cells = cells;
                cursor = Some(elem + 1);
            }
            None => {
                if s.memo.len() < MEMO_CAP {
                    s.memo.insert(s.covered.clone());
                }
                stack.pop();
            }
        }
    }
}

fn witness(poset: &CharacteristicPoset, stack: &[Frame]) -> IntervalPartition {
    let intervals = stack
        .iter()
        .map(|f| {
            let a = poset.elements[f.elem].clone();
            let z = f.cands[f.next - 1];
            let mut b = a.clone();
            for j in z {
                b[j] = poset.bound[j];
            }
            (a, b)
        })
        .collect();
    IntervalPartition {
        kind: poset.kind,
        bound: poset.bound.clone(),
        intervals,
    }
}

/// Result of an exact Stanley depth computation: `lower ≤ sdepth ≤ upper`,
/// with equality unless a decision ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdepthOutcome {
    pub kind: ModuleKind,
    pub lower: usize,
    pub upper: usize,
    /// Partition certifying `lower`, when the search found one.
    pub witness: Option<IntervalPartition>,
    pub nodes: u64,
    pub budget_exceeded: bool,
}

impl SdepthOutcome {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// Scans `k` upward from `lower_hint + 1` (the hint must already be
/// certified, e.g. by a verified decomposition) until a decision says no or
/// runs out of budget. `budget` applies to each decision separately.
pub fn sdepth_exact(
    ideal: &MonomialIdeal,
    kind: ModuleKind,
    budget: u64,
    lower_hint: Option<usize>,
) -> Result<SdepthOutcome> {
    let poset = CharacteristicPoset::new(ideal, kind)?;
    let n = ideal.n();
    let upper = match kind {
        ModuleKind::Ideal if ideal.is_principal() => n,
        _ => n - 1,
    };
    let mut out = SdepthOutcome {
        kind,
        lower: lower_hint.unwrap_or(0).min(upper),
        upper,
        witness: None,
        nodes: 0,
        budget_exceeded: false,
    };
    while out.lower < out.upper {
        let k = out.lower + 1;
        let (d, used) = decide(&poset, k, budget);
        out.nodes += used;
        match d {
            Decision::Yes { witness } => {
                out.lower = k;
                out.witness = Some(witness);
            }
            Decision::No => out.upper = k - 1,
            Decision::BudgetExceeded => {
                out.budget_exceeded = true;
                break;
            }
        }
    }
    Ok(out)
}

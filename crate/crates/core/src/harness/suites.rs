use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::json;

use super::cache::ResultCache;
use super::enumerate::{enumerate_up_to, GraphFilter, ENUMERATE_MAX_N};
use super::report::{InstanceRecord, Scope, Status, VerificationReport};
use crate::bits::VarSet;
use crate::decomp::{construct_cover, construct_cover_power, verify_decomposition, ModuleKind};
use crate::error::{Error, Result};
use crate::graph::{min_maximal_matching, ordered_matching_number, Graph};
use crate::graph_ideals::{
    bipartite_colon_check, cover_ideal, cover_ideal_via_dual, edge_ideal, neighborhood_identity,
    symbolic_power_cover, vertex_colon_identity,
};
use crate::homology::{
    betti_table_cross_checked, hochster_betti_edge_quotient, hochster_reg_edge_ideal, BettiConfig,
    Field, HomologicalInvariants,
};
use crate::monomial::MonomialIdeal;
use crate::sdepth::{sdepth_exact, SdepthOutcome, DEFAULT_BUDGET};

/// The verification suites. Identifiers are the strings accepted by
/// `verify --suite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// `ν_o(G \ N[x]) ≤ ν_o(G) - 1` for non-isolated `x`.
    MatchingDrop,
    /// `J(G) + (x) = u·J(G \ N[x]) + (x)`.
    NeighborhoodSum,
    /// `(J(G) : x) = J(G \ x)`.
    VertexColon,
    /// Stanley depth and depth lower bounds for `J(G)` and `S/J(G)`.
    CoverBounds,
    /// `reg(S/I(G)) ≤ ν_o(G)`, with Hochster, field and duality cross-checks.
    Regularity,
    /// Fixed values for `C4` and `P4`.
    Golden,
    /// `J^k = J^(k)` and `(J^k : u) = J^{k-1}` for bipartite `G`.
    PowerColon,
    /// Stanley depth lower bounds for bipartite powers, by construction.
    PowerBounds,
    /// `sdepth ≥ depth` for bipartite powers.
    StanleyInequality,
    /// `depth(S/J^k) = n - 1 - ν_o(G)` at the largest power tried.
    LimitDepth,
    /// `min_k depth(S/J^k) ≤ n - ℓ` with `ℓ = ν_o + 1`.
    Burch,
    /// `sdepth(S/J^k) ≥ n - ℓ` with `ℓ = ν_o + 1`.
    AnalyticSpread,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::MatchingDrop,
        Suite::NeighborhoodSum,
        Suite::VertexColon,
        Suite::CoverBounds,
        Suite::Regularity,
        Suite::Golden,
        Suite::PowerColon,
        Suite::PowerBounds,
        Suite::StanleyInequality,
        Suite::LimitDepth,
        Suite::Burch,
        Suite::AnalyticSpread,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::MatchingDrop => "lemma2.1",
            Suite::NeighborhoodSum => "lemma2.2",
            Suite::VertexColon => "lemma2.3",
            Suite::CoverBounds => "thm2.4",
            Suite::Regularity => "cor2.5",
            Suite::Golden => "examples2.7",
            Suite::PowerColon => "lemma3.2",
            Suite::PowerBounds => "thm3.3",
            Suite::StanleyInequality => "cor3.4",
            Suite::LimitDepth => "limit-depth",
            Suite::Burch => "burch",
            Suite::AnalyticSpread => "conj3.5",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::MatchingDrop => "ordered matching number drops when a closed neighborhood is removed",
            Suite::NeighborhoodSum => "J(G) + (x) = u J(G \\ N[x]) + (x)",
            Suite::VertexColon => "(J(G) : x) = J(G \\ x)",
            Suite::CoverBounds => "sdepth(J) ≥ n - ν_o, sdepth(S/J) ≥ n - ν_o - 1, depth(S/J) ≥ n - ν_o - 1",
            Suite::Regularity => "reg(S/I(G)) ≤ ν_o with Hochster, field and Terai cross-checks",
            Suite::Golden => "fixed invariants of C4 and P4",
            Suite::PowerColon => "J^k = J^(k) and (J^k : u) = J^(k-1) for bipartite G",
            Suite::PowerBounds => "constructed decompositions of J^k and S/J^k meet n - ν_o (- 1)",
            Suite::StanleyInequality => "sdepth ≥ depth for J^k and S/J^k",
            Suite::LimitDepth => "depth(S/J^k) = n - 1 - ν_o at k = k_max",
            Suite::Burch => "min over k ≤ k_max of depth(S/J^k) ≤ n - ν_o - 1",
            Suite::AnalyticSpread => "sdepth(S/J^k) ≥ n - ν_o - 1",
        }
    }

    /// Suites that only make sense for bipartite graphs.
    pub fn bipartite_only(self) -> bool {
        matches!(
            self,
            Suite::PowerColon
                | Suite::PowerBounds
                | Suite::StanleyInequality
                | Suite::LimitDepth
                | Suite::Burch
                | Suite::AnalyticSpread
        )
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.id() == s)
            .ok_or_else(|| {
                let ids: Vec<&str> = Suite::ALL.iter().map(|x| x.id()).collect();
                Error::input(format!("unknown suite `{s}`; expected one of {}", ids.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub n_max: usize,
    pub k_max: u32,
    pub budget: u64,
    pub seed: u64,
    pub bipartite_only: bool,
    pub betti: BettiConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 4,
            k_max: 3,
            budget: DEFAULT_BUDGET,
            seed: 0,
            bipartite_only: false,
            betti: BettiConfig::default(),
        }
    }
}

/// Paths, an even cycle and complete bipartite graphs, each on at most
/// `n_max` vertices.
pub fn curated_family(n_max: usize) -> Vec<(&'static str, Graph)> {
    let all = [
        ("K2", Graph::path(2)),
        ("P3", Graph::path(3)),
        ("P4", Graph::path(4)),
        ("C4", Graph::cycle(4)),
        ("K2,2", Graph::complete_bipartite(2, 2)),
        ("K1,3", Graph::complete_bipartite(1, 3)),
        ("P5", Graph::path(5)),
        ("K2,3", Graph::complete_bipartite(2, 3)),
        ("K1,4", Graph::complete_bipartite(1, 4)),
    ];
    all.into_iter()
        .map(|(name, g)| (name, g.expect("family members are valid")))
        .filter(|(_, g)| g.n() <= n_max)
        .collect()
}

/// The graphs a suite runs on by default.
pub fn default_instances(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Graph>> {
    if cfg.n_max > ENUMERATE_MAX_N {
        return Err(Error::input(format!(
            "n_max must be at most {ENUMERATE_MAX_N}, got {}",
            cfg.n_max
        )));
    }
    Ok(match suite {
        Suite::Golden => vec![Graph::cycle(4)?, Graph::path(4)?],
        Suite::StanleyInequality | Suite::LimitDepth | Suite::Burch => {
            curated_family(cfg.n_max).into_iter().map(|(_, g)| g).collect()
        }
        _ => {
            let mut f = GraphFilter::with_edges();
            f.bipartite = cfg.bipartite_only || suite.bipartite_only();
            enumerate_up_to(cfg.n_max, f)?
        }
    })
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig, cache: &ResultCache) -> Result<VerificationReport> {
    let graphs = default_instances(suite, cfg)?;
    run_suite_on(suite, cfg, cache, &graphs)
}

enum Task {
    Graph,
    Vertex(usize),
    Power(u32),
}

/// Runs `suite` on the given graphs; graphs the suite does not apply to
/// (edgeless, or non-bipartite for the power suites) are skipped.
pub fn run_suite_on(
    suite: Suite,
    cfg: &SuiteConfig,
    cache: &ResultCache,
    graphs: &[Graph],
) -> Result<VerificationReport> {
    if cfg.k_max == 0 {
        return Err(Error::input("k_max must be positive"));
    }
    let mut tasks: Vec<(&Graph, Task)> = Vec::new();
    for g in graphs {
        if g.edge_count() == 0
            || ((cfg.bipartite_only || suite.bipartite_only()) && !g.is_bipartite())
        {
            continue;
        }
        match suite {
            Suite::MatchingDrop => tasks.extend(g.non_isolated().iter().map(|v| (g, Task::Vertex(v)))),
            Suite::NeighborhoodSum | Suite::VertexColon => {
                tasks.extend(g.vertices().iter().map(|v| (g, Task::Vertex(v))))
            }
            Suite::PowerColon | Suite::PowerBounds | Suite::StanleyInequality | Suite::AnalyticSpread => {
                tasks.extend((1..=cfg.k_max).map(|k| (g, Task::Power(k))))
            }
            _ => tasks.push((g, Task::Graph)),
        }
    }
    let records: Vec<InstanceRecord> = tasks
        .par_iter()
        .map(|(g, task)| {
            let mut rec = InstanceRecord::new(g.canonical_string(), g.n());
            match *task {
                Task::Vertex(v) => rec.vertex = Some(v),
                Task::Power(k) => rec.k = Some(k),
                Task::Graph => {}
            }
            let ctx = Ctx { cfg, cache };
            let outcome = match *task {
                Task::Vertex(v) => ctx.vertex_check(suite, g, v, &mut rec),
                Task::Power(k) => ctx.power_check(suite, g, k, &mut rec),
                Task::Graph => ctx.graph_check(suite, g, &mut rec),
            };
            if let Err(e) = outcome {
                let s = match e {
                    Error::Resource { .. } => Status::Indeterminate,
                    _ => Status::Fail,
                };
                rec.mark(s, e.to_string());
            }
            rec
        })
        .collect();
    cache.flush()?;
    let scope = Scope {
        n_max: cfg.n_max,
        k_max: cfg.k_max,
        budget: cfg.budget,
        bipartite_only: cfg.bipartite_only,
    };
    let mut report = VerificationReport::new(suite.id(), cfg.seed, scope, records);
    if suite == Suite::AnalyticSpread {
        report.note = Some(
            "for bipartite cover ideals ℓ = ν_o + 1, so this coincides with the quotient half of thm3.3 and is not independent evidence"
                .into(),
        );
    }
    Ok(report)
}

struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    cache: &'a ResultCache,
}

fn kinds() -> [ModuleKind; 2] {
    [ModuleKind::Ideal, ModuleKind::Quotient]
}

fn hochster_keys(t: &crate::homology::BettiTable) -> BTreeMap<(usize, VarSet), u64> {
    t.entries
        .iter()
        .map(|((i, a), &r)| ((*i, (0..a.len()).filter(|&v| a[v] > 0).collect()), r))
        .collect()
}

impl Ctx<'_> {
    fn nu(&self, g: &Graph) -> Result<usize> {
        self.cache
            .get_or_compute(g, "nu_o", "", || Ok(ordered_matching_number(g)))
    }

    /// Invariants of `J(G)^k` from a Betti table computed over both fields.
    fn power_invariants(&self, g: &Graph, k: u32) -> Result<HomologicalInvariants> {
        self.cache.get_or_compute(g, "invariants:cover-power", &format!("k={k}"), || {
            let t = betti_table_cross_checked(&cover_ideal(g).power(k)?, &self.cfg.betti)?;
            HomologicalInvariants::from_table(&t)
        })
    }

    /// Exact Stanley depth with its witness re-verified twice: as an interval
    /// partition and as a Stanley decomposition.
    fn sdepth(&self, g: &Graph, ideal: &MonomialIdeal, k: u32, kind: ModuleKind) -> Result<SdepthOutcome> {
        let params = format!("k={k};kind={kind};budget={}", self.cfg.budget);
        let out: SdepthOutcome = self.cache.get_or_compute(g, "sdepth:cover-power", &params, || {
            sdepth_exact(ideal, kind, self.cfg.budget, None)
        })?;
        if let Some(w) = &out.witness {
            if let Err(why) = w.verify(ideal)? {
                return Err(Error::Inconsistent(format!("sdepth witness rejected: {why}")));
            }
            if w.min_rho() != Some(out.lower) {
                return Err(Error::Inconsistent("sdepth witness does not reach the reported value".into()));
            }
            if let Err(v) = verify_decomposition(&w.to_decomposition(ideal)?)? {
                return Err(Error::Inconsistent(format!("sdepth witness decomposition rejected: {v:?}")));
            }
        }
        Ok(out)
    }

    fn record_sdepth(rec: &mut InstanceRecord, key: &str, out: &SdepthOutcome) {
        match out.exact() {
            Some(v) => rec.set(key, v),
            None => rec.set(key, json!({ "lower": out.lower, "upper": out.upper })),
        }
    }

    fn vertex_check(&self, suite: Suite, g: &Graph, v: usize, rec: &mut InstanceRecord) -> Result<()> {
        match suite {
            Suite::MatchingDrop => {
                let nu = self.nu(g)?;
                let (h, _) = g.remove_closed_neighborhood(v)?;
                let nu_h = ordered_matching_number(&h);
                rec.set("nu_o", nu);
                rec.set("nu_o_without_closed_neighborhood", nu_h);
                rec.require(nu_h < nu, format!("ν_o drops from {nu} only to {nu_h}"));
            }
            Suite::NeighborhoodSum | Suite::VertexColon => {
                let (l, r) = if suite == Suite::NeighborhoodSum {
                    neighborhood_identity(g, v)?
                } else {
                    vertex_colon_identity(g, v)?
                };
                rec.set("left", l.to_string());
                rec.set("right", r.to_string());
                rec.require(l == r, "the two sides differ");
            }
            _ => unreachable!("not a per-vertex suite"),
        }
        Ok(())
    }

    fn graph_check(&self, suite: Suite, g: &Graph, rec: &mut InstanceRecord) -> Result<()> {
        let n = g.n();
        let nu = self.nu(g)?;
        rec.set("nu_o", nu);
        match suite {
            Suite::CoverBounds => {
                let j = cover_ideal(g);
                let dual = cover_ideal_via_dual(g);
                rec.require(j == dual, "vertex-cover and Alexander-dual routes to J(G) disagree");
                rec.require(j.alexander_dual()? == edge_ideal(g), "Alexander duality is not an involution");
                for kind in kinds() {
                    let bound = if kind == ModuleKind::Ideal { n - nu } else { n - nu - 1 };
                    let d = construct_cover(g, kind)?;
                    if let Err(v) = verify_decomposition(&d)? {
                        rec.mark(Status::Fail, format!("constructed {kind} decomposition rejected: {v:?}"));
                        continue;
                    }
                    let built = d.sdepth().expect("decomposition of a nonzero module");
                    rec.set(&format!("constructed_{kind}"), built);
                    rec.require(built >= bound, format!("constructed {kind} decomposition has min dim {built} < {bound}"));
                    let out = self.sdepth(g, &j, 1, kind)?;
                    Self::record_sdepth(rec, &format!("sdepth_{kind}"), &out);
                    rec.require(out.upper >= built, format!("exact {kind} sdepth below a verified construction"));
                    if out.budget_exceeded {
                        rec.notes.push(format!("exact {kind} sdepth over budget; construction certifies the bound"));
                    }
                }
                let inv = self.power_invariants(g, 1)?;
                rec.set("depth_quotient", inv.depth_quotient);
                rec.require(
                    inv.depth_quotient + nu + 1 >= n,
                    format!("depth(S/J) = {} < n - ν_o - 1", inv.depth_quotient),
                );
            }
            Suite::Regularity => {
                let i = edge_ideal(g);
                let t = betti_table_cross_checked(&i, &self.cfg.betti)?;
                let inv = HomologicalInvariants::from_table(&t)?;
                rec.set("reg_quotient", inv.reg_quotient);
                rec.require(inv.reg_quotient <= nu as i64, format!("reg(S/I) = {} > ν_o", inv.reg_quotient));
                let h = hochster_betti_edge_quotient(g, Field::Rationals)?;
                rec.require(h == hochster_keys(&t.to_quotient()), "Hochster and Koszul Betti tables differ");
                let cover = self.power_invariants(g, 1)?;
                rec.set("pd_quotient_cover", cover.pd_quotient);
                rec.require(
                    inv.reg_ideal == cover.pd_quotient as i64,
                    format!("reg(I(G)) = {} but pd(S/J(G)) = {}", inv.reg_ideal, cover.pd_quotient),
                );
                rec.require(
                    cover.reg_ideal == inv.pd_quotient as i64,
                    format!("reg(J(G)) = {} but pd(S/I(G)) = {}", cover.reg_ideal, inv.pd_quotient),
                );
            }
            Suite::Golden => {
                let want = match g.canonical_string().as_str() {
                    "n=4;edges=0-1,0-3,1-2,2-3" => (1, 2, 1),
                    "n=4;edges=0-1,1-2,2-3" => (2, 1, 1),
                    other => return Err(Error::input(format!("no golden values for {other}"))),
                };
                let mmm = min_maximal_matching(g);
                let reg = HomologicalInvariants::from_table(&betti_table_cross_checked(&edge_ideal(g), &self.cfg.betti)?)?
                    .reg_quotient;
                let reg_h = hochster_reg_edge_ideal(g)? as i64;
                rec.set("min_maximal_matching", mmm);
                rec.set("reg_quotient", reg);
                rec.require((nu, mmm, reg) == want, format!("expected (ν_o, min maximal matching, reg) = {want:?}"));
                rec.require(reg == reg_h, "Hochster regularity differs");
            }
            Suite::LimitDepth | Suite::Burch => {
                let profile = (1..=self.cfg.k_max)
                    .map(|k| Ok(self.power_invariants(g, k)?.depth_quotient))
                    .collect::<Result<Vec<usize>>>()?;
                let target = n - 1 - nu;
                rec.set("depth_profile", &profile);
                rec.set("ell", nu + 1);
                if suite == Suite::LimitDepth {
                    rec.set("limit", target);
                    let last = *profile.last().expect("k_max ≥ 1");
                    if last < target {
                        rec.mark(Status::Fail, format!("depth {last} at k = {} is below the limit {target}", self.cfg.k_max));
                    } else if last > target {
                        rec.mark(Status::Flagged, format!("depth {last} at k = {} has not reached {target}", self.cfg.k_max));
                    }
                } else {
                    let min = *profile.iter().min().expect("k_max ≥ 1");
                    if min > target {
                        rec.mark(Status::Flagged, format!("min depth {min} over k ≤ {} exceeds n - ℓ = {target}", self.cfg.k_max));
                    }
                }
            }
            _ => unreachable!("not a per-graph suite"),
        }
        Ok(())
    }

    fn power_check(&self, suite: Suite, g: &Graph, k: u32, rec: &mut InstanceRecord) -> Result<()> {
        let n = g.n();
        let nu = self.nu(g)?;
        rec.set("nu_o", nu);
        rec.set("ell", nu + 1);
        match suite {
            Suite::PowerColon => {
                let jk = cover_ideal(g).power(k)?;
                rec.require(jk == symbolic_power_cover(g, k)?, "ordinary and symbolic powers differ");
                rec.require(bipartite_colon_check(g, k)?, "(J^k : u) ≠ J^(k-1)");
            }
            Suite::PowerBounds | Suite::AnalyticSpread => {
                let which: &[ModuleKind] = if suite == Suite::PowerBounds {
                    &[ModuleKind::Ideal, ModuleKind::Quotient]
                } else {
                    &[ModuleKind::Quotient]
                };
                for &kind in which {
                    let bound = if kind == ModuleKind::Ideal { n - nu } else { n - nu - 1 };
                    let d = construct_cover_power(g, k, kind)?;
                    if let Err(v) = verify_decomposition(&d)? {
                        rec.mark(Status::Fail, format!("constructed {kind} decomposition rejected: {v:?}"));
                        continue;
                    }
                    let built = d.sdepth().expect("decomposition of a nonzero module");
                    rec.set(&format!("constructed_{kind}"), built);
                    rec.require(built >= bound, format!("constructed {kind} decomposition has min dim {built} < {bound}"));
                    if suite == Suite::PowerBounds {
                        let jk = cover_ideal(g).power(k)?;
                        let out = self.sdepth(g, &jk, k, kind)?;
                        Self::record_sdepth(rec, &format!("sdepth_{kind}"), &out);
                        rec.require(out.upper >= built, format!("exact {kind} sdepth below a verified construction"));
                    }
                }
            }
            Suite::StanleyInequality => {
                let jk = cover_ideal(g).power(k)?;
                let inv = self.power_invariants(g, k)?;
                rec.set("depth_ideal", inv.depth_ideal);
                rec.set("depth_quotient", inv.depth_quotient);
                for kind in kinds() {
                    let depth = if kind == ModuleKind::Ideal { inv.depth_ideal } else { inv.depth_quotient };
                    let d = construct_cover_power(g, k, kind)?;
                    if let Err(v) = verify_decomposition(&d)? {
                        rec.mark(Status::Fail, format!("constructed {kind} decomposition rejected: {v:?}"));
                        continue;
                    }
                    let built = d.sdepth().expect("decomposition of a nonzero module");
                    rec.set(&format!("constructed_{kind}"), built);
                    let out = self.sdepth(g, &jk, k, kind)?;
                    Self::record_sdepth(rec, &format!("sdepth_{kind}"), &out);
                    if kind == ModuleKind::Quotient {
                        rec.require(built + nu + 1 >= n, "constructed quotient bound below n - ν_o - 1");
                    }
                    let lower = out.lower.max(built);
                    if out.upper < depth {
                        rec.mark(Status::Fail, format!("sdepth of {kind} is at most {} < depth {depth}", out.upper));
                    } else if lower < depth {
                        rec.mark(Status::Indeterminate, format!("{kind}: sdepth ≥ {lower} certified, depth {depth}"));
                    }
                }
            }
            _ => unreachable!("not a per-power suite"),
        }
        Ok(())
    }
}

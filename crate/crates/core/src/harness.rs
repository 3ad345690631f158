//! Configuration, the verification pipeline, the claims manifest and the
//! report.

use std::collections::{HashSet, VecDeque};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::amalgam::{self, Amalgam};
use crate::arcs::{self, ArcOrbits, BaseActions, GeneratorPerm};
use crate::check::{all_pass, Check};
use crate::coset::{edge_orbit_size, CosetGraph, CosetSpace, GraphError, Side};
use crate::gf64::{Gf64, DEFAULT_MODULUS, MULT_ORDER};
use crate::grp::reference::ReferenceGroups;
use crate::grp::SplitVerdict;
use crate::psu::{assert_sigma_is_frobenius, check_relations, make_generators, Pgu, PsuError, RelationReport};
use crate::structure::{self, psu3_order};
use crate::subgroups::{Subgroups, Which};

pub const CACHE_ENV: &str = "AMALGAM_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".amalgam-cache";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupScope {
    H,
    K,
    Both,
}

impl GroupScope {
    pub fn includes(self, which: Which) -> bool {
        matches!((self, which), (GroupScope::Both, _) | (GroupScope::H, Which::H) | (GroupScope::K, Which::K))
    }

    pub fn groups(self) -> Vec<Which> {
        [Which::H, Which::K].into_iter().filter(|&w| self.includes(w)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub modulus: u32,
    pub groups: GroupScope,
    /// Claim id prefixes; empty selects every claim.
    pub claims: Vec<String>,
    /// Explicit cache directory; otherwise the environment, then the default.
    pub cache_dir: Option<PathBuf>,
    pub use_cache: bool,
    /// Random vertices on which local characteristic is re-checked.
    pub samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { modulus: DEFAULT_MODULUS, groups: GroupScope::Both, claims: Vec::new(), cache_dir: None, use_cache: true, samples: 100 }
    }
}

impl Config {
    pub fn resolved_cache_dir(&self) -> PathBuf {
        self.cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
    }

    pub fn selects(&self, id: &str) -> bool {
        self.claims.is_empty()
            || self
                .claims
                .iter()
                .any(|c| id == c || id.strip_prefix(c.as_str()).is_some_and(|rest| rest.starts_with('.') || c.ends_with('.')))
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Cache(GraphError),
    #[error("I/O error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Cache(GraphError::CacheMismatch(_) | GraphError::Malformed(_)) => 3,
            _ => 1,
        }
    }
}

impl From<PsuError> for HarnessError {
    fn from(e: PsuError) -> Self {
        match e {
            PsuError::Field(f) => HarnessError::Config(f.to_string()),
            other => HarnessError::SelfCheck(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphSource {
    Built,
    Cache,
}

/// Everything the claims are evaluated against. The graph is loaded on
/// demand; derived data is computed at most once.
pub struct Context {
    pub config: Config,
    pub pgu: Pgu,
    pub relations: RelationReport,
    pub sg: Subgroups,
    pub space: CosetSpace,
    graph: Option<(CosetGraph, GraphSource, u64)>,
    refs: OnceLock<ReferenceGroups>,
    base: OnceLock<BaseActions>,
    tables: OnceLock<Vec<ArcOrbits>>,
    perms: OnceLock<Vec<GeneratorPerm>>,
}

impl Context {
    pub fn new(config: Config) -> Result<Self, HarnessError> {
        let pgu = Pgu::new(config.modulus)?;
        let gens = make_generators(&pgu)?;
        assert_sigma_is_frobenius(&pgu, &gens)?;
        let relations = check_relations(&pgu, &gens);
        let sg = Subgroups::build(&pgu)?;
        let space = CosetSpace::new(&sg);
        Ok(Context {
            config,
            pgu,
            relations,
            sg,
            space,
            graph: None,
            refs: OnceLock::new(),
            base: OnceLock::new(),
            tables: OnceLock::new(),
            perms: OnceLock::new(),
        })
    }

    pub fn cache_path(&self) -> PathBuf {
        let hash: String = self.space.group_hash().iter().map(|b| format!("{b:02x}")).collect();
        self.config.resolved_cache_dir().join(format!("graph-m{}-{hash}.bin", self.config.modulus))
    }

    /// Loads the graph from the cache, or builds (and caches) it.
    pub fn ensure_graph(&mut self) -> Result<GraphSource, HarnessError> {
        if let Some((_, src, _)) = &self.graph {
            return Ok(*src);
        }
        let t = Instant::now();
        let path = self.cache_path();
        let (graph, src) = if self.config.use_cache && path.exists() {
            let g = CosetGraph::load(&path, self.config.modulus, self.space.group_hash()).map_err(HarnessError::Cache)?;
            log::info!("loaded graph from {}", path.display());
            (g, GraphSource::Cache)
        } else {
            let g = self.space.build_graph().map_err(HarnessError::Cache)?;
            log::info!("built graph with {} vertices", g.num_vertices());
            if self.config.use_cache {
                g.save(&path).map_err(HarnessError::Cache)?;
            }
            (g, GraphSource::Built)
        };
        self.graph = Some((graph, src, t.elapsed().as_millis() as u64));
        Ok(src)
    }

    pub fn graph(&self) -> &CosetGraph {
        &self.graph.as_ref().expect("graph loaded before use").0
    }

    pub fn refs(&self) -> &ReferenceGroups {
        self.refs.get_or_init(ReferenceGroups::build)
    }

    pub fn base(&self) -> &BaseActions {
        self.base.get_or_init(|| BaseActions::new(&self.space, &self.sg, self.graph(), 8))
    }

    pub fn orbit_tables(&self) -> &[ArcOrbits] {
        self.tables.get_or_init(|| self.base().orbit_tables(self.graph(), 8))
    }

    /// Vertex permutations of the generators of K, in generator order.
    pub fn generator_perms(&self) -> &[GeneratorPerm] {
        self.perms.get_or_init(|| arcs::generator_automorphisms(&self.space, &self.sg, self.graph()))
    }

    fn perms_of(&self, which: Which) -> Vec<Vec<u32>> {
        let names: HashSet<&str> = self.sg.el.h_generators().into_iter().map(|(n, _)| n).collect();
        self.generator_perms().iter().filter(|(n, _)| which == Which::K || names.contains(n)).filter_map(|(_, p)| p.clone()).collect()
    }

    pub fn amalgam(&self, which: Which) -> Amalgam<Pgu> {
        let (g1, g2, _) = self.sg.amalgam_of(which);
        Amalgam::new(g1.clone(), g2.clone())
    }

    pub fn arc_row(&self, side: Side, s: usize, which: Which) -> ArcOrbits {
        let la = self.base().at(side);
        la.arc_orbits(which, s, self.graph())
    }
}

fn vertex_orbit(graph: &CosetGraph, perms: &[Vec<u32>], start: u32) -> usize {
    let mut seen = vec![false; graph.num_vertices()];
    seen[start as usize] = true;
    let mut queue = VecDeque::from([start]);
    let mut n = 1;
    while let Some(v) = queue.pop_front() {
        for p in perms {
            let w = p[v as usize];
            if !std::mem::replace(&mut seen[w as usize], true) {
                n += 1;
                queue.push_back(w);
            }
        }
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Computed and reported without an expected value.
    Reported,
}

pub struct ClaimDef {
    pub id: &'static str,
    pub statement: &'static str,
    pub group: Option<Which>,
    pub needs_graph: bool,
    pub informational: bool,
    eval: fn(&Context) -> Vec<Check>,
}

macro_rules! claim {
    ($id:expr, $stmt:expr, $group:expr, $graph:expr, $eval:expr) => {
        ClaimDef { id: $id, statement: $stmt, group: $group, needs_graph: $graph, informational: false, eval: $eval }
    };
}

macro_rules! reported {
    ($id:expr, $stmt:expr, $group:expr, $eval:expr) => {
        ClaimDef { id: $id, statement: $stmt, group: $group, needs_graph: true, informational: true, eval: $eval }
    };
}

fn relation_checks(ctx: &Context, pred: fn(&str) -> bool) -> Vec<Check> {
    let r = &ctx.relations;
    r.checks.iter().filter(|c| pred(c.group)).map(|c| Check::new(c.relation.clone(), r.verdict(c), json!({ "holds": c.holds }))).collect()
}

fn six_arcs(ctx: &Context, side: Side, which: Which) -> Vec<Check> {
    let row = ctx.arc_row(side, 6, which);
    vec![Check::new(format!("{}_x{} is transitive on 6-arcs", which.name(), side.number()), row.transitive(), json!(row))]
}

fn local_s(ctx: &Context, which: Which) -> Vec<Check> {
    let tables = ctx.orbit_tables();
    let rows: Vec<&ArcOrbits> = tables.iter().filter(|r| r.group == which).collect();
    let upto5 = rows.iter().filter(|r| r.s <= 5).all(|r| r.transitive());
    vec![
        Check::eq(format!("max local s for {}", which.name()), arcs::max_local_s(tables, which), 5),
        Check::new("transitive on s-arcs at both base vertices for s <= 5", upto5, json!(null)),
    ]
}

fn nonsplit(ctx: &Context) -> Vec<Check> {
    let cases: Vec<_> = ctx.config.groups.groups().into_iter().flat_map(|w| arcs::split_cases(ctx.base(), w)).collect();
    let mut out: Vec<Check> = cases
        .iter()
        .map(|c| {
            Check::new(
                format!("{}_x{} over O_3({}_x{}^[1]) decided", c.group.name(), c.vertex, c.group.name(), c.vertex),
                c.verdict != SplitVerdict::Inconclusive,
                json!(c),
            )
        })
        .collect();
    let non: Vec<String> =
        cases.iter().filter(|c| c.verdict == SplitVerdict::NonSplit).map(|c| format!("{}_x{}", c.group.name(), c.vertex)).collect();
    out.push(Check::new("at least one extension is non-split", !non.is_empty(), json!({ "non_split": non })));
    out
}

fn group_orders(ctx: &Context) -> Vec<Check> {
    let g = ctx.graph();
    let psu = psu3_order(8);
    ctx.config
        .groups
        .groups()
        .into_iter()
        .flat_map(|w| {
            let orbit = vertex_orbit(g, &ctx.perms_of(w), 0);
            let stab = ctx.space.vertex_stabilizer(&ctx.sg, &g.vertex(0), w).order() as u64;
            let order = stab * orbit as u64;
            let (factor, name) = match w {
                Which::H => (2, "|H| = 2 |PSU(3,8)|"),
                Which::K => (6, "|K| = 6 |PSU(3,8)|"),
            };
            [
                Check::eq(format!("{} is transitive on the valency-4 vertices", w.name()), orbit, g.side_count(Side::One)),
                Check::new(name, order == factor * psu, json!({ "order": order, "stabilizer": stab, "orbit": orbit })),
            ]
        })
        .collect()
}

fn scale(ctx: &Context) -> Vec<Check> {
    let s = ctx.graph().summary();
    vec![
        Check::eq("|Delta_1| = 2^6 3 7 19", s.side1, 64 * 3 * 7 * 19),
        Check::eq("|Delta_2| = 2^8 7 19", s.side2, 256 * 7 * 19),
        Check::eq("edges", s.edges, 102_144),
        Check::new("bipartite", s.bipartite, json!(null)),
        Check::new("connected", s.connected, json!(null)),
        Check::new("simple", s.simple, json!(null)),
        Check::eq("|Delta_1| |K1| = 2^10 3^5 7 19", s.side1 * ctx.sg.k1.order(), 1024 * 243 * 7 * 19),
    ]
}

fn valencies(ctx: &Context) -> Vec<Check> {
    let s = ctx.graph().summary();
    vec![
        Check::eq("valencies on Delta_1", s.side1_degrees.clone(), vec![4]),
        Check::eq("valencies on Delta_2", s.side2_degrees.clone(), vec![3]),
    ]
}

fn edge_transitive(ctx: &Context, which: Which) -> Vec<Check> {
    let g = ctx.graph();
    vec![Check::eq(format!("{} has one orbit on edges", which.name()), edge_orbit_size(g, &ctx.perms_of(which)), g.num_edges())]
}

fn automorphisms(ctx: &Context) -> Vec<Check> {
    ctx.generator_perms().iter().map(|(n, p)| Check::new(format!("{n} induces a graph automorphism"), p.is_some(), json!(null))).collect()
}

fn faithful(ctx: &Context) -> Vec<Check> {
    let k5 = ctx.base().x1.kernel(Which::K, 5);
    let moving = ctx
        .generator_perms()
        .iter()
        .filter(|(_, p)| p.as_ref().is_some_and(|p| p.iter().enumerate().any(|(i, &j)| i != j as usize)))
        .count();
    vec![
        Check::new("K_x1^[5] = 1, so only the identity fixes every vertex", k5.is_trivial(), json!({ "order": k5.order() })),
        Check::eq("every generator moves some vertex", moving, ctx.generator_perms().len()),
    ]
}

fn aut_not_reproduced(ctx: &Context) -> Vec<Check> {
    let _ = ctx;
    vec![Check::new("Aut(Delta) = K is not recomputed; only K <= Aut(Delta) and faithfulness are checked", true, json!(null))]
}

fn six_arcs_reported(ctx: &Context, which: Which) -> Vec<Check> {
    let row = ctx.arc_row(Side::One, 6, which);
    vec![Check::new(format!("6-arc orbits of {}_x1 at the valency-4 vertex", which.name()), row.transitive(), json!(row))]
}

fn arc_counts(ctx: &Context) -> Vec<Check> {
    ctx.orbit_tables()
        .iter()
        .filter(|r| ctx.config.groups.includes(r.group))
        .map(|r| {
            let (d0, d1) = if r.side == 1 { (4, 3) } else { (3, 4) };
            let ok = r.arcs == arcs::arc_count_formula(d0, d1, r.s) && r.orbit_stabilizer && r.sizes.iter().sum::<usize>() == r.arcs;
            Check::new(format!("{} s={} at x{}", r.group.name(), r.s, r.side), ok, json!({ "arcs": r.arcs, "orbits": r.orbits }))
        })
        .collect()
}

fn kernels(ctx: &Context, which: Which) -> Vec<Check> {
    let b = ctx.base();
    let mut out = arcs::kernel_checks(b, which);
    out.extend(arcs::kernel_identities(&ctx.sg, b, which));
    for la in [&b.x1, &b.x2] {
        out.push(Check::new(
            format!("{}_x{}^[1] agrees with a canonical-form recount", which.name(), la.z + 1),
            arcs::kernel_one_by_canon(&ctx.space, ctx.graph(), la, which),
            json!(null),
        ));
    }
    out
}

fn local_char(ctx: &Context, which: Which) -> Vec<Check> {
    let lc = arcs::local_characteristic(&ctx.space, &ctx.sg, ctx.graph(), ctx.base(), which, ctx.config.samples);
    vec![Check::new(format!("C_{{{0}_y}}(O_3({0}_z^[1])) <= O_3({0}_z^[1])", which.name()), lc.holds(), json!(lc))]
}

fn pushing_up(ctx: &Context, which: Which) -> Vec<Check> {
    let mut out = local_char(ctx, which);
    out.push(Check::new(
        format!("O_3({0}_x1^[1]) <= O_3({0}_x2^[1])", which.name()),
        arcs::pushing_up_containment(ctx.base(), which),
        json!(null),
    ));
    out
}

fn shape_named(ctx: &Context, which: Which, f: fn(&Amalgam<Pgu>, &ReferenceGroups) -> amalgam::ShapeReport) -> Vec<Check> {
    let r = f(&ctx.amalgam(which), ctx.refs());
    r.items
}

pub fn manifest() -> Vec<ClaimDef> {
    use Which::{H, K};
    vec![
        claim!("reference.self-checks", "The reference groups have their defining properties", None, false, |c| c
            .refs()
            .self_checks
            .iter()
            .map(|s| Check::new(s.name.clone(), s.passed, json!(null)))
            .collect()),
        claim!(
            "relations.commutators",
            "The commutator relations among A, ..., F hold in SU(3,8) under one commutator convention",
            None,
            false,
            |c| {
                let mut v = relation_checks(c, |g| g != "sigma" && g != "power");
                v.push(Check::new(
                    "one convention satisfies every commutator relation",
                    c.relations.commutator.is_some(),
                    json!(c.relations.commutator),
                ));
                v
            }
        ),
        claim!("relations.sigma", "sigma acts on A, ..., F as stated", None, false, |c| {
            let mut v = relation_checks(c, |g| g == "sigma");
            v.push(Check::new(
                "one conjugation convention satisfies every sigma relation",
                c.relations.sigma_conjugation.is_some(),
                json!(c.relations.sigma_conjugation),
            ));
            v
        }),
        claim!("relations.powers", "C^3 = Z, D^2 = F and E^3 = B", None, false, |c| relation_checks(c, |g| g == "power")),
        claim!("relations.consequences", "[<C,D>,Q1] = Q1, [<E>,Q2] = Q* and [<E>,<sigma^2,B>] = <B>", None, false, |c| {
            structure::commutator_consequences(&c.sg)
        }),
        claim!("structure.orders", "Orders of Q1, Q2, S, H1, H2, H1 n H2, K1, K2, K1 n K2", None, false, |c| structure::orders(&c.sg)),
        claim!("structure.first-vertex", "Q1, Q*, Q2 and their hatted versions; H1 = AGL(2,3), K1 = C3 x AGL(2,3)", None, false, |c| {
            structure::q_and_first_vertex_groups(&c.sg, c.refs())
        }),
        claim!("structure.second-vertex", "S = Dih(18) x C2, its action on Lambda, and the structure of H2 and K2", None, false, |c| {
            structure::second_vertex_groups(&c.sg, c.refs())
        }),
        claim!("structure.edge", "H1 n H2 = AGL(2,3,S) and K1 n K2 = C3 x AGL(2,3,S) with the stated generators", None, false, |c| {
            structure::edge_groups(&c.sg, c.refs())
        }),
        claim!("structure.group-orders", "H = PSU(3,8) : <sigma^3> and K = PSU(3,8) : <sigma> by order", None, true, group_orders),
        claim!("graph.scale", "Delta has 25,536 + 34,048 vertices and 102,144 edges, and is bipartite and connected", None, true, scale),
        claim!("graph.valencies", "|Delta(x1)| = 4 and |Delta(x2)| = 3", None, true, valencies),
        claim!("graph.edge-transitive.H", "H is transitive on edges", Some(H), true, |c| edge_transitive(c, H)),
        claim!("graph.edge-transitive.K", "K is transitive on edges", Some(K), true, |c| edge_transitive(c, K)),
        claim!("graph.automorphisms", "Every generator of K induces an automorphism of Delta", Some(K), true, automorphisms),
        claim!("graph.faithful", "K acts faithfully on the vertices of Delta", Some(K), true, faithful),
        reported!("graph.full-automorphism-group", "Aut(Delta) = K (out of scope)", Some(K), aut_not_reproduced),
        claim!("arcs.local-s.H", "Delta is locally 5-arc but not 6-arc transitive for H", Some(H), true, |c| local_s(c, H)),
        claim!("arcs.local-s.K", "Delta is locally 5-arc but not 6-arc transitive for K", Some(K), true, |c| local_s(c, K)),
        claim!("arcs.six-arcs-valency3.H", "H_x2 is transitive on 6-arcs from x2", Some(H), true, |c| six_arcs(c, Side::Two, H)),
        claim!("arcs.six-arcs-valency3.K", "K_y is transitive on 6-arcs from every valency-3 vertex y", Some(K), true, |c| six_arcs(
            c,
            Side::Two,
            K
        )),
        reported!("arcs.six-arcs-valency4.H", "6-arc orbits of H_x1 at the valency-4 vertex", Some(H), |c| six_arcs_reported(c, H)),
        reported!("arcs.six-arcs-valency4.K", "6-arc orbits of K_x1 at the valency-4 vertex", Some(K), |c| six_arcs_reported(c, K)),
        claim!("arcs.counts", "s-arc counts match the valency product and orbit-stabilizer holds", None, true, arc_counts),
        claim!("arcs.named-5-arc", "The 5-arc x_-1, ..., x_4 and the chain of its joint stabilizers", Some(K), true, |c| {
            arcs::named_arc_checks(&c.space, &c.sg, c.graph(), c.base())
        }),
        claim!("arcs.five-arc-stabilizer.H", "H_alpha = Z(O_3(H_{y2,y3})) = <B> for a 5-arc alpha", Some(H), true, |c| {
            arcs::arc_stabilizer_checks(&c.space, &c.sg, c.graph(), c.base(), H)
        }),
        claim!("arcs.five-arc-stabilizer.K", "K_alpha = Z(O_3(K_{y2,y3})) = C3 x C3 for a 5-arc alpha", Some(K), true, |c| {
            arcs::arc_stabilizer_checks(&c.space, &c.sg, c.graph(), c.base(), K)
        }),
        claim!("kernels.H", "Kernels of action of H_x1 and H_x2 and the structure of W1, W2", Some(H), true, |c| kernels(c, H)),
        claim!("kernels.K", "Kernels of action of K_x1 and K_x2 and the structure of W^1, W^2", Some(K), true, |c| kernels(c, K)),
        claim!("local.characteristic.H", "Delta has local characteristic 3 for H", Some(H), true, |c| local_char(c, H)),
        claim!("local.characteristic.K", "Delta has local characteristic 3 for K", Some(K), true, |c| local_char(c, K)),
        claim!("local.pushing-up.H", "Delta is of pushing up type for H with respect to (x1, x2)", Some(H), true, |c| pushing_up(c, H)),
        claim!("local.pushing-up.K", "Delta is of pushing up type for K with respect to (x1, x2)", Some(K), true, |c| pushing_up(c, K)),
        claim!("amalgam.invariants.H", "T1, T2 and X of the H-amalgam satisfy their defining properties", Some(H), false, |c| c
            .amalgam(H)
            .invariant_checks()),
        claim!("amalgam.invariants.K", "T1, T2 and X of the K-amalgam satisfy their defining properties", Some(K), false, |c| c
            .amalgam(K)
            .invariant_checks()),
        claim!("amalgam.generators.H", "T1, T2, X, O_3(X) and the related subgroups of the H-amalgam by generators", Some(H), false, |c| {
            amalgam::generator_identities(&c.sg, H)
        }),
        claim!("amalgam.generators.K", "T1, T2, X, O_3(X) and the related subgroups of the K-amalgam by generators", Some(K), false, |c| {
            amalgam::generator_identities(&c.sg, K)
        }),
        claim!("amalgam.agl23s.H", "The H-amalgam has shape AGL(2,3,S)", Some(H), false, |c| shape_named(c, H, amalgam::shape_agl23s)),
        claim!("amalgam.agl23s.K", "The K-amalgam has shape AGL(2,3,S)", Some(K), false, |c| shape_named(c, K, amalgam::shape_agl23s)),
        claim!("amalgam.d2.H", "The H-amalgam has shape D2", Some(H), false, |c| shape_named(c, H, amalgam::shape_d2)),
        claim!("amalgam.e2.K", "The K-amalgam has shape E2", Some(K), false, |c| shape_named(c, K, amalgam::shape_e2)),
        claim!("amalgam.not-e2.H", "The H-amalgam does not have shape E2", Some(H), false, |c| {
            let r = amalgam::shape_e2(&c.amalgam(H), c.refs());
            vec![Check::new(
                "shape E2 fails for the H-amalgam",
                !r.holds,
                json!(r.items.iter().filter(|i| !i.passed).map(|i| &i.name).collect::<Vec<_>>()),
            )]
        }),
        claim!("split.non-split", "Some vertex stabilizer G_z is a non-split extension of O_3(G_z^[1])", None, true, nonsplit),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub statement: String,
    pub group: Option<Which>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Environment {
    pub tool_version: String,
    pub modulus: String,
    pub groups: GroupScope,
    pub claim_filter: Vec<String>,
    pub commutator: String,
    pub sigma_conjugation: String,
    pub cosets: String,
    pub commutator_formula: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub total_ms: u64,
    pub graph_ms: Option<u64>,
    pub graph_source: Option<GraphSource>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub environment: Environment,
    pub claims: Vec<ClaimRecord>,
    pub overall: Verdict,
    pub notes: Vec<String>,
    pub timing: Timing,
}

pub const NOTES: &[&str] = &[
    "Six-arc transitivity at a valency-4 vertex is reported with its orbit data, not asserted: 288 six-arcs start there and 288 divides neither |H_x1| = 432 nor |K_x1| = 1296.",
    "The definition heading says ASL(2,3,S) while its conditions define AGL(2,3,S); the conditions are what is checked.",
    "T2 of the H-amalgam has order 54, matching AGL(2,3,S)^#.",
    "K1 is checked against C3 x AGL(2,3), as the definition of E2 requires; the plain AGL(2,3) would have the wrong order.",
    "Aut(Delta) = K is out of scope; K <= Aut(Delta) and faithfulness are checked instead.",
];

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// The report with every timing field zeroed, for comparing reruns.
    pub fn without_timing(&self) -> VerificationReport {
        let mut r = self.clone();
        r.timing = Timing { total_ms: 0, graph_ms: None, graph_source: None };
        for c in &mut r.claims {
            c.wall_ms = 0;
        }
        r
    }

    pub fn verdicts(&self) -> Vec<(String, Verdict)> {
        self.claims.iter().map(|c| (c.id.clone(), c.verdict)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("modulus {}  groups {:?}\n", self.environment.modulus, self.environment.groups));
        for c in &self.claims {
            let tag = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Reported => "INFO",
            };
            out.push_str(&format!("{tag}  {:<32} {}\n", c.id, c.statement));
            for k in c.checks.iter().filter(|k| c.verdict == Verdict::Fail && !k.passed || c.verdict == Verdict::Reported) {
                out.push_str(&format!("      {} {} {}\n", if k.passed { "ok" } else { "--" }, k.name, k.witness));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        let pass = self.claims.iter().filter(|c| c.verdict == Verdict::Pass).count();
        let fail = self.claims.iter().filter(|c| c.verdict == Verdict::Fail).count();
        out.push_str(&format!("overall: {:?} ({pass} pass, {fail} fail, {} reported)\n", self.overall, self.claims.len() - pass - fail));
        out
    }
}

/// Claims selected by the configuration, in manifest order.
pub fn selected(config: &Config) -> Vec<ClaimDef> {
    manifest().into_iter().filter(|c| config.selects(c.id) && c.group.is_none_or(|w| config.groups.includes(w))).collect()
}

pub fn verify(ctx: &mut Context) -> Result<VerificationReport, HarnessError> {
    let t = Instant::now();
    let claims = selected(&ctx.config);
    if claims.is_empty() {
        return Err(HarnessError::Config(format!("no claim matches {:?}", ctx.config.claims)));
    }
    if claims.iter().any(|c| c.needs_graph) {
        ctx.ensure_graph()?;
    }
    let ctx = &*ctx;
    let mut records = Vec::new();
    for def in claims {
        let start = Instant::now();
        log::info!("claim {}", def.id);
        let checks = (def.eval)(ctx);
        let verdict = if def.informational {
            Verdict::Reported
        } else if !checks.is_empty() && all_pass(&checks) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        records.push(ClaimRecord {
            id: def.id.into(),
            statement: def.statement.into(),
            group: def.group,
            verdict,
            checks,
            wall_ms: start.elapsed().as_millis() as u64,
        });
    }
    let overall = if records.iter().any(|r| r.verdict == Verdict::Fail) { Verdict::Fail } else { Verdict::Pass };
    let conv = |c: Option<String>| c.unwrap_or_else(|| "none".into());
    Ok(VerificationReport {
        schema_version: 1,
        environment: Environment {
            tool_version: env!("CARGO_PKG_VERSION").into(),
            modulus: format!("{:#b}", ctx.config.modulus),
            groups: ctx.config.groups,
            claim_filter: ctx.config.claims.clone(),
            commutator: conv(ctx.relations.commutator.map(|c| format!("{c:?}"))),
            sigma_conjugation: conv(ctx.relations.sigma_conjugation.map(|c| format!("{c:?}"))),
            cosets: "right cosets K_i g; x acts as K_i g -> K_i g x".into(),
            commutator_formula: "[x,y] = x^-1 y^-1 x y; x^g = g^-1 x g".into(),
        },
        claims: records,
        overall,
        notes: NOTES.iter().map(|s| s.to_string()).collect(),
        timing: Timing {
            total_ms: t.elapsed().as_millis() as u64,
            graph_ms: ctx.graph.as_ref().map(|g| g.2),
            graph_source: ctx.graph.as_ref().map(|g| g.1),
        },
    })
}

/// Exit status of a finished verification.
pub fn exit_code(report: &VerificationReport) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    EdgeList,
    Graph6,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "edge-list" => Ok(ExportFormat::EdgeList),
            "graph6" => Ok(ExportFormat::Graph6),
            "json" => Ok(ExportFormat::Json),
            other => Err(format!("unknown format {other:?}; expected edge-list, graph6 or json")),
        }
    }
}

pub fn export(graph: &CosetGraph, format: ExportFormat, out: &Path) -> Result<(), HarnessError> {
    let io_err = |source| HarnessError::Io { path: out.display().to_string(), source };
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io_err)?;
    }
    let mut w = std::io::BufWriter::new(std::fs::File::create(out).map_err(io_err)?);
    match format {
        ExportFormat::EdgeList => graph.write_edge_list(&mut w),
        ExportFormat::Graph6 => graph.write_graph6(&mut w),
        ExportFormat::Json => graph.write_json(&mut w),
    }
    .and_then(|_| w.flush())
    .map_err(io_err)
}

/// "orbits: 1, size 108" or "orbits: 2, sizes 144 144".
pub fn format_orbits(row: &ArcOrbits) -> String {
    let sizes: Vec<String> = row.sizes.iter().map(|s| s.to_string()).collect();
    let word = if row.sizes.len() == 1 { "size" } else { "sizes" };
    format!("orbits: {}, {word} {}", row.orbits, sizes.join(" "))
}

/// One line "k zeta^k" per exponent k of the multiplicative group.
pub fn field_table(modulus: u32) -> Result<String, HarnessError> {
    let f = Gf64::new(modulus).map_err(|e| HarnessError::Config(e.to_string()))?;
    let table = f.antilog_table();
    Ok((0..MULT_ORDER).map(|k| format!("{k:2} {:#08b}\n", table[k])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_are_unique() {
        let m = manifest();
        let ids: HashSet<&str> = m.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), m.len());
    }

    #[test]
    fn filter_semantics() {
        let cfg = Config { claims: vec!["relations".into()], ..Config::default() };
        let sel = selected(&cfg);
        assert!(!sel.is_empty());
        assert!(sel.iter().all(|c| c.id.starts_with("relations.")));
        assert!(sel.iter().all(|c| !c.needs_graph));
        let cfg = Config { claims: vec!["relations.powers".into()], ..Config::default() };
        assert_eq!(selected(&cfg).len(), 1);
        let cfg = Config { groups: GroupScope::H, ..Config::default() };
        assert!(selected(&cfg).iter().all(|c| c.group != Some(Which::K)));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(HarnessError::Config("x".into()).exit_code(), 2);
        assert_eq!(HarnessError::Cache(GraphError::CacheMismatch("x".into())).exit_code(), 3);
        assert_eq!(HarnessError::SelfCheck("x".into()).exit_code(), 1);
    }

    #[test]
    fn reducible_modulus_is_a_configuration_error() {
        let cfg = Config { modulus: 0b100_0001, ..Config::default() };
        let err = Context::new(cfg).err().expect("reducible modulus rejected");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn field_table_has_63_entries() {
        assert_eq!(field_table(DEFAULT_MODULUS).unwrap().lines().count(), 63);
    }
}

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quivercover_core::ar::{certify_weakly_shod, classify_components, knit_projectives_injectives, ConnectingKind, KnitOptions};
use quivercover_core::galois::{check_galois, covering_property, push_down};
use quivercover_core::hochschild::hochschild;
use quivercover_core::presentation::{Presentation, MAX_PATH_LEN_FLAG};
use quivercover_core::repr::{indecompose_with, is_isomorphic, Representation, DEFAULT_DECOMPOSE_BUDGET};
use quivercover_core::shod::{
    build_a_tilde, orbit_graph_recursive, orbit_graph_report, simply_connected_verdict, Method, ShodOptions, ORBIT_KNIT,
};
use quivercover_core::tq::{universal_cover_ball, Multigraph, Verdict};

use crate::format::{parse_covering, parse_graph, parse_module, parse_presentation, parse_quotient, print_module, print_presentation};
use crate::report::{InputDigest, RunReport, Status};
use crate::{dot, CliError};

/// Environment variable overriding the path length bound used to certify
/// finite dimensionality.
pub const MAX_PATHLEN_ENV: &str = "QUIVERCOVER_MAX_PATHLEN";

#[derive(Debug, Parser)]
#[command(name = "quivercover", version, about = "Orbit graphs, Galois coverings and Hochschild cohomology of bound quiver algebras")]
pub struct Cli {
    /// Seed for every randomized step (decompositions, isomorphism tests).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for per-pair checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Knit,
    Recursive,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a presentation and report its path basis.
    Info { file: PathBuf },
    /// Knit the components through the projectives and injectives.
    Ar {
        file: PathBuf,
        /// Maximal number of meshes to complete.
        #[arg(long, default_value_t = 64)]
        steps: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Orbit graph of the connecting component.
    OrbitGraph {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Recursive)]
        method: MethodArg,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Dimensions of the centre and of the first Hochschild cohomology.
    Hh { file: PathBuf },
    /// Tree test of the orbit graph against vanishing of HH¹.
    SimplyConnected { file: PathBuf },
    /// The chain of one-point extensions peeled off by the recursion.
    Peel { file: PathBuf },
    /// Verify the Galois covering conditions of a covering file.
    CoverCheck { fixture: PathBuf },
    /// Push a module over the covering down to the base.
    Pushdown { fixture: PathBuf, module: PathBuf },
    /// Ball in the universal cover of a graph around its first vertex.
    UniversalCover {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Galois covering with a finite abelian quotient of the fundamental group.
    BuildCover {
        file: PathBuf,
        /// `n1xn2:g1;g2;...` residues of the free generators, or `trivial`.
        #[arg(long)]
        quotient: String,
    },
}

struct Inputs {
    digests: Vec<InputDigest>,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        self.digests.push(InputDigest::new(&path.display().to_string(), &bytes));
        String::from_utf8(bytes).map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))
    }

    fn presentation(&mut self, path: &Path) -> Result<Presentation, CliError> {
        let text = self.read(path)?;
        let mut p = parse_presentation(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        apply_path_bound(&mut p)?;
        p.algebra().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Ok(p)
    }
}

fn apply_path_bound(p: &mut Presentation) -> Result<(), CliError> {
    if let Ok(v) = std::env::var(MAX_PATHLEN_ENV) {
        let n: usize = v.trim().parse().map_err(|_| CliError::Input(format!("{MAX_PATHLEN_ENV} must be a positive integer")))?;
        p.set_flag(MAX_PATH_LEN_FLAG, &n.to_string());
    }
    Ok(())
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

fn dims_by_name(p: &Presentation, d: &[usize]) -> Value {
    let q = p.quiver();
    Value::Object(d.iter().enumerate().map(|(v, &n)| (q.vertex_name(v).to_string(), json!(n))).collect())
}

fn graph_json(g: &Multigraph) -> Value {
    json!({
        "vertices": g.vertices,
        "edges": g.edges.iter().map(|(n, u, v)| json!({"name": n, "ends": [g.vertices[*u], g.vertices[*v]]})).collect::<Vec<_>>(),
    })
}

fn verdicts_json(v: &[Verdict]) -> Value {
    v.iter().map(|x| json!({"condition": x.condition, "passed": x.passed, "witness": x.witness})).collect()
}

fn write_dot(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    if let Some(path) = path {
        std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    }
    Ok(())
}

fn shod_options(seed: u64, steps: usize) -> ShodOptions {
    let mut opts = ShodOptions::default();
    opts.knit.seed = seed;
    opts.knit.steps = steps;
    opts
}

/// Runs `f` over `items` on `jobs` scoped threads, keeping the input order.
fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.max(1).min(items.len().max(1));
    let chunk = items.len().div_ceil(jobs).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

pub fn run(cli: &Cli) -> Result<RunReport, CliError> {
    let mut inputs = Inputs { digests: Vec::new() };
    let seed = cli.seed;
    let (name, results, warnings, failed) = match &cli.command {
        Command::Info { file } => {
            let p = inputs.presentation(file)?;
            let alg = p.algebra().map_err(compute)?;
            let q = p.quiver();
            let n = q.num_vertices();
            let cartan: Vec<Vec<usize>> = (0..n).map(|s| (0..n).map(|t| alg.basis_between(s, t).len()).collect()).collect();
            let results = json!({
                "vertices": q.vertices(),
                "arrows": q.arrows().iter().map(|a| json!({"name": a.name, "source": q.vertex_name(a.source), "target": q.vertex_name(a.target)})).collect::<Vec<_>>(),
                "relations": p.relations().len(),
                "flags": p.flags(),
                "dim": alg.dim(),
                "basis": alg.basis().iter().map(|b| q.path_name(b)).collect::<Vec<_>>(),
                "cartan": cartan,
                "nilpotency_index": alg.nilpotency_index(),
            });
            ("info", results, Vec::new(), false)
        }
        Command::Ar { file, steps, dot: dot_out } => {
            let p = inputs.presentation(file)?;
            let alg = p.algebra().map_err(compute)?;
            let opts = KnitOptions { steps: *steps, seed, ..KnitOptions::default() };
            let frag = knit_projectives_injectives(&alg, opts).map_err(compute)?;
            let verified = frag.verify_meshes();
            let mut warnings = Vec::new();
            if frag.exhausted {
                warnings.push(format!("knitting budget of {steps} meshes reached before the components closed"));
            }
            let q = p.quiver();
            let vname = |v: usize| frag.vertices[v].name.clone();
            let kind = classify_components(&frag).ok();
            let certificate = kind.as_ref().and_then(|k| certify_weakly_shod(&frag, k.primary()).ok());
            let results = json!({
                "vertices": frag.vertices.iter().map(|v| json!({
                    "name": v.name,
                    "dims": dims_by_name(&p, v.module.dims()),
                    "projective": v.projective.map(|x| q.vertex_name(x)),
                    "injective": v.injective.map(|x| q.vertex_name(x)),
                    "tau": v.tau.map(vname),
                    "complete": v.is_complete(),
                })).collect::<Vec<_>>(),
                "arrows": frag.arrows.iter().map(|(&(x, y), &m)| json!({"from": vname(x), "to": vname(y), "multiplicity": m})).collect::<Vec<_>>(),
                "meshes": frag.meshes.len(),
                "finished": frag.is_finished(),
                "meshes_verified": verified.is_ok(),
                "components": frag.components().iter().map(|c| c.iter().map(|&v| vname(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "connecting": match &kind {
                    Some(ConnectingKind::Single(c)) => json!({"kind": "single", "component": c.iter().map(|&v| vname(v)).collect::<Vec<_>>()}),
                    Some(ConnectingKind::Concealed { postprojective, preinjective }) => json!({
                        "kind": "concealed",
                        "postprojective": postprojective.iter().map(|&v| vname(v)).collect::<Vec<_>>(),
                        "preinjective": preinjective.iter().map(|&v| vname(v)).collect::<Vec<_>>(),
                    }),
                    None => Value::Null,
                },
                "injective_to_projective_bound": certificate.as_ref().map(|c| json!({
                    "bound": c.bound,
                    "witness": c.witness.iter().map(|&v| vname(v)).collect::<Vec<_>>(),
                })),
            });
            write_dot(dot_out, &dot::fragment(&frag))?;
            ("ar", results, warnings, verified.is_err())
        }
        Command::OrbitGraph { file, method, dot: dot_out } => {
            let p = inputs.presentation(file)?;
            let m = match method {
                MethodArg::Knit => Method::Knit,
                MethodArg::Recursive => Method::Recursive,
                MethodArg::Both => Method::Both,
            };
            let knit = KnitOptions { seed, ..ORBIT_KNIT };
            match orbit_graph_report(&p, m, &shod_options(seed, 200), knit) {
                Ok(r) => {
                    write_dot(dot_out, &dot::multigraph(&r.graph))?;
                    let mut results = graph_json(&r.graph);
                    results["num_vertices"] = json!(r.graph.num_vertices());
                    results["num_edges"] = json!(r.graph.num_edges());
                    results["pi1_rank"] = json!(r.pi1_rank);
                    results["is_tree"] = json!(r.is_tree);
                    results["provenance"] = json!(r.provenance.as_str());
                    ("orbit-graph", results, r.warnings, false)
                }
                Err(quivercover_core::shod::ShodError::Disagreement { knitted, recursive }) => {
                    let results = json!({"disagreement": {"knitted": knitted, "recursive": recursive}});
                    ("orbit-graph", results, Vec::new(), true)
                }
                Err(e) => return Err(compute(e)),
            }
        }
        Command::Hh { file } => {
            let p = inputs.presentation(file)?;
            let r = hochschild(&p.algebra().map_err(compute)?);
            let results = json!({"hh0": r.hh0, "hh1": r.hh1, "derivations": r.derivations, "inner": r.inner});
            ("hh", results, Vec::new(), false)
        }
        Command::SimplyConnected { file } => {
            let p = inputs.presentation(file)?;
            let r = simply_connected_verdict(&p, &shod_options(seed, 200)).map_err(compute)?;
            let results = json!({
                "pi1_rank": r.pi1_rank,
                "is_tree": r.is_tree,
                "hh1": r.hh1,
                "simply_connected": r.simply_connected,
                "consistent": r.consistent,
            });
            ("simply-connected", results, Vec::new(), !r.consistent)
        }
        Command::Peel { file } => {
            let p = inputs.presentation(file)?;
            let r = orbit_graph_recursive(&p, &shod_options(seed, 200)).map_err(compute)?;
            let steps: Vec<Value> = r
                .peels
                .iter()
                .map(|s| {
                    let bq = s.b.quiver();
                    json!({
                        "x0": s.x0_name,
                        "b_vertices": bq.vertices(),
                        "b_components": s.b_components.iter().map(|c| c.iter().map(|&v| bq.vertex_name(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "summands": s.summands.iter().zip(&s.summand_component).map(|((x, d), c)| json!({
                            "dims": dims_by_name(&s.b, x.dims()),
                            "multiplicity": d,
                            "component": c,
                        })).collect::<Vec<_>>(),
                        "separating": s.separating,
                    })
                })
                .collect();
            let mut results = json!({"peels": steps});
            results["orbit_graph"] = graph_json(&r.graph);
            results["edge_arrows"] = json!(r.edge_arrows);
            ("peel", results, Vec::new(), false)
        }
        Command::CoverCheck { fixture } => {
            let text = inputs.read(fixture)?;
            let c = parse_covering(&text).map_err(|e| CliError::Input(format!("{}: {e}", fixture.display())))?;
            let verdicts = check_galois(&c.functor, &c.action);
            let talg = &c.functor.total;
            let mut modules = Vec::new();
            for v in 0..talg.num_vertices() {
                for m in [Representation::simple(talg, v), Representation::projective(talg, v), Representation::injective(talg, v)] {
                    modules.push(m.map_err(compute)?);
                }
            }
            let pairs: Vec<(usize, usize)> = (0..modules.len()).flat_map(|i| (0..modules.len()).map(move |j| (i, j))).collect();
            let identities = parallel_map(&pairs, cli.jobs, |&(i, j)| covering_property(&c.functor, &c.action, &modules[i], &modules[j]));
            let mut failures = Vec::new();
            for (&(i, j), r) in pairs.iter().zip(identities) {
                let (lhs, rhs) = r.map_err(compute)?;
                if lhs != rhs {
                    failures.push(json!({"pair": [i, j], "base": lhs, "sum": rhs}));
                }
            }
            let passed = verdicts.iter().all(|v| v.passed) && failures.is_empty();
            let results = json!({
                "group_order": c.action.order(),
                "verdicts": verdicts_json(&verdicts),
                "covering_property": {"pairs": pairs.len(), "failures": failures},
                "passed": passed,
            });
            ("cover-check", results, Vec::new(), !passed)
        }
        Command::Pushdown { fixture, module } => {
            let text = inputs.read(fixture)?;
            let c = parse_covering(&text).map_err(|e| CliError::Input(format!("{}: {e}", fixture.display())))?;
            let mtext = inputs.read(module)?;
            let m = parse_module(&mtext, &c.functor.total).map_err(|e| CliError::Input(format!("{}: {e}", module.display())))?;
            let down = push_down(&c.functor, &m.module).map_err(compute)?;
            let summands = indecompose_with(&down, seed, DEFAULT_DECOMPOSE_BUDGET).map_err(compute)?;
            let results = json!({
                "dims": dims_by_name(&c.base, down.dims()),
                "module": print_module(&format!("{}_down", m.name), "base", &down),
                "indecomposable": summands.count() == 1,
                "summands": summands.summands.iter().map(|(x, d)| json!({"dims": dims_by_name(&c.base, x.dims()), "multiplicity": d})).collect::<Vec<_>>(),
            });
            ("pushdown", results, Vec::new(), false)
        }
        Command::UniversalCover { graph, radius, dot: dot_out } => {
            let text = inputs.read(graph)?;
            let g = parse_graph(&text).map_err(|e| CliError::Input(format!("{}: {e}", graph.display())))?;
            if g.num_vertices() == 0 {
                return Err(CliError::Input(format!("{}: empty graph", graph.display())));
            }
            let ball = universal_cover_ball(&g, 0, *radius).map_err(|e| CliError::Input(e.to_string()))?;
            write_dot(dot_out, &dot::multigraph(&ball.total))?;
            let is_tree = ball.total.is_tree().map_err(compute)?;
            let mut results = graph_json(&ball.total);
            results["num_vertices"] = json!(ball.total.num_vertices());
            results["num_edges"] = json!(ball.total.num_edges());
            results["is_tree"] = json!(is_tree);
            results["vertex_map"] = json!(ball.vertex_map.iter().map(|&v| &g.vertices[v]).collect::<Vec<_>>());
            results["base_pi1_rank"] = json!(g.pi1_rank().map_err(compute)?);
            ("universal-cover", results, Vec::new(), !is_tree)
        }
        Command::BuildCover { file, quotient } => {
            let p = inputs.presentation(file)?;
            let orbit = orbit_graph_recursive(&p, &shod_options(seed, 200)).map_err(compute)?;
            let generators = orbit.graph.generator_edges();
            let h = parse_quotient(quotient, generators.len()).map_err(|e| CliError::Input(e.to_string()))?;
            let c = build_a_tilde(&p, &orbit, &h).map_err(compute)?;
            let base = &c.functor.base;
            let total = &c.functor.total;
            let mut projectives_ok = true;
            for x in 0..total.num_vertices() {
                let down = push_down(&c.functor, &Representation::projective(total, x).map_err(compute)?).map_err(compute)?;
                let target = Representation::projective(base, c.functor.vertex_map[x]).map_err(compute)?;
                projectives_ok &= down.dims() == target.dims() && is_isomorphic(&down, &target);
            }
            let passed = c.passed() && projectives_ok;
            let q = p.quiver();
            let results = json!({
                "group_order": h.order(),
                "generators": generators.iter().map(|&e| json!({"edge": orbit.graph.edges[e].0, "arrows": orbit.edge_arrows[e]})).collect::<Vec<_>>(),
                "arrow_weights": Value::Object(q.arrows().iter().zip(&c.weights).map(|(a, w)| (a.name.clone(), json!(w))).collect()),
                "verdicts": verdicts_json(&c.verdicts),
                "projective_push_downs": projectives_ok,
                "connected": c.connected,
                "presentation": print_presentation(&c.presentation),
                "passed": passed,
            });
            ("build-cover", results, Vec::new(), !passed)
        }
    };
    let mut report = RunReport::new(name, inputs.digests, seed);
    report.results = results;
    report.warnings = warnings;
    if failed {
        report.status = Status::VerdictFailure;
    }
    Ok(report)
}

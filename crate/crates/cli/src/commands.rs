use std::io::Write;
use std::path::Path;

use ctqw_core::decomposition::parse_partition;
use ctqw_core::{
    clique_gateway_split, dominating_split, generate, parse_edge_list, reduced_matrix,
    run_invariants, scan_rows, serialize_edge_list, twin_coarsen, verify_fid, DirectWalk,
    DominatingFamily, Family, FidPartition, FidWalk, Graph, ProbabilityTerms, ScanFamily,
    Tolerances,
};

use crate::args::{
    DecomposeArgs, FamilyName, Format, GenArgs, GraphSource, PartitionSource, ScanArgs,
    ScanFamilyName, SimulateArgs, Strategy, TimeGrid, VerifyArgs,
};
use crate::table::{Field, Table};
use crate::CliError;

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    parse_edge_list(&read_file(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(src: &GraphSource) -> Result<Graph, CliError> {
    if let Some(path) = &src.graph {
        return read_graph(path);
    }
    let (Some(name), Some(n)) = (src.family, src.n) else {
        return Err(CliError::Usage(
            "need --graph FILE or --family NAME --n N".into(),
        ));
    };
    let (p, seed) = (src.p, src.seed);
    let family = match name {
        FamilyName::Complete => Family::Complete(n),
        FamilyName::Star => Family::Star(n),
        FamilyName::Path => Family::Path(n),
        FamilyName::Cycle => Family::Cycle(n),
        FamilyName::Edgeless => Family::Edgeless(n),
        FamilyName::ErdosRenyi => Family::ErdosRenyi { n, p, seed },
        FamilyName::Threshold => Family::Threshold { n, p, seed },
    };
    Ok(generate(&family)?)
}

fn load_partition(g: &Graph, src: &PartitionSource) -> Result<FidPartition, CliError> {
    if let Some(path) = &src.blocks_file {
        let blocks = parse_partition(&read_file(path)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        return Ok(verify_fid(g, &blocks)?);
    }
    Ok(match src.strategy {
        Strategy::Trivial => FidPartition::trivial(g),
        Strategy::Singleton => FidPartition::singletons(g),
        Strategy::Twin => twin_coarsen(g),
        Strategy::Dominating => dominating_split(g)
            .ok_or_else(|| CliError::Usage("graph has no dominating vertex".into()))?,
        Strategy::Clique => {
            let clique = src
                .clique
                .as_deref()
                .ok_or_else(|| CliError::Usage("--strategy clique needs --clique".into()))?;
            for &v in clique {
                g.check_vertex(v)?;
            }
            clique_gateway_split(g, clique)?
        }
    })
}

fn times(grid: &TimeGrid) -> Result<Vec<f64>, CliError> {
    if let Some(ts) = &grid.times {
        if ts.is_empty() || ts.iter().any(|t| !t.is_finite()) {
            return Err(CliError::Usage("--times needs finite values".into()));
        }
        return Ok(ts.clone());
    }
    let (a, b, steps) = (grid.t_min, grid.t_max, grid.t_steps);
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(CliError::Usage(format!("bad time range [{a}, {b}]")));
    }
    if steps == 0 {
        return Err(CliError::Usage("--t-steps must be at least 1".into()));
    }
    if steps == 1 {
        return Ok(vec![a]);
    }
    let h = (b - a) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| if k == steps - 1 { b } else { a + h * k as f64 })
        .collect())
}

pub fn gen(args: &GenArgs, mut stdout: impl Write) -> Result<(), CliError> {
    let text = serialize_edge_list(&load_graph(&args.source)?);
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn join_usizes(v: impl IntoIterator<Item = usize>) -> String {
    v.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn decompose(args: &DecomposeArgs, mut out: impl Write) -> Result<(), CliError> {
    let g = load_graph(&args.source)?;
    let p = load_partition(&g, &args.partition)?;
    let k = p.k();
    let adjacency: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| p.is_adjacent(i, j) as usize).collect())
        .collect();
    let reduced = reduced_matrix(&p).to_rows();
    match args.format {
        Format::Json => {
            let v = serde_json::json!({
                "blocks": p.blocks(),
                "sizes": p.sizes(),
                "d_tilde": p.d_tildes(),
                "adjacency": adjacency,
                "reduced_matrix": reduced,
            });
            serde_json::to_writer_pretty(&mut out, &v).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Csv => {
            // Block lines followed by comments, so the output is itself a
            // valid partition file.
            for block in p.blocks() {
                writeln!(out, "{}", join_usizes(block.iter().copied()))?;
            }
            writeln!(out, "# blocks: {k}")?;
            writeln!(out, "# sizes: {}", join_usizes(p.sizes()))?;
            writeln!(
                out,
                "# d_tilde: {}",
                join_usizes(p.d_tildes().iter().copied())
            )?;
            writeln!(out, "# adjacency:")?;
            for row in &adjacency {
                writeln!(out, "#   {}", join_usizes(row.iter().copied()))?;
            }
            writeln!(out, "# reduced matrix:")?;
            for row in &reduced {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(out, "#   {}", cells.join(" "))?;
            }
        }
    }
    Ok(())
}

// Probability columns are clamped to [0, 1]; abs_diff and deficit are taken
// from the raw values so rounding past the ends stays visible.
const SIMULATE_COLUMNS: &[&str] = &[
    "t",
    "x",
    "y",
    "same_block",
    "p_fid",
    "p_direct",
    "abs_diff",
    "amplitude_re",
    "amplitude_im",
    "subgraph",
    "tilde",
    "correction_const",
    "correction_cos",
    "correction_cross",
];

pub fn simulate(args: &SimulateArgs, out: impl Write) -> Result<(), CliError> {
    let g = load_graph(&args.source)?;
    let p = load_partition(&g, &args.partition)?;
    g.check_vertex(args.start)?;
    let ts = times(&args.grid)?;
    let fid = FidWalk::new(&g, &p, args.eigen_tol)?;
    let direct = DirectWalk::new(&g, args.eigen_tol)?;
    let x = args.start;
    let mut table = Table::new(args.format, SIMULATE_COLUMNS, out)?;
    for &t in &ts {
        let f = fid.at(t);
        let oracle = direct.at(t).probability_row(x);
        for y in g.vertices() {
            let r = f.report(x, y)?;
            let pd = oracle[y - 1];
            let mut row: Vec<Field> = vec![
                t.into(),
                x.into(),
                y.into(),
                Field::Missing,
                r.clamped().into(),
                pd.clamp(0.0, 1.0).into(),
                (r.probability - pd).abs().into(),
                r.amplitude_re.into(),
                r.amplitude_im.into(),
            ];
            match r.terms {
                Some(ProbabilityTerms::SameBlock {
                    subgraph,
                    tilde,
                    correction_const,
                    correction_cos,
                    correction_cross,
                    ..
                }) => {
                    row[3] = true.into();
                    row.extend(
                        [
                            subgraph,
                            tilde,
                            correction_const,
                            correction_cos,
                            correction_cross,
                        ]
                        .map(Field::Num),
                    );
                }
                Some(ProbabilityTerms::CrossBlock { tilde, .. }) => {
                    row[3] = false.into();
                    row.extend([
                        Field::Missing,
                        tilde.into(),
                        Field::Missing,
                        Field::Missing,
                        Field::Missing,
                    ]);
                }
                None => row.extend(std::iter::repeat_n(Field::Missing, 5)),
            }
            table.row(&row)?;
        }
    }
    table.finish()
}

const VERIFY_COLUMNS: &[&str] = &["check", "passed", "worst", "tolerance", "witness"];

pub fn verify(args: &VerifyArgs, out: impl Write) -> Result<(), CliError> {
    let g = load_graph(&args.source)?;
    let p = load_partition(&g, &args.partition)?;
    let ts = times(&args.grid)?;
    let tol = Tolerances {
        eigen: args.eigen_tol,
        equivalence: args.tol,
        exact: args.exact_tol,
    };
    let report = run_invariants(&g, &p, &ts, &tol)?;
    let mut table = Table::new(args.format, VERIFY_COLUMNS, out)?;
    for c in &report.checks {
        table.row(&[
            Field::Text(c.name.into()),
            c.passed.into(),
            c.worst.into(),
            c.tolerance.into(),
            c.witness.clone().map_or(Field::Missing, Field::Text),
        ])?;
    }
    table.finish()?;
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}

const SCAN_COLUMNS: &[&str] = &[
    "size",
    "t",
    "return_probability",
    "deficit",
    "bound",
    "within_bound",
];

pub fn scan(args: &ScanArgs, out: impl Write) -> Result<(), CliError> {
    let family = match args.family {
        ScanFamilyName::Complete => ScanFamily::Dominating(DominatingFamily::Complete),
        ScanFamilyName::Star => ScanFamily::Dominating(DominatingFamily::Star),
        ScanFamilyName::Threshold => ScanFamily::Dominating(DominatingFamily::Threshold {
            p: args.p,
            seed: args.seed,
        }),
        ScanFamilyName::Clique => ScanFamily::CliqueGateway {
            gateways: args.gateways,
            outer: match &args.outer_graph {
                Some(path) => read_graph(path)?,
                None => generate(&Family::Cycle(10))?,
            },
        },
    };
    let ts = times(&args.grid)?;
    let mut table = Table::new(args.format, SCAN_COLUMNS, out)?;
    let mut violations = 0usize;
    for chunk in scan_rows(&family, &args.sizes, &ts, args.eigen_tol, args.tol)? {
        for r in chunk? {
            violations += usize::from(!r.within_bound);
            table.row(&[
                r.size.into(),
                r.t.into(),
                r.return_probability.clamp(0.0, 1.0).into(),
                r.deficit().into(),
                r.bound.into(),
                r.within_bound.into(),
            ])?;
        }
    }
    table.finish()?;
    if violations > 0 {
        return Err(CliError::Verification(format!(
            "{violations} rows exceed the bound"
        )));
    }
    Ok(())
}

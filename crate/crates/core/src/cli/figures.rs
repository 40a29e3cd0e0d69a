//! Data behind each figure: which channels, coefficients, grids and pass
//! counts, and how the rows are laid out.

use crate::analysis::{sweep, SweepConfig, SweepRecord};
use crate::capacity::{adc_ordering, capacity_adc_closed};
use crate::channels::{adc_spectrum, ChannelKind};
use crate::model::{BatteryHamiltonian, BellCoefficients};
use crate::{Error, Result};

use super::output::{self, csv_bytes, fmt_f64, fmt_opt, Artifact};
use super::{GridSpec, RunConfig, DEFAULT_COEFFICIENTS, FIG2_COEFFICIENTS};

pub const FIGURE_IDS: [&str; 15] = [
    "1a", "1b", "2a", "2b", "3a", "3b", "3c", "4a", "4b", "4c", "4d", "4e", "4f", "5", "6",
];

#[derive(Debug, Clone)]
enum Layout {
    /// Amplitude-damped spectrum `u₀..u₃` against `p`.
    Eigen,
    /// One capacity curve per channel, plus a summary table.
    Channels(Vec<ChannelKind>),
    /// One file per pass count for a single channel.
    PerN(ChannelKind),
    /// Two-sided `C(p, q)`, one file per pass count.
    Surface(ChannelKind),
}

struct Plan {
    layout: Layout,
    coefficients: [f64; 3],
    n_list: Vec<u32>,
}

fn plan(id: &str) -> Result<Plan> {
    use ChannelKind::*;
    let ns = vec![1, 2, 3, 10, 100];
    let (layout, coefficients, n_list) = match id {
        "1a" => (Layout::Eigen, DEFAULT_COEFFICIENTS, vec![1]),
        "1b" => (
            Layout::Channels(vec![
                BitFlip,
                Depolarizing,
                AmplitudeDamping,
                GeneralizedAmplitudeDamping,
            ]),
            DEFAULT_COEFFICIENTS,
            vec![1],
        ),
        "2a" => (Layout::Eigen, FIG2_COEFFICIENTS, vec![1]),
        "2b" => (
            Layout::Channels(vec![BitPhaseFlip, Depolarizing, AmplitudeDamping]),
            FIG2_COEFFICIENTS,
            vec![1],
        ),
        "3a" => (Layout::PerN(BitFlip), DEFAULT_COEFFICIENTS, ns),
        "3b" => (Layout::PerN(Depolarizing), DEFAULT_COEFFICIENTS, ns),
        "3c" => (Layout::PerN(GeneralizedAmplitudeDamping), DEFAULT_COEFFICIENTS, ns),
        "4a" => (Layout::Eigen, DEFAULT_COEFFICIENTS, vec![2]),
        "4b" => (Layout::Eigen, DEFAULT_COEFFICIENTS, vec![3]),
        "4c" => (Layout::Eigen, DEFAULT_COEFFICIENTS, vec![4]),
        "4d" => (Layout::Eigen, DEFAULT_COEFFICIENTS, vec![10]),
        "4e" => (Layout::Eigen, DEFAULT_COEFFICIENTS, vec![100]),
        "4f" => (Layout::PerN(AmplitudeDamping), DEFAULT_COEFFICIENTS, ns),
        "5" => (Layout::Surface(BitFlip), DEFAULT_COEFFICIENTS, vec![1]),
        "6" => (Layout::Surface(BitFlip), DEFAULT_COEFFICIENTS, vec![2, 10, 100]),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown figure {id:?}; expected one of {}",
                FIGURE_IDS.join(", ")
            )))
        }
    };
    Ok(Plan {
        layout,
        coefficients,
        n_list,
    })
}

/// `p = 0` followed by the 99 interior points `0.01..0.99`.
fn default_line_grid() -> Vec<f64> {
    let mut grid = vec![0.0];
    grid.extend(GridSpec::new(0.01, 0.99, 99).points());
    grid
}

fn default_surface_grid() -> Vec<f64> {
    GridSpec::new(0.0, 1.0, 101).points()
}

/// Builds every file of figure `id` in memory. Overrides from `config`
/// replace the figure's coefficients, energies, grids, pass counts and,
/// for single-channel figures, the channel.
pub fn figure_artifacts(id: &str, config: &RunConfig) -> Result<Vec<Artifact>> {
    let mut plan = plan(id)?;
    let c = config.coefficients(plan.coefficients)?;
    let h = config.hamiltonian()?;
    if let Some(n) = &config.n {
        plan.n_list = n.clone();
    }
    if let Some(kind) = config.channel {
        match &mut plan.layout {
            Layout::PerN(k) | Layout::Surface(k) => *k = kind,
            _ => {}
        }
    }
    let svg = config.wants_svg();
    let stem = format!("fig{id}");

    match plan.layout {
        Layout::Eigen => {
            let grid = config.p_grid.map(|g| g.points()).unwrap_or_else(default_line_grid);
            eigen_figure(&stem, &c, &h, &grid, &plan.n_list, svg)
        }
        Layout::Channels(kinds) => {
            let grid = config.p_grid.map(|g| g.points()).unwrap_or_else(default_line_grid);
            channels_figure(&stem, &kinds, &c, &h, &grid, &plan.n_list, svg)
        }
        Layout::PerN(kind) => {
            let grid = config.p_grid.map(|g| g.points()).unwrap_or_else(default_line_grid);
            per_n_figure(&stem, kind, &c, &h, &grid, &plan.n_list, svg)
        }
        Layout::Surface(kind) => {
            let p_grid = config.p_grid.map(|g| g.points()).unwrap_or_else(default_surface_grid);
            let q_grid = config.q_grid.map(|g| g.points()).unwrap_or_else(default_surface_grid);
            surface_figure(&stem, kind, &c, &h, &p_grid, &q_grid, &plan.n_list, svg)
        }
    }
}

/// `config` with the figure's defaults filled in, for the manifest echo.
pub(crate) fn resolved_config(id: &str, config: &RunConfig) -> Result<RunConfig> {
    let plan = plan(id)?;
    let c = config.coefficients(plan.coefficients)?;
    let h = config.hamiltonian()?;
    let channel = match plan.layout {
        Layout::PerN(k) | Layout::Surface(k) => Some(config.channel.unwrap_or(k)),
        _ => None,
    };
    Ok(RunConfig {
        channel,
        c1: Some(c.c1),
        c2: Some(c.c2),
        c3: Some(c.c3),
        eps_a: Some(h.eps_a()),
        eps_b: Some(h.eps_b()),
        n: Some(config.n.clone().unwrap_or(plan.n_list)),
        ..config.clone()
    })
}

fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let records = sweep(config)?;
    if let Some(bad) = records.iter().find_map(|r| r.error.as_ref()) {
        return Err(Error::InvalidArgument(format!("sweep point failed: {bad}")));
    }
    Ok(records)
}

fn eigen_figure(
    stem: &str,
    c: &BellCoefficients,
    h: &BatteryHamiltonian,
    grid: &[f64],
    n_list: &[u32],
    svg: bool,
) -> Result<Vec<Artifact>> {
    let config = SweepConfig::one_sided(ChannelKind::AmplitudeDamping, *c, *h, grid.to_vec(), n_list.to_vec());
    let records = run_sweep(&config)?;
    let header = [
        "p",
        "n",
        "u0",
        "u1",
        "u2",
        "u3",
        "lambda0",
        "lambda1",
        "lambda2",
        "lambda3",
        "ordering",
        "capacity_closed",
        "capacity_general",
    ];
    let mut rows = Vec::with_capacity(records.len());
    let mut series: Vec<(String, Vec<f64>)> = (0..4).map(|i| (format!("u{i}"), Vec::new())).collect();
    for r in &records {
        let u = adc_spectrum(c, r.p, r.n)?;
        let ordering = match adc_ordering(c, r.p, r.n, true) {
            Some(o) => format!("{o:?}").to_lowercase(),
            None => String::new(),
        };
        let closed = capacity_adc_closed(c, h, r.p, r.n).ok().map(|(v, _)| v);
        let mut row = vec![fmt_f64(r.p), r.n.to_string()];
        row.extend(u.iter().map(|&v| fmt_f64(v)));
        row.extend(r.spectrum.iter().map(|&v| fmt_f64(v)));
        row.push(ordering);
        row.push(fmt_opt(closed));
        row.push(fmt_f64(r.capacity_general));
        rows.push(row);
        if r.n == n_list[0] {
            for (s, v) in series.iter_mut().zip(u) {
                s.1.push(v);
            }
        }
    }
    let mut out = vec![Artifact {
        name: format!("{stem}.csv"),
        bytes: csv_bytes(&header, &rows)?,
    }];
    if svg {
        out.push(Artifact {
            name: format!("{stem}.svg"),
            bytes: output::line_chart(&format!("adc spectrum, n={}", n_list[0]), grid, &series).into_bytes(),
        });
    }
    Ok(out)
}

fn channels_figure(
    stem: &str,
    kinds: &[ChannelKind],
    c: &BellCoefficients,
    h: &BatteryHamiltonian,
    grid: &[f64],
    n_list: &[u32],
    svg: bool,
) -> Result<Vec<Artifact>> {
    let n = n_list[0];
    let mut per_kind = Vec::with_capacity(kinds.len());
    for &kind in kinds {
        let config = SweepConfig::one_sided(kind, *c, *h, grid.to_vec(), vec![n]);
        per_kind.push((kind, run_sweep(&config)?));
    }

    let mut header = vec!["p".to_string()];
    header.extend(kinds.iter().map(|k| format!("C_{k}")));
    header.extend(kinds.iter().map(|k| format!("C_{k}_general")));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows: Vec<Vec<String>> = (0..grid.len())
        .map(|i| {
            let mut row = vec![fmt_f64(grid[i])];
            row.extend(per_kind.iter().map(|(_, rs)| fmt_opt(rs[i].capacity_closed)));
            row.extend(per_kind.iter().map(|(_, rs)| fmt_f64(rs[i].capacity_general)));
            row
        })
        .collect();

    let mut out = vec![Artifact {
        name: format!("{stem}.csv"),
        bytes: csv_bytes(&header_refs, &rows)?,
    }];
    for (kind, records) in &per_kind {
        out.push(Artifact {
            name: format!("{stem}_{kind}.csv"),
            bytes: output::records_csv(records)?,
        });
    }
    if svg {
        let series: Vec<(String, Vec<f64>)> = per_kind
            .iter()
            .map(|(k, rs)| (k.to_string(), rs.iter().map(|r| r.capacity_general).collect()))
            .collect();
        out.push(Artifact {
            name: format!("{stem}.svg"),
            bytes: output::line_chart("capacity", grid, &series).into_bytes(),
        });
    }
    Ok(out)
}

fn per_n_figure(
    stem: &str,
    kind: ChannelKind,
    c: &BellCoefficients,
    h: &BatteryHamiltonian,
    grid: &[f64],
    n_list: &[u32],
    svg: bool,
) -> Result<Vec<Artifact>> {
    let mut out = Vec::new();
    let mut series = Vec::new();
    for &n in n_list {
        let config = SweepConfig::one_sided(kind, *c, *h, grid.to_vec(), vec![n]);
        let records = run_sweep(&config)?;
        out.push(Artifact {
            name: format!("{stem}_n{n}.csv"),
            bytes: output::records_csv(&records)?,
        });
        series.push((format!("n={n}"), records.iter().map(|r| r.capacity_general).collect()));
    }
    if svg {
        out.push(Artifact {
            name: format!("{stem}.svg"),
            bytes: output::line_chart(&format!("{kind} capacity"), grid, &series).into_bytes(),
        });
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn surface_figure(
    stem: &str,
    kind: ChannelKind,
    c: &BellCoefficients,
    h: &BatteryHamiltonian,
    p_grid: &[f64],
    q_grid: &[f64],
    n_list: &[u32],
    svg: bool,
) -> Result<Vec<Artifact>> {
    let single = n_list.len() == 1;
    let mut out = Vec::new();
    for &n in n_list {
        let config = SweepConfig::two_sided(kind, *c, *h, p_grid.to_vec(), q_grid.to_vec(), vec![n]);
        let records = run_sweep(&config)?;
        let name = if single {
            stem.to_string()
        } else {
            format!("{stem}_n{n}")
        };
        out.push(Artifact {
            name: format!("{name}.csv"),
            bytes: output::records_csv(&records)?,
        });
        if svg {
            let z: Vec<Vec<f64>> = records
                .chunks(q_grid.len())
                .map(|row| row.iter().map(|r| r.capacity_general).collect())
                .collect();
            out.push(Artifact {
                name: format!("{name}.svg"),
                bytes: output::heatmap(&format!("two-sided {kind}, n={n}"), p_grid, q_grid, &z).into_bytes(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csv_rows(bytes: &[u8]) -> Vec<Vec<String>> {
        let text = std::str::from_utf8(bytes).unwrap();
        text.lines().map(|l| l.split(',').map(String::from).collect()).collect()
    }

    #[test]
    fn every_id_has_a_plan() {
        for id in FIGURE_IDS {
            plan(id).unwrap();
        }
        assert!(matches!(plan("7"), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn figure_1b_layout() {
        let files = figure_artifacts("1b", &RunConfig::default()).unwrap();
        let names: Vec<&str> = files.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "fig1b.csv",
                "fig1b_bf.csv",
                "fig1b_dep.csv",
                "fig1b_adc.csv",
                "fig1b_gad.csv"
            ]
        );
        let rows = csv_rows(&files[0].bytes);
        assert_eq!(rows[0][..5], ["p", "C_bf", "C_dep", "C_adc", "C_gad"]);
        assert_eq!(rows.len(), 101);
        assert_eq!(rows[1][0], "0.0");
        for cell in &rows[1][1..] {
            assert!((cell.parse::<f64>().unwrap() - 0.78).abs() <= 1e-12);
        }
        let interior = rows[2..].iter().filter(|r| r[0] != "0.0").count();
        assert_eq!(interior, 99);
    }

    #[test]
    fn figure_3b_matches_closed_form() {
        let files = figure_artifacts("3b", &RunConfig::default()).unwrap();
        assert_eq!(files.len(), 5);
        for (file, n) in files.iter().zip([1, 2, 3, 10, 100]) {
            assert_eq!(file.name, format!("fig3b_n{n}.csv"));
            for row in csv_rows(&file.bytes).iter().skip(1) {
                let p: f64 = row[2].parse().unwrap();
                let closed: f64 = row[5].parse().unwrap();
                let expected = 0.78 * (1.0 - 4.0 * p / 3.0).powi(n);
                assert!((closed - expected).abs() <= 1e-12, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn eigen_figure_orderings() {
        let files = figure_artifacts("2a", &RunConfig::default()).unwrap();
        let rows = csv_rows(&files[0].bytes);
        for row in rows.iter().skip(2) {
            assert_eq!(row[10], "swapped");
        }
    }

    #[test]
    fn surface_corner() {
        let config = RunConfig {
            p_grid: Some(GridSpec::new(0.0, 1.0, 11)),
            q_grid: Some(GridSpec::new(0.0, 1.0, 11)),
            ..RunConfig::default()
        };
        let files = figure_artifacts("5", &config).unwrap();
        let rows = csv_rows(&files[0].bytes);
        assert_eq!(rows.len(), 1 + 121);
        let corner = rows.last().unwrap();
        assert_eq!((corner[2].as_str(), corner[3].as_str()), ("1.0", "1.0"));
        assert!((corner[6].parse::<f64>().unwrap() - 0.6).abs() <= 1e-12);
    }
}

use std::collections::BTreeMap;
use std::io::{self, Write};

use rayon::prelude::*;

use super::{format_real, gen_scenario, mix_seed, ScenarioSpec, SWEEP_HEADER};
use crate::error::{Error, Result};
use crate::secrecy::{PowerAllocation, SecrecyScenario};
use crate::solvers::{solve, Method, SolverOptions, MAX_GRID_CHANNELS};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub method: Method,
    pub n_channels: usize,
    /// Index of the replicate within its channel count.
    pub replicate: u64,
    /// Seed the scenario was generated from (`mix_seed` of the base seed).
    pub seed: u64,
    pub sum_rate_clipped: f64,
    pub rounds_used: usize,
    pub converged: bool,
    pub alloc: PowerAllocation,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepTable {
    /// Sorted by (method, n, replicate).
    pub rows: Vec<SweepRow>,
    pub notes: Vec<String>,
    scenarios: BTreeMap<(usize, u64), SecrecyScenario>,
}

impl SweepTable {
    /// Mean clipped sum rate per channel count for one method.
    pub fn means(&self, method: Method) -> Vec<(usize, f64)> {
        let mut acc: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
        for row in self.rows.iter().filter(|r| r.method == method) {
            let e = acc.entry(row.n_channels).or_default();
            e.0 += row.sum_rate_clipped;
            e.1 += 1;
        }
        acc.into_iter()
            .map(|(n, (sum, k))| (n, sum / k as f64))
            .collect()
    }

    pub fn row(&self, method: Method, n_channels: usize, replicate: u64) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.n_channels == n_channels && r.replicate == replicate)
    }

    pub fn scenario(&self, n_channels: usize, replicate: u64) -> Option<&SecrecyScenario> {
        self.scenarios.get(&(n_channels, replicate))
    }

    /// Writes the CSV, re-checking every row's allocation against its
    /// scenario first.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        for row in &self.rows {
            let scenario = self
                .scenario(row.n_channels, row.replicate)
                .ok_or_else(|| {
                    Error::Data(format!(
                        "no scenario for n={} replicate {}",
                        row.n_channels, row.replicate
                    ))
                })?;
            row.alloc.check(scenario).map_err(|e| {
                Error::Data(format!(
                    "{} row n={} seed={}: {e}",
                    row.method, row.n_channels, row.seed
                ))
            })?;
        }
        let write = |out: &mut W| -> io::Result<()> {
            writeln!(out, "{SWEEP_HEADER}")?;
            for r in &self.rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.method,
                    r.n_channels,
                    r.seed,
                    format_real(r.sum_rate_clipped),
                    r.rounds_used,
                    r.converged
                )?;
            }
            Ok(())
        };
        write(&mut out)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("CSV is ASCII"))
    }
}

/// Solves `seeds_per_n` generated scenarios for every channel count in
/// `n_list` with every method. Cells run in parallel; rows come back in
/// canonical order. The grid oracle is skipped above
/// [`MAX_GRID_CHANNELS`] and the skip is noted in the table.
pub fn run_sweep(
    n_list: &[usize],
    seeds_per_n: u64,
    base: &ScenarioSpec,
    methods: &[Method],
    opts: &SolverOptions,
) -> Result<SweepTable> {
    if n_list.is_empty() || methods.is_empty() || seeds_per_n == 0 {
        return Err(Error::invalid(
            "sweep needs at least one channel count, seed and method",
        ));
    }
    let mut methods = methods.to_vec();
    methods.sort();
    methods.dedup();
    let mut ns = n_list.to_vec();
    ns.sort();
    ns.dedup();

    let cells: Vec<(usize, u64)> = ns
        .iter()
        .flat_map(|&n| (0..seeds_per_n).map(move |s| (n, s)))
        .collect();

    let solved: Vec<(usize, u64, SecrecyScenario, Vec<SweepRow>)> = cells
        .par_iter()
        .map(|&(n, replicate)| {
            let seed = mix_seed(base.seed, n, replicate);
            let spec = ScenarioSpec {
                n_channels: n,
                seed,
                ..base.clone()
            };
            let scenario = gen_scenario(&spec)?;
            let mut rows = Vec::new();
            for &method in &methods {
                if method == Method::Grid && n > MAX_GRID_CHANNELS {
                    continue;
                }
                let r = solve(&scenario, method, opts)?;
                rows.push(SweepRow {
                    method,
                    n_channels: n,
                    replicate,
                    seed,
                    sum_rate_clipped: r.sum_rate_clipped,
                    rounds_used: r.rounds_used,
                    converged: r.converged,
                    alloc: r.alloc,
                });
            }
            Ok((n, replicate, scenario, rows))
        })
        .collect::<Result<_>>()?;

    let mut table = SweepTable::default();
    for (n, replicate, scenario, rows) in solved {
        table.rows.extend(rows);
        table.scenarios.insert((n, replicate), scenario);
    }
    table
        .rows
        .sort_by_key(|r| (r.method, r.n_channels, r.replicate));

    if methods.contains(&Method::Grid) {
        let skipped: Vec<String> = ns
            .iter()
            .filter(|&&n| n > MAX_GRID_CHANNELS)
            .map(|n| n.to_string())
            .collect();
        if !skipped.is_empty() {
            table.notes.push(format!(
                "grid oracle skipped for n = {} (limit {MAX_GRID_CHANNELS} channels)",
                skipped.join(",")
            ));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::secrecy::ChannelGains;

    #[test]
    fn canonical_order_and_counts() {
        let base = ScenarioSpec::new(1, 11).with_nonneg_baseline(true);
        let t = run_sweep(
            &[3, 2],
            3,
            &base,
            &[Method::Game, Method::Epr],
            &SolverOptions::default(),
        )
        .unwrap();
        assert_eq!(t.rows.len(), 2 * 2 * 3);
        let keys: Vec<_> = t
            .rows
            .iter()
            .map(|r| (r.method, r.n_channels, r.replicate))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
        assert_eq!(t.rows[0].method, Method::Epr);
        assert_eq!(t.rows[0].seed, mix_seed(11, 2, 0));
    }

    #[test]
    fn grid_skipped_with_note() {
        let base = ScenarioSpec::new(1, 2);
        let t = run_sweep(
            &[2, 4],
            1,
            &base,
            &[Method::Grid],
            &SolverOptions {
                grid_resolution: 50,
                ..SolverOptions::default()
            },
        )
        .unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.notes.len(), 1);
        assert!(t.notes[0].contains('4'));
    }

    #[test]
    fn csv_shape() {
        let base = ScenarioSpec::new(1, 2);
        let t = run_sweep(&[2], 2, &base, &[Method::Epr], &SolverOptions::default()).unwrap();
        let csv = t.to_csv_string().unwrap();
        let lines: Vec<_> = csv.split('\n').collect();
        assert_eq!(lines[0], SWEEP_HEADER);
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[3], "");
        assert!(lines[1].starts_with("epr,2,"));
        assert!(lines[1].ends_with(",0,true"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn infeasible_rows_are_rejected_at_write_time() {
        let base = ScenarioSpec::new(1, 2);
        let mut t = run_sweep(&[2], 1, &base, &[Method::Epr], &SolverOptions::default()).unwrap();
        t.rows[0].alloc = PowerAllocation::new(vec![0.05, 0.05]);
        assert!(matches!(t.to_csv_string(), Err(Error::Data(_))));
    }

    #[test]
    fn epr_on_identical_channels() {
        let g = ChannelGains::new(900.0, 500.0, 800.0);
        for n in 1..6 {
            let s = SecrecyScenario::new(vec![g; n], 0.05, 0.01, 1.0).unwrap();
            let r = solve(&s, Method::Epr, &SolverOptions::default()).unwrap();
            let per = s.channel_secrecy_rate(0, 0.05 / n as f64, true).unwrap();
            assert!((r.sum_rate_clipped - n as f64 * per).abs() <= 1e-12 * n as f64);
        }
    }

    #[test]
    fn rejects_empty_inputs() {
        let base = ScenarioSpec::new(1, 2);
        assert!(run_sweep(&[], 1, &base, &[Method::Epr], &SolverOptions::default()).is_err());
        assert!(run_sweep(&[2], 0, &base, &[Method::Epr], &SolverOptions::default()).is_err());
        assert!(run_sweep(&[2], 1, &base, &[], &SolverOptions::default()).is_err());
    }
}

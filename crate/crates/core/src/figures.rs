//! Named sweep presets reproducing the standard plots, plus a minimal
//! gnuplot script for each.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sweep::{Axis, Param, SweepScenario, SweepSpec};

pub const DEFAULT_RESOLUTION: usize = 61;
pub const QUICK_RESOLUTION: usize = 13;
const FREQUENCY_RESOLUTION: usize = 100;

pub const PRESET_IDS: &[&str] = &[
    "fig2",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "fig7",
    "fig8",
    "fig9",
    "fig10",
    "mi-single",
    "mi-double",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// One curve per quantity against the single axis.
    Curves,
    /// One curve per quantity and per value of the outer axis.
    CurveFamily,
    /// Surface over the two axes, one per quantity.
    Surface,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    /// File stem, e.g. `fig6_a`.
    pub stem: String,
    pub title: String,
    pub spec: SweepSpec,
    pub plot: PlotKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub id: &'static str,
    pub panels: Vec<Panel>,
}

fn lin(p: Param, min: f64, max: f64, steps: usize) -> Axis {
    // Ranges below are compile-time constants with min < max and steps >= 2.
    Axis::linspace(p, min, max, steps).expect("valid preset axis")
}

fn q(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn panel(stem: &str, title: &str, spec: SweepSpec, plot: PlotKind) -> Panel {
    Panel {
        stem: stem.to_owned(),
        title: title.to_owned(),
        spec,
        plot,
    }
}

fn surface(
    scenario: SweepScenario,
    outer: Param,
    inner: Param,
    res: usize,
    quantities: &[&str],
) -> SweepSpec {
    SweepSpec {
        scenario,
        axes: vec![lin(outer, 0.0, 3.0, res), lin(inner, 0.0, 3.0, res)],
        fixed: vec![],
        quantities: q(quantities),
    }
}

fn frequency(aleph: f64, res: usize, quantities: &[&str]) -> SweepSpec {
    SweepSpec {
        scenario: SweepScenario::Frequency,
        axes: vec![
            lin(Param::Lambda, 0.05, 5.0, res),
            lin(Param::Nu, 0.05, 5.0, res),
        ],
        fixed: vec![(Param::Aleph, aleph)],
        quantities: q(quantities),
    }
}

/// Looks up a preset. `quick` uses a coarse grid.
pub fn preset(id: &str, quick: bool) -> Result<Preset> {
    let res = if quick {
        QUICK_RESOLUTION
    } else {
        DEFAULT_RESOLUTION
    };
    let fres = if quick {
        QUICK_RESOLUTION
    } else {
        FREQUENCY_RESOLUTION
    };
    use PlotKind::*;
    use SweepScenario::*;
    let (id, panels) = match id {
        "fig2" => (
            "fig2",
            vec![panel(
                "fig2",
                "one-vs-two m values against r at s = 1",
                SweepSpec {
                    scenario: Single,
                    axes: vec![lin(Param::R, 0.0, 3.0, res)],
                    fixed: vec![(Param::S, 1.0)],
                    quantities: q(&["m_A_RRbar", "m_R_ARbar", "m_Rbar_AR"]),
                },
                Curves,
            )],
        ),
        "fig3" => (
            "fig3",
            vec![panel(
                "fig3",
                "Alice-Rob contangle over (s, r), raw and normalized to 4 s^2",
                surface(
                    Single,
                    Param::S,
                    Param::R,
                    res,
                    &["tau_AR", "tau_AR_normalized"],
                ),
                Surface,
            )],
        ),
        "fig4" => (
            "fig4",
            vec![panel(
                "fig4",
                "square root of the Alice-Rob contangle against r, with the 2r Rob/anti-Rob line",
                SweepSpec {
                    scenario: Single,
                    axes: vec![
                        Axis::explicit(Param::S, vec![0.25, 0.5, 1.0, 2.0])?,
                        lin(Param::R, 0.0, 3.0, res),
                    ],
                    fixed: vec![],
                    quantities: q(&["sqrt_tau_AR", "sqrt_tau_RRbar"]),
                },
                CurveFamily,
            )],
        ),
        "fig5" => (
            "fig5",
            vec![panel(
                "fig5",
                "residual tripartite contangle over (s, r)",
                surface(Single, Param::S, Param::R, res, &["residual_tripartite"]),
                Surface,
            )],
        ),
        "fig6" => (
            "fig6",
            vec![
                panel(
                    "fig6_a",
                    "separability condition over (lambda, nu) at aleph = 2 pi",
                    frequency(2.0 * PI, fres, &["condition", "separable"]),
                    Surface,
                ),
                panel(
                    "fig6_b",
                    "separability condition over (lambda, nu) at aleph = 10 pi",
                    frequency(10.0 * PI, fres, &["condition", "separable"]),
                    Surface,
                ),
            ],
        ),
        "fig7" => (
            "fig7",
            vec![panel(
                "fig7",
                "Leo-Nadia contangle at infinite squeezing over (lambda, nu) at aleph = 2 pi",
                frequency(2.0 * PI, fres, &["m_LN_inf", "tau_LN_inf", "separable"]),
                Surface,
            )],
        ),
        "fig8" => (
            "fig8",
            vec![panel(
                "fig8",
                "residual multipartite contangle over (s, a)",
                surface(Double, Param::S, Param::A, res, &["residual_multipartite"]),
                Surface,
            )],
        ),
        "fig9" => (
            "fig9",
            vec![panel(
                "fig9",
                "Leo-Nadia contangle over (s, a), raw and normalized to 4 s^2",
                surface(
                    Double,
                    Param::S,
                    Param::A,
                    res,
                    &["tau_L_N", "tau_L_N_normalized"],
                ),
                Surface,
            )],
        ),
        "fig10" => (
            "fig10",
            vec![panel(
                "fig10",
                "mutual-information deficit D over (a, s)",
                surface(Double, Param::A, Param::S, res, &["deficit"]),
                Surface,
            )],
        ),
        "mi-single" => (
            "mi-single",
            vec![panel(
                "mi-single",
                "Alice-Rob mutual information over (s, r), raw and normalized",
                surface(
                    Single,
                    Param::S,
                    Param::R,
                    res,
                    &["mutual_info_AR", "mutual_info_AR_normalized"],
                ),
                Surface,
            )],
        ),
        "mi-double" => (
            "mi-double",
            vec![panel(
                "mi-double",
                "Leo-Nadia mutual information over (s, a), raw and normalized",
                surface(
                    Double,
                    Param::S,
                    Param::A,
                    res,
                    &["mutual_info_LN", "mutual_info_LN_normalized"],
                ),
                Surface,
            )],
        ),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown figure preset `{other}` (known: {})",
                PRESET_IDS.join(", ")
            )))
        }
    };
    Ok(Preset { id, panels })
}

/// A gnuplot script plotting `data_file` (a path relative to the script).
pub fn plot_script(panel: &Panel, data_file: &str) -> String {
    let spec = &panel.spec;
    let cols = spec.columns();
    let n_params = spec.axes.len() + spec.fixed.len();
    let mut s = String::new();
    let _ = writeln!(s, "# {}", panel.title);
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set datafile commentschars '#'");
    let _ = writeln!(s, "set key autotitle columnhead");
    let plotted: Vec<(usize, &String)> = cols
        .iter()
        .enumerate()
        .skip(n_params)
        .filter(|(_, c)| c.as_str() != "separable")
        .collect();
    match panel.plot {
        PlotKind::Curves => {
            let _ = writeln!(s, "set xlabel '{}'", cols[0]);
            let parts: Vec<String> = plotted
                .iter()
                .map(|(k, c)| format!("'{data_file}' using 1:{} with lines title '{c}'", k + 1))
                .collect();
            let _ = writeln!(s, "plot {}", parts.join(", \\\n     "));
        }
        PlotKind::CurveFamily => {
            let outer = &spec.axes[0];
            let values: Vec<String> = outer.values.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "set xlabel '{}'", cols[1]);
            let mut parts = Vec::new();
            for (k, c) in &plotted {
                parts.push(format!(
                    "for [v in \"{}\"] '{data_file}' using 2:(abs($1 - v) < 1e-12 ? ${} : NaN) with lines title sprintf('{c}, {}=%s', v)",
                    values.join(" "),
                    k + 1,
                    outer.param
                ));
            }
            let _ = writeln!(s, "plot {}", parts.join(", \\\n     "));
        }
        PlotKind::Surface => {
            let _ = writeln!(s, "set xlabel '{}'", cols[0]);
            let _ = writeln!(s, "set ylabel '{}'", cols[1]);
            let _ = writeln!(
                s,
                "set dgrid3d {},{}",
                spec.axes[1].values.len(),
                spec.axes[0].values.len()
            );
            let _ = writeln!(s, "set pm3d");
            for (i, (k, c)) in plotted.iter().enumerate() {
                if i > 0 {
                    let _ = writeln!(s, "pause -1");
                }
                let _ = writeln!(s, "set title '{c}'");
                let _ = writeln!(
                    s,
                    "splot '{data_file}' using 1:2:{} with pm3d notitle",
                    k + 1
                );
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{run_sweep, Cell};

    #[test]
    fn every_preset_is_valid() {
        for id in PRESET_IDS {
            let p = preset(id, true).unwrap();
            for panel in &p.panels {
                panel.spec.validate().unwrap();
                assert!(!plot_script(panel, "x.csv").is_empty());
            }
        }
        assert!(preset("fig1", false).is_err());
    }

    #[test]
    fn fig4_contains_diagonal() {
        let p = preset("fig4", true).unwrap();
        let t = run_sweep(&p.panels[0].spec).unwrap();
        let r = t.column("r").unwrap();
        let d = t.column("sqrt_tau_RRbar").unwrap();
        for (r, d) in r.iter().zip(&d) {
            let (r, d) = (r.as_f64().unwrap(), d.as_f64().unwrap());
            assert!((d - 2.0 * r).abs() < 1e-12);
        }
    }

    #[test]
    fn fig8_zero_acceleration_column() {
        let p = preset("fig8", true).unwrap();
        let t = run_sweep(&p.panels[0].spec).unwrap();
        let a = t.column("a").unwrap();
        let res = t.column("residual_multipartite").unwrap();
        for (a, v) in a.iter().zip(&res) {
            if *a == Cell::Num(0.0) {
                assert!(v.as_f64().unwrap().abs() < 1e-12);
            }
        }
    }
}

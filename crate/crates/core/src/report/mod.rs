//! Serializable report rows and gnuplot-style plot data.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{Branch, FamilyId, Params};
use crate::eigensolve::{GridInfo, SpectrumLevel, SpectrumReport};
use crate::gridops::WaveFunction;

/// Fixed 17-significant-digit scientific notation used in CSV and plot files.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// One analytic level and the numeric level paired with it, if any.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub n: usize,
    #[serde(rename = "N")]
    pub spectral_parameter: Option<f64>,
    pub branch: Option<Branch>,
    #[serde(rename = "E_analytic")]
    pub e_analytic: f64,
    #[serde(rename = "E_numeric")]
    pub e_numeric: Option<f64>,
    pub abs_gap: Option<f64>,
    pub rel_gap: Option<f64>,
}

/// Flat view of a [`SpectrumReport`] with one row per reference state,
/// ordered by analytic energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub family: Option<FamilyId>,
    pub branch: Option<Branch>,
    pub params: Option<Params>,
    pub levels: Vec<LevelRow>,
    pub unmatched: Vec<SpectrumLevel>,
    pub extras: Vec<SpectrumLevel>,
    pub continuum_edge: Option<f64>,
    pub grid: Option<GridInfo>,
    pub passed: bool,
    pub max_rel_gap: f64,
}

impl From<&SpectrumReport> for SpectrumTable {
    fn from(r: &SpectrumReport) -> Self {
        let mut levels: Vec<LevelRow> = r
            .matched
            .iter()
            .map(|m| LevelRow {
                n: m.analytic.n,
                spectral_parameter: m.analytic.spectral_parameter,
                branch: m.analytic.branch,
                e_analytic: m.analytic.energy,
                e_numeric: Some(m.numeric.energy),
                abs_gap: Some(m.abs_gap),
                rel_gap: Some(m.rel_gap),
            })
            .collect();
        levels.extend(r.unmatched.iter().map(|a| LevelRow {
            n: a.n,
            spectral_parameter: a.spectral_parameter,
            branch: a.branch,
            e_analytic: a.energy,
            e_numeric: None,
            abs_gap: None,
            rel_gap: None,
        }));
        levels.sort_by(|a, b| {
            a.e_analytic
                .total_cmp(&b.e_analytic)
                .then(a.n.cmp(&b.n))
                .then(
                    a.e_numeric
                        .unwrap_or(f64::INFINITY)
                        .total_cmp(&b.e_numeric.unwrap_or(f64::INFINITY)),
                )
        });
        SpectrumTable {
            family: r.family,
            branch: r.branch,
            params: r.params,
            levels,
            unmatched: r.unmatched.clone(),
            extras: r.extras.clone(),
            continuum_edge: r.continuum_edge,
            grid: r.grid,
            passed: r.passed(),
            max_rel_gap: r.max_rel_gap(),
        }
    }
}

impl SpectrumTable {
    /// `n,N,branch,E_analytic,E_numeric,abs_gap,rel_gap` with empty cells
    /// for missing values.
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(sci).unwrap_or_default();
        let mut s = String::from("n,N,branch,E_analytic,E_numeric,abs_gap,rel_gap\n");
        for l in &self.levels {
            let b = l.branch.map(|b| b.as_str()).unwrap_or("");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                l.n,
                opt(l.spectral_parameter),
                b,
                sci(l.e_analytic),
                opt(l.e_numeric),
                opt(l.abs_gap),
                opt(l.rel_gap)
            );
        }
        s
    }
}

fn header(comment: &[String]) -> String {
    let mut s = String::new();
    for line in comment {
        let _ = writeln!(s, "# {line}");
    }
    s
}

/// Four columns `n N E_analytic E_numeric`; missing values are written as NaN.
pub fn spectrum_plot(table: &SpectrumTable, comment: &[String]) -> String {
    let mut s = header(comment);
    s.push_str("# n N E_analytic E_numeric\n");
    for l in &table.levels {
        let _ = writeln!(
            s,
            "{} {} {} {}",
            l.n,
            sci(l.spectral_parameter.unwrap_or(f64::NAN)),
            sci(l.e_analytic),
            sci(l.e_numeric.unwrap_or(f64::NAN))
        );
    }
    s
}

/// Three columns `x phi xi`.
pub fn wavefunction_plot(psi: &WaveFunction, comment: &[String]) -> String {
    let mut s = header(comment);
    s.push_str("# x phi xi\n");
    for (i, &x) in psi.grid().nodes().iter().enumerate() {
        let v = psi.at(i);
        let _ = writeln!(s, "{} {} {}", sci(x), sci(v[0]), sci(v[1]));
    }
    s
}

/// Parameter line for plot headers.
pub fn params_comment(family: FamilyId, branch: Option<Branch>, p: &Params) -> String {
    let b = branch.map(|b| format!(" branch={b}")).unwrap_or_default();
    format!(
        "family={family}{b} lambda={} kappa={} mu={} omega={} c={}",
        p.lambda, p.kappa, p.mu, p.omega, p.c_ext
    )
}

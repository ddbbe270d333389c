//! CSV and JSON writers for sweep results.
//!
//! CSV always starts with a header row. JSON documents carry
//! `schema_version`, the command name, a `params` header, the grid that was
//! swept, and `rows` with the same fields as the CSV columns. Susceptibilities
//! and slopes in spectra are multiplied by α here; every other quantity is
//! written as computed.

use serde::Serialize;
use std::io::{self, Write};

use disperse_core::scan::{GroupIndexCurve, RegimeGrid, SpectrumSeries, ValidationReport};
use disperse_core::SystemParams;

use crate::args::Format;
use crate::number::{g17, G17};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
struct ParamsView {
    scheme: &'static str,
    gamma1: G17,
    gamma2: G17,
    r1: G17,
    r2: G17,
    omega: G17,
    omega_p_rabi: G17,
    alpha: G17,
    nu_p: G17,
}

impl From<&SystemParams> for ParamsView {
    fn from(p: &SystemParams) -> Self {
        Self {
            scheme: p.scheme.as_str(),
            gamma1: G17(p.gamma1),
            gamma2: G17(p.gamma2),
            r1: G17(p.r1),
            r2: G17(p.r2),
            omega: G17(p.omega),
            omega_p_rabi: G17(p.omega_p_rabi),
            alpha: G17(p.alpha),
            nu_p: G17(p.nu_p),
        }
    }
}

#[derive(Serialize)]
struct Document<G, R> {
    schema_version: &'static str,
    command: &'static str,
    params: ParamsView,
    grid: G,
    rows: Vec<R>,
}

fn write_json<W: Write, T: Serialize>(out: &mut W, doc: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc).map_err(io::Error::other)?;
    writeln!(out)
}

fn write_csv_row<W: Write>(out: &mut W, fields: &[String]) -> io::Result<()> {
    writeln!(out, "{}", fields.join(","))
}

#[derive(Serialize)]
struct SpectrumGrid {
    delta_min: G17,
    delta_max: G17,
    points: usize,
}

#[derive(Serialize)]
struct SpectrumRow {
    delta_p: G17,
    re_chi: G17,
    im_chi: G17,
    slope: G17,
}

pub fn spectrum<W: Write>(out: &mut W, series: &SpectrumSeries, format: Format) -> io::Result<()> {
    let alpha = series.params.alpha;
    let rows = series.samples.iter().map(|s| SpectrumRow {
        delta_p: G17(s.delta_p),
        re_chi: G17(alpha * s.chi_re),
        im_chi: G17(alpha * s.chi_im),
        slope: G17(alpha * s.slope),
    });
    match format {
        Format::Csv => {
            writeln!(out, "delta_p,re_chi,im_chi,slope")?;
            for r in rows {
                write_csv_row(out, &[g17(r.delta_p.0), g17(r.re_chi.0), g17(r.im_chi.0), g17(r.slope.0)])?;
            }
            Ok(())
        }
        Format::Json => write_json(
            out,
            &Document {
                schema_version: SCHEMA_VERSION,
                command: "spectrum",
                params: (&series.params).into(),
                grid: SpectrumGrid {
                    delta_min: G17(series.grid[0]),
                    delta_max: G17(*series.grid.last().expect("non-empty grid")),
                    points: series.grid.len(),
                },
                rows: rows.collect(),
            },
        ),
    }
}

#[derive(Serialize)]
struct RegimeAxes {
    r_min: G17,
    r_max: G17,
    n_r: usize,
    omega_min: G17,
    omega_max: G17,
    n_omega: usize,
}

#[derive(Serialize)]
struct RegimeRow {
    r: G17,
    omega: G17,
    class: &'static str,
}

pub fn regime_map<W: Write>(out: &mut W, grid: &RegimeGrid, format: Format) -> io::Result<()> {
    let rows = grid.iter().map(|(r, omega, class)| RegimeRow { r: G17(r), omega: G17(omega), class: class.as_str() });
    match format {
        Format::Csv => {
            writeln!(out, "r,omega,class")?;
            for row in rows {
                write_csv_row(out, &[g17(row.r.0), g17(row.omega.0), row.class.to_owned()])?;
            }
            Ok(())
        }
        Format::Json => {
            let axes = RegimeAxes {
                r_min: G17(grid.r_axis[0]),
                r_max: G17(*grid.r_axis.last().expect("non-empty axis")),
                n_r: grid.r_axis.len(),
                omega_min: G17(grid.omega_axis[0]),
                omega_max: G17(*grid.omega_axis.last().expect("non-empty axis")),
                n_omega: grid.omega_axis.len(),
            };
            write_json(
                out,
                &Document {
                    schema_version: SCHEMA_VERSION,
                    command: "regime-map",
                    params: (&grid.base).into(),
                    grid: axes,
                    rows: rows.collect(),
                },
            )
        }
    }
}

#[derive(Serialize)]
struct GroupIndexAxes {
    omegas: Vec<G17>,
    r_min: G17,
    r_max: G17,
    n_r: usize,
}

#[derive(Serialize)]
struct GroupIndexRow {
    omega: G17,
    r: G17,
    ng_minus_1: G17,
}

pub fn group_index<W: Write>(
    out: &mut W,
    base: &SystemParams,
    curves: &[GroupIndexCurve],
    format: Format,
) -> io::Result<()> {
    let rows = curves.iter().flat_map(|c| {
        c.r_axis.iter().zip(&c.values).map(move |(&r, &v)| GroupIndexRow {
            omega: G17(c.omega),
            r: G17(r),
            ng_minus_1: G17(v),
        })
    });
    match format {
        Format::Csv => {
            writeln!(out, "omega,r,ng_minus_1")?;
            for row in rows {
                write_csv_row(out, &[g17(row.omega.0), g17(row.r.0), g17(row.ng_minus_1.0)])?;
            }
            Ok(())
        }
        Format::Json => {
            let r_axis = curves.first().map(|c| c.r_axis.as_slice()).unwrap_or(&[]);
            let axes = GroupIndexAxes {
                omegas: curves.iter().map(|c| G17(c.omega)).collect(),
                r_min: G17(r_axis.first().copied().unwrap_or(f64::NAN)),
                r_max: G17(r_axis.last().copied().unwrap_or(f64::NAN)),
                n_r: r_axis.len(),
            };
            write_json(
                out,
                &Document {
                    schema_version: SCHEMA_VERSION,
                    command: "group-index",
                    params: base.into(),
                    grid: axes,
                    rows: rows.collect(),
                },
            )
        }
    }
}

#[derive(Serialize)]
struct ValidationRow {
    case_id: usize,
    delta_p: G17,
    re_a: G17,
    im_a: G17,
    re_n: G17,
    im_n: G17,
    abs_err: G17,
}

#[derive(Serialize)]
struct CaseView {
    case_id: usize,
    params: ParamsView,
}

#[derive(Serialize)]
struct FailureView<'a> {
    case_id: usize,
    message: &'a str,
}

#[derive(Serialize)]
struct ValidationDocument<'a> {
    schema_version: &'static str,
    command: &'static str,
    params: ParamsView,
    grid: SpectrumGrid,
    cases: Vec<CaseView>,
    rows: Vec<ValidationRow>,
    failures: Vec<FailureView<'a>>,
    max_error: G17,
    tolerance: G17,
    pass: bool,
}

pub fn validation<W: Write>(
    out: &mut W,
    base: &SystemParams,
    cases: &[SystemParams],
    delta_grid: &[f64],
    report: &ValidationReport,
    format: Format,
) -> io::Result<()> {
    let rows = report.cases.iter().map(|c| ValidationRow {
        case_id: c.case_id,
        delta_p: G17(c.delta_p),
        re_a: G17(c.chi_analytic.re),
        im_a: G17(c.chi_analytic.im),
        re_n: G17(c.chi_numeric.re),
        im_n: G17(c.chi_numeric.im),
        abs_err: G17(c.abs_error),
    });
    match format {
        Format::Csv => {
            writeln!(out, "case_id,delta_p,re_a,im_a,re_n,im_n,abs_err")?;
            for r in rows {
                write_csv_row(
                    out,
                    &[
                        r.case_id.to_string(),
                        g17(r.delta_p.0),
                        g17(r.re_a.0),
                        g17(r.im_a.0),
                        g17(r.re_n.0),
                        g17(r.im_n.0),
                        g17(r.abs_err.0),
                    ],
                )?;
            }
            Ok(())
        }
        Format::Json => write_json(
            out,
            &ValidationDocument {
                schema_version: SCHEMA_VERSION,
                command: "validate",
                params: base.into(),
                grid: SpectrumGrid {
                    delta_min: G17(delta_grid.first().copied().unwrap_or(f64::NAN)),
                    delta_max: G17(delta_grid.last().copied().unwrap_or(f64::NAN)),
                    points: delta_grid.len(),
                },
                cases: cases.iter().enumerate().map(|(case_id, p)| CaseView { case_id, params: p.into() }).collect(),
                rows: rows.collect(),
                failures: report
                    .failures
                    .iter()
                    .map(|f| FailureView { case_id: f.case_id, message: &f.message })
                    .collect(),
                max_error: G17(report.max_error),
                tolerance: G17(report.tolerance),
                pass: report.pass,
            },
        ),
    }
}

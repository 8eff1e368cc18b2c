use crate::support::{load_kernel, load_table_or_kernel, CliError};
use clap::ValueEnum;
use polarkern::polarization::{
    brute_force_table, compose, doubled_table_closed_form, doubled_table_reduction,
    etable_from_poly, ETable, PolyPb, TableSource,
};
use polarkern::reference;
use serde_json::json;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exhaustive enumeration of the kernel's erasure patterns.
    BruteForce,
    /// Counting closed form for the doubled kernel (needs --inner).
    ClosedForm,
    /// Exact pattern reduction for the doubled kernel (needs --inner).
    Reduction,
    /// Exact polynomial composition outer(x)inner (needs --inner).
    Composition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn run(
    kernel: Option<&Path>,
    method: Method,
    inner: Option<&Path>,
    outer: Option<&Path>,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let mut clamped: Vec<(usize, usize, i64)> = Vec::new();
    let table: ETable = match method {
        Method::BruteForce => {
            let path = kernel.ok_or_else(|| {
                CliError::domain("brute-force needs a kernel file argument")
            })?;
            let k = load_kernel(path)?;
            if !k.is_polarizing() {
                eprintln!("warning: kernel is not polarizing; counts are still well defined");
            }
            brute_force_table(&k)?
        }
        Method::ClosedForm | Method::Reduction => {
            let path = inner.ok_or_else(|| {
                CliError::domain("product methods need --inner (kernel or table)")
            })?;
            let base = load_table_or_kernel(path)?;
            match method {
                Method::ClosedForm => {
                    let raw = polarkern::polarization::doubled_upper_closed_form(&base);
                    clamped = raw.out_of_range;
                    doubled_table_closed_form(&base, true)?
                }
                _ => doubled_table_reduction(&base)?,
            }
        }
        Method::Composition => {
            let path = inner.ok_or_else(|| {
                CliError::domain("composition needs --inner (kernel or table)")
            })?;
            let inner_table = load_table_or_kernel(path)?;
            let outer_table = match outer {
                Some(p) => load_table_or_kernel(p)?,
                None => brute_force_table(&reference::t2())?,
            };
            let composed = compose(
                &PolyPb::from_etable(&outer_table),
                &PolyPb::from_etable(&inner_table),
            );
            etable_from_poly(&composed, TableSource::Composition)?
        }
    };

    let rendered = match format {
        Format::Csv => polarkern::io::etable_to_csv(&table),
        Format::Json => {
            let mut value = serde_json::to_value(&table).expect("table serializes");
            let obj = value.as_object_mut().expect("object");
            obj.insert("conservation".into(), json!(table.conservation()));
            if !clamped.is_empty() {
                obj.insert(
                    "clamped".into(),
                    json!(clamped
                        .iter()
                        .map(|&(i, w, v)| json!({"channel": i, "weight": w, "raw": v}))
                        .collect::<Vec<_>>()),
                );
            }
            format!("{}\n", serde_json::to_string_pretty(&value).expect("valid json"))
        }
    };
    match out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

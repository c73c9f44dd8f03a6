use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use polyasym::verify::VerificationRecord;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Rows of decimal strings under a header.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

struct Row<'a> {
    header: &'a [String],
    cells: &'a [String],
}

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.header.len()))?;
        for (k, v) in self.header.iter().zip(self.cells) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows.len()))?;
        for cells in &self.rows {
            seq.serialize_element(&Row {
                header: &self.header,
                cells,
            })?;
        }
        seq.end()
    }
}

pub enum Output {
    Table(Table),
    Records(Vec<VerificationRecord>),
}

fn records_table(records: &[VerificationRecord]) -> Table {
    let mut t = Table::new(["name", "computed", "reference", "abs_diff", "tolerance", "pass"]);
    for r in records {
        t.push(vec![
            r.name.clone(),
            r.computed.clone(),
            r.reference.clone(),
            r.abs_diff.clone(),
            r.tolerance.clone(),
            r.pass.to_string(),
        ]);
    }
    t
}

fn write_csv<W: Write>(table: &Table, w: W) -> Result<()> {
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    out.write_record(&table.header)?;
    for row in &table.rows {
        out.write_record(row)?;
    }
    out.flush()?;
    Ok(())
}

fn render<W: Write>(output: &Output, format: Format, mut w: W) -> Result<()> {
    match (format, output) {
        (Format::Csv, Output::Table(t)) => write_csv(t, w),
        (Format::Csv, Output::Records(r)) => write_csv(&records_table(r), w),
        (Format::Json, Output::Table(t)) => {
            serde_json::to_writer_pretty(&mut w, t)?;
            writeln!(w)?;
            Ok(())
        }
        (Format::Json, Output::Records(r)) => {
            serde_json::to_writer_pretty(&mut w, r)?;
            writeln!(w)?;
            Ok(())
        }
    }
}

pub fn emit(output: &Output, format: Format, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            let mut buf = io::BufWriter::new(file);
            render(output, format, &mut buf)?;
            buf.flush().with_context(|| format!("cannot write {}", p.display()))?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            render(output, format, &mut lock)
        }
    }
}

use std::io::{self, Write};

use serde_json::Value;

use crate::record::ResultRecord;
use crate::OutputFormat;

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub(crate) fn write_records(records: &[ResultRecord], format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
    match format {
        OutputFormat::Json => {
            for rec in records {
                writeln!(out, "{}", serde_json::to_string(rec)?)?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["command", "inputs", "outputs", "version", "elapsed_ms", "cache_hit"])?;
            for rec in records {
                w.write_record([
                    rec.command.clone(),
                    serde_json::to_string(&rec.inputs)?,
                    serde_json::to_string(&rec.outputs)?,
                    rec.version.clone(),
                    rec.elapsed_ms.to_string(),
                    rec.cache_hit.to_string(),
                ])?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            for rec in records {
                let inputs: Vec<String> = rec.inputs.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
                let cached = if rec.cache_hit { ", cached" } else { "" };
                writeln!(out, "{} {}  ({} ms{cached})", rec.command, inputs.join(" "), rec.elapsed_ms)?;
                let width = rec.outputs.keys().map(String::len).max().unwrap_or(0);
                for (k, v) in &rec.outputs {
                    writeln!(out, "  {k:<width$}  {}", compact(v))?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kv;

    fn sample() -> ResultRecord {
        let mut rec = ResultRecord::new("dyadic", kv!("n" => 3));
        rec.outputs = kv!("raw_count" => 49152, "note" => "a, \"quoted\" value");
        rec
    }

    #[test]
    fn csv_quotes_json_columns() {
        let mut buf = Vec::new();
        write_records(&[sample()], OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let row = reader.records().next().unwrap().unwrap();
        let outputs: serde_json::Value = serde_json::from_str(&row[2]).unwrap();
        assert_eq!(outputs["raw_count"], 49152);
        assert_eq!(outputs["note"], "a, \"quoted\" value");
    }

    #[test]
    fn table_lists_outputs() {
        let mut buf = Vec::new();
        write_records(&[sample()], OutputFormat::Table, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("dyadic n=3"));
        assert!(text.contains("raw_count  49152"));
    }
}

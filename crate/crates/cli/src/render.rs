//! Level output in text, JSON and CSV, and the verification table.

use std::io::Write;

use cwkit_core::tree::level_iter;
use cwkit_core::verify::{Status, VerifyReport};

use crate::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LevelFormat {
    Text,
    Json,
    Csv,
}

/// Streams level `n`; nothing is held beyond the iterator's spine.
pub fn write_level(out: &mut impl Write, n: u32, format: LevelFormat) -> CliResult<()> {
    match format {
        LevelFormat::Text => {
            for (i, r) in level_iter(n).enumerate() {
                if i > 0 {
                    out.write_all(b" ")?;
                }
                write!(out, "{r}")?;
            }
            writeln!(out)?;
        }
        LevelFormat::Json => {
            let count = 1u64 << (n - 1);
            write!(out, "{{\"level\":{n},\"count\":{count},\"fractions\":[")?;
            for (i, r) in level_iter(n).enumerate() {
                if i > 0 {
                    out.write_all(b",")?;
                }
                serde_json::to_writer(&mut *out, &r)?;
            }
            writeln!(out, "]}}")?;
        }
        LevelFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["level", "position", "num", "den"])?;
            let level = n.to_string();
            for (i, r) in level_iter(n).enumerate() {
                let position = (i + 1).to_string();
                w.write_record([
                    level.as_str(),
                    position.as_str(),
                    &r.num().to_string(),
                    &r.den().to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn verify_table(report: &VerifyReport) -> String {
    let width = report
        .checks
        .iter()
        .map(|c| c.name.len())
        .max()
        .unwrap_or(0);
    let mut s = format!("depth {}\n", report.depth);
    for c in &report.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        s.push_str(&format!(
            "{:<width$}  {status}  {:>10}",
            c.name, c.instances
        ));
        if let Some(ce) = &c.counterexample {
            s.push_str(&format!("  {ce}"));
        }
        s.push('\n');
    }
    let failed = report
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .count();
    s.push_str(&format!(
        "{} checks, {failed} failed\n",
        report.checks.len()
    ));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(n: u32, format: LevelFormat) -> String {
        let mut buf = Vec::new();
        write_level(&mut buf, n, format).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn text_rows() {
        assert_eq!(render(1, LevelFormat::Text), "1/1\n");
        assert_eq!(render(3, LevelFormat::Text), "1/3 3/2 2/3 3/1\n");
    }

    #[test]
    fn json_shape() {
        assert_eq!(
            render(2, LevelFormat::Json),
            "{\"level\":2,\"count\":2,\"fractions\":[{\"num\":\"1\",\"den\":\"2\"},{\"num\":\"2\",\"den\":\"1\"}]}\n"
        );
    }

    #[test]
    fn csv_rows() {
        let s = render(2, LevelFormat::Csv);
        assert_eq!(s, "level,position,num,den\n2,1,1,2\n2,2,2,1\n");
    }
}

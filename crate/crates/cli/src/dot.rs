//! Graphviz export of the tree, the diagonal tree and its `?` image.
//!
//! Node IDs are breadth-first ranks for the tree and diagonal indices for
//! the other two, so renderings at different depths share a prefix.

use std::io::Write;

use cwkit_core::diagonal::diagonal;
use cwkit_core::qmark::qmark_diagonal_map;
use cwkit_core::tree::level_iter;

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DotKind {
    Tree,
    Diagonals,
    QmarkDiagonals,
}

impl DotKind {
    fn graph_name(self) -> &'static str {
        match self {
            DotKind::Tree => "cw_tree",
            DotKind::Diagonals => "diagonals",
            DotKind::QmarkDiagonals => "qmark_diagonals",
        }
    }
}

fn node(out: &mut impl Write, id: u64, label: &str) -> std::io::Result<()> {
    writeln!(out, "  {id} [label=\"{label}\"];")
}

/// `depth` levels of the tree, or for the diagonal kinds the `L1` stem plus
/// `depth` levels of the binary tree rooted at `L2` (`L1..=L_(2^depth)`).
pub fn write_dot(out: &mut impl Write, kind: DotKind, depth: u32) -> CliResult<()> {
    if depth == 0 || depth > 63 {
        return Err(CliError::Usage(format!(
            "depth must be in 1..=63, got {depth}"
        )));
    }
    writeln!(out, "graph {} {{", kind.graph_name())?;
    writeln!(out, "  node [shape=plaintext];")?;
    match kind {
        DotKind::Tree => {
            for n in 1..=depth {
                let base = 1u64 << (n - 1);
                for (i, r) in level_iter(n).enumerate() {
                    node(out, base + i as u64, &r.to_string())?;
                }
            }
            for k in 1..(1u64 << (depth - 1)) {
                writeln!(out, "  {k} -- {};", 2 * k)?;
                writeln!(out, "  {k} -- {};", 2 * k + 1)?;
            }
        }
        DotKind::Diagonals | DotKind::QmarkDiagonals => {
            let last = 1u64 << depth;
            for i in 1..=last {
                let label = if kind == DotKind::Diagonals {
                    diagonal(i)?.label()
                } else {
                    qmark_diagonal_map(i)?.label()
                };
                node(out, i, &label)?;
            }
            writeln!(out, "  1 -- 2;")?;
            for m in 2..=last / 2 {
                writeln!(out, "  {m} -- {};", 2 * m - 1)?;
                writeln!(out, "  {m} -- {};", 2 * m)?;
            }
        }
    }
    writeln!(out, "}}")?;
    Ok(())
}

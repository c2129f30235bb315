//! Export of configurations as XOR constraint systems in DIMACS-style
//! format.
//!
//! Each context becomes one `x` clause over the three local point
//! variables (1-based). Writing values ±1 as bits via v = (-1)^b turns a
//! context product constraint into an XOR of the three bits: a context
//! with expected sign -1 requires odd parity, `x a b c 0`, and one with
//! expected sign +1 requires even parity, which DIMACS XOR notation
//! spells by negating one literal, `x -a b c 0`. The minimum number of
//! falsified clauses over all bit assignments equals the configuration's
//! degree of contextuality.

use std::io::Write;
use std::path::Path;

use crate::config::Configuration;
use crate::error::Result;
use crate::records::POINT_ORDER_RULE;

/// Writes a configuration as an XOR system, with header comments
/// recording the qubit count, the geometry label, and the point ordering
/// that defines the variable numbering.
pub fn write_xor_cnf(
    mut out: impl Write,
    config: &Configuration,
    geometry_label: &str,
) -> Result<()> {
    writeln!(out, "c qubits {}", config.n_qubits())?;
    writeln!(out, "c geometry {geometry_label}")?;
    writeln!(out, "c variable v is point v-1 of the configuration")?;
    writeln!(out, "c point order: {POINT_ORDER_RULE}")?;
    writeln!(
        out,
        "p cnf {} {}",
        config.point_count(),
        config.context_count()
    )?;
    for c in 0..config.context_count() {
        let mut triple = config.context(c);
        triple.sort_unstable();
        let [a, b, c_] = triple.map(|pt| pt + 1);
        if config.expected_sign(c) == -1 {
            writeln!(out, "x {a} {b} {c_} 0")?;
        } else {
            writeln!(out, "x -{a} {b} {c_} 0")?;
        }
    }
    Ok(())
}

/// [`write_xor_cnf`] into a string.
pub fn xor_cnf_string(config: &Configuration, geometry_label: &str) -> Result<String> {
    let mut buffer = Vec::new();
    write_xor_cnf(&mut buffer, config, geometry_label)?;
    Ok(String::from_utf8(buffer).expect("export writes UTF-8 only"))
}

/// [`write_xor_cnf`] into a file.
pub fn export_xor_cnf(
    path: impl AsRef<Path>,
    config: &Configuration,
    geometry_label: &str,
) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_xor_cnf(std::io::BufWriter::new(file), config, geometry_label)
}

//! Writes the benchmark corpus as OpenQASM files.
//!
//! Usage: gen_corpus [DIR]   (default: corpus)

use std::path::PathBuf;
use std::{env, fs, io};

fn main() -> io::Result<()> {
    let dir = PathBuf::from(env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    fs::create_dir_all(&dir)?;
    for e in zxgopt_bench::corpus() {
        let path = dir.join(format!("{}.qasm", e.name));
        fs::write(&path, zxgopt::emit_qasm(&e.circuit))?;
        println!(
            "{:<16} {:>3} qubits {:>4} gates {:>4} two-qubit",
            e.name,
            e.circuit.n_qubits(),
            e.circuit.len(),
            e.circuit.two_qubit_count()
        );
    }
    Ok(())
}

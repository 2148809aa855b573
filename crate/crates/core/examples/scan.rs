//! Sweeps ε and writes the scan table as CSV to stdout.

use advice_games::cli::{scan_rows, write_scan_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = scan_rows(0.0, 0.75, 0.05)?;
    write_scan_csv(&rows, std::io::stdout().lock())?;
    Ok(())
}

//! `regions`: write sampled region curves as CSV files.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::process::ExitCode;

use bargmann::regions::sample_curves;

pub fn run(orders: &[usize], resolution: usize, out: &Path) -> ExitCode {
    let orders: Vec<usize> =
        if orders.is_empty() { vec![3, 6, 10, 40] } else { orders.to_vec() };
    if let Some(bad) = orders.iter().find(|&&n| n < 3) {
        eprintln!("error: region curves need n >= 3, got {bad}");
        return ExitCode::from(2);
    }
    if resolution < 2 {
        eprintln!("error: resolution must be at least 2");
        return ExitCode::from(2);
    }
    if let Err(e) = std::fs::create_dir_all(out) {
        eprintln!("error: cannot create {}: {e}", out.display());
        return ExitCode::from(2);
    }

    let mut written = Vec::new();
    for &n in &orders {
        for curve in sample_curves(n, resolution) {
            let path = out.join(format!("{}_n{}.csv", curve.curve_id.as_str(), n));
            let file = match File::create(&path) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: cannot create {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            if let Err(e) = curve.write_csv(BufWriter::new(file)) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            eprintln!("wrote {}", path.display());
            written.push(path.display().to_string());
        }
    }
    let list: Vec<String> = written.iter().map(|p| format!("\"{p}\"")).collect();
    println!("{{\"written\":[{}]}}", list.join(","));
    ExitCode::SUCCESS
}

//! Result emission: JSON (full nested result), CSV summaries, eigenvalue
//! dumps, and radial histograms. Floats use 17 significant digits so parsing
//! reproduces them bit-exactly.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{ExperimentResult, OutputFormat};

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(path: &Path, contents: &str) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut file = fs::File::create(path)?;
    file.write_all(contents.as_bytes())
}

/// Write the result under `out_dir`; returns the paths written.
///
/// JSON mode writes `result.json`; CSV mode writes `summary.csv`,
/// `annuli.csv`, and (when present) `potential.csv`. Eigenvalue dumps and
/// radial histograms are written per cell in both modes when the run
/// collected them.
pub fn emit(
    result: &ExperimentResult,
    format: OutputFormat,
    out_dir: &Path,
) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();

    match format {
        OutputFormat::Json => {
            let path = out_dir.join("result.json");
            let mut text =
                serde_json::to_string_pretty(result).expect("result serializes: no NaN fields");
            text.push('\n');
            write_file(&path, &text)?;
            written.push(path);
        }
        OutputFormat::Csv => {
            let mut summary = String::from("experiment,n,k,statistic,value\n");
            let mut annuli = String::from(
                "experiment,n,k,r_lo,r_hi,empirical_mass,theoretical_mass\n",
            );
            let mut potential =
                String::from("experiment,n,k,z_re,z_im,empirical,theoretical,gap\n");
            let mut have_potential = false;
            let name = &result.config.name;
            for cell in &result.cells {
                let prefix = format!("{name},{},{}", cell.n, cell.k);
                summary.push_str(&format!(
                    "{prefix},discarded_trials,{}\n",
                    cell.discarded_trials
                ));
                if let Some(fit) = &cell.fit {
                    summary.push_str(&format!("{prefix},sample_count,{}\n", fit.sample_count));
                    summary.push_str(&format!(
                        "{prefix},ks_radial,{}\n",
                        fmt_f64(fit.ks_radial)
                    ));
                    summary.push_str(&format!(
                        "{prefix},angular_ks,{}\n",
                        fmt_f64(fit.angular_ks)
                    ));
                    for row in &fit.annulus_table {
                        let r_hi = row.r_hi.map_or_else(|| "inf".to_string(), fmt_f64);
                        annuli.push_str(&format!(
                            "{prefix},{},{r_hi},{},{}\n",
                            fmt_f64(row.r_lo),
                            fmt_f64(row.empirical_mass),
                            fmt_f64(row.theoretical_mass)
                        ));
                    }
                }
                if let Some(rows) = &cell.potential {
                    have_potential = true;
                    for row in rows {
                        potential.push_str(&format!(
                            "{prefix},{},{},{},{},{}\n",
                            fmt_f64(row.z.0),
                            fmt_f64(row.z.1),
                            fmt_f64(row.empirical),
                            fmt_f64(row.theoretical),
                            fmt_f64(row.gap)
                        ));
                    }
                }
            }
            let summary_path = out_dir.join("summary.csv");
            write_file(&summary_path, &summary)?;
            written.push(summary_path);
            let annuli_path = out_dir.join("annuli.csv");
            write_file(&annuli_path, &annuli)?;
            written.push(annuli_path);
            if have_potential {
                let path = out_dir.join("potential.csv");
                write_file(&path, &potential)?;
                written.push(path);
            }
        }
    }

    for cell in &result.cells {
        if cell.pooled_atoms.is_empty() {
            continue;
        }
        let mut dump = String::from("re,im\n");
        for atom in &cell.pooled_atoms {
            dump.push_str(&format!("{},{}\n", fmt_f64(atom.re), fmt_f64(atom.im)));
        }
        let dump_path = out_dir.join(format!("eigenvalues_{}x{}.csv", cell.n, cell.k));
        write_file(&dump_path, &dump)?;
        written.push(dump_path);

        let hist_path = out_dir.join(format!("hist_{}x{}.csv", cell.n, cell.k));
        write_file(&hist_path, &radial_histogram(&cell.pooled_atoms, 50))?;
        written.push(hist_path);
    }

    Ok(written)
}

fn radial_histogram(atoms: &[num_complex::Complex64], bins: usize) -> String {
    let max_r = atoms.iter().map(|a| a.norm()).fold(0.0f64, f64::max);
    let width = if max_r > 0.0 { max_r / bins as f64 } else { 1.0 };
    let mut counts = vec![0usize; bins];
    for atom in atoms {
        let idx = ((atom.norm() / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let mut out = String::from("bin_lo,bin_hi,count\n");
    for (i, count) in counts.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(i as f64 * width),
            fmt_f64((i + 1) as f64 * width),
            count
        ));
    }
    out
}

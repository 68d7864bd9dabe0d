use std::io::Write;

/// Smallest value written to plot files; zeros would break log axes.
pub const PLOT_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSeries {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

/// Gnuplot data: a comment header, then one block per series introduced by
/// `# series: <name>` and separated from the next by two blank lines (so
/// `index` addresses it). Values at or below zero are written as
/// [`PLOT_FLOOR`] and counted in a trailing `# clamped` line.
pub fn emit_plot_data<W: Write>(
    series: &[PlotSeries],
    header: &str,
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "{header}")?;
    writeln!(out, "# columns: t value")?;
    for (k, s) in series.iter().enumerate() {
        if k > 0 {
            writeln!(out)?;
            writeln!(out)?;
        }
        writeln!(out, "# series: {}", s.name)?;
        let mut clamped = 0usize;
        for &(x, y) in &s.points {
            let v = if y > 0.0 {
                y
            } else {
                clamped += 1;
                PLOT_FLOOR
            };
            writeln!(out, "{x} {v:.16e}")?;
        }
        if clamped > 0 {
            writeln!(
                out,
                "# clamped {clamped} nonpositive values to {PLOT_FLOOR:e}"
            )?;
        }
    }
    Ok(())
}

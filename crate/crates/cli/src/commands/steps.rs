use chebstep::linalg::Spectrum;

use super::{chgd_schedule, emit, load_problem};
use crate::config::ExperimentConfig;
use crate::error::CliResult;

/// Schedule file text: provenance, an optional `# permutation` line, then
/// the schedule in the library's file format.
pub fn render_steps(cfg: &ExperimentConfig) -> CliResult<String> {
    let (lo, hi) = match cfg.interval() {
        Some(iv) => iv,
        None => {
            let s: Spectrum = load_problem(cfg)?.spectrum()?;
            (s.lambda_min(), s.lambda_max())
        }
    };
    let (schedule, search) = chgd_schedule(cfg, lo, hi)?;
    let mut buf = Vec::new();
    buf.extend_from_slice(cfg.provenance("steps").as_bytes());
    buf.push(b'\n');
    if let Some(s) = &search {
        let p = &s.permutation;
        buf.extend_from_slice(
            format!(
                "# permutation a={} b={} c={} objective={:.16e}\n",
                p.a, p.b, p.c, s.objective
            )
            .as_bytes(),
        );
    }
    schedule.write_to(&mut buf)?;
    Ok(String::from_utf8(buf).expect("ASCII output"))
}

pub fn cmd_steps(cfg: &ExperimentConfig) -> CliResult<()> {
    let text = render_steps(cfg)?;
    emit(cfg.out.as_deref(), text.as_bytes())
}

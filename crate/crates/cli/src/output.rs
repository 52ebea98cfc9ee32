use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};
use tduality::oracle::{PhasePoint, Sample, SystemId, Trajectory};

use crate::error::{CliError, CliResult};

/// Column names for a system; `toda` and `r2` share a layout.
pub fn columns(system: &SystemId) -> &'static [&'static str] {
    match system {
        SystemId::R2(_) => &["t", "q", "p", "energy", "j1", "j2", "j3"],
        SystemId::TB => &["t", "a", "b", "c", "eta_e", "eta_et", "eta_h", "energy", "j1", "j2", "j3"],
        SystemId::TSU2 { .. } => &[
            "t", "re_alpha", "im_alpha", "re_beta", "im_beta", "eta1", "eta2", "eta3", "energy", "j1", "j2", "j3",
        ],
        SystemId::Orbit { .. } => &["t", "j1", "j2", "j3", "energy"],
    }
}

pub fn row(sample: &Sample) -> Vec<f64> {
    let j = sample.momentum_image;
    let mut out = vec![sample.t];
    match sample.state {
        PhasePoint::Orbit(_) => {
            out.extend([j.a1, j.a2, j.a3, sample.energy]);
        }
        state => {
            out.extend(state.coords());
            out.extend([sample.energy, j.a1, j.a2, j.a3]);
        }
    }
    out
}

/// Seventeen significant digits, enough to read every value back exactly.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_csv(traj: &Trajectory, deviation: Option<&[f64]>) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = columns(&traj.system).to_vec();
    if deviation.is_some() {
        header.push("deviation");
    }
    w.write_record(&header).map_err(csv_error)?;
    for (i, sample) in traj.samples.iter().enumerate() {
        let mut fields: Vec<String> = row(sample).into_iter().map(format_real).collect();
        if let Some(dev) = deviation {
            fields.push(format_real(dev[i]));
        }
        w.write_record(&fields).map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| CliError::Input(format!("csv: {e}")))
}

pub fn to_json(system_name: &str, method_name: &str, traj: &Trajectory, deviation: Option<&[f64]>) -> CliResult<Vec<u8>> {
    let names = columns(&traj.system);
    let samples: Vec<Value> = traj
        .samples
        .iter()
        .enumerate()
        .map(|(i, sample)| {
            let mut obj = Map::new();
            for (name, value) in names.iter().zip(row(sample)) {
                obj.insert((*name).to_string(), Value::from(value));
            }
            if let Some(dev) = deviation {
                obj.insert("deviation".to_string(), Value::from(dev[i]));
            }
            Value::Object(obj)
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("system".into(), Value::from(system_name));
    doc.insert("method".into(), Value::from(method_name));
    doc.insert("columns".into(), Value::from(names.to_vec()));
    doc.insert("samples".into(), Value::Array(samples));
    let mut bytes = serde_json::to_vec_pretty(&Value::Object(doc)).expect("values are finite");
    bytes.push(b'\n');
    Ok(bytes)
}

/// Reads a trajectory written by [`to_csv`] back into memory.
pub fn read_csv(system: &SystemId, method: tduality::oracle::Method, data: &[u8]) -> CliResult<Trajectory> {
    let mut r = csv::Reader::from_reader(data);
    let header = r.headers().map_err(csv_error)?.clone();
    let names = columns(system);
    if header.len() < names.len() || header.iter().zip(names).any(|(a, b)| a != *b) {
        return Err(CliError::Input(format!("unexpected header {:?}", header)));
    }
    let state_range = match system {
        SystemId::Orbit { .. } => 1..4,
        _ => 1..names.len() - 4,
    };
    let mut samples = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_error)?;
        let values = record
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| CliError::Input(format!("bad number `{s}`: {e}"))))
            .collect::<CliResult<Vec<f64>>>()?;
        let state = PhasePoint::from_coords(system, &values[state_range.clone()])?;
        samples.push(Sample::new(system, values[0], state)?);
    }
    if samples.is_empty() {
        return Err(CliError::Input("trajectory file has no samples".into()));
    }
    let step = if samples.len() > 1 { samples[1].t - samples[0].t } else { 0.0 };
    Ok(Trajectory { system: *system, method, step, projection_shift: 0.0, samples })
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Input(format!("csv: {e}"))
}

/// Writes to `path` through a temporary file in the same directory, or to
/// stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(bytes)?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| CliError::Input(format!("cannot write {}: {}", path.display(), e.error)))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use tduality::oracle::{exact_trajectory, residual_report, uniform_grid, Method};
    use tduality::phase::{R2Params, R2Pt, TBPt};
    use tduality::{BCov, BEl, Su2Vec};

    #[test]
    fn csv_round_trip_reproduces_the_residual_report() {
        let system = SystemId::R2(R2Params::toda());
        let start = PhasePoint::R2(R2Pt::new(-0.5 * std::f64::consts::LN_2, 0.0));
        let traj = exact_trajectory(&system, &start, &uniform_grid(0.0, 2.0, 200)).unwrap();
        let bytes = to_csv(&traj, None).unwrap();
        let back = read_csv(&system, Method::Exact, &bytes).unwrap();
        assert_eq!(back.samples, traj.samples);
        let a = residual_report(&traj, &system).unwrap();
        let b = residual_report(&back, &system).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tb_and_orbit_layouts_round_trip() {
        let x = Su2Vec::new(0.6, 0.0, 0.8);
        let tb = TBPt { bel: BEl::new(1.2, 0.3, -0.4).unwrap(), eta: BCov::new(-0.5, 0.2, 1.0) };
        let cases = [
            (SystemId::TB, PhasePoint::TB(tb)),
            (SystemId::Orbit { theta: 0.0 }, PhasePoint::Orbit(x)),
        ];
        for (system, start) in cases {
            let traj = exact_trajectory(&system, &start, &uniform_grid(0.0, 1.0, 10)).unwrap();
            let back = read_csv(&system, Method::Exact, &to_csv(&traj, None).unwrap()).unwrap();
            assert_eq!(back.samples, traj.samples);
        }
    }

    #[test]
    fn json_mirrors_the_columns() {
        let system = SystemId::Orbit { theta: 0.0 };
        let traj = exact_trajectory(&system, &PhasePoint::Orbit(Su2Vec::X3), &uniform_grid(0.0, 1.0, 2)).unwrap();
        let doc: Value = serde_json::from_slice(&to_json("orbit", "exact", &traj, Some(&[0.0, 0.0, 0.0])).unwrap()).unwrap();
        let first = doc["samples"][0].as_object().unwrap();
        let keys: Vec<&str> = first.keys().map(String::as_str).collect();
        assert_eq!(keys, ["t", "j1", "j2", "j3", "energy", "deviation"]);
        assert_eq!(doc["method"], "exact");
    }

    #[test]
    fn reals_keep_seventeen_digits() {
        let x = 0.1 + 0.2;
        assert_eq!(format_real(x).parse::<f64>().unwrap(), x);
    }
}

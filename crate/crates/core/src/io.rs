//! CSV, JSON and checkpoint serialization.
//!
//! Floats are written in shortest round-trip scientific notation, so every
//! value parses back to the same bits and equal inputs give equal bytes.

use std::io::{Read, Write};

use num_complex::{Complex32, Complex64};
use serde::{Deserialize, Serialize};

use crate::dynamics::CoefficientTrace;
use crate::error::{Error, Result};
use crate::field::{DetectorTrace, Spectrogram};
use crate::lattice::{FieldState, LatticeConfig, SnapshotPoint};
use crate::params::SimParams;
use crate::thermo::SweepTable;

pub const TRACE_HEADER: [&str; 6] = ["t", "pe", "omega_s", "gamma_t", "w_flux", "q_flux"];
pub const DETECTOR_HEADER: [&str; 5] = ["t", "re_amp", "im_amp", "intensity", "eff_color"];
pub const SWEEP_HEADER: [&str; 6] = ["delta_lw", "detuning", "w_net", "q_net", "max_pe", "quad_error"];
pub const SPECTROGRAM_HEADER: [&str; 3] = ["window_center_time", "frequency", "power"];
pub const PEAK_HEADER: [&str; 2] = ["t_center", "peak_freq"];
pub const SNAPSHOT_HEADER: [&str; 4] = ["x", "channel", "re", "im"];

pub fn fmt(x: f64) -> String {
    format!("{x:e}")
}

fn write_rows<W: Write, I>(out: W, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<f64>>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.into_iter().map(fmt))?;
    }
    w.flush()?;
    Ok(())
}

fn read_rows<R: Read>(input: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_reader(input);
    let got: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if got != header {
        return Err(Error::Parse(format!("unexpected CSV header {got:?}, want {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| Error::Parse(format!("bad number {s:?}: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_trace_csv<W: Write>(out: W, tr: &CoefficientTrace) -> Result<()> {
    write_rows(
        out,
        &TRACE_HEADER,
        (0..tr.len()).map(|i| vec![tr.times[i], tr.pe[i], tr.omega_s[i], tr.gamma_t[i], tr.w_flux[i], tr.q_flux[i]]),
    )
}

/// Inverse of [`write_trace_csv`]; pole flags are restored from NaN ω_s.
pub fn read_trace_csv<R: Read>(input: R) -> Result<CoefficientTrace> {
    let rows = read_rows(input, &TRACE_HEADER)?;
    let col = |k: usize| rows.iter().map(|r| r[k]).collect::<Vec<f64>>();
    let omega_s = col(2);
    Ok(CoefficientTrace {
        times: col(0),
        pe: col(1),
        pole: omega_s.iter().map(|w| w.is_nan()).collect(),
        omega_s,
        gamma_t: col(3),
        w_flux: col(4),
        q_flux: col(5),
    })
}

pub fn write_detector_csv<W: Write>(out: W, tr: &DetectorTrace) -> Result<()> {
    write_rows(
        out,
        &DETECTOR_HEADER,
        (0..tr.times.len()).map(|i| {
            vec![tr.times[i], tr.amp_b[i].re, tr.amp_b[i].im, tr.intensity[i], tr.eff_color[i]]
        }),
    )
}

pub fn write_sweep_csv<W: Write>(out: W, table: &SweepTable) -> Result<()> {
    write_rows(
        out,
        &SWEEP_HEADER,
        table
            .rows
            .iter()
            .map(|r| vec![r.delta_lw, r.detuning, r.w_net, r.q_net, r.max_pe, r.quad_error]),
    )
}

/// Rows of a sweep CSV as `(delta_lw, detuning, w_net, q_net, max_pe, quad_error)`.
pub fn read_sweep_csv<R: Read>(input: R) -> Result<Vec<[f64; 6]>> {
    Ok(read_rows(input, &SWEEP_HEADER)?
        .into_iter()
        .map(|r| [r[0], r[1], r[2], r[3], r[4], r[5]])
        .collect())
}

/// Long format, one line per (window, frequency).
pub fn write_spectrogram_csv<W: Write>(out: W, sp: &Spectrogram) -> Result<()> {
    write_rows(
        out,
        &SPECTROGRAM_HEADER,
        sp.centers.iter().zip(&sp.power).flat_map(|(&c, row)| {
            sp.frequencies.iter().zip(row).map(move |(&f, &p)| vec![c, f, p])
        }),
    )
}

pub fn write_peak_track_csv<W: Write>(out: W, sp: &Spectrogram) -> Result<()> {
    write_rows(out, &PEAK_HEADER, sp.centers.iter().zip(&sp.peaks).map(|(&c, &f)| vec![c, f]))
}

pub fn write_snapshot_csv<W: Write>(out: W, points: &[SnapshotPoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SNAPSHOT_HEADER)?;
    for (channel, pick) in [("a", 0), ("b", 1)] {
        for p in points {
            let z = if pick == 0 { p.phi_a } else { p.phi_b };
            w.write_record([fmt(p.x), channel.to_owned(), fmt(z.re), fmt(z.im)])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

const CHECKPOINT_MAGIC: &[u8; 8] = b"PWLATCK1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckpointHeader {
    config: LatticeConfig,
    params: SimParams,
    time: f64,
    psi: [f64; 2],
    n_modes: usize,
}

/// Lattice checkpoint: magic, u32 header length, JSON header, then φ_a and
/// φ_b as little-endian complex64 (two f32 each).
pub fn write_checkpoint<W: Write>(mut out: W, state: &FieldState, config: &LatticeConfig, params: &SimParams) -> Result<()> {
    let header = CheckpointHeader {
        config: *config,
        params: *params,
        time: state.time,
        psi: [state.psi.re, state.psi.im],
        n_modes: state.phi_a.len(),
    };
    let json = serde_json::to_vec(&header)?;
    let len = u32::try_from(json.len()).map_err(|_| Error::Checkpoint("header too large".into()))?;
    out.write_all(CHECKPOINT_MAGIC)?;
    out.write_all(&len.to_le_bytes())?;
    out.write_all(&json)?;
    let mut buf = Vec::with_capacity(16 * state.phi_a.len());
    for z in state.phi_a.iter().chain(&state.phi_b) {
        let z = Complex32::new(z.re as f32, z.im as f32);
        buf.extend_from_slice(&z.re.to_le_bytes());
        buf.extend_from_slice(&z.im.to_le_bytes());
    }
    out.write_all(&buf)?;
    Ok(())
}

/// Inverse of [`write_checkpoint`]. Mode amplitudes come back at f32 precision.
pub fn read_checkpoint<R: Read>(mut input: R) -> Result<(FieldState, LatticeConfig, SimParams)> {
    let mut magic = [0u8; 8];
    input.read_exact(&mut magic)?;
    if &magic != CHECKPOINT_MAGIC {
        return Err(Error::Checkpoint("not a lattice checkpoint".into()));
    }
    let mut len = [0u8; 4];
    input.read_exact(&mut len)?;
    let mut json = vec![0u8; u32::from_le_bytes(len) as usize];
    input.read_exact(&mut json)?;
    let h: CheckpointHeader = serde_json::from_slice(&json)?;
    if h.n_modes != h.config.n_modes {
        return Err(Error::Checkpoint(format!(
            "header lists {} modes but config has {}",
            h.n_modes, h.config.n_modes
        )));
    }
    let mut raw = vec![0u8; 16 * h.n_modes];
    input.read_exact(&mut raw).map_err(|e| Error::Checkpoint(format!("truncated mode data: {e}")))?;
    let mut trailing = [0u8; 1];
    if input.read(&mut trailing)? != 0 {
        return Err(Error::Checkpoint("trailing bytes after mode data".into()));
    }
    let f = |k: usize| f32::from_le_bytes(raw[4 * k..4 * k + 4].try_into().expect("4-byte slice")) as f64;
    let modes: Vec<Complex64> = (0..2 * h.n_modes).map(|i| Complex64::new(f(2 * i), f(2 * i + 1))).collect();
    let (a, b) = modes.split_at(h.n_modes);
    Ok((
        FieldState {
            psi: Complex64::new(h.psi[0], h.psi[1]),
            phi_a: a.to_vec(),
            phi_b: b.to_vec(),
            time: h.time,
        },
        h.config,
        h.params,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{coefficient_trace, Scattering};
    use crate::lattice::init_exponential_packet;
    use crate::params::uniform_grid;

    #[test]
    fn trace_round_trip_is_bit_exact() {
        let p = SimParams::new(1.0, 1.0, 2.0);
        let grid = uniform_grid(0.01, 20.0, 500);
        let tr = coefficient_trace(&Scattering(p), &grid).unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &tr).unwrap();
        let back = read_trace_csv(buf.as_slice()).unwrap();
        assert_eq!(back.times, tr.times);
        assert_eq!(back.pe, tr.pe);
        assert_eq!(back.w_flux, tr.w_flux);
        assert_eq!(back.pole, tr.pole);
        for (a, b) in back.omega_s.iter().zip(&tr.omega_s) {
            assert!(a == b || (a.is_nan() && b.is_nan()));
        }
    }

    #[test]
    fn header_mismatch_is_rejected() {
        let csv = "t,pe\n1,2\n";
        assert!(read_trace_csv(csv.as_bytes()).is_err());
    }

    #[test]
    fn checkpoint_round_trip() {
        let p = SimParams::new(1.0, 1.0, 0.5);
        let cfg = LatticeConfig::sized(1000.0, 5.0);
        let st = init_exponential_packet(&cfg, &p).unwrap();
        let mut buf = Vec::new();
        write_checkpoint(&mut buf, &st, &cfg, &p).unwrap();
        assert_eq!(&buf[..8], CHECKPOINT_MAGIC);
        let (back, cfg2, p2) = read_checkpoint(buf.as_slice()).unwrap();
        assert_eq!(cfg2, cfg);
        assert_eq!(p2, p);
        assert_eq!(back.time, st.time);
        for (a, b) in back.phi_a.iter().zip(&st.phi_a) {
            assert!((a - b).norm() <= 1e-7 * b.norm().max(1e-30));
        }
        buf.truncate(buf.len() - 3);
        assert!(matches!(read_checkpoint(buf.as_slice()), Err(Error::Checkpoint(_))));
    }
}

use serde_json::{json, Value};

use crate::dynamics::Vec3;
use crate::rigid::ScrewMotion;

pub const TRACK_HEADER: &str = "t,fx,fy,fz,bx,by,bz,kappa,tau";

/// One row of a track file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackRow {
    pub t: f64,
    pub front: Vec3,
    pub back: Vec3,
    pub kappa: f64,
    pub tau: f64,
}

/// 17 significant digits.
pub(crate) fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) fn write_track_csv(rows: &[TrackRow]) -> String {
    let mut s = String::with_capacity(rows.len() * 220);
    s.push_str(TRACK_HEADER);
    s.push('\n');
    for r in rows {
        let fields = [
            r.t, r.front.x, r.front.y, r.front.z, r.back.x, r.back.y, r.back.z, r.kappa, r.tau,
        ];
        let line: Vec<String> = fields.iter().map(|v| fmt_float(*v)).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}

/// Parses a track file written by `simulate` or `closed-form`.
pub fn read_track_csv(text: &str) -> Result<Vec<TrackRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == TRACK_HEADER => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<f64> = line
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| format!("row {}: {e}", i + 1))?;
            if f.len() != 9 {
                return Err(format!(
                    "row {}: expected 9 fields, found {}",
                    i + 1,
                    f.len()
                ));
            }
            Ok(TrackRow {
                t: f[0],
                front: Vec3::new(f[1], f[2], f[3]),
                back: Vec3::new(f[4], f[5], f[6]),
                kappa: f[7],
                tau: f[8],
            })
        })
        .collect()
}

pub(crate) fn point_json(v: &Vec3) -> Value {
    json!([v.x, v.y, v.z])
}

pub(crate) fn screw_json(s: &ScrewMotion, rms: f64) -> Value {
    json!({
        "dtheta": s.delta_theta,
        "dz": s.delta_z,
        "axis_point": point_json(&s.axis_point),
        "axis_dir": point_json(&s.axis_dir),
        "residual": rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_exact() {
        let rows = vec![
            TrackRow {
                t: 0.1,
                front: Vec3::new(1.0 / 3.0, -2.0e-300, 7.0e12),
                back: Vec3::new(f64::MIN_POSITIVE, -0.0, 1.0 - f64::EPSILON),
                kappa: std::f64::consts::PI,
                tau: -1.0e-17,
            },
            TrackRow {
                t: 0.2,
                front: Vec3::zeros(),
                back: Vec3::new(1.0, 2.0, 3.0),
                kappa: 0.0,
                tau: 0.5,
            },
        ];
        let text = write_track_csv(&rows);
        assert!(text.starts_with("t,fx,fy,fz,bx,by,bz,kappa,tau\n"));
        assert_eq!(read_track_csv(&text).unwrap(), rows);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(read_track_csv("t,x\n").is_err());
        assert!(read_track_csv(&format!("{TRACK_HEADER}\n1,2,3\n")).is_err());
        assert!(read_track_csv(&format!("{TRACK_HEADER}\n1,2,3,4,5,6,7,8,x\n")).is_err());
    }
}

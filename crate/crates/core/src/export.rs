//! File formats: CSV for grids and profiles, OBJ and binary PLY for meshes.
//!
//! Floats are written with 17 significant digits so they round-trip exactly.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::revolution::{ArcLengthProfile, ProfileCurve, RevolutionMesh};
use crate::sweep::{RowStatus, SweepRow};
use crate::verify::MetricGrid;

/// `x` with 17 significant digits, or the empty string for NaN.
pub fn float17(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:.16e}")
    }
}

fn csv_err(e: csv::Error) -> Error {
    if e.is_io_error() {
        Error::Io(e.to_string())
    } else {
        Error::Malformed(e.to_string())
    }
}

/// Columns `u, v, lambda, K, residual`; residual empty where unset.
pub fn write_grid_csv<W: Write>(w: W, grid: &MetricGrid) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["u", "v", "lambda", "K", "residual"]).map_err(csv_err)?;
    for i in 0..grid.spec.nu {
        for j in 0..grid.spec.nv {
            let idx = grid.index(i, j);
            let residual = grid.residual.as_ref().map_or(f64::NAN, |r| r[idx]);
            out.write_record([
                float17(grid.spec.u(i)),
                float17(grid.spec.v(j)),
                float17(grid.lambda[idx]),
                float17(grid.curvature[idx]),
                float17(residual),
            ])
            .map_err(csv_err)?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Columns `u, x, y`.
pub fn write_profile_csv<W: Write>(w: W, profile: &ProfileCurve) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["u", "x", "y"]).map_err(csv_err)?;
    for s in profile.samples() {
        out.write_record([float17(s.u), float17(s.x), float17(s.y)]).map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

/// Columns `s, x, y`.
pub fn write_arc_length_csv<W: Write>(w: W, profile: &ArcLengthProfile) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["s", "x", "y"]).map_err(csv_err)?;
    for i in 0..profile.len() {
        out.write_record([float17(profile.s[i]), float17(profile.x[i]), float17(profile.y[i])])
            .map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

/// Columns `c1, c2, b, residual, order, in_family, status, message`; a row
/// without a study leaves the numeric columns empty.
pub fn write_sweep_csv<W: Write>(w: W, rows: &[SweepRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["c1", "c2", "b", "residual", "order", "in_family", "status", "message"])
        .map_err(csv_err)?;
    for r in rows {
        let status = match r.status {
            RowStatus::Ok => "ok",
            RowStatus::DomainViolation => "domain_violation",
            RowStatus::Failed => "failed",
        };
        out.write_record([
            float17(r.c1),
            float17(r.c2),
            float17(r.b),
            r.residual.map_or(String::new(), float17),
            r.order.map_or(String::new(), float17),
            r.in_family.map_or(String::new(), |b| b.to_string()),
            status.to_string(),
            r.message.clone().unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads an `s, x, y` CSV with a header row naming those columns (any order).
pub fn read_arc_length_csv<R: Read>(r: R) -> Result<ArcLengthProfile> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let headers = rdr.headers().map_err(csv_err)?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Malformed(format!("missing column '{name}' (header: {headers:?})")))
    };
    let (cs, cx, cy) = (column("s")?, column("x")?, column("y")?);
    let mut profile = ArcLengthProfile {
        s: Vec::new(),
        x: Vec::new(),
        y: Vec::new(),
    };
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let field = |c: usize| -> Result<f64> {
            let text = record.get(c).unwrap_or("");
            text.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Malformed(format!("row {}: '{text}' is not a finite number", line + 2)))
        };
        profile.s.push(field(cs)?);
        profile.x.push(field(cx)?);
        profile.y.push(field(cy)?);
    }
    if profile.is_empty() {
        return Err(Error::Malformed("profile CSV has no data rows".into()));
    }
    Ok(profile)
}

/// Wavefront OBJ with `v`, `vn` and `f v//vn` records.
pub fn write_obj<W: Write>(mut w: W, mesh: &RevolutionMesh) -> Result<()> {
    writeln!(w, "# surface of revolution, {} x {} vertices", mesh.nu, mesh.nv)?;
    for v in &mesh.vertices {
        let [x, y, z] = v.position;
        writeln!(w, "v {} {} {}", float17(x), float17(y), float17(z))?;
    }
    for n in mesh.vertex_normals() {
        writeln!(w, "vn {} {} {}", float17(n[0]), float17(n[1]), float17(n[2]))?;
    }
    for f in &mesh.faces {
        let (a, b, c) = (f[0] + 1, f[1] + 1, f[2] + 1);
        writeln!(w, "f {a}//{a} {b}//{b} {c}//{c}")?;
    }
    w.flush()?;
    Ok(())
}

/// Binary little-endian PLY. Vertices carry position, normal and the `(u, v)`
/// parameter tags as doubles; faces are `uchar`-counted `uint` lists.
pub fn write_ply<W: Write>(mut w: W, mesh: &RevolutionMesh) -> Result<()> {
    let header = format!(
        "ply\nformat binary_little_endian 1.0\ncomment surface of revolution {} x {}\n\
         element vertex {}\n\
         property double x\nproperty double y\nproperty double z\n\
         property double nx\nproperty double ny\nproperty double nz\n\
         property double u\nproperty double v\n\
         element face {}\nproperty list uchar uint vertex_indices\nend_header\n",
        mesh.nu,
        mesh.nv,
        mesh.vertices.len(),
        mesh.faces.len()
    );
    w.write_all(header.as_bytes())?;
    let normals = mesh.vertex_normals();
    let mut buf = Vec::with_capacity(64 * mesh.vertices.len() + 13 * mesh.faces.len());
    for (v, n) in mesh.vertices.iter().zip(&normals) {
        for x in v.position.iter().chain(n).chain([&v.u, &v.v]) {
            buf.extend_from_slice(&x.to_le_bytes());
        }
    }
    for f in &mesh.faces {
        buf.push(3u8);
        for &i in f {
            let i = u32::try_from(i).map_err(|_| Error::invalid("mesh too large for 32-bit PLY indices"))?;
            buf.extend_from_slice(&i.to_le_bytes());
        }
    }
    w.write_all(&buf)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::Constant;
    use crate::exec::Execution;
    use crate::revolution::{profile_from_factor, tessellate};

    #[test]
    fn float_formatting() {
        assert_eq!(float17(0.1), "1.0000000000000001e-1");
        assert_eq!(float17(f64::NAN), "");
        let x = 1.0 / 3.0;
        assert_eq!(float17(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn arc_length_csv_round_trip_and_errors() {
        let p = ArcLengthProfile {
            s: vec![0.0, 0.1, 0.2],
            x: vec![0.0, 0.1, 0.2],
            y: vec![1.0, 1.0, 1.0 / 3.0],
        };
        let mut buf = Vec::new();
        write_arc_length_csv(&mut buf, &p).unwrap();
        assert_eq!(read_arc_length_csv(buf.as_slice()).unwrap(), p);

        assert!(matches!(read_arc_length_csv("s,x\n1,2\n".as_bytes()), Err(Error::Malformed(_))));
        assert!(matches!(read_arc_length_csv("s,x,y\n1,2,abc\n".as_bytes()), Err(Error::Malformed(_))));
        assert!(matches!(read_arc_length_csv("s,x,y\n".as_bytes()), Err(Error::Malformed(_))));
        assert!(matches!(read_arc_length_csv("s,x,y\n1,2\n".as_bytes()), Err(Error::Malformed(_))));
    }

    #[test]
    fn sweep_csv_header_only_when_empty() {
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "c1,c2,b,residual,order,in_family,status,message\n");
    }

    #[test]
    fn mesh_writers() {
        let p = profile_from_factor(&Constant(1.0), (0.0, 1.0), 3, 1e-12, Execution::Sequential).unwrap();
        let mesh = tessellate(&p, 0.0, std::f64::consts::TAU, 4).unwrap();
        let mut obj = Vec::new();
        write_obj(&mut obj, &mesh).unwrap();
        let text = String::from_utf8(obj).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 12);
        assert_eq!(text.lines().filter(|l| l.starts_with("vn ")).count(), 12);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 16);

        let mut ply = Vec::new();
        write_ply(&mut ply, &mesh).unwrap();
        let end = b"end_header\n";
        let pos = ply.windows(end.len()).position(|w| w == end).unwrap() + end.len();
        assert_eq!(ply.len() - pos, 12 * 8 * 8 + 16 * 13);
        let first_x = f64::from_le_bytes(ply[pos..pos + 8].try_into().unwrap());
        assert_eq!(first_x, 0.0);
    }
}

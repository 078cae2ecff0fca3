//! Bodies of the fuzz targets under `fuzz/`, shared with the stable replay test.
//! Each takes raw bytes and panics only on a genuine bug.

use gauge_curves::{polygon_polar, Gauge, Vec2};

use crate::csv_out::parse_table;
use crate::job::{apply_overrides, job_from_table, parse_job, parse_override};

/// Job-file parsing, then gauge and curve construction.
pub fn job_spec(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(job) = parse_job(text) {
        let _ = job.gauge.build();
        if let Some(curve) = &job.curve {
            let _ = curve.build();
        }
    }
}

/// CSV parsing; whatever parses must survive a write/read cycle with its shape.
pub fn csv_table(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(table) = parse_table(text) {
        let again = parse_table(&table.to_csv_string()).expect("emitted csv re-parses");
        assert_eq!(again.header, table.header);
        assert_eq!(again.rows.len(), table.rows.len());
    }
}

const OVERRIDE_BASE: &str = r#"
command = "curvature-profile"
[gauge]
kind = "randers"
b = 0.5
[curve]
kind = "circle"
"#;

/// One `key=value` override per line, applied to a fixed job.
pub fn overrides(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(ov) = text.lines().map(parse_override).collect::<Result<Vec<_>, _>>() else { return };
    let mut table: toml::Table = toml::from_str(OVERRIDE_BASE).expect("base job parses");
    if apply_overrides(&mut table, &ov).is_ok() {
        let _ = job_from_table(table);
    }
}

/// Little-endian f64 pairs as polygon vertices.
pub fn polygon_vertices(data: &[u8]) {
    let vertices: Vec<Vec2> = data
        .chunks_exact(16)
        .map(|c| {
            let x = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let y = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            Vec2::new(x, y)
        })
        .collect();
    let Ok(polar) = polygon_polar(&vertices) else { return };
    let Ok(g) = Gauge::polygon(vertices) else { return };
    let _ = polygon_polar(&polar);
    for x in [Vec2::new(1.0, 0.0), Vec2::new(-0.3, 2.0), Vec2::new(0.0, -1.0)] {
        assert!(g.value(x) > 0.0, "polygon gauge must be positive off the origin");
    }
}

use std::path::Path;

use horoforge_analysis::{distortion_trend, distortion_violations, edge_length_bound, graph_metrics, GraphMetrics};
use horoforge_core::DefiningGraph;
use horoforge_rips::HorosphereGraph;

/// Which tables to produce.
#[derive(Clone, Copy, Debug, Default)]
pub struct Tables {
    pub growth: bool,
    pub distortion: bool,
    pub connectivity: bool,
}

impl Tables {
    pub fn any(self) -> bool {
        self.growth || self.distortion || self.connectivity
    }
}

pub struct StatsReport {
    pub metrics: GraphMetrics,
    pub bound: usize,
    pub violations: usize,
}

pub fn compute(g: &DefiningGraph, h: &HorosphereGraph, seed: u64) -> StatsReport {
    let metrics = graph_metrics(g, h, seed);
    let bound = edge_length_bound(g, h.kind);
    let violations = distortion_violations(&metrics.distortion, bound).count();
    StatsReport {
        metrics,
        bound,
        violations,
    }
}

pub fn summary(h: &HorosphereGraph, r: &StatsReport, tables: Tables) -> String {
    let m = &r.metrics;
    let mut lines = vec![format!(
        "kind {} vertices {} edges {}",
        h.kind.as_str(),
        h.num_vertices(),
        h.num_edges()
    )];
    if tables.connectivity {
        let reached = m.bfs_from_root.iter().flatten().count();
        lines.push(format!("components {} reached_from_root {}", m.components, reached));
    }
    if tables.growth {
        let sizes: Vec<String> = m.growth.iter().map(|x| x.to_string()).collect();
        lines.push(format!("growth {}", sizes.join(" ")));
    }
    if tables.distortion {
        lines.push(format!(
            "distortion rows {} bound d <= {}*d_H violations {}",
            m.distortion.len(),
            r.bound,
            r.violations
        ));
        for (d, dh) in distortion_trend(&m.distortion) {
            lines.push(format!("  d={d} min d_H={dh}"));
        }
    }
    lines.join("\n") + "\n"
}

/// Writes `growth.csv`, `distortion.csv` and `bfs.csv` into `dir` as requested.
pub fn write_csv(
    g: &DefiningGraph,
    h: &HorosphereGraph,
    r: &StatsReport,
    tables: Tables,
    dir: &Path,
) -> Result<(), csv::Error> {
    std::fs::create_dir_all(dir)?;
    let m = &r.metrics;
    if tables.growth {
        let mut w = csv::Writer::from_path(dir.join("growth.csv"))?;
        w.write_record(["radius", "ball_size"])?;
        for (radius, size) in m.growth.iter().enumerate() {
            w.write_record([radius.to_string(), size.to_string()])?;
        }
        w.flush()?;
    }
    if tables.distortion {
        let mut w = csv::Writer::from_path(dir.join("distortion.csv"))?;
        w.write_record(["u", "v", "d", "d_h"])?;
        for row in &m.distortion {
            w.write_record([
                h.label(g, row.u as usize),
                h.label(g, row.v as usize),
                row.d.to_string(),
                row.d_h.map_or(String::new(), |x| x.to_string()),
            ])?;
        }
        w.flush()?;
    }
    if tables.connectivity {
        let mut w = csv::Writer::from_path(dir.join("bfs.csv"))?;
        w.write_record(["vertex", "distance_from_root"])?;
        for (i, d) in m.bfs_from_root.iter().enumerate() {
            w.write_record([h.label(g, i), d.map_or(String::new(), |x| x.to_string())])?;
        }
        w.flush()?;
    }
    Ok(())
}

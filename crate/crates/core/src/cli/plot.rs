//! Sample tables and a two-panel SVG of the `(x1, x2)` and `(x1, x3)`
//! projections.

use std::fmt::Write;

use crate::asymptote::{leaf_point, AsymptoteParam};
use crate::branches::InfinityBranch;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BranchSample {
    pub branch: usize,
    pub leaf: u32,
    pub z: f64,
    pub x2: f64,
    pub x3: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoteSample {
    pub asymptote: usize,
    pub t: f64,
    pub x: [f64; 3],
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SampleTable {
    pub branches: Vec<BranchSample>,
    pub asymptotes: Vec<AsymptoteSample>,
}

fn grid(range: (f64, f64), count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![range.0],
        _ => (0..count).map(|i| range.0 + (range.1 - range.0) * i as f64 / (count - 1) as f64).collect(),
    }
}

/// Samples every real leaf at `z` and every real asymptote at `t` on the
/// same evenly spaced grid. Fails if no branch has a real leaf.
pub fn emit_plot_samples(branches: &[InfinityBranch], asymptotes: &[AsymptoteParam], range: (f64, f64), count: usize) -> Result<SampleTable> {
    let pts = grid(range, count);
    let mut table = SampleTable::default();
    let mut any_real = false;
    for (k, b) in branches.iter().enumerate() {
        for leaf in 0..b.ramification {
            // a leaf is real if it is real at some large |z|
            let real = [1e3, -1e3].iter().any(|&z| leaf_point(b, leaf, z).is_some());
            if !real {
                continue;
            }
            any_real = true;
            for &z in &pts {
                if let Some([_, x2, x3]) = leaf_point(b, leaf, z) {
                    if x2.is_finite() && x3.is_finite() {
                        table.branches.push(BranchSample { branch: k, leaf, z, x2, x3 });
                    }
                }
            }
        }
    }
    if !any_real {
        return Err(Error::NoRealLeaf);
    }
    for (k, a) in asymptotes.iter().enumerate().filter(|(_, a)| a.is_real()) {
        for &t in &pts {
            let q = a.eval_f64(t);
            table.asymptotes.push(AsymptoteSample { asymptote: k, t, x: [q[0].re, q[1].re, q[2].re] });
        }
    }
    Ok(table)
}

impl SampleTable {
    /// Two CSV sections, branches first.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("branch,leaf,z,x2,x3\n");
        for r in &self.branches {
            let _ = writeln!(s, "{},{},{:e},{:e},{:e}", r.branch + 1, r.leaf, r.z, r.x2, r.x3);
        }
        s.push_str("\nasymptote,t,x1,x2,x3\n");
        for r in &self.asymptotes {
            let _ = writeln!(s, "{},{:e},{:e},{:e},{:e}", r.asymptote + 1, r.t, r.x[0], r.x[1], r.x[2]);
        }
        s
    }

    /// Polylines of both projections, scaled to fit each panel.
    pub fn to_svg(&self) -> String {
        const W: f64 = 400.0;
        const PAD: f64 = 20.0;
        let mut curves: Vec<(String, Vec<[f64; 3]>, bool)> = Vec::new();
        let mut keys: Vec<(usize, u32)> = self.branches.iter().map(|r| (r.branch, r.leaf)).collect();
        keys.dedup();
        for (b, l) in keys {
            let pts = self.branches.iter().filter(|r| r.branch == b && r.leaf == l).map(|r| [r.z, r.x2, r.x3]).collect();
            curves.push((format!("branch {} leaf {}", b + 1, l), pts, false));
        }
        let mut akeys: Vec<usize> = self.asymptotes.iter().map(|r| r.asymptote).collect();
        akeys.dedup();
        for a in akeys {
            let pts = self.asymptotes.iter().filter(|r| r.asymptote == a).map(|r| r.x).collect();
            curves.push((format!("asymptote {}", a + 1), pts, true));
        }
        let mut svg =
            format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", 2.0 * W, W, 2.0 * W, W);
        let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
        for (panel, k) in [1usize, 2].into_iter().enumerate() {
            let all: Vec<[f64; 2]> = curves.iter().flat_map(|c| c.1.iter().map(|p| [p[0], p[k]])).collect();
            let bounds = |i: usize| {
                let lo = all.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min);
                let hi = all.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max);
                if lo.is_finite() && hi > lo {
                    (lo, hi)
                } else {
                    (lo.min(0.0) - 1.0, hi.max(0.0) + 1.0)
                }
            };
            let (bx, by) = (bounds(0), bounds(1));
            let ox = panel as f64 * W;
            let map = |p: [f64; 2]| {
                let x = ox + PAD + (p[0] - bx.0) / (bx.1 - bx.0) * (W - 2.0 * PAD);
                let y = W - PAD - (p[1] - by.0) / (by.1 - by.0) * (W - 2.0 * PAD);
                (x, y)
            };
            let _ = writeln!(
                svg,
                "  <rect x=\"{}\" y=\"{PAD}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#999\"/>",
                ox + PAD,
                W - 2.0 * PAD,
                W - 2.0 * PAD
            );
            let _ = writeln!(svg, "  <text x=\"{}\" y=\"14\" font-size=\"12\">x1 vs x{}</text>", ox + PAD, k + 1);
            for (i, (name, pts, dashed)) in curves.iter().enumerate() {
                let path: Vec<String> = pts
                    .iter()
                    .map(|p| {
                        let (x, y) = map([p[0], p[k]]);
                        format!("{x:.2},{y:.2}")
                    })
                    .collect();
                let dash = if *dashed { " stroke-dasharray=\"4 3\"" } else { "" };
                let _ = writeln!(
                    svg,
                    "  <polyline fill=\"none\" stroke=\"{}\"{dash} points=\"{}\"><title>{name}</title></polyline>",
                    colors[i % colors.len()],
                    path.join(" ")
                );
            }
        }
        svg.push_str("</svg>\n");
        svg
    }
}

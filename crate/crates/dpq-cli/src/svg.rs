//! Minimal SVG heat-map rendering for contour grids.
//!
//! One filled square per grid cell, colored by a two-stop linear ramp
//! between the finite minimum and maximum. Cells with non-finite values
//! are grey. No external renderer is involved; the output is a plain
//! self-contained SVG document.

/// One evaluated grid cell: coordinates in the unit simplex and the
/// objective value there.
#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub tau1: f64,
    pub tau2: f64,
    pub value: f64,
}

const LOW: [f64; 3] = [44.0, 123.0, 182.0];
const HIGH: [f64; 3] = [215.0, 25.0, 28.0];

fn ramp(fraction: f64) -> String {
    let f = fraction.clamp(0.0, 1.0);
    let channel = |i: usize| (LOW[i] + (HIGH[i] - LOW[i]) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", channel(0), channel(1), channel(2))
}

/// Renders the grid as an SVG heat map with simple axis labels.
pub fn heat_map(cells: &[Cell], step: f64) -> String {
    let plot = 600.0;
    let margin = 50.0;
    let size = plot + 2.0 * margin;
    let cell_px = plot * step;

    let finite: Vec<f64> = cells
        .iter()
        .map(|c| c.value)
        .filter(|v| v.is_finite())
        .collect();
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n"
    ));
    for cell in cells {
        let x = margin + cell.tau1 * plot;
        let y = margin + (1.0 - cell.tau2) * plot - cell_px;
        let fill = if cell.value.is_finite() {
            ramp((cell.value - lo) / span)
        } else {
            "#bbbbbb".to_string()
        };
        svg.push_str(&format!(
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{cell_px:.2}\" height=\"{cell_px:.2}\" \
             fill=\"{fill}\"/>\n"
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\">tau1</text>\n",
        margin + plot / 2.0 - 16.0,
        size - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"14\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" \
         transform=\"rotate(-90 14 {})\">tau2</text>\n",
        margin + plot / 2.0 + 16.0,
        margin + plot / 2.0 + 16.0
    ));
    for (anchor, label) in [(margin, "0"), (margin + plot, "1")] {
        svg.push_str(&format!(
            "<text x=\"{anchor}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{label}</text>\n",
            margin + plot + 18.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{label}</text>\n",
            margin - 22.0,
            margin + plot - (anchor - margin) + 4.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

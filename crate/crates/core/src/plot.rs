//! SVG line charts of sweep summaries: one line per scheme against density.

use plotters::prelude::*;

use crate::error::{Error, Result};
use crate::experiment::{Scheme, SummaryRow};

fn scheme_color(s: Scheme) -> RGBColor {
    match s {
        Scheme::NoCoex => RGBColor(214, 39, 40),
        Scheme::FullLbt => RGBColor(31, 119, 180),
        Scheme::Fcca => RGBColor(44, 160, 44),
    }
}

fn plot_err<E: std::fmt::Display>(e: E) -> Error {
    Error::Invariant(format!("chart rendering failed: {e}"))
}

pub fn line_chart(
    title: &str,
    y_label: &str,
    rows: &[SummaryRow],
    metric: fn(&SummaryRow) -> f64,
) -> Result<String> {
    let x_min = rows.iter().map(|r| r.enb_count).min().unwrap_or(0) as f64;
    let x_max = rows.iter().map(|r| r.enb_count).max().unwrap_or(1) as f64;
    let (x_min, x_max) = if x_min == x_max { (x_min - 1.0, x_max + 1.0) } else { (x_min, x_max) };
    let y_max = rows.iter().map(metric).fold(0.0f64, f64::max);
    let y_max = if y_max > 0.0 { y_max * 1.1 } else { 1.0 };

    let mut svg = String::new();
    {
        let root = SVGBackend::with_string(&mut svg, (800, 500)).into_drawing_area();
        root.fill(&WHITE).map_err(plot_err)?;
        let mut chart = ChartBuilder::on(&root)
            .caption(title, ("sans-serif", 22))
            .margin(15)
            .x_label_area_size(45)
            .y_label_area_size(60)
            .build_cartesian_2d(x_min..x_max, 0.0..y_max)
            .map_err(plot_err)?;
        chart
            .configure_mesh()
            .x_desc("eNBs per 100 km2")
            .y_desc(y_label)
            .draw()
            .map_err(plot_err)?;
        for scheme in Scheme::ALL {
            let points: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.scheme == scheme)
                .map(|r| (r.enb_count as f64, metric(r)))
                .collect();
            if points.is_empty() {
                continue;
            }
            let color = scheme_color(scheme);
            chart
                .draw_series(LineSeries::new(points.clone(), color.stroke_width(2)))
                .map_err(plot_err)?
                .label(scheme.name())
                .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], color.stroke_width(2)));
            chart
                .draw_series(points.into_iter().map(|p| Circle::new(p, 3, color.filled())))
                .map_err(plot_err)?;
        }
        chart
            .configure_series_labels()
            .background_style(WHITE.mix(0.8))
            .border_style(BLACK)
            .draw()
            .map_err(plot_err)?;
        root.present().map_err(plot_err)?;
    }
    Ok(svg)
}

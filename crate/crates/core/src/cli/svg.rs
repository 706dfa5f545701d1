//! Minimal hand-written SVG charts.

const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 4] = ["#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad"];

fn f(x: f64) -> String {
    format!("{x:.2}")
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        W / 2.0,
        escape(title)
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn new(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        let span = |v: &mut dyn Iterator<Item = f64>| {
            let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(x), h.max(x)));
            if !lo.is_finite() {
                (0.0, 1.0)
            } else if hi - lo <= 0.0 {
                (lo - 0.5, hi + 0.5)
            } else {
                (lo, hi)
            }
        };
        let x = span(&mut xs.clone());
        let (ylo, yhi) = span(&mut ys.clone());
        let pad = 0.05 * (yhi - ylo);
        Self { x, y: (ylo - pad, yhi + pad) }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * (W - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        H - MARGIN - (y - self.y.0) / (self.y.1 - self.y.0) * (H - 2.0 * MARGIN)
    }

    fn axes(&self, xlabel: &str, ylabel: &str) -> String {
        let mut s = format!(
            "<rect x=\"{m}\" y=\"{m}\" width=\"{w}\" height=\"{h}\" fill=\"none\" stroke=\"#444\"/>\n",
            m = MARGIN,
            w = W - 2.0 * MARGIN,
            h = H - 2.0 * MARGIN
        );
        for (v, anchor_x) in [(self.x.0, MARGIN), (self.x.1, W - MARGIN)] {
            s += &format!("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", f(anchor_x), f(H - MARGIN + 16.0), short(v));
        }
        for (v, anchor_y) in [(self.y.0, H - MARGIN), (self.y.1, MARGIN)] {
            s += &format!("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", f(MARGIN - 6.0), f(anchor_y + 4.0), short(v));
        }
        if self.y.0 < 0.0 && self.y.1 > 0.0 {
            s += &format!(
                "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n",
                f(MARGIN),
                f(W - MARGIN),
                y = f(self.py(0.0))
            );
        }
        s += &format!("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", W / 2.0, H - 14.0, escape(xlabel));
        s += &format!(
            "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
            H / 2.0,
            H / 2.0,
            escape(ylabel)
        );
        s
    }
}

fn short(v: f64) -> String {
    format!("{v:.3}")
}

/// One or more `(label, x, y)` series drawn as polylines.
pub fn line_plot(title: &str, xlabel: &str, ylabel: &str, series: &[(&str, &[f64], &[f64])]) -> String {
    let frame = Frame::new(
        series.iter().flat_map(|s| s.1.iter().copied()),
        series.iter().flat_map(|s| s.2.iter().copied()),
    );
    let mut out = header(title);
    out += &frame.axes(xlabel, ylabel);
    for (k, (label, xs, ys)) in series.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = xs.iter().zip(ys.iter()).map(|(&x, &y)| format!("{},{}", f(frame.px(x)), f(frame.py(y)))).collect();
        out += &format!("<polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\" points=\"{}\"/>\n", pts.join(" "));
        out += &format!(
            "<text x=\"{}\" y=\"{}\" fill=\"{colour}\">{}</text>\n",
            f(W - MARGIN - 120.0),
            f(MARGIN + 16.0 + 16.0 * k as f64),
            escape(label)
        );
    }
    out + "</svg>\n"
}

/// Vertical bars from zero, for signed atoms.
pub fn stem_plot(title: &str, xlabel: &str, ylabel: &str, xs: &[f64], ys: &[f64]) -> String {
    let frame = Frame::new(xs.iter().copied(), ys.iter().copied().chain(std::iter::once(0.0)));
    let mut out = header(title);
    out += &frame.axes(xlabel, ylabel);
    for (&x, &y) in xs.iter().zip(ys) {
        let colour = if y < 0.0 { PALETTE[1] } else { PALETTE[0] };
        out += &format!(
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"{colour}\" stroke-width=\"6\"/>\n",
            f(frame.py(0.0)),
            f(frame.py(y)),
            x = f(frame.px(x))
        );
    }
    out + "</svg>\n"
}

/// Grey-scale map of `values[iy * nx + ix]` on `[x0, x1] × [y0, y1]`.
pub fn heatmap(title: &str, x: (f64, f64), y: (f64, f64), nx: usize, ny: usize, values: &[f64]) -> String {
    let frame = Frame { x, y };
    let max = values.iter().copied().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let cw = (W - 2.0 * MARGIN) / nx as f64;
    let ch = (H - 2.0 * MARGIN) / ny as f64;
    let mut out = header(title);
    for iy in 0..ny {
        for ix in 0..nx {
            let v = (values[iy * nx + ix] / max).clamp(0.0, 1.0);
            let shade = (255.0 * (1.0 - v)).round() as u8;
            out += &format!(
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"rgb({shade},{shade},255)\"/>\n",
                f(MARGIN + ix as f64 * cw),
                f(H - MARGIN - (iy + 1) as f64 * ch),
                f(cw + 0.05),
                f(ch + 0.05)
            );
        }
    }
    out += &frame.axes("Re ξ", "Im ξ");
    out + "</svg>\n"
}

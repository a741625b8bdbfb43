use std::f64::consts::TAU;

/// Intersection of the half-planes `⟨z, (cos θ_j, sin θ_j)⟩ ≤ h_j` for
/// strictly increasing angles covering the circle with gaps below `π`.
///
/// Vertex `j` is where line `j` meets line `j + 1`, so the edge lying on
/// line `j` runs from vertex `j − 1` to vertex `j` (possibly zero length).
#[derive(Clone, Debug)]
pub struct SupportPolygon {
    dirs: Vec<[f64; 2]>,
    h: Vec<f64>,
    vertices: Vec<[f64; 2]>,
    center: [f64; 2],
    /// Unwrapped polar angles of the vertices about `center`, or `None`
    /// when the polygon is too thin for wedge lookup.
    wedge_angles: Option<Vec<f64>>,
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

impl SupportPolygon {
    pub fn new(angles: &[f64], h: &[f64]) -> Self {
        assert_eq!(angles.len(), h.len());
        assert!(angles.len() >= 3, "need at least three support lines");
        let m = angles.len();
        let dirs: Vec<[f64; 2]> = angles.iter().map(|t| [t.cos(), t.sin()]).collect();
        let vertices: Vec<[f64; 2]> = (0..m)
            .map(|j| {
                let (a, b) = (dirs[j], dirs[(j + 1) % m]);
                let (ha, hb) = (h[j], h[(j + 1) % m]);
                let det = a[0] * b[1] - a[1] * b[0];
                [(ha * b[1] - hb * a[1]) / det, (a[0] * hb - b[0] * ha) / det]
            })
            .collect();
        let center = {
            let s = vertices.iter().fold([0.0, 0.0], |acc, v| [acc[0] + v[0], acc[1] + v[1]]);
            [s[0] / m as f64, s[1] / m as f64]
        };
        let mut poly = Self { dirs, h: h.to_vec(), vertices, center, wedge_angles: None };
        let diam = poly.diameter();
        // inradius proxy: smallest slack of the center
        let slack = (0..m).map(|j| poly.h[j] - dot(poly.center, poly.dirs[j])).fold(f64::INFINITY, f64::min);
        if diam > 0.0 && slack > 1e-9 * diam {
            let mut ang: Vec<f64> = poly
                .vertices
                .iter()
                .map(|v| (v[1] - poly.center[1]).atan2(v[0] - poly.center[0]))
                .collect();
            for j in 1..m {
                while ang[j] < ang[j - 1] - std::f64::consts::PI {
                    ang[j] += TAU;
                }
            }
            poly.wedge_angles = Some(ang);
        }
        poly
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn support_values(&self) -> &[f64] {
        &self.h
    }

    pub fn center(&self) -> [f64; 2] {
        self.center
    }

    /// Shoelace area of the vertex cycle.
    pub fn area(&self) -> f64 {
        let m = self.vertices.len();
        let mut s = 0.0;
        for j in 0..m {
            let (a, b) = (self.vertices[j], self.vertices[(j + 1) % m]);
            s += a[0] * b[1] - a[1] * b[0];
        }
        0.5 * s.abs()
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for a in &self.vertices {
            for b in &self.vertices {
                d = d.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
            }
        }
        d
    }

    /// Largest excess `⟨z, dir_j⟩ − h_j` over all lines.
    pub fn violation_full(&self, z: [f64; 2]) -> f64 {
        self.dirs.iter().zip(&self.h).map(|(d, h)| dot(z, *d) - h).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Same sign and, when positive, the same value as
    /// [`violation_full`](Self::violation_full). Points certified inside by
    /// the wedge lookup return a non-positive excess that is only an upper
    /// bound.
    pub fn violation(&self, z: [f64; 2]) -> f64 {
        let Some(ang) = &self.wedge_angles else {
            return self.violation_full(z);
        };
        let m = self.len();
        let mut phi = (z[1] - self.center[1]).atan2(z[0] - self.center[0]);
        while phi < ang[0] {
            phi += TAU;
        }
        while phi >= ang[0] + TAU {
            phi -= TAU;
        }
        let j = ang.partition_point(|&a| a < phi) % m;
        let local = [j + m - 1, j, j + 1]
            .iter()
            .map(|&l| dot(z, self.dirs[l % m]) - self.h[l % m])
            .fold(f64::NEG_INFINITY, f64::max);
        if local <= 0.0 {
            local
        } else {
            self.violation_full(z)
        }
    }

    /// Euclidean distance to the polygon (0 inside).
    pub fn distance(&self, z: [f64; 2]) -> f64 {
        if self.violation(z) <= 0.0 {
            return 0.0;
        }
        let m = self.vertices.len();
        (0..m)
            .map(|j| segment_distance(z, self.vertices[(j + m - 1) % m], self.vertices[j]))
            .fold(f64::INFINITY, f64::min)
    }

    /// The polygon scaled by `s > 0` about the origin.
    pub fn scaled(&self, s: f64) -> Self {
        let angles: Vec<f64> = self.dirs.iter().map(|d| d[1].atan2(d[0])).collect();
        let angles = unwrap_increasing(&angles);
        Self::new(&angles, &self.h.iter().map(|h| h * s).collect::<Vec<_>>())
    }
}

fn unwrap_increasing(a: &[f64]) -> Vec<f64> {
    let mut out = a.to_vec();
    for j in 1..out.len() {
        while out[j] <= out[j - 1] {
            out[j] += TAU;
        }
    }
    out
}

fn segment_distance(z: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let az = [z[0] - a[0], z[1] - a[1]];
    let len2 = dot(ab, ab);
    let t = if len2 > 0.0 { (dot(az, ab) / len2).clamp(0.0, 1.0) } else { 0.0 };
    let p = [a[0] + t * ab[0] - z[0], a[1] + t * ab[1] - z[1]];
    dot(p, p).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(m: usize) -> Vec<f64> {
        (0..m).map(|j| TAU * j as f64 / m as f64).collect()
    }

    #[test]
    fn square() {
        let p = SupportPolygon::new(&grid(4), &[1.0; 4]);
        assert!((p.area() - 4.0).abs() < 1e-12);
        assert!(p.violation([0.5, -0.9]) <= 0.0);
        assert!((p.violation([2.0, 0.0]) - 1.0).abs() < 1e-12);
        assert!((p.distance([2.0, 2.0]) - 2f64.sqrt()).abs() < 1e-12);
        assert!((p.scaled(0.5).area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wedge_lookup_agrees_with_full_scan() {
        let m = 90;
        let ang = grid(m);
        let h: Vec<f64> = ang.iter().map(|t| 2.0 + 0.5 * t.cos() + 0.3 * (2.0 * t).sin().abs()).collect();
        let p = SupportPolygon::new(&ang, &h);
        assert!(p.wedge_angles.is_some());
        let mut r = crate::rng::seeded(1);
        use rand::Rng as _;
        for _ in 0..20_000 {
            let z = [r.gen_range(-4.0..4.0), r.gen_range(-4.0..4.0)];
            let (fast, full) = (p.violation(z), p.violation_full(z));
            assert_eq!(fast > 0.0, full > 0.0, "{z:?}");
            if full > 0.0 {
                assert_eq!(fast, full);
            }
        }
    }

    #[test]
    fn segment_polygon() {
        // support function of [-1, 2] on the real axis
        let ang = grid(16);
        let h: Vec<f64> = ang.iter().map(|t| (2.0 * t.cos()).max(-t.cos())).collect();
        let p = SupportPolygon::new(&ang, &h);
        assert!(p.wedge_angles.is_none());
        assert!(p.area() < 1e-12);
        assert!(p.violation([0.0, 0.0]) <= 1e-15);
        assert!(p.violation([0.0, 0.1]) > 0.05);
    }
}

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Curvature and torsion jets at one point, in the units of a fixed contact
/// form. `R1 = R_{,1}`, `A11_1 = A_{11,1}`, `A11_b = A_{11,1̄}`,
/// `A11_bb = A_{11,1̄1̄}`; conjugate jets are never stored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointData {
    #[serde(default)]
    pub id: String,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "R0")]
    pub r0: f64,
    #[serde(rename = "R1", with = "pair")]
    pub r1: Complex64,
    #[serde(rename = "lapR")]
    pub lap_r: f64,
    #[serde(rename = "A11", with = "pair", default)]
    pub a11: Complex64,
    #[serde(rename = "A11_1", with = "pair", default)]
    pub a11_1: Complex64,
    #[serde(rename = "A11_b", with = "pair", default)]
    pub a11_b: Complex64,
    #[serde(rename = "A11_bb", with = "pair", default)]
    pub a11_bb: Complex64,
}

/// Complex numbers as `[re, im]`.
mod pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

impl PointData {
    /// Constant curvature `r`, no torsion.
    pub fn constant_curvature(r: f64) -> Self {
        PointData {
            id: String::new(),
            r,
            r0: 0.0,
            r1: Complex64::new(0.0, 0.0),
            lap_r: 0.0,
            a11: Complex64::new(0.0, 0.0),
            a11_1: Complex64::new(0.0, 0.0),
            a11_b: Complex64::new(0.0, 0.0),
            a11_bb: Complex64::new(0.0, 0.0),
        }
    }

    pub fn with_id(mut self, id: &str) -> Self {
        self.id = id.to_string();
        self
    }

    /// `|∇_b R|² = 2|R_{,1}|²`.
    pub fn subgradient_sq(&self) -> f64 {
        2.0 * self.r1.norm_sqr()
    }

    /// `|A_11,1|^{2/3}`, through the real cube root of `|A_11,1|²`.
    pub fn a1_two_thirds(&self) -> f64 {
        self.a11_1.norm_sqr().cbrt()
    }

    pub fn is_torsion_free(&self) -> bool {
        [self.a11, self.a11_1, self.a11_b, self.a11_bb]
            .iter()
            .all(|z| *z == Complex64::new(0.0, 0.0))
    }

    /// `R_{,0} - 2Re(A_11,1̄1̄)`, zero when the Bianchi identity holds.
    pub fn bianchi_defect(&self) -> f64 {
        self.r0 - 2.0 * self.a11_bb.re
    }

    pub fn bianchi_consistent(&self, tol: f64) -> bool {
        let scale = self.r0.abs().max(2.0 * self.a11_bb.re.abs()).max(1.0);
        self.bianchi_defect().abs() <= tol * scale
    }

    /// Data for the contact form `kθ`: weight-2 quantities scale by `k⁻¹`,
    /// weight-3 by `k^{-3/2}`, weight-4 by `k⁻²`.
    pub fn scale(&self, k: f64) -> PointData {
        let w2 = 1.0 / k;
        let w3 = k.powf(-1.5);
        let w4 = 1.0 / (k * k);
        PointData {
            id: self.id.clone(),
            r: self.r * w2,
            r0: self.r0 * w4,
            r1: self.r1 * w3,
            lap_r: self.lap_r * w4,
            a11: self.a11 * w2,
            a11_1: self.a11_1 * w3,
            a11_b: self.a11_b * w3,
            a11_bb: self.a11_bb * w4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [
            self.r,
            self.r0,
            self.lap_r,
            self.r1.re,
            self.r1.im,
            self.a11.re,
            self.a11.im,
            self.a11_1.re,
            self.a11_1.im,
            self.a11_b.re,
            self.a11_b.im,
            self.a11_bb.re,
            self.a11_bb.im,
        ];
        if vals.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::PointData(format!(
                "point '{}' has a non-finite value",
                self.id
            )))
        }
    }
}

/// Parses a JSON array of points.
pub fn parse_points(text: &str) -> Result<Vec<PointData>> {
    let pts: Vec<PointData> = serde_json::from_str(text)?;
    if pts.is_empty() {
        return Err(Error::PointData("no points in input".into()));
    }
    for p in &pts {
        p.validate()?;
    }
    Ok(pts)
}

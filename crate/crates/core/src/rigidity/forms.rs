use num_complex::Complex64;
use num_rational::BigRational;

use crate::scalar::ScalarExact;

use super::hermitian::HermitianForm;
use super::point::PointData;

// Variables, in order: E_11,1̄1, iE_11,0, E_11,1, E_11,1̄, E_11.

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `29/48 R² + 11/48 Δ_b R + 6|A_11|² - 2/3 |A_11,1|^{4/3} + (8i/3)(A_11,1̄1̄ - A_1̄1̄,11)`,
/// with the last term read as `-(16/3) Im(A_11,1̄1̄)`.
pub fn corner_entry(p: &PointData) -> f64 {
    let s = p.a1_two_thirds();
    29.0 / 48.0 * p.r * p.r + 11.0 / 48.0 * p.lap_r + 6.0 * p.a11.norm_sqr()
        - 2.0 / 3.0 * s * s
        - 16.0 / 3.0 * p.a11_bb.im
}

fn entry(p: &PointData, i: usize, j: usize) -> Complex64 {
    let s = p.a1_two_thirds();
    let five_i_3 = Complex64::new(0.0, 5.0 / 3.0);
    match (i, j) {
        (0, 0) => c(29.0 / 48.0),
        (0, 1) => c(-1.0),
        (1, 1) => c(2.0),
        (2, 2) => c(p.r / 3.0),
        (2, 3) => five_i_3 * p.a11.conj(),
        (3, 3) => c(p.r / 8.0 - 2.0 / 3.0 * s),
        (0, 4) => c(-p.r / 6.0),
        (1, 4) => c(2.0 * p.r / 3.0),
        (2, 4) => p.r1.conj() * (5.0 / 48.0) - Complex64::i() * 2.0 * p.a11_b.conj(),
        (4, 4) => c(corner_entry(p)),
        _ => c(0.0),
    }
}

/// The form on the first four variables.
pub fn reduced_form(p: &PointData) -> HermitianForm {
    HermitianForm::from_upper(4, |i, j| entry(p, i, j)).expect("diagonal is real")
}

/// The form on all five variables.
pub fn full_form(p: &PointData) -> HermitianForm {
    HermitianForm::from_upper(5, |i, j| entry(p, i, j)).expect("diagonal is real")
}

/// A point with every input converted exactly to a rational, and
/// `|A_11,1|^{2/3}` fixed to the rational value of its floating cube root.
#[derive(Clone, Debug)]
pub struct ExactPoint {
    pub r: ScalarExact,
    pub lap_r: ScalarExact,
    pub s: ScalarExact,
    pub r1: ScalarExact,
    pub a11: ScalarExact,
    pub a11_b: ScalarExact,
    pub a11_bb: ScalarExact,
}

fn exact(x: f64) -> ScalarExact {
    ScalarExact::from_rational(BigRational::from_float(x).expect("finite input"))
}

fn exact_c(z: Complex64) -> ScalarExact {
    exact(z.re) + ScalarExact::i() * exact(z.im)
}

fn q(n: i64, d: i64) -> ScalarExact {
    ScalarExact::from_frac(n, d)
}

fn abs_sq(z: &ScalarExact) -> ScalarExact {
    z.clone() * z.conj()
}

impl ExactPoint {
    pub fn new(p: &PointData) -> Self {
        ExactPoint {
            r: exact(p.r),
            lap_r: exact(p.lap_r),
            s: exact(p.a1_two_thirds()),
            r1: exact_c(p.r1),
            a11: exact_c(p.a11),
            a11_b: exact_c(p.a11_b),
            a11_bb: exact_c(p.a11_bb),
        }
    }

    fn entry(&self, i: usize, j: usize) -> ScalarExact {
        let five_i_3 = ScalarExact::i() * q(5, 3);
        let r = self.r.clone();
        match (i, j) {
            (0, 0) => q(29, 48),
            (0, 1) | (1, 0) => q(-1, 1),
            (1, 1) => q(2, 1),
            (2, 2) => r * q(1, 3),
            (2, 3) => five_i_3 * self.a11.conj(),
            (3, 3) => r * q(1, 8) - self.s.clone() * q(2, 3),
            (0, 4) | (4, 0) => r * q(-1, 6),
            (1, 4) | (4, 1) => r * q(2, 3),
            (2, 4) => self.r1.conj() * q(5, 48) - ScalarExact::i() * q(2, 1) * self.a11_b.conj(),
            (4, 4) => {
                let im_bb = self.a11_bb.im();
                r.clone() * r * q(29, 48)
                    + self.lap_r.clone() * q(11, 48)
                    + abs_sq(&self.a11) * q(6, 1)
                    - self.s.clone() * self.s.clone() * q(2, 3)
                    - im_bb * q(16, 3)
            }
            (a, b) if a > b => self.entry(b, a).conj(),
            _ => ScalarExact::zero(),
        }
    }

    /// Leading `k×k` block of the five-variable form.
    pub fn form(&self, k: usize) -> Vec<Vec<ScalarExact>> {
        (0..k)
            .map(|i| (0..k).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// The `2×2` torsion block (variables 3 and 4).
    pub fn torsion_block(&self) -> Vec<Vec<ScalarExact>> {
        (2..4)
            .map(|i| (2..4).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn block_condition(&self) -> ScalarExact {
        let r = self.r.clone();
        r.clone() * r.clone() * q(3, 8)
            - q(2, 1) * r * self.s.clone()
            - q(25, 1) * abs_sq(&self.a11)
    }

    pub fn full_condition(&self) -> ScalarExact {
        let r = self.r.clone();
        let s = self.s.clone();
        let bracket = r.clone() * r.clone() * q(83, 3456)
            + self.lap_r.clone() * q(55, 1152)
            + abs_sq(&self.a11) * q(5, 4)
            - s.clone() * s.clone() * q(5, 36)
            - self.a11_bb.im() * q(10, 9);
        let cross = self.r1.conj() * q(5, 48) - ScalarExact::i() * q(2, 1) * self.a11_b.conj();
        self.block_condition() * bracket - q(15, 8) * (r * q(1, 8) - s * q(2, 3)) * abs_sq(&cross)
    }
}

/// Determinant over `Q(i, √3)` by cofactor expansion along the first row,
/// skipping zero entries. Division-free, which keeps the rationals small for
/// the sparse forms used here.
pub fn det_exact(m: Vec<Vec<ScalarExact>>) -> ScalarExact {
    let cols: Vec<usize> = (0..m.len()).collect();
    cofactor(&m, 0, &cols)
}

fn cofactor(m: &[Vec<ScalarExact>], row: usize, cols: &[usize]) -> ScalarExact {
    if cols.is_empty() {
        return ScalarExact::one();
    }
    let mut out = ScalarExact::zero();
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = m[row][c].clone() * cofactor(m, row + 1, &rest);
        if k % 2 == 0 {
            out += term;
        } else {
            out -= term;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_free_reduced_form_is_block_diagonal() {
        let h = reduced_form(&PointData::constant_curvature(3.0));
        assert_eq!(h.get(0, 0), c(29.0 / 48.0));
        assert_eq!(h.get(1, 0), c(-1.0));
        assert_eq!(h.get(2, 2), c(1.0));
        assert_eq!(h.get(3, 3), c(3.0 / 8.0));
        assert_eq!(h.get(0, 2), c(0.0));
        assert_eq!(h.get(2, 3), c(0.0));
    }

    #[test]
    fn first_block_determinant() {
        let e = ExactPoint::new(&PointData::constant_curvature(1.0));
        assert_eq!(det_exact(e.form(2)), q(5, 24));
    }

    #[test]
    fn torsion_block_at_r3() {
        let e = ExactPoint::new(&PointData::constant_curvature(3.0));
        assert_eq!(det_exact(e.torsion_block()), q(3, 8));
        assert_eq!(e.block_condition(), q(27, 8));
    }

    #[test]
    fn cross_entry_is_conjugate_pair() {
        let mut p = PointData::constant_curvature(1.0);
        p.r1 = Complex64::new(0.5, 1.5);
        p.a11_b = Complex64::new(-2.0, 0.25);
        let h = full_form(&p);
        let expect = p.r1 * (5.0 / 48.0) + Complex64::i() * 2.0 * p.a11_b;
        assert_eq!(h.get(4, 2), expect);
        let e = ExactPoint::new(&p);
        assert_eq!(e.entry(4, 2), e.entry(2, 4).conj());
    }

    #[test]
    fn exact_det_matches_float() {
        let mut p = PointData::constant_curvature(1.7);
        p.a11 = Complex64::new(0.01, 0.02);
        p.a11_1 = Complex64::new(0.003, -0.001);
        p.lap_r = 0.2;
        let e = ExactPoint::new(&p);
        let d = det_exact(e.form(5)).to_f64_pair().0;
        let f = full_form(&p).leading_det(5).re;
        assert!((d - f).abs() < 1e-12 * d.abs());
    }
}

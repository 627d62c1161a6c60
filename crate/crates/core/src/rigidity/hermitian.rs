use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// A square complex matrix equal to its conjugate transpose.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HermitianForm {
    n: usize,
    #[serde(serialize_with = "ser_rows")]
    entries: Vec<Complex64>,
}

fn ser_rows<S: serde::Serializer>(
    entries: &[Complex64],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(entries.len()))?;
    for z in entries {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl HermitianForm {
    /// Row-major entries; the matrix must be exactly Hermitian.
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Precondition(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if entries[i * n + j] != entries[j * n + i].conj() {
                    return Err(Error::Precondition(format!(
                        "entries ({i},{j}) and ({j},{i}) are not conjugate"
                    )));
                }
            }
        }
        Ok(HermitianForm { n, entries })
    }

    /// Builds from the upper triangle, mirroring conjugates below the diagonal.
    /// Diagonal entries must be real.
    pub fn from_upper(n: usize, upper: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in i..n {
                let z = upper(i, j);
                entries[i * n + j] = z;
                entries[j * n + i] = z.conj();
            }
        }
        Self::new(n, entries)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    /// Leading principal minors `Δ_1, …, Δ_n`.
    pub fn leading_minors(&self) -> Vec<f64> {
        (1..=self.n).map(|k| self.leading_det(k).re).collect()
    }

    /// Determinant of the leading `k×k` block by LU with partial pivoting.
    pub fn leading_det(&self, k: usize) -> Complex64 {
        let mut a: Vec<Complex64> = (0..k * k).map(|idx| self.get(idx / k, idx % k)).collect();
        let mut det = Complex64::new(1.0, 0.0);
        for c in 0..k {
            let p = (c..k)
                .max_by(|&x, &y| a[x * k + c].norm().total_cmp(&a[y * k + c].norm()))
                .unwrap_or(c);
            let piv = a[p * k + c];
            if piv == Complex64::new(0.0, 0.0) {
                return piv;
            }
            if p != c {
                for j in 0..k {
                    a.swap(p * k + j, c * k + j);
                }
                det = -det;
            }
            det *= piv;
            for r in c + 1..k {
                let f = a[r * k + c] / piv;
                for j in c..k {
                    let v = a[c * k + j];
                    a[r * k + j] -= f * v;
                }
            }
        }
        det
    }

    /// Sylvester's criterion: positive definite iff every leading principal
    /// minor is positive.
    pub fn is_positive_definite(&self) -> (bool, Vec<f64>) {
        let minors = self.leading_minors();
        (minors.iter().all(|m| *m > 0.0), minors)
    }
}

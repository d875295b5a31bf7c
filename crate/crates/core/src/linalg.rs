//! Small fixed-size real linear algebra.

use crate::math::{abs, sqrt};

pub type Mat3 = [[f64; 3]; 3];

pub fn transpose(m: &Mat3) -> Mat3 {
    let mut t = [[0.0; 3]; 3];
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            t[j][i] = v;
        }
    }
    t
}

pub fn matmul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn off_diagonal_norm(m: &Mat3) -> f64 {
    sqrt(2.0 * (m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2]))
}

/// Eigenvalues of a symmetric 3x3 matrix by cyclic Jacobi rotations,
/// sorted in descending order. Iterates until the off-diagonal Frobenius
/// norm falls below `1e-14` times the matrix scale.
pub fn symmetric_eigenvalues(m: &Mat3) -> [f64; 3] {
    let mut a = *m;
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |s, &v| s.max(abs(v)))
        .max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        if off_diagonal_norm(&a) <= 1e-14 * scale {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if a[p][q] == 0.0 {
                continue;
            }
            // rotation angle zeroing a[p][q]
            let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
            let t = sign / (abs(theta) + sqrt(theta * theta + 1.0));
            let c = 1.0 / sqrt(t * t + 1.0);
            let s = t * c;
            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[p][k];
                let aqk = a[q][k];
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
        }
    }
    let mut ev = [a[0][0], a[1][1], a[2][2]];
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap_or(core::cmp::Ordering::Equal));
    ev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let m = [[1.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 2.0]];
        assert_eq!(symmetric_eigenvalues(&m), [3.0, 2.0, 1.0]);
    }

    #[test]
    fn known_spectrum() {
        // eigenvalues 2 - sqrt 2, 2, 2 + sqrt 2
        let m = [[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]];
        let ev = symmetric_eigenvalues(&m);
        let r2 = 2.0_f64.sqrt();
        assert!((ev[0] - (2.0 + r2)).abs() < 1e-14);
        assert!((ev[1] - 2.0).abs() < 1e-14);
        assert!((ev[2] - (2.0 - r2)).abs() < 1e-14);
    }

    #[test]
    fn trace_and_determinant_preserved() {
        let m = [[4.0, 1.5, -0.3], [1.5, -2.0, 0.7], [-0.3, 0.7, 1.0]];
        let ev = symmetric_eigenvalues(&m);
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        assert!((ev.iter().sum::<f64>() - 3.0).abs() < 1e-13);
        assert!((ev.iter().product::<f64>() - det).abs() < 1e-12);
    }

    #[test]
    fn gram_matrix() {
        let a = [[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.5]];
        let g = matmul(&transpose(&a), &a);
        let ev = symmetric_eigenvalues(&g);
        assert!(ev.iter().all(|&v| v >= 0.0));
        // the z block decouples with eigenvalue 0.25
        assert!((ev[1] - 0.25).abs() < 1e-14);
    }
}

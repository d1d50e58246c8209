//! The explicit low-rank assignments of the hypercube support pattern.
//!
//! Over GF(3): a nonsingular assignment A_n of W_n whose inverse is again
//! an assignment of W_n, built by the recursion
//!
//! ```text
//! A_1 = [1],   A_{n+1} = | 2A_n  I    |,   A_{n+1}^-1 = | A_n^-1  2I   |
//!                        | I     A_n^-1|                | 2I      2A_n |
//! ```
//!
//! and the rank-2^{n-2} assignment B_n = [[A_{n-1}, I], [I, A_{n-1}^-1]].
//! Over GF(2): the all-ones assignment, which has rank 2^{n-2} for even n
//! and is a self-inverse nonsingular matrix for odd n.

use std::fmt;
use std::time::Instant;

use crate::gf::{Field, GfMatrix};
use crate::hypercube::{support_matrix, MAX_DIMENSION};

/// (A_n, A_n^{-1}) over GF(3), both 2^{n-1} x 2^{n-1}.
///
/// The inverse comes from the recursion, not from elimination; elimination
/// is reserved for cross-checks.
pub fn build_a(n: usize) -> (GfMatrix, GfMatrix) {
    assert!(n >= 1 && n <= MAX_DIMENSION, "dimension {n} out of range");
    let mut a = GfMatrix::from_entries(Field::Gf3, 1, 1, &[1]).unwrap();
    let mut a_inv = a.clone();
    for level in 1..n {
        let id = GfMatrix::identity(1 << (level - 1), Field::Gf3);
        let two_id = GfMatrix::scalar_mul(2, &id);
        let two_a = GfMatrix::scalar_mul(2, &a);
        let next = GfMatrix::block2x2(&two_a, &id, &id, &a_inv).unwrap();
        let next_inv = GfMatrix::block2x2(&a_inv, &two_id, &two_id, &two_a).unwrap();
        a = next;
        a_inv = next_inv;
    }
    (a, a_inv)
}

/// B_n over GF(3), 2^{n-1} x 2^{n-1}, an assignment of W_n with rank 2^{n-2}.
pub fn build_b(n: usize) -> GfMatrix {
    assert!(n >= 2, "B_n needs n >= 2");
    let (a, a_inv) = build_a(n - 1);
    let id = GfMatrix::identity(1 << (n - 2), Field::Gf3);
    GfMatrix::block2x2(&a, &id, &id, &a_inv).unwrap()
}

/// The all-ones assignment of W_n over GF(2).
pub fn build_ones(n: usize) -> GfMatrix {
    support_matrix(n).to_ones_matrix(Field::Gf2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertCheck {
    pub name: &'static str,
    pub pass: bool,
    pub millis: u128,
}

/// Outcome of the four certificate checks for one dimension.
#[derive(Debug, Clone)]
pub struct CertificateReport {
    pub n: usize,
    pub checks: Vec<CertCheck>,
}

impl CertificateReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "check {} {} {}",
                c.name,
                if c.pass { "pass" } else { "fail" },
                c.millis
            )?;
        }
        Ok(())
    }
}

/// Run the four certificate checks for dimension `n >= 2`:
/// the recursion really inverts A_{n-1}, both A matrices and B_n sit on
/// their support patterns, and B_n has rank 2^{n-2}.
pub fn verify_certificate(n: usize) -> CertificateReport {
    assert!(n >= 2 && n <= MAX_DIMENSION, "dimension {n} out of range");
    let (a, a_inv) = build_a(n - 1);
    let id = GfMatrix::identity(1 << (n - 2), Field::Gf3);
    let b = GfMatrix::block2x2(&a, &id, &id, &a_inv).unwrap();
    let mut checks = Vec::with_capacity(4);
    let mut run = |name: &'static str, check: &mut dyn FnMut() -> bool| {
        let start = Instant::now();
        let pass = check();
        checks.push(CertCheck {
            name,
            pass,
            millis: start.elapsed().as_millis(),
        });
    };
    run("inverse-product", &mut || {
        a.mat_mul(&a_inv).unwrap() == id
    });
    run("a-support", &mut || {
        let w = support_matrix(n - 1);
        w.check_assignment(&a).is_ok() && w.check_assignment(&a_inv).is_ok()
    });
    run("b-support", &mut || {
        support_matrix(n).check_assignment(&b).is_ok()
    });
    run("b-rank", &mut || b.rank() == 1 << (n - 2));
    CertificateReport { n, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_is_its_own_inverse() {
        let (a, a_inv) = build_a(1);
        assert_eq!(a.entries(), vec![1]);
        assert_eq!(a_inv.entries(), vec![1]);
    }

    #[test]
    fn a2_matches_recursion_by_hand() {
        let (a, a_inv) = build_a(2);
        assert_eq!(a.entries(), vec![2, 1, 1, 1]);
        assert_eq!(a_inv.entries(), vec![1, 2, 2, 2]);
        assert_eq!(
            a.mat_mul(&a_inv).unwrap(),
            GfMatrix::identity(2, Field::Gf3)
        );
    }

    #[test]
    fn a3_product_is_identity() {
        let (a, a_inv) = build_a(3);
        assert_eq!(a.rows(), 4);
        assert_eq!(
            a.mat_mul(&a_inv).unwrap(),
            GfMatrix::identity(4, Field::Gf3)
        );
    }

    #[test]
    fn a_matrices_are_symmetric() {
        for n in 1..=7 {
            for m in [&build_a(n).0, &build_a(n).1] {
                for r in 0..m.rows() {
                    for c in 0..r {
                        assert_eq!(m.get(r, c), m.get(c, r), "n={n} at ({r},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn b2_is_all_ones() {
        assert_eq!(build_b(2).entries(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn b_rank_small() {
        assert_eq!(build_b(3).rank(), 2);
        let b4 = build_b(4);
        assert_eq!(b4.rank(), 4);
        assert!(support_matrix(4).check_assignment(&b4).is_ok());
    }

    #[test]
    fn b_bottom_half_is_a_inv_times_top_half() {
        // the structural reason rank(B_n) equals the top half's rank
        for n in 2..=6 {
            let b = build_b(n);
            let (_, a_inv) = build_a(n - 1);
            let half = 1 << (n - 2);
            let all: Vec<usize> = (0..b.cols()).collect();
            let top = b.select(&(0..half).collect::<Vec<_>>(), &all);
            let bottom = b.select(&(half..2 * half).collect::<Vec<_>>(), &all);
            assert_eq!(a_inv.mat_mul(&top).unwrap(), bottom, "n={n}");
            assert_eq!(top.rank(), half);
            assert_eq!(b.rank(), top.rank());
        }
    }

    #[test]
    fn ones_even_rank_odd_involution() {
        assert_eq!(build_ones(2).entries(), vec![1, 1, 1, 1]);
        assert_eq!(build_ones(2).rank(), 1);
        assert_eq!(build_ones(4).rank(), 4);

        let m3 = build_ones(3);
        assert_eq!(
            m3.mat_mul(&m3).unwrap(),
            GfMatrix::identity(4, Field::Gf2)
        );
        assert_eq!(m3.rank(), 4);
    }

    #[test]
    fn verify_small_dimensions() {
        for n in [2, 5] {
            let report = verify_certificate(n);
            assert_eq!(report.checks.len(), 4);
            assert!(report.all_pass(), "n={n}: {report}");
        }
    }

    #[test]
    fn report_text_format() {
        let report = verify_certificate(2);
        for (line, name) in report
            .to_string()
            .lines()
            .zip(["inverse-product", "a-support", "b-support", "b-rank"])
        {
            let parts: Vec<&str> = line.split(' ').collect();
            assert_eq!(parts.len(), 4);
            assert_eq!(parts[0], "check");
            assert_eq!(parts[1], name);
            assert_eq!(parts[2], "pass");
            assert!(parts[3].parse::<u128>().is_ok());
        }
    }
}

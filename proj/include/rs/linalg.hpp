#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace rs {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

/// (A + A*)/2.
Mat hermitize(const Mat& a);

/// Eigenvalues of a (symmetrized) Hermitian matrix, non-increasing.
RVec eigvals_desc(const Mat& a);

/// Eigen-decomposition of a Hermitian matrix: values non-increasing, columns
/// phase-fixed (first significantly nonzero component real positive).
std::pair<RVec, Mat> eig_desc(const Mat& a);

RVec singular_values(const Mat& a);  // non-increasing
double spectral_norm(const Mat& a);
double sigma_min(const Mat& a);

/// Relative sigma rule: sigma_min > tol_rel * sigma_max.
bool invertible_rel(const Mat& a, double tol_rel);

/// Moore-Penrose pseudo-inverse with relative singular-value cutoff.
Mat pinv(const Mat& a, double tol_rel = 1e-12);

/// Unitary polar factor U of A = U P (via SVD). For tall/wide A this is the
/// partial isometry with the same row/column spaces.
Mat polar_unitary(const Mat& a);

/// Thin Q of a QR factorization, with the convention diag(R) real positive.
Mat qr_q_positive(const Mat& a);

/// Multiply each column by a unit scalar so its first entry of significant
/// modulus becomes real positive.
Mat fix_column_phases(Mat a);

double fro(const Mat& a);

/// (x, 0_{n-len(x)}) padding, for spectra of Gram matrices.
RVec pad_zeros(const RVec& x, int n);

bool approx_equal(const Mat& a, const Mat& b, double tol);

}  // namespace rs

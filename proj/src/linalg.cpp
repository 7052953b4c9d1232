#include "rs/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rs/errors.hpp"

namespace rs {

Mat hermitize(const Mat& a) { return 0.5 * (a + a.adjoint()); }

RVec eigvals_desc(const Mat& a) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(a), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("eigensolver failed");
    return es.eigenvalues().reverse();
}

std::pair<RVec, Mat> eig_desc(const Mat& a) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(a));
    if (es.info() != Eigen::Success) throw Error("eigensolver failed");
    RVec vals = es.eigenvalues().reverse();
    Mat vecs = es.eigenvectors().rowwise().reverse();
    return {vals, fix_column_phases(std::move(vecs))};
}

RVec singular_values(const Mat& a) {
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues();
}

double spectral_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    return singular_values(a)(0);
}

double sigma_min(const Mat& a) {
    const RVec s = singular_values(a);
    return s(s.size() - 1);
}

bool invertible_rel(const Mat& a, double tol_rel) {
    if (a.rows() != a.cols()) return false;
    const RVec s = singular_values(a);
    return s(s.size() - 1) > tol_rel * s(0);
}

Mat pinv(const Mat& a, double tol_rel) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVec& s = svd.singularValues();
    const double cutoff = tol_rel * (s.size() > 0 ? s(0) : 0.0);
    RVec sinv = RVec::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) sinv(i) = 1.0 / s(i);
    return svd.matrixV() * sinv.asDiagonal() * svd.matrixU().adjoint();
}

Mat polar_unitary(const Mat& a) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

Mat qr_q_positive(const Mat& a) {
    Eigen::HouseholderQR<Mat> qr(a);
    const Eigen::Index cols = std::min(a.rows(), a.cols());
    Mat q = qr.householderQ() * Mat::Identity(a.rows(), cols);
    Mat r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < cols; ++j) {
        const Cplx rjj = r(j, j);
        const double m = std::abs(rjj);
        const Cplx phase = (m > 0) ? rjj / m : Cplx(1, 0);
        q.col(j) *= phase;
    }
    return q;
}

Mat fix_column_phases(Mat a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        const double norm = a.col(j).norm();
        const double thresh = 1e-12 * (norm > 0 ? norm : 1.0);
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const double m = std::abs(a(i, j));
            if (m > thresh) {
                a.col(j) *= std::conj(a(i, j)) / m;
                break;
            }
        }
    }
    return a;
}

double fro(const Mat& a) { return a.norm(); }

RVec pad_zeros(const RVec& x, int n) {
    if (n < x.size()) throw ArgumentError("pad_zeros: target length below input length");
    RVec out = RVec::Zero(n);
    out.head(x.size()) = x;
    return out;
}

bool approx_equal(const Mat& a, const Mat& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return (a - b).norm() <= tol;
}

}  // namespace rs

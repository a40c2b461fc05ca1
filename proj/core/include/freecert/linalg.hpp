#pragma once

#include <Eigen/Dense>
#include <complex>

namespace freecert {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

Mat kron(const Mat& a, const Mat& b);

inline Mat herm_part(const Mat& m) { return 0.5 * (m + m.adjoint()); }

/// Frobenius distance to the Hermitian part.
inline double asymmetry(const Mat& m) { return 0.5 * (m - m.adjoint()).norm(); }

bool is_hermitian(const Mat& m, double tol = 1e-12);

/// Smallest eigenvalue of a (nearly) Hermitian matrix; the input is
/// symmetrized first.
double lambda_min(const Mat& m);
double lambda_max(const Mat& m);

/// Largest singular value.
double operator_norm(const Mat& m);

/// 2-norm condition number (inf when singular).
double condition_number(const Mat& m);

/// Hermitian square root with an eigenvalue clamp: eigenvalues below
/// -psd_slack are an error, values in [-psd_slack, 0] are treated as zero.
Mat psd_sqrt(const Mat& m, double psd_slack = 1e-12);

/// Unitary polar factor (closest unitary in Frobenius norm).
Mat polar_unitary(const Mat& m);

}  // namespace freecert

#include "freecert/linalg.hpp"

#include <stdexcept>

namespace freecert {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_hermitian(const Mat& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double lambda_min(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double lambda_max(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

double condition_number(const Mat& m) {
  if (m.size() == 0) return 1.0;
  auto sv = m.jacobiSvd().singularValues();
  double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

Mat psd_sqrt(const Mat& m, double psd_slack) {
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part(m));
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -psd_slack)
      throw std::invalid_argument("psd_sqrt: matrix has eigenvalue " +
                                  std::to_string(ev(i)) +
                                  " below the positive-semidefinite slack");
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

Mat polar_unitary(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace freecert

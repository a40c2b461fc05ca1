#include "freecert/rng.hpp"

namespace freecert {

Mat Rng::gaussian(int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cnormal();
  return m;
}

Mat Rng::gaussian_hermitian(int n) {
  Mat m = gaussian(n, n);
  return 0.5 * (m + m.adjoint());
}

Mat Rng::random_unitary(int n) {
  Mat g = gaussian(n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix phases so the distribution does not depend on the QR convention.
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= (a > 0) ? d / a : Complex(1, 0);
  }
  return q;
}

Mat Rng::well_conditioned(int n, double cond_bound) {
  Mat u = random_unitary(n);
  Mat v = random_unitary(n);
  double s = std::sqrt(cond_bound);
  Eigen::VectorXd sv(n);
  for (int i = 0; i < n; ++i) sv(i) = uniform(1.0 / s, s);
  return u * sv.asDiagonal() * v.adjoint();
}

}  // namespace freecert

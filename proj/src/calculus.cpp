#include "kerrml/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace kerrml {

double Gradient8::norm() const {
  double s = 0.0;
  for (double x : d_q) s += x * x;
  for (double x : d_p) s += x * x;
  return std::sqrt(s);
}

std::array<double, 8> singular_values(const Hessian8& h) {
  Eigen::Matrix<double, 8, 8> m;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = h[i][j];
  Eigen::JacobiSVD<Eigen::Matrix<double, 8, 8>> svd(m);
  const auto& sv = svd.singularValues();
  std::array<double, 8> out{};
  for (int i = 0; i < 8; ++i) out[i] = sv(i);
  return out;
}

int matrix_rank(const std::vector<PhaseVec<double>>& rows, double rel_tol) {
  if (rows.empty()) return 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), 8);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < 8; ++j) m(static_cast<Eigen::Index>(i), j) = rows[i][j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

}  // namespace kerrml

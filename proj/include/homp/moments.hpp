#pragma once

#include <vector>

#include <Eigen/Dense>

#include "homp/polynomial.hpp"

namespace homp {

/// Basic closed set {z : g_i(z) >= 0 for all i}. Sets fed into the
/// relaxation must carry an explicit ball bound R^2 - |z|^2 among the
/// inequalities; the scenario loader enforces this, the type does not.
struct SemialgebraicSet {
  int num_vars = 0;
  std::vector<Polynomial> inequalities;

  SemialgebraicSet() = default;
  explicit SemialgebraicSet(int n) : num_vars(n) {}

  void add(Polynomial g);
  bool contains(std::span<const double> point, double tol = 0.0) const;
  /// Conjunction over a shared variable set.
  static SemialgebraicSet intersect(const SemialgebraicSet& a,
                                    const SemialgebraicSet& b);
};

/// Truncated moment sequence of a measure: values[monomial_index(m)]
/// holds the integral of m. Length is monomial_count(num_vars, degree).
struct MomentVector {
  int num_vars = 0;
  int degree = 0;  // moments kept up to this total degree (2d)
  Eigen::VectorXd values;

  MomentVector() = default;
  MomentVector(int n, int deg)
      : num_vars(n),
        degree(deg),
        values(Eigen::VectorXd::Zero(
            static_cast<Eigen::Index>(monomial_count(n, deg)))) {}

  double mass() const { return values.size() > 0 ? values[0] : 0.0; }
  double operator[](std::size_t i) const {
    return values[static_cast<Eigen::Index>(i)];
  }
  /// <p, mu> for a polynomial p with deg(p) <= degree.
  double pair(const Polynomial& p) const;
};

/// Index layout of the Hankel moment matrix with row basis of degree d:
/// entry (i,j) points at the moment of row_i * col_j.
struct MomentMatrixLayout {
  std::vector<Monomial> row_basis;
  Eigen::MatrixXi entry_index;

  int size() const { return static_cast<int>(row_basis.size()); }
};

MomentMatrixLayout moment_matrix_layout(int num_vars, int d);

/// One matrix entry of a localizing layout: a sparse linear functional
/// over moment indices.
struct MomentCombo {
  std::vector<std::pair<std::size_t, double>> terms;  // (moment index, coef)

  double apply(const MomentVector& mv) const {
    double v = 0.0;
    for (const auto& [idx, c] : terms) v += c * mv[idx];
    return v;
  }
};

/// Layout of the localizing matrix of a multiplier g at order d: row
/// basis degree d - ceil(deg(g)/2); entry (i,j) is the functional
/// mu -> sum_k g_k mu[index(m_i m_j m_k)].
struct LocalizingLayout {
  std::vector<Monomial> row_basis;
  std::vector<std::vector<MomentCombo>> entries;  // size x size

  int size() const { return static_cast<int>(row_basis.size()); }
};

/// Throws std::invalid_argument when deg(g) > 2d (the constraint cannot
/// be represented at this truncation).
LocalizingLayout localizing_layout(const Polynomial& g, int num_vars, int d);

/// Moment vector of a unit Dirac at the given point.
MomentVector dirac_moments(std::span<const double> point, int degree);

/// Weighted sum of Diracs; weights must be nonnegative and match the
/// sample count.
MomentVector empirical_moments(const std::vector<std::vector<double>>& samples,
                               const std::vector<double>& weights, int degree);

/// Dense realizations, mostly for validation and tests.
Eigen::MatrixXd moment_matrix(const MomentVector& mv, int d);
Eigen::MatrixXd localizing_matrix(const Polynomial& g, const MomentVector& mv,
                                  int d);
double min_eigenvalue(const Eigen::MatrixXd& sym);

}  // namespace homp

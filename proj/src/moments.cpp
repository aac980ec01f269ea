#include "homp/moments.hpp"

#include <stdexcept>

namespace homp {

void SemialgebraicSet::add(Polynomial g) {
  if (g.num_vars() != num_vars)
    throw std::invalid_argument("SemialgebraicSet::add: variable count mismatch");
  inequalities.push_back(std::move(g));
}

bool SemialgebraicSet::contains(std::span<const double> point,
                                double tol) const {
  for (const auto& g : inequalities) {
    if (g.evaluate(point) < -tol) return false;
  }
  return true;
}

SemialgebraicSet SemialgebraicSet::intersect(const SemialgebraicSet& a,
                                             const SemialgebraicSet& b) {
  if (a.num_vars != b.num_vars)
    throw std::invalid_argument("SemialgebraicSet::intersect: variable count mismatch");
  SemialgebraicSet out = a;
  for (const auto& g : b.inequalities) out.inequalities.push_back(g);
  return out;
}

double MomentVector::pair(const Polynomial& p) const {
  if (p.num_vars() != num_vars)
    throw std::invalid_argument("MomentVector::pair: variable count mismatch");
  double v = 0.0;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() > degree)
      throw std::invalid_argument("MomentVector::pair: polynomial degree exceeds truncation");
    v += c * (*this)[monomial_index(m)];
  }
  return v;
}

namespace {

std::vector<Monomial> basis_up_to(int num_vars, int d) {
  const std::size_t n = monomial_count(num_vars, d);
  std::vector<Monomial> basis;
  basis.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    basis.push_back(monomial_at(i, num_vars, d));
  return basis;
}

}  // namespace

MomentMatrixLayout moment_matrix_layout(int num_vars, int d) {
  if (d < 0) throw std::invalid_argument("moment_matrix_layout: d < 0");
  MomentMatrixLayout layout;
  layout.row_basis = basis_up_to(num_vars, d);
  const int n = layout.size();
  layout.entry_index.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const auto idx = static_cast<int>(
          monomial_index(layout.row_basis[i] * layout.row_basis[j]));
      layout.entry_index(i, j) = idx;
      layout.entry_index(j, i) = idx;
    }
  }
  return layout;
}

LocalizingLayout localizing_layout(const Polynomial& g, int num_vars, int d) {
  if (g.num_vars() != num_vars)
    throw std::invalid_argument("localizing_layout: variable count mismatch");
  const int dg = g.degree();
  if (dg > 2 * d)
    throw std::invalid_argument(
        "localizing_layout: deg(g) exceeds moment truncation 2d");
  const int basis_deg = d - (dg + 1) / 2;
  LocalizingLayout layout;
  layout.row_basis = basis_up_to(num_vars, basis_deg);
  const int n = layout.size();
  layout.entries.assign(n, std::vector<MomentCombo>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      MomentCombo combo;
      const Monomial prod = layout.row_basis[i] * layout.row_basis[j];
      for (const auto& [m, c] : g.terms()) {
        combo.terms.emplace_back(monomial_index(prod * m), c);
      }
      layout.entries[i][j] = combo;
      if (i != j) layout.entries[j][i] = std::move(combo);
    }
  }
  return layout;
}

MomentVector dirac_moments(std::span<const double> point, int degree) {
  if (degree < 0) throw std::invalid_argument("dirac_moments: degree < 0");
  const int n = static_cast<int>(point.size());
  MomentVector mv(n, degree);
  const auto len = static_cast<std::size_t>(mv.values.size());
  for (std::size_t i = 0; i < len; ++i) {
    mv.values[static_cast<Eigen::Index>(i)] =
        monomial_at(i, n, degree).evaluate(point);
  }
  return mv;
}

MomentVector empirical_moments(const std::vector<std::vector<double>>& samples,
                               const std::vector<double>& weights,
                               int degree) {
  if (samples.size() != weights.size())
    throw std::invalid_argument("empirical_moments: sample/weight count mismatch");
  if (samples.empty())
    throw std::invalid_argument("empirical_moments: no samples");
  const int n = static_cast<int>(samples.front().size());
  MomentVector mv(n, degree);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (weights[k] < 0.0)
      throw std::invalid_argument("empirical_moments: negative weight");
    mv.values += weights[k] * dirac_moments(samples[k], degree).values;
  }
  return mv;
}

Eigen::MatrixXd moment_matrix(const MomentVector& mv, int d) {
  const auto layout = moment_matrix_layout(mv.num_vars, d);
  const int n = layout.size();
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      M(i, j) = mv[static_cast<std::size_t>(layout.entry_index(i, j))];
  return M;
}

Eigen::MatrixXd localizing_matrix(const Polynomial& g, const MomentVector& mv,
                                  int d) {
  const auto layout = localizing_layout(g, mv.num_vars, d);
  const int n = layout.size();
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = layout.entries[i][j].apply(mv);
  return M;
}

double min_eigenvalue(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace homp

#include "homp/liouville.hpp"

#include <stdexcept>

namespace homp {

SemialgebraicSet Mode::joint_set() const {
  SemialgebraicSet joint(joint_dim());
  for (const auto& g : X.inequalities) joint.add(g.widened(joint_dim()));
  for (const auto& g : U.inequalities) {
    // Input polynomial g(u) re-indexed over (x, u).
    Polynomial lifted(joint_dim());
    for (const auto& [m, c] : g.terms()) {
      Monomial shifted;
      shifted.exps.assign(joint_dim(), 0);
      for (int i = 0; i < input_dim; ++i) shifted.exps[state_dim + i] = m.exps[i];
      lifted.add_term(shifted, c);
    }
    joint.add(lifted);
  }
  return joint;
}

LiouvilleSystem liouville_rows(const Mode& mode, int d, TransportIds ids) {
  if (mode.f.size() != mode.state_dim)
    throw std::invalid_argument("liouville_rows: dynamics component count != state_dim");
  if (mode.f.num_vars() != mode.joint_dim())
    throw std::invalid_argument("liouville_rows: dynamics must be over joint variables");
  const int cap = 2 * d;
  LiouvilleSystem sys;
  const std::size_t num_phi = monomial_count(mode.state_dim, cap);
  for (std::size_t pi = 0; pi < num_phi; ++pi) {
    const Monomial phi = monomial_at(pi, mode.state_dim, cap);
    const Polynomial lphi =
        koopman_apply(Polynomial::from_term(phi, 1.0).widened(mode.joint_dim()),
                      mode.f);
    if (lphi.degree() > cap && !lphi.is_zero()) continue;
    LinearMomentConstraint row;
    for (const auto& [m, c] : lphi.terms()) {
      row.entries.push_back({ids.occupation, monomial_index(m), c});
    }
    row.entries.push_back({ids.initial, pi, 1.0});
    row.entries.push_back({ids.terminal, pi, -1.0});
    row.lo = row.hi = 0.0;
    sys.test_monomials.push_back(phi);
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

std::vector<LinearMomentConstraint> horizon_bounds(int measure_id, double t_min,
                                                   double t_max) {
  if (t_min < 0.0 || t_min > t_max)
    throw std::invalid_argument("horizon_bounds: need 0 <= t_min <= t_max");
  std::vector<LinearMomentConstraint> rows;
  if (t_min == 0.0 && t_max == kUnbounded) return rows;  // cone membership only
  LinearMomentConstraint row;
  row.entries.push_back({measure_id, 0, 1.0});
  row.lo = t_min;
  row.hi = t_max;
  rows.push_back(std::move(row));
  return rows;
}

}  // namespace homp

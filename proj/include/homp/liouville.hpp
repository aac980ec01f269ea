#pragma once

#include <limits>
#include <vector>

#include "homp/moments.hpp"
#include "homp/polynomial.hpp"

namespace homp {

/// One discrete mode: state/input spaces, dynamics, and stage cost.
/// Variables are ordered (state..., input...); X is over states, U over
/// inputs, f and c over the joint set.
struct Mode {
  int state_dim = 0;
  int input_dim = 0;
  SemialgebraicSet X;   // state_dim vars
  SemialgebraicSet U;   // input_dim vars
  PolynomialVector f;   // state_dim components over joint vars
  Polynomial c;         // joint vars

  int joint_dim() const { return state_dim + input_dim; }
  /// Conjunction of X and U lifted to the joint variable set.
  SemialgebraicSet joint_set() const;
};

/// Sparse linear constraint over the moments of one or more measures:
///   lo <= sum entries coef * moments[measure_id][moment_index] <= hi.
/// Equality rows have lo == hi.
struct LinearMomentConstraint {
  struct Entry {
    int measure_id;
    std::size_t moment_index;
    double coef;
  };
  std::vector<Entry> entries;
  double lo = 0.0;
  double hi = 0.0;

  bool is_equality() const { return lo == hi; }
};

constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Identifiers of the three measures tied by a transport system.
struct TransportIds {
  int occupation;  // joint (x,u) moments
  int initial;     // state moments
  int terminal;    // state moments
};

/// Transport equality system of one mode at truncation 2d along with
/// the test monomials generating it.
struct LiouvilleSystem {
  std::vector<Monomial> test_monomials;  // state-variable monomials
  std::vector<LinearMomentConstraint> rows;
};

/// One equality per admissible state monomial phi (deg(phi) <= 2d and
/// deg(grad(phi)^T f) <= 2d):
///   <Lphi, mu> + <phi, mu0> - <phi, muT> = 0.
/// Row order follows the graded-lex order of phi.
LiouvilleSystem liouville_rows(const Mode& mode, int d, TransportIds ids);

/// Mass bounds t_min <= mass(mu) <= t_max. Trivial bounds (0, inf)
/// produce no rows; t_min > t_max is an error.
std::vector<LinearMomentConstraint> horizon_bounds(int measure_id,
                                                   double t_min, double t_max);

}  // namespace homp

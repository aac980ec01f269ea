#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "homp/conic.hpp"
#include "homp/liouville.hpp"
#include "homp/moments.hpp"

namespace homp {

using ModeId = std::string;
using Edge = std::pair<ModeId, ModeId>;

struct GmpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Initial or terminal condition: a fixed point mass or a free
/// probability measure supported on a set (state variables).
struct BoundarySpec {
  enum class Kind { dirac, free_on_set };
  Kind kind = Kind::dirac;
  std::vector<double> point;
  SemialgebraicSet set;

  static BoundarySpec at_point(std::vector<double> x) {
    BoundarySpec b;
    b.kind = Kind::dirac;
    b.point = std::move(x);
    return b;
  }
  static BoundarySpec on_set(SemialgebraicSet s) {
    BoundarySpec b;
    b.kind = Kind::free_on_set;
    b.set = std::move(s);
    return b;
  }
};

/// Graph of modes with transition set, designated source/target and
/// boundary conditions. All modes share the state dimension; input
/// dimensions may differ.
struct HybridSystem {
  std::map<ModeId, Mode> modes;
  std::set<Edge> transitions;
  ModeId source;
  ModeId target;
  BoundarySpec initial;
  BoundarySpec terminal;
  double t_max = 50.0;  // bound on total occupation mass; kUnbounded disables

  int state_dim() const;
  std::vector<Edge> sorted_edges() const {
    return {transitions.begin(), transitions.end()};
  }
  /// Throws GmpError on dangling transitions, mixed state dimensions,
  /// or a target unreachable from the source.
  void validate() const;
};

/// Where each measure of the assembled program lives in the variable
/// vector, plus the equality-row ranges needed to map duals back.
struct MeasureSlot {
  int offset = 0;
  int length = 0;
  int num_vars = 0;
};

struct GmpIndex {
  int degree = 0;  // relaxation order d; moments truncated at 2d
  struct EdgeSlots {
    MeasureSlot mu, mu0, muT;
    int liouville_row_begin = 0;
    std::vector<Monomial> phis;  // test monomials, one per Liouville row
  };
  std::map<Edge, EdgeSlots> edges;
  std::optional<MeasureSlot> initial_free;
  std::optional<MeasureSlot> terminal_free;
};

struct AssembledGmp {
  ConicProgram program;
  GmpIndex index;
};

/// Builds the conic relaxation at order d: per-edge transport rows and
/// moment/localizing blocks, per-node moment-wise flow conservation,
/// boundary handling, and the total-mass horizon row. At d = 0 each
/// edge's occupation mass is additionally pinned to its transition
/// mass, which reduces the program to the shortest-path linear program
/// for constant costs.
AssembledGmp assemble(const HybridSystem& sys, int d);

struct EdgeMeasureBlock {
  MomentVector mu;   // joint (x,u) moments
  MomentVector mu0;  // state moments at segment entry
  MomentVector muT;  // state moments at segment exit
};

struct GmpSolution {
  SolveStatus status = SolveStatus::inaccurate;
  double objective = 0.0;
  std::map<Edge, EdgeMeasureBlock> edge_blocks;
  std::map<Edge, Polynomial> dual_liouville;  // value function per edge
  std::optional<MomentVector> initial_measure;
  std::optional<MomentVector> terminal_measure;
  int iterations = 0;
  double solve_seconds = 0.0;
  std::string solver_message;
};

/// Runs the adapter and maps primal/dual vectors back onto measures and
/// per-edge value functions.
GmpSolution solve(const AssembledGmp& assembled, SolverAdapter& adapter);

/// Smallest eigenvalue over all PSD blocks evaluated at the solution
/// point; nonnegative up to solver tolerance for a clean solve.
double min_psd_eigenvalue(const ConicProgram& program, const Eigen::VectorXd& z);

}  // namespace homp

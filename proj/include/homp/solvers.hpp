#pragma once

#include <memory>
#include <string>

#include "homp/conic.hpp"

namespace homp {

/// Dense two-phase simplex for programs whose PSD blocks are all 1x1
/// (plain linear programs). Exact basic solutions and equality duals;
/// Bland's rule for anti-cycling.
class SimplexSolver : public SolverAdapter {
 public:
  ConicSolution solve(const ConicProgram& program) override;
  std::string name() const override { return "simplex"; }
};

/// Subprocess adapter around an interior-point conic solver (Clarabel)
/// driven through a bundled Python worker. Handles PSD blocks of any
/// size and returns equality duals.
class ClarabelSolver : public SolverAdapter {
 public:
  ConicSolution solve(const ConicProgram& program) override;
  std::string name() const override { return "clarabel"; }

  /// Re-solves an exported ".dat-s" file through the same backend;
  /// used to cross-check the SDPA writer.
  static double solve_sdpa_file(const std::string& path);
};

/// "auto" routes LP-only programs to the simplex and everything else to
/// the subprocess backend. Throws std::invalid_argument for unknown ids.
std::unique_ptr<SolverAdapter> make_solver(const std::string& id,
                                           const ConicProgram& program);

}  // namespace homp

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace homp {

/// Standard-form conic program over scalar variables z:
///   minimize    objective . z
///   subject to  A z = b                      (equality rows)
///               z_j >= 0 for j in nonneg     (scalar cone)
///               S_k(z) = sum_j z_j M_kj + C_k  PSD   (LMI blocks)
struct ConicProgram {
  struct PsdEntry {
    int row, col;  // upper triangle, row <= col
    int var;       // variable index
    double coef;
  };
  struct PsdConst {
    int row, col;
    double value;
  };
  struct PsdBlock {
    int size = 0;
    std::vector<PsdEntry> entries;
    std::vector<PsdConst> constants;
  };
  struct EqRow {
    std::vector<std::pair<int, double>> coeffs;
    double rhs = 0.0;
  };

  int num_vars = 0;
  std::vector<int> nonneg;  // indices of sign-constrained scalars
  std::vector<EqRow> equalities;
  std::vector<PsdBlock> psd_blocks;
  std::vector<std::pair<int, double>> objective;

  int add_var() { return num_vars++; }
  int add_nonneg_var() {
    nonneg.push_back(num_vars);
    return num_vars++;
  }
  bool lp_only() const {
    for (const auto& b : psd_blocks)
      if (b.size > 1) return false;
    return true;
  }
  /// Dense realization of PSD block k at the point z.
  Eigen::MatrixXd psd_value(int k, const Eigen::VectorXd& z) const;
};

enum class SolveStatus { optimal, infeasible, unbounded, inaccurate };

std::string to_string(SolveStatus s);

/// Raw solver output. Equality duals y follow the convention
/// L(z, y) = c.z + y.(A z - b): at an optimum c + A^T y equals the
/// cone-adjoint terms and the dual objective is -b.y.
struct ConicSolution {
  SolveStatus status = SolveStatus::inaccurate;
  double objective = 0.0;
  Eigen::VectorXd z;
  Eigen::VectorXd eq_duals;
  int iterations = 0;
  double solve_seconds = 0.0;
  std::string message;
};

class SolverAdapter {
 public:
  virtual ~SolverAdapter() = default;
  virtual ConicSolution solve(const ConicProgram& program) = 0;
  virtual std::string name() const = 0;
};

/// Writes the program in the SDPA sparse format (".dat-s"): header with
/// variable count, block count and block sizes (negative = diagonal),
/// the cost row, then 1-based upper-triangle entries
/// "<matno> <blkno> <i> <j> <value>". Equality rows become paired
/// inequalities in a diagonal block; nonnegative scalars share another
/// diagonal block.
void export_sdpa(const ConicProgram& program, const std::string& path);

/// Errors raised by adapters when the backend itself fails (not when it
/// reports infeasibility).
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace homp

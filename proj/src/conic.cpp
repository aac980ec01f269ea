#include "homp/conic.hpp"

#include <cinttypes>
#include <cstdio>
#include <stdexcept>

namespace homp {

Eigen::MatrixXd ConicProgram::psd_value(int k, const Eigen::VectorXd& z) const {
  const auto& blk = psd_blocks.at(static_cast<std::size_t>(k));
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(blk.size, blk.size);
  for (const auto& c : blk.constants) {
    S(c.row, c.col) += c.value;
    if (c.row != c.col) S(c.col, c.row) += c.value;
  }
  for (const auto& e : blk.entries) {
    S(e.row, e.col) += e.coef * z[e.var];
    if (e.row != e.col) S(e.col, e.row) += e.coef * z[e.var];
  }
  return S;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::inaccurate: return "inaccurate";
  }
  return "unknown";
}

void export_sdpa(const ConicProgram& program, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("export_sdpa: cannot open " + path);

  // Block table: PSD blocks first, then one diagonal block for the
  // nonnegative scalars, then one diagonal block holding each equality
  // as a +/- pair.
  const int num_psd = static_cast<int>(program.psd_blocks.size());
  const int nonneg_count = static_cast<int>(program.nonneg.size());
  const int eq_count = static_cast<int>(program.equalities.size());
  int nblocks = num_psd;
  const int nonneg_block = nonneg_count > 0 ? ++nblocks : 0;
  const int eq_block = eq_count > 0 ? ++nblocks : 0;

  std::fprintf(f, "%d\n", program.num_vars);
  std::fprintf(f, "%d\n", nblocks);
  for (int k = 0; k < num_psd; ++k) {
    std::fprintf(f, "%d%s", program.psd_blocks[k].size,
                 (k + 1 < nblocks) ? " " : "");
  }
  if (nonneg_block) std::fprintf(f, "-%d%s", nonneg_count, eq_block ? " " : "");
  if (eq_block) std::fprintf(f, "-%d", 2 * eq_count);
  std::fprintf(f, "\n");

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(program.num_vars);
  for (const auto& [var, coef] : program.objective) cost[var] += coef;
  for (int j = 0; j < program.num_vars; ++j)
    std::fprintf(f, "%.17g%s", cost[j], (j + 1 < program.num_vars) ? " " : "");
  std::fprintf(f, "\n");

  auto entry = [&](int matno, int blkno, int i, int j, double v) {
    if (v == 0.0) return;
    std::fprintf(f, "%d %d %d %d %.17g\n", matno, blkno, i + 1, j + 1, v);
  };

  // LMI blocks: S_k(z) = sum_j z_j M_kj + C_k >= 0 maps to the SDPA
  // form sum_j z_j F_j - F_0 with F_0 = -C_k.
  for (int k = 0; k < num_psd; ++k) {
    const auto& blk = program.psd_blocks[k];
    for (const auto& c : blk.constants) entry(0, k + 1, c.row, c.col, -c.value);
    for (const auto& e : blk.entries) entry(e.var + 1, k + 1, e.row, e.col, e.coef);
  }
  for (int i = 0; i < nonneg_count; ++i)
    entry(program.nonneg[i] + 1, nonneg_block, i, i, 1.0);
  for (int r = 0; r < eq_count; ++r) {
    const auto& row = program.equalities[r];
    for (const auto& [var, coef] : row.coeffs) {
      entry(var + 1, eq_block, 2 * r, 2 * r, coef);
      entry(var + 1, eq_block, 2 * r + 1, 2 * r + 1, -coef);
    }
    entry(0, eq_block, 2 * r, 2 * r, row.rhs);
    entry(0, eq_block, 2 * r + 1, 2 * r + 1, -row.rhs);
  }
  std::fclose(f);
}

}  // namespace homp

#include "homp/gmp.hpp"

#include <algorithm>
#include <deque>

namespace homp {

int HybridSystem::state_dim() const {
  if (modes.empty()) throw GmpError("hybrid system has no modes");
  return modes.begin()->second.state_dim;
}

void HybridSystem::validate() const {
  if (!modes.count(source)) throw GmpError("unknown source mode: " + source);
  if (!modes.count(target)) throw GmpError("unknown target mode: " + target);
  const int nx = state_dim();
  for (const auto& [id, mode] : modes) {
    if (mode.state_dim != nx)
      throw GmpError("mode " + id + " has mismatched state dimension");
    if (mode.f.size() != mode.state_dim)
      throw GmpError("mode " + id + " dynamics component count != state_dim");
  }
  for (const auto& [i, j] : transitions) {
    if (!modes.count(i) || !modes.count(j))
      throw GmpError("transition (" + i + "," + j + ") references unknown mode");
  }
  // Reachability s -> t.
  std::set<ModeId> seen{source};
  std::deque<ModeId> queue{source};
  while (!queue.empty()) {
    const ModeId cur = queue.front();
    queue.pop_front();
    for (const auto& [i, j] : transitions) {
      if (i == cur && !seen.count(j)) {
        seen.insert(j);
        queue.push_back(j);
      }
    }
  }
  if (!seen.count(target))
    throw GmpError("target " + target + " unreachable from source " + source);
}

namespace {

void add_moment_block(ConicProgram& prog, const MeasureSlot& slot, int d) {
  const auto layout = moment_matrix_layout(slot.num_vars, d);
  ConicProgram::PsdBlock blk;
  blk.size = layout.size();
  for (int i = 0; i < blk.size; ++i)
    for (int j = i; j < blk.size; ++j)
      blk.entries.push_back({i, j, slot.offset + layout.entry_index(i, j), 1.0});
  prog.psd_blocks.push_back(std::move(blk));
}

void add_localizing_blocks(ConicProgram& prog, const MeasureSlot& slot,
                           const SemialgebraicSet& set, int d) {
  for (const auto& g : set.inequalities) {
    if (g.degree() > 2 * d) continue;  // not representable at this order
    const auto layout = localizing_layout(g, slot.num_vars, d);
    ConicProgram::PsdBlock blk;
    blk.size = layout.size();
    for (int i = 0; i < blk.size; ++i) {
      for (int j = i; j < blk.size; ++j) {
        for (const auto& [idx, c] : layout.entries[i][j].terms) {
          blk.entries.push_back({i, j, slot.offset + static_cast<int>(idx), c});
        }
      }
    }
    prog.psd_blocks.push_back(std::move(blk));
  }
}

}  // namespace

AssembledGmp assemble(const HybridSystem& sys, int d) {
  if (d < 0) throw GmpError("relaxation degree must be nonnegative");
  sys.validate();
  const int nx = sys.state_dim();
  const int cap = 2 * d;
  for (const auto& [id, mode] : sys.modes) {
    if (mode.c.degree() > cap)
      throw GmpError("stage cost of mode " + id + " has degree " +
                     std::to_string(mode.c.degree()) + " > 2d: " +
                     mode.c.to_string());
  }

  AssembledGmp out;
  ConicProgram& prog = out.program;
  GmpIndex& index = out.index;
  index.degree = d;

  const int state_len = static_cast<int>(monomial_count(nx, cap));
  const auto edges = sys.sorted_edges();

  auto new_slot = [&](int num_vars) {
    MeasureSlot slot;
    slot.num_vars = num_vars;
    slot.length = static_cast<int>(monomial_count(num_vars, cap));
    slot.offset = prog.num_vars;
    prog.num_vars += slot.length;
    return slot;
  };

  for (const auto& e : edges) {
    const Mode& mode = sys.modes.at(e.first);
    GmpIndex::EdgeSlots slots;
    slots.mu = new_slot(mode.joint_dim());
    slots.mu0 = new_slot(nx);
    slots.muT = new_slot(nx);
    index.edges.emplace(e, std::move(slots));
  }
  if (sys.initial.kind == BoundarySpec::Kind::free_on_set)
    index.initial_free = new_slot(nx);
  if (sys.terminal.kind == BoundarySpec::Kind::free_on_set)
    index.terminal_free = new_slot(nx);

  // Transport rows per edge.
  for (const auto& e : edges) {
    auto& slots = index.edges.at(e);
    slots.liouville_row_begin = static_cast<int>(prog.equalities.size());
    const auto sysrows =
        liouville_rows(sys.modes.at(e.first), d, TransportIds{0, 1, 2});
    slots.phis = sysrows.test_monomials;
    const int offsets[3] = {slots.mu.offset, slots.mu0.offset,
                            slots.muT.offset};
    for (const auto& row : sysrows.rows) {
      ConicProgram::EqRow eq;
      for (const auto& entry : row.entries) {
        eq.coeffs.emplace_back(
            offsets[entry.measure_id] + static_cast<int>(entry.moment_index),
            entry.coef);
      }
      eq.rhs = 0.0;
      prog.equalities.push_back(std::move(eq));
    }
  }

  // Moment-wise conservation at each node:
  //   sum_k mu_ik0 - sum_k mu_kiT = [i==s] mu0 - [i==t] muT.
  const auto dirac_rhs = [&](const BoundarySpec& spec) {
    return dirac_moments(spec.point, cap).values;
  };
  for (const auto& [node, mode] : sys.modes) {
    (void)mode;
    for (int m = 0; m < state_len; ++m) {
      ConicProgram::EqRow eq;
      for (const auto& e : edges) {
        if (e.first == node)
          eq.coeffs.emplace_back(index.edges.at(e).mu0.offset + m, 1.0);
        if (e.second == node)
          eq.coeffs.emplace_back(index.edges.at(e).muT.offset + m, -1.0);
      }
      if (eq.coeffs.empty()) continue;
      if (node == sys.source) {
        if (index.initial_free)
          eq.coeffs.emplace_back(index.initial_free->offset + m, -1.0);
        else
          eq.rhs += dirac_rhs(sys.initial)[m];
      }
      if (node == sys.target) {
        if (index.terminal_free)
          eq.coeffs.emplace_back(index.terminal_free->offset + m, 1.0);
        else
          eq.rhs -= dirac_rhs(sys.terminal)[m];
      }
      prog.equalities.push_back(std::move(eq));
    }
  }

  // Free boundary measures are probability measures.
  for (const auto& slot : {index.initial_free, index.terminal_free}) {
    if (!slot) continue;
    ConicProgram::EqRow eq;
    eq.coeffs.emplace_back(slot->offset, 1.0);
    eq.rhs = 1.0;
    prog.equalities.push_back(std::move(eq));
  }

  // Horizon: total occupation mass bounded by t_max.
  if (sys.t_max != kUnbounded) {
    if (sys.t_max < 0.0) throw GmpError("t_max must be nonnegative");
    ConicProgram::EqRow eq;
    for (const auto& e : edges)
      eq.coeffs.emplace_back(index.edges.at(e).mu.offset, 1.0);
    eq.coeffs.emplace_back(prog.add_nonneg_var(), 1.0);
    eq.rhs = sys.t_max;
    prog.equalities.push_back(std::move(eq));
  }

  // Order 0 carries no transport information on the occupation mass;
  // pinning it to the transition mass makes the program the
  // shortest-path LP for constant costs.
  if (d == 0) {
    for (const auto& e : edges) {
      ConicProgram::EqRow eq;
      eq.coeffs.emplace_back(index.edges.at(e).mu.offset, 1.0);
      eq.coeffs.emplace_back(index.edges.at(e).mu0.offset, -1.0);
      eq.rhs = 0.0;
      prog.equalities.push_back(std::move(eq));
    }
  }

  // Cone blocks.
  for (const auto& e : edges) {
    const Mode& mi = sys.modes.at(e.first);
    const Mode& mj = sys.modes.at(e.second);
    const auto& slots = index.edges.at(e);
    add_moment_block(prog, slots.mu, d);
    add_localizing_blocks(prog, slots.mu, mi.joint_set(), d);
    add_moment_block(prog, slots.mu0, d);
    add_localizing_blocks(prog, slots.mu0, mi.X, d);
    add_moment_block(prog, slots.muT, d);
    // Exit measures live on the guard: both endpoint state sets.
    add_localizing_blocks(prog, slots.muT, mi.X, d);
    add_localizing_blocks(prog, slots.muT, mj.X, d);
  }
  if (index.initial_free) {
    add_moment_block(prog, *index.initial_free, d);
    add_localizing_blocks(prog, *index.initial_free, sys.initial.set, d);
  }
  if (index.terminal_free) {
    add_moment_block(prog, *index.terminal_free, d);
    add_localizing_blocks(prog, *index.terminal_free, sys.terminal.set, d);
  }

  // Objective: sum of <c_i, mu_ij>.
  for (const auto& e : edges) {
    const auto& slots = index.edges.at(e);
    for (const auto& [m, c] : sys.modes.at(e.first).c.terms()) {
      prog.objective.emplace_back(
          slots.mu.offset + static_cast<int>(monomial_index(m)), c);
    }
  }
  return out;
}

GmpSolution solve(const AssembledGmp& assembled, SolverAdapter& adapter) {
  const ConicProgram& prog = assembled.program;
  const GmpIndex& index = assembled.index;
  ConicSolution raw = adapter.solve(prog);

  GmpSolution sol;
  sol.status = raw.status;
  sol.objective = raw.objective;
  sol.iterations = raw.iterations;
  sol.solve_seconds = raw.solve_seconds;
  sol.solver_message = raw.message;
  if (raw.z.size() == 0) return sol;

  const int cap = 2 * index.degree;
  auto take = [&](const MeasureSlot& slot) {
    MomentVector mv(slot.num_vars, cap);
    mv.values = raw.z.segment(slot.offset, slot.length);
    return mv;
  };
  const bool have_duals = raw.eq_duals.size() ==
                          static_cast<Eigen::Index>(prog.equalities.size());
  for (const auto& [e, slots] : index.edges) {
    EdgeMeasureBlock blk;
    blk.mu = take(slots.mu);
    blk.mu0 = take(slots.mu0);
    blk.muT = take(slots.muT);
    sol.edge_blocks.emplace(e, std::move(blk));
    if (have_duals) {
      Polynomial v(slots.mu0.num_vars);
      for (std::size_t r = 0; r < slots.phis.size(); ++r) {
        const double dual =
            raw.eq_duals[slots.liouville_row_begin + static_cast<int>(r)];
        if (dual != 0.0) v.add_term(slots.phis[r], dual);
      }
      sol.dual_liouville.emplace(e, std::move(v));
    }
  }
  if (index.initial_free) sol.initial_measure = take(*index.initial_free);
  if (index.terminal_free) sol.terminal_measure = take(*index.terminal_free);
  return sol;
}

double min_psd_eigenvalue(const ConicProgram& program,
                          const Eigen::VectorXd& z) {
  double lo = 0.0;
  for (std::size_t k = 0; k < program.psd_blocks.size(); ++k) {
    lo = std::min(lo, min_eigenvalue(program.psd_value(static_cast<int>(k), z)));
  }
  return lo;
}

}  // namespace homp

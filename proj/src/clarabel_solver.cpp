#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "homp/solvers.hpp"

namespace homp {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Worker kept next to the binary logic so the library is self-contained;
// materialized into the temp directory on first use.
constexpr const char* kWorkerSource = R"PY(
import json, math, sys

import numpy as np
from scipy import sparse
import clarabel


def solve_cone_form(n, q, trip, b, cones):
    A = sparse.coo_matrix(
        (trip[2], (trip[0], trip[1])), shape=(len(b), n)
    ).tocsc()
    P = sparse.csc_matrix((n, n))
    settings = clarabel.DefaultSettings()
    settings.verbose = False
    solver = clarabel.DefaultSolver(P, np.asarray(q), A, np.asarray(b), cones, settings)
    return solver.solve()


def run_solve(path_in, path_out):
    with open(path_in) as f:
        prob = json.load(f)
    n = prob["num_vars"]
    q = [0.0] * n
    for j, c in zip(prob["objective"]["idx"], prob["objective"]["coef"]):
        q[j] += c
    trip = ([], [], [])
    b = []
    cones = []

    def add(r, c, v):
        trip[0].append(r)
        trip[1].append(c)
        trip[2].append(v)

    eq = prob["eq"]
    m_eq = len(eq["rhs"])
    for r, c, v in zip(eq["r"], eq["c"], eq["v"]):
        add(r, c, v)
    b.extend(eq["rhs"])
    nrow = m_eq
    if m_eq:
        cones.append(clarabel.ZeroConeT(m_eq))
    nonneg = prob.get("nonneg", [])
    if nonneg:
        for j in nonneg:
            add(nrow, j, -1.0)
            b.append(0.0)
            nrow += 1
        cones.append(clarabel.NonnegativeConeT(len(nonneg)))
    s2 = math.sqrt(2.0)
    for blk in prob.get("psd", []):
        k = blk["size"]
        ncell = k * (k + 1) // 2
        base = nrow

        def pos(i, j):  # column-major upper triangle, i <= j
            return j * (j + 1) // 2 + i

        cell_const = [0.0] * ncell
        cc = blk["const"]
        for i, j, v in zip(cc["r"], cc["c"], cc["v"]):
            cell_const[pos(i, j)] += (1.0 if i == j else s2) * v
        tt = blk["tri"]
        for i, j, var, coef in zip(tt["r"], tt["c"], tt["var"], tt["coef"]):
            add(base + pos(i, j), var, -(1.0 if i == j else s2) * coef)
        b.extend(cell_const)
        nrow += ncell
        cones.append(clarabel.PSDTriangleConeT(k))

    sol = solve_cone_form(n, q, trip, b, cones)
    status = str(sol.status)
    out = {
        "status": status,
        "obj": float(sol.obj_val) if sol.obj_val is not None else 0.0,
        "x": [float(v) for v in sol.x],
        "eq_dual": [float(v) for v in sol.z[:m_eq]],
        "iterations": int(getattr(sol, "iterations", 0)),
        "solve_time": float(getattr(sol, "solve_time", 0.0)),
    }
    with open(path_out, "w") as f:
        json.dump(out, f)


def run_sdpa(path_in, path_out):
    # Reads the ".dat-s" exchange format: variable count, block count,
    # block sizes (negative = diagonal), cost row, then entries
    # "<matno> <blkno> <i> <j> <value>" (1-based, upper triangle) of
    # min c.x  s.t.  sum_j x_j F_j - F_0 >= 0 per block.
    tokens = []
    with open(path_in) as f:
        for line in f:
            if line.lstrip().startswith(('"', "*")):
                continue
            tokens.extend(line.replace(",", " ").split())
    it = iter(tokens)
    m = int(next(it))
    nblocks = int(next(it))
    sizes = [int(next(it)) for _ in range(nblocks)]
    cost = [float(next(it)) for _ in range(m)]
    mats = {}
    while True:
        try:
            matno = int(next(it))
        except StopIteration:
            break
        blk, i, j, v = int(next(it)), int(next(it)), int(next(it)), float(next(it))
        mats.setdefault((matno, blk), []).append((i - 1, j - 1, v))

    trip = ([], [], [])
    b = []
    cones = []
    nrow = 0

    def add(r, c, v):
        trip[0].append(r)
        trip[1].append(c)
        trip[2].append(v)

    s2 = math.sqrt(2.0)
    for blk_no, size in enumerate(sizes, start=1):
        if size < 0:  # diagonal block: |size| scalar inequalities
            k = -size
            for cell in range(k):
                for var in range(m):
                    for (i, j, v) in mats.get((var + 1, blk_no), []):
                        if i == cell and j == cell:
                            add(nrow + cell, var, -v)
            rhs = [0.0] * k
            for (i, j, v) in mats.get((0, blk_no), []):
                if i == j:
                    rhs[i] -= v
            b.extend(rhs)
            nrow += k
            cones.append(clarabel.NonnegativeConeT(k))
        else:
            k = size
            ncell = k * (k + 1) // 2

            def pos(i, j):
                return j * (j + 1) // 2 + i

            rhs = [0.0] * ncell
            for (i, j, v) in mats.get((0, blk_no), []):
                i, j = min(i, j), max(i, j)
                rhs[pos(i, j)] -= (1.0 if i == j else s2) * v
            for var in range(m):
                for (i, j, v) in mats.get((var + 1, blk_no), []):
                    i, j = min(i, j), max(i, j)
                    add(nrow + pos(i, j), var, -(1.0 if i == j else s2) * v)
            b.extend(rhs)
            nrow += ncell
            cones.append(clarabel.PSDTriangleConeT(k))

    sol = solve_cone_form(m, cost, trip, b, cones)
    with open(path_out, "w") as f:
        json.dump({"status": str(sol.status), "obj": float(sol.obj_val)}, f)


def main():
    mode, path_in, path_out = sys.argv[1], sys.argv[2], sys.argv[3]
    if mode == "solve":
        run_solve(path_in, path_out)
    elif mode == "sdpa":
        run_sdpa(path_in, path_out)
    else:
        raise SystemExit(f"unknown mode {mode}")


if __name__ == "__main__":
    main()
)PY";

std::string python_interpreter() {
  if (const char* env = std::getenv("HOMP_PYTHON")) return env;
  return "python3";
}

const std::string& worker_path() {
  static std::string path;
  static std::once_flag once;
  std::call_once(once, [] {
    fs::path p = fs::temp_directory_path() /
                 ("homp_conic_worker_" + std::to_string(::getpid()) + ".py");
    std::ofstream out(p);
    out << kWorkerSource;
    path = p.string();
  });
  return path;
}

fs::path unique_temp(const char* suffix) {
  static std::atomic<unsigned> counter{0};
  return fs::temp_directory_path() /
         ("homp_" + std::to_string(::getpid()) + "_" +
          std::to_string(counter.fetch_add(1)) + suffix);
}

json run_worker(const std::string& mode, const fs::path& in_path) {
  const fs::path out_path = unique_temp("_out.json");
  const fs::path err_path = unique_temp("_err.txt");
  std::ostringstream cmd;
  cmd << python_interpreter() << " \"" << worker_path() << "\" " << mode << " \""
      << in_path.string() << "\" \"" << out_path.string() << "\" 2> \""
      << err_path.string() << "\"";
  const int rc = std::system(cmd.str().c_str());
  json out;
  if (rc == 0) {
    std::ifstream f(out_path);
    if (f) f >> out;
  }
  std::string err;
  {
    std::ifstream f(err_path);
    std::stringstream ss;
    ss << f.rdbuf();
    err = ss.str();
  }
  std::error_code ec;
  fs::remove(out_path, ec);
  fs::remove(err_path, ec);
  if (rc != 0 || out.is_null())
    throw SolverError("conic worker failed (rc=" + std::to_string(rc) +
                      "): " + err.substr(0, 2000));
  return out;
}

SolveStatus map_status(const std::string& s) {
  if (s == "Solved") return SolveStatus::optimal;
  if (s == "PrimalInfeasible" || s == "AlmostPrimalInfeasible")
    return SolveStatus::infeasible;
  if (s == "DualInfeasible" || s == "AlmostDualInfeasible")
    return SolveStatus::unbounded;
  return SolveStatus::inaccurate;
}

}  // namespace

ConicSolution ClarabelSolver::solve(const ConicProgram& program) {
  const auto t0 = std::chrono::steady_clock::now();
  json prob;
  prob["num_vars"] = program.num_vars;
  prob["nonneg"] = program.nonneg;
  {
    json idx = json::array(), coef = json::array();
    for (const auto& [v, c] : program.objective) {
      idx.push_back(v);
      coef.push_back(c);
    }
    prob["objective"] = {{"idx", idx}, {"coef", coef}};
  }
  {
    json r = json::array(), c = json::array(), v = json::array(),
         rhs = json::array();
    for (std::size_t i = 0; i < program.equalities.size(); ++i) {
      for (const auto& [var, coef] : program.equalities[i].coeffs) {
        r.push_back(i);
        c.push_back(var);
        v.push_back(coef);
      }
      rhs.push_back(program.equalities[i].rhs);
    }
    prob["eq"] = {{"r", r}, {"c", c}, {"v", v}, {"rhs", rhs}};
  }
  {
    json blocks = json::array();
    for (const auto& blk : program.psd_blocks) {
      json tr = json::array(), tc = json::array(), tv = json::array(),
           tcoef = json::array();
      for (const auto& e : blk.entries) {
        tr.push_back(e.row);
        tc.push_back(e.col);
        tv.push_back(e.var);
        tcoef.push_back(e.coef);
      }
      json cr = json::array(), cc = json::array(), cv = json::array();
      for (const auto& k : blk.constants) {
        cr.push_back(k.row);
        cc.push_back(k.col);
        cv.push_back(k.value);
      }
      blocks.push_back(
          {{"size", blk.size},
           {"tri", {{"r", tr}, {"c", tc}, {"var", tv}, {"coef", tcoef}}},
           {"const", {{"r", cr}, {"c", cc}, {"v", cv}}}});
    }
    prob["psd"] = blocks;
  }

  const fs::path in_path = unique_temp("_prob.json");
  {
    std::ofstream f(in_path);
    f << prob;
  }
  json out;
  try {
    out = run_worker("solve", in_path);
  } catch (...) {
    std::error_code ec;
    fs::remove(in_path, ec);
    throw;
  }
  std::error_code ec;
  fs::remove(in_path, ec);

  ConicSolution sol;
  sol.status = map_status(out.at("status").get<std::string>());
  sol.message = out.at("status").get<std::string>();
  sol.objective = out.at("obj").get<double>();
  const auto x = out.at("x").get<std::vector<double>>();
  sol.z = Eigen::Map<const Eigen::VectorXd>(x.data(),
                                            static_cast<Eigen::Index>(x.size()));
  const auto y = out.at("eq_dual").get<std::vector<double>>();
  sol.eq_duals = Eigen::Map<const Eigen::VectorXd>(
      y.data(), static_cast<Eigen::Index>(y.size()));
  sol.iterations = out.value("iterations", 0);
  sol.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return sol;
}

double ClarabelSolver::solve_sdpa_file(const std::string& path) {
  json out = run_worker("sdpa", fs::path(path));
  if (out.at("status").get<std::string>() != "Solved")
    throw SolverError("sdpa re-solve not optimal: " +
                      out.at("status").get<std::string>());
  return out.at("obj").get<double>();
}

std::unique_ptr<SolverAdapter> make_solver(const std::string& id,
                                           const ConicProgram& program) {
  if (id == "simplex") return std::make_unique<SimplexSolver>();
  if (id == "clarabel") return std::make_unique<ClarabelSolver>();
  if (id == "auto") {
    if (program.lp_only()) return std::make_unique<SimplexSolver>();
    return std::make_unique<ClarabelSolver>();
  }
  throw std::invalid_argument("unknown solver id: " + id);
}

}  // namespace homp

#include "homp/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace homp {

namespace {

// C(n+k-1, k): monomials of exact degree k in n variables.
std::size_t count_exact(int num_vars, int k) {
  if (k == 0) return 1;
  if (num_vars == 0) return 0;
  // binomial(num_vars + k - 1, k)
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::size_t>(num_vars - 1 + i) /
        static_cast<std::size_t>(i);
  }
  return r;
}

}  // namespace

int Monomial::degree() const {
  return std::accumulate(exps.begin(), exps.end(), 0);
}

double Monomial::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != num_vars())
    throw std::invalid_argument("Monomial::evaluate: dimension mismatch");
  double v = 1.0;
  for (int i = 0; i < num_vars(); ++i) {
    for (int k = 0; k < exps[i]; ++k) v *= point[i];
  }
  return v;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  if (rhs.num_vars() != num_vars())
    throw std::invalid_argument("Monomial::operator*: variable count mismatch");
  Monomial out = *this;
  for (int i = 0; i < num_vars(); ++i) out.exps[i] += rhs.exps[i];
  return out;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Within a grade, larger exponent on an earlier variable comes first.
  for (std::size_t i = 0; i < a.exps.size(); ++i) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
  }
  return false;
}

std::size_t monomial_count(int num_vars, int max_degree) {
  // binomial(num_vars + max_degree, max_degree)
  std::size_t r = 1;
  for (int i = 1; i <= max_degree; ++i) {
    r = r * static_cast<std::size_t>(num_vars + i) / static_cast<std::size_t>(i);
  }
  return r;
}

std::size_t monomial_index(const Monomial& m) {
  for (int e : m.exps) {
    if (e < 0) throw std::invalid_argument("monomial_index: negative exponent");
  }
  const int n = m.num_vars();
  const int d = m.degree();
  std::size_t index = d > 0 ? monomial_count(n, d - 1) : 0;
  // Rank within the grade: count monomials of the same degree that
  // precede m (larger leading exponents first).
  int rem = d;
  for (int i = 0; i < n; ++i) {
    for (int a = rem; a > m.exps[i]; --a) {
      index += count_exact(n - i - 1, rem - a);
    }
    rem -= m.exps[i];
  }
  return index;
}

Monomial monomial_at(std::size_t index, int num_vars, int max_degree) {
  if (index >= monomial_count(num_vars, max_degree))
    throw std::out_of_range("monomial_at: index exceeds basis size");
  // Find the grade.
  int d = 0;
  while (monomial_count(num_vars, d) <= index) ++d;
  std::size_t rank = index - (d > 0 ? monomial_count(num_vars, d - 1) : 0);
  Monomial m;
  m.exps.assign(num_vars, 0);
  int rem = d;
  for (int i = 0; i < num_vars; ++i) {
    for (int a = rem; a >= 0; --a) {
      const std::size_t block = count_exact(num_vars - i - 1, rem - a);
      if (rank < block) {
        m.exps[i] = a;
        rem -= a;
        break;
      }
      rank -= block;
    }
  }
  return m;
}

Polynomial Polynomial::constant(int num_vars, double value) {
  Polynomial p(num_vars);
  Monomial one;
  one.exps.assign(num_vars, 0);
  p.add_term(one, value);
  return p;
}

Polynomial Polynomial::variable(int num_vars, int var) {
  if (var < 0 || var >= num_vars)
    throw std::invalid_argument("Polynomial::variable: var out of range");
  Polynomial p(num_vars);
  Monomial m;
  m.exps.assign(num_vars, 0);
  m.exps[var] = 1;
  p.add_term(m, 1.0);
  return p;
}

Polynomial Polynomial::from_term(Monomial m, double coef) {
  Polynomial p(m.num_vars());
  p.add_term(m, coef);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

double Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Monomial& m, double coef) {
  if (m.num_vars() != num_vars_)
    throw std::invalid_argument("Polynomial::add_term: variable count mismatch");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (coef != 0.0) terms_.emplace(m, coef);
    return;
  }
  it->second += coef;
  if (it->second == 0.0) terms_.erase(it);
}

double Polynomial::evaluate(std::span<const double> point) const {
  double v = 0.0;
  for (const auto& [m, c] : terms_) v += c * m.evaluate(point);
  return v;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  Polynomial out = *this;
  out += rhs;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.num_vars_ != num_vars_)
    throw std::invalid_argument("Polynomial::operator+: variable count mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  return *this + rhs * -1.0;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (rhs.num_vars_ != num_vars_)
    throw std::invalid_argument("Polynomial::operator*: variable count mismatch");
  Polynomial out(num_vars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial out(num_vars_);
  if (s == 0.0) return out;
  for (const auto& [m, c] : terms_) out.add_term(m, c * s);
  return out;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= num_vars_)
    throw std::invalid_argument("Polynomial::derivative: var out of range");
  Polynomial out(num_vars_);
  for (const auto& [m, c] : terms_) {
    if (m.exps[var] == 0) continue;
    Monomial d = m;
    d.exps[var] -= 1;
    out.add_term(d, c * m.exps[var]);
  }
  return out;
}

Polynomial Polynomial::widened(int new_num_vars) const {
  if (new_num_vars < num_vars_)
    throw std::invalid_argument("Polynomial::widened: cannot shrink variable set");
  Polynomial out(new_num_vars);
  for (const auto& [m, c] : terms_) {
    Monomial w = m;
    w.exps.resize(new_num_vars, 0);
    out.add_term(w, c);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (c >= 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    os << std::abs(c);
    for (int i = 0; i < num_vars_; ++i) {
      if (m.exps[i] == 0) continue;
      os << "*x" << i;
      if (m.exps[i] > 1) os << "^" << m.exps[i];
    }
  }
  return os.str();
}

nlohmann::json Polynomial::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    arr.push_back({{"exps", m.exps}, {"coef", c}});
  }
  return arr;
}

Polynomial Polynomial::from_json(const nlohmann::json& j, int num_vars) {
  if (!j.is_array())
    throw std::invalid_argument("polynomial JSON must be an array of terms");
  Polynomial p(num_vars);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exps") || !t.contains("coef"))
      throw std::invalid_argument("polynomial term needs \"exps\" and \"coef\"");
    std::vector<int> exps = t.at("exps").get<std::vector<int>>();
    if (static_cast<int>(exps.size()) != num_vars)
      throw std::invalid_argument("polynomial term has wrong exponent count");
    p.add_term(Monomial(std::move(exps)), t.at("coef").get<double>());
  }
  return p;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
  return num_vars_ == rhs.num_vars_ && terms_ == rhs.terms_;
}

int PolynomialVector::degree() const {
  int d = 0;
  for (const auto& p : components) d = std::max(d, p.degree());
  return d;
}

Polynomial koopman_apply(const Polynomial& phi, const PolynomialVector& f) {
  const int state_dim = f.size();
  const int joint = f.num_vars();
  if (state_dim == 0 || joint < state_dim)
    throw std::invalid_argument("koopman_apply: malformed vector field");
  Polynomial test = phi;
  if (test.num_vars() < joint) test = test.widened(joint);
  if (test.num_vars() != joint)
    throw std::invalid_argument("koopman_apply: variable count mismatch");
  for (const auto& [m, c] : test.terms()) {
    for (int i = state_dim; i < joint; ++i) {
      if (m.exps[i] != 0)
        throw std::invalid_argument(
            "koopman_apply: test function must depend on state variables only");
    }
  }
  Polynomial out(joint);
  for (int i = 0; i < state_dim; ++i) {
    out += test.derivative(i) * f.components[i];
  }
  return out;
}

}  // namespace homp

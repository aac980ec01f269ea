#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace homp {

/// Exponent vector of a monomial; one entry per variable.
struct Monomial {
  std::vector<int> exps;

  Monomial() = default;
  explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}

  int num_vars() const { return static_cast<int>(exps.size()); }
  int degree() const;
  double evaluate(std::span<const double> point) const;

  /// Product of two monomials over the same variable set.
  Monomial operator*(const Monomial& rhs) const;

  bool operator==(const Monomial& rhs) const { return exps == rhs.exps; }
};

/// Graded lexicographic order: total degree first, then earlier
/// variables with larger exponents first (so x1 precedes x2).
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_less(a, b);
  }
};

/// Number of monomials in num_vars variables of degree <= max_degree.
std::size_t monomial_count(int num_vars, int max_degree);

/// Position of m in the graded-lex enumeration of all monomials over
/// m.num_vars() variables. Index 0 is the constant monomial.
std::size_t monomial_index(const Monomial& m);

/// Inverse of monomial_index. Throws std::out_of_range if index is not
/// reachable within max_degree.
Monomial monomial_at(std::size_t index, int num_vars, int max_degree);

/// Sparse multivariate polynomial with real coefficients in canonical
/// form: no stored zero coefficients.
class Polynomial {
 public:
  Polynomial() : num_vars_(0) {}
  explicit Polynomial(int num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(int num_vars, double value);
  static Polynomial variable(int num_vars, int var);
  static Polynomial from_term(Monomial m, double coef);

  int num_vars() const { return num_vars_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // 0 for the zero polynomial
  std::size_t term_count() const { return terms_.size(); }

  double coeff(const Monomial& m) const;
  void add_term(const Monomial& m, double coef);

  const std::map<Monomial, double, GrlexLess>& terms() const { return terms_; }

  double evaluate(std::span<const double> point) const;

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator*(double s) const;
  Polynomial operator-() const { return *this * -1.0; }
  Polynomial& operator+=(const Polynomial& rhs);

  /// Formal partial derivative with respect to variable var.
  Polynomial derivative(int var) const;

  /// Same polynomial re-expressed over a wider variable set (appended
  /// variables get exponent zero). new_num_vars >= num_vars().
  Polynomial widened(int new_num_vars) const;

  std::string to_string() const;

  nlohmann::json to_json() const;
  static Polynomial from_json(const nlohmann::json& j, int num_vars);

  bool operator==(const Polynomial& rhs) const;

 private:
  int num_vars_;
  std::map<Monomial, double, GrlexLess> terms_;
};

/// Ordered list of polynomials over a shared variable set; used for
/// vector fields (one component per state variable).
struct PolynomialVector {
  std::vector<Polynomial> components;

  PolynomialVector() = default;
  explicit PolynomialVector(std::vector<Polynomial> c)
      : components(std::move(c)) {}

  int size() const { return static_cast<int>(components.size()); }
  int num_vars() const {
    return components.empty() ? 0 : components.front().num_vars();
  }
  int degree() const;
};

/// grad(phi)^T f for a test function phi depending only on the leading
/// f.size() (state) variables of the joint variable set. phi may be
/// given over the state block only or over the full joint set.
Polynomial koopman_apply(const Polynomial& phi, const PolynomialVector& f);

}  // namespace homp

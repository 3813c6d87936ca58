#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "twogal/gf.hpp"

namespace twogal {

// Sparse multivariate polynomial with coefficients in the ambient field.
struct Term {
  std::vector<uint16_t> e;  // exponent per variable
  FieldElem c;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(uint32_t nvars) : nv_(nvars) {}
  static Poly constant(uint32_t nvars, FieldElem c);
  static Poly variable(const FieldCtx& F, uint32_t nvars, uint32_t i);

  uint32_t nvars() const { return nv_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  uint32_t total_degree() const;

  static Poly add(const FieldCtx& F, const Poly& a, const Poly& b);
  static Poly sub(const FieldCtx& F, const Poly& a, const Poly& b);
  static Poly mul(const FieldCtx& F, const Poly& a, const Poly& b);
  static Poly neg(const FieldCtx& F, const Poly& a);
  static Poly pow(const FieldCtx& F, const Poly& a, uint32_t e);
  static Poly scale(const FieldCtx& F, FieldElem s, const Poly& a);

  FieldElem eval(const FieldCtx& F, std::span<const FieldElem> x) const;
  // Variables referenced by any term with nonzero exponent.
  std::vector<uint32_t> used_vars() const;

  // f(x_0,...,x_{k-1}) of total degree d -> form in k+1 variables where the
  // last variable carries the missing degree.
  static Poly homogenize(const FieldCtx& F, const Poly& f);

  std::string to_string(const FieldCtx& F, const std::vector<std::string>& names) const;

  void push_term(const FieldCtx& F, Term t);  // accumulates, keeps normal form

 private:
  uint32_t nv_ = 0;
  std::vector<Term> terms_;  // sorted by exponent vector, no zero coefficients
};

// Expression parsing: +, -, *, ^, parentheses, nonnegative integer literals,
// identifiers bound to variables or named field constants.
struct ExprEnv {
  const FieldCtx* F = nullptr;
  std::vector<std::string> vars;
  std::map<std::string, FieldElem> consts;
};

Poly parse_poly(const ExprEnv& env, const std::string& src);

// Roots of a univariate expression in `name`, in canonical order.
std::vector<FieldElem> roots_in_field(const FieldCtx& F, const std::string& name,
                                      const std::string& poly_src);

}  // namespace twogal

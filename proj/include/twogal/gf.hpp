#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "twogal/errors.hpp"

namespace twogal {

// Element of the ambient field GF(p^N), packed as
//   v = c0*p^(N-1) + c1*p^(N-2) + ... + c_{N-1}
// where e = c0 + c1*g + ... + c_{N-1}*g^(N-1) and g is the residue of t
// modulo the field modulus.  Numeric order on v is therefore digit-lex
// order with the constant digit compared first; this is the canonical
// element order used everywhere (least roots, place sorting, reports).
struct FieldElem {
  uint32_t v = 0;
  friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

constexpr int kMaxDeg = 24;

using Digits = std::array<uint8_t, kMaxDeg>;

// L(x) = sum_j coeff[j] * x^(p^pexp[j]), a GF(p)-linear map on the ambient field.
struct AdditiveTerm {
  FieldElem coeff;
  uint32_t pexp = 0;
};
using AdditivePoly = std::vector<AdditiveTerm>;

struct FieldOpts {
  uint32_t ambient_bits = 24;  // reject fields with p^N > 2^ambient_bits
  std::string gen_name = "g";
};

class FieldCtx {
 public:
  // Builds GF(p^N) with N = lcm(degrees).  The modulus is the least monic
  // irreducible of degree N, comparing coefficient vectors (a0,...,a_{N-1})
  // lexicographically with the constant term first.
  static std::shared_ptr<FieldCtx> build_ambient(uint32_t p,
                                                 const std::vector<uint32_t>& degrees,
                                                 const FieldOpts& opts = {});

  uint32_t char_p() const { return p_; }
  uint32_t degree() const { return n_; }
  uint32_t size() const { return size_; }            // p^N
  uint32_t unit_order() const { return m_; }         // p^N - 1
  const std::vector<uint8_t>& modulus() const { return mod_; }
  const std::string& gen_name() const { return gen_name_; }
  bool has_log_tables() const { return !log_.empty(); }

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return one_; }
  FieldElem gen() const { return gen_; }

  FieldElem from_int(uint64_t k) const;  // k mod p as a constant
  FieldElem from_digits(const std::vector<uint32_t>& ds) const;
  std::vector<uint32_t> to_digit_vec(FieldElem a) const;

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem mul_ref(FieldElem a, FieldElem b) const;  // schoolbook, no tables
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const;
  FieldElem pow(FieldElem a, uint64_t e) const;  // 0^0 = 1
  FieldElem frobenius(FieldElem a, uint32_t d) const;  // a^(p^d)

  bool in_subfield(FieldElem a, uint32_t d) const;  // requires d | N
  const std::vector<FieldElem>& subfield_elements(uint32_t d) const;

  std::vector<FieldElem> roots_of_unity(uint64_t n) const;
  // Least element of exact multiplicative order n.  The residue of t need not
  // generate the unit group, so subgroup generators go through this instead.
  FieldElem element_of_order(uint32_t n) const;
  // All x with x^n = c, via discrete logs when tables exist.
  std::vector<FieldElem> solve_power(uint64_t n, FieldElem c) const;
  // Reference kernels kept for testing and benchmarking.
  std::vector<FieldElem> solve_power_scan_serial(uint64_t n, FieldElem c) const;
  std::vector<FieldElem> solve_power_scan_parallel(uint64_t n, FieldElem c) const;
  // All x with L(x) = c, by GF(p)-linear algebra in the digit basis.
  std::vector<FieldElem> solve_additive(const AdditivePoly& L, FieldElem c) const;
  FieldElem eval_additive(const AdditivePoly& L, FieldElem x) const;

  std::string to_string(FieldElem a) const;

 private:
  FieldCtx() = default;
  void init(uint32_t p, uint32_t n, const FieldOpts& opts);
  FieldElem mul_poly(FieldElem a, FieldElem b) const;
  FieldElem pow_noexp(FieldElem a, uint64_t e) const;
  void unpack(FieldElem a, Digits& out) const;
  FieldElem pack(const Digits& d) const;

  uint32_t p_ = 0;
  uint32_t n_ = 0;
  uint32_t size_ = 0;
  uint32_t m_ = 0;
  std::vector<uint8_t> mod_;       // a0..a_{n-1}; leading coefficient 1 implicit
  std::vector<uint32_t> pows_;     // p^0..p^n
  FieldElem one_{0}, gen_{0};
  std::string gen_name_ = "g";
  std::vector<uint32_t> exp_;      // exp_[i] = gamma^i, size m_
  std::vector<uint32_t> log_;      // log_[v], UINT32_MAX for 0
  std::vector<uint32_t> frob1_;    // e -> e^p
  std::vector<uint32_t> addt_;     // packed add table for small odd-p fields
  mutable std::map<uint32_t, std::vector<FieldElem>> subfield_cache_;
};

// Modulus search helper, exposed for tests.
std::vector<uint8_t> least_irreducible(uint32_t p, uint32_t n);

}  // namespace twogal

#pragma once

#include <array>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "twogal/expr.hpp"

namespace twogal {

// Point of projective space of dimension 2..4, stored normalized: the leftmost
// nonzero coordinate is 1.  Unused slots stay zero so default comparison is a
// total order.
struct ProjPoint {
  uint8_t n = 0;  // number of coordinates, dim + 1
  std::array<FieldElem, 5> c{};

  auto operator<=>(const ProjPoint&) const = default;

  static ProjPoint make(const FieldCtx& F, std::span<const FieldElem> coords);
  void normalize(const FieldCtx& F);
  bool at_infinity() const { return c[n - 1].v == 0; }
  std::string to_string(const FieldCtx& F) const;
};

using Place = ProjPoint;

// One level of the coordinate-by-coordinate enumeration of a curve: the new
// variable either ranges freely over the subfield, or is cut out by an
// additive equation L(x) = rhs, or by a power equation x^e = rhs, with rhs a
// polynomial in the variables produced by earlier steps.
struct EnumStep {
  enum class Kind { Outer, Additive, Power };
  Kind kind = Kind::Outer;
  uint32_t var = 0;
  AdditivePoly lhs;
  uint32_t exponent = 0;
  Poly rhs;
};

struct CurveSpec {
  uint32_t dim = 2;                 // ambient projective dimension
  std::vector<std::string> vars;    // affine coordinates, size == dim
  std::vector<Poly> eqs;            // affine defining polynomials in those variables
  std::vector<EnumStep> chain;      // one step per variable, Outer first
  std::vector<ProjPoint> infinity;  // declared points at infinity (dim >= 3 only)
};

class CurveModel {
 public:
  CurveModel(std::shared_ptr<const FieldCtx> F, CurveSpec spec);

  const FieldCtx& field() const { return *F_; }
  const std::shared_ptr<const FieldCtx>& field_ptr() const { return F_; }
  uint32_t dim() const { return spec_.dim; }
  const CurveSpec& spec() const { return spec_; }
  const std::vector<Poly>& homogeneous_eqs() const { return hom_; }

  bool on_curve_affine(std::span<const FieldElem> x) const;
  bool on_curve(const ProjPoint& p) const;

  ProjPoint affine_point(std::span<const FieldElem> x) const;
  // chart coordinates of a place with nonzero last coordinate
  std::vector<FieldElem> dehomogenize(const ProjPoint& p) const;

  // All places rational over the degree-d subfield, sorted; cached per degree.
  const std::vector<Place>& places(uint32_t d) const;
  std::vector<Place> places_serial(uint32_t d) const;

 private:
  std::vector<Place> enumerate(uint32_t d, bool parallel) const;
  void solve_step(const EnumStep& st, FieldElem rhs, uint32_t d,
                  std::map<uint32_t, std::vector<FieldElem>>& memo,
                  const std::vector<FieldElem>** out) const;
  void descend(size_t level, std::vector<FieldElem>& x, uint32_t d,
               std::vector<std::map<uint32_t, std::vector<FieldElem>>>& memo,
               std::vector<Place>& out) const;
  void append_infinity(uint32_t d, std::vector<Place>& out) const;

  std::shared_ptr<const FieldCtx> F_;
  CurveSpec spec_;
  std::vector<Poly> hom_;
  mutable std::map<uint32_t, std::vector<Place>> cache_;
};

}  // namespace twogal

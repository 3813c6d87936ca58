#pragma once

// Hand-built desk-scale scenes shared by the test files.  These are written
// independently of the production catalog so the two constructions check each
// other through the same frozen counts and identities.

#include <string>
#include <vector>

#include "twogal/autos.hpp"

namespace scenes {

using namespace twogal;

inline ProjPoint pt_of(const FieldCtx& F, std::initializer_list<uint32_t> raw) {
  std::vector<FieldElem> c;
  for (uint32_t v : raw) c.push_back({v});
  return ProjPoint::make(F, c);
}

inline Poly pp(const FieldCtx& F, const std::vector<std::string>& vars, const std::string& src) {
  ExprEnv env{&F, vars, {}};
  return parse_poly(env, src);
}

// element of multiplicative order exactly n
inline FieldElem root_of_order(const FieldCtx& F, uint32_t n) {
  return F.element_of_order(n);
}

inline uint32_t log_p(const FieldCtx& F, uint32_t q) {
  uint32_t e = 0;
  for (uint32_t t = 1; t < q; t *= F.char_p()) ++e;
  return e;
}

inline CurveSpec gk_curve(const FieldCtx& F, uint32_t q) {
  std::vector<std::string> v{"x", "y", "z"};
  CurveSpec s;
  s.dim = 3;
  s.vars = v;
  std::string qs = std::to_string(q);
  s.eqs = {pp(F, v, "x^" + qs + " + x - y^" + std::to_string(q + 1)),
           pp(F, v,
              "y*((x^" + qs + " + x)^" + std::to_string(q - 1) + " - 1) - z^" +
                  std::to_string(q * q - q + 1))};
  EnumStep sy;
  sy.kind = EnumStep::Kind::Outer;
  sy.var = 1;
  EnumStep sx;
  sx.kind = EnumStep::Kind::Additive;
  sx.var = 0;
  sx.lhs = {{F.one(), log_p(F, q)}, {F.one(), 0}};
  sx.rhs = pp(F, v, "y^" + std::to_string(q + 1));
  EnumStep sz;
  sz.kind = EnumStep::Kind::Power;
  sz.var = 2;
  sz.exponent = q * q - q + 1;
  sz.rhs = pp(F, v, "y^" + std::to_string(q * q) + " - y");
  s.chain = {sy, sx, sz};
  s.infinity = {pt_of(F, {1, 0, 0, 0})};
  return s;
}

// translations (x, y) -> (x + a, y + b) lifted to the ambient space, indexed
// by solutions of a^q + a = b^(q+1) in the quadratic subfield
inline std::vector<Automorphism> gk_g1_gens(const FieldCtx& F, uint32_t q) {
  std::vector<Automorphism> out;
  AdditivePoly tr{{F.one(), log_p(F, q)}, {F.one(), 0}};
  for (FieldElem b : F.subfield_elements(2)) {
    FieldElem rhs = F.pow(b, q + 1);
    for (FieldElem a : F.solve_additive(tr, rhs)) {
      if (!F.in_subfield(a, 2)) continue;
      Mat m = Mat::identity(F, 4);
      m.at(0, 1) = F.pow(b, q);
      m.at(0, 3) = a;
      m.at(1, 3) = b;
      out.push_back({LinearAtom{m}, "s(" + F.to_string(a) + "," + F.to_string(b) + ")"});
    }
  }
  return out;
}

inline Automorphism gk_xi(const FieldCtx& F) {
  Mat m;
  m.n = 4;
  m.at(0, 3) = F.one();
  m.at(1, 1) = F.neg(F.one());
  m.at(2, 2) = F.one();
  m.at(3, 0) = F.one();
  return {LinearAtom{m}, "xi"};
}

inline Automorphism diag_scale(const FieldCtx& F, uint8_t n, uint32_t slot, FieldElem z,
                               const std::string& label) {
  Mat m = Mat::identity(F, n);
  m.at(slot, slot) = z;
  return {LinearAtom{m}, label};
}

inline CurveSpec suzuki_curve(const FieldCtx& F) {  // q0 = 2, q = 8
  std::vector<std::string> v{"x", "y", "z"};
  CurveSpec s;
  s.dim = 3;
  s.vars = v;
  s.eqs = {pp(F, v, "y^8 + y - x^10 - x^3"), pp(F, v, "x^8 + x - z^5")};
  EnumStep sx;
  sx.kind = EnumStep::Kind::Outer;
  sx.var = 0;
  EnumStep sy;
  sy.kind = EnumStep::Kind::Additive;
  sy.var = 1;
  sy.lhs = {{F.one(), 3}, {F.one(), 0}};
  sy.rhs = pp(F, v, "x^10 + x^3");
  EnumStep sz;
  sz.kind = EnumStep::Kind::Power;
  sz.var = 2;
  sz.exponent = 5;
  sz.rhs = pp(F, v, "x^8 + x");
  s.chain = {sx, sy, sz};
  s.infinity = {pt_of(F, {0, 0, 1, 0})};
  return s;
}

inline std::vector<Automorphism> suzuki_g1_gens(const FieldCtx& F) {
  std::vector<Automorphism> out;
  for (FieldElem a : F.subfield_elements(3))
    for (FieldElem b : F.subfield_elements(3)) {
      Mat m = Mat::identity(F, 4);
      m.at(0, 3) = a;
      m.at(1, 0) = F.mul(a, a);
      m.at(1, 3) = b;
      out.push_back({LinearAtom{m}, "s(" + F.to_string(a) + "," + F.to_string(b) + ")"});
    }
  return out;
}

inline Automorphism suzuki_xi(const FieldCtx& F) {
  std::vector<std::string> v{"x", "y", "z"};
  RationalAtom r;
  r.nums = {pp(F, v, "y^4 + x^5"), pp(F, v, "y"), pp(F, v, "z")};
  r.den = pp(F, v, "x*y^4 + (y^4 + x^5)^4");
  ProjPoint inf = pt_of(F, {0, 0, 1, 0});
  ProjPoint origin = pt_of(F, {0, 0, 0, 1});
  r.special = {{inf, origin}, {origin, inf}};
  return {r, "xi"};
}

inline CurveSpec hermitian_curve(const FieldCtx& F, uint32_t q) {
  std::vector<std::string> v{"x", "y"};
  CurveSpec s;
  s.dim = 2;
  s.vars = v;
  s.eqs = {pp(F, v, "x^" + std::to_string(q) + " + x - y^" + std::to_string(q + 1))};
  EnumStep sy;
  sy.kind = EnumStep::Kind::Outer;
  sy.var = 1;
  EnumStep sx;
  sx.kind = EnumStep::Kind::Additive;
  sx.var = 0;
  sx.lhs = {{F.one(), log_p(F, q)}, {F.one(), 0}};
  sx.rhs = pp(F, v, "y^" + std::to_string(q + 1));
  s.chain = {sy, sx};
  return s;
}

inline std::vector<Automorphism> hermitian_g1_gens(const FieldCtx& F, uint32_t q) {
  AdditivePoly tr{{F.one(), log_p(F, q)}, {F.one(), 0}};
  std::vector<Automorphism> out;
  for (FieldElem al : F.solve_additive(tr, F.zero())) {
    Mat m = Mat::identity(F, 3);
    m.at(0, 2) = al;
    out.push_back({LinearAtom{m}, "t(" + F.to_string(al) + ")"});
  }
  return out;
}

inline std::vector<Automorphism> hermitian_g2_gens(const FieldCtx& F, uint32_t q) {
  AdditivePoly tr{{F.one(), log_p(F, q)}, {F.one(), 0}};
  std::vector<Automorphism> out;
  for (FieldElem al : F.solve_additive(tr, F.zero())) {
    Mat m = Mat::identity(F, 3);
    m.at(2, 0) = al;
    out.push_back({LinearAtom{m}, "u(" + F.to_string(al) + ")"});
  }
  return out;
}

inline CurveSpec fermat_curve(const FieldCtx& F) {
  std::vector<std::string> v{"x", "y"};
  CurveSpec s;
  s.dim = 2;
  s.vars = v;
  s.eqs = {pp(F, v, "x^3 + y^4 + 1")};
  EnumStep sy;
  sy.kind = EnumStep::Kind::Outer;
  sy.var = 1;
  EnumStep sx;
  sx.kind = EnumStep::Kind::Power;
  sx.var = 0;
  sx.exponent = 3;
  sx.rhs = pp(F, v, "-1 - y^4");
  s.chain = {sy, sx};
  return s;
}

inline FieldElem fermat_omega(const FieldCtx& F) {
  auto roots = roots_in_field(F, "w", "w^2 + w + 1");
  if (roots.empty()) fail(ErrKind::InvalidInput, "no primitive cube root in this field");
  return roots.front();
}

inline Automorphism fermat_g1(const FieldCtx& F) {
  Mat m = Mat::identity(F, 3);
  m.at(0, 0) = fermat_omega(F);
  return {LinearAtom{m}, "g1"};
}

inline Automorphism fermat_g2(const FieldCtx& F) {
  FieldElem w = fermat_omega(F);
  FieldElem d = F.inv(F.sub(F.one(), w));
  Mat m;
  m.n = 3;
  m.at(0, 0) = F.mul(F.neg(w), d);
  m.at(0, 2) = F.mul(F.from_int(2), d);
  m.at(1, 1) = F.one();
  m.at(2, 0) = d;
  m.at(2, 2) = F.mul(F.mul(w, w), d);
  return {LinearAtom{m}, "g2"};
}

inline Automorphism fermat_h(const FieldCtx& F) {
  Mat m = Mat::identity(F, 3);
  m.at(1, 1) = F.neg(F.one());
  return {LinearAtom{m}, "h"};
}

inline CurveSpec ree_curve(const FieldCtx& F) {  // q0 = 3, q = 27
  std::vector<std::string> v{"x", "y", "z", "t"};
  CurveSpec s;
  s.dim = 4;
  s.vars = v;
  s.eqs = {pp(F, v, "y^27 - y - x^30 + x^4"), pp(F, v, "z^27 - z - x^33 + x^7"),
           pp(F, v, "x^27 - x - t^19")};
  EnumStep sx;
  sx.kind = EnumStep::Kind::Outer;
  sx.var = 0;
  EnumStep sy;
  sy.kind = EnumStep::Kind::Additive;
  sy.var = 1;
  sy.lhs = {{F.one(), 3}, {F.neg(F.one()), 0}};
  sy.rhs = pp(F, v, "x^30 - x^4");
  EnumStep sz;
  sz.kind = EnumStep::Kind::Additive;
  sz.var = 2;
  sz.lhs = {{F.one(), 3}, {F.neg(F.one()), 0}};
  sz.rhs = pp(F, v, "x^33 - x^7");
  EnumStep st;
  st.kind = EnumStep::Kind::Power;
  st.var = 3;
  st.exponent = 19;
  st.rhs = pp(F, v, "x^27 - x");
  s.chain = {sx, sy, sz, st};
  s.infinity = {pt_of(F, {0, 0, 0, 1, 0})};
  return s;
}

// (x,y,z,t) -> (x+a, y+a^3 x+b, z+2 a^3 y+a^6 x+c, t)
inline Automorphism ree_gen(const FieldCtx& F, FieldElem a, FieldElem b, FieldElem c) {
  Mat m = Mat::identity(F, 5);
  FieldElem a3 = F.pow(a, 3);
  m.at(0, 4) = a;
  m.at(1, 0) = a3;
  m.at(1, 4) = b;
  m.at(2, 0) = F.mul(a3, a3);
  m.at(2, 1) = F.mul(F.from_int(2), a3);
  m.at(2, 4) = c;
  return {LinearAtom{m}, "r(" + F.to_string(a) + "," + F.to_string(b) + "," + F.to_string(c) + ")"};
}

}  // namespace scenes

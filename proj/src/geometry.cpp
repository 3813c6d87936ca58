#include "twogal/geometry.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twogal {

ProjPoint ProjPoint::make(const FieldCtx& F, std::span<const FieldElem> coords) {
  if (coords.size() < 3 || coords.size() > 5)
    fail(ErrKind::InvalidInput, "projective point needs 3 to 5 coordinates");
  ProjPoint p;
  p.n = static_cast<uint8_t>(coords.size());
  for (size_t i = 0; i < coords.size(); ++i) p.c[i] = coords[i];
  p.normalize(F);
  return p;
}

void ProjPoint::normalize(const FieldCtx& F) {
  uint32_t lead = n;
  for (uint32_t i = 0; i < n; ++i)
    if (c[i].v != 0) {
      lead = i;
      break;
    }
  if (lead == n) fail(ErrKind::InvalidInput, "all projective coordinates are zero");
  if (c[lead] == F.one()) return;
  FieldElem s = F.inv(c[lead]);
  for (uint32_t i = lead; i < n; ++i) c[i] = F.mul(s, c[i]);
  c[lead] = F.one();
}

std::string ProjPoint::to_string(const FieldCtx& F) const {
  std::ostringstream os;
  os << "(";
  for (uint32_t i = 0; i < n; ++i) {
    if (i) os << ":";
    os << F.to_string(c[i]);
  }
  os << ")";
  return os.str();
}

CurveModel::CurveModel(std::shared_ptr<const FieldCtx> F, CurveSpec spec)
    : F_(std::move(F)), spec_(std::move(spec)) {
  if (spec_.dim < 2 || spec_.dim > 4) fail(ErrKind::InvalidInput, "ambient dimension must be 2..4");
  const uint32_t k = spec_.dim;
  if (spec_.vars.size() != k) fail(ErrKind::InvalidInput, "need one affine variable per dimension");
  if (spec_.eqs.empty()) fail(ErrKind::InvalidInput, "curve needs defining equations");
  for (const auto& f : spec_.eqs)
    if (f.nvars() != k) fail(ErrKind::InvalidInput, "equation arity mismatch");
  if (spec_.chain.size() != k) fail(ErrKind::InvalidInput, "need one enumeration step per variable");
  if (spec_.chain[0].kind != EnumStep::Kind::Outer)
    fail(ErrKind::InvalidInput, "enumeration chain must start with a free variable");

  std::vector<bool> produced(k, false);
  for (const auto& st : spec_.chain) {
    if (st.var >= k || produced[st.var])
      fail(ErrKind::InvalidInput, "enumeration chain must produce each variable once");
    if (st.kind != EnumStep::Kind::Outer) {
      if (st.rhs.nvars() != k) fail(ErrKind::InvalidInput, "step arity mismatch");
      for (uint32_t u : st.rhs.used_vars())
        if (!produced[u])
          fail(ErrKind::InvalidInput, "enumeration step depends on a later variable");
    }
    if (st.kind == EnumStep::Kind::Additive && st.lhs.empty())
      fail(ErrKind::InvalidInput, "additive step needs a nonzero operator");
    if (st.kind == EnumStep::Kind::Power && st.exponent == 0)
      fail(ErrKind::InvalidInput, "power step needs a positive exponent");
    produced[st.var] = true;
  }

  for (const auto& f : spec_.eqs) hom_.push_back(Poly::homogenize(*F_, f));

  if (spec_.dim == 2) {
    if (!spec_.infinity.empty())
      fail(ErrKind::InvalidInput, "plane curves derive their points at infinity");
  } else {
    if (spec_.infinity.empty())
      fail(ErrKind::InvalidInput, "space curves must declare their points at infinity");
    for (auto p : spec_.infinity) {
      if (p.n != k + 1) fail(ErrKind::InvalidInput, "declared point has wrong coordinate count");
      p.normalize(*F_);
      if (!p.at_infinity())
        fail(ErrKind::InvalidInput, "declared point at infinity has nonzero last coordinate");
      std::span<const FieldElem> pc(p.c.data(), k + 1);
      for (const auto& h : hom_)
        if (h.eval(*F_, pc).v != 0)
          fail(ErrKind::InvalidInput, "declared point misses the curve closure");
    }
  }
}

bool CurveModel::on_curve_affine(std::span<const FieldElem> x) const {
  for (const auto& f : spec_.eqs)
    if (f.eval(*F_, x).v != 0) return false;
  return true;
}

bool CurveModel::on_curve(const ProjPoint& p) const {
  if (p.n != spec_.dim + 1) return false;
  if (!p.at_infinity()) {
    auto x = dehomogenize(p);
    return on_curve_affine(x);
  }
  if (spec_.dim == 2) {
    std::span<const FieldElem> pc(p.c.data(), 3);
    return hom_[0].eval(*F_, pc).v == 0;
  }
  ProjPoint q = p;
  q.normalize(*F_);
  return std::find(spec_.infinity.begin(), spec_.infinity.end(), q) != spec_.infinity.end();
}

ProjPoint CurveModel::affine_point(std::span<const FieldElem> x) const {
  if (x.size() != spec_.dim) fail(ErrKind::Internal, "affine coordinate count mismatch");
  std::array<FieldElem, 5> buf{};
  for (size_t i = 0; i < x.size(); ++i) buf[i] = x[i];
  buf[x.size()] = F_->one();
  return ProjPoint::make(*F_, std::span<const FieldElem>(buf.data(), x.size() + 1));
}

std::vector<FieldElem> CurveModel::dehomogenize(const ProjPoint& p) const {
  if (p.n != spec_.dim + 1) fail(ErrKind::Internal, "point dimension mismatch");
  FieldElem w = p.c[p.n - 1];
  if (w.v == 0) fail(ErrKind::Internal, "cannot dehomogenize a point at infinity");
  FieldElem s = F_->inv(w);
  std::vector<FieldElem> x(spec_.dim);
  for (uint32_t i = 0; i < spec_.dim; ++i) x[i] = F_->mul(s, p.c[i]);
  return x;
}

void CurveModel::solve_step(const EnumStep& st, FieldElem rhs, uint32_t d,
                            std::map<uint32_t, std::vector<FieldElem>>& memo,
                            const std::vector<FieldElem>** out) const {
  auto it = memo.find(rhs.v);
  if (it == memo.end()) {
    std::vector<FieldElem> sols = st.kind == EnumStep::Kind::Additive
                                      ? F_->solve_additive(st.lhs, rhs)
                                      : F_->solve_power(st.exponent, rhs);
    std::vector<FieldElem> kept;
    for (FieldElem s : sols)
      if (F_->in_subfield(s, d)) kept.push_back(s);
    it = memo.emplace(rhs.v, std::move(kept)).first;
  }
  *out = &it->second;
}

void CurveModel::descend(size_t level, std::vector<FieldElem>& x, uint32_t d,
                         std::vector<std::map<uint32_t, std::vector<FieldElem>>>& memo,
                         std::vector<Place>& out) const {
  if (level == spec_.chain.size()) {
    if (!on_curve_affine(x)) fail(ErrKind::Internal, "enumerated point misses the curve");
    out.push_back(affine_point(x));
    return;
  }
  const EnumStep& st = spec_.chain[level];
  if (st.kind == EnumStep::Kind::Outer) {
    for (FieldElem v : F_->subfield_elements(d)) {
      x[st.var] = v;
      descend(level + 1, x, d, memo, out);
    }
    return;
  }
  FieldElem rhs = st.rhs.eval(*F_, x);
  const std::vector<FieldElem>* sols = nullptr;
  solve_step(st, rhs, d, memo[level], &sols);
  for (FieldElem v : *sols) {
    x[st.var] = v;
    descend(level + 1, x, d, memo, out);
  }
}

void CurveModel::append_infinity(uint32_t d, std::vector<Place>& out) const {
  if (spec_.dim == 2) {
    std::array<FieldElem, 3> pt{F_->one(), F_->zero(), F_->zero()};
    for (FieldElem t : F_->subfield_elements(d)) {
      pt[1] = t;
      if (hom_[0].eval(*F_, std::span<const FieldElem>(pt.data(), 3)).v == 0)
        out.push_back(ProjPoint::make(*F_, std::span<const FieldElem>(pt.data(), 3)));
    }
    std::array<FieldElem, 3> e1{F_->zero(), F_->one(), F_->zero()};
    if (hom_[0].eval(*F_, std::span<const FieldElem>(e1.data(), 3)).v == 0)
      out.push_back(ProjPoint::make(*F_, std::span<const FieldElem>(e1.data(), 3)));
    return;
  }
  for (ProjPoint p : spec_.infinity) {
    p.normalize(*F_);
    bool rational = true;
    for (uint32_t i = 0; i < p.n; ++i)
      if (!F_->in_subfield(p.c[i], d)) rational = false;
    if (rational) out.push_back(p);
  }
}

std::vector<Place> CurveModel::enumerate(uint32_t d, bool parallel) const {
  if (d == 0 || F_->degree() % d != 0)
    fail(ErrKind::InvalidInput, "sample degree must divide the ambient field degree");
  std::vector<Place> out;
  const std::vector<FieldElem>& sub = F_->subfield_elements(d);
  const size_t levels = spec_.chain.size();
  const uint32_t outer_var = spec_.chain[0].var;

  if (!parallel) {
    std::vector<std::map<uint32_t, std::vector<FieldElem>>> memo(levels);
    std::vector<FieldElem> x(spec_.dim, F_->zero());
    descend(0, x, d, memo, out);
  } else {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<std::map<uint32_t, std::vector<FieldElem>>> memo(levels);
      std::vector<FieldElem> x(spec_.dim, F_->zero());
      std::vector<Place> local;
#pragma omp for schedule(dynamic, 4) nowait
      for (int64_t i = 0; i < static_cast<int64_t>(sub.size()); ++i) {
        x[outer_var] = sub[i];
        descend(1, x, d, memo, local);
      }
#pragma omp critical
      out.insert(out.end(), local.begin(), local.end());
    }
#else
    std::vector<std::map<uint32_t, std::vector<FieldElem>>> memo(levels);
    std::vector<FieldElem> x(spec_.dim, F_->zero());
    descend(0, x, d, memo, out);
#endif
  }

  append_infinity(d, out);
  std::sort(out.begin(), out.end());
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1]) fail(ErrKind::Internal, "place enumerated twice");
  return out;
}

const std::vector<Place>& CurveModel::places(uint32_t d) const {
  auto it = cache_.find(d);
  if (it == cache_.end()) it = cache_.emplace(d, enumerate(d, true)).first;
  return it->second;
}

std::vector<Place> CurveModel::places_serial(uint32_t d) const { return enumerate(d, false); }

}  // namespace twogal

#include "twogal/autos.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace twogal {

Mat Mat::identity(const FieldCtx& F, uint8_t n) {
  Mat m;
  m.n = n;
  for (uint32_t i = 0; i < n; ++i) m.at(i, i) = F.one();
  return m;
}

Mat Mat::mul(const FieldCtx& F, const Mat& l, const Mat& r) {
  if (l.n != r.n) fail(ErrKind::Internal, "matrix size mismatch");
  Mat m;
  m.n = l.n;
  for (uint32_t i = 0; i < l.n; ++i)
    for (uint32_t j = 0; j < l.n; ++j) {
      FieldElem s{0};
      for (uint32_t k = 0; k < l.n; ++k) s = F.add(s, F.mul(l.at(i, k), r.at(k, j)));
      m.at(i, j) = s;
    }
  return m;
}

Mat Mat::inverse(const FieldCtx& F) const {
  Mat left = *this;
  Mat right = identity(F, n);
  for (uint32_t col = 0; col < n; ++col) {
    uint32_t piv = n;
    for (uint32_t r = col; r < n; ++r)
      if (left.at(r, col).v) {
        piv = r;
        break;
      }
    if (piv == n) fail(ErrKind::InvalidInput, "matrix is singular");
    for (uint32_t j = 0; j < n; ++j) {
      std::swap(left.a[col * n + j], left.a[piv * n + j]);
      std::swap(right.a[col * n + j], right.a[piv * n + j]);
    }
    FieldElem s = F.inv(left.at(col, col));
    for (uint32_t j = 0; j < n; ++j) {
      left.at(col, j) = F.mul(s, left.at(col, j));
      right.at(col, j) = F.mul(s, right.at(col, j));
    }
    for (uint32_t r = 0; r < n; ++r) {
      if (r == col || left.at(r, col).v == 0) continue;
      FieldElem f = left.at(r, col);
      for (uint32_t j = 0; j < n; ++j) {
        left.at(r, j) = F.sub(left.at(r, j), F.mul(f, left.at(col, j)));
        right.at(r, j) = F.sub(right.at(r, j), F.mul(f, right.at(col, j)));
      }
    }
  }
  return right;
}

Mat Mat::canonical(const FieldCtx& F) const {
  for (uint32_t i = 0; i < static_cast<uint32_t>(n) * n; ++i)
    if (a[i].v) {
      if (a[i] == F.one()) return *this;
      Mat m = *this;
      FieldElem s = F.inv(a[i]);
      for (uint32_t j = i; j < static_cast<uint32_t>(n) * n; ++j) m.a[j] = F.mul(s, a[j]);
      return m;
    }
  fail(ErrKind::InvalidInput, "zero matrix has no projective class");
}

ProjPoint Automorphism::apply(const CurveModel& C, const ProjPoint& p) const {
  const FieldCtx& F = C.field();
  if (const auto* lin = std::get_if<LinearAtom>(&atom)) {
    if (lin->m.n != p.n) fail(ErrKind::InvalidInput, "matrix size does not match the ambient space");
    std::array<FieldElem, 5> img{};
    bool allzero = true;
    for (uint32_t i = 0; i < p.n; ++i) {
      FieldElem s{0};
      for (uint32_t j = 0; j < p.n; ++j) s = F.add(s, F.mul(lin->m.at(i, j), p.c[j]));
      img[i] = s;
      if (s.v) allzero = false;
    }
    if (allzero)
      fail(ErrKind::InvalidInput, "matrix of " + label + " is singular at " + p.to_string(F));
    return ProjPoint::make(F, std::span<const FieldElem>(img.data(), p.n));
  }
  const auto& rat = std::get<RationalAtom>(atom);
  for (const auto& [from, to] : rat.special)
    if (from == p) return to;
  if (p.at_infinity())
    fail(ErrKind::InvalidInput, "map " + label + " has no declared image at " + p.to_string(F));
  std::vector<FieldElem> x = C.dehomogenize(p);
  FieldElem d = rat.den.eval(F, x);
  if (d.v == 0)
    fail(ErrKind::InvalidInput, "map " + label + " has no declared image at " + p.to_string(F));
  FieldElem di = F.inv(d);
  std::vector<FieldElem> img(rat.nums.size());
  for (size_t i = 0; i < rat.nums.size(); ++i) img[i] = F.mul(di, rat.nums[i].eval(F, x));
  return C.affine_point(img);
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) fail(ErrKind::Internal, "permutation size mismatch");
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

Perm inverse_perm(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<uint32_t>(i);
  return r;
}

bool is_identity(const Perm& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != i) return false;
  return true;
}

uint64_t perm_fingerprint(const Perm& a) {
  uint64_t h = 14695981039346656037ull;
  for (uint32_t v : a)
    for (int s = 0; s < 32; s += 8) {
      h ^= (v >> s) & 0xff;
      h *= 1099511628211ull;
    }
  return h;
}

TestSet TestSet::build(std::shared_ptr<const CurveModel> C, uint32_t degree) {
  TestSet t;
  t.degree_ = degree;
  t.pts_ = C->places(degree);
  t.C_ = std::move(C);
  return t;
}

uint32_t TestSet::find(const Place& p) const {
  auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
  if (it == pts_.end() || *it != p) return UINT32_MAX;
  return static_cast<uint32_t>(it - pts_.begin());
}

uint32_t TestSet::index_of(const Place& p) const {
  uint32_t i = find(p);
  if (i == UINT32_MAX)
    fail(ErrKind::InvalidInput, "place " + p.to_string(C_->field()) + " is not in the test set");
  return i;
}

Perm TestSet::perm_of(const Automorphism& a) const {
  Perm out(pts_.size());
  std::vector<uint8_t> seen(pts_.size(), 0);
  for (size_t i = 0; i < pts_.size(); ++i) {
    ProjPoint img = a.apply(*C_, pts_[i]);
    uint32_t j = find(img);
    if (j == UINT32_MAX)
      fail(ErrKind::InvalidInput, "map " + a.label + " sends " + pts_[i].to_string(C_->field()) +
                                      " to " + img.to_string(C_->field()) +
                                      ", which is off the place set");
    if (seen[j])
      fail(ErrKind::InvalidInput, "map " + a.label + " is not injective on the place set");
    seen[j] = 1;
    out[i] = j;
  }
  return out;
}

void require_involution(const Perm& p, const std::string& label) {
  if (!is_identity(compose(p, p)))
    fail(ErrKind::InvalidInput, "map " + label + " is declared involutive but is not");
}

FiniteAutoGroup::FiniteAutoGroup(const TestSet& T, std::vector<Perm> elems, std::vector<Mat> mats)
    : T_(&T) {
  if (!mats.empty() && mats.size() != elems.size())
    fail(ErrKind::Internal, "matrix list out of step with the element list");
  std::vector<uint32_t> idx(elems.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) { return elems[a] < elems[b]; });
  elems_.reserve(elems.size());
  for (uint32_t i : idx) {
    if (!elems_.empty() && elems_.back() == elems[i])
      fail(ErrKind::Internal, "duplicate group element");
    elems_.push_back(std::move(elems[i]));
    if (!mats.empty()) mats_.push_back(mats[i]);
  }
  id_ = UINT32_MAX;
  for (uint32_t i = 0; i < elems_.size(); ++i) {
    fp_[perm_fingerprint(elems_[i])].push_back(i);
    if (is_identity(elems_[i])) id_ = i;
  }
  if (id_ == UINT32_MAX) fail(ErrKind::Internal, "group without identity");
}

FiniteAutoGroup FiniteAutoGroup::trivial(const TestSet& T) {
  Perm id(T.size());
  std::iota(id.begin(), id.end(), 0);
  return FiniteAutoGroup(T, {id},
                         {Mat::identity(T.model().field(), static_cast<uint8_t>(T.model().dim() + 1))});
}

namespace {

std::array<uint32_t, 25> mat_key(const Mat& m) {
  std::array<uint32_t, 25> k{};
  for (uint32_t i = 0; i < static_cast<uint32_t>(m.n) * m.n; ++i) k[i] = m.a[i].v;
  return k;
}

struct ClosureState {
  std::vector<Perm> perms;
  std::vector<Mat> mats;
  bool with_mats = false;
  std::map<std::array<uint32_t, 25>, uint32_t> mat_seen;
  std::unordered_map<uint64_t, std::vector<uint32_t>> perm_seen;

  // Returns the index if the element is new, -1 if already present.  In
  // matrix mode a new matrix whose permutation is already taken by a
  // different matrix means the place set cannot tell them apart.
  int64_t insert(Perm p, const Mat* m) {
    uint64_t h = perm_fingerprint(p);
    auto& bucket = perm_seen[h];
    int64_t dup = -1;
    for (uint32_t i : bucket)
      if (perms[i] == p) {
        dup = i;
        break;
      }
    if (!with_mats) {
      if (dup >= 0) return -1;
      uint32_t idx = static_cast<uint32_t>(perms.size());
      bucket.push_back(idx);
      perms.push_back(std::move(p));
      return idx;
    }
    auto key = mat_key(*m);
    if (mat_seen.count(key)) return -1;
    if (dup >= 0)
      fail(ErrKind::UnfaithfulTestSet,
           "two distinct projective transformations act identically on the place set; "
           "enlarge the test degree");
    uint32_t idx = static_cast<uint32_t>(perms.size());
    mat_seen.emplace(key, idx);
    bucket.push_back(idx);
    perms.push_back(std::move(p));
    mats.push_back(*m);
    return idx;
  }
};

}  // namespace

FiniteAutoGroup FiniteAutoGroup::closure_impl(const TestSet& T, const std::vector<Perm>& gen_perms,
                                              const std::vector<Mat>* gen_mats, uint64_t cap) {
  const FieldCtx& F = T.model().field();
  const size_t n = T.size();
  for (const auto& g : gen_perms)
    if (g.size() != n) fail(ErrKind::Internal, "generator acts on the wrong scene");
  ClosureState st;
  st.with_mats = gen_mats != nullptr;
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  Mat idm = Mat::identity(F, static_cast<uint8_t>(T.model().dim() + 1));
  st.insert(std::move(id), st.with_mats ? &idm : nullptr);
  std::vector<Mat> canon_gens;
  if (st.with_mats)
    for (const Mat& m : *gen_mats) canon_gens.push_back(m.canonical(F));
  std::queue<uint32_t> work;
  for (size_t gi = 0; gi < gen_perms.size(); ++gi) {
    int64_t idx = st.insert(gen_perms[gi], st.with_mats ? &canon_gens[gi] : nullptr);
    if (idx >= 0) work.push(static_cast<uint32_t>(idx));
    if (st.perms.size() > cap) fail(ErrKind::CapExceeded, "group closure exceeded the cap");
  }
  while (!work.empty()) {
    uint32_t cur = work.front();
    work.pop();
    for (size_t gi = 0; gi < gen_perms.size(); ++gi) {
      Perm np = compose(st.perms[cur], gen_perms[gi]);
      Mat nm;
      // compose applies cur first, so the generator matrix multiplies from the
      // left under the column-vector convention
      if (st.with_mats) nm = Mat::mul(F, canon_gens[gi], st.mats[cur]).canonical(F);
      int64_t idx = st.insert(std::move(np), st.with_mats ? &nm : nullptr);
      if (idx >= 0) {
        if (st.perms.size() > cap) fail(ErrKind::CapExceeded, "group closure exceeded the cap");
        work.push(static_cast<uint32_t>(idx));
      }
    }
  }
  return FiniteAutoGroup(T, std::move(st.perms), std::move(st.mats));
}

FiniteAutoGroup FiniteAutoGroup::close_group(const TestSet& T,
                                             const std::vector<Automorphism>& gens, uint64_t cap) {
  std::vector<Perm> ps;
  ps.reserve(gens.size());
  for (const auto& g : gens) ps.push_back(T.perm_of(g));
  bool all_linear = !gens.empty();
  for (const auto& g : gens)
    if (!g.linear()) all_linear = false;
  if (all_linear) {
    std::vector<Mat> ms;
    ms.reserve(gens.size());
    for (const auto& g : gens) ms.push_back(std::get<LinearAtom>(g.atom).m);
    return closure_impl(T, ps, &ms, cap);
  }
  return closure_impl(T, ps, nullptr, cap);
}

FiniteAutoGroup FiniteAutoGroup::from_perms(const TestSet& T, std::vector<Perm> gens,
                                            uint64_t cap) {
  return closure_impl(T, gens, nullptr, cap);
}

FiniteAutoGroup FiniteAutoGroup::conjugated(const FiniteAutoGroup& G, const Perm& xi,
                                            const Mat* xi_mat) {
  if (xi.size() != G.scene().size()) fail(ErrKind::Internal, "conjugator acts on the wrong scene");
  const FieldCtx& F = G.scene().model().field();
  Perm xinv = inverse_perm(xi);
  std::vector<Perm> elems;
  elems.reserve(G.order());
  for (const auto& g : G.elements()) elems.push_back(compose(compose(xinv, g), xi));
  std::vector<Mat> mats;
  if (G.has_mats() && xi_mat) {
    Mat minv = xi_mat->inverse(F);
    for (const auto& m : G.mats()) mats.push_back(Mat::mul(F, Mat::mul(F, *xi_mat, m), minv).canonical(F));
  }
  return FiniteAutoGroup(G.scene(), std::move(elems), std::move(mats));
}

FiniteAutoGroup FiniteAutoGroup::join(const FiniteAutoGroup& A, const FiniteAutoGroup& B,
                                      uint64_t cap) {
  if (A.T_ != B.T_) fail(ErrKind::Internal, "groups act on different scenes");
  std::vector<Perm> gens = A.elems_;
  gens.insert(gens.end(), B.elems_.begin(), B.elems_.end());
  if (A.has_mats() && B.has_mats()) {
    std::vector<Mat> ms = A.mats_;
    ms.insert(ms.end(), B.mats_.begin(), B.mats_.end());
    return closure_impl(*A.T_, gens, &ms, cap);
  }
  return closure_impl(*A.T_, gens, nullptr, cap);
}

FiniteAutoGroup FiniteAutoGroup::intersect(const FiniteAutoGroup& A, const FiniteAutoGroup& B) {
  if (A.T_ != B.T_) fail(ErrKind::Internal, "groups act on different scenes");
  const FiniteAutoGroup& small = A.order() <= B.order() ? A : B;
  const FiniteAutoGroup& big = A.order() <= B.order() ? B : A;
  std::vector<Perm> keep;
  std::vector<Mat> mats;
  for (uint32_t i = 0; i < small.order(); ++i)
    if (big.contains(small.elems_[i])) {
      keep.push_back(small.elems_[i]);
      if (small.has_mats()) mats.push_back(small.mats_[i]);
    }
  return FiniteAutoGroup(*A.T_, std::move(keep), std::move(mats));
}

bool FiniteAutoGroup::contains(const Perm& p) const {
  auto it = fp_.find(perm_fingerprint(p));
  if (it == fp_.end()) return false;
  for (uint32_t i : it->second)
    if (elems_[i] == p) return true;
  return false;
}

std::vector<uint32_t> FiniteAutoGroup::orbit(uint32_t pt) const {
  std::vector<uint32_t> o;
  o.reserve(elems_.size());
  for (const auto& g : elems_) o.push_back(g[pt]);
  std::sort(o.begin(), o.end());
  o.erase(std::unique(o.begin(), o.end()), o.end());
  return o;
}

bool FiniteAutoGroup::fixes(uint32_t pt) const {
  for (const auto& g : elems_)
    if (g[pt] != pt) return false;
  return true;
}

std::vector<uint32_t> FiniteAutoGroup::element_orders() const {
  std::vector<uint32_t> out;
  out.reserve(elems_.size());
  for (const auto& g : elems_) {
    Perm p = g;
    uint32_t k = 1;
    while (!is_identity(p)) {
      p = compose(p, g);
      ++k;
      if (k > elems_.size()) fail(ErrKind::Internal, "element order exceeds group order");
    }
    out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool FiniteAutoGroup::all_commute() const {
  for (size_t i = 0; i < elems_.size(); ++i)
    for (size_t j = i + 1; j < elems_.size(); ++j)
      if (compose(elems_[i], elems_[j]) != compose(elems_[j], elems_[i])) return false;
  return true;
}

uint64_t product_set(const FiniteAutoGroup& A, const FiniteAutoGroup& B) {
  if (&A.scene() != &B.scene()) fail(ErrKind::Internal, "groups act on different scenes");
  std::unordered_map<uint64_t, std::vector<std::pair<uint32_t, uint32_t>>> buckets;
  for (uint32_t i = 0; i < A.order(); ++i)
    for (uint32_t j = 0; j < B.order(); ++j)
      buckets[perm_fingerprint(compose(A.elements()[i], B.elements()[j]))].push_back({i, j});
  uint64_t count = 0;
  for (const auto& [h, v] : buckets) {
    if (v.size() == 1) {
      ++count;
      continue;
    }
    std::vector<Perm> ps;
    ps.reserve(v.size());
    for (auto [i, j] : v) ps.push_back(compose(A.elements()[i], B.elements()[j]));
    std::sort(ps.begin(), ps.end());
    count += std::unique(ps.begin(), ps.end()) - ps.begin();
  }
  return count;
}

bool in_product(const FiniteAutoGroup& A, const FiniteAutoGroup& B, const Perm& p) {
  if (&A.scene() != &B.scene()) fail(ErrKind::Internal, "groups act on different scenes");
  for (const auto& a : A.elements())
    if (B.contains(compose(inverse_perm(a), p))) return true;
  return false;
}

SemidirectReport semidirect_check(const FiniteAutoGroup& H, const FiniteAutoGroup& G) {
  if (&H.scene() != &G.scene()) fail(ErrKind::Internal, "groups act on different scenes");
  SemidirectReport r;
  r.normalizes = true;
  for (const auto& g : G.elements()) {
    Perm gi = inverse_perm(g);
    for (const auto& h : H.elements())
      if (!H.contains(compose(compose(gi, h), g))) {
        r.normalizes = false;
        break;
      }
    if (!r.normalizes) break;
  }
  uint64_t overlap = FiniteAutoGroup::intersect(H, G).order();
  r.trivial_overlap = overlap == 1;
  uint64_t ps = product_set(H, G);
  if (ps != H.order() * G.order() / overlap)
    fail(ErrKind::Internal, "product set size disagrees with the subgroup index formula");
  r.order_multiplies = ps == H.order() * G.order();
  r.commutes = true;
  for (const auto& h : H.elements()) {
    for (const auto& g : G.elements())
      if (compose(h, g) != compose(g, h)) {
        r.commutes = false;
        break;
      }
    if (!r.commutes) break;
  }
  return r;
}

}  // namespace twogal

#pragma once

#include <memory>
#include <unordered_map>
#include <variant>
#include <vector>

#include "twogal/geometry.hpp"

namespace twogal {

// Square matrix over the ambient field acting on projective coordinates.
struct Mat {
  uint8_t n = 0;
  std::array<FieldElem, 25> a{};

  FieldElem& at(uint32_t r, uint32_t c) { return a[r * n + c]; }
  FieldElem at(uint32_t r, uint32_t c) const { return a[r * n + c]; }
  bool operator==(const Mat&) const = default;

  static Mat identity(const FieldCtx& F, uint8_t n);
  static Mat mul(const FieldCtx& F, const Mat& l, const Mat& r);
  Mat inverse(const FieldCtx& F) const;
  // scale so the first nonzero entry is 1: canonical form of the projective class
  Mat canonical(const FieldCtx& F) const;
};

struct LinearAtom {
  Mat m;
};

// Coordinate-wise rational map on the affine chart.  Places where the formula
// breaks down (infinity, vanishing denominator) must come with declared
// images; anything else undefined is a hard error.
struct RationalAtom {
  std::vector<Poly> nums;
  Poly den;
  std::vector<std::pair<Place, Place>> special;
};

using Atom = std::variant<LinearAtom, RationalAtom>;

struct Automorphism {
  Atom atom;
  std::string label;
  ProjPoint apply(const CurveModel& C, const ProjPoint& p) const;
  bool linear() const { return std::holds_alternative<LinearAtom>(atom); }
};

using Perm = std::vector<uint32_t>;

Perm compose(const Perm& a, const Perm& b);  // apply a, then b
Perm inverse_perm(const Perm& a);
bool is_identity(const Perm& a);
uint64_t perm_fingerprint(const Perm& a);

// The finite scene groups act on: all places of one degree, indexed and sorted.
class TestSet {
 public:
  static TestSet build(std::shared_ptr<const CurveModel> C, uint32_t degree);

  const CurveModel& model() const { return *C_; }
  const std::shared_ptr<const CurveModel>& model_ptr() const { return C_; }
  uint32_t degree() const { return degree_; }
  size_t size() const { return pts_.size(); }
  const std::vector<Place>& points() const { return pts_; }

  uint32_t find(const Place& p) const;  // index or UINT32_MAX
  uint32_t index_of(const Place& p) const;

  // Action of the map on every point; fails if any image leaves the place set
  // or two points collide.
  Perm perm_of(const Automorphism& a) const;

 private:
  std::shared_ptr<const CurveModel> C_;
  uint32_t degree_ = 0;
  std::vector<Place> pts_;
};

void require_involution(const Perm& p, const std::string& label);

struct SemidirectReport {
  bool normalizes = false;
  bool trivial_overlap = false;
  bool order_multiplies = false;
  bool commutes = false;
  bool ok() const { return normalizes && trivial_overlap && order_multiplies; }
};

// Finite group of curve automorphisms, held as permutations of the test set.
// When every generator is linear the closure runs over canonical projective
// matrices as well, and two distinct matrices inducing the same permutation
// abort with UnfaithfulTestSet: group orders reported for linear groups are
// therefore exact, not just orders of the induced permutation group.
class FiniteAutoGroup {
 public:
  static FiniteAutoGroup trivial(const TestSet& T);
  static FiniteAutoGroup close_group(const TestSet& T, const std::vector<Automorphism>& gens,
                                     uint64_t cap = 1u << 20);
  static FiniteAutoGroup from_perms(const TestSet& T, std::vector<Perm> gens,
                                    uint64_t cap = 1u << 20);
  static FiniteAutoGroup conjugated(const FiniteAutoGroup& G, const Perm& xi,
                                    const Mat* xi_mat = nullptr);
  static FiniteAutoGroup join(const FiniteAutoGroup& A, const FiniteAutoGroup& B,
                              uint64_t cap = 1u << 20);
  static FiniteAutoGroup intersect(const FiniteAutoGroup& A, const FiniteAutoGroup& B);

  const TestSet& scene() const { return *T_; }
  size_t order() const { return elems_.size(); }
  const std::vector<Perm>& elements() const { return elems_; }
  bool has_mats() const { return !mats_.empty(); }
  const std::vector<Mat>& mats() const { return mats_; }
  uint32_t id_index() const { return id_; }
  bool contains(const Perm& p) const;

  std::vector<uint32_t> orbit(uint32_t pt) const;
  bool fixes(uint32_t pt) const;
  std::vector<uint32_t> element_orders() const;  // sorted
  bool all_commute() const;

 private:
  FiniteAutoGroup(const TestSet& T, std::vector<Perm> elems, std::vector<Mat> mats);
  static FiniteAutoGroup closure_impl(const TestSet& T, const std::vector<Perm>& gen_perms,
                                      const std::vector<Mat>* gen_mats, uint64_t cap);
  const TestSet* T_ = nullptr;
  std::vector<Perm> elems_;  // sorted for a canonical element order
  std::vector<Mat> mats_;    // aligned with elems_ when available
  std::unordered_map<uint64_t, std::vector<uint32_t>> fp_;
  uint32_t id_ = 0;
};

// Number of distinct products ab, a from A, b from B.
uint64_t product_set(const FiniteAutoGroup& A, const FiniteAutoGroup& B);

// Is p a product ab with a from A, b from B?
bool in_product(const FiniteAutoGroup& A, const FiniteAutoGroup& B, const Perm& p);

// Does every element of G normalize H, meet it trivially, and multiply out to
// |H||G| distinct products?  commutes additionally reports elementwise
// commutation.
SemidirectReport semidirect_check(const FiniteAutoGroup& H, const FiniteAutoGroup& G);

}  // namespace twogal

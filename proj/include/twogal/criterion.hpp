#pragma once

#include <optional>
#include <random>

#include "twogal/divisor.hpp"

namespace twogal {

enum class Verdict { Pass, Fail };

struct ConditionResult {
  std::string id;
  Verdict verdict;
  std::string evidence;
};

struct CheckReport {
  std::vector<ConditionResult> rows;
  bool passed() const;
  const ConditionResult* row(const std::string& id) const;
  void append(CheckReport more);
};

// Rational function of the affine coordinates whose fibers certify that the
// quotient by a group has genus zero: the generic fiber must have exactly
// group-order many scene places.
struct RationalityWitness {
  Poly num, den;
  std::string name;
};

// Invariant coordinates identifying the quotient curve with a declared plane
// model: image places must satisfy `target`, and fibers must have size
// `generic_fiber` except where coordinate `branch_coord` vanishes.
struct QuotientModelSpec {
  std::vector<Poly> image;
  Poly target;
  std::string target_name;
  uint32_t generic_fiber = 1;
  uint32_t branch_coord = 0;
};

// Everything one concrete verification run needs.  Groups and the test set
// live behind pointers so the context can move without dangling references.
struct ScenarioCtx {
  std::string name;
  std::vector<std::pair<std::string, int64_t>> params;
  std::shared_ptr<const FieldCtx> F;
  std::shared_ptr<const CurveModel> C;
  std::unique_ptr<TestSet> T;
  std::unique_ptr<FiniteAutoGroup> G1, G2;
  std::unique_ptr<FiniteAutoGroup> H;
  ProjPoint P1, P2;
  bool outer = false;
  RationalityWitness w1, w2;
  std::optional<RationalityWitness> w1h, w2h;
  std::optional<QuotientModelSpec> qmodel;
  // When set, the matched projection sums must also equal the full place set
  // of this degree.
  std::optional<uint32_t> full_sum_degree;
  uint32_t test_degree = 0;
  // Free-form provenance remark carried into reports, e.g. that the groups
  // came from an external generator file.
  std::string note;
};

// The two enlarged groups generated by H together with G1 and G2.
struct HatCtx {
  std::unique_ptr<FiniteAutoGroup> G1h, G2h;
};
HatCtx build_hats(const ScenarioCtx& S);

// Fiber certificate for one group/witness pair; the seed only drives spot
// re-evaluations, never the verdict.
ConditionResult check_rationality(const std::string& id, const FiniteAutoGroup& G,
                                  const RationalityWitness& w, std::mt19937& rng);

// Rows a1, a2 (rationality), b (trivial intersection), c (matched sums).
CheckReport check_fact1(const ScenarioCtx& S, std::mt19937& rng);

// Variant with one shared place: row c compares the two orbit sums of P1.
CheckReport check_outer(const ScenarioCtx& S, std::mt19937& rng);

// Rows d (H meets the product set trivially), e (both sided products split),
// f (H-orbits of the two places differ).
CheckReport check_corollary(const ScenarioCtx& S);

// Rows hat-hyp, hat-a1, hat-a2, hat-b, hat-c, hat-d on the enlarged groups,
// then push / down-b / down-c / pull transporting the matched sums to the
// orbit space and back.
CheckReport check_theorem_main(const ScenarioCtx& S, const HatCtx& hat, std::mt19937& rng);

// Rows model-image and model-fiber for the declared quotient plane model.
CheckReport quotient_model_check(const ScenarioCtx& S);

}  // namespace twogal

#include "twogal/run.hpp"

#include <chrono>

#include "twogal/errors.hpp"

namespace twogal {

namespace {

const char* label_of(const std::string& id) {
  if (id == "a1" || id == "a2") return "(a)";
  if (id == "b") return "(b)";
  if (id == "c") return "(c)";
  if (id == "d") return "(d)";
  if (id == "e") return "(e)";
  if (id == "f") return "(f)";
  if (id == "hat-a1" || id == "hat-a2") return "(a')";
  if (id == "hat-b") return "(b')";
  if (id == "hat-c") return "(c')";
  if (id == "hat-d") return "(d')";
  return "";
}

void append_rows(nlohmann::ordered_json& conds, const CheckReport& R) {
  for (const auto& r : R.rows) {
    nlohmann::ordered_json row;
    row["id"] = r.id;
    row["label"] = label_of(r.id);
    row["verdict"] = r.verdict == Verdict::Pass ? "pass" : "fail";
    row["evidence"] = r.evidence;
    conds.push_back(std::move(row));
  }
}

}  // namespace

RunResult run_scenario(const ScenarioCtx& S, uint64_t seed, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));

  nlohmann::ordered_json conds = nlohmann::ordered_json::array();
  bool all_pass = true;
  std::optional<HatCtx> hat;

  if (S.outer) {
    CheckReport R = check_outer(S, rng);
    append_rows(conds, R);
    all_pass = R.passed();
  } else {
    CheckReport F1 = check_fact1(S, rng);
    append_rows(conds, F1);
    const bool fact_ok = F1.passed();
    all_pass = fact_ok;

    bool cor_ok = false;
    if (S.H) {
      CheckReport Co = check_corollary(S);
      append_rows(conds, Co);
      cor_ok = Co.passed();
      all_pass = all_pass && cor_ok;
    }

    if (S.H && S.w1h && S.w2h && fact_ok && cor_ok) {
      hat.emplace(build_hats(S));
      CheckReport Th = check_theorem_main(S, *hat, rng);
      append_rows(conds, Th);
      if (!Th.passed()) {
        const ConditionResult* hyp = Th.row("hat-hyp");
        if (hyp == nullptr || hyp->verdict == Verdict::Pass)
          fail(ErrKind::Internal,
               "the equivalence battery failed although the base conditions "
               "and its own hypothesis verified; this indicates an engine bug");
        all_pass = false;
      }
      if (S.qmodel) {
        CheckReport Q = quotient_model_check(S);
        append_rows(conds, Q);
        all_pass = all_pass && Q.passed();
      }
    }
  }

  nlohmann::ordered_json rep;
  rep["scenario"] = S.name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, val] : S.params) params[key] = val;
  rep["params"] = std::move(params);
  rep["seed"] = seed;
  rep["conditions"] = std::move(conds);

  nlohmann::ordered_json orders = nlohmann::ordered_json::object();
  orders["G1"] = S.G1->order();
  orders["G2"] = S.G2->order();
  if (S.H) orders["H"] = S.H->order();
  if (hat) {
    orders["G1_hat"] = hat->G1h->order();
    orders["G2_hat"] = hat->G2h->order();
  }
  nlohmann::ordered_json derived;
  derived["degree"] = S.outer ? S.G1->order() : S.G1->order() + 1;
  derived["group_orders"] = std::move(orders);
  rep["derived"] = std::move(derived);

  if (!S.note.empty()) rep["note"] = S.note;
  if (timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    rep["timing"] = {{"total_ms", ms}};
  } else {
    rep["timing"] = nullptr;
  }

  return {std::move(rep), all_pass ? 0 : 1};
}

}  // namespace twogal

#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "scenes.hpp"
#include "twogal/catalog.hpp"
#include "twogal/run.hpp"

using namespace twogal;

namespace {

template <class Fn>
ErrKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrKind::Internal;
}

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::vector<std::string> failed_ids(const CheckReport& R) {
  std::vector<std::string> out;
  for (const auto& r : R.rows)
    if (r.verdict == Verdict::Fail) out.push_back(r.id);
  return out;
}

// temp files for the JSON loaders
struct TmpFile {
  std::string path;
  TmpFile(const std::string& name, const std::string& body) : path("catalog_tmp_" + name) {
    std::ofstream(path) << body;
  }
  ~TmpFile() { std::remove(path.c_str()); }
};

const std::string kDemoRee = R"({"g1": [[1,0,0],[0,1,0],[0,0,1]],
                                 "g2": [[1,0,0],[0,1,0],[0,0,1]]})";

}  // namespace

TEST_CASE("catalog listing names the five scenarios with degree formulas") {
  const auto& es = catalog_entries();
  REQUIRE(es.size() == 5);
  std::vector<std::string> names;
  for (const auto& e : es) names.push_back(e.name);
  CHECK(names == std::vector<std::string>{"gk", "hermitian", "skabelund-suzuki",
                                          "skabelund-ree", "fermat-quartic"});
  CHECK(es[0].degree == "q^3 + 1");
  CHECK(es[1].degree == "q + 1");
  CHECK(es[2].degree == "q^2 + 1");
  CHECK(has(es[0].params, "q^2 - q + 1"));
  CHECK(has(es[3].params, "--generators"));
}

TEST_CASE("catalog small cover matches the hand-built scene") {
  ScenarioCtx S = make_gk(2, 3);
  CHECK(S.F->size() == 64);
  CHECK(S.test_degree == 6);
  CHECK(S.T->size() == 225);
  CHECK(S.G1->order() == 8);
  CHECK(S.G2->order() == 8);
  CHECK(S.H->order() == 3);
  CHECK(S.full_sum_degree == 2);

  // independent construction of the same group on an identical scene
  auto C = std::make_shared<CurveModel>(S.F, scenes::gk_curve(*S.F, 2));
  TestSet T = TestSet::build(C, 6);
  REQUIRE(T.size() == S.T->size());
  FiniteAutoGroup G1ref = FiniteAutoGroup::close_group(T, scenes::gk_g1_gens(*S.F, 2));
  CHECK(S.G1->elements() == G1ref.elements());
  Automorphism xi = scenes::gk_xi(*S.F);
  Mat xm = std::get<LinearAtom>(xi.atom).m;
  FiniteAutoGroup G2ref = FiniteAutoGroup::conjugated(G1ref, T.perm_of(xi), &xm);
  CHECK(S.G2->elements() == G2ref.elements());
  CHECK(S.P1 == scenes::pt_of(*S.F, {1, 0, 0, 0}));
  CHECK(S.P2 == scenes::pt_of(*S.F, {0, 0, 0, 1}));

  std::mt19937 rng(0);
  CheckReport F1 = check_fact1(S, rng);
  CHECK(F1.passed());
  CHECK(has(F1.row("c")->evidence, "matched sums of degree 9"));
  CHECK(has(F1.row("c")->evidence, "full degree-2 place set"));
  CheckReport Co = check_corollary(S);
  CHECK(Co.passed());
  HatCtx hat = build_hats(S);
  CheckReport Th = check_theorem_main(S, hat, rng);
  CHECK(Th.passed());
  CHECK(has(Th.row("push")->evidence, "3 times each quotient sum"));
}

TEST_CASE("catalog larger cover instance passes every battery") {
  ScenarioCtx S = make_gk(3, 7);
  CHECK(S.F->size() == 729);
  CHECK(S.G1->order() == 27);
  CHECK(S.H->order() == 7);
  std::mt19937 rng(0);
  CheckReport F1 = check_fact1(S, rng);
  CHECK(F1.passed());
  CHECK(has(F1.row("c")->evidence, "matched sums of degree 28"));
  CHECK(check_corollary(S).passed());
  HatCtx hat = build_hats(S);
  CHECK(hat.G1h->order() == 189);
  CHECK(check_theorem_main(S, hat, rng).passed());
}

TEST_CASE("catalog parameter validation rejects out-of-contract requests") {
  CHECK(kind_of([] { make_gk(6, 1); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_gk(2, 5); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_hermitian(3, 3); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_hermitian(3, 0); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_suzuki(3, 1); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_suzuki(1, 1); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_suzuki(2, 3); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_fermat(6); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_fermat(3); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_gk(2, 3, {}, "z"); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_gk(2, 1, {}, "b"); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_gk(2, 1, {}, "f"); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_hermitian(3, 2, {}, "d"); }) == ErrKind::InvalidInput);
  ReeGeneratorConfig cfg{{{1, 0, 0}}, {{1, 0, 0}}};
  CHECK(kind_of([&] { make_ree(2, 1, cfg); }) == ErrKind::InvalidInput);
  CHECK(kind_of([&] { make_ree(3, 2, cfg); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_ree(3, 1, std::nullopt); }) == ErrKind::MissingGenerators);
  CHECK(kind_of([&] { make_ree(3, 19, cfg); }) == ErrKind::AmbientTooLarge);
  CHECK(kind_of([] { make_gk(3, 1, {0, 9}); }) == ErrKind::AmbientTooLarge);
}

TEST_CASE("catalog norm-trace instances verify across all divisor choices") {
  for (uint32_t s : {1u, 2u, 4u}) {
    CAPTURE(s);
    ScenarioCtx S = make_hermitian(3, s);
    CHECK(S.G1->order() == 3);
    CHECK(S.H->order() == s);
    CHECK(S.T->size() == 28);
    std::mt19937 rng(0);
    CHECK(check_fact1(S, rng).passed());
    CHECK(check_corollary(S).passed());
    HatCtx hat = build_hats(S);
    CHECK(check_theorem_main(S, hat, rng).passed());
    CheckReport Q = quotient_model_check(S);
    CHECK(Q.passed());
    if (s == 2) CHECK(has(Q.row("model-image")->evidence, "v^2 - u^3 - u"));
  }
  ScenarioCtx S2 = make_hermitian(2, 3);
  CHECK(S2.G1->order() == 2);
  CHECK(S2.H->order() == 3);
  CHECK(S2.T->size() == 9);
  std::mt19937 rng(0);
  CHECK(check_fact1(S2, rng).passed());
  CHECK(check_corollary(S2).passed());
  CHECK(quotient_model_check(S2).passed());

  // flat-quotient edge: s = q + 1 makes the target linear in v
  ScenarioCtx S4 = make_hermitian(4, 5);
  CHECK(S4.G1->order() == 4);
  CHECK(S4.H->order() == 5);
  CHECK(S4.T->size() == 65);
  CHECK(check_fact1(S4, rng).passed());
  CHECK(check_corollary(S4).passed());
  CheckReport Q4 = quotient_model_check(S4);
  CHECK(Q4.passed());
  CHECK(has(Q4.row("model-image")->evidence, "v - u^4 - u"));
}

TEST_CASE("catalog quartic scenario agrees with the scene oracle for both primes") {
  ScenarioCtx S7 = make_fermat(7);
  CHECK(scenes::fermat_omega(*S7.F) == S7.F->from_int(2));
  CHECK(S7.note.empty());
  CHECK(S7.G1->order() == 3);
  CHECK(S7.G2->order() == 3);
  CHECK(S7.H->order() == 2);
  CHECK(S7.P2 == scenes::pt_of(*S7.F, {1, 0, 6}));
  std::mt19937 rng(0);
  CheckReport F1 = check_fact1(S7, rng);
  CHECK(F1.passed());
  CHECK(has(F1.row("c")->evidence, "matched sums of degree 4"));
  CHECK(has(F1.row("c")->evidence, "full degree-1 place set"));
  CHECK(check_corollary(S7).passed());
  HatCtx hat = build_hats(S7);
  CHECK(hat.G1h->order() == 6);
  CHECK(check_theorem_main(S7, hat, rng).passed());
  CHECK(quotient_model_check(S7).passed());

  ScenarioCtx S13 = make_fermat(13);
  CHECK(scenes::fermat_omega(*S13.F) == S13.F->from_int(3));
  CHECK(S13.note.empty());
  CHECK(check_fact1(S13, rng).passed());
  CHECK(check_corollary(S13).passed());
  CHECK(quotient_model_check(S13).passed());

  // primes with the cube root only in the quadratic extension still verify
  ScenarioCtx S5 = make_fermat(5);
  CHECK(has(S5.note, "quadratic extension"));
  CHECK(check_fact1(S5, rng).passed());
  CHECK(check_corollary(S5).passed());
}

TEST_CASE("catalog tower scenario matches the scene and passes its battery") {
  ScenarioCtx S = make_suzuki(2, 5);
  CHECK(S.F->degree() == 12);
  CHECK(S.test_degree == 12);
  CHECK(S.G1->order() == 64);
  CHECK(S.H->order() == 5);
  CHECK(S.full_sum_degree == 3);

  auto C = std::make_shared<CurveModel>(S.F, scenes::suzuki_curve(*S.F));
  TestSet T = TestSet::build(C, 12);
  FiniteAutoGroup G1ref = FiniteAutoGroup::close_group(T, scenes::suzuki_g1_gens(*S.F));
  CHECK(S.G1->elements() == G1ref.elements());
  FiniteAutoGroup G2ref =
      FiniteAutoGroup::conjugated(G1ref, T.perm_of(scenes::suzuki_xi(*S.F)));
  CHECK(S.G2->elements() == G2ref.elements());

  std::mt19937 rng(0);
  CheckReport F1 = check_fact1(S, rng);
  CHECK(F1.passed());
  CHECK(has(F1.row("c")->evidence, "matched sums of degree 65"));
  CHECK(has(F1.row("c")->evidence, "full degree-3 place set"));
  CHECK(check_corollary(S).passed());
  HatCtx hat = build_hats(S);
  CHECK(hat.G1h->order() == 320);
  CheckReport Th = check_theorem_main(S, hat, rng);
  CHECK(Th.passed());
  CHECK(has(Th.row("push")->evidence, "5 times each quotient sum"));

  ScenarioCtx Sc = make_suzuki(2, 5, {}, "c");
  CHECK(Sc.P2 != S.P2);
  CHECK(Sc.H == nullptr);
  CheckReport Fc = check_fact1(Sc, rng);
  CHECK(failed_ids(Fc) == std::vector<std::string>{"c"});
}

TEST_CASE("catalog demo tower reports honest failures from supplied generators") {
  ReeGeneratorConfig cfg;
  for (auto row : {std::array<uint32_t, 3>{1, 0, 0}, std::array<uint32_t, 3>{0, 1, 0},
                   std::array<uint32_t, 3>{0, 0, 1}}) {
    cfg.g1.push_back(row);
    cfg.g2.push_back(row);
  }
  ScenarioCtx S = make_ree(3, 1, cfg);
  CHECK(S.T->size() == 19684);
  CHECK(S.G1->order() == 27);
  CHECK(S.H->order() == 1);
  CHECK(has(S.note, "external"));
  CHECK(has(S.note, "19683"));

  auto C = std::make_shared<CurveModel>(S.F, scenes::ree_curve(*S.F));
  TestSet T = TestSet::build(C, 3);
  const FieldCtx& F = *S.F;
  FiniteAutoGroup Gref = FiniteAutoGroup::close_group(
      T, {scenes::ree_gen(F, F.one(), F.zero(), F.zero()),
          scenes::ree_gen(F, F.zero(), F.one(), F.zero()),
          scenes::ree_gen(F, F.zero(), F.zero(), F.one())});
  CHECK(S.G1->elements() == Gref.elements());

  std::mt19937 rng(0);
  CheckReport F1 = check_fact1(S, rng);
  CHECK(failed_ids(F1) == std::vector<std::string>{"a1", "a2", "b", "c"});
  CHECK(has(F1.row("a1")->evidence, "19683"));
  CHECK(has(F1.row("b")->evidence, "share 27 elements"));
  CHECK(check_corollary(S).passed());
}

TEST_CASE("catalog controls flip exactly the advertised rows") {
  std::mt19937 rng(0);
  SUBCASE("thickened groups break the intersection and the sums") {
    ScenarioCtx S = make_gk(2, 3, {}, "b");
    CHECK(S.H == nullptr);
    CHECK(S.G1->order() == 24);
    CheckReport R = check_fact1(S, rng);
    CHECK(failed_ids(R) == std::vector<std::string>{"b", "c"});
  }
  SUBCASE("moved second place breaks only the matched sums") {
    ScenarioCtx S = make_gk(2, 3, {}, "c");
    CHECK(S.H == nullptr);
    CheckReport R = check_fact1(S, rng);
    CHECK(failed_ids(R) == std::vector<std::string>{"c"});
    CHECK(has(R.row("c")->evidence, "sides differ"));
  }
  SUBCASE("subgroup inside G1 lands in the product set and blocks the split") {
    ScenarioCtx S = make_gk(2, 3, {}, "d");
    CHECK(check_fact1(S, rng).passed());
    CheckReport R = check_corollary(S);
    CHECK(failed_ids(R) == std::vector<std::string>{"d", "e"});
  }
  SUBCASE("the swap is not normalized and identifies the places") {
    ScenarioCtx S = make_gk(2, 3, {}, "e");
    CHECK(check_fact1(S, rng).passed());
    CheckReport R = check_corollary(S);
    CHECK(failed_ids(R) == std::vector<std::string>{"e", "f"});
  }
  SUBCASE("swap times scaling keeps the product condition but shares the orbit") {
    ScenarioCtx S = make_gk(2, 3, {}, "f");
    CHECK(check_fact1(S, rng).passed());
    CheckReport R = check_corollary(S);
    CHECK(failed_ids(R) == std::vector<std::string>{"e", "f"});
    CHECK(R.row("d")->verdict == Verdict::Pass);
  }
  SUBCASE("moved place on the plane scenario") {
    ScenarioCtx S = make_hermitian(3, 2, {}, "c");
    CHECK(S.H == nullptr);
    CHECK(S.qmodel == std::nullopt);
    CheckReport R = check_fact1(S, rng);
    CHECK(failed_ids(R) == std::vector<std::string>{"c"});
  }
  SUBCASE("moved place on the quartic scenario") {
    ScenarioCtx S = make_fermat(7, {}, "c");
    CheckReport R = check_fact1(S, rng);
    CHECK(failed_ids(R) == std::vector<std::string>{"c"});
  }
}

TEST_CASE("catalog outer variant shares one place and verifies") {
  ScenarioCtx S = make_hermitian(2, 1, {}, "", true);
  CHECK(S.outer);
  CHECK(S.P1 == S.P2);
  CHECK(S.H == nullptr);
  std::mt19937 rng(0);
  CheckReport R = check_outer(S, rng);
  CHECK(R.passed());
  CHECK(has(R.row("c")->evidence, "orbit sums of the common place agree (degree 3)"));
  CHECK(kind_of([] { make_hermitian(3, 1, {}, "", true); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] { make_hermitian(2, 3, {}, "", true); }) == ErrKind::InvalidInput);
}

TEST_CASE("catalog sampling override keeps the ambient field consistent") {
  // the scaling subgroup acts trivially on rational places, so the faithfulness
  // guard rejects the small scene outright when a subgroup is requested
  CHECK(kind_of([] { make_gk(2, 3, {2, 0}); }) == ErrKind::UnfaithfulTestSet);

  ScenarioCtx S = make_gk(2, 1, {2, 0});
  CHECK(S.F->degree() == 6);
  CHECK(S.test_degree == 2);
  CHECK(S.T->size() == 9);
  std::mt19937 rng(0);
  CHECK(kind_of([&] { check_fact1(S, rng); }) == ErrKind::InconclusiveSampling);
}

TEST_CASE("run layer assembles reports with labels, gating and stable bytes") {
  ScenarioCtx S = make_gk(2, 3);
  RunResult R = run_scenario(S, 0, false);
  CHECK(R.exit_code == 0);
  CHECK(R.report["scenario"] == "gk");
  CHECK(R.report["params"]["q"] == 2);
  CHECK(R.report["params"]["h"] == 3);
  CHECK(R.report["seed"] == 0);
  REQUIRE(R.report["conditions"].size() == 17);
  CHECK(R.report["conditions"][0]["id"] == "a1");
  CHECK(R.report["conditions"][0]["label"] == "(a)");
  CHECK(R.report["conditions"][3]["id"] == "c");
  CHECK(R.report["conditions"][3]["label"] == "(c)");
  bool saw_hat_c = false, saw_push = false;
  for (const auto& row : R.report["conditions"]) {
    if (row["id"] == "hat-c") {
      saw_hat_c = true;
      CHECK(row["label"] == "(c')");
    }
    if (row["id"] == "push") {
      saw_push = true;
      CHECK(row["label"] == "");
    }
    CHECK(row["verdict"] == "pass");
  }
  CHECK(saw_hat_c);
  CHECK(saw_push);
  CHECK(R.report["derived"]["degree"] == 9);
  CHECK(R.report["derived"]["group_orders"]["G1"] == 8);
  CHECK(R.report["derived"]["group_orders"]["H"] == 3);
  CHECK(R.report["derived"]["group_orders"]["G1_hat"] == 24);
  CHECK(R.report["timing"].is_null());
  CHECK(R.report.count("note") == 0);

  // byte-stable across repeats; the seed changes only its own field
  RunResult R2 = run_scenario(S, 0, false);
  CHECK(R.report.dump() == R2.report.dump());
  RunResult R3 = run_scenario(S, 17, false);
  CHECK(R3.report["seed"] == 17);
  R3.report["seed"] = 0;
  CHECK(R.report.dump() == R3.report.dump());

  RunResult Rt = run_scenario(S, 0, true);
  CHECK(Rt.report["timing"]["total_ms"].is_number());

  ScenarioCtx Sc = make_gk(2, 3, {}, "c");
  RunResult Rc = run_scenario(Sc, 0, false);
  CHECK(Rc.exit_code == 1);
  CHECK(Rc.report["conditions"].size() == 4);

  ScenarioCtx Sd = make_gk(2, 3, {}, "d");
  RunResult Rd = run_scenario(Sd, 0, false);
  CHECK(Rd.exit_code == 1);
  CHECK(Rd.report["conditions"].size() == 7);

  ScenarioCtx Sf = make_fermat(7);
  RunResult Rf = run_scenario(Sf, 0, false);
  CHECK(Rf.exit_code == 0);
  CHECK(Rf.report["conditions"].size() == 19);
  CHECK(Rf.report["conditions"][17]["id"] == "model-image");
  CHECK(Rf.report["derived"]["degree"] == 4);

  ScenarioCtx So = make_hermitian(2, 1, {}, "", true);
  RunResult Ro = run_scenario(So, 0, false);
  CHECK(Ro.exit_code == 0);
  CHECK(Ro.report["conditions"].size() == 4);
  CHECK(Ro.report["derived"]["degree"] == 3);

  ReeGeneratorConfig cfg{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                         {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  ScenarioCtx Sr = make_ree(3, 1, cfg);
  RunResult Rr = run_scenario(Sr, 0, false);
  CHECK(Rr.exit_code == 1);
  CHECK(Rr.report["conditions"].size() == 7);
  CHECK(Rr.report["note"].is_string());
}

TEST_CASE("generator and scenario files load and reject malformed input") {
  TmpFile good("ree.json", kDemoRee);
  ReeGeneratorConfig cfg = load_ree_generators(good.path);
  REQUIRE(cfg.g1.size() == 3);
  REQUIRE(cfg.g2.size() == 3);
  CHECK(cfg.g1[0] == std::array<uint32_t, 3>{1, 0, 0});

  CHECK(kind_of([] { load_ree_generators("no_such_file.json"); }) == ErrKind::InvalidInput);
  TmpFile bad1("bad1.json", "{ not json");
  CHECK(kind_of([&] { load_ree_generators(bad1.path); }) == ErrKind::InvalidInput);
  TmpFile bad2("bad2.json", R"({"g1": [[1,0,0]]})");
  CHECK(kind_of([&] { load_ree_generators(bad2.path); }) == ErrKind::InvalidInput);
  TmpFile bad3("bad3.json", R"({"g1": [[1,0]], "g2": []})");
  CHECK(kind_of([&] { load_ree_generators(bad3.path); }) == ErrKind::InvalidInput);
  TmpFile bad4("bad4.json", R"({"g1": [[1,0,99]], "g2": [[0,0,0]]})");
  ReeGeneratorConfig big = load_ree_generators(bad4.path);
  CHECK(kind_of([&] { make_ree(3, 1, big); }) == ErrKind::InvalidInput);

  TmpFile sc("outer.json", R"({"scenario": "hermitian", "q": 2, "outer": true})");
  ScenarioRequest req = load_scenario_file(sc.path);
  CHECK(req.name == "hermitian");
  CHECK(req.outer);
  ScenarioCtx S = make_scenario(req);
  CHECK(S.outer);

  TmpFile sc2("gk.json", R"({"scenario": "gk", "q": 2, "h": 3, "control": "c"})");
  ScenarioCtx S2 = make_scenario(load_scenario_file(sc2.path));
  std::mt19937 rng(0);
  CHECK(failed_ids(check_fact1(S2, rng)) == std::vector<std::string>{"c"});

  CHECK(kind_of([] { load_scenario_file("no_such_file.json"); }) == ErrKind::InvalidInput);
  TmpFile sc3("nos.json", R"({"q": 2})");
  CHECK(kind_of([&] { load_scenario_file(sc3.path); }) == ErrKind::InvalidInput);
  TmpFile sc4("junk.json", R"({"scenario": "gk", "q": "two"})");
  CHECK(kind_of([&] { load_scenario_file(sc4.path); }) == ErrKind::InvalidInput);
  CHECK(kind_of([] {
          ScenarioRequest r;
          r.name = "gk";
          make_scenario(r);
        }) == ErrKind::InvalidInput);
  CHECK(kind_of([] {
          ScenarioRequest r;
          r.name = "nope";
          r.q = 2;
          make_scenario(r);
        }) == ErrKind::InvalidInput);
}

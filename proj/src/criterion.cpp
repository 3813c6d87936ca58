#include "twogal/criterion.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "twogal/errors.hpp"

namespace twogal {

bool CheckReport::passed() const {
  for (const auto& r : rows)
    if (r.verdict != Verdict::Pass) return false;
  return true;
}

const ConditionResult* CheckReport::row(const std::string& id) const {
  for (const auto& r : rows)
    if (r.id == id) return &r;
  return nullptr;
}

void CheckReport::append(CheckReport more) {
  for (auto& r : more.rows) rows.push_back(std::move(r));
}

namespace {

ConditionResult ok_row(std::string id, std::string ev) {
  return {std::move(id), Verdict::Pass, std::move(ev)};
}

ConditionResult bad_row(std::string id, std::string ev) {
  return {std::move(id), Verdict::Fail, std::move(ev)};
}

std::string diff_evidence(const FieldCtx& F, const Divisor& lhs, const Divisor& rhs) {
  Divisor d = lhs - rhs;
  const auto& [p, n] = *d.terms().begin();
  return "sides differ (degrees " + std::to_string(lhs.degree()) + " and " +
         std::to_string(rhs.degree()) + "; coefficient gap " + std::to_string(n) + " at " +
         p.to_string(F) + ")";
}

std::vector<uint32_t> orbit_set(const FiniteAutoGroup& G, uint32_t idx) {
  auto o = G.orbit(idx);
  std::sort(o.begin(), o.end());
  return o;
}

uint32_t perm_order(const Perm& p) {
  Perm cur = p;
  uint32_t o = 1;
  while (!is_identity(cur)) {
    cur = compose(cur, p);
    ++o;
  }
  return o;
}

std::string side_failure(const SemidirectReport& r) {
  if (!r.trivial_overlap) return "nontrivial overlap with H";
  if (!r.normalizes) return "H is not normalized";
  return "products collapse";
}

ConditionResult intersection_row(std::string id, const FiniteAutoGroup& A,
                                 const FiniteAutoGroup& B) {
  uint64_t overlap = FiniteAutoGroup::intersect(A, B).order();
  if (overlap == 1) return ok_row(std::move(id), "the two groups intersect trivially");
  return bad_row(std::move(id),
                 "the two groups share " + std::to_string(overlap) + " elements");
}

ConditionResult distinct_orbits_row(std::string id, const FiniteAutoGroup& H, const TestSet& T,
                                    const ProjPoint& P1, const ProjPoint& P2) {
  auto o1 = orbit_set(H, T.index_of(P1));
  auto o2 = orbit_set(H, T.index_of(P2));
  if (o1 != o2)
    return ok_row(std::move(id), "H-orbits of the two places are distinct (sizes " +
                                     std::to_string(o1.size()) + " and " +
                                     std::to_string(o2.size()) + ")");
  return bad_row(std::move(id), "H identifies the two places (shared orbit of size " +
                                    std::to_string(o1.size()) + ")");
}

}  // namespace

HatCtx build_hats(const ScenarioCtx& S) {
  if (!S.H) fail(ErrKind::Internal, "enlarged groups need the extra group");
  HatCtx h;
  h.G1h = std::make_unique<FiniteAutoGroup>(FiniteAutoGroup::join(*S.H, *S.G1));
  h.G2h = std::make_unique<FiniteAutoGroup>(FiniteAutoGroup::join(*S.H, *S.G2));
  return h;
}

ConditionResult check_rationality(const std::string& id, const FiniteAutoGroup& G,
                                  const RationalityWitness& w, std::mt19937& rng) {
  const TestSet& T = G.scene();
  const CurveModel& C = T.model();
  const FieldCtx& F = C.field();
  const size_t n = T.size();

  std::vector<uint8_t> in(n, 0);
  std::vector<FieldElem> val(n, F.zero());
  size_t used = 0;
  for (size_t i = 0; i < n; ++i) {
    const ProjPoint& p = T.points()[i];
    if (p.at_infinity()) continue;
    std::vector<FieldElem> x = C.dehomogenize(p);
    FieldElem d = w.den.eval(F, x);
    if (d.v == 0) continue;
    val[i] = F.mul(w.num.eval(F, x), F.inv(d));
    in[i] = 1;
    ++used;
  }
  if (used == 0)
    fail(ErrKind::InconclusiveSampling,
         "witness " + w.name + " is undefined on the whole place set");

  for (const Perm& g : G.elements())
    for (size_t i = 0; i < n; ++i) {
      if (!in[i]) continue;
      uint32_t j = g[i];
      if (in[j] && val[j] != val[i])
        return bad_row(id, "witness " + w.name + " is not constant on a group orbit");
    }

  std::uniform_int_distribution<size_t> pick(0, n - 1);
  for (size_t k = 0; k < 24; ++k) {
    size_t i = pick(rng);
    if (!in[i]) continue;
    std::vector<FieldElem> x = C.dehomogenize(T.points()[i]);
    if (w.num.eval(F, x) != F.mul(val[i], w.den.eval(F, x)))
      fail(ErrKind::Internal, "witness re-evaluation mismatch");
  }

  std::unordered_map<uint32_t, uint32_t> fiber;
  for (size_t i = 0; i < n; ++i)
    if (in[i]) ++fiber[val[i].v];
  uint32_t maxf = 0;
  for (const auto& [v, c] : fiber) maxf = std::max(maxf, c);

  std::string stats = " (" + std::to_string(fiber.size()) + " values on " + std::to_string(used) +
                      " places, " + std::to_string(n - used) + " skipped)";
  if (maxf > G.order())
    return bad_row(id, "fiber of witness " + w.name + " has size " + std::to_string(maxf) +
                           ", larger than the group order " + std::to_string(G.order()) + stats);
  if (maxf < G.order())
    fail(ErrKind::InconclusiveSampling,
         "no fiber of witness " + w.name + " reaches the group order " +
             std::to_string(G.order()) + " at this test degree; max seen " +
             std::to_string(maxf) + stats);
  return ok_row(id, "max fiber of witness " + w.name + " equals the group order " +
                        std::to_string(G.order()) + stats);
}

CheckReport check_fact1(const ScenarioCtx& S, std::mt19937& rng) {
  CheckReport R;
  R.rows.push_back(check_rationality("a1", *S.G1, S.w1, rng));
  R.rows.push_back(check_rationality("a2", *S.G2, S.w2, rng));
  R.rows.push_back(intersection_row("b", *S.G1, *S.G2));

  Divisor lhs = Divisor::of(S.P1) + orbit_divisor(*S.G1, S.P2);
  Divisor rhs = Divisor::of(S.P2) + orbit_divisor(*S.G2, S.P1);
  if (lhs != rhs) {
    R.rows.push_back(bad_row("c", diff_evidence(*S.F, lhs, rhs)));
    return R;
  }
  std::string ev = "matched sums of degree " + std::to_string(lhs.degree());
  if (S.full_sum_degree) {
    if (lhs == Divisor::sum(S.C->places(*S.full_sum_degree)))
      ev += "; equal to the full degree-" + std::to_string(*S.full_sum_degree) + " place set";
    else {
      R.rows.push_back(bad_row("c", ev + "; sides agree but miss the declared degree-" +
                                        std::to_string(*S.full_sum_degree) + " place set"));
      return R;
    }
  }
  R.rows.push_back(ok_row("c", ev));
  return R;
}

CheckReport check_outer(const ScenarioCtx& S, std::mt19937& rng) {
  CheckReport R;
  R.rows.push_back(check_rationality("a1", *S.G1, S.w1, rng));
  R.rows.push_back(check_rationality("a2", *S.G2, S.w2, rng));
  R.rows.push_back(intersection_row("b", *S.G1, *S.G2));

  Divisor lhs = orbit_divisor(*S.G1, S.P1);
  Divisor rhs = orbit_divisor(*S.G2, S.P1);
  if (lhs == rhs)
    R.rows.push_back(
        ok_row("c", "orbit sums of the common place agree (degree " +
                        std::to_string(lhs.degree()) + ")"));
  else
    R.rows.push_back(bad_row("c", diff_evidence(*S.F, lhs, rhs)));
  return R;
}

CheckReport check_corollary(const ScenarioCtx& S) {
  if (!S.H) fail(ErrKind::Internal, "corollary stage needs the extra group");
  const FiniteAutoGroup& H = *S.H;
  CheckReport R;

  {
    const Perm* hit = nullptr;
    for (const Perm& h : H.elements()) {
      if (is_identity(h)) continue;
      if (in_product(*S.G1, *S.G2, h)) {
        hit = &h;
        break;
      }
    }
    if (!hit)
      R.rows.push_back(ok_row("d", "no nonidentity element of H (order " +
                                       std::to_string(H.order()) +
                                       ") lies in the product set"));
    else
      R.rows.push_back(bad_row("d", "an element of H of order " +
                                        std::to_string(perm_order(*hit)) +
                                        " lies in the product set"));
  }

  {
    SemidirectReport r1 = semidirect_check(H, *S.G1);
    SemidirectReport r2 = semidirect_check(H, *S.G2);
    if (r1.ok() && r2.ok()) {
      std::string ev = "split products of orders " +
                       std::to_string(H.order() * S.G1->order()) + " and " +
                       std::to_string(H.order() * S.G2->order());
      ev += (r1.commutes && r2.commutes) ? " (both commute)" : " (nontrivial action)";
      R.rows.push_back(ok_row("e", ev));
    } else if (!r1.ok()) {
      R.rows.push_back(bad_row("e", "product with G1 does not split: " + side_failure(r1)));
    } else {
      R.rows.push_back(bad_row("e", "product with G2 does not split: " + side_failure(r2)));
    }
  }

  R.rows.push_back(distinct_orbits_row("f", H, *S.T, S.P1, S.P2));
  return R;
}

CheckReport check_theorem_main(const ScenarioCtx& S, const HatCtx& hat, std::mt19937& rng) {
  if (!S.H || !hat.G1h || !hat.G2h) fail(ErrKind::Internal, "enlarged stage is not configured");
  if (!S.w1h || !S.w2h)
    fail(ErrKind::InvalidInput, "witnesses for the enlarged groups are not configured");
  const FiniteAutoGroup& H = *S.H;
  const FiniteAutoGroup& A = *hat.G1h;
  const FiniteAutoGroup& B = *hat.G2h;
  const FieldCtx& F = *S.F;
  CheckReport R;

  {
    bool contain = true;
    for (const Perm& h : H.elements())
      if (!A.contains(h) || !B.contains(h)) {
        contain = false;
        break;
      }
    bool normal = contain;
    for (const FiniteAutoGroup* Gp : {&A, &B}) {
      if (!normal) break;
      for (const Perm& g : Gp->elements()) {
        Perm gi = inverse_perm(g);
        for (const Perm& h : H.elements())
          if (!H.contains(compose(compose(gi, h), g))) {
            normal = false;
            break;
          }
        if (!normal) break;
      }
    }
    if (normal)
      R.rows.push_back(ok_row("hat-hyp", "H (order " + std::to_string(H.order()) +
                                             ") is normal in both enlarged groups (orders " +
                                             std::to_string(A.order()) + " and " +
                                             std::to_string(B.order()) + ")"));
    else
      R.rows.push_back(bad_row("hat-hyp", contain
                                              ? "H is not normal in an enlarged group"
                                              : "H is not contained in both enlarged groups"));
  }

  R.rows.push_back(check_rationality("hat-a1", A, *S.w1h, rng));
  R.rows.push_back(check_rationality("hat-a2", B, *S.w2h, rng));

  {
    auto I = FiniteAutoGroup::intersect(A, B);
    bool same = I.order() == H.order();
    if (same)
      for (const Perm& e : I.elements())
        if (!H.contains(e)) {
          same = false;
          break;
        }
    if (same)
      R.rows.push_back(ok_row("hat-b", "enlarged groups intersect exactly in H (order " +
                                           std::to_string(H.order()) + ")"));
    else
      R.rows.push_back(bad_row("hat-b", "intersection of the enlarged groups has order " +
                                            std::to_string(I.order()) + ", H has order " +
                                            std::to_string(H.order())));
  }

  Divisor lc = orbit_divisor(H, S.P1) + orbit_divisor(A, S.P2);
  Divisor rc = orbit_divisor(H, S.P2) + orbit_divisor(B, S.P1);
  if (lc == rc)
    R.rows.push_back(
        ok_row("hat-c", "matched sums of degree " + std::to_string(lc.degree())));
  else
    R.rows.push_back(bad_row("hat-c", diff_evidence(F, lc, rc)));

  R.rows.push_back(distinct_orbits_row("hat-d", H, *S.T, S.P1, S.P2));

  QuotientCtx Q(H);
  std::vector<Perm> bar1 = Q.induce_group(A);
  std::vector<Perm> bar2 = Q.induce_group(B);
  uint32_t i1 = S.T->index_of(S.P1);
  uint32_t i2 = S.T->index_of(S.P2);
  Divisor lbar = Divisor::of(S.T->points()[Q.rep(i1)]);
  for (const Perm& s : bar1) lbar.add(Q.places()[s[Q.down_index(i2)]], 1);
  Divisor rbar = Divisor::of(S.T->points()[Q.rep(i2)]);
  for (const Perm& t : bar2) rbar.add(Q.places()[t[Q.down_index(i1)]], 1);

  int64_t hn = static_cast<int64_t>(H.order());
  if (Q.pushforward(lc) == lbar.scaled(hn) && Q.pushforward(rc) == rbar.scaled(hn))
    R.rows.push_back(ok_row("push", "pushforward equals " + std::to_string(hn) +
                                        " times each quotient sum (degree " +
                                        std::to_string(lc.degree()) + " to " +
                                        std::to_string(lbar.degree()) + ")"));
  else
    R.rows.push_back(bad_row("push", "pushforward does not match the scaled quotient sums"));

  {
    std::vector<Perm> common;
    std::set_intersection(bar1.begin(), bar1.end(), bar2.begin(), bar2.end(),
                          std::back_inserter(common));
    if (common.size() == 1)
      R.rows.push_back(ok_row("down-b", "quotient groups of orders " +
                                            std::to_string(bar1.size()) + " and " +
                                            std::to_string(bar2.size()) +
                                            " intersect trivially"));
    else
      R.rows.push_back(bad_row("down-b", "quotient groups share " +
                                             std::to_string(common.size()) + " elements"));
  }

  if (lbar == rbar)
    R.rows.push_back(
        ok_row("down-c", "quotient sums agree (degree " + std::to_string(lbar.degree()) + ")"));
  else
    R.rows.push_back(bad_row("down-c", diff_evidence(F, lbar, rbar)));

  if (Q.pullback(lbar) == lc && Q.pullback(rbar) == rc)
    R.rows.push_back(
        ok_row("pull", "pullback with stabilizer multiplicities recovers both sums"));
  else
    R.rows.push_back(bad_row("pull", "pullback does not recover the upstairs sums"));

  return R;
}

CheckReport quotient_model_check(const ScenarioCtx& S) {
  if (!S.qmodel) fail(ErrKind::Internal, "no quotient model configured");
  const QuotientModelSpec& q = *S.qmodel;
  const FieldCtx& F = *S.F;
  CheckReport R;

  size_t inf = 0, bad = 0;
  std::string first_bad;
  std::map<std::vector<uint32_t>, uint32_t> fibers;
  std::vector<FieldElem> img(q.image.size());
  std::vector<uint32_t> key(q.image.size());
  for (const auto& p : S.T->points()) {
    if (p.at_infinity()) {
      ++inf;
      continue;
    }
    std::vector<FieldElem> x = S.C->dehomogenize(p);
    for (size_t k = 0; k < q.image.size(); ++k) {
      img[k] = q.image[k].eval(F, x);
      key[k] = img[k].v;
    }
    if (q.target.eval(F, img).v != 0) {
      if (bad == 0) first_bad = p.to_string(F);
      ++bad;
    }
    ++fibers[key];
  }

  if (bad == 0)
    R.rows.push_back(ok_row("model-image",
                            "all " + std::to_string(S.T->size() - inf) +
                                " affine images satisfy " + q.target_name + " (" +
                                std::to_string(inf) + " at infinity excluded)"));
  else
    R.rows.push_back(bad_row("model-image", std::to_string(bad) + " images miss " +
                                                q.target_name + "; first at " + first_bad));

  size_t generic = 0, branch = 0;
  std::string fib_bad;
  for (const auto& [k, cnt] : fibers) {
    uint32_t want = k.at(q.branch_coord) == 0 ? 1 : q.generic_fiber;
    if (cnt != want) {
      fib_bad = "a fiber has size " + std::to_string(cnt) + " where " + std::to_string(want) +
                " is expected";
      break;
    }
    (k.at(q.branch_coord) == 0 ? branch : generic)++;
  }
  if (fib_bad.empty())
    R.rows.push_back(ok_row("model-fiber", std::to_string(generic) + " generic fibers of size " +
                                               std::to_string(q.generic_fiber) + " and " +
                                               std::to_string(branch) +
                                               " branch fibers of size 1"));
  else
    R.rows.push_back(bad_row("model-fiber", fib_bad));
  return R;
}

}  // namespace twogal

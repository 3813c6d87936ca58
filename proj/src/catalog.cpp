#include "twogal/catalog.hpp"

#include <json.hpp>

#include <fstream>

namespace twogal {

namespace {

using nlohmann::json;

Poly P(const FieldCtx& F, const std::vector<std::string>& vars, const std::string& src) {
  ExprEnv env{&F, vars, {}};
  return parse_poly(env, src);
}

ProjPoint pt(const FieldCtx& F, std::vector<FieldElem> c) { return ProjPoint::make(F, c); }

std::unique_ptr<FiniteAutoGroup> box(FiniteAutoGroup g) {
  return std::make_unique<FiniteAutoGroup>(std::move(g));
}

struct PrimePower {
  uint32_t p, k;
};

PrimePower split_prime_power(uint32_t q, const std::string& flag) {
  if (q >= 2)
    for (uint32_t p = 2; p <= q; ++p)
      if (q % p == 0) {
        uint32_t k = 0, m = q;
        while (m % p == 0) {
          m /= p;
          ++k;
        }
        if (m == 1) return {p, k};
        break;
      }
  fail(ErrKind::InvalidInput, flag + " must be a prime power, got " + std::to_string(q));
}

void require_divisor(uint32_t val, uint32_t m, const std::string& flag, const std::string& what) {
  if (val == 0 || m % val != 0)
    fail(ErrKind::InvalidInput,
         flag + " must divide " + what + " = " + std::to_string(m) + ", got " + std::to_string(val));
}

uint32_t mult_order(uint32_t base, uint32_t mod) {
  if (mod <= 1) return 1;
  uint64_t acc = base % mod;
  for (uint32_t o = 1; o <= mod; ++o) {
    if (acc == 1) return o;
    acc = acc * base % mod;
  }
  fail(ErrKind::Internal, "base shares a factor with the modulus");
}

std::shared_ptr<FieldCtx> ambient(uint32_t p, std::vector<uint32_t> degrees,
                                  const BuildOpts& o) {
  if (o.sample_degree) degrees.push_back(o.sample_degree);
  FieldOpts fo;
  if (o.cap_bits) fo.ambient_bits = o.cap_bits;
  return FieldCtx::build_ambient(p, degrees, fo);
}

Automorphism diag_auto(const FieldCtx& F, uint8_t n, uint32_t slot, FieldElem z,
                       const std::string& label) {
  Mat m = Mat::identity(F, n);
  m.at(slot, slot) = z;
  return {LinearAtom{m}, label};
}

// Cyclic scaling subgroup in one coordinate slot; trivial when order is 1.
std::unique_ptr<FiniteAutoGroup> scale_subgroup(const TestSet& T, const FieldCtx& F, uint8_t n,
                                                uint32_t slot, uint32_t order) {
  if (order == 1) return box(FiniteAutoGroup::trivial(T));
  return box(FiniteAutoGroup::close_group(T, {diag_auto(F, n, slot, F.element_of_order(order), "h")}));
}

void reject_control(const std::string& control, const std::string& allowed) {
  if (!control.empty())
    fail(ErrKind::InvalidInput,
         "unknown control '" + control + "' for this scenario; available: " + allowed);
}

// Moves the second place to the first scene place outside both matched sums,
// so the divisor identity fails while the projection certificates still hold.
// The auxiliary group is dropped to keep the flip confined to one row.
void move_second_place(ScenarioCtx& S) {
  Divisor lhs = Divisor::of(S.P1) + orbit_divisor(*S.G1, S.P2);
  Divisor rhs = Divisor::of(S.P2) + orbit_divisor(*S.G2, S.P1);
  for (const Place& p : S.T->points()) {
    if (p == S.P1 || p == S.P2) continue;
    if (lhs.coeff(p) != 0 || rhs.coeff(p) != 0) continue;
    S.P2 = p;
    S.H.reset();
    S.w1h.reset();
    S.w2h.reset();
    S.qmodel.reset();
    return;
  }
  fail(ErrKind::Internal, "no scene place lies outside the matched sums");
}

}  // namespace

ScenarioCtx make_gk(uint32_t q, uint32_t h_order, const BuildOpts& opts,
                    const std::string& control) {
  auto [p, k] = split_prime_power(q, "--q");
  uint32_t m = q * q - q + 1;
  require_divisor(h_order, m, "--h", "q^2 - q + 1");

  ScenarioCtx S;
  S.name = "gk";
  S.params = {{"q", q}, {"h", h_order}};
  S.F = ambient(p, {2 * k, 6 * k}, opts);
  const FieldCtx& F = *S.F;

  std::vector<std::string> v{"x", "y", "z"};
  std::string qs = std::to_string(q);
  CurveSpec spec;
  spec.dim = 3;
  spec.vars = v;
  spec.eqs = {P(F, v, "x^" + qs + " + x - y^" + std::to_string(q + 1)),
              P(F, v, "y*((x^" + qs + " + x)^" + std::to_string(q - 1) + " - 1) - z^" +
                          std::to_string(m))};
  EnumStep sy;
  sy.kind = EnumStep::Kind::Outer;
  sy.var = 1;
  EnumStep sx;
  sx.kind = EnumStep::Kind::Additive;
  sx.var = 0;
  sx.lhs = {{F.one(), k}, {F.one(), 0}};
  sx.rhs = P(F, v, "y^" + std::to_string(q + 1));
  EnumStep sz;
  sz.kind = EnumStep::Kind::Power;
  sz.var = 2;
  sz.exponent = m;
  sz.rhs = P(F, v, "y^" + std::to_string(q * q) + " - y");
  spec.chain = {sy, sx, sz};
  spec.infinity = {pt(F, {F.one(), F.zero(), F.zero(), F.zero()})};
  S.C = std::make_shared<CurveModel>(S.F, std::move(spec));

  S.test_degree = opts.sample_degree ? opts.sample_degree : 6 * k;
  S.T = std::make_unique<TestSet>(TestSet::build(S.C, S.test_degree));

  // translations (x, y) -> (x + a, y + b) over a^q + a = b^(q+1) in GF(q^2)
  std::vector<Automorphism> gens;
  AdditivePoly tr{{F.one(), k}, {F.one(), 0}};
  for (FieldElem b : F.subfield_elements(2 * k)) {
    FieldElem rhs = F.pow(b, q + 1);
    for (FieldElem a : F.solve_additive(tr, rhs)) {
      if (!F.in_subfield(a, 2 * k)) continue;
      Mat mt = Mat::identity(F, 4);
      mt.at(0, 1) = F.pow(b, q);
      mt.at(0, 3) = a;
      mt.at(1, 3) = b;
      gens.push_back({LinearAtom{mt}, "s(" + F.to_string(a) + "," + F.to_string(b) + ")"});
    }
  }
  S.G1 = box(FiniteAutoGroup::close_group(*S.T, gens));

  Mat xm;
  xm.n = 4;
  xm.at(0, 3) = F.one();
  xm.at(1, 1) = F.neg(F.one());
  xm.at(2, 2) = F.one();
  xm.at(3, 0) = F.one();
  Perm xi = S.T->perm_of({LinearAtom{xm}, "xi"});
  S.G2 = box(FiniteAutoGroup::conjugated(*S.G1, xi, &xm));

  S.H = scale_subgroup(*S.T, F, 4, 2, h_order);
  S.P1 = pt(F, {F.one(), F.zero(), F.zero(), F.zero()});
  S.P2 = pt(F, {F.zero(), F.zero(), F.zero(), F.one()});
  S.w1 = {P(F, v, "z"), P(F, v, "1"), "z"};
  S.w2 = {P(F, v, "z"), P(F, v, "x"), "z/x"};
  std::string e = std::to_string(h_order);
  S.w1h = RationalityWitness{P(F, v, "z^" + e), P(F, v, "1"), "z^" + e};
  S.w2h = RationalityWitness{P(F, v, "z^" + e), P(F, v, "x^" + e), "(z/x)^" + e};
  S.full_sum_degree = 2 * k;

  if (control.empty()) return S;
  if (control == "b" || control == "f")
    if (h_order == 1)
      fail(ErrKind::InvalidInput, "control '" + control + "' needs a nontrivial --h");
  if (control == "b") {
    // thicken both groups by H: the intersection becomes H, and the matched
    // sums pick up the H-translates
    S.G1 = box(FiniteAutoGroup::join(*S.H, *S.G1));
    S.G2 = box(FiniteAutoGroup::join(*S.H, *S.G2));
    S.w1 = *S.w1h;
    S.w2 = *S.w2h;
    S.H.reset();
    S.w1h.reset();
    S.w2h.reset();
  } else if (control == "c") {
    move_second_place(S);
  } else if (control == "d") {
    // H generated inside G1 itself: it meets the product set and glues to G1
    const auto& els = S.G1->elements();
    uint32_t pick = S.G1->id_index() == 0 ? 1 : 0;
    S.H = box(FiniteAutoGroup::from_perms(*S.T, {els[pick]}));
  } else if (control == "e") {
    // the swap is not normalized by either group
    S.H = box(FiniteAutoGroup::from_perms(*S.T, {xi}));
  } else if (control == "f") {
    // swap times scaling: still identifies the two designated places
    Perm hp = S.T->perm_of(diag_auto(F, 4, 2, F.element_of_order(h_order), "h"));
    S.H = box(FiniteAutoGroup::from_perms(*S.T, {compose(xi, hp)}));
  } else {
    reject_control(control, "b, c, d, e, f");
  }
  return S;
}

ScenarioCtx make_hermitian(uint32_t q, uint32_t s, const BuildOpts& opts,
                           const std::string& control, bool outer) {
  auto [p, k] = split_prime_power(q, "--q");
  if (outer) {
    if (q != 2)
      fail(ErrKind::InvalidInput, "the shared-place variant is built for q = 2 only");
    if (s != 1)
      fail(ErrKind::InvalidInput, "the shared-place variant takes no --s subgroup");
    reject_control(control, "none");
  }
  require_divisor(s, q + 1, "--s", "q + 1");

  ScenarioCtx S;
  S.name = "hermitian";
  S.params = outer ? std::vector<std::pair<std::string, int64_t>>{{"q", q}}
                   : std::vector<std::pair<std::string, int64_t>>{{"q", q}, {"s", s}};
  S.outer = outer;
  S.F = ambient(p, {2 * k}, opts);
  const FieldCtx& F = *S.F;

  std::vector<std::string> v{"x", "y"};
  std::string qs = std::to_string(q);
  CurveSpec spec;
  spec.dim = 2;
  spec.vars = v;
  spec.eqs = {P(F, v, "x^" + qs + " + x - y^" + std::to_string(q + 1))};
  EnumStep sy;
  sy.kind = EnumStep::Kind::Outer;
  sy.var = 1;
  EnumStep sx;
  sx.kind = EnumStep::Kind::Additive;
  sx.var = 0;
  sx.lhs = {{F.one(), k}, {F.one(), 0}};
  sx.rhs = P(F, v, "y^" + std::to_string(q + 1));
  spec.chain = {sy, sx};
  S.C = std::make_shared<CurveModel>(S.F, std::move(spec));

  S.test_degree = opts.sample_degree ? opts.sample_degree : 2 * k;
  S.T = std::make_unique<TestSet>(TestSet::build(S.C, S.test_degree));

  if (outer) {
    // projections from a shared outer point: two conjugate scaling groups
    S.G1 = box(FiniteAutoGroup::close_group(
        *S.T, {diag_auto(F, 3, 1, F.element_of_order(q + 1), "lam")}));
    Mat u = Mat::identity(F, 3);
    u.at(0, 1) = F.one();
    u.at(0, 2) = F.gen();
    u.at(1, 2) = F.one();
    S.G2 = box(FiniteAutoGroup::conjugated(*S.G1, S.T->perm_of({LinearAtom{u}, "u"}), &u));
    S.P1 = pt(F, {F.one(), F.zero(), F.zero()});
    S.P2 = S.P1;
    ExprEnv env{&F, v, {{"w", F.gen()}}};
    S.w1 = {parse_poly(env, "x"), parse_poly(env, "1"), "x"};
    S.w2 = {parse_poly(env, "x + y + 1 + w"), parse_poly(env, "1"), "x + y + 1 + w"};
    return S;
  }

  AdditivePoly tr{{F.one(), k}, {F.one(), 0}};
  std::vector<Automorphism> g1, g2;
  for (FieldElem al : F.solve_additive(tr, F.zero())) {
    Mat m1 = Mat::identity(F, 3);
    m1.at(0, 2) = al;
    g1.push_back({LinearAtom{m1}, "t(" + F.to_string(al) + ")"});
    Mat m2 = Mat::identity(F, 3);
    m2.at(2, 0) = al;
    g2.push_back({LinearAtom{m2}, "u(" + F.to_string(al) + ")"});
  }
  S.G1 = box(FiniteAutoGroup::close_group(*S.T, g1));
  S.G2 = box(FiniteAutoGroup::close_group(*S.T, g2));
  S.H = scale_subgroup(*S.T, F, 3, 1, s);
  S.P1 = pt(F, {F.one(), F.zero(), F.zero()});
  S.P2 = pt(F, {F.zero(), F.zero(), F.one()});
  S.w1 = {P(F, v, "y"), P(F, v, "1"), "y"};
  S.w2 = {P(F, v, "y"), P(F, v, "x"), "y/x"};
  std::string e = std::to_string(s);
  S.w1h = RationalityWitness{P(F, v, "y^" + e), P(F, v, "1"), "y^" + e};
  S.w2h = RationalityWitness{P(F, v, "y^" + e), P(F, v, "x^" + e), "(y/x)^" + e};
  uint32_t mdeg = (q + 1) / s;
  std::string tgt = (mdeg == 1 ? std::string("v") : "v^" + std::to_string(mdeg)) + " - u^" + qs + " - u";
  QuotientModelSpec qm;
  qm.image = {P(F, v, "x"), P(F, v, "y^" + e)};
  qm.target = P(F, {"u", "v"}, tgt);
  qm.target_name = tgt;
  qm.generic_fiber = s;
  qm.branch_coord = 1;
  S.qmodel = qm;

  if (control == "c")
    move_second_place(S);
  else
    reject_control(control, "c");
  return S;
}

ScenarioCtx make_suzuki(uint32_t q0, uint32_t h_order, const BuildOpts& opts,
                        const std::string& control) {
  auto [p0, j] = split_prime_power(q0, "--q0");
  if (p0 != 2 || q0 < 2)
    fail(ErrKind::InvalidInput, "--q0 must be a power of 2, at least 2");
  uint32_t q = 2 * q0 * q0;
  uint32_t e = 2 * j + 1;
  uint32_t hfull = q - 2 * q0 + 1;
  require_divisor(h_order, hfull, "--h", "q - 2*q0 + 1");

  ScenarioCtx S;
  S.name = "skabelund-suzuki";
  S.params = {{"q0", q0}, {"h", h_order}};
  S.F = ambient(2, {e, mult_order(2, hfull)}, opts);
  const FieldCtx& F = *S.F;

  std::vector<std::string> v{"x", "y", "z"};
  auto xp = [](uint32_t n) { return std::to_string(n); };
  CurveSpec spec;
  spec.dim = 3;
  spec.vars = v;
  spec.eqs = {P(F, v, "y^" + xp(q) + " + y - x^" + xp(q + q0) + " - x^" + xp(q0 + 1)),
              P(F, v, "x^" + xp(q) + " + x - z^" + xp(hfull))};
  EnumStep sx;
  sx.kind = EnumStep::Kind::Outer;
  sx.var = 0;
  EnumStep sy;
  sy.kind = EnumStep::Kind::Additive;
  sy.var = 1;
  sy.lhs = {{F.one(), e}, {F.one(), 0}};
  sy.rhs = P(F, v, "x^" + xp(q + q0) + " + x^" + xp(q0 + 1));
  EnumStep sz;
  sz.kind = EnumStep::Kind::Power;
  sz.var = 2;
  sz.exponent = hfull;
  sz.rhs = P(F, v, "x^" + xp(q) + " + x");
  spec.chain = {sx, sy, sz};
  spec.infinity = {pt(F, {F.zero(), F.zero(), F.one(), F.zero()})};
  S.C = std::make_shared<CurveModel>(S.F, std::move(spec));

  S.test_degree = opts.sample_degree ? opts.sample_degree
                                     : S.F->degree();  // lcm(e, ord of 2 mod q - 2*q0 + 1)
  S.T = std::make_unique<TestSet>(TestSet::build(S.C, S.test_degree));

  // (x, y) -> (x + a, y + a^q0 x + b) over GF(q)
  std::vector<Automorphism> gens;
  for (FieldElem a : F.subfield_elements(e))
    for (FieldElem b : F.subfield_elements(e)) {
      Mat mt = Mat::identity(F, 4);
      mt.at(0, 3) = a;
      mt.at(1, 0) = F.pow(a, q0);
      mt.at(1, 3) = b;
      gens.push_back({LinearAtom{mt}, "s(" + F.to_string(a) + "," + F.to_string(b) + ")"});
    }
  S.G1 = box(FiniteAutoGroup::close_group(*S.T, gens));

  std::string alpha = "(y^" + xp(2 * q0) + " + x^" + xp(2 * q0 + 1) + ")";
  std::string beta = "x*y^" + xp(2 * q0) + " + " + alpha + "^" + xp(2 * q0);
  RationalAtom r;
  r.nums = {P(F, v, alpha), P(F, v, "y"), P(F, v, "z")};
  r.den = P(F, v, beta);
  ProjPoint inf = pt(F, {F.zero(), F.zero(), F.one(), F.zero()});
  ProjPoint origin = pt(F, {F.zero(), F.zero(), F.zero(), F.one()});
  r.special = {{inf, origin}, {origin, inf}};
  S.G2 = box(FiniteAutoGroup::conjugated(*S.G1, S.T->perm_of({r, "xi"})));

  S.H = scale_subgroup(*S.T, F, 4, 2, h_order);
  S.P1 = inf;
  S.P2 = origin;
  S.w1 = {P(F, v, "z"), P(F, v, "1"), "z"};
  S.w2 = {P(F, v, "z"), P(F, v, beta), "z/beta"};
  std::string he = std::to_string(h_order);
  S.w1h = RationalityWitness{P(F, v, "z^" + he), P(F, v, "1"), "z^" + he};
  S.w2h = RationalityWitness{P(F, v, "z^" + he), P(F, v, "(" + beta + ")^" + he),
                             "(z/beta)^" + he};
  S.full_sum_degree = e;

  if (control == "c")
    move_second_place(S);
  else
    reject_control(control, "c");
  return S;
}

ScenarioCtx make_ree(uint32_t q0, uint32_t h_order,
                     const std::optional<ReeGeneratorConfig>& gens, const BuildOpts& opts,
                     const std::string& control) {
  auto [p0, j] = split_prime_power(q0, "--q0");
  if (p0 != 3)
    fail(ErrKind::InvalidInput, "--q0 must be a power of 3");
  uint32_t q = 3 * q0 * q0;
  uint32_t e = 2 * j + 1;
  uint32_t hfull = q - 3 * q0 + 1;
  require_divisor(h_order, hfull, "--h", "q - 3*q0 + 1");
  reject_control(control, "none");
  if (!gens)
    fail(ErrKind::MissingGenerators,
         "this cover has no displayed generators; supply them with --generators <file>");
  if (gens->g1.empty() || gens->g2.empty())
    fail(ErrKind::MissingGenerators, "the generator file must list g1 and g2 rows");

  ScenarioCtx S;
  S.name = "skabelund-ree";
  S.params = {{"q0", q0}, {"h", h_order}};
  std::vector<uint32_t> degs{e};
  if (h_order > 1) degs.push_back(mult_order(3, h_order));
  S.F = ambient(3, degs, opts);
  const FieldCtx& F = *S.F;

  std::vector<std::string> v{"x", "y", "z", "t"};
  auto xp = [](uint32_t n) { return std::to_string(n); };
  CurveSpec spec;
  spec.dim = 4;
  spec.vars = v;
  spec.eqs = {P(F, v, "y^" + xp(q) + " - y - x^" + xp(q + q0) + " + x^" + xp(q0 + 1)),
              P(F, v, "z^" + xp(q) + " - z - x^" + xp(q + 2 * q0) + " + x^" + xp(2 * q0 + 1)),
              P(F, v, "x^" + xp(q) + " - x - t^" + xp(hfull))};
  EnumStep sx;
  sx.kind = EnumStep::Kind::Outer;
  sx.var = 0;
  EnumStep sy;
  sy.kind = EnumStep::Kind::Additive;
  sy.var = 1;
  sy.lhs = {{F.one(), e}, {F.neg(F.one()), 0}};
  sy.rhs = P(F, v, "x^" + xp(q + q0) + " - x^" + xp(q0 + 1));
  EnumStep sz;
  sz.kind = EnumStep::Kind::Additive;
  sz.var = 2;
  sz.lhs = {{F.one(), e}, {F.neg(F.one()), 0}};
  sz.rhs = P(F, v, "x^" + xp(q + 2 * q0) + " - x^" + xp(2 * q0 + 1));
  EnumStep st;
  st.kind = EnumStep::Kind::Power;
  st.var = 3;
  st.exponent = hfull;
  st.rhs = P(F, v, "x^" + xp(q) + " - x");
  spec.chain = {sx, sy, sz, st};
  spec.infinity = {pt(F, {F.zero(), F.zero(), F.zero(), F.one(), F.zero()})};
  S.C = std::make_shared<CurveModel>(S.F, std::move(spec));

  S.test_degree = opts.sample_degree ? opts.sample_degree : S.F->degree();
  S.T = std::make_unique<TestSet>(TestSet::build(S.C, S.test_degree));

  // entry n encodes sum d_i * t^i where n = sum d_i * p^i in base p
  auto decode = [&](uint32_t n) -> FieldElem {
    if (n >= F.size())
      fail(ErrKind::InvalidInput, "generator entry " + std::to_string(n) +
                                      " is not an element index of GF(" +
                                      std::to_string(F.size()) + ")");
    std::vector<uint32_t> digits;
    for (uint32_t m = n; m; m /= F.char_p()) digits.push_back(m % F.char_p());
    FieldElem e = F.zero();
    for (size_t i = digits.size(); i-- > 0;)
      e = F.add(F.mul(e, F.gen()), F.from_int(digits[i]));
    return e;
  };
  auto lift = [&](const std::array<uint32_t, 3>& row) -> Automorphism {
    FieldElem a = decode(row[0]), b = decode(row[1]), c = decode(row[2]);
    FieldElem aq0 = F.pow(a, q0);
    Mat mt = Mat::identity(F, 5);
    mt.at(0, 4) = a;
    mt.at(1, 0) = aq0;
    mt.at(1, 4) = b;
    mt.at(2, 0) = F.mul(aq0, aq0);
    mt.at(2, 1) = F.mul(F.from_int(2), aq0);
    mt.at(2, 4) = c;
    return {LinearAtom{mt}, "r(" + F.to_string(a) + "," + F.to_string(b) + "," + F.to_string(c) + ")"};
  };
  std::vector<Automorphism> g1, g2;
  for (const auto& row : gens->g1) g1.push_back(lift(row));
  for (const auto& row : gens->g2) g2.push_back(lift(row));
  S.G1 = box(FiniteAutoGroup::close_group(*S.T, g1));
  S.G2 = box(FiniteAutoGroup::close_group(*S.T, g2));

  S.H = scale_subgroup(*S.T, F, 5, 3, h_order);
  S.P1 = pt(F, {F.zero(), F.zero(), F.zero(), F.one(), F.zero()});
  S.P2 = pt(F, {F.zero(), F.zero(), F.zero(), F.zero(), F.one()});
  S.w1 = {P(F, v, "t"), P(F, v, "1"), "t"};
  S.w2 = S.w1;
  std::string he = std::to_string(h_order);
  S.w1h = RationalityWitness{P(F, v, "t^" + he), P(F, v, "1"), "t^" + he};
  S.w2h = S.w1h;
  uint64_t full = uint64_t(q) * q * q;
  S.note = "groups built from an external generator file; the full cover group has order q^3 = " +
           std::to_string(full);
  return S;
}

ScenarioCtx make_fermat(uint32_t p, const BuildOpts& opts, const std::string& control) {
  bool prime = p >= 2;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) prime = false;
  if (!prime || p == 2 || p == 3)
    fail(ErrKind::InvalidInput, "--p must be a prime other than 2 and 3");

  ScenarioCtx S;
  S.name = "fermat-quartic";
  S.params = {{"p", p}};
  S.F = ambient(p, {2}, opts);
  const FieldCtx& F = *S.F;
  if (p % 3 == 2) S.note = "cube root of unity drawn from the quadratic extension";

  std::vector<std::string> v{"x", "y"};
  CurveSpec spec;
  spec.dim = 2;
  spec.vars = v;
  spec.eqs = {P(F, v, "x^3 + y^4 + 1")};
  EnumStep sy;
  sy.kind = EnumStep::Kind::Outer;
  sy.var = 1;
  EnumStep sx;
  sx.kind = EnumStep::Kind::Power;
  sx.var = 0;
  sx.exponent = 3;
  sx.rhs = P(F, v, "-1 - y^4");
  spec.chain = {sy, sx};
  S.C = std::make_shared<CurveModel>(S.F, std::move(spec));

  S.test_degree = opts.sample_degree ? opts.sample_degree : 2;
  S.T = std::make_unique<TestSet>(TestSet::build(S.C, S.test_degree));

  FieldElem w = roots_in_field(F, "w", "w^2 + w + 1").front();
  Mat m1 = Mat::identity(F, 3);
  m1.at(0, 0) = w;
  S.G1 = box(FiniteAutoGroup::close_group(*S.T, {{LinearAtom{m1}, "g1"}}));
  FieldElem d = F.inv(F.sub(F.one(), w));
  Mat m2;
  m2.n = 3;
  m2.at(0, 0) = F.mul(F.neg(w), d);
  m2.at(0, 2) = F.mul(F.from_int(2), d);
  m2.at(1, 1) = F.one();
  m2.at(2, 0) = d;
  m2.at(2, 2) = F.mul(F.mul(w, w), d);
  S.G2 = box(FiniteAutoGroup::close_group(*S.T, {{LinearAtom{m2}, "g2"}}));
  Mat mh = Mat::identity(F, 3);
  mh.at(1, 1) = F.neg(F.one());
  S.H = box(FiniteAutoGroup::close_group(*S.T, {{LinearAtom{mh}, "h"}}));

  S.P1 = pt(F, {F.one(), F.zero(), F.zero()});
  S.P2 = pt(F, {F.neg(F.one()), F.zero(), F.one()});
  S.w1 = {P(F, v, "y"), P(F, v, "1"), "y"};
  S.w2 = {P(F, v, "y"), P(F, v, "x + 1"), "y/(x+1)"};
  S.w1h = RationalityWitness{P(F, v, "y^2"), P(F, v, "1"), "y^2"};
  S.w2h = RationalityWitness{P(F, v, "y^2"), P(F, v, "(x + 1)^2"), "(y/(x+1))^2"};
  // the intersection with y = 0 sits inside the rational places only when the
  // cube roots of unity are rational themselves
  if (p % 3 == 1) S.full_sum_degree = 1;
  QuotientModelSpec qm;
  qm.image = {P(F, v, "x"), P(F, v, "y^2")};
  qm.target = P(F, {"u", "v"}, "v^2 + u^3 + 1");
  qm.target_name = "v^2 + u^3 + 1";
  qm.generic_fiber = 2;
  qm.branch_coord = 1;
  S.qmodel = qm;

  if (control == "c")
    move_second_place(S);
  else
    reject_control(control, "c");
  return S;
}

ReeGeneratorConfig load_ree_generators(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrKind::InvalidInput, "cannot read generator file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(ErrKind::InvalidInput, "generator file is not valid JSON: " + path);
  ReeGeneratorConfig cfg;
  auto read_rows = [&](const char* key, std::vector<std::array<uint32_t, 3>>& out) {
    if (!j.contains(key) || !j[key].is_array())
      fail(ErrKind::InvalidInput, std::string("generator file needs an array '") + key + "'");
    for (const auto& row : j[key]) {
      if (!row.is_array() || row.size() != 3)
        fail(ErrKind::InvalidInput, std::string("each '") + key + "' row must be [a, b, c]");
      std::array<uint32_t, 3> r{};
      for (size_t i = 0; i < 3; ++i) {
        if (!row[i].is_number_unsigned())
          fail(ErrKind::InvalidInput, "generator entries must be nonnegative integers");
        r[i] = row[i].get<uint32_t>();
      }
      out.push_back(r);
    }
  };
  read_rows("g1", cfg.g1);
  read_rows("g2", cfg.g2);
  return cfg;
}

const std::vector<ScenarioInfo>& catalog_entries() {
  static const std::vector<ScenarioInfo> entries{
      {"gk", "--q prime power, --h divisor of q^2 - q + 1", "q^3 + 1", "b, c, d, e, f"},
      {"hermitian", "--q prime power, --s divisor of q + 1", "q + 1", "c"},
      {"skabelund-suzuki", "--q0 power of 2 (>= 2), --h divisor of q - 2*q0 + 1, q = 2*q0^2",
       "q^2 + 1", "c"},
      {"skabelund-ree",
       "--q0 power of 3, --h divisor of q - 3*q0 + 1, q = 3*q0^2, --generators <file>",
       "q^3 + 1", "none"},
      {"fermat-quartic", "--p prime other than 2 and 3", "4", "c"},
  };
  return entries;
}

ScenarioCtx make_scenario(const ScenarioRequest& req) {
  auto need = [&](const std::optional<uint32_t>& val, const char* flag) -> uint32_t {
    if (!val) fail(ErrKind::InvalidInput, req.name + " needs " + flag);
    return *val;
  };
  if (req.name == "gk") return make_gk(need(req.q, "--q"), req.h.value_or(1), req.opts, req.control);
  if (req.name == "hermitian")
    return make_hermitian(need(req.q, "--q"), req.s.value_or(1), req.opts, req.control, req.outer);
  if (req.name == "skabelund-suzuki")
    return make_suzuki(need(req.q0, "--q0"), req.h.value_or(1), req.opts, req.control);
  if (req.name == "skabelund-ree") {
    std::optional<ReeGeneratorConfig> cfg;
    if (req.generators_path) cfg = load_ree_generators(*req.generators_path);
    return make_ree(need(req.q0, "--q0"), req.h.value_or(1), cfg, req.opts, req.control);
  }
  if (req.name == "fermat-quartic") return make_fermat(need(req.p, "--p"), req.opts, req.control);
  fail(ErrKind::InvalidInput, "unknown scenario '" + req.name + "'; see the listing");
}

ScenarioRequest load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrKind::InvalidInput, "cannot read scenario file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(ErrKind::InvalidInput, "scenario file is not valid JSON: " + path);
  if (!j.contains("scenario") || !j["scenario"].is_string())
    fail(ErrKind::InvalidInput, "scenario file needs a string field 'scenario'");
  ScenarioRequest req;
  req.name = j["scenario"].get<std::string>();
  auto opt_u32 = [&](const char* key) -> std::optional<uint32_t> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_number_unsigned())
      fail(ErrKind::InvalidInput, std::string("scenario field '") + key +
                                      "' must be a nonnegative integer");
    return j[key].get<uint32_t>();
  };
  req.q = opt_u32("q");
  req.q0 = opt_u32("q0");
  req.p = opt_u32("p");
  req.s = opt_u32("s");
  req.h = opt_u32("h");
  if (j.contains("outer")) {
    if (!j["outer"].is_boolean())
      fail(ErrKind::InvalidInput, "scenario field 'outer' must be a boolean");
    req.outer = j["outer"].get<bool>();
  }
  if (j.contains("control")) {
    if (!j["control"].is_string())
      fail(ErrKind::InvalidInput, "scenario field 'control' must be a string");
    req.control = j["control"].get<std::string>();
  }
  if (j.contains("generators")) {
    if (!j["generators"].is_string())
      fail(ErrKind::InvalidInput, "scenario field 'generators' must be a string path");
    req.generators_path = j["generators"].get<std::string>();
  }
  if (auto sd = opt_u32("sample_degree")) req.opts.sample_degree = *sd;
  if (auto cb = opt_u32("cap")) req.opts.cap_bits = *cb;
  return req;
}

}  // namespace twogal

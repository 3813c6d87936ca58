#include <doctest.h>

#include "twogal/expr.hpp"

using namespace twogal;

namespace {

bool poly_eq(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars() || a.terms().size() != b.terms().size()) return false;
  for (size_t i = 0; i < a.terms().size(); ++i)
    if (a.terms()[i].e != b.terms()[i].e || a.terms()[i].c != b.terms()[i].c) return false;
  return true;
}

}  // namespace

TEST_CASE("parse and eval univariate over a prime field") {
  auto F = FieldCtx::build_ambient(7, {1});
  ExprEnv env{F.get(), {"x"}, {}};
  Poly p = parse_poly(env, "x^2 + 3*x + 1");
  for (uint32_t v = 0; v < 7; ++v) {
    FieldElem x{v};
    uint32_t want = (v * v + 3 * v + 1) % 7;
    CHECK(p.eval(*F, std::span<const FieldElem>(&x, 1)).v == want);
  }
  CHECK(p.total_degree() == 2);
  CHECK(p.used_vars() == std::vector<uint32_t>{0});
}

TEST_CASE("named constants and unary minus") {
  auto F = FieldCtx::build_ambient(2, {2});
  ExprEnv env{F.get(), {"x", "y"}, {{"g", F->gen()}}};
  Poly p = parse_poly(env, "g*x - y^2 + g^2");
  FieldElem g = F->gen();
  std::array<FieldElem, 2> pt{F->one(), g};
  FieldElem want = F->add(F->add(F->mul(g, pt[0]), F->mul(pt[1], pt[1])), F->mul(g, g));
  CHECK(p.eval(*F, pt) == want);

  Poly m = parse_poly(env, "-x*y + 1");
  Poly m2 =
      Poly::add(*F, Poly::neg(*F, Poly::mul(*F, Poly::variable(*F, 2, 0), Poly::variable(*F, 2, 1))),
                Poly::constant(2, F->one()));
  CHECK(poly_eq(m, m2));
}

TEST_CASE("curve equation eval matches direct arithmetic exhaustively") {
  auto F = FieldCtx::build_ambient(3, {2});
  ExprEnv env{F.get(), {"x", "y"}, {}};
  Poly p = parse_poly(env, "x^3 + x - y^4");
  for (uint32_t a = 0; a < F->size(); ++a)
    for (uint32_t b = 0; b < F->size(); ++b) {
      std::array<FieldElem, 2> pt{FieldElem{a}, FieldElem{b}};
      FieldElem lhs = F->add(F->pow(pt[0], 3), pt[0]);
      FieldElem want = F->sub(lhs, F->pow(pt[1], 4));
      CHECK(p.eval(*F, pt) == want);
    }
}

TEST_CASE("algebraic identities as polynomial normal forms") {
  auto F = FieldCtx::build_ambient(7, {1});
  ExprEnv env{F.get(), {"a", "b"}, {}};
  Poly lhs = parse_poly(env, "(a + b)^2");
  Poly rhs = parse_poly(env, "a^2 + 2*a*b + b^2");
  CHECK(poly_eq(lhs, rhs));

  Poly z = parse_poly(env, "(a - b)*(a + b) - a^2 + b^2");
  CHECK(z.is_zero());

  Poly s = Poly::scale(*F, F->from_int(3), parse_poly(env, "a*b + 2"));
  CHECK(poly_eq(s, parse_poly(env, "3*a*b + 6")));
}

TEST_CASE("homogenize carries missing degree on the new last variable") {
  auto F = FieldCtx::build_ambient(2, {2});
  ExprEnv env{F.get(), {"x", "y"}, {}};
  Poly f = parse_poly(env, "x^2 + x - y^3");
  Poly h = Poly::homogenize(*F, f);
  CHECK(h.nvars() == 3);
  CHECK(h.total_degree() == 3);
  for (const auto& t : h.terms()) {
    uint32_t s = 0;
    for (auto e : t.e) s += e;
    CHECK(s == 3);
  }
  for (uint32_t a = 0; a < F->size(); ++a)
    for (uint32_t b = 0; b < F->size(); ++b) {
      std::array<FieldElem, 2> aff{FieldElem{a}, FieldElem{b}};
      std::array<FieldElem, 3> prj{FieldElem{a}, FieldElem{b}, F->one()};
      CHECK(f.eval(*F, aff) == h.eval(*F, prj));
    }
}

TEST_CASE("root finding picks up both quadratic roots in canonical order") {
  auto F7 = FieldCtx::build_ambient(7, {1});
  auto r7 = roots_in_field(*F7, "w", "w^2 + w + 1");
  REQUIRE(r7.size() == 2);
  CHECK(r7[0].v == 2);
  CHECK(r7[1].v == 4);

  auto F13 = FieldCtx::build_ambient(13, {1});
  auto r13 = roots_in_field(*F13, "w", "w^2 + w + 1");
  REQUIRE(r13.size() == 2);
  CHECK(r13[0].v == 3);
  CHECK(r13[1].v == 9);

  auto F4 = FieldCtx::build_ambient(2, {2});
  auto r4 = roots_in_field(*F4, "w", "w^2 + w + 1");
  REQUIRE(r4.size() == 2);
  CHECK(r4[0] == F4->gen());
}

TEST_CASE("parser rejects malformed input") {
  auto F = FieldCtx::build_ambient(7, {1});
  ExprEnv env{F.get(), {"x"}, {}};
  auto bad = [&](const std::string& s) {
    try {
      parse_poly(env, s);
      return false;
    } catch (const Error& e) {
      return e.kind() == ErrKind::InvalidInput;
    }
  };
  CHECK(bad("x +"));
  CHECK(bad("x ^"));
  CHECK(bad("x ^ y"));
  CHECK(bad("q + 1"));
  CHECK(bad("(x + 1"));
  CHECK(bad("x + 1)"));
  CHECK(bad(""));
  CHECK(bad("x * * x"));
}

#include "twogal/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace twogal {

namespace {
bool exp_less(const std::vector<uint16_t>& a, const std::vector<uint16_t>& b) {
  return a < b;
}
}  // namespace

Poly Poly::constant(uint32_t nvars, FieldElem c) {
  Poly p(nvars);
  if (c.v != 0) p.terms_.push_back({std::vector<uint16_t>(nvars, 0), c});
  return p;
}

Poly Poly::variable(const FieldCtx& F, uint32_t nvars, uint32_t i) {
  Poly p(nvars);
  std::vector<uint16_t> e(nvars, 0);
  e[i] = 1;
  p.terms_.push_back({std::move(e), F.one()});
  return p;
}

void Poly::push_term(const FieldCtx& F, Term t) {
  if (t.c.v == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                             [](const Term& x, const Term& y) { return exp_less(x.e, y.e); });
  if (it != terms_.end() && it->e == t.e) {
    it->c = F.add(it->c, t.c);
    if (it->c.v == 0) terms_.erase(it);
  } else {
    terms_.insert(it, std::move(t));
  }
}

uint32_t Poly::total_degree() const {
  uint32_t d = 0;
  for (const auto& t : terms_) {
    uint32_t s = 0;
    for (auto e : t.e) s += e;
    d = std::max(d, s);
  }
  return d;
}

Poly Poly::add(const FieldCtx& F, const Poly& a, const Poly& b) {
  if (a.nv_ != b.nv_) fail(ErrKind::Internal, "polynomial arity mismatch");
  Poly r = a;
  for (const auto& t : b.terms_) r.push_term(F, t);
  return r;
}

Poly Poly::neg(const FieldCtx& F, const Poly& a) {
  Poly r = a;
  for (auto& t : r.terms_) t.c = F.neg(t.c);
  return r;
}

Poly Poly::sub(const FieldCtx& F, const Poly& a, const Poly& b) {
  return add(F, a, neg(F, b));
}

Poly Poly::mul(const FieldCtx& F, const Poly& a, const Poly& b) {
  if (a.nv_ != b.nv_) fail(ErrKind::Internal, "polynomial arity mismatch");
  Poly r(a.nv_);
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      Term u;
      u.e.resize(a.nv_);
      for (uint32_t i = 0; i < a.nv_; ++i) {
        uint32_t e = s.e[i] + t.e[i];
        if (e > UINT16_MAX) fail(ErrKind::CapExceeded, "polynomial exponent overflow");
        u.e[i] = static_cast<uint16_t>(e);
      }
      u.c = F.mul(s.c, t.c);
      r.push_term(F, u);
    }
  }
  return r;
}

Poly Poly::pow(const FieldCtx& F, const Poly& a, uint32_t e) {
  Poly r = constant(a.nv_, F.one());
  Poly x = a;
  while (e) {
    if (e & 1) r = mul(F, r, x);
    x = mul(F, x, x);
    e >>= 1;
  }
  return r;
}

Poly Poly::scale(const FieldCtx& F, FieldElem s, const Poly& a) {
  Poly r(a.nv_);
  for (const auto& t : a.terms_) r.push_term(F, {t.e, F.mul(s, t.c)});
  return r;
}

FieldElem Poly::eval(const FieldCtx& F, std::span<const FieldElem> x) const {
  if (x.size() < nv_) fail(ErrKind::Internal, "evaluation point arity mismatch");
  FieldElem acc{0};
  for (const auto& t : terms_) {
    FieldElem m = t.c;
    for (uint32_t i = 0; i < nv_; ++i)
      if (t.e[i]) m = F.mul(m, F.pow(x[i], t.e[i]));
    acc = F.add(acc, m);
  }
  return acc;
}

std::vector<uint32_t> Poly::used_vars() const {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < nv_; ++i)
    for (const auto& t : terms_)
      if (t.e[i]) {
        out.push_back(i);
        break;
      }
  return out;
}

Poly Poly::homogenize(const FieldCtx& F, const Poly& f) {
  uint32_t d = f.total_degree();
  Poly r(f.nv_ + 1);
  for (const auto& t : f.terms_) {
    Term u;
    u.e = t.e;
    uint32_t s = 0;
    for (auto e : t.e) s += e;
    u.e.push_back(static_cast<uint16_t>(d - s));
    u.c = t.c;
    r.push_term(F, u);
  }
  return r;
}

std::string Poly::to_string(const FieldCtx& F, const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    bool printed = false;
    uint32_t degs = 0;
    for (auto e : it->e) degs += e;
    if (it->c != F.one() || degs == 0) {
      std::string cs = F.to_string(it->c);
      if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
      os << cs;
      printed = true;
    }
    for (uint32_t i = 0; i < nv_; ++i) {
      if (!it->e[i]) continue;
      if (printed) os << "*";
      os << names[i];
      if (it->e[i] > 1) os << "^" << it->e[i];
      printed = true;
    }
  }
  return os.str();
}

namespace {

struct Parser {
  const ExprEnv& env;
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void die(const std::string& what) {
    fail(ErrKind::InvalidInput,
         "parse error in \"" + s + "\" at offset " + std::to_string(i) + ": " + what);
  }

  Poly expr() {
    skip();
    bool neg0 = false;
    while (eat('-')) neg0 = !neg0;
    Poly r = term();
    if (neg0) r = Poly::neg(*env.F, r);
    for (;;) {
      skip();
      if (eat('+')) {
        r = Poly::add(*env.F, r, term());
      } else if (eat('-')) {
        r = Poly::sub(*env.F, r, term());
      } else {
        return r;
      }
    }
  }

  Poly term() {
    Poly r = factor();
    for (;;) {
      skip();
      if (eat('*'))
        r = Poly::mul(*env.F, r, factor());
      else
        return r;
    }
  }

  Poly factor() {
    Poly base = atom();
    skip();
    if (eat('^')) {
      skip();
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (start == i) die("exponent expected");
      unsigned long e = std::stoul(s.substr(start, i - start));
      if (e > 100000) die("exponent too large");
      return Poly::pow(*env.F, base, static_cast<uint32_t>(e));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (eat('(')) {
      Poly r = expr();
      if (!eat(')')) die("missing )");
      return r;
    }
    if (eat('-')) return Poly::neg(*env.F, factor());
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      unsigned long long k = std::stoull(s.substr(start, i - start));
      return Poly::constant(static_cast<uint32_t>(env.vars.size()), env.F->from_int(k));
    }
    if (i < s.size() &&
        (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
      size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string id = s.substr(start, i - start);
      for (uint32_t v = 0; v < env.vars.size(); ++v)
        if (env.vars[v] == id)
          return Poly::variable(*env.F, static_cast<uint32_t>(env.vars.size()), v);
      auto it = env.consts.find(id);
      if (it != env.consts.end())
        return Poly::constant(static_cast<uint32_t>(env.vars.size()), it->second);
      die("unknown identifier \"" + id + "\"");
    }
    die("token expected");
  }
};

}  // namespace

Poly parse_poly(const ExprEnv& env, const std::string& src) {
  Parser p{env, src};
  Poly r = p.expr();
  p.skip();
  if (p.i != src.size()) p.die("trailing input");
  return r;
}

std::vector<FieldElem> roots_in_field(const FieldCtx& F, const std::string& name,
                                      const std::string& poly_src) {
  ExprEnv env{&F, {name}, {}};
  Poly p = parse_poly(env, poly_src);
  std::vector<FieldElem> out;
  for (uint32_t v = 0; v < F.size(); ++v) {
    FieldElem x{v};
    if (p.eval(F, std::span<const FieldElem>(&x, 1)).v == 0) out.push_back(x);
  }
  return out;
}

}  // namespace twogal

#include "twogal/divisor.hpp"

#include <algorithm>

#include "twogal/errors.hpp"

namespace twogal {

Divisor Divisor::of(const Place& p, int64_t n) {
  Divisor d;
  d.add(p, n);
  return d;
}

Divisor Divisor::sum(const std::vector<Place>& ps) {
  Divisor d;
  for (const Place& p : ps) d.add(p, 1);
  return d;
}

void Divisor::add(const Place& p, int64_t n) {
  if (n == 0) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, n);
    return;
  }
  it->second += n;
  if (it->second == 0) terms_.erase(it);
}

Divisor& Divisor::operator+=(const Divisor& o) {
  for (const auto& [p, n] : o.terms_) add(p, n);
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
  for (const auto& [p, n] : o.terms_) add(p, -n);
  return *this;
}

Divisor Divisor::scaled(int64_t n) const {
  Divisor d;
  if (n == 0) return d;
  for (const auto& [p, c] : terms_) d.terms_.emplace(p, c * n);
  return d;
}

int64_t Divisor::degree() const {
  int64_t s = 0;
  for (const auto& [p, n] : terms_) s += n;
  return s;
}

int64_t Divisor::coeff(const Place& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0 : it->second;
}

bool Divisor::effective() const {
  for (const auto& [p, n] : terms_)
    if (n < 0) return false;
  return true;
}

std::string Divisor::to_string(const FieldCtx& F, size_t max_terms) const {
  if (terms_.empty()) return "0";
  std::string out;
  size_t k = 0;
  for (const auto& [p, n] : terms_) {
    if (k == max_terms) {
      out += " + ...[" + std::to_string(terms_.size() - k) + " more]";
      break;
    }
    if (k) out += " + ";
    if (n != 1) out += std::to_string(n) + "*";
    out += p.to_string(F);
    ++k;
  }
  return out;
}

Divisor orbit_divisor(const FiniteAutoGroup& G, const Place& p) {
  const TestSet& T = G.scene();
  uint32_t i = T.index_of(p);
  Divisor d;
  for (const Perm& g : G.elements()) d.add(T.points()[g[i]], 1);
  return d;
}

QuotientCtx::QuotientCtx(const FiniteAutoGroup& H) : H_(&H) {
  const size_t n = H.scene().size();
  rep_.assign(n, UINT32_MAX);
  osize_.assign(n, 0);
  for (uint32_t i = 0; i < n; ++i) {
    if (rep_[i] != UINT32_MAX) continue;
    std::vector<uint32_t> orb = H.orbit(i);
    std::sort(orb.begin(), orb.end());
    for (uint32_t j : orb) {
      rep_[j] = orb.front();
      osize_[j] = static_cast<uint32_t>(orb.size());
    }
  }
  down_.assign(n, UINT32_MAX);
  for (uint32_t i = 0; i < n; ++i)
    if (rep_[i] == i) {
      down_[i] = static_cast<uint32_t>(down_pts_.size());
      down_pts_.push_back(H.scene().points()[i]);
      members_.emplace_back();
    }
  for (uint32_t i = 0; i < n; ++i) members_[down_[rep_[i]]].push_back(i);
}

uint32_t QuotientCtx::stab_order(uint32_t up) const {
  return static_cast<uint32_t>(H_->order()) / osize_[up];
}

Perm QuotientCtx::induce(const Perm& g) const {
  const size_t n = rep_.size();
  if (g.size() != n) fail(ErrKind::Internal, "permutation acts on the wrong scene");
  Perm out(down_pts_.size(), UINT32_MAX);
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t from = down_[rep_[i]];
    uint32_t to = down_[rep_[g[i]]];
    if (out[from] == UINT32_MAX)
      out[from] = to;
    else if (out[from] != to)
      fail(ErrKind::InvalidInput, "map does not descend to the orbit space");
  }
  std::vector<uint8_t> seen(down_pts_.size(), 0);
  for (uint32_t v : out) {
    if (seen[v]) fail(ErrKind::InvalidInput, "map collapses distinct orbits");
    seen[v] = 1;
  }
  return out;
}

std::vector<Perm> QuotientCtx::induce_group(const FiniteAutoGroup& G) const {
  std::vector<Perm> out;
  out.reserve(G.order());
  for (const Perm& g : G.elements()) out.push_back(induce(g));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  uint64_t overlap = FiniteAutoGroup::intersect(G, *H_).order();
  uint64_t expected = G.order() / overlap;
  if (out.size() < expected)
    fail(ErrKind::UnfaithfulTestSet,
         "distinct cosets act identically on the orbit space; enlarge the test degree");
  if (out.size() > expected) fail(ErrKind::Internal, "orbit space action exceeds the coset count");
  return out;
}

Divisor QuotientCtx::pushforward(const Divisor& D) const {
  const TestSet& T = H_->scene();
  Divisor out;
  for (const auto& [p, n] : D.terms()) {
    uint32_t i = T.index_of(p);
    out.add(T.points()[rep_[i]], n);
  }
  return out;
}

Divisor QuotientCtx::pullback(const Divisor& Dbar) const {
  const TestSet& T = H_->scene();
  Divisor out;
  for (const auto& [p, n] : Dbar.terms()) {
    uint32_t i = T.index_of(p);
    if (rep_[i] != i)
      fail(ErrKind::InvalidInput,
           "place " + p.to_string(T.model().field()) + " is not an orbit representative");
    int64_t e = stab_order(i);
    for (uint32_t j : members_[down_[i]]) out.add(T.points()[j], n * e);
  }
  return out;
}

}  // namespace twogal

#include "nscurve/modsym/space.hpp"

#include <algorithm>
#include <stdexcept>

#include "nscurve/arith.hpp"
#include "nscurve/error.hpp"

namespace nscurve::modsym {

std::uint32_t genus_x0(std::uint32_t p) {
  if (p < 5) return 0;
  const int nu2 = 1 + arith::legendre(-1, p);
  const int nu3 = 1 + arith::legendre(-3, p);
  return static_cast<std::uint32_t>((static_cast<std::int64_t>(p) + 1 - 3 * nu2 - 4 * nu3) / 12);
}

namespace {

std::uint32_t check_level(std::uint32_t p, std::uint32_t limit) {
  if (p < 11) throw DomainError("modular symbols: level must be at least 11, got " + std::to_string(p));
  if (p > limit)
    throw DomainError("modular symbols: level " + std::to_string(p) + " exceeds the size limit " +
                      std::to_string(limit));
  return p;
}

}  // namespace

ManinSymbolSpace::ManinSymbolSpace(std::uint32_t p, std::uint32_t level_limit) : p1_(check_level(p, level_limit)) {
  genus_ = genus_x0(p);
  const std::uint32_t n = p1_.size();
  sigma_.resize(n);
  tau_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto [c, d] = p1_.element(i);
    sigma_[i] = p1_.index(d, -static_cast<std::int64_t>(c));
    tau_[i] = p1_.index(d, -static_cast<std::int64_t>(c) - d);
  }

  // edges: rep = smaller symbol; dead when folded by sigma or lying on an elliptic triangle
  std::vector<char> dead(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (sigma_[i] == i || tau_[i] == i || tau_[sigma_[i]] == sigma_[i]) dead[i] = 1;
  }
  auto rep = [&](std::uint32_t s) { return std::min(s, sigma_[s]); };
  auto sign = [&](std::uint32_t s) -> std::int64_t { return s == rep(s) ? 1 : -1; };
  auto face = [&](std::uint32_t s) { return std::min({s, tau_[s], tau_[tau_[s]]}); };

  // BFS over non-elliptic triangles
  std::vector<std::int64_t> parent_symbol(n, -1);  // symbol of the tree edge inside the child face
  std::vector<char> visited(n, 0), tree_edge(n, 0);
  std::vector<std::uint32_t> order;
  for (std::uint32_t start = 0; start < n; ++start) {
    const std::uint32_t f0 = face(start);
    if (tau_[f0] == f0 || visited[f0]) continue;
    visited[f0] = 1;
    order.push_back(f0);
    for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
      const std::uint32_t f = order[head];
      for (std::uint32_t s : {f, tau_[f], tau_[tau_[f]]}) {
        if (dead[s]) continue;
        const std::uint32_t t = sigma_[s];
        const std::uint32_t g = face(t);
        if (visited[g]) continue;
        visited[g] = 1;
        parent_symbol[g] = t;
        tree_edge[rep(s)] = 1;
        order.push_back(g);
      }
    }
  }

  // generators: live edges outside the tree, by rep index
  std::vector<std::int64_t> gen_of_edge(n, -1);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (dead[i] || rep(i) != i || tree_edge[i]) continue;
    gen_of_edge[i] = static_cast<std::int64_t>(generators_.size());
    generators_.push_back(i);
  }
  if (generators_.size() != 2 * static_cast<std::size_t>(genus_) + 1)
    throw std::logic_error("modular symbols: generator count does not match 2g + 1");
  if (generators_.front() != 0 || sigma_[0] != p)
    throw std::logic_error("modular symbols: edge {0, oo} is not a free generator");
  cusp_gen_ = 0;

  // tree edges from the leaves up: each face relation solves for its parent edge
  std::vector<SparseVector> edge_value(n);
  for (std::uint32_t i = 0; i < n; ++i)
    if (gen_of_edge[i] >= 0) edge_value[i] = {{static_cast<std::uint32_t>(gen_of_edge[i]), 1}};
  for (std::size_t k = order.size(); k-- > 0;) {
    const std::uint32_t f = order[k];
    if (parent_symbol[f] < 0) continue;
    const auto t = static_cast<std::uint32_t>(parent_symbol[f]);
    SparseVector rest;
    for (std::uint32_t s : {f, tau_[f], tau_[tau_[f]]}) {
      if (s == t || dead[s]) continue;
      axpy(rest, sign(s), edge_value[rep(s)]);
    }
    SparseVector value;
    axpy(value, -sign(t), rest);
    edge_value[rep(t)] = std::move(value);
  }

  coords_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (dead[i]) continue;
    if (i == rep(i)) {
      coords_[i] = edge_value[i];
    } else {
      axpy(coords_[i], -1, edge_value[rep(i)]);
    }
  }

  // every relation must hold in the generator basis
  for (std::uint32_t i = 0; i < n; ++i) {
    SparseVector two = coords_[i];
    axpy(two, 1, coords_[sigma_[i]]);
    SparseVector three = coords_[i];
    axpy(three, 1, coords_[tau_[i]]);
    axpy(three, 1, coords_[tau_[tau_[i]]]);
    if (!two.empty() || !three.empty()) throw std::logic_error("modular symbols: relation check failed");
  }
}

const SparseVector& ManinSymbolSpace::coordinates(std::uint32_t symbol) const {
  if (symbol >= coords_.size()) throw std::out_of_range("ManinSymbolSpace: symbol index");
  return coords_[symbol];
}

std::int64_t ManinSymbolSpace::boundary_coefficient(const SparseVector& v, std::uint32_t cusp_gen) {
  for (const auto& [i, c] : v)
    if (i == cusp_gen) return c;
  return 0;
}

SparseVector ManinSymbolSpace::path_from_zero(std::int64_t b, std::int64_t d) const {
  if (d == 0) throw DomainError("path_from_zero: zero denominator");
  if (d < 0) {
    b = -b;
    d = -d;
  }
  SparseVector out = coordinates(p1_.index(0, 1));
  // convergents p_k / q_k of b / d
  std::int64_t pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
  std::int64_t num = b, den = d;
  for (int k = 0; den != 0; ++k) {
    std::int64_t a = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --a;
    const std::int64_t r = num - a * den;
    const std::int64_t pk = a * pm1 + pm2, qk = a * qm1 + qm2;
    // det [p_k p_{k-1}; q_k q_{k-1}] = (-1)^(k-1)
    const bool positive = (k % 2) == 1;
    axpy(out, 1, coordinates(p1_.index(positive ? qk : -qk, qm1)));
    pm2 = pm1;
    pm1 = pk;
    qm2 = qm1;
    qm1 = qk;
    num = den;
    den = r;
  }
  return out;
}

}  // namespace nscurve::modsym

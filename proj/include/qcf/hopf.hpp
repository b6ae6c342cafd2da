#pragma once

#include "qcf/element.hpp"
#include "qcf/group.hpp"
#include "qcf/qcombinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace qcf {

using HElem = Element<std::size_t>;
using HTensor = Tensor<std::size_t>;

/// Finite-dimensional Hopf algebra on basis indices 0..N-1.
struct HopfTable {
  std::vector<std::string> labels;
  std::size_t unit = 0;
  std::vector<std::vector<HElem>> product;
  std::vector<HTensor> coproduct;
  std::vector<Scalar> counit;
  std::vector<HElem> antipode;
  /// Filtration degree driving the antipode recursion; 0 marks grouplikes.
  std::vector<unsigned> degree;

  std::size_t dimension() const { return labels.size(); }
};

inline HElem multiply(const HopfTable& H, const HElem& a, const HElem& b) {
  HElem out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b) {
      const Scalar k = cx * cy;
      for (const auto& [z, cz] : H.product[x][y]) out.add(z, k * cz);
    }
  return out;
}

inline HTensor multiply(const HopfTable& H, const HTensor& a, const HTensor& b) {
  HTensor out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b) {
      const Scalar k = cx * cy;
      for (const auto& [l, cl] : H.product[x.first][y.first])
        for (const auto& [r, cr] : H.product[x.second][y.second]) out.add({l, r}, k * cl * cr);
    }
  return out;
}

/// Extends a map given on basis elements linearly.
inline HElem apply_linear(const std::vector<HElem>& map, const HElem& x) {
  HElem out;
  for (const auto& [b, c] : x) out += c * map[b];
  return out;
}

inline HTensor comultiply(const HopfTable& H, const HElem& x) {
  HTensor out;
  for (const auto& [b, c] : x) out += c * H.coproduct[b];
  return out;
}

/// Solves sum S(c1) c2 = eps(c) 1 basis element by basis element in order of
/// increasing degree. For each c the coproduct must contain exactly one term
/// c (x) h, with h of degree 0; every other left factor must already be done.
inline void compute_antipode(HopfTable& H) {
  const std::size_t n = H.dimension();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return H.degree[a] < H.degree[b]; });
  auto inverse_of = [&](std::size_t h) -> std::size_t {
    const HElem one(H.unit);
    for (std::size_t k = 0; k < n; ++k)
      if (H.product[h][k] == one && H.product[k][h] == one) return k;
    throw std::domain_error("grouplike '" + H.labels[h] + "' is not invertible");
  };
  std::vector<std::optional<HElem>> S(n);
  for (auto c : order) {
    std::optional<std::pair<std::size_t, Scalar>> top;
    for (const auto& [t, coeff] : H.coproduct[c]) {
      if (t.first != c) continue;
      if (top) throw std::logic_error("'" + H.labels[c] + "' has several leading coproduct terms");
      top.emplace(t.second, coeff);
    }
    if (!top || H.degree[top->first] != 0)
      throw std::logic_error("'" + H.labels[c] + "' has no leading term c (x) grouplike");
    HElem rest;
    if (!H.counit[c].is_zero()) rest.add(H.unit, H.counit[c]);
    for (const auto& [t, coeff] : H.coproduct[c]) {
      if (t.first == c) continue;
      if (!S[t.first]) throw std::logic_error("antipode of '" + H.labels[t.first] + "' is needed before it is known");
      rest -= coeff * multiply(H, *S[t.first], HElem(t.second));
    }
    S[c] = top->second.inverse() * multiply(H, rest, HElem(inverse_of(top->first)));
  }
  H.antipode.clear();
  for (auto& s : S) H.antipode.push_back(std::move(*s));
}

/// Group Hopf algebra KG.
inline HopfTable group_algebra(const FiniteGroup& G) {
  HopfTable H;
  const std::size_t n = G.order();
  H.labels = G.labels;
  H.unit = G.identity;
  H.product.assign(n, std::vector<HElem>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) H.product[a][b] = HElem(G.mul(a, b));
  for (std::size_t a = 0; a < n; ++a) {
    HTensor d;
    d.add({a, a}, Scalar(1));
    H.coproduct.push_back(std::move(d));
  }
  H.counit.assign(n, Scalar(1));
  H.degree.assign(n, 0);
  compute_antipode(H);
  return H;
}

/// Basis position of h x^u in build_Hn.
inline std::size_t hn_index(std::size_t h, unsigned u, unsigned s) { return h * (s + 1) + u; }

/// The Hopf algebra generated by G and x with xh = chi(h) hx,
/// x^{s+1} = alpha (g^{s+1} - 1), g grouplike-central, Delta(x) = 1(x)x + x(x)g.
/// Basis h x^u with 0 <= u <= s.
inline HopfTable build_Hn(unsigned s, const RootOfUnity& q, const FiniteGroupData& data, const Scalar& alpha) {
  const FiniteGroup& G = data.group;
  if (s < 1) throw std::invalid_argument("s must be at least 1");
  if (auto bad = group_data_violation(data)) throw std::invalid_argument(*bad);
  if (q.order() != s + 1) throw std::invalid_argument("q must be a primitive (s+1)-th root of unity");
  if (!(data.chi[data.g] == q)) throw std::invalid_argument("chi(g) must equal q");
  if (!alpha.is_zero()) {
    for (std::size_t h = 0; h < G.order(); ++h)
      if (!(data.chi[h].pow(s + 1) == RootOfUnity(1, 0)))
        throw std::invalid_argument("alpha must be 0 unless chi^(s+1) = 1 (fails at '" + G.labels[h] + "')");
  }

  const std::size_t N = G.order(), d = N * (s + 1);
  const std::size_t gs = G.power(data.g, s + 1);
  const Scalar qs = q.to_scalar();
  std::vector<Scalar> chi;
  for (const auto& c : data.chi) chi.push_back(c.to_scalar());
  auto binom = q_binomial_triangle(s, qs);

  HopfTable H;
  for (std::size_t h = 0; h < N; ++h)
    for (unsigned u = 0; u <= s; ++u) {
      std::string x = u == 0 ? "" : u == 1 ? "x" : "x^" + std::to_string(u);
      if (u == 0)
        H.labels.push_back(G.labels[h]);
      else
        H.labels.push_back(h == G.identity ? x : G.labels[h] + " " + x);
      H.degree.push_back(u);
      H.counit.push_back(Scalar(u == 0 ? 1 : 0));
    }
  H.unit = hn_index(G.identity, 0, s);

  H.product.assign(d, std::vector<HElem>(d));
  for (std::size_t h = 0; h < N; ++h)
    for (unsigned u = 0; u <= s; ++u)
      for (std::size_t k = 0; k < N; ++k)
        for (unsigned v = 0; v <= s; ++v) {
          // h x^u k x^v = chi(k)^u hk x^{u+v}
          const Scalar c = chi[k].pow(u);
          const std::size_t hk = G.mul(h, k);
          HElem& out = H.product[hn_index(h, u, s)][hn_index(k, v, s)];
          if (u + v <= s) {
            out.add(hn_index(hk, u + v, s), c);
          } else if (!alpha.is_zero()) {
            const unsigned w = u + v - s - 1;
            out.add(hn_index(G.mul(hk, gs), w, s), alpha * c);
            out.add(hn_index(hk, w, s), -(alpha * c));
          }
        }

  // Delta(h x^u) = sum_k C(u,k)_q h x^k (x) h g^k x^{u-k}
  for (std::size_t h = 0; h < N; ++h)
    for (unsigned u = 0; u <= s; ++u) {
      HTensor t;
      for (unsigned k = 0; k <= u; ++k)
        t.add({hn_index(h, k, s), hn_index(G.mul(h, G.power(data.g, k)), u - k, s)}, binom[u][k]);
      H.coproduct.push_back(std::move(t));
    }
  compute_antipode(H);
  return H;
}

struct HopfCheck {
  std::string name;
  bool passed = true;
  std::string detail;  ///< first failing basis tuple
};

struct HopfVerification {
  std::vector<HopfCheck> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const HopfCheck& c) { return c.passed; });
  }
  const HopfCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

/// Exhaustive check of every Hopf algebra axiom over all basis tuples.
inline HopfVerification verify_hopf(const HopfTable& H) {
  const std::size_t n = H.dimension();
  HopfVerification rep;
  auto at = [&](std::initializer_list<std::size_t> idx) {
    std::string s = "(";
    for (auto i : idx) s += (s.size() > 1 ? "," : "") + H.labels[i];
    return s + ")";
  };
  auto run = [&](const std::string& name, auto&& body) {
    HopfCheck c{name, true, ""};
    if (auto bad = body()) {
      c.passed = false;
      c.detail = *bad;
    }
    rep.checks.push_back(std::move(c));
  };
  const HElem one(H.unit);
  HTensor one_one;
  one_one.add({H.unit, H.unit}, Scalar(1));

  run("associativity", [&]() -> std::optional<std::string> {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!(multiply(H, H.product[a][b], HElem(c)) == multiply(H, HElem(a), H.product[b][c]))) return at({a, b, c});
    return std::nullopt;
  });
  run("unit", [&]() -> std::optional<std::string> {
    for (std::size_t a = 0; a < n; ++a)
      if (!(H.product[H.unit][a] == HElem(a)) || !(H.product[a][H.unit] == HElem(a))) return at({a});
    return std::nullopt;
  });
  run("coassociativity", [&]() -> std::optional<std::string> {
    using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;
    for (std::size_t a = 0; a < n; ++a) {
      Element<Triple> lhs, rhs;
      for (const auto& [t, c] : H.coproduct[a]) {
        for (const auto& [u, cu] : H.coproduct[t.first]) lhs.add({u.first, u.second, t.second}, c * cu);
        for (const auto& [u, cu] : H.coproduct[t.second]) rhs.add({t.first, u.first, u.second}, c * cu);
      }
      if (!(lhs == rhs)) return at({a});
    }
    return std::nullopt;
  });
  run("counit", [&]() -> std::optional<std::string> {
    for (std::size_t a = 0; a < n; ++a) {
      HElem left, right;
      for (const auto& [t, c] : H.coproduct[a]) {
        left.add(t.second, c * H.counit[t.first]);
        right.add(t.first, c * H.counit[t.second]);
      }
      if (!(left == HElem(a)) || !(right == HElem(a))) return at({a});
    }
    return std::nullopt;
  });
  run("comultiplication-multiplicative", [&]() -> std::optional<std::string> {
    if (!(H.coproduct[H.unit] == one_one)) return at({H.unit});
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!(comultiply(H, H.product[a][b]) == multiply(H, H.coproduct[a], H.coproduct[b]))) return at({a, b});
    return std::nullopt;
  });
  run("counit-multiplicative", [&]() -> std::optional<std::string> {
    if (!(H.counit[H.unit] == Scalar(1))) return at({H.unit});
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Scalar e(0);
        for (const auto& [z, c] : H.product[a][b]) e += c * H.counit[z];
        if (!(e == H.counit[a] * H.counit[b])) return at({a, b});
      }
    return std::nullopt;
  });
  auto antipode_identity = [&](bool left) -> std::optional<std::string> {
    if (H.antipode.size() != n) return std::string("antipode missing");
    for (std::size_t a = 0; a < n; ++a) {
      HElem sum;
      for (const auto& [t, c] : H.coproduct[a])
        sum += c * (left ? multiply(H, H.antipode[t.first], HElem(t.second))
                         : multiply(H, HElem(t.first), H.antipode[t.second]));
      HElem expect;
      expect.add(H.unit, H.counit[a]);
      if (!(sum == expect)) return at({a});
    }
    return std::nullopt;
  };
  run("antipode-left", [&] { return antipode_identity(true); });
  run("antipode-right", [&] { return antipode_identity(false); });
  return rep;
}

/// S composed with itself k times, as a map on basis elements.
inline std::vector<HElem> antipode_power(const HopfTable& H, unsigned k) {
  std::vector<HElem> out;
  for (std::size_t a = 0; a < H.dimension(); ++a) {
    HElem x(a);
    for (unsigned i = 0; i < k; ++i) x = apply_linear(H.antipode, x);
    out.push_back(std::move(x));
  }
  return out;
}

/// Same algebra on the basis reordered by perm (old index i becomes perm[i]);
/// the antipode is recomputed from scratch.
inline HopfTable permute(const HopfTable& H, const std::vector<std::size_t>& perm) {
  const std::size_t n = H.dimension();
  auto move = [&](const HElem& x) {
    HElem out;
    for (const auto& [b, c] : x) out.add(perm[b], c);
    return out;
  };
  HopfTable P;
  P.labels.resize(n);
  P.counit.resize(n);
  P.degree.resize(n);
  P.coproduct.resize(n);
  P.product.assign(n, std::vector<HElem>(n));
  P.unit = perm[H.unit];
  for (std::size_t a = 0; a < n; ++a) {
    P.labels[perm[a]] = H.labels[a];
    P.counit[perm[a]] = H.counit[a];
    P.degree[perm[a]] = H.degree[a];
    for (const auto& [t, c] : H.coproduct[a]) P.coproduct[perm[a]].add({perm[t.first], perm[t.second]}, c);
    for (std::size_t b = 0; b < n; ++b) P.product[perm[a]][perm[b]] = move(H.product[a][b]);
  }
  compute_antipode(P);
  return P;
}

}  // namespace qcf

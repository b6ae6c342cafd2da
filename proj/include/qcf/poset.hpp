#pragma once

#include "qcf/coalgebra_table.hpp"
#include "qcf/element.hpp"
#include "qcf/linalg.hpp"
#include "qcf/quiver.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qcf {

/// Finite partial order stored as a full comparison matrix.
class Poset {
 public:
  Poset() = default;

  /// Throws std::invalid_argument unless `leq` is reflexive, antisymmetric and transitive.
  Poset(std::vector<std::string> elements, std::vector<std::vector<bool>> leq)
      : elements_(std::move(elements)), leq_(std::move(leq)) {
    const std::size_t n = elements_.size();
    if (leq_.size() != n) throw std::invalid_argument("order matrix has the wrong size");
    for (const auto& row : leq_)
      if (row.size() != n) throw std::invalid_argument("order matrix has the wrong size");
    for (std::size_t i = 0; i < n; ++i) {
      if (!index_.emplace(elements_[i], i).second) throw std::invalid_argument("duplicate element '" + elements_[i] + "'");
      if (!leq_[i][i]) throw std::invalid_argument("order is not reflexive at '" + elements_[i] + "'");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && leq_[i][j] && leq_[j][i])
          throw std::invalid_argument("order is not antisymmetric: '" + elements_[i] + "' and '" + elements_[j] + "'");
        if (!leq_[i][j]) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (leq_[j][k] && !leq_[i][k]) throw std::invalid_argument("order is not transitive");
      }
  }

  /// Reflexive-transitive closure of the given strict relations.
  static Poset from_covers(std::vector<std::string> elements, const std::vector<std::pair<std::size_t, std::size_t>>& less) {
    const std::size_t n = elements.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (auto [a, b] : less) {
      if (a >= n || b >= n) throw std::invalid_argument("relation names an unknown element");
      leq[a][b] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (leq[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (leq[k][j]) leq[i][j] = true;
    return Poset(std::move(elements), std::move(leq));
  }

  static Poset chain(std::size_t n) {
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> less;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(std::to_string(i));
      if (i) less.emplace_back(i - 1, i);
    }
    return from_covers(std::move(names), less);
  }

  static Poset antichain(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return from_covers(std::move(names), {});
  }

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& name(std::size_t i) const { return elements_.at(i); }
  std::size_t index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown element '" + id + "'");
    return it->second;
  }
  bool has(const std::string& id) const { return index_.count(id) > 0; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq_[a][b]; }
  bool covers(std::size_t a, std::size_t b) const {
    if (!less(a, b)) return false;
    for (std::size_t z = 0; z < size(); ++z)
      if (less(a, z) && less(z, b)) return false;
    return true;
  }
  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b)
        if (covers(a, b)) out.emplace_back(a, b);
    return out;
  }

  friend bool operator==(const Poset& a, const Poset& b) { return a.elements_ == b.elements_ && a.leq_ == b.leq_; }

 private:
  std::vector<std::string> elements_;
  std::vector<std::vector<bool>> leq_;
  std::map<std::string, std::size_t> index_;
};

struct Segment {
  std::size_t lo = 0;
  std::size_t hi = 0;
  friend auto operator<=>(const Segment&, const Segment&) = default;
};

inline std::string segment_label(const Poset& p, const Segment& e) {
  return "[" + p.name(e.lo) + "," + p.name(e.hi) + "]";
}

/// Subcoalgebra of the incidence coalgebra spanned by a set of segments.
class IncidenceSubcoalgebra {
 public:
  IncidenceSubcoalgebra() = default;
  IncidenceSubcoalgebra(Poset poset, std::vector<Segment> basis) : poset_(std::move(poset)), basis_(std::move(basis)) {
    for (const auto& e : basis_) {
      if (e.lo >= poset_.size() || e.hi >= poset_.size() || !poset_.leq(e.lo, e.hi))
        throw std::invalid_argument("segment endpoints are not comparable");
    }
    std::sort(basis_.begin(), basis_.end());
    basis_.erase(std::unique(basis_.begin(), basis_.end()), basis_.end());
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
  }

  const Poset& poset() const { return poset_; }
  const std::vector<Segment>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  bool contains(std::size_t lo, std::size_t hi) const { return index_.count({lo, hi}) > 0; }
  bool contains(const Segment& e) const { return index_.count(e) > 0; }
  std::size_t index_of(const Segment& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw std::out_of_range("segment " + label(e) + " is not in the basis");
    return it->second;
  }
  std::string label(const Segment& e) const {
    if (e.lo >= poset_.size() || e.hi >= poset_.size()) return "[?]";
    return segment_label(poset_, e);
  }

 private:
  Poset poset_;
  std::vector<Segment> basis_;
  std::map<Segment, std::size_t> index_;
};

inline IncidenceSubcoalgebra full_incidence_coalgebra(const Poset& p) {
  std::vector<Segment> basis;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (p.leq(a, b)) basis.push_back({a, b});
  return IncidenceSubcoalgebra(p, std::move(basis));
}

struct IntervalViolation {
  Segment required_by;
  Segment missing;
};

/// Every subinterval segment missing from the basis, reported once.
inline std::vector<IntervalViolation> validate(const IncidenceSubcoalgebra& c) {
  std::vector<IntervalViolation> out;
  std::set<Segment> reported;
  const auto& p = c.poset();
  for (const auto& e : c.basis()) {
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (!p.leq(e.lo, a) || !p.leq(a, e.hi)) continue;
      for (std::size_t b = 0; b < p.size(); ++b) {
        if (!p.leq(a, b) || !p.leq(b, e.hi)) continue;
        Segment s{a, b};
        if (c.contains(s) || reported.count(s)) continue;
        reported.insert(s);
        out.push_back({e, s});
      }
    }
  }
  return out;
}

/// Length of the longest chain from lo to hi.
inline std::size_t segment_length(const Poset& p, const Segment& e) {
  std::vector<long> best(p.size(), -1);
  best[e.lo] = 0;
  // Elements of the interval in a linear extension: fewer predecessors first.
  std::vector<std::size_t> order;
  for (std::size_t z = 0; z < p.size(); ++z)
    if (p.leq(e.lo, z) && p.leq(z, e.hi)) order.push_back(z);
  auto below = [&](std::size_t z) {
    std::size_t n = 0;
    for (std::size_t w = 0; w < p.size(); ++w) n += p.less(w, z) ? 1 : 0;
    return n;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below(a) < below(b); });
  for (std::size_t z : order)
    for (std::size_t w : order)
      if (best[w] >= 0 && p.covers(w, z)) best[z] = std::max(best[z], best[w] + 1);
  return static_cast<std::size_t>(best[e.hi]);
}

inline Tensor<Segment> comul(const IncidenceSubcoalgebra& c, const Segment& e) {
  c.index_of(e);
  Tensor<Segment> out;
  const auto& p = c.poset();
  for (std::size_t z = 0; z < p.size(); ++z)
    if (p.leq(e.lo, z) && p.leq(z, e.hi)) out.add({{e.lo, z}, {z, e.hi}}, Scalar(1));
  return out;
}

inline Scalar counit(const IncidenceSubcoalgebra& c, const Segment& e) {
  c.index_of(e);
  return Scalar(e.lo == e.hi ? 1 : 0);
}

/// Requires an interval-closed basis.
inline CoalgebraTable to_table(const IncidenceSubcoalgebra& c) {
  CoalgebraTable t;
  const auto& p = c.poset();
  for (const auto& e : c.basis()) {
    t.labels.push_back(c.label(e));
    std::vector<ComulTerm> terms;
    for (std::size_t z = 0; z < p.size(); ++z)
      if (p.leq(e.lo, z) && p.leq(z, e.hi)) terms.push_back({c.index_of({e.lo, z}), c.index_of({z, e.hi}), 1});
    t.comul.push_back(std::move(terms));
    t.counit.push_back(e.lo == e.hi ? 1 : 0);
  }
  return t;
}

/// Vertices are the elements; one arrow x -> y per covering pair x < y.
inline Quiver hasse_quiver(const Poset& p) {
  Quiver q;
  for (const auto& e : p.elements()) q.add_vertex(e);
  for (auto [a, b] : p.cover_pairs()) q.add_arrow(p.name(a) + "<" + p.name(b), a, b);
  return q;
}

/// All paths from x to y in a quiver without oriented cycles.
inline std::vector<Path> paths_between(const Quiver& q, std::size_t x, std::size_t y) {
  std::vector<Path> out;
  Path cur{x, {}};
  auto dfs = [&](auto&& self, std::size_t at) -> void {
    if (at == y) out.push_back(cur);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      if (q.arrow(a).source != at) continue;
      cur.arrows.push_back(a);
      self(self, q.arrow(a).target);
      cur.arrows.pop_back();
    }
  };
  dfs(dfs, x);
  return out;
}

struct EmbeddingReport {
  Quiver quiver;
  std::vector<Element<Path>> images;  ///< parallel to the coalgebra basis
  bool morphism = true;
  bool counit_compatible = true;
  std::optional<Segment> first_failure;
  std::size_t image_rank = 0;
  bool injective = false;
  /// True when every image is a single path.
  bool path_subcoalgebra_image = true;
};

/// The map e_{x,y} -> sum of all Hasse-quiver paths from x to y, checked to be
/// an injective coalgebra morphism on the given subcoalgebra.
inline EmbeddingReport embed(const IncidenceSubcoalgebra& c) {
  EmbeddingReport rep;
  const auto& p = c.poset();
  rep.quiver = hasse_quiver(p);
  const auto& q = rep.quiver;
  std::map<Segment, Element<Path>> phi;
  auto image = [&](std::size_t x, std::size_t y) -> const Element<Path>& {
    auto it = phi.find({x, y});
    if (it != phi.end()) return it->second;
    Element<Path> e;
    for (auto& path : paths_between(q, x, y)) e.add(path, Scalar(1));
    return phi.emplace(Segment{x, y}, std::move(e)).first->second;
  };
  std::map<Path, std::size_t> column;
  for (const auto& seg : c.basis()) {
    const auto& img = image(seg.lo, seg.hi);
    rep.images.push_back(img);
    if (img.size() != 1) rep.path_subcoalgebra_image = false;
    for (const auto& [path, coeff] : img) column.emplace(path, column.size());

    Tensor<Path> lhs;
    Scalar eps(0);
    for (const auto& [path, coeff] : img) {
      for (std::size_t k = 0; k <= path.length(); ++k)
        lhs.add({subpath(q, path, 0, k), subpath(q, path, k, path.length())}, coeff);
      if (path.is_vertex()) eps += coeff;
    }
    Tensor<Path> rhs;
    for (std::size_t z = 0; z < p.size(); ++z) {
      if (!p.leq(seg.lo, z) || !p.leq(z, seg.hi)) continue;
      const auto& left = image(seg.lo, z);
      const auto& right = image(z, seg.hi);
      for (const auto& [pl, cl] : left)
        for (const auto& [pr, cr] : right) rhs.add({pl, pr}, cl * cr);
    }
    if (!(lhs == rhs)) {
      rep.morphism = false;
      if (!rep.first_failure) rep.first_failure = seg;
    }
    if (!(eps == Scalar(seg.lo == seg.hi ? 1 : 0))) {
      rep.counit_compatible = false;
      if (!rep.first_failure) rep.first_failure = seg;
    }
  }
  linalg::EchelonBasis<Rational> eb(column.size());
  for (const auto& img : rep.images) {
    linalg::SparseRow<Rational> row;
    for (const auto& [path, coeff] : img) row.emplace_back(column.at(path), coeff.rational_value());
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    eb.insert(std::move(row));
  }
  rep.image_rank = eb.rank();
  rep.injective = rep.image_rank == c.dimension();
  return rep;
}

/// Componentwise order on X x Y; element (x,y) has index x*|Y| + y.
inline Poset product_poset(const Poset& x, const Poset& y) {
  std::vector<std::string> names;
  const std::size_t n = x.size() * y.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b) names.push_back("(" + x.name(a) + "," + y.name(b) + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      leq[i][j] = x.leq(i / y.size(), j / y.size()) && y.leq(i % y.size(), j % y.size());
  return Poset(std::move(names), std::move(leq));
}

struct TensorIsoReport {
  std::size_t product_size = 0;
  std::size_t product_segments = 0;
  std::size_t tensor_dimension = 0;
  bool bijective = false;
  bool comul_compatible = true;
  bool counit_compatible = true;
  std::optional<Segment> first_failure;
  bool holds() const { return bijective && comul_compatible && counit_compatible; }
};

/// Checks that e_{(x,y),(x',y')} -> e_{x,x'} (x) e_{y,y'} is a coalgebra
/// isomorphism K(X x Y) -> KX (x) KY on the full incidence coalgebras.
inline TensorIsoReport tensor_iso_check(const Poset& x, const Poset& y) {
  TensorIsoReport rep;
  Poset xy = product_poset(x, y);
  auto cx = full_incidence_coalgebra(x), cy = full_incidence_coalgebra(y), cxy = full_incidence_coalgebra(xy);
  rep.product_size = xy.size();
  rep.product_segments = cxy.dimension();
  rep.tensor_dimension = cx.dimension() * cy.dimension();
  const std::size_t ny = y.size();
  using Pair = std::pair<Segment, Segment>;
  auto psi = [&](const Segment& e) -> Pair {
    return {{e.lo / ny, e.hi / ny}, {e.lo % ny, e.hi % ny}};
  };
  std::set<Pair> images;
  for (const auto& e : cxy.basis()) {
    Pair img = psi(e);
    if (!cx.contains(img.first) || !cy.contains(img.second)) rep.comul_compatible = false;
    images.insert(img);
  }
  rep.bijective = images.size() == cxy.dimension() && images.size() == rep.tensor_dimension;
  if (!rep.comul_compatible) return rep;

  using Quad = std::tuple<Segment, Segment, Segment, Segment>;
  for (const auto& e : cxy.basis()) {
    std::map<Quad, long long> lhs, rhs;
    for (const auto& [lr, coeff] : comul(cxy, e)) {
      auto a = psi(lr.first), b = psi(lr.second);
      lhs[{a.first, a.second, b.first, b.second}] += 1;
    }
    auto [ex, ey] = psi(e);
    for (const auto& [tx, cxcoef] : comul(cx, ex))
      for (const auto& [ty, cycoef] : comul(cy, ey)) rhs[{tx.first, ty.first, tx.second, ty.second}] += 1;
    if (lhs != rhs) {
      rep.comul_compatible = false;
      if (!rep.first_failure) rep.first_failure = e;
    }
    bool eps_l = e.lo == e.hi;
    bool eps_r = (ex.lo == ex.hi) && (ey.lo == ey.hi);
    if (eps_l != eps_r) {
      rep.counit_compatible = false;
      if (!rep.first_failure) rep.first_failure = e;
    }
  }
  return rep;
}

/// Finite window of the stacked-diamond order a_n < b_{n,i} < a_{n+1}
/// (i = 1..width, n = 0..levels) with the subcoalgebra spanned by the
/// diagonal, all covering segments, [a_n, a_{n+1}] and [b_{n,i}, b_{n+1,i}].
inline IncidenceSubcoalgebra stacked_diamonds(unsigned width, unsigned levels) {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> less;
  auto a = [&](unsigned n) { return static_cast<std::size_t>(n * (width + 1)); };
  auto b = [&](unsigned n, unsigned i) { return static_cast<std::size_t>(n * (width + 1) + i); };
  for (unsigned n = 0; n <= levels; ++n) {
    names.push_back("a" + std::to_string(n));
    if (n == levels) break;
    for (unsigned i = 1; i <= width; ++i) names.push_back("b" + std::to_string(n) + "_" + std::to_string(i));
  }
  for (unsigned n = 0; n < levels; ++n)
    for (unsigned i = 1; i <= width; ++i) {
      less.emplace_back(a(n), b(n, i));
      less.emplace_back(b(n, i), a(n + 1));
    }
  Poset p = Poset::from_covers(names, less);
  std::vector<Segment> basis;
  for (std::size_t x = 0; x < p.size(); ++x) basis.push_back({x, x});
  for (auto [x, y] : p.cover_pairs()) basis.push_back({x, y});
  for (unsigned n = 0; n < levels; ++n) {
    basis.push_back({a(n), a(n + 1)});
    if (n + 1 < levels)
      for (unsigned i = 1; i <= width; ++i) basis.push_back({b(n, i), b(n + 1, i)});
  }
  return IncidenceSubcoalgebra(std::move(p), std::move(basis));
}

/// Elements a_n and b_{n,i} with 1 <= n <= levels-2: those whose up- and
/// down-sets inside the window agree with the infinite order.
inline std::set<std::size_t> stacked_diamonds_interior(unsigned width, unsigned levels) {
  std::set<std::size_t> out;
  for (unsigned n = 1; n + 2 <= levels; ++n)
    for (unsigned i = 0; i <= width; ++i) out.insert(static_cast<std::size_t>(n * (width + 1) + i));
  return out;
}

}  // namespace qcf

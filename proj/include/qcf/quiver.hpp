#pragma once

#include "qcf/coalgebra_table.hpp"
#include "qcf/element.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace qcf {

struct Arrow {
  std::string id;
  std::size_t source;
  std::size_t target;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite directed multigraph. Loops and parallel arrows are allowed; vertex
/// and arrow ids share one namespace.
class Quiver {
 public:
  std::size_t add_vertex(const std::string& id) {
    if (names_.count(id)) throw std::invalid_argument("duplicate id '" + id + "'");
    names_[id] = {true, vertices_.size()};
    vertices_.push_back(id);
    return vertices_.size() - 1;
  }

  std::size_t add_arrow(const std::string& id, const std::string& source, const std::string& target) {
    return add_arrow(id, vertex_index(source), vertex_index(target));
  }

  std::size_t add_arrow(const std::string& id, std::size_t source, std::size_t target) {
    if (names_.count(id)) throw std::invalid_argument("duplicate id '" + id + "'");
    if (source >= vertices_.size() || target >= vertices_.size())
      throw std::invalid_argument("arrow '" + id + "' has an undeclared endpoint");
    names_[id] = {false, arrows_.size()};
    arrows_.push_back({id, source, target});
    return arrows_.size() - 1;
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t i) const { return arrows_.at(i); }
  const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }

  bool is_vertex(const std::string& id) const {
    auto it = names_.find(id);
    return it != names_.end() && it->second.first;
  }
  bool is_arrow(const std::string& id) const {
    auto it = names_.find(id);
    return it != names_.end() && !it->second.first;
  }
  std::size_t vertex_index(const std::string& id) const {
    auto it = names_.find(id);
    if (it == names_.end() || !it->second.first) throw std::invalid_argument("unknown vertex '" + id + "'");
    return it->second.second;
  }
  std::size_t arrow_index(const std::string& id) const {
    auto it = names_.find(id);
    if (it == names_.end() || it->second.first) throw std::invalid_argument("unknown arrow '" + id + "'");
    return it->second.second;
  }

  bool has_cycle() const {
    std::vector<int> state(vertices_.size(), 0);
    std::vector<std::vector<std::size_t>> out(vertices_.size());
    for (const auto& a : arrows_) out[a.source].push_back(a.target);
    auto visit = [&](auto&& self, std::size_t v) -> bool {
      state[v] = 1;
      for (auto w : out[v]) {
        if (state[w] == 1) return true;
        if (state[w] == 0 && self(self, w)) return true;
      }
      state[v] = 2;
      return false;
    };
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (state[v] == 0 && visit(visit, v)) return true;
    return false;
  }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::pair<bool, std::size_t>> names_;
};

/// A vertex (empty arrow list) or a composable arrow sequence. `start` is the
/// source vertex in both cases. Ordered by length first, which lists a basis
/// along its coradical filtration.
struct Path {
  std::size_t start = 0;
  std::vector<std::size_t> arrows;

  std::size_t length() const { return arrows.size(); }
  bool is_vertex() const { return arrows.empty(); }

  friend bool operator==(const Path&, const Path&) = default;
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.arrows.size() <=> b.arrows.size(); c != 0) return c;
    if (auto c = a.start <=> b.start; c != 0) return c;
    return a.arrows <=> b.arrows;
  }
};

inline Path vertex_path(std::size_t v) { return Path{v, {}}; }

inline std::size_t source(const Quiver&, const Path& p) { return p.start; }
inline std::size_t target(const Quiver& q, const Path& p) {
  return p.arrows.empty() ? p.start : q.arrow(p.arrows.back()).target;
}

inline bool is_valid_path(const Quiver& q, const Path& p) {
  if (p.start >= q.vertex_count()) return false;
  std::size_t at = p.start;
  for (auto a : p.arrows) {
    if (a >= q.arrow_count() || q.arrow(a).source != at) return false;
    at = q.arrow(a).target;
  }
  return true;
}

/// Arrows [i, j) of p; the vertex at position i when i == j.
inline Path subpath(const Quiver& q, const Path& p, std::size_t i, std::size_t j) {
  std::size_t start = i == 0 ? p.start : q.arrow(p.arrows[i - 1]).target;
  return Path{start, std::vector<std::size_t>(p.arrows.begin() + static_cast<long>(i),
                                              p.arrows.begin() + static_cast<long>(j))};
}

/// The path qp (arrows of q followed by arrows of p); requires t(q) = s(p).
inline Path concat(const Quiver& quiver, const Path& q, const Path& p) {
  if (target(quiver, q) != p.start) throw std::invalid_argument("paths do not compose");
  Path out = q;
  out.arrows.insert(out.arrows.end(), p.arrows.begin(), p.arrows.end());
  return out;
}

inline Path path_from_ids(const Quiver& q, const std::vector<std::string>& ids) {
  if (ids.empty()) throw std::invalid_argument("empty path");
  if (ids.size() == 1 && q.is_vertex(ids[0])) return vertex_path(q.vertex_index(ids[0]));
  Path p;
  for (const auto& id : ids) p.arrows.push_back(q.arrow_index(id));
  p.start = q.arrow(p.arrows.front()).source;
  if (!is_valid_path(q, p)) throw std::invalid_argument("arrows do not compose into a path");
  return p;
}

inline std::vector<std::string> path_ids(const Quiver& q, const Path& p) {
  if (p.is_vertex()) return {q.vertex_name(p.start)};
  std::vector<std::string> ids;
  for (auto a : p.arrows) ids.push_back(q.arrow(a).id);
  return ids;
}

inline std::string path_label(const Quiver& q, const Path& p) {
  std::string out;
  for (const auto& id : path_ids(q, p)) {
    if (!out.empty()) out += ' ';
    out += id;
  }
  return out;
}

/// Every path of length at most `max_length`.
inline std::vector<Path> all_paths(const Quiver& q, std::size_t max_length) {
  std::vector<Path> out;
  std::vector<Path> frontier;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) frontier.push_back(vertex_path(v));
  out = frontier;
  for (std::size_t len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      std::size_t t = target(q, p);
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        if (q.arrow(a).source != t) continue;
        Path e = p;
        if (e.arrows.empty()) e.start = t;
        e.arrows.push_back(a);
        next.push_back(std::move(e));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

/// Subcoalgebra of the path coalgebra spanned by a set of paths.
/// Construction only checks that each path exists in the quiver; closure under
/// subpaths is reported by validate().
class PathSubcoalgebra {
 public:
  PathSubcoalgebra() = default;
  PathSubcoalgebra(Quiver quiver, std::vector<Path> basis) : quiver_(std::move(quiver)), basis_(std::move(basis)) {
    for (const auto& p : basis_)
      if (!is_valid_path(quiver_, p)) throw std::invalid_argument("basis element is not a path of the quiver");
    std::sort(basis_.begin(), basis_.end());
    basis_.erase(std::unique(basis_.begin(), basis_.end()), basis_.end());
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
  }

  const Quiver& quiver() const { return quiver_; }
  const std::vector<Path>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  bool contains(const Path& p) const { return index_.count(p) > 0; }
  std::size_t index_of(const Path& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw std::out_of_range("path '" + path_label(quiver_, p) + "' is not in the basis");
    return it->second;
  }
  std::string label(const Path& p) const { return path_label(quiver_, p); }

 private:
  Quiver quiver_;
  std::vector<Path> basis_;
  std::map<Path, std::size_t> index_;
};

/// Full path coalgebra; only finite when the quiver is acyclic.
inline PathSubcoalgebra full_path_coalgebra(const Quiver& q) {
  if (q.has_cycle()) throw std::invalid_argument("path coalgebra of a quiver with a cycle is infinite dimensional");
  return PathSubcoalgebra(q, all_paths(q, q.vertex_count()));
}

inline PathSubcoalgebra truncated_path_coalgebra(const Quiver& q, std::size_t max_length) {
  return PathSubcoalgebra(q, all_paths(q, max_length));
}

struct ClosureViolation {
  enum class Kind { MissingEndpoint, MissingSubpath };
  Kind kind;
  Path required_by;
  Path missing;
};

/// Every subpath (vertices included) of a basis path that is absent from the
/// basis, reported once per missing path.
inline std::vector<ClosureViolation> validate(const PathSubcoalgebra& c) {
  std::vector<ClosureViolation> out;
  std::set<Path> reported;
  const auto& q = c.quiver();
  for (const auto& p : c.basis()) {
    for (std::size_t i = 0; i <= p.length(); ++i) {
      for (std::size_t j = i; j <= p.length(); ++j) {
        Path sub = subpath(q, p, i, j);
        if (c.contains(sub) || reported.count(sub)) continue;
        reported.insert(sub);
        auto kind = sub.is_vertex() ? ClosureViolation::Kind::MissingEndpoint : ClosureViolation::Kind::MissingSubpath;
        out.push_back({kind, p, sub});
      }
    }
  }
  return out;
}

/// Delta(p) = sum over all factorizations p = q r of q (x) r.
inline Tensor<Path> comul(const PathSubcoalgebra& c, const Path& p) {
  c.index_of(p);
  Tensor<Path> out;
  const auto& q = c.quiver();
  for (std::size_t k = 0; k <= p.length(); ++k)
    out.add({subpath(q, p, 0, k), subpath(q, p, k, p.length())}, Scalar(1));
  return out;
}

inline Scalar counit(const PathSubcoalgebra& c, const Path& p) {
  c.index_of(p);
  return Scalar(p.is_vertex() ? 1 : 0);
}

/// Basis paths of length at most n span the n-th term of the coradical filtration.
inline std::size_t coradical_degree(const Path& p) { return p.length(); }

inline std::vector<std::size_t> grouplikes(const PathSubcoalgebra& c) {
  std::vector<std::size_t> out;
  for (const auto& p : c.basis())
    if (p.is_vertex()) out.push_back(p.start);
  return out;
}

/// Number of arrows v -> w in the basis: the dimension of the non-trivial
/// (w,v)-skew-primitives.
inline std::size_t skew_primitive_count(const PathSubcoalgebra& c, std::size_t v, std::size_t w) {
  std::size_t n = 0;
  for (const auto& p : c.basis())
    if (p.length() == 1 && p.start == v && target(c.quiver(), p) == w) ++n;
  return n;
}

enum class Side { Left, Right };

/// Left side: basis paths ending at v. Right side: basis paths starting at v.
inline std::vector<Path> injective_envelope(const PathSubcoalgebra& c, std::size_t v, Side side) {
  if (!c.contains(vertex_path(v))) throw std::invalid_argument("vertex is not in the coalgebra");
  std::vector<Path> out;
  for (const auto& p : c.basis()) {
    std::size_t end = side == Side::Left ? target(c.quiver(), p) : p.start;
    if (end == v) out.push_back(p);
  }
  return out;
}

/// Requires a subpath-closed basis.
inline CoalgebraTable to_table(const PathSubcoalgebra& c) {
  CoalgebraTable t;
  const auto& q = c.quiver();
  for (const auto& p : c.basis()) {
    t.labels.push_back(c.label(p));
    std::vector<ComulTerm> terms;
    for (std::size_t k = 0; k <= p.length(); ++k)
      terms.push_back({c.index_of(subpath(q, p, 0, k)), c.index_of(subpath(q, p, k, p.length())), 1});
    t.comul.push_back(std::move(terms));
    t.counit.push_back(p.is_vertex() ? 1 : 0);
  }
  return t;
}

}  // namespace qcf

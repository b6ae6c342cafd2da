#pragma once

#include "qcf/balanced.hpp"
#include "qcf/families.hpp"
#include "qcf/poset.hpp"
#include "qcf/quiver.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcf {

enum class Verdict { Yes, YesOnWindow, No, WindowInconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::YesOnWindow: return "yes-on-window";
    case Verdict::No: return "no";
    case Verdict::WindowInconclusive: return "window-inconclusive";
  }
  return "?";
}

struct VertexReport {
  std::string name;
  std::optional<std::string> r;  ///< set iff the vertex lies in R(C)
  std::optional<std::string> l;  ///< set iff the vertex lies in L(C)
  bool left_ok = false;
  bool right_ok = false;
  std::string left_reason;
  std::string right_reason;
  bool interior = true;
};

struct FrobeniusReport {
  std::vector<VertexReport> vertices;
  Verdict left = Verdict::No;
  Verdict right = Verdict::No;
  std::optional<std::string> left_witness;
  std::optional<std::string> right_witness;
  std::vector<std::string> notes;
  bool windowed = false;
};

namespace detail {

/// r and l as partial maps on vertex positions.
struct LocalMaps {
  std::vector<std::string> names;
  std::vector<bool> present;
  std::vector<std::optional<std::size_t>> r;
  std::vector<std::optional<std::size_t>> l;
};

inline std::vector<VertexReport> evaluate_condition_c(const LocalMaps& m) {
  std::vector<VertexReport> out;
  for (std::size_t v = 0; v < m.names.size(); ++v) {
    if (!m.present[v]) continue;
    VertexReport rep;
    rep.name = m.names[v];
    if (m.r[v]) rep.r = m.names[*m.r[v]];
    if (m.l[v]) rep.l = m.names[*m.l[v]];
    if (!m.r[v]) {
      rep.left_reason = "no unique maximal element starting at " + rep.name;
    } else if (!m.l[*m.r[v]]) {
      rep.left_reason = "r(" + rep.name + ")=" + *rep.r + " has no unique maximal element ending there";
    } else if (*m.l[*m.r[v]] != v) {
      rep.left_reason = "l(r(" + rep.name + "))=" + m.names[*m.l[*m.r[v]]];
    } else {
      rep.left_ok = true;
    }
    if (!m.l[v]) {
      rep.right_reason = "no unique maximal element ending at " + rep.name;
    } else if (!m.r[*m.l[v]]) {
      rep.right_reason = "l(" + rep.name + ")=" + *rep.l + " has no unique maximal element starting there";
    } else if (*m.r[*m.l[v]] != v) {
      rep.right_reason = "r(l(" + rep.name + "))=" + m.names[*m.r[*m.l[v]]];
    } else {
      rep.right_ok = true;
    }
    out.push_back(std::move(rep));
  }
  return out;
}

inline LocalMaps local_maps(const PathSubcoalgebra& c) {
  const auto& q = c.quiver();
  LocalMaps m;
  m.names = q.vertices();
  const std::size_t n = q.vertex_count();
  m.present.assign(n, false);
  m.r.assign(n, std::nullopt);
  m.l.assign(n, std::nullopt);
  std::vector<std::vector<const Path*>> out(n), in(n);
  for (const auto& p : c.basis()) {
    if (p.is_vertex()) m.present[p.start] = true;
    out[p.start].push_back(&p);
    in[target(q, p)].push_back(&p);
  }
  auto longest = [](const std::vector<const Path*>& ps) {
    const Path* best = nullptr;
    for (const Path* p : ps)
      if (!best || p->length() > best->length()) best = p;
    return best;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (!m.present[v]) continue;
    if (const Path* top = longest(out[v])) {
      bool all_prefixes = std::all_of(out[v].begin(), out[v].end(), [&](const Path* p) {
        return std::equal(p->arrows.begin(), p->arrows.end(), top->arrows.begin());
      });
      if (all_prefixes) m.r[v] = target(q, *top);
    }
    if (const Path* top = longest(in[v])) {
      bool all_suffixes = std::all_of(in[v].begin(), in[v].end(), [&](const Path* p) {
        return std::equal(p->arrows.rbegin(), p->arrows.rend(), top->arrows.rbegin());
      });
      if (all_suffixes) m.l[v] = top->start;
    }
  }
  return m;
}

inline LocalMaps local_maps(const IncidenceSubcoalgebra& c) {
  const Poset& P = c.poset();
  LocalMaps m;
  m.names = P.elements();
  const std::size_t n = P.size();
  m.present.assign(n, false);
  m.r.assign(n, std::nullopt);
  m.l.assign(n, std::nullopt);
  for (std::size_t a = 0; a < n; ++a) m.present[a] = c.contains(a, a);
  for (std::size_t a = 0; a < n; ++a) {
    if (!m.present[a]) continue;
    std::vector<std::size_t> up, down;
    for (std::size_t x = 0; x < n; ++x) {
      if (c.contains(a, x)) up.push_back(x);
      if (c.contains(x, a)) down.push_back(x);
    }
    for (std::size_t x : up)
      if (std::all_of(up.begin(), up.end(), [&](std::size_t y) { return P.leq(y, x); })) m.r[a] = x;
    for (std::size_t x : down)
      if (std::all_of(down.begin(), down.end(), [&](std::size_t y) { return P.leq(x, y); })) m.l[a] = x;
  }
  return m;
}

inline void settle_exact(FrobeniusReport& rep) {
  rep.left = Verdict::Yes;
  rep.right = Verdict::Yes;
  for (const auto& v : rep.vertices) {
    if (!v.left_ok && !rep.left_witness) {
      rep.left = Verdict::No;
      rep.left_witness = v.name + ": " + v.left_reason;
    }
    if (!v.right_ok && !rep.right_witness) {
      rep.right = Verdict::No;
      rep.right_witness = v.name + ": " + v.right_reason;
    }
  }
}

/// First failing interior vertex on each side; returns which sides failed.
inline std::pair<bool, bool> interior_failures(FrobeniusReport& rep) {
  bool lf = false, rf = false;
  for (const auto& v : rep.vertices) {
    if (!v.interior) continue;
    if (!v.left_ok && !lf) {
      lf = true;
      rep.left_witness = v.name + ": " + v.left_reason;
    }
    if (!v.right_ok && !rf) {
      rf = true;
      rep.right_witness = v.name + ": " + v.right_reason;
    }
  }
  return {lf, rf};
}

}  // namespace detail

/// Condition (c) and its right-hand mirror at every vertex of a finite path
/// subcoalgebra. Both verdicts are exact.
inline FrobeniusReport analyze(const PathSubcoalgebra& c) {
  FrobeniusReport rep;
  rep.vertices = detail::evaluate_condition_c(detail::local_maps(c));
  detail::settle_exact(rep);
  return rep;
}

/// Exact for a finite poset. With `interior`, the coalgebra is read as a
/// finite window onto a larger object: only interior elements are judged and
/// a clean interior yields window-inconclusive.
inline FrobeniusReport analyze(const IncidenceSubcoalgebra& c,
                               const std::optional<std::set<std::size_t>>& interior = std::nullopt) {
  FrobeniusReport rep;
  rep.vertices = detail::evaluate_condition_c(detail::local_maps(c));
  if (!interior) {
    detail::settle_exact(rep);
    return rep;
  }
  rep.windowed = true;
  std::set<std::string> inner;
  for (auto i : *interior) inner.insert(c.poset().name(i));
  for (auto& v : rep.vertices) v.interior = inner.count(v.name) > 0;
  auto [lf, rf] = detail::interior_failures(rep);
  rep.left = lf ? Verdict::No : Verdict::WindowInconclusive;
  rep.right = rf ? Verdict::No : Verdict::WindowInconclusive;
  rep.notes.push_back("verdicts judged on " + std::to_string(inner.size()) + " interior elements only");
  return rep;
}

/// Vertices of a line window that are far enough from the truncated ends for
/// the local criterion to be exact.
inline std::pair<long, long> family_interior(const WindowedFamily& f, std::optional<long> margin = std::nullopt) {
  long m = std::max(f.max_offset(), margin.value_or(0));
  long a = f.tag == FamilyTag::A0Inf ? f.lo : f.lo + m;
  return {a, f.hi - m};
}

/// Exact when no window is declared. Otherwise only vertices outside the
/// windows or inside their interiors are judged; the left verdict then holds
/// by the shape of the families, and the right verdict is the half-line
/// failure, yes-on-window for constant offsets, or window-inconclusive.
inline FrobeniusReport analyze(const WindowedCoalgebra& wc, std::optional<long> margin = std::nullopt) {
  FrobeniusReport rep;
  rep.vertices = detail::evaluate_condition_c(detail::local_maps(wc.coalgebra));
  if (wc.windows.empty()) {
    detail::settle_exact(rep);
    return rep;
  }
  rep.windowed = true;
  const auto& names = wc.coalgebra.quiver().vertices();
  std::map<std::string, bool> interior;
  bool all_have_interior = true, all_constant = true;
  std::optional<std::string> half_line_start;
  for (const auto& w : wc.windows) {
    WindowedFamily f = w.family();
    auto [a, b] = family_interior(f, margin);
    all_have_interior = all_have_interior && a <= b;
    all_constant = all_constant && f.constant_offset_value().has_value();
    for (long k = w.lo; k <= w.hi; ++k) interior[names[w.vertices[static_cast<std::size_t>(k - w.lo)]]] = a <= k && k <= b;
    if (w.tag == FamilyTag::A0Inf && !half_line_start) half_line_start = names[w.vertices.front()];
  }
  for (auto& v : rep.vertices) {
    auto it = interior.find(v.name);
    if (it != interior.end()) v.interior = it->second;
  }
  auto [lf, rf] = detail::interior_failures(rep);

  if (lf) {
    rep.left = Verdict::No;
  } else {
    rep.left = Verdict::Yes;
    rep.notes.push_back("left: holds for every strictly increasing r with r(n) > n; interior vertices verified");
  }
  if (rf) {
    rep.right = Verdict::No;
  } else if (half_line_start) {
    rep.right = Verdict::No;
    rep.right_witness = *half_line_start + ": r(l(0)) = r(0) > 0";
    rep.notes.push_back("right: the half-line fails at vertex 0");
  } else if (all_have_interior && all_constant) {
    rep.right = Verdict::YesOnWindow;
    rep.notes.push_back("right: r(n) - n is constant on the window; surjectivity of r is only checked there");
  } else {
    rep.right = Verdict::WindowInconclusive;
  }
  return rep;
}

inline FrobeniusReport analyze(const WindowedFamily& f, std::optional<long> margin = std::nullopt) {
  if (auto bad = family_violation(f)) throw std::invalid_argument("invalid family: " + *bad);
  return analyze(as_windowed(f), margin);
}

/// Interior vertices of a windowed coalgebra: everything outside the windows
/// and the interior of each window.
inline std::set<std::size_t> interior_vertices(const WindowedCoalgebra& wc, std::optional<long> margin = std::nullopt) {
  std::set<std::size_t> out;
  for (std::size_t v = 0; v < wc.coalgebra.quiver().vertex_count(); ++v) out.insert(v);
  for (const auto& w : wc.windows) {
    auto [a, b] = family_interior(w.family(), margin);
    for (long k = w.lo; k <= w.hi; ++k)
      if (k < a || k > b) out.erase(w.vertices[static_cast<std::size_t>(k - w.lo)]);
  }
  return out;
}

/// Result of a per-element existence search; `failures` lists every element
/// without a partner and `witness` is the longest of them.
struct ConditionD {
  bool holds = true;
  std::vector<std::string> failures;
  std::optional<std::string> witness;
};

/// For every q in B, some p in B with qp in F. With `interior`, only paths
/// starting at interior vertices are examined.
inline ConditionD check_condition_d(const PathSubcoalgebra& c, const FSet& f,
                                    const std::optional<std::set<std::size_t>>& interior = std::nullopt) {
  ConditionD out;
  const auto& quiver = c.quiver();
  std::size_t best_len = 0;
  for (const auto& q : c.basis()) {
    if (interior && !interior->count(q.start)) continue;
    const std::size_t tq = target(quiver, q);
    bool found = false;
    for (const auto& p : c.basis()) {
      if (p.start != tq) continue;
      if (f.contains(concat(quiver, q, p))) {
        found = true;
        break;
      }
    }
    if (found) continue;
    out.holds = false;
    out.failures.push_back(c.label(q));
    if (!out.witness || q.length() > best_len) {
      out.witness = c.label(q);
      best_len = q.length();
    }
  }
  return out;
}

/// For every e_{x,z} in B, some y >= z with e_{z,y} in B and the class of z in
/// U_{x,y} marked. With `interior`, only segments with interior x are examined.
inline ConditionD check_condition_d_incidence(const IncidenceSubcoalgebra& c, const IncidenceFormParam& params,
                                              const std::optional<std::set<std::size_t>>& interior = std::nullopt) {
  ConditionD out;
  const Poset& P = c.poset();
  std::size_t best_len = 0;
  for (const auto& e : c.basis()) {
    if (interior && !interior->count(e.lo)) continue;
    bool found = false;
    for (std::size_t y = 0; y < P.size() && !found; ++y)
      if (P.leq(e.hi, y) && c.contains(e.hi, y) && params.is_marked(e.lo, y, e.hi)) found = true;
    if (found) continue;
    out.holds = false;
    out.failures.push_back(c.label(e));
    std::size_t len = segment_length(P, e);
    if (!out.witness || len > best_len) {
      out.witness = c.label(e);
      best_len = len;
    }
  }
  return out;
}

/// A finite path coalgebra carries a Hopf structure iff the quiver has no arrows.
inline bool finite_path_coalgebra_hopf(const Quiver& q) {
  if (q.has_cycle()) throw std::invalid_argument("quiver has an oriented cycle; its path coalgebra is infinite dimensional");
  return q.arrow_count() == 0;
}

}  // namespace qcf

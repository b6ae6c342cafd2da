#pragma once

#include "qcf/families.hpp"
#include "qcf/quiver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace qcf {

struct Summand {
  enum class Kind { Point, Cycle, AInf, A0Inf };
  Kind kind = Kind::Point;
  unsigned n = 0;  ///< cycle length
  unsigned s = 0;  ///< maximal path length on a cycle
  long lo = 0;
  /// r(k) - k for k = lo, lo+1, ... as far as the window determines r exactly.
  std::vector<long> offsets;

  static Summand point() { return {}; }
  static Summand cycle(unsigned n, unsigned s) { return {Kind::Cycle, n, s, 0, {}}; }
  static Summand line(Kind kind, long lo, std::vector<long> offsets) { return {kind, 0, 0, lo, std::move(offsets)}; }

  bool is_line() const { return kind == Kind::AInf || kind == Kind::A0Inf; }

  std::optional<long> constant_offset() const {
    if (!is_line() || offsets.empty()) return std::nullopt;
    for (long d : offsets)
      if (d != offsets.front()) return std::nullopt;
    return offsets.front();
  }

  /// Lines are compared up to translation, half-lines by their r values.
  std::string key() const {
    auto list = [](const std::vector<long>& v) {
      std::string out = "[";
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
      return out + "]";
    };
    switch (kind) {
      case Kind::Point: return "K";
      case Kind::Cycle: return "C(" + std::to_string(n) + "," + std::to_string(s) + ")";
      case Kind::AInf:
        if (auto c = constant_offset()) return "Ainf|" + std::to_string(*c);
        return "Ainf" + list(offsets);
      case Kind::A0Inf: {
        std::vector<long> r;
        for (std::size_t i = 0; i < offsets.size(); ++i) r.push_back(lo + static_cast<long>(i) + offsets[i]);
        return "A0inf" + list(r);
      }
    }
    return "?";
  }
};

struct Classification {
  std::vector<Summand> summands;               ///< sorted by key
  std::map<std::string, std::size_t> summand_of;  ///< vertex name -> summand position

  bool window_limited() const {
    return std::any_of(summands.begin(), summands.end(), [](const Summand& s) { return s.is_line(); });
  }
};

/// Sorted multiset of summand keys, e.g. "2*C(3,2) + 1*K".
inline std::string canonical_key(std::vector<Summand> summands) {
  std::map<std::string, std::size_t> counts;
  for (const auto& s : summands) ++counts[s.key()];
  std::string out;
  for (const auto& [k, n] : counts) {
    if (!out.empty()) out += " + ";
    out += std::to_string(n) + "*" + k;
  }
  return out.empty() ? "0" : out;
}

inline std::string canonical_key(const Classification& c) { return canonical_key(c.summands); }

struct ClassifyFailure {
  std::string kind;  ///< out-degree | in-degree | sink-with-incoming | unequal-maximal-length | ...
  std::string vertex;
  std::string detail;
};

struct ClassifyResult {
  std::optional<Classification> classification;
  std::optional<ClassifyFailure> failure;
  bool ok() const { return classification.has_value(); }
};

namespace detail {

inline std::vector<std::size_t> maximal_lengths(const PathSubcoalgebra& c) {
  std::vector<std::size_t> m(c.quiver().vertex_count(), 0);
  for (const auto& p : c.basis()) m[p.start] = std::max(m[p.start], p.length());
  return m;
}

}  // namespace detail

/// Splits C into the connected components of the subquiver of vertices and
/// arrows lying in B and matches each against a point, a cycle carrying all
/// paths up to a fixed length, or a declared line window.
inline ClassifyResult classify(const WindowedCoalgebra& wc) {
  const PathSubcoalgebra& c = wc.coalgebra;
  const Quiver& q = c.quiver();
  const std::size_t nv = q.vertex_count();
  ClassifyResult result;
  auto fail = [&](std::string kind, std::size_t v, std::string detail) {
    result.failure = ClassifyFailure{std::move(kind), q.vertex_name(v), std::move(detail)};
    return result;
  };

  std::vector<bool> present(nv, false);
  std::vector<std::vector<std::size_t>> out(nv), in(nv);
  for (const auto& p : c.basis()) {
    if (p.is_vertex()) present[p.start] = true;
    if (p.length() == 1) {
      out[p.start].push_back(p.arrows[0]);
      in[target(q, p)].push_back(p.arrows[0]);
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (!present[v]) continue;
    if (out[v].size() > 1) return fail("out-degree", v, std::to_string(out[v].size()) + " arrows start here");
    if (in[v].size() > 1) return fail("in-degree", v, std::to_string(in[v].size()) + " arrows end here");
  }

  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t v = 0; v < nv; ++v)
    for (auto a : out[v]) parent[find(q.arrow(a).target)] = find(v);
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t v = 0; v < nv; ++v)
    if (present[v]) components[find(v)].push_back(v);

  std::map<std::size_t, const LineWindow*> window_of;
  for (const auto& w : wc.windows)
    for (auto v : w.vertices) window_of[v] = &w;

  const auto m = detail::maximal_lengths(c);
  std::vector<std::pair<Summand, std::vector<std::size_t>>> found;
  for (const auto& [root, verts] : components) {
    auto wit = window_of.find(verts.front());
    if (wit != window_of.end()) {
      const LineWindow& w = *wit->second;
      std::set<std::size_t> expect(w.vertices.begin(), w.vertices.end());
      if (std::set<std::size_t>(verts.begin(), verts.end()) != expect)
        return fail("window-shape", verts.front(), "component differs from the declared window");
      for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i) {
        auto v = w.vertices[i];
        if (out[v].size() != 1 || q.arrow(out[v][0]).target != w.vertices[i + 1])
          return fail("window-shape", v, "declared window is not a line");
      }
      if (w.tag == FamilyTag::A0Inf && w.lo != 0) return fail("window-shape", w.vertices.front(), "half-line must start at 0");
      std::vector<long> offsets;
      for (std::size_t i = 0; i < w.vertices.size(); ++i) {
        long k = w.lo + static_cast<long>(i);
        long d = static_cast<long>(m[w.vertices[i]]);
        if (k + d >= w.hi) break;
        if (d == 0) return fail("sink-with-incoming", w.vertices[i], "no path of positive length starts here");
        if (!offsets.empty() && d < offsets.back())
          return fail("decreasing-maximal-length", w.vertices[i - 1], "maximal path contains the next maximal path");
        offsets.push_back(d);
      }
      if (offsets.empty()) return fail("window-shape", w.vertices.front(), "window too short to determine r");
      auto kind = w.tag == FamilyTag::AInf ? Summand::Kind::AInf : Summand::Kind::A0Inf;
      found.emplace_back(Summand::line(kind, w.lo, std::move(offsets)), verts);
      continue;
    }
    bool no_arrows = std::all_of(verts.begin(), verts.end(), [&](std::size_t v) { return out[v].empty() && in[v].empty(); });
    if (no_arrows) {
      found.emplace_back(Summand::point(), verts);
      continue;
    }
    for (auto v : verts)
      if (out[v].empty()) return fail("sink-with-incoming", v, "an arrow ends here but none starts here");
    // Every vertex now has exactly one arrow in and one out: a cycle.
    std::vector<std::size_t> cyc{verts.front()};
    while (true) {
      std::size_t next = q.arrow(out[cyc.back()][0]).target;
      if (next == cyc.front()) break;
      cyc.push_back(next);
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      std::size_t v = cyc[i], w = cyc[(i + 1) % cyc.size()];
      if (m[v] > m[w])
        return fail("unequal-maximal-length", v,
                    "maximal length " + std::to_string(m[v]) + " exceeds " + std::to_string(m[w]) + " at the next vertex");
    }
    found.emplace_back(Summand::cycle(static_cast<unsigned>(cyc.size()), static_cast<unsigned>(m[cyc.front()])), verts);
  }

  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first.key() < b.first.key(); });
  Classification cl;
  for (std::size_t i = 0; i < found.size(); ++i) {
    cl.summands.push_back(found[i].first);
    for (auto v : found[i].second) cl.summand_of[q.vertex_name(v)] = i;
  }
  result.classification = std::move(cl);
  return result;
}

inline ClassifyResult classify(const PathSubcoalgebra& c) { return classify(WindowedCoalgebra{c, {}}); }

/// Descriptor a family window classifies to, read off its declared r.
inline Summand summand_of(const WindowedFamily& f) {
  if (f.tag == FamilyTag::Cn) return Summand::cycle(f.n, f.s);
  std::vector<long> offsets;
  for (long k = f.lo; k <= f.hi && f.r_at(k) < f.hi; ++k) offsets.push_back(f.r_at(k) - k);
  return Summand::line(f.tag == FamilyTag::AInf ? Summand::Kind::AInf : Summand::Kind::A0Inf, f.lo, std::move(offsets));
}

struct IsoVerdict {
  bool isomorphic = false;
  bool window_limited = false;
};

inline IsoVerdict iso_check(const Classification& a, const Classification& b) {
  return {canonical_key(a) == canonical_key(b), a.window_limited() || b.window_limited()};
}

enum class HopfFamily { I, II, III, None };

inline std::string to_string(HopfFamily f) {
  switch (f) {
    case HopfFamily::I: return "I";
    case HopfFamily::II: return "II";
    case HopfFamily::III: return "III";
    case HopfFamily::None: return "none";
  }
  return "?";
}

struct HopfAdmissibility {
  HopfFamily family = HopfFamily::None;
  std::optional<unsigned> n;
  std::optional<unsigned> s;
  std::size_t summands = 0;
  std::string reason;
};

inline HopfAdmissibility admits_hopf(const Classification& c) {
  HopfAdmissibility out;
  out.summands = c.summands.size();
  const auto& ss = c.summands;
  if (ss.empty()) {
    out.reason = "the zero coalgebra";
    return out;
  }
  auto all = [&](auto pred) { return std::all_of(ss.begin(), ss.end(), pred); };
  if (all([](const Summand& x) { return x.kind == Summand::Kind::Point; })) {
    out.family = HopfFamily::III;
    out.reason = "grouplike coalgebra";
    return out;
  }
  if (all([](const Summand& x) { return x.kind == Summand::Kind::AInf; })) {
    auto s0 = ss.front().constant_offset();
    if (s0 && all([&](const Summand& x) { return x.constant_offset() == s0; })) {
      out.family = HopfFamily::I;
      out.s = static_cast<unsigned>(*s0);
      out.reason = "copies of one line with constant offset";
    } else {
      out.reason = "line summands without a common constant offset";
    }
    return out;
  }
  if (all([](const Summand& x) { return x.kind == Summand::Kind::Cycle; })) {
    const auto& f = ss.front();
    if (!all([&](const Summand& x) { return x.n == f.n && x.s == f.s; })) {
      out.reason = "cycle summands differ";
    } else if (f.n < 2) {
      out.reason = "cycle of length below 2";
    } else if (f.n % (f.s + 1) != 0) {
      out.reason = "s+1 does not divide n";
    } else {
      out.family = HopfFamily::II;
      out.n = f.n;
      out.s = f.s;
      out.reason = "copies of one cycle with s+1 dividing n";
    }
    return out;
  }
  out.reason = "summands of different types";
  return out;
}

}  // namespace qcf

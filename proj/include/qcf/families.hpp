#pragma once

#include "qcf/quiver.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qcf {

enum class FamilyTag { AInf, A0Inf, Cn };

inline std::string to_string(FamilyTag t) {
  switch (t) {
    case FamilyTag::AInf: return "Ainf";
    case FamilyTag::A0Inf: return "A0inf";
    case FamilyTag::Cn: return "Cn";
  }
  return "?";
}

/// A finite window onto one of the canonical co-Frobenius families: the line
/// or half-line restricted to [lo, hi] with its r-table, or the n-cycle with
/// all paths of length at most s.
struct WindowedFamily {
  FamilyTag tag = FamilyTag::Cn;
  long lo = 0;
  long hi = 0;
  std::vector<long> r;  ///< r(lo), ..., r(hi) for the line types
  unsigned n = 0;
  unsigned s = 0;

  static WindowedFamily line(FamilyTag tag, long lo, long hi, std::vector<long> r) {
    return WindowedFamily{tag, lo, hi, std::move(r), 0, 0};
  }
  static WindowedFamily constant_offset(FamilyTag tag, long lo, long hi, long offset) {
    std::vector<long> r;
    for (long k = lo; k <= hi; ++k) r.push_back(k + offset);
    return line(tag, lo, hi, std::move(r));
  }
  static WindowedFamily cycle(unsigned n, unsigned s) { return WindowedFamily{FamilyTag::Cn, 0, 0, {}, n, s}; }

  bool is_line() const { return tag != FamilyTag::Cn; }
  long r_at(long k) const { return r.at(static_cast<std::size_t>(k - lo)); }
  /// Largest r(k) - k over the window.
  long max_offset() const {
    long m = 0;
    for (long k = lo; k <= hi; ++k) m = std::max(m, r_at(k) - k);
    return m;
  }
  std::optional<long> constant_offset_value() const {
    if (!is_line() || r.empty()) return std::nullopt;
    long d = r_at(lo) - lo;
    for (long k = lo; k <= hi; ++k)
      if (r_at(k) - k != d) return std::nullopt;
    return d;
  }

  friend bool operator==(const WindowedFamily&, const WindowedFamily&) = default;
};

/// Empty when the declared invariants hold, otherwise the first violation.
inline std::optional<std::string> family_violation(const WindowedFamily& f) {
  if (f.tag == FamilyTag::Cn) {
    if (f.n < 1) return "cycle length n must be at least 1";
    if (f.s < 1) return "s must be at least 1";
    return std::nullopt;
  }
  if (f.hi < f.lo) return "empty window";
  if (f.tag == FamilyTag::A0Inf && f.lo != 0) return "half-line window must start at 0";
  if (f.r.size() != static_cast<std::size_t>(f.hi - f.lo + 1)) return "r-table must cover the whole window";
  for (long k = f.lo; k <= f.hi; ++k) {
    if (f.r_at(k) <= k) return "r(" + std::to_string(k) + ") must exceed " + std::to_string(k);
    if (k > f.lo && f.r_at(k) <= f.r_at(k - 1)) return "r must be strictly increasing at " + std::to_string(k);
  }
  return std::nullopt;
}

inline std::string line_vertex_name(long k) { return "v" + std::to_string(k); }

/// Path p_{k,l} on the line quiver produced by build_family (window start lo).
inline Path line_path(long lo, long k, long l) {
  Path p{static_cast<std::size_t>(k - lo), {}};
  for (long i = k; i < l; ++i) p.arrows.push_back(static_cast<std::size_t>(i - lo));
  return p;
}

/// Path of length u from vertex i on the cycle quiver produced by build_family.
inline Path cycle_path(unsigned n, unsigned i, unsigned u) {
  Path p{i % n, {}};
  for (unsigned h = 0; h < u; ++h) p.arrows.push_back((i + h) % n);
  return p;
}

inline PathSubcoalgebra build_family(const WindowedFamily& f) {
  if (auto bad = family_violation(f)) throw std::invalid_argument("invalid family: " + *bad);
  Quiver q;
  std::vector<Path> basis;
  if (f.tag == FamilyTag::Cn) {
    for (unsigned i = 0; i < f.n; ++i) q.add_vertex("c" + std::to_string(i));
    for (unsigned i = 0; i < f.n; ++i) q.add_arrow("x" + std::to_string(i), i, (i + 1) % f.n);
    for (unsigned i = 0; i < f.n; ++i)
      for (unsigned u = 0; u <= f.s; ++u) basis.push_back(cycle_path(f.n, i, u));
    return PathSubcoalgebra(std::move(q), std::move(basis));
  }
  for (long k = f.lo; k <= f.hi; ++k) q.add_vertex(line_vertex_name(k));
  for (long k = f.lo; k < f.hi; ++k)
    q.add_arrow("a" + std::to_string(k), static_cast<std::size_t>(k - f.lo), static_cast<std::size_t>(k + 1 - f.lo));
  for (long k = f.lo; k <= f.hi; ++k)
    for (long l = k; l <= std::min(f.r_at(k), f.hi); ++l) basis.push_back(line_path(f.lo, k, l));
  return PathSubcoalgebra(std::move(q), std::move(basis));
}

/// Disjoint union with ids prefixed by the summand position.
inline PathSubcoalgebra direct_sum(const std::vector<PathSubcoalgebra>& parts) {
  Quiver q;
  std::vector<Path> basis;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& src = parts[i].quiver();
    std::string prefix = "s" + std::to_string(i) + "_";
    std::size_t v0 = q.vertex_count(), a0 = q.arrow_count();
    for (const auto& v : src.vertices()) q.add_vertex(prefix + v);
    for (const auto& a : src.arrows()) q.add_arrow(prefix + a.id, v0 + a.source, v0 + a.target);
    for (auto p : parts[i].basis()) {
      p.start += v0;
      for (auto& a : p.arrows) a += a0;
      basis.push_back(std::move(p));
    }
  }
  return PathSubcoalgebra(std::move(q), std::move(basis));
}

/// A line component of a finite coalgebra that stands for a window onto an
/// infinite line or half-line; vertices[i] is the vertex at position lo + i.
struct LineWindow {
  FamilyTag tag = FamilyTag::AInf;
  long lo = 0;
  long hi = 0;
  std::vector<std::size_t> vertices;
  std::vector<long> r;  ///< declared r(lo), ..., r(hi)

  WindowedFamily family() const { return WindowedFamily::line(tag, lo, hi, r); }
};

/// A finite path subcoalgebra in which some line components are declared to be
/// windows onto infinite families.
struct WindowedCoalgebra {
  PathSubcoalgebra coalgebra;
  std::vector<LineWindow> windows;
};

/// A family window as a windowed coalgebra; cycles carry no window.
inline WindowedCoalgebra as_windowed(const WindowedFamily& f) {
  WindowedCoalgebra out{build_family(f), {}};
  if (f.is_line()) {
    LineWindow w{f.tag, f.lo, f.hi, {}, f.r};
    for (long k = f.lo; k <= f.hi; ++k) w.vertices.push_back(static_cast<std::size_t>(k - f.lo));
    out.windows.push_back(std::move(w));
  }
  return out;
}

/// Disjoint union; with more than one part, ids are prefixed by the part
/// position as in direct_sum.
inline WindowedCoalgebra windowed_sum(const std::vector<WindowedCoalgebra>& parts) {
  if (parts.size() == 1) return parts.front();
  std::vector<PathSubcoalgebra> built;
  std::vector<LineWindow> windows;
  std::size_t offset = 0;
  for (const auto& part : parts) {
    built.push_back(part.coalgebra);
    for (auto w : part.windows) {
      for (auto& v : w.vertices) v += offset;
      windows.push_back(std::move(w));
    }
    offset += part.coalgebra.quiver().vertex_count();
  }
  return {direct_sum(built), std::move(windows)};
}

using SummandSource = std::variant<PathSubcoalgebra, WindowedFamily>;

inline WindowedCoalgebra windowed_sum(const std::vector<SummandSource>& parts) {
  std::vector<WindowedCoalgebra> wc;
  for (const auto& part : parts) {
    if (const auto* c = std::get_if<PathSubcoalgebra>(&part))
      wc.push_back({*c, {}});
    else
      wc.push_back(as_windowed(std::get<WindowedFamily>(part)));
  }
  return windowed_sum(wc);
}

}  // namespace qcf

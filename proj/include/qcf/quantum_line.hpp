#pragma once

#include "qcf/element.hpp"
#include "qcf/families.hpp"
#include "qcf/hopf.hpp"
#include "qcf/qcombinatorics.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcf {

/// p_{i,i+u} in the line coalgebra with all paths of length at most s.
struct AInfLabel {
  long i = 0;
  unsigned u = 0;
  friend auto operator<=>(const AInfLabel&, const AInfLabel&) = default;
};

/// q_{i|u}: the path of length u from vertex i (mod n) on the n-cycle.
struct CnLabel {
  unsigned i = 0;
  unsigned u = 0;
  friend auto operator<=>(const CnLabel&, const CnLabel&) = default;
};

inline std::string to_string(const AInfLabel& a) {
  return "p(" + std::to_string(a.i) + "," + std::to_string(a.i + static_cast<long>(a.u)) + ")";
}
inline std::string to_string(const CnLabel& a) { return "q(" + std::to_string(a.i) + "|" + std::to_string(a.u) + ")"; }

namespace detail {

inline void check_root(unsigned s, const RootOfUnity& q) {
  if (s < 1) throw std::invalid_argument("s must be at least 1");
  if (q.order() != s + 1) throw std::invalid_argument("q must be a primitive (s+1)-th root of unity");
}

/// Coefficients of the two branches: q^{ju} C(u+v,u)_q when u+v <= s, else
/// alpha q^{ju} (u+v-s-1)_q! / ((u)_q! (v)_q!).
inline Scalar line_coefficient(unsigned s, const Scalar& q, const Scalar& alpha, long j, unsigned u, unsigned v) {
  long m = static_cast<long>(s + 1);
  Scalar c = q.pow(((j % m + m) % m) * static_cast<long>(u));
  if (u + v <= s) return c * q_binomial(u + v, u, q);
  Scalar den = q_factorial(u, q) * q_factorial(v, q);
  if (den.is_zero()) throw std::logic_error("vanishing q-factorial below s+1");
  return alpha * c * q_factorial(u + v - s - 1, q) / den;
}

}  // namespace detail

/// Product on the line coalgebra with all paths of length <= s:
///   p_{i,i+u} p_{j,j+v} = q^{ju} C(u+v,u)_q p_{i+j,i+j+u+v}                 (u+v <= s)
///                       = alpha q^{ju} (u+v-s-1)_q!/((u)_q!(v)_q!)
///                         (p_{i+j+s+1,i+j+u+v} - p_{i+j,i+j+u+v-s-1})       (u+v > s)
inline Element<AInfLabel> product_Ainf(unsigned s, const RootOfUnity& q, const Scalar& alpha, const AInfLabel& a,
                                       const AInfLabel& b) {
  detail::check_root(s, q);
  if (a.u > s || b.u > s) throw std::invalid_argument("path length exceeds s");
  const Scalar qs = q.to_scalar();
  const Scalar c = detail::line_coefficient(s, qs, alpha, b.i, a.u, b.u);
  Element<AInfLabel> out;
  if (a.u + b.u <= s) {
    out.add({a.i + b.i, a.u + b.u}, c);
  } else {
    const unsigned w = a.u + b.u - s - 1;
    out.add({a.i + b.i + static_cast<long>(s) + 1, w}, c);
    out.add({a.i + b.i, w}, -c);
  }
  return out;
}

/// Delta(p_{i,i+u}) = sum_h p_{i,i+h} (x) p_{i+h,i+u}.
inline Tensor<AInfLabel> comul_Ainf(const AInfLabel& a) {
  Tensor<AInfLabel> out;
  for (unsigned h = 0; h <= a.u; ++h) out.add({{a.i, h}, {a.i + static_cast<long>(h), a.u - h}}, Scalar(1));
  return out;
}

/// The same product on the n-cycle with vertex indices mod n.
inline Element<CnLabel> product_Cn(unsigned n, unsigned s, const RootOfUnity& q, const Scalar& alpha, const CnLabel& a,
                                   const CnLabel& b) {
  detail::check_root(s, q);
  if (n < 2 || n % (s + 1) != 0) throw std::invalid_argument("s+1 must divide n (n >= 2)");
  if (a.u > s || b.u > s || a.i >= n || b.i >= n) throw std::invalid_argument("invalid cycle label");
  const Scalar qs = q.to_scalar();
  const Scalar c = detail::line_coefficient(s, qs, alpha, b.i, a.u, b.u);
  Element<CnLabel> out;
  if (a.u + b.u <= s) {
    out.add({(a.i + b.i) % n, a.u + b.u}, c);
  } else {
    const unsigned w = a.u + b.u - s - 1;
    out.add({(a.i + b.i + s + 1) % n, w}, c);
    out.add({(a.i + b.i) % n, w}, -c);
  }
  return out;
}

/// H_n over the cyclic group of order n with g = c and chi(c) = q.
inline FiniteGroupData cyclic_group_data(unsigned n, const RootOfUnity& q) {
  FiniteGroupData d;
  d.group = cyclic_group(n);
  d.g = n > 1 ? 1 : 0;
  for (unsigned k = 0; k < n; ++k) d.chi.push_back(q.pow(k));
  return d;
}

struct CoalgebraIsoReport {
  bool bijective = false;
  bool comul_compatible = true;
  bool counit_compatible = true;
  bool product_matches = true;
  std::optional<std::string> first_failure;
  std::size_t pairs_checked = 0;
  bool holds() const { return bijective && comul_compatible && counit_compatible && product_matches; }
};

/// Checks that q_{i|u} -> c^i x^u / (u)_q! is a coalgebra isomorphism from the
/// cycle coalgebra onto H_n(s, q, C_n, c, chi, alpha) and that pulling the
/// product of H_n back along it reproduces product_Cn.
inline CoalgebraIsoReport verify_coalgebra_iso_Cn(unsigned n, unsigned s, const RootOfUnity& q, const Scalar& alpha) {
  detail::check_root(s, q);
  if (n < 2 || n % (s + 1) != 0) throw std::invalid_argument("s+1 must divide n (n >= 2)");
  CoalgebraIsoReport rep;
  const HopfTable H = build_Hn(s, q, cyclic_group_data(n, q), alpha);
  const PathSubcoalgebra C = build_family(WindowedFamily::cycle(n, s));
  const Scalar qs = q.to_scalar();
  std::vector<Scalar> fact;
  for (unsigned u = 0; u <= s; ++u) fact.push_back(q_factorial(u, qs));

  auto label_of = [&](const Path& p) { return CnLabel{static_cast<unsigned>(p.start), static_cast<unsigned>(p.length())}; };
  auto phi = [&](const CnLabel& l) {
    HElem e;
    e.add(hn_index(l.i, l.u, s), fact[l.u].inverse());
    return e;
  };
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    if (!rep.first_failure) rep.first_failure = what;
  };

  std::vector<bool> hit(H.dimension(), false);
  for (const auto& p : C.basis()) {
    const CnLabel l = label_of(p);
    for (const auto& [b, c] : phi(l)) hit[b] = true;

    HTensor lhs = comultiply(H, phi(l));
    HTensor rhs;
    for (const auto& [t, c] : comul(C, p)) {
      for (const auto& [x, cx] : phi(label_of(t.first)))
        for (const auto& [y, cy] : phi(label_of(t.second))) rhs.add({x, y}, c * cx * cy);
    }
    if (!(lhs == rhs)) fail(rep.comul_compatible, "comultiplication at " + to_string(l));
    Scalar eps(0);
    for (const auto& [b, c] : phi(l)) eps += c * H.counit[b];
    if (!(eps == counit(C, p))) fail(rep.counit_compatible, "counit at " + to_string(l));
  }
  rep.bijective = C.dimension() == H.dimension() && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });

  for (const auto& pa : C.basis())
    for (const auto& pb : C.basis()) {
      const CnLabel a = label_of(pa), b = label_of(pb);
      HElem prod = multiply(H, phi(a), phi(b));
      Element<CnLabel> back;
      for (const auto& [idx, c] : prod) {
        CnLabel l{static_cast<unsigned>(idx / (s + 1)), static_cast<unsigned>(idx % (s + 1))};
        back.add(l, c * fact[l.u]);
      }
      ++rep.pairs_checked;
      if (!(back == product_Cn(n, s, q, alpha, a, b)))
        fail(rep.product_matches, "product at (" + to_string(a) + "," + to_string(b) + ")");
    }
  return rep;
}

}  // namespace qcf

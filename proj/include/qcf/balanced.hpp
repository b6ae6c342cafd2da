#pragma once

#include "qcf/coalgebra_table.hpp"
#include "qcf/linalg.hpp"
#include "qcf/poset.hpp"
#include "qcf/quiver.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcf {

/// beta(b_i, b_j) = matrix[i][j] over a fixed basis ordering.
struct BilinearForm {
  std::vector<std::string> labels;
  linalg::Matrix<Scalar> matrix;

  static BilinearForm zero(std::vector<std::string> labels) {
    const std::size_t n = labels.size();
    return {std::move(labels), linalg::Matrix<Scalar>(n, std::vector<Scalar>(n, Scalar(0)))};
  }
  std::size_t size() const { return labels.size(); }
  const Scalar& operator()(std::size_t p, std::size_t q) const { return matrix[p][q]; }
};

struct BalanceFailure {
  std::size_t p;
  std::size_t q;
  std::size_t coordinate;
};

/// Expands sum beta(p2,q) p1 and sum beta(p,q1) q2 in the basis for every
/// pair (p,q) and compares them coordinatewise.
inline std::optional<BalanceFailure> is_balanced(const CoalgebraTable& c, const BilinearForm& beta) {
  if (beta.size() != c.size()) throw std::invalid_argument("form and coalgebra have different dimensions");
  for (std::size_t p = 0; p < c.size(); ++p) {
    for (std::size_t q = 0; q < c.size(); ++q) {
      std::map<std::size_t, Scalar> diff;
      for (const auto& t : c.comul[p]) diff[t.left] += Scalar(t.coeff) * beta(t.right, q);
      for (const auto& t : c.comul[q]) diff[t.right] -= Scalar(t.coeff) * beta(p, t.left);
      for (const auto& [r, v] : diff)
        if (!v.is_zero()) return BalanceFailure{p, q, r};
    }
  }
  return std::nullopt;
}

inline std::size_t default_bruteforce_bound() { return 40; }

class SizeBoundExceeded : public std::length_error {
 public:
  SizeBoundExceeded(std::size_t dim, std::size_t bound)
      : std::length_error("dimension " + std::to_string(dim) + " exceeds the brute-force bound " +
                          std::to_string(bound)) {}
};

/// Solution space of the balancedness equations with the n^2 values
/// beta(b_i, b_j) as unknowns (unknown i*n + j).
struct BalancedSpace {
  std::size_t dimension_of_coalgebra = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  linalg::Matrix<Rational> basis;

  std::size_t dimension() const { return basis.size(); }
};

inline BalancedSpace balanced_space_bruteforce(const CoalgebraTable& c,
                                               std::size_t bound = default_bruteforce_bound()) {
  const std::size_t n = c.size();
  if (n > bound) throw SizeBoundExceeded(n, bound);
  linalg::EchelonBasis<Rational> eb(n * n);
  BalancedSpace out;
  out.dimension_of_coalgebra = n;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      std::map<std::size_t, std::map<std::size_t, Rational>> rows;
      for (const auto& t : c.comul[p]) rows[t.left][t.right * n + q] += t.coeff;
      for (const auto& t : c.comul[q]) rows[t.right][p * n + t.left] -= t.coeff;
      for (const auto& [r, entries] : rows) {
        linalg::SparseRow<Rational> row;
        for (const auto& [col, v] : entries)
          if (v != 0) row.emplace_back(col, v);
        if (row.empty()) continue;
        ++out.equations;
        eb.insert(std::move(row));
      }
    }
  }
  out.rank = eb.rank();
  out.basis = eb.nullspace();
  return out;
}

inline std::vector<Scalar> flatten(const BilinearForm& beta) {
  std::vector<Scalar> v;
  for (const auto& row : beta.matrix) v.insert(v.end(), row.begin(), row.end());
  return v;
}

/// True when every given form is a linear combination of the space's basis.
inline bool forms_in_span(const BalancedSpace& space, const std::vector<BilinearForm>& forms) {
  const std::size_t cols = space.dimension_of_coalgebra * space.dimension_of_coalgebra;
  linalg::EchelonBasis<Scalar> eb(cols);
  for (const auto& v : space.basis) {
    std::vector<Scalar> s(v.begin(), v.end());
    eb.insert_dense(s);
  }
  for (const auto& f : forms)
    if (!eb.in_row_space(flatten(f))) return false;
  return true;
}

inline std::size_t forms_rank(const std::vector<BilinearForm>& forms) {
  if (forms.empty()) return 0;
  linalg::EchelonBasis<Scalar> eb(forms.front().size() * forms.front().size());
  for (const auto& f : forms) eb.insert_dense(flatten(f));
  return eb.rank();
}

// ---------------------------------------------------------------------------
// Path subcoalgebras

struct FMember {
  Path d;
  Path q;  ///< a decomposition d = q p with q, p in the basis
  Path p;
};

struct FSet {
  std::vector<FMember> members;
  std::map<Path, std::size_t> index;

  std::size_t size() const { return members.size(); }
  bool contains(const Path& d) const { return index.count(d) > 0; }
};

namespace detail {

inline bool satisfies_f_conditions(const PathSubcoalgebra& c, const Path& d) {
  const auto& quiver = c.quiver();
  for (std::size_t k = 0; k <= d.length(); ++k) {
    Path q = subpath(quiver, d, 0, k);
    Path p = subpath(quiver, d, k, d.length());
    if (!c.contains(q) || !c.contains(p)) continue;
    for (std::size_t a = 0; a < quiver.arrow_count(); ++a) {
      const auto& arr = quiver.arrow(a);
      if (arr.target == p.start) {
        Path ap{arr.source, {a}};
        ap.arrows.insert(ap.arrows.end(), p.arrows.begin(), p.arrows.end());
        if (c.contains(ap) && (q.arrows.empty() || q.arrows.back() != a)) return false;
      }
      if (arr.source == target(quiver, q)) {
        Path qb = q;
        qb.arrows.push_back(a);
        if (c.contains(qb) && (p.arrows.empty() || p.arrows.front() != a)) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// The paths d = qp (q, p in B) such that for every factorization d = q'p'
/// with q', p' in B: a p' in B forces q' to end with a, and q' b in B forces
/// p' to start with b.
inline FSet compute_F(const PathSubcoalgebra& c) {
  const auto& quiver = c.quiver();
  std::map<Path, std::pair<Path, Path>> candidates;
  for (const auto& q : c.basis()) {
    const std::size_t tq = target(quiver, q);
    for (const auto& p : c.basis()) {
      if (p.start != tq) continue;
      candidates.try_emplace(concat(quiver, q, p), q, p);
    }
  }
  FSet f;
  for (const auto& [d, qp] : candidates) {
    if (!detail::satisfies_f_conditions(c, d)) continue;
    f.index[d] = f.members.size();
    f.members.push_back({d, qp.first, qp.second});
  }
  return f;
}

/// beta(p,q) = alpha_d when s(p) = t(q) and qp = d lies in F.
inline BilinearForm form_from_F(const PathSubcoalgebra& c, const FSet& f, const std::vector<Scalar>& alpha) {
  if (alpha.size() != f.size()) throw std::invalid_argument("alpha must assign a scalar to every member of F");
  std::vector<std::string> labels;
  for (const auto& b : c.basis()) labels.push_back(c.label(b));
  BilinearForm beta = BilinearForm::zero(std::move(labels));
  const auto& quiver = c.quiver();
  for (std::size_t i = 0; i < c.dimension(); ++i) {
    const Path& p = c.basis()[i];
    for (std::size_t j = 0; j < c.dimension(); ++j) {
      const Path& q = c.basis()[j];
      if (target(quiver, q) != p.start) continue;
      auto it = f.index.find(concat(quiver, q, p));
      if (it != f.index.end()) beta.matrix[i][j] = alpha[it->second];
    }
  }
  return beta;
}

inline BilinearForm form_from_F(const PathSubcoalgebra& c, const FSet& f) {
  return form_from_F(c, f, std::vector<Scalar>(f.size(), Scalar(1)));
}

// ---------------------------------------------------------------------------
// Incidence subcoalgebras

struct UClass {
  std::vector<std::size_t> members;  ///< poset element indices, increasing
  bool marked = false;
};

struct PairParams {
  std::size_t x;
  std::size_t y;
  std::vector<std::size_t> U;
  std::vector<UClass> classes;
  std::map<std::size_t, std::size_t> class_of;  ///< element -> class position
};

struct IncidenceFormParam {
  std::vector<PairParams> D;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;  ///< (x,y) -> position in D

  /// Marked classes in (pair, class) order; this order indexes alpha.
  std::vector<std::pair<std::size_t, std::size_t>> marked() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < D.size(); ++i)
      for (std::size_t k = 0; k < D[i].classes.size(); ++k)
        if (D[i].classes[k].marked) out.emplace_back(i, k);
    return out;
  }
  std::size_t marked_count() const { return marked().size(); }

  const PairParams* pair(std::size_t x, std::size_t y) const {
    auto it = index.find({x, y});
    return it == index.end() ? nullptr : &D[it->second];
  }
  bool is_marked(std::size_t x, std::size_t y, std::size_t z) const {
    const PairParams* pp = pair(x, y);
    if (!pp) return false;
    auto it = pp->class_of.find(z);
    return it != pp->class_of.end() && pp->classes[it->second].marked;
  }
};

inline IncidenceFormParam compute_incidence_params(const IncidenceSubcoalgebra& c) {
  const Poset& P = c.poset();
  const std::size_t n = P.size();
  IncidenceFormParam out;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!P.leq(x, y)) continue;
      PairParams pp{x, y, {}, {}, {}};
      for (std::size_t u = 0; u < n; ++u)
        if (P.leq(x, u) && P.leq(u, y) && c.contains(x, u) && c.contains(u, y)) pp.U.push_back(u);
      if (pp.U.empty()) continue;

      std::vector<std::size_t> parent(pp.U.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
      };
      for (std::size_t zi = 0; zi < pp.U.size(); ++zi) {
        std::optional<std::size_t> first;
        for (std::size_t ui = 0; ui < pp.U.size(); ++ui) {
          if (!P.leq(pp.U[zi], pp.U[ui])) continue;
          if (!first)
            first = ui;
          else
            parent[find(ui)] = find(*first);
        }
      }
      std::map<std::size_t, std::size_t> root_to_class;
      for (std::size_t ui = 0; ui < pp.U.size(); ++ui) {
        auto [it, fresh] = root_to_class.try_emplace(find(ui), pp.classes.size());
        if (fresh) pp.classes.emplace_back();
        pp.classes[it->second].members.push_back(pp.U[ui]);
        pp.class_of[pp.U[ui]] = it->second;
      }
      for (auto& cls : pp.classes) {
        bool ok = true;
        for (std::size_t u : cls.members) {
          for (std::size_t v = 0; v < n && ok; ++v) {
            if (P.leq(v, u) && c.contains(v, y) && !P.leq(x, v)) ok = false;
            if (P.leq(u, v) && c.contains(x, v) && !P.leq(v, y)) ok = false;
          }
          if (!ok) break;
        }
        cls.marked = ok;
      }
      out.index[{x, y}] = out.D.size();
      out.D.push_back(std::move(pp));
    }
  }
  return out;
}

/// beta(e_{t,y}, e_{x,z}) = alpha of the class of z = t in U_{x,y} when that
/// class is marked; alpha is indexed like IncidenceFormParam::marked().
inline BilinearForm form_from_params(const IncidenceSubcoalgebra& c, const IncidenceFormParam& params,
                                     const std::vector<Scalar>& alpha) {
  auto marked = params.marked();
  if (alpha.size() != marked.size()) throw std::invalid_argument("alpha must assign a scalar to every marked class");
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
  for (std::size_t i = 0; i < marked.size(); ++i) slot[marked[i]] = i;
  std::vector<std::string> labels;
  for (const auto& e : c.basis()) labels.push_back(c.label(e));
  BilinearForm beta = BilinearForm::zero(std::move(labels));
  for (std::size_t i = 0; i < c.dimension(); ++i) {
    const Segment& left = c.basis()[i];  // e_{t,y}
    for (std::size_t j = 0; j < c.dimension(); ++j) {
      const Segment& right = c.basis()[j];  // e_{x,z}
      if (right.hi != left.lo) continue;
      auto pit = params.index.find({right.lo, left.hi});
      if (pit == params.index.end()) continue;
      const auto& pp = params.D[pit->second];
      auto cit = pp.class_of.find(right.hi);
      if (cit == pp.class_of.end()) continue;
      auto sit = slot.find({pit->second, cit->second});
      if (sit != slot.end()) beta.matrix[i][j] = alpha[sit->second];
    }
  }
  return beta;
}

inline BilinearForm form_from_params(const IncidenceSubcoalgebra& c, const IncidenceFormParam& params) {
  return form_from_params(c, params, std::vector<Scalar>(params.marked_count(), Scalar(1)));
}

// ---------------------------------------------------------------------------
// Radicals

struct Radicals {
  linalg::Matrix<Scalar> left;   ///< {x : beta(x, C) = 0}
  linalg::Matrix<Scalar> right;  ///< {y : beta(C, y) = 0}
};

inline Radicals radicals(const BilinearForm& beta) {
  const std::size_t n = beta.size();
  return {linalg::kernel(linalg::transpose(beta.matrix), n), linalg::kernel(beta.matrix, n)};
}

/// Reorders a form along a basis permutation: result(perm[i], perm[j]) = beta(i, j).
inline BilinearForm permute(const BilinearForm& beta, const std::vector<std::size_t>& perm) {
  BilinearForm out = BilinearForm::zero(std::vector<std::string>(beta.size()));
  for (std::size_t i = 0; i < beta.size(); ++i) {
    out.labels[perm[i]] = beta.labels[i];
    for (std::size_t j = 0; j < beta.size(); ++j) out.matrix[perm[i]][perm[j]] = beta.matrix[i][j];
  }
  return out;
}

}  // namespace qcf

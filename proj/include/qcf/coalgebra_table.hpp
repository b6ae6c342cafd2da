#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace qcf {

struct ComulTerm {
  std::size_t left;
  std::size_t right;
  long long coeff;
};

/// Index-level view of a finite coalgebra with integral structure constants,
/// shared by path and incidence subcoalgebras.
struct CoalgebraTable {
  std::vector<std::string> labels;
  std::vector<std::vector<ComulTerm>> comul;
  std::vector<long long> counit;

  std::size_t size() const { return labels.size(); }
};

struct AxiomFailure {
  std::string axiom;
  std::size_t basis;
  std::string detail;
};

inline std::optional<AxiomFailure> check_coassociativity(const CoalgebraTable& c) {
  using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;
  for (std::size_t b = 0; b < c.size(); ++b) {
    std::map<Triple, long long> lhs, rhs;
    for (const auto& t : c.comul[b]) {
      for (const auto& u : c.comul[t.left]) lhs[{u.left, u.right, t.right}] += t.coeff * u.coeff;
      for (const auto& u : c.comul[t.right]) rhs[{t.left, u.left, u.right}] += t.coeff * u.coeff;
    }
    std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
    if (lhs != rhs) return AxiomFailure{"coassociativity", b, c.labels[b]};
  }
  return std::nullopt;
}

inline std::optional<AxiomFailure> check_counit(const CoalgebraTable& c) {
  for (std::size_t b = 0; b < c.size(); ++b) {
    std::map<std::size_t, long long> left, right;
    for (const auto& t : c.comul[b]) {
      left[t.right] += c.counit[t.left] * t.coeff;
      right[t.left] += c.counit[t.right] * t.coeff;
    }
    std::erase_if(left, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(right, [](const auto& kv) { return kv.second == 0; });
    std::map<std::size_t, long long> expect{{b, 1}};
    if (left != expect) return AxiomFailure{"left counit", b, c.labels[b]};
    if (right != expect) return AxiomFailure{"right counit", b, c.labels[b]};
  }
  return std::nullopt;
}

}  // namespace qcf

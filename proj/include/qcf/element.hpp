#pragma once

#include "qcf/cyclotomic.hpp"

#include <map>
#include <utility>

namespace qcf {

/// Finitely supported formal linear combination of basis labels.
/// Zero coefficients are never stored.
template <class Label>
class Element {
 public:
  using Terms = std::map<Label, Scalar>;

  Element() = default;
  explicit Element(Label l, Scalar c = Scalar(1)) { add(std::move(l), c); }

  void add(const Label& l, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(l, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  Scalar coefficient(const Label& l) const {
    auto it = terms_.find(l);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Element& operator+=(const Element& o) {
    for (const auto& [l, c] : o.terms_) add(l, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    for (const auto& [l, c] : o.terms_) add(l, -c);
    return *this;
  }
  Element& operator*=(const Scalar& k) {
    if (k.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [l, c] : terms_) c *= k;
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Scalar k, Element a) { return a *= k; }
  friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

template <class Label>
using Tensor = Element<std::pair<Label, Label>>;

}  // namespace qcf

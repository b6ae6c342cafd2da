#pragma once

#include "qcf/cyclotomic.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcf {

/// Finite group given by its multiplication table: table[a][b] = a*b.
struct FiniteGroup {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> table;
  std::size_t identity = 0;

  std::size_t order() const { return labels.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table[a][b]; }
  std::size_t inverse(std::size_t a) const {
    for (std::size_t b = 0; b < order(); ++b)
      if (table[a][b] == identity) return b;
    throw std::logic_error("element without inverse");
  }
  std::size_t power(std::size_t a, long long e) const {
    if (e < 0) return power(inverse(a), -e);
    std::size_t r = identity;
    for (long long i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  std::size_t element_order(std::size_t a) const {
    std::size_t k = 1;
    for (std::size_t r = a; r != identity; r = mul(r, a)) ++k;
    return k;
  }
  bool is_central(std::size_t a) const {
    for (std::size_t b = 0; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
    return true;
  }
  std::size_t index(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw std::invalid_argument("unknown group element '" + label + "'");
    return static_cast<std::size_t>(it - labels.begin());
  }
  std::size_t exponent() const {
    std::size_t e = 1;
    for (std::size_t a = 0; a < order(); ++a) e = std::lcm(e, element_order(a));
    return e;
  }
};

/// Empty when the table defines a group, otherwise the first violated axiom.
inline std::optional<std::string> group_violation(const FiniteGroup& G) {
  const std::size_t n = G.order();
  if (n == 0) return "empty group";
  if (G.table.size() != n) return "table has the wrong number of rows";
  for (const auto& row : G.table) {
    if (row.size() != n) return "table has a row of the wrong length";
    for (auto v : row)
      if (v >= n) return "table entry out of range";
  }
  if (G.identity >= n) return "identity out of range";
  for (std::size_t a = 0; a < n; ++a)
    if (G.mul(G.identity, a) != a || G.mul(a, G.identity) != a) return "'" + G.labels[G.identity] + "' is not an identity";
  for (std::size_t a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (std::size_t b = 0; b < n && !has_inverse; ++b) has_inverse = G.mul(a, b) == G.identity && G.mul(b, a) == G.identity;
    if (!has_inverse) return "'" + G.labels[a] + "' has no inverse";
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
          return "not associative at (" + G.labels[a] + "," + G.labels[b] + "," + G.labels[c] + ")";
  return std::nullopt;
}

inline FiniteGroup cyclic_group(std::size_t n, const std::string& gen = "c") {
  if (n == 0) throw std::invalid_argument("cyclic group of order 0");
  FiniteGroup G;
  for (std::size_t k = 0; k < n; ++k) G.labels.push_back(k == 0 ? "1" : k == 1 ? gen : gen + "^" + std::to_string(k));
  G.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) G.table[a][b] = (a + b) % n;
  return G;
}

/// Dihedral group of order 2m; element r^k s^e has index 2k + e.
inline FiniteGroup dihedral_group(std::size_t m) {
  if (m < 1) throw std::invalid_argument("dihedral group needs m >= 1");
  FiniteGroup G;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t e = 0; e < 2; ++e) {
      std::string r = k == 0 ? "" : k == 1 ? "r" : "r^" + std::to_string(k);
      std::string label = r + (e ? (r.empty() ? "s" : " s") : "");
      G.labels.push_back(label.empty() ? "1" : label);
    }
  const std::size_t n = 2 * m;
  G.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t ka = a / 2, ea = a % 2, kb = b / 2, eb = b % 2;
      std::size_t k = ea ? (ka + m - kb) % m : (ka + kb) % m;
      G.table[a][b] = 2 * k + ((ea + eb) % 2);
    }
  return G;
}

/// Direct product; (a,b) has index a*|H| + b.
inline FiniteGroup product_group(const FiniteGroup& G, const FiniteGroup& H) {
  FiniteGroup P;
  const std::size_t m = H.order();
  for (const auto& a : G.labels)
    for (const auto& b : H.labels) P.labels.push_back("(" + a + "," + b + ")");
  const std::size_t n = G.order() * m;
  P.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) P.table[x][y] = G.mul(x / m, y / m) * m + H.mul(x % m, y % m);
  P.identity = G.identity * m + H.identity;
  return P;
}

/// Reads a multiplication table. With a header row whose first cell is empty
/// or "*", the remaining header cells are element labels, each following row
/// starts with its label, and entries are labels. Without a header every
/// entry is a 0-based element index.
inline FiniteGroup group_from_csv(const std::string& text) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      auto b = cell.find_first_not_of(" \t\r");
      auto e = cell.find_last_not_of(" \t\r");
      cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
  };
  std::vector<std::vector<std::string>> rows;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split(line));
  }
  if (rows.empty()) throw std::invalid_argument("empty group table");

  FiniteGroup G;
  const bool header = rows[0][0].empty() || rows[0][0] == "*";
  std::vector<std::vector<std::string>> body;
  if (header) {
    G.labels.assign(rows[0].begin() + 1, rows[0].end());
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (i - 1 >= G.labels.size()) throw std::invalid_argument("group table must be square");
      if (rows[i][0] != G.labels[i - 1])
        throw std::invalid_argument("row " + std::to_string(i + 1) + " must start with label '" + G.labels[i - 1] + "'");
      body.emplace_back(rows[i].begin() + 1, rows[i].end());
    }
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) G.labels.push_back(std::to_string(i));
    body = rows;
  }
  const std::size_t n = G.labels.size();
  if (body.size() != n) throw std::invalid_argument("group table must be square");
  G.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    if (body[a].size() != n) throw std::invalid_argument("row " + std::to_string(a + 1) + " has the wrong length");
    for (std::size_t b = 0; b < n; ++b) {
      const std::string& cell = body[a][b];
      if (header) {
        G.table[a][b] = G.index(cell);
      } else {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
          v = std::stoul(cell, &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos != cell.size() || cell.empty() || v >= n)
          throw std::invalid_argument("bad table entry '" + cell + "'");
        G.table[a][b] = v;
      }
    }
  }
  std::optional<std::size_t> id;
  for (std::size_t e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = G.table[e][a] == a && G.table[a][e] == a;
    if (ok) id = e;
  }
  if (!id) throw std::invalid_argument("group table has no identity");
  G.identity = *id;
  if (auto bad = group_violation(G)) throw std::invalid_argument("not a group: " + *bad);
  return G;
}

using Character = std::vector<RootOfUnity>;

inline bool is_character(const FiniteGroup& G, const Character& chi) {
  if (chi.size() != G.order()) return false;
  for (std::size_t a = 0; a < G.order(); ++a)
    for (std::size_t b = 0; b < G.order(); ++b)
      if (!(chi[G.mul(a, b)] == chi[a] * chi[b])) return false;
  return true;
}

/// All homomorphisms G -> K^*; values are roots of unity of order dividing
/// the exponent of G. Generators are picked greedily and every assignment of
/// their values is extended along words and kept when consistent.
inline std::vector<Character> characters(const FiniteGroup& G) {
  const std::size_t n = G.order();
  const std::size_t e = G.exponent();
  std::vector<std::size_t> gens;
  auto span = [&](const std::vector<std::size_t>& gs) {
    std::vector<bool> in(n, false);
    std::vector<std::size_t> stack{G.identity};
    in[G.identity] = true;
    while (!stack.empty()) {
      auto a = stack.back();
      stack.pop_back();
      for (auto g : gs) {
        auto b = G.mul(a, g);
        if (!in[b]) {
          in[b] = true;
          stack.push_back(b);
        }
      }
    }
    return in;
  };
  for (std::size_t a = 0; a < n; ++a)
    if (!span(gens)[a]) gens.push_back(a);

  std::vector<Character> out;
  std::vector<long long> exps(gens.size(), 0);
  while (true) {
    std::vector<std::optional<RootOfUnity>> val(n);
    val[G.identity] = RootOfUnity(1, 0);
    std::vector<std::size_t> stack{G.identity};
    bool ok = true;
    while (!stack.empty() && ok) {
      auto a = stack.back();
      stack.pop_back();
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        auto b = G.mul(a, gens[i]);
        RootOfUnity v = *val[a] * RootOfUnity(e, exps[i]);
        if (!val[b]) {
          val[b] = v;
          stack.push_back(b);
        } else if (!(*val[b] == v)) {
          ok = false;
        }
      }
    }
    if (ok) {
      Character chi;
      for (auto& v : val) chi.push_back(*v);
      if (is_character(G, chi)) out.push_back(std::move(chi));
    }
    std::size_t i = 0;
    while (i < exps.size() && ++exps[i] == static_cast<long long>(e)) exps[i++] = 0;
    if (i == exps.size()) break;
  }
  return out;
}

/// Group together with a distinguished element g and a character chi.
struct FiniteGroupData {
  FiniteGroup group;
  std::size_t g = 0;
  Character chi;

  std::size_t order() const { return group.order(); }
  std::size_t n() const { return group.element_order(g); }
  RootOfUnity q() const { return chi.at(g); }
};

/// Checks the group axioms, that g is central and that chi is a character.
inline std::optional<std::string> group_data_violation(const FiniteGroupData& d) {
  if (auto bad = group_violation(d.group)) return bad;
  if (d.g >= d.order()) return "distinguished element out of range";
  if (!d.group.is_central(d.g)) return "g is not central";
  if (!is_character(d.group, d.chi)) return "chi is not a character";
  return std::nullopt;
}

/// A character of G with chi(g) = q, if one exists.
inline std::optional<Character> character_with_value(const FiniteGroup& G, std::size_t g, const RootOfUnity& q) {
  for (auto& chi : characters(G))
    if (chi[g] == q) return chi;
  return std::nullopt;
}

}  // namespace qcf

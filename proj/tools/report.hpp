#pragma once

#include "json.hpp"
#include "qcf/qcf.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace qcf::cli {

using Json = nlohmann::ordered_json;

struct Options {
  std::size_t bound = default_bruteforce_bound();
  std::optional<long> margin;
  std::uint64_t seed = 0;
  std::vector<std::string> targets;
};

/// Largest product poset the tensor command accepts.
inline constexpr std::size_t tensor_product_limit = 144;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json scalar(const Scalar& s) { return s.to_string(); }

inline Json root(const RootOfUnity& r) { return r.order() == 1 ? std::string("1") : r.to_string(); }

template <class Label, class Name>
Json element(const Element<Label>& e, Name&& name) {
  Json out = Json::object();
  for (const auto& [l, c] : e) out[name(l)] = scalar(c);
  return out;
}

template <class Label, class Name>
Json tensor(const Tensor<Label>& t, Name&& name) {
  Json out = Json::array();
  for (const auto& [pair, c] : t) out.push_back(Json::array({name(pair.first), name(pair.second), scalar(c)}));
  return out;
}

inline Json strings(const std::vector<std::string>& v) { return Json(v); }

inline Json windows(const WindowedCoalgebra& wc) {
  Json out = Json::array();
  for (const auto& w : wc.windows) out.push_back({{"family", to_string(w.tag)}, {"window", {w.lo, w.hi}}});
  return out;
}

inline bool wanted(const Options& o, const std::string& name) {
  return o.targets.empty() || std::find(o.targets.begin(), o.targets.end(), name) != o.targets.end();
}

inline void check_targets(const dsl::Model& m, const Options& o) {
  for (const auto& t : o.targets) {
    bool known = dsl::Model::find(m.coalgebras, t) || dsl::Model::find(m.hopfs, t) || dsl::Model::find(m.posets, t) ||
                 dsl::Model::find(m.quivers, t);
    if (!known) throw InputError("unknown target '" + t + "'");
  }
}

// ---------------------------------------------------------------------------
// validate

inline Json validate_report(const dsl::Model& m, const Options& o) {
  Json out = Json::array();
  for (const auto& [name, q] : m.quivers) {
    if (!wanted(o, name)) continue;
    out.push_back({{"name", name},
                   {"kind", "quiver"},
                   {"vertices", q.vertex_count()},
                   {"arrows", q.arrow_count()},
                   {"acyclic", !q.has_cycle()}});
  }
  for (const auto& [name, p] : m.posets) {
    if (!wanted(o, name)) continue;
    std::size_t covers = 0;
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b) covers += p.covers(a, b);
    out.push_back({{"name", name}, {"kind", "poset"}, {"elements", p.size()}, {"covers", covers}});
  }
  for (const auto& [name, v] : m.coalgebras) {
    if (!wanted(o, name)) continue;
    if (const auto* wc = std::get_if<WindowedCoalgebra>(&v)) {
      out.push_back({{"name", name},
                     {"kind", "path"},
                     {"dimension", wc->coalgebra.dimension()},
                     {"subpath_closed", validate(wc->coalgebra).empty()},
                     {"windows", windows(*wc)}});
    } else {
      const auto& iv = std::get<dsl::IncidenceValue>(v);
      out.push_back({{"name", name},
                     {"kind", "incidence"},
                     {"dimension", iv.coalgebra.dimension()},
                     {"interval_closed", validate(iv.coalgebra).empty()},
                     {"windowed", iv.interior.has_value()}});
    }
  }
  for (const auto& [name, h] : m.hopfs) {
    if (!wanted(o, name)) continue;
    out.push_back({{"name", name},
                   {"kind", "hopf"},
                   {"group_order", h.data.order()},
                   {"n", h.data.n()},
                   {"s", h.s},
                   {"dimension", h.data.order() * (h.s + 1)}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// forms

namespace detail {

inline std::vector<Scalar> random_coefficients(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(1, 9);
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(static_cast<long long>(d(rng) * (rng() % 2 ? 1 : -1)));
  return out;
}

inline std::vector<Scalar> unit_vector(std::size_t n, std::size_t i) {
  std::vector<Scalar> v(n, Scalar(0));
  v[i] = Scalar(1);
  return v;
}

/// Shared tail of both forms reports: the direct checker on the closed forms,
/// radicals of the all-ones form and the brute-force comparison.
template <class Build>
void forms_common(Json& j, const CoalgebraTable& table, std::size_t params, Build&& build, const Options& o,
                  std::mt19937_64& rng) {
  const BilinearForm ones = build(std::vector<Scalar>(params, Scalar(1)));
  const BilinearForm random = build(random_coefficients(rng, params));
  j["closed_forms_balanced"] = !is_balanced(table, ones) && !is_balanced(table, random);
  const Radicals rad = radicals(ones);
  j["all_ones_form"] = {{"left_radical_dim", rad.left.size()}, {"right_radical_dim", rad.right.size()}};
  if (table.size() > o.bound) {
    j["nullspace_dim"] = nullptr;
    j["agree"] = nullptr;
    j["skipped"] = "dimension " + std::to_string(table.size()) + " exceeds the bound " + std::to_string(o.bound);
    return;
  }
  const BalancedSpace space = balanced_space_bruteforce(table, o.bound);
  std::vector<BilinearForm> units;
  for (std::size_t i = 0; i < params; ++i) units.push_back(build(unit_vector(params, i)));
  const bool spans = space.dimension() == params && forms_rank(units) == params && forms_in_span(space, units);
  j["nullspace_dim"] = space.dimension();
  j["agree"] = spans;
}

}  // namespace detail

inline Json forms_report(const dsl::Model& m, const Options& o) {
  Json out = Json::array();
  std::mt19937_64 rng(o.seed);
  for (const auto& [name, v] : m.coalgebras) {
    if (!wanted(o, name)) continue;
    Json j{{"name", name}};
    if (const auto* wc = std::get_if<WindowedCoalgebra>(&v)) {
      const auto& c = wc->coalgebra;
      const FSet f = compute_F(c);
      j["kind"] = "path";
      j["dimension"] = c.dimension();
      j["F_size"] = f.size();
      Json members = Json::array();
      for (const auto& mem : f.members) members.push_back(c.label(mem.d));
      j["F"] = members;
      detail::forms_common(
          j, to_table(c), f.size(), [&](const std::vector<Scalar>& a) { return form_from_F(c, f, a); }, o, rng);
    } else {
      const auto& c = std::get<dsl::IncidenceValue>(v).coalgebra;
      const IncidenceFormParam params = compute_incidence_params(c);
      const auto marked = params.marked();
      j["kind"] = "incidence";
      j["dimension"] = c.dimension();
      j["F_size"] = marked.size();
      Json classes = Json::array();
      for (const auto& [pi, k] : marked) {
        const auto& pp = params.D[pi];
        std::vector<std::string> members;
        for (auto z : pp.classes[k].members) members.push_back(c.poset().name(z));
        classes.push_back({{"pair", {c.poset().name(pp.x), c.poset().name(pp.y)}}, {"class", members}});
      }
      j["marked_classes"] = classes;
      detail::forms_common(
          j, to_table(c), marked.size(), [&](const std::vector<Scalar>& a) { return form_from_params(c, params, a); }, o,
          rng);
    }
    out.push_back(std::move(j));
  }
  return out;
}

// ---------------------------------------------------------------------------
// frobenius

namespace detail {

inline Json frobenius_common(const FrobeniusReport& rep, const ConditionD& d) {
  Json j;
  j["left_coFrobenius"] = to_string(rep.left);
  j["right_coFrobenius"] = to_string(rep.right);
  j["left_witness"] = rep.left_witness ? Json(*rep.left_witness) : Json(nullptr);
  j["right_witness"] = rep.right_witness ? Json(*rep.right_witness) : Json(nullptr);
  Json verts = Json::array();
  for (const auto& v : rep.vertices) {
    Json x{{"vertex", v.name},
           {"r", v.r ? Json(*v.r) : Json(nullptr)},
           {"l", v.l ? Json(*v.l) : Json(nullptr)},
           {"left_ok", v.left_ok},
           {"right_ok", v.right_ok}};
    if (!v.left_ok) x["left_reason"] = v.left_reason;
    if (!v.right_ok) x["right_reason"] = v.right_reason;
    if (rep.windowed) x["interior"] = v.interior;
    verts.push_back(std::move(x));
  }
  j["condition_c"] = verts;
  j["condition_d"] = {{"holds", d.holds},
                      {"failures", d.failures},
                      {"witness", d.witness ? Json(*d.witness) : Json(nullptr)}};
  if (rep.windowed) j["notes"] = rep.notes;
  return j;
}

}  // namespace detail

inline Json frobenius_report(const dsl::Model& m, const Options& o) {
  Json out = Json::array();
  for (const auto& [name, v] : m.coalgebras) {
    if (!wanted(o, name)) continue;
    Json j;
    if (const auto* wc = std::get_if<WindowedCoalgebra>(&v)) {
      const FrobeniusReport rep = analyze(*wc, o.margin);
      std::optional<std::set<std::size_t>> interior;
      if (!wc->windows.empty()) interior = interior_vertices(*wc, o.margin);
      const ConditionD d = check_condition_d(wc->coalgebra, compute_F(wc->coalgebra), interior);
      j = detail::frobenius_common(rep, d);
      j["kind"] = "path";
    } else {
      const auto& iv = std::get<dsl::IncidenceValue>(v);
      const FrobeniusReport rep = analyze(iv.coalgebra, iv.interior);
      const ConditionD d = check_condition_d_incidence(iv.coalgebra, compute_incidence_params(iv.coalgebra), iv.interior);
      j = detail::frobenius_common(rep, d);
      j["kind"] = "incidence";
    }
    Json named{{"name", name}};
    named.update(j);
    out.push_back(std::move(named));
  }
  return out;
}

// ---------------------------------------------------------------------------
// classify

inline std::string kind_name(Summand::Kind k) {
  switch (k) {
    case Summand::Kind::Point: return "point";
    case Summand::Kind::Cycle: return "cycle";
    case Summand::Kind::AInf: return "Ainf";
    case Summand::Kind::A0Inf: return "A0inf";
  }
  return "?";
}

inline Json classify_report(const dsl::Model& m, const Options& o, Json& classes) {
  Json out = Json::array();
  std::map<std::string, std::vector<std::string>> by_key;
  for (const auto& [name, v] : m.coalgebras) {
    if (!wanted(o, name)) continue;
    Json j{{"name", name}};
    const auto* wc = std::get_if<WindowedCoalgebra>(&v);
    if (!wc) {
      j["kind"] = "incidence";
      j["classified"] = false;
      j["reason"] = "classification covers path subcoalgebras";
      out.push_back(std::move(j));
      continue;
    }
    j["kind"] = "path";
    const ClassifyResult r = classify(*wc);
    j["classified"] = r.ok();
    if (!r.ok()) {
      j["failure"] = {{"kind", r.failure->kind}, {"vertex", r.failure->vertex}, {"detail", r.failure->detail}};
      out.push_back(std::move(j));
      continue;
    }
    const Classification& cl = *r.classification;
    const std::string key = canonical_key(cl);
    by_key[key].push_back(name);
    j["canonical_key"] = key;
    j["window_limited"] = cl.window_limited();
    std::vector<std::vector<std::string>> members(cl.summands.size());
    for (const auto& [vertex, pos] : cl.summand_of) members[pos].push_back(vertex);
    Json summands = Json::array();
    for (std::size_t i = 0; i < cl.summands.size(); ++i) {
      const Summand& s = cl.summands[i];
      Json x{{"key", s.key()}, {"type", kind_name(s.kind)}};
      if (s.kind == Summand::Kind::Cycle) {
        x["n"] = s.n;
        x["s"] = s.s;
      }
      x["vertices"] = members[i];
      summands.push_back(std::move(x));
    }
    j["summands"] = summands;
    const HopfAdmissibility h = admits_hopf(cl);
    Json adm{{"family", to_string(h.family)}};
    if (h.n) adm["n"] = *h.n;
    if (h.s) adm["s"] = *h.s;
    adm["reason"] = h.reason;
    j["admits_hopf"] = adm;
    out.push_back(std::move(j));
  }
  classes = Json::array();
  for (const auto& [key, names] : by_key) classes.push_back({{"canonical_key", key}, {"members", names}});
  return out;
}

// ---------------------------------------------------------------------------
// embed and tensor

inline Json embed_report(const dsl::Model& m, const Options& o) {
  Json out = Json::array();
  for (const auto& [name, v] : m.coalgebras) {
    if (!wanted(o, name)) continue;
    const auto* iv = std::get_if<dsl::IncidenceValue>(&v);
    if (!iv) continue;
    const auto& c = iv->coalgebra;
    const EmbeddingReport rep = embed(c);
    Json images = Json::array();
    for (std::size_t i = 0; i < c.basis().size(); ++i) {
      std::vector<std::string> paths;
      for (const auto& [p, coeff] : rep.images[i]) paths.push_back(path_label(rep.quiver, p));
      images.push_back({{"segment", c.label(c.basis()[i])}, {"paths", paths}});
    }
    Json arrows = Json::array();
    for (std::size_t a = 0; a < rep.quiver.arrow_count(); ++a) arrows.push_back(rep.quiver.arrow(a).id);
    out.push_back({{"name", name},
                   {"hasse_quiver", {{"vertices", rep.quiver.vertices()}, {"arrows", arrows}}},
                   {"morphism", rep.morphism},
                   {"counit_compatible", rep.counit_compatible},
                   {"injective", rep.injective},
                   {"image_rank", rep.image_rank},
                   {"path_subcoalgebra_image", rep.path_subcoalgebra_image},
                   {"first_failure", rep.first_failure ? Json(c.label(*rep.first_failure)) : Json(nullptr)},
                   {"images", images}});
  }
  return out;
}

inline Json tensor_report(const dsl::Model& m, const Options& o) {
  std::vector<std::pair<std::string, const Poset*>> ps;
  for (const auto& [name, p] : m.posets)
    if (wanted(o, name)) ps.emplace_back(name, &p);
  if (ps.size() < 2) throw InputError("tensor needs at least two posets");
  Json out = Json::array();
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    const auto& [xn, x] = ps[i];
    const auto& [yn, y] = ps[i + 1];
    if (x->size() * y->size() > tensor_product_limit)
      throw InputError("product of '" + xn + "' and '" + yn + "' has " + std::to_string(x->size() * y->size()) +
                       " elements; the limit is " + std::to_string(tensor_product_limit));
    const TensorIsoReport rep = tensor_iso_check(*x, *y);
    out.push_back({{"name", xn + " x " + yn},
                   {"product_size", rep.product_size},
                   {"product_segments", rep.product_segments},
                   {"tensor_dimension", rep.tensor_dimension},
                   {"bijective", rep.bijective},
                   {"comul_compatible", rep.comul_compatible},
                   {"counit_compatible", rep.counit_compatible},
                   {"holds", rep.holds()}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// hopf

inline HopfTable build(const dsl::HopfSpec& h) { return build_Hn(h.s, h.q, h.data, h.alpha); }

inline Json hopf_header(const std::string& name, const dsl::HopfSpec& h) {
  Json chi = Json::object();
  for (std::size_t k = 0; k < h.data.order(); ++k) chi[h.data.group.labels[k]] = root(h.data.chi[k]);
  return {{"name", name},
          {"s", h.s},
          {"q", root(h.q)},
          {"n", h.data.n()},
          {"group_order", h.data.order()},
          {"g", h.data.group.labels[h.data.g]},
          {"chi", chi},
          {"alpha", scalar(h.alpha)}};
}

inline Json hopf_report(const dsl::Model& m, const Options& o) {
  Json out = Json::array();
  for (const auto& [name, h] : m.hopfs) {
    if (!wanted(o, name)) continue;
    const HopfTable H = build(h);
    auto label = [&](std::size_t b) { return H.labels[b]; };
    Json j = hopf_header(name, h);
    j["dimension"] = H.dimension();
    j["basis"] = H.labels;
    const std::size_t x = hn_index(h.data.group.identity, 1, h.s);
    const std::size_t g = hn_index(h.data.g, 0, h.s);
    HElem xpow(H.unit);
    for (unsigned k = 0; k <= h.s; ++k) xpow = multiply(H, xpow, HElem(x));
    j["relations"] = {{"x^(s+1)", element(xpow, label)},
                      {"x g", element(H.product[x][g], label)},
                      {"g x", element(H.product[g][x], label)}};
    j["coproduct"] = {{"x", tensor(H.coproduct[x], label)}, {"g", tensor(H.coproduct[g], label)}};
    Json s = Json::object();
    for (std::size_t b = 0; b < H.dimension(); ++b) s[H.labels[b]] = element(H.antipode[b], label);
    j["antipode"] = s;
    out.push_back(std::move(j));
  }
  return out;
}

inline Json hopf_verify_report(const dsl::Model& m, const Options& o) {
  Json out = Json::array();
  for (const auto& [name, h] : m.hopfs) {
    if (!wanted(o, name)) continue;
    const HopfTable H = build(h);
    const HopfVerification v = verify_hopf(H);
    Json j = hopf_header(name, h);
    j["dimension"] = H.dimension();
    Json checks = Json::array();
    for (const auto& c : v.checks) {
      Json x{{"axiom", c.name}, {"passed", c.passed}};
      if (!c.passed) x["at"] = c.detail;
      checks.push_back(std::move(x));
    }
    j["checks"] = checks;
    j["ok"] = v.ok();
    std::vector<HElem> id;
    for (std::size_t b = 0; b < H.dimension(); ++b) id.emplace_back(b);
    Json order = nullptr;
    for (unsigned k = 1; k <= 64; ++k)
      if (antipode_power(H, k) == id) {
        order = k;
        break;
      }
    j["antipode_order"] = order;
    out.push_back(std::move(j));
  }
  return out;
}

inline Json diagnostics(const std::vector<dsl::Diagnostic>& ds) {
  Json out = Json::array();
  for (const auto& d : ds)
    out.push_back({{"line", d.pos.line}, {"column", d.pos.column}, {"kind", d.kind}, {"message", d.message}});
  return out;
}

}  // namespace qcf::cli

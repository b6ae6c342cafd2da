// Acceptance suite: one PASS/FAIL line per criterion.

#include "qcf/qcf.hpp"
#include "support/generators.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qcf;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Tally {
  std::size_t total = 0;
  std::size_t good = 0;
  std::string first_bad;

  void record(bool ok, const std::string& what) {
    ++total;
    if (ok)
      ++good;
    else if (first_bad.empty())
      first_bad = what;
  }
  bool all() const { return good == total; }
  std::string summary() const {
    std::string s = std::to_string(good) + "/" + std::to_string(total);
    if (!first_bad.empty()) s += "; first failure: " + first_bad;
    return s;
  }
};

std::vector<Scalar> unit(std::size_t n, std::size_t i) {
  std::vector<Scalar> v(n, Scalar(0));
  v[i] = Scalar(1);
  return v;
}

std::vector<Scalar> random_coefficients(std::mt19937_64& rng, std::size_t n) {
  std::vector<Scalar> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(static_cast<long long>(gen::uniform(rng, 1, 19)) - 10);
  return v;
}

/// Brute-force dimension equals the parameter count, each unit closed form
/// and a random combination pass the direct checker, and the unit forms span
/// the brute-force space.
template <class Build>
bool bijection_holds(const CoalgebraTable& table, std::size_t params, Build&& build, std::mt19937_64& rng,
                     std::size_t bound) {
  const BalancedSpace space = balanced_space_bruteforce(table, bound);
  if (space.dimension() != params) return false;
  std::vector<BilinearForm> forms;
  for (std::size_t i = 0; i < params; ++i) forms.push_back(build(unit(params, i)));
  forms.push_back(build(random_coefficients(rng, params)));
  for (const auto& f : forms)
    if (is_balanced(table, f)) return false;
  forms.pop_back();
  return forms_rank(forms) == params && forms_in_span(space, forms);
}

struct SideTally {
  std::size_t instances = 0;
  std::size_t left_agree = 0;
  std::size_t right_agree = 0;
  std::size_t cd_agree = 0;
  std::string cd_first_bad;
};

void record_sides(SideTally& t, bool condition_c, bool condition_d, const BilinearForm& ones, const std::string& what) {
  ++t.instances;
  const Radicals r = radicals(ones);
  t.left_agree += condition_c == r.left.empty();
  t.right_agree += condition_c == r.right.empty();
  if (condition_c == condition_d)
    ++t.cd_agree;
  else if (t.cd_first_bad.empty())
    t.cd_first_bad = what;
}

std::string describe(const PathSubcoalgebra& c) {
  std::ostringstream out;
  out << c.quiver().vertex_count() << " vertices, " << c.quiver().arrow_count() << " arrows, |B|=" << c.dimension();
  return out.str();
}

// Criteria 1 to 3 share their instances.
struct FormsSweep {
  Tally path, incidence;
  SideTally sides;
};

FormsSweep run_forms_sweep() {
  FormsSweep s;
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    PathSubcoalgebra c = trial % 4 == 3 ? gen::random_cofrobenius_sum(rng, 25) : gen::random_path_subcoalgebra(rng, 25);
    const FSet f = compute_F(c);
    const CoalgebraTable table = to_table(c);
    s.path.record(bijection_holds(table, f.size(), [&](const auto& a) { return form_from_F(c, f, a); }, rng, 25),
                  "trial " + std::to_string(trial) + " (" + describe(c) + ")");
    const bool cc = analyze(c).left == Verdict::Yes;
    const bool dd = check_condition_d(c, f).holds;
    record_sides(s.sides, cc, dd, form_from_F(c, f), "path trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 200; ++trial) {
    Poset P = gen::random_poset(rng, 10);
    IncidenceSubcoalgebra c = trial % 3 == 0 ? full_incidence_coalgebra(P) : gen::random_incidence_subcoalgebra(rng, P);
    const IncidenceFormParam params = compute_incidence_params(c);
    const CoalgebraTable table = to_table(c);
    s.incidence.record(
        bijection_holds(table, params.marked_count(), [&](const auto& a) { return form_from_params(c, params, a); }, rng,
                        64),
        "trial " + std::to_string(trial) + " (" + std::to_string(P.size()) + " elements, |B|=" +
            std::to_string(c.dimension()) + ")");
    const bool cc = analyze(c).left == Verdict::Yes;
    const bool dd = check_condition_d_incidence(c, params).holds;
    record_sides(s.sides, cc, dd, form_from_params(c, params), "incidence trial " + std::to_string(trial));
  }
  return s;
}

Outcome criterion_equivalence(const FormsSweep& s) {
  const auto& t = s.sides;
  const bool left_ok = t.left_agree == t.instances, right_ok = t.right_agree == t.instances;
  std::string side = right_ok && left_ok ? "S=right (left also consistent; the instances do not separate the sides)"
                     : right_ok          ? "S=right"
                     : left_ok           ? "S=left"
                                         : "no consistent side";
  std::string detail = "(c)<=>(d) " + std::to_string(t.cd_agree) + "/" + std::to_string(t.instances) + "; radical test: left " +
                       std::to_string(t.left_agree) + ", right " + std::to_string(t.right_agree) + "; " + side;
  if (!t.cd_first_bad.empty()) detail += "; first (c)/(d) mismatch: " + t.cd_first_bad;
  return {t.cd_agree == t.instances && (left_ok || right_ok), detail};
}

Outcome criterion_full_coalgebras() {
  std::mt19937_64 rng(77);
  Tally t;
  for (int trial = 0; trial < 50; ++trial) {
    Quiver q = gen::random_quiver(rng, 6, trial % 5 == 0 ? 0 : 8, false);
    const bool yes = analyze(full_path_coalgebra(q)).left == Verdict::Yes;
    t.record(yes == (q.arrow_count() == 0), "path trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 50; ++trial) {
    Poset P = gen::random_poset(rng, 10, trial % 5 == 0 ? 0.0 : -1.0);
    bool equality = true;
    for (std::size_t a = 0; a < P.size(); ++a)
      for (std::size_t b = 0; b < P.size(); ++b) equality = equality && !P.less(a, b);
    const bool yes = analyze(full_incidence_coalgebra(P)).left == Verdict::Yes;
    t.record(yes == equality, "incidence trial " + std::to_string(trial));
  }
  return {t.all(), t.summary() + " (path and incidence)"};
}

Outcome criterion_canonical_families() {
  Tally t;
  for (unsigned n = 1; n <= 8; ++n)
    for (unsigned s = 1; s <= 4; ++s) {
      const WindowedFamily f = WindowedFamily::cycle(n, s);
      const FrobeniusReport r = analyze(f);
      const bool ok = r.left == Verdict::Yes && r.right == Verdict::Yes && build_family(f).dimension() == n * (s + 1);
      t.record(ok, "C(" + std::to_string(n) + "," + std::to_string(s) + ")");
    }
  for (long s = 1; s <= 4; ++s) {
    const FrobeniusReport a = analyze(WindowedFamily::constant_offset(FamilyTag::AInf, -10, 10, s));
    t.record(a.left == Verdict::Yes && a.right == Verdict::YesOnWindow, "Ainf s=" + std::to_string(s));
    const FrobeniusReport h = analyze(WindowedFamily::constant_offset(FamilyTag::A0Inf, 0, 12, s));
    t.record(h.left == Verdict::Yes && h.right == Verdict::No, "A0inf s=" + std::to_string(s));
  }
  return {t.all(), t.summary() + " (32 cycles, 4 lines, 4 half-lines)"};
}

WindowedFamily random_line(std::mt19937_64& rng, FamilyTag tag) {
  while (true) {
    const long lo = tag == FamilyTag::AInf ? -static_cast<long>(gen::uniform(rng, 0, 5)) : 0;
    const long hi = lo + static_cast<long>(gen::uniform(rng, 10, 16));
    std::vector<long> r;
    long cur = lo + static_cast<long>(gen::uniform(rng, 1, 3));
    const bool constant = gen::coin(rng, 0.5);
    const long step = constant ? 1 : 0;
    for (long k = lo; k <= hi; ++k) {
      r.push_back(cur);
      cur += constant ? step : static_cast<long>(gen::uniform(rng, 1, 2));
    }
    WindowedFamily f = WindowedFamily::line(tag, lo, hi, r);
    if (!family_violation(f) && !summand_of(f).offsets.empty()) return f;
  }
}

Outcome criterion_classification_roundtrip() {
  std::mt19937_64 rng(606);
  Tally t;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SummandSource> parts;
    std::vector<Summand> expected;
    const std::size_t count = gen::uniform(rng, 1, 5);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t pick = gen::uniform(rng, 0, 9);
      if (pick < 2) {
        Quiver q;
        q.add_vertex("p");
        parts.emplace_back(PathSubcoalgebra(q, {vertex_path(0)}));
        expected.push_back(Summand::point());
      } else if (pick < 7) {
        const auto n = static_cast<unsigned>(gen::uniform(rng, 1, 6));
        const auto s = static_cast<unsigned>(gen::uniform(rng, 1, 3));
        parts.emplace_back(WindowedFamily::cycle(n, s));
        expected.push_back(Summand::cycle(n, s));
      } else {
        const WindowedFamily f = random_line(rng, pick < 9 ? FamilyTag::AInf : FamilyTag::A0Inf);
        parts.emplace_back(f);
        expected.push_back(summand_of(f));
      }
    }
    const ClassifyResult r = classify(windowed_sum(parts));
    const std::string want = canonical_key(expected);
    const std::string got = r.ok() ? canonical_key(*r.classification) : "failure: " + r.failure->kind;
    t.record(got == want, "trial " + std::to_string(trial) + ": expected " + want + ", got " + got);
  }
  return {t.all(), t.summary()};
}

Outcome criterion_hopf_grid() {
  struct Row {
    unsigned n, s;
    RootOfUnity q;
  };
  const std::vector<Row> rows = {{2, 1, RootOfUnity(2, 1)},
                                 {4, 1, RootOfUnity(2, 1)},
                                 {3, 2, RootOfUnity(3, 1)},
                                 {6, 2, RootOfUnity(3, 1)},
                                 {4, 3, RootOfUnity(4, 1)}};
  Tally t;
  std::vector<std::string> skipped;
  for (const auto& row : rows) {
    const std::string tag = "(" + std::to_string(row.n) + "," + std::to_string(row.s) + "," + row.q.to_string() + ")";
    struct Candidate {
      std::string name;
      FiniteGroup G;
    };
    const std::vector<Candidate> groups = {{"C" + std::to_string(row.n), cyclic_group(row.n)},
                                           {"C" + std::to_string(row.n) + "xC2", product_group(cyclic_group(row.n), cyclic_group(2))},
                                           {"D" + std::to_string(row.n), dihedral_group(row.n)}};
    for (const auto& [gname, G] : groups) {
      std::size_t built = 0;
      const auto chars = characters(G);
      for (std::size_t g = 0; g < G.order(); ++g) {
        if (!G.is_central(g) || G.element_order(g) != row.n) continue;
        for (const auto& chi : chars) {
          if (!(chi[g] == row.q)) continue;
          const bool trivial_power =
              std::all_of(chi.begin(), chi.end(), [&](const RootOfUnity& v) { return v.pow(row.s + 1) == RootOfUnity(1, 0); });
          for (int a = 0; a <= (trivial_power ? 1 : 0); ++a) {
            const HopfTable H = build_Hn(row.s, row.q, FiniteGroupData{G, g, chi}, Scalar(a));
            const HopfVerification v = verify_hopf(H);
            std::string what = tag + " " + gname + " g=" + G.labels[g] + " alpha=" + std::to_string(a);
            if (!v.ok()) what += ": " + v.first_failure()->name + " at " + v.first_failure()->detail;
            t.record(v.ok(), what);
            ++built;
          }
        }
      }
      if (built == 0) skipped.push_back(gname + " for " + tag);
    }
  }
  std::string detail = t.summary() + " tuples verified";
  if (!skipped.empty()) {
    detail += "; no central g of order n with chi(g)=q in:";
    for (const auto& s : skipped) detail += " " + s + ";";
    detail.pop_back();
  }
  return {t.all() && t.total > 0, detail};
}

Outcome criterion_line_product() {
  Tally t;
  for (unsigned s = 1; s <= 3; ++s) {
    const RootOfUnity q(s + 1, 1);
    const Scalar qs = q.to_scalar();
    for (int a = 0; a <= 1; ++a) {
      const Scalar alpha(a);
      std::vector<AInfLabel> labels;
      for (long i = -6; i <= 6; ++i)
        for (unsigned u = 0; u <= s; ++u) labels.push_back({i, u});
      std::map<std::pair<AInfLabel, AInfLabel>, Element<AInfLabel>> cache;
      auto basis_mul = [&](const AInfLabel& l, const AInfLabel& m) -> const Element<AInfLabel>& {
        auto it = cache.find({l, m});
        if (it == cache.end()) it = cache.emplace(std::make_pair(l, m), product_Ainf(s, q, alpha, l, m)).first;
        return it->second;
      };
      auto mul = [&](const Element<AInfLabel>& x, const Element<AInfLabel>& y) {
        Element<AInfLabel> out;
        for (const auto& [l, c] : x)
          for (const auto& [m, d] : y) out += (c * d) * basis_mul(l, m);
        return out;
      };
      auto tmul = [&](const Tensor<AInfLabel>& x, const Tensor<AInfLabel>& y) {
        Tensor<AInfLabel> out;
        for (const auto& [l, c] : x)
          for (const auto& [m, d] : y)
            for (const auto& [p1, e1] : basis_mul(l.first, m.first))
              for (const auto& [p2, e2] : basis_mul(l.second, m.second)) out.add({p1, p2}, c * d * e1 * e2);
        return out;
      };
      auto comul = [&](const Element<AInfLabel>& x) {
        Tensor<AInfLabel> out;
        for (const auto& [l, c] : x) out += c * comul_Ainf(l);
        return out;
      };
      auto shift = [](const Element<AInfLabel>& x, long h) {
        Element<AInfLabel> out;
        for (const auto& [l, c] : x) out.add({l.i + h, l.u}, c);
        return out;
      };
      const std::string tag = "s=" + std::to_string(s) + " alpha=" + std::to_string(a);
      bool assoc = true, mult = true, trans = true;
      std::string where;
      for (const auto& x : labels)
        for (const auto& y : labels) {
          const Element<AInfLabel> ex(x), ey(y);
          const Element<AInfLabel> xy = mul(ex, ey);
          if (mult && !(comul(xy) == tmul(comul_Ainf(x), comul_Ainf(y)))) {
            mult = false;
            where = tag + " comultiplication at " + to_string(x) + "*" + to_string(y);
          }
          for (long h = -6; h <= 6 && trans; ++h) {
            const Element<AInfLabel> left = mul(Element<AInfLabel>(AInfLabel{x.i + h, x.u}), ey);
            const Element<AInfLabel> right = mul(ex, Element<AInfLabel>(AInfLabel{y.i + h, y.u}));
            const Scalar twist = qs.pow(((h % static_cast<long>(s + 1)) + static_cast<long>(s + 1)) * x.u);
            if (!(left == shift(xy, h)) || !(right == twist * shift(xy, h))) {
              trans = false;
              where = tag + " translation by " + std::to_string(h) + " at " + to_string(x) + "*" + to_string(y);
            }
          }
          for (const auto& z : labels) {
            if (!assoc) break;
            const Element<AInfLabel> ez(z);
            if (!(mul(xy, ez) == mul(ex, mul(ey, ez)))) {
              assoc = false;
              where = tag + " associativity at " + to_string(x) + "," + to_string(y) + "," + to_string(z);
            }
          }
        }
      t.record(assoc && mult && trans, where);
    }
  }
  return {t.all(), t.summary() + " (s, alpha) settings: associativity, comultiplicativity and translation on i,j,k in [-6,6]"};
}

Outcome criterion_coalgebra_iso() {
  Tally t;
  struct Row {
    unsigned n, s;
    int alpha;
  };
  for (const auto& r : std::vector<Row>{{2, 1, 0}, {4, 1, 1}, {6, 2, 0}}) {
    const CoalgebraIsoReport rep = verify_coalgebra_iso_Cn(r.n, r.s, RootOfUnity(r.s + 1, 1), Scalar(r.alpha));
    t.record(rep.holds(), "(" + std::to_string(r.n) + "," + std::to_string(r.s) + "," + std::to_string(r.alpha) +
                              "): " + rep.first_failure.value_or(rep.bijective ? "?" : "not bijective"));
  }
  return {t.all(), t.summary() + " parameter triples including the pulled-back product"};
}

Outcome criterion_embedding_tensor() {
  std::mt19937_64 rng(1001);
  Tally e, x;
  for (int trial = 0; trial < 50; ++trial) {
    Poset P = gen::random_poset(rng, 12);
    const EmbeddingReport rep = embed(full_incidence_coalgebra(P));
    e.record(rep.morphism && rep.counit_compatible && rep.injective,
             "trial " + std::to_string(trial) + " (" + std::to_string(P.size()) + " elements)");
  }
  for (int trial = 0; trial < 20; ++trial) {
    Poset X = gen::random_poset(rng, 10);
    Poset Y = gen::random_poset(rng, std::max<std::size_t>(1, 60 / X.size()));
    const TensorIsoReport rep = tensor_iso_check(X, Y);
    x.record(rep.holds() && rep.product_size <= 60, "pair " + std::to_string(trial));
  }
  return {e.all() && x.all(), "embedding " + e.summary() + "; tensor " + x.summary()};
}

Outcome criterion_admits_hopf() {
  auto line = [](long offset) { return SummandSource(WindowedFamily::constant_offset(FamilyTag::AInf, 0, 14, offset)); };
  auto point = [] {
    Quiver q;
    q.add_vertex("p");
    return SummandSource(PathSubcoalgebra(q, {vertex_path(0)}));
  };
  auto cyc = [](unsigned n, unsigned s) { return SummandSource(WindowedFamily::cycle(n, s)); };
  struct Fixture {
    std::string name;
    std::vector<SummandSource> parts;
    HopfFamily expected;
  };
  const std::vector<Fixture> table = {
      {"three points", {point(), point(), point()}, HopfFamily::III},
      {"C(2,1)", {cyc(2, 1)}, HopfFamily::II},
      {"two C(4,1)", {cyc(4, 1), cyc(4, 1)}, HopfFamily::II},
      {"C(6,2)", {cyc(6, 2)}, HopfFamily::II},
      {"C(3,1)", {cyc(3, 1)}, HopfFamily::None},
      {"C(1,1)", {cyc(1, 1)}, HopfFamily::None},
      {"C(2,1) + C(4,1)", {cyc(2, 1), cyc(4, 1)}, HopfFamily::None},
      {"Ainf offset 2", {line(2)}, HopfFamily::I},
      {"two Ainf offset 1", {line(1), line(1)}, HopfFamily::I},
      {"Ainf offsets 1 and 2", {line(1), line(2)}, HopfFamily::None},
      {"A0inf offset 1", {SummandSource(WindowedFamily::constant_offset(FamilyTag::A0Inf, 0, 12, 1))}, HopfFamily::None},
      {"point + C(2,1)", {point(), cyc(2, 1)}, HopfFamily::None},
  };
  Tally t;
  for (const auto& f : table) {
    const ClassifyResult r = classify(windowed_sum(f.parts));
    const HopfFamily got = r.ok() ? admits_hopf(*r.classification).family : HopfFamily::None;
    t.record(r.ok() && got == f.expected, f.name + ": expected " + to_string(f.expected) + ", got " + to_string(got));
  }
  return {t.all(), t.summary() + " fixtures"};
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  FormsSweep sweep = run_forms_sweep();
  const double sweep_secs = std::chrono::duration<double>(clock::now() - start).count();

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Balanced-form bijection (path)", [&] { return Outcome{sweep.path.all(), sweep.path.summary() + " instances"}; }},
      {"Balanced-form bijection (incidence)",
       [&] { return Outcome{sweep.incidence.all(), sweep.incidence.summary() + " instances"}; }},
      {"Criterion equivalence", [&] { return criterion_equivalence(sweep); }},
      {"Full coalgebra sweep", criterion_full_coalgebras},
      {"Canonical families", criterion_canonical_families},
      {"Classification round-trip", criterion_classification_roundtrip},
      {"Hopf axiom grid", criterion_hopf_grid},
      {"Line product consistency", criterion_line_product},
      {"Coalgebra isomorphism", criterion_coalgebra_iso},
      {"Embedding and tensor", criterion_embedding_tensor},
      {"Admits-Hopf trichotomy", criterion_admits_hopf},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.passed;
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    if (i < 3) secs += sweep_secs / 3;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(),
                secs);
  }
  const double secs = std::chrono::duration<double>(clock::now() - start).count();
  std::printf("%d of %zu criteria failed (%.1f s)\n", failures, criteria.size(), secs);
  return failures == 0 ? 0 : 1;
}

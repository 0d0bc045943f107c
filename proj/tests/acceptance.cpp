// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "autfn/brown.hpp"
#include "autfn/generation.hpp"
#include "autfn/marked_graph.hpp"
#include "autfn/matrix_quotient.hpp"
#include "autfn/presentation.hpp"
#include "autfn/spine_quotient.hpp"
#include "random_auts.hpp"

using namespace autfn;

namespace {

// Wall-clock bounds in seconds. All numeric comparisons are exact.
constexpr double kSoundnessSeconds = 1.0;
constexpr double kGenerationSeconds = 10.0;
constexpr double kEnumerationSeconds = 60.0;
constexpr double kDerivationSeconds = 300.0;
constexpr int kGenerationDepth = 4;
constexpr int kCompareDepth = 6;
constexpr int kPropertyTrials = 1000;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const MarkedGraph& rep(const OrbitComplex& c, const std::string& id) {
  return c.vertices[static_cast<std::size_t>(c.vertex_index(id))].rep;
}

std::vector<FreeAut> conjugate_set(const std::vector<FreeAut>& g, const FreeAut& x) {
  std::vector<FreeAut> out;
  for (const FreeAut& s : g) out.push_back(compose(compose(x, s), invert(x)));
  std::sort(out.begin(), out.end());
  return out;
}

void relator_soundness(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 2; n <= 5; ++n) {
    const Presentation p = theorem1_presentation(n);
    o.require(verify(p, tautological_assignment(p, n), n).all_passed(), "n=" + std::to_string(n) + " relator fails");
  }
  const double t = seconds_since(t0);
  o.require(t < kSoundnessSeconds, "too slow");
  o.detail << "n=2..5 all relators are the identity, " << t << " s";
}

void generation_witness(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 2; n <= 4; ++n) {
    const std::vector<Witness> ws = find_witnesses(theorem1_generating_set(n), all_transvections(n), kGenerationDepth);
    const bool all = std::all_of(ws.begin(), ws.end(), [](const Witness& w) { return w.word && w.word->size() <= kGenerationDepth; });
    o.require(all, "n=" + std::to_string(n) + " transvection not reached");
  }
  const FreeAut target = transvection(1, 2, true, 4);
  o.require(compose(tau(2, 4), eta(4)) == target, "tau2 eta is not a1 -> a2 a1");
  const std::vector<Witness> w = find_witnesses(theorem1_generating_set(4), {target}, kGenerationDepth);
  o.require(w[0].word && w[0].word->size() == 2, "a1 -> a2 a1 not at depth 2");
  const double t = seconds_since(t0);
  o.require(t < kGenerationSeconds, "too slow");
  o.detail << "all transvections within depth " << kGenerationDepth << " for n=2,3,4, " << t << " s";
}

void quotient_counts(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  QuotientSummary s[5];
  for (int n = 2; n <= 4; ++n) {
    const OrbitComplex curated = figure3_data(n);
    o.require(validate_complex(curated).all_passed(), "curated n=" + std::to_string(n) + " invalid");
    s[n] = summarize(curated);
    o.require(summarize(enumerate_quotient(n)) == s[n], "curated and enumerated differ at n=" + std::to_string(n));
  }
  const double t = seconds_since(t0);
  o.require(s[4].vertices == 7 && s[4].edges == 13 && s[4].faces == 7, "n=4 counts");
  o.require(s[2].faces == 3, "n=2 triangles");
  o.require(s[3].faces == s[4].faces - 1, "n=3 not one triangle short");
  o.require(t < kEnumerationSeconds, "too slow");
  o.detail << "n=4 " << s[4].vertices << "/" << s[4].edges << "/" << s[4].faces << ", n=3 " << s[3].vertices << "/"
           << s[3].edges << "/" << s[3].faces << ", n=2 " << s[2].vertices << "/" << s[2].edges << "/" << s[2].faces
           << ", " << t << " s";
}

void stabilizer_orders(Outcome& o) {
  const OrbitComplex c = figure3_data(4);
  const FreeAut e = eta(4);
  const std::vector<std::pair<std::string, MarkedGraph>> vs{
      {"v0", rep(c, "v0")}, {"v1", rep(c, "v1")}, {"v2", rep(c, "v2")},           {"v3", rep(c, "v3")},
      {"v4", act(e, rep(c, "v3"))}, {"v5", rep(c, "v5")}, {"v6", rep(c, "v6")}, {"v7", act(e, rep(c, "v6"))},
      {"v8", rep(c, "v8")}};
  const std::vector<std::size_t> expected{384, 48, 32, 32, 32, 48, 16, 16, 72};
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::size_t got = stabilizer(vs[i].second).size();
    o.detail << (i ? " " : "") << got;
    o.require(got == expected[i], vs[i].first);
  }
}

void conjugation_identities(Outcome& o) {
  const OrbitComplex c = figure3_data(4);
  const FreeAut e = eta(4);
  const auto g3 = stabilizer(rep(c, "v3")), g6 = stabilizer(rep(c, "v6")), g5 = stabilizer(rep(c, "v5"));
  const auto g4 = stabilizer(act(e, rep(c, "v3"))), g7 = stabilizer(act(e, rep(c, "v6")));
  o.require(g3 == conjugate_set(g4, e), "G3 != eta G4 eta");
  o.require(g7 == conjugate_set(g6, e), "G7 != eta G6 eta");
  o.require(std::includes(g5.begin(), g5.end(), g6.begin(), g6.end()), "G6 not in G5");
  o.detail << "G3 = eta G4 eta, G7 = eta G6 eta, G6 in G5";
}

// Drops tree edge symbols (trivial by the tree relations) from an elimination line.
bool eliminates_to_eta(const std::vector<std::string>& trace, const OrbitComplex& c, const std::string& edge) {
  const std::string head = "eliminate t_" + edge + " = ";
  for (const std::string& line : trace) {
    if (line.rfind(head, 0) != 0) continue;
    std::istringstream in(line.substr(head.size(), line.find("  [") - head.size()));
    std::vector<std::string> rest;
    for (std::string tok; in >> tok;) {
      std::string sym = tok.substr(0, tok.find('^'));
      if (sym.rfind("t_", 0) == 0 && c.edges[static_cast<std::size_t>(c.edge_index(sym.substr(2)))].in_tree) continue;
      rest.push_back(tok);
    }
    return rest == std::vector<std::string>{"v1:eta"};
  }
  return false;
}

void end_to_end(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const OrbitComplex c = figure3_data(4);
  const Derivation d = derive(c);
  const double t = seconds_since(t0);
  o.require(verify(d.assembled, brown_assignment(c), 4).all_passed(), "assembled relator fails");
  o.require(verify(d.simplified, tautological_assignment(d.simplified, 4), 4).all_passed(), "(i)");
  const CompareReport r = compare(d.simplified, theorem1_presentation(4), 4, kCompareDepth);
  o.require(r.relators_hold, "(i) compare");
  o.require(r.generators_equivalent, "(ii)");
  o.require(r.reference_matched, "(iii)");
  o.require(eliminates_to_eta(d.trace, c, "e04"), "t_e04 != eta");
  o.require(eliminates_to_eta(d.trace, c, "e07"), "t_e07 != eta");
  o.require(t < kDerivationSeconds, "too slow");
  o.detail << d.simplified.relators.size() << " relators on " << d.simplified.generators.size()
           << " generators, (1)-(8) matched, t_e04 = t_e07 = eta, " << t << " s";
}

void finite_quotient(Outcome& o) {
  const std::size_t expected[] = {0, 0, 6, 168, 20160};
  for (int n = 2; n <= 4; ++n) {
    const Presentation p = theorem1_presentation(n);
    Assignment a = tautological_assignment(p, n);
    for (const Relator& r : p.relators) {
      for (const SymLetter& l : r.word) {
        if (!a.count(l.sym)) a.emplace(l.sym, *standard_symbol_value(l.sym, n));
      }
    }
    const std::size_t order = closure_order(generator_images(p, n, 2));
    o.detail << (n > 2 ? " " : "") << order;
    o.require(order == expected[n], "order n=" + std::to_string(n));
    o.require(verify_relations_matrix(p, abelianized_assignment(a), n, 2).all_passed(), "matrix relator n=" + std::to_string(n));
  }
}

void property_suites(Outcome& o) {
  std::mt19937 rng(20240601);
  const int n = 4;
  const MarkedGraph base = rep(figure3_data(n), "v3");
  const std::vector<std::vector<int>> forests{{0}, {1}, {0, 1}};
  int left = 0, collapse_ok = 0, reduce_ok = 0, functor = 0;
  for (int trial = 0; trial < kPropertyTrials; ++trial) {
    const FreeAut f = testing::random_product(rng, n, 1 + trial % 8);
    const FreeAut g = testing::random_product(rng, n, 1 + trial % 5);
    left += act(f, act(g, base)).labels() == act(compose(f, g), base).labels();
    const auto& forest = forests[static_cast<std::size_t>(trial) % forests.size()];
    collapse_ok += act(f, collapse(base, forest)).labels() == collapse(act(f, base), forest).labels();
    const Word w = testing::random_word(rng, n, 30);
    const Word once = apply(f, w);
    reduce_ok += reduce(once.letters(), n) == once && reduce(reduce(once.letters(), n).letters(), n) == once;
    functor += abelianize(compose(f, g)) == abelianize(f) * abelianize(g);
  }
  o.require(left == kPropertyTrials, "left action");
  o.require(collapse_ok == kPropertyTrials, "collapse/act");
  o.require(reduce_ok == kPropertyTrials, "free reduction");
  o.require(functor == kPropertyTrials, "abelianization");
  o.detail << kPropertyTrials << " trials each: left action " << left << ", collapse/act " << collapse_ok
           << ", free reduction " << reduce_ok << ", abelianization " << functor;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"relator soundness", relator_soundness},
      {"generation witness", generation_witness},
      {"quotient counts", quotient_counts},
      {"stabilizer orders", stabilizer_orders},
      {"conjugation identities", conjugation_identities},
      {"end-to-end derivation", end_to_end},
      {"finite quotient", finite_quotient},
      {"property suites", property_suites},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << (i + 1) << " " << criteria[i].first << ": " << o.detail.str() << "\n";
  }
  return all ? 0 : 1;
}

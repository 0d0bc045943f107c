#include <algorithm>
#include <random>

#include "autfn/brown.hpp"
#include "doctest.h"

using namespace autfn;

namespace {

bool has_line(const std::vector<std::string>& trace, const std::string& prefix) {
  return std::any_of(trace.begin(), trace.end(), [&](const std::string& l) { return l.rfind(prefix, 0) == 0; });
}

std::size_t count_tag(const Presentation& p, const std::string& prefix) {
  return static_cast<std::size_t>(std::count_if(p.relators.begin(), p.relators.end(),
                                                [&](const Relator& r) { return r.tag.rfind(prefix, 0) == 0; }));
}

const std::vector<std::string> kAlphabet4{"s1", "s2", "s3", "tau1", "eta"};

}  // namespace

TEST_CASE("symbols") {
  const OrbitComplex c = figure3_data(4);
  const OrbitVertex& v2 = c.vertices[static_cast<std::size_t>(c.vertex_index("v2"))];
  CHECK(vertex_symbol(v2, v2.stabilizer_gens[0]) == "v2:eta.tau1.tau2.eta");
  CHECK(edge_symbol(c.edges[0]) == "t_" + c.edges[0].id);
}

TEST_CASE("assembled presentation holds in Aut(F_n)") {
  for (int n = 2; n <= 4; ++n) {
    const OrbitComplex c = figure3_data(n);
    const Presentation p = assemble(c);
    CHECK_NOTHROW(p.validate());
    const VerifyReport r = verify(p, brown_assignment(c), n);
    INFO(r.to_string());
    CHECK(r.all_passed());
  }
  const Presentation p4 = assemble(figure3_data(4));
  CHECK(tree_relations(figure3_data(4)).size() == 6);
  CHECK(count_tag(p4, "face") == 7);
  CHECK(p4.relators.size() == 142);
}

TEST_CASE("assembled presentation of the enumerated quotient holds") {
  const OrbitComplex c = enumerate_quotient(3);
  const VerifyReport r = verify(assemble(c), brown_assignment(c), 3);
  INFO(r.to_string());
  CHECK(r.all_passed());
}

TEST_CASE("face relation is unchanged by moving an edge stabilizer element across an edge") {
  const int n = 4;
  std::mt19937 rng(7);
  const OrbitComplex base = figure3_data(n);
  int tried = 0;
  for (std::size_t fi = 0; fi < base.faces.size(); ++fi) {
    const FaceStep& s0 = base.faces[fi].steps[0];
    if (s0.sign != 1) continue;
    const OrbitEdge& e = base.edges[static_cast<std::size_t>(s0.edge)];
    const std::vector<FreeAut> stab = edge_stabilizer(base, e);
    REQUIRE_FALSE(stab.empty());
    for (int trial = 0; trial < 2; ++trial) {
      FreeAut x = FreeAut::identity(n);
      for (int k = 0; k < 5; ++k) x = compose(x, stab[rng() % stab.size()]);
      const FreeAut y = compose(compose(invert(e.g.value), x), e.g.value);
      OrbitComplex c = base;
      FaceStep* steps = c.faces[fi].steps.data();
      steps[0].h = NamedAut{"h1x", compose(steps[0].h.value, x)};
      steps[1].h = NamedAut{"yh2", compose(invert(y), steps[1].h.value)};
      const ValidationReport vr = validate_complex(c);
      INFO(vr.to_string());
      CHECK(vr.all_passed());
      Presentation faces;
      faces.relators = face_relations(c);
      CHECK(verify(faces, brown_assignment(c), n).all_passed());
      ++tried;
    }
  }
  CHECK(tried == 14);
}

TEST_CASE("translator edges e04 and e07 reduce to eta") {
  const Derivation d = derive(figure3_data(4));
  CHECK(has_line(d.trace, "eliminate t_e04 = t_e10^-1 v1:eta t_e10 t_e03  [face D104]"));
  CHECK(has_line(d.trace, "eliminate t_e07 = t_e10^-1 v1:eta t_e10 t_e06  [face D107]"));
  CHECK(has_line(d.trace, "replace"));
}

TEST_CASE("simplified presentation at n = 4") {
  const Derivation d = derive(figure3_data(4));
  const Presentation& p = d.simplified;
  CHECK(p.generators == kAlphabet4);
  CHECK(count_tag(p, "W") == 10);
  CHECK(p.relators.size() == 19);
  CHECK(verify(p, tautological_assignment(p, 4), 4).all_passed());

  const Presentation again = simplify(p, 4);
  CHECK(again.to_text() == p.to_text());

  const CompareReport self = compare(p, p, 4);
  CHECK(self.relators_hold);
  CHECK(self.generators_equivalent);
  CHECK(self.reference_matched);

  const CompareReport r = compare(p, theorem1_presentation(4), 4);
  INFO(r.to_string());
  CHECK(r.relators_hold);
  CHECK(r.generators_equivalent);
  CHECK(r.reference_matched);
}

TEST_CASE("simplified presentations at n = 2, 3 match the reference") {
  for (int n : {2, 3}) {
    const Derivation d = derive(figure3_data(n));
    const CompareReport r = compare(d.simplified, theorem1_presentation(n), n);
    INFO(r.to_string());
    CHECK(r.relators_hold);
    CHECK(r.generators_equivalent);
    CHECK(r.reference_matched);
  }
  CHECK(derive(figure3_data(3)).simplified.relators.size() == 12);
  CHECK(derive(figure3_data(2)).simplified.relators.size() == 6);
}

TEST_CASE("compare flags a missing relator family") {
  Presentation ref = theorem1_presentation(4);
  Presentation derived = derive(figure3_data(4)).simplified;
  derived.relators.erase(std::remove_if(derived.relators.begin(), derived.relators.end(),
                                        [](const Relator& r) { return r.tag == "stab v8"; }),
                         derived.relators.end());
  const CompareReport r = compare(derived, ref, 4);
  CHECK(r.relators_hold);
  CHECK_FALSE(r.reference_matched);
}

TEST_CASE("free product normal form") {
  const auto a = free_product_form(parse_sym_word("eta s1 eta s1 eta s1"), 3);
  const auto b = free_product_form(parse_sym_word("s1 eta s1 eta s1 eta"), 3);
  const auto c = free_product_form(parse_sym_word("eta sigma12 eta tau1 tau1 s1 eta s1"), 3);
  REQUIRE(a);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(free_product_form(parse_sym_word("s1 s1"), 3)->trivial());
  CHECK_FALSE(free_product_form(parse_sym_word("t_e10"), 3));
}

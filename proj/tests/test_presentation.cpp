#include <map>

#include "autfn/generation.hpp"
#include "autfn/presentation.hpp"
#include "autfn/signed_perm.hpp"
#include "doctest.h"

using namespace autfn;

namespace {

std::size_t count_tag(const Presentation& p, const std::string& tag) {
  std::size_t c = 0;
  for (const Relator& r : p.relators) c += r.tag == tag;
  return c;
}

bool contains_cyclic(const Presentation& p, const SymWord& w) {
  const SymWord c = cyclic_normal_form(w);
  for (const Relator& r : p.relators) {
    if (cyclic_normal_form(r.word) == c) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("wn_presentation sizes and soundness") {
  const auto p2 = wn_presentation(2);
  CHECK(p2.relators.size() == 3);
  CHECK(p2.relators[0].word == parse_sym_word("s1 s1"));
  CHECK(p2.relators[1].word == parse_sym_word("tau1 tau1"));
  CHECK(p2.relators[2].word == parse_sym_word("tau1 s1 tau1 s1 tau1 s1 tau1 s1"));
  CHECK(wn_presentation(3).relators.size() == 6);
  CHECK(wn_presentation(4).relators.size() == 10);
  CHECK_THROWS_AS(wn_presentation(1), Error);
  for (int n = 2; n <= 6; ++n) {
    const Presentation p = wn_presentation(n);
    for (const Relator& r : p.relators) {
      SignedPerm acc = SignedPerm::identity(n);
      for (const SymLetter& l : r.word) {
        const SignedPerm g = l.sym == "tau1" ? SignedPerm::tau(1, n) : SignedPerm::s(std::stoi(l.sym.substr(1)), n);
        acc = sp_compose(acc, g);
      }
      REQUIRE(acc.is_identity());
    }
    CHECK(verify(p, tautological_assignment(p, n), n).all_passed());
  }
}

TEST_CASE("theorem1_presentation shape") {
  const Presentation p4 = theorem1_presentation(4);
  CHECK(p4.generators == std::vector<std::string>{"s1", "s2", "s3", "tau1", "eta"});
  CHECK(p4.relators.size() == 19);
  CHECK(count_tag(p4, "W") == 10);
  CHECK(count_tag(p4, "(3)") == 2);
  CHECK(count_tag(p4, "(8)") == 1);

  const Presentation p3 = theorem1_presentation(3);
  CHECK(p3.relators.size() == 12);
  CHECK(count_tag(p3, "(8)") == 0);
  CHECK(count_tag(p3, "(4)") == 0);
  CHECK(count_tag(p3, "(3)") == 1);
  const SymWord r5 = sym_power(sym_concat(sym_power(parse_sym_word("eta tau1"), 2), expand_abbreviation("tau2", 3)), 2);
  CHECK(contains_cyclic(p3, r5));

  const Presentation p2 = theorem1_presentation(2);
  CHECK(p2.relators.size() == 7);
  CHECK(p2.generators == std::vector<std::string>{"tau1", "tau2", "s1", "eta"});
  CHECK(contains_cyclic(p2, parse_sym_word("tau2^-1 s1 tau1 s1")));
  CHECK_THROWS_AS(theorem1_presentation(1), Error);
}

TEST_CASE("expand_abbreviation") {
  CHECK(expand_abbreviation("tau2", 3) == parse_sym_word("s1 tau1 s1"));
  CHECK(expand_abbreviation("sigma12", 3) == parse_sym_word("s1"));
  CHECK(expand_abbreviation("sigma13", 3) == parse_sym_word("s2 s1 s2"));
  CHECK_THROWS_AS(expand_abbreviation("foo", 3), Error);
  CHECK_THROWS_AS(expand_abbreviation("tau4", 3), Error);
  for (int n = 2; n <= 6; ++n) {
    Presentation alphabet = wn_presentation(n);
    const Assignment a = tautological_assignment(alphabet, n);
    for (int i = 1; i <= n; ++i) {
      const std::string t = "tau" + std::to_string(i);
      REQUIRE(evaluate_relator(expand_abbreviation(t, n), a, n) == tau(i, n));
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        REQUIRE(evaluate_relator(expand_abbreviation(sigma_name(i, j), n), a, n) == sigma(i, j, n));
      }
    }
  }
}

TEST_CASE("relator evaluation and verify") {
  const int n = 4;
  Assignment a;
  for (const char* g : {"eta", "tau1", "tau2", "sigma12", "sigma13", "sigma14", "sigma23"}) {
    a.emplace(g, *standard_symbol_value(g, n));
  }
  CHECK(evaluate_relator(parse_sym_word("eta eta"), a, n).is_identity());
  CHECK(evaluate_relator(parse_sym_word("eta tau1 eta tau1 tau2 eta tau1 eta tau1 tau2"), a, n).is_identity());
  CHECK(evaluate_relator(sym_power(parse_sym_word("sigma14 sigma23 eta"), 4), a, n).is_identity());
  CHECK_THROWS_AS(evaluate_relator(parse_sym_word("s9"), a, n), Error);

  Presentation bad{{"sigma12", "eta"}, {{parse_sym_word("sigma12 eta sigma12 eta"), "bad"}}};
  const VerifyReport r = verify(bad, tautological_assignment(bad, n), n);
  CHECK_FALSE(r.all_passed());
  CHECK_FALSE(r.lines[0].images.empty());

  for (int m = 2; m <= 5; ++m) {
    const Presentation p = theorem1_presentation(m);
    const VerifyReport rep = verify(p, tautological_assignment(p, m), m);
    INFO(rep.to_string());
    CHECK(rep.all_passed());
  }
}

TEST_CASE("text format round trip") {
  const Presentation p = theorem1_presentation(4);
  const Presentation q = Presentation::parse(p.to_text());
  CHECK(q.generators == p.generators);
  REQUIRE(q.relators.size() == p.relators.size());
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    CHECK(q.relators[i].word == p.relators[i].word);
    CHECK(q.relators[i].tag == p.relators[i].tag);
  }
  CHECK_THROWS_AS(Presentation::parse("gen a\nrel b\n"), Error);
  CHECK_THROWS_AS(Presentation::parse("foo\n"), Error);
}

TEST_CASE("tietze_eliminate") {
  Presentation p;
  p.generators = {"eta", "t_e01", "t_e07"};
  p.relators = {{parse_sym_word("t_e01"), ""},
                {parse_sym_word("t_e07^-1 eta"), ""},
                {parse_sym_word("t_e01 eta t_e07 t_e01^-1"), ""}};
  const Presentation q = tietze_eliminate(p, "t_e01", {});
  CHECK_FALSE(q.has_generator("t_e01"));
  CHECK(q.relators.size() == 2);
  const Presentation r = tietze_eliminate(q, "t_e07", parse_sym_word("eta"));
  REQUIRE(r.relators.size() == 1);
  CHECK(r.relators[0].word == parse_sym_word("eta eta"));
  CHECK_THROWS_AS(tietze_eliminate(q, "t_e07", parse_sym_word("eta eta")), Error);
  CHECK_THROWS_AS(tietze_eliminate(q, "t_e07", parse_sym_word("t_e07")), Error);

  Presentation u = theorem1_presentation(3);
  u.generators.push_back("x");
  const Presentation v = tietze_eliminate(u, "x", parse_sym_word("eta"));
  CHECK(v.generators == theorem1_presentation(3).generators);
  CHECK(v.relators.size() == u.relators.size());

  // Evaluation is preserved.
  Presentation w = theorem1_presentation(3);
  w.generators.push_back("tau2");
  w.relators.push_back({sym_concat(parse_sym_word("tau2^-1"), expand_abbreviation("tau2", 3)), "def"});
  w.relators.push_back({parse_sym_word("tau2 tau2"), "extra"});
  const Presentation w2 = tietze_eliminate(w, "tau2", expand_abbreviation("tau2", 3));
  CHECK(verify(w, tautological_assignment(w, 3), 3).all_passed());
  CHECK(verify(w2, tautological_assignment(w2, 3), 3).all_passed());
}

TEST_CASE("cyclic normal form") {
  CHECK(cyclic_normal_form(parse_sym_word("b a a^-1 c b^-1")) == parse_sym_word("c"));
  CHECK(cyclic_normal_form(parse_sym_word("b a")) == parse_sym_word("a b"));
  CHECK(cyclic_normal_form(parse_sym_word("")).empty());
}

TEST_CASE("generation witnesses") {
  for (int n = 2; n <= 3; ++n) {
    const auto ws = find_witnesses(theorem1_generating_set(n), all_transvections(n), 4);
    for (const Witness& w : ws) {
      INFO(w.target.to_inline_string());
      REQUIRE(w.word.has_value());
      CHECK(w.word->size() <= 4);
    }
  }
  const auto one = find_witnesses(theorem1_generating_set(2), {compose(tau(2, 2), eta(2))}, 4);
  REQUIRE(one[0].word.has_value());
  CHECK(one[0].word->size() == 2);
}

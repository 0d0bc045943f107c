#include <set>

#include "autfn/signed_perm.hpp"
#include "doctest.h"

using namespace autfn;

TEST_CASE("W_n group law examples") {
  const int n = 3;
  const SignedPerm t1 = SignedPerm::tau(1, n), s1 = SignedPerm::s(1, n);
  CHECK(sp_compose(t1, t1).is_identity());
  CHECK(sp_compose(s1, s1).is_identity());
  SignedPerm acc = SignedPerm::identity(n);
  const SignedPerm ts = sp_compose(t1, s1);
  for (int k = 0; k < 4; ++k) acc = sp_compose(acc, ts);
  CHECK(acc.is_identity());
  CHECK_FALSE(sp_compose(ts, ts).is_identity());
  CHECK_THROWS_AS(sp_compose(t1, SignedPerm::tau(1, 4)), Error);
}

TEST_CASE("to_aut") {
  CHECK(to_aut(SignedPerm::tau(2, 3)).image(2) == Word::parse("A2"));
  CHECK(to_aut(SignedPerm::identity(3)).is_identity());
  CHECK(to_aut(SignedPerm::sigma(1, 3, 3)) == sigma(1, 3, 3));
  CHECK(SignedPerm::from_images({-2, 1, 3}).to_string() == "[-2, 1, 3]");
  CHECK(to_aut(SignedPerm::from_images({-2, 1, 3})).image(1) == Word::parse("A2"));
  CHECK_FALSE(SignedPerm::from_aut(eta(3)).has_value());
  CHECK_THROWS_AS(SignedPerm::from_images({1, 1}), Error);
}

TEST_CASE("enumerate_W sizes") {
  CHECK(enumerate_W(1).size() == 2);
  CHECK(enumerate_W(3).size() == 48);
  CHECK(enumerate_W(4).size() == 384);
  CHECK(enumerate_W(8).size() == 10321920);
  CHECK_THROWS_AS(enumerate_W(9), Error);
  const auto w4 = enumerate_W(4);
  CHECK(std::set<SignedPerm>(w4.begin(), w4.end()).size() == 384);
}

TEST_CASE("express_in_s_tau") {
  CHECK(s_tau_to_string(express_in_s_tau(SignedPerm::tau(2, 3))) == "s1 tau1 s1");
  const STauWord w = express_in_s_tau(SignedPerm::sigma(1, 3, 3));
  CHECK(w.size() == 3);
  CHECK(evaluate_s_tau(w, 3) == SignedPerm::sigma(1, 3, 3));
  CHECK(express_in_s_tau(SignedPerm::identity(4)).empty());
}

TEST_CASE("property: exhaustive homomorphism and round trip for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    const auto all = enumerate_W(n);
    for (const auto& p : all) {
      REQUIRE(SignedPerm::from_aut(to_aut(p)) == p);
      REQUIRE(evaluate_s_tau(express_in_s_tau(p), n) == p);
      for (const auto& q : all) {
        REQUIRE(to_aut(sp_compose(p, q)) == compose(to_aut(p), to_aut(q)));
      }
    }
  }
}

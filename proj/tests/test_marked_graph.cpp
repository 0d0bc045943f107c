#include <algorithm>
#include <random>
#include <set>

#include "autfn/marked_graph.hpp"
#include "autfn/signed_perm.hpp"
#include "doctest.h"
#include "random_auts.hpp"

using namespace autfn;

namespace {

const char* kNielsenLeft = R"(
vertex p base
vertex q
edge E0 q p tree
edge E1 q p label a1
edge E2 q p label a2
edge L3 p p label a3
edge L4 p p label a4
)";

// Same vertex with E2 as the tree edge.
const char* kNielsenRight = R"(
vertex p base
vertex q
edge E2 q p tree
edge E0 p q label a2
edge E1 q p label A2 a1
edge L3 p p label a3
edge L4 p p label a4
)";

MarkedGraph rose_with(std::vector<Word> labels) {
  const int n = static_cast<int>(labels.size());
  CombGraph g{1, 0, std::vector<GraphEdge>(labels.size(), GraphEdge{0, 0})};
  std::vector<bool> tree(labels.size(), false);
  return MarkedGraph(n, g, tree, labels);
}

bool contains(const std::vector<FreeAut>& set, const FreeAut& f) { return std::binary_search(set.begin(), set.end(), f); }

}  // namespace

TEST_CASE("degree") {
  CHECK(degree(MarkedGraph::rose(4).graph(), 4) == 0);
  CHECK(degree(MarkedGraph::parse(kNielsenLeft, 4).graph(), 4) == 1);
  CHECK_THROWS_AS(degree(MarkedGraph::rose(3).graph(), 4), Error);
}

TEST_CASE("parse, print, pi1_basis") {
  const MarkedGraph left = MarkedGraph::parse(kNielsenLeft, 4);
  CHECK(pi1_basis(left) == std::vector<Word>{Word::parse("a1"), Word::parse("a2"), Word::parse("a3"), Word::parse("a4")});
  CHECK(pi1_basis(MarkedGraph::rose(3)) == std::vector<Word>{Word::parse("a1"), Word::parse("a2"), Word::parse("a3")});
  const MarkedGraph again = MarkedGraph::parse(left.to_string(), 4);
  CHECK(again.to_string() == left.to_string());
  CHECK_THROWS_AS(MarkedGraph::parse("vertex p base\nedge a p p label a1\nedge b p p label a1\n", 2), Error);
  CHECK_THROWS_AS(MarkedGraph::parse("vertex p\nedge a p p label a1\n", 1), Error);
  CHECK_THROWS_AS(MarkedGraph::parse("vertex p base\nvertex q\nedge a p q tree\nedge b p q label a1\n", 1), Error);
}

TEST_CASE("equivalent") {
  const MarkedGraph left = MarkedGraph::parse(kNielsenLeft, 4);
  const MarkedGraph right = MarkedGraph::parse(kNielsenRight, 4);
  CHECK(equivalent(left, right).has_value());
  CHECK(equivalent(right, left).has_value());
  CHECK(equivalent(rose_with({Word::parse("a1"), Word::parse("a2")}), rose_with({Word::parse("a2"), Word::parse("a1")})));
  CHECK_FALSE(equivalent(rose_with({Word::parse("a1"), Word::parse("a2")}),
                         rose_with({Word::parse("a1 a2"), Word::parse("a2")})));
  CHECK_FALSE(equivalent(left, MarkedGraph::rose(4)));
}

TEST_CASE("act") {
  const MarkedGraph left = MarkedGraph::parse(kNielsenLeft, 4);
  CHECK(equivalent(act(eta(4), left), left).has_value());
  CHECK(act(FreeAut::identity(4), left).labels() == left.labels());
  CHECK(act(tau(1, 3), MarkedGraph::rose(3)).labels()[0] == Word::parse("A1"));
  CHECK_THROWS_AS(act(eta(3), left), Error);
}

TEST_CASE("collapse") {
  const MarkedGraph left = MarkedGraph::parse(kNielsenLeft, 4);
  const MarkedGraph r = collapse(left, {left.edge_index("E0")});
  CHECK(r.graph().num_vertices == 1);
  CHECK(equivalent(r, MarkedGraph::rose(4)).has_value());
  CHECK(collapse(left, {}).labels() == left.labels());
  const MarkedGraph r2 = collapse(left, {left.edge_index("E1")});
  CHECK(equivalent(r2, act(FreeAut::identity(4), r2)).has_value());
  CHECK(r2.check().empty());
  CHECK_THROWS_AS(collapse(left, {left.edge_index("L3")}), Error);
  CHECK_THROWS_AS(collapse(left, {0, 0}), Error);

  const MarkedGraph right = MarkedGraph::parse(kNielsenRight, 4);
  for (int e = 0; e < 3; ++e) {
    const std::string name = "E" + std::to_string(e);
    CHECK(equivalent(collapse(left, {left.edge_index(name)}), collapse(right, {right.edge_index(name)})).has_value());
  }
}

TEST_CASE("graph automorphisms") {
  CHECK(graph_automorphisms(MarkedGraph::rose(2).graph()).size() == 8);
  CHECK(graph_automorphisms(MarkedGraph::rose(1).graph()).size() == 2);
  CHECK(graph_automorphisms(MarkedGraph::parse(kNielsenLeft, 4).graph()).size() == 48);
}

TEST_CASE("stabilizers") {
  for (int n = 1; n <= 4; ++n) {
    const auto st = stabilizer(MarkedGraph::rose(n));
    std::vector<FreeAut> w;
    for (const SignedPerm& p : enumerate_W(n)) w.push_back(to_aut(p));
    std::sort(w.begin(), w.end());
    CHECK(st == w);
  }
  const MarkedGraph left = MarkedGraph::parse(kNielsenLeft, 4);
  const auto g1 = stabilizer(left);
  CHECK(g1.size() == 48);
  CHECK(contains(g1, eta(4)));
  CHECK(contains(g1, sigma(1, 2, 4)));
  CHECK(contains(g1, tau(3, 4)));
  CHECK_FALSE(contains(g1, tau(1, 4)));
  for (const FreeAut& a : g1) {
    for (const FreeAut& b : g1) REQUIRE(contains(g1, compose(a, invert(b))));
  }
}

TEST_CASE("find_translator") {
  const MarkedGraph left = MarkedGraph::parse(kNielsenLeft, 4);
  const MarkedGraph moved = act(compose(tau(2, 4), sigma(1, 3, 4)), left);
  const auto t = find_translator(left, moved);
  REQUIRE(t.has_value());
  CHECK(equivalent(act(*t, left), moved).has_value());
  CHECK(find_translator(left, left).has_value());
  CHECK_FALSE(find_translator(left, MarkedGraph::rose(4)).has_value());
}

TEST_CASE("property: left action, collapse commutes with act, conjugate stabilizers") {
  std::mt19937 rng(7);
  const MarkedGraph left = MarkedGraph::parse(kNielsenLeft, 4);
  const auto g1 = stabilizer(left);
  const std::vector<std::vector<int>> forests{{0}, {1}, {2}};
  for (int trial = 0; trial < 1000; ++trial) {
    const FreeAut f = testing::random_product(rng, 4, 1 + trial % 6);
    const FreeAut g = testing::random_product(rng, 4, 1 + trial % 4);
    REQUIRE(act(f, act(g, left)).labels() == act(compose(f, g), left).labels());
    const auto& forest = forests[static_cast<std::size_t>(trial) % forests.size()];
    REQUIRE(act(f, collapse(left, forest)).labels() == collapse(act(f, left), forest).labels());
    const MarkedGraph moved = act(f, left);
    REQUIRE(degree(moved.graph(), 4) == 1);
    REQUIRE(degree(collapse(moved, forest).graph(), 4) <= 1);
    if (trial % 50 == 0) {
      std::vector<FreeAut> conj;
      for (const FreeAut& s : g1) conj.push_back(compose(f, compose(s, invert(f))));
      std::sort(conj.begin(), conj.end());
      REQUIRE(stabilizer(moved) == conj);
      // equivalence is symmetric and transitive along the orbit
      const MarkedGraph moved2 = act(compose(f, eta(4)), left);
      REQUIRE(equivalent(moved, moved2).has_value() == equivalent(moved2, moved).has_value());
    }
  }
}

#pragma once

// Basepointed marked graphs: a combinatorial graph, a maximal tree, and F_n
// labels on the oriented co-tree edges. The marking of a closed edge path is
// the product of the labels it crosses.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autfn/word.hpp"

namespace autfn {

struct GraphEdge {
  int from = 0;
  int to = 0;
  bool is_loop() const { return from == to; }
};

struct CombGraph {
  int num_vertices = 0;
  int base = 0;
  std::vector<GraphEdge> edges;

  int rank() const { return static_cast<int>(edges.size()) - num_vertices + 1; }
  int valence(int v) const;
  bool connected() const;
  bool has_separating_edge() const;
  // Empty when valid; otherwise a description of the first violation.
  std::string check() const;
};

// Vertex and edge bijection; sign -1 reverses the edge.
struct GraphIso {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
  std::vector<int> edge_sign;
};

// Calls `visit` on each basepoint-preserving isomorphism g1 -> g2 until it returns false.
void for_each_isomorphism(const CombGraph& g1, const CombGraph& g2, const std::function<bool(const GraphIso&)>& visit);
std::vector<GraphIso> graph_automorphisms(const CombGraph& g);

int degree(const CombGraph& g, int n);

class MarkedGraph {
 public:
  MarkedGraph() = default;
  // `labels[e]` is ignored (and cleared) for tree edges.
  MarkedGraph(int n, CombGraph graph, std::vector<bool> tree, std::vector<Word> labels);

  static MarkedGraph rose(int n);
  // Reads `vertex <id> [base]` and `edge <id> <from> <to> [tree] [label <word>]` lines.
  static MarkedGraph parse(std::string_view text, int n);
  std::string to_string() const;

  int rank() const { return n_; }
  const CombGraph& graph() const { return graph_; }
  const std::vector<bool>& tree() const { return tree_; }
  const std::vector<Word>& labels() const { return labels_; }
  bool in_tree(int e) const { return tree_[static_cast<std::size_t>(e)]; }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const std::vector<std::string>& edge_names() const { return edge_names_; }
  void set_names(std::vector<std::string> vertex_names, std::vector<std::string> edge_names);
  int edge_index(const std::string& name) const;

  // Co-tree edges in increasing index order.
  std::vector<int> cotree_edges() const;
  // Empty when well formed.
  std::string check() const;

 private:
  int n_ = 0;
  CombGraph graph_;
  std::vector<bool> tree_;
  std::vector<Word> labels_;
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
};

// Marking words of the fundamental loops of the co-tree edges.
std::vector<Word> pi1_basis(const MarkedGraph& m);

MarkedGraph act(const FreeAut& f, const MarkedGraph& m);
MarkedGraph collapse(const MarkedGraph& m, const std::vector<int>& forest);

// For an isomorphism h of the underlying graphs, the marking of m2 evaluated on
// h(fundamental loop of e) for each co-tree edge e of m1.
std::vector<Word> transported_basis(const MarkedGraph& m1, const MarkedGraph& m2, const GraphIso& h);

std::optional<GraphIso> equivalent(const MarkedGraph& m1, const MarkedGraph& m2);
// Some alpha with act(alpha, m1) equivalent to m2.
std::optional<FreeAut> find_translator(const MarkedGraph& m1, const MarkedGraph& m2);
// All alpha fixing m, sorted.
std::vector<FreeAut> stabilizer(const MarkedGraph& m);

// True when `forest` is a set of distinct non-loop edges containing no cycle.
bool is_forest(const CombGraph& g, const std::vector<int>& forest);

}  // namespace autfn

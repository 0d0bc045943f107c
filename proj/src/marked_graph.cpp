#include "autfn/marked_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace autfn {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

// (edge, +1) traverses from -> to; (edge, -1) traverses to -> from.
using Step = std::pair<int, int>;

bool connected_without(const CombGraph& g, int skip) {
  if (g.num_vertices == 0) return true;
  UnionFind uf(g.num_vertices);
  int comps = g.num_vertices;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (static_cast<int>(e) == skip) continue;
    if (uf.unite(g.edges[e].from, g.edges[e].to)) --comps;
  }
  return comps == 1;
}

// Path from `src` to `dst` inside the subgraph of edges with mask[e] set.
std::vector<Step> path_in(const CombGraph& g, const std::vector<bool>& mask, int src, int dst) {
  std::vector<std::pair<int, Step>> prev(static_cast<std::size_t>(g.num_vertices), {-1, {-1, 0}});
  std::vector<bool> seen(static_cast<std::size_t>(g.num_vertices), false);
  std::deque<int> queue{src};
  seen[static_cast<std::size_t>(src)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == dst) break;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (!mask[e]) continue;
      const GraphEdge& ed = g.edges[e];
      for (int dir : {1, -1}) {
        const int a = dir > 0 ? ed.from : ed.to, b = dir > 0 ? ed.to : ed.from;
        if (a != v || seen[static_cast<std::size_t>(b)]) continue;
        seen[static_cast<std::size_t>(b)] = true;
        prev[static_cast<std::size_t>(b)] = {v, {static_cast<int>(e), dir}};
        queue.push_back(b);
      }
    }
  }
  if (!seen[static_cast<std::size_t>(dst)]) throw Error("no path between vertices in the given subgraph");
  std::vector<Step> path;
  for (int v = dst; v != src; v = prev[static_cast<std::size_t>(v)].first) path.push_back(prev[static_cast<std::size_t>(v)].second);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Step> reversed(const std::vector<Step>& p) {
  std::vector<Step> r;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r.push_back({it->first, -it->second});
  return r;
}

// Fundamental loop of co-tree edge e: tree path base -> o(e), e, tree path t(e) -> base.
std::vector<Step> fundamental_loop(const MarkedGraph& m, int e) {
  const CombGraph& g = m.graph();
  const GraphEdge& ed = g.edges[static_cast<std::size_t>(e)];
  std::vector<Step> loop = path_in(g, m.tree(), g.base, ed.from);
  loop.push_back({e, 1});
  const std::vector<Step> back = path_in(g, m.tree(), g.base, ed.to);
  const std::vector<Step> r = reversed(back);
  loop.insert(loop.end(), r.begin(), r.end());
  return loop;
}

Word power(const Word& w, int dir) { return dir > 0 ? w : w.inverse(); }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

int CombGraph::valence(int v) const {
  int val = 0;
  for (const GraphEdge& e : edges) val += (e.from == v) + (e.to == v);
  return val;
}

bool CombGraph::connected() const { return connected_without(*this, -1); }

bool CombGraph::has_separating_edge() const {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!edges[e].is_loop() && !connected_without(*this, static_cast<int>(e))) return true;
  }
  return false;
}

std::string CombGraph::check() const {
  if (num_vertices < 1) return "graph has no vertices";
  if (base < 0 || base >= num_vertices) return "basepoint out of range";
  for (const GraphEdge& e : edges) {
    if (e.from < 0 || e.to < 0 || e.from >= num_vertices || e.to >= num_vertices) return "edge endpoint out of range";
  }
  if (!connected()) return "graph is not connected";
  for (int v = 0; v < num_vertices; ++v) {
    const int val = valence(v);
    if (v == base ? val < 2 : val < 3) return "vertex " + std::to_string(v) + " has valence " + std::to_string(val);
  }
  if (has_separating_edge()) return "graph has a separating edge";
  return {};
}

void for_each_isomorphism(const CombGraph& g1, const CombGraph& g2, const std::function<bool(const GraphIso&)>& visit) {
  if (g1.num_vertices != g2.num_vertices || g1.edges.size() != g2.edges.size()) return;
  const int nv = g1.num_vertices;
  const std::size_t ne = g1.edges.size();
  std::vector<int> loops1(static_cast<std::size_t>(nv), 0), loops2(static_cast<std::size_t>(nv), 0);
  for (const GraphEdge& e : g1.edges) loops1[static_cast<std::size_t>(e.from)] += e.is_loop();
  for (const GraphEdge& e : g2.edges) loops2[static_cast<std::size_t>(e.from)] += e.is_loop();

  std::vector<int> others;
  for (int v = 0; v < nv; ++v) {
    if (v != g2.base) others.push_back(v);
  }
  std::vector<int> perm = others;
  bool stop = false;
  do {
    GraphIso h;
    h.vertex_map.assign(static_cast<std::size_t>(nv), -1);
    h.vertex_map[static_cast<std::size_t>(g1.base)] = g2.base;
    std::size_t k = 0;
    for (int v = 0; v < nv; ++v) {
      if (v != g1.base) h.vertex_map[static_cast<std::size_t>(v)] = perm[k++];
    }
    bool ok = true;
    for (int v = 0; v < nv && ok; ++v) {
      const int w = h.vertex_map[static_cast<std::size_t>(v)];
      ok = g1.valence(v) == g2.valence(w) && loops1[static_cast<std::size_t>(v)] == loops2[static_cast<std::size_t>(w)];
    }
    if (!ok) continue;
    h.edge_map.assign(ne, -1);
    h.edge_sign.assign(ne, 1);
    std::vector<bool> used(ne, false);
    std::function<void(std::size_t)> rec = [&](std::size_t e) {
      if (stop) return;
      if (e == ne) {
        if (!visit(h)) stop = true;
        return;
      }
      const GraphEdge& a = g1.edges[e];
      const int hf = h.vertex_map[static_cast<std::size_t>(a.from)], ht = h.vertex_map[static_cast<std::size_t>(a.to)];
      for (std::size_t f = 0; f < ne && !stop; ++f) {
        if (used[f]) continue;
        const GraphEdge& b = g2.edges[f];
        for (int sign : {1, -1}) {
          if (a.is_loop() ? !(b.is_loop() && b.from == hf) : (sign > 0 ? (b.from != hf || b.to != ht) : (b.from != ht || b.to != hf))) {
            continue;
          }
          used[f] = true;
          h.edge_map[e] = static_cast<int>(f);
          h.edge_sign[e] = sign;
          rec(e + 1);
          used[f] = false;
          if (stop) return;
        }
      }
    };
    rec(0);
  } while (!stop && std::next_permutation(perm.begin(), perm.end()));
}

std::vector<GraphIso> graph_automorphisms(const CombGraph& g) {
  std::vector<GraphIso> out;
  for_each_isomorphism(g, g, [&](const GraphIso& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

int degree(const CombGraph& g, int n) {
  if (g.rank() != n) throw Error("graph rank " + std::to_string(g.rank()) + " does not match n = " + std::to_string(n));
  return 2 * n - g.valence(g.base);
}

MarkedGraph::MarkedGraph(int n, CombGraph graph, std::vector<bool> tree, std::vector<Word> labels)
    : n_(n), graph_(std::move(graph)), tree_(std::move(tree)), labels_(std::move(labels)) {
  const std::size_t ne = graph_.edges.size();
  if (tree_.size() != ne || labels_.size() != ne) throw Error("tree mask and labels must cover every edge");
  if (graph_.rank() != n) throw Error("graph rank " + std::to_string(graph_.rank()) + " does not match n = " + std::to_string(n));
  UnionFind uf(graph_.num_vertices);
  int tree_edges = 0;
  for (std::size_t e = 0; e < ne; ++e) {
    if (!tree_[e]) {
      if (labels_[e].max_index() > n) throw Error("label exceeds rank");
      continue;
    }
    labels_[e] = Word();
    ++tree_edges;
    if (!uf.unite(graph_.edges[e].from, graph_.edges[e].to)) throw Error("tree edges contain a cycle");
  }
  if (tree_edges != graph_.num_vertices - 1) throw Error("tree does not span the graph");
  for (int v = 0; v < graph_.num_vertices; ++v) vertex_names_.push_back(std::to_string(v));
  for (std::size_t e = 0; e < ne; ++e) edge_names_.push_back("e" + std::to_string(e));
}

MarkedGraph MarkedGraph::rose(int n) {
  CombGraph g{1, 0, {}};
  std::vector<Word> labels;
  for (int k = 1; k <= n; ++k) {
    g.edges.push_back({0, 0});
    labels.push_back(Word::generator(k));
  }
  return MarkedGraph(n, g, std::vector<bool>(static_cast<std::size_t>(n), false), labels);
}

void MarkedGraph::set_names(std::vector<std::string> vertex_names, std::vector<std::string> edge_names) {
  if (vertex_names.size() != static_cast<std::size_t>(graph_.num_vertices) || edge_names.size() != graph_.edges.size()) {
    throw Error("name lists do not match graph size");
  }
  vertex_names_ = std::move(vertex_names);
  edge_names_ = std::move(edge_names);
}

int MarkedGraph::edge_index(const std::string& name) const {
  for (std::size_t e = 0; e < edge_names_.size(); ++e) {
    if (edge_names_[e] == name) return static_cast<int>(e);
  }
  throw Error("no edge named '" + name + "'");
}

std::vector<int> MarkedGraph::cotree_edges() const {
  std::vector<int> out;
  for (std::size_t e = 0; e < tree_.size(); ++e) {
    if (!tree_[e]) out.push_back(static_cast<int>(e));
  }
  return out;
}

std::string MarkedGraph::check() const {
  if (std::string err = graph_.check(); !err.empty()) return err;
  if (!is_basis(pi1_basis(*this), n_)) return "co-tree labels are not a free basis";
  return {};
}

MarkedGraph MarkedGraph::parse(std::string_view text, int n) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::map<std::string, int> vid;
  std::vector<std::string> vnames, enames;
  CombGraph g;
  std::vector<bool> tree;
  std::vector<Word> labels;
  bool have_base = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    const std::string where = "graph line " + std::to_string(lineno) + ": ";
    if (kind == "vertex") {
      std::string id, flag;
      if (!(ls >> id)) throw Error(where + "missing vertex id");
      if (vid.count(id)) throw Error(where + "duplicate vertex '" + id + "'");
      vid[id] = g.num_vertices++;
      vnames.push_back(id);
      if (ls >> flag) {
        if (flag != "base" || have_base) throw Error(where + "unexpected '" + flag + "'");
        g.base = vid[id];
        have_base = true;
      }
    } else if (kind == "edge") {
      std::string id, a, b, tok;
      if (!(ls >> id >> a >> b)) throw Error(where + "edge needs id, from, to");
      if (!vid.count(a) || !vid.count(b)) throw Error(where + "unknown vertex");
      bool is_tree = false;
      Word label;
      bool has_label = false;
      while (ls >> tok) {
        if (tok == "tree") {
          is_tree = true;
        } else if (tok == "label") {
          std::string rest;
          std::getline(ls, rest);
          label = Word::parse(trim(rest));
          has_label = true;
        } else {
          throw Error(where + "unexpected '" + tok + "'");
        }
      }
      if (is_tree == has_label) throw Error(where + "edge must be either tree or labeled");
      g.edges.push_back({vid[a], vid[b]});
      tree.push_back(is_tree);
      labels.push_back(label);
      enames.push_back(id);
    } else {
      throw Error(where + "expected 'vertex' or 'edge'");
    }
  }
  if (!have_base) throw Error("graph has no basepoint");
  MarkedGraph m(n, g, tree, labels);
  m.set_names(vnames, enames);
  if (std::string err = m.check(); !err.empty()) throw Error("invalid marked graph: " + err);
  return m;
}

std::string MarkedGraph::to_string() const {
  std::string s;
  for (int v = 0; v < graph_.num_vertices; ++v) {
    s += "vertex " + vertex_names_[static_cast<std::size_t>(v)];
    if (v == graph_.base) s += " base";
    s += "\n";
  }
  const auto line = [&](std::size_t e) {
    const GraphEdge& ed = graph_.edges[e];
    std::string l = "edge " + edge_names_[e] + " " + vertex_names_[static_cast<std::size_t>(ed.from)] + " " +
                    vertex_names_[static_cast<std::size_t>(ed.to)];
    l += tree_[e] ? " tree" : " label " + labels_[e].to_string();
    return l + "\n";
  };
  for (std::size_t e = 0; e < tree_.size(); ++e) {
    if (tree_[e]) s += line(e);
  }
  for (std::size_t e = 0; e < tree_.size(); ++e) {
    if (!tree_[e]) s += line(e);
  }
  return s;
}

std::vector<Word> pi1_basis(const MarkedGraph& m) {
  std::vector<Word> out;
  for (int e : m.cotree_edges()) out.push_back(m.labels()[static_cast<std::size_t>(e)]);
  return out;
}

MarkedGraph act(const FreeAut& f, const MarkedGraph& m) {
  if (f.rank() != m.rank()) throw Error("rank mismatch in act");
  std::vector<Word> labels = m.labels();
  for (std::size_t e = 0; e < labels.size(); ++e) {
    if (!m.in_tree(static_cast<int>(e))) labels[e] = apply(f, labels[e]);
  }
  MarkedGraph out(m.rank(), m.graph(), m.tree(), labels);
  out.set_names(m.vertex_names(), m.edge_names());
  return out;
}

bool is_forest(const CombGraph& g, const std::vector<int>& forest) {
  UnionFind uf(g.num_vertices);
  std::set<int> seen;
  for (int e : forest) {
    if (e < 0 || e >= static_cast<int>(g.edges.size()) || !seen.insert(e).second) return false;
    if (!uf.unite(g.edges[static_cast<std::size_t>(e)].from, g.edges[static_cast<std::size_t>(e)].to)) return false;
  }
  return true;
}

MarkedGraph collapse(const MarkedGraph& m, const std::vector<int>& forest) {
  const CombGraph& g = m.graph();
  if (!is_forest(g, forest)) throw Error("collapse set is not a forest");
  const std::size_t ne = g.edges.size();
  std::vector<bool> in_forest(ne, false);
  for (int e : forest) in_forest[static_cast<std::size_t>(e)] = true;

  UnionFind uf(g.num_vertices);
  for (int e : forest) uf.unite(g.edges[static_cast<std::size_t>(e)].from, g.edges[static_cast<std::size_t>(e)].to);
  std::map<int, int> class_index;
  std::vector<std::string> vnames;
  for (int v = 0; v < g.num_vertices; ++v) {
    const int r = uf.find(v);
    if (!class_index.count(r)) {
      class_index[r] = static_cast<int>(class_index.size());
      vnames.push_back(m.vertex_names()[static_cast<std::size_t>(v)]);
    }
  }
  const auto cls = [&](int v) { return class_index.at(uf.find(v)); };

  CombGraph ng;
  ng.num_vertices = static_cast<int>(class_index.size());
  ng.base = cls(g.base);
  std::vector<int> old_of;  // new edge -> old edge
  std::vector<std::string> enames;
  for (std::size_t e = 0; e < ne; ++e) {
    if (in_forest[e]) continue;
    ng.edges.push_back({cls(g.edges[e].from), cls(g.edges[e].to)});
    old_of.push_back(static_cast<int>(e));
    enames.push_back(m.edge_names()[e]);
  }
  if (std::string err = ng.check(); !err.empty()) throw Error("collapse result is invalid: " + err);

  // New maximal tree: surviving old tree edges first, then the rest in order.
  std::vector<bool> ntree(ng.edges.size(), false);
  UnionFind nuf(ng.num_vertices);
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t e = 0; e < ng.edges.size(); ++e) {
      if (m.in_tree(old_of[e]) != (pass == 0)) continue;
      if (nuf.unite(ng.edges[e].from, ng.edges[e].to)) ntree[e] = true;
    }
  }

  const auto old_value = [&](int e, int dir) {
    return m.in_tree(e) ? Word() : power(m.labels()[static_cast<std::size_t>(e)], dir);
  };
  std::vector<Word> nlabels(ng.edges.size());
  for (std::size_t e = 0; e < ng.edges.size(); ++e) {
    if (ntree[e]) continue;
    std::vector<Step> loop = path_in(ng, ntree, ng.base, ng.edges[e].from);
    loop.push_back({static_cast<int>(e), 1});
    const std::vector<Step> back = reversed(path_in(ng, ntree, ng.base, ng.edges[e].to));
    loop.insert(loop.end(), back.begin(), back.end());

    Word value;
    int cur = g.base;
    const auto walk_forest = [&](int to) {
      for (const auto& [fe, dir] : path_in(g, in_forest, cur, to)) value = value * old_value(fe, dir);
      cur = to;
    };
    for (const auto& [ne_idx, dir] : loop) {
      const int oe = old_of[static_cast<std::size_t>(ne_idx)];
      const GraphEdge& ed = g.edges[static_cast<std::size_t>(oe)];
      walk_forest(dir > 0 ? ed.from : ed.to);
      value = value * old_value(oe, dir);
      cur = dir > 0 ? ed.to : ed.from;
    }
    walk_forest(g.base);
    nlabels[e] = value;
  }
  MarkedGraph out(m.rank(), ng, ntree, nlabels);
  out.set_names(vnames, enames);
  return out;
}

std::vector<Word> transported_basis(const MarkedGraph& m1, const MarkedGraph& m2, const GraphIso& h) {
  std::vector<Word> out;
  for (int e : m1.cotree_edges()) {
    Word value;
    for (const auto& [edge, dir] : fundamental_loop(m1, e)) {
      const int f = h.edge_map[static_cast<std::size_t>(edge)];
      if (m2.in_tree(f)) continue;
      value = value * power(m2.labels()[static_cast<std::size_t>(f)], dir * h.edge_sign[static_cast<std::size_t>(edge)]);
    }
    out.push_back(std::move(value));
  }
  return out;
}

std::optional<GraphIso> equivalent(const MarkedGraph& m1, const MarkedGraph& m2) {
  if (m1.rank() != m2.rank()) throw Error("rank mismatch in equivalent");
  const std::vector<Word> target = pi1_basis(m1);
  std::optional<GraphIso> found;
  for_each_isomorphism(m1.graph(), m2.graph(), [&](const GraphIso& h) {
    if (transported_basis(m1, m2, h) == target) {
      found = h;
      return false;
    }
    return true;
  });
  return found;
}

namespace {

FreeAut marking_aut(const std::vector<Word>& basis, int n) {
  auto f = FreeAut::from_basis(basis, n);
  if (!f) throw Error("marking words are not a free basis");
  return *f;
}

}  // namespace

std::optional<FreeAut> find_translator(const MarkedGraph& m1, const MarkedGraph& m2) {
  if (m1.rank() != m2.rank()) throw Error("rank mismatch in find_translator");
  std::optional<FreeAut> out;
  for_each_isomorphism(m1.graph(), m2.graph(), [&](const GraphIso& h) {
    const int n = m1.rank();
    out = compose(marking_aut(transported_basis(m1, m2, h), n), invert(marking_aut(pi1_basis(m1), n)));
    return false;
  });
  return out;
}

std::vector<FreeAut> stabilizer(const MarkedGraph& m) {
  const int n = m.rank();
  const FreeAut inv_l = invert(marking_aut(pi1_basis(m), n));
  std::set<FreeAut> out;
  for_each_isomorphism(m.graph(), m.graph(), [&](const GraphIso& h) {
    out.insert(compose(marking_aut(transported_basis(m, m, h), n), inv_l));
    return true;
  });
  return {out.begin(), out.end()};
}

}  // namespace autfn

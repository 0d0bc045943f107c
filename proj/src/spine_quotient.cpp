#include "autfn/spine_quotient.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "autfn/finite_group.hpp"
#include "autfn/presentation.hpp"
#include "autfn/signed_perm.hpp"

namespace autfn {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool member(const std::vector<FreeAut>& sorted, const FreeAut& f) {
  return std::binary_search(sorted.begin(), sorted.end(), f);
}

std::string named_to_text(const NamedAut& a) { return a.name + " : " + a.value.to_inline_string(); }

NamedAut named_from_text(const std::string& text, int n) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return named_product(trim(text), n);
  NamedAut out{trim(text.substr(0, colon)), FreeAut::parse(text.substr(colon + 1))};
  if (out.value.rank() != n) throw Error("automorphism '" + out.name + "' has the wrong rank");
  return out;
}

// Nonempty forests of g as sorted edge lists, by size then lexicographically.
std::vector<std::vector<int>> all_forests(const CombGraph& g) {
  std::vector<int> candidates;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!g.edges[e].is_loop()) candidates.push_back(static_cast<int>(e));
  }
  std::vector<std::vector<int>> out;
  const std::size_t m = candidates.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<int> f;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) f.push_back(candidates[i]);
    }
    if (is_forest(g, f)) out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<int> image_of(const std::vector<int>& forest, const GraphIso& h) {
  std::vector<int> out;
  for (int e : forest) out.push_back(h.edge_map[static_cast<std::size_t>(e)]);
  std::sort(out.begin(), out.end());
  return out;
}

bool isomorphic(const CombGraph& a, const CombGraph& b) {
  if (a.num_vertices != b.num_vertices || a.edges.size() != b.edges.size()) return false;
  bool found = false;
  for_each_isomorphism(a, b, [&](const GraphIso&) {
    found = true;
    return false;
  });
  return found;
}

struct FaceWalk {
  std::string error;
  std::array<MarkedGraph, 3> vertices;
  FreeAut g_delta;
  int start = 0;
};

// Follows the three steps of f; `stabs` (when given) is used to check each h.
FaceWalk walk_face(const OrbitComplex& c, const OrbitFace& f, const std::vector<std::vector<FreeAut>>* stabs) {
  FaceWalk out;
  const auto vertex_count = static_cast<int>(c.vertices.size());
  for (const FaceStep& s : f.steps) {
    if (s.edge < 0 || s.edge >= static_cast<int>(c.edges.size())) {
      out.error = "unknown edge";
      return out;
    }
  }
  const OrbitEdge& first = c.edges[static_cast<std::size_t>(f.steps[0].edge)];
  out.start = f.steps[0].sign > 0 ? first.origin : first.terminal;
  int cur = out.start;
  FreeAut acc = FreeAut::identity(c.n);
  for (std::size_t i = 0; i < 3; ++i) {
    const FaceStep& s = f.steps[i];
    const OrbitEdge& e = c.edges[static_cast<std::size_t>(s.edge)];
    const int from = s.sign > 0 ? e.origin : e.terminal;
    const int to = s.sign > 0 ? e.terminal : e.origin;
    if (from != cur) {
      out.error = "step " + std::to_string(i + 1) + " (" + e.id + ") does not start at " +
                  c.vertices[static_cast<std::size_t>(cur)].id;
      return out;
    }
    if (stabs && !member((*stabs)[static_cast<std::size_t>(cur)], s.h.value)) {
      out.error = "h of step " + std::to_string(i + 1) + " is not in the stabilizer of " +
                  c.vertices[static_cast<std::size_t>(cur)].id;
      return out;
    }
    if (i < 3) out.vertices[i] = act(acc, c.vertices[static_cast<std::size_t>(cur)].rep);
    acc = compose(compose(acc, s.h.value), s.sign > 0 ? e.g.value : invert(e.g.value));
    cur = to;
    if (cur < 0 || cur >= vertex_count) {
      out.error = "bad vertex index";
      return out;
    }
  }
  if (cur != out.start) {
    out.error = "path ends at " + c.vertices[static_cast<std::size_t>(cur)].id + ", not at " +
                c.vertices[static_cast<std::size_t>(out.start)].id;
    return out;
  }
  out.g_delta = acc;
  return out;
}

// All stabilizer elements, per vertex.
std::vector<std::vector<FreeAut>> vertex_stabilizers(const OrbitComplex& c) {
  std::vector<std::vector<FreeAut>> out;
  for (const OrbitVertex& v : c.vertices) out.push_back(stabilizer(v.rep));
  return out;
}

std::vector<MarkedGraph> edge_ends(const OrbitComplex& c, const OrbitEdge& e) {
  return {c.vertices[static_cast<std::size_t>(e.origin)].rep,
          act(e.g.value, c.vertices[static_cast<std::size_t>(e.terminal)].rep)};
}

}  // namespace

NamedAut named_product(const std::string& expr, int n) {
  const std::string t = trim(expr);
  if (t.empty() || t == "1") return {"1", FreeAut::identity(n)};
  const SymWord w = parse_sym_word(t);
  FreeAut value = evaluate_word(
      w, FreeAut::identity(n),
      [&](const std::string& sym) {
        auto v = standard_symbol_value(sym, n);
        if (!v) throw Error("unknown symbol '" + sym + "' in '" + t + "'");
        return *v;
      },
      [](const FreeAut& a, const FreeAut& b) { return compose(a, b); }, [](const FreeAut& a) { return invert(a); });
  return {t, std::move(value)};
}

int OrbitComplex::vertex_index(const std::string& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].id == id) return static_cast<int>(i);
  }
  throw Error("unknown vertex '" + id + "'");
}

int OrbitComplex::edge_index(const std::string& id) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].id == id) return static_cast<int>(i);
  }
  throw Error("unknown edge '" + id + "'");
}

std::string OrbitComplex::to_text() const {
  std::ostringstream out;
  out << "n " << n << "\n";
  for (const OrbitVertex& v : vertices) {
    out << "\n[vertex]\nid " << v.id << "\ntree " << (v.in_tree ? "yes" : "no") << "\n";
    for (const NamedAut& g : v.stabilizer_gens) out << "gen " << named_to_text(g) << "\n";
    out << v.rep.to_string();
  }
  for (const OrbitEdge& e : edges) {
    out << "\n[edge]\nid " << e.id << "\norigin " << vertices[static_cast<std::size_t>(e.origin)].id << "\nterminal "
        << vertices[static_cast<std::size_t>(e.terminal)].id << "\ntree " << (e.in_tree ? "yes" : "no") << "\ng "
        << named_to_text(e.g) << "\n";
  }
  for (const OrbitFace& f : faces) {
    out << "\n[face]\nid " << f.id << "\n";
    for (const FaceStep& s : f.steps) {
      out << "step " << edges[static_cast<std::size_t>(s.edge)].id << (s.sign > 0 ? " + " : " - ")
          << named_to_text(s.h) << "\n";
    }
  }
  return out.str();
}

OrbitComplex OrbitComplex::parse(std::string_view text) {
  struct Section {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> fields;
    std::string graph;
  };
  OrbitComplex c;
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t != "[vertex]" && t != "[edge]" && t != "[face]") throw Error("line " + std::to_string(lineno) + ": unknown section " + t);
      sections.push_back({t.substr(1, t.size() - 2), {}, {}});
      continue;
    }
    const auto sp = t.find(' ');
    const std::string key = t.substr(0, sp);
    const std::string value = sp == std::string::npos ? "" : trim(t.substr(sp));
    if (sections.empty()) {
      if (key != "n") throw Error("line " + std::to_string(lineno) + ": expected 'n <rank>'");
      c.n = std::stoi(value);
      continue;
    }
    if (sections.back().kind == "vertex" && (key == "vertex" || key == "edge")) {
      sections.back().graph += t + "\n";
    } else {
      sections.back().fields.emplace_back(key, value);
    }
  }
  if (c.n < 1) throw Error("orbit complex without rank");

  const auto field = [](const Section& s, const std::string& key) {
    for (const auto& [k, v] : s.fields) {
      if (k == key) return v;
    }
    throw Error(s.kind + " section without '" + key + "'");
  };
  const auto yes = [](const std::string& v) {
    if (v != "yes" && v != "no") throw Error("expected yes/no, got '" + v + "'");
    return v == "yes";
  };
  for (const Section& s : sections) {
    if (s.kind != "vertex") continue;
    OrbitVertex v;
    v.id = field(s, "id");
    v.in_tree = yes(field(s, "tree"));
    for (const auto& [k, val] : s.fields) {
      if (k == "gen") v.stabilizer_gens.push_back(named_from_text(val, c.n));
    }
    v.rep = MarkedGraph::parse(s.graph, c.n);
    c.vertices.push_back(std::move(v));
  }
  for (const Section& s : sections) {
    if (s.kind != "edge") continue;
    OrbitEdge e;
    e.id = field(s, "id");
    e.origin = c.vertex_index(field(s, "origin"));
    e.terminal = c.vertex_index(field(s, "terminal"));
    e.in_tree = yes(field(s, "tree"));
    e.g = named_from_text(field(s, "g"), c.n);
    c.edges.push_back(std::move(e));
  }
  for (const Section& s : sections) {
    if (s.kind != "face") continue;
    OrbitFace f;
    f.id = field(s, "id");
    std::size_t k = 0;
    for (const auto& [key, val] : s.fields) {
      if (key != "step") continue;
      if (k == 3) throw Error("face " + f.id + " has more than three steps");
      std::istringstream ls(val);
      std::string edge, sign;
      ls >> edge >> sign;
      if (sign != "+" && sign != "-") throw Error("face " + f.id + ": step sign must be + or -");
      std::string rest;
      std::getline(ls, rest);
      f.steps[k++] = {c.edge_index(edge), sign == "+" ? 1 : -1, named_from_text(rest, c.n)};
    }
    if (k != 3) throw Error("face " + f.id + " needs three steps");
    c.faces.push_back(std::move(f));
  }
  return c;
}

namespace {

// A marked graph with base vertex p given by `body`, plus loops a_{k+1}..a_n at p.
MarkedGraph curated_graph(int n, int k, const std::string& body) {
  std::string text = body;
  for (int i = k + 1; i <= n; ++i) {
    text += "edge l" + std::to_string(i) + " p p label a" + std::to_string(i) + "\n";
  }
  return MarkedGraph::parse(text, n);
}

// Generators of W_{n-k} acting on the last n - k basis letters.
std::vector<std::string> trailing_w(int n, int k) {
  std::vector<std::string> out;
  for (int i = k + 1; i <= n; ++i) out.push_back("tau" + std::to_string(i));
  for (int i = k + 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) out.push_back(sigma_name(i, j));
  }
  return out;
}

}  // namespace

OrbitComplex figure3_data(int n) {
  if (n < 2) throw Error("figure3_data needs n >= 2");
  OrbitComplex c;
  c.n = n;
  const auto add_vertex = [&](const std::string& id, int k, const std::string& body, std::vector<std::string> gens) {
    OrbitVertex v;
    v.id = id;
    v.rep = curated_graph(n, k, body);
    for (const std::string& w : trailing_w(n, k)) gens.push_back(w);
    for (const std::string& g : gens) v.stabilizer_gens.push_back(named_product(g, n));
    c.vertices.push_back(std::move(v));
  };
  std::vector<std::string> g0;
  for (int i = 1; i < n; ++i) g0.push_back("s" + std::to_string(i));
  g0.push_back("tau1");
  c.vertices.push_back({"v0", MarkedGraph::rose(n), true, {}});
  for (const std::string& g : g0) c.vertices.back().stabilizer_gens.push_back(named_product(g, n));

  add_vertex("v1", 2,
             "vertex p base\nvertex q\n"
             "edge E0 q p tree\nedge E1 q p label a1\nedge E2 q p label a2\n",
             {"sigma12", "eta"});
  add_vertex("v2", 2,
             "vertex p base\nvertex q\n"
             "edge e1 p q tree\nedge e2 p q label A2\nedge c q q label a1\n",
             {"eta tau1 tau2 eta", "tau1"});
  add_vertex("v3", 2,
             "vertex p base\nvertex q1\nvertex q2\n"
             "edge e1 p q1 tree\nedge e2 p q2 tree\nedge c q2 q1 label A2 a1\nedge d q2 q1 label A2\n",
             {"eta tau1 tau2 eta", "eta sigma12 eta"});
  if (n >= 3) {
    add_vertex("v5", 3,
               "vertex p base\nvertex q\n"
               "edge f0 q p tree\nedge f1 q p label a1\nedge f2 q p label a2\nedge f3 q p label a3\n",
               {"sigma12", "eta sigma13 tau2 eta", "sigma23"});
    add_vertex("v6", 3,
               "vertex p base\nvertex q1\nvertex q2\n"
               "edge f0 q2 p tree\nedge m q2 q1 tree\n"
               "edge f1 q1 p label a1\nedge f2 q1 p label a2\nedge f3 q2 p label a3\n",
               {"sigma12", "eta sigma13 tau2 eta"});
  }
  if (n >= 4) {
    add_vertex("v8", 4,
               "vertex p base\nvertex q1\nvertex q2\n"
               "edge A0 q1 p tree\nedge B0 q2 p tree\n"
               "edge A1 q1 p label a1\nedge A2 q1 p label a2\nedge B1 q2 p label a3\nedge B2 q2 p label a4\n",
               {"sigma12", "eta", "sigma14 sigma23"});
  }

  const auto has = [&](const std::string& id) {
    return std::any_of(c.vertices.begin(), c.vertices.end(), [&](const OrbitVertex& v) { return v.id == id; });
  };
  const auto add_edge = [&](const std::string& id, const std::string& o, const std::string& w, const std::string& g,
                            bool tree) {
    if (!has(o) || !has(w)) return;
    c.edges.push_back({id, c.vertex_index(o), c.vertex_index(w), named_product(g, n), tree});
  };
  add_edge("e10", "v1", "v0", "1", true);
  add_edge("e20", "v2", "v0", "1", true);
  add_edge("e03", "v0", "v3", "1", true);
  add_edge("e50", "v5", "v0", "1", true);
  add_edge("e06", "v0", "v6", "1", true);
  add_edge("e08", "v0", "v8", "1", true);
  add_edge("e04", "v0", "v3", "eta", false);
  add_edge("e23", "v2", "v3", "1", false);
  add_edge("e31", "v3", "v1", "1", false);
  add_edge("e07", "v0", "v6", "eta", false);
  add_edge("e56", "v5", "v6", "1", false);
  add_edge("e61", "v6", "v1", "1", false);
  add_edge("e18", "v1", "v8", "1", false);

  const auto add_face = [&](const std::string& id, std::array<std::pair<std::string, int>, 3> steps) {
    for (const auto& [e, s] : steps) {
      if (std::none_of(c.edges.begin(), c.edges.end(), [&](const OrbitEdge& x) { return x.id == e; })) return;
    }
    OrbitFace f;
    f.id = id;
    for (std::size_t i = 0; i < 3; ++i) f.steps[i] = {c.edge_index(steps[i].first), steps[i].second, named_product("1", n)};
    c.faces.push_back(std::move(f));
  };
  add_face("F031", {{{"e10", 1}, {"e03", 1}, {"e31", 1}}});
  add_face("F032", {{{"e20", 1}, {"e03", 1}, {"e23", -1}}});
  add_face("D104", {{{"e10", 1}, {"e04", 1}, {"e31", 1}}});
  add_face("F056", {{{"e50", 1}, {"e06", 1}, {"e56", -1}}});
  add_face("F061", {{{"e10", 1}, {"e06", 1}, {"e61", 1}}});
  add_face("D107", {{{"e10", 1}, {"e07", 1}, {"e61", 1}}});
  add_face("F081", {{{"e10", 1}, {"e08", 1}, {"e18", -1}}});
  return c;
}

bool ValidationReport::all_passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const ValidationLine& l) { return l.ok; });
}

std::string ValidationReport::to_string() const {
  std::string s;
  for (const ValidationLine& l : lines) {
    s += (l.ok ? "PASS  " : "FAIL  ") + l.check;
    if (!l.detail.empty()) s += "  (" + l.detail + ")";
    s += "\n";
  }
  return s;
}

bool collapse_related(const MarkedGraph& a, const MarkedGraph& b) {
  const MarkedGraph* big = &a;
  const MarkedGraph* small = &b;
  if (big->graph().num_vertices < small->graph().num_vertices) std::swap(big, small);
  if (big->graph().num_vertices == small->graph().num_vertices) return false;
  for (const auto& f : all_forests(big->graph())) {
    if (static_cast<int>(f.size()) != big->graph().num_vertices - small->graph().num_vertices) continue;
    if (equivalent(collapse(*big, f), *small)) return true;
  }
  return false;
}

bool same_orbit(std::vector<MarkedGraph> a, std::vector<MarkedGraph> b) {
  if (a.size() != b.size() || a.empty()) return false;
  const auto by_size = [](const MarkedGraph& x, const MarkedGraph& y) {
    return x.graph().num_vertices > y.graph().num_vertices;
  };
  std::stable_sort(a.begin(), a.end(), by_size);
  std::stable_sort(b.begin(), b.end(), by_size);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].graph().num_vertices != b[i].graph().num_vertices) return false;
  }
  const auto beta = find_translator(a[0], b[0]);
  if (!beta) return false;
  for (const FreeAut& s : stabilizer(a[0])) {
    const FreeAut alpha = compose(*beta, s);
    bool all = true;
    for (std::size_t i = 1; i < a.size() && all; ++i) all = equivalent(act(alpha, a[i]), b[i]).has_value();
    if (all) return true;
  }
  return false;
}

std::array<MarkedGraph, 3> face_vertices(const OrbitComplex& c, const OrbitFace& f) {
  FaceWalk w = walk_face(c, f, nullptr);
  if (!w.error.empty()) throw Error("face " + f.id + ": " + w.error);
  return w.vertices;
}

std::vector<FreeAut> edge_stabilizer(const OrbitComplex& c, const OrbitEdge& e) {
  const auto ends = edge_ends(c, e);
  std::vector<FreeAut> out;
  for (const FreeAut& s : stabilizer(ends[0])) {
    if (equivalent(act(s, ends[1]), ends[1])) out.push_back(s);
  }
  return out;
}

ValidationReport validate_complex(const OrbitComplex& c) {
  ValidationReport r;
  const auto add = [&](std::string check, bool ok, std::string detail = {}) {
    r.lines.push_back({std::move(check), ok, std::move(detail)});
  };
  const std::size_t nv = c.vertices.size();

  bool reps_ok = true;
  for (const OrbitVertex& v : c.vertices) {
    std::string why = v.rep.check();
    if (why.empty() && v.rep.rank() != c.n) why = "rank " + std::to_string(v.rep.rank());
    if (why.empty() && degree(v.rep.graph(), c.n) > 2) why = "degree " + std::to_string(degree(v.rep.graph(), c.n));
    if (why.empty()) {
      for (const OrbitVertex& u : c.vertices) {
        if (&u == &v) break;
        if (find_translator(u.rep, v.rep)) {
          why = "same orbit as " + u.id;
          break;
        }
      }
    }
    add("vertex " + v.id + " representative", why.empty(), why);
    reps_ok = reps_ok && why.empty();
  }
  if (!reps_ok) return r;

  const auto stabs = vertex_stabilizers(c);
  for (std::size_t i = 0; i < nv; ++i) {
    const OrbitVertex& v = c.vertices[i];
    std::string why;
    std::vector<FreeAut> gens;
    for (const NamedAut& g : v.stabilizer_gens) {
      if (!member(stabs[i], g.value)) why = g.name + " does not fix " + v.id;
      gens.push_back(g.value);
    }
    if (why.empty()) {
      const std::size_t got = FiniteGroup::generate(c.n, gens).order();
      if (got != stabs[i].size()) why = "generators give order " + std::to_string(got);
    }
    add("vertex " + v.id + " stabilizer generators", why.empty(),
        why.empty() ? "order " + std::to_string(stabs[i].size()) : why);
  }

  {
    std::string why;
    std::vector<std::size_t> parent(nv);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t tree_edges = 0;
    for (const OrbitVertex& v : c.vertices) {
      if (!v.in_tree) why = v.id + " is not marked as a tree vertex";
    }
    for (const OrbitEdge& e : c.edges) {
      if (!e.in_tree) continue;
      ++tree_edges;
      if (!e.g.value.is_identity()) why = e.id + " is a tree edge with g_e != 1";
      const std::size_t a = find(static_cast<std::size_t>(e.origin)), b = find(static_cast<std::size_t>(e.terminal));
      if (a == b) why = e.id + " closes a cycle in the tree";
      parent[a] = b;
    }
    if (why.empty() && tree_edges + 1 != nv) why = "tree does not span";
    add("tree edges form a spanning tree", why.empty(), why);
  }

  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const OrbitEdge& e = c.edges[i];
    const auto ends = edge_ends(c, e);
    std::string why;
    if (!collapse_related(ends[0], ends[1])) why = "endpoints are not related by a forest collapse";
    for (std::size_t j = 0; j < i && why.empty(); ++j) {
      const OrbitEdge& f = c.edges[j];
      const bool same_ends = (e.origin == f.origin && e.terminal == f.terminal) ||
                             (e.origin == f.terminal && e.terminal == f.origin);
      if (same_ends && same_orbit(ends, edge_ends(c, f))) why = "same orbit as " + f.id;
    }
    add("edge " + e.id, why.empty(), why);
  }

  std::vector<std::array<MarkedGraph, 3>> face_geo;
  for (const OrbitFace& f : c.faces) {
    FaceWalk w = walk_face(c, f, &stabs);
    std::string why = w.error;
    if (why.empty() && !member(stabs[static_cast<std::size_t>(w.start)], w.g_delta)) {
      why = "g_delta does not fix " + c.vertices[static_cast<std::size_t>(w.start)].id;
    }
    for (std::size_t a = 0; a < 3 && why.empty(); ++a) {
      for (std::size_t b = a + 1; b < 3 && why.empty(); ++b) {
        if (!collapse_related(w.vertices[a], w.vertices[b])) {
          why = "vertices " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " are not collapse related";
        }
      }
    }
    for (std::size_t j = 0; j < face_geo.size() && why.empty(); ++j) {
      const std::vector<MarkedGraph> mine(w.vertices.begin(), w.vertices.end());
      if (same_orbit(mine, {face_geo[j].begin(), face_geo[j].end()})) why = "same orbit as " + c.faces[j].id;
    }
    face_geo.push_back(w.vertices);
    add("face " + f.id, why.empty(), why);
  }
  return r;
}

std::vector<CombGraph> enumerate_graph_types(int n, int max_degree) {
  std::vector<CombGraph> out;
  for (int k = 0; k <= max_degree; ++k) {
    const int nv = k + 1;
    std::vector<std::pair<int, int>> slots;
    for (int v = 0; v < nv; ++v) slots.emplace_back(v, v);
    for (int a = 0; a < nv; ++a) {
      for (int b = a + 1; b < nv; ++b) slots.emplace_back(a, b);
    }
    std::vector<int> mult(slots.size(), 0);
    const auto emit = [&] {
      CombGraph g;
      g.num_vertices = nv;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        for (int m = 0; m < mult[s]; ++m) g.edges.push_back({slots[s].first, slots[s].second});
      }
      if (!g.check().empty() || degree(g, n) > max_degree) return;
      for (const CombGraph& h : out) {
        if (isomorphic(g, h)) return;
      }
      out.push_back(std::move(g));
    };
    const auto fill = [&](auto& self, std::size_t s, int left) -> void {
      if (s + 1 == slots.size()) {
        mult[s] = left;
        emit();
        return;
      }
      for (int m = left; m >= 0; --m) {
        mult[s] = m;
        self(self, s + 1, left - m);
      }
    };
    fill(fill, 0, n + k);
  }
  return out;
}

namespace {

// Marked graph on g with a breadth-first spanning tree and labels a1..an.
MarkedGraph standard_marking(const CombGraph& g, int n) {
  std::vector<bool> tree(g.edges.size(), false);
  std::vector<bool> seen(static_cast<std::size_t>(g.num_vertices), false);
  std::deque<int> queue{g.base};
  seen[static_cast<std::size_t>(g.base)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const GraphEdge& ed = g.edges[e];
      int other = -1;
      if (ed.from == v) other = ed.to;
      if (ed.to == v) other = ed.from;
      if (other < 0 || seen[static_cast<std::size_t>(other)]) continue;
      seen[static_cast<std::size_t>(other)] = true;
      tree[e] = true;
      queue.push_back(other);
    }
  }
  std::vector<Word> labels(g.edges.size());
  int next = 1;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!tree[e]) labels[e] = Word::generator(next++);
  }
  return MarkedGraph(n, g, tree, labels);
}

FreeAut random_aut(std::mt19937& rng, int n, int length) {
  FreeAut f = FreeAut::identity(n);
  std::uniform_int_distribution<int> pick(1, n), kind(0, 2), side(0, 1);
  for (int step = 0; step < length; ++step) {
    const int i = pick(rng);
    FreeAut x;
    switch (kind(rng)) {
      case 0:
        x = tau(i, n);
        break;
      case 1: {
        const int j = pick(rng);
        x = i == j ? tau(i, n) : sigma(i, j, n);
        break;
      }
      default: {
        int j = pick(rng);
        if (j == i) j = i % n + 1;
        x = n == 1 ? tau(1, n) : transvection(i, j, side(rng) == 0, n);
      }
    }
    f = compose(f, x);
  }
  return f;
}

void check_transitive(const MarkedGraph& rep, int samples, std::mt19937& rng) {
  for (int s = 0; s < samples; ++s) {
    const MarkedGraph m = act(random_aut(rng, rep.rank(), 8), rep);
    const auto beta = find_translator(rep, m);
    if (!beta || !equivalent(act(*beta, rep), m)) throw Error("markings of one graph type split into several orbits");
  }
}

std::vector<NamedAut> greedy_generators(const std::vector<FreeAut>& stab, int n) {
  std::vector<NamedAut> gens;
  std::vector<FreeAut> values;
  std::size_t order = 1;
  std::optional<FiniteGroup> group;
  int custom = 0;
  for (const FreeAut& s : stab) {
    if (order == stab.size()) break;
    if (group && group->contains(s)) continue;
    if (s.is_identity()) continue;
    values.push_back(s);
    group = FiniteGroup::generate(n, values);
    order = group->order();
    auto perm = SignedPerm::from_aut(s);
    gens.push_back({perm ? perm->to_string() : "x" + std::to_string(++custom), s});
  }
  return gens;
}

int type_of(const MarkedGraph& m, const std::vector<CombGraph>& types) {
  for (std::size_t t = 0; t < types.size(); ++t) {
    if (isomorphic(m.graph(), types[t])) return static_cast<int>(t);
  }
  throw Error("collapse left the enumerated graph types");
}

}  // namespace

OrbitComplex enumerate_quotient(int n, int max_degree) {
  if (n < 1 || n > 4) throw Error("enumerate_quotient supports 1 <= n <= 4");
  const std::vector<CombGraph> types = enumerate_graph_types(n, max_degree);
  std::mt19937 rng(12345);
  std::vector<MarkedGraph> defaults;
  for (const CombGraph& g : types) {
    defaults.push_back(standard_marking(g, n));
    check_transitive(defaults.back(), 20, rng);
  }

  struct EdgeOrbit {
    int top, bottom;
    std::vector<int> forest;
  };
  struct FaceOrbit {
    int top;
    std::vector<int> f1, f2;
  };
  std::vector<EdgeOrbit> edge_orbits;
  std::vector<FaceOrbit> face_orbits;
  for (std::size_t t = 0; t < types.size(); ++t) {
    const auto autos = graph_automorphisms(types[t]);
    const auto forests = all_forests(types[t]);
    for (const auto& f : forests) {
      bool least = true;
      for (const GraphIso& h : autos) least = least && !(image_of(f, h) < f);
      if (least) edge_orbits.push_back({static_cast<int>(t), type_of(collapse(defaults[t], f), types), f});
    }
    for (const auto& f1 : forests) {
      for (const auto& f2 : forests) {
        if (f1.size() >= f2.size() || !std::includes(f2.begin(), f2.end(), f1.begin(), f1.end())) continue;
        bool least = true;
        for (const GraphIso& h : autos) {
          least = least && !(std::make_pair(image_of(f1, h), image_of(f2, h)) < std::make_pair(f1, f2));
        }
        if (least) face_orbits.push_back({static_cast<int>(t), f1, f2});
      }
    }
  }

  // Lift a spanning tree of the quotient graph, starting from the rose.
  const std::size_t nt = types.size();
  std::vector<std::optional<MarkedGraph>> reps(nt);
  std::vector<bool> tree_edge(edge_orbits.size(), false);
  const int rose = 0;
  reps[rose] = defaults[rose];
  std::deque<int> queue{rose};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < edge_orbits.size(); ++i) {
      const EdgeOrbit& e = edge_orbits[i];
      if (e.top == u && !reps[static_cast<std::size_t>(e.bottom)]) {
        const MarkedGraph t = collapse(*reps[static_cast<std::size_t>(u)], e.forest);
        reps[static_cast<std::size_t>(e.bottom)] =
            act(*find_translator(defaults[static_cast<std::size_t>(e.bottom)], t), defaults[static_cast<std::size_t>(e.bottom)]);
        queue.push_back(e.bottom);
      } else if (e.bottom == u && !reps[static_cast<std::size_t>(e.top)]) {
        const MarkedGraph t = collapse(defaults[static_cast<std::size_t>(e.top)], e.forest);
        reps[static_cast<std::size_t>(e.top)] =
            act(*find_translator(t, *reps[static_cast<std::size_t>(u)]), defaults[static_cast<std::size_t>(e.top)]);
        queue.push_back(e.top);
      } else {
        continue;
      }
      tree_edge[i] = true;
    }
  }

  OrbitComplex c;
  c.n = n;
  for (std::size_t t = 0; t < nt; ++t) {
    if (!reps[t]) throw Error("quotient graph is disconnected");
    OrbitVertex v;
    v.id = "u" + std::to_string(t);
    v.rep = *reps[t];
    v.stabilizer_gens = greedy_generators(stabilizer(v.rep), n);
    c.vertices.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < edge_orbits.size(); ++i) {
    const EdgeOrbit& e = edge_orbits[i];
    OrbitEdge oe;
    oe.id = "d" + std::to_string(i);
    oe.origin = e.top;
    oe.terminal = e.bottom;
    oe.in_tree = tree_edge[i];
    const MarkedGraph t = collapse(c.vertices[static_cast<std::size_t>(e.top)].rep, e.forest);
    const MarkedGraph& w = c.vertices[static_cast<std::size_t>(e.bottom)].rep;
    if (equivalent(w, t)) {
      oe.g = {"1", FreeAut::identity(n)};
    } else {
      if (oe.in_tree) throw Error("lifted tree edge does not end at its tree vertex");
      oe.g = {"g_" + oe.id, *find_translator(w, t)};
    }
    c.edges.push_back(std::move(oe));
  }

  const auto stabs = vertex_stabilizers(c);
  for (std::size_t i = 0; i < face_orbits.size(); ++i) {
    const FaceOrbit& fo = face_orbits[i];
    const MarkedGraph& top = c.vertices[static_cast<std::size_t>(fo.top)].rep;
    const std::array<MarkedGraph, 3> path{collapse(top, fo.f1), collapse(top, fo.f2), top};
    OrbitFace f;
    f.id = "c" + std::to_string(i);
    int cur = fo.top;
    FreeAut acc = FreeAut::identity(n);
    for (std::size_t k = 0; k < 3; ++k) {
      const MarkedGraph target = act(invert(acc), path[k]);
      bool found = false;
      for (std::size_t ei = 0; ei < c.edges.size() && !found; ++ei) {
        const OrbitEdge& e = c.edges[ei];
        for (int sign : {1, -1}) {
          const int from = sign > 0 ? e.origin : e.terminal;
          const int to = sign > 0 ? e.terminal : e.origin;
          if (from != cur || found) continue;
          const FreeAut step = sign > 0 ? e.g.value : invert(e.g.value);
          const MarkedGraph& end = c.vertices[static_cast<std::size_t>(to)].rep;
          if (end.graph().num_vertices != target.graph().num_vertices) continue;
          std::vector<FreeAut> candidates{FreeAut::identity(n)};
          candidates.insert(candidates.end(), stabs[static_cast<std::size_t>(cur)].begin(),
                            stabs[static_cast<std::size_t>(cur)].end());
          for (const FreeAut& h : candidates) {
            if (!equivalent(act(compose(h, step), end), target)) continue;
            f.steps[k] = {static_cast<int>(ei), sign, {h.is_identity() ? "1" : "h", h}};
            acc = compose(compose(acc, h), step);
            cur = to;
            found = true;
            break;
          }
        }
      }
      if (!found) throw Error("face " + f.id + " has a side outside the edge orbits");
    }
    c.faces.push_back(std::move(f));
  }
  return c;
}

QuotientSummary summarize(const OrbitComplex& c) {
  QuotientSummary s{c.vertices.size(), c.edges.size(), c.faces.size(), {}};
  for (const OrbitVertex& v : c.vertices) s.stabilizer_orders.push_back(stabilizer(v.rep).size());
  std::sort(s.stabilizer_orders.begin(), s.stabilizer_orders.end());
  return s;
}

}  // namespace autfn

#include "autfn/brown.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "autfn/generation.hpp"
#include "autfn/signed_perm.hpp"

namespace autfn {

namespace {

std::string sanitize(std::string name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char ch = name[i];
    if (ch == ' ') {
      if (!out.empty() && out.back() != ',') out += '.';
    } else if (ch == '^') {
      out += '~';
    } else {
      out += ch;
    }
  }
  return out;
}

// The longest element of W_n has length n^2 in s_i, tau1.
std::size_t word_cap(int n) { return std::max<std::size_t>(12, static_cast<std::size_t>(n * n)); }

// Stabilizer groups of the vertices, built once per operation.
class VertexGroups {
 public:
  explicit VertexGroups(const OrbitComplex& c) : c_(c) {
    for (const OrbitVertex& v : c.vertices) {
      std::vector<FreeAut> gens;
      for (const NamedAut& g : v.stabilizer_gens) gens.push_back(g.value);
      groups_.push_back(FiniteGroup::generate(c.n, gens));
    }
  }

  const FiniteGroup& group(int v) const { return groups_[static_cast<std::size_t>(v)]; }

  SymWord word(int v, const FreeAut& f) const {
    const FiniteGroup& g = group(v);
    const auto idx = g.index_of(f);
    const OrbitVertex& vx = c_.vertices[static_cast<std::size_t>(v)];
    if (!idx) throw Error("element is not in the stabilizer of " + vx.id);
    SymWord out;
    for (int l : g.shortlex_words(word_cap(c_.n))[*idx]) {
      out.push_back({vertex_symbol(vx, vx.stabilizer_gens[static_cast<std::size_t>(l / 2)]), l % 2 == 0 ? 1 : -1});
    }
    return out;
  }

 private:
  const OrbitComplex& c_;
  std::vector<FiniteGroup> groups_;
};

SymWord cat(std::initializer_list<SymWord> parts) {
  SymWord out;
  for (const SymWord& p : parts) out.insert(out.end(), p.begin(), p.end());
  return sym_reduce(out);
}

SymWord power(const std::string& sym, int exp) { return {{sym, exp}}; }

}  // namespace

std::string vertex_symbol(const OrbitVertex& v, const NamedAut& gen) { return v.id + ":" + sanitize(gen.name); }

std::string edge_symbol(const OrbitEdge& e) { return "t_" + e.id; }

SymWord stab_word(const OrbitComplex& c, int vertex, const FreeAut& f) { return VertexGroups(c).word(vertex, f); }

std::vector<FreeAut> edge_stabilizer_generators(const OrbitComplex& c, const OrbitEdge& e) {
  const std::vector<FreeAut> ge = edge_stabilizer(c, e);
  std::vector<FreeAut> candidates;
  for (const NamedAut& g : c.vertices[static_cast<std::size_t>(e.origin)].stabilizer_gens) candidates.push_back(g.value);
  for (const NamedAut& g : c.vertices[static_cast<std::size_t>(e.terminal)].stabilizer_gens) {
    candidates.push_back(compose(compose(e.g.value, g.value), invert(e.g.value)));
  }
  candidates.insert(candidates.end(), ge.begin(), ge.end());
  std::vector<FreeAut> gens;
  std::optional<FiniteGroup> sub;
  for (const FreeAut& x : candidates) {
    if (sub && sub->order() == ge.size()) break;
    if (x.is_identity() || !std::binary_search(ge.begin(), ge.end(), x)) continue;
    if (sub && sub->contains(x)) continue;
    gens.push_back(x);
    sub = FiniteGroup::generate(c.n, gens);
  }
  return gens;
}

std::vector<Relator> tree_relations(const OrbitComplex& c) {
  std::vector<Relator> out;
  for (const OrbitEdge& e : c.edges) {
    if (e.in_tree) out.push_back({power(edge_symbol(e), 1), "tree " + e.id});
  }
  return out;
}

std::vector<Relator> edge_relations(const OrbitComplex& c) {
  const VertexGroups vg(c);
  std::vector<Relator> out;
  for (const OrbitEdge& e : c.edges) {
    const std::string t = edge_symbol(e);
    for (const FreeAut& x : edge_stabilizer_generators(c, e)) {
      const FreeAut cx = compose(compose(invert(e.g.value), x), e.g.value);
      SymWord w = cat({power(t, -1), vg.word(e.origin, x), power(t, 1), sym_inverse(vg.word(e.terminal, cx))});
      if (!cyclic_normal_form(w).empty()) out.push_back({std::move(w), "edge " + e.id});
    }
  }
  return out;
}

std::vector<Relator> face_relations(const OrbitComplex& c) {
  const VertexGroups vg(c);
  std::vector<Relator> out;
  for (const OrbitFace& f : c.faces) {
    const OrbitEdge& first = c.edges[static_cast<std::size_t>(f.steps[0].edge)];
    const int start = f.steps[0].sign > 0 ? first.origin : first.terminal;
    int cur = start;
    FreeAut acc = FreeAut::identity(c.n);
    SymWord w;
    for (const FaceStep& s : f.steps) {
      const OrbitEdge& e = c.edges[static_cast<std::size_t>(s.edge)];
      if ((s.sign > 0 ? e.origin : e.terminal) != cur) throw Error("face " + f.id + " does not follow its edges");
      w = cat({w, vg.word(cur, s.h.value), power(edge_symbol(e), s.sign)});
      acc = compose(compose(acc, s.h.value), s.sign > 0 ? e.g.value : invert(e.g.value));
      cur = s.sign > 0 ? e.terminal : e.origin;
    }
    if (cur != start) throw Error("face " + f.id + " does not close");
    out.push_back({cat({w, sym_inverse(vg.word(start, acc))}), "face " + f.id});
  }
  return out;
}

std::vector<Relator> stabilizer_relations(const OrbitComplex& c) {
  const VertexGroups vg(c);
  std::vector<Relator> out;
  PresentationSearch opts;
  opts.prune = false;
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    const OrbitVertex& vx = c.vertices[v];
    for (const LetterWord& r : find_presentation(vg.group(static_cast<int>(v)), opts)) {
      SymWord w;
      bool in_w = true;
      for (int l : r) {
        const NamedAut& g = vx.stabilizer_gens[static_cast<std::size_t>(l / 2)];
        in_w = in_w && SignedPerm::from_aut(g.value).has_value();
        w.push_back({vertex_symbol(vx, g), l % 2 == 0 ? 1 : -1});
      }
      out.push_back({std::move(w), "stab " + vx.id + (in_w ? " W" : "")});
    }
  }
  return out;
}

Presentation assemble(const OrbitComplex& c) {
  Presentation p;
  for (const OrbitVertex& v : c.vertices) {
    for (const NamedAut& g : v.stabilizer_gens) p.generators.push_back(vertex_symbol(v, g));
  }
  for (const OrbitEdge& e : c.edges) p.generators.push_back(edge_symbol(e));
  for (auto family : {tree_relations, face_relations, edge_relations, stabilizer_relations}) {
    for (Relator& r : family(c)) p.relators.push_back(std::move(r));
  }
  p.validate();
  return p;
}

Assignment brown_assignment(const OrbitComplex& c) {
  Assignment a;
  for (const OrbitVertex& v : c.vertices) {
    for (const NamedAut& g : v.stabilizer_gens) a.emplace(vertex_symbol(v, g), g.value);
  }
  for (const OrbitEdge& e : c.edges) a.emplace(edge_symbol(e), e.g.value);
  return a;
}

namespace {

struct Syllables {
  std::vector<SignedPerm> w;  // W_n parts between etas (cyclic); a single part when no eta
  bool has_eta = false;
};

std::optional<SignedPerm> w_value(const std::string& sym, int n) {
  if (sym == "eta") return std::nullopt;
  const auto v = standard_symbol_value(sym, n);
  if (!v) return std::nullopt;
  return SignedPerm::from_aut(*v);
}

bool perm_less(const std::vector<SignedPerm>& a, const std::vector<SignedPerm>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const SignedPerm& x, const SignedPerm& y) {
    for (int j = 1; j <= x.rank(); ++j) {
      if (x.image(j) != y.image(j)) return x.image(j) < y.image(j);
    }
    return false;
  });
}

// `parts` are the W_n syllables of eta p1 eta p2 ... eta pk (cyclic, k >= 1).
// Cancels eta 1 eta and picks the least rotation or inverse rotation.
Syllables canonical(std::vector<SignedPerm> parts, int n) {
  const SignedPerm id = SignedPerm::identity(n);
  for (;;) {
    const std::size_t k = parts.size();
    std::size_t i = 0;
    while (i < k && !(k > 1 && parts[i] == id)) ++i;
    if (i == k) break;
    const std::size_t prev = (i + k - 1) % k, next = (i + 1) % k;
    if (k == 2) return Syllables{{parts[prev]}, false};
    const SignedPerm merged = sp_compose(parts[prev], parts[next]);
    std::vector<SignedPerm> np;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i || j == next) continue;
      np.push_back(j == prev ? merged : parts[j]);
    }
    parts = std::move(np);
  }
  const std::size_t k = parts.size();
  std::vector<SignedPerm> inv;
  for (std::size_t j = k; j-- > 0;) inv.push_back(parts[j].inverse());
  std::vector<SignedPerm> best = parts;
  for (const auto* base : {&parts, &inv}) {
    for (std::size_t r = 0; r < k; ++r) {
      std::vector<SignedPerm> rot(base->begin() + static_cast<std::ptrdiff_t>(r), base->end());
      rot.insert(rot.end(), base->begin(), base->begin() + static_cast<std::ptrdiff_t>(r));
      if (perm_less(rot, best)) best = std::move(rot);
    }
  }
  return Syllables{std::move(best), true};
}

// Treats every eta^-1 as eta.
std::optional<Syllables> syllables_of(const SymWord& word, int n) {
  std::vector<SignedPerm> parts;
  SignedPerm cur = SignedPerm::identity(n);
  bool any_eta = false;
  for (const SymLetter& l : word) {
    if (l.sym == "eta") {
      parts.push_back(cur);
      cur = SignedPerm::identity(n);
      any_eta = true;
      continue;
    }
    const auto v = w_value(l.sym, n);
    if (!v) return std::nullopt;
    cur = sp_compose(cur, l.exp > 0 ? *v : v->inverse());
  }
  if (!any_eta) return Syllables{{cur}, false};
  // The word is p0 eta p1 eta ... eta cur; cyclically cur joins p0.
  parts[0] = sp_compose(cur, parts[0]);
  // Rotate so that each part follows an eta: eta p0' eta p1 ... = parts in order.
  std::vector<SignedPerm> cyc(parts.begin() + 1, parts.end());
  cyc.push_back(parts[0]);
  return canonical(std::move(cyc), n);
}

FreeProductForm to_form(const Syllables& s) {
  FreeProductForm f;
  f.has_eta = s.has_eta;
  for (const SignedPerm& p : s.w) f.syllables.push_back(p.to_string());
  if (!s.has_eta && s.w.size() == 1 && s.w[0] == SignedPerm::identity(s.w[0].rank())) f.syllables = {"1"};
  return f;
}

SymWord stau_word(const SignedPerm& p) {
  SymWord out;
  for (int t : express_in_s_tau(p)) out.push_back({t == kTau1Token ? "tau1" : "s" + std::to_string(t), 1});
  return out;
}

SymWord form_word(const Syllables& s) {
  SymWord out;
  for (const SignedPerm& p : s.w) {
    if (s.has_eta) out.push_back({"eta", 1});
    const SymWord part = stau_word(p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::size_t w_order(int n) {
  std::size_t o = 1;
  for (int k = 1; k <= n; ++k) o *= 2 * static_cast<std::size_t>(k);
  return o;
}

// Coset-enumeration index of the relators over the listed symbols.
std::optional<std::size_t> enumerate_index(const std::vector<std::string>& symbols, const std::vector<Relator>& rels,
                                           std::size_t budget) {
  std::vector<LetterWord> words;
  for (const Relator& r : rels) {
    LetterWord w;
    for (const SymLetter& l : r.word) {
      const auto it = std::find(symbols.begin(), symbols.end(), l.sym);
      if (it == symbols.end()) return std::nullopt;
      const int g = static_cast<int>(it - symbols.begin());
      w.push_back(l.exp > 0 ? 2 * g : 2 * g + 1);
    }
    words.push_back(std::move(w));
  }
  const auto t = enumerate_cosets(static_cast<int>(symbols.size()), words, budget);
  if (!t) return std::nullopt;
  return t->index();
}

// Known identities eta x eta = phi(x), closed under products.
class EtaConjugation {
 public:
  explicit EtaConjugation(int n) : n_(n) {}

  void add(const SignedPerm& x, const SignedPerm& y) {
    gens_.emplace_back(x, y);
    map_.clear();
    const SignedPerm id = SignedPerm::identity(n_);
    map_.emplace(id.to_string(), std::make_pair(id, id));
    std::vector<std::pair<SignedPerm, SignedPerm>> frontier{{id, id}};
    while (!frontier.empty()) {
      std::vector<std::pair<SignedPerm, SignedPerm>> next;
      for (const auto& [a, b] : frontier) {
        for (const auto& [gx, gy] : gens_) {
          std::pair<SignedPerm, SignedPerm> z{sp_compose(a, gx), sp_compose(b, gy)};
          if (map_.emplace(z.first.to_string(), z).second) next.push_back(z);
        }
      }
      frontier = std::move(next);
    }
  }

  std::optional<SignedPerm> phi(const SignedPerm& x) const {
    const auto it = map_.find(x.to_string());
    if (it == map_.end()) return std::nullopt;
    return it->second.second;
  }

  // True when rewriting eta x eta -> phi(x) reduces the relator to the identity.
  bool reduces(Syllables s) const {
    while (s.has_eta) {
      bool step = false;
      const std::size_t k = s.w.size();
      for (std::size_t i = 0; i < k && !step; ++i) {
        const auto y = phi(s.w[i]);
        if (!y) continue;
        if (k == 1) return false;
        if (k == 2) {
          const SignedPerm rest = sp_compose(*y, s.w[(i + 1) % 2]);
          return rest == SignedPerm::identity(n_);
        }
        const std::size_t prev = (i + k - 1) % k, next = (i + 1) % k;
        // ... w_prev eta w_i eta w_next ... -> w_prev phi(w_i) w_next
        const SignedPerm merged = sp_compose(sp_compose(s.w[prev], *y), s.w[next]);
        std::vector<SignedPerm> np;
        for (std::size_t j = 0; j < k; ++j) {
          if (j == i || j == next) continue;
          np.push_back(j == prev ? merged : s.w[j]);
        }
        s = canonical(std::move(np), n_);
        step = true;
      }
      if (!step) return false;
    }
    return s.w.size() == 1 && s.w[0] == SignedPerm::identity(n_);
  }

 private:
  int n_;
  std::vector<std::pair<SignedPerm, SignedPerm>> gens_;
  std::map<std::string, std::pair<SignedPerm, SignedPerm>> map_;
};

bool is_square_of(const SymWord& w, const std::string& sym) {
  const SymWord c = cyclic_normal_form(w);
  return c.size() == 2 && c[0].sym == sym && c[1] == c[0];
}

std::string base_name(const std::string& sym) {
  const auto colon = sym.find(':');
  return colon == std::string::npos ? sym : sym.substr(colon + 1);
}

Presentation eliminate(Presentation p, int n, std::vector<std::string>* trace) {
  std::set<std::string> keep, taken;
  std::map<std::string, std::string> rename;
  for (const std::string& g : p.generators) {
    if (g.rfind("t_", 0) == 0) continue;
    const std::string b = base_name(g);
    const bool canonical_name = b == "eta" || b == "tau1" || (b.size() > 1 && b[0] == 's' && b.find_first_not_of("0123456789", 1) == std::string::npos);
    if (canonical_name && standard_symbol_value(b, n) && !taken.count(b)) {
      keep.insert(g);
      taken.insert(b);
      rename[g] = b;
    }
  }
  const auto priority = [&](const std::string& g) -> long {
    if (keep.count(g)) return -1;
    const auto pos = std::find(p.generators.begin(), p.generators.end(), g) - p.generators.begin();
    return (g.rfind("t_", 0) == 0 ? 1000000L : 0L) + static_cast<long>(pos);
  };
  for (;;) {
    long best_pri = -1;
    std::size_t best_len = 0;
    std::string best_sym;
    SymWord best_def;
    std::string best_tag;
    for (const Relator& r : p.relators) {
      const SymWord w = cyclic_normal_form(r.word);
      std::map<std::string, int> count;
      for (const SymLetter& l : w) ++count[l.sym];
      for (std::size_t i = 0; i < w.size(); ++i) {
        const std::string& y = w[i].sym;
        if (count[y] != 1) continue;
        const long pri = priority(y);
        if (pri < 0 || pri < best_pri || (pri == best_pri && w.size() >= best_len)) continue;
        // y^e rest = 1
        SymWord rest(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
        rest.insert(rest.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        best_pri = pri;
        best_len = w.size();
        best_sym = y;
        best_def = w[i].exp > 0 ? sym_inverse(rest) : rest;
        best_tag = r.tag;
      }
    }
    if (best_pri < 0) break;
    if (trace) {
      trace->push_back("eliminate " + best_sym + " = " + (best_def.empty() ? "1" : sym_word_to_string(best_def)) +
                       "  [" + best_tag + "]");
    }
    p = tietze_eliminate(p, best_sym, best_def);
  }
  Presentation out;
  for (const std::string& g : p.generators) out.generators.push_back(rename.count(g) ? rename[g] : g);
  for (const Relator& r : p.relators) {
    SymWord w = r.word;
    for (SymLetter& l : w) {
      if (rename.count(l.sym)) l.sym = rename[l.sym];
    }
    out.relators.push_back({std::move(w), r.tag});
  }
  if (trace) {
    for (const auto& [from, to] : rename) {
      if (from != to && std::count(out.generators.begin(), out.generators.end(), to)) trace->push_back("rename " + from + " -> " + to);
    }
  }
  return out;
}

}  // namespace

std::optional<FreeProductForm> free_product_form(const SymWord& w, int n) {
  const auto s = syllables_of(w, n);
  if (!s) return std::nullopt;
  return to_form(*s);
}

Presentation simplify(const Presentation& input, int n, std::vector<std::string>* trace) {
  input.validate();
  Presentation p = eliminate(input, n, trace);

  const bool standard = std::all_of(p.generators.begin(), p.generators.end(),
                                    [&](const std::string& g) { return standard_symbol_value(g, n).has_value(); });
  const bool has_eta = std::count(p.generators.begin(), p.generators.end(), "eta") > 0;
  if (!standard || !has_eta) return p;

  // Involutions: symbols with a square relator.
  std::set<std::string> involutions;
  for (const Relator& r : p.relators) {
    for (const std::string& g : p.generators) {
      if (is_square_of(r.word, g)) involutions.insert(g);
    }
  }
  for (const std::string& g : p.generators) {
    if (compose(*standard_symbol_value(g, n), *standard_symbol_value(g, n)).is_identity() && !involutions.count(g)) return p;
  }
  for (Relator& r : p.relators) {
    for (SymLetter& l : r.word) l.exp = 1;
  }

  std::vector<std::string> w_symbols;
  for (const std::string& g : p.generators) {
    if (g != "eta") w_symbols.push_back(g);
  }
  std::vector<Relator> w_rels, rest;
  for (const Relator& r : p.relators) {
    const bool uses_eta = std::any_of(r.word.begin(), r.word.end(), [](const SymLetter& l) { return l.sym == "eta"; });
    (uses_eta ? rest : w_rels).push_back(r);
  }
  if (enumerate_index(w_symbols, w_rels, 200000) != w_order(n)) return p;

  std::vector<std::string> canonical_w;
  for (int i = 1; i < n; ++i) canonical_w.push_back("s" + std::to_string(i));
  canonical_w.push_back("tau1");
  Presentation out;
  if (std::set<std::string>(w_symbols.begin(), w_symbols.end()) ==
      std::set<std::string>(canonical_w.begin(), canonical_w.end())) {
    out = wn_presentation(n);
    if (trace) trace->push_back("replace " + std::to_string(w_rels.size()) + " W_n relators by the standard W_n presentation");
  } else {
    out.generators = w_symbols;
    std::set<SymWord> seen;
    for (const Relator& r : w_rels) {
      if (seen.insert(cyclic_normal_form(r.word)).second) out.relators.push_back(r);
    }
  }
  out.generators.push_back("eta");

  bool have_eta_square = false;
  EtaConjugation conj(n);
  std::vector<FreeProductForm> kept;
  for (const Relator& r : rest) {
    const Syllables s = *syllables_of(r.word, n);
    const FreeProductForm f = to_form(s);
    if (is_square_of(r.word, "eta")) {
      if (!have_eta_square) out.relators.push_back({{{"eta", 1}, {"eta", 1}}, r.tag});
      have_eta_square = true;
      continue;
    }
    if (!s.has_eta) {
      if (trace) trace->push_back("drop [" + r.tag + "]: trivial in W_n * <eta>");
      continue;
    }
    if (std::find(kept.begin(), kept.end(), f) != kept.end()) {
      if (trace) trace->push_back("drop [" + r.tag + "]: repeats an earlier relator");
      continue;
    }
    if (s.w.size() > 2 && conj.reduces(s)) {
      if (trace) trace->push_back("drop [" + r.tag + "]: follows from eta w eta = w' relators");
      continue;
    }
    kept.push_back(f);
    if (s.w.size() == 2) {
      conj.add(s.w[0], s.w[1].inverse());
      conj.add(s.w[1], s.w[0].inverse());
    }
    out.relators.push_back({form_word(s), r.tag});
    if (trace) trace->push_back("keep [" + r.tag + "]: " + sym_word_to_string(out.relators.back().word));
  }
  if (!have_eta_square) return p;
  out.validate();
  return out;
}

std::string CompareReport::to_string() const {
  std::string s;
  for (const CompareLine& l : lines) {
    s += (l.ok ? "PASS  " : "FAIL  ") + l.item;
    if (!l.detail.empty()) s += "  (" + l.detail + ")";
    s += "\n";
  }
  return s;
}

CompareReport compare(const Presentation& derived, const Presentation& reference, int n, int depth) {
  CompareReport rep;
  const auto values = [&](const Presentation& p) {
    std::vector<NamedAut> out;
    for (const std::string& g : p.generators) {
      const auto v = standard_symbol_value(g, n);
      if (!v) throw Error("compare needs standard symbols, got '" + g + "'");
      out.push_back({g, *v});
    }
    return out;
  };
  const auto dv = values(derived), rv = values(reference);

  const VerifyReport vd = verify(derived, tautological_assignment(derived, n), n);
  const VerifyReport vr = verify(reference, tautological_assignment(reference, n), n);
  rep.relators_hold = vd.all_passed() && vr.all_passed();
  rep.lines.push_back({"(i) relators evaluate to the identity", rep.relators_hold,
                       std::to_string(derived.relators.size()) + " derived, " + std::to_string(reference.relators.size()) +
                           " reference"});

  const auto reaches = [&](const std::vector<NamedAut>& gens, const std::vector<NamedAut>& targets) {
    std::vector<NamedAut> with_inverses = gens;
    for (const NamedAut& g : gens) {
      if (!compose(g.value, g.value).is_identity()) with_inverses.push_back({g.name + "^-1", invert(g.value)});
    }
    std::vector<FreeAut> t;
    for (const NamedAut& x : targets) t.push_back(x.value);
    const auto ws = find_witnesses(with_inverses, t, depth);
    return std::all_of(ws.begin(), ws.end(), [](const Witness& w) { return w.word.has_value(); });
  };
  rep.generators_equivalent = reaches(dv, rv) && reaches(rv, dv);
  rep.lines.push_back({"(ii) generating sets express each other within depth " + std::to_string(depth),
                       rep.generators_equivalent, ""});

  const auto w_index = [&](const Presentation& p) {
    std::vector<std::string> syms;
    for (const std::string& g : p.generators) {
      if (g != "eta") syms.push_back(g);
    }
    std::vector<Relator> rels;
    for (const Relator& r : p.relators) {
      if (std::none_of(r.word.begin(), r.word.end(), [](const SymLetter& l) { return l.sym == "eta"; })) rels.push_back(r);
    }
    return enumerate_index(syms, rels, 200000);
  };
  const auto wi_d = w_index(derived), wi_r = w_index(reference);
  const bool w_ok = wi_d == w_order(n) && wi_r == w_order(n);
  rep.lines.push_back({"(iii) eta-free relators present W_n on both sides", w_ok,
                       "indices " + (wi_d ? std::to_string(*wi_d) : std::string("?")) + " and " +
                           (wi_r ? std::to_string(*wi_r) : std::string("?"))});

  std::vector<std::pair<FreeProductForm, std::string>> derived_forms;
  for (const Relator& r : derived.relators) {
    if (std::none_of(r.word.begin(), r.word.end(), [](const SymLetter& l) { return l.sym == "eta"; })) continue;
    const auto f = free_product_form(r.word, n);
    if (f) derived_forms.emplace_back(is_square_of(r.word, "eta") ? FreeProductForm{{"eta^2"}, true} : *f, r.tag);
  }
  std::vector<bool> used(derived_forms.size(), false);
  bool all_matched = w_ok;
  for (const Relator& r : reference.relators) {
    if (std::none_of(r.word.begin(), r.word.end(), [](const SymLetter& l) { return l.sym == "eta"; })) continue;
    const auto f0 = free_product_form(r.word, n);
    const FreeProductForm f = is_square_of(r.word, "eta") ? FreeProductForm{{"eta^2"}, true} : *f0;
    std::string match;
    for (std::size_t i = 0; i < derived_forms.size(); ++i) {
      if (derived_forms[i].first == f) {
        used[i] = true;
        match = derived_forms[i].second;
        break;
      }
    }
    all_matched = all_matched && !match.empty();
    rep.lines.push_back({"(iii) " + r.tag + " " + sym_word_to_string(r.word), !match.empty(),
                         match.empty() ? "no derived relator in this class" : "matched by " + match});
  }
  for (std::size_t i = 0; i < derived_forms.size(); ++i) {
    if (!used[i]) rep.lines.push_back({"(iii) extra derived relator from " + derived_forms[i].second, true, "not in the reference"});
  }
  rep.reference_matched = all_matched;
  return rep;
}

Derivation derive(const OrbitComplex& c) {
  Derivation d;
  d.assembled = assemble(c);
  for (const Relator& r : d.assembled.relators) d.trace.push_back("relator [" + r.tag + "] " + sym_word_to_string(r.word));
  d.simplified = simplify(d.assembled, c.n, &d.trace);
  return d;
}

}  // namespace autfn

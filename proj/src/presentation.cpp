#include "autfn/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>

namespace autfn {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::optional<int> suffix_index(const std::string& name, std::string_view prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  const std::string_view rest = std::string_view(name).substr(prefix.size());
  if (!all_digits(rest)) return std::nullopt;
  return std::stoi(std::string(rest));
}

std::optional<std::pair<int, int>> sigma_indices(const std::string& name) {
  const std::string_view prefix = "sigma";
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  const std::string rest = name.substr(prefix.size());
  const auto us = rest.find('_');
  if (us != std::string::npos) {
    const std::string a = rest.substr(0, us), b = rest.substr(us + 1);
    if (!all_digits(a) || !all_digits(b)) return std::nullopt;
    return std::make_pair(std::stoi(a), std::stoi(b));
  }
  if (rest.size() != 2 || !all_digits(rest)) return std::nullopt;
  return std::make_pair(rest[0] - '0', rest[1] - '0');
}

SymWord sym(std::initializer_list<const char*> names) {
  SymWord w;
  for (const char* s : names) w.push_back({s, 1});
  return w;
}

SymWord cat(std::initializer_list<SymWord> parts) {
  SymWord w;
  for (const SymWord& p : parts) w.insert(w.end(), p.begin(), p.end());
  return w;
}

}  // namespace

SymWord sym_reduce(const SymWord& w) {
  SymWord out;
  for (const SymLetter& l : w) {
    if (l.exp != 1 && l.exp != -1) throw Error("symbol exponent must be +1 or -1");
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

SymWord sym_inverse(const SymWord& w) {
  SymWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

SymWord sym_concat(const SymWord& u, const SymWord& v) { return sym_reduce(cat({u, v})); }

SymWord sym_power(const SymWord& w, int k) {
  SymWord base = k < 0 ? sym_inverse(w) : w;
  SymWord out;
  for (int i = 0; i < std::abs(k); ++i) out.insert(out.end(), base.begin(), base.end());
  return sym_reduce(out);
}

SymWord cyclic_normal_form(const SymWord& w) {
  SymWord r = sym_reduce(w);
  std::size_t b = 0, e = r.size();
  while (e - b >= 2 && r[b] == r[e - 1].inverse()) ++b, --e;
  r = SymWord(r.begin() + static_cast<std::ptrdiff_t>(b), r.begin() + static_cast<std::ptrdiff_t>(e));
  SymWord best = r;
  for (std::size_t k = 1; k < r.size(); ++k) {
    SymWord rot(r.begin() + static_cast<std::ptrdiff_t>(k), r.end());
    rot.insert(rot.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k));
    if (rot < best) best = std::move(rot);
  }
  return best;
}

SymWord parse_sym_word(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  SymWord w;
  while (in >> tok) {
    if (tok == "1") continue;
    int exp = 1;
    const auto caret = tok.find('^');
    if (caret != std::string::npos) {
      const std::string e = tok.substr(caret + 1);
      if (e == "-1") {
        exp = -1;
      } else if (e != "1") {
        throw Error("unsupported exponent in token '" + tok + "'");
      }
      tok = tok.substr(0, caret);
    }
    if (tok.empty()) throw Error("empty symbol in word '" + std::string(text) + "'");
    w.push_back({tok, exp});
  }
  return sym_reduce(w);
}

std::string sym_word_to_string(const SymWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i].sym;
    if (w[i].exp < 0) s += "^-1";
  }
  return s;
}

bool Presentation::has_generator(const std::string& name) const {
  return std::find(generators.begin(), generators.end(), name) != generators.end();
}

void Presentation::validate() const {
  std::set<std::string> names(generators.begin(), generators.end());
  if (names.size() != generators.size()) throw Error("duplicate generator symbol");
  for (const Relator& r : relators) {
    for (const SymLetter& l : r.word) {
      if (!names.count(l.sym)) throw Error("relator uses undeclared symbol '" + l.sym + "'");
    }
  }
}

std::string Presentation::to_text() const {
  std::string s;
  for (const std::string& g : generators) s += "gen " + g + "\n";
  for (const Relator& r : relators) {
    s += "rel " + sym_word_to_string(r.word);
    if (!r.tag.empty()) s += "  # " + r.tag;
    s += "\n";
  }
  return s;
}

Presentation Presentation::parse(std::string_view text) {
  Presentation p;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string tag;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      tag = trim(std::string_view(line).substr(hash + 1));
      line = line.substr(0, hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (body.rfind("gen ", 0) == 0) {
      p.generators.push_back(trim(std::string_view(body).substr(4)));
    } else if (body.rfind("rel ", 0) == 0) {
      p.relators.push_back({parse_sym_word(std::string_view(body).substr(4)), tag});
    } else {
      throw Error("presentation line " + std::to_string(lineno) + ": expected 'gen' or 'rel'");
    }
  }
  p.validate();
  return p;
}

std::string sigma_name(int i, int j) {
  if (i <= 9 && j <= 9) return "sigma" + std::to_string(i) + std::to_string(j);
  return "sigma" + std::to_string(i) + "_" + std::to_string(j);
}

std::optional<FreeAut> standard_symbol_value(const std::string& name, int n) {
  if (name == "eta") return eta(n);
  if (auto i = suffix_index(name, "tau")) return tau(*i, n);
  if (auto i = suffix_index(name, "s")) return s_gen(*i, n);
  if (auto ij = sigma_indices(name)) return sigma(ij->first, ij->second, n);
  return std::nullopt;
}

Assignment tautological_assignment(const Presentation& p, int n) {
  Assignment a;
  for (const std::string& g : p.generators) {
    auto v = standard_symbol_value(g, n);
    if (!v) throw Error("no standard value for symbol '" + g + "'");
    a.emplace(g, std::move(*v));
  }
  return a;
}

SymWord expand_abbreviation(const std::string& name, int n) {
  if (name == "eta" || name == "tau1") return {{name, 1}};
  if (auto i = suffix_index(name, "s")) {
    if (*i < 1 || *i >= n) throw Error("s index out of range: " + name);
    return {{name, 1}};
  }
  if (auto ij = sigma_indices(name)) {
    int i = std::min(ij->first, ij->second), j = std::max(ij->first, ij->second);
    if (i < 1 || j > n || i == j) throw Error("sigma indices out of range: " + name);
    // s_{j-1} ... s_{i+1} s_i s_{i+1} ... s_{j-1}
    SymWord w;
    for (int k = j - 1; k > i; --k) w.push_back({"s" + std::to_string(k), 1});
    w.push_back({"s" + std::to_string(i), 1});
    for (int k = i + 1; k < j; ++k) w.push_back({"s" + std::to_string(k), 1});
    return w;
  }
  if (auto i = suffix_index(name, "tau")) {
    if (*i < 1 || *i > n) throw Error("tau index out of range: " + name);
    const SymWord c = expand_abbreviation(sigma_name(1, *i), n);
    return cat({c, {{"tau1", 1}}, SymWord(c.rbegin(), c.rend())});
  }
  throw Error("unknown symbol '" + name + "'");
}

Presentation wn_presentation(int n) {
  if (n < 2) throw Error("wn_presentation requires n >= 2");
  Presentation p;
  const auto s = [](int i) { return SymWord{{"s" + std::to_string(i), 1}}; };
  const SymWord t1{{"tau1", 1}};
  for (int i = 1; i < n; ++i) p.generators.push_back("s" + std::to_string(i));
  p.generators.push_back("tau1");
  for (int i = 1; i < n; ++i) p.relators.push_back({sym_power(s(i), 2), "W"});
  for (int i = 1; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) p.relators.push_back({sym_power(cat({s(i), s(j)}), 2), "W"});
  }
  for (int i = 2; i < n; ++i) p.relators.push_back({sym_power(cat({s(i - 1), s(i)}), 3), "W"});
  p.relators.push_back({sym_power(t1, 2), "W"});
  p.relators.push_back({sym_power(cat({t1, s(1)}), 4), "W"});
  for (int i = 2; i < n; ++i) p.relators.push_back({sym_power(cat({t1, s(i)}), 2), "W"});
  return p;
}

Presentation theorem1_presentation(int n) {
  if (n < 2) throw Error("theorem1_presentation requires n >= 2");
  const SymWord e = sym({"eta"});
  if (n == 2) {
    Presentation p;
    p.generators = {"tau1", "tau2", "s1", "eta"};
    const SymWord t1 = sym({"tau1"}), t2 = sym({"tau2"}), s1 = sym({"s1"});
    p.relators = {
        {sym_power(e, 2), "(1)"},
        {sym_power(cat({s1, e}), 3), "(2)"},
        {sym_power(cat({sym_power(cat({e, t1}), 2), t2}), 2), "(3)"},
        {sym_power(s1, 2), "(4)"},
        {sym_power(t1, 2), "(5)"},
        {sym_power(cat({t1, s1}), 4), "(6)"},
        {sym_reduce(cat({sym_inverse(t2), s1, t1, s1})), "(7)"},
    };
    return p;
  }
  const auto x = [n](const std::string& name) { return expand_abbreviation(name, n); };
  Presentation p;
  std::vector<Relator> rels;
  rels.push_back({sym_power(e, 2), "(1)"});
  rels.push_back({sym_power(cat({x("sigma12"), e}), 3), "(2)"});
  for (int i = 3; i <= n; ++i) rels.push_back({sym_power(cat({e, x("tau" + std::to_string(i))}), 2), "(3)"});
  for (int i = 3; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) rels.push_back({sym_power(cat({e, x(sigma_name(i, j))}), 2), "(4)"});
  }
  rels.push_back({sym_power(cat({sym_power(cat({e, x("tau1")}), 2), x("tau2")}), 2), "(5)"});
  const SymWord phi = cat({e, x("sigma13"), x("tau2"), e});
  rels.push_back({sym_power(cat({phi, x("sigma12")}), 4), "(6)"});
  rels.push_back({sym_reduce(cat({x("sigma12"), phi, x("sigma12"), sym_power(cat({x("sigma23"), phi}), 2)})), "(7)"});
  if (n >= 4) rels.push_back({sym_power(cat({x("sigma14"), x("sigma23"), e}), 4), "(8)"});
  Presentation w = wn_presentation(n);
  p.generators = w.generators;
  p.generators.push_back("eta");
  p.relators = std::move(w.relators);
  p.relators.insert(p.relators.end(), rels.begin(), rels.end());
  return p;
}

FreeAut evaluate_relator(const SymWord& w, const Assignment& a, int n) {
  return evaluate_word(
      w, FreeAut::identity(n),
      [&](const std::string& s) -> const FreeAut& {
        auto it = a.find(s);
        if (it == a.end()) throw Error("unassigned symbol '" + s + "'");
        return it->second;
      },
      [](const FreeAut& f, const FreeAut& g) { return compose(f, g); },
      [](const FreeAut& f) { return invert(f); });
}

bool VerifyReport::all_passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const VerifyLine& l) { return l.passed; });
}

std::string VerifyReport::to_string() const {
  std::string s;
  for (const VerifyLine& l : lines) {
    s += l.passed ? "PASS " : "FAIL ";
    s += (l.tag.empty() ? std::string("-") : l.tag) + "  " + l.relator + "\n";
    if (!l.passed) s += "     images: " + l.images + "\n";
  }
  std::size_t ok = 0;
  for (const VerifyLine& l : lines) ok += l.passed;
  s += std::to_string(ok) + "/" + std::to_string(lines.size()) + " relators pass\n";
  return s;
}

VerifyReport verify(const Presentation& p, const Assignment& a, int n) {
  VerifyReport report;
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    const Relator& r = p.relators[i];
    const FreeAut v = evaluate_relator(r.word, a, n);
    VerifyLine line{i, r.tag, sym_word_to_string(r.word), v.is_identity(), ""};
    if (!line.passed) line.images = v.to_inline_string();
    report.lines.push_back(std::move(line));
  }
  return report;
}

Presentation tietze_eliminate(const Presentation& p, const std::string& name, const SymWord& w) {
  if (!p.has_generator(name)) throw Error("cannot eliminate unknown symbol '" + name + "'");
  for (const SymLetter& l : w) {
    if (l.sym == name) throw Error("substitution for '" + name + "' mentions itself");
    if (!p.has_generator(l.sym)) throw Error("substitution uses undeclared symbol '" + l.sym + "'");
  }
  bool used = false;
  for (const Relator& r : p.relators) {
    for (const SymLetter& l : r.word) used = used || l.sym == name;
  }
  if (used) {
    const SymWord def = cyclic_normal_form(cat({{{name, 1}}, sym_inverse(w)}));
    const SymWord def_inv = cyclic_normal_form(cat({w, {{name, -1}}}));
    const bool defined = std::any_of(p.relators.begin(), p.relators.end(), [&](const Relator& r) {
      const SymWord c = cyclic_normal_form(r.word);
      return c == def || c == def_inv;
    });
    if (!defined) throw Error("no relator defines '" + name + "' as the given word");
  }
  Presentation out;
  for (const std::string& g : p.generators) {
    if (g != name) out.generators.push_back(g);
  }
  const SymWord winv = sym_inverse(w);
  for (const Relator& r : p.relators) {
    SymWord nw;
    for (const SymLetter& l : r.word) {
      if (l.sym == name) {
        const SymWord& sub = l.exp > 0 ? w : winv;
        nw.insert(nw.end(), sub.begin(), sub.end());
      } else {
        nw.push_back(l);
      }
    }
    nw = sym_reduce(nw);
    if (cyclic_normal_form(nw).empty()) continue;
    out.relators.push_back({std::move(nw), r.tag});
  }
  return out;
}

}  // namespace autfn

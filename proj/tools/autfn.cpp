// autfn: batch checks and derivations over Aut(F_n).

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "autfn/brown.hpp"
#include "autfn/generation.hpp"
#include "autfn/matrix_quotient.hpp"
#include "autfn/modp_kernel.hpp"
#include "autfn/presentation.hpp"
#include "autfn/spine_quotient.hpp"
#include "json.hpp"

using namespace autfn;
using nlohmann::json;

namespace {

struct CommandReport {
  std::string command;
  std::vector<std::pair<bool, std::string>> checks;
  std::ostringstream info;
  json summary = json::object();

  void check(bool ok, std::string text) { checks.emplace_back(ok, std::move(text)); }
  bool passed() const {
    for (const auto& c : checks) {
      if (!c.first) return false;
    }
    return true;
  }
  int print() {
    std::cout << "$ " << command << "\n" << info.str();
    for (const auto& [ok, text] : checks) std::cout << (ok ? "PASS  " : "FAIL  ") << text << "\n";
    summary["command"] = command;
    summary["passed"] = passed();
    std::cout << "summary " << summary.dump() << "\n";
    return passed() ? 0 : 1;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

void run_verify(CommandReport& r, int n, std::optional<int> p) {
  const Presentation pres = theorem1_presentation(n);
  const VerifyReport v = verify(pres, tautological_assignment(pres, n), n);
  std::size_t ok = 0;
  for (const VerifyLine& l : v.lines) {
    ok += l.passed;
    r.check(l.passed, "relator " + std::to_string(l.index) + " " + l.tag + "  " + l.relator + (l.passed ? "" : "  -> " + l.images));
  }
  r.info << ok << "/" << v.lines.size() << " relators pass\n";
  r.summary["relators"] = v.lines.size();
  r.summary["relators_passed"] = ok;
  if (p) {
    Assignment a = tautological_assignment(pres, n);
    for (const Relator& rel : pres.relators) {
      for (const SymLetter& l : rel.word) {
        if (!a.count(l.sym)) a.emplace(l.sym, *standard_symbol_value(l.sym, n));
      }
    }
    const VerifyReport m = verify_relations_matrix(pres, abelianized_assignment(a), n, *p);
    std::size_t mok = 0;
    for (const VerifyLine& l : m.lines) {
      mok += l.passed;
      r.check(l.passed, "relator " + std::to_string(l.index) + " mod " + std::to_string(*p) + (l.passed ? "" : "  -> " + l.images));
    }
    r.summary["matrix_relators_passed"] = mok;
    r.summary["p"] = *p;
  }
}

void run_generate(CommandReport& r, int n, int depth) {
  const std::vector<FreeAut> targets = all_transvections(n);
  const std::vector<Witness> ws = find_witnesses(theorem1_generating_set(n), targets, depth);
  std::size_t found = 0;
  for (const Witness& w : ws) {
    found += w.word.has_value();
    r.check(w.word.has_value(), w.target.to_inline_string() + "  =  " + (w.word ? join(*w.word) : "not found within depth " + std::to_string(depth)));
  }
  r.summary["targets"] = ws.size();
  r.summary["found"] = found;
  r.summary["depth"] = depth;
}

void run_stabilizers(CommandReport& r, int n) {
  const OrbitComplex c = figure3_data(n);
  json orders = json::object();
  for (const OrbitVertex& v : c.vertices) {
    std::vector<FreeAut> gens;
    for (const NamedAut& g : v.stabilizer_gens) gens.push_back(g.value);
    const std::size_t curated = FiniteGroup::generate(n, gens).order();
    const std::size_t computed = stabilizer(v.rep).size();
    r.check(curated == computed, v.id + "  computed " + std::to_string(computed) + "  curated " + std::to_string(curated));
    orders[v.id] = computed;
  }
  const FreeAut e = eta(n);
  for (const auto& [image, source] : {std::pair{"v4", "v3"}, std::pair{"v7", "v6"}}) {
    const int idx = c.vertex_index(source);
    if (idx < 0) continue;
    const std::size_t order = stabilizer(act(e, c.vertices[static_cast<std::size_t>(idx)].rep)).size();
    r.info << image << " = eta " << source << "  computed " << order << "\n";
    orders[image] = order;
  }
  r.summary["orders"] = orders;
}

void run_quotient(CommandReport& r, int n, bool enumerate) {
  const OrbitComplex c = figure3_data(n);
  const ValidationReport v = validate_complex(c);
  r.check(v.all_passed(), "curated complex validates");
  if (!v.all_passed()) r.info << v.to_string();
  const QuotientSummary s = summarize(c);
  r.info << "curated     " << s.vertices << " / " << s.edges << " / " << s.faces << "\n";
  r.summary["curated"] = {s.vertices, s.edges, s.faces};
  if (enumerate) {
    const QuotientSummary e = summarize(enumerate_quotient(n));
    r.info << "enumerated  " << e.vertices << " / " << e.edges << " / " << e.faces << "\n";
    r.check(e == s, "curated and enumerated quotients agree, stabilizer orders included");
    r.summary["enumerated"] = {e.vertices, e.edges, e.faces};
  }
}

void run_derive(CommandReport& r, int n, const std::string& data, const std::string& out, int depth) {
  const OrbitComplex c = data.empty() ? figure3_data(n) : OrbitComplex::parse(read_file(data));
  n = c.n;
  const ValidationReport v = validate_complex(c);
  r.check(v.all_passed(), "complex validates");
  if (!v.all_passed()) {
    r.info << v.to_string();
    return;
  }
  const Derivation d = derive(c);
  const VerifyReport sound = verify(d.assembled, brown_assignment(c), n);
  r.check(sound.all_passed(), "assembled presentation holds (" + std::to_string(d.assembled.relators.size()) + " relators)");
  for (const std::string& t : d.trace) r.info << "  " << t << "\n";
  r.info << d.simplified.to_text();
  const CompareReport cmp = compare(d.simplified, theorem1_presentation(n), n, depth);
  for (const CompareLine& l : cmp.lines) r.check(l.ok, l.item + (l.detail.empty() ? "" : "  (" + l.detail + ")"));
  r.summary["generators"] = d.simplified.generators;
  r.summary["relators"] = d.simplified.relators.size();
  r.summary["relators_hold"] = cmp.relators_hold;
  r.summary["generators_equivalent"] = cmp.generators_equivalent;
  r.summary["reference_matched"] = cmp.reference_matched;
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw Error("cannot write " + out);
    os << d.simplified.to_text();
  }
}

void run_closure(CommandReport& r, int n, int p, std::size_t limit) {
  const std::vector<ModMatrix> gens = generator_images(theorem1_presentation(n), n, p);
  const std::size_t order = closure_order(gens, limit);
  r.info << "order " << order << "  (kernel " << kernel_name(active_modp_kernel()) << ")\n";
  r.summary["order"] = order;
  r.summary["p"] = p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks and derivations for presentations of Aut(F_n)"};
  app.require_subcommand(1);
  int n = 4, depth = 4, derive_depth = 6;
  std::optional<int> p;
  int closure_p = 2;
  bool enumerate = false;
  std::string data, out;
  std::size_t limit = 10'000'000;
  const auto add_n = [&](CLI::App* sub) { sub->add_option("--n", n, "rank")->check(CLI::Range(2, 8))->capture_default_str(); };

  CLI::App* verify_cmd = app.add_subcommand("verify", "evaluate every relator of the reference presentation");
  add_n(verify_cmd);
  verify_cmd->add_option("--p", p, "also check the abelianized relators mod p")->check(CLI::IsMember({2, 3, 5, 7}));

  CLI::App* generate_cmd = app.add_subcommand("generate", "express every transvection in the generators");
  add_n(generate_cmd);
  generate_cmd->add_option("--depth", depth, "word length bound")->check(CLI::Range(1, 8))->capture_default_str();

  CLI::App* stab_cmd = app.add_subcommand("stabilizers", "computed vs curated vertex stabilizer orders");
  add_n(stab_cmd);

  CLI::App* quotient_cmd = app.add_subcommand("quotient", "cell counts of the quotient complex");
  add_n(quotient_cmd);
  quotient_cmd->add_flag("--enumerate", enumerate, "also enumerate the quotient from scratch");

  CLI::App* derive_cmd = app.add_subcommand("derive", "assemble, simplify and compare a presentation");
  add_n(derive_cmd);
  derive_cmd->add_option("--data", data, "orbit complex file")->check(CLI::ExistingFile);
  derive_cmd->add_option("--out", out, "write the simplified presentation here");
  derive_cmd->add_option("--depth", derive_depth, "depth for generator equivalence")->capture_default_str();

  CLI::App* closure_cmd = app.add_subcommand("closure", "order of the generator images in GL(n, p)");
  add_n(closure_cmd);
  closure_cmd->add_option("--p", closure_p, "prime")->check(CLI::IsMember({2, 3, 5, 7}))->capture_default_str();
  closure_cmd->add_option("--limit", limit, "element budget")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  std::string echo = "autfn";
  for (int i = 1; i < argc; ++i) echo += std::string(" ") + argv[i];
  CommandReport report{echo};
  try {
    if (*verify_cmd) run_verify(report, n, p);
    if (*generate_cmd) run_generate(report, n, depth);
    if (*stab_cmd) run_stabilizers(report, n);
    if (*quotient_cmd) run_quotient(report, n, enumerate);
    if (*derive_cmd) run_derive(report, n, data, out, derive_depth);
    if (*closure_cmd) run_closure(report, n, closure_p, limit);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return report.print();
}

#include "autfn/generation.hpp"

#include <unordered_map>

#include "autfn/signed_perm.hpp"

namespace autfn {

std::vector<NamedAut> theorem1_generating_set(int n) {
  std::vector<NamedAut> gens;
  for (const SignedPerm& p : enumerate_W(n)) {
    if (!p.is_identity()) gens.push_back({p.to_string(), to_aut(p)});
  }
  gens.push_back({"eta", eta(n)});
  return gens;
}

std::vector<FreeAut> all_transvections(int n) {
  std::vector<FreeAut> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      out.push_back(transvection(i, j, true, n));
      out.push_back(transvection(i, j, false, n));
    }
  }
  return out;
}

namespace {

struct Entry {
  int depth;
  int parent_gen;  // generator appended last; -1 at the identity
  FreeAut parent;
};

std::vector<std::string> spell(const std::unordered_map<FreeAut, Entry, FreeAutHash>& table,
                               const std::vector<NamedAut>& gens, FreeAut x) {
  std::vector<std::string> rev;
  for (;;) {
    const Entry& e = table.at(x);
    if (e.parent_gen < 0) break;
    rev.push_back(gens[static_cast<std::size_t>(e.parent_gen)].name);
    x = e.parent;
  }
  return {rev.rbegin(), rev.rend()};
}

}  // namespace

std::vector<Witness> find_witnesses(const std::vector<NamedAut>& gens, const std::vector<FreeAut>& targets,
                                    int max_depth) {
  if (gens.empty()) throw Error("empty generating set");
  if (max_depth < 0) throw Error("negative search depth");
  const int n = gens.front().value.rank();
  const int half = (max_depth + 1) / 2;
  std::unordered_map<FreeAut, Entry, FreeAutHash> table;
  const FreeAut id = FreeAut::identity(n);
  table.emplace(id, Entry{0, -1, id});
  std::vector<FreeAut> frontier{id};
  std::vector<FreeAut> all{id};
  for (int d = 1; d <= half; ++d) {
    std::vector<FreeAut> next;
    for (const FreeAut& x : frontier) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        FreeAut y = compose(x, gens[g].value);
        if (table.emplace(y, Entry{d, static_cast<int>(g), x}).second) next.push_back(std::move(y));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::vector<Witness> out;
  for (const FreeAut& t : targets) {
    Witness w{t, std::nullopt};
    int best = max_depth + 1;
    const FreeAut* best_x = nullptr;
    FreeAut best_y;
    // t = x * y with depth(x) <= max_depth - half and depth(y) <= half.
    for (const FreeAut& x : all) {
      const int dx = table.at(x).depth;
      if (dx > max_depth - half || dx >= best) continue;
      const FreeAut y = compose(invert(x), t);
      auto it = table.find(y);
      if (it != table.end() && dx + it->second.depth < best) {
        best = dx + it->second.depth;
        best_x = &x;
        best_y = y;
      }
    }
    if (best_x) {
      std::vector<std::string> word = spell(table, gens, *best_x);
      const std::vector<std::string> tail = spell(table, gens, best_y);
      word.insert(word.end(), tail.begin(), tail.end());
      w.word = std::move(word);
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace autfn

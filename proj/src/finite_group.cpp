#include "autfn/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <initializer_list>

namespace autfn {

LetterWord letter_word_inverse(const LetterWord& w) {
  LetterWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(letter_inverse(*it));
  return out;
}

FiniteGroup FiniteGroup::generate(int n, std::vector<FreeAut> gens, std::size_t limit) {
  FiniteGroup g;
  g.n_ = n;
  g.gens_ = std::move(gens);
  std::vector<FreeAut> inverses;
  for (const FreeAut& x : g.gens_) {
    if (x.rank() != n) throw Error("generator rank mismatch");
    g.involution_.push_back(compose(x, x).is_identity());
    inverses.push_back(invert(x));
  }
  const FreeAut id = FreeAut::identity(n);
  g.elements_.push_back(id);
  g.index_.emplace(id, 0);
  const std::size_t k = g.gens_.size();
  for (std::size_t i = 0; i < g.elements_.size(); ++i) {
    std::vector<std::size_t> row(2 * k);
    for (std::size_t l = 0; l < 2 * k; ++l) {
      const FreeAut& x = (l % 2 == 0) ? g.gens_[l / 2] : inverses[l / 2];
      FreeAut y = compose(g.elements_[i], x);
      auto [it, inserted] = g.index_.emplace(y, g.elements_.size());
      if (inserted) {
        if (g.elements_.size() >= limit) throw Error("finite group closure exceeded " + std::to_string(limit) + " elements");
        g.elements_.push_back(std::move(y));
      }
      row[l] = it->second;
    }
    g.right_.push_back(std::move(row));
  }
  return g;
}

std::optional<std::size_t> FiniteGroup::index_of(const FreeAut& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteGroup::evaluate(const LetterWord& w) const {
  std::size_t cur = 0;
  for (int l : w) cur = right(cur, l);
  return cur;
}

std::vector<int> usable_letters(const FiniteGroup& g) {
  std::vector<int> out;
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    out.push_back(static_cast<int>(2 * i));
    if (!g.is_involution(i)) out.push_back(static_cast<int>(2 * i + 1));
  }
  return out;
}

const std::vector<LetterWord>& FiniteGroup::shortlex_words(std::size_t max_length) const {
  if (!words_.empty()) {
    for (const LetterWord& w : words_) {
      if (w.size() > max_length) throw Error("stabilizer element needs a word longer than " + std::to_string(max_length));
    }
    return words_;
  }
  const std::vector<int> letters = usable_letters(*this);
  std::vector<LetterWord> words(order());
  std::vector<bool> seen(order(), false);
  seen[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (int l : letters) {
      const std::size_t y = right(x, l);
      if (seen[y]) continue;
      seen[y] = true;
      words[y] = words[x];
      words[y].push_back(l);
      if (words[y].size() > max_length) throw Error("stabilizer element needs a word longer than " + std::to_string(max_length));
      queue.push_back(y);
    }
  }
  words_ = std::move(words);
  return words_;
}

int CosetTable::trace(int coset, const LetterWord& w) const {
  for (int l : w) coset = table[static_cast<std::size_t>(coset)][static_cast<std::size_t>(l)];
  return coset;
}

namespace {

class ToddCoxeter {
 public:
  ToddCoxeter(int num_gens, std::size_t max_cosets) : letters_(2 * num_gens), max_(max_cosets) { new_coset(); }

  bool run(const std::vector<LetterWord>& relators) {
    for (std::size_t c = 0; c < table_.size(); ++c) {
      for (const LetterWord& r : relators) {
        if (!live(c)) break;
        if (!scan_and_fill(static_cast<int>(c), r)) return false;
      }
      for (int x = 0; x < letters_ && live(c); ++x) {
        if (table_[c][static_cast<std::size_t>(x)] < 0 && !define(static_cast<int>(c), x)) return false;
      }
    }
    return true;
  }

  CosetTable compact(int num_gens) {
    std::vector<int> renum(table_.size(), -1);
    int next = 0;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (live(c)) renum[c] = next++;
    }
    CosetTable out;
    out.num_gens = num_gens;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(c)) continue;
      std::vector<int> row(static_cast<std::size_t>(letters_));
      for (int x = 0; x < letters_; ++x) row[static_cast<std::size_t>(x)] = renum[static_cast<std::size_t>(rep(table_[c][static_cast<std::size_t>(x)]))];
      out.table.push_back(std::move(row));
    }
    return out;
  }

 private:
  bool live(std::size_t c) const { return parent_[c] == static_cast<int>(c); }

  int rep(int c) {
    int r = c;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(c)] != r) {
      const int next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

  int new_coset() {
    table_.emplace_back(static_cast<std::size_t>(letters_), -1);
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(table_.size()) - 1;
  }

  int& entry(int c, int x) { return table_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)]; }

  bool define(int c, int x) {
    if (table_.size() >= max_) return false;
    const int d = new_coset();
    entry(c, x) = d;
    entry(d, letter_inverse(x)) = c;
    return true;
  }

  bool scan_and_fill(int c, const LetterWord& w) {
    if (w.empty()) return true;
    int f = c, b = c;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    for (;;) {
      while (i <= j && entry(f, w[static_cast<std::size_t>(i)]) >= 0) f = entry(f, w[static_cast<std::size_t>(i++)]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && entry(b, letter_inverse(w[static_cast<std::size_t>(j)])) >= 0) {
        b = entry(b, letter_inverse(w[static_cast<std::size_t>(j--)]));
      }
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        entry(f, w[static_cast<std::size_t>(i)]) = b;
        entry(b, letter_inverse(w[static_cast<std::size_t>(i)])) = f;
        return true;
      }
      if (!define(f, w[static_cast<std::size_t>(i)])) return false;
    }
  }

  void merge(int k, int l, std::deque<int>& queue) {
    k = rep(k), l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[static_cast<std::size_t>(l)] = k;
    queue.push_back(l);
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const int g = queue.front();
      queue.pop_front();
      for (int x = 0; x < letters_; ++x) {
        const int d = entry(g, x);
        if (d < 0) continue;
        entry(d, letter_inverse(x)) = -1;
        const int mu = rep(g), nu = rep(d);
        if (entry(mu, x) >= 0) {
          merge(nu, entry(mu, x), queue);
        } else if (entry(nu, letter_inverse(x)) >= 0) {
          merge(mu, entry(nu, letter_inverse(x)), queue);
        } else {
          entry(mu, x) = nu;
          entry(nu, letter_inverse(x)) = mu;
        }
      }
    }
  }

  int letters_;
  std::size_t max_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

// Least word among rotations of w and of its inverse.
bool is_cyclic_canonical(const FiniteGroup& g, const LetterWord& w) {
  const std::size_t n = w.size();
  LetterWord inv = letter_word_inverse(w);
  for (int& l : inv) {
    if (g.is_involution(static_cast<std::size_t>(l / 2))) l &= ~1;
  }
  for (const LetterWord* base : std::initializer_list<const LetterWord*>{&w, &inv}) {
    for (std::size_t k = 0; k < n; ++k) {
      if (base == &w && k == 0) continue;
      for (std::size_t t = 0; t < n; ++t) {
        const int a = (*base)[(k + t) % n], b = w[t];
        if (a < b) return false;
        if (a > b) break;
      }
    }
  }
  return true;
}

}  // namespace

std::optional<CosetTable> enumerate_cosets(int num_gens, const std::vector<LetterWord>& relators, std::size_t max_cosets) {
  if (num_gens == 0) {
    CosetTable t;
    t.table.emplace_back();
    return t;
  }
  ToddCoxeter tc(num_gens, max_cosets);
  if (!tc.run(relators)) return std::nullopt;
  return tc.compact(num_gens);
}

std::vector<LetterWord> find_presentation(const FiniteGroup& g, const PresentationSearch& opts) {
  const int k = static_cast<int>(g.generators().size());
  const std::size_t order = g.order();
  std::vector<LetterWord> rels;
  for (int i = 0; i < k; ++i) {
    if (g.is_involution(static_cast<std::size_t>(i))) rels.push_back({2 * i, 2 * i});
  }
  const auto presents = [&](const std::vector<LetterWord>& rs) {
    auto t = enumerate_cosets(k, rs, opts.coset_budget);
    return t && t->index() == order;
  };
  std::optional<CosetTable> table = enumerate_cosets(k, rels, opts.coset_budget);
  bool done = table && table->index() == order;
  const std::vector<int> letters = usable_letters(g);

  for (std::size_t len = 1; len <= opts.max_length && !done; ++len) {
    LetterWord w;
    std::function<void(std::size_t)> rec = [&](std::size_t elem) {
      if (done) return;
      if (w.size() == len) {
        if (elem != 0) return;
        const int first = w.front(), last = w.back();
        const bool cancels = last == letter_inverse(first) ||
                             (first == last && first % 2 == 0 && g.is_involution(static_cast<std::size_t>(first / 2)));
        if (len > 1 && cancels) return;
        if (!is_cyclic_canonical(g, w)) return;
        if (table && table->trace(0, w) == 0) return;
        rels.push_back(w);
        table = enumerate_cosets(k, rels, opts.coset_budget);
        done = table && table->index() == order;
        return;
      }
      for (int l : letters) {
        if (!w.empty()) {
          const int prev = w.back();
          if (l == letter_inverse(prev)) continue;
          if (l == prev && g.is_involution(static_cast<std::size_t>(l / 2))) continue;
        }
        w.push_back(l);
        rec(g.right(elem, l));
        w.pop_back();
        if (done) return;
      }
    };
    rec(0);
  }
  if (!done) throw Error("no presentation found within relator length " + std::to_string(opts.max_length));

  for (std::size_t i = opts.prune ? rels.size() : 0; i-- > 0;) {
    std::vector<LetterWord> trial = rels;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (presents(trial)) rels = std::move(trial);
  }
  return rels;
}

}  // namespace autfn

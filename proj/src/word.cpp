#include "autfn/word.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace autfn {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Letter parse_letter(const std::string& tok) {
  if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'A')) {
    throw Error("bad letter token '" + tok + "'");
  }
  int index = 0;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) throw Error("bad letter token '" + tok + "'");
    index = index * 10 + (tok[i] - '0');
  }
  if (index < 1) throw Error("letter index must be positive in '" + tok + "'");
  return {index, tok[0] == 'a' ? 1 : -1};
}

struct NielsenMove {
  std::size_t i = 0, j = 0;
  int e = 1;
  bool right = true;
};

void apply_move(std::vector<Word>& v, const NielsenMove& m) {
  const Word wj = m.e > 0 ? v[m.j] : v[m.j].inverse();
  v[m.i] = m.right ? v[m.i] * wj : wj * v[m.i];
}

// Enumerates moves in order: lowest i, then j, then e = +1 before -1, right before left.
template <typename Visit>
void for_each_move(const std::vector<Word>& ws, Visit&& visit) {
  for (std::size_t i = 0; i < ws.size(); ++i) {
    for (std::size_t j = 0; j < ws.size(); ++j) {
      if (i == j) continue;
      for (int e : {1, -1}) {
        for (bool right : {true, false}) {
          const NielsenMove m{i, j, e, right};
          const Word wj = e > 0 ? ws[j] : ws[j].inverse();
          const Word cand = right ? ws[i] * wj : wj * ws[i];
          if (!visit(m, cand)) return;
        }
      }
    }
  }
}

std::optional<NielsenMove> best_reducing_move(const std::vector<Word>& ws) {
  std::optional<NielsenMove> best;
  std::size_t best_gain = 0;
  for_each_move(ws, [&](const NielsenMove& m, const Word& cand) {
    const std::size_t len = ws[m.i].size();
    if (cand.size() < len && len - cand.size() > best_gain) {
      best_gain = len - cand.size();
      best = m;
    }
    return true;
  });
  return best;
}

constexpr std::size_t kPlateauLimit = 200000;

struct TupleHash {
  std::size_t operator()(const std::vector<Word>& ws) const {
    std::size_t h = ws.size();
    for (const Word& w : ws) {
      for (const Letter& l : w.letters()) h = h * 131u + static_cast<std::size_t>(l.code() + 1);
      h = h * 131u + 7u;
    }
    return h;
  }
};

// Breadth-first search through tuples reachable by length-preserving moves
// until one admits a length-reducing move.
bool escape_plateau(std::vector<Word>& ws, std::vector<Word>* track) {
  struct State {
    std::vector<Word> ws, track;
  };
  std::unordered_set<std::vector<Word>, TupleHash> seen{ws};
  std::deque<State> queue;
  queue.push_back({ws, track ? *track : std::vector<Word>{}});
  while (!queue.empty()) {
    State cur = std::move(queue.front());
    queue.pop_front();
    if (best_reducing_move(cur.ws)) {
      ws = std::move(cur.ws);
      if (track) *track = std::move(cur.track);
      return true;
    }
    for_each_move(cur.ws, [&](const NielsenMove& m, const Word& cand) {
      if (cand.size() != cur.ws[m.i].size()) return true;
      State next = cur;
      next.ws[m.i] = cand;
      if (!seen.insert(next.ws).second) return true;
      if (track) apply_move(next.track, m);
      queue.push_back(std::move(next));
      return true;
    });
    if (seen.size() > kPlateauLimit) throw Error("Nielsen plateau search exceeded its state budget");
  }
  return false;
}

bool all_letters(const std::vector<Word>& ws) {
  return std::all_of(ws.begin(), ws.end(), [](const Word& w) { return w.size() == 1; });
}

// Nielsen reduction of a tuple; `track` receives the same moves so that
// basis(original)[track[i]] == ws[i] holds throughout.
void nielsen_reduce(std::vector<Word>& ws, std::vector<Word>* track) {
  for (;;) {
    if (auto m = best_reducing_move(ws)) {
      apply_move(ws, *m);
      if (track) apply_move(*track, *m);
      continue;
    }
    if (all_letters(ws) || !escape_plateau(ws, track)) return;
  }
}

// If the reduced tuple is a signed permutation of the basis, returns for each
// tuple slot the (index, sign) it carries.
std::optional<std::vector<Letter>> as_signed_basis(const std::vector<Word>& ws, int n) {
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  std::vector<Letter> out;
  for (const Word& w : ws) {
    if (w.size() != 1) return std::nullopt;
    const Letter l = w[0];
    if (l.index > n || seen[static_cast<std::size_t>(l.index)]) return std::nullopt;
    seen[static_cast<std::size_t>(l.index)] = true;
    out.push_back(l);
  }
  return out;
}

}  // namespace

Word reduce(std::span<const Letter> raw, int rank) {
  Word out;
  out.letters_.reserve(raw.size());
  for (const Letter& l : raw) {
    if (l.index < 1 || (rank > 0 && l.index > rank) || (l.sign != 1 && l.sign != -1)) {
      throw Error("letter index " + std::to_string(l.index) + " out of range for rank " + std::to_string(rank));
    }
    if (!out.letters_.empty() && out.letters_.back() == l.inverse()) {
      out.letters_.pop_back();
    } else {
      out.letters_.push_back(l);
    }
  }
  return out;
}

Word Word::generator(int index, int sign) {
  const Letter l{index, sign};
  return reduce(std::span<const Letter>(&l, 1));
}

Word Word::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Letter> raw;
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    raw.push_back(parse_letter(tok));
  }
  return reduce(raw);
}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(it->inverse());
  return out;
}

int Word::max_index() const {
  int m = 0;
  for (const Letter& l : letters_) m = std::max(m, l.index);
  return m;
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += ' ';
    s += letters_[i].sign > 0 ? 'a' : 'A';
    s += std::to_string(letters_[i].index);
  }
  return s;
}

Word operator*(const Word& u, const Word& v) {
  std::vector<Letter> raw;
  raw.reserve(u.size() + v.size());
  raw.insert(raw.end(), u.letters_.begin(), u.letters_.end());
  raw.insert(raw.end(), v.letters_.begin(), v.letters_.end());
  return reduce(raw);
}

bool operator<(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return std::lexicographical_compare(u.letters_.begin(), u.letters_.end(), v.letters_.begin(), v.letters_.end());
}

Word substitute(std::span<const Word> images, const Word& w) {
  std::vector<Letter> raw;
  for (const Letter& l : w.letters()) {
    if (l.index > static_cast<int>(images.size())) {
      throw Error("letter a" + std::to_string(l.index) + " outside rank " + std::to_string(images.size()));
    }
    const Word& img = images[static_cast<std::size_t>(l.index - 1)];
    if (l.sign > 0) {
      raw.insert(raw.end(), img.letters().begin(), img.letters().end());
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) raw.push_back(it->inverse());
    }
  }
  return reduce(raw);
}

FreeAut FreeAut::identity(int n) {
  if (n < 1) throw Error("rank must be positive");
  FreeAut f;
  f.rank_ = n;
  for (int k = 1; k <= n; ++k) {
    f.images_.push_back(Word::generator(k));
    f.inverse_images_.push_back(Word::generator(k));
  }
  return f;
}

FreeAut FreeAut::from_images(std::vector<Word> images, std::vector<Word> inverse_images) {
  const int n = static_cast<int>(images.size());
  if (n < 1 || inverse_images.size() != images.size()) throw Error("image lists must have equal positive length");
  for (const auto* list : {&images, &inverse_images}) {
    for (const Word& w : *list) {
      if (w.max_index() > n) throw Error("image word " + w.to_string() + " exceeds rank " + std::to_string(n));
    }
  }
  for (int k = 1; k <= n; ++k) {
    const Word basis = Word::generator(k);
    if (substitute(images, inverse_images[static_cast<std::size_t>(k - 1)]) != basis ||
        substitute(inverse_images, images[static_cast<std::size_t>(k - 1)]) != basis) {
      throw Error("image lists are not mutually inverse");
    }
  }
  FreeAut f;
  f.rank_ = n;
  f.images_ = std::move(images);
  f.inverse_images_ = std::move(inverse_images);
  return f;
}

std::optional<FreeAut> FreeAut::from_basis(const std::vector<Word>& basis, int n) {
  if (static_cast<int>(basis.size()) != n || n < 1) return std::nullopt;
  for (const Word& w : basis) {
    if (w.empty() || w.max_index() > n) return std::nullopt;
  }
  std::vector<Word> ws = basis;
  std::vector<Word> track;
  for (int k = 1; k <= n; ++k) track.push_back(Word::generator(k));
  nielsen_reduce(ws, &track);
  const auto letters = as_signed_basis(ws, n);
  if (!letters) return std::nullopt;
  // phi(track[i]) == ws[i] == a_{idx}^{sign}, so phi^{-1}(a_idx) = track[i]^{sign}.
  std::vector<Word> inv(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < letters->size(); ++i) {
    const Letter l = (*letters)[i];
    inv[static_cast<std::size_t>(l.index - 1)] = l.sign > 0 ? track[i] : track[i].inverse();
  }
  FreeAut f;
  f.rank_ = n;
  f.images_ = basis;
  f.inverse_images_ = std::move(inv);
  return f;
}

FreeAut FreeAut::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<int, Word>> rows;
  while (std::getline(in, line)) {
    for (std::string_view part : {std::string_view(line)}) {
      std::size_t start = 0;
      // Lines may also be joined by ';'.
      while (start <= part.size()) {
        std::size_t end = part.find(';', start);
        if (end == std::string_view::npos) end = part.size();
        const std::string piece = trim(part.substr(start, end - start));
        start = end + 1;
        if (piece.empty() || piece[0] == '#') continue;
        const auto arrow = piece.find("->");
        if (arrow == std::string::npos) throw Error("expected 'a<k> -> <word>' in '" + piece + "'");
        const Letter lhs = parse_letter(trim(piece.substr(0, arrow)));
        if (lhs.sign < 0) throw Error("left side must be a basis letter in '" + piece + "'");
        rows.emplace_back(lhs.index, Word::parse(piece.substr(arrow + 2)));
      }
    }
  }
  const int n = static_cast<int>(rows.size());
  std::vector<Word> images(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (auto& [k, w] : rows) {
    if (k > n || seen[static_cast<std::size_t>(k - 1)]) throw Error("automorphism literal must list a1..a" + std::to_string(n) + " once each");
    seen[static_cast<std::size_t>(k - 1)] = true;
    images[static_cast<std::size_t>(k - 1)] = w;
  }
  auto f = from_basis(images, n);
  if (!f) throw Error("images do not form a free basis");
  return *f;
}

bool FreeAut::is_identity() const {
  for (int k = 1; k <= rank_; ++k) {
    if (images_[static_cast<std::size_t>(k - 1)] != Word::generator(k)) return false;
  }
  return true;
}

std::string FreeAut::to_string() const {
  std::string s;
  for (int k = 1; k <= rank_; ++k) {
    s += "a" + std::to_string(k) + " -> " + images_[static_cast<std::size_t>(k - 1)].to_string() + "\n";
  }
  return s;
}

std::string FreeAut::to_inline_string() const {
  std::string s;
  for (int k = 1; k <= rank_; ++k) {
    if (k > 1) s += "; ";
    s += "a" + std::to_string(k) + " -> " + images_[static_cast<std::size_t>(k - 1)].to_string();
  }
  return s;
}

std::size_t FreeAut::hash() const {
  std::size_t h = static_cast<std::size_t>(rank_);
  for (const Word& w : images_) {
    h = h * 1000003u ^ w.size();
    for (const Letter& l : w.letters()) h = h * 131u + static_cast<std::size_t>(l.code() + 1);
  }
  return h;
}

Word apply(const FreeAut& f, const Word& w) {
  if (w.max_index() > f.rank()) throw Error("word " + w.to_string() + " exceeds automorphism rank " + std::to_string(f.rank()));
  return substitute(f.images(), w);
}

FreeAut compose(const FreeAut& f, const FreeAut& g) {
  if (f.rank() != g.rank()) throw Error("rank mismatch in compose");
  std::vector<Word> images, inverse_images;
  for (int k = 1; k <= f.rank(); ++k) {
    images.push_back(substitute(f.images(), g.image(k)));
    inverse_images.push_back(substitute(g.inverse_images(), f.inverse_image(k)));
  }
  FreeAut out;
  out.rank_ = f.rank();
  out.images_ = std::move(images);
  out.inverse_images_ = std::move(inverse_images);
  return out;
}

FreeAut invert(const FreeAut& f) {
  FreeAut out;
  out.rank_ = f.rank_;
  out.images_ = f.inverse_images_;
  out.inverse_images_ = f.images_;
  return out;
}

FreeAut elementary(Elementary kind, std::span<const int> params, int n) {
  if (n < 1) throw Error("rank must be positive");
  const auto need = [&](std::size_t count) {
    if (params.size() != count) throw Error("wrong number of indices for elementary automorphism");
    for (int p : params) {
      if (p < 1 || p > n) throw Error("index " + std::to_string(p) + " out of range 1.." + std::to_string(n));
    }
  };
  std::vector<Word> images;
  for (int k = 1; k <= n; ++k) images.push_back(Word::generator(k));
  std::vector<Word> inverse = images;
  switch (kind) {
    case Elementary::Tau: {
      need(1);
      const auto i = static_cast<std::size_t>(params[0] - 1);
      images[i] = inverse[i] = Word::generator(params[0], -1);
      break;
    }
    case Elementary::Sigma:
    case Elementary::S: {
      int i = 0, j = 0;
      if (kind == Elementary::S) {
        need(1);
        i = params[0];
        j = i + 1;
        if (j > n) throw Error("s_i needs i < n");
      } else {
        need(2);
        i = params[0];
        j = params[1];
      }
      if (i == j) throw Error("sigma needs distinct indices");
      std::swap(images[static_cast<std::size_t>(i - 1)], images[static_cast<std::size_t>(j - 1)]);
      inverse = images;
      break;
    }
    case Elementary::Eta:
      need(0);
      if (n < 2) throw Error("eta needs rank at least 2");
      images[0] = inverse[0] = Word::parse("A2 a1");
      images[1] = inverse[1] = Word::parse("A2");
      break;
    case Elementary::Transvection:
      need(0);
      if (n < 2) throw Error("transvection needs rank at least 2");
      images[0] = Word::parse("a2 a1");
      inverse[0] = Word::parse("A2 a1");
      break;
  }
  return FreeAut::from_images(std::move(images), std::move(inverse));
}

FreeAut tau(int i, int n) {
  const int p[] = {i};
  return elementary(Elementary::Tau, p, n);
}

FreeAut sigma(int i, int j, int n) {
  const int p[] = {i, j};
  return elementary(Elementary::Sigma, p, n);
}

FreeAut s_gen(int i, int n) {
  const int p[] = {i};
  return elementary(Elementary::S, p, n);
}

FreeAut eta(int n) { return elementary(Elementary::Eta, {}, n); }

FreeAut transvection(int i, int j, bool left, int n) {
  if (i < 1 || j < 1 || i > n || j > n || i == j) throw Error("transvection needs distinct indices in range");
  std::vector<Word> images, inverse;
  for (int k = 1; k <= n; ++k) {
    images.push_back(Word::generator(k));
    inverse.push_back(Word::generator(k));
  }
  const Word ai = Word::generator(i), aj = Word::generator(j);
  const auto idx = static_cast<std::size_t>(i - 1);
  images[idx] = left ? aj * ai : ai * aj;
  inverse[idx] = left ? aj.inverse() * ai : ai * aj.inverse();
  return FreeAut::from_images(std::move(images), std::move(inverse));
}

bool is_basis(const std::vector<Word>& ws, int n) {
  if (static_cast<int>(ws.size()) != n) return false;
  for (const Word& w : ws) {
    if (w.empty() || w.max_index() > n) return false;
  }
  std::vector<Word> reduced = ws;
  nielsen_reduce(reduced, nullptr);
  return as_signed_basis(reduced, n).has_value();
}

}  // namespace autfn

#include "autfn/signed_perm.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace autfn {

SignedPerm SignedPerm::identity(int n) {
  if (n < 1 || n > kMaxSignedRank) throw Error("signed permutation rank out of range: " + std::to_string(n));
  SignedPerm p;
  p.n_ = static_cast<std::uint8_t>(n);
  for (int j = 1; j <= n; ++j) p.images_[static_cast<std::size_t>(j - 1)] = static_cast<std::int8_t>(j);
  return p;
}

SignedPerm SignedPerm::from_images(const std::vector<int>& images) {
  const int n = static_cast<int>(images.size());
  SignedPerm p = identity(n);
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int j = 1; j <= n; ++j) {
    const int v = images[static_cast<std::size_t>(j - 1)];
    const int a = std::abs(v);
    if (a < 1 || a > n || seen[static_cast<std::size_t>(a)]) throw Error("signed images do not form a bijection");
    seen[static_cast<std::size_t>(a)] = true;
    p.images_[static_cast<std::size_t>(j - 1)] = static_cast<std::int8_t>(v);
  }
  return p;
}

std::optional<SignedPerm> SignedPerm::from_aut(const FreeAut& f) {
  if (f.rank() > kMaxSignedRank) return std::nullopt;
  std::vector<int> images;
  for (int j = 1; j <= f.rank(); ++j) {
    const Word& w = f.image(j);
    if (w.size() != 1) return std::nullopt;
    images.push_back(w[0].sign * w[0].index);
  }
  return from_images(images);
}

SignedPerm SignedPerm::tau(int i, int n) {
  SignedPerm p = identity(n);
  if (i < 1 || i > n) throw Error("tau index out of range");
  p.images_[static_cast<std::size_t>(i - 1)] = static_cast<std::int8_t>(-i);
  return p;
}

SignedPerm SignedPerm::sigma(int i, int j, int n) {
  SignedPerm p = identity(n);
  if (i < 1 || j < 1 || i > n || j > n || i == j) throw Error("sigma indices out of range");
  std::swap(p.images_[static_cast<std::size_t>(i - 1)], p.images_[static_cast<std::size_t>(j - 1)]);
  return p;
}

SignedPerm SignedPerm::inverse() const {
  SignedPerm q = identity(n_);
  for (int j = 1; j <= n_; ++j) {
    const int v = image(j);
    q.images_[static_cast<std::size_t>(std::abs(v) - 1)] = static_cast<std::int8_t>(v > 0 ? j : -j);
  }
  return q;
}

std::string SignedPerm::to_string() const {
  std::string s = "[";
  for (int j = 1; j <= n_; ++j) {
    if (j > 1) s += ", ";
    s += std::to_string(image(j));
  }
  return s + "]";
}

std::size_t SignedPerm::hash() const {
  std::size_t h = n_;
  for (int j = 0; j < n_; ++j) h = h * 37u + static_cast<std::size_t>(images_[static_cast<std::size_t>(j)] + 64);
  return h;
}

SignedPerm sp_compose(const SignedPerm& p, const SignedPerm& q) {
  if (p.rank() != q.rank()) throw Error("signed permutation size mismatch");
  std::vector<int> images;
  for (int j = 1; j <= q.rank(); ++j) {
    const int v = q.image(j);
    const int w = p.image(std::abs(v));
    images.push_back(v > 0 ? w : -w);
  }
  return SignedPerm::from_images(images);
}

FreeAut to_aut(const SignedPerm& p) {
  std::vector<Word> images;
  for (int j = 1; j <= p.rank(); ++j) {
    const int v = p.image(j);
    images.push_back(Word::generator(std::abs(v), v > 0 ? 1 : -1));
  }
  const SignedPerm q = p.inverse();
  std::vector<Word> inverse;
  for (int j = 1; j <= q.rank(); ++j) {
    const int v = q.image(j);
    inverse.push_back(Word::generator(std::abs(v), v > 0 ? 1 : -1));
  }
  return FreeAut::from_images(std::move(images), std::move(inverse));
}

std::vector<SignedPerm> enumerate_W(int n) {
  if (n < 1 || n > kMaxEnumerateRank) throw Error("enumerate_W supports 1 <= n <= " + std::to_string(kMaxEnumerateRank));
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<SignedPerm> out;
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> images(perm);
      for (int j = 0; j < n; ++j) {
        if (mask & (1u << j)) images[static_cast<std::size_t>(j)] = -images[static_cast<std::size_t>(j)];
      }
      out.push_back(SignedPerm::from_images(images));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

SignedPerm token_perm(int token, int n) {
  return token == kTau1Token ? SignedPerm::tau(1, n) : SignedPerm::s(token, n);
}

// BFS tree of W_n over {s_1..s_{n-1}, tau_1}: parent pointers keyed by element.
struct STauTree {
  std::unordered_map<SignedPerm, std::pair<SignedPerm, int>, SignedPermHash> parent;
};

const STauTree& s_tau_tree(int n) {
  static std::mutex mu;
  static std::unordered_map<int, STauTree> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  STauTree tree;
  std::vector<int> tokens;
  for (int i = 1; i < n; ++i) tokens.push_back(i);
  tokens.push_back(kTau1Token);
  const SignedPerm id = SignedPerm::identity(n);
  tree.parent.emplace(id, std::make_pair(id, -1));
  std::deque<SignedPerm> queue{id};
  while (!queue.empty()) {
    const SignedPerm g = queue.front();
    queue.pop_front();
    for (int t : tokens) {
      SignedPerm h = sp_compose(g, token_perm(t, n));
      if (tree.parent.emplace(h, std::make_pair(g, t)).second) queue.push_back(h);
    }
  }
  return cache.emplace(n, std::move(tree)).first->second;
}

}  // namespace

STauWord express_in_s_tau(const SignedPerm& p) {
  const int n = p.rank();
  if (n > kMaxEnumerateRank) throw Error("express_in_s_tau supports n <= " + std::to_string(kMaxEnumerateRank));
  const STauTree& tree = s_tau_tree(n);
  STauWord word;
  SignedPerm cur = p;
  for (;;) {
    const auto& [prev, token] = tree.parent.at(cur);
    if (token < 0) break;
    word.push_back(token);
    cur = prev;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

SignedPerm evaluate_s_tau(const STauWord& w, int n) {
  SignedPerm acc = SignedPerm::identity(n);
  for (int t : w) acc = sp_compose(acc, token_perm(t, n));
  return acc;
}

std::string s_tau_to_string(const STauWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i] == kTau1Token ? std::string("tau1") : "s" + std::to_string(w[i]);
  }
  return s;
}

}  // namespace autfn

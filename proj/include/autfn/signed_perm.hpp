#pragma once

// The signed permutation group W_n: automorphisms that permute and invert the
// basis letters.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autfn/word.hpp"

namespace autfn {

inline constexpr int kMaxSignedRank = 16;
inline constexpr int kMaxEnumerateRank = 8;

// a_j -> a_{|image(j)|}^{sign(image(j))}.
class SignedPerm {
 public:
  SignedPerm() = default;
  static SignedPerm identity(int n);
  // Signed one-line images, e.g. {-2, 1, 3}.
  static SignedPerm from_images(const std::vector<int>& images);
  // nullopt if `f` is not a signed permutation of the basis.
  static std::optional<SignedPerm> from_aut(const FreeAut& f);
  static SignedPerm tau(int i, int n);
  static SignedPerm sigma(int i, int j, int n);
  static SignedPerm s(int i, int n) { return sigma(i, i + 1, n); }

  int rank() const { return n_; }
  int image(int j) const { return images_[static_cast<std::size_t>(j - 1)]; }
  SignedPerm inverse() const;
  bool is_identity() const { return *this == identity(n_); }
  // `[-2, 1, 3]`
  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const SignedPerm& a, const SignedPerm& b) {
    return a.n_ == b.n_ && a.images_ == b.images_;
  }
  friend bool operator<(const SignedPerm& a, const SignedPerm& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.images_ < b.images_;
  }

 private:
  std::uint8_t n_ = 0;
  std::array<std::int8_t, kMaxSignedRank> images_{};
};

struct SignedPermHash {
  std::size_t operator()(const SignedPerm& p) const { return p.hash(); }
};

// (sp_compose(p, q))(a_j) = p(q(a_j)).
SignedPerm sp_compose(const SignedPerm& p, const SignedPerm& q);
FreeAut to_aut(const SignedPerm& p);

// All 2^n n! elements in sorted order.
std::vector<SignedPerm> enumerate_W(int n);

// Generator tokens for words over {s_1..s_{n-1}, tau_1}: 1..n-1 mean s_i, 0 means tau_1.
using STauWord = std::vector<int>;
inline constexpr int kTau1Token = 0;

// Minimal-length word found by breadth-first search; ties broken s1 < ... < s_{n-1} < tau1.
STauWord express_in_s_tau(const SignedPerm& p);
SignedPerm evaluate_s_tau(const STauWord& w, int n);
std::string s_tau_to_string(const STauWord& w);

}  // namespace autfn

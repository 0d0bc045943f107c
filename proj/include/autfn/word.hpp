#pragma once

// Free group words and automorphisms of F_n.
//
// Words are freely reduced sequences of signed letters a_k / A_k (A = inverse).
// FreeAut carries both the images of the basis and the images under its
// inverse, so inversion is a swap and invertibility holds by construction.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace autfn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Letter {
  int index = 1;  // 1-based generator index
  int sign = 1;   // +1 or -1

  Letter inverse() const { return {index, -sign}; }
  // Total order a1 < A1 < a2 < A2 < ...
  int code() const { return 2 * (index - 1) + (sign < 0 ? 1 : 0); }

  friend bool operator==(Letter, Letter) = default;
  friend bool operator<(Letter a, Letter b) { return a.code() < b.code(); }
};

class Word {
 public:
  Word() = default;

  static Word generator(int index, int sign = 1);
  // Parses `a1 A2 a3`; `1` or blank is the identity.
  static Word parse(std::string_view text);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  int max_index() const;
  std::string to_string() const;

  friend Word operator*(const Word& u, const Word& v);
  friend bool operator==(const Word&, const Word&) = default;
  friend bool operator<(const Word& u, const Word& v);

 private:
  friend Word reduce(std::span<const Letter> raw, int rank);
  std::vector<Letter> letters_;
};

// Free reduction. `rank` > 0 bounds letter indices; rank == 0 means unchecked.
Word reduce(std::span<const Letter> raw, int rank = 0);

// Automorphism of F_n as a pair of image lists.
class FreeAut {
 public:
  FreeAut() = default;
  static FreeAut identity(int n);
  // Both lists are checked to be mutually inverse substitutions.
  static FreeAut from_images(std::vector<Word> images, std::vector<Word> inverse_images);
  // Builds the automorphism a_k -> basis[k-1]; nullopt when `basis` is not a free basis.
  static std::optional<FreeAut> from_basis(const std::vector<Word>& basis, int n);
  // Reads `a<k> -> <word>` lines.
  static FreeAut parse(std::string_view text);

  int rank() const { return rank_; }
  const Word& image(int k) const { return images_.at(static_cast<std::size_t>(k - 1)); }
  const Word& inverse_image(int k) const { return inverse_images_.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<Word>& images() const { return images_; }
  const std::vector<Word>& inverse_images() const { return inverse_images_; }

  bool is_identity() const;
  // Lines `a<k> -> <word>`.
  std::string to_string() const;
  // Compact single-line form `a1->A2 a1; a2->A2`.
  std::string to_inline_string() const;
  std::size_t hash() const;

  friend bool operator==(const FreeAut& f, const FreeAut& g) { return f.images_ == g.images_; }
  friend FreeAut compose(const FreeAut& f, const FreeAut& g);
  friend FreeAut invert(const FreeAut& f);
  friend bool operator<(const FreeAut& f, const FreeAut& g) { return f.images_ < g.images_; }

 private:
  int rank_ = 0;
  std::vector<Word> images_;
  std::vector<Word> inverse_images_;
};

struct FreeAutHash {
  std::size_t operator()(const FreeAut& f) const { return f.hash(); }
};

Word substitute(std::span<const Word> images, const Word& w);
Word apply(const FreeAut& f, const Word& w);
// (compose(f, g))(w) = f(g(w)).
FreeAut compose(const FreeAut& f, const FreeAut& g);
FreeAut invert(const FreeAut& f);
inline bool is_identity(const FreeAut& f) { return f.is_identity(); }

enum class Elementary { Tau, Sigma, S, Eta, Transvection };

// tau(i), sigma(i, j), s(i) = sigma(i, i+1), eta, transvection a1 -> a2 a1.
FreeAut elementary(Elementary kind, std::span<const int> params, int n);
FreeAut tau(int i, int n);
FreeAut sigma(int i, int j, int n);
FreeAut s_gen(int i, int n);
FreeAut eta(int n);
// a_i -> a_j a_i (left) or a_i -> a_i a_j (right), other generators fixed.
FreeAut transvection(int i, int j, bool left, int n);

// Greedy Nielsen reduction; true iff `ws` is a free basis of F_n.
bool is_basis(const std::vector<Word>& ws, int n);

}  // namespace autfn

template <>
struct std::hash<autfn::FreeAut> {
  std::size_t operator()(const autfn::FreeAut& f) const { return f.hash(); }
};

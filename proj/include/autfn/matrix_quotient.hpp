#pragma once

// Abelianization Aut(F_n) -> GL(n, Z) and its reductions mod small primes.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autfn/presentation.hpp"
#include "autfn/word.hpp"

namespace autfn {

// Entry (i,j) is the exponent sum of a_{i+1} in the image of a_{j+1}.
struct IntMatrix {
  int n = 0;
  std::vector<long long> a;  // row-major

  static IntMatrix identity(int n);
  long long at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  long long& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  long long determinant() const;
  bool is_identity() const;
  // Rows separated by `; `.
  std::string to_string() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
// Inverse of a determinant +-1 matrix.
IntMatrix inverse(const IntMatrix& m);

IntMatrix abelianize(const FreeAut& f);

struct ModMatrix {
  int n = 0;
  int p = 2;
  std::vector<std::uint8_t> a;  // row-major, entries in [0, p)

  static ModMatrix identity(int n, int p);
  int at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  bool is_identity() const;
  std::string to_string() const;

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;
};

ModMatrix operator*(const ModMatrix& x, const ModMatrix& y);
// p must be 2, 3, 5 or 7.
ModMatrix mod_p(const IntMatrix& m, int p);

// Order of the group generated by `gens` (breadth-first, generator index then
// discovery order). Throws when the closure passes `limit` elements.
std::size_t closure_order(const std::vector<ModMatrix>& gens, std::size_t limit = 10'000'000);

using MatrixAssignment = std::map<std::string, IntMatrix>;

MatrixAssignment abelianized_assignment(const Assignment& a);

// Each relator's matrix product, over Z or reduced mod p, must be the identity.
VerifyReport verify_relations_matrix(const Presentation& pres, const MatrixAssignment& a, int n,
                                     std::optional<int> p = std::nullopt);

// Images mod p of the generators of `pres` under the tautological assignment.
std::vector<ModMatrix> generator_images(const Presentation& pres, int n, int p);

}  // namespace autfn

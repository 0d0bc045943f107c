#pragma once

#include <random>
#include <vector>

#include "autfn/word.hpp"

namespace autfn::testing {

inline FreeAut random_elementary(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> idx(1, n);
  switch (kind(rng)) {
    case 0:
      return tau(idx(rng), n);
    case 1: {
      int i = idx(rng), j = idx(rng);
      while (j == i) j = idx(rng);
      return sigma(i, j, n);
    }
    case 2:
      return eta(n);
    default: {
      int i = idx(rng), j = idx(rng);
      while (j == i) j = idx(rng);
      return transvection(i, j, rng() & 1u, n);
    }
  }
}

inline FreeAut random_product(std::mt19937& rng, int n, int length) {
  FreeAut f = FreeAut::identity(n);
  for (int k = 0; k < length; ++k) f = compose(f, random_elementary(rng, n));
  return f;
}

inline Word random_word(std::mt19937& rng, int n, int length) {
  std::uniform_int_distribution<int> idx(1, n);
  std::vector<Letter> raw;
  for (int k = 0; k < length; ++k) raw.push_back({idx(rng), (rng() & 1u) ? 1 : -1});
  return reduce(raw, n);
}

}  // namespace autfn::testing

#pragma once

// Short-word witnesses that a generating set reaches given automorphisms.

#include <optional>
#include <string>
#include <vector>

#include "autfn/word.hpp"

namespace autfn {

struct NamedAut {
  std::string name;
  FreeAut value;
};

// Every element of W_n (named by its signed one-line form) plus eta.
std::vector<NamedAut> theorem1_generating_set(int n);

struct Witness {
  FreeAut target;
  std::optional<std::vector<std::string>> word;  // generator names, product read left to right
};

// Shortest products of at most `max_depth` generators equal to each target,
// by meet-in-the-middle breadth-first search.
std::vector<Witness> find_witnesses(const std::vector<NamedAut>& gens, const std::vector<FreeAut>& targets,
                                    int max_depth);

// a_i -> a_j a_i and a_i -> a_i a_j for all i != j.
std::vector<FreeAut> all_transvections(int n);

}  // namespace autfn

#pragma once

// Finite subgroups of Aut(F_n) given by generators, coset enumeration, and
// presentations of finite groups found by relator search.

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "autfn/word.hpp"

namespace autfn {

// Letter codes for abstract words: 2g is generator g, 2g + 1 its inverse.
using LetterWord = std::vector<int>;
inline int letter_inverse(int l) { return l ^ 1; }
LetterWord letter_word_inverse(const LetterWord& w);

class FiniteGroup {
 public:
  // Closure of `gens` under composition; throws once more than `limit` elements appear.
  static FiniteGroup generate(int n, std::vector<FreeAut> gens, std::size_t limit = 100000);

  int rank() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<FreeAut>& generators() const { return gens_; }
  const std::vector<FreeAut>& elements() const { return elements_; }
  const FreeAut& element(std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> index_of(const FreeAut& f) const;
  bool contains(const FreeAut& f) const { return index_of(f).has_value(); }
  bool is_involution(std::size_t g) const { return involution_[g]; }
  // Index of element(i) composed on the right with letter l.
  std::size_t right(std::size_t i, int letter) const { return right_[i][static_cast<std::size_t>(letter)]; }
  std::size_t evaluate(const LetterWord& w) const;

  // Shortest word (shortlex over letters 0,1,2,... skipping inverse letters of
  // involutions) for every element; throws if one exceeds `max_length`.
  const std::vector<LetterWord>& shortlex_words(std::size_t max_length = 12) const;

 private:
  int n_ = 0;
  std::vector<FreeAut> gens_;
  std::vector<bool> involution_;
  std::vector<FreeAut> elements_;
  std::unordered_map<FreeAut, std::size_t, FreeAutHash> index_;
  std::vector<std::vector<std::size_t>> right_;
  mutable std::vector<LetterWord> words_;
};

// Letters usable in words over this group's generators.
std::vector<int> usable_letters(const FiniteGroup& g);

struct CosetTable {
  int num_gens = 0;
  // table[c][letter], cosets numbered from 0 (the subgroup coset).
  std::vector<std::vector<int>> table;
  std::size_t index() const { return table.size(); }
  int trace(int coset, const LetterWord& w) const;
};

// Todd-Coxeter enumeration of the cosets of the trivial subgroup in
// <num_gens | relators>; nullopt when more than `max_cosets` are defined.
std::optional<CosetTable> enumerate_cosets(int num_gens, const std::vector<LetterWord>& relators,
                                           std::size_t max_cosets = 200000);

struct PresentationSearch {
  std::size_t max_length = 12;
  std::size_t coset_budget = 200000;
  bool prune = true;  // drop relators made redundant by later ones
};

// Relators over the generators of `g` presenting g exactly (coset enumeration
// of the result has index |g|). Candidates are closed walks in shortlex order,
// cyclically reduced and least under rotation and inversion; a candidate is
// kept unless the relators found so far already force it. Redundant relators
// are pruned at the end when opts.prune is set. Throws if the search runs out of length.
std::vector<LetterWord> find_presentation(const FiniteGroup& g, const PresentationSearch& opts = {});

}  // namespace autfn

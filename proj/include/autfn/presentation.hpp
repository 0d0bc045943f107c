#pragma once

// Finite presentations over named generator symbols.
//
// Symbol names: `s<i>`, `tau<i>`, `sigma<i><j>` (or `sigma<i>_<j>` when an index
// exceeds 9), `eta`, `t_<edge>`, and free-form names for derived symbols.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autfn/word.hpp"

namespace autfn {

struct SymLetter {
  std::string sym;
  int exp = 1;  // +1 or -1

  SymLetter inverse() const { return {sym, -exp}; }
  friend bool operator==(const SymLetter&, const SymLetter&) = default;
  friend auto operator<=>(const SymLetter&, const SymLetter&) = default;
};

using SymWord = std::vector<SymLetter>;

SymWord sym_reduce(const SymWord& w);
SymWord sym_inverse(const SymWord& w);
SymWord sym_concat(const SymWord& u, const SymWord& v);
SymWord sym_power(const SymWord& w, int k);
// Free and cyclic reduction, then the least rotation.
SymWord cyclic_normal_form(const SymWord& w);
// Whitespace-separated `name` or `name^-1` tokens; `1` or blank is empty.
SymWord parse_sym_word(std::string_view text);
std::string sym_word_to_string(const SymWord& w);

struct Relator {
  SymWord word;
  std::string tag;  // provenance, e.g. "(5)" or "W"; may be empty
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Relator> relators;

  bool has_generator(const std::string& name) const;
  // Throws if a relator uses an undeclared symbol or names repeat.
  void validate() const;
  // `gen <name>` lines then `rel <word>` lines.
  std::string to_text() const;
  static Presentation parse(std::string_view text);
};

using Assignment = std::map<std::string, FreeAut>;

// Value of `s<i>`, `tau<i>`, `sigma<i><j>`, `eta` in Aut(F_n); nullopt otherwise.
std::optional<FreeAut> standard_symbol_value(const std::string& name, int n);
Assignment tautological_assignment(const Presentation& p, int n);

std::string sigma_name(int i, int j);

// Presentation of W_n on {s_1..s_{n-1}, tau1}.
Presentation wn_presentation(int n);
// Reference presentation on {s_i, tau1, eta}; n = 2 and n = 3 have their own relator lists.
Presentation theorem1_presentation(int n);
// tau_i and sigma_ij rewritten over {s_k, tau1}; s_i and eta map to themselves.
SymWord expand_abbreviation(const std::string& sym, int n);

template <typename T, typename Lookup, typename Mul, typename Inv>
T evaluate_word(const SymWord& w, const T& identity, Lookup&& lookup, Mul&& mul, Inv&& inv) {
  T acc = identity;
  for (const SymLetter& l : w) {
    const T& v = lookup(l.sym);
    acc = mul(acc, l.exp > 0 ? v : inv(v));
  }
  return acc;
}

FreeAut evaluate_relator(const SymWord& w, const Assignment& a, int n);

struct VerifyLine {
  std::size_t index = 0;
  std::string tag;
  std::string relator;
  bool passed = false;
  std::string images;  // evaluated images when the relator fails
};

struct VerifyReport {
  std::vector<VerifyLine> lines;
  bool all_passed() const;
  std::string to_string() const;
};

VerifyReport verify(const Presentation& p, const Assignment& a, int n);

// Replaces `sym` by `w` everywhere and drops relators that become trivial.
Presentation tietze_eliminate(const Presentation& p, const std::string& sym, const SymWord& w);

}  // namespace autfn

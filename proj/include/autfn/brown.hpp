#pragma once

// Presentations of Aut(F_n) from an OrbitComplex: vertex stabilizer generators
// and one symbol t_e per edge, subject to tree, edge, face and stabilizer
// relations. Simplification eliminates the t_e and the non-root stabilizer
// symbols and normalizes what is left in the free product W_n * <eta>.

#include <string>
#include <vector>

#include "autfn/finite_group.hpp"
#include "autfn/presentation.hpp"
#include "autfn/spine_quotient.hpp"

namespace autfn {

// `v2:eta.tau1.tau2.eta` for the generator `eta tau1 tau2 eta` of v2.
std::string vertex_symbol(const OrbitVertex& v, const NamedAut& gen);
std::string edge_symbol(const OrbitEdge& e);

// Shortest word in the vertex's stabilizer generators evaluating to f.
SymWord stab_word(const OrbitComplex& c, int vertex, const FreeAut& f);

// Generators of G_o meet G_t, preferring generators of o, then elements whose
// conjugate by g_e is a generator of w(e).
std::vector<FreeAut> edge_stabilizer_generators(const OrbitComplex& c, const OrbitEdge& e);

std::vector<Relator> tree_relations(const OrbitComplex& c);
// t_e^-1 [x]_o t_e [g_e^-1 x g_e]_w^-1 for each generator x of G_e.
std::vector<Relator> edge_relations(const OrbitComplex& c);
// h1 t1^(+-1) h2 t2^(+-1) h3 t3^(+-1) [g_delta]^-1.
std::vector<Relator> face_relations(const OrbitComplex& c);
std::vector<Relator> stabilizer_relations(const OrbitComplex& c);

Presentation assemble(const OrbitComplex& c);
// Stabilizer symbols to their automorphisms, t_e to g_e.
Assignment brown_assignment(const OrbitComplex& c);

// Tietze elimination of t_* symbols, then of `<vertex>:<name>` symbols (later
// generators first; the first symbol named s_i, tau1 or eta is kept and renamed
// to that name), then, over the alphabet {s_i, tau_i, sigma_ij, eta}: inverse
// letters of involutions dropped, relators trivial in W_n * <eta> removed,
// relators with three or more eta syllables removed when eta w eta = w'
// rewriting with earlier two-syllable relators reduces them to 1, W_n relators
// replaced by the standard W_n presentation, and the rest written in normal form.
Presentation simplify(const Presentation& p, int n, std::vector<std::string>* trace = nullptr);

// Cyclic normal form in W_n * <eta>: the W_n syllables between consecutive
// etas, least under rotation and inversion. A relator with no eta gives its
// W_n value as a single syllable.
struct FreeProductForm {
  std::vector<std::string> syllables;
  bool has_eta = false;
  bool trivial() const { return !has_eta && syllables.size() == 1 && syllables[0] == "1"; }
  friend bool operator==(const FreeProductForm&, const FreeProductForm&) = default;
  friend auto operator<=>(const FreeProductForm&, const FreeProductForm&) = default;
};
// nullopt when the word uses a symbol outside the standard alphabet.
std::optional<FreeProductForm> free_product_form(const SymWord& w, int n);

struct CompareLine {
  std::string item;
  bool ok = true;
  std::string detail;
};

struct CompareReport {
  bool relators_hold = false;      // (i)
  bool generators_equivalent = false;  // (ii)
  bool reference_matched = false;  // (iii) every reference relator has a derived match
  std::vector<CompareLine> lines;
  std::string to_string() const;
};

// `derived` against `reference` over standard symbols.
CompareReport compare(const Presentation& derived, const Presentation& reference, int n, int depth = 6);

struct Derivation {
  Presentation assembled;
  Presentation simplified;
  std::vector<std::string> trace;
};
Derivation derive(const OrbitComplex& c);

}  // namespace autfn

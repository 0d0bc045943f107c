#pragma once

// Orbit data for the action of Aut(F_n) on the degree <= 2 part of the spine:
// one representative marked graph per vertex orbit (all in the lifted tree),
// edge representatives running from a tree vertex to g_e applied to another
// tree vertex, and faces as closed three-step edge paths.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "autfn/generation.hpp"
#include "autfn/marked_graph.hpp"

namespace autfn {

// Evaluates a product of standard symbols (`eta tau1 tau2 eta`, `1`) as a NamedAut.
NamedAut named_product(const std::string& expr, int n);

struct OrbitVertex {
  std::string id;
  MarkedGraph rep;
  bool in_tree = true;
  std::vector<NamedAut> stabilizer_gens;
};

struct OrbitEdge {
  std::string id;
  int origin = 0;    // vertex index
  int terminal = 0;  // vertex index of w(e); the geometric end is g * rep(terminal)
  NamedAut g;
  bool in_tree = false;
};

struct FaceStep {
  int edge = 0;
  int sign = 1;  // +1 walks origin -> terminal, -1 the reverse
  NamedAut h;
};

struct OrbitFace {
  std::string id;
  std::array<FaceStep, 3> steps;
};

struct OrbitComplex {
  int n = 0;
  std::vector<OrbitVertex> vertices;
  std::vector<OrbitEdge> edges;
  std::vector<OrbitFace> faces;

  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;

  // Sections `[vertex]`, `[edge]`, `[face]` of `key value` lines; automorphisms
  // are written `name : a1->...; a2->...`, the literal part optional for
  // products of standard symbols.
  std::string to_text() const;
  static OrbitComplex parse(std::string_view text);
};

// Curated lift of the quotient (v0..v8 less v4, v7; thirteen edges, seven faces
// for n >= 4; fewer for n = 2, 3).
OrbitComplex figure3_data(int n);

struct ValidationLine {
  std::string check;
  bool ok = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationLine> lines;
  bool all_passed() const;
  std::string to_string() const;
};

ValidationReport validate_complex(const OrbitComplex& c);

// Geometric vertices of a face (the start vertex and the two after it).
std::array<MarkedGraph, 3> face_vertices(const OrbitComplex& c, const OrbitFace& f);

// Stabilizer of the edge between rep(origin) and g_e * rep(terminal).
std::vector<FreeAut> edge_stabilizer(const OrbitComplex& c, const OrbitEdge& e);

// True when the simplices (listed in any order) are related by the action.
bool same_orbit(std::vector<MarkedGraph> a, std::vector<MarkedGraph> b);
// One graph is a forest collapse of the other.
bool collapse_related(const MarkedGraph& a, const MarkedGraph& b);

// Underlying graph types of rank n and degree <= max_degree, up to isomorphism.
std::vector<CombGraph> enumerate_graph_types(int n, int max_degree = 2);

// Quotient computed from scratch for n <= 4.
OrbitComplex enumerate_quotient(int n, int max_degree = 2);

struct QuotientSummary {
  std::size_t vertices = 0, edges = 0, faces = 0;
  std::vector<std::size_t> stabilizer_orders;  // sorted
  friend bool operator==(const QuotientSummary&, const QuotientSummary&) = default;
};
QuotientSummary summarize(const OrbitComplex& c);

}  // namespace autfn

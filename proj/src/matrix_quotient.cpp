#include "autfn/matrix_quotient.hpp"

#include <sstream>
#include <unordered_set>

#include "autfn/modp_kernel.hpp"

namespace autfn {

namespace {

void check_prime(int p) {
  if (p != 2 && p != 3 && p != 5 && p != 7) throw Error("p must be one of 2, 3, 5, 7");
}

int reduce(long long x, int p) {
  const long long r = x % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

template <typename M>
std::string rows_to_string(const M& m) {
  std::ostringstream os;
  for (int i = 0; i < m.n; ++i) {
    if (i > 0) os << "; ";
    for (int j = 0; j < m.n; ++j) os << (j > 0 ? " " : "") << m.at(i, j);
  }
  return os.str();
}

}  // namespace

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m{n, std::vector<long long>(static_cast<std::size_t>(n * n), 0)};
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool IntMatrix::is_identity() const { return *this == identity(n); }

std::string IntMatrix::to_string() const { return rows_to_string(*this); }

long long IntMatrix::determinant() const {
  // Bareiss fraction-free elimination.
  std::vector<long long> m = a;
  const auto e = [&](int i, int j) -> long long& { return m[static_cast<std::size_t>(i * n + j)]; };
  long long sign = 1, prev = 1;
  for (int k = 0; k < n; ++k) {
    if (e(k, k) == 0) {
      int r = k + 1;
      while (r < n && e(r, k) == 0) ++r;
      if (r == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(e(k, j), e(r, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) e(i, j) = (e(i, j) * e(k, k) - e(i, k) * e(k, j)) / prev;
    }
    prev = e(k, k);
  }
  return n == 0 ? 1 : sign * e(n - 1, n - 1);
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.n != y.n) throw Error("matrix size mismatch");
  IntMatrix out{x.n, std::vector<long long>(x.a.size(), 0)};
  for (int i = 0; i < x.n; ++i) {
    for (int k = 0; k < x.n; ++k) {
      const long long v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < x.n; ++j) out.at(i, j) += v * y.at(k, j);
    }
  }
  return out;
}

IntMatrix inverse(const IntMatrix& m) {
  const long long det = m.determinant();
  if (det != 1 && det != -1) throw Error("matrix is not invertible over Z");
  const int n = m.n;
  IntMatrix out{n, std::vector<long long>(m.a.size(), 0)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      IntMatrix minor{n - 1, {}};
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          if (r != j && c != i) minor.a.push_back(m.at(r, c));
        }
      }
      const long long cof = ((i + j) % 2 == 0 ? 1 : -1) * minor.determinant();
      out.at(i, j) = cof * det;
    }
  }
  return out;
}

IntMatrix abelianize(const FreeAut& f) {
  const int n = f.rank();
  IntMatrix m{n, std::vector<long long>(static_cast<std::size_t>(n * n), 0)};
  for (int j = 1; j <= n; ++j) {
    for (const Letter& l : f.image(j).letters()) m.at(l.index - 1, j - 1) += l.sign;
  }
  return m;
}

ModMatrix ModMatrix::identity(int n, int p) {
  check_prime(p);
  ModMatrix m{n, p, std::vector<std::uint8_t>(static_cast<std::size_t>(n * n), 0)};
  for (int i = 0; i < n; ++i) m.a[static_cast<std::size_t>(i * n + i)] = 1;
  return m;
}

bool ModMatrix::is_identity() const { return *this == identity(n, p); }

std::string ModMatrix::to_string() const { return rows_to_string(*this); }

ModMatrix operator*(const ModMatrix& x, const ModMatrix& y) {
  if (x.n != y.n || x.p != y.p) throw Error("matrix shape or modulus mismatch");
  ModMatrix out{x.n, x.p, std::vector<std::uint8_t>(x.a.size(), 0)};
  for (int i = 0; i < x.n; ++i) {
    for (int j = 0; j < x.n; ++j) {
      int acc = 0;
      for (int k = 0; k < x.n; ++k) acc += x.at(i, k) * y.at(k, j);
      out.a[static_cast<std::size_t>(i * x.n + j)] = static_cast<std::uint8_t>(acc % x.p);
    }
  }
  return out;
}

ModMatrix mod_p(const IntMatrix& m, int p) {
  check_prime(p);
  ModMatrix out{m.n, p, {}};
  for (long long v : m.a) out.a.push_back(static_cast<std::uint8_t>(reduce(v, p)));
  return out;
}

std::size_t closure_order(const std::vector<ModMatrix>& gens, std::size_t limit) {
  if (gens.empty()) throw Error("closure needs at least one generator");
  const int n = gens[0].n, p = gens[0].p;
  for (const ModMatrix& g : gens) {
    if (g.n != n || g.p != p) throw Error("generators differ in size or modulus");
  }
  const std::size_t nn = static_cast<std::size_t>(n * n);
  // Keys are the row-major entry bytes.
  std::unordered_set<std::string> seen;
  const ModMatrix id = ModMatrix::identity(n, p);
  seen.emplace(id.a.begin(), id.a.end());
  // Frontier stored by entry plane for the batch kernel.
  std::vector<std::uint8_t> frontier(id.a.begin(), id.a.end());
  std::size_t count = 1;
  std::vector<std::uint8_t> product, next;
  std::string key(nn, '\0');
  while (count > 0) {
    std::size_t next_count = 0;
    next.clear();
    std::vector<std::string> found;
    product.resize(nn * count);
    for (const ModMatrix& g : gens) {
      modp_mul_batch(frontier.data(), count, count, g.a.data(), n, p, product.data());
      for (std::size_t m = 0; m < count; ++m) {
        for (std::size_t e = 0; e < nn; ++e) key[e] = static_cast<char>(product[e * count + m]);
        if (!seen.insert(key).second) continue;
        if (seen.size() > limit) throw Error("closure exceeded " + std::to_string(limit) + " elements");
        found.push_back(key);
        ++next_count;
      }
    }
    next.assign(nn * next_count, 0);
    for (std::size_t m = 0; m < next_count; ++m) {
      for (std::size_t e = 0; e < nn; ++e) next[e * next_count + m] = static_cast<std::uint8_t>(found[m][e]);
    }
    frontier.swap(next);
    count = next_count;
  }
  return seen.size();
}

MatrixAssignment abelianized_assignment(const Assignment& a) {
  MatrixAssignment out;
  for (const auto& [sym, f] : a) out.emplace(sym, abelianize(f));
  return out;
}

VerifyReport verify_relations_matrix(const Presentation& pres, const MatrixAssignment& a, int n, std::optional<int> p) {
  if (p) check_prime(*p);
  VerifyReport report;
  const auto lookup = [&](const std::string& s) -> const IntMatrix& {
    auto it = a.find(s);
    if (it == a.end()) throw Error("no matrix assigned to " + s);
    return it->second;
  };
  for (std::size_t i = 0; i < pres.relators.size(); ++i) {
    const Relator& r = pres.relators[i];
    VerifyLine line{i + 1, r.tag, sym_word_to_string(r.word), false, {}};
    if (p) {
      ModMatrix v = ModMatrix::identity(n, *p);
      for (const SymLetter& l : r.word) {
        const IntMatrix& m = lookup(l.sym);
        v = v * mod_p(l.exp > 0 ? m : inverse(m), *p);
      }
      line.passed = v.is_identity();
      if (!line.passed) line.images = v.to_string();
    } else {
      const IntMatrix v = evaluate_word(r.word, IntMatrix::identity(n), lookup, [](const IntMatrix& x, const IntMatrix& y) { return x * y; },
                                        [](const IntMatrix& x) { return inverse(x); });
      line.passed = v.is_identity();
      if (!line.passed) line.images = v.to_string();
    }
    report.lines.push_back(std::move(line));
  }
  return report;
}

std::vector<ModMatrix> generator_images(const Presentation& pres, int n, int p) {
  const Assignment a = tautological_assignment(pres, n);
  std::vector<ModMatrix> out;
  for (const std::string& g : pres.generators) out.push_back(mod_p(abelianize(a.at(g)), p));
  return out;
}

}  // namespace autfn

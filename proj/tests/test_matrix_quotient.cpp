#include <random>

#include "autfn/matrix_quotient.hpp"
#include "autfn/modp_kernel.hpp"
#include "doctest.h"
#include "random_auts.hpp"

using namespace autfn;

namespace {

IntMatrix from_rows(int n, std::vector<long long> a) { return IntMatrix{n, std::move(a)}; }

struct KernelGuard {
  ModpKernel saved = active_modp_kernel();
  ~KernelGuard() { set_modp_kernel(saved); }
};

}  // namespace

TEST_CASE("abelianization of the standard generators") {
  CHECK(abelianize(FreeAut::identity(3)).is_identity());
  const IntMatrix e = abelianize(eta(3));
  CHECK(e == from_rows(3, {1, 0, 0, -1, -1, 0, 0, 0, 1}));
  CHECK(abelianize(tau(1, 3)) == from_rows(3, {-1, 0, 0, 0, 1, 0, 0, 0, 1}));
  CHECK(abelianize(sigma(1, 2, 3)) == from_rows(3, {0, 1, 0, 1, 0, 0, 0, 0, 1}));
  CHECK(e.determinant() == -1);
  CHECK(abelianize(tau(2, 3)).determinant() == -1);
}

TEST_CASE("reduction mod p") {
  CHECK(mod_p(from_rows(2, {-1, 0, 0, 1}), 2).is_identity());
  const ModMatrix e3 = mod_p(abelianize(eta(2)), 3);
  CHECK(e3.at(0, 0) == 1);
  CHECK(e3.at(1, 0) == 2);
  for (int i = 1; i <= 4; ++i) CHECK(mod_p(abelianize(tau(i, 4)), 2).is_identity());
  CHECK_THROWS_AS(mod_p(IntMatrix::identity(2), 4), Error);
  CHECK_THROWS_AS(mod_p(IntMatrix::identity(2), 11), Error);
}

TEST_CASE("abelianization is functorial with unimodular images") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 4;
    const FreeAut f = testing::random_product(rng, n, 6);
    const FreeAut g = testing::random_product(rng, n, 6);
    const IntMatrix af = abelianize(f);
    CHECK(abelianize(compose(f, g)) == af * abelianize(g));
    const long long d = af.determinant();
    CHECK((d == 1 || d == -1));
    CHECK(inverse(af) == abelianize(invert(f)));
  }
}

TEST_CASE("closure of the generator images mod 2 is GL(n, 2)") {
  CHECK(closure_order(generator_images(theorem1_presentation(2), 2, 2)) == 6);
  CHECK(closure_order(generator_images(theorem1_presentation(3), 3, 2)) == 168);
  CHECK(closure_order(generator_images(theorem1_presentation(4), 4, 2)) == 20160);
  CHECK(closure_order({ModMatrix::identity(3, 5)}) == 1);
  CHECK_THROWS_AS(closure_order(generator_images(theorem1_presentation(4), 4, 2), 1000), Error);
  // W_3 embeds as signed permutation matrices mod 3.
  CHECK(closure_order(generator_images(wn_presentation(3), 3, 3)) == 48);
}

TEST_CASE("relators map to the identity matrix") {
  const Presentation p4 = theorem1_presentation(4);
  const MatrixAssignment a4 = abelianized_assignment(tautological_assignment(p4, 4));
  CHECK(verify_relations_matrix(p4, a4, 4, 2).all_passed());
  CHECK(verify_relations_matrix(p4, a4, 4, 7).all_passed());
  const Presentation p3 = theorem1_presentation(3);
  CHECK(verify_relations_matrix(p3, abelianized_assignment(tautological_assignment(p3, 3)), 3).all_passed());

  Presentation bad = p4;
  bad.relators.push_back({parse_sym_word("sigma12 eta sigma12 eta"), "corrupt"});
  MatrixAssignment ab = abelianized_assignment(tautological_assignment(bad, 4));
  ab.emplace("sigma12", abelianize(sigma(1, 2, 4)));
  const VerifyReport r = verify_relations_matrix(bad, ab, 4, 5);
  CHECK_FALSE(r.all_passed());
  CHECK_FALSE(r.lines.back().passed);
  CHECK_FALSE(r.lines.back().images.empty());
  const IntMatrix se = ab.at("sigma12") * ab.at("eta");
  CHECK_FALSE(mod_p(se * se, 5).is_identity());
  CHECK(mod_p(se * se * se, 5).is_identity());
}

TEST_CASE("batched kernels agree") {
  std::mt19937 rng(99);
  for (int p : {2, 3, 5, 7}) {
    for (int n = 1; n <= kMaxKernelDim; ++n) {
      for (std::size_t count : {1u, 15u, 16u, 17u, 100u}) {
        const std::size_t nn = static_cast<std::size_t>(n * n);
        std::uniform_int_distribution<int> d(0, p - 1);
        std::vector<std::uint8_t> batch(nn * count), b(nn), want(nn * count), got(nn * count);
        for (auto& x : batch) x = static_cast<std::uint8_t>(d(rng));
        for (auto& x : b) x = static_cast<std::uint8_t>(d(rng));
        modp_mul_batch_scalar(batch.data(), count, count, b.data(), n, p, want.data());
        for (std::size_t m = 0; m < count; ++m) {
          ModMatrix a{n, p, {}}, bm{n, p, b};
          for (std::size_t e = 0; e < nn; ++e) a.a.push_back(batch[e * count + m]);
          const ModMatrix c = a * bm;
          for (std::size_t e = 0; e < nn; ++e) REQUIRE(want[e * count + m] == c.a[e]);
        }
        if (avx2_available()) {
          modp_mul_batch_avx2(batch.data(), count, count, b.data(), n, p, got.data());
          CHECK(got == want);
        }
      }
    }
  }
  CHECK_THROWS_AS(modp_mul_batch_scalar(nullptr, 0, 0, nullptr, 9, 2, nullptr), Error);
}

TEST_CASE("closure order does not depend on the kernel") {
  KernelGuard guard;
  const auto gens = generator_images(theorem1_presentation(3), 3, 3);
  set_modp_kernel(ModpKernel::scalar);
  const std::size_t scalar = closure_order(gens);
  CHECK(scalar == 11232);  // |GL(3,3)|
  if (avx2_available()) {
    set_modp_kernel(ModpKernel::avx2);
    CHECK(closure_order(gens) == scalar);
  }
}

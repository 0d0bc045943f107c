#include "autfn/modp_kernel.hpp"

#include <atomic>

#include "autfn/word.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define AUTFN_X86 1
#endif

namespace autfn {

namespace {

void check_args(int n, int p) {
  if (n < 1 || n > kMaxKernelDim) throw Error("kernel dimension out of range");
  if (p != 2 && p != 3 && p != 5 && p != 7) throw Error("modulus must be 2, 3, 5 or 7");
}

ModpKernel detect() { return avx2_available() ? ModpKernel::avx2 : ModpKernel::scalar; }

std::atomic<ModpKernel>& kernel_slot() {
  static std::atomic<ModpKernel> k{detect()};
  return k;
}

}  // namespace

void modp_mul_batch_scalar(const std::uint8_t* batch, std::size_t count, std::size_t stride, const std::uint8_t* b, int n,
                           int p, std::uint8_t* out) {
  check_args(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::uint8_t* dst = out + static_cast<std::size_t>(i * n + j) * stride;
      for (std::size_t m = 0; m < count; ++m) {
        unsigned acc = 0;
        for (int k = 0; k < n; ++k) acc += unsigned(batch[static_cast<std::size_t>(i * n + k) * stride + m]) * b[k * n + j];
        dst[m] = static_cast<std::uint8_t>(acc % static_cast<unsigned>(p));
      }
    }
  }
}

#ifdef AUTFN_X86

__attribute__((target("avx2"))) void modp_mul_batch_avx2(const std::uint8_t* batch, std::size_t count, std::size_t stride,
                                                         const std::uint8_t* b, int n, int p, std::uint8_t* out) {
  check_args(n, p);
  // floor(x / p) = mulhi(x, ceil(2^16 / p)) for the sums that occur (x < 8 * 36 + 1).
  const __m256i magic = _mm256_set1_epi16(static_cast<short>((65536 + p - 1) / p));
  const __m256i modulus = _mm256_set1_epi16(static_cast<short>(p));
  const std::size_t vec_end = count - count % 16;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::uint8_t* dst = out + static_cast<std::size_t>(i * n + j) * stride;
      std::size_t m = 0;
      for (; m < vec_end; m += 16) {
        __m256i acc = _mm256_setzero_si256();
        for (int k = 0; k < n; ++k) {
          const std::uint8_t* src = batch + static_cast<std::size_t>(i * n + k) * stride + m;
          const __m256i a = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(src)));
          acc = _mm256_add_epi16(acc, _mm256_mullo_epi16(a, _mm256_set1_epi16(b[k * n + j])));
        }
        const __m256i q = _mm256_mulhi_epu16(acc, magic);
        const __m256i r = _mm256_sub_epi16(acc, _mm256_mullo_epi16(q, modulus));
        const __m256i packed = _mm256_packus_epi16(r, _mm256_setzero_si256());
        const __m256i ordered = _mm256_permute4x64_epi64(packed, 0b11011000);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + m), _mm256_castsi256_si128(ordered));
      }
      for (; m < count; ++m) {
        unsigned acc = 0;
        for (int k = 0; k < n; ++k) acc += unsigned(batch[static_cast<std::size_t>(i * n + k) * stride + m]) * b[k * n + j];
        dst[m] = static_cast<std::uint8_t>(acc % static_cast<unsigned>(p));
      }
    }
  }
}

bool avx2_available() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}

#else

void modp_mul_batch_avx2(const std::uint8_t*, std::size_t, std::size_t, const std::uint8_t*, int, int, std::uint8_t*) {
  throw Error("AVX2 kernel not built for this target");
}

bool avx2_available() { return false; }

#endif

ModpKernel active_modp_kernel() { return kernel_slot().load(); }

void set_modp_kernel(ModpKernel k) {
  if (k == ModpKernel::avx2 && !avx2_available()) throw Error("AVX2 not available on this CPU");
  kernel_slot().store(k);
}

std::string kernel_name(ModpKernel k) { return k == ModpKernel::avx2 ? "avx2" : "scalar"; }

void modp_mul_batch(const std::uint8_t* batch, std::size_t count, std::size_t stride, const std::uint8_t* b, int n, int p,
                    std::uint8_t* out) {
  if (active_modp_kernel() == ModpKernel::avx2) {
    modp_mul_batch_avx2(batch, count, stride, b, n, p, out);
  } else {
    modp_mul_batch_scalar(batch, count, stride, b, n, p, out);
  }
}

}  // namespace autfn

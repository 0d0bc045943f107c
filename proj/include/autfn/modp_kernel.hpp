#pragma once

// Batched products A_m * B over Z/p for small square matrices. The batch is
// stored by entry: plane e = i*n + k holds entry (i,k) of every A_m, `stride`
// bytes apart. B is row-major; out has the same layout as the batch.

#include <cstddef>
#include <cstdint>
#include <string>

namespace autfn {

enum class ModpKernel { scalar, avx2 };

constexpr int kMaxKernelDim = 8;

void modp_mul_batch_scalar(const std::uint8_t* batch, std::size_t count, std::size_t stride, const std::uint8_t* b, int n,
                           int p, std::uint8_t* out);
// Requires avx2_available().
void modp_mul_batch_avx2(const std::uint8_t* batch, std::size_t count, std::size_t stride, const std::uint8_t* b, int n,
                         int p, std::uint8_t* out);

bool avx2_available();
// Kernel used by modp_mul_batch: AVX2 when the CPU has it, unless overridden.
ModpKernel active_modp_kernel();
void set_modp_kernel(ModpKernel k);
std::string kernel_name(ModpKernel k);

void modp_mul_batch(const std::uint8_t* batch, std::size_t count, std::size_t stride, const std::uint8_t* b, int n, int p,
                    std::uint8_t* out);

}  // namespace autfn

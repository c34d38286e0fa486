#include "orbsieve/kernels.hpp"

#if defined(ORBSIEVE_HAVE_AVX2_BUILD)

#include <immintrin.h>

namespace orbsieve::kernels {

// 4 lanes per step; the per-lane add order matches the scalar kernel, so the
// two variants agree bitwise.
void markov_apply_avx2(const std::uint32_t* const* actions, std::size_t ngens,
                       const double* in, double* out, std::size_t n) {
    const double inv = 1.0 / static_cast<double>(ngens);
    const __m256d vinv = _mm256_set1_pd(inv);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t s = 0; s < ngens; ++s) {
            __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(actions[s] + i));
            acc = _mm256_add_pd(acc, _mm256_i32gather_pd(in, idx, 8));
        }
        _mm256_storeu_pd(out + i, _mm256_mul_pd(acc, vinv));
    }
    for (; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t s = 0; s < ngens; ++s) acc += in[actions[s][i]];
        out[i] = acc * inv;
    }
}

}  // namespace orbsieve::kernels

#endif

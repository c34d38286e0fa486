#pragma once

#include <cstddef>
#include <cstdint>

namespace orbsieve::kernels {

// out[i] = (1/ngens) * sum over s of in[actions[s][i]], the Markov averaging
// step on a Cayley graph given in generator-action form. All variants add the
// ngens gathers in the same order, so results are bitwise identical across
// implementations (and therefore across machines with/without AVX2).
using MarkovApplyFn = void (*)(const std::uint32_t* const* actions, std::size_t ngens,
                               const double* in, double* out, std::size_t n);

void markov_apply_scalar(const std::uint32_t* const* actions, std::size_t ngens,
                         const double* in, double* out, std::size_t n);

#if defined(ORBSIEVE_HAVE_AVX2_BUILD)
void markov_apply_avx2(const std::uint32_t* const* actions, std::size_t ngens,
                       const double* in, double* out, std::size_t n);
#endif

// Runtime dispatch: AVX2 when the CPU supports it, scalar otherwise.
MarkovApplyFn select_markov_apply();
const char* selected_markov_kernel_name();

}  // namespace orbsieve::kernels

#include "orbsieve/kernels.hpp"

namespace orbsieve::kernels {

MarkovApplyFn select_markov_apply() {
#if defined(ORBSIEVE_HAVE_AVX2_BUILD)
    if (__builtin_cpu_supports("avx2")) return markov_apply_avx2;
#endif
    return markov_apply_scalar;
}

const char* selected_markov_kernel_name() {
#if defined(ORBSIEVE_HAVE_AVX2_BUILD)
    if (__builtin_cpu_supports("avx2")) return "avx2";
#endif
    return "scalar";
}

}  // namespace orbsieve::kernels

#include "orbsieve/kernels.hpp"

namespace orbsieve::kernels {

void markov_apply_scalar(const std::uint32_t* const* actions, std::size_t ngens,
                         const double* in, double* out, std::size_t n) {
    const double inv = 1.0 / static_cast<double>(ngens);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t s = 0; s < ngens; ++s) acc += in[actions[s][i]];
        out[i] = acc * inv;
    }
}

}  // namespace orbsieve::kernels

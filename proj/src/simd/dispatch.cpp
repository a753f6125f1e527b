#include "homlab/simd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace homlab::simd {

const KernelTable& kernels() {
    static const KernelTable& selected = [] () -> const KernelTable& {
        const char* forced = std::getenv("HOMLAB_SIMD");
        if (forced != nullptr && std::string_view(forced) == "scalar")
            return scalar_kernels();
        if (const KernelTable* t = avx2_kernels())
            return *t;
        return scalar_kernels();
    }();
    return selected;
}

} // namespace homlab::simd

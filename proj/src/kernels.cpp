// Runtime kernel selection.  This translation unit is built without -mavx2 so
// the dispatch itself runs on any x86-64; the AVX2 entry points are only ever
// called after the cpuid check says they are safe.

#include "evcalc/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace evcalc::kernels {

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_supported() { return __builtin_cpu_supports("avx2") != 0; }
#endif

static const Ops& pick_ops() {
    const char* want = std::getenv("EVCALC_SIMD");
    if (want != nullptr && std::strcmp(want, "scalar") == 0) return scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
    if (want != nullptr && std::strcmp(want, "avx2") == 0) {
        return avx2_supported() ? avx2_ops() : scalar_ops();
    }
    if (avx2_supported()) return avx2_ops();
#endif
    return scalar_ops();
}

const Ops& active_ops() {
    static const Ops& ops = pick_ops();
    return ops;
}

}  // namespace evcalc::kernels

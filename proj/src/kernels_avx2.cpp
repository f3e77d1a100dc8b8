// AVX2 variants of the lattice passes.  Within any single pass k the written
// elements and the read elements are disjoint index sets, so 4-wide execution
// performs exactly the scalar per-element operation on the same operands --
// results are bit-identical to kernels_scalar.cpp, which the equivalence
// tests assert with ==.  This file is the only translation unit built with
// -mavx2; it must not be entered on CPUs without AVX2.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "evcalc/kernels.hpp"

namespace evcalc::kernels {

namespace {

// Pass for stride bit >= 4: paired blocks [src block][dst block] of length bit.
template <bool Add>
inline void pass_blocks_subset(double* f, std::size_t len, std::size_t bit) {
    for (std::size_t base = 0; base < len; base += 2 * bit) {
        double* src = f + base;
        double* dst = f + base + bit;
        for (std::size_t j = 0; j < bit; j += 4) {
            __m256d s = _mm256_loadu_pd(src + j);
            __m256d d = _mm256_loadu_pd(dst + j);
            __m256d r = Add ? _mm256_add_pd(d, s) : _mm256_sub_pd(d, s);
            _mm256_storeu_pd(dst + j, r);
        }
    }
}

template <bool Add>
inline void pass_blocks_superset(double* f, std::size_t len, std::size_t bit) {
    for (std::size_t base = 0; base < len; base += 2 * bit) {
        double* dst = f + base;
        double* src = f + base + bit;
        for (std::size_t j = 0; j < bit; j += 4) {
            __m256d s = _mm256_loadu_pd(src + j);
            __m256d d = _mm256_loadu_pd(dst + j);
            __m256d r = Add ? _mm256_add_pd(d, s) : _mm256_sub_pd(d, s);
            _mm256_storeu_pd(dst + j, r);
        }
    }
}

// Stride 1, subset direction: odd lanes combine with the preceding even lane.
template <bool Add>
inline void pass_bit0_subset(double* f, std::size_t len) {
    for (std::size_t s = 0; s < len; s += 4) {
        __m256d v = _mm256_loadu_pd(f + s);
        __m256d src = _mm256_movedup_pd(v);  // [a0 a0 a2 a2]
        __m256d r = Add ? _mm256_add_pd(v, src) : _mm256_sub_pd(v, src);
        _mm256_storeu_pd(f + s, _mm256_blend_pd(v, r, 0b1010));
    }
}

// Stride 1, superset direction: even lanes combine with the following odd lane.
template <bool Add>
inline void pass_bit0_superset(double* f, std::size_t len) {
    for (std::size_t s = 0; s < len; s += 4) {
        __m256d v = _mm256_loadu_pd(f + s);
        __m256d src = _mm256_permute_pd(v, 0b1111);  // [a1 a1 a3 a3]
        __m256d r = Add ? _mm256_add_pd(v, src) : _mm256_sub_pd(v, src);
        _mm256_storeu_pd(f + s, _mm256_blend_pd(r, v, 0b1010));
    }
}

// Stride 2, subset direction: high 128-bit lane combines with the low lane.
template <bool Add>
inline void pass_bit1_subset(double* f, std::size_t len) {
    for (std::size_t s = 0; s < len; s += 4) {
        __m256d v = _mm256_loadu_pd(f + s);
        __m256d src = _mm256_permute2f128_pd(v, v, 0x08);  // [0 0 a0 a1]
        __m256d r = Add ? _mm256_add_pd(v, src) : _mm256_sub_pd(v, src);
        _mm256_storeu_pd(f + s, _mm256_blend_pd(v, r, 0b1100));
    }
}

// Stride 2, superset direction: low 128-bit lane combines with the high lane.
template <bool Add>
inline void pass_bit1_superset(double* f, std::size_t len) {
    for (std::size_t s = 0; s < len; s += 4) {
        __m256d v = _mm256_loadu_pd(f + s);
        __m256d src = _mm256_permute2f128_pd(v, v, 0x81);  // [a2 a3 0 0]
        __m256d r = Add ? _mm256_add_pd(v, src) : _mm256_sub_pd(v, src);
        _mm256_storeu_pd(f + s, _mm256_blend_pd(r, v, 0b1100));
    }
}

// Scalar fallbacks for frames too small to fill one vector.
template <bool Add, bool Superset>
inline void pass_small(double* f, std::size_t len, std::size_t bit) {
    for (std::size_t s = 0; s < len; ++s) {
        bool has = (s & bit) != 0;
        if (Superset ? !has : has) {
            double other = f[Superset ? (s | bit) : (s ^ bit)];
            f[s] = Add ? f[s] + other : f[s] - other;
        }
    }
}

template <bool Add>
void transform_subset(double* f, int n) {
    const std::size_t len = std::size_t{1} << n;
    if (len < 4) {
        for (int k = 0; k < n; ++k) pass_small<Add, false>(f, len, std::size_t{1} << k);
        return;
    }
    for (int k = 0; k < n; ++k) {
        const std::size_t bit = std::size_t{1} << k;
        if (k == 0) {
            pass_bit0_subset<Add>(f, len);
        } else if (k == 1) {
            pass_bit1_subset<Add>(f, len);
        } else {
            pass_blocks_subset<Add>(f, len, bit);
        }
    }
}

template <bool Add>
void transform_superset(double* f, int n) {
    const std::size_t len = std::size_t{1} << n;
    if (len < 4) {
        for (int k = 0; k < n; ++k) pass_small<Add, true>(f, len, std::size_t{1} << k);
        return;
    }
    for (int k = 0; k < n; ++k) {
        const std::size_t bit = std::size_t{1} << k;
        if (k == 0) {
            pass_bit0_superset<Add>(f, len);
        } else if (k == 1) {
            pass_bit1_superset<Add>(f, len);
        } else {
            pass_blocks_superset<Add>(f, len, bit);
        }
    }
}

void zeta_subset_avx2(double* f, int n) { transform_subset<true>(f, n); }
void mobius_subset_avx2(double* f, int n) { transform_subset<false>(f, n); }
void zeta_superset_avx2(double* f, int n) { transform_superset<true>(f, n); }
void mobius_superset_avx2(double* f, int n) { transform_superset<false>(f, n); }

void complement_from_avx2(double* out, const double* in, int n, double one) {
    const std::size_t len = std::size_t{1} << n;
    if (len < 4) {
        for (std::size_t s = 0; s < len; ++s) out[s] = one - in[(len - 1) ^ s];
        return;
    }
    const __m256d ones = _mm256_set1_pd(one);
    for (std::size_t s = 0; s < len; s += 4) {
        __m256d v = _mm256_loadu_pd(in + (len - 4 - s));
        __m256d rev = _mm256_permute4x64_pd(v, 0b00011011);  // [d3 d2 d1 d0]
        _mm256_storeu_pd(out + s, _mm256_sub_pd(ones, rev));
    }
}

void div_scalar_avx2(double* x, std::size_t len, double divisor) {
    const __m256d d = _mm256_set1_pd(divisor);
    std::size_t s = 0;
    for (; s + 4 <= len; s += 4) {
        _mm256_storeu_pd(x + s, _mm256_div_pd(_mm256_loadu_pd(x + s), d));
    }
    for (; s < len; ++s) x[s] /= divisor;
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{
        "avx2",
        zeta_subset_avx2,
        mobius_subset_avx2,
        zeta_superset_avx2,
        mobius_superset_avx2,
        complement_from_avx2,
        div_scalar_avx2,
    };
    return ops;
}

}  // namespace evcalc::kernels

#endif  // x86_64

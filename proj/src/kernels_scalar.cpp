// Reference implementations of the lattice passes.  Every other variant must
// match these bit for bit; keep the loops in this exact form (one add or
// subtract per element per pass, pass index k ascending).

#include "evcalc/kernels.hpp"

#include <cstddef>
#include <cstdint>

namespace evcalc::kernels {

namespace {

void zeta_subset_scalar(double* f, int n) {
    const std::size_t len = std::size_t{1} << n;
    for (int k = 0; k < n; ++k) {
        const std::size_t bit = std::size_t{1} << k;
        for (std::size_t s = 0; s < len; ++s) {
            if (s & bit) f[s] += f[s ^ bit];
        }
    }
}

void mobius_subset_scalar(double* f, int n) {
    const std::size_t len = std::size_t{1} << n;
    for (int k = 0; k < n; ++k) {
        const std::size_t bit = std::size_t{1} << k;
        for (std::size_t s = 0; s < len; ++s) {
            if (s & bit) f[s] -= f[s ^ bit];
        }
    }
}

void zeta_superset_scalar(double* f, int n) {
    const std::size_t len = std::size_t{1} << n;
    for (int k = 0; k < n; ++k) {
        const std::size_t bit = std::size_t{1} << k;
        for (std::size_t s = 0; s < len; ++s) {
            if (!(s & bit)) f[s] += f[s | bit];
        }
    }
}

void mobius_superset_scalar(double* f, int n) {
    const std::size_t len = std::size_t{1} << n;
    for (int k = 0; k < n; ++k) {
        const std::size_t bit = std::size_t{1} << k;
        for (std::size_t s = 0; s < len; ++s) {
            if (!(s & bit)) f[s] -= f[s | bit];
        }
    }
}

void complement_from_scalar(double* out, const double* in, int n, double one) {
    const std::size_t len = std::size_t{1} << n;
    for (std::size_t s = 0; s < len; ++s) {
        out[s] = one - in[(len - 1) ^ s];
    }
}

void div_scalar_scalar(double* x, std::size_t len, double divisor) {
    for (std::size_t s = 0; s < len; ++s) x[s] /= divisor;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{
        "scalar",
        zeta_subset_scalar,
        mobius_subset_scalar,
        zeta_superset_scalar,
        mobius_superset_scalar,
        complement_from_scalar,
        div_scalar_scalar,
    };
    return ops;
}

}  // namespace evcalc::kernels

#pragma once

#include <cstddef>
#include <string>

namespace evcalc::kernels {

// Dense lattice passes over arrays of length 2^n (subset-bitmask indexed).
//
// Every variant of an op must be bit-exact against the scalar reference: the
// vector paths perform the same IEEE additions/subtractions per element, in an
// order that cannot change any individual result, so equivalence tests compare
// with == rather than a tolerance, and results never depend on the host CPU.
//
//   zeta_subset      f'(A) = sum over B subset of A of f(B)      (m -> Bel)
//   mobius_subset    inverse of zeta_subset                      (Bel -> m)
//   zeta_superset    f'(A) = sum over B superset of A of f(B)    (m -> Q)
//   mobius_superset  inverse of zeta_superset                    (Q -> m)
//   complement_from  out[A] = one - in[full \ A]                 (Bel <-> Pl)
//   div_scalar       x[A] /= divisor                             (normalization)
struct Ops {
    const char* name;
    void (*zeta_subset)(double* f, int n);
    void (*mobius_subset)(double* f, int n);
    void (*zeta_superset)(double* f, int n);
    void (*mobius_superset)(double* f, int n);
    void (*complement_from)(double* out, const double* in, int n, double one);
    void (*div_scalar)(double* x, std::size_t len, double divisor);
};

const Ops& scalar_ops();

#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
bool avx2_supported();
#endif

// Runtime-selected variant: honors EVCALC_SIMD=scalar|avx2|auto (default auto,
// which picks the widest variant the CPU supports).  Read once per process.
const Ops& active_ops();

}  // namespace evcalc::kernels

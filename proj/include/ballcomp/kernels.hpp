#pragma once

#include <cstddef>

// Batch kernels on split-complex arrays (separate re/im planes).
// Every kernel has a scalar reference implementation and may have a SIMD
// variant; both perform the same IEEE operations in the same order, so
// results are bit-identical across backends (kernel TUs are built with
// fp-contract disabled).

namespace ballcomp::kernels {

enum class Backend { Auto, Scalar, Avx2 };

// Selects the active backend. Auto picks the widest one the CPU supports.
// Returns the backend actually selected; requesting an unsupported backend
// falls back to Scalar.
Backend select(Backend b);
Backend active();

// r = a * b, complex pointwise. r may alias a or b.
void vc_mul(std::size_t n, const double* are, const double* aim,
            const double* bre, const double* bim, double* rre, double* rim);

// r -= a * b, complex pointwise. r must not alias a or b.
void vc_mul_sub(std::size_t n, const double* are, const double* aim,
                const double* bre, const double* bim, double* rre, double* rim);

// y += (cre + i*cim) * x, scalar complex coefficient. y must not alias x.
void vc_axpy(std::size_t n, double cre, double cim,
             const double* xre, const double* xim, double* yre, double* yim);

// out = re^2 + im^2.
void vc_abs2(std::size_t n, const double* re, const double* im, double* out);

// Max of v with first-occurrence argmax; ties resolve to the lowest index
// on every backend. n must be >= 1.
double vr_max(std::size_t n, const double* v, std::size_t* argmax);

}

#pragma once

#include <cstdint>

#include "ballcomp/batch.hpp"

namespace ballcomp {

// Deterministic unit directions on the sphere of C^n, returned as a batch of
// unit points. For n = 1 these are uniform angles 2*pi*k/count (seed and
// stream do not matter). For n >= 2 they come from a seeded Halton sequence
// pushed through the inverse normal CDF and normalized. For a fixed
// (dim, seed, stream) the set is a prefix of one infinite sequence, so a
// larger count always contains the smaller one.
PointBatch unit_directions(int dim, std::size_t count, std::uint64_t seed,
                           std::uint64_t stream = 0);

namespace detail {
double inverse_normal_cdf(double p);
double halton(std::uint64_t index, int base);
std::uint64_t splitmix64(std::uint64_t x);
}

}

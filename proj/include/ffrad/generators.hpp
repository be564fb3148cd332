#pragma once

#include "ffrad/ambient.hpp"
#include "ffrad/grassmann.hpp"

namespace ffrad {

/// Uniform m-subset of the affine plane translate + gamma. Throws SizeTooLarge when m > q^dim(gamma).
PointSet plane_subset(const AmbientSpace& space, const Subspace& gamma, const Point& translate, std::uint64_t m,
                      SeededRng& rng);

/// The point translate + sum_i coeff_i * row_i, with coeff given by the
/// mixed-radix digits of coeff_index.
Point affine_point(const Subspace& gamma, const Point& translate, std::uint64_t coeff_index);

/// Every point of translate + gamma.
PointSet full_plane(const Subspace& gamma, const Point& translate);

/// Union of distinct random cosets of gamma, each taken whole, with the last
/// coset truncated so that the result has exactly m points.
PointSet plane_union(const AmbientSpace& space, const Subspace& gamma, std::uint64_t m, SeededRng& rng);

}  // namespace ffrad

#pragma once

#include "ffrad/ambient.hpp"
#include "ffrad/grassmann.hpp"
#include "ffrad/numeric.hpp"

#include <vector>

namespace ffrad {

/// Scales a nonzero vector so its first nonzero coordinate is 1.
/// Throws InvalidRange for the zero vector.
Point canonical_direction(const Field& field, Point v);

/// Number of lines through a point of F_q^n: (q^n - 1) / (q - 1).
std::uint64_t lines_through_point(std::uint32_t q, int n);

/// The directions of pi^y(E): canonical(x - y) for every x in E other than y.
struct RadialImage {
    Point center;
    std::vector<Point> directions;  // sorted by point index, no duplicates

    std::uint64_t size() const noexcept { return directions.size(); }
};

RadialImage radial_projection(const PointSet& E, const Point& y);

/// Reusable counter for |pi^y(E)| over many centers y. Holds the
/// coordinates of E and a stamp table over projective directions, so one
/// instance must not be shared between threads.
class RadialCounter {
public:
    explicit RadialCounter(const PointSet& E);

    std::uint64_t count(std::uint64_t center_index);
    std::uint64_t count(const Point& y) { return count(space_.index_of(y)); }

private:
    AmbientSpace space_;
    int n_;
    std::uint32_t q_;
    std::vector<Elem> members_;            // |E| x n coordinates
    std::vector<Elem> normalize_;          // [lead * q + b] -> b / lead
    std::vector<std::uint64_t> offset_;    // projective index offset per leading position
    std::vector<std::uint64_t> weight_;    // q^(j - lead - 1) folded per position
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<Elem> center_;
};

/// pi_Gamma: F_q^n -> F_q^(n - dim Gamma), reading coordinates along the
/// completion basis from extend_to_complement.
class QuotientMap {
public:
    explicit QuotientMap(Subspace gamma);

    const Subspace& gamma() const noexcept { return gamma_; }
    const std::vector<Point>& completion() const noexcept { return completion_; }
    const AmbientSpace& source() const noexcept { return gamma_.space(); }
    const AmbientSpace& target() const noexcept { return target_; }

    /// Throws DimensionMismatch.
    Point apply(const Point& x) const;
    std::uint64_t apply_index(std::uint64_t index) const;

    /// The representative sum_j w_j * completion_j of the coset over w.
    Point lift(const Point& w) const;

private:
    void apply_coords(std::span<const Elem> x, std::span<Elem> out) const;

    Subspace gamma_;
    std::vector<Point> completion_;
    AmbientSpace target_;
    std::vector<Elem> image_;          // n x t: row i is the image of e_i
    std::vector<std::uint32_t> table_; // full index lookup for small sources
};

QuotientMap quotient_map_new(const Subspace& gamma);

PointSet project_set(const QuotientMap& qm, const PointSet& S);

/// The coset pi_Gamma^{-1}(w), exactly q^dim(Gamma) points.
PointSet fiber(const QuotientMap& qm, const Point& w);

/// X(w) = |X intersect pi^{-1}(w)|, indexed by target point index.
std::vector<std::uint64_t> fiber_counts(const QuotientMap& qm, const PointSet& X);

/// Unordered pairs of distinct X-points sharing a fiber.
BigInt collision_count(const QuotientMap& qm, const PointSet& X);
std::uint64_t collision_count_u64(const QuotientMap& qm, const PointSet& X);

}  // namespace ffrad

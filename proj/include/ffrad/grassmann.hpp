#pragma once

#include "ffrad/ambient.hpp"
#include "ffrad/numeric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ffrad {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Reduces a rows x cols row-major matrix in place to reduced row echelon
/// form and returns its pivot columns (one per nonzero row, increasing).
std::vector<int> row_reduce(const Field& field, std::vector<Elem>& matrix, int rows, int cols);

/// A linear subspace, held as its unique RREF basis.
class Subspace {
public:
    static Subspace zero(const AmbientSpace& space);
    static Subspace full(const AmbientSpace& space);

    /// The span of arbitrary generators (any rank).
    static Subspace span(const AmbientSpace& space, const std::vector<Point>& generators);

    /// Takes a k x n matrix that must already be in RREF with rank k;
    /// throws InvalidRange otherwise.
    static Subspace from_rref(const AmbientSpace& space, int k, std::vector<Elem> rows);

    const AmbientSpace& space() const noexcept { return space_; }
    int dim() const noexcept { return k_; }
    const std::vector<Elem>& matrix() const noexcept { return rows_; }
    const std::vector<int>& pivots() const noexcept { return pivots_; }
    Elem at(int row, int col) const { return rows_[static_cast<std::size_t>(row * space_.dim() + col)]; }
    Point row(int i) const;
    std::vector<Point> basis() const;

    bool contains(const Point& x) const;

    /// Every member, in the order of coefficient vectors (first basis row least significant).
    std::vector<Point> elements() const;

    /// "G(q,n,k):a,b,c;d,e,f" with row-major base-10 entries.
    std::string serialize() const;
    static Subspace parse(std::string_view text, std::uint32_t max_q = kDefaultMaxFieldOrder);

    bool operator==(const Subspace& o) const noexcept
    {
        return space_ == o.space_ && k_ == o.k_ && rows_ == o.rows_;
    }

private:
    friend class GrassmannianStream;

    Subspace(AmbientSpace space, int k, std::vector<Elem> rows, std::vector<int> pivots)
        : space_(std::move(space)), k_(k), rows_(std::move(rows)), pivots_(std::move(pivots))
    {
    }

    AmbientSpace space_;
    int k_;
    std::vector<Elem> rows_;
    std::vector<int> pivots_;
};

/// Number of k-dimensional subspaces of F_q^n. Throws InvalidRange unless 0 <= k <= n and q >= 2.
BigInt gaussian_binomial(int n, int k, std::uint64_t q);

/// Number of k-subspaces of F_q^n that contain a fixed l-subspace.
BigInt count_containing(int n, int k, int l, std::uint64_t q);

/// Streams every k-subspace once: pivot patterns in lexicographic order,
/// then free entries as a counter whose last entry (row-major) moves fastest.
class GrassmannianStream {
public:
    /// Throws InvalidRange, or BudgetExceeded when the count exceeds budget.
    GrassmannianStream(AmbientSpace space, int k, std::uint64_t budget = kDefaultEnumerationBudget);

    std::optional<Subspace> next();
    const BigInt& total() const noexcept { return total_; }

private:
    bool load_pattern();
    bool advance_pattern();

    AmbientSpace space_;
    int k_;
    BigInt total_;
    std::vector<int> pivots_;
    std::vector<std::pair<int, int>> free_;  // (row, col)
    std::vector<Elem> counter_;
    bool done_ = false;
    bool fresh_ = true;
};

std::vector<Subspace> enumerate_grassmannian(const AmbientSpace& space, int k,
                                             std::uint64_t budget = kDefaultEnumerationBudget);

/// Exactly uniform k-subspace: random k x n matrices rejected until rank k.
Subspace sample_uniform_subspace(const AmbientSpace& space, int k, SeededRng& rng);

/// Standard basis vectors at the non-pivot columns of gamma's RREF.
std::vector<Point> extend_to_complement(const Subspace& gamma);

}  // namespace ffrad

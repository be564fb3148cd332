#pragma once

#include "ffrad/gf.hpp"
#include "ffrad/rng.hpp"

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace ffrad {

inline constexpr std::uint64_t kDefaultMaxSpaceSize = std::uint64_t{1} << 24;

/// A vector of F_q^n.
struct Point {
    std::vector<Elem> coords;

    Point() = default;
    explicit Point(std::vector<Elem> c) : coords(std::move(c)) {}
    Point(std::initializer_list<Elem> c) : coords(c) {}

    std::size_t dim() const noexcept { return coords.size(); }
    Elem operator[](std::size_t i) const { return coords[i]; }
    Elem& operator[](std::size_t i) { return coords[i]; }
    bool is_zero() const noexcept;

    bool operator==(const Point&) const = default;
    auto operator<=>(const Point&) const = default;
};

std::string to_string(const Point& x);

/// F_q^n with the dense index x_0 + x_1 q + ... + x_{n-1} q^{n-1}.
class AmbientSpace {
public:
    /// n may be 0 (the one-point space, used as a quotient target).
    /// Throws SizeTooLarge when q^n > max_size.
    AmbientSpace(FieldPtr field, int n, std::uint64_t max_size = kDefaultMaxSpaceSize);

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    std::uint32_t q() const noexcept { return field_->q(); }
    int dim() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return size_; }
    std::uint64_t max_size() const noexcept { return max_size_; }

    /// Throws DimensionMismatch or IndexOutOfRange on bad coordinates.
    std::uint64_t index_of(const Point& x) const;
    Point point_at(std::uint64_t index) const;

    /// Unchecked variants for inner loops.
    std::uint64_t index_of(std::span<const Elem> coords) const noexcept
    {
        std::uint64_t idx = 0;
        for (std::size_t i = coords.size(); i-- > 0;)
            idx = idx * q() + coords[i];
        return idx;
    }
    void coords_at(std::uint64_t index, std::span<Elem> out) const noexcept
    {
        const std::uint32_t qq = q();
        for (auto& c : out) {
            c = static_cast<Elem>(index % qq);
            index /= qq;
        }
    }

    Point add(const Point& a, const Point& b) const;
    Point sub(const Point& a, const Point& b) const;
    Point scale(Elem s, const Point& a) const;
    Point zero() const { return Point(std::vector<Elem>(static_cast<std::size_t>(n_), 0)); }

    bool operator==(const AmbientSpace& other) const noexcept
    {
        return n_ == other.n_ && q() == other.q();
    }

private:
    FieldPtr field_;
    int n_;
    std::uint64_t size_;
    std::uint64_t max_size_;
};

/// Dense membership set over all q^n points of a space.
class PointSet {
public:
    explicit PointSet(AmbientSpace space);

    static PointSet full(AmbientSpace space);
    static PointSet from_points(AmbientSpace space, const std::vector<Point>& points);

    const AmbientSpace& space() const noexcept { return space_; }
    std::uint64_t size() const noexcept { return cardinality_; }
    bool empty() const noexcept { return cardinality_ == 0; }

    /// Return true if the point was newly added / removed.
    bool insert(std::uint64_t index);
    bool insert(const Point& x) { return insert(space_.index_of(x)); }
    bool erase(std::uint64_t index);

    bool contains(std::uint64_t index) const;
    bool contains(const Point& x) const { return contains(space_.index_of(x)); }

    std::vector<std::uint64_t> indices() const;
    std::vector<Point> points() const;

    bool is_subset_of(const PointSet& other) const;
    bool operator==(const PointSet& other) const;

    class const_iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = std::uint64_t;
        using difference_type = std::ptrdiff_t;
        using pointer = const std::uint64_t*;
        using reference = std::uint64_t;

        const_iterator() = default;
        std::uint64_t operator*() const noexcept { return pos_; }
        const_iterator& operator++() noexcept
        {
            advance(pos_ + 1);
            return *this;
        }
        const_iterator operator++(int) noexcept
        {
            auto tmp = *this;
            ++*this;
            return tmp;
        }
        bool operator==(const const_iterator& o) const noexcept { return pos_ == o.pos_; }

    private:
        friend class PointSet;
        const_iterator(const std::vector<std::uint64_t>* words, std::uint64_t end, std::uint64_t from)
            : words_(words), end_(end)
        {
            advance(from);
        }
        void advance(std::uint64_t from) noexcept
        {
            std::uint64_t w = from >> 6;
            if (from >= end_) {
                pos_ = end_;
                return;
            }
            std::uint64_t bits = (*words_)[w] & (~std::uint64_t{0} << (from & 63));
            while (bits == 0) {
                if (++w >= words_->size()) {
                    pos_ = end_;
                    return;
                }
                bits = (*words_)[w];
            }
            pos_ = (w << 6) + static_cast<std::uint64_t>(std::countr_zero(bits));
        }

        const std::vector<std::uint64_t>* words_ = nullptr;
        std::uint64_t end_ = 0;
        std::uint64_t pos_ = 0;
    };

    /// Iterates member indices in increasing order.
    const_iterator begin() const { return const_iterator(&bits_, space_.size(), 0); }
    const_iterator end() const { return const_iterator(&bits_, space_.size(), space_.size()); }

private:
    AmbientSpace space_;
    std::vector<std::uint64_t> bits_;
    std::uint64_t cardinality_ = 0;
};

/// Uniform m-subset of the space (sparse partial Fisher-Yates).
PointSet random_subset(const AmbientSpace& space, std::uint64_t m, SeededRng& rng);

/// m distinct values drawn uniformly from [0, n), in draw order.
std::vector<std::uint64_t> sample_distinct(std::uint64_t n, std::uint64_t m, SeededRng& rng);

}  // namespace ffrad

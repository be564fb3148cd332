#include "ffrad/ambient.hpp"

#include "ffrad/errors.hpp"

#include <unordered_map>

namespace ffrad {

bool Point::is_zero() const noexcept
{
    for (Elem c : coords)
        if (c != 0)
            return false;
    return true;
}

std::string to_string(const Point& x)
{
    std::string out = "(";
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(x[i]);
    }
    return out + ")";
}

AmbientSpace::AmbientSpace(FieldPtr field, int n, std::uint64_t max_size)
    : field_(std::move(field)), n_(n), size_(1), max_size_(max_size)
{
    if (!field_)
        throw ConfigInvalid("ambient space needs a field");
    if (n < 0)
        throw InvalidRange("negative dimension");
    for (int i = 0; i < n; ++i) {
        if (size_ > max_size / field_->q())
            throw SizeTooLarge("q^n = " + std::to_string(field_->q()) + "^" + std::to_string(n) +
                               " exceeds the memory budget of " + std::to_string(max_size) + " points");
        size_ *= field_->q();
    }
}

std::uint64_t AmbientSpace::index_of(const Point& x) const
{
    if (x.dim() != static_cast<std::size_t>(n_))
        throw DimensionMismatch("point " + to_string(x) + " does not have " + std::to_string(n_) + " coordinates");
    for (Elem c : x.coords)
        if (c >= q())
            throw IndexOutOfRange("coordinate " + std::to_string(c) + " outside GF(" + std::to_string(q()) + ")");
    return index_of(std::span<const Elem>(x.coords));
}

Point AmbientSpace::point_at(std::uint64_t index) const
{
    if (index >= size_)
        throw IndexOutOfRange("point index " + std::to_string(index) + " >= " + std::to_string(size_));
    Point x(std::vector<Elem>(static_cast<std::size_t>(n_)));
    coords_at(index, x.coords);
    return x;
}

Point AmbientSpace::add(const Point& a, const Point& b) const
{
    Point r = a;
    for (std::size_t i = 0; i < r.dim(); ++i)
        r[i] = field_->add(a[i], b[i]);
    return r;
}

Point AmbientSpace::sub(const Point& a, const Point& b) const
{
    Point r = a;
    for (std::size_t i = 0; i < r.dim(); ++i)
        r[i] = field_->sub(a[i], b[i]);
    return r;
}

Point AmbientSpace::scale(Elem s, const Point& a) const
{
    Point r = a;
    for (auto& c : r.coords)
        c = field_->mul(s, c);
    return r;
}

PointSet::PointSet(AmbientSpace space)
    : space_(std::move(space)), bits_((space_.size() + 63) / 64, 0)
{
}

PointSet PointSet::full(AmbientSpace space)
{
    PointSet s(std::move(space));
    const std::uint64_t n = s.space_.size();
    for (std::uint64_t w = 0; w < s.bits_.size(); ++w) {
        const std::uint64_t lo = w * 64;
        const std::uint64_t cnt = std::min<std::uint64_t>(64, n - lo);
        s.bits_[w] = cnt == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << cnt) - 1);
    }
    s.cardinality_ = n;
    return s;
}

PointSet PointSet::from_points(AmbientSpace space, const std::vector<Point>& points)
{
    PointSet s(std::move(space));
    for (const auto& x : points)
        s.insert(x);
    return s;
}

bool PointSet::insert(std::uint64_t index)
{
    if (index >= space_.size())
        throw IndexOutOfRange("point index " + std::to_string(index) + " >= " + std::to_string(space_.size()));
    auto& word = bits_[index >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (index & 63);
    if (word & mask)
        return false;
    word |= mask;
    ++cardinality_;
    return true;
}

bool PointSet::erase(std::uint64_t index)
{
    if (index >= space_.size())
        throw IndexOutOfRange("point index " + std::to_string(index) + " >= " + std::to_string(space_.size()));
    auto& word = bits_[index >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (index & 63);
    if (!(word & mask))
        return false;
    word &= ~mask;
    --cardinality_;
    return true;
}

bool PointSet::contains(std::uint64_t index) const
{
    if (index >= space_.size())
        throw IndexOutOfRange("point index " + std::to_string(index) + " >= " + std::to_string(space_.size()));
    return (bits_[index >> 6] >> (index & 63)) & 1;
}

std::vector<std::uint64_t> PointSet::indices() const
{
    std::vector<std::uint64_t> out;
    out.reserve(cardinality_);
    for (auto idx : *this)
        out.push_back(idx);
    return out;
}

std::vector<Point> PointSet::points() const
{
    std::vector<Point> out;
    out.reserve(cardinality_);
    for (auto idx : *this)
        out.push_back(space_.point_at(idx));
    return out;
}

bool PointSet::is_subset_of(const PointSet& other) const
{
    if (!(space_ == other.space_))
        throw DimensionMismatch("point sets live in different spaces");
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w] & ~other.bits_[w])
            return false;
    return true;
}

bool PointSet::operator==(const PointSet& other) const
{
    return space_ == other.space_ && bits_ == other.bits_;
}

std::vector<std::uint64_t> sample_distinct(std::uint64_t n, std::uint64_t m, SeededRng& rng)
{
    if (m > n)
        throw SizeTooLarge("cannot draw " + std::to_string(m) + " distinct items from " + std::to_string(n));
    std::unordered_map<std::uint64_t, std::uint64_t> moved;
    auto at = [&](std::uint64_t i) {
        auto it = moved.find(i);
        return it == moved.end() ? i : it->second;
    };
    std::vector<std::uint64_t> out;
    out.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::uint64_t j = i + rng.below(n - i);
        const std::uint64_t vi = at(i), vj = at(j);
        moved[j] = vi;
        out.push_back(vj);
    }
    return out;
}

PointSet random_subset(const AmbientSpace& space, std::uint64_t m, SeededRng& rng)
{
    PointSet s(space);
    for (auto idx : sample_distinct(space.size(), m, rng))
        s.insert(idx);
    return s;
}

}  // namespace ffrad

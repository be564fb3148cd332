#include "ffrad/projections.hpp"

#include "ffrad/errors.hpp"

#include <algorithm>

namespace ffrad {

Point canonical_direction(const Field& f, Point v)
{
    auto lead = std::find_if(v.coords.begin(), v.coords.end(), [](Elem c) { return c != 0; });
    if (lead == v.coords.end())
        throw InvalidRange("the zero vector has no direction");
    const Elem s = f.inv(*lead);
    for (auto it = lead; it != v.coords.end(); ++it)
        *it = f.mul(s, *it);
    return v;
}

std::uint64_t lines_through_point(std::uint32_t q, int n)
{
    std::uint64_t total = 0, power = 1;
    for (int i = 0; i < n; ++i) {
        total += power;
        power *= q;
    }
    return total;
}

RadialImage radial_projection(const PointSet& E, const Point& y)
{
    const AmbientSpace& space = E.space();
    space.index_of(y);
    std::vector<std::uint64_t> dirs;
    for (auto idx : E) {
        Point x = space.point_at(idx);
        if (x == y)
            continue;
        dirs.push_back(space.index_of(canonical_direction(space.field(), space.sub(x, y))));
    }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    RadialImage img{y, {}};
    img.directions.reserve(dirs.size());
    for (auto d : dirs)
        img.directions.push_back(space.point_at(d));
    return img;
}

RadialCounter::RadialCounter(const PointSet& E)
    : space_(E.space()), n_(E.space().dim()), q_(E.space().q()), center_(static_cast<std::size_t>(n_))
{
    const Field& f = space_.field();
    members_.reserve(E.size() * static_cast<std::size_t>(n_));
    std::vector<Elem> buf(static_cast<std::size_t>(n_));
    for (auto idx : E) {
        space_.coords_at(idx, buf);
        members_.insert(members_.end(), buf.begin(), buf.end());
    }
    normalize_.assign(static_cast<std::size_t>(q_) * q_, 0);
    for (Elem a = 1; a < q_; ++a)
        for (Elem b = 0; b < q_; ++b)
            normalize_[a * q_ + b] = f.mul(f.inv_unchecked(a), b);
    // Canonical vectors with leading 1 at position j: q^(n-1-j) of them.
    offset_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int j = 0; j < n_; ++j) {
        std::uint64_t block = 1;
        for (int i = j + 1; i < n_; ++i)
            block *= q_;
        offset_[static_cast<std::size_t>(j) + 1] = offset_[static_cast<std::size_t>(j)] + block;
    }
    stamp_.assign(static_cast<std::size_t>(offset_.back()), 0);
}

std::uint64_t RadialCounter::count(std::uint64_t center_index)
{
    if (center_index >= space_.size())
        throw IndexOutOfRange("center index " + std::to_string(center_index) + " >= " + std::to_string(space_.size()));
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    space_.coords_at(center_index, center_);
    const Field& f = space_.field();
    const std::size_t n = static_cast<std::size_t>(n_);
    std::uint64_t distinct = 0;
    for (std::size_t base = 0; base < members_.size(); base += n) {
        std::size_t j = 0;
        Elem lead = 0;
        for (; j < n; ++j) {
            lead = f.sub(members_[base + j], center_[j]);
            if (lead != 0)
                break;
        }
        if (j == n)
            continue;  // x == y
        const Elem* norm = &normalize_[lead * q_];
        std::uint64_t idx = 0;
        for (std::size_t i = n; i-- > j + 1;)
            idx = idx * q_ + norm[f.sub(members_[base + i], center_[i])];
        idx += offset_[j];
        if (stamp_[idx] != epoch_) {
            stamp_[idx] = epoch_;
            ++distinct;
        }
    }
    return distinct;
}

QuotientMap::QuotientMap(Subspace gamma)
    : gamma_(std::move(gamma)),
      completion_(extend_to_complement(gamma_)),
      target_(gamma_.space().field_ptr(), gamma_.space().dim() - gamma_.dim(), gamma_.space().max_size())
{
    const AmbientSpace& src = gamma_.space();
    const Field& f = src.field();
    const int n = src.dim();
    const int t = target_.dim();
    std::vector<int> free_cols;
    for (const auto& e : completion_)
        free_cols.push_back(static_cast<int>(std::find(e.coords.begin(), e.coords.end(), 1) - e.coords.begin()));

    // x = sum_r x_{p_r} g_r + sum_j b_j e_{c_j}, so b_j = x_{c_j} - sum_r x_{p_r} g_r[c_j].
    image_.assign(static_cast<std::size_t>(n * t), 0);
    for (int j = 0; j < t; ++j)
        image_[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(j)] * t + j)] = 1;
    for (int r = 0; r < gamma_.dim(); ++r) {
        const int p = gamma_.pivots()[static_cast<std::size_t>(r)];
        for (int j = 0; j < t; ++j)
            image_[static_cast<std::size_t>(p * t + j)] = f.neg(gamma_.at(r, free_cols[static_cast<std::size_t>(j)]));
    }

    if (src.size() <= (std::uint64_t{1} << 16)) {
        table_.resize(src.size());
        std::vector<Elem> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(t));
        for (std::uint64_t idx = 0; idx < src.size(); ++idx) {
            src.coords_at(idx, x);
            apply_coords(x, w);
            table_[idx] = static_cast<std::uint32_t>(target_.index_of(std::span<const Elem>(w)));
        }
    }
}

void QuotientMap::apply_coords(std::span<const Elem> x, std::span<Elem> out) const
{
    const Field& f = source().field();
    const std::size_t t = out.size();
    std::fill(out.begin(), out.end(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0)
            continue;
        const Elem* row = &image_[i * t];
        for (std::size_t j = 0; j < t; ++j)
            out[j] = f.add(out[j], f.mul(x[i], row[j]));
    }
}

Point QuotientMap::apply(const Point& x) const
{
    source().index_of(x);
    Point w(std::vector<Elem>(static_cast<std::size_t>(target_.dim())));
    apply_coords(x.coords, w.coords);
    return w;
}

std::uint64_t QuotientMap::apply_index(std::uint64_t index) const
{
    if (!table_.empty()) {
        if (index >= table_.size())
            throw IndexOutOfRange("point index " + std::to_string(index) + " >= " + std::to_string(table_.size()));
        return table_[index];
    }
    Point x = source().point_at(index);
    std::vector<Elem> w(static_cast<std::size_t>(target_.dim()));
    apply_coords(x.coords, w);
    return target_.index_of(std::span<const Elem>(w));
}

Point QuotientMap::lift(const Point& w) const
{
    target_.index_of(w);
    Point x = source().zero();
    for (std::size_t j = 0; j < completion_.size(); ++j)
        x = source().add(x, source().scale(w[j], completion_[j]));
    return x;
}

QuotientMap quotient_map_new(const Subspace& gamma)
{
    return QuotientMap(gamma);
}

PointSet project_set(const QuotientMap& qm, const PointSet& S)
{
    if (!(S.space() == qm.source()))
        throw DimensionMismatch("point set does not live in the quotient's source space");
    PointSet out(qm.target());
    for (auto idx : S)
        out.insert(qm.apply_index(idx));
    return out;
}

PointSet fiber(const QuotientMap& qm, const Point& w)
{
    const Point base = qm.lift(w);
    PointSet out(qm.source());
    for (const auto& g : qm.gamma().elements())
        out.insert(qm.source().add(base, g));
    return out;
}

std::vector<std::uint64_t> fiber_counts(const QuotientMap& qm, const PointSet& X)
{
    if (!(X.space() == qm.source()))
        throw DimensionMismatch("point set does not live in the quotient's source space");
    std::vector<std::uint64_t> counts(qm.target().size(), 0);
    for (auto idx : X)
        ++counts[qm.apply_index(idx)];
    return counts;
}

std::uint64_t collision_count_u64(const QuotientMap& qm, const PointSet& X)
{
    if (!(X.space() == qm.source()))
        throw DimensionMismatch("point set does not live in the quotient's source space");
    // Each new point collides with every earlier point in its fiber.
    std::vector<std::uint64_t> counts(qm.target().size(), 0);
    std::uint64_t total = 0;
    for (auto idx : X)
        total += counts[qm.apply_index(idx)]++;
    return total;
}

BigInt collision_count(const QuotientMap& qm, const PointSet& X)
{
    return BigInt(collision_count_u64(qm, X));
}

}  // namespace ffrad

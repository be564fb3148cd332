#include "ffrad/generators.hpp"

#include "ffrad/errors.hpp"
#include "ffrad/projections.hpp"

namespace ffrad {

Point affine_point(const Subspace& gamma, const Point& translate, std::uint64_t coeff_index)
{
    const AmbientSpace& space = gamma.space();
    const Field& f = space.field();
    const int n = space.dim();
    Point x = translate;
    for (int i = 0; i < gamma.dim(); ++i) {
        const Elem a = static_cast<Elem>(coeff_index % space.q());
        coeff_index /= space.q();
        if (a == 0)
            continue;
        for (int j = 0; j < n; ++j)
            x[static_cast<std::size_t>(j)] = f.add(x[static_cast<std::size_t>(j)], f.mul(a, gamma.at(i, j)));
    }
    return x;
}

PointSet plane_subset(const AmbientSpace& space, const Subspace& gamma, const Point& translate, std::uint64_t m,
                      SeededRng& rng)
{
    if (!(gamma.space() == space))
        throw DimensionMismatch("plane direction lives in a different space");
    space.index_of(translate);
    std::uint64_t plane_size = 1;
    for (int i = 0; i < gamma.dim(); ++i)
        plane_size *= space.q();
    if (m > plane_size)
        throw SizeTooLarge("cannot take " + std::to_string(m) + " points from a plane of " + std::to_string(plane_size));
    PointSet out(space);
    for (auto c : sample_distinct(plane_size, m, rng))
        out.insert(affine_point(gamma, translate, c));
    return out;
}

PointSet full_plane(const Subspace& gamma, const Point& translate)
{
    const AmbientSpace& space = gamma.space();
    std::uint64_t plane_size = 1;
    for (int i = 0; i < gamma.dim(); ++i)
        plane_size *= space.q();
    PointSet out(space);
    for (std::uint64_t c = 0; c < plane_size; ++c)
        out.insert(affine_point(gamma, translate, c));
    return out;
}

PointSet plane_union(const AmbientSpace& space, const Subspace& gamma, std::uint64_t m, SeededRng& rng)
{
    if (m > space.size())
        throw SizeTooLarge("cannot take " + std::to_string(m) + " points from a space of " + std::to_string(space.size()));
    QuotientMap qm(gamma);
    PointSet out(space);
    for (auto coset : sample_distinct(qm.target().size(), qm.target().size(), rng)) {
        if (out.size() == m)
            break;
        for (auto idx : fiber(qm, qm.target().point_at(coset))) {
            if (out.size() == m)
                break;
            out.insert(idx);
        }
    }
    return out;
}

}  // namespace ffrad

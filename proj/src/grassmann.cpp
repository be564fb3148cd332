#include "ffrad/grassmann.hpp"

#include "ffrad/errors.hpp"

#include <charconv>

namespace ffrad {

std::vector<int> row_reduce(const Field& f, std::vector<Elem>& m, int rows, int cols)
{
    auto at = [&](int r, int c) -> Elem& { return m[static_cast<std::size_t>(r * cols + c)]; };
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (at(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel < 0)
            continue;
        if (sel != r)
            for (int j = 0; j < cols; ++j)
                std::swap(at(sel, j), at(r, j));
        const Elem s = f.inv_unchecked(at(r, c));
        for (int j = 0; j < cols; ++j)
            at(r, j) = f.mul(s, at(r, j));
        for (int i = 0; i < rows; ++i) {
            if (i == r || at(i, c) == 0)
                continue;
            const Elem factor = at(i, c);
            for (int j = 0; j < cols; ++j)
                at(i, j) = f.sub(at(i, j), f.mul(factor, at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Subspace Subspace::zero(const AmbientSpace& space)
{
    return Subspace(space, 0, {}, {});
}

Subspace Subspace::full(const AmbientSpace& space)
{
    const int n = space.dim();
    std::vector<Elem> rows(static_cast<std::size_t>(n * n), 0);
    std::vector<int> piv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rows[static_cast<std::size_t>(i * n + i)] = 1;
        piv[static_cast<std::size_t>(i)] = i;
    }
    return Subspace(space, n, std::move(rows), std::move(piv));
}

Subspace Subspace::span(const AmbientSpace& space, const std::vector<Point>& generators)
{
    const int n = space.dim();
    const int g = static_cast<int>(generators.size());
    std::vector<Elem> m;
    m.reserve(static_cast<std::size_t>(g * n));
    for (const auto& x : generators) {
        space.index_of(x);  // validates
        m.insert(m.end(), x.coords.begin(), x.coords.end());
    }
    auto piv = row_reduce(space.field(), m, g, n);
    const int k = static_cast<int>(piv.size());
    m.resize(static_cast<std::size_t>(k * n));
    return Subspace(space, k, std::move(m), std::move(piv));
}

Subspace Subspace::from_rref(const AmbientSpace& space, int k, std::vector<Elem> rows)
{
    const int n = space.dim();
    if (k < 0 || k > n || rows.size() != static_cast<std::size_t>(k * n))
        throw InvalidRange("matrix shape does not match a " + std::to_string(k) + "-subspace of F_q^" + std::to_string(n));
    for (Elem c : rows)
        if (c >= space.q())
            throw IndexOutOfRange("matrix entry " + std::to_string(c) + " outside GF(" + std::to_string(space.q()) + ")");
    std::vector<Elem> reduced = rows;
    auto piv = row_reduce(space.field(), reduced, k, n);
    if (static_cast<int>(piv.size()) != k || reduced != rows)
        throw InvalidRange("matrix is not a rank-" + std::to_string(k) + " RREF basis");
    return Subspace(space, k, std::move(rows), std::move(piv));
}

Point Subspace::row(int i) const
{
    const int n = space_.dim();
    auto first = rows_.begin() + static_cast<std::ptrdiff_t>(i * n);
    return Point(std::vector<Elem>(first, first + n));
}

std::vector<Point> Subspace::basis() const
{
    std::vector<Point> out;
    for (int i = 0; i < k_; ++i)
        out.push_back(row(i));
    return out;
}

bool Subspace::contains(const Point& x) const
{
    space_.index_of(x);
    // In RREF the coefficients of x are read off at the pivot columns.
    Point rest = x;
    const Field& f = space_.field();
    const int n = space_.dim();
    for (int i = 0; i < k_; ++i) {
        const Elem a = x[static_cast<std::size_t>(pivots_[static_cast<std::size_t>(i)])];
        if (a == 0)
            continue;
        for (int j = 0; j < n; ++j)
            rest[static_cast<std::size_t>(j)] = f.sub(rest[static_cast<std::size_t>(j)], f.mul(a, at(i, j)));
    }
    return rest.is_zero();
}

std::vector<Point> Subspace::elements() const
{
    const Field& f = space_.field();
    const int n = space_.dim();
    std::uint64_t count = 1;
    for (int i = 0; i < k_; ++i)
        count *= space_.q();
    std::vector<Point> out;
    out.reserve(count);
    std::vector<Elem> coeff(static_cast<std::size_t>(k_), 0);
    for (std::uint64_t c = 0; c < count; ++c) {
        std::uint64_t rest = c;
        for (auto& a : coeff) {
            a = static_cast<Elem>(rest % space_.q());
            rest /= space_.q();
        }
        Point x = space_.zero();
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < n; ++j)
                x[static_cast<std::size_t>(j)] = f.add(x[static_cast<std::size_t>(j)],
                                                      f.mul(coeff[static_cast<std::size_t>(i)], at(i, j)));
        out.push_back(std::move(x));
    }
    return out;
}

std::string Subspace::serialize() const
{
    std::string out = "G(" + std::to_string(space_.q()) + "," + std::to_string(space_.dim()) + "," +
                      std::to_string(k_) + "):";
    const int n = space_.dim();
    for (int i = 0; i < k_; ++i) {
        if (i)
            out += ';';
        for (int j = 0; j < n; ++j) {
            if (j)
                out += ',';
            out += std::to_string(at(i, j));
        }
    }
    return out;
}

namespace {

std::uint64_t parse_uint(std::string_view s, std::string_view whole)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParseError(1, "malformed subspace '" + std::string(whole) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

Subspace Subspace::parse(std::string_view text, std::uint32_t max_q)
{
    if (text.substr(0, 2) != "G(")
        throw ParseError(1, "subspace must start with 'G(': '" + std::string(text) + "'");
    auto close = text.find("):");
    if (close == std::string_view::npos)
        throw ParseError(1, "missing '):' in '" + std::string(text) + "'");
    auto header = split(text.substr(2, close - 2), ',');
    if (header.size() != 3)
        throw ParseError(1, "header needs q,n,k in '" + std::string(text) + "'");
    const auto q = static_cast<std::uint32_t>(parse_uint(header[0], text));
    const auto n = static_cast<int>(parse_uint(header[1], text));
    const auto k = static_cast<int>(parse_uint(header[2], text));
    AmbientSpace space(Field::create(q, max_q), n);
    std::string_view body = text.substr(close + 2);
    std::vector<Elem> rows;
    if (!body.empty())
        for (auto r : split(body, ';')) {
            auto entries = split(r, ',');
            if (entries.size() != static_cast<std::size_t>(n))
                throw ParseError(1, "row '" + std::string(r) + "' does not have " + std::to_string(n) + " entries");
            for (auto e : entries)
                rows.push_back(static_cast<Elem>(parse_uint(e, text)));
        }
    return from_rref(space, k, std::move(rows));
}

BigInt gaussian_binomial(int n, int k, std::uint64_t q)
{
    if (k < 0 || n < 0 || k > n)
        throw InvalidRange("gaussian_binomial needs 0 <= k <= n (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    if (q < 2)
        throw InvalidRange("gaussian_binomial needs q >= 2");
    BigInt num = 1, den = 1;
    const BigInt qn = big_pow(q, static_cast<unsigned>(n));
    const BigInt qk = big_pow(q, static_cast<unsigned>(k));
    BigInt qi = 1;
    for (int i = 0; i < k; ++i) {
        num *= qn - qi;
        den *= qk - qi;
        qi *= q;
    }
    return num / den;
}

BigInt count_containing(int n, int k, int l, std::uint64_t q)
{
    if (l < 0 || l > k || k > n)
        throw InvalidRange("count_containing needs 0 <= l <= k <= n");
    return gaussian_binomial(n - l, k - l, q);
}

GrassmannianStream::GrassmannianStream(AmbientSpace space, int k, std::uint64_t budget)
    : space_(std::move(space)), k_(k)
{
    total_ = gaussian_binomial(space_.dim(), k, space_.q());
    if (total_ > budget)
        throw BudgetExceeded("G(" + std::to_string(space_.dim()) + "," + std::to_string(k) + ") over GF(" +
                             std::to_string(space_.q()) + ") has " + total_.str() + " members, budget " +
                             std::to_string(budget));
    pivots_.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        pivots_[static_cast<std::size_t>(i)] = i;
    load_pattern();
}

bool GrassmannianStream::load_pattern()
{
    free_.clear();
    const int n = space_.dim();
    for (int r = 0; r < k_; ++r) {
        std::size_t next_pivot = static_cast<std::size_t>(r) + 1;
        for (int c = pivots_[static_cast<std::size_t>(r)] + 1; c < n; ++c) {
            if (next_pivot < pivots_.size() && pivots_[next_pivot] == c) {
                ++next_pivot;
                continue;
            }
            free_.emplace_back(r, c);
        }
    }
    counter_.assign(free_.size(), 0);
    return true;
}

bool GrassmannianStream::advance_pattern()
{
    const int n = space_.dim();
    int i = k_ - 1;
    while (i >= 0 && pivots_[static_cast<std::size_t>(i)] == n - k_ + i)
        --i;
    if (i < 0)
        return false;
    ++pivots_[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k_; ++j)
        pivots_[static_cast<std::size_t>(j)] = pivots_[static_cast<std::size_t>(j - 1)] + 1;
    return load_pattern();
}

std::optional<Subspace> GrassmannianStream::next()
{
    if (done_)
        return std::nullopt;
    if (!fresh_) {
        // Increment the free-entry counter, last entry fastest.
        std::size_t i = counter_.size();
        bool carried = true;
        while (i-- > 0) {
            if (++counter_[i] < space_.q()) {
                carried = false;
                break;
            }
            counter_[i] = 0;
        }
        if (carried && !advance_pattern()) {
            done_ = true;
            return std::nullopt;
        }
    }
    fresh_ = false;
    const int n = space_.dim();
    std::vector<Elem> rows(static_cast<std::size_t>(k_ * n), 0);
    for (int r = 0; r < k_; ++r)
        rows[static_cast<std::size_t>(r * n + pivots_[static_cast<std::size_t>(r)])] = 1;
    for (std::size_t i = 0; i < free_.size(); ++i)
        rows[static_cast<std::size_t>(free_[i].first * n + free_[i].second)] = counter_[i];
    return Subspace(space_, k_, std::move(rows), pivots_);
}

std::vector<Subspace> enumerate_grassmannian(const AmbientSpace& space, int k, std::uint64_t budget)
{
    GrassmannianStream stream(space, k, budget);
    std::vector<Subspace> out;
    out.reserve(static_cast<std::size_t>(stream.total()));
    while (auto s = stream.next())
        out.push_back(std::move(*s));
    return out;
}

Subspace sample_uniform_subspace(const AmbientSpace& space, int k, SeededRng& rng)
{
    const int n = space.dim();
    if (k < 0 || k > n)
        throw InvalidRange("subspace dimension " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
    std::vector<Elem> m(static_cast<std::size_t>(k * n));
    while (true) {
        for (auto& c : m)
            c = static_cast<Elem>(rng.below(space.q()));
        std::vector<Elem> reduced = m;
        auto piv = row_reduce(space.field(), reduced, k, n);
        if (static_cast<int>(piv.size()) == k)
            return Subspace::from_rref(space, k, std::move(reduced));
    }
}

std::vector<Point> extend_to_complement(const Subspace& gamma)
{
    const AmbientSpace& space = gamma.space();
    std::vector<bool> is_pivot(static_cast<std::size_t>(space.dim()), false);
    for (int p : gamma.pivots())
        is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Point> out;
    for (int c = 0; c < space.dim(); ++c) {
        if (is_pivot[static_cast<std::size_t>(c)])
            continue;
        Point e = space.zero();
        e[static_cast<std::size_t>(c)] = 1;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace ffrad

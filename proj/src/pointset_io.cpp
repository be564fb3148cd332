#include "ffrad/pointset_io.hpp"

#include "ffrad/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace ffrad {

void write_pointset(std::ostream& out, const PointSet& E)
{
    const AmbientSpace& space = E.space();
    out << "# q=" << space.q() << " n=" << space.dim() << '\n';
    std::vector<Elem> buf(static_cast<std::size_t>(space.dim()));
    for (auto idx : E) {
        space.coords_at(idx, buf);
        for (std::size_t i = 0; i < buf.size(); ++i) {
            if (i)
                out << ',';
            out << buf[i];
        }
        out << '\n';
    }
}

void write_pointset(const std::filesystem::path& path, const PointSet& E)
{
    std::ofstream out(path);
    if (!out)
        throw ConfigInvalid("cannot open '" + path.string() + "' for writing");
    write_pointset(out, E);
}

namespace {

std::string_view strip(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::uint64_t parse_field_value(std::string_view s, std::size_t line, const char* what)
{
    s = strip(s);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(line, std::string("malformed ") + what + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

PointSet parse_pointset(std::istream& in, std::optional<ExpectedShape> expected, std::uint32_t max_q,
                        std::uint64_t max_size)
{
    std::string raw;
    std::size_t line = 0;
    std::optional<AmbientSpace> space;
    std::optional<PointSet> result;
    std::vector<Elem> coords;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = strip(raw);
        if (!space) {
            if (text.empty())
                continue;
            if (text.substr(0, 1) != "#")
                throw ParseError(line, "expected header '# q=<q> n=<n>'");
            text = strip(text.substr(1));
            if (text.substr(0, 2) != "q=")
                throw ParseError(line, "header must start with 'q='");
            auto gap = text.find(' ');
            if (gap == std::string_view::npos)
                throw ParseError(line, "header is missing 'n='");
            const auto q = parse_field_value(text.substr(2, gap - 2), line, "q");
            std::string_view rest = strip(text.substr(gap));
            if (rest.substr(0, 2) != "n=")
                throw ParseError(line, "header is missing 'n='");
            const auto n = parse_field_value(rest.substr(2), line, "n");
            if (expected && (expected->q != q || expected->n != static_cast<int>(n)))
                throw HeaderMismatch("file declares q=" + std::to_string(q) + " n=" + std::to_string(n) +
                                     ", expected q=" + std::to_string(expected->q) +
                                     " n=" + std::to_string(expected->n));
            try {
                space.emplace(Field::create(static_cast<std::uint32_t>(q), max_q), static_cast<int>(n), max_size);
            } catch (const Error& e) {
                throw ParseError(line, e.what());
            }
            result.emplace(*space);
            coords.resize(n);
            continue;
        }
        if (text.empty())
            continue;
        std::size_t start = 0, i = 0;
        while (true) {
            auto comma = text.find(',', start);
            auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            if (i >= coords.size())
                throw ParseError(line, "too many coordinates (expected " + std::to_string(coords.size()) + ")");
            const auto v = parse_field_value(piece, line, "coordinate");
            if (v >= space->q())
                throw ParseError(line, "coordinate " + std::to_string(v) + " is not below q=" + std::to_string(space->q()));
            coords[i++] = static_cast<Elem>(v);
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        if (i != coords.size())
            throw ParseError(line, "expected " + std::to_string(coords.size()) + " coordinates, got " + std::to_string(i));
        result->insert(space->index_of(std::span<const Elem>(coords)));
    }
    if (!space)
        throw ParseError(line + 1, "missing header '# q=<q> n=<n>'");
    return std::move(*result);
}

PointSet parse_pointset(const std::filesystem::path& path, std::optional<ExpectedShape> expected,
                        std::uint32_t max_q, std::uint64_t max_size)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigInvalid("cannot open '" + path.string() + "'");
    return parse_pointset(in, expected, max_q, max_size);
}

}  // namespace ffrad

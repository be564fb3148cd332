#pragma once

#include "ffrad/ambient.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace ffrad {

/// Text format: a header line "# q=<q> n=<n>", then one point per line with
/// coordinates in [0, q) as base-10 integers separated by commas.
void write_pointset(std::ostream& out, const PointSet& E);
void write_pointset(const std::filesystem::path& path, const PointSet& E);

struct ExpectedShape {
    std::uint32_t q;
    int n;
};

/// Throws ParseError (with line number), or HeaderMismatch when expected is
/// given and the header disagrees.
PointSet parse_pointset(std::istream& in, std::optional<ExpectedShape> expected = std::nullopt,
                        std::uint32_t max_q = kDefaultMaxFieldOrder,
                        std::uint64_t max_size = kDefaultMaxSpaceSize);
PointSet parse_pointset(const std::filesystem::path& path, std::optional<ExpectedShape> expected = std::nullopt,
                        std::uint32_t max_q = kDefaultMaxFieldOrder,
                        std::uint64_t max_size = kDefaultMaxSpaceSize);

}  // namespace ffrad

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace asvlim {

/// Column-ordered result table; the one shape every CLI command emits.
struct Table {
    using Cell = std::variant<double, std::int64_t, std::string>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Doubles rendered with 17 significant digits (binary round-trip through
/// text), '.' decimal separator, no locale dependence.
std::string format_double(double v);

/// CSV with a header row and Unix line endings.
std::string to_csv(const Table& t);

/// The same values as an array of objects.
std::string to_json(const Table& t);

}  // namespace asvlim

#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace cvq::cli {

using Cell = std::variant<double, std::string>;
using Row = std::vector<Cell>;

struct Table {
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

/// Shortest round-trip text for a double: 17 significant digits, "nan"/"inf" spelled out.
std::string format_number(double x);

/// RFC 4180: comma separated, CRLF line ends, fields with comma, quote or line break are quoted.
void write_csv(std::ostream& out, const Table& t);
Table parse_csv(const std::string& text);

nlohmann::json to_json(const Table& t);

}  // namespace cvq::cli

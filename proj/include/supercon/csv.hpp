#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace supercon {

// Small CSV layer shared by every loader/writer in the project. Reading is
// RFC 4180-ish: quoted fields with embedded commas/quotes/newlines, CRLF
// tolerated. Lines starting with '#' ahead of the header are collected as
// comments (the element table stores version/provenance that way).
struct CsvTable {
    std::vector<std::string> comments;  // leading '#' lines, marker stripped
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::optional<std::size_t> column(std::string_view name) const;
    // Same, but raises BadSchema naming the column and origin when absent.
    std::size_t require_column(std::string_view name, std::string_view origin) const;
};

CsvTable read_csv(std::istream& in, std::string_view origin);
CsvTable read_csv_file(const std::string& path);

// Quotes only when a field needs it; terminates with '\n'.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest decimal string that round-trips the exact double. Used anywhere
// a value is persisted, so files are byte-identical across platforms.
std::string format_double(double v);
// Same, but never scientific notation (formula coefficients must re-parse).
std::string format_double_fixed(double v);

// Full-string parse; rejects trailing junk, accepts inf/nan spellings only
// when allow_nonfinite is set.
std::optional<double> parse_double(std::string_view s, bool allow_nonfinite = false);

}  // namespace supercon

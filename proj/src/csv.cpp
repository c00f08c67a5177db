#include "supercon/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "supercon/error.hpp"

namespace supercon {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UnknownElement: return "unknown element";
        case ErrorKind::OutOfRangeElement: return "element out of table range";
        case ErrorKind::NonPositiveProperty: return "non-positive property value";
        case ErrorKind::BadSchema: return "bad schema";
        case ErrorKind::MissingValue: return "missing value";
        case ErrorKind::FileFormat: return "file format error";
        case ErrorKind::Io: return "io error";
        case ErrorKind::InvalidParams: return "invalid parameters";
        case ErrorKind::NonFiniteInput: return "non-finite input";
        case ErrorKind::DimensionMismatch: return "dimension mismatch";
        case ErrorKind::DegenerateLeaf: return "degenerate leaf";
        case ErrorKind::NoSplits: return "no splits";
        case ErrorKind::InsufficientRows: return "insufficient rows";
        case ErrorKind::TooFewRows: return "too few rows";
        case ErrorKind::InvalidGrid: return "invalid grid";
    }
    return "error";
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t CsvTable::require_column(std::string_view name, std::string_view origin) const {
    if (auto idx = column(name)) return *idx;
    raise(ErrorKind::BadSchema,
          std::string(origin) + ": required column '" + std::string(name) + "' not found");
}

namespace {

// Splits one logical CSV record starting at *pos; advances *pos past the
// record's terminating newline. Quoted fields may span physical lines.
std::vector<std::string> split_record(const std::string& text, std::size_t& pos,
                                      std::string_view origin, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool saw_any = false;
    while (pos < text.size()) {
        char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field.push_back('"');
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            ++pos;
            continue;
        }
        if (c == '"' && field.empty() && !saw_any) {
            in_quotes = true;
            saw_any = true;
            ++pos;
            continue;
        }
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            saw_any = false;
            ++pos;
            continue;
        }
        if (c == '\n' || c == '\r') {
            if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
            ++pos;
            fields.push_back(std::move(field));
            return fields;
        }
        field.push_back(c);
        saw_any = true;
        ++pos;
    }
    if (in_quotes) {
        raise(ErrorKind::FileFormat, std::string(origin) + ": unterminated quote in record starting at line " +
                                         std::to_string(line_no));
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

CsvTable read_csv(std::istream& in, std::string_view origin) {
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    CsvTable table;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool have_header = false;
    while (pos < text.size()) {
        ++line_no;
        if (!have_header && text[pos] == '#') {
            std::size_t end = text.find('\n', pos);
            if (end == std::string::npos) end = text.size();
            std::size_t start = pos + 1;
            if (start < end && text[start] == ' ') ++start;
            std::size_t stop = end;
            if (stop > start && text[stop - 1] == '\r') --stop;
            table.comments.emplace_back(text.substr(start, stop - start));
            pos = (end == text.size()) ? end : end + 1;
            continue;
        }
        auto fields = split_record(text, pos, origin, line_no);
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            raise(ErrorKind::FileFormat,
                  std::string(origin) + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    if (!have_header) {
        raise(ErrorKind::FileFormat, std::string(origin) + ": empty file, no header record");
    }
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::Io, "cannot open '" + path + "' for reading");
    return read_csv(in, path);
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        const std::string& f = fields[i];
        bool quote = f.find_first_of(",\"\n\r") != std::string::npos;
        if (!quote) {
            out << f;
            continue;
        }
        out << '"';
        for (char c : f) {
            if (c == '"') out << '"';
            out << c;
        }
        out << '"';
    }
    out << '\n';
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0.0 so serialized output is stable
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_double_fixed(double v) {
    if (v == 0.0) v = 0.0;
    char buf[640];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    (void)ec;
    return std::string(buf, ptr);
}

std::optional<double> parse_double(std::string_view s, bool allow_nonfinite) {
    if (s.empty()) return std::nullopt;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    if (!allow_nonfinite && !std::isfinite(value)) return std::nullopt;
    return value;
}

}  // namespace supercon

#include "supercon/dataprep.hpp"

#include <cmath>
#include <fstream>
#include <unordered_map>

#include "supercon/csv.hpp"
#include "supercon/error.hpp"

namespace supercon {

std::string_view to_string(AuditAction a) {
    switch (a) {
        case AuditAction::Kept: return "kept";
        case AuditAction::Dropped: return "dropped";
        case AuditAction::Modified: return "modified";
    }
    return "?";
}

namespace {

constexpr bool is_digit(char c) { return c >= '0' && c <= '9'; }
constexpr bool is_number_char(char c) { return is_digit(c) || c == '.'; }

}  // namespace

std::string normalize_oxygen_suffix(const std::string& material, std::string* warning) {
    // Match ...O<number>(+|-)(X|Z) at the very end of the string; the number
    // may be absent ("O-X" -> "O").
    if (material.size() >= 3) {
        char last = material.back();
        char sign = material[material.size() - 2];
        if ((last == 'X' || last == 'Z') && (sign == '+' || sign == '-')) {
            std::size_t i = material.size() - 2;  // one past the number
            while (i > 0 && is_number_char(material[i - 1])) --i;
            if (i > 0 && material[i - 1] == 'O') {
                return material.substr(0, material.size() - 2);
            }
        }
    }
    if (warning && material.find_first_of("+-") != std::string::npos) {
        *warning = "unrecognized +/- tail left in place";
    }
    return material;
}

CleanDataset clean(const std::vector<RawRecord>& records, const CleanOptions& opts) {
    CleanDataset out;
    // canonical composition + exact Tc -> source_row of the first occurrence
    std::unordered_map<std::string, std::size_t> seen;

    for (const auto& rec : records) {
        auto drop = [&](const std::string& rule, const std::string& note) {
            out.audit.push_back({rec.source_row, AuditAction::Dropped, rule, note});
        };

        if (!rec.critical_temp) {
            drop("drop_missing_tc", "critical_temp missing or unreadable");
            continue;
        }
        double tc = *rec.critical_temp;
        if (!(tc > 0.0)) {
            drop("drop_zero_tc", "critical_temp " + format_double(tc) + " is not positive");
            continue;
        }
        if (tc > opts.tc_ceiling) {
            drop("tc_ceiling", "critical_temp " + format_double(tc) + " exceeds ceiling " +
                                   format_double(opts.tc_ceiling));
            continue;
        }

        std::string warning;
        std::string material = normalize_oxygen_suffix(rec.material, &warning);
        if (material != rec.material) {
            out.audit.push_back({rec.source_row, AuditAction::Modified, "oxygen_suffix",
                                 "'" + rec.material + "' -> '" + material + "'"});
        }

        ParseResult parsed = parse_formula(material);
        if (const auto* issue = std::get_if<ParseIssue>(&parsed)) {
            std::string note = std::string(to_string(issue->kind)) + " at [" +
                               std::to_string(issue->begin) + "," + std::to_string(issue->end) +
                               "): " + issue->message;
            if (!warning.empty()) note += "; " + warning;
            drop("parse_issue", note);
            continue;
        }
        const Composition& comp = std::get<Composition>(parsed);

        const CompositionEntry* heavy = nullptr;
        for (const auto& e : comp.entries) {
            if (atomic_number(e.symbol).value() > kMaxTableZ) {
                heavy = &e;
                break;
            }
        }
        if (heavy) {
            drop("z_gt_86", heavy->symbol + " has atomic number > 86");
            continue;
        }

        std::string canonical = render_formula(comp);
        std::string key = canonical + "|" + format_double(tc);
        auto [it, inserted] = seen.emplace(key, rec.source_row);
        if (!inserted) {
            drop("dedup", "duplicate of row " + std::to_string(it->second));
            continue;
        }

        std::string note = canonical;
        if (!warning.empty()) note += "; " + warning;
        out.audit.push_back({rec.source_row, AuditAction::Kept, "kept", note});
        out.rows.push_back({comp, tc, rec.source_row});
    }
    return out;
}

RawFile read_raw_csv(const std::string& path) {
    CsvTable csv = read_csv_file(path);
    std::size_t mat_col = csv.require_column("material", path);
    std::size_t tc_col = csv.require_column("critical_temp", path);

    RawFile file;
    for (const auto& name : csv.header) {
        if (name != "material" && name != "critical_temp") file.ignored_columns.push_back(name);
    }
    file.records.reserve(csv.rows.size());
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        RawRecord rec;
        rec.material = csv.rows[r][mat_col];
        rec.critical_temp = parse_double(csv.rows[r][tc_col]);
        rec.source_row = r + 1;
        file.records.push_back(std::move(rec));
    }
    return file;
}

std::vector<CleanRow> read_clean_csv(const std::string& path) {
    CsvTable csv = read_csv_file(path);
    std::size_t mat_col = csv.require_column("material", path);
    std::size_t tc_col = csv.require_column("critical_temp", path);

    std::vector<CleanRow> rows;
    rows.reserve(csv.rows.size());
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        std::size_t line = r + 2;  // header is line 1
        const std::string& material = csv.rows[r][mat_col];
        ParseResult parsed = parse_formula(material);
        if (const auto* issue = std::get_if<ParseIssue>(&parsed)) {
            raise(ErrorKind::FileFormat, path + ": line " + std::to_string(line) + ": '" +
                                             material + "': " + issue->message);
        }
        CleanRow row;
        row.composition = std::get<Composition>(std::move(parsed));
        for (const auto& e : row.composition.entries) {
            if (atomic_number(e.symbol).value() > kMaxTableZ) {
                raise(ErrorKind::FileFormat, path + ": line " + std::to_string(line) + ": " +
                                                 e.symbol + " has atomic number > 86");
            }
        }
        auto tc = parse_double(csv.rows[r][tc_col]);
        if (!tc || !(*tc > 0.0)) {
            raise(ErrorKind::FileFormat, path + ": line " + std::to_string(line) +
                                             ": critical_temp must be a positive number, got '" +
                                             csv.rows[r][tc_col] + "'");
        }
        row.critical_temp = *tc;
        row.source_row = r + 1;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_clean_csv(const CleanDataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::Io, "cannot open '" + path + "' for writing");
    write_csv_row(out, {"material", "critical_temp"});
    for (const auto& row : ds.rows) {
        write_csv_row(out, {render_formula(row.composition), format_double(row.critical_temp)});
    }
    if (!out) raise(ErrorKind::Io, "write to '" + path + "' failed");
}

void write_audit_csv(const CleanDataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::Io, "cannot open '" + path + "' for writing");
    write_csv_row(out, {"source_row", "action", "rule", "note"});
    for (const auto& e : ds.audit) {
        write_csv_row(out, {std::to_string(e.source_row), std::string(to_string(e.action)),
                            e.rule, e.note});
    }
    if (!out) raise(ErrorKind::Io, "write to '" + path + "' failed");
}

}  // namespace supercon

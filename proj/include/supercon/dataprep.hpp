#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "supercon/formula.hpp"

namespace supercon {

// One row of a raw (material, critical_temp) CSV before cleaning.
struct RawRecord {
    std::string material;
    std::optional<double> critical_temp;  // nullopt: cell empty or unreadable
    std::size_t source_row = 0;           // 1-based data row in the file
};

struct RawFile {
    std::vector<RawRecord> records;
    std::vector<std::string> ignored_columns;
};

enum class AuditAction { Kept, Dropped, Modified };
std::string_view to_string(AuditAction a);

// Rule ids used in audit entries: drop_missing_tc, drop_zero_tc,
// tc_ceiling, oxygen_suffix, parse_issue, z_gt_86, dedup, kept.
struct AuditEntry {
    std::size_t source_row = 0;
    AuditAction action = AuditAction::Kept;
    std::string rule;
    std::string note;
};

struct CleanRow {
    Composition composition;
    double critical_temp = 0;
    std::size_t source_row = 0;
};

struct CleanDataset {
    std::vector<CleanRow> rows;
    std::vector<AuditEntry> audit;  // one Kept/Dropped entry per input row,
                                    // plus a Modified entry per rewrite
};

struct CleanOptions {
    double tc_ceiling = 203.0;  // Kelvin
};

// Truncates a trailing variable-oxygen suffix `<number>(+|-)(X|Z)` on an O
// token to the literal number. `warning` (when non-null) receives a note if
// a trailing +/- tail was present but did not match the known family.
std::string normalize_oxygen_suffix(const std::string& material, std::string* warning = nullptr);

// Applies the cleaning pipeline in order: drop missing/zero Tc, drop
// Tc > ceiling, normalize oxygen suffix, parse (drop on issue), drop Z > 86,
// drop exact duplicates of (canonical composition, Tc) keeping the first.
// Row-level problems never throw; every input row lands in the audit.
CleanDataset clean(const std::vector<RawRecord>& records, const CleanOptions& opts = {});

// Reads columns material + critical_temp; extra columns are ignored and
// reported. Raises FileFormat/BadSchema for structural problems only.
RawFile read_raw_csv(const std::string& path);

// Strict reader for already-clean data: every material must parse and every
// Tc must be a positive real (FileFormat otherwise). Used by summaries,
// training references, and evaluation.
std::vector<CleanRow> read_clean_csv(const std::string& path);

void write_clean_csv(const CleanDataset& ds, const std::string& path);
void write_audit_csv(const CleanDataset& ds, const std::string& path);

}  // namespace supercon

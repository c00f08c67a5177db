#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "supercon/dataprep.hpp"
#include "supercon/error.hpp"
#include "supercon/formula.hpp"

using namespace supercon;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    return path;
}

RawRecord raw(std::string material, std::optional<double> tc, std::size_t row) {
    return RawRecord{std::move(material), tc, row};
}

std::size_t count_rule(const CleanDataset& ds, std::string_view rule) {
    return static_cast<std::size_t>(std::count_if(
        ds.audit.begin(), ds.audit.end(), [&](const AuditEntry& e) { return e.rule == rule; }));
}

const AuditEntry* find_entry(const CleanDataset& ds, std::size_t row, std::string_view rule) {
    for (const auto& e : ds.audit) {
        if (e.source_row == row && e.rule == rule) return &e;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("oxygen suffix normalization") {
    std::string warning;
    CHECK(normalize_oxygen_suffix("Y1Ba2Cu3O7-X") == "Y1Ba2Cu3O7");
    CHECK(normalize_oxygen_suffix("La2Cu1O5+X") == "La2Cu1O5");
    CHECK(normalize_oxygen_suffix("Nd1.85Ce0.15Cu1O4-Z") == "Nd1.85Ce0.15Cu1O4");
    CHECK(normalize_oxygen_suffix("Hg1Ba2Ca2Cu3O8+Z") == "Hg1Ba2Ca2Cu3O8");
    // the suffix only applies to a trailing oxygen token
    CHECK(normalize_oxygen_suffix("Y1Ba2Cu3O7") == "Y1Ba2Cu3O7");
    CHECK(normalize_oxygen_suffix("MgB2") == "MgB2");
    CHECK(normalize_oxygen_suffix("") == "");
    CHECK(normalize_oxygen_suffix("O2-X") == "O2");
    // a bare O before the sign has no number to keep; leave it alone
    warning.clear();
    CHECK(normalize_oxygen_suffix("Y1Ba2Cu3O7-Q", &warning) == "Y1Ba2Cu3O7-Q");
    CHECK(!warning.empty());
    warning.clear();
    CHECK(normalize_oxygen_suffix("Y1Ba2Cu3N7-X", &warning) == "Y1Ba2Cu3N7-X");
    CHECK(!warning.empty());
    warning.clear();
    CHECK(normalize_oxygen_suffix("Y1Ba2Cu3O7-X", &warning) == "Y1Ba2Cu3O7");
    CHECK(warning.empty());
    warning.clear();
    CHECK(normalize_oxygen_suffix("Pb-2O", &warning) == "Pb-2O");
    CHECK(!warning.empty());
}

TEST_CASE("cleaning pipeline handles every rule") {
    std::vector<RawRecord> records = {
        raw("Nb1", 9.2, 1),            // kept
        raw("MgB2", std::nullopt, 2),  // missing Tc
        raw("Pb1", 0.0, 3),            // zero Tc
        raw("Sn1", -4.0, 4),           // negative Tc
        raw("H3S1", 250.0, 5),         // above ceiling
        raw("Y1Ba2Cu3O7-X", 92.0, 6),  // suffix normalized, kept
        raw("mgB2", 39.0, 7),          // parse issue
        raw("U1O2", 1.3, 8),           // element beyond Z=86
        raw("Nb1.0", 9.2, 9),          // duplicate of row 1 after canonicalization
        raw("Nb1", 9.3, 10),           // same composition, different Tc: kept
    };
    CleanDataset ds = clean(records);

    REQUIRE(ds.rows.size() == 3);
    CHECK(render_formula(ds.rows[0].composition) == "Nb1");
    CHECK(ds.rows[0].critical_temp == 9.2);
    CHECK(ds.rows[0].source_row == 1);
    CHECK(render_formula(ds.rows[1].composition) == "Y1Ba2Cu3O7");
    CHECK(ds.rows[1].critical_temp == 92.0);
    CHECK(render_formula(ds.rows[2].composition) == "Nb1");
    CHECK(ds.rows[2].critical_temp == 9.3);
    CHECK(ds.rows[2].source_row == 10);

    // conservation: every input row gets exactly one Kept-or-Dropped entry
    std::size_t terminal = 0;
    for (const auto& e : ds.audit) terminal += e.action != AuditAction::Modified;
    CHECK(terminal == records.size());
    CHECK(count_rule(ds, "kept") == 3);
    CHECK(count_rule(ds, "drop_missing_tc") == 1);
    CHECK(count_rule(ds, "drop_zero_tc") == 2);
    CHECK(count_rule(ds, "tc_ceiling") == 1);
    CHECK(count_rule(ds, "parse_issue") == 1);
    CHECK(count_rule(ds, "z_gt_86") == 1);
    CHECK(count_rule(ds, "dedup") == 1);
    CHECK(count_rule(ds, "oxygen_suffix") == 1);

    const AuditEntry* suffix = find_entry(ds, 6, "oxygen_suffix");
    REQUIRE(suffix != nullptr);
    CHECK(suffix->action == AuditAction::Modified);
    CHECK(suffix->note == "'Y1Ba2Cu3O7-X' -> 'Y1Ba2Cu3O7'");

    const AuditEntry* dup = find_entry(ds, 9, "dedup");
    REQUIRE(dup != nullptr);
    CHECK(dup->action == AuditAction::Dropped);
    CHECK(dup->note.find("row 1") != std::string::npos);

    const AuditEntry* bad = find_entry(ds, 7, "parse_issue");
    REQUIRE(bad != nullptr);
    CHECK(bad->note.find("MalformedToken") != std::string::npos);
}

TEST_CASE("rule order: ceiling applies before parsing") {
    // an unparsable material with an out-of-range Tc drops on the Tc rule,
    // so the audit names the earlier rule
    std::vector<RawRecord> records = {raw("not a formula", 500.0, 1)};
    CleanDataset ds = clean(records);
    CHECK(ds.rows.empty());
    CHECK(count_rule(ds, "tc_ceiling") == 1);
    CHECK(count_rule(ds, "parse_issue") == 0);
}

TEST_CASE("duplicate detection uses canonical composition and exact Tc") {
    SUBCASE("textual variants of one composition collapse") {
        std::vector<RawRecord> records = {
            raw("OO3", 7.0, 1),
            raw("O4", 7.0, 2),
            raw("O2O2", 7.0, 3),
        };
        CleanDataset ds = clean(records);
        CHECK(ds.rows.size() == 1);
        CHECK(ds.rows[0].source_row == 1);
        CHECK(count_rule(ds, "dedup") == 2);
    }
    SUBCASE("same composition with different Tc stays") {
        std::vector<RawRecord> records = {
            raw("O4", 7.0, 1),
            raw("O4", 7.0000001, 2),
        };
        CleanDataset ds = clean(records);
        CHECK(ds.rows.size() == 2);
    }
    SUBCASE("scaled compositions are distinct materials") {
        std::vector<RawRecord> records = {
            raw("Mg1B2", 39.0, 1),
            raw("Mg2B4", 39.0, 2),
        };
        CleanDataset ds = clean(records);
        CHECK(ds.rows.size() == 2);
    }
}

TEST_CASE("ceiling boundary and configurability") {
    std::vector<RawRecord> records = {
        raw("Nb1", 203.0, 1),
        raw("Pb1", 203.0000001, 2),
    };
    CleanDataset ds = clean(records);
    CHECK(ds.rows.size() == 1);  // exactly-at-ceiling survives
    CHECK(ds.rows[0].source_row == 1);

    CleanOptions opts;
    opts.tc_ceiling = 10.0;
    std::vector<RawRecord> records2 = {raw("Nb1", 9.2, 1), raw("Y1Ba2Cu3O7", 92.0, 2)};
    CleanDataset ds2 = clean(records2, opts);
    CHECK(ds2.rows.size() == 1);
    CHECK(count_rule(ds2, "tc_ceiling") == 1);
}

TEST_CASE("cleaning is idempotent") {
    std::vector<RawRecord> records = {
        raw("Nb1", 9.2, 1),      raw("Y1Ba2Cu3O7-X", 92.0, 2), raw("OO3", 7.0, 3),
        raw("O4", 7.0, 4),       raw("Pb1", 0.0, 5),           raw("Ba0.2La1.8Cu1O4", 35.0, 6),
    };
    CleanDataset once = clean(records);
    std::vector<RawRecord> again;
    for (std::size_t i = 0; i < once.rows.size(); ++i) {
        again.push_back(raw(render_formula(once.rows[i].composition),
                            once.rows[i].critical_temp, i + 1));
    }
    CleanDataset twice = clean(again);
    REQUIRE(twice.rows.size() == once.rows.size());
    for (std::size_t i = 0; i < once.rows.size(); ++i) {
        CHECK(twice.rows[i].composition == once.rows[i].composition);
        CHECK(twice.rows[i].critical_temp == once.rows[i].critical_temp);
    }
    CHECK(count_rule(twice, "kept") == twice.rows.size());
    CHECK(count_rule(twice, "dedup") == 0);
}

TEST_CASE("raw CSV reading") {
    SUBCASE("extra columns are ignored but reported") {
        auto path = write_temp("supercon_raw_extra.csv",
                               "material,num_elements,critical_temp\n"
                               "Nb1,1,9.2\n"
                               "MgB2,2,39\n");
        RawFile f = read_raw_csv(path.string());
        REQUIRE(f.records.size() == 2);
        CHECK(f.records[0].material == "Nb1");
        CHECK(f.records[0].critical_temp == 9.2);
        CHECK(f.records[0].source_row == 1);
        CHECK(f.records[1].material == "MgB2");
        REQUIRE(f.ignored_columns.size() == 1);
        CHECK(f.ignored_columns[0] == "num_elements");
        std::filesystem::remove(path);
    }
    SUBCASE("unreadable and empty Tc cells become nullopt") {
        auto path = write_temp("supercon_raw_blank.csv",
                               "material,critical_temp\n"
                               "Nb1,\n"
                               "Pb1,n/a\n"
                               "Sn1,3.7\n");
        RawFile f = read_raw_csv(path.string());
        REQUIRE(f.records.size() == 3);
        CHECK(!f.records[0].critical_temp.has_value());
        CHECK(!f.records[1].critical_temp.has_value());
        CHECK(f.records[2].critical_temp == 3.7);
        std::filesystem::remove(path);
    }
    SUBCASE("missing required column") {
        auto path = write_temp("supercon_raw_nocol.csv", "formula,tc\nNb1,9.2\n");
        try {
            (void)read_raw_csv(path.string());
            FAIL_CHECK("schema error expected");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::BadSchema);
        }
        std::filesystem::remove(path);
    }
    SUBCASE("missing file") {
        try {
            (void)read_raw_csv("/nonexistent/raw.csv");
            FAIL_CHECK("Io error expected");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Io);
        }
    }
}

TEST_CASE("clean CSV writing and strict re-reading") {
    std::vector<RawRecord> records = {
        raw("Y1Ba2Cu3O7-X", 92.0, 1),
        raw("OO3", 7.0, 2),
        raw("Nb1", 9.2, 3),
    };
    CleanDataset ds = clean(records);
    auto path = write_temp("supercon_clean_roundtrip.csv", "");
    write_clean_csv(ds, path.string());

    std::vector<CleanRow> rows = read_clean_csv(path.string());
    REQUIRE(rows.size() == ds.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].composition == ds.rows[i].composition);
        CHECK(rows[i].critical_temp == ds.rows[i].critical_temp);
    }
    // materials are stored canonically, so O4 not OO3
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("O4,") != std::string::npos);
    CHECK(text.find("OO3") == std::string::npos);
    std::filesystem::remove(path);

    SUBCASE("strict reader rejects unparsable materials") {
        auto bad = write_temp("supercon_clean_badmat.csv",
                              "material,critical_temp\nmgB2,39\n");
        try {
            (void)read_clean_csv(bad.string());
            FAIL_CHECK("FileFormat error expected");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::FileFormat);
        }
        std::filesystem::remove(bad);
    }
    SUBCASE("strict reader rejects non-positive Tc") {
        auto bad = write_temp("supercon_clean_badtc.csv",
                              "material,critical_temp\nNb1,0\n");
        CHECK_THROWS_AS((void)read_clean_csv(bad.string()), Error);
        std::filesystem::remove(bad);
    }
    SUBCASE("strict reader rejects unreadable Tc") {
        auto bad = write_temp("supercon_clean_nan.csv",
                              "material,critical_temp\nNb1,hot\n");
        CHECK_THROWS_AS((void)read_clean_csv(bad.string()), Error);
        std::filesystem::remove(bad);
    }
}

TEST_CASE("audit CSV lists every input row") {
    std::vector<RawRecord> records = {
        raw("Nb1", 9.2, 1),
        raw("mgB2", 39.0, 2),
        raw("Y1Ba2Cu3O7-X", 92.0, 3),
    };
    CleanDataset ds = clean(records);
    auto path = write_temp("supercon_audit.csv", "");
    write_audit_csv(ds, path.string());
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "source_row,action,rule,note");
    std::size_t data_lines = 0;
    while (std::getline(in, line)) data_lines += !line.empty();
    CHECK(data_lines == ds.audit.size());
    std::filesystem::remove(path);
}

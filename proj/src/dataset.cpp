#include "supercon/dataset.hpp"

#include <cmath>
#include <fstream>

#include "supercon/csv.hpp"
#include "supercon/error.hpp"
#include "supercon/features.hpp"

namespace supercon {

Dataset load_feature_csv(const std::string& path) {
    CsvTable csv = read_csv_file(path);

    const auto& names = feature_names();
    std::vector<std::size_t> col(names.size());
    for (std::size_t f = 0; f < names.size(); ++f) {
        col[f] = csv.require_column(names[f], path);
    }
    auto target_col = csv.column("critical_temp");

    Dataset ds;
    ds.feature_names = names;
    ds.X = Matrix(csv.rows.size(), names.size());
    if (target_col) ds.y.reserve(csv.rows.size());

    auto cell_value = [&](std::size_t r, std::size_t c) {
        const std::string& cell = csv.rows[r][c];
        auto value = parse_double(cell, /*allow_nonfinite=*/true);
        if (!value) {
            raise(ErrorKind::MissingValue, path + ": row " + std::to_string(r + 2) + ", column '" +
                                               csv.header[c] + "' is not a number: '" + cell +
                                               "'");
        }
        if (!std::isfinite(*value)) {
            raise(ErrorKind::NonFiniteInput, path + ": row " + std::to_string(r + 2) +
                                                 ", column '" + csv.header[c] +
                                                 "' is not finite");
        }
        return *value;
    };

    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        for (std::size_t f = 0; f < names.size(); ++f) {
            ds.X.at(r, f) = cell_value(r, col[f]);
        }
        if (target_col) ds.y.push_back(cell_value(r, *target_col));
    }
    return ds;
}

void write_feature_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::Io, "cannot open '" + path + "' for writing");

    std::vector<std::string> header = ds.feature_names;
    if (ds.has_target()) header.emplace_back("critical_temp");
    write_csv_row(out, header);

    std::vector<std::string> fields;
    for (std::size_t r = 0; r < ds.X.rows; ++r) {
        fields.clear();
        for (std::size_t c = 0; c < ds.X.cols; ++c) fields.push_back(format_double(ds.X.at(r, c)));
        if (ds.has_target()) fields.push_back(format_double(ds.y[r]));
        write_csv_row(out, fields);
    }
    if (!out) raise(ErrorKind::Io, "write to '" + path + "' failed");
}

}  // namespace supercon

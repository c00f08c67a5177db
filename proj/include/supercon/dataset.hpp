#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace supercon {

// Dense row-major matrix; the one shape every model consumes.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols, row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(data.data() + r * cols, cols);
    }
};

// Feature table with optional target column.
struct Dataset {
    std::vector<std::string> feature_names;
    Matrix X;
    std::vector<double> y;  // empty when the source had no critical_temp

    bool has_target() const { return !y.empty(); }
};

// Reads a CSV containing the 81 canonical feature columns (any order,
// extras ignored) and optionally critical_temp. Raises BadSchema when a
// canonical column is missing, MissingValue on an unparsable cell,
// NonFiniteInput on inf/nan values.
Dataset load_feature_csv(const std::string& path);

// Writes features in canonical order, then critical_temp when present.
void write_feature_csv(const Dataset& ds, const std::string& path);

}  // namespace supercon

#pragma once

#include <span>
#include <string>
#include <vector>

#include "supercon/dataset.hpp"

namespace supercon {

struct LinearModel {
    double intercept = 0.0;
    std::vector<double> coefficients;  // aligned with feature_names
    std::vector<std::string> feature_names;
    std::vector<std::string> dropped;  // rank-deficient columns, coefficient 0

    double predict_row(std::span<const double> x) const;  // DimensionMismatch
    std::vector<double> predict(const Matrix& X) const;

    bool operator==(const LinearModel&) const = default;
};

// Ordinary least squares with intercept via orthogonal factorization.
// Columns that are (numerically) linear combinations of earlier columns or
// the intercept are dropped deterministically — first occurrence wins —
// and reported in `dropped`. Requires rows > cols + 1 (InsufficientRows).
LinearModel fit_ols(const Matrix& X, const std::vector<double>& y,
                    std::vector<std::string> feature_names = {});

std::string serialize_linear(const LinearModel& m);
LinearModel parse_linear_model(const std::string& text, const std::string& origin);
void save_model(const LinearModel& m, const std::string& path);
LinearModel load_linear_model(const std::string& path);

}  // namespace supercon

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "supercon/dataprep.hpp"
#include "supercon/dataset.hpp"
#include "supercon/gbt.hpp"

namespace supercon {

// Repeated 2/3 train / 1/3 test holdout; the train fraction is fixed by the
// evaluation procedure, only the repeat count and seed vary.
struct HoldoutPlan {
    int repeats = 25;
    std::uint64_t seed = 0;
};

struct ModelSpec {
    enum class Kind { Gbt, Ols };
    Kind kind = Kind::Gbt;
    GbtParams gbt;  // ignored for Ols

    std::string id() const;
};

struct EvalReport {
    std::string model_id;
    std::vector<double> mse;  // one per repeat
    std::vector<double> r2;   // one per repeat
    double rmse = 0;          // sqrt(mean(mse)) — the headline aggregation
    double mean_rmse = 0;     // mean(sqrt(mse)); stored for comparison only
    double r2_mean = 0;
};

using RepeatProgress = std::function<void(int repeat, double mse, double r2)>;

// Each repeat r shuffles with an independent stream derived from
// (plan.seed, r), trains on the first floor(2n/3) rows, and scores the
// rest: mse plus R^2 = 1 - SSE/SST. Adding repeats never changes earlier
// splits. TooFewRows when n < 3.
EvalReport repeated_holdout(const Matrix& X, const std::vector<double>& y, const ModelSpec& spec,
                            const HoldoutPlan& plan, const RepeatProgress& progress = nullptr);

// Hyperparameter grid. Parsed from an INI-like text config: one `key =
// values` line per axis, values comma-separated, integer axes accept a:b
// ranges, '#' comments. Unset axes default to the singleton default.
struct GridSpec {
    std::vector<double> eta{0.3};
    std::vector<double> colsample{1.0};
    std::vector<double> subsample{1.0};
    std::vector<double> min_child_weight{1.0};
    std::vector<int> max_depth{6};
    std::vector<double> lambda{1.0};
    std::vector<double> gamma{0.0};
    int n_trees = 100;
    std::uint64_t seed = 0;

    static GridSpec parse(std::istream& in, const std::string& origin);  // InvalidGrid
    static GridSpec parse_file(const std::string& path);

    // Cartesian product in nested-axis order (eta, colsample, subsample,
    // min_child_weight, max_depth, lambda, gamma), each with n_trees.
    std::vector<GbtParams> combinations() const;
};

struct GridCell {
    GbtParams params;
    int best_trees = 0;
    double best_rmse = 0;
    std::vector<double> rmse_curve;  // test rmse after trees 1..n_trees
};

using GridProgress = std::function<void(std::size_t done, std::size_t total, const GridCell&)>;

// One 2/3-1/3 split fixed for the whole grid; every combination is fitted
// once and its additive-prefix test rmse evaluated at every tree count.
// Result sorted by best_rmse ascending; ties prefer fewer trees, then the
// lexicographically smaller parameter tuple.
std::vector<GridCell> grid_search(const Matrix& X, const std::vector<double>& y,
                                  const GridSpec& spec, const GridProgress& progress = nullptr);

struct SummaryRow {
    std::string group;
    std::size_t size = 0;
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0, sd = 0;
    bool sd_defined = false;  // false when size < 2 (sd printed as 0)
};

enum class Grouping {
    Overall,
    PerElement,  // one row per element occurring in the data, by Z
    Contains,    // contains_<E> and not_contains_<E> rows
    Cuprate,     // composition with both Cu and O, plus the complement
};

// Critical-temperature summaries: size, min, Q1, median, Q3, max, mean, SD
// (n-1 divisor); quartiles use linear interpolation between order
// statistics. Empty groups come back as size-0 rows.
std::vector<SummaryRow> summarize(const std::vector<CleanRow>& rows, Grouping grouping,
                                  const std::string& element = "");

// Linear-interpolation quantile ("type 7") over ascending-sorted values.
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace supercon

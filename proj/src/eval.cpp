#include "supercon/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "supercon/csv.hpp"
#include "supercon/error.hpp"
#include "supercon/linreg.hpp"
#include "supercon/rng.hpp"

namespace supercon {

std::string ModelSpec::id() const {
    if (kind == Kind::Ols) return "ols";
    std::ostringstream out;
    out << "gbt(eta=" << format_double(gbt.eta) << ",max_depth=" << gbt.max_depth
        << ",min_child_weight=" << format_double(gbt.min_child_weight)
        << ",subsample=" << format_double(gbt.subsample)
        << ",colsample=" << format_double(gbt.colsample)
        << ",lambda=" << format_double(gbt.lambda) << ",gamma=" << format_double(gbt.gamma)
        << ",trees=" << gbt.n_trees << ")";
    return out.str();
}

namespace {

struct Split {
    Matrix x_train, x_test;
    std::vector<double> y_train, y_test;
};

Split make_split(const Matrix& X, const std::vector<double>& y, std::uint64_t stream_seed) {
    std::mt19937_64 rng(stream_seed);
    std::vector<std::uint32_t> idx(X.rows);
    std::iota(idx.begin(), idx.end(), 0U);
    shuffle_values(idx, rng);

    const std::size_t n_train = 2 * X.rows / 3;
    Split s;
    s.x_train = Matrix(n_train, X.cols);
    s.x_test = Matrix(X.rows - n_train, X.cols);
    s.y_train.reserve(n_train);
    s.y_test.reserve(X.rows - n_train);
    for (std::size_t i = 0; i < X.rows; ++i) {
        const std::uint32_t r = idx[i];
        if (i < n_train) {
            std::copy_n(X.data.begin() + r * X.cols, X.cols,
                        s.x_train.data.begin() + (i * X.cols));
            s.y_train.push_back(y[r]);
        } else {
            std::copy_n(X.data.begin() + r * X.cols, X.cols,
                        s.x_test.data.begin() + ((i - n_train) * X.cols));
            s.y_test.push_back(y[r]);
        }
    }
    return s;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// R^2 = 1 - SSE/SST on the test block. A constant test target (SST == 0)
// has no variance to explain; scored 1 on exact predictions, 0 otherwise.
double r_squared(const std::vector<double>& truth, const std::vector<double>& pred) {
    const double mean = mean_of(truth);
    double sse = 0.0, sst = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        sse += (truth[i] - pred[i]) * (truth[i] - pred[i]);
        sst += (truth[i] - mean) * (truth[i] - mean);
    }
    if (!(sst > 0.0)) return sse == 0.0 ? 1.0 : 0.0;
    return 1.0 - sse / sst;
}

double mse_of(const std::vector<double>& truth, const std::vector<double>& pred) {
    double sse = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        sse += (truth[i] - pred[i]) * (truth[i] - pred[i]);
    }
    return sse / static_cast<double>(truth.size());
}

}  // namespace

EvalReport repeated_holdout(const Matrix& X, const std::vector<double>& y, const ModelSpec& spec,
                            const HoldoutPlan& plan, const RepeatProgress& progress) {
    if (X.rows < 3) {
        raise(ErrorKind::TooFewRows,
              "holdout needs at least 3 rows, got " + std::to_string(X.rows));
    }
    if (y.size() != X.rows) {
        raise(ErrorKind::DimensionMismatch, "target length must equal row count");
    }
    if (plan.repeats < 1) raise(ErrorKind::InvalidParams, "repeats must be >= 1");
    if (spec.kind == ModelSpec::Kind::Gbt) spec.gbt.validate();

    EvalReport report;
    report.model_id = spec.id();
    report.mse.reserve(static_cast<std::size_t>(plan.repeats));
    report.r2.reserve(static_cast<std::size_t>(plan.repeats));

    for (int r = 0; r < plan.repeats; ++r) {
        const std::uint64_t stream = derive_seed(plan.seed, static_cast<std::uint64_t>(r));
        const Split split = make_split(X, y, stream);

        std::vector<double> pred;
        if (spec.kind == ModelSpec::Kind::Gbt) {
            const BoostedModel model =
                fit_gbt(split.x_train, split.y_train, spec.gbt, derive_seed(stream, 1));
            pred = model.predict(split.x_test);
        } else {
            const LinearModel model = fit_ols(split.x_train, split.y_train);
            pred = model.predict(split.x_test);
        }
        const double mse = mse_of(split.y_test, pred);
        const double r2 = r_squared(split.y_test, pred);
        report.mse.push_back(mse);
        report.r2.push_back(r2);
        if (progress) progress(r + 1, mse, r2);
    }

    report.rmse = std::sqrt(mean_of(report.mse));
    double rmse_sum = 0.0;
    for (double m : report.mse) rmse_sum += std::sqrt(m);
    report.mean_rmse = rmse_sum / static_cast<double>(report.mse.size());
    report.r2_mean = mean_of(report.r2);
    return report;
}

GridSpec GridSpec::parse(std::istream& in, const std::string& origin) {
    GridSpec spec;
    std::string line;
    std::size_t line_no = 0;

    auto fail = [&](const std::string& what) {
        raise(ErrorKind::InvalidGrid,
              origin + ": line " + std::to_string(line_no) + ": " + what);
    };
    auto split_values = [&](const std::string& text) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : text) {
            if (c == ',') {
                parts.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur += c;
            }
        }
        parts.push_back(cur);
        for (const auto& p : parts) {
            if (p.empty()) fail("empty value in list");
        }
        return parts;
    };
    auto real_axis = [&](const std::string& text) {
        std::vector<double> values;
        for (const auto& p : split_values(text)) {
            auto v = parse_double(p);
            if (!v) fail("'" + p + "' is not a number");
            values.push_back(*v);
        }
        return values;
    };
    auto int_axis = [&](const std::string& text) {
        std::vector<int> values;
        for (const auto& p : split_values(text)) {
            auto colon = p.find(':');
            if (colon != std::string::npos) {  // inclusive range a:b
                auto lo = parse_double(p.substr(0, colon));
                auto hi = parse_double(p.substr(colon + 1));
                if (!lo || !hi || *lo != std::floor(*lo) || *hi != std::floor(*hi) || *lo > *hi) {
                    fail("'" + p + "' is not an integer range a:b");
                }
                for (int v = static_cast<int>(*lo); v <= static_cast<int>(*hi); ++v) {
                    values.push_back(v);
                }
            } else {
                auto v = parse_double(p);
                if (!v || *v != std::floor(*v)) fail("'" + p + "' is not an integer");
                values.push_back(static_cast<int>(*v));
            }
        }
        return values;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = values'");
        std::string key = line.substr(start, eq - start);
        key.erase(key.find_last_not_of(" \t") + 1);
        std::string value = line.substr(eq + 1);

        if (key == "eta") {
            spec.eta = real_axis(value);
        } else if (key == "colsample") {
            spec.colsample = real_axis(value);
        } else if (key == "subsample") {
            spec.subsample = real_axis(value);
        } else if (key == "min_child_weight") {
            spec.min_child_weight = real_axis(value);
        } else if (key == "max_depth") {
            spec.max_depth = int_axis(value);
        } else if (key == "lambda") {
            spec.lambda = real_axis(value);
        } else if (key == "gamma") {
            spec.gamma = real_axis(value);
        } else if (key == "trees") {
            auto v = int_axis(value);
            if (v.size() != 1) fail("trees must be a single integer");
            spec.n_trees = v[0];
        } else if (key == "seed") {
            auto v = parse_double(value.substr(value.find_first_not_of(" \t")));
            if (!v || *v != std::floor(*v) || *v < 0) fail("seed must be a non-negative integer");
            spec.seed = static_cast<std::uint64_t>(*v);
        } else {
            fail("unknown key '" + key + "'");
        }
    }

    // Validate every combination eagerly so a bad axis fails at parse time.
    try {
        for (const GbtParams& p : spec.combinations()) p.validate();
    } catch (const Error& e) {
        raise(ErrorKind::InvalidGrid, origin + ": " + e.what());
    }
    return spec;
}

GridSpec GridSpec::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::Io, "cannot open '" + path + "' for reading");
    return parse(in, path);
}

std::vector<GbtParams> GridSpec::combinations() const {
    if (eta.empty() || colsample.empty() || subsample.empty() || min_child_weight.empty() ||
        max_depth.empty() || lambda.empty() || gamma.empty()) {
        raise(ErrorKind::InvalidGrid, "every grid axis needs at least one value");
    }
    std::vector<GbtParams> out;
    for (double e : eta) {
        for (double cs : colsample) {
            for (double ss : subsample) {
                for (double mcw : min_child_weight) {
                    for (int d : max_depth) {
                        for (double l : lambda) {
                            for (double gm : gamma) {
                                GbtParams p;
                                p.eta = e;
                                p.colsample = cs;
                                p.subsample = ss;
                                p.min_child_weight = mcw;
                                p.max_depth = d;
                                p.lambda = l;
                                p.gamma = gm;
                                p.n_trees = n_trees;
                                out.push_back(p);
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

namespace {

// Tuple order used for deterministic tie-breaking in grid results.
auto params_tuple(const GbtParams& p) {
    return std::make_tuple(p.eta, p.colsample, p.subsample, p.min_child_weight, p.max_depth,
                           p.lambda, p.gamma);
}

}  // namespace

std::vector<GridCell> grid_search(const Matrix& X, const std::vector<double>& y,
                                  const GridSpec& spec, const GridProgress& progress) {
    const std::vector<GbtParams> combos = spec.combinations();
    if (X.rows < 3) {
        raise(ErrorKind::TooFewRows,
              "grid search needs at least 3 rows, got " + std::to_string(X.rows));
    }
    const Split split = make_split(X, y, derive_seed(spec.seed, 0));
    const std::size_t n_test = split.y_test.size();

    std::vector<GridCell> cells;
    cells.reserve(combos.size());
    for (std::size_t c = 0; c < combos.size(); ++c) {
        const BoostedModel model = fit_gbt(split.x_train, split.y_train, combos[c],
                                           derive_seed(spec.seed, c + 1));

        GridCell cell;
        cell.params = combos[c];
        cell.rmse_curve.reserve(static_cast<std::size_t>(combos[c].n_trees));
        std::vector<double> pred(n_test, model.base_score);
        cell.best_rmse = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < model.trees.size(); ++t) {
            double sse = 0.0;
            for (std::size_t i = 0; i < n_test; ++i) {
                pred[i] += model.params.eta * model.trees[t].value(split.x_test.row(i));
                sse += (pred[i] - split.y_test[i]) * (pred[i] - split.y_test[i]);
            }
            const double rmse = std::sqrt(sse / static_cast<double>(n_test));
            cell.rmse_curve.push_back(rmse);
            if (rmse < cell.best_rmse) {  // strict <: ties keep fewer trees
                cell.best_rmse = rmse;
                cell.best_trees = static_cast<int>(t + 1);
            }
        }
        cells.push_back(std::move(cell));
        if (progress) progress(c + 1, combos.size(), cells.back());
    }

    std::sort(cells.begin(), cells.end(), [](const GridCell& a, const GridCell& b) {
        if (a.best_rmse != b.best_rmse) return a.best_rmse < b.best_rmse;
        if (a.best_trees != b.best_trees) return a.best_trees < b.best_trees;
        return params_tuple(a.params) < params_tuple(b.params);
    });
    return cells;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) raise(ErrorKind::InvalidParams, "quantile of an empty sample");
    if (sorted.size() == 1) return sorted[0];
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

namespace {

SummaryRow make_summary(std::string label, std::vector<double> values) {
    SummaryRow row;
    row.group = std::move(label);
    row.size = values.size();
    if (values.empty()) return row;
    std::sort(values.begin(), values.end());
    row.min = values.front();
    row.max = values.back();
    row.q1 = quantile_sorted(values, 0.25);
    row.median = quantile_sorted(values, 0.5);
    row.q3 = quantile_sorted(values, 0.75);
    row.mean = mean_of(values);
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - row.mean) * (v - row.mean);
        row.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        row.sd_defined = true;
    }
    return row;
}

bool contains_element(const CleanRow& row, std::string_view symbol) {
    return row.composition.find(symbol) != nullptr;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<CleanRow>& rows, Grouping grouping,
                                  const std::string& element) {
    if (rows.empty()) raise(ErrorKind::InvalidParams, "summarize needs a non-empty dataset");

    std::vector<SummaryRow> out;
    switch (grouping) {
        case Grouping::Overall: {
            std::vector<double> tc;
            tc.reserve(rows.size());
            for (const auto& r : rows) tc.push_back(r.critical_temp);
            out.push_back(make_summary("overall", std::move(tc)));
            break;
        }
        case Grouping::PerElement: {
            for (int z = 1; z <= kMaxTableZ; ++z) {
                const std::string_view sym = element_symbol(z);
                std::vector<double> tc;
                for (const auto& r : rows) {
                    if (contains_element(r, sym)) tc.push_back(r.critical_temp);
                }
                if (!tc.empty()) out.push_back(make_summary(std::string(sym), std::move(tc)));
            }
            break;
        }
        case Grouping::Contains: {
            if (!atomic_number(element)) {
                raise(ErrorKind::InvalidParams,
                      "'" + element + "' is not an element symbol");
            }
            std::vector<double> with, without;
            for (const auto& r : rows) {
                (contains_element(r, element) ? with : without).push_back(r.critical_temp);
            }
            out.push_back(make_summary("contains_" + element, std::move(with)));
            out.push_back(make_summary("not_contains_" + element, std::move(without)));
            break;
        }
        case Grouping::Cuprate: {
            std::vector<double> cup, non;
            for (const auto& r : rows) {
                const bool is_cuprate = contains_element(r, "Cu") && contains_element(r, "O");
                (is_cuprate ? cup : non).push_back(r.critical_temp);
            }
            out.push_back(make_summary("cuprate", std::move(cup)));
            out.push_back(make_summary("non_cuprate", std::move(non)));
            break;
        }
    }
    return out;
}

}  // namespace supercon

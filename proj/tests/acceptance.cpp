// Acceptance harness: prints one line per criterion and exits nonzero when
// any criterion fails. Criteria that need the published dataset (set
// SUPERCON_DATA to a material,critical_temp CSV) or a long run (set
// SUPERCON_FULL=1) or the CLI binary (SUPERCON_CLI, set by ctest) report
// SKIP rather than silently passing.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <sys/wait.h>

#include "supercon/dataprep.hpp"
#include "supercon/dataset.hpp"
#include "supercon/elements.hpp"
#include "supercon/error.hpp"
#include "supercon/eval.hpp"
#include "supercon/features.hpp"
#include "supercon/formula.hpp"
#include "supercon/gbt.hpp"
#include "supercon/predictor.hpp"
#include "supercon/rng.hpp"

using namespace supercon;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status = Status::Pass;
    std::string detail;
};

Outcome pass(std::string detail) { return {Status::Pass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Status::Fail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Status::Skip, std::move(detail)}; }

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

// ------------------------------------------------------------------------
// criterion 1: the ten statistics reproduce the published worked example
// to its printed (2-decimal) precision.

Outcome criterion1() {
    const TenStatistics s = ten_statistics({48.0, 23.0}, {6.0 / 7.0, 1.0 / 7.0});
    const std::array<double, 10> printed = {35.5, 44.43, 33.23, 43.21, 0.63,
                                            0.26, 25.0,  37.86, 12.5,  8.75};
    const std::array<double, 10> actual = s.as_array();
    for (std::size_t i = 0; i < printed.size(); ++i) {
        if (std::abs(actual[i] - printed[i]) > 0.005 + 1e-12) {
            return fail("statistic " + std::string(statistic_prefix(static_cast<int>(i))) +
                        " = " + fmt(actual[i]) + ", published " + fmt(printed[i]));
        }
    }
    return pass("all ten worked-example statistics match to 2 decimals");
}

// ------------------------------------------------------------------------
// criterion 2: mean thermal conductivity of Nb0.8Pd0.2 is exactly 62.5.

Outcome criterion2() {
    const Composition comp = std::get<Composition>(parse_formula("Nb0.8Pd0.2"));
    const FeatureVector fv = featurize(comp, PropertyTable::builtin());
    const double v = fv.named("mean_ThermalConductivity");
    if (v != 62.5) return fail("mean_ThermalConductivity = " + fmt(v) + ", want exactly 62.5");
    return pass("mean_ThermalConductivity(Nb0.8Pd0.2) == 62.5 exactly");
}

// ------------------------------------------------------------------------
// criterion 3: the documented rejection corpus is rejected with the right
// issue kinds and the plain formula parses.

Outcome criterion3() {
    const struct {
        const char* input;
        ParseIssueKind kind;
    } rejected[] = {
        {"Yo975Yb0.025Ba2Cu3O", ParseIssueKind::UnknownSymbol},
        {"Y2C2Br0.5!1.5", ParseIssueKind::MalformedToken},
        {"Sr0", ParseIssueKind::NonPositiveCoefficient},
        {"Ba2Sr0.0Cu1", ParseIssueKind::NonPositiveCoefficient},
        {"Pb-2O", ParseIssueKind::NonPositiveCoefficient},
        {"mgB2", ParseIssueKind::MalformedToken},
    };
    for (const auto& c : rejected) {
        const ParseResult r = parse_formula(c.input);
        const auto* issue = std::get_if<ParseIssue>(&r);
        if (!issue) return fail(std::string("'") + c.input + "' parsed; expected rejection");
        if (issue->kind != c.kind) {
            return fail(std::string("'") + c.input + "' rejected as " +
                        std::string(to_string(issue->kind)) + ", expected " +
                        std::string(to_string(c.kind)));
        }
    }
    const ParseResult ok = parse_formula("SiV3");
    if (!std::holds_alternative<Composition>(ok)) return fail("'SiV3' failed to parse");
    return pass("rejection corpus and SiV3 behave as documented");
}

// ------------------------------------------------------------------------
// dataset plumbing for criteria 4-7.

struct DataBundle {
    std::vector<CleanRow> rows;
    Matrix X;
    std::vector<double> y;
    std::string summary;
};

const DataBundle* dataset(std::string* why) {
    static std::optional<DataBundle> bundle;
    static std::string reason;
    static bool tried = false;
    if (!tried) {
        tried = true;
        const char* path = std::getenv("SUPERCON_DATA");
        if (!path || !*path) {
            reason = "SUPERCON_DATA not set; needs the published material,critical_temp CSV";
        } else {
            try {
                const RawFile raw = read_raw_csv(path);
                CleanDataset cleaned = clean(raw.records);
                DataBundle b;
                b.rows = std::move(cleaned.rows);
                const std::size_t n = b.rows.size();
                b.X = Matrix(n, kFeatureCount);
                b.y.resize(n);
                const PropertyTable& table = PropertyTable::builtin();
#pragma omp parallel for schedule(dynamic, 256)
                for (std::size_t r = 0; r < n; ++r) {
                    const FeatureVector fv = featurize(b.rows[r].composition, table);
                    for (std::size_t c = 0; c < kFeatureCount; ++c) b.X.at(r, c) = fv.values[c];
                    b.y[r] = b.rows[r].critical_temp;
                }
                b.summary = std::to_string(n) + " rows from " + path;
                bundle = std::move(b);
            } catch (const Error& e) {
                reason = std::string("failed to load SUPERCON_DATA: ") + e.what();
            }
        }
    }
    if (!bundle && why) *why = reason;
    return bundle ? &*bundle : nullptr;
}

bool full_run_enabled() {
    const char* v = std::getenv("SUPERCON_FULL");
    return v && std::string(v) == "1";
}

// criterion 4: overall and iron-split statistics match the published
// tables to their printed precision.

Outcome criterion4() {
    std::string why;
    const DataBundle* data = dataset(&why);
    if (!data) return skip(why);

    const SummaryRow overall = summarize(data->rows, Grouping::Overall)[0];
    struct Check {
        const char* name;
        double got, want, tol;
    } checks[] = {
        {"mean", overall.mean, 34.4, 0.05},  {"sd", overall.sd, 34.2, 0.05},
        {"median", overall.median, 20.0, 0.5}, {"q3", overall.q3, 63.0, 0.5},
        {"max", overall.max, 185.0, 0.5},
    };
    for (const auto& c : checks) {
        if (std::abs(c.got - c.want) > c.tol) {
            return fail(std::string("overall ") + c.name + " = " + fmt(c.got) + ", published " +
                        fmt(c.want));
        }
    }

    const auto iron = summarize(data->rows, Grouping::Contains, "Fe");
    const SummaryRow& fe = iron[0];
    if (fe.size != 2339) {
        return fail("contains_Fe size = " + std::to_string(fe.size) + ", published 2339");
    }
    if (std::abs(fe.mean - 26.9) > 0.05) {
        return fail("contains_Fe mean = " + fmt(fe.mean) + ", published 26.9");
    }
    if (std::abs(fe.sd - 21.4) > 0.05) {
        return fail("contains_Fe sd = " + fmt(fe.sd) + ", published 21.4");
    }
    return pass("overall and iron-group statistics match the published tables (" +
                data->summary + ")");
}

// criterion 5: the linear benchmark lands in the published band.

Outcome criterion5() {
    std::string why;
    const DataBundle* data = dataset(&why);
    if (!data) return skip(why);

    ModelSpec spec;
    spec.kind = ModelSpec::Kind::Ols;
    HoldoutPlan plan;
    plan.repeats = 25;
    plan.seed = 0;
    const EvalReport report = repeated_holdout(data->X, data->y, spec, plan);
    if (report.rmse < 16.6 || report.rmse > 18.6) {
        return fail("ols rmse = " + fmt(report.rmse) + ", published band [16.6, 18.6]");
    }
    if (report.r2_mean < 0.70 || report.r2_mean > 0.78) {
        return fail("ols r2 = " + fmt(report.r2_mean) + ", published band [0.70, 0.78]");
    }
    return pass("ols rmse " + fmt(report.rmse) + " K, r2 " + fmt(report.r2_mean) +
                " inside the published bands");
}

// criterion 6: boosted-tree quality. The desk-scale check always runs when
// data is available; the full 25-repeat paper-best run is opt-in.

Outcome criterion6() {
    std::string why;
    const DataBundle* data = dataset(&why);
    if (!data) return skip(why);

    GbtParams desk;
    desk.eta = 0.1;
    desk.max_depth = 8;
    desk.subsample = 0.5;
    desk.colsample = 0.5;
    desk.n_trees = 200;
    ModelSpec spec;
    spec.kind = ModelSpec::Kind::Gbt;
    spec.gbt = desk;
    HoldoutPlan plan;
    plan.repeats = 5;
    plan.seed = 0;

    const auto t0 = std::chrono::steady_clock::now();
    const EvalReport desk_report = repeated_holdout(data->X, data->y, spec, plan);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (seconds > 600.0) {
        return fail("desk-scale check took " + fmt(seconds) + " s, budget is 600 s");
    }
    if (desk_report.rmse > 13.0) {
        return fail("desk-scale rmse = " + fmt(desk_report.rmse) + " K, required <= 13");
    }
    std::string detail = "desk-scale rmse " + fmt(desk_report.rmse) + " K in " + fmt(seconds) +
                         " s (eta 0.1, depth 8, 200 trees, 5 repeats)";

    if (!full_run_enabled()) {
        return pass(detail + "; full paper-best run skipped (set SUPERCON_FULL=1)");
    }
    spec.gbt = GbtParams::paper_best();
    plan.repeats = 25;
    const EvalReport full = repeated_holdout(data->X, data->y, spec, plan);
    if (full.rmse > 11.0) {
        return fail("paper-best rmse = " + fmt(full.rmse) + " K, required <= 11.0");
    }
    if (full.r2_mean < 0.88) {
        return fail("paper-best r2 = " + fmt(full.r2_mean) + ", required >= 0.88");
    }
    return pass(detail + "; paper-best rmse " + fmt(full.rmse) + " K, r2 " +
                fmt(full.r2_mean));
}

// criterion 7: importance of the full-data paper-best fit.

Outcome criterion7() {
    std::string why;
    const DataBundle* data = dataset(&why);
    if (!data) return skip(why);
    if (!full_run_enabled()) {
        return skip("full paper-best fit is expensive; set SUPERCON_FULL=1 to run it");
    }

    const BoostedModel model =
        fit_gbt(data->X, data->y, GbtParams::paper_best(), 0, feature_names());
    const auto ranked = importance(model);
    double total = 0.0;
    for (const auto& [name, share] : ranked) total += share;
    if (std::abs(total - 1.0) > 1e-9) {
        return fail("gain shares sum to " + fmt(total) + ", want 1 +- 1e-9");
    }
    const std::size_t top = std::min<std::size_t>(5, ranked.size());
    for (std::size_t i = 0; i < top; ++i) {
        if (ranked[i].first == "range_ThermalConductivity") {
            return pass("shares sum to 1; range_ThermalConductivity ranked " +
                        std::to_string(i + 1));
        }
    }
    std::string leaders;
    for (std::size_t i = 0; i < top; ++i) leaders += (i ? ", " : "") + ranked[i].first;
    return fail("range_ThermalConductivity not in the top 5 (" + leaders + ")");
}

// ------------------------------------------------------------------------
// criterion 8: dataset-independent oracle properties.

std::optional<std::string> oracle_stump();
std::optional<std::string> oracle_leaf_grid();
std::optional<std::string> oracle_descent();
std::optional<std::string> oracle_seed_determinism();
std::optional<std::string> oracle_invariance();
std::optional<std::string> oracle_bounds();

Outcome criterion8() {
    const struct {
        const char* name;
        std::optional<std::string> (*run)();
    } oracles[] = {
        {"stump brute force", oracle_stump},
        {"leaf-weight grid minimizer", oracle_leaf_grid},
        {"objective descent", oracle_descent},
        {"seed determinism", oracle_seed_determinism},
        {"scale/permutation invariance", oracle_invariance},
        {"AM-GM and entropy bounds", oracle_bounds},
    };
    for (const auto& o : oracles) {
        if (auto problem = o.run()) {
            return fail(std::string(o.name) + ": " + *problem);
        }
    }
    return pass("all six oracle families hold");
}

std::optional<std::string> oracle_stump() {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 5 + bounded(rng, 16);  // <= 20 rows
        const std::size_t m = 3;
        Matrix X(n, m);
        for (auto& v : X.data) v = static_cast<double>(bounded(rng, 10));
        std::vector<double> g(n), h(n, 1.0);
        for (auto& v : g) v = static_cast<double>(bounded(rng, 101)) / 10.0 - 5.0;

        GbtParams params;
        params.max_depth = 1;
        params.lambda = (trial % 2 == 0) ? 1.0 : 0.5;
        params.gamma = (trial % 3 == 0) ? 0.1 : 0.0;

        std::vector<int> all_features(m);
        std::vector<unsigned int> all_rows(n);
        std::iota(all_features.begin(), all_features.end(), 0);
        std::iota(all_rows.begin(), all_rows.end(), 0u);
        const Tree tree = build_tree(X, g, h, params, all_features, all_rows);

        // independent exhaustive search over every (feature, midpoint)
        int best_feature = -1;
        double best_thr = 0.0, best_gain = 0.0;
        const double G = std::accumulate(g.begin(), g.end(), 0.0);
        const double H = static_cast<double>(n);
        for (std::size_t f = 0; f < m; ++f) {
            std::vector<std::pair<double, std::size_t>> order;
            for (std::size_t r = 0; r < n; ++r) order.emplace_back(X.at(r, f), r);
            std::stable_sort(order.begin(), order.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            double gl = 0.0, hl = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                gl += g[order[i].second];
                hl += h[order[i].second];
                if (order[i].first == order[i + 1].first) continue;
                if (hl < params.min_child_weight || H - hl < params.min_child_weight) continue;
                double thr = order[i].first + (order[i + 1].first - order[i].first) / 2.0;
                if (!(thr > order[i].first)) thr = order[i + 1].first;
                const double gain = split_gain(gl, hl, G - gl, H - hl, params.lambda,
                                               params.gamma);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = static_cast<int>(f);
                    best_thr = thr;
                }
            }
        }

        if (best_feature < 0) {
            if (tree.nodes.size() != 1) return "library split where no positive gain exists";
            continue;
        }
        const TreeNode& root = tree.nodes[0];
        if (root.is_leaf()) return "library found no split where one exists";
        if (root.feature != best_feature || root.threshold != best_thr) {
            return "trial " + std::to_string(trial) + ": split (" +
                   std::to_string(root.feature) + ", " + fmt(root.threshold) +
                   ") vs brute force (" + std::to_string(best_feature) + ", " + fmt(best_thr) +
                   ")";
        }
        if (std::abs(root.gain - best_gain) > 1e-9) return "gain mismatch vs brute force";
        // leaf weights must equal the closed form on each side
        double gl = 0.0, hl = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            if (X.at(r, static_cast<std::size_t>(best_feature)) < best_thr) {
                gl += g[r];
                hl += h[r];
            }
        }
        const double wl = leaf_weight(gl, hl, params.lambda);
        const double wr = leaf_weight(G - gl, H - hl, params.lambda);
        if (std::abs(tree.nodes[root.left].weight - wl) > 1e-12 ||
            std::abs(tree.nodes[root.right].weight - wr) > 1e-12) {
            return "leaf weights differ from the closed form";
        }
    }
    return std::nullopt;
}

std::optional<std::string> oracle_leaf_grid() {
    std::mt19937_64 rng(202);
    const double step = 1e-3;
    for (int trial = 0; trial < 20; ++trial) {
        const double G = static_cast<double>(bounded(rng, 2001)) / 100.0 - 10.0;
        const double H = 1.0 + static_cast<double>(bounded(rng, 8));
        const double lambda = std::array<double, 4>{0.0, 0.5, 1.0, 3.0}[bounded(rng, 4)];
        const double closed = leaf_weight(G, H, lambda);

        double best_w = -15.0, best_obj = std::numeric_limits<double>::infinity();
        for (double w = -15.0; w <= 15.0; w += step) {
            const double obj = G * w + 0.5 * (H + lambda) * w * w;
            if (obj < best_obj) {
                best_obj = obj;
                best_w = w;
            }
        }
        if (std::abs(closed - best_w) > step) {
            return "closed form " + fmt(closed) + " vs grid argmin " + fmt(best_w);
        }
    }
    return std::nullopt;
}

std::optional<std::string> oracle_descent() {
    std::mt19937_64 rng(303);
    const std::size_t n = 60, m = 4;
    Matrix X(n, m);
    for (auto& v : X.data) v = static_cast<double>(bounded(rng, 1000)) / 50.0;
    std::vector<double> y(n);
    for (std::size_t r = 0; r < n; ++r) {
        y[r] = X.at(r, 0) + 0.3 * X.at(r, 1) * X.at(r, 2) +
               static_cast<double>(bounded(rng, 100)) / 25.0;
    }
    GbtParams params;
    params.n_trees = 30;
    params.max_depth = 3;
    std::vector<double> curve;
    (void)fit_gbt(X, y, params, 1, {}, [&](int, double rmse) { curve.push_back(rmse); });
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i] > curve[i - 1] + 1e-12) {
            return "train rmse rose at round " + std::to_string(i + 1);
        }
    }
    return std::nullopt;
}

std::optional<std::string> oracle_seed_determinism() {
    std::mt19937_64 rng(404);
    const std::size_t n = 80, m = 5;
    Matrix X(n, m);
    for (auto& v : X.data) v = static_cast<double>(bounded(rng, 500)) / 10.0;
    std::vector<double> y(n);
    for (std::size_t r = 0; r < n; ++r) y[r] = X.at(r, 1) - X.at(r, 3) * 0.2;
    GbtParams params;
    params.n_trees = 15;
    params.max_depth = 4;
    params.subsample = 0.7;
    params.colsample = 0.6;
    const std::string a = serialize_model(fit_gbt(X, y, params, 42));
    const std::string b = serialize_model(fit_gbt(X, y, params, 42));
    if (a != b) return "same seed produced different model files";
    const std::string c = serialize_model(fit_gbt(X, y, params, 43));
    if (a == c) return "different seeds produced identical subsampled models";
    return std::nullopt;
}

std::optional<std::string> oracle_invariance() {
    const PropertyTable& table = PropertyTable::builtin();
    const auto fv = [&](const char* s) {
        return featurize(std::get<Composition>(parse_formula(s)), table).values;
    };
    if (fv("Mg1B2") != fv("Mg2B4")) return "doubling every coefficient changed the features";
    if (fv("Mg1B2") != fv("Mg0.5B1")) return "halving every coefficient changed the features";

    const auto a = fv("Re7Zr1"), b = fv("Zr1Re7");
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1.0});
        if (std::abs(a[i] - b[i]) > 1e-12 * scale) {
            return "entry order changed feature " + feature_names()[i];
        }
    }
    const auto t = fv("Y1Ba2Cu3O7"), u = fv("Y3Ba6Cu9O21");
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double scale = std::max({std::abs(t[i]), std::abs(u[i]), 1.0});
        if (std::abs(t[i] - u[i]) > 1e-12 * scale) {
            return "tripling coefficients changed feature " + feature_names()[i];
        }
    }
    return std::nullopt;
}

std::optional<std::string> oracle_bounds() {
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = 1 + bounded(rng, 6);
        std::vector<double> t(k), p(k);
        double ps = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            t[i] = 0.5 + static_cast<double>(bounded(rng, 1600)) / 10.0;
            p[i] = 1.0 + static_cast<double>(bounded(rng, 100));
            ps += p[i];
        }
        for (auto& v : p) v /= ps;
        const TenStatistics s = ten_statistics(t, p);

        const double lnk = std::log(static_cast<double>(k));
        if (s.gmean > s.mean + 1e-9) return "AM-GM violated (plain)";
        if (s.wtd_gmean > s.wtd_mean + 1e-9) return "AM-GM violated (weighted)";
        if (s.entropy < -1e-12 || s.entropy > lnk + 1e-9) return "entropy out of [0, ln k]";
        if (s.wtd_entropy < -1e-12 || s.wtd_entropy > lnk + 1e-9) {
            return "weighted entropy out of [0, ln k]";
        }
        if (s.range < 0) return "negative range";
        if (s.std > s.range / 2.0 + 1e-9) return "std above range/2";
        for (double v : s.as_array()) {
            if (!std::isfinite(v)) return "non-finite statistic";
        }
    }
    return std::nullopt;
}

// ------------------------------------------------------------------------
// criterion 9: CLI behavior for verbose no-match and for lowercase input.

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::optional<RunResult> run_cli(const std::string& command) {
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return std::nullopt;
    RunResult result;
    char buffer[4096];
    while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe)) {
        result.out.append(buffer, got);
    }
    const int status = pclose(pipe);
    if (status < 0) return std::nullopt;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

Outcome criterion9() {
    const char* cli = std::getenv("SUPERCON_CLI");
    if (!cli || !*cli) return skip("SUPERCON_CLI not set; run through ctest with the CLI built");

    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path();
    const auto model_path = (dir / "supercon_accept_model.json").string();
    const auto train_path = (dir / "supercon_accept_train.csv").string();

    // small training set fitted through the library, plus its clean CSV
    const std::vector<std::pair<const char*, double>> train = {
        {"Nb1", 9.2},          {"Nb3Sn1", 18.0},        {"Nb3Ge1", 23.2},
        {"Mg1B2", 39.0},       {"Y1Ba2Cu3O7", 92.0},    {"La1.8Sr0.2Cu1O4", 38.0},
        {"Hg1Ba2Ca2Cu3O8", 134.0}, {"Fe1Se1", 8.5},
    };
    CleanDataset ds;
    Matrix X(train.size(), kFeatureCount);
    std::vector<double> y;
    const PropertyTable& table = PropertyTable::builtin();
    for (std::size_t r = 0; r < train.size(); ++r) {
        CleanRow row{std::get<Composition>(parse_formula(train[r].first)), train[r].second,
                     r + 1};
        const FeatureVector fv = featurize(row.composition, table);
        for (std::size_t c = 0; c < kFeatureCount; ++c) X.at(r, c) = fv.values[c];
        y.push_back(row.critical_temp);
        ds.rows.push_back(std::move(row));
    }
    GbtParams params;
    params.n_trees = 20;
    params.max_depth = 3;
    save_model(fit_gbt(X, y, params, 1, feature_names()), model_path);
    write_clean_csv(ds, train_path);

    const std::string quoted_cli = "'" + std::string(cli) + "'";
    const auto absent = run_cli(quoted_cli + " predict --model '" + model_path +
                                "' --formula NaSn2As2 --verbose --train '" + train_path +
                                "' 2>/dev/null");
    const auto lowercase = run_cli(quoted_cli + " predict --model '" + model_path +
                                   "' --formula mgB2 2>/dev/null");
    fs::remove(model_path);
    fs::remove(train_path);

    if (!absent || !lowercase) return fail("could not launch the CLI");
    if (absent->exit_code != 0) {
        return fail("verbose no-match run exited " + std::to_string(absent->exit_code) +
                    ", want 0");
    }
    if (absent->out.find("Not able to find match(es)") == std::string::npos) {
        return fail("verbose no-match run did not print the sentinel line");
    }
    if (absent->out.find("predicted_tc:") == std::string::npos) {
        return fail("verbose no-match run did not print a prediction");
    }
    if (lowercase->exit_code != 2) {
        return fail("lowercase-symbol run exited " + std::to_string(lowercase->exit_code) +
                    ", want 2");
    }
    return pass("sentinel + prediction with exit 0 for the unseen formula; exit 2 for mgB2");
}

}  // namespace

int main() {
    const struct {
        int number;
        Outcome (*run)();
    } criteria[] = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = fail(std::string("unexpected exception: ") + e.what());
        }
        const char* label = outcome.status == Status::Pass   ? "PASS"
                            : outcome.status == Status::Fail ? "FAIL"
                                                             : "SKIP";
        if (outcome.status == Status::Fail) ++failures;
        std::printf("criterion %d: %s (%s)\n", c.number, label, outcome.detail.c_str());
    }
    if (failures > 0) {
        std::printf("acceptance: %d criterion(s) failed\n", failures);
        return 1;
    }
    return 0;
}

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "supercon/csv.hpp"
#include "supercon/dataprep.hpp"
#include "supercon/dataset.hpp"
#include "supercon/elements.hpp"
#include "supercon/error.hpp"
#include "supercon/eval.hpp"
#include "supercon/features.hpp"
#include "supercon/formula.hpp"
#include "supercon/gbt.hpp"
#include "supercon/linreg.hpp"
#include "supercon/predictor.hpp"

namespace sc = supercon;

namespace {

// Thrown after a condition has already been reported on stderr.
struct CliExit {
    int code;
};

constexpr int kInputError = 2;
constexpr int kEnvironmentError = 3;

struct GlobalOptions {
    bool quiet = false;
    std::string format = "table";
    std::string elements_path;  // overrides SUPERCON_ELEMENT_TABLE and the built-in
};

sc::PropertyTable resolve_table(const GlobalOptions& g) {
    if (!g.elements_path.empty()) return sc::PropertyTable::load_file(g.elements_path);
    if (const char* env = std::getenv("SUPERCON_ELEMENT_TABLE"); env && *env) {
        return sc::PropertyTable::load_file(env);
    }
    return sc::PropertyTable::builtin();
}

[[noreturn]] void fail_issue(const std::string& input, const sc::ParseIssue& issue) {
    std::cerr << "error: '" << input << "': " << sc::to_string(issue.kind) << " at ["
              << issue.begin << ", " << issue.end << "): " << issue.message << '\n';
    throw CliExit{kInputError};
}

sc::Composition parse_or_fail(const std::string& formula) {
    sc::ParseResult result = sc::parse_formula(formula);
    if (const auto* issue = std::get_if<sc::ParseIssue>(&result)) fail_issue(formula, *issue);
    return std::get<sc::Composition>(result);
}

// Column widths for the plain-text table format.
void print_aligned(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::cout << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c]))
                      << row[c];
        }
        std::cout << '\n';
    }
}

// ---------------------------------------------------------------- parse --

void run_parse(const std::string& formula) {
    const sc::Composition comp = parse_or_fail(formula);
    for (const auto& e : comp.entries) {
        std::cout << e.symbol << ' ' << sc::format_double(e.coefficient) << '\n';
    }
}

// ------------------------------------------------------------- elements --

void run_elements_show(const GlobalOptions& g, const std::string& symbol) {
    const sc::PropertyTable table = resolve_table(g);
    const sc::ElementProperties& e = table.lookup(symbol);
    std::ostringstream header, row;
    header << "symbol";
    row << symbol;
    for (int p = 0; p < sc::kPropertyCount; ++p) {
        header << ',' << sc::property_column(p);
        row << ',' << sc::format_double(sc::property_value(e, p));
    }
    std::cout << header.str() << '\n' << row.str() << '\n';
}

// ------------------------------------------------------------ featurize --

void run_featurize_formula(const GlobalOptions& g, const std::string& formula) {
    const sc::PropertyTable table = resolve_table(g);
    const sc::FeatureVector fv = sc::featurize(parse_or_fail(formula), table);
    const auto& names = sc::feature_names();
    for (std::size_t i = 0; i < sc::kFeatureCount; ++i) {
        std::cout << names[i] << ',' << sc::format_double(fv.values[i]) << '\n';
    }
}

void run_featurize_csv(const GlobalOptions& g, const std::string& in_path,
                       const std::string& out_path) {
    const sc::PropertyTable table = resolve_table(g);
    sc::CsvTable csv = sc::read_csv_file(in_path);
    const std::size_t mat_col = csv.require_column("material", in_path);
    const std::optional<std::size_t> tc_col = csv.column("critical_temp");

    const std::size_t n = csv.rows.size();
    std::vector<sc::Composition> comps(n);
    sc::Dataset ds;
    ds.feature_names = sc::feature_names();
    ds.X = sc::Matrix(n, sc::kFeatureCount);
    if (tc_col) ds.y.resize(n);

    for (std::size_t r = 0; r < n; ++r) {
        const std::string& material = csv.rows[r][mat_col];
        sc::ParseResult parsed = sc::parse_formula(material);
        if (const auto* issue = std::get_if<sc::ParseIssue>(&parsed)) {
            std::cerr << "error: " << in_path << " row " << (r + 2) << ": '" << material
                      << "': " << sc::to_string(issue->kind) << " at [" << issue->begin << ", "
                      << issue->end << "): " << issue->message << '\n';
            throw CliExit{kInputError};
        }
        comps[r] = std::move(std::get<sc::Composition>(parsed));
        if (tc_col) {
            const std::string& cell = csv.rows[r][*tc_col];
            const std::optional<double> v = sc::parse_double(cell);
            if (!v) {
                sc::raise(sc::ErrorKind::MissingValue, in_path + " row " +
                                                           std::to_string(r + 2) +
                                                           ": critical_temp '" + cell +
                                                           "' is not a number");
            }
            ds.y[r] = *v;
        }
    }

    // featurization is pure, so rows can be processed in parallel while the
    // output keeps the input order
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t r = 0; r < n; ++r) {
        const sc::FeatureVector fv = sc::featurize(comps[r], table);
        for (std::size_t c = 0; c < sc::kFeatureCount; ++c) ds.X.at(r, c) = fv.values[c];
    }

    sc::write_feature_csv(ds, out_path);
    if (!g.quiet) {
        std::cout << "wrote " << n << " rows x " << (sc::kFeatureCount + (tc_col ? 1 : 0))
                  << " columns to " << out_path << '\n';
    }
}

// ---------------------------------------------------------------- clean --

void run_clean(const GlobalOptions& g, const std::string& in_path, const std::string& out_path,
               const std::string& audit_path, double tc_ceiling) {
    sc::RawFile raw = sc::read_raw_csv(in_path);
    sc::CleanOptions opts;
    opts.tc_ceiling = tc_ceiling;
    sc::CleanDataset cleaned = sc::clean(raw.records, opts);
    sc::write_clean_csv(cleaned, out_path);
    if (!audit_path.empty()) sc::write_audit_csv(cleaned, audit_path);

    if (!g.quiet) {
        std::size_t dropped = 0, modified = 0;
        for (const auto& e : cleaned.audit) {
            if (e.action == sc::AuditAction::Dropped) ++dropped;
            if (e.action == sc::AuditAction::Modified) ++modified;
        }
        std::cout << "kept " << cleaned.rows.size() << " of " << raw.records.size() << " rows ("
                  << dropped << " dropped, " << modified << " modified)\n";
        if (!raw.ignored_columns.empty()) {
            std::cout << "ignored columns:";
            for (const auto& c : raw.ignored_columns) std::cout << ' ' << c;
            std::cout << '\n';
        }
        if (!audit_path.empty()) std::cout << "audit written to " << audit_path << '\n';
    }
}

// ----------------------------------------------------- gbt param options --

struct GbtFlags {
    double eta = 0.3;
    int max_depth = 6;
    double min_child_weight = 1.0;
    double subsample = 1.0;
    double colsample = 1.0;
    double lambda = 1.0;
    double gamma = 0.0;
    int trees = 100;
    std::string preset;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "named hyperparameter set")
            ->check(CLI::IsMember({"paper-best"}));
        cmd->add_option("--eta", eta, "shrinkage per tree, in (0, 1]");
        cmd->add_option("--max-depth", max_depth, "maximum tree depth");
        cmd->add_option("--min-child-weight", min_child_weight,
                        "minimum hessian mass per child");
        cmd->add_option("--subsample", subsample, "row fraction per tree");
        cmd->add_option("--colsample", colsample, "feature fraction per tree");
        cmd->add_option("--lambda", lambda, "L2 penalty on leaf weights");
        cmd->add_option("--gamma", gamma, "penalty per leaf");
        cmd->add_option("--trees", trees, "number of boosting rounds");
    }

    sc::GbtParams resolve(const CLI::App* cmd) const {
        sc::GbtParams p = preset.empty() ? sc::GbtParams{} : sc::GbtParams::paper_best();
        if (cmd->count("--eta")) p.eta = eta;
        if (cmd->count("--max-depth")) p.max_depth = max_depth;
        if (cmd->count("--min-child-weight")) p.min_child_weight = min_child_weight;
        if (cmd->count("--subsample")) p.subsample = subsample;
        if (cmd->count("--colsample")) p.colsample = colsample;
        if (cmd->count("--lambda")) p.lambda = lambda;
        if (cmd->count("--gamma")) p.gamma = gamma;
        if (cmd->count("--trees")) p.n_trees = trees;
        return p;
    }
};

// ---------------------------------------------------------------- train --

void run_train(const GlobalOptions& g, const CLI::App* cmd, const GbtFlags& flags,
               const std::string& data_path, const std::string& model_kind,
               std::uint64_t seed, const std::string& out_path) {
    sc::Dataset ds = sc::load_feature_csv(data_path);
    if (!ds.has_target()) {
        sc::raise(sc::ErrorKind::InvalidParams,
                  data_path + " has no critical_temp column; nothing to train on");
    }

    if (model_kind == "gbt") {
        const sc::GbtParams params = flags.resolve(cmd);
        sc::FitProgress progress;
        if (!g.quiet) {
            progress = [&](int tree, double rmse) {
                if (tree % 50 == 0 || tree == params.n_trees) {
                    std::cerr << "tree " << tree << '/' << params.n_trees
                              << "  train rmse " << sc::format_double(rmse) << '\n';
                }
            };
        }
        sc::BoostedModel model =
            sc::fit_gbt(ds.X, ds.y, params, seed, ds.feature_names, progress);
        sc::save_model(model, out_path);
        if (!g.quiet) {
            std::cout << "trained gbt (" << model.trees.size() << " trees) on " << ds.X.rows
                      << " rows; model written to " << out_path << '\n';
        }
    } else {
        sc::LinearModel model = sc::fit_ols(ds.X, ds.y, ds.feature_names);
        sc::save_model(model, out_path);
        if (!g.quiet) {
            std::cout << "trained ols on " << ds.X.rows << " rows";
            if (!model.dropped.empty()) {
                std::cout << " (dropped " << model.dropped.size() << " dependent columns)";
            }
            std::cout << "; model written to " << out_path << '\n';
        }
    }
}

// ----------------------------------------------------------------- eval --

void run_eval(const GlobalOptions& g, const CLI::App* cmd, const GbtFlags& flags,
              const std::string& data_path, const std::string& model_kind, int repeats,
              std::uint64_t seed) {
    sc::Dataset ds = sc::load_feature_csv(data_path);
    if (!ds.has_target()) {
        sc::raise(sc::ErrorKind::InvalidParams,
                  data_path + " has no critical_temp column; nothing to evaluate");
    }

    sc::ModelSpec spec;
    if (model_kind == "gbt") {
        spec.kind = sc::ModelSpec::Kind::Gbt;
        spec.gbt = flags.resolve(cmd);
    } else {
        spec.kind = sc::ModelSpec::Kind::Ols;
    }
    sc::HoldoutPlan plan;
    plan.repeats = repeats;
    plan.seed = seed;

    sc::RepeatProgress progress;
    if (!g.quiet) {
        progress = [&](int repeat, double mse, double r2) {
            std::cerr << "repeat " << repeat << '/' << repeats << "  rmse "
                      << sc::format_double(std::sqrt(mse)) << "  r2 " << sc::format_double(r2)
                      << '\n';
        };
    }
    const sc::EvalReport report = sc::repeated_holdout(ds.X, ds.y, spec, plan, progress);

    if (g.format == "csv") {
        std::cout << "repeat,mse,r2\n";
        for (std::size_t i = 0; i < report.mse.size(); ++i) {
            std::cout << (i + 1) << ',' << sc::format_double(report.mse[i]) << ','
                      << sc::format_double(report.r2[i]) << '\n';
        }
        if (!g.quiet) {
            std::cerr << "model " << report.model_id << "\nrmse "
                      << sc::format_double(report.rmse) << "\nmean_rmse "
                      << sc::format_double(report.mean_rmse) << "\nr2_mean "
                      << sc::format_double(report.r2_mean) << '\n';
        }
    } else {
        std::vector<std::vector<std::string>> rows{{"repeat", "mse", "r2"}};
        for (std::size_t i = 0; i < report.mse.size(); ++i) {
            rows.push_back({std::to_string(i + 1), sc::format_double(report.mse[i]),
                            sc::format_double(report.r2[i])});
        }
        print_aligned(rows);
        std::cout << "\nmodel      " << report.model_id << '\n'
                  << "rmse       " << sc::format_double(report.rmse) << '\n'
                  << "mean_rmse  " << sc::format_double(report.mean_rmse) << '\n'
                  << "r2_mean    " << sc::format_double(report.r2_mean) << '\n';
    }
}

// ----------------------------------------------------------------- grid --

void run_grid(const GlobalOptions& g, const CLI::App* cmd, const std::string& config_path,
              const std::string& data_path, const std::string& out_path, std::uint64_t seed,
              int top) {
    sc::Dataset ds = sc::load_feature_csv(data_path);
    if (!ds.has_target()) {
        sc::raise(sc::ErrorKind::InvalidParams,
                  data_path + " has no critical_temp column; nothing to search over");
    }
    sc::GridSpec spec = sc::GridSpec::parse_file(config_path);
    if (cmd->count("--seed")) spec.seed = seed;

    sc::GridProgress progress;
    if (!g.quiet) {
        progress = [&](std::size_t done, std::size_t total, const sc::GridCell& cell) {
            std::cerr << "cell " << done << '/' << total << "  best rmse "
                      << sc::format_double(cell.best_rmse) << " @ " << cell.best_trees
                      << " trees\n";
        };
    }
    const std::vector<sc::GridCell> cells = sc::grid_search(ds.X, ds.y, spec, progress);

    auto cell_fields = [](std::size_t rank, const sc::GridCell& c) {
        return std::vector<std::string>{
            std::to_string(rank),
            sc::format_double(c.best_rmse),
            std::to_string(c.best_trees),
            sc::format_double(c.params.eta),
            std::to_string(c.params.max_depth),
            sc::format_double(c.params.min_child_weight),
            sc::format_double(c.params.subsample),
            sc::format_double(c.params.colsample),
            sc::format_double(c.params.lambda),
            sc::format_double(c.params.gamma)};
    };
    const std::vector<std::string> header{"rank",      "best_rmse", "best_trees", "eta",
                                          "max_depth", "min_child_weight", "subsample",
                                          "colsample", "lambda",    "gamma"};

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) sc::raise(sc::ErrorKind::Io, "cannot open '" + out_path + "' for writing");
        sc::write_csv_row(out, header);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            sc::write_csv_row(out, cell_fields(i + 1, cells[i]));
        }
    }

    const std::size_t shown =
        top > 0 ? std::min<std::size_t>(cells.size(), static_cast<std::size_t>(top))
                : cells.size();
    if (g.format == "csv") {
        sc::write_csv_row(std::cout, header);
        for (std::size_t i = 0; i < shown; ++i) sc::write_csv_row(std::cout, cell_fields(i + 1, cells[i]));
    } else {
        std::vector<std::vector<std::string>> rows{header};
        for (std::size_t i = 0; i < shown; ++i) rows.push_back(cell_fields(i + 1, cells[i]));
        print_aligned(rows);
    }
    if (!g.quiet && !out_path.empty()) {
        std::cerr << "all " << cells.size() << " cells written to " << out_path << '\n';
    }
}

// ------------------------------------------------------------ summarize --

void run_summarize(const GlobalOptions& g, const std::string& data_path,
                   const std::string& group, const std::string& format) {
    sc::Grouping grouping;
    std::string element;
    if (group == "overall") {
        grouping = sc::Grouping::Overall;
    } else if (group == "element") {
        grouping = sc::Grouping::PerElement;
    } else if (group == "cuprate") {
        grouping = sc::Grouping::Cuprate;
    } else if (group.rfind("contains=", 0) == 0) {
        grouping = sc::Grouping::Contains;
        element = group.substr(9);
    } else {
        sc::raise(sc::ErrorKind::InvalidParams,
                  "--group must be overall, element, contains=<symbol>, or cuprate");
    }

    const std::vector<sc::CleanRow> rows = sc::read_clean_csv(data_path);
    const std::vector<sc::SummaryRow> out = sc::summarize(rows, grouping, element);

    auto fields = [](const sc::SummaryRow& r) {
        return std::vector<std::string>{r.group,
                                        std::to_string(r.size),
                                        sc::format_double(r.min),
                                        sc::format_double(r.q1),
                                        sc::format_double(r.median),
                                        sc::format_double(r.q3),
                                        sc::format_double(r.max),
                                        sc::format_double(r.mean),
                                        r.sd_defined ? sc::format_double(r.sd) : std::string()};
    };
    const std::vector<std::string> header{"group", "size", "min",  "q1", "median",
                                          "q3",    "max",  "mean", "sd"};
    if (format == "table") {
        std::vector<std::vector<std::string>> table{header};
        for (const auto& r : out) table.push_back(fields(r));
        print_aligned(table);
    } else {
        sc::write_csv_row(std::cout, header);
        for (const auto& r : out) sc::write_csv_row(std::cout, fields(r));
    }
    (void)g;
}

// -------------------------------------------------------------- predict --

void run_predict_formula(const GlobalOptions& g, const std::string& model_path,
                         const std::string& formula, bool verbose,
                         const std::string& train_path, double threshold) {
    const sc::PropertyTable table = resolve_table(g);
    const sc::TcModel model = sc::TcModel::load(model_path);

    std::optional<sc::TrainReference> train;
    if (verbose) {
        if (train_path.empty()) {
            sc::raise(sc::ErrorKind::InvalidParams,
                      "--verbose needs --train <clean.csv> to search for similar materials");
        }
        train = sc::TrainReference::load(train_path);
    }

    const auto result =
        sc::predict_formula(formula, model, table, train ? &*train : nullptr, threshold);
    if (const auto* issue = std::get_if<sc::ParseIssue>(&result)) fail_issue(formula, *issue);
    const auto& r = std::get<sc::PredictionResult>(result);

    std::cout << "formula: " << r.formula << '\n'
              << "predicted_tc: " << sc::format_double(r.predicted_tc) << " K\n";
    if (r.searched_neighbors) {
        if (r.neighbors.empty()) {
            std::cout << "Not able to find match(es)\n";
        } else {
            std::cout << "training matches (similarity >= " << sc::format_double(threshold)
                      << "):\n";
            std::vector<std::vector<std::string>> rows{{"material", "observed_tc", "similarity"}};
            for (const auto& n : r.neighbors) {
                rows.push_back({n.material, sc::format_double(n.critical_temp),
                                sc::format_double(n.similarity)});
            }
            print_aligned(rows);
        }
    }
    if (!g.quiet) {
        std::cerr << "note: the model scores any parseable formula; it does not check that "
                     "the composition exists or is stable\n";
    }
}

void run_predict_batch(const GlobalOptions& g, const std::string& model_path,
                       const std::string& batch_path, const std::string& out_path) {
    const sc::PropertyTable table = resolve_table(g);
    const sc::TcModel model = sc::TcModel::load(model_path);
    const std::vector<sc::BatchRow> rows = sc::batch_predict(batch_path, model, table);
    sc::write_batch_csv(rows, out_path);
    if (!g.quiet) {
        std::size_t errors = 0;
        for (const auto& r : rows) {
            if (!r.error.empty()) ++errors;
        }
        std::cout << "predicted " << (rows.size() - errors) << " of " << rows.size()
                  << " rows (" << errors << " errors); written to " << out_path << '\n';
    }
}

// ----------------------------------------------------------- importance --

void run_importance(const GlobalOptions& g, const std::string& model_path, int top) {
    const sc::TcModel model = sc::TcModel::load(model_path);
    if (!model.gbt()) {
        sc::raise(sc::ErrorKind::InvalidParams,
                  "feature importance is defined for boosted models only");
    }
    auto ranked = sc::importance(*model.gbt());
    const std::size_t shown =
        top > 0 ? std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(top))
                : ranked.size();
    if (g.format == "csv") {
        std::cout << "feature,share\n";
        for (std::size_t i = 0; i < shown; ++i) {
            std::cout << ranked[i].first << ',' << sc::format_double(ranked[i].second) << '\n';
        }
    } else {
        std::vector<std::vector<std::string>> rows{{"feature", "share"}};
        for (std::size_t i = 0; i < shown; ++i) {
            rows.push_back({ranked[i].first, sc::format_double(ranked[i].second)});
        }
        print_aligned(rows);
    }
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOptions global;

    CLI::App app{"superconductor critical-temperature toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--quiet", global.quiet, "suppress progress and informational output");
    app.add_option("--format", global.format, "output style for tabular commands")
        ->check(CLI::IsMember({"table", "csv"}))
        ->capture_default_str();
    app.add_option("--elements", global.elements_path,
                   "element property CSV (default: $SUPERCON_ELEMENT_TABLE or built-in)");

    // parse
    std::string parse_formula_arg;
    auto* cmd_parse = app.add_subcommand("parse", "parse a formula into element,coefficient pairs");
    cmd_parse->add_option("formula", parse_formula_arg, "chemical formula, e.g. Ba0.2La1.8Cu1O4")
        ->required();
    cmd_parse->callback([&] { run_parse(parse_formula_arg); });

    // elements show
    std::string elements_symbol;
    auto* cmd_elements = app.add_subcommand("elements", "inspect the element property table");
    cmd_elements->require_subcommand(1);
    auto* cmd_show = cmd_elements->add_subcommand("show", "print one element's property row");
    cmd_show->add_option("symbol", elements_symbol, "element symbol, e.g. Nb")->required();
    cmd_show->callback([&] { run_elements_show(global, elements_symbol); });

    // featurize
    std::string feat_formula, feat_csv, feat_out;
    auto* cmd_feat = app.add_subcommand("featurize", "compute the 81 composition features");
    cmd_feat->add_option("formula", feat_formula, "single formula; prints name,value lines");
    cmd_feat->add_option("--csv", feat_csv, "material CSV to featurize in bulk");
    cmd_feat->add_option("--out", feat_out, "output CSV for --csv mode");
    cmd_feat->callback([&] {
        if (!feat_csv.empty()) {
            if (feat_out.empty()) {
                sc::raise(sc::ErrorKind::InvalidParams, "featurize --csv needs --out <file>");
            }
            run_featurize_csv(global, feat_csv, feat_out);
        } else if (!feat_formula.empty()) {
            run_featurize_formula(global, feat_formula);
        } else {
            sc::raise(sc::ErrorKind::InvalidParams,
                      "featurize needs a formula argument or --csv <file>");
        }
    });

    // clean
    std::string clean_in, clean_out, clean_audit;
    double clean_ceiling = sc::CleanOptions{}.tc_ceiling;
    auto* cmd_clean = app.add_subcommand("clean", "clean a raw material,critical_temp CSV");
    cmd_clean->add_option("input", clean_in, "raw CSV with material and critical_temp columns")
        ->required();
    cmd_clean->add_option("--out", clean_out, "cleaned CSV path")->required();
    cmd_clean->add_option("--audit", clean_audit, "per-row audit CSV path");
    cmd_clean->add_option("--tc-ceiling", clean_ceiling, "drop rows with Tc above this many K")
        ->capture_default_str();
    cmd_clean->callback(
        [&] { run_clean(global, clean_in, clean_out, clean_audit, clean_ceiling); });

    // train
    std::string train_data, train_model = "gbt", train_out;
    std::uint64_t train_seed = 0;
    GbtFlags train_flags;
    auto* cmd_train = app.add_subcommand("train", "fit a model on a feature CSV");
    cmd_train->add_option("--data", train_data, "feature CSV with critical_temp")->required();
    cmd_train->add_option("--model", train_model, "model kind")
        ->check(CLI::IsMember({"gbt", "ols"}))
        ->capture_default_str();
    cmd_train->add_option("--seed", train_seed, "RNG seed for row/feature subsampling");
    cmd_train->add_option("--out", train_out, "model file path")->required();
    train_flags.add_to(cmd_train);
    cmd_train->callback([&] {
        run_train(global, cmd_train, train_flags, train_data, train_model, train_seed, train_out);
    });

    // eval
    std::string eval_data, eval_model = "gbt";
    int eval_repeats = 25;
    std::uint64_t eval_seed = 0;
    GbtFlags eval_flags;
    auto* cmd_eval = app.add_subcommand("eval", "repeated-holdout evaluation of a model spec");
    cmd_eval->add_option("--data", eval_data, "feature CSV with critical_temp")->required();
    cmd_eval->add_option("--model", eval_model, "model kind")
        ->check(CLI::IsMember({"gbt", "ols"}))
        ->capture_default_str();
    cmd_eval->add_option("--repeats", eval_repeats, "number of random splits")
        ->capture_default_str();
    cmd_eval->add_option("--seed", eval_seed, "seed for the split sequence");
    eval_flags.add_to(cmd_eval);
    cmd_eval->callback([&] {
        run_eval(global, cmd_eval, eval_flags, eval_data, eval_model, eval_repeats, eval_seed);
    });

    // grid
    std::string grid_config, grid_data, grid_out;
    std::uint64_t grid_seed = 0;
    int grid_top = 10;
    auto* cmd_grid = app.add_subcommand("grid", "hyperparameter grid search on one fixed split");
    cmd_grid->add_option("--config", grid_config, "grid axes file")->required();
    cmd_grid->add_option("--data", grid_data, "feature CSV with critical_temp")->required();
    cmd_grid->add_option("--out", grid_out, "write every cell to this CSV");
    cmd_grid->add_option("--seed", grid_seed, "override the seed from the config file");
    cmd_grid->add_option("--top", grid_top, "cells to display (0 = all)")->capture_default_str();
    cmd_grid->callback(
        [&] { run_grid(global, cmd_grid, grid_config, grid_data, grid_out, grid_seed, grid_top); });

    // summarize
    std::string sum_data, sum_group, sum_format = "csv";
    auto* cmd_sum = app.add_subcommand("summarize", "critical-temperature statistics by group");
    cmd_sum->add_option("--data", sum_data, "cleaned material,critical_temp CSV")->required();
    cmd_sum->add_option("--group", sum_group, "overall | element | contains=<symbol> | cuprate")
        ->required();
    cmd_sum->callback([&] {
        const std::string fmt = app.count("--format") ? global.format : sum_format;
        run_summarize(global, sum_data, sum_group, fmt);
    });

    // predict
    std::string pred_model, pred_formula, pred_train, pred_batch, pred_out;
    bool pred_verbose = false;
    double pred_threshold = 0.98;
    auto* cmd_pred = app.add_subcommand("predict", "predict Tc for a formula or a CSV of them");
    cmd_pred->add_option("--model", pred_model, "model file from train")->required();
    cmd_pred->add_option("--formula", pred_formula, "single formula to score");
    cmd_pred->add_flag("--verbose", pred_verbose, "list similar training materials");
    cmd_pred->add_option("--train", pred_train, "cleaned training CSV for --verbose lookup");
    cmd_pred->add_option("--threshold", pred_threshold, "cosine similarity cutoff")
        ->capture_default_str();
    cmd_pred->add_option("--batch", pred_batch, "material CSV to score row by row");
    cmd_pred->add_option("--out", pred_out, "output CSV for --batch mode");
    cmd_pred->callback([&] {
        if (!pred_formula.empty() == !pred_batch.empty()) {
            sc::raise(sc::ErrorKind::InvalidParams,
                      "predict needs exactly one of --formula or --batch");
        }
        if (!pred_batch.empty()) {
            if (pred_verbose) {
                sc::raise(sc::ErrorKind::InvalidParams,
                          "--verbose applies to --formula, not --batch");
            }
            if (pred_out.empty()) {
                sc::raise(sc::ErrorKind::InvalidParams, "predict --batch needs --out <file>");
            }
            run_predict_batch(global, pred_model, pred_batch, pred_out);
        } else {
            run_predict_formula(global, pred_model, pred_formula, pred_verbose, pred_train,
                                pred_threshold);
        }
    });

    // importance
    std::string imp_model;
    int imp_top = 0;
    auto* cmd_imp = app.add_subcommand("importance", "gain share per feature of a boosted model");
    cmd_imp->add_option("--model", imp_model, "model file from train")->required();
    cmd_imp->add_option("--top", imp_top, "features to display (0 = all)");
    cmd_imp->callback([&] { run_importance(global, imp_model, imp_top); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    } catch (const CliExit& e) {
        return e.code;
    } catch (const sc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == sc::ErrorKind::Io ? kEnvironmentError : kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kEnvironmentError;
    }
    return 0;
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "supercon/elements.hpp"
#include "supercon/error.hpp"
#include "supercon/eval.hpp"
#include "supercon/features.hpp"
#include "supercon/formula.hpp"
#include "supercon/gbt.hpp"
#include "supercon/linreg.hpp"
#include "supercon/predictor.hpp"

namespace py = pybind11;
using namespace supercon;

namespace {

Composition parse_or_throw(const std::string& formula) {
    ParseResult result = parse_formula(formula);
    if (const auto* issue = std::get_if<ParseIssue>(&result)) {
        throw py::value_error("'" + formula + "': " + std::string(to_string(issue->kind)) +
                              " at [" + std::to_string(issue->begin) + ", " +
                              std::to_string(issue->end) + "): " + issue->message);
    }
    return std::get<Composition>(result);
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw py::value_error("X must have at least one row");
    Matrix X(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != X.cols) {
            throw py::value_error("X row " + std::to_string(r) + " has " +
                                  std::to_string(rows[r].size()) + " values, expected " +
                                  std::to_string(X.cols));
        }
        for (std::size_t c = 0; c < X.cols; ++c) X.at(r, c) = rows[r][c];
    }
    return X;
}

GbtParams params_from(double eta, int max_depth, double min_child_weight, double subsample,
                      double colsample, double lambda, double gamma, int trees) {
    GbtParams p;
    p.eta = eta;
    p.max_depth = max_depth;
    p.min_child_weight = min_child_weight;
    p.subsample = subsample;
    p.colsample = colsample;
    p.lambda = lambda;
    p.gamma = gamma;
    p.n_trees = trees;
    return p;
}

// One python-facing handle for either model family.
struct PyModel {
    TcModel model;

    std::string kind() const { return std::string(model.kind()); }
    std::vector<std::string> feature_names() const { return model.feature_names(); }

    double predict_row(const std::vector<double>& row) const {
        return model.predict(std::span<const double>(row));
    }
    std::vector<double> predict(const std::vector<std::vector<double>>& rows) const {
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& row : rows) out.push_back(predict_row(row));
        return out;
    }
    void save(const std::string& path) const {
        if (const BoostedModel* g = model.gbt()) {
            save_model(*g, path);
        } else {
            save_model(*model.ols(), path);
        }
    }
    std::vector<std::pair<std::string, double>> importance_pairs() const {
        const BoostedModel* g = model.gbt();
        if (!g) {
            raise(ErrorKind::InvalidParams,
                  "feature importance is defined for boosted models only");
        }
        return importance(*g);
    }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Critical-temperature prediction: formula parsing, composition features, "
              "boosted-tree and linear regression, and evaluation utilities.";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string message = std::string(to_string(e.kind())) + ": " + e.what();
            if (e.kind() == ErrorKind::Io) {
                PyErr_SetString(PyExc_OSError, message.c_str());
            } else {
                PyErr_SetString(PyExc_ValueError, message.c_str());
            }
        }
    });

    m.def(
        "parse",
        [](const std::string& formula) {
            const Composition comp = parse_or_throw(formula);
            std::vector<std::pair<std::string, double>> out;
            for (const auto& e : comp.entries) out.emplace_back(e.symbol, e.coefficient);
            return out;
        },
        py::arg("formula"),
        "Parse a chemical formula into (symbol, coefficient) pairs in first-mention order. "
        "Raises ValueError on malformed input.");

    m.def(
        "render",
        [](const std::string& formula) { return render_formula(parse_or_throw(formula)); },
        py::arg("formula"), "Canonical rendering of a formula (summed duplicates, explicit 1s).");

    m.def("feature_names", [] { return feature_names(); },
          "The 81 canonical feature names, in column order.");

    m.def(
        "featurize",
        [](const std::string& formula) {
            const FeatureVector fv = featurize(parse_or_throw(formula), PropertyTable::builtin());
            return std::vector<double>(fv.values.begin(), fv.values.end());
        },
        py::arg("formula"),
        "Compute the 81 composition features from a formula using the built-in element table.");

    m.def(
        "element_properties",
        [](const std::string& symbol) {
            const PropertyTable& table = PropertyTable::builtin();
            const ElementProperties& e = table.lookup(symbol);
            py::dict out;
            for (int p = 0; p < kPropertyCount; ++p) {
                out[py::str(std::string(property_column(p)))] = property_value(e, p);
            }
            return out;
        },
        py::arg("symbol"), "Raw property row for one element symbol.");

    m.def("paper_best_params", [] {
        const GbtParams p = GbtParams::paper_best();
        py::dict out;
        out["eta"] = p.eta;
        out["max_depth"] = p.max_depth;
        out["min_child_weight"] = p.min_child_weight;
        out["subsample"] = p.subsample;
        out["colsample"] = p.colsample;
        out["lambda_"] = p.lambda;
        out["gamma"] = p.gamma;
        out["trees"] = p.n_trees;
        return out;
    }, "The benchmark hyperparameter set used by the paper-best CLI preset.");

    py::class_<PyModel>(m, "Model")
        .def_property_readonly("kind", &PyModel::kind)
        .def_property_readonly("feature_names", &PyModel::feature_names)
        .def("predict_row", &PyModel::predict_row, py::arg("row"),
             "Predict one feature vector.")
        .def("predict", &PyModel::predict, py::arg("rows"),
             "Predict a list of feature vectors.")
        .def("importance", &PyModel::importance_pairs,
             "Gain share per feature, descending; boosted models only.")
        .def("save", &PyModel::save, py::arg("path"),
             "Write the model to a versioned, reloadable file.")
        .def_static("load", [](const std::string& path) { return PyModel{TcModel::load(path)}; },
                    py::arg("path"), "Load a model file written by save().");

    m.def(
        "fit_gbt",
        [](const std::vector<std::vector<double>>& X, const std::vector<double>& y, double eta,
           int max_depth, double min_child_weight, double subsample, double colsample,
           double lambda, double gamma, int trees, std::uint64_t seed,
           std::vector<std::string> names) {
            const Matrix mx = to_matrix(X);
            BoostedModel model = fit_gbt(mx, y, params_from(eta, max_depth, min_child_weight,
                                                            subsample, colsample, lambda, gamma,
                                                            trees),
                                         seed, std::move(names));
            return PyModel{TcModel::from(std::move(model))};
        },
        py::arg("X"), py::arg("y"), py::kw_only(), py::arg("eta") = 0.3,
        py::arg("max_depth") = 6, py::arg("min_child_weight") = 1.0, py::arg("subsample") = 1.0,
        py::arg("colsample") = 1.0, py::arg("lambda_") = 1.0, py::arg("gamma") = 0.0,
        py::arg("trees") = 100, py::arg("seed") = 0,
        py::arg("feature_names") = std::vector<std::string>{},
        "Fit a gradient-boosted tree ensemble with the squared-error objective.");

    m.def(
        "fit_ols",
        [](const std::vector<std::vector<double>>& X, const std::vector<double>& y,
           std::vector<std::string> names) {
            LinearModel model = fit_ols(to_matrix(X), y, std::move(names));
            return PyModel{TcModel::from(std::move(model))};
        },
        py::arg("X"), py::arg("y"), py::arg("feature_names") = std::vector<std::string>{},
        "Fit ordinary least squares with an intercept and dependent-column screening.");


    m.def(
        "predict_formula",
        [](const std::string& formula, const PyModel& model) {
            const auto result = predict_formula(formula, model.model, PropertyTable::builtin());
            if (const auto* issue = std::get_if<ParseIssue>(&result)) {
                throw py::value_error("'" + formula + "': " +
                                      std::string(to_string(issue->kind)) + ": " +
                                      issue->message);
            }
            const auto& r = std::get<PredictionResult>(result);
            return py::make_tuple(r.formula, r.predicted_tc);
        },
        py::arg("formula"), py::arg("model"),
        "Parse, featurize, and predict; returns (canonical_formula, predicted_tc).");

    m.def(
        "repeated_holdout",
        [](const std::vector<std::vector<double>>& X, const std::vector<double>& y,
           const std::string& kind, int repeats, std::uint64_t seed, double eta, int max_depth,
           double min_child_weight, double subsample, double colsample, double lambda,
           double gamma, int trees) {
            ModelSpec spec;
            if (kind == "gbt") {
                spec.kind = ModelSpec::Kind::Gbt;
                spec.gbt = params_from(eta, max_depth, min_child_weight, subsample, colsample,
                                       lambda, gamma, trees);
            } else if (kind == "ols") {
                spec.kind = ModelSpec::Kind::Ols;
            } else {
                throw py::value_error("kind must be 'gbt' or 'ols'");
            }
            HoldoutPlan plan;
            plan.repeats = repeats;
            plan.seed = seed;
            const EvalReport report = repeated_holdout(to_matrix(X), y, spec, plan);
            py::dict out;
            out["model_id"] = report.model_id;
            out["mse"] = report.mse;
            out["r2"] = report.r2;
            out["rmse"] = report.rmse;
            out["mean_rmse"] = report.mean_rmse;
            out["r2_mean"] = report.r2_mean;
            return out;
        },
        py::arg("X"), py::arg("y"), py::kw_only(), py::arg("kind") = "gbt",
        py::arg("repeats") = 25, py::arg("seed") = 0, py::arg("eta") = 0.3,
        py::arg("max_depth") = 6, py::arg("min_child_weight") = 1.0, py::arg("subsample") = 1.0,
        py::arg("colsample") = 1.0, py::arg("lambda_") = 1.0, py::arg("gamma") = 0.0,
        py::arg("trees") = 100,
        "Repeated 2/3-1/3 holdout; returns per-repeat mse/r2 and the aggregate scores.");
}

#include "supercon/linreg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "supercon/csv.hpp"
#include "supercon/error.hpp"

namespace supercon {

namespace {

std::vector<std::string> default_names(std::size_t cols) {
    std::vector<std::string> names;
    names.reserve(cols);
    for (std::size_t i = 0; i < cols; ++i) names.push_back("f" + std::to_string(i));
    return names;
}

}  // namespace

LinearModel fit_ols(const Matrix& X, const std::vector<double>& y,
                    std::vector<std::string> feature_names) {
    const std::size_t n = X.rows;
    const std::size_t m = X.cols;
    if (n <= m + 1) {
        raise(ErrorKind::InsufficientRows, "need more than " + std::to_string(m + 1) +
                                               " rows to fit " + std::to_string(m) +
                                               " coefficients plus an intercept, got " +
                                               std::to_string(n));
    }
    if (y.size() != n) raise(ErrorKind::DimensionMismatch, "target length must equal row count");
    for (double v : X.data) {
        if (!std::isfinite(v)) raise(ErrorKind::NonFiniteInput, "feature matrix contains a non-finite value");
    }
    for (double v : y) {
        if (!std::isfinite(v)) raise(ErrorKind::NonFiniteInput, "target contains a non-finite value");
    }
    if (feature_names.empty()) {
        feature_names = default_names(m);
    } else if (feature_names.size() != m) {
        raise(ErrorKind::DimensionMismatch, "feature name list must match column count");
    }

    // Deterministic rank screening, first occurrence wins: modified
    // Gram-Schmidt against the intercept and previously kept columns; a
    // column whose residual is numerically zero is dropped.
    Eigen::MatrixXd basis(n, m + 1);  // orthonormalized kept columns
    Eigen::MatrixXd design(n, m + 1); // original kept columns (for the solve)
    std::vector<std::size_t> kept;    // feature index per design column >= 1

    const auto nd = static_cast<Eigen::Index>(n);
    basis.col(0) = Eigen::VectorXd::Constant(nd, 1.0 / std::sqrt(static_cast<double>(n)));
    design.col(0) = Eigen::VectorXd::Ones(nd);
    Eigen::Index b = 1;

    LinearModel model;
    model.feature_names = feature_names;
    model.coefficients.assign(m, 0.0);

    for (std::size_t f = 0; f < m; ++f) {
        Eigen::VectorXd col(nd);
        for (std::size_t r = 0; r < n; ++r) col[static_cast<Eigen::Index>(r)] = X.at(r, f);
        const double orig_norm = col.norm();
        Eigen::VectorXd resid = col;
        for (Eigen::Index k = 0; k < b; ++k) {
            resid -= basis.col(k).dot(resid) * basis.col(k);
        }
        // second pass stabilizes near-dependent columns
        for (Eigen::Index k = 0; k < b; ++k) {
            resid -= basis.col(k).dot(resid) * basis.col(k);
        }
        const double tol = 1e-10 * std::max(1.0, orig_norm);
        if (resid.norm() <= tol) {
            model.dropped.push_back(feature_names[f]);
            continue;
        }
        basis.col(b) = resid / resid.norm();
        design.col(b) = col;
        kept.push_back(f);
        ++b;
    }

    Eigen::Map<const Eigen::VectorXd> yv(y.data(), nd);
    Eigen::VectorXd beta = design.leftCols(b).householderQr().solve(yv);

    model.intercept = beta[0];
    for (Eigen::Index k = 1; k < b; ++k) {
        model.coefficients[kept[static_cast<std::size_t>(k - 1)]] = beta[k];
    }
    return model;
}

double LinearModel::predict_row(std::span<const double> x) const {
    if (x.size() != coefficients.size()) {
        raise(ErrorKind::DimensionMismatch,
              "expected " + std::to_string(coefficients.size()) + " features, got " +
                  std::to_string(x.size()));
    }
    double acc = intercept;
    for (std::size_t i = 0; i < x.size(); ++i) acc += coefficients[i] * x[i];
    return acc;
}

std::vector<double> LinearModel::predict(const Matrix& X) const {
    if (X.cols != coefficients.size()) {
        raise(ErrorKind::DimensionMismatch,
              "expected " + std::to_string(coefficients.size()) + " columns, got " +
                  std::to_string(X.cols));
    }
    std::vector<double> out;
    out.reserve(X.rows);
    for (std::size_t r = 0; r < X.rows; ++r) out.push_back(predict_row(X.row(r)));
    return out;
}

namespace {

constexpr std::string_view kFormat = "supercon-ols";
constexpr int kVersion = 1;

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string serialize_linear(const LinearModel& m) {
    std::ostringstream out;
    out << "{\"format\":\"" << kFormat << "\",\"version\":" << kVersion;
    out << ",\"intercept\":" << format_double(m.intercept);
    out << ",\"feature_names\":[";
    for (std::size_t i = 0; i < m.feature_names.size(); ++i) {
        if (i) out << ',';
        out << quote(m.feature_names[i]);
    }
    out << "],\"coefficients\":[";
    for (std::size_t i = 0; i < m.coefficients.size(); ++i) {
        if (i) out << ',';
        out << format_double(m.coefficients[i]);
    }
    out << "],\"dropped\":[";
    for (std::size_t i = 0; i < m.dropped.size(); ++i) {
        if (i) out << ',';
        out << quote(m.dropped[i]);
    }
    out << "]}\n";
    return out.str();
}

LinearModel parse_linear_model(const std::string& text, const std::string& origin) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        raise(ErrorKind::FileFormat, origin + ": not a JSON object");
    }
    if (j.value("format", "") != kFormat) {
        raise(ErrorKind::FileFormat, origin + ": not a linear model file");
    }
    if (j.value("version", -1) != kVersion) {
        raise(ErrorKind::FileFormat, origin + ": unsupported model version");
    }
    LinearModel m;
    try {
        m.intercept = j.at("intercept").get<double>();
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        m.coefficients = j.at("coefficients").get<std::vector<double>>();
        m.dropped = j.at("dropped").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::FileFormat, origin + ": malformed model file: " + e.what());
    }
    if (m.coefficients.size() != m.feature_names.size()) {
        raise(ErrorKind::FileFormat, origin + ": coefficients do not match feature_names");
    }
    if (!std::isfinite(m.intercept)) raise(ErrorKind::FileFormat, origin + ": non-finite intercept");
    for (double c : m.coefficients) {
        if (!std::isfinite(c)) raise(ErrorKind::FileFormat, origin + ": non-finite coefficient");
    }
    return m;
}

void save_model(const LinearModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << serialize_linear(m);
    if (!out) raise(ErrorKind::Io, "write to '" + path + "' failed");
}

LinearModel load_linear_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::Io, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_linear_model(buf.str(), path);
}

}  // namespace supercon

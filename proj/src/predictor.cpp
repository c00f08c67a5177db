#include "supercon/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "supercon/csv.hpp"
#include "supercon/error.hpp"
#include "supercon/features.hpp"

namespace supercon {

TcModel TcModel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::Io, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        raise(ErrorKind::FileFormat, path + ": not a model file");
    }
    const std::string format = j.value("format", "");
    TcModel model;
    if (format == "supercon-gbt") {
        model.model_ = parse_gbt_model(text, path);
    } else if (format == "supercon-ols") {
        model.model_ = parse_linear_model(text, path);
    } else {
        raise(ErrorKind::FileFormat, path + ": unknown model format '" + format + "'");
    }
    return model;
}

TcModel TcModel::from(BoostedModel m) {
    TcModel t;
    t.model_ = std::move(m);
    return t;
}

TcModel TcModel::from(LinearModel m) {
    TcModel t;
    t.model_ = std::move(m);
    return t;
}

double TcModel::predict(std::span<const double> features) const {
    if (const auto* gbt = std::get_if<BoostedModel>(&model_)) return gbt->predict_row(features);
    return std::get<LinearModel>(model_).predict_row(features);
}

const std::vector<std::string>& TcModel::feature_names() const {
    if (const auto* gbt = std::get_if<BoostedModel>(&model_)) return gbt->feature_names;
    return std::get<LinearModel>(model_).feature_names;
}

std::string_view TcModel::kind() const {
    return std::holds_alternative<BoostedModel>(model_) ? "gbt" : "ols";
}

const BoostedModel* TcModel::gbt() const { return std::get_if<BoostedModel>(&model_); }

const LinearModel* TcModel::ols() const { return std::get_if<LinearModel>(&model_); }

double cosine_similarity(const std::array<double, kMaxTableZ>& a,
                         const std::array<double, kMaxTableZ>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

TrainReference TrainReference::from_rows(const std::vector<CleanRow>& rows) {
    TrainReference ref;
    ref.entries.reserve(rows.size());
    for (const auto& row : rows) {
        Entry e;
        e.material = render_formula(row.composition);
        e.critical_temp = row.critical_temp;
        e.vec = composition_vector(row.composition);
        double n2 = 0.0;
        for (double v : e.vec) n2 += v * v;
        e.norm = std::sqrt(n2);
        ref.entries.push_back(std::move(e));
    }
    return ref;
}

TrainReference TrainReference::load(const std::string& path) {
    return from_rows(read_clean_csv(path));
}

std::variant<PredictionResult, ParseIssue> predict_formula(const std::string& formula,
                                                           const TcModel& model,
                                                           const PropertyTable& table,
                                                           const TrainReference* train,
                                                           double threshold) {
    ParseResult parsed = parse_formula(formula);
    if (const auto* issue = std::get_if<ParseIssue>(&parsed)) return *issue;
    const Composition& comp = std::get<Composition>(parsed);

    // Featurization needs Z <= 86; surface the violation as an input issue
    // (same exit-code class as a parse failure) rather than an exception.
    for (const auto& e : comp.entries) {
        if (atomic_number(e.symbol).value() > kMaxTableZ) {
            ParseIssue issue;
            issue.kind = ParseIssueKind::UnknownSymbol;
            issue.message = e.symbol + " (atomic number > 86) is outside the supported range";
            return issue;
        }
    }

    const FeatureVector fv = featurize(comp, table);

    PredictionResult result;
    result.formula = render_formula(comp);
    result.predicted_tc = model.predict(std::span<const double>(fv.values));

    if (train) {
        result.searched_neighbors = true;
        const auto vec = composition_vector(comp);
        for (const auto& entry : train->entries) {
            const double sim = cosine_similarity(vec, entry.vec);
            if (sim >= threshold) {
                result.neighbors.push_back({entry.material, entry.critical_temp, sim});
            }
        }
        std::stable_sort(result.neighbors.begin(), result.neighbors.end(),
                         [](const Neighbor& a, const Neighbor& b) {
                             return a.similarity > b.similarity;
                         });
    }
    return result;
}

std::vector<BatchRow> batch_predict(const std::string& csv_in, const TcModel& model,
                                    const PropertyTable& table) {
    CsvTable csv = read_csv_file(csv_in);
    const std::size_t mat_col = csv.require_column("material", csv_in);

    std::vector<BatchRow> rows;
    rows.reserve(csv.rows.size());
    for (const auto& record : csv.rows) {
        BatchRow out;
        out.material = record[mat_col];
        auto result = predict_formula(out.material, model, table);
        if (const auto* issue = std::get_if<ParseIssue>(&result)) {
            out.error = std::string(to_string(issue->kind)) + ": " + issue->message;
        } else {
            out.predicted_tc = std::get<PredictionResult>(result).predicted_tc;
        }
        rows.push_back(std::move(out));
    }
    return rows;
}

void write_batch_csv(const std::vector<BatchRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::Io, "cannot open '" + path + "' for writing");
    write_csv_row(out, {"material", "predicted_tc", "error"});
    for (const auto& row : rows) {
        write_csv_row(out, {row.material, row.error.empty() ? format_double(row.predicted_tc) : "",
                            row.error});
    }
    if (!out) raise(ErrorKind::Io, "write to '" + path + "' failed");
}

}  // namespace supercon

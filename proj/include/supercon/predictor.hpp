#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "supercon/dataprep.hpp"
#include "supercon/elements.hpp"
#include "supercon/formula.hpp"
#include "supercon/gbt.hpp"
#include "supercon/linreg.hpp"

namespace supercon {

// Either model kind behind one predict surface; the file's format field
// decides which parser runs.
class TcModel {
  public:
    static TcModel load(const std::string& path);
    static TcModel from(BoostedModel m);
    static TcModel from(LinearModel m);

    double predict(std::span<const double> features) const;
    const std::vector<std::string>& feature_names() const;
    std::string_view kind() const;  // "gbt" or "ols"
    const BoostedModel* gbt() const;
    const LinearModel* ols() const;

  private:
    std::variant<BoostedModel, LinearModel> model_;
};

// Cosine similarity of two composition vectors; 0 when either is all-zero.
double cosine_similarity(const std::array<double, kMaxTableZ>& a,
                         const std::array<double, kMaxTableZ>& b);

// Training rows prepared for similarity lookup: canonical material text,
// observed Tc, composition vector and its norm.
struct TrainReference {
    struct Entry {
        std::string material;
        double critical_temp = 0;
        std::array<double, kMaxTableZ> vec{};
        double norm = 0;
    };
    std::vector<Entry> entries;

    static TrainReference from_rows(const std::vector<CleanRow>& rows);
    static TrainReference load(const std::string& path);  // material,critical_temp CSV
};

struct Neighbor {
    std::string material;
    double critical_temp = 0;
    double similarity = 0;
};

struct PredictionResult {
    std::string formula;      // canonical rendering of the parsed input
    double predicted_tc = 0;  // Kelvin
    bool searched_neighbors = false;
    std::vector<Neighbor> neighbors;  // similarity descending; empty when
                                      // nothing reaches the threshold
};

// Parse, featurize, predict; when `train` is given, also collect every
// training entry with cosine similarity >= threshold. A ParseIssue comes
// back as the variant's error branch instead of throwing, so callers can
// honor the exit-code contract.
std::variant<PredictionResult, ParseIssue> predict_formula(const std::string& formula,
                                                           const TcModel& model,
                                                           const PropertyTable& table,
                                                           const TrainReference* train = nullptr,
                                                           double threshold = 0.98);

struct BatchRow {
    std::string material;
    double predicted_tc = 0;
    std::string error;  // empty on success
};

// Predict every row of a material CSV; per-row parse problems land in the
// error field rather than aborting the batch.
std::vector<BatchRow> batch_predict(const std::string& csv_in, const TcModel& model,
                                    const PropertyTable& table);
void write_batch_csv(const std::vector<BatchRow>& rows, const std::string& path);

}  // namespace supercon

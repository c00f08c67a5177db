#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "supercon/dataset.hpp"

namespace supercon {

// Hyperparameters for the boosted-tree fit. Defaults follow the common
// library defaults for the penalized objective (lambda 1, gamma 0).
struct GbtParams {
    double eta = 0.3;              // shrinkage, in (0, 1)
    int max_depth = 6;             // split levels per tree, >= 1
    double min_child_weight = 1.0; // minimum hessian sum per child, >= 0
    double subsample = 1.0;        // row fraction per tree, in (0, 1]
    double colsample = 1.0;        // feature fraction per tree, in (0, 1]
    double lambda = 1.0;           // L2 penalty on leaf weights, >= 0
    double gamma = 0.0;            // per-leaf penalty (gain threshold), >= 0
    int n_trees = 100;             // boosting rounds, >= 1

    void validate() const;  // InvalidParams on any violation

    // The best configuration found by the reference study on the published
    // dataset; exposed to the CLI as preset "paper-best".
    static GbtParams paper_best();

    bool operator==(const GbtParams&) const = default;
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    bool missing_left = true;  // format slot only; inputs here are complete
    double gain = 0.0;         // split gain recorded at build time
    double weight = 0.0;       // leaf weight, raw (eta applied at predict)

    bool is_leaf() const { return feature < 0; }
    bool operator==(const TreeNode&) const = default;
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    // Raw leaf value for x: walk left when x[feature] < threshold.
    double value(std::span<const double> x) const;

    bool operator==(const Tree&) const = default;
};

struct BoostedModel {
    GbtParams params;
    double base_score = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> feature_names;
    std::vector<Tree> trees;
    std::vector<double> feature_gain;  // cumulative split gain per feature

    // base_score + eta * sum of leaf values over the first `limit` trees
    // (all trees when limit is npos). DimensionMismatch when x has the
    // wrong length, NonFiniteInput on non-finite values.
    double predict_row(std::span<const double> x,
                       std::size_t limit = static_cast<std::size_t>(-1)) const;
    std::vector<double> predict(const Matrix& X) const;

    bool operator==(const BoostedModel&) const = default;
};

// Closed-form leaf weight -G / (H + lambda); DegenerateLeaf when
// H + lambda <= 0.
double leaf_weight(double grad_sum, double hess_sum, double lambda);

// Objective reduction of a split under the penalty gamma*T + (lambda/2)*w^2:
// 0.5 * [GL^2/(HL+l) + GR^2/(HR+l) - (GL+GR)^2/(HL+HR+l)] - gamma.
double split_gain(double gl, double hl, double gr, double hr, double lambda, double gamma);

// Exact greedy tree over the given rows and candidate features, using
// per-row gradients/hessians indexed by absolute row id. Deterministic:
// ties in gain break toward the lowest feature index, then the lowest
// threshold. Exposed for oracle tests; fit() performs the subsampling.
Tree build_tree(const Matrix& X, std::span<const double> g, std::span<const double> h,
                const GbtParams& params, const std::vector<int>& features,
                const std::vector<std::uint32_t>& rows);

// Called after each boosting round with (trees built, training rmse).
using FitProgress = std::function<void(int, double)>;

// Squared-error gradient boosting. base_score = mean(y); per tree: draw the
// row subsample then the column subsample from one sequential PRNG stream
// seeded with `seed`, fit a tree to the residual gradients, update all
// predictions by eta times the tree output. Bit-identical for equal inputs.
BoostedModel fit_gbt(const Matrix& X, const std::vector<double>& y, const GbtParams& params,
                     std::uint64_t seed, std::vector<std::string> feature_names = {},
                     const FitProgress& progress = nullptr);

// Gain-share importance: (feature, share) pairs for every feature, shares
// summing to 1, sorted by descending share (ties: model feature order).
// NoSplits when no tree ever split.
std::vector<std::pair<std::string, double>> importance(const BoostedModel& m);

// Versioned deterministic text serialization; save->load->save is
// byte-identical.
std::string serialize_model(const BoostedModel& m);
BoostedModel parse_gbt_model(const std::string& text, const std::string& origin);
void save_model(const BoostedModel& m, const std::string& path);
BoostedModel load_gbt_model(const std::string& path);

}  // namespace supercon

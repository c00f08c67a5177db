#include "supercon/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "supercon/error.hpp"
#include "supercon/rng.hpp"

namespace supercon {

void GbtParams::validate() const {
    auto fail = [](const char* msg) { raise(ErrorKind::InvalidParams, msg); };
    if (!(eta > 0.0 && eta <= 1.0)) fail("eta must be in (0, 1]");
    if (max_depth < 1) fail("max_depth must be >= 1");
    if (!(min_child_weight >= 0.0) || !std::isfinite(min_child_weight)) {
        fail("min_child_weight must be finite and >= 0");
    }
    if (!(subsample > 0.0 && subsample <= 1.0)) fail("subsample must be in (0, 1]");
    if (!(colsample > 0.0 && colsample <= 1.0)) fail("colsample must be in (0, 1]");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail("lambda must be finite and >= 0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) fail("gamma must be finite and >= 0");
    if (n_trees < 1) fail("n_trees must be >= 1");
}

GbtParams GbtParams::paper_best() {
    GbtParams p;
    p.eta = 0.02;
    p.max_depth = 16;
    p.min_child_weight = 1.0;
    p.subsample = 0.5;
    p.colsample = 0.5;
    p.lambda = 1.0;
    p.gamma = 0.0;
    p.n_trees = 374;
    return p;
}

double leaf_weight(double grad_sum, double hess_sum, double lambda) {
    double denom = hess_sum + lambda;
    if (!(denom > 0.0)) {
        raise(ErrorKind::DegenerateLeaf, "leaf weight undefined: hessian sum + lambda <= 0");
    }
    double w = -grad_sum / denom;
    if (w == 0.0) w = 0.0;  // normalize -0.0
    return w;
}

double split_gain(double gl, double hl, double gr, double hr, double lambda, double gamma) {
    double parent = gl + gr;
    return 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) -
                  parent * parent / (hl + hr + lambda)) -
           gamma;
}

double Tree::value(std::span<const double> x) const {
    const TreeNode* n = &nodes[0];
    while (!n->is_leaf()) {
        n = x[static_cast<std::size_t>(n->feature)] < n->threshold ? &nodes[n->left]
                                                                   : &nodes[n->right];
    }
    return n->weight;
}

namespace {

struct Candidate {
    double gain = -std::numeric_limits<double>::infinity();
    int feature = -1;
    double threshold = 0.0;
};

// Total order on candidates; makes the cross-feature reduction independent
// of evaluation/merge order: higher gain wins, then lower feature index,
// then lower threshold.
bool better(const Candidate& a, const Candidate& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    if (a.feature != b.feature) return a.feature < b.feature;
    return a.threshold < b.threshold;
}

// Column-major copy of X plus, per feature, all row ids sorted by value.
// Built once per fit; every tree walks the same global ordering and skips
// rows outside its subsample.
struct ColumnStore {
    std::size_t n = 0;
    std::vector<std::vector<double>> values;
    std::vector<std::vector<std::uint32_t>> order;
};

ColumnStore presort(const Matrix& X) {
    ColumnStore cs;
    cs.n = X.rows;
    cs.values.assign(X.cols, {});
    cs.order.assign(X.cols, {});
#pragma omp parallel for schedule(dynamic)
    for (std::size_t f = 0; f < X.cols; ++f) {
        auto& col = cs.values[f];
        col.resize(X.rows);
        for (std::size_t r = 0; r < X.rows; ++r) col[r] = X.at(r, f);
        auto& ord = cs.order[f];
        ord.resize(X.rows);
        std::iota(ord.begin(), ord.end(), 0U);
        std::stable_sort(ord.begin(), ord.end(),
                         [&col](std::uint32_t a, std::uint32_t b) { return col[a] < col[b]; });
    }
    return cs;
}

struct BuildNode {
    double G = 0.0;
    double H = 0.0;
    std::uint32_t count = 0;
    int tree_node = -1;
};

// Level-wise exact greedy growth. Every level scans each candidate feature
// once in globally sorted order, accumulating running left-side stats per
// active node; the best (feature, threshold) per node is reduced with the
// total order above, so OpenMP scheduling cannot change the result.
Tree grow_tree(const ColumnStore& cs, std::span<const double> g, std::span<const double> h,
               const GbtParams& params, const std::vector<int>& features,
               const std::vector<std::uint32_t>& rows, std::vector<double>* gain_accum) {
    Tree tree;
    tree.nodes.emplace_back();

    std::vector<std::int32_t> slot_of_row(cs.n, -1);
    std::vector<BuildNode> active(1);
    active[0].tree_node = 0;
    for (std::uint32_t r : rows) {
        slot_of_row[r] = 0;
        active[0].G += g[r];
        active[0].H += h[r];
        active[0].count += 1;
    }

    for (int depth = 0; depth < params.max_depth && !active.empty(); ++depth) {
        const std::size_t n_nodes = active.size();
        std::vector<Candidate> best(n_nodes);

#pragma omp parallel
        {
            std::vector<Candidate> local(n_nodes);
            std::vector<double> gl(n_nodes), hl(n_nodes), last(n_nodes);
            std::vector<std::uint32_t> cnt(n_nodes);

#pragma omp for schedule(dynamic) nowait
            for (std::size_t fi = 0; fi < features.size(); ++fi) {
                const int f = features[fi];
                const auto& val = cs.values[static_cast<std::size_t>(f)];
                const auto& ord = cs.order[static_cast<std::size_t>(f)];
                std::fill(gl.begin(), gl.end(), 0.0);
                std::fill(hl.begin(), hl.end(), 0.0);
                std::fill(cnt.begin(), cnt.end(), 0U);

                for (std::uint32_t r : ord) {
                    const std::int32_t s = slot_of_row[r];
                    if (s < 0) continue;
                    const double v = val[r];
                    if (cnt[s] > 0 && v > last[s]) {
                        const double GL = gl[s], HL = hl[s];
                        const double GR = active[s].G - GL;
                        const double HR = active[s].H - HL;
                        if (HL >= params.min_child_weight && HR >= params.min_child_weight) {
                            const double gain =
                                split_gain(GL, HL, GR, HR, params.lambda, params.gamma);
                            // strict > keeps the lowest qualifying threshold
                            if (gain > local[s].gain) {
                                double thr = last[s] + (v - last[s]) / 2.0;
                                if (!(thr > last[s])) thr = v;  // adjacent doubles
                                local[s] = Candidate{gain, f, thr};
                            }
                        }
                    }
                    gl[s] += g[r];
                    hl[s] += h[r];
                    cnt[s] += 1;
                    last[s] = v;
                }
            }

#pragma omp critical
            for (std::size_t s = 0; s < n_nodes; ++s) {
                if (local[s].feature >= 0 && better(local[s], best[s])) best[s] = local[s];
            }
        }

        std::vector<BuildNode> next;
        std::vector<std::int32_t> child_base(n_nodes, -1);
        for (std::size_t s = 0; s < n_nodes; ++s) {
            const Candidate& c = best[s];
            const BuildNode& node = active[s];
            if (c.feature < 0 || !(c.gain > 0.0)) {
                tree.nodes[static_cast<std::size_t>(node.tree_node)].weight =
                    leaf_weight(node.G, node.H, params.lambda);
                continue;
            }
            const int li = static_cast<int>(tree.nodes.size());
            tree.nodes.emplace_back();
            const int ri = static_cast<int>(tree.nodes.size());
            tree.nodes.emplace_back();
            TreeNode& tn = tree.nodes[static_cast<std::size_t>(node.tree_node)];
            tn.feature = c.feature;
            tn.threshold = c.threshold;
            tn.left = li;
            tn.right = ri;
            tn.gain = c.gain;
            if (gain_accum) (*gain_accum)[static_cast<std::size_t>(c.feature)] += c.gain;

            child_base[s] = static_cast<std::int32_t>(next.size());
            BuildNode left, right;
            left.tree_node = li;
            right.tree_node = ri;
            next.push_back(left);
            next.push_back(right);
        }

        if (next.empty()) {
            active.clear();
            break;
        }
        for (std::uint32_t r : rows) {
            const std::int32_t s = slot_of_row[r];
            if (s < 0) continue;
            const std::int32_t b = child_base[s];
            if (b < 0) {
                slot_of_row[r] = -1;
                continue;
            }
            const TreeNode& tn = tree.nodes[static_cast<std::size_t>(active[s].tree_node)];
            const double v = cs.values[static_cast<std::size_t>(tn.feature)][r];
            const std::int32_t child = v < tn.threshold ? b : b + 1;
            slot_of_row[r] = child;
            next[static_cast<std::size_t>(child)].G += g[r];
            next[static_cast<std::size_t>(child)].H += h[r];
            next[static_cast<std::size_t>(child)].count += 1;
        }
        active = std::move(next);
    }

    // depth budget exhausted: whatever is still active becomes a leaf
    for (const BuildNode& node : active) {
        tree.nodes[static_cast<std::size_t>(node.tree_node)].weight =
            leaf_weight(node.G, node.H, params.lambda);
    }
    return tree;
}

std::vector<std::string> default_names(std::size_t cols) {
    std::vector<std::string> names;
    names.reserve(cols);
    for (std::size_t i = 0; i < cols; ++i) names.push_back("f" + std::to_string(i));
    return names;
}

}  // namespace

Tree build_tree(const Matrix& X, std::span<const double> g, std::span<const double> h,
                const GbtParams& params, const std::vector<int>& features,
                const std::vector<std::uint32_t>& rows) {
    params.validate();
    if (rows.empty()) raise(ErrorKind::InvalidParams, "build_tree needs at least one row");
    if (g.size() != X.rows || h.size() != X.rows) {
        raise(ErrorKind::DimensionMismatch, "gradient/hessian length must equal row count");
    }
    ColumnStore cs = presort(X);
    return grow_tree(cs, g, h, params, features, rows, nullptr);
}

BoostedModel fit_gbt(const Matrix& X, const std::vector<double>& y, const GbtParams& params,
                     std::uint64_t seed, std::vector<std::string> feature_names,
                     const FitProgress& progress) {
    params.validate();
    if (X.rows < 2) raise(ErrorKind::InvalidParams, "fit needs at least 2 rows");
    if (y.size() != X.rows) {
        raise(ErrorKind::DimensionMismatch, "target length must equal row count");
    }
    for (double v : X.data) {
        if (!std::isfinite(v)) raise(ErrorKind::NonFiniteInput, "feature matrix contains a non-finite value");
    }
    for (double v : y) {
        if (!std::isfinite(v)) raise(ErrorKind::NonFiniteInput, "target contains a non-finite value");
    }
    if (feature_names.empty()) {
        feature_names = default_names(X.cols);
    } else if (feature_names.size() != X.cols) {
        raise(ErrorKind::DimensionMismatch, "feature name list must match column count");
    }

    BoostedModel model;
    model.params = params;
    model.seed = seed;
    model.feature_names = std::move(feature_names);
    model.feature_gain.assign(X.cols, 0.0);

    double y_sum = 0.0;
    for (double v : y) y_sum += v;
    model.base_score = y_sum / static_cast<double>(X.rows);

    const ColumnStore cs = presort(X);

    const std::size_t n = X.rows;
    const std::size_t m = X.cols;
    auto ceil_fraction = [](double fraction, std::size_t total) {
        auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total)));
        return std::clamp<std::size_t>(k, 1, total);
    };
    const std::size_t rows_per_tree = ceil_fraction(params.subsample, n);
    const std::size_t cols_per_tree = ceil_fraction(params.colsample, m);

    std::vector<double> yhat(n, model.base_score);
    std::vector<double> g(n, 0.0);
    std::vector<double> h(n, 0.0);
    std::vector<double> residual_sq(n, 0.0);
    std::mt19937_64 rng(seed);

    model.trees.reserve(static_cast<std::size_t>(params.n_trees));
    for (int t = 0; t < params.n_trees; ++t) {
        // One draw block per tree, rows first then columns; this order is
        // part of the reproducibility contract.
        const std::vector<std::uint32_t> rows = sample_without_replacement(n, rows_per_tree, rng);
        const std::vector<std::uint32_t> cols = sample_without_replacement(m, cols_per_tree, rng);
        std::vector<int> features(cols.begin(), cols.end());

        for (std::uint32_t r : rows) {
            g[r] = yhat[r] - y[r];
            h[r] = 1.0;
        }
        Tree tree = grow_tree(cs, g, h, params, features, rows, &model.feature_gain);

#pragma omp parallel for schedule(static)
        for (std::size_t r = 0; r < n; ++r) {
            yhat[r] += params.eta * tree.value(X.row(r));
            residual_sq[r] = (yhat[r] - y[r]) * (yhat[r] - y[r]);
        }
        model.trees.push_back(std::move(tree));

        if (progress) {
            double sse = 0.0;  // summed sequentially so the value is stable
            for (double v : residual_sq) sse += v;
            progress(t + 1, std::sqrt(sse / static_cast<double>(n)));
        }
    }
    return model;
}

double BoostedModel::predict_row(std::span<const double> x, std::size_t limit) const {
    if (x.size() != feature_names.size()) {
        raise(ErrorKind::DimensionMismatch,
              "expected " + std::to_string(feature_names.size()) + " features, got " +
                  std::to_string(x.size()));
    }
    for (double v : x) {
        if (!std::isfinite(v)) raise(ErrorKind::NonFiniteInput, "feature vector contains a non-finite value");
    }
    double acc = 0.0;
    const std::size_t k = std::min(limit, trees.size());
    for (std::size_t i = 0; i < k; ++i) acc += trees[i].value(x);
    return base_score + params.eta * acc;
}

std::vector<double> BoostedModel::predict(const Matrix& X) const {
    if (X.cols != feature_names.size()) {
        raise(ErrorKind::DimensionMismatch,
              "expected " + std::to_string(feature_names.size()) + " columns, got " +
                  std::to_string(X.cols));
    }
    std::vector<double> out(X.rows, 0.0);
#pragma omp parallel for schedule(static)
    for (std::size_t r = 0; r < X.rows; ++r) out[r] = predict_row(X.row(r));
    return out;
}

std::vector<std::pair<std::string, double>> importance(const BoostedModel& m) {
    double total = 0.0;
    for (double v : m.feature_gain) total += v;
    if (!(total > 0.0)) {
        raise(ErrorKind::NoSplits, "importance undefined: the model contains no splits");
    }
    std::vector<std::pair<std::string, double>> shares;
    shares.reserve(m.feature_gain.size());
    for (std::size_t f = 0; f < m.feature_gain.size(); ++f) {
        shares.emplace_back(m.feature_names[f], m.feature_gain[f] / total);
    }
    std::stable_sort(shares.begin(), shares.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return shares;
}

}  // namespace supercon

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "supercon/csv.hpp"
#include "supercon/error.hpp"
#include "supercon/gbt.hpp"

// Model persistence. Writing is hand-rolled so the byte stream is fully
// deterministic (field order fixed, shortest round-trip numbers, -0.0
// normalized); parsing goes through a JSON library and re-validates every
// structural invariant, so hand-edited files fail loudly.

namespace supercon {

namespace {

constexpr std::string_view kFormat = "supercon-gbt";
constexpr int kVersion = 1;

void write_node(std::ostream& out, const TreeNode& n) {
    if (n.is_leaf()) {
        out << "{\"leaf\":" << format_double(n.weight) << "}";
        return;
    }
    out << "{\"feature\":" << n.feature << ",\"threshold\":" << format_double(n.threshold)
        << ",\"left\":" << n.left << ",\"right\":" << n.right << ",\"missing\":\""
        << (n.missing_left ? "left" : "right") << "\",\"gain\":" << format_double(n.gain) << "}";
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

[[noreturn]] void bad(const std::string& origin, const std::string& what) {
    raise(ErrorKind::FileFormat, origin + ": " + what);
}

}  // namespace

std::string serialize_model(const BoostedModel& m) {
    std::ostringstream out;
    out << "{\"format\":\"" << kFormat << "\",\"version\":" << kVersion;
    out << ",\"params\":{\"eta\":" << format_double(m.params.eta)
        << ",\"max_depth\":" << m.params.max_depth
        << ",\"min_child_weight\":" << format_double(m.params.min_child_weight)
        << ",\"subsample\":" << format_double(m.params.subsample)
        << ",\"colsample\":" << format_double(m.params.colsample)
        << ",\"lambda\":" << format_double(m.params.lambda)
        << ",\"gamma\":" << format_double(m.params.gamma) << ",\"n_trees\":" << m.params.n_trees
        << "}";
    out << ",\"seed\":\"" << m.seed << "\"";  // string: 64-bit seeds overflow JSON numbers
    out << ",\"base_score\":" << format_double(m.base_score);
    out << ",\"feature_names\":[";
    for (std::size_t i = 0; i < m.feature_names.size(); ++i) {
        if (i) out << ',';
        out << quote(m.feature_names[i]);
    }
    out << "],\"feature_gain\":[";
    for (std::size_t i = 0; i < m.feature_gain.size(); ++i) {
        if (i) out << ',';
        out << format_double(m.feature_gain[i]);
    }
    out << "],\"trees\":[";
    for (std::size_t t = 0; t < m.trees.size(); ++t) {
        if (t) out << ',';
        out << "{\"nodes\":[";
        for (std::size_t i = 0; i < m.trees[t].nodes.size(); ++i) {
            if (i) out << ',';
            write_node(out, m.trees[t].nodes[i]);
        }
        out << "]}";
    }
    out << "]}\n";
    return out.str();
}

BoostedModel parse_gbt_model(const std::string& text, const std::string& origin) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) bad(origin, "not a JSON object");
    if (j.value("format", "") != kFormat) bad(origin, "not a boosted-tree model file");
    if (j.value("version", -1) != kVersion) {
        bad(origin, "unsupported model version " + std::to_string(j.value("version", -1)));
    }

    BoostedModel m;
    try {
        const auto& p = j.at("params");
        m.params.eta = p.at("eta").get<double>();
        m.params.max_depth = p.at("max_depth").get<int>();
        m.params.min_child_weight = p.at("min_child_weight").get<double>();
        m.params.subsample = p.at("subsample").get<double>();
        m.params.colsample = p.at("colsample").get<double>();
        m.params.lambda = p.at("lambda").get<double>();
        m.params.gamma = p.at("gamma").get<double>();
        m.params.n_trees = p.at("n_trees").get<int>();

        const auto& seed = j.at("seed");
        m.seed = seed.is_string() ? std::stoull(seed.get<std::string>())
                                  : seed.get<std::uint64_t>();
        m.base_score = j.at("base_score").get<double>();
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        m.feature_gain = j.at("feature_gain").get<std::vector<double>>();

        for (const auto& jt : j.at("trees")) {
            Tree tree;
            const auto& jn = jt.at("nodes");
            tree.nodes.reserve(jn.size());
            for (const auto& node : jn) {
                TreeNode n;
                if (node.contains("leaf")) {
                    n.weight = node.at("leaf").get<double>();
                } else {
                    n.feature = node.at("feature").get<int>();
                    n.threshold = node.at("threshold").get<double>();
                    n.left = node.at("left").get<int>();
                    n.right = node.at("right").get<int>();
                    n.missing_left = node.value("missing", "left") == std::string("left");
                    n.gain = node.at("gain").get<double>();
                }
                tree.nodes.push_back(n);
            }
            m.trees.push_back(std::move(tree));
        }
    } catch (const nlohmann::json::exception& e) {
        bad(origin, std::string("malformed model file: ") + e.what());
    } catch (const std::logic_error& e) {
        bad(origin, std::string("malformed model file: ") + e.what());
    }

    // Structural re-validation.
    try {
        m.params.validate();
    } catch (const Error& e) {
        bad(origin, e.what());
    }
    if (m.feature_gain.size() != m.feature_names.size()) {
        bad(origin, "feature_gain length does not match feature_names");
    }
    if (m.trees.size() > static_cast<std::size_t>(m.params.n_trees)) {
        bad(origin, "more trees than n_trees");
    }
    if (!std::isfinite(m.base_score)) bad(origin, "base_score is not finite");
    const int n_features = static_cast<int>(m.feature_names.size());
    for (const Tree& tree : m.trees) {
        if (tree.nodes.empty()) bad(origin, "tree with no nodes");
        const int n_nodes = static_cast<int>(tree.nodes.size());
        for (int i = 0; i < n_nodes; ++i) {
            const TreeNode& n = tree.nodes[static_cast<std::size_t>(i)];
            if (n.is_leaf()) {
                if (!std::isfinite(n.weight)) bad(origin, "non-finite leaf weight");
                continue;
            }
            if (n.feature >= n_features) bad(origin, "split feature index out of range");
            if (!std::isfinite(n.threshold)) bad(origin, "non-finite threshold");
            // children strictly after the parent: guarantees a DAG-free walk
            if (n.left <= i || n.right <= i || n.left >= n_nodes || n.right >= n_nodes) {
                bad(origin, "child index out of order");
            }
        }
    }
    return m;
}

void save_model(const BoostedModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << serialize_model(m);
    if (!out) raise(ErrorKind::Io, "write to '" + path + "' failed");
}

BoostedModel load_gbt_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::Io, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_gbt_model(buf.str(), path);
}

}  // namespace supercon

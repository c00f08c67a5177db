#include "supercon/features.hpp"

#include <algorithm>
#include <cmath>

#include "supercon/error.hpp"

namespace supercon {

namespace {

constexpr std::string_view kStatPrefixes[kStatisticCount] = {
    "mean",    "wtd_mean",    "gmean", "wtd_gmean", "entropy",
    "wtd_entropy", "range", "wtd_range", "std",   "wtd_std"};

}  // namespace

std::string_view statistic_prefix(int s) { return kStatPrefixes[s]; }

const std::vector<std::string>& feature_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        v.reserve(kFeatureCount);
        v.emplace_back("number_of_elements");
        for (int p = 0; p < kPropertyCount; ++p) {
            for (int s = 0; s < kStatisticCount; ++s) {
                v.push_back(std::string(kStatPrefixes[s]) + "_" + std::string(property_suffix(p)));
            }
        }
        return v;
    }();
    return names;
}

std::vector<double> element_ratios(const Composition& c) {
    std::vector<double> p;
    p.reserve(c.entries.size());
    double total = c.coefficient_sum();
    for (const auto& e : c.entries) p.push_back(e.coefficient / total);
    return p;
}

std::vector<double> property_fractions(const std::vector<double>& t) {
    double total = 0.0;
    for (double v : t) {
        if (!(v > 0.0)) {
            raise(ErrorKind::NonPositiveProperty,
                  "property fractions need strictly positive values, got " + std::to_string(v));
        }
        total += v;
    }
    std::vector<double> w;
    w.reserve(t.size());
    for (double v : t) w.push_back(v / total);
    return w;
}

TenStatistics ten_statistics(const std::vector<double>& t, const std::vector<double>& p) {
    const std::size_t k = t.size();
    if (k == 0 || p.size() != k) {
        raise(ErrorKind::InvalidParams, "ten_statistics needs matching non-empty t and p");
    }
    const double kd = static_cast<double>(k);
    const std::vector<double> w = property_fractions(t);

    TenStatistics s;
    double t_sum = 0.0;
    for (double v : t) t_sum += v;
    s.mean = t_sum / kd;

    for (std::size_t i = 0; i < k; ++i) s.wtd_mean += p[i] * t[i];

    // Geometric means via logs: the plain product overflows for long
    // compositions of large properties.
    double log_sum = 0.0, wlog_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        log_sum += std::log(t[i]);
        wlog_sum += p[i] * std::log(t[i]);
    }
    s.gmean = std::exp(log_sum / kd);
    s.wtd_gmean = std::exp(wlog_sum);

    for (double wi : w) s.entropy -= wi * std::log(wi);
    if (k == 1) s.entropy = 0.0;  // 1*ln(1) convention, avoids -0.0

    double pw_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) pw_sum += p[i] * w[i];
    for (std::size_t i = 0; i < k; ++i) {
        double a = p[i] * w[i] / pw_sum;
        s.wtd_entropy -= a * std::log(a);
    }
    if (k == 1) s.wtd_entropy = 0.0;

    auto [t_min, t_max] = std::minmax_element(t.begin(), t.end());
    s.range = *t_max - *t_min;

    double pt_min = p[0] * t[0], pt_max = pt_min;
    for (std::size_t i = 1; i < k; ++i) {
        double pt = p[i] * t[i];
        pt_min = std::min(pt_min, pt);
        pt_max = std::max(pt_max, pt);
    }
    s.wtd_range = pt_max - pt_min;

    double var = 0.0, wvar = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        var += (t[i] - s.mean) * (t[i] - s.mean);
        wvar += p[i] * (t[i] - s.wtd_mean) * (t[i] - s.wtd_mean);
    }
    s.std = std::sqrt(var / kd);
    s.wtd_std = std::sqrt(wvar);
    return s;
}

double FeatureVector::named(std::string_view name) const {
    const auto& names = feature_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return values[i];
    }
    raise(ErrorKind::BadSchema, "unknown feature name '" + std::string(name) + "'");
}

FeatureVector featurize(const Composition& c, const PropertyTable& table) {
    const std::size_t k = c.entries.size();
    std::vector<const ElementProperties*> rows;
    rows.reserve(k);
    for (const auto& e : c.entries) rows.push_back(&table.lookup(e.symbol));

    FeatureVector fv;
    fv.values[0] = static_cast<double>(k);

    const std::vector<double> p = element_ratios(c);
    std::vector<double> t(k);
    for (int prop = 0; prop < kPropertyCount; ++prop) {
        for (std::size_t i = 0; i < k; ++i) t[i] = property_value(*rows[i], prop);
        const TenStatistics stats = ten_statistics(t, p);
        const auto arr = stats.as_array();
        for (int s = 0; s < kStatisticCount; ++s) {
            fv.values[static_cast<std::size_t>(1 + prop * kStatisticCount + s)] = arr[static_cast<std::size_t>(s)];
        }
    }
    return fv;
}

}  // namespace supercon

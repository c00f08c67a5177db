#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "supercon/elements.hpp"
#include "supercon/formula.hpp"

namespace supercon {

inline constexpr int kStatisticCount = 10;
// number_of_elements plus 10 statistics for each of the 8 properties.
inline constexpr int kFeatureCount = 1 + kPropertyCount * kStatisticCount;

// Statistic prefix for feature names, index 0..9.
std::string_view statistic_prefix(int s);
// Canonical feature order: number_of_elements, then property-major /
// statistic-minor blocks named `<statistic>_<property>`.
const std::vector<std::string>& feature_names();

// The ten per-property statistics over element property values t and
// composition ratios p.
struct TenStatistics {
    double mean = 0;
    double wtd_mean = 0;
    double gmean = 0;
    double wtd_gmean = 0;
    double entropy = 0;
    double wtd_entropy = 0;
    double range = 0;
    double wtd_range = 0;
    double std = 0;
    double wtd_std = 0;

    std::array<double, kStatisticCount> as_array() const {
        return {mean, wtd_mean, gmean, wtd_gmean, entropy,
                wtd_entropy, range, wtd_range, std, wtd_std};
    }
};

// p_i = coefficient_i / sum of coefficients.
std::vector<double> element_ratios(const Composition& c);

// w_i = t_i / sum of t. Raises NonPositiveProperty when any t_i <= 0.
std::vector<double> property_fractions(const std::vector<double>& t);

// Requires len(t) == len(p) >= 1, all t_i > 0, all p_i > 0, sum(p) == 1.
// std uses the population (1/k) divisor; weighted entropy re-normalizes the
// products p_i * w_i before applying the Shannon formula.
TenStatistics ten_statistics(const std::vector<double>& t, const std::vector<double>& p);

struct FeatureVector {
    std::array<double, kFeatureCount> values{};  // canonical order

    double number_of_elements() const { return values[0]; }
    double at(int property, int statistic) const {
        return values[static_cast<std::size_t>(1 + property * kStatisticCount + statistic)];
    }
    // Lookup by canonical feature name; raises BadSchema for unknown names.
    double named(std::string_view name) const;
};

// Full 81-feature extraction. Every element of c must have Z <= 86 and be
// present in the table (UnknownElement otherwise).
FeatureVector featurize(const Composition& c, const PropertyTable& table);

}  // namespace supercon

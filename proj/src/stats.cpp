#include "halves/stats.hpp"

#include <algorithm>
#include <cmath>

#include "halves/errors.hpp"

namespace halves::stats {

SignPercentage sign_percentage(const PairedSample& sample, Direction direction) {
    if (sample.pairs.empty()) throw UndefinedStatistic("sign percentage undefined: no pairs");
    SignPercentage result;
    for (const auto& pair : sample.pairs) {
        if (pair.x1 == pair.x2) continue; // ties excluded from both sides
        ++result.considered;
        const bool holds = direction == Direction::first_greater ? pair.x1 > pair.x2
                                                                 : pair.x2 > pair.x1;
        if (holds) ++result.satisfied;
    }
    if (result.considered == 0) {
        throw UndefinedStatistic("sign percentage undefined: all pairs tied");
    }
    result.fraction = static_cast<double>(result.satisfied) /
                      static_cast<double>(result.considered);
    result.threshold_3sigma =
        0.5 + 3.0 / (2.0 * std::sqrt(static_cast<double>(sample.pairs.size())));
    return result;
}

double sigma_w(std::size_t m) {
    const double md = static_cast<double>(m);
    return std::sqrt(md * (md + 1.0) * (2.0 * md + 1.0) / 6.0);
}

int sigma_level(double w, double sigma) {
    int level = 0;
    for (int p = 1; p <= 5; ++p) {
        if (std::abs(w) > p * sigma) level = p;
    }
    return level;
}

WilcoxonResult wilcoxon(const PairedSample& sample) {
    std::vector<double> diffs;
    diffs.reserve(sample.pairs.size());
    std::size_t greater = 0, smaller = 0;
    for (const auto& pair : sample.pairs) {
        const double d = pair.x2 - pair.x1;
        if (d > 0) ++greater;
        if (d < 0) ++smaller;
        if (d != 0) diffs.push_back(d);
    }
    if (diffs.empty()) {
        throw UndefinedStatistic("Wilcoxon W undefined: all differences are zero");
    }

    std::vector<std::size_t> order(diffs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(diffs[a]) < std::abs(diffs[b]);
    });

    WilcoxonResult result;
    result.m_effective = diffs.size();
    // Average ranks across runs of equal |d|.
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && std::abs(diffs[order[j]]) == std::abs(diffs[order[i]])) ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            result.w += diffs[order[k]] > 0 ? rank : -rank;
        }
        i = j;
    }
    result.sigma = sigma_w(result.m_effective);
    result.level = sigma_level(result.w, result.sigma);
    result.percentage = static_cast<double>(greater) / static_cast<double>(greater + smaller);
    return result;
}

double pearson_indicator(const IndicatorMatrix& m, std::size_t a, std::size_t b) {
    const auto& va = m.columns.at(a);
    const auto& vb = m.columns.at(b);
    if (va.size() != vb.size() || va.empty()) {
        throw std::invalid_argument("indicator columns must be nonempty and equally sized");
    }
    const auto count = static_cast<long double>(va.size());

    long double sum_a = 0.0L, sum_b = 0.0L;
    for (std::size_t k = 0; k < va.size(); ++k) {
        sum_a += va[k];
        sum_b += vb[k];
    }
    const long double mean_a = sum_a / count;
    const long double mean_b = sum_b / count;

    long double cov = 0.0L, var_a = 0.0L, var_b = 0.0L;
    for (std::size_t k = 0; k < va.size(); ++k) {
        const long double da = va[k] - mean_a;
        const long double db = vb[k] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0L || var_b == 0.0L) {
        throw UndefinedStatistic("Pearson correlation undefined: constant indicator column");
    }
    return static_cast<double>((cov / count) /
                               (std::sqrt(var_a / count) * std::sqrt(var_b / count)));
}

bool scale_invariance_check(const PairedSample& sample, double lambda) {
    if (lambda <= 0) throw std::invalid_argument("lambda must be positive");
    PairedSample scaled = sample;
    for (auto& pair : scaled.pairs) {
        pair.x1 *= lambda;
        pair.x2 *= lambda;
    }
    return wilcoxon(scaled).w == wilcoxon(sample).w;
}

} // namespace halves::stats

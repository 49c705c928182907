#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace halves::stats {

// Per-text feature pairs for one relation across a corpus.
struct PairedSample {
    struct Pair {
        std::string id;
        double x1 = 0.0;
        double x2 = 0.0;
    };
    std::string label;
    std::vector<Pair> pairs;

    std::size_t size() const { return pairs.size(); }
};

enum class Direction { first_greater, second_greater };

struct SignPercentage {
    double fraction = 0.0;        // non-tied pairs satisfying the direction
    double threshold_3sigma = 0.0; // 0.5 + 3/(2 sqrt M)
    std::size_t satisfied = 0;
    std::size_t considered = 0;   // non-tied pairs
};

// Throws UndefinedStatistic when the sample is empty or all pairs tie.
SignPercentage sign_percentage(const PairedSample& sample, Direction direction);

// sqrt(M(M+1)(2M+1)/6), the null standard deviation of W.
double sigma_w(std::size_t m);

// Largest p in 0..5 with |W| > p * sigma; below 3 the tables print False.
int sigma_level(double w, double sigma);

struct WilcoxonResult {
    double w = 0.0;
    double sigma = 0.0;          // sigma_W at m_effective
    int level = 0;               // sigma_level(w, sigma)
    double percentage = 0.0;     // share of non-tied pairs with x2 > x1
    std::size_t m_effective = 0; // pairs left after dropping zero differences
};

// Signed-rank statistic W = sum R_i sgn(x2_i - x1_i) with zero differences
// dropped and average ranks on ties. Throws UndefinedStatistic when every
// difference is zero.
WilcoxonResult wilcoxon(const PairedSample& sample);

// Binary outcomes: columns[a][k] in {0,1} says whether relation a holds
// for text k.
struct IndicatorMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::uint8_t>> columns;

    std::size_t relations() const { return columns.size(); }
    std::size_t texts() const { return columns.empty() ? 0 : columns.front().size(); }
};

// Pearson correlation of two indicator columns, centered-moment form.
// Throws UndefinedStatistic when either column is constant.
double pearson_indicator(const IndicatorMatrix& m, std::size_t a, std::size_t b);

// True iff scaling both sides by lambda > 0 leaves W exactly unchanged.
bool scale_invariance_check(const PairedSample& sample, double lambda);

} // namespace halves::stats

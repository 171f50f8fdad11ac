#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "mvc/error.hpp"
#include "mvc/metrics.hpp"
#include "oracles.hpp"

using namespace mvc;

namespace {

using Labels = std::vector<int>;

// NMI straight from the definition with per-pair probabilities.
double nmi_oracle(const Labels& a, const Labels& b) {
    const double n = static_cast<double>(a.size());
    std::map<int, double> pa, pb;
    std::map<std::pair<int, int>, double> pab;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa[a[i]] += 1 / n;
        pb[b[i]] += 1 / n;
        pab[{a[i], b[i]}] += 1 / n;
    }
    double mi = 0, ha = 0, hb = 0;
    for (auto& [k, p] : pab) mi += p * std::log2(p / (pa[k.first] * pb[k.second]));
    for (auto& [k, p] : pa) ha -= p * std::log2(p);
    for (auto& [k, p] : pb) hb -= p * std::log2(p);
    if (ha + hb == 0) return pa.size() == 1 && pb.size() == 1 ? 1.0 : 0.0;
    return mi / ((ha + hb) / 2);
}

Labels random_labels(std::size_t n, int k, Rng& rng) {
    Labels out(n);
    for (int& x : out) x = rng.index(k);
    return out;
}

}  // namespace

TEST(Acc, Examples) {
    const Labels t{0, 0, 1, 1, 2, 2};
    EXPECT_DOUBLE_EQ(acc(t, t), 1.0);
    EXPECT_DOUBLE_EQ(acc(Labels{2, 2, 0, 0, 1, 1}, t), 1.0);
    EXPECT_NEAR(acc(Labels{0, 0, 1, 1, 1, 1}, Labels{0, 1, 0, 0, 1, 1}), 0.5, 1e-15);
}

TEST(Acc, MatchesPermutationOracle) {
    Rng rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const Labels p = random_labels(30, 1 + trial % 5, rng);
        const Labels t = random_labels(30, 1 + (trial / 5) % 5, rng);
        EXPECT_NEAR(acc(p, t), oracle::brute_acc(p, t), 1e-12);
    }
}

TEST(Nmi, Examples) {
    const Labels t{0, 0, 1, 1, 2, 2};
    EXPECT_NEAR(nmi(t, t), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(nmi(Labels{0, 0, 0, 0}, Labels{0, 0, 1, 1}), 0.0);
    EXPECT_NEAR(nmi(Labels{0, 0, 1, 1}, Labels{0, 1, 0, 1}), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(nmi(Labels{3, 3, 3}, Labels{1, 1, 1}), 1.0);
}

TEST(Nmi, MatchesDefinition) {
    Rng rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const Labels p = random_labels(25, 1 + trial % 4, rng);
        const Labels t = random_labels(25, 1 + (trial / 4) % 4, rng);
        EXPECT_NEAR(nmi(p, t), nmi_oracle(p, t), 1e-12);
    }
}

TEST(Purity, Examples) {
    const Labels t{0, 0, 1, 1, 2, 2};
    EXPECT_DOUBLE_EQ(purity(t, t), 1.0);
    EXPECT_NEAR(purity(Labels(6, 0), t), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(purity(Labels{0, 0, 1, 1, 1}, Labels{0, 1, 1, 1, 0}), 0.6, 1e-15);
}

TEST(Metrics, PermutationInvariantAndBounded) {
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Labels p = random_labels(20, 3, rng);
        const Labels t = random_labels(20, 4, rng);
        Labels q = p;
        for (int& x : q) x = (x + 1) % 3 + 5;  // relabel
        const ClusteringScores a = evaluate(p, t);
        const ClusteringScores b = evaluate(q, t);
        EXPECT_NEAR(a.acc, b.acc, 1e-15);
        EXPECT_NEAR(a.nmi, b.nmi, 1e-15);
        EXPECT_NEAR(a.purity, b.purity, 1e-15);
        for (double x : {a.acc, a.nmi, a.purity}) {
            EXPECT_GE(x, 0.0);
            EXPECT_LE(x, 1.0);
        }
        EXPECT_GE(a.purity, a.acc - 1e-15);
        EXPECT_DOUBLE_EQ(a.sum(), a.acc + a.nmi + a.purity);
    }
}

TEST(Metrics, Errors) {
    EXPECT_THROW(acc(Labels{0, 1}, Labels{0}), InvalidInput);
    EXPECT_THROW(nmi(Labels{0, 1}, Labels{0}), InvalidInput);
    EXPECT_THROW(purity(Labels{0, 1}, Labels{0}), InvalidInput);
    EXPECT_THROW(acc(Labels{}, Labels{}), InvalidInput);
    EXPECT_THROW(ClusterAssignment::from_labels(Labels{0, -1}), InvalidInput);
}

TEST(Assignment, RelabelAndIndicator) {
    const ClusterAssignment a = ClusterAssignment::from_labels(Labels{7, 7, 2, 9});
    EXPECT_EQ(a.labels, (Labels{0, 0, 1, 2}));
    EXPECT_EQ(a.num_clusters, 3);
    const Matrix g = a.indicator();
    EXPECT_TRUE((g.rowwise().sum().array() == 1.0).all());
    EXPECT_EQ(g(3, 2), 1.0);
}

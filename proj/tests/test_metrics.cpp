#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "tsili/metrics.hpp"
#include "tsili/bootstrap.hpp"
#include "test_util.hpp"

using namespace tsili;

namespace {

PredictionSet make_preds(std::vector<std::tuple<std::string, int, double, long long>> rows) {
    std::vector<PredictionRecord> records;
    for (auto& [name, actual, score, sloc] : rows) {
        PredictionRecord rec;
        rec.name = name;
        rec.actual = actual;
        rec.score = score;
        if (sloc > 0) rec.sloc = sloc;
        records.push_back(std::move(rec));
    }
    return PredictionSet(std::move(records));
}

}  // namespace

TEST_CASE("confusion matrix basics") {
    PredictionSet preds = make_preds({{"a", 1, 0.9, 0}, {"b", 0, 0.4, 0}});
    ConfusionMatrix cm = confusion(preds);
    CHECK(cm.tp == 1);
    CHECK(cm.tn == 1);
    CHECK(cm.fp == 0);
    CHECK(cm.fn == 0);
}

TEST_CASE("score equal to the threshold predicts clean") {
    PredictionSet preds = make_preds({{"a", 1, 0.5, 0}});
    ConfusionMatrix cm = confusion(preds, 0.5);
    CHECK(cm.fn == 1);
    CHECK(cm.tp == 0);
}

TEST_CASE("all-clean set with high scores is all false positives") {
    PredictionSet preds = make_preds({{"a", 0, 0.9, 0}, {"b", 0, 0.9, 0}, {"c", 0, 0.9, 0}});
    ConfusionMatrix cm = confusion(preds);
    CHECK(cm.fp == 3);
    CHECK(cm.total() == 3);
}

TEST_CASE("hand-checked F1/ER/RI values") {
    ConfusionMatrix cm{10, 10, 70, 10};
    CHECK(cm.q() == doctest::Approx(0.2));
    CHECK(*cm.precision() == doctest::Approx(0.5));
    CHECK(*cm.recall() == doctest::Approx(0.5));
    CHECK(f1(cm) == 0.5);
    CHECK(*er(cm) == 0.6);
    CHECK(*ri(cm) == 1.5);
}

TEST_CASE("ER and RI vanish when precision equals the defect rate") {
    // a random-equivalent classifier: p = q = 0.2, r = 0.5
    ConfusionMatrix cm{10, 40, 40, 10};
    CHECK(*cm.precision() == doctest::Approx(cm.q()));
    CHECK(*er(cm) == 0.0);
    CHECK(*ri(cm) == 0.0);
}

TEST_CASE("ER/RI degenerate cases are NA, F1 falls back to 0") {
    ConfusionMatrix zero_recall{0, 0, 90, 10};
    CHECK(!er(zero_recall));
    CHECK(!ri(zero_recall));  // nothing predicted defective
    CHECK(f1(zero_recall) == 0.0);
    ConfusionMatrix no_defectives{0, 10, 90, 0};
    CHECK(!ri(no_defectives));  // q = 0
}

TEST_CASE("AUC extremes and tie handling") {
    PredictionSet perfect =
        make_preds({{"a", 1, 0.9, 0}, {"b", 1, 0.8, 0}, {"c", 0, 0.2, 0}, {"d", 0, 0.1, 0}});
    CHECK(*auc(perfect) == 1.0);

    PredictionSet inverted =
        make_preds({{"a", 0, 0.9, 0}, {"b", 1, 0.1, 0}});
    CHECK(*auc(inverted) == 0.0);

    PredictionSet constant =
        make_preds({{"a", 1, 0.5, 0}, {"b", 0, 0.5, 0}, {"c", 1, 0.5, 0}, {"d", 0, 0.5, 0}});
    CHECK(*auc(constant) == 0.5);  // full ties credit 0.5

    PredictionSet one_class = make_preds({{"a", 1, 0.4, 0}, {"b", 1, 0.6, 0}});
    CHECK(!auc(one_class));
}

TEST_CASE("rank metrics on two-instance orderings") {
    PredictionSet first = make_preds({{"a", 1, 0.9, 0}, {"b", 0, 0.1, 0}});
    RankMetrics m1 = rank_eval(first);
    CHECK(*m1.ap == 1.0);
    CHECK(*m1.rr == 1.0);

    PredictionSet second = make_preds({{"a", 0, 0.9, 0}, {"b", 1, 0.1, 0}});
    RankMetrics m2 = rank_eval(second);
    CHECK(*m2.ap == 0.5);
    CHECK(*m2.rr == 0.5);

    PredictionSet none = make_preds({{"a", 0, 0.9, 0}, {"b", 0, 0.1, 0}});
    RankMetrics m3 = rank_eval(none);
    CHECK(!m3.ap);
    CHECK(!m3.rr);
}

TEST_CASE("ranking ties break by ascending name") {
    PredictionSet tied = make_preds({{"zz", 1, 0.7, 0}, {"aa", 0, 0.7, 0}});
    // aa ranks first, so the defective zz sits at rank 2
    RankMetrics m = rank_eval(tied);
    CHECK(*m.rr == 0.5);
}

TEST_CASE("ACC20 with equal sloc and perfect ranking follows floor(0.2N)/n1") {
    for (std::size_t n : {5u, 10u, 25u}) {
        for (std::size_t n1 : {1u, 2u, 3u}) {
            if (n1 > n) continue;
            std::vector<std::tuple<std::string, int, double, long long>> rows;
            for (std::size_t i = 0; i < n; ++i) {
                char name[8];
                std::snprintf(name, sizeof name, "m%03zu", i);
                rows.push_back({name, i < n1 ? 1 : 0, 1.0 - double(i) * 0.01, 10});
            }
            RankMetrics m = rank_eval(make_preds(rows));
            double budget_items = std::floor(0.2 * double(n));
            double expected = std::min(1.0, budget_items / double(n1));
            CAPTURE(n);
            CAPTURE(n1);
            CHECK(*m.acc20 == doctest::Approx(expected));
        }
    }
}

TEST_CASE("Popt hand-computed example") {
    // model order A,B,C,D; optimal A,C,B,D; worst B,D,A,C; areas .65/.75/.35
    PredictionSet preds = make_preds(
        {{"A", 1, 0.9, 10}, {"B", 0, 0.8, 10}, {"C", 1, 0.7, 20}, {"D", 0, 0.6, 10}});
    RankMetrics m = rank_eval(preds);
    CHECK(*m.popt == doctest::Approx(0.75));
}

TEST_CASE("Popt and ACC20 are NA without sloc") {
    PredictionSet preds = make_preds({{"a", 1, 0.9, 0}, {"b", 0, 0.1, 0}});
    RankMetrics m = rank_eval(preds);
    CHECK(!m.popt);
    CHECK(!m.acc20);
    CHECK(m.ap);  // unaffected
}

TEST_CASE("random baselines match the closed forms") {
    CHECK(*random_baseline(Indicator::AUC, 50, 10) == 0.5);
    CHECK(*random_baseline(Indicator::ER, 50, 10) == 0.0);
    CHECK(*random_baseline(Indicator::RI, 50, 10) == 0.0);
    CHECK(*random_baseline(Indicator::Popt, 50, 10) == 0.5);
    CHECK(*random_baseline(Indicator::ACC, 50, 10) == 0.2);
    CHECK(*random_baseline(Indicator::F1, 100, 20) == doctest::Approx(2.0 / 7.0));
    CHECK(*random_baseline(Indicator::RR, 2, 1) == doctest::Approx(0.75));
    CHECK(*random_baseline(Indicator::AP, 2, 1) == doctest::Approx(0.75));
    CHECK(!random_baseline(Indicator::AP, 5, 0));
    CHECK(!random_baseline(Indicator::RR, 5, 0));
    CHECK_THROWS_AS(random_baseline(Indicator::AP, 0, 0), ConfigError);
}

TEST_CASE("random AP/RR cross the exact/extended-precision boundary smoothly") {
    // test-local long-double evaluation of the same closed forms
    auto ap_ld = [](long long n, long long k) {
        long double h = 0;
        for (long long i = 1; i <= n; ++i) h += 1.0L / i;
        if (n == 1) return 1.0;
        return double((h + (long double)(k - 1) / (n - 1) * (n - h)) / n);
    };
    auto rr_ld = [](long long n, long long k) {
        long double u = (long double)k / n, sum = 0;
        for (long long i = 1; i <= n - k + 1; ++i) {
            sum += u / i;
            u *= (long double)(n - i - k + 1) / (n - i);
        }
        return double(sum);
    };
    for (long long n : {500, 512, 513, 600}) {
        for (long long k : {1LL, 17LL, n / 2, n}) {
            CAPTURE(n);
            CAPTURE(k);
            CHECK(*random_baseline(Indicator::AP, n, k) == doctest::Approx(ap_ld(n, k)).epsilon(1e-10));
            CHECK(*random_baseline(Indicator::RR, n, k) == doctest::Approx(rr_ld(n, k)).epsilon(1e-10));
        }
    }
}

TEST_CASE("diff and pgr arithmetic") {
    CHECK(*diff(0.6, 0.5) == doctest::Approx(20.0));
    CHECK(*diff(0.5, 0.5) == 0.0);
    CHECK(!diff(0.5, 0.0));
    CHECK(!diff(std::nullopt, 0.5));

    CHECK(*pgr(0.6, 0.55, 0.5) == doctest::Approx(100.0));
    CHECK(*pgr(0.5, 0.5, 0.4) == 0.0);
    CHECK(!pgr(0.6, 0.5, 0.5));  // zero gain denominator
}

TEST_CASE("diff/pgr numerators negate under NC/CC swap") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        double nc = 0.05 + double(rng.next_below(900)) / 1000.0;
        double cc = 0.05 + double(rng.next_below(900)) / 1000.0;
        double rnd = 0.01 + double(rng.next_below(500)) / 1000.0;
        if (cc == 0.0 || nc == 0.0) continue;
        auto d1 = diff(nc, cc), d2 = diff(cc, nc);
        REQUIRE(d1);
        REQUIRE(d2);
        // numerator = diff * cc / 100
        CHECK(*d1 * cc == doctest::Approx(-(*d2 * nc)));
        if (cc != rnd && nc != rnd) {
            auto g1 = pgr(nc, cc, rnd), g2 = pgr(cc, nc, rnd);
            REQUIRE(g1);
            REQUIRE(g2);
            CHECK(*g1 * (cc - rnd) == doctest::Approx(-(*g2 * (nc - rnd))));
        }
    }
}

TEST_CASE("indicator bounds on random prediction sets") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::tuple<std::string, int, double, long long>> rows;
        std::size_t n = 5 + rng.next_below(40);
        for (std::size_t i = 0; i < n; ++i) {
            char name[8];
            std::snprintf(name, sizeof name, "x%03zu", i);
            rows.push_back({name, int(rng.next_below(2)),
                            double(rng.next_below(1001)) / 1000.0,
                            static_cast<long long>(1 + rng.next_below(500))});
        }
        PredictionSet preds = make_preds(rows);
        ConfusionMatrix cm = confusion(preds);
        RankMetrics rm = rank_eval(preds);
        auto a = auc(preds);
        double f = f1(cm);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        if (a) CHECK((*a >= 0.0 && *a <= 1.0));
        if (rm.ap) CHECK((*rm.ap >= 0.0 && *rm.ap <= 1.0));
        if (rm.rr) CHECK((*rm.rr >= 0.0 && *rm.rr <= 1.0));
        if (rm.popt) CHECK((*rm.popt >= 0.0 && *rm.popt <= 1.0));
        if (rm.acc20) CHECK((*rm.acc20 >= 0.0 && *rm.acc20 <= 1.0));
        auto e = er(cm);
        if (e) CHECK(*e <= 1.0);
        auto r = ri(cm);
        if (r) CHECK(*r >= -1.0);
    }
}

TEST_CASE("prediction CSV loading and validation") {
    testutil::TempDir dir("preds");
    testutil::write_file(dir.path() / "p.csv",
                         "name,actual,score,sloc\nalpha,1,0.75,120\nbeta,0,0.25,\n");
    PredictionSet preds = PredictionSet::load_csv(dir.path() / "p.csv");
    CHECK(preds.size() == 2);
    CHECK(preds.defective_count() == 1);
    CHECK(!preds.has_sloc());  // beta has no sloc

    testutil::write_file(dir.path() / "dup.csv", "name,actual,score\na,1,0.5\na,0,0.5\n");
    CHECK_THROWS_AS(PredictionSet::load_csv(dir.path() / "dup.csv"), ConfigError);
    testutil::write_file(dir.path() / "range.csv", "name,actual,score\na,1,1.5\n");
    CHECK_THROWS_AS(PredictionSet::load_csv(dir.path() / "range.csv"), ConfigError);
    testutil::write_file(dir.path() / "cols.csv", "name,outcome\na,1\n");
    CHECK_THROWS_AS(PredictionSet::load_csv(dir.path() / "cols.csv"), SchemaError);
}

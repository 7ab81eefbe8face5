#include "doctest.h"

#include "tsili/existence.hpp"

using namespace tsili;

namespace {

VersionDataset version_with(std::size_t total, std::size_t buggy, std::size_t yes_buggy,
                            std::size_t yes_clean, std::size_t na = 0) {
    VersionDataset ds;
    ds.version = "v";
    ds.header = {"name", "bug"};
    std::size_t made_yes_buggy = 0, made_yes_clean = 0, made_na = 0;
    for (std::size_t i = 0; i < total; ++i) {
        Instance inst;
        inst.name = "m" + std::to_string(i);
        inst.label = i < buggy ? 1 : 0;
        if (inst.label == 1 && made_yes_buggy < yes_buggy) {
            inst.il_flag = IlFlag::Yes;
            ++made_yes_buggy;
        } else if (inst.label == 0 && made_yes_clean < yes_clean) {
            inst.il_flag = IlFlag::Yes;
            ++made_yes_clean;
        } else if (made_na < na) {
            inst.il_flag = IlFlag::Na;
            ++made_na;
        } else {
            inst.il_flag = IlFlag::No;
        }
        ds.rows.push_back({inst.name, std::to_string(inst.label)});
        ds.instances.push_back(std::move(inst));
    }
    return ds;
}

}  // namespace

TEST_CASE("hand-counted ratios") {
    // 100 instances, 20 buggy, YES = 8 buggy + 2 clean
    ExistenceReport r = existence_ratios(version_with(100, 20, 8, 2));
    CHECK(*r.ilin_all == doctest::Approx(0.10));
    CHECK(*r.ilin_buggy == doctest::Approx(0.40));
    CHECK(*r.ilin_clean == doctest::Approx(0.025));
    CHECK(r.counts.yes_all == r.counts.yes_buggy + r.counts.yes_clean);
}

TEST_CASE("zero YES flags give zero ratios") {
    ExistenceReport r = existence_ratios(version_with(10, 3, 0, 0));
    CHECK(*r.ilin_all == 0.0);
    CHECK(*r.ilin_buggy == 0.0);
    CHECK(*r.ilin_clean == 0.0);
}

TEST_CASE("zero-denominator ratios are NA") {
    ExistenceReport no_buggy = existence_ratios(version_with(10, 0, 0, 1));
    CHECK(!no_buggy.ilin_buggy);
    CHECK(no_buggy.ilin_all);

    VersionDataset empty;
    empty.version = "e";
    ExistenceReport r = existence_ratios(empty);
    CHECK(!r.ilin_all);
    CHECK(!r.ilin_buggy);
    CHECK(!r.ilin_clean);
}

TEST_CASE("NA-flagged instances stay in denominators but not numerators") {
    ExistenceReport r = existence_ratios(version_with(10, 2, 1, 0, 3));
    CHECK(r.counts.na == 3);
    CHECK(*r.ilin_all == doctest::Approx(0.1));  // 1 / 10, NA kept in denominator
}

TEST_CASE("unset flags are rejected") {
    VersionDataset ds;
    ds.header = {"name", "bug"};
    ds.rows = {{"a", "0"}};
    ds.instances = {{"a", 0, {}, IlFlag::Unset}};
    CHECK_THROWS_AS(existence_ratios(ds), StateError);
}

TEST_CASE("aggregate of a singleton") {
    std::vector<ExistenceReport> reports{existence_ratios(version_with(10, 2, 1, 1))};
    SummaryReport s = aggregate("one", reports);
    CHECK(*s.all.mean == doctest::Approx(0.2));
    CHECK(*s.all.min == *s.all.max);
    CHECK(s.all.versions_nonzero == 1);
    CHECK(s.all.versions_total == 1);
}

TEST_CASE("aggregate means and nonzero fractions") {
    std::vector<ExistenceReport> reports{existence_ratios(version_with(10, 5, 0, 0)),
                                         existence_ratios(version_with(10, 5, 1, 1))};
    SummaryReport s = aggregate("pair", reports);
    CHECK(s.all.versions_nonzero == 1);
    CHECK(s.all.versions_total == 2);
    CHECK(*s.all.mean == doctest::Approx(0.1));
    CHECK(*s.all.min == 0.0);
    CHECK(*s.all.max == doctest::Approx(0.2));
    // mean within range
    CHECK(*s.all.mean >= *s.all.min);
    CHECK(*s.all.mean <= *s.all.max);
    CHECK_THROWS_AS(aggregate("none", {}), ConfigError);
}

TEST_CASE("NA versions are excluded from a ratio's mean") {
    std::vector<ExistenceReport> reports{existence_ratios(version_with(10, 0, 0, 2)),
                                         existence_ratios(version_with(10, 5, 2, 0))};
    SummaryReport s = aggregate("mix", reports);
    CHECK(*s.buggy.mean == doctest::Approx(0.4));  // only the second version defines it
    CHECK(s.buggy.versions_total == 2);
}

TEST_CASE("percent rounding is half-even") {
    CHECK(percent_round_half_even(0.02) == 2);
    CHECK(percent_round_half_even(0.025) == 2);   // 2.5 -> even neighbour
    CHECK(percent_round_half_even(0.035) == 4);
    CHECK(percent_round_half_even(0.0249) == 2);
    CHECK(percent_round_half_even(0.0251) == 3);
    CHECK(percent_round_half_even(0.0) == 0);
    CHECK(percent_round_half_even(1.0) == 100);
}

TEST_CASE("markdown and JSON outputs carry the summary") {
    std::vector<ExistenceReport> reports{existence_ratios(version_with(100, 20, 8, 2))};
    SummaryReport s = aggregate("demo", reports);
    std::string md = existence_markdown({s});
    CHECK(md.find("| demo |") != std::string::npos);
    CHECK(md.find("10%") != std::string::npos);
    std::string js = existence_json({s});
    CHECK(js.find("\"ilinBuggy\"") != std::string::npos);
    CHECK(js.find("0.4") != std::string::npos);
}

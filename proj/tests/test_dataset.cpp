#include "doctest.h"

#include "test_util.hpp"
#include "tsili/dataset.hpp"

using namespace tsili;

namespace {

const char* kXalanCsv =
    "name,wmc,loc,bug\n"
    "org.apache.xpath.SourceTree,12,80,1\n"
    "org.apache.xpath.Arg,3,40,0\n"
    "org.apache.xpath.Counter,7,66,3\n";

SchemaConfig xalan_schema() { return {"name", "bug", "loc", {}}; }

}  // namespace

TEST_CASE("load maps labels through the >0 threshold") {
    testutil::TempDir dir("load");
    testutil::write_file(dir.path() / "v.csv", kXalanCsv);
    WarningLog log(LogLevel::Quiet);
    VersionDataset ds = load_version_dataset(dir.path() / "v.csv", xalan_schema(), log);
    REQUIRE(ds.instances.size() == 3);
    CHECK(ds.instances[0].name == "org.apache.xpath.SourceTree");
    CHECK(ds.instances[0].label == 1);
    CHECK(ds.instances[1].label == 0);
    CHECK(ds.instances[2].label == 1);  // defect count 3 -> buggy
    CHECK(ds.instances[0].sloc == 80);
    for (const Instance& inst : ds.instances) CHECK(inst.il_flag == IlFlag::Unset);
}

TEST_CASE("load accepts boolean label encodings") {
    testutil::TempDir dir("bool");
    testutil::write_file(dir.path() / "v.csv", "File,RealBug\na.java,TRUE\nb.java,False\n");
    WarningLog log(LogLevel::Quiet);
    VersionDataset ds = load_version_dataset(dir.path() / "v.csv", {"File", "RealBug", {}, {}}, log);
    CHECK(ds.instances[0].label == 1);
    CHECK(ds.instances[1].label == 0);
}

TEST_CASE("load errors name the missing column") {
    testutil::TempDir dir("missing");
    testutil::write_file(dir.path() / "v.csv", "name,loc\nx,1\n");
    WarningLog log(LogLevel::Quiet);
    CHECK_THROWS_WITH_AS(load_version_dataset(dir.path() / "v.csv", xalan_schema(), log),
                         doctest::Contains("\"bug\""), SchemaError);
}

TEST_CASE("non-numeric labels report the row") {
    testutil::TempDir dir("badlabel");
    testutil::write_file(dir.path() / "v.csv", "name,bug\na,1\nb,maybe\n");
    WarningLog log(LogLevel::Quiet);
    CHECK_THROWS_WITH_AS(load_version_dataset(dir.path() / "v.csv", {"name", "bug", {}, {}}, log),
                         doctest::Contains("row 3"), SchemaError);
}

TEST_CASE("duplicate names keep the first row and warn") {
    testutil::TempDir dir("dup");
    testutil::write_file(dir.path() / "v.csv", "name,bug\na,1\na,0\nb,0\n");
    WarningLog log(LogLevel::Quiet);
    VersionDataset ds = load_version_dataset(dir.path() / "v.csv", {"name", "bug", {}, {}}, log);
    REQUIRE(ds.instances.size() == 2);
    CHECK(ds.instances[0].label == 1);
    REQUIRE(log.entries().size() == 1);
    CHECK(log.entries()[0].code == "DUPLICATE_NAME");
}

TEST_CASE("clean keeps NO and NA, drops YES, preserves order") {
    VersionDataset ds;
    ds.header = {"name", "bug"};
    ds.rows = {{"A", "1"}, {"B", "0"}, {"C", "1"}};
    ds.instances = {{"A", 1, {}, IlFlag::Yes}, {"B", 0, {}, IlFlag::No}, {"C", 1, {}, IlFlag::Na}};
    VersionDataset cleaned = clean(ds);
    REQUIRE(cleaned.instances.size() == 2);
    CHECK(cleaned.instances[0].name == "B");
    CHECK(cleaned.instances[1].name == "C");

    SUBCASE("idempotent") {
        VersionDataset twice = clean(cleaned);
        CHECK(twice.instances.size() == cleaned.instances.size());
    }
    SUBCASE("size arithmetic") {
        std::size_t yes = 0;
        for (const Instance& inst : ds.instances) yes += inst.il_flag == IlFlag::Yes;
        CHECK(cleaned.instances.size() + yes == ds.instances.size());
    }
}

TEST_CASE("clean of all-NO dataset is identical; all-YES is empty") {
    VersionDataset ds;
    ds.header = {"name", "bug"};
    ds.rows = {{"A", "0"}, {"B", "0"}};
    ds.instances = {{"A", 0, {}, IlFlag::No}, {"B", 0, {}, IlFlag::No}};
    CHECK(clean(ds).instances.size() == 2);
    for (Instance& inst : ds.instances) inst.il_flag = IlFlag::Yes;
    CHECK(clean(ds).instances.empty());
}

TEST_CASE("clean rejects unset flags") {
    VersionDataset ds;
    ds.header = {"name", "bug"};
    ds.rows = {{"A", "0"}};
    ds.instances = {{"A", 0, {}, IlFlag::Unset}};
    CHECK_THROWS_AS(clean(ds), StateError);
}

TEST_CASE("write_augmented appends the flag column and preserves cells") {
    testutil::TempDir dir("aug");
    testutil::write_file(dir.path() / "v.csv", kXalanCsv);
    WarningLog log(LogLevel::Quiet);
    VersionDataset ds = load_version_dataset(dir.path() / "v.csv", xalan_schema(), log);
    ds.instances[0].il_flag = IlFlag::Yes;
    ds.instances[1].il_flag = IlFlag::No;
    ds.instances[2].il_flag = IlFlag::Na;
    write_augmented_dataset(ds, dir.path() / "out.csv");

    CsvTable out = read_csv(dir.path() / "out.csv");
    CsvTable original = read_csv(dir.path() / "v.csv");
    REQUIRE(out.header.size() == original.header.size() + 1);
    CHECK(out.header.back() == "isInconsistentLabel");
    REQUIRE(out.rows.size() == original.rows.size());
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
        for (std::size_t c = 0; c < original.header.size(); ++c) {
            CHECK(out.rows[r][c] == original.rows[r][c]);  // data columns byte-equal
        }
    }
    CHECK(out.rows[0].back() == "YES");
    CHECK(out.rows[1].back() == "NO");
    CHECK(out.rows[2].back() == "NA");

    SUBCASE("augmented loader reads the flags back") {
        VersionDataset back = load_augmented_dataset(dir.path() / "out.csv", xalan_schema(), log);
        CHECK(back.instances[0].il_flag == IlFlag::Yes);
        CHECK(back.instances[2].il_flag == IlFlag::Na);
    }
}

TEST_CASE("schema presets and schema files") {
    SchemaConfig mr = schema_preset("metrics-repo-2010");
    CHECK(mr.name_column == "name");
    CHECK(mr.label_column == "bug");
    CHECK_THROWS_AS(schema_preset("promise-2005"), ConfigError);

    testutil::TempDir dir("schema");
    testutil::write_file(dir.path() / "s.conf",
                         "# custom family\nname_column = File\nlabel_column = RealBug\n"
                         "sloc_column = CountLineCode\nexclude = HeuBug, HeuBugCount\n");
    SchemaConfig cfg = load_schema_file(dir.path() / "s.conf");
    CHECK(cfg.name_column == "File");
    CHECK(cfg.sloc_column == "CountLineCode");
    CHECK(cfg.excluded_features == std::vector<std::string>{"HeuBug", "HeuBugCount"});

    SchemaConfig via = resolve_schema((dir.path() / "s.conf").string());
    CHECK(via.label_column == "RealBug");
    CHECK_THROWS_AS(resolve_schema("no-such-preset-or-file"), ConfigError);
}

TEST_CASE("feature columns exclude name/label/sloc and exclusions") {
    VersionDataset ds;
    ds.header = {"name", "wmc", "rfc", "loc", "bug"};
    SchemaConfig cfg{"name", "bug", "loc", {"rfc"}};
    CHECK(ds.feature_columns(cfg) == std::vector<std::string>{"wmc"});
}

#include "doctest.h"

#include "test_util.hpp"
#include "tsili/code_index.hpp"

using namespace tsili;

namespace {

void make_tree(const std::filesystem::path& root) {
    testutil::write_file(root / "org/apache/xpath/SourceTree.java", "class SourceTree {}\n");
    testutil::write_file(root / "org/apache/xpath/Arg.java", "class Arg {}\n");
    testutil::write_file(root / "org/other/Util.java", "class Util {}\n");
    testutil::write_file(root / "com/other/Util.java", "class Util {}\n");
    testutil::write_file(root / "README.md", "not source\n");
}

}  // namespace

TEST_CASE("exact-path keys are normalized relative paths") {
    testutil::TempDir dir("idx");
    make_tree(dir.path());
    WarningLog log(LogLevel::Quiet);
    SourceCodeDatabase db = build_index("v1", dir.path(), {NameStrategy::ExactPath, ".java"}, log);
    CHECK(db.size() == 4);  // README filtered by extension
    auto hit = db.lookup("org/apache/xpath/SourceTree.java");
    REQUIRE(hit);
    CHECK(*hit == "org/apache/xpath/SourceTree.java");
    CHECK(!db.lookup("org/apache/xpath/Missing.java"));
}

TEST_CASE("java-package keys strip the extension and dot the path") {
    testutil::TempDir dir("idx");
    make_tree(dir.path());
    WarningLog log(LogLevel::Quiet);
    SourceCodeDatabase db =
        build_index("v1", dir.path(), {NameStrategy::JavaPackage, ".java"}, log);
    auto hit = db.lookup("org.apache.xpath.SourceTree");
    REQUIRE(hit);
    CHECK(*hit == "org/apache/xpath/SourceTree.java");
}

TEST_CASE("unique-suffix resolves unambiguous names and warns on collisions") {
    testutil::TempDir dir("idx");
    make_tree(dir.path());
    WarningLog log(LogLevel::Quiet);
    SourceCodeDatabase db =
        build_index("v1", dir.path(), {NameStrategy::UniqueSuffix, ".java"}, log);
    auto unique = db.lookup("Arg.java");
    REQUIRE(unique);
    CHECK(*unique == "org/apache/xpath/Arg.java");

    WarningLog lookup_log(LogLevel::Quiet);
    CHECK(!db.lookup("Util.java", &lookup_log));
    REQUIRE(lookup_log.entries().size() == 1);
    CHECK(lookup_log.entries()[0].code == "AMBIGUOUS_NAME");
}

TEST_CASE("empty directory produces an empty database") {
    testutil::TempDir dir("idx");
    WarningLog log(LogLevel::Quiet);
    SourceCodeDatabase db = build_index("v1", dir.path(), {}, log);
    CHECK(db.size() == 0);
    CHECK(!db.lookup("anything"));
}

TEST_CASE("missing root raises an I/O error") {
    WarningLog log(LogLevel::Quiet);
    CHECK_THROWS_AS(build_index("v1", "/nonexistent/root", {}, log), IoError);
}

TEST_CASE("index is deterministic and sorted") {
    testutil::TempDir dir("idx");
    make_tree(dir.path());
    WarningLog log(LogLevel::Quiet);
    SourceCodeDatabase a = build_index("v1", dir.path(), {}, log);
    SourceCodeDatabase b = build_index("v1", dir.path(), {}, log);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.entries()[i].name == b.entries()[i].name);
        CHECK(a.entries()[i].paths == b.entries()[i].paths);
        if (i > 0) CHECK(a.entries()[i - 1].name < a.entries()[i].name);
    }
}

TEST_CASE("database exports a name,codePath audit CSV") {
    testutil::TempDir dir("idx");
    make_tree(dir.path());
    WarningLog log(LogLevel::Quiet);
    SourceCodeDatabase db = build_index("v1", dir.path(), {}, log);
    db.export_csv(dir.path() / "audit.csv");
    CsvTable table = read_csv(dir.path() / "audit.csv");
    CHECK(table.header == std::vector<std::string>{"name", "codePath"});
    CHECK(table.rows.size() == db.size());
}

TEST_CASE("manifest parsing") {
    testutil::TempDir dir("man");
    testutil::write_file(dir.path() / "manifest",
                         "# fixture roots\nversion V1.0 V1.0/src\nversion V1.1 /abs/path\n\n");
    auto entries = load_manifest(dir.path() / "manifest");
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].version == "V1.0");
    CHECK(entries[0].root == dir.path() / "V1.0/src");  // relative to manifest dir
    CHECK(entries[1].root == std::filesystem::path("/abs/path"));

    testutil::write_file(dir.path() / "bad", "root V1.0 x\n");
    CHECK_THROWS_AS(load_manifest(dir.path() / "bad"), ConfigError);
    CHECK_THROWS_AS(load_manifest(dir.path() / "missing"), IoError);
    testutil::write_file(dir.path() / "empty", "# nothing\n");
    CHECK_THROWS_AS(load_manifest(dir.path() / "empty"), ConfigError);
}

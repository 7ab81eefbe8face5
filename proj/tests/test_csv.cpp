#include "doctest.h"

#include "tsili/common.hpp"
#include "tsili/csv.hpp"
#include "test_util.hpp"

using namespace tsili;

TEST_CASE("csv parses plain rows") {
    CsvTable t = parse_csv("a,b,c\n1,2,3\n4,5,6\n");
    CHECK(t.header == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[1][2] == "6");
    CHECK(t.column("b") == 1);
    CHECK(t.column("missing") == -1);
}

TEST_CASE("csv handles quoting, CRLF and embedded separators") {
    CsvTable t = parse_csv("name,note\r\n\"a,b\",\"say \"\"hi\"\"\"\r\nplain,\"two\nlines\"\r\n");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][0] == "a,b");
    CHECK(t.rows[0][1] == "say \"hi\"");
    CHECK(t.rows[1][1] == "two\nlines");
}

TEST_CASE("csv handles trailing empty cell and missing final newline") {
    CsvTable t = parse_csv("a,b\n1,\n2,3");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == "");
    CHECK(t.rows[1][1] == "3");
}

TEST_CASE("csv format/parse round-trips cells byte-exactly") {
    CsvTable t;
    t.header = {"x", "y"};
    t.rows = {{"a,b", "line\nbreak"}, {"quote\"inside", ""}, {" spaced ", "plain"}};
    CsvTable back = parse_csv(format_csv(t));
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
}

TEST_CASE("csv read errors on missing file") {
    CHECK_THROWS_AS(read_csv("/nonexistent/path/data.csv"), IoError);
}

TEST_CASE("csv write/read through disk") {
    testutil::TempDir dir("csv");
    CsvTable t;
    t.header = {"k", "v"};
    t.rows = {{"alpha", "1"}, {"beta", "2"}};
    write_csv(dir.path() / "t.csv", t);
    CsvTable back = read_csv(dir.path() / "t.csv");
    CHECK(back.rows == t.rows);
}

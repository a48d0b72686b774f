#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "polyrad/error.hpp"
#include "polyrad/io.hpp"
#include "support.hpp"

using namespace polyrad;

namespace {

ErrorCode parse_error_code(const std::string& text)
{
    try {
        io::parse_polytope(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("accepted: " << text);
    return ErrorCode::MalformedProblem;
}

}  // namespace

TEST_CASE("parse V and H files")
{
    const Body v = io::parse_polytope(R"({"dim": 2, "rep": "V", "points": [[0, 0], [1, 0], [0, 1.5]]})");
    REQUIRE(v.native() == Representation::V);
    CHECK(v.v().size() == 3);
    CHECK(v.v().points[2][1] == 1.5);

    const Body h = io::parse_polytope(R"({"dim": 1, "rep": "H", "normals": [[1], [-1]], "offsets": [2, 0.5]})");
    REQUIRE(h.native() == Representation::H);
    CHECK(h.h().offsets[1] == 0.5);
    CHECK(support(h, testgen::vec({1.0})) == doctest::Approx(2.0));
}

TEST_CASE("exact files carry rationals")
{
    const Body v = io::parse_polytope(R"({"dim": 2, "rep": "V", "exact": true, "points": [["1/3", "0"], ["-2/3", 1], ["0", "5/7"]]})");
    REQUIRE(v.v().is_exact());
    CHECK(v.v().exact_points[0][0] == Rational(1, 3));
    CHECK(v.v().exact_points[1][1] == Rational(1));
    CHECK(v.v().points[2][1] == doctest::Approx(5.0 / 7.0));

    const Body again = io::parse_polytope(io::format_polytope(v));
    CHECK(again.v().exact_points == v.v().exact_points);

    const Body h = io::parse_polytope(R"({"dim": 1, "rep": "H", "exact": true, "normals": [["2"], ["-1"]], "offsets": ["1/2", "3"]})");
    REQUIRE(h.h().is_exact());
    CHECK(h.h().exact_offsets[0] == Rational(1, 2));
    const Body h2 = io::parse_polytope(io::format_polytope(h));
    CHECK(h2.h().exact_normals == h.h().exact_normals);
    CHECK(h2.h().exact_offsets == h.h().exact_offsets);
}

TEST_CASE("malformed files are rejected")
{
    CHECK(parse_error_code("{not json") == ErrorCode::ParseError);
    CHECK(parse_error_code("[1, 2]") == ErrorCode::ParseError);
    CHECK(parse_error_code(R"({"rep": "V", "points": []})") == ErrorCode::ParseError);
    CHECK(parse_error_code(R"({"dim": 0, "rep": "V", "points": []})") == ErrorCode::ParseError);
    CHECK(parse_error_code(R"({"dim": 2, "rep": "X", "points": []})") == ErrorCode::ParseError);
    CHECK(parse_error_code(R"({"dim": 2, "rep": "V"})") == ErrorCode::ParseError);
    CHECK(parse_error_code(R"({"dim": 2, "rep": "V", "points": [[0, 0], [1]]})") == ErrorCode::DimensionMismatch);
    CHECK(parse_error_code(R"({"dim": 2, "rep": "V", "points": [[0, "a"]]})") == ErrorCode::ParseError);
    CHECK(parse_error_code(R"({"dim": 1, "rep": "H", "normals": [[1]], "offsets": [1, 2]})") == ErrorCode::DimensionMismatch);
    CHECK(parse_error_code(R"({"dim": 1, "rep": "V", "exact": true, "points": [["1/0"]]})") == ErrorCode::ParseError);
    CHECK(parse_error_code(R"({"dim": 1, "rep": "V", "exact": true, "points": [[0.5]]})") == ErrorCode::ParseError);
    CHECK(parse_error_code(R"({"dim": 1, "rep": "V", "exact": "yes", "points": [[1]]})") == ErrorCode::ParseError);

    try {
        io::read_polytope("/nonexistent/file.json");
        FAIL("missing file accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FileNotFound);
    }
}

TEST_CASE("float files round-trip bit for bit")
{
    std::mt19937_64 rng(31);
    const auto dir = std::filesystem::temp_directory_path() / "polyrad_io_test";
    std::filesystem::create_directories(dir);
    for (int i = 0; i < 20; ++i) {
        const int d = 1 + i % 4;
        const auto v = testgen::random_vpolytope(rng, d, 3 + i);
        const auto path = dir / ("v" + std::to_string(i) + ".json");
        io::write_text(path, io::format_polytope(v));
        const Body back = io::read_polytope(path);
        REQUIRE(back.v().size() == v.size());
        for (std::size_t k = 0; k < v.size(); ++k) CHECK(back.v().points[k] == v.points[k]);

        const auto h = testgen::random_hpolytope(rng, d, 2 + i);
        const Body hb = io::parse_polytope(io::format_polytope(Body(h)));
        for (std::size_t k = 0; k < h.size(); ++k) {
            CHECK(hb.h().normals[k] == h.normals[k]);
            CHECK(hb.h().offsets[k] == h.offsets[k]);
        }
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("numbers print with 12 significant digits")
{
    CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(io::format_number(2.0) == "2");
    CHECK(io::format_number(-1.25e-9) == "-1.25e-09");
    CHECK(io::format_number(std::sqrt(2.0)) == "1.41421356237");
}

TEST_CASE("report records round-trip")
{
    audit::InequalityReport r{"bohnenblust", std::sqrt(2.0), 1.5, 1.5 - std::sqrt(2.0), true, false, {{"R", 1.125}, {"s_K", M_PI}}};
    const std::string line = io::format_record(r);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(line.rfind(R"({"name":"bohnenblust","lhs":1.41421356237,"rhs":1.5,)", 0) == 0);

    const auto back = io::parse_record(line);
    CHECK(back.name == r.name);
    CHECK(back.lhs == std::stod(io::format_number(r.lhs)));
    CHECK(back.satisfied == r.satisfied);
    CHECK(back.tight == r.tight);
    REQUIRE(back.digest.size() == 2);
    CHECK(back.digest[1].first == "s_K");
    CHECK(io::format_record(back) == line);

    audit::InequalityReport inf{"x \"quoted\"", INFINITY, -INFINITY, NAN, false, true, {}};
    const auto inf_back = io::parse_record(io::format_record(inf));
    CHECK(inf_back.name == inf.name);
    CHECK(std::isinf(inf_back.lhs));
    CHECK(inf_back.rhs < 0);
    CHECK(std::isnan(inf_back.slack));
    CHECK(io::format_record(inf_back) == io::format_record(inf));

    CHECK_THROWS_AS(io::parse_record(R"({"name": "x"})"), Error);
    CHECK_THROWS_AS(io::parse_record("nope"), Error);
}

TEST_CASE("radii sidecar round-trip")
{
    fixtures::FixtureRadii f;
    f.R = 1.125;
    f.R1 = 5.0 / 6.0;
    f.s = 2.0 / 3.0;
    f.gauge = "C";
    f.formula_source = "partial difference bodies of simplices";
    const auto back = io::parse_radii(io::format_radii(f));
    CHECK(back.R == f.R);
    CHECK(back.R1 == f.R1);
    CHECK(back.s == f.s);
    CHECK_FALSE(back.r.has_value());
    CHECK(back.gauge == "C");
    CHECK(back.formula_source == f.formula_source);
}

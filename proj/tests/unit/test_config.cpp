#include <doctest.h>

#include <sstream>

#include "config.hpp"

using hhcli::Config;
using hhcli::ConfigError;

namespace {

Config parse(const std::string &text)
{
    std::istringstream in(text);
    return Config::parse(in, "test.cfg");
}

std::string error_of(const std::string &text)
{
    try {
        parse(text);
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("basic grammar")
{
    const Config c = parse("# header comment\n\n[analytics]\nn = 3   # trailing comment\nlambda_G = 1/10\n"
                           "degree = {poisson, 5}\ninfectious_period = {fixed, 1}\n");
    CHECK(c.command() == "analytics");
    CHECK(c.integer("n") == 3);
    CHECK(c.number("lambda_G") == doctest::Approx(0.1));
    CHECK(c.degree().family == "poisson");
    CHECK(c.degree().params == std::vector<double>{5.0});
    CHECK(c.period().kind == "fixed");
    CHECK(c.initial_degree() == -1);
    CHECK(c.number_or("missing", 2.5) == 2.5);
}

TEST_CASE("structural errors carry line numbers")
{
    CHECK(error_of("n = 3\n").find("test.cfg:1") != std::string::npos);
    CHECK(error_of("[a]\n[b]\n").find("test.cfg:2") != std::string::npos);
    CHECK(error_of("[a]\nn = 1\nn = 2\n").find("duplicate") != std::string::npos);
    CHECK(error_of("[a]\njunk\n").find("test.cfg:2") != std::string::npos);
    CHECK(error_of("# nothing\n").find("missing [command]") != std::string::npos);
    CHECK(error_of("[a]\nn =\n").find("empty value") != std::string::npos);
}

TEST_CASE("field errors name the field and line")
{
    const Config c = parse("[sweep]\n\nn = three\ndegree = {poison, 5}\n");
    try {
        c.integer("n");
        FAIL("expected an error");
    } catch (const ConfigError &e) {
        const std::string msg = e.what();
        CHECK(msg.find("test.cfg:3") != std::string::npos);
        CHECK(msg.find("'n'") != std::string::npos);
    }
    CHECK_THROWS_AS(c.degree(), ConfigError);
    CHECK_THROWS_AS(c.number("absent"), ConfigError);
    CHECK_THROWS_AS(c.allow_only({"degree"}), ConfigError);
}

TEST_CASE("grids")
{
    const Config c = parse("[x]\na = 1, 2, 3.5\nb = linspace(0, 1, 5)\nc = 2..5\nd = {4, 8}\ne = linspace(3, 3, 1)\n"
                           "f = 1, x\n");
    CHECK(c.grid("a") == std::vector<double>{1.0, 2.0, 3.5});
    CHECK(c.grid("b") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(c.integer_grid("c") == std::vector<std::uint64_t>{2, 3, 4, 5});
    CHECK(c.grid("d") == std::vector<double>{4.0, 8.0});
    CHECK(c.grid("e") == std::vector<double>{3.0});
    CHECK_THROWS_AS(c.grid("f"), ConfigError);
    CHECK_THROWS_AS(c.integer_grid("a"), ConfigError);
}

TEST_CASE("degree, period and initial forms")
{
    const Config c = parse("[x]\ndegree = {power_law, 10, 7/2}\ninfectious_period = {zero_or_infinite, 0.5}\n"
                           "initial = {degree, 4}\nbad_degree = {power_law, 10}\nbad_period = {fixed}\n"
                           "bad_initial = {degree, -1}\nflag = yes\n");
    CHECK(c.degree().params == std::vector<double>{10.0, 3.5});
    CHECK(c.period().param == 0.5);
    CHECK(c.initial_degree() == 4);
    CHECK_THROWS_AS(c.degree("bad_degree"), ConfigError);
    CHECK_THROWS_AS(c.period("bad_period"), ConfigError);
    CHECK_THROWS_AS(c.initial_degree("bad_initial"), ConfigError);
    CHECK(c.boolean_or("flag", false));
}

TEST_CASE("number parsing")
{
    CHECK(hhcli::parse_number("7/2") == 3.5);
    CHECK(hhcli::parse_number(" 1e-3 ") == 0.001);
    CHECK(hhcli::parse_number("+2") == 2.0);
    CHECK_FALSE(hhcli::parse_number("1/0"));
    CHECK_FALSE(hhcli::parse_number("nan"));
    CHECK_FALSE(hhcli::parse_number("abc"));
    CHECK(hhcli::split_list("{a, b ,c}") == std::vector<std::string>{"a", "b", "c"});
}

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hhcli {

// Any problem with the config file or its values. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DegreeSpec {
    std::string family;         // poisson, geometric, geometric_mean, constant, power_law, power_law_cutoff
    std::vector<double> params; // family parameters in config order
};

struct PeriodSpec {
    std::string kind; // fixed, zero_or_infinite, exponential
    double param = 0.0;
};

// Config file grammar:
//
//   # comment             (anything after '#' is ignored)
//   [command]             exactly one section header, before any key
//   key = value           one key per line, no duplicates
//
// Values are numbers (decimal or p/q fractions), booleans, brace lists such
// as {poisson, 5}, or grids: a comma list, linspace(a, b, count) or a..b.
class Config {
public:
    static Config parse(std::istream &in, const std::string &source);
    static Config load(const std::string &path);

    const std::string &command() const { return command_; }
    bool has(std::string_view key) const;

    // Rejects keys outside the allowed set.
    void allow_only(const std::vector<std::string_view> &allowed) const;

    double number(std::string_view key) const;
    double number_or(std::string_view key, double fallback) const;
    std::uint64_t integer(std::string_view key) const;
    std::uint64_t integer_or(std::string_view key, std::uint64_t fallback) const;
    std::optional<std::uint64_t> optional_integer(std::string_view key) const;
    bool boolean_or(std::string_view key, bool fallback) const;
    std::string text_or(std::string_view key, const std::string &fallback) const;

    std::vector<double> grid(std::string_view key) const;
    std::vector<std::uint64_t> integer_grid(std::string_view key) const;

    DegreeSpec degree(std::string_view key = "degree") const;
    PeriodSpec period(std::string_view key = "infectious_period") const;
    // -1 for a uniformly chosen initial infective, otherwise its degree.
    long long initial_degree(std::string_view key = "initial") const;

    [[noreturn]] void fail(std::string_view key, const std::string &message) const;

private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    const Entry &entry(std::string_view key) const;

    std::string source_;
    std::string command_;
    std::map<std::string, Entry, std::less<>> entries_;
};

// Helpers shared with the parser tests.
std::vector<std::string> split_list(std::string_view text);
std::optional<double> parse_number(std::string_view text);

} // namespace hhcli

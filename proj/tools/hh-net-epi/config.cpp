#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace hhcli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key)
{
    return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
}

std::optional<double> parse_plain(std::string_view text)
{
    double value = 0.0;
    const char *end = text.data() + text.size();
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value))
        return std::nullopt;
    return value;
}

std::optional<std::uint64_t> as_integer(double v)
{
    if (v < 0.0 || v != std::floor(v) || v > 9.007199254740992e15)
        return std::nullopt;
    return static_cast<std::uint64_t>(v);
}

} // namespace

std::optional<double> parse_number(std::string_view text)
{
    text = trim(text);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return parse_plain(text);
    const auto num = parse_plain(trim(text.substr(0, slash)));
    const auto den = parse_plain(trim(text.substr(slash + 1)));
    if (!num || !den || *den == 0.0)
        return std::nullopt;
    return *num / *den;
}

std::vector<std::string> split_list(std::string_view text)
{
    text = trim(text);
    if (text.size() >= 2 && text.front() == '{' && text.back() == '}')
        text = trim(text.substr(1, text.size() - 2));
    std::vector<std::string> out;
    if (text.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.emplace_back(trim(text.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

Config Config::parse(std::istream &in, const std::string &source)
{
    Config cfg;
    cfg.source_ = source;
    std::string raw;
    int line_no = 0;
    auto error = [&](const std::string &msg) { return ConfigError(source + ":" + std::to_string(line_no) + ": " + msg); };

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw error("unterminated section header");
            if (!cfg.command_.empty())
                throw error("only one [command] section is allowed");
            const auto name = trim(line.substr(1, line.size() - 2));
            if (!valid_key(name))
                throw error("invalid section name");
            cfg.command_ = std::string(name);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw error("expected 'key = value'");
        if (cfg.command_.empty())
            throw error("key before the [command] section header");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!valid_key(key))
            throw error("invalid key '" + std::string(key) + "'");
        if (value.empty())
            throw error("field '" + std::string(key) + "': empty value");
        if (cfg.entries_.count(key))
            throw error("field '" + std::string(key) + "': duplicate key");
        cfg.entries_.emplace(std::string(key), Entry{std::string(value), line_no});
    }
    if (in.bad())
        throw ConfigError(source + ": read error");
    if (cfg.command_.empty())
        throw ConfigError(source + ": missing [command] section");
    return cfg;
}

Config Config::load(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open config file");
    return parse(in, path);
}

bool Config::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

const Config::Entry &Config::entry(std::string_view key) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw ConfigError(source_ + ": field '" + std::string(key) + "': required but missing");
    return it->second;
}

void Config::fail(std::string_view key, const std::string &message) const
{
    const auto it = entries_.find(key);
    const std::string where = it == entries_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
    throw ConfigError(where + ": field '" + std::string(key) + "': " + message);
}

void Config::allow_only(const std::vector<std::string_view> &allowed) const
{
    for (const auto &[key, e] : entries_)
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail(key, "unknown key for command '" + command_ + "'");
}

double Config::number(std::string_view key) const
{
    const auto v = parse_number(entry(key).value);
    if (!v)
        fail(key, "expected a number, got '" + entry(key).value + "'");
    return *v;
}

double Config::number_or(std::string_view key, double fallback) const { return has(key) ? number(key) : fallback; }

std::uint64_t Config::integer(std::string_view key) const
{
    const auto v = as_integer(number(key));
    if (!v)
        fail(key, "expected a non-negative integer, got '" + entry(key).value + "'");
    return *v;
}

std::uint64_t Config::integer_or(std::string_view key, std::uint64_t fallback) const
{
    return has(key) ? integer(key) : fallback;
}

std::optional<std::uint64_t> Config::optional_integer(std::string_view key) const
{
    if (!has(key))
        return std::nullopt;
    return integer(key);
}

bool Config::boolean_or(std::string_view key, bool fallback) const
{
    if (!has(key))
        return fallback;
    const std::string &v = entry(key).value;
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    fail(key, "expected true or false, got '" + v + "'");
}

std::string Config::text_or(std::string_view key, const std::string &fallback) const
{
    return has(key) ? entry(key).value : fallback;
}

std::vector<double> Config::grid(std::string_view key) const
{
    const std::string &raw = entry(key).value;
    std::string_view text = raw;
    std::vector<double> out;

    if (text.rfind("linspace(", 0) == 0) {
        if (text.back() != ')')
            fail(key, "unterminated linspace(...)");
        const auto args = split_list(text.substr(9, text.size() - 10));
        if (args.size() != 3)
            fail(key, "linspace needs (start, stop, count)");
        const auto a = parse_number(args[0]), b = parse_number(args[1]), c = parse_number(args[2]);
        if (!a || !b || !c || !as_integer(*c) || *c < 1.0)
            fail(key, "linspace arguments must be numbers and a positive integer count");
        const auto count = *as_integer(*c);
        for (std::uint64_t i = 0; i < count; ++i)
            out.push_back(count == 1 ? *a
                          : i + 1 == count
                              ? *b
                              : *a + (*b - *a) * static_cast<double>(i) / static_cast<double>(count - 1));
        return out;
    }

    if (const auto dots = text.find(".."); dots != std::string_view::npos && text.find(',') == std::string_view::npos) {
        const auto a = parse_number(text.substr(0, dots));
        const auto b = parse_number(text.substr(dots + 2));
        if (!a || !b || !as_integer(*a) || !as_integer(*b) || *b < *a)
            fail(key, "range a..b needs integers with a <= b");
        if (*b - *a > 1e7)
            fail(key, "range too long");
        for (auto i = *as_integer(*a); i <= *as_integer(*b); ++i)
            out.push_back(static_cast<double>(i));
        return out;
    }

    for (const auto &item : split_list(text)) {
        const auto v = parse_number(item);
        if (!v)
            fail(key, "grid entry '" + item + "' is not a number");
        out.push_back(*v);
    }
    if (out.empty())
        fail(key, "grid is empty");
    return out;
}

std::vector<std::uint64_t> Config::integer_grid(std::string_view key) const
{
    std::vector<std::uint64_t> out;
    for (double v : grid(key)) {
        const auto i = as_integer(v);
        if (!i)
            fail(key, "grid entries must be non-negative integers");
        out.push_back(*i);
    }
    return out;
}

DegreeSpec Config::degree(std::string_view key) const
{
    const auto items = split_list(entry(key).value);
    if (items.empty())
        fail(key, "expected {family, parameters...}");
    DegreeSpec spec;
    spec.family = items[0];
    for (std::size_t i = 1; i < items.size(); ++i) {
        const auto v = parse_number(items[i]);
        if (!v)
            fail(key, "parameter '" + items[i] + "' is not a number");
        spec.params.push_back(*v);
    }

    std::size_t min_args = 1, max_args = 1;
    if (spec.family == "power_law") {
        min_args = 2;
        max_args = 3;
    } else if (spec.family == "power_law_cutoff") {
        min_args = max_args = 2;
    } else if (spec.family != "poisson" && spec.family != "geometric" && spec.family != "geometric_mean" &&
               spec.family != "constant") {
        fail(key, "unknown degree family '" + spec.family + "'");
    }
    if (spec.params.size() < min_args || spec.params.size() > max_args)
        fail(key, "wrong number of parameters for " + spec.family);
    return spec;
}

PeriodSpec Config::period(std::string_view key) const
{
    const auto items = split_list(entry(key).value);
    if (items.size() != 2)
        fail(key, "expected {kind, parameter}");
    if (items[0] != "fixed" && items[0] != "zero_or_infinite" && items[0] != "exponential")
        fail(key, "unknown infectious period kind '" + items[0] + "'");
    const auto v = parse_number(items[1]);
    if (!v)
        fail(key, "parameter '" + items[1] + "' is not a number");
    return {items[0], *v};
}

long long Config::initial_degree(std::string_view key) const
{
    if (!has(key) || entry(key).value == "uniform")
        return -1;
    const auto items = split_list(entry(key).value);
    if (items.size() != 2 || items[0] != "degree")
        fail(key, "expected 'uniform' or {degree, d}");
    const auto v = parse_number(items[1]);
    if (!v || !as_integer(*v))
        fail(key, "initial degree must be a non-negative integer");
    return static_cast<long long>(*as_integer(*v));
}

} // namespace hhcli

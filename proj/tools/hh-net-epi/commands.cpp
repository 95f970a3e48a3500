#include "commands.hpp"

#include <charconv>
#include <climits>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "config.hpp"

namespace hhcli {

namespace {

using Json = nlohmann::ordered_json;

template <class T, void (*Free)(T *)>
struct Deleter {
    void operator()(T *p) const { Free(p); }
};
using Degree = std::unique_ptr<hhnet_degree, Deleter<hhnet_degree, hhnet_degree_free>>;
using Period = std::unique_ptr<hhnet_period, Deleter<hhnet_period, hhnet_period_free>>;
using Model = std::unique_ptr<hhnet_model, Deleter<hhnet_model, hhnet_model_free>>;
using Network = std::unique_ptr<hhnet_network, Deleter<hhnet_network, hhnet_network_free>>;

void check(hhnet_status status, const std::string &what)
{
    if (status != HHNET_OK)
        throw ApiError(status, what + ": " + hhnet_last_error());
}

bool is_parameter_problem(hhnet_status s)
{
    return s == HHNET_ERR_INVALID_ARGUMENT || s == HHNET_ERR_DOMAIN || s == HHNET_ERR_DEGENERATE;
}

// Re-reports a rejected parameter against the config field that supplied it.
template <class F>
auto blame(const Config &cfg, std::string_view key, F &&body)
{
    try {
        return body();
    } catch (const ApiError &e) {
        if (is_parameter_problem(e.status()))
            cfg.fail(key, e.what());
        throw;
    }
}

std::size_t to_size(const Config &cfg, std::string_view key, double v)
{
    if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
        cfg.fail(key, "expected a non-negative integer parameter");
    return static_cast<std::size_t>(v);
}

Degree make_degree(const Config &cfg, std::string_view key, const DegreeSpec &spec, std::size_t tail_cap)
{
    return blame(cfg, key, [&] {
        hhnet_degree *out = nullptr;
        const auto &p = spec.params;
        hhnet_status s = HHNET_ERR_INTERNAL;
        if (spec.family == "poisson")
            s = hhnet_degree_poisson(p[0], &out);
        else if (spec.family == "geometric")
            s = hhnet_degree_geometric(p[0], &out);
        else if (spec.family == "geometric_mean")
            s = hhnet_degree_geometric_mean(p[0], &out);
        else if (spec.family == "constant")
            s = hhnet_degree_constant(to_size(cfg, key, p[0]), &out);
        else if (spec.family == "power_law")
            s = hhnet_degree_power_law(to_size(cfg, key, p[0]), p[1], p.size() > 2 ? to_size(cfg, key, p[2]) : 0,
                                       tail_cap, &out);
        else if (spec.family == "power_law_cutoff")
            s = hhnet_degree_power_law_cutoff(p[0], p[1], tail_cap, &out);
        check(s, "degree distribution");
        return Degree(out);
    });
}

Period make_period(const Config &cfg)
{
    const PeriodSpec spec = cfg.period();
    return blame(cfg, "infectious_period", [&] {
        hhnet_period *out = nullptr;
        hhnet_status s;
        if (spec.kind == "fixed")
            s = hhnet_period_fixed(spec.param, &out);
        else if (spec.kind == "zero_or_infinite")
            s = hhnet_period_zero_or_infinite(spec.param, &out);
        else
            s = hhnet_period_exponential(spec.param, &out);
        check(s, "infectious period");
        return Period(out);
    });
}

const std::vector<std::string_view> kModelKeys = {"n",       "lambda_L", "lambda_G", "degree",  "infectious_period",
                                                  "initial", "seed",     "mc_draws", "tail_cap"};

std::vector<std::string_view> keys_with(std::vector<std::string_view> extra)
{
    extra.insert(extra.end(), kModelKeys.begin(), kModelKeys.end());
    return extra;
}

int household_size(const Config &cfg)
{
    const auto n = cfg.integer("n");
    if (n < 1 || n > INT_MAX)
        cfg.fail("n", "household size must be a positive integer");
    return static_cast<int>(n);
}

// Everything needed to build models from one config.
struct ModelContext {
    const Config &cfg;
    std::optional<std::uint64_t> seed;
    std::size_t tail_cap = 0;
    Period period;
    bool monte_carlo = false;

    ModelContext(const Config &c, const RunOptions &options)
        : cfg(c), seed(options.seed ? options.seed : c.optional_integer("seed")),
          tail_cap(c.integer_or("tail_cap", 0)), period(make_period(c)),
          monte_carlo(c.period().kind == "exponential")
    {
        if (monte_carlo && !seed)
            cfg.fail("infectious_period", "exponential periods use Monte Carlo PGFs, so a seed is required");
    }

    Model model(int n, double lambda_L, double lambda_G, const hhnet_degree *degree) const
    {
        hhnet_model *raw = nullptr;
        const hhnet_status s = hhnet_model_create(n, lambda_L, lambda_G, degree, period.get(), &raw);
        if (is_parameter_problem(s)) {
            const std::string message = hhnet_last_error();
            for (const std::string_view key : {"lambda_L", "lambda_G", "n"})
                if (message.rfind(key, 0) == 0 && cfg.has(key))
                    cfg.fail(key, message);
            throw ConfigError(cfg.command() + ": model parameters rejected: " + message);
        }
        check(s, "model");
        Model m(raw);
        const long long initial = cfg.initial_degree();
        check(hhnet_model_set_initial_degree(m.get(), initial), "initial infective");
        if (monte_carlo)
            blame(cfg, "mc_draws", [&] {
                check(hhnet_model_set_monte_carlo(m.get(), cfg.integer_or("mc_draws", 1000000), *seed),
                      "Monte Carlo options");
                return 0;
            });
        return m;
    }

    // Model from the n / lambda / degree keys.
    Model standard_model(Degree &degree_out) const
    {
        degree_out = make_degree(cfg, "degree", cfg.degree(), tail_cap);
        return model(household_size(cfg), cfg.number("lambda_L"), cfg.number_or("lambda_G", 0.0), degree_out.get());
    }

    std::uint64_t required_seed() const
    {
        if (!seed)
            throw ConfigError(cfg.command() + " is stochastic: set 'seed' in the config or pass --seed");
        return *seed;
    }
};

hhnet_analytics_result analyze(const hhnet_model *model)
{
    hhnet_analytics_result r{};
    check(hhnet_analyze(model, &r), "analytics");
    return r;
}

class Csv {
public:
    explicit Csv(const std::vector<std::string> &header) { row(header); }
    void row(const std::vector<std::string> &cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                text_ += ',';
            text_ += quote(cells[i]);
        }
        text_ += '\n';
    }
    const std::string &text() const { return text_; }

private:
    static std::string quote(const std::string &cell)
    {
        if (cell.find_first_of(",\"\n\r") == std::string::npos)
            return cell;
        std::string out = "\"";
        for (char c : cell) {
            if (c == '"')
                out += '"';
            out += c;
        }
        return out + '"';
    }
    std::string text_;
};

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out)
        throw ApiError(HHNET_ERR_IO, "cannot write " + path);
}

void emit(const RunOptions &options, const std::string &text)
{
    if (options.out_path)
        write_file(*options.out_path, text);
    else
        std::cout << text << std::flush;
}

std::string json_text(const Json &j) { return j.dump(2) + "\n"; }

Json optional_number(bool present, double value) { return present ? Json(value) : Json(nullptr); }

// ---- commands --------------------------------------------------------

void cmd_analytics(const Config &cfg, const RunOptions &options)
{
    cfg.allow_only(kModelKeys);
    const ModelContext ctx(cfg, options);
    Degree degree;
    const Model model = ctx.standard_model(degree);
    const hhnet_analytics_result r = analyze(model.get());

    Json j;
    j["r_star"] = r.r_star;
    j["sigma"] = r.sigma;
    j["xi"] = r.xi;
    j["p_major"] = r.p_major;
    j["z_final"] = r.z_final;
    j["method_tag"] = hhnet_method_name(r.method);
    if (r.pathological)
        std::cerr << "warning: degenerate branching process (offspring PGF is the identity)\n";
    emit(options, json_text(j));
}

void cmd_critical_curve(const Config &cfg, const RunOptions &options)
{
    cfg.allow_only({"n_values", "lambda_L_grid", "lambda_L_times_nminus1_grid", "degree", "infectious_period", "seed",
                    "mc_draws", "tail_cap"});
    const bool scaled = cfg.has("lambda_L_times_nminus1_grid");
    if (scaled == cfg.has("lambda_L_grid"))
        throw ConfigError(cfg.command() + ": give exactly one of lambda_L_grid or lambda_L_times_nminus1_grid");
    const ModelContext ctx(cfg, options);
    const std::vector<std::uint64_t> ns = cfg.integer_grid("n_values");
    const std::vector<double> grid = cfg.grid(scaled ? "lambda_L_times_nminus1_grid" : "lambda_L_grid");
    const Degree degree = make_degree(cfg, "degree", cfg.degree(), ctx.tail_cap);

    Csv csv({"n", "lambda_L", "lambda_L_times_nminus1", "critical_lambda_G"});
    for (const std::uint64_t n : ns) {
        if (n < 1 || n > INT_MAX)
            cfg.fail("n_values", "household sizes must be positive integers");
        if (scaled && n < 2)
            cfg.fail("n_values", "lambda_L_times_nminus1_grid needs household sizes of at least 2");
        for (const double v : grid) {
            const double nm1 = static_cast<double>(n - 1);
            const double lambda_L = scaled ? v / nm1 : v;
            const double product = scaled ? v : v * nm1;
            const Model model = ctx.model(static_cast<int>(n), lambda_L, 0.0, degree.get());
            double critical = 0.0;
            const hhnet_status s = hhnet_critical_lambda_g(model.get(), &critical);
            std::string cell;
            if (s == HHNET_ERR_NO_ROOT)
                std::cerr << "warning: no critical lambda_G for n=" << n << ", lambda_L=" << format_number(lambda_L)
                          << ": " << hhnet_last_error() << "\n";
            else {
                check(s, "critical lambda_G");
                cell = format_number(critical);
            }
            csv.row({std::to_string(n), format_number(lambda_L), format_number(product), cell});
        }
    }
    emit(options, csv.text());
}

void cmd_sweep(const Config &cfg, const RunOptions &options)
{
    cfg.allow_only({"n", "lambda_L", "lambda_G", "infectious_period", "initial", "seed", "mc_draws", "tail_cap",
                    "poisson_means", "geometric_means", "constant_degrees", "power_law_kstar", "power_law_exponent",
                    "power_law_flat_start", "power_law_cutoff_kappa", "power_law_cutoff_exponent"});
    const ModelContext ctx(cfg, options);
    const int n = household_size(cfg);
    const double lambda_L = cfg.number("lambda_L");
    const double lambda_G = cfg.number("lambda_G");

    struct Family {
        const char *name;
        const char *grid_key;
    };
    const Family families[] = {{"poisson", "poisson_means"},
                               {"geometric", "geometric_means"},
                               {"constant", "constant_degrees"},
                               {"power_law", "power_law_kstar"},
                               {"power_law_cutoff", "power_law_cutoff_kappa"}};
    bool any = false;
    for (const auto &f : families)
        any = any || cfg.has(f.grid_key);
    if (!any)
        throw ConfigError(cfg.command() + ": no degree-family grid given");

    const double pl_exponent = cfg.number_or("power_law_exponent", 3.5);
    const double pl_flat = cfg.number_or("power_law_flat_start", 0.0);
    const double plc_exponent = cfg.number_or("power_law_cutoff_exponent", 1.5);

    Csv csv({"family", "param", "mu_D", "p_major"});
    for (const auto &f : families) {
        if (!cfg.has(f.grid_key))
            continue;
        const std::string family = f.name;
        for (const double param : cfg.grid(f.grid_key)) {
            DegreeSpec spec;
            if (family == "poisson")
                spec = {"poisson", {param}};
            else if (family == "geometric")
                spec = {"geometric_mean", {param}};
            else if (family == "constant")
                spec = {"constant", {param}};
            else if (family == "power_law")
                spec = {"power_law", {param, pl_exponent, pl_flat}};
            else
                spec = {"power_law_cutoff", {param, plc_exponent}};
            const Degree degree = make_degree(cfg, f.grid_key, spec, ctx.tail_cap);
            const Model model = ctx.model(n, lambda_L, lambda_G, degree.get());
            double mean = 0.0;
            check(hhnet_degree_moments(degree.get(), &mean, nullptr), "degree moments");
            const hhnet_analytics_result r = analyze(model.get());
            csv.row({family, format_number(param), format_number(mean), format_number(r.p_major)});
        }
    }
    emit(options, csv.text());
}

hhnet_batch_options batch_options(const Config &cfg, std::uint64_t seed)
{
    hhnet_batch_options o = hhnet_batch_options_default();
    o.replicates = cfg.integer_or("replicates", 2000);
    o.cutoff_fraction = cfg.number_or("cutoff", o.cutoff_fraction);
    o.threads = static_cast<unsigned>(cfg.integer_or("threads", 0));
    o.seed = seed;
    if (o.replicates < 1)
        cfg.fail("replicates", "need at least one replicate");
    if (!(o.cutoff_fraction >= 0.0 && o.cutoff_fraction <= 1.0))
        cfg.fail("cutoff", "cutoff must lie in [0, 1]");
    return o;
}

void cmd_convergence(const Config &cfg, const RunOptions &options)
{
    cfg.allow_only(keys_with({"m_grid", "replicates", "cutoff", "threads"}));
    const ModelContext ctx(cfg, options);
    const std::uint64_t seed = ctx.required_seed();
    Degree degree;
    const Model model = ctx.standard_model(degree);
    const std::vector<std::uint64_t> ms =
        cfg.has("m_grid") ? cfg.integer_grid("m_grid") : std::vector<std::uint64_t>{100, 200, 400, 800, 1000};
    hhnet_batch_options opts = batch_options(cfg, seed);
    const hhnet_analytics_result asymptotic = analyze(model.get());

    Csv csv({"m", "p_hat", "p_se", "z_hat", "z_se", "p_asymptotic", "z_asymptotic"});
    for (const std::uint64_t m : ms) {
        if (m < 1)
            cfg.fail("m_grid", "household counts must be positive");
        opts.households = m;
        hhnet_batch_summary s{};
        check(hhnet_run_batch(model.get(), &opts, &s, nullptr), "simulation batch");
        csv.row({std::to_string(m), format_number(s.p_hat), format_number(s.p_se),
                 s.has_z ? format_number(s.z_hat) : "", s.has_z_se ? format_number(s.z_se) : "",
                 format_number(asymptotic.p_major), format_number(asymptotic.z_final)});
    }
    emit(options, csv.text());
}

void cmd_simulate(const Config &cfg, const RunOptions &options)
{
    cfg.allow_only(keys_with({"households", "replicates", "cutoff", "threads", "fixed_network", "replicates_csv",
                              "network_dump_prefix"}));
    const ModelContext ctx(cfg, options);
    const std::uint64_t seed = ctx.required_seed();
    Degree degree;
    const Model model = ctx.standard_model(degree);
    hhnet_batch_options opts = batch_options(cfg, seed);
    opts.households = cfg.integer_or("households", opts.households);
    opts.fixed_network = cfg.boolean_or("fixed_network", false) ? 1 : 0;
    if (opts.households < 1)
        cfg.fail("households", "need at least one household");

    std::vector<hhnet_replicate_record> records(cfg.has("replicates_csv") ? opts.replicates : 0);
    hhnet_batch_summary s{};
    check(hhnet_run_batch(model.get(), &opts, &s, records.empty() ? nullptr : records.data()), "simulation batch");

    Json j;
    j["replicates"] = s.replicates;
    j["households"] = opts.households;
    j["cutoff_fraction"] = s.cutoff_fraction;
    j["n_major"] = s.n_major;
    j["p_hat"] = s.p_hat;
    j["p_se"] = s.p_se;
    j["z_hat"] = optional_number(s.has_z, s.z_hat);
    j["z_se"] = optional_number(s.has_z_se, s.z_se);

    if (!records.empty()) {
        Csv csv({"replicate", "final_size", "households_infected", "is_major"});
        for (const auto &r : records)
            csv.row({std::to_string(r.replicate), std::to_string(r.final_size), std::to_string(r.households_infected),
                     r.is_major ? "1" : "0"});
        write_file(cfg.text_or("replicates_csv", ""), csv.text());
    }

    if (cfg.has("network_dump_prefix")) {
        const std::string prefix = cfg.text_or("network_dump_prefix", "");
        hhnet_network *raw = nullptr;
        check(hhnet_network_build(opts.households, household_size(cfg), degree.get(), seed, 0, &raw), "network");
        const Network net(raw);
        check(hhnet_network_write_csv(net.get(), (prefix + "_edges.csv").c_str(), (prefix + "_degrees.csv").c_str()),
              "network dump");
        hhnet_imperfections imp{};
        std::size_t edges = 0;
        check(hhnet_network_imperfections(net.get(), &imp), "network statistics");
        check(hhnet_network_edge_count(net.get(), &edges), "network statistics");
        j["network"] = {{"edges", edges},
                        {"self_loops", imp.self_loops},
                        {"parallel_edges", imp.parallel_edges},
                        {"household_self_loops", imp.household_self_loops},
                        {"household_parallel_edges", imp.household_parallel_edges}};
    }
    emit(options, json_text(j));
}

} // namespace

const std::vector<std::string> &command_names()
{
    static const std::vector<std::string> names = {"analytics", "critical-curve", "sweep", "convergence", "simulate"};
    return names;
}

std::string format_number(double value)
{
    if (value == 0.0)
        value = 0.0; // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void run_command(const std::string &command, const RunOptions &options)
{
    const Config cfg = Config::load(options.config_path);
    if (cfg.command() != command)
        throw ConfigError(options.config_path + ": config section [" + cfg.command() + "] does not match command '" +
                          command + "'");
    if (command == "analytics")
        cmd_analytics(cfg, options);
    else if (command == "critical-curve")
        cmd_critical_curve(cfg, options);
    else if (command == "sweep")
        cmd_sweep(cfg, options);
    else if (command == "convergence")
        cmd_convergence(cfg, options);
    else if (command == "simulate")
        cmd_simulate(cfg, options);
    else
        throw ConfigError("unknown command '" + command + "'");
}

} // namespace hhcli

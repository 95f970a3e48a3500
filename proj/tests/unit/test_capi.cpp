#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "hhnet.h"

TEST_CASE("version and status names")
{
    CHECK(std::string(hhnet_version()) == "1.0.0");
    CHECK(std::string(hhnet_status_name(HHNET_OK)) == "ok");
    CHECK(std::string(hhnet_method_name(HHNET_METHOD_CLOSED_FORM_FIXED)) != "unknown");
}

TEST_CASE("errors set the thread-local message")
{
    hhnet_degree *d = nullptr;
    CHECK(hhnet_degree_poisson(-1.0, &d) == HHNET_ERR_INVALID_ARGUMENT);
    CHECK(d == nullptr);
    CHECK(std::string(hhnet_last_error()).find("mean") != std::string::npos);
    CHECK(hhnet_degree_poisson(2.0, nullptr) == HHNET_ERR_INVALID_ARGUMENT);

    REQUIRE(hhnet_degree_poisson(2.0, &d) == HHNET_OK);
    CHECK(std::string(hhnet_last_error()).empty());
    double v = 0.0;
    CHECK(hhnet_degree_pgf(d, 1.5, &v) == HHNET_ERR_DOMAIN);
    hhnet_degree_free(d);
    hhnet_degree_free(nullptr);
}

TEST_CASE("degree and period handles")
{
    hhnet_degree *d = nullptr;
    REQUIRE(hhnet_degree_power_law(10, 3.5, 0, 0, &d) == HHNET_OK);
    double mean = 0.0, var = 0.0;
    REQUIRE(hhnet_degree_moments(d, &mean, &var) == HHNET_OK);
    CHECK(std::abs(mean - 8.04) < 0.01);
    char buf[64];
    REQUIRE(hhnet_degree_describe(d, buf, sizeof buf) == HHNET_OK);
    CHECK(std::string(buf).rfind("power_law", 0) == 0);
    char tiny[4];
    REQUIRE(hhnet_degree_describe(d, tiny, sizeof tiny) == HHNET_OK);
    CHECK(std::string(tiny) == "pow");
    double p = 0.0;
    REQUIRE(hhnet_degree_pmf(d, 3, &p) == HHNET_OK);
    CHECK(p > 0.0);
    hhnet_degree_free(d);

    hhnet_period *per = nullptr;
    REQUIRE(hhnet_period_exponential(2.0, &per) == HHNET_OK);
    double l = 0.0;
    REQUIRE(hhnet_period_laplace(per, 1.0, &l) == HHNET_OK);
    CHECK(l == doctest::Approx(1.0 / 3.0));
    CHECK(hhnet_period_laplace(per, -1.0, &l) == HHNET_ERR_DOMAIN);
    hhnet_period_free(per);
}

TEST_CASE("household distributions")
{
    hhnet_period *per = nullptr;
    REQUIRE(hhnet_period_fixed(1.0, &per) == HHNET_OK);
    double t[3], m[3];
    REQUIRE(hhnet_local_final_size_dist(3, 1.0, per, t, 3) == HHNET_OK);
    REQUIRE(hhnet_susceptibility_set_dist(3, 1.0, per, m, 3) == HHNET_OK);
    CHECK(t[0] == doctest::Approx(std::exp(-2.0)));
    for (int k = 0; k < 3; ++k)
        CHECK(t[k] == doctest::Approx(m[k]));
    CHECK(hhnet_local_final_size_dist(3, 1.0, per, t, 2) == HHNET_ERR_INVALID_ARGUMENT);
    hhnet_period_free(per);
}

TEST_CASE("model analytics through the C API")
{
    hhnet_degree *d = nullptr;
    hhnet_period *per = nullptr;
    hhnet_model *model = nullptr;
    REQUIRE(hhnet_degree_poisson(5.0, &d) == HHNET_OK);
    REQUIRE(hhnet_period_fixed(1.0, &per) == HHNET_OK);
    REQUIRE(hhnet_model_create(3, 1.0, 0.1, d, per, &model) == HHNET_OK);
    // The model keeps its own copies.
    hhnet_degree_free(d);
    hhnet_period_free(per);

    hhnet_analytics_result r{};
    REQUIRE(hhnet_analyze(model, &r) == HHNET_OK);
    CHECK(std::abs(r.r_star - 1.21723) < 1e-4);
    CHECK(std::abs(r.p_major - r.z_final) < 1e-9);
    CHECK(r.method == HHNET_METHOD_CLOSED_FORM_FIXED);

    double crit = 0.0;
    REQUIRE(hhnet_critical_lambda_g(model, &crit) == HHNET_OK);
    REQUIRE(hhnet_model_set_lambda_global(model, crit) == HHNET_OK);
    double rs = 0.0;
    REQUIRE(hhnet_r_star(model, &rs) == HHNET_OK);
    CHECK(rs == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(hhnet_model_set_lambda_local(model, -1.0) == HHNET_ERR_INVALID_ARGUMENT);
    CHECK(hhnet_model_set_monte_carlo(model, 1, 5) == HHNET_ERR_INVALID_ARGUMENT);
    REQUIRE(hhnet_model_set_initial_degree(model, 4) == HHNET_OK);
    REQUIRE(hhnet_analyze(model, &r) == HHNET_OK);
    hhnet_model_free(model);
}

TEST_CASE("no-root critical value maps to its own status")
{
    hhnet_degree *d = nullptr;
    hhnet_period *per = nullptr;
    hhnet_model *model = nullptr;
    REQUIRE(hhnet_degree_constant(1, &d) == HHNET_OK);
    REQUIRE(hhnet_period_fixed(1.0, &per) == HHNET_OK);
    REQUIRE(hhnet_model_create(1, 0.0, 0.0, d, per, &model) == HHNET_OK);
    double crit = 0.0;
    CHECK(hhnet_critical_lambda_g(model, &crit) == HHNET_ERR_NO_ROOT);
    hhnet_model_free(model);
    hhnet_degree_free(d);
    hhnet_period_free(per);
}

TEST_CASE("batches and networks through the C API")
{
    hhnet_degree *d = nullptr;
    hhnet_period *per = nullptr;
    hhnet_model *model = nullptr;
    REQUIRE(hhnet_degree_poisson(5.0, &d) == HHNET_OK);
    REQUIRE(hhnet_period_fixed(1.0, &per) == HHNET_OK);
    REQUIRE(hhnet_model_create(3, 1.0, 0.1, d, per, &model) == HHNET_OK);

    hhnet_batch_options opts = hhnet_batch_options_default();
    CHECK(opts.households == 1000);
    CHECK(opts.replicates == 2000);
    CHECK(opts.cutoff_fraction == 0.15);
    opts.households = 200;
    opts.replicates = 50;
    opts.seed = 3;
    std::vector<hhnet_replicate_record> recs(opts.replicates);
    hhnet_batch_summary s{};
    REQUIRE(hhnet_run_batch(model, &opts, &s, recs.data()) == HHNET_OK);
    CHECK(s.replicates == 50);
    std::size_t majors = 0;
    for (const auto &r : recs)
        majors += r.is_major;
    CHECK(majors == s.n_major);

    hhnet_network *net = nullptr;
    REQUIRE(hhnet_network_build(100, 3, d, 9, 0, &net) == HHNET_OK);
    std::size_t edges = 0;
    REQUIRE(hhnet_network_edge_count(net, &edges) == HHNET_OK);
    CHECK(edges > 500);
    hhnet_imperfections imp{};
    REQUIRE(hhnet_network_imperfections(net, &imp) == HHNET_OK);
    const std::string e = "capi_test_edges.csv", g = "capi_test_degrees.csv";
    REQUIRE(hhnet_network_write_csv(net, e.c_str(), g.c_str()) == HHNET_OK);
    std::ifstream in(e);
    std::string header;
    std::getline(in, header);
    CHECK(header == "src,dst");
    std::remove(e.c_str());
    std::remove(g.c_str());
    CHECK(hhnet_network_write_csv(net, "/nonexistent-dir/x.csv", "/nonexistent-dir/y.csv") == HHNET_ERR_IO);
    hhnet_network_free(net);

    hhnet_model_free(model);
    hhnet_degree_free(d);
    hhnet_period_free(per);
}

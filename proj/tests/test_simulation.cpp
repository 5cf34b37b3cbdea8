#include <doctest.h>

#include <cmath>

#include "fpls/errors.hpp"
#include "fpls/simulation.hpp"

using namespace fpls::sim;

TEST_CASE("class mean curves vanish at the endpoints and cross at 1/2") {
    for (int k = 1; k <= 3; ++k) {
        CHECK(mean_curve(k, 0.0) == 0.0);
        CHECK(mean_curve(k, 1.0) == 0.0);
        // exponents sum to 6, so every class takes 0.5^6 at the midpoint
        CHECK(mean_curve(k, 0.5) == doctest::Approx(0.015625).epsilon(1e-12));
    }
    SUBCASE("classes separate away from the midpoint") {
        // frozen from a long-double evaluation of exp(e1 ln t + e2 ln(1-t))
        const auto highprec = [](double e1, double t) {
            const long double lt = std::log(static_cast<long double>(t));
            const long double l1 = std::log(1.0L - static_cast<long double>(t));
            return static_cast<double>(
                std::exp(static_cast<long double>(e1) * lt + (6.0L - e1) * l1));
        };
        CHECK(mean_curve(1, 0.2) == doctest::Approx(highprec(0.2, 0.2)).epsilon(1e-12));
        CHECK(mean_curve(3, 0.2) == doctest::Approx(highprec(0.6, 0.2)).epsilon(1e-12));
        CHECK(std::abs(mean_curve(1, 0.2) - mean_curve(3, 0.2)) > 0.05);
    }
    SUBCASE("domain and class index are validated") {
        CHECK_THROWS_AS(mean_curve(1, -0.1), fpls::ParameterError);
        CHECK_THROWS_AS(mean_curve(1, 1.1), fpls::ParameterError);
        CHECK_THROWS_AS(mean_curve(0, 0.5), fpls::ParameterError);
        CHECK_THROWS_AS(mean_curve(4, 0.5), fpls::ParameterError);
    }
}

TEST_CASE("generation is deterministic in the seed") {
    SimConfig config;
    config.subjects = 6;
    config.train_subjects = 4;
    config.test_subjects = 2;
    config.seed = 123;
    const fpls::CurveDataset a = generate(config);
    const fpls::CurveDataset b = generate(config);
    REQUIRE(a.curve_count() == b.curve_count());
    for (int r = 0; r < a.curve_count(); ++r) {
        CHECK(a.curve_at(r).t == b.curve_at(r).t);
        CHECK(a.curve_at(r).value == b.curve_at(r).value);
    }
    config.seed = 124;
    const fpls::CurveDataset c = generate(config);
    CHECK(a.curve_at(0).value != c.curve_at(0).value);
}

TEST_CASE("noise-free curves equal the class means and share endpoints") {
    SimConfig config;
    config.subjects = 4;
    config.train_subjects = 4;
    config.test_subjects = 0;
    config.sigma_eps = 0.0;
    config.sigma_s = 0.0;
    config.mu_max = 0.0;
    const fpls::CurveDataset ds = generate(config);
    for (int s = 0; s < 4; ++s) {
        for (int k = 0; k < 3; ++k) {
            const auto& c = ds.curve(s, k);
            for (std::size_t j = 0; j < c.t.size(); ++j)
                CHECK(c.value[j] == mean_curve(k + 1, c.t[j]));
        }
    }
    SUBCASE("with the subject effect on, endpoints stay zero") {
        SimConfig cfg = config;
        cfg.mu_max = 0.05;
        cfg.sigma_s = 0.02;
        const fpls::CurveDataset with_effect = generate(cfg);
        for (int r = 0; r < with_effect.curve_count(); ++r) {
            CHECK(with_effect.curve_at(r).value.front() == 0.0);
            CHECK(std::abs(with_effect.curve_at(r).value.back()) < 1e-15);
        }
    }
}

TEST_CASE("one amplitude per subject correlates its conditions") {
    // with the noise nearly off, residual curves of one subject should be
    // almost perfectly correlated across conditions; at the default noise the
    // correlation is weak
    const auto mean_corr = [](double sigma_eps) {
        SimConfig config;
        config.subjects = 40;
        config.train_subjects = 40;
        config.test_subjects = 0;
        config.sigma_eps = sigma_eps;
        config.seed = 7;
        const fpls::CurveDataset ds = generate(config);
        double total = 0.0;
        for (int s = 0; s < config.subjects; ++s) {
            const auto& c1 = ds.curve(s, 0);
            const auto& c2 = ds.curve(s, 1);
            const std::size_t n = c1.t.size();
            std::vector<double> r1(n), r2(n);
            for (std::size_t j = 0; j < n; ++j) {
                r1[j] = c1.value[j] - mean_curve(1, c1.t[j]);
                r2[j] = c2.value[j] - mean_curve(2, c2.t[j]);
            }
            double m1 = 0, m2 = 0;
            for (std::size_t j = 0; j < n; ++j) {
                m1 += r1[j];
                m2 += r2[j];
            }
            m1 /= static_cast<double>(n);
            m2 /= static_cast<double>(n);
            double s12 = 0, s11 = 0, s22 = 0;
            for (std::size_t j = 0; j < n; ++j) {
                s12 += (r1[j] - m1) * (r2[j] - m2);
                s11 += (r1[j] - m1) * (r1[j] - m1);
                s22 += (r2[j] - m2) * (r2[j] - m2);
            }
            total += s12 / std::sqrt(s11 * s22);
        }
        return total / config.subjects;
    };
    const double low_noise = mean_corr(0.001);
    const double default_noise = mean_corr(0.2);
    CHECK(low_noise > 0.8);            // shared amplitude dominates
    CHECK(default_noise < low_noise);  // noise dilutes it
}

TEST_CASE("disabling the subject effect removes the shared term") {
    SimConfig config;
    config.subjects = 3;
    config.train_subjects = 3;
    config.test_subjects = 0;
    config.sigma_eps = 0.0;
    config.subject_effect = false;
    const fpls::CurveDataset ds = generate(config);
    for (int r = 0; r < ds.curve_count(); ++r) {
        const auto& c = ds.curve_at(r);
        const int k = r % 3 + 1;
        for (std::size_t j = 0; j < c.t.size(); ++j)
            CHECK(c.value[j] == mean_curve(k, c.t[j]));
    }
}

TEST_CASE("config validation") {
    SimConfig config;
    SUBCASE("split must cover the pool") {
        config.train_subjects = 10;
        CHECK_THROWS_AS(config.validate(), fpls::ParameterError);
    }
    SUBCASE("negative sd rejected") {
        config.sigma_eps = -0.1;
        CHECK_THROWS_AS(config.validate(), fpls::ParameterError);
    }
    SUBCASE("defaults are valid") { config.validate(); }
}

TEST_CASE("default grids") {
    const auto lambdas = default_lambda_grid();
    REQUIRE(lambdas.size() == 18);
    CHECK(lambdas.front() == 0.0);
    CHECK(lambdas[1] == doctest::Approx(1e-4));
    CHECK(lambdas.back() == doctest::Approx(1e4));
    // the published selections 0.41 and 2.87 are inside the covered range
    CHECK(lambdas[1] < 0.41);
    CHECK(lambdas.back() > 2.87);
    const auto qs = default_q_grid();
    CHECK(qs == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
}

TEST_CASE("quantile uses linear interpolation") {
    const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 4.0);
    CHECK(quantile(v, 0.5) == doctest::Approx(2.5));
    CHECK(quantile(v, 0.25) == doctest::Approx(1.75));
    CHECK_THROWS_AS(quantile({}, 0.5), fpls::ParameterError);
    CHECK_THROWS_AS(quantile(v, 1.5), fpls::ParameterError);
}

TEST_CASE("single-replicate benchmark is reproducible") {
    SimConfig config;
    config.subjects = 8;
    config.train_subjects = 6;
    config.test_subjects = 2;
    config.seed = 99;
    BenchOptions options;
    options.interior_knots = 4;
    options.lambda_grid = {0.0, 1.0};
    options.q_grid = {1, 2};
    const std::vector<Method> methods{Method::lda_mpls, Method::flda_mfpls,
                                      Method::flda_penmfpls};
    const auto a = run_benchmark(config, 1, methods, options);
    const auto b = run_benchmark(config, 1, methods, options);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].ok);
        CHECK(a[i].lambda == b[i].lambda);
        CHECK(a[i].q == b[i].q);
        CHECK(a[i].ccr_cv == b[i].ccr_cv);
        CHECK(a[i].ccr_test == b[i].ccr_test);
    }
    SUBCASE("records are grouped by replicate in method order") {
        const auto two = run_benchmark(config, 2, methods, options);
        REQUIRE(two.size() == 6);
        CHECK(two[0].replicate == 0);
        CHECK(two[3].replicate == 1);
        CHECK(method_name(two[4].method) == "FLDA-MFPLS");
    }
}

TEST_CASE("benchmark records summarize into quartiles") {
    std::vector<BenchRecord> records;
    for (int i = 0; i < 5; ++i) {
        BenchRecord r;
        r.replicate = i;
        r.method = Method::lda_mpls;
        r.q = i + 1;
        r.ccr_cv = 0.9;
        r.ccr_test = 0.5 + 0.1 * i;
        records.push_back(r);
    }
    const auto s = summarize(records);
    REQUIRE(s.size() == 3);  // one method, three metrics
    CHECK(s[0].metric == "ccr_cv");
    CHECK(s[1].metric == "ccr_test");
    CHECK(s[1].median == doctest::Approx(0.7));
    CHECK(s[1].q1 == doctest::Approx(0.6));
    CHECK(s[2].metric == "q");
    CHECK(s[2].max == 5.0);
}

TEST_CASE("benchmark shows the published selection signatures") {
    // moderate replicate count; the acceptance suite runs the full check
    SimConfig config;
    config.seed = 7;
    BenchOptions options;
    options.lambda_grid = default_lambda_grid();
    options.q_grid = default_q_grid();
    options.threads = 4;
    const std::vector<Method> methods{Method::lda_mpls, Method::flda_mfpls,
                                      Method::flda_penmfpls};
    const auto records = run_benchmark(config, 15, methods, options);
    std::vector<double> cv_mpls, q_mpls, q_mf, q_pen, test_pen, test_mpls;
    for (const auto& r : records) {
        REQUIRE(r.ok);
        if (r.method == Method::lda_mpls) {
            cv_mpls.push_back(r.ccr_cv);
            q_mpls.push_back(r.q);
            test_mpls.push_back(r.ccr_test);
        } else if (r.method == Method::flda_mfpls) {
            q_mf.push_back(r.q);
        } else {
            q_pen.push_back(r.q);
            test_pen.push_back(r.ccr_test);
        }
    }
    // the multivariate baseline overfits the curve-level cross-validation
    CHECK(quantile(cv_mpls, 0.5) >= 0.95);
    // and pays for it on the held-out subjects
    CHECK(quantile(test_pen, 0.5) > quantile(test_mpls, 0.5));
    // the functional variants get away with fewer or similar components
    CHECK(quantile(q_mf, 0.5) <= quantile(q_mpls, 0.5));
    CHECK(quantile(q_pen, 0.5) <= quantile(q_mpls, 0.5));
    // selected component counts stay in the single digits
    CHECK(quantile(q_pen, 0.5) >= 1.0);
    CHECK(quantile(q_pen, 0.5) <= 8.0);
}

TEST_CASE("benchmark results do not depend on the thread count") {
    SimConfig config;
    config.subjects = 6;
    config.train_subjects = 4;
    config.test_subjects = 2;
    config.seed = 55;
    BenchOptions options;
    options.interior_knots = 4;
    options.lambda_grid = {0.0, 1.0};
    options.q_grid = {1, 2};
    const std::vector<Method> methods{Method::flda_penmfpls};
    BenchOptions serial = options;
    serial.threads = 1;
    BenchOptions parallel = options;
    parallel.threads = 4;
    const auto a = run_benchmark(config, 6, methods, serial);
    const auto b = run_benchmark(config, 6, methods, parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].ccr_cv == b[i].ccr_cv);
        CHECK(a[i].ccr_test == b[i].ccr_test);
        CHECK(a[i].lambda == b[i].lambda);
    }
}

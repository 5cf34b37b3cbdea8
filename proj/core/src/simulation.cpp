#include "fpls/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "fpls/errors.hpp"
#include "fpls/parallel.hpp"
#include "fpls/rng.hpp"

namespace fpls::sim {

void SimConfig::validate() const {
    if (subjects < 1) throw ParameterError("subject pool must be >= 1");
    if (conditions < 2 || conditions > 3)
        throw ParameterError("the generator defines class means for 2 or 3 conditions");
    if (grid_size < 2) throw ParameterError("grid size must be >= 2");
    if (sigma_eps < 0.0 || sigma_s < 0.0)
        throw ParameterError("standard deviations must be nonnegative");
    if (mu_max < mu_min) throw ParameterError("mu range is inverted");
    if (train_subjects < 0 || test_subjects < 0 || train_subjects + test_subjects != subjects)
        throw ParameterError("train + test subjects must equal the pool (" +
                             std::to_string(subjects) + ")");
}

double mean_curve(int k, double t) {
    if (k < 1 || k > 3) throw ParameterError("class index must be in 1..3");
    if (t < 0.0 || t > 1.0) throw ParameterError("t outside [0, 1]");
    if (t == 0.0 || t == 1.0) return 0.0;
    const double e1 = static_cast<double>(k) / 5.0;
    return std::pow(t, e1) * std::pow(1.0 - t, 6.0 - e1);
}

CurveDataset generate(const SimConfig& config) {
    config.validate();
    Rng rng(config.seed);
    const int n = config.subjects;
    const int k_count = config.conditions;
    const int g = config.grid_size;

    std::vector<double> grid(static_cast<std::size_t>(g));
    for (int j = 0; j < g; ++j) grid[static_cast<std::size_t>(j)] = static_cast<double>(j) / (g - 1);

    const int width = n >= 100 ? 3 : 2;
    std::vector<Curve> curves;
    curves.reserve(static_cast<std::size_t>(n) * k_count);
    for (int i = 0; i < n; ++i) {
        const double mu = rng.uniform(config.mu_min, config.mu_max);
        const double amplitude = rng.normal(mu, config.sigma_s);
        char name[16];
        std::snprintf(name, sizeof name, "S%0*d", width, i + 1);
        for (int k = 1; k <= k_count; ++k) {
            Curve c;
            c.subject = name;
            c.condition = std::to_string(k);
            c.t = grid;
            c.value.resize(static_cast<std::size_t>(g));
            for (int j = 0; j < g; ++j) {
                const double t = grid[static_cast<std::size_t>(j)];
                double v = mean_curve(k, t);
                if (config.subject_effect) v += amplitude * std::sin(t * std::numbers::pi);
                v += rng.normal(0.0, config.sigma_eps);
                c.value[static_cast<std::size_t>(j)] = v;
            }
            curves.push_back(std::move(c));
        }
    }
    return CurveDataset::from_curves(std::move(curves));
}

std::pair<CurveDataset, CurveDataset> generate_split(const SimConfig& config) {
    const CurveDataset all = generate(config);
    std::vector<int> train_idx, test_idx;
    for (int i = 0; i < config.train_subjects; ++i) train_idx.push_back(i);
    for (int i = config.train_subjects; i < config.subjects; ++i) test_idx.push_back(i);
    return {all.subset(train_idx), all.subset(test_idx)};
}

std::string method_name(Method m) {
    switch (m) {
        case Method::lda_mpls: return "LDA-MPLS";
        case Method::flda_mfpls: return "FLDA-MFPLS";
        case Method::flda_penmfpls: return "FLDA-PenMFPLS";
    }
    throw ParameterError("unknown method");
}

Method method_from_name(const std::string& name) {
    if (name == "LDA-MPLS") return Method::lda_mpls;
    if (name == "FLDA-MFPLS") return Method::flda_mfpls;
    if (name == "FLDA-PenMFPLS") return Method::flda_penmfpls;
    throw ParameterError("unknown method '" + name + "'");
}

std::vector<double> default_lambda_grid() {
    std::vector<double> grid{0.0};
    for (int i = 0; i < 17; ++i) grid.push_back(std::pow(10.0, -4.0 + 0.5 * i));
    return grid;
}

std::vector<int> default_q_grid() {
    std::vector<int> grid(10);
    for (int i = 0; i < 10; ++i) grid[static_cast<std::size_t>(i)] = i + 1;
    return grid;
}

namespace {

Variant method_variant(Method m) {
    switch (m) {
        case Method::lda_mpls: return Variant::multivariate;
        case Method::flda_mfpls: return Variant::functional;
        case Method::flda_penmfpls: return Variant::penalized;
    }
    throw ParameterError("unknown method");
}

BenchRecord run_method(Method method, const CurveDataset& train_ds, const CurveDataset& test_ds,
                       const BasisSystem& basis, const BenchOptions& options) {
    BenchRecord rec;
    rec.method = method;
    const Variant variant = method_variant(method);
    const BasisSystem* basis_ptr = variant == Variant::multivariate ? nullptr : &basis;

    CoefficientMatrix train, test;
    if (variant == Variant::multivariate) {
        train = raw_value_matrix(train_ds);
        test = raw_value_matrix(test_ds);
    } else {
        train = fit_regression_splines(basis, train_ds);
        test = fit_regression_splines(basis, test_ds);
    }

    CvGrid grid;
    grid.q_values = options.q_grid;
    if (variant == Variant::penalized) grid.lambdas = options.lambda_grid;
    // folds inside a replicate run serially; replicates are the parallel axis
    const CvResult cv = cross_validate(train, basis_ptr, variant, grid, options.cv_scheme, 1,
                                       options.standardize);
    rec.lambda = cv.best_lambda;
    rec.q = cv.best_q;
    rec.ccr_cv = cv.best_ccr;

    const HoldoutResult holdout = holdout_evaluate(train, test, basis_ptr, variant,
                                                   cv.best_lambda, cv.best_q,
                                                   options.standardize);
    rec.ccr_test = holdout.ccr;
    return rec;
}

}  // namespace

std::vector<BenchRecord> run_benchmark(const SimConfig& config, int replicates,
                                       const std::vector<Method>& methods,
                                       const BenchOptions& options) {
    if (replicates < 1) throw ParameterError("replicates must be >= 1");
    if (methods.empty()) throw ParameterError("no methods requested");
    if (options.q_grid.empty()) throw ParameterError("empty q grid");
    config.validate();
    if (config.train_subjects < 3) throw ParameterError("need >= 3 training subjects");

    const bool functional_requested = std::any_of(
        methods.begin(), methods.end(), [](Method m) { return m != Method::lda_mpls; });
    BasisSystem basis = BasisSystem::build(1, 1, 0.0, 1.0);  // placeholder for mpls-only runs
    if (functional_requested)
        basis = BasisSystem::build(options.basis_degree, options.interior_knots, 0.0, 1.0,
                                   options.penalty_order);

    const int m_count = static_cast<int>(methods.size());
    std::vector<BenchRecord> records(static_cast<std::size_t>(replicates) * m_count);
    parallel_for(replicates, options.threads, [&](int rep) {
        SimConfig rep_config = config;
        rep_config.seed = Rng::mix(config.seed, static_cast<std::uint64_t>(rep));
        const auto [train_ds, test_ds] = generate_split(rep_config);
        for (int mi = 0; mi < m_count; ++mi) {
            BenchRecord& rec = records[static_cast<std::size_t>(rep) * m_count + mi];
            try {
                rec = run_method(methods[static_cast<std::size_t>(mi)], train_ds, test_ds,
                                 basis, options);
            } catch (const Error& e) {
                rec = BenchRecord{};
                rec.method = methods[static_cast<std::size_t>(mi)];
                rec.ok = false;
                rec.message = e.what();
                rec.lambda = std::numeric_limits<double>::quiet_NaN();
                rec.q = 0;
                rec.ccr_cv = std::numeric_limits<double>::quiet_NaN();
                rec.ccr_test = std::numeric_limits<double>::quiet_NaN();
            }
            rec.replicate = rep;
        }
    });
    return records;
}

double quantile(std::vector<double> values, double prob) {
    if (values.empty()) throw ParameterError("quantile of empty sample");
    if (prob < 0.0 || prob > 1.0) throw ParameterError("probability outside [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = prob * (static_cast<double>(values.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

std::vector<Summary> summarize(const std::vector<BenchRecord>& records) {
    std::vector<Summary> out;
    for (const Method m : {Method::lda_mpls, Method::flda_mfpls, Method::flda_penmfpls}) {
        std::vector<double> cv, test, q;
        for (const auto& r : records) {
            if (r.method != m || !r.ok) continue;
            cv.push_back(r.ccr_cv);
            test.push_back(r.ccr_test);
            q.push_back(static_cast<double>(r.q));
        }
        if (cv.empty()) continue;
        const auto add = [&](const std::string& metric, const std::vector<double>& v) {
            Summary s;
            s.method = method_name(m);
            s.metric = metric;
            s.count = static_cast<long>(v.size());
            s.min = quantile(v, 0.0);
            s.q1 = quantile(v, 0.25);
            s.median = quantile(v, 0.5);
            s.q3 = quantile(v, 0.75);
            s.max = quantile(v, 1.0);
            out.push_back(s);
        };
        add("ccr_cv", cv);
        add("ccr_test", test);
        add("q", q);
    }
    return out;
}

}  // namespace fpls::sim

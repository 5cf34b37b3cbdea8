#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpls/dataset.hpp"
#include "fpls/model_select.hpp"

namespace fpls::sim {

/// Synthetic repeated-measures generator: three class mean curves on [0, 1],
/// a per-subject amplitude on sin(pi t) shared across that subject's
/// conditions, and i.i.d. Gaussian noise at every grid point.
struct SimConfig {
    int subjects = 40;        // total pool
    int conditions = 3;       // fixed class count of the generator
    int grid_size = 101;
    double sigma_eps = 0.2;   // noise standard deviation
    double sigma_s = 0.02;    // subject amplitude standard deviation
    double mu_min = 0.0;      // subject amplitude mean ~ Uniform(mu_min, mu_max)
    double mu_max = 0.05;
    int train_subjects = 30;
    int test_subjects = 10;
    std::uint64_t seed = 0;
    bool subject_effect = true;

    void validate() const;
};

/// Class mean m_k(t) = t^(k/5) (1-t)^(6-k/5) for k in 1..3; both endpoints
/// are zero. Throws ParameterError for t outside [0, 1] or k outside 1..3.
double mean_curve(int k, double t);

/// Deterministic dataset for the given config: same seed, same bytes.
/// Subjects are S01..Snn; conditions are "1".."K"; every subject's curves
/// share one amplitude draw, which is what correlates its conditions.
CurveDataset generate(const SimConfig& config);

/// First train_subjects subjects vs the rest.
std::pair<CurveDataset, CurveDataset> generate_split(const SimConfig& config);

enum class Method { lda_mpls, flda_mfpls, flda_penmfpls };
std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct BenchOptions {
    int basis_degree = 3;
    int interior_knots = 15;
    int penalty_order = 2;
    std::vector<double> lambda_grid;  // penalized variant; must be nonempty
    std::vector<int> q_grid;          // all variants; must be nonempty
    FoldScheme cv_scheme = FoldScheme::curve;
    bool standardize = true;  // the reference implementations scale by default
    int threads = 1;
};

/// One benchmark outcome: selected cell and holdout score for one method on
/// one replicate. `ok` is false when the method failed on that replicate; the
/// message then explains why and the numeric fields are NaN.
struct BenchRecord {
    int replicate = 0;
    Method method = Method::lda_mpls;
    double lambda = 0.0;
    int q = 0;
    double ccr_cv = 0.0;
    double ccr_test = 0.0;
    bool ok = true;
    std::string message;
};

/// Default lambda grid: 0 plus 17 points log-spaced over [1e-4, 1e4].
std::vector<double> default_lambda_grid();
/// Default component grid: 1..10.
std::vector<int> default_q_grid();

/// Runs `replicates` independent datasets (substream seeds derived from
/// config.seed) through CV selection on the training subjects and holdout
/// evaluation on the test subjects, for each requested method. Records come
/// back sorted by replicate then method order. Replicates run in parallel;
/// results do not depend on the thread count.
std::vector<BenchRecord> run_benchmark(const SimConfig& config, int replicates,
                                       const std::vector<Method>& methods,
                                       const BenchOptions& options);

/// Five-number summary of one metric (linear-interpolation quartiles).
struct Summary {
    std::string method;
    std::string metric;
    long count = 0;
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

/// Per-method summaries of ccr_cv, ccr_test and q over the ok records.
std::vector<Summary> summarize(const std::vector<BenchRecord>& records);

/// Quantile with linear interpolation between order statistics (the common
/// "type 7" rule); values need not be sorted.
double quantile(std::vector<double> values, double prob);

}  // namespace fpls::sim

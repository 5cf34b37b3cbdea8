// fpls: penalized functional PLS discriminant analysis for repeated-measures
// curves. Subcommands: simulate, fit, predict, cv, bench, export-beta.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fpls/basis.hpp"
#include "fpls/dataset.hpp"
#include "fpls/discriminant.hpp"
#include "fpls/errors.hpp"
#include "fpls/format.hpp"
#include "fpls/model_io.hpp"
#include "fpls/model_select.hpp"
#include "fpls/simulation.hpp"
#include "fpls/variation.hpp"
#include "svg_boxplot.hpp"

namespace {

using fpls::format_double;

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("FPLS_LOG");
        if (!env) return LogLevel::warn;
        const std::string v(env);
        if (v == "error") return LogLevel::error;
        if (v == "warn") return LogLevel::warn;
        if (v == "info") return LogLevel::info;
        if (v == "debug") return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

void log_line(LogLevel lvl, const std::string& msg) {
    if (lvl <= log_level()) std::fprintf(stderr, "[fpls] %s\n", msg.c_str());
}

// ---------------------------------------------------------------------------
// grid specs
//
// lambda grid: comma-separated items; each item is a number or
// log:LO:HI:N (N log-spaced points, endpoints included); "default" expands to
// 0 plus log:1e-4:1e4:17.
// q grid: comma-separated ints or A:B ranges; "default" expands to 1:10.
// ---------------------------------------------------------------------------

std::vector<double> parse_lambda_grid(const std::string& spec) {
    if (spec == "default") return fpls::sim::default_lambda_grid();
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', pos), spec.size());
        const std::string item = spec.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty()) continue;
        if (item.rfind("log:", 0) == 0) {
            double lo = 0, hi = 0;
            int n = 0;
            if (std::sscanf(item.c_str(), "log:%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 2 ||
                lo <= 0 || hi <= lo)
                throw fpls::ParameterError("bad lambda grid item '" + item +
                                           "' (want log:LO:HI:N with 0<LO<HI, N>=2)");
            for (int i = 0; i < n; ++i)
                out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
        } else {
            try {
                std::size_t used = 0;
                const double v = std::stod(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
                out.push_back(v);
            } catch (const std::exception&) {
                throw fpls::ParameterError("bad lambda grid item '" + item + "'");
            }
        }
    }
    if (out.empty()) throw fpls::ParameterError("empty lambda grid");
    return out;
}

std::vector<int> parse_q_grid(const std::string& spec) {
    if (spec == "default") return fpls::sim::default_q_grid();
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', pos), spec.size());
        const std::string item = spec.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty()) continue;
        int a = 0, b = 0;
        if (std::sscanf(item.c_str(), "%d:%d", &a, &b) == 2) {
            if (a < 1 || b < a) throw fpls::ParameterError("bad q grid range '" + item + "'");
            for (int q = a; q <= b; ++q) out.push_back(q);
        } else if (std::sscanf(item.c_str(), "%d", &a) == 1) {
            if (a < 1) throw fpls::ParameterError("q grid entries must be >= 1");
            out.push_back(a);
        } else {
            throw fpls::ParameterError("bad q grid item '" + item + "'");
        }
    }
    if (out.empty()) throw fpls::ParameterError("empty q grid");
    return out;
}

// ---------------------------------------------------------------------------
// shared option blocks
// ---------------------------------------------------------------------------

struct BasisOptions {
    int degree = 3;
    int knots = 15;
    int penalty_order = 2;

    void attach(CLI::App* cmd) {
        cmd->add_option("--degree", degree, "B-spline degree")->capture_default_str();
        cmd->add_option("--knots", knots, "number of interior knots")->capture_default_str();
        cmd->add_option("--penalty-order", penalty_order, "difference penalty order")
            ->capture_default_str();
    }
    fpls::BasisSystem build(double t_min, double t_max) const {
        return fpls::BasisSystem::build(degree, knots, t_min, t_max, penalty_order);
    }
};

/// Domain for the basis: the observed t range of the dataset.
std::pair<double, double> data_domain(const fpls::CurveDataset& ds) {
    double lo = ds.curve_at(0).t.front(), hi = lo;
    for (int r = 0; r < ds.curve_count(); ++r) {
        for (double t : ds.curve_at(r).t) {
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    return {lo, hi};
}

struct PreparedData {
    fpls::CoefficientMatrix features;
    std::optional<fpls::BasisSystem> basis;
    std::vector<double> grid;  // multivariate only
};

PreparedData prepare(const fpls::CurveDataset& ds, fpls::Variant variant,
                     const BasisOptions& basis_opts) {
    PreparedData p;
    if (variant == fpls::Variant::multivariate) {
        p.features = fpls::raw_value_matrix(ds);
        p.grid = ds.shared_grid();
    } else {
        const auto [lo, hi] = data_domain(ds);
        p.basis = basis_opts.build(lo, hi);
        p.features = fpls::fit_regression_splines(*p.basis, ds);
    }
    return p;
}

void print_confusion(const Eigen::MatrixXi& confusion,
                     const std::vector<std::string>& labels) {
    std::printf("confusion matrix (rows = actual, columns = predicted):\n");
    std::printf("%14s", "");
    for (const auto& l : labels) std::printf(" %10s", l.c_str());
    std::printf("\n");
    for (Eigen::Index r = 0; r < confusion.rows(); ++r) {
        std::printf("%14s", labels[static_cast<std::size_t>(r)].c_str());
        for (Eigen::Index c = 0; c < confusion.cols(); ++c)
            std::printf(" %10d", confusion(r, c));
        std::printf("\n");
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fpls::DataError("cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw fpls::DataError("failed writing '" + path + "'");
}

int default_threads() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

struct SimulateArgs {
    fpls::sim::SimConfig config;
    std::string out;
    std::string train_out, test_out;
    bool no_subject_effect = false;
};

int cmd_simulate(const SimulateArgs& args) {
    fpls::sim::SimConfig config = args.config;
    config.subject_effect = !args.no_subject_effect;
    const fpls::CurveDataset all = fpls::sim::generate(config);
    fpls::write_curve_csv(all, args.out);
    std::printf("wrote %s: %d subjects x %d conditions = %d curves, grid size %d\n",
                args.out.c_str(), all.subject_count(), all.condition_count(),
                all.curve_count(), config.grid_size);
    if (!args.train_out.empty() || !args.test_out.empty()) {
        const auto [train, test] = fpls::sim::generate_split(config);
        if (!args.train_out.empty()) {
            fpls::write_curve_csv(train, args.train_out);
            std::printf("wrote %s: %d training subjects\n", args.train_out.c_str(),
                        train.subject_count());
        }
        if (!args.test_out.empty()) {
            fpls::write_curve_csv(test, args.test_out);
            std::printf("wrote %s: %d test subjects\n", args.test_out.c_str(),
                        test.subject_count());
        }
    }
    return 0;
}

struct FitArgs {
    std::string in, out;
    std::string variant = "penfpls";
    double lambda = 0.0;
    int q = 3;
    bool standardize = false;
    BasisOptions basis;
};

int cmd_fit(const FitArgs& args) {
    const fpls::Variant variant = fpls::variant_from_name(args.variant);
    if (variant == fpls::Variant::functional && args.lambda != 0.0)
        throw fpls::ParameterError("--variant fpls requires --lambda 0");
    const fpls::CurveDataset ds = fpls::read_curve_csv(args.in);
    const PreparedData prep = prepare(ds, variant, args.basis);
    const fpls::DiscriminantModel model =
        fpls::fit_classifier(prep.features, prep.basis ? &*prep.basis : nullptr, variant,
                             args.lambda, args.q, args.standardize);

    // resubstitution: classify the within-centered training rows
    const fpls::SplitVariation sv = fpls::split_variation(
        prep.features.values, prep.features.subject_count(), prep.features.condition_count());
    const std::vector<int> predicted = model.classify_centered(sv.within);
    const auto [confusion, ccr] =
        fpls::confusion_and_ccr(predicted, prep.features.labels, model.centroids().rows());

    fpls::StoredModel stored{model, prep.basis, prep.grid};
    fpls::save_model(stored, args.out);

    std::printf("fitted %s model: lambda=%s, components=%d (attained %d)\n",
                args.variant.c_str(), format_double(model.lambda()).c_str(), args.q,
                model.components());
    print_confusion(confusion, model.class_labels());
    long correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        correct += predicted[i] == prep.features.labels[i];
    std::printf("resubstitution ccr: %ld/%zu = %s\n", correct, predicted.size(),
                format_double(ccr).c_str());
    std::printf("model written to %s\n", args.out.c_str());
    return 0;
}

/// Featurizes a dataset against a stored model (spline fit or raw grid check)
/// with rows reordered to the model's condition order.
fpls::CoefficientMatrix featurize_for_model(const fpls::CurveDataset& ds,
                                            const fpls::StoredModel& stored) {
    fpls::CoefficientMatrix m;
    if (stored.model.variant() == fpls::Variant::multivariate) {
        if (!ds.grid_shared() || ds.shared_grid() != stored.grid)
            throw fpls::DataError(
                "multivariate model requires curves on the model's observation grid");
        m = fpls::raw_value_matrix(ds);
    } else {
        m = fpls::fit_regression_splines(*stored.basis, ds);
    }
    return fpls::reorder_conditions(m, stored.model.class_labels());
}

struct PredictArgs {
    std::string in, model, out;
};

int cmd_predict(const PredictArgs& args) {
    const fpls::StoredModel stored = fpls::load_model(args.model);
    const fpls::CurveDataset ds = fpls::read_curve_csv(args.in);
    const fpls::CoefficientMatrix m = featurize_for_model(ds, stored);

    const int k = m.condition_count();
    std::vector<int> predicted;
    predicted.reserve(static_cast<std::size_t>(m.values.rows()));
    for (int s = 0; s < m.subject_count(); ++s) {
        const auto preds = stored.model.classify_subject(
            m.values.middleRows(static_cast<Eigen::Index>(s) * k, k));
        predicted.insert(predicted.end(), preds.begin(), preds.end());
    }
    const auto [confusion, ccr] = fpls::confusion_and_ccr(predicted, m.labels, k);

    if (!args.out.empty()) {
        std::string csv = "subject,condition,predicted\n";
        for (int s = 0; s < m.subject_count(); ++s) {
            for (int c = 0; c < k; ++c) {
                const std::size_t r = static_cast<std::size_t>(s) * k + c;
                csv += m.subjects[static_cast<std::size_t>(s)];
                csv += ',';
                csv += m.conditions[static_cast<std::size_t>(c)];
                csv += ',';
                csv += m.conditions[static_cast<std::size_t>(predicted[r] - 1)];
                csv += '\n';
            }
        }
        write_text_file(args.out, csv);
        std::printf("predictions written to %s\n", args.out.c_str());
    }
    print_confusion(confusion, stored.model.class_labels());
    long correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) correct += predicted[i] == m.labels[i];
    std::printf("ccr: %ld/%zu = %s\n", correct, predicted.size(), format_double(ccr).c_str());
    return 0;
}

struct CvArgs {
    std::string in;
    std::string variant = "penfpls";
    bool standardize = false;
    std::string lambda_grid = "default";
    std::string q_grid = "default";
    std::string folds = "subject";
    std::string report, out, test;
    int threads = default_threads();
    BasisOptions basis;
};

int cmd_cv(const CvArgs& args) {
    if (args.folds != "subject")
        throw fpls::ParameterError(
            "--folds supports only 'subject' (all curves of one subject held out together)");
    const fpls::Variant variant = fpls::variant_from_name(args.variant);
    const fpls::CurveDataset ds = fpls::read_curve_csv(args.in);
    const PreparedData prep = prepare(ds, variant, args.basis);

    fpls::CvGrid grid;
    grid.q_values = parse_q_grid(args.q_grid);
    if (variant == fpls::Variant::penalized) grid.lambdas = parse_lambda_grid(args.lambda_grid);

    log_line(LogLevel::info, "cross-validating " + std::to_string(grid.q_values.size()) +
                                 " q values x " +
                                 std::to_string(std::max<std::size_t>(grid.lambdas.size(), 1)) +
                                 " lambdas over " + std::to_string(ds.subject_count()) +
                                 " subject folds");
    const fpls::CvResult cv =
        fpls::cross_validate(prep.features, prep.basis ? &*prep.basis : nullptr, variant, grid,
                             fpls::FoldScheme::subject, args.threads, args.standardize);

    if (!args.report.empty()) {
        std::string csv = "lambda,q,ccr_cv\n";
        for (const auto& cell : cv.cells) {
            fpls::append_double(csv, cell.lambda);
            csv += ',';
            csv += std::to_string(cell.q);
            csv += ',';
            fpls::append_double(csv, cell.ccr);
            csv += '\n';
        }
        write_text_file(args.report, csv);
        std::printf("cv report written to %s (%zu cells)\n", args.report.c_str(),
                    cv.cells.size());
    }

    nlohmann::json selection;
    selection["variant"] = args.variant;
    selection["lambda"] = cv.best_lambda;
    selection["q"] = cv.best_q;
    selection["ccr_cv"] = cv.best_ccr;
    selection["ccr_test"] = nullptr;

    if (!args.test.empty()) {
        const fpls::CurveDataset test_ds = fpls::read_curve_csv(args.test);
        fpls::CoefficientMatrix test_m;
        if (variant == fpls::Variant::multivariate) {
            if (!test_ds.grid_shared() || test_ds.shared_grid() != prep.grid)
                throw fpls::DataError("test curves are not on the training grid");
            test_m = fpls::raw_value_matrix(test_ds);
        } else {
            test_m = fpls::fit_regression_splines(*prep.basis, test_ds);
        }
        test_m = fpls::reorder_conditions(test_m, prep.features.conditions);
        const fpls::HoldoutResult holdout =
            fpls::holdout_evaluate(prep.features, test_m, prep.basis ? &*prep.basis : nullptr,
                                   variant, cv.best_lambda, cv.best_q, args.standardize);
        selection["ccr_test"] = holdout.ccr;
        std::printf("holdout ccr_test: %s\n", format_double(holdout.ccr).c_str());
    }

    if (!args.out.empty()) {
        write_text_file(args.out, selection.dump(2) + "\n");
        std::printf("selection written to %s\n", args.out.c_str());
    }
    std::printf("selected lambda=%s q=%d ccr_cv=%s\n", format_double(cv.best_lambda).c_str(),
                cv.best_q, format_double(cv.best_ccr).c_str());
    return 0;
}

struct BenchArgs {
    int replicates = 100;
    std::string cv_scheme = "curve";
    bool no_standardize = false;
    fpls::sim::SimConfig config;
    std::string methods = "all";
    std::string lambda_grid = "default";
    std::string q_grid = "default";
    std::string out, summary, svg;
    int threads = default_threads();
    BasisOptions basis;
};

int cmd_bench(const BenchArgs& args) {
    std::vector<fpls::sim::Method> methods;
    if (args.methods == "all") {
        methods = {fpls::sim::Method::lda_mpls, fpls::sim::Method::flda_mfpls,
                   fpls::sim::Method::flda_penmfpls};
    } else {
        std::size_t pos = 0;
        while (pos <= args.methods.size()) {
            const std::size_t comma = std::min(args.methods.find(',', pos), args.methods.size());
            const std::string item = args.methods.substr(pos, comma - pos);
            pos = comma + 1;
            if (!item.empty()) methods.push_back(fpls::sim::method_from_name(item));
        }
    }

    fpls::sim::BenchOptions options;
    options.basis_degree = args.basis.degree;
    options.interior_knots = args.basis.knots;
    options.penalty_order = args.basis.penalty_order;
    options.lambda_grid = parse_lambda_grid(args.lambda_grid);
    options.q_grid = parse_q_grid(args.q_grid);
    options.threads = args.threads;
    options.standardize = !args.no_standardize;
    if (args.cv_scheme == "curve") options.cv_scheme = fpls::FoldScheme::curve;
    else if (args.cv_scheme == "score") options.cv_scheme = fpls::FoldScheme::score;
    else if (args.cv_scheme == "subject") options.cv_scheme = fpls::FoldScheme::subject;
    else throw fpls::ParameterError("--cv-scheme must be curve, score or subject");

    log_line(LogLevel::info, "running " + std::to_string(args.replicates) + " replicates on " +
                                 std::to_string(args.threads) + " threads");
    const std::vector<fpls::sim::BenchRecord> records =
        fpls::sim::run_benchmark(args.config, args.replicates, methods, options);

    for (const auto& r : records)
        if (!r.ok)
            log_line(LogLevel::warn, "replicate " + std::to_string(r.replicate) + " " +
                                         fpls::sim::method_name(r.method) + " failed: " +
                                         r.message);

    std::string csv = "replicate,method,lambda,q,ccr_cv,ccr_test\n";
    for (const auto& r : records) {
        csv += std::to_string(r.replicate);
        csv += ',';
        csv += fpls::sim::method_name(r.method);
        csv += ',';
        fpls::append_double(csv, r.lambda);
        csv += ',';
        csv += std::to_string(r.q);
        csv += ',';
        fpls::append_double(csv, r.ccr_cv);
        csv += ',';
        fpls::append_double(csv, r.ccr_test);
        csv += '\n';
    }
    write_text_file(args.out, csv);
    std::printf("records written to %s (%zu rows)\n", args.out.c_str(), records.size());

    const std::vector<fpls::sim::Summary> summaries = fpls::sim::summarize(records);
    if (!args.summary.empty()) {
        std::string s = "method,metric,count,min,q1,median,q3,max\n";
        for (const auto& row : summaries) {
            s += row.method;
            s += ',';
            s += row.metric;
            s += ',';
            s += std::to_string(row.count);
            for (double v : {row.min, row.q1, row.median, row.q3, row.max}) {
                s += ',';
                fpls::append_double(s, v);
            }
            s += '\n';
        }
        write_text_file(args.summary, s);
        std::printf("summary written to %s\n", args.summary.c_str());
    }

    if (!args.svg.empty()) {
        const auto panel_for = [&](const std::string& metric, const std::string& title) {
            fpls::svg::Panel panel;
            panel.title = title;
            for (const auto& row : summaries) {
                if (row.metric != metric) continue;
                panel.boxes.push_back(
                    fpls::svg::Box{row.method, row.min, row.q1, row.median, row.q3, row.max});
            }
            return panel;
        };
        const std::string svg = fpls::svg::render_boxplots(
            {panel_for("ccr_cv", "CCR (cross-validation)"),
             panel_for("ccr_test", "CCR (test)"), panel_for("q", "PLS components")});
        write_text_file(args.svg, svg);
        std::printf("boxplots written to %s\n", args.svg.c_str());
    }

    for (const auto& row : summaries)
        if (row.metric == "ccr_test")
            std::printf("%-14s median ccr_test=%s IQR=%s\n", row.method.c_str(),
                        format_double(row.median).c_str(),
                        format_double(row.q3 - row.q1).c_str());
    return 0;
}

struct ExportBetaArgs {
    std::string model, out;
    int resolution = 201;
};

int cmd_export_beta(const ExportBetaArgs& args) {
    const fpls::StoredModel stored = fpls::load_model(args.model);
    if (!stored.basis)
        throw fpls::ParameterError(
            "export-beta needs a functional model (mpls models have no beta functions)");
    const Eigen::MatrixXd values =
        fpls::discriminant_function_values(stored.model, *stored.basis, args.resolution);

    std::string csv = "t";
    for (Eigen::Index j = 1; j < values.cols(); ++j) csv += ",beta_" + std::to_string(j);
    csv += '\n';
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            if (j) csv += ',';
            fpls::append_double(csv, values(i, j));
        }
        csv += '\n';
    }
    write_text_file(args.out, csv);
    std::printf("discriminant functions written to %s (%d rows, %d functions)\n",
                args.out.c_str(), args.resolution, static_cast<int>(values.cols()) - 1);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"penalized functional PLS discriminant analysis for repeated-measures curves"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "generate a synthetic curve dataset");
    sim_cmd->add_option("--seed", sim_args.config.seed, "random seed")->capture_default_str();
    sim_cmd->add_option("--out", sim_args.out, "output curve CSV")->required();
    sim_cmd->add_option("--subjects", sim_args.config.subjects, "subject pool size")
        ->capture_default_str();
    sim_cmd->add_option("--train-subjects", sim_args.config.train_subjects,
                        "training subjects (rest are test)");
    sim_cmd->add_option("--grid", sim_args.config.grid_size, "grid points per curve")
        ->capture_default_str();
    sim_cmd->add_option("--sigma-eps", sim_args.config.sigma_eps, "noise sd")
        ->capture_default_str();
    sim_cmd->add_option("--sigma-s", sim_args.config.sigma_s, "subject amplitude sd")
        ->capture_default_str();
    sim_cmd->add_option("--mu-min", sim_args.config.mu_min, "amplitude mean lower bound")
        ->capture_default_str();
    sim_cmd->add_option("--mu-max", sim_args.config.mu_max, "amplitude mean upper bound")
        ->capture_default_str();
    sim_cmd->add_flag("--no-subject-effect", sim_args.no_subject_effect,
                      "drop the shared subject amplitude term");
    sim_cmd->add_option("--train-out", sim_args.train_out, "also write the training split");
    sim_cmd->add_option("--test-out", sim_args.test_out, "also write the test split");

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "fit a classifier on a training CSV");
    fit_cmd->add_option("--in", fit_args.in, "training curve CSV")->required();
    fit_cmd->add_option("--out", fit_args.out, "output model JSON")->required();
    fit_cmd->add_option("--variant", fit_args.variant, "mpls, fpls or penfpls")
        ->capture_default_str();
    fit_cmd->add_option("--lambda", fit_args.lambda, "smoothing parameter")
        ->capture_default_str();
    fit_cmd->add_option("--q", fit_args.q, "number of PLS components")->capture_default_str();
    fit_cmd->add_flag("--standardize", fit_args.standardize,
                      "scale feature columns to unit variance before the PLS");
    fit_args.basis.attach(fit_cmd);

    PredictArgs predict_args;
    auto* predict_cmd = app.add_subcommand("predict", "classify curves with a fitted model");
    predict_cmd->add_option("--in", predict_args.in, "curve CSV to classify")->required();
    predict_cmd->add_option("--model", predict_args.model, "model JSON")->required();
    predict_cmd->add_option("--out", predict_args.out, "per-curve predictions CSV");

    CvArgs cv_args;
    auto* cv_cmd = app.add_subcommand("cv", "leave-one-subject-out grid search");
    cv_cmd->add_option("--in", cv_args.in, "training curve CSV")->required();
    cv_cmd->add_option("--variant", cv_args.variant, "mpls, fpls or penfpls")
        ->capture_default_str();
    cv_cmd->add_option("--lambda-grid", cv_args.lambda_grid,
                       "comma list of numbers and log:LO:HI:N items, or 'default'")
        ->capture_default_str();
    cv_cmd->add_option("--q-grid", cv_args.q_grid, "comma list of ints and A:B ranges")
        ->capture_default_str();
    cv_cmd->add_option("--folds", cv_args.folds, "fold mode; only 'subject' is accepted")
        ->capture_default_str();
    cv_cmd->add_option("--report", cv_args.report, "per-cell CCR report CSV");
    cv_cmd->add_option("--out", cv_args.out, "selection summary JSON");
    cv_cmd->add_option("--test", cv_args.test, "optional test CSV for a holdout score");
    cv_cmd->add_option("--threads", cv_args.threads, "worker threads")->capture_default_str();
    cv_cmd->add_flag("--standardize", cv_args.standardize,
                     "scale feature columns to unit variance before the PLS");
    cv_args.basis.attach(cv_cmd);

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "replicate simulation benchmark");
    bench_cmd->add_option("--replicates", bench_args.replicates, "number of replicates")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench_args.config.seed, "master seed")
        ->capture_default_str();
    bench_cmd->add_option("--subjects", bench_args.config.subjects, "subject pool per replicate")
        ->capture_default_str();
    bench_cmd
        ->add_option("--train-subjects", bench_args.config.train_subjects, "training subjects")
        ->capture_default_str();
    bench_cmd->add_option("--methods", bench_args.methods,
                          "'all' or comma list of LDA-MPLS, FLDA-MFPLS, FLDA-PenMFPLS")
        ->capture_default_str();
    bench_cmd->add_option("--lambda-grid", bench_args.lambda_grid, "lambda grid spec")
        ->capture_default_str();
    bench_cmd->add_option("--q-grid", bench_args.q_grid, "q grid spec")->capture_default_str();
    bench_cmd->add_option("--out", bench_args.out, "records CSV")->required();
    bench_cmd->add_option("--summary", bench_args.summary, "per-method quartile CSV");
    bench_cmd->add_option("--svg", bench_args.svg, "boxplot SVG");
    bench_cmd->add_option("--threads", bench_args.threads, "worker threads")
        ->capture_default_str();
    bench_cmd
        ->add_option("--cv-scheme", bench_args.cv_scheme,
                     "selection protocol: curve, score or subject")
        ->capture_default_str();
    bench_cmd->add_flag("--no-standardize", bench_args.no_standardize,
                        "disable the unit-variance column scaling");
    bench_args.basis.attach(bench_cmd);

    ExportBetaArgs beta_args;
    auto* beta_cmd = app.add_subcommand("export-beta", "sample discriminant functions to CSV");
    beta_cmd->add_option("--model", beta_args.model, "model JSON")->required();
    beta_cmd->add_option("--out", beta_args.out, "output CSV")->required();
    beta_cmd->add_option("--resolution", beta_args.resolution, "grid points")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim_cmd->parsed()) {
            // keep train+test consistent with the pool when only one was given
            if (sim_cmd->count("--subjects") && !sim_cmd->count("--train-subjects"))
                sim_args.config.train_subjects = (sim_args.config.subjects * 3 + 2) / 4;
            sim_args.config.test_subjects =
                sim_args.config.subjects - sim_args.config.train_subjects;
            return cmd_simulate(sim_args);
        }
        if (fit_cmd->parsed()) return cmd_fit(fit_args);
        if (predict_cmd->parsed()) return cmd_predict(predict_args);
        if (cv_cmd->parsed()) return cmd_cv(cv_args);
        if (bench_cmd->parsed()) {
            if (bench_cmd->count("--subjects") && !bench_cmd->count("--train-subjects"))
                bench_args.config.train_subjects = (bench_args.config.subjects * 3 + 2) / 4;
            bench_args.config.test_subjects =
                bench_args.config.subjects - bench_args.config.train_subjects;
            return cmd_bench(bench_args);
        }
        if (beta_cmd->parsed()) return cmd_export_beta(beta_args);
    } catch (const fpls::ParameterError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const fpls::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const fpls::NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 2;
}

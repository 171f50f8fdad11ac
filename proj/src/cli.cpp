#include "mvc/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "mvc/clr.hpp"
#include "mvc/error.hpp"
#include "mvc/graph.hpp"
#include "mvc/nmf.hpp"
#include "mvc/spectral.hpp"

namespace mvc::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string short_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

template <class Seq>
std::string join(const Seq& values) {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += ',';
        out += num(v);
    }
    return out;
}

std::vector<double> parse_doubles(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidInput(what + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw InvalidInput(what + ": empty list");
    return out;
}

std::vector<Matrix> graph_views(const MultiViewDataset& ds, int knn) {
    if (ds.kind == DatasetKind::Graphs) return ds.views;
    std::vector<Matrix> out;
    for (const Matrix& x : ds.views) out.push_back(build_knn_similarity(x, knn).data());
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << text;
}

}  // namespace

void check_method(const std::string& method) {
    if (method != "clr" && method != "sc-rc" && method != "sc-nc" && method != "nmf")
        throw InvalidInput("unknown method '" + method + "' (expected clr, sc-rc, sc-nc or nmf)");
}

RunReport run_method(const MultiViewDataset& dataset, const RunOptions& options) {
    check_method(options.method);
    options.scheme.validate();
    dataset.validate();
    const int clusters = options.clusters.value_or(dataset.clusters);
    if (clusters < 2) throw InvalidInput("need at least 2 clusters");

    RunReport report;
    report.method = options.method;
    report.scheme = options.scheme;
    report.seed = options.seed;

    const auto start = std::chrono::steady_clock::now();
    if (options.method == "clr") {
        ClrConfig config;
        config.clusters = clusters;
        config.t = options.t;
        auto result = clr_multiview(graph_views(dataset, options.knn), options.scheme, config);
        report.labels = result.labels;
        report.weights = result.weights;
        report.trace = result.trace;
        report.iterations = result.run.iterations;
        report.warnings = result.run.warnings;
    } else if (options.method == "nmf") {
        if (dataset.kind != DatasetKind::Features) throw InvalidInput("nmf needs a feature dataset");
        NmfConfig config;
        config.clusters = clusters;
        config.seed = options.seed;
        auto result = nmf_multiview(dataset.views, options.scheme, config);
        report.labels = result.labels;
        report.weights = result.weights;
        report.trace = result.trace;
        report.iterations = result.run.iterations;
        report.warnings = result.run.warnings;
    } else {
        ScConfig config;
        config.clusters = clusters;
        config.cut = options.method == "sc-nc" ? CutType::Normalized : CutType::Ratio;
        config.seed = options.seed;
        auto result = sc_multiview(graph_views(dataset, options.knn), options.scheme, config);
        report.labels = result.labels;
        report.weights = result.weights;
        report.trace = result.trace;
        report.iterations = result.run.iterations;
        report.warnings = result.warnings;
    }
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (dataset.truth) report.scores = evaluate(report.labels, *dataset.truth);
    return report;
}

std::string format_report(const RunReport& r) {
    std::ostringstream out;
    out << "method=" << r.method << '\n';
    out << "scheme=" << scheme_kind_name(r.scheme.kind) << '\n';
    out << "hyper=" << num(r.scheme.hyper) << '\n';
    out << "seed=" << r.seed << '\n';
    out << "iters=" << r.iterations << '\n';
    out << "objective_trace=" << join(r.trace) << '\n';
    out << "weights=" << join(r.weights) << '\n';
    if (r.scores) {
        out << "acc=" << num(r.scores->acc) << '\n';
        out << "nmi=" << num(r.scores->nmi) << '\n';
        out << "purity=" << num(r.scores->purity) << '\n';
    } else {
        out << "acc=NA\nnmi=NA\npurity=NA\n";
    }
    out << "wall_ms=" << short_num(r.wall_ms) << '\n';
    return out.str();
}

std::vector<double> parse_grid(const std::string& text, SchemeKind kind) {
    if (text == "paper") {
        if (kind == SchemeKind::Equal) return {0.0};
        return preset_grid(kind);
    }
    return parse_doubles(text, "grid");
}

GridSummary run_grid(const MultiViewDataset& dataset, const RunOptions& base, const std::vector<double>& grid,
                     const std::vector<std::uint64_t>& seeds, int jobs) {
    if (grid.empty()) throw InvalidInput("grid is empty");
    if (seeds.empty()) throw InvalidInput("no seeds");
    dataset.require_truth();
    check_method(base.method);
    for (double h : grid) WeightScheme{base.scheme.kind, h}.validate();

    GridSummary summary;
    summary.points.resize(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        summary.points[g].hyper = grid[g];
        summary.points[g].runs.resize(seeds.size());
    }

    const std::size_t total = grid.size() * seeds.size();
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            const std::size_t g = task / seeds.size();
            const std::size_t s = task % seeds.size();
            RunOptions options = base;
            options.scheme.hyper = grid[g];
            options.seed = seeds[s];
            try {
                summary.points[g].runs[s] = run_method(dataset, options);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    double best_sum = -1.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        GridPoint& point = summary.points[g];
        for (const RunReport& r : point.runs) {
            point.mean.acc += r.scores->acc;
            point.mean.nmi += r.scores->nmi;
            point.mean.purity += r.scores->purity;
            point.weight_std += weight_std(r.weights);
        }
        const double k = static_cast<double>(point.runs.size());
        point.mean.acc /= k;
        point.mean.nmi /= k;
        point.mean.purity /= k;
        point.weight_std /= k;
        if (point.mean.sum() > best_sum) {
            best_sum = point.mean.sum();
            summary.best = static_cast<int>(g);
        }
    }
    return summary;
}

namespace {

std::string summary_table(const GridSummary& s, const std::string& scheme) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-8s %10s %8s %8s %8s %8s %10s\n", "scheme", "hyper", "acc", "nmi", "purity",
                  "sum", "weight_std");
    out << line;
    for (std::size_t g = 0; g < s.points.size(); ++g) {
        const GridPoint& p = s.points[g];
        std::snprintf(line, sizeof line, "%-8s %10g %8.4f %8.4f %8.4f %8.4f %10.6f%s\n", scheme.c_str(), p.hyper,
                      p.mean.acc, p.mean.nmi, p.mean.purity, p.mean.sum(), p.weight_std,
                      static_cast<int>(g) == s.best ? "  *" : "");
        out << line;
    }
    return out.str();
}

void write_series(const GridSummary& s, const fs::path& path, double (*value)(const GridPoint&)) {
    std::ostringstream out;
    for (const GridPoint& p : s.points) out << num(p.hyper) << '\t' << num(value(p)) << '\n';
    write_text(path, out.str());
}

std::string report_table(const RunReport& r) {
    std::ostringstream out;
    char line[200];
    auto row = [&](const char* key, const std::string& value) {
        std::snprintf(line, sizeof line, "%-10s %s\n", key, value.c_str());
        out << line;
    };
    row("method", r.method);
    row("scheme", r.scheme.name());
    row("iters", std::to_string(r.iterations));
    std::string w;
    for (Eigen::Index i = 0; i < r.weights.size(); ++i) w += (i ? " " : "") + short_num(r.weights(i));
    row("weights", w);
    if (r.scores) {
        row("acc", short_num(r.scores->acc));
        row("nmi", short_num(r.scores->nmi));
        row("purity", short_num(r.scores->purity));
    }
    row("wall_ms", short_num(r.wall_ms));
    return out.str();
}

WeightScheme make_scheme(const std::string& name, std::optional<double> hyper) {
    const SchemeKind kind = parse_scheme_kind(name);
    WeightScheme scheme{kind, 0.0};
    if (hyper) {
        scheme.hyper = *hyper;
    } else {
        switch (kind) {
            case SchemeKind::IW: scheme.hyper = 1.0; break;
            case SchemeKind::NR:
            case SchemeKind::ER: scheme.hyper = 10.0; break;
            case SchemeKind::EF: scheme.hyper = 2.0; break;
            case SchemeKind::Equal: break;
        }
    }
    scheme.validate();
    return scheme;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (double v : parse_doubles(text, "seeds")) {
        if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v)))
            throw InvalidInput("seeds must be nonnegative integers");
        out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Multi-view clustering with intrinsic view weights"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a synthetic dataset");
    std::string gen_kind;
    std::string gen_out;
    std::uint64_t gen_seed = 0;
    std::string gen_sep = "4,1.5";
    std::string gen_noise = "1,1";
    int gen_n = 50;
    int gen_clusters = 2;
    std::string gen_variant = "standard";
    gen->add_option("kind", gen_kind, "block-toy or gaussian")->required();
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--sep", gen_sep, "gaussian: center separation per view");
    gen->add_option("--noise", gen_noise, "gaussian: noise standard deviation per view");
    gen->add_option("--n", gen_n, "gaussian: samples per cluster");
    gen->add_option("--clusters", gen_clusters, "gaussian: number of clusters");
    gen->add_option("--variant", gen_variant, "block-toy: standard or caption");

    // shared run options
    std::string manifest;
    std::string method = "clr";
    std::string scheme_name = "iw";
    std::optional<double> hyper;
    std::optional<int> clusters;
    std::uint64_t seed = 0;
    int knn = 20;
    int t = 10;
    std::string out_dir;
    auto add_run_options = [&](CLI::App* sub) {
        sub->add_option("--manifest", manifest, "Dataset manifest")->required();
        sub->add_option("--method", method, "clr, sc-rc, sc-nc or nmf");
        sub->add_option("--scheme", scheme_name, "iw, nr, er, ef or equal");
        sub->add_option("--clusters", clusters, "Number of clusters (default: from the manifest)");
        sub->add_option("--seed", seed, "Random seed");
        sub->add_option("--knn", knn, "Neighbours for feature views turned into graphs");
        sub->add_option("--t", t, "CLR row support size");
        sub->add_option("--out", out_dir, "Output directory");
    };

    auto* cluster = app.add_subcommand("cluster", "Run one method and scheme");
    add_run_options(cluster);
    cluster->add_option("--hyper", hyper, "Scheme hyper-parameter");

    auto* grid = app.add_subcommand("grid", "Sweep a hyper-parameter grid");
    add_run_options(grid);
    std::string grid_text = "paper";
    std::string seeds_text;
    int jobs = 1;
    grid->add_option("--hyper,--grid", grid_text, "Comma-separated values or 'paper'");
    grid->add_option("--seeds", seeds_text, "Comma-separated seeds (default: --seed)");
    grid->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

    auto* eval = app.add_subcommand("eval", "Score predicted labels against the truth");
    std::string pred_file;
    std::string truth_file;
    eval->add_option("pred", pred_file, "Predicted labels, one per line")->required();
    eval->add_option("truth", truth_file, "True labels, one per line")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            MultiViewDataset ds;
            if (gen_kind == "block-toy") {
                if (gen_variant == "standard")
                    ds = gen_block_toy(BlockToyParams::standard(gen_seed));
                else if (gen_variant == "caption")
                    ds = gen_block_toy(BlockToyParams::caption_variant(gen_seed));
                else
                    throw InvalidInput("unknown block-toy variant '" + gen_variant + "'");
            } else if (gen_kind == "gaussian") {
                GaussianParams p;
                p.separation = parse_doubles(gen_sep, "--sep");
                p.noise = parse_doubles(gen_noise, "--noise");
                if (p.noise.size() == 1) p.noise.resize(p.separation.size(), p.noise.front());
                p.n_per_cluster = gen_n;
                p.clusters = gen_clusters;
                p.seed = gen_seed;
                ds = gen_two_view_gaussian(p);
            } else {
                throw InvalidInput("unknown dataset kind '" + gen_kind + "' (expected block-toy or gaussian)");
            }
            std::cout << save_dataset(ds, gen_out).string() << '\n';
            return 0;
        }

        if (eval->parsed()) {
            const std::vector<int> pred = read_labels(pred_file);
            const std::vector<int> truth = read_labels(truth_file);
            const ClusteringScores s = evaluate(pred, truth);
            std::printf("acc\tnmi\tpurity\n%.6f\t%.6f\t%.6f\n", s.acc, s.nmi, s.purity);
            return 0;
        }

        const MultiViewDataset ds = load_dataset(manifest);
        RunOptions options;
        options.method = method;
        options.clusters = clusters;
        options.seed = seed;
        options.knn = knn;
        options.t = t;
        check_method(method);

        if (cluster->parsed()) {
            options.scheme = make_scheme(scheme_name, hyper);
            const RunReport report = run_method(ds, options);
            for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
            std::cout << report_table(report);
            if (!out_dir.empty()) {
                fs::create_directories(out_dir);
                write_text(fs::path(out_dir) / "report.txt", format_report(report));
                write_labels(report.labels, fs::path(out_dir) / "labels.txt");
            }
            return 0;
        }

        // grid
        options.scheme = make_scheme(scheme_name, std::nullopt);
        const std::vector<double> values = parse_grid(grid_text, options.scheme.kind);
        const std::vector<std::uint64_t> seeds = seeds_text.empty() ? std::vector<std::uint64_t>{seed}
                                                                     : parse_seeds(seeds_text);
        const GridSummary summary = run_grid(ds, options, values, seeds, jobs);
        const std::string table = summary_table(summary, std::string(scheme_kind_name(options.scheme.kind)));
        std::cout << table;
        const GridPoint& best = summary.points[summary.best];
        std::cout << "best hyper=" << short_num(best.hyper) << " sum=" << short_num(best.mean.sum()) << '\n';
        if (!out_dir.empty()) {
            const fs::path dir(out_dir);
            fs::create_directories(dir / "runs");
            for (const GridPoint& p : summary.points) {
                for (const RunReport& r : p.runs) {
                    const std::string stem = std::string(scheme_kind_name(r.scheme.kind)) + "-" +
                                             short_num(r.scheme.hyper) + "-seed" + std::to_string(r.seed);
                    write_text(dir / "runs" / (stem + ".txt"), format_report(r));
                }
            }
            write_text(dir / "summary.txt", table);
            write_series(summary, dir / "series_acc.tsv", [](const GridPoint& p) { return p.mean.acc; });
            write_series(summary, dir / "series_nmi.tsv", [](const GridPoint& p) { return p.mean.nmi; });
            write_series(summary, dir / "series_purity.tsv", [](const GridPoint& p) { return p.mean.purity; });
            write_series(summary, dir / "series_sum.tsv", [](const GridPoint& p) { return p.mean.sum(); });
            write_series(summary, dir / "series_weight_std.tsv", [](const GridPoint& p) { return p.weight_std; });
        }
        return 0;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return 1;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const LoadError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace mvc::cli

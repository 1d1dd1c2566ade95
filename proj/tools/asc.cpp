#include "asc/errors.hpp"
#include "asc/io.hpp"
#include "asc/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CliOptions {
    std::string numeric_path;
    std::string text_path;
    std::string lexicon_path;
    std::string constraints_path;
    std::string out_dir = "asc_out";
    std::string lambda = "optimize";
    double lambda_step = 0.05;
    std::size_t max_triples = 10000;
    std::string laplacian = "random_walk";
    int window = 20;
    std::string method = "kmeans";
    int restarts = 10;
    std::uint64_t seed = 0;
    bool no_rescale = false;
    bool eq7_literal = false;
    bool eq10_literal = false;
    bool row_normalize = false;
    std::string metrics_space = "embedding";
};

void add_pipeline_flags(CLI::App* cmd, CliOptions& o, bool need_constraints) {
    cmd->add_option("--numeric", o.numeric_path, "numeric feature CSV")->required();
    cmd->add_option("--text", o.text_path, "term-frequency triplet CSV")->required();
    cmd->add_option("--lexicon", o.lexicon_path, "lexicon file, one term per line")->required();
    auto* c = cmd->add_option("--constraints", o.constraints_path,
                              "JSON with must_link / cannot_link arrays");
    if (need_constraints) c->required();
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--lambda", o.lambda, "fusion weight in [0,1], or 'optimize'");
    cmd->add_option("--lambda-step", o.lambda_step, "grid step for the weight search");
    cmd->add_option("--max-triples", o.max_triples, "constraint triple subsampling cap");
    cmd->add_option("--laplacian", o.laplacian, "unnormalized | symmetric | random_walk");
    cmd->add_option("--window", o.window, "eigenvalues inspected for gap spikes");
    cmd->add_option("--method", o.method, "kmeans | kmedians | kmedoids");
    cmd->add_option("--restarts", o.restarts, "clustering restarts");
    cmd->add_option("--seed", o.seed, "master seed for all stages");
    cmd->add_flag("--no-rescale", o.no_rescale, "fuse raw numeric similarities");
    cmd->add_flag("--eq7-literal", o.eq7_literal,
                  "numeric-only right-hand side in the weight constraints");
    cmd->add_flag("--eq10-literal", o.eq10_literal,
                  "literal per-cluster k-selection score");
    cmd->add_flag("--row-normalize", o.row_normalize, "row-normalize the embedding");
    cmd->add_option("--metrics-space", o.metrics_space,
                    "embedding | numeric: space for the metric bundle");
}

asc::PipelineConfig make_config(const CliOptions& o) {
    asc::PipelineConfig c;
    if (o.lambda != "optimize") {
        try {
            size_t pos = 0;
            double v = std::stod(o.lambda, &pos);
            if (pos != o.lambda.size()) throw std::invalid_argument("trailing");
            c.fixed_lambda = v;
        } catch (const std::exception&) {
            throw asc::ConfigError("--lambda must be a number or 'optimize'");
        }
        if (*c.fixed_lambda < 0.0 || *c.fixed_lambda > 1.0)
            throw asc::ConfigError("--lambda must lie in [0,1]");
    }
    c.lambda_step = o.lambda_step;
    double steps = std::round(1.0 / o.lambda_step);
    if (o.lambda_step <= 0.0 || std::abs(steps * o.lambda_step - 1.0) > 1e-9)
        throw asc::ConfigError("--lambda-step must divide 1 evenly");
    c.max_triples = o.max_triples;
    c.laplacian = asc::laplacian_kind_from_string(o.laplacian);
    c.eigen_window = o.window;
    c.method = asc::cluster_method_from_string(o.method);
    c.restarts = o.restarts;
    c.seed = o.seed;
    c.rescale_numeric = !o.no_rescale;
    c.eq7_literal = o.eq7_literal;
    c.eq10_literal = o.eq10_literal;
    c.row_normalize = o.row_normalize;
    if (o.metrics_space == "numeric")
        c.metrics_in_numeric_space = true;
    else if (o.metrics_space != "embedding")
        throw asc::ConfigError("--metrics-space must be 'embedding' or 'numeric'");
    return c;
}

struct LoadedInputs {
    asc::NumericDataset numeric;
    asc::TextDataset text;
    asc::ConstraintSets constraints;
};

LoadedInputs load_inputs(const CliOptions& o, bool need_constraints) {
    LoadedInputs in;
    in.numeric = asc::load_numeric_csv(o.numeric_path);
    in.text = asc::load_term_frequency(o.text_path, o.lexicon_path, in.numeric.samples);
    if (!o.constraints_path.empty())
        in.constraints = asc::load_constraints(o.constraints_path, in.numeric.n());
    else if (need_constraints)
        throw asc::ConfigError("this command needs --constraints (or a fixed --lambda)");
    return in;
}

int cmd_cluster(const CliOptions& o, asc::Modality modality) {
    asc::PipelineConfig config = make_config(o);
    config.modality = modality;
    bool need_constraints = modality == asc::Modality::fused && !config.fixed_lambda;
    LoadedInputs in = load_inputs(o, need_constraints);
    asc::AscResult res = asc::run_asc(in.numeric, in.text, in.constraints, config);
    asc::write_artifacts(o.out_dir, res, in.numeric, in.text, config);
    std::cout << "k=" << res.assignment.k << " lambda=" << res.lambda.lambda
              << " silhouette=" << res.metrics.silhouette << "\n";
    return 0;
}

int cmd_optimize_lambda(const CliOptions& o) {
    asc::PipelineConfig config = make_config(o);
    LoadedInputs in = load_inputs(o, true);

    asc::SimilarityMatrix num = asc::numeric_similarity_matrix(in.numeric);
    if (config.rescale_numeric) num = asc::rescale_offdiagonal(num);
    asc::SimilarityMatrix txt = asc::text_similarity_matrix(in.text);

    asc::LambdaOptions opts;
    opts.step = config.lambda_step;
    opts.max_triples = config.max_triples;
    opts.seed = asc::stage_seed(config.seed, "lambda");
    opts.literal_rhs = config.eq7_literal;
    asc::LambdaSolution sol = asc::optimize_lambda(num, txt, in.constraints, opts);

    fs::create_directories(o.out_dir);
    std::ofstream out(fs::path(o.out_dir) / "lambda_grid.csv");
    out << "lambda,mean_must_link_sim,mean_cannot_link_sim,satisfied_fraction,feasible\n";
    for (const auto& row : sol.grid)
        out << asc::format_double(row.lambda) << ","
            << asc::format_double(row.mean_must_link) << ","
            << asc::format_double(row.mean_cannot_link) << ","
            << asc::format_double(row.satisfied_fraction) << ","
            << (row.feasible ? 1 : 0) << "\n";
    std::cout << "lambda=" << asc::format_double(sol.lambda)
              << " objective=" << asc::format_double(sol.objective)
              << " satisfied=" << asc::format_double(sol.satisfied_fraction) << "\n";
    return 0;
}

int cmd_select_k(const CliOptions& o) {
    asc::PipelineConfig config = make_config(o);
    bool need_constraints = !config.fixed_lambda;
    LoadedInputs in = load_inputs(o, need_constraints);
    asc::AscResult res = asc::run_asc(in.numeric, in.text, in.constraints, config);
    asc::write_artifacts(o.out_dir, res, in.numeric, in.text, config);
    std::cout << "chosen_k=" << res.selection.chosen_k << " candidates=";
    for (size_t i = 0; i < res.selection.candidates.size(); ++i)
        std::cout << (i ? "," : "") << res.selection.candidates[i];
    std::cout << "\n";
    return 0;
}

int cmd_profile(const std::string& text_path, const std::string& lexicon_path,
                const std::string& assignments_path, const std::string& out_path) {
    std::ifstream in(assignments_path);
    if (!in) throw asc::InputError("cannot open file: " + assignments_path);
    std::vector<std::string> ids;
    std::vector<int> labels;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || (lineno == 1 && line.rfind("id,", 0) == 0)) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw asc::InputError(assignments_path + ": bad line " + std::to_string(lineno));
        ids.push_back(line.substr(0, comma));
        labels.push_back(std::stoi(line.substr(comma + 1)));
    }
    asc::TextDataset text = asc::load_term_frequency(text_path, lexicon_path, ids);
    int k = 0;
    for (int l : labels) k = std::max(k, l + 1);
    asc::ClusterProfile prof = asc::word_frequency_ratio(text, labels, k);

    std::ofstream out(out_path);
    if (!out) throw asc::InputError("cannot open file for writing: " + out_path);
    out << "term";
    for (int c = 0; c < k; ++c) out << ",cluster_" << c;
    out << ",dominant\n";
    for (int t = 0; t < prof.ratios.rows(); ++t) {
        out << prof.terms[t];
        for (int c = 0; c < k; ++c) out << "," << asc::format_double(prof.ratios(t, c));
        out << "," << prof.dominant[t] << "\n";
    }
    return 0;
}

std::vector<int> parse_group_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

int cmd_synth(int n, int clusters, std::uint64_t seed, const std::string& numeric_groups,
              const std::string& text_groups, double noise, double dispersion,
              double numeric_outliers, const std::string& out_dir) {
    asc::SyntheticSpec spec;
    spec.n = n;
    spec.clusters = clusters;
    spec.seed = seed;
    spec.numeric_noise = noise;
    spec.text_dispersion = dispersion;
    spec.numeric_outlier_fraction = numeric_outliers;
    if (!numeric_groups.empty()) spec.numeric_groups = parse_group_list(numeric_groups);
    if (!text_groups.empty()) spec.text_groups = parse_group_list(text_groups);

    asc::SyntheticBundle bundle = asc::generate_synthetic(spec);
    fs::create_directories(out_dir);
    auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };
    asc::save_numeric_csv(bundle.numeric, path("numeric.csv"));
    asc::save_term_frequency(bundle.text, path("text_tf.csv"));
    asc::save_lexicon(bundle.text, path("lexicon.txt"));
    asc::save_constraints(bundle.constraints, path("constraints.json"));
    asc::save_labels_csv(bundle.numeric.samples, bundle.labels, path("labels.csv"));
    std::cout << "wrote synthetic bundle to " << out_dir << "\n";
    return 0;
}

int cmd_eval(const std::string& points_path, const std::string& assignments_path,
             const std::string& out_path) {
    asc::NumericDataset points = asc::load_numeric_csv(points_path);
    std::vector<int> labels = asc::load_labels_csv(assignments_path);
    if (static_cast<int>(labels.size()) != points.n())
        throw asc::InputError("assignments do not align with points");
    int k = 0;
    for (int l : labels) k = std::max(k, l + 1);
    Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(k, points.p());
    std::vector<int> sizes(k, 0);
    for (int i = 0; i < points.n(); ++i) {
        centers.row(labels[i]) += points.values.row(i);
        ++sizes[labels[i]];
    }
    for (int c = 0; c < k; ++c)
        if (sizes[c] > 0) centers.row(c) /= sizes[c];

    asc::MetricBundle m = asc::metric_bundle(points.values, labels, centers);
    std::ostringstream json;
    json << "{\n  \"schema_version\": 1,\n"
         << "  \"silhouette\": " << asc::format_double(m.silhouette) << ",\n"
         << "  \"intra_inter\": " << asc::format_double(m.intra_inter) << ",\n"
         << "  \"calinski_harabasz\": " << asc::format_double(m.calinski_harabasz) << ",\n"
         << "  \"davies_bouldin\": " << asc::format_double(m.davies_bouldin) << "\n}\n";
    if (out_path.empty()) {
        std::cout << json.str();
    } else {
        std::ofstream out(out_path);
        out << json.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Advanced spectral clustering for mixed numeric/text data"};
    app.require_subcommand(1);

    CliOptions cluster_opts, lambda_opts, selectk_opts, ablate_opts;
    std::string ablate_modality = "numeric";

    auto* cluster = app.add_subcommand("cluster", "run the full pipeline");
    add_pipeline_flags(cluster, cluster_opts, false);

    auto* optimize = app.add_subcommand("optimize-lambda", "grid-search the fusion weight");
    add_pipeline_flags(optimize, lambda_opts, true);

    auto* selectk = app.add_subcommand("select-k", "report eigengap candidates and the chosen k");
    add_pipeline_flags(selectk, selectk_opts, false);

    auto* ablate = app.add_subcommand("ablate", "single-modality pipeline run");
    add_pipeline_flags(ablate, ablate_opts, false);
    ablate->add_option("--modality", ablate_modality, "numeric | text")->required();

    std::string prof_text, prof_lexicon, prof_assignments, prof_out = "profile.csv";
    auto* profile = app.add_subcommand("profile", "per-cluster word frequency ratios");
    profile->add_option("--text", prof_text)->required();
    profile->add_option("--lexicon", prof_lexicon)->required();
    profile->add_option("--assignments", prof_assignments)->required();
    profile->add_option("--out", prof_out);

    int synth_n = 150, synth_clusters = 3;
    std::uint64_t synth_seed = 1;
    std::string synth_numeric_groups, synth_text_groups, synth_out = "synth_out";
    double synth_noise = 1.0, synth_dispersion = 1.0, synth_numeric_outliers = 0.0;
    auto* synth = app.add_subcommand("synth", "generate a planted-cluster bundle");
    synth->add_option("--n", synth_n);
    synth->add_option("--clusters", synth_clusters);
    synth->add_option("--seed", synth_seed);
    synth->add_option("--numeric-groups", synth_numeric_groups,
                      "comma list: numeric component per cluster");
    synth->add_option("--text-groups", synth_text_groups,
                      "comma list: text component per cluster");
    synth->add_option("--noise", synth_noise);
    synth->add_option("--dispersion", synth_dispersion);
    synth->add_option("--numeric-outliers", synth_numeric_outliers,
                      "fraction per cluster with misleading numeric rows");
    synth->add_option("--out", synth_out);

    std::string eval_points, eval_assignments, eval_out;
    auto* eval = app.add_subcommand("eval", "metric bundle for an existing assignment");
    eval->add_option("--points", eval_points)->required();
    eval->add_option("--assignments", eval_assignments)->required();
    eval->add_option("--out", eval_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cluster->parsed()) return cmd_cluster(cluster_opts, asc::Modality::fused);
        if (optimize->parsed()) return cmd_optimize_lambda(lambda_opts);
        if (selectk->parsed()) return cmd_select_k(selectk_opts);
        if (ablate->parsed())
            return cmd_cluster(ablate_opts, asc::modality_from_string(ablate_modality));
        if (profile->parsed())
            return cmd_profile(prof_text, prof_lexicon, prof_assignments, prof_out);
        if (synth->parsed())
            return cmd_synth(synth_n, synth_clusters, synth_seed, synth_numeric_groups,
                             synth_text_groups, synth_noise, synth_dispersion,
                             synth_numeric_outliers, synth_out);
        if (eval->parsed()) return cmd_eval(eval_points, eval_assignments, eval_out);
    } catch (const asc::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const asc::NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const asc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

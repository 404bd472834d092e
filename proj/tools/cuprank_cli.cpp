// cuprank command line tool: offline training and evaluation stages plus
// the online ranking service.
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 internal error.

#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cuprank/artifact.hpp"
#include "cuprank/errors.hpp"
#include "cuprank/log_io.hpp"
#include "cuprank/metrics.hpp"
#include "cuprank/pipeline.hpp"
#include "cuprank/scenario.hpp"
#include "cuprank/server.hpp"
#include "cuprank/simulate.hpp"

namespace {

using namespace cuprank;

void print_error(const std::string& type, const std::string& message) {
    nlohmann::json doc;
    doc["error"] = {{"type", type}, {"message", message}};
    std::cerr << doc.dump() << "\n";
}

std::vector<ArmSpec> parse_arms(const std::string& arms_csv) {
    std::vector<ArmSpec> arms;
    std::size_t start = 0;
    while (start <= arms_csv.size()) {
        const auto comma = arms_csv.find(',', start);
        const auto token = arms_csv.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!token.empty()) arms.push_back({token, parse_arm_kind(token)});
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (arms.empty()) throw ConfigError("no arms given");
    return arms;
}

ArmCounts parse_row(const std::string& row) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto colon = row.find(':', start);
        fields.push_back(row.substr(
            start, colon == std::string::npos ? std::string::npos : colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (fields.size() < 4 || fields.size() > 5)
        throw ConfigError("row must be label:users:searches:clicks[:converted]");
    ArmCounts counts;
    counts.label = fields[0];
    try {
        counts.users = std::stoull(fields[1]);
        counts.searches = std::stoull(fields[2]);
        counts.clicks = std::stoull(fields[3]);
        if (fields.size() == 5) counts.converted_users = std::stoull(fields[4]);
    } catch (const std::logic_error&) {
        throw ConfigError("row has non-numeric counts: " + row);
    }
    return counts;
}

void emit_report(const MetricsReport& report, const std::string& out_path) {
    const std::string machine = report_to_json(report);
    std::cout << machine << "\n\n" << report_to_table(report);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write report: " + out_path);
        out << machine << "\n";
    }
}

std::pair<std::string, int> parse_listen(const std::string& listen) {
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos)
        throw ConfigError("listen address must be host:port, got '" + listen + "'");
    try {
        return {listen.substr(0, colon), std::stoi(listen.substr(colon + 1))};
    } catch (const std::logic_error&) {
        throw ConfigError("bad port in listen address '" + listen + "'");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Contextual user profile ranking engine"};
    app.require_subcommand(1);

    // train ------------------------------------------------------------
    auto* train = app.add_subcommand("train", "Train a model artifact from a review log");
    std::string log_path, schema_path, vocab_path, out_path, k_range_text = "2..8";
    TrainOptions train_options;
    bool strict = false;
    train->add_option("--log", log_path, "Review log (JSON lines)")->required();
    train->add_option("--schema", schema_path, "Context schema file")->required();
    train->add_option("--vocab", vocab_path, "Endorsement vocabulary file")->required();
    train->add_option("--out", out_path, "Output artifact path")->required();
    train->add_option("--k-range", k_range_text, "Cluster counts to try, e.g. 2..30 or 17");
    train->add_option("--threshold", train_options.prune_threshold, "CUP pruning threshold");
    train->add_option("--seed", train_options.seed, "Training seed");
    train->add_option("--restarts", train_options.restarts, "k-means restarts per k");
    train->add_option("--max-iter", train_options.max_iter, "k-means iteration cap");
    train->add_option("--tol", train_options.tol, "k-means convergence tolerance");
    train->add_option("--silhouette-cap", train_options.silhouette_cap,
                      "Subsample size for silhouette on large corpora");
    train->add_option("--alpha", train_options.alpha, "Laplace smoothing");
    train->add_option("--min-support", train_options.min_support,
                      "Reviews required before a CUP gets its own ranker");
    train->add_flag("--uniform-prior", train_options.uniform_prior,
                    "Use a uniform destination prior");
    train->add_option("--endorsement-scale", train_options.endorsement_scale,
                      "Distance weight of the endorsement block");
    train->add_option("--context-scale", train_options.context_scale,
                      "Distance weight of the context block");
    train->add_flag("--strict", strict, "Abort on the first malformed log record");

    // evaluate ----------------------------------------------------------
    auto* evaluate = app.add_subcommand("evaluate", "Compute engagement metrics from raw counts");
    std::vector<std::string> rows;
    std::string eval_out;
    evaluate
        ->add_option("--row", rows,
                     "Arm counts as label:users:searches:clicks[:converted]; first row is the "
                     "baseline")
        ->required()
        ->expected(-1);
    evaluate->add_option("--out", eval_out, "Also write the JSON report here");

    // simulate ----------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "Generate, train, and A/B simulate a scenario");
    std::string scenario_path, arms_csv = "global,contextual", sim_out;
    std::uint64_t seed_override = 0;
    bool has_seed_override = false;
    simulate->add_option("--scenario", scenario_path, "Scenario config file")->required();
    simulate->add_option("--arms", arms_csv, "Comma-separated arms (first is the baseline)");
    simulate->add_option("--seed", seed_override, "Override the scenario seed")
        ->each([&](const std::string&) { has_seed_override = true; });
    simulate->add_option("--out", sim_out, "Also write the JSON report here");

    // generate ----------------------------------------------------------
    auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic review log");
    std::string gen_scenario, gen_out, gen_truth;
    std::uint64_t gen_seed = 0;
    bool has_gen_seed = false;
    generate_cmd->add_option("--scenario", gen_scenario, "Scenario config file")->required();
    generate_cmd->add_option("--out", gen_out, "Output review log (JSON lines)")->required();
    generate_cmd->add_option("--truth", gen_truth, "Optional ground-truth JSON output");
    generate_cmd->add_option("--seed", gen_seed, "Override the scenario seed")
        ->each([&](const std::string&) { has_gen_seed = true; });

    // serve ---------------------------------------------------------------
    auto* serve = app.add_subcommand("serve", "Run the read-only ranking service");
    std::string model_path, serve_schema_path, listen;
    bool lenient = false;
    serve->add_option("--model", model_path, "Model artifact")->required();
    serve->add_option("--schema", serve_schema_path, "Context schema file")->required();
    serve->add_option("--listen", listen, "host:port (default $CUPRANK_LISTEN or 127.0.0.1:8080)");
    serve->add_flag("--lenient", lenient, "Ignore unknown categories/endorsements in requests");

    // inspect ---------------------------------------------------------------
    auto* inspect = app.add_subcommand("inspect", "Dump the CUPs of a model artifact");
    std::string inspect_model, inspect_schema;
    bool inspect_json = false;
    inspect->add_option("model,--model", inspect_model, "Model artifact")->required();
    inspect->add_option("--schema", inspect_schema, "Context schema file")->required();
    inspect->add_flag("--json", inspect_json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        print_error("usage", e.what());
        return 1;
    }

    if (train->parsed()) {
        train_options.k_range = parse_k_range(k_range_text);
        const TrainResult result =
            train_from_files(log_path, schema_path, vocab_path, train_options, strict);
        save_artifact(result.artifact, out_path);
        std::cout << "ingested " << result.ingest.accepted << " reviews ("
                  << result.ingest.skipped << " skipped)\n";
        for (const auto& [reason, count] : result.ingest.skip_reasons)
            std::cout << "  skipped " << count << " " << reason << "\n";
        std::cout << "silhouette by k:";
        for (const auto& [k, score] : result.silhouette.per_k) {
            char buf[48];
            std::snprintf(buf, sizeof(buf), " %zu=%.4f", k, score);
            std::cout << buf;
        }
        std::cout << "\nchosen k=" << result.artifact.chosen_k << ", surviving CUPs="
                  << result.artifact.cups.cups.size() << " (dropped "
                  << result.dropped_clusters << " clusters, reassigned "
                  << result.reassigned_reviews << " reviews)\n"
                  << "contextual rankers=" << result.artifact.suite.per_cup.size()
                  << " (min support " << result.artifact.suite.min_support << ")\n"
                  << "artifact written to " << out_path << "\n";
        return 0;
    }

    if (evaluate->parsed()) {
        std::vector<ArmCounts> counts;
        for (const auto& row : rows) counts.push_back(parse_row(row));
        emit_report(build_report(counts), eval_out);
        return 0;
    }

    if (simulate->parsed()) {
        Scenario scenario = load_scenario(scenario_path);
        if (has_seed_override) {
            scenario.synth.seed = seed_override;
            scenario.train.seed = seed_override;
            scenario.sim.seed = seed_override;
        }
        const auto arms = parse_arms(arms_csv);
        const auto workload = generate(scenario.synth, scenario.schema, scenario.vocab);
        const TrainResult trained =
            train_model(workload.reviews, scenario.schema, scenario.vocab, scenario.train);
        std::cout << "trained on " << workload.reviews.size() << " reviews: k="
                  << trained.artifact.chosen_k << ", CUPs=" << trained.artifact.cups.cups.size()
                  << ", contextual rankers=" << trained.artifact.suite.per_cup.size() << "\n";
        const MetricsReport report = simulate_ab(scenario.synth, scenario.schema, scenario.vocab,
                                                 trained.artifact, arms, scenario.sim);
        emit_report(report, sim_out);
        return 0;
    }

    if (generate_cmd->parsed()) {
        Scenario scenario = load_scenario(gen_scenario);
        if (has_gen_seed) scenario.synth.seed = gen_seed;
        const auto workload = generate(scenario.synth, scenario.schema, scenario.vocab);
        std::ofstream out(gen_out, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write log: " + gen_out);
        for (const auto& review : workload.reviews) out << review_to_json_line(review) << "\n";
        if (!gen_truth.empty()) {
            nlohmann::json truth;
            truth["personas"] = workload.persona_names;
            truth["persona_ranking"] = workload.persona_ranking;
            truth["user_initial_persona"] = workload.user_initial_persona;
            truth["review_persona"] = workload.review_persona;
            std::ofstream tout(gen_truth, std::ios::binary | std::ios::trunc);
            if (!tout) throw DataError("cannot write truth: " + gen_truth);
            tout << truth.dump() << "\n";
        }
        std::cout << "wrote " << workload.reviews.size() << " reviews to " << gen_out << "\n";
        return 0;
    }

    if (serve->parsed()) {
        if (listen.empty()) {
            const char* env = std::getenv("CUPRANK_LISTEN");
            listen = env ? env : "127.0.0.1:8080";
        }
        const auto [host, port] = parse_listen(listen);
        ServerOptions options;
        options.host = host;
        options.port = port;
        options.strict = !lenient;
        RankService service(load_schema(serve_schema_path), options);
        service.load_model(model_path);
        const int bound = service.start();
        std::cout << "serving on " << host << ":" << bound << " (snapshot "
                  << service.current_snapshot_id() << ")\n";
        for (;;) std::this_thread::sleep_for(std::chrono::hours(24));
    }

    if (inspect->parsed()) {
        const auto schema = load_schema(inspect_schema);
        const auto artifact = load_artifact(inspect_model);
        if (artifact.schema_hash != schema.content_hash())
            throw ModelError("artifact was built against a different schema");
        if (inspect_json) {
            std::cout << RankService::profiles_json(artifact, schema) << "\n";
        } else {
            std::cout << RankService::profiles_table(artifact, schema);
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        print_error("data", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 3;
    }
}

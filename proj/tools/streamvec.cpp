// Apache License, Version 2.0, refer to LICENSE.txt

// streamvec: train incremental word embeddings on a text stream, evaluate
// them periodically, and rank hyperparameter grids.

#include "streamvec/ranking.hpp"
#include "streamvec/run.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace streamvec;

namespace {

constexpr int kUsageError = 2;

struct ModelFlags {
    std::string model = "isg";
};

void add_model_options(CLI::App& app, RunConfig& c, ModelFlags& m, bool with_hyper) {
    app.add_option("--model", m.model, "wcm, isg or icbow")->check(CLI::IsMember({"wcm", "isg", "icbow"}));
    app.add_option("--corpus", c.corpus, "UTF-8 text, one document per line");
    app.add_option("--batch-size", c.batch_size, "documents per mini-batch")->capture_default_str();
    app.add_option("--vocab-size", c.vocab_size, "word vocabulary capacity")->capture_default_str();
    if (with_hyper) {
        app.add_option("--emb-size", c.emb_size)->capture_default_str();
        app.add_option("--window-size", c.window_size)->capture_default_str();
        app.add_option("--num-ns", c.num_ns, "negative samples per positive (isg, icbow)")->capture_default_str();
        app.add_option("--context-size", c.context_size, "context vocabulary capacity (wcm)")->capture_default_str();
    }
    app.add_option("--lr", c.lr, "SGD learning rate (isg, icbow)")->capture_default_str();
    app.add_option("--table-size", c.table_size, "unigram table entries (isg, icbow)")->capture_default_str();
    app.add_option("--alpha", c.alpha, "unigram smoothing exponent (isg, icbow)")->capture_default_str();
    app.add_option("--seed", c.seed)->capture_default_str();
}

void add_eval_options(CLI::App& app, RunConfig& c) {
    app.add_option("--eval-every", c.eval_every, "evaluate after every p instances")->capture_default_str();
    app.add_option("--eval-similarity", c.eval_similarity, "word1<TAB>word2<TAB>score files");
    app.add_option("--eval-categorization", c.eval_categorization, "word<TAB>category files");
    app.add_option("--eval-analogy", c.eval_analogy, "'a b c d' files");
    app.add_flag("--deterministic", c.deterministic, "write wall_ms as 0 so logs are reproducible");
}

std::set<std::string> given_flags(const CLI::App& app) {
    std::set<std::string> given;
    for (const CLI::Option* opt : app.get_options())
        if (opt->count() > 0 && !opt->get_lnames().empty()) given.insert(opt->get_lnames().front());
    return given;
}

// Splices "key=value" lines from --config files into the argument list.
// Keys that also appear on the command line are left to the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::vector<std::string> cli, files;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            files.push_back(args[++i]);
        } else if (args[i].rfind("--config=", 0) == 0) {
            files.push_back(args[i].substr(9));
        } else {
            cli.push_back(args[i]);
        }
    }
    if (files.empty()) return cli;

    std::set<std::string> on_cli;
    for (const auto& a : cli)
        if (a.rfind("--", 0) == 0) on_cli.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));

    std::vector<std::string> from_file;
    for (const auto& path : files) {
        std::ifstream in(path);
        if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
        std::string line;
        while (std::getline(in, line)) {
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw CLI::ValidationError("--config", "expected key=value: " + line);
            auto trim = [](const std::string& s) {
                const auto a = s.find_first_not_of(" \t\"");
                const auto b = s.find_last_not_of(" \t\"");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (on_cli.count(key)) continue;
            if (key == "deterministic") {
                if (value == "true" || value == "1") from_file.push_back("--deterministic");
                continue;
            }
            from_file.push_back("--" + key);
            from_file.push_back(value);
        }
    }
    // Subcommand name stays first so the spliced flags reach it.
    std::vector<std::string> out;
    if (!cli.empty()) out.push_back(cli.front());
    out.insert(out.end(), from_file.begin(), from_file.end());
    if (cli.size() > 1) out.insert(out.end(), cli.begin() + 1, cli.end());
    return out;
}

RunLog load_run_log(const std::string& path) {
    RunLog log;
    log.name = fs::path(path).stem().string();
    log.records = read_log(path);
    const fs::path cfg = fs::path(path).replace_extension(".cfg");
    if (fs::exists(cfg)) log.params = read_config_params(cfg.string());
    return log;
}

void emit_report(const RankingReport& report, const std::string& path) {
    for (const auto& name : report.excluded)
        std::cerr << "warning: " << name << " has no successful evaluations and is not ranked\n";
    if (path.empty()) {
        write_ranking_tsv(report, std::cout);
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write report " + path);
    write_ranking_tsv(report, out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Incremental word embeddings from text streams"};
    app.require_subcommand(1);

    RunConfig train_cfg;
    ModelFlags train_model;
    auto* train = app.add_subcommand("train", "train one model with periodic evaluation");
    add_model_options(*train, train_cfg, train_model, true);
    add_eval_options(*train, train_cfg);
    train->add_option("--out", train_cfg.out, "JSON evaluation log (default <config>.json)");
    train->add_option("--dump", train_cfg.dump, "final embeddings (default: log path with .vec)");

    RunConfig dump_cfg;
    ModelFlags dump_model;
    auto* dump = app.add_subcommand("dump", "train without evaluation and write the embeddings");
    add_model_options(*dump, dump_cfg, dump_model, true);
    dump->add_option("--out", dump_cfg.dump, "embedding file")->required();

    RunConfig grid_cfg;
    ModelFlags grid_model;
    std::vector<std::size_t> emb_sizes{100, 200, 300}, window_sizes{1, 2, 3}, num_ns_values{6, 8, 10},
        context_sizes{500, 750, 1000};
    std::string grid_dir, grid_report;
    auto* grid = app.add_subcommand("grid", "run a hyperparameter grid and rank it");
    add_model_options(*grid, grid_cfg, grid_model, false);
    add_eval_options(*grid, grid_cfg);
    grid->add_option("--emb-sizes", emb_sizes)->delimiter(',')->capture_default_str();
    grid->add_option("--window-sizes", window_sizes)->delimiter(',')->capture_default_str();
    grid->add_option("--num-ns-values", num_ns_values, "(isg, icbow)")->delimiter(',')->capture_default_str();
    grid->add_option("--context-sizes", context_sizes, "(wcm)")->delimiter(',')->capture_default_str();
    grid->add_option("--out-dir", grid_dir, "directory for logs, configs and embeddings")->required();
    grid->add_option("--report", grid_report, "ranking TSV (default <out-dir>/ranking.tsv)");

    std::vector<std::string> rank_logs;
    std::string rank_out;
    auto* rank = app.add_subcommand("rank", "rank finished runs from their JSON logs");
    rank->add_option("logs", rank_logs, "JSON logs; a sibling .cfg adds hyperparameter columns")->required();
    rank->add_option("--out", rank_out, "ranking TSV (default stdout)");

    try {
        auto forward = expand_config(std::vector<std::string>(argv + 1, argv + argc));
        std::vector<std::string> reversed(forward.rbegin(), forward.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kUsageError;
    }

    try {
        if (*train) {
            train_cfg.model = parse_model_kind(train_model.model);
            validate(train_cfg, given_flags(*train));
            if (train_cfg.out.empty()) train_cfg.out = config_name(train_cfg) + ".json";
            if (train_cfg.dump.empty()) train_cfg.dump = fs::path(train_cfg.out).replace_extension(".vec").string();
        } else if (*dump) {
            dump_cfg.model = parse_model_kind(dump_model.model);
            validate(dump_cfg, given_flags(*dump));
            dump_cfg.eval_every = std::numeric_limits<std::uint64_t>::max();
        } else if (*grid) {
            grid_cfg.model = parse_model_kind(grid_model.model);
            auto given = given_flags(*grid);
            if (grid_cfg.model == ModelKind::wcm && given.count("num-ns-values"))
                throw ConfigError("--num-ns-values does not apply to model wcm");
            if (grid_cfg.model != ModelKind::wcm && given.count("context-sizes"))
                throw ConfigError("--context-sizes only applies to model wcm");
            validate(grid_cfg, given);
        }
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (*train) {
            const auto res = run_train(train_cfg);
            std::cerr << config_name(train_cfg) << ": " << res.periodic.instances << " documents, "
                      << res.periodic.rounds << " evaluation round(s), " << res.vocabulary << " words -> "
                      << train_cfg.out << ", " << train_cfg.dump << "\n";
        } else if (*dump) {
            const auto res = run_train(dump_cfg);
            std::cerr << res.vocabulary << " words -> " << dump_cfg.dump << "\n";
        } else if (*grid) {
            fs::create_directories(grid_dir);
            const bool wcm = grid_cfg.model == ModelKind::wcm;
            const auto& third = wcm ? context_sizes : num_ns_values;
            std::vector<RunLog> logs;
            for (std::size_t emb : emb_sizes)
                for (std::size_t win : window_sizes)
                    for (std::size_t x : third) {
                        RunConfig c = grid_cfg;
                        c.emb_size = emb;
                        c.window_size = win;
                        (wcm ? c.context_size : c.num_ns) = x;
                        validate(c);
                        const std::string name = config_name(c);
                        const fs::path base = fs::path(grid_dir) / name;
                        c.out = base.string() + ".json";
                        c.dump = base.string() + ".vec";
                        write_config_file(c, base.string() + ".cfg");
                        std::cerr << "running " << name << "\n";
                        run_train(c);
                        logs.push_back(load_run_log(c.out));
                    }
            emit_report(rank_runs(logs), grid_report.empty() ? (fs::path(grid_dir) / "ranking.tsv").string() : grid_report);
        } else if (*rank) {
            std::vector<RunLog> logs;
            for (const auto& p : rank_logs) logs.push_back(load_run_log(p));
            emit_report(rank_runs(logs), rank_out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/run.hpp"

#include "streamvec/corpus.hpp"
#include "streamvec/w2v.hpp"
#include "streamvec/wcm.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace streamvec {

const char* to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::wcm: return "wcm";
    case ModelKind::isg: return "isg";
    case ModelKind::icbow: return "icbow";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& text) {
    if (text == "wcm") return ModelKind::wcm;
    if (text == "isg") return ModelKind::isg;
    if (text == "icbow") return ModelKind::icbow;
    throw ConfigError("--model: expected one of wcm, isg, icbow, got '" + text + "'");
}

void validate(const RunConfig& c, const std::set<std::string>& given) {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    if (c.model == ModelKind::wcm) {
        for (const char* flag : {"num-ns", "lr", "table-size", "alpha"})
            require(!given.count(flag), std::string("--") + flag + " does not apply to model wcm");
    } else {
        require(!given.count("context-size"), "--context-size only applies to model wcm");
    }
    require(!c.corpus.empty(), "--corpus is required");
    require(c.emb_size >= 1, "--emb-size must be at least 1");
    require(c.window_size >= 1, "--window-size must be at least 1");
    require(c.vocab_size >= 1, "--vocab-size must be at least 1");
    require(c.batch_size >= 1, "--batch-size must be at least 1");
    require(c.eval_every >= 1, "--eval-every must be at least 1");
    if (c.model == ModelKind::wcm) {
        require(c.context_size >= 1, "--context-size must be at least 1");
        require(c.emb_size <= c.context_size, "--emb-size must not exceed --context-size for model wcm");
    } else {
        require(c.num_ns >= 1, "--num-ns must be at least 1");
        require(c.table_size >= 1, "--table-size must be at least 1");
        require(c.lr > 0.0, "--lr must be positive");
        require(c.alpha > 0.0 && c.alpha <= 1.0, "--alpha must be in (0, 1]");
    }
}

std::unique_ptr<EmbeddingModel> make_model(const RunConfig& c) {
    if (c.model == ModelKind::wcm) {
        WcmConfig wc;
        wc.vocab_size = c.vocab_size;
        wc.context_size = c.context_size;
        wc.window_size = c.window_size;
        wc.emb_size = c.emb_size;
        return std::make_unique<WcmModel>(wc);
    }
    W2vConfig w;
    w.head = c.model == ModelKind::isg ? W2vHead::skipgram : W2vHead::cbow;
    w.vocab_size = c.vocab_size;
    w.emb_size = c.emb_size;
    w.window_size = c.window_size;
    w.num_ns = c.num_ns;
    w.lr = static_cast<float>(c.lr);
    w.table_size = c.table_size;
    w.alpha = c.alpha;
    w.seed = c.seed;
    return std::make_unique<W2vModel>(w);
}

std::string config_name(const RunConfig& c) {
    std::ostringstream s;
    s << to_string(c.model) << "_emb" << c.emb_size << "_win" << c.window_size;
    if (c.model == ModelKind::wcm)
        s << "_ctx" << c.context_size;
    else
        s << "_ns" << c.num_ns;
    return s.str();
}

std::map<std::string, std::string> config_params(const RunConfig& c) {
    std::map<std::string, std::string> p;
    p["model"] = to_string(c.model);
    p["emb_size"] = std::to_string(c.emb_size);
    p["window_size"] = std::to_string(c.window_size);
    if (c.model == ModelKind::wcm)
        p["context_size"] = std::to_string(c.context_size);
    else
        p["num_ns"] = std::to_string(c.num_ns);
    return p;
}

void write_config_file(const RunConfig& c, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write config " + path);
    out << "model=" << to_string(c.model) << '\n'
        << "emb-size=" << c.emb_size << '\n'
        << "window-size=" << c.window_size << '\n';
    if (c.model == ModelKind::wcm) {
        out << "context-size=" << c.context_size << '\n';
    } else {
        out << "num-ns=" << c.num_ns << '\n'
            << "lr=" << c.lr << '\n'
            << "table-size=" << c.table_size << '\n'
            << "alpha=" << c.alpha << '\n';
    }
    out << "vocab-size=" << c.vocab_size << '\n'
        << "batch-size=" << c.batch_size << '\n'
        << "eval-every=" << c.eval_every << '\n'
        << "seed=" << c.seed << '\n';
}

std::map<std::string, std::string> read_config_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::map<std::string, std::string> raw;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\"");
            const auto b = s.find_last_not_of(" \t\"");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        raw[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    std::map<std::string, std::string> p;
    for (const auto& [key, field] : {std::pair{"model", "model"}, {"emb-size", "emb_size"},
                                     {"window-size", "window_size"}, {"num-ns", "num_ns"},
                                     {"context-size", "context_size"}})
        if (auto it = raw.find(key); it != raw.end()) p[field] = it->second;
    return p;
}

std::vector<Evaluator> load_evaluators(const RunConfig& c) {
    std::vector<Evaluator> evs;
    for (const auto& p : c.eval_similarity) evs.push_back(similarity_evaluator(load_similarity(p)));
    for (const auto& p : c.eval_categorization) evs.push_back(categorization_evaluator(load_categorization(p), c.seed));
    for (const auto& p : c.eval_analogy) evs.push_back(analogy_evaluator(load_analogy(p)));
    return evs;
}

TrainResult run_train(const RunConfig& config) {
    validate(config);
    const auto evaluators = load_evaluators(config);
    auto model = make_model(config);
    DocumentStream stream(StreamConfig{config.corpus, config.batch_size});

    PeriodicOptions opts;
    opts.period = config.eval_every;
    opts.record_wall_time = !config.deterministic;
    opts.log_path = config.out;

    TrainResult result;
    if (!config.out.empty()) write_log(config.out, {});
    result.periodic = periodic_evaluation([&] { return stream.next_batch(); }, *model, evaluators, opts);
    result.invalid_lines = stream.invalid_lines();
    if (result.invalid_lines > 0)
        std::cerr << "warning: skipped " << result.invalid_lines << " line(s) that are not valid UTF-8\n";

    if (!config.out.empty()) write_log(config.out, result.periodic.records);
    const auto snap = model->snapshot();
    result.vocabulary = snap.size();
    if (!config.dump.empty()) dump_embeddings(snap, config.dump);
    return result;
}

} // namespace streamvec

// styloguard command line: corpus ingestion, style extraction, classifier
// training and the cross-validation / reporting pipeline.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "styloguard/evaluation.hpp"
#include "styloguard/fixture_corpus.hpp"
#include "styloguard/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace styloguard;

namespace {

struct CommonArgs {
    uint64_t seed = 17;
    std::string config_path;
    std::string out_dir = "out";
    std::string data_dir;
    std::string corpus_root;
    std::string classes_arg;  // "name=subdir,..."
    unsigned threads = 1;
    bool deterministic = false;
    bool strip_headers = false;
    bool fallback_split = false;
};

// Registers the flags every subcommand shares.
void add_common(CLI::App* cmd, CommonArgs& a, bool with_corpus = true) {
    cmd->add_option("--seed", a.seed, "Seed driving all randomness");
    cmd->add_option("--config", a.config_path, "JSON config file; flags override its values");
    cmd->add_option("--out", a.out_dir, "Output directory");
    cmd->add_option("--data-dir", a.data_dir, "Lexicon data directory");
    cmd->add_option("--threads", a.threads, "Worker thread cap");
    cmd->add_flag("--deterministic", a.deterministic,
                  "Force single-threaded training paths (default behavior; kept for config echo)");
    if (with_corpus) {
        cmd->add_option("--corpus", a.corpus_root, "Corpus root: <root>/<class>/*.txt");
        cmd->add_option("--classes", a.classes_arg,
                        "Comma separated class=subdir pairs; default: one class per subdirectory");
        cmd->add_flag("--strip-headers", a.strip_headers,
                      "Drop everything up to the first blank line of each file");
        cmd->add_flag("--fallback-split", a.fallback_split,
                      "Allow proportional splits for classes smaller than train+test");
    }
}

// Values from --config are applied for any flag not set on the command line.
void merge_config(const CLI::App* cmd, CommonArgs& a) {
    if (a.config_path.empty()) return;
    std::ifstream f(a.config_path);
    if (!f) throw std::runtime_error("cannot open config file: " + a.config_path);
    json cfg = json::parse(f);
    auto unset = [cmd](const char* name) {
        const CLI::Option* o = cmd->get_option_no_throw(name);
        return o == nullptr || o->count() == 0;
    };
    if (cfg.contains("seed") && unset("--seed")) a.seed = cfg["seed"].get<uint64_t>();
    if (cfg.contains("out") && unset("--out")) a.out_dir = cfg["out"].get<std::string>();
    if (cfg.contains("data_dir") && unset("--data-dir")) a.data_dir = cfg["data_dir"];
    if (cfg.contains("corpus") && unset("--corpus")) a.corpus_root = cfg["corpus"];
    if (cfg.contains("classes") && unset("--classes")) a.classes_arg = cfg["classes"];
    if (cfg.contains("threads") && unset("--threads")) a.threads = cfg["threads"].get<unsigned>();
    if (cfg.contains("deterministic") && unset("--deterministic"))
        a.deterministic = cfg["deterministic"].get<bool>();
    if (cfg.contains("strip_headers") && unset("--strip-headers"))
        a.strip_headers = cfg["strip_headers"].get<bool>();
    if (cfg.contains("fallback_split") && unset("--fallback-split"))
        a.fallback_split = cfg["fallback_split"].get<bool>();
}

json effective_config(const CommonArgs& a, const json& extra = {}) {
    json cfg = {{"seed", a.seed},
                {"out", a.out_dir},
                {"data_dir", resolve_data_dir(a.data_dir)},
                {"corpus", a.corpus_root},
                {"classes", a.classes_arg},
                {"threads", a.threads},
                {"deterministic", a.deterministic},
                {"strip_headers", a.strip_headers},
                {"fallback_split", a.fallback_split}};
    if (!extra.is_null())
        for (auto& [k, v] : extra.items()) cfg[k] = v;
    return cfg;
}

void write_text(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
}

void echo_config(const CommonArgs& a, const json& extra = {}) {
    write_text(fs::path(a.out_dir) / "config.json", effective_config(a, extra).dump(2) + "\n");
}

std::vector<std::pair<std::string, std::string>> parse_layout(const CommonArgs& a) {
    if (a.corpus_root.empty()) throw std::runtime_error("--corpus is required");
    if (a.classes_arg.empty()) return discover_class_layout(a.corpus_root);
    std::vector<std::pair<std::string, std::string>> layout;
    std::string item;
    std::istringstream ss(a.classes_arg);
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) layout.emplace_back(item, item);
        else layout.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return layout;
}

Corpus load_corpus(const CommonArgs& a) {
    IngestOptions opts;
    opts.strip_headers = a.strip_headers;
    opts.threads = a.threads;
    return ingest_directory(a.corpus_root, parse_layout(a), opts);
}

// ---- train/classify model file plumbing

void save_model(const TrainedModel& m, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    switch (m.kind) {
        case ClassifierKind::Nb:
            write_text(out_dir / "model.json", nb_to_json(*m.nb, m.vocab).dump(2) + "\n");
            break;
        case ClassifierKind::MaxEnt:
            write_text(out_dir / "model.json", maxent_to_json(*m.maxent, m.vocab).dump(2) + "\n");
            break;
        case ClassifierKind::Winnow:
            write_text(out_dir / "model.json", winnow_to_json(*m.winnow, m.vocab).dump(2) + "\n");
            break;
        case ClassifierKind::StyleKnn:
            write_text(out_dir / "model.json", style_model_to_json(*m.style).dump(2) + "\n");
            break;
        case ClassifierKind::Lstm:
            lstm_save(*m.lstm, (out_dir / "model.bin").string());
            break;
        case ClassifierKind::Ensemble: {
            write_text(out_dir / "model_nb.json", nb_to_json(*m.nb, m.vocab).dump(2) + "\n");
            write_text(out_dir / "model_style.json", style_model_to_json(*m.style).dump(2) + "\n");
            lstm_save(*m.lstm, (out_dir / "model_lstm.bin").string());
            write_text(out_dir / "model.json",
                       json{{"kind", "ensemble"},
                            {"version", 1},
                            {"voters",
                             {{"nb", "model_nb.json"},
                              {"style_knn", "model_style.json"},
                              {"lstm", "model_lstm.bin"}}}}
                               .dump(2) +
                           "\n");
            break;
        }
    }
}

TrainedModel load_model(const fs::path& path) {
    TrainedModel m;
    if (path.extension() == ".bin") {
        m.kind = ClassifierKind::Lstm;
        m.lstm = lstm_load<float>(path.string());
        m.classes = m.lstm->class_names;
        m.vocab.terms = m.lstm->vocab_terms;
        for (uint32_t i = 0; i < m.vocab.terms.size(); ++i)
            m.vocab.index.emplace(m.vocab.terms[i], i);
        return m;
    }
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open model file: " + path.string());
    json j = json::parse(f);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "nb") {
        m.kind = ClassifierKind::Nb;
        auto [model, vocab] = nb_from_json(j);
        m.classes = model.classes;
        m.nb = std::move(model);
        m.vocab = std::move(vocab);
    } else if (kind == "maxent") {
        m.kind = ClassifierKind::MaxEnt;
        auto [model, vocab] = maxent_from_json(j);
        m.classes = model.classes;
        m.maxent = std::move(model);
        m.vocab = std::move(vocab);
    } else if (kind == "winnow") {
        m.kind = ClassifierKind::Winnow;
        auto [model, vocab] = winnow_from_json(j);
        m.classes = model.classes;
        m.winnow = std::move(model);
        m.vocab = std::move(vocab);
    } else if (kind == "style_knn") {
        m.kind = ClassifierKind::StyleKnn;
        m.style = style_model_from_json(j);
        m.classes = m.style->classes;
    } else if (kind == "ensemble") {
        m.kind = ClassifierKind::Ensemble;
        const fs::path dir = path.parent_path();
        auto [nb, vocab] = nb_from_json(json::parse(std::ifstream(
            dir / j.at("voters").at("nb").get<std::string>())));
        m.nb = std::move(nb);
        m.vocab = std::move(vocab);
        m.style = style_model_from_json(json::parse(std::ifstream(
            dir / j.at("voters").at("style_knn").get<std::string>())));
        m.lstm = lstm_load<float>((dir / j.at("voters").at("lstm").get<std::string>()).string());
        m.classes = m.nb->classes;
    } else {
        throw std::runtime_error("unknown model kind: " + kind);
    }
    return m;
}

// ---- subcommand bodies (each returns the process exit code)

int cmd_ingest(const CommonArgs& a) {
    Corpus corpus = load_corpus(a);
    echo_config(a);
    write_text(fs::path(a.out_dir) / "manifest.json",
               manifest_to_json(corpus.manifest).dump(2) + "\n");
    for (const auto& cls : corpus.manifest.classes)
        std::printf("%-16s %zu documents\n", cls.c_str(), corpus.manifest.per_class_counts.at(cls));
    if (corpus.manifest.decode_replacements)
        std::fprintf(stderr, "warning: %llu byte sequences replaced during decoding\n",
                     static_cast<unsigned long long>(corpus.manifest.decode_replacements));
    if (corpus.manifest.skipped_empty)
        std::fprintf(stderr, "warning: %llu empty files skipped\n",
                     static_cast<unsigned long long>(corpus.manifest.skipped_empty));
    return 0;
}

int cmd_stats(const CommonArgs& a) {
    Corpus corpus = load_corpus(a);
    echo_config(a);
    const auto stats = corpus_stats(corpus);
    json out = json::object();
    std::string csv = "class,count,mean,min,max\n";
    for (const auto& [cls, s] : stats) {
        std::printf("%-16s count=%zu mean=%.1f min=%llu max=%llu\n", cls.c_str(), s.count, s.mean,
                    static_cast<unsigned long long>(s.min), static_cast<unsigned long long>(s.max));
        out[cls] = {{"count", s.count}, {"mean", s.mean}, {"min", s.min}, {"max", s.max}};
        csv += cls + "," + std::to_string(s.count) + "," + std::to_string(s.mean) + "," +
               std::to_string(s.min) + "," + std::to_string(s.max) + "\n";
    }
    write_text(fs::path(a.out_dir) / "stats.json", out.dump(2) + "\n");
    write_text(fs::path(a.out_dir) / "stats.csv", csv);
    return 0;
}

int cmd_extract(const CommonArgs& a) {
    Corpus corpus = load_corpus(a);
    echo_config(a);
    Lexicons lex(a.data_dir);
    PipelineData data = prepare_pipeline(corpus, lex, a.threads);
    write_text(fs::path(a.out_dir) / "style.csv", style_csv(data.style));
    std::printf("wrote %zu style vectors (%zu descriptors)\n", data.style.size(),
                FeatureSchema::instance().size());
    return 0;
}

struct TrainArgs {
    std::string classifier = "nb";
    size_t train_per_class = 600;
    size_t test_per_class = 100;
};

int cmd_train(const CommonArgs& a, const TrainArgs& t) {
    Corpus corpus = load_corpus(a);
    echo_config(a, {{"classifier", t.classifier},
                    {"train_per_class", t.train_per_class},
                    {"test_per_class", t.test_per_class}});
    Lexicons lex(a.data_dir);
    PipelineData data = prepare_pipeline(corpus, lex, a.threads);
    const SplitPlan plan = stratified_split(corpus.manifest, t.train_per_class, t.test_per_class,
                                            a.seed, a.fallback_split);
    write_text(fs::path(a.out_dir) / "split_plan.json", split_plan_to_json(plan).dump(2) + "\n");

    ClassifierOptions opts;
    const ClassifierKind kind = classifier_from_name(t.classifier);
    TrainedModel model = train_model(data, corpus.manifest.classes, plan.all_train(), kind, opts,
                                     a.seed);
    save_model(model, a.out_dir);
    const ConfusionMatrix cm = evaluate_model(model, data, plan.all_test());
    std::printf("%s: held-out accuracy %.4f on %llu documents\n", t.classifier.c_str(),
                cm.accuracy(), static_cast<unsigned long long>(cm.total()));
    write_text(fs::path(a.out_dir) / "holdout_confusion.csv", confusion_csv(cm, false));
    return 0;
}

int cmd_classify(const CommonArgs& a, const std::string& model_path) {
    Corpus corpus = load_corpus(a);
    echo_config(a, {{"model", model_path}});
    Lexicons lex(a.data_dir);
    PipelineData data = prepare_pipeline(corpus, lex, a.threads);
    TrainedModel model = load_model(model_path);

    std::ostringstream out;
    size_t correct = 0, labeled = 0, all_pad = 0;
    const bool uses_sequences =
        model.kind == ClassifierKind::Lstm || model.kind == ClassifierKind::Ensemble;
    for (size_t i = 0; i < corpus.documents.size(); ++i) {
        if (uses_sequences &&
            encode_sequence(data.annotated[i], model.vocab).valid == 0)
            ++all_pad;
        const DocPrediction p = classify_doc(model, data, i);
        json line = {{"id", corpus.documents[i].id}, {"final", model.classes[p.label]}};
        if (p.ensemble) {
            json votes = json::object();
            for (const auto& v : p.ensemble->votes) votes[v.voter] = v.label;
            line["votes"] = votes;
            line["tie_break"] = p.ensemble->tie_break_applied;
        }
        out << line.dump() << "\n";
        const std::string& actual = corpus.documents[i].label;
        for (const auto& c : model.classes)
            if (c == actual) {
                ++labeled;
                correct += model.classes[p.label] == actual;
                break;
            }
    }
    write_text(fs::path(a.out_dir) / "predictions.jsonl", out.str());
    if (all_pad)
        std::fprintf(stderr,
                     "warning: %zu document(s) had no in-vocabulary tokens; their sequence "
                     "classification falls back to the output-layer bias\n",
                     all_pad);
    if (labeled)
        std::printf("accuracy on labeled documents: %.4f (%zu/%zu)\n",
                    static_cast<double>(correct) / static_cast<double>(labeled), correct, labeled);
    return 0;
}

struct CvArgs {
    std::string classifier = "nb";
    size_t k = 10;
    size_t train_per_class = 600;
    size_t test_per_class = 100;
    bool no_restrict = false;
    bool significance = false;
};

int cmd_cross_validate(const CommonArgs& a, const CvArgs& c) {
    Corpus corpus = load_corpus(a);
    echo_config(a, {{"classifier", c.classifier},
                    {"k", c.k},
                    {"train_per_class", c.train_per_class},
                    {"test_per_class", c.test_per_class},
                    {"restricted", !c.no_restrict},
                    {"significance", c.significance}});
    Lexicons lex(a.data_dir);
    PipelineData data = prepare_pipeline(corpus, lex, a.threads);

    CorpusManifest manifest = corpus.manifest;
    if (!c.no_restrict) {
        const SplitPlan plan = stratified_split(corpus.manifest, c.train_per_class,
                                                c.test_per_class, a.seed, a.fallback_split);
        manifest = restrict_manifest(corpus.manifest, plan);
    }

    ClassifierOptions opts;
    const ClassifierKind kind = classifier_from_name(c.classifier);
    CvResult cv = run_cv(data, manifest, kind, c.k, a.seed, opts, a.threads);

    RunReport report;
    report.classifier = c.classifier;
    report.cv = cv;
    report.extra = {{"manifest_hash", hex64(manifest_hash(manifest))},
                    {"documents", manifest.documents.size()}};
    if (c.significance) {
        const AnovaResult sig =
            significance_vs_permuted(data, manifest, kind, c.k, a.seed, opts, a.threads, cv);
        report.extra["significance_vs_permuted"] = {
            {"f", sig.f}, {"df", {sig.df_between, sig.df_within}}, {"p", sig.p}};
    }
    write_cv_report(a.out_dir, report, lex, effective_config(a, {{"classifier", c.classifier}}));
    std::printf("%s %zu-fold accuracy: %.4f (per-fold mean %.4f, std %.4f)\n",
                c.classifier.c_str(), c.k, cv.metrics.accuracy, cv.metrics.fold_accuracy_mean,
                cv.metrics.fold_accuracy_std);
    return 0;
}

int cmd_rank_features(const CommonArgs& a) {
    Corpus corpus = load_corpus(a);
    echo_config(a);
    Lexicons lex(a.data_dir);
    PipelineData data = prepare_pipeline(corpus, lex, a.threads);

    std::vector<uint32_t> labels(corpus.documents.size());
    for (size_t i = 0; i < corpus.documents.size(); ++i)
        for (uint32_t c = 0; c < corpus.manifest.classes.size(); ++c)
            if (corpus.manifest.classes[c] == corpus.documents[i].label) labels[i] = c;

    const FeatureWeights weights =
        fisher_scores(data.style, labels, corpus.manifest.classes.size());
    const auto ranking =
        rank_features(weights, data.style, labels, corpus.manifest.classes.size());

    // per-descriptor one-way ANOVA across the classes
    const FeatureSchema& schema = FeatureSchema::instance();
    std::vector<double> pvals(schema.size(), 1.0);
    std::vector<std::string> names(schema.size());
    for (size_t f = 0; f < schema.size(); ++f) {
        names[f] = schema.at(f).name;
        std::vector<std::vector<double>> groups(corpus.manifest.classes.size());
        for (size_t i = 0; i < data.style.size(); ++i)
            groups[labels[i]].push_back(data.style[i].values[f]);
        pvals[f] = anova_f(groups).p;
    }
    write_text(fs::path(a.out_dir) / "feature_ranking.csv",
               ranking_csv(ranking, corpus.manifest.classes, &pvals, &names));
    for (size_t i = 0; i < 10 && i < ranking.size(); ++i)
        std::printf("%2zu. %-28s score=%.3f\n", i + 1, ranking[i].name.c_str(), ranking[i].score);
    return 0;
}

int cmd_report(const CommonArgs& a, const std::string& run_dir) {
    const fs::path dir = run_dir.empty() ? fs::path(a.out_dir) : fs::path(run_dir);
    json bundle = json::array();
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("summary_", 0) == 0 && entry.path().extension() == ".json") {
            std::ifstream f(entry.path());
            bundle.push_back(json::parse(f));
        }
    }
    if (bundle.empty()) {
        std::fprintf(stderr, "no summary_*.json files under %s\n", dir.string().c_str());
        return 1;
    }
    write_text(fs::path(a.out_dir) / "report.json", bundle.dump(2) + "\n");
    for (const auto& run : bundle)
        std::printf("%-10s k=%llu accuracy=%.4f\n", run.at("classifier").get<std::string>().c_str(),
                    run.at("k").get<unsigned long long>(), run.at("accuracy").get<double>());
    return 0;
}

struct FixtureArgs {
    size_t ai = 865, enron = 700, ling = 700, nigerian = 700;
};

int cmd_make_fixture(const CommonArgs& a, const FixtureArgs& f) {
    echo_config(a, {{"ai", f.ai}, {"enron", f.enron}, {"ling", f.ling}, {"nigerian", f.nigerian}});
    fixtures::FixtureOptions opts;
    opts.seed = a.seed;
    opts.ai_count = f.ai;
    opts.enron_count = f.enron;
    opts.ling_count = f.ling;
    opts.nigerian_count = f.nigerian;
    fixtures::write_fixture_corpus(fs::path(a.out_dir) / "corpus", opts);
    std::printf("fixture corpus written to %s\n", (fs::path(a.out_dir) / "corpus").string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"styloguard: detecting AI-generated phishing emails by topic, style and sequence classifiers"};
    app.require_subcommand(1);

    CommonArgs ingest_a, stats_a, extract_a, train_a, classify_a, cv_a, rank_a, report_a, fix_a;
    TrainArgs train_t;
    CvArgs cv_c;
    FixtureArgs fix_f;
    std::string classify_model, report_dir;

    auto* ingest = app.add_subcommand("ingest", "Build a corpus manifest");
    add_common(ingest, ingest_a);

    auto* stats = app.add_subcommand("stats", "Corpus character-length statistics per class");
    add_common(stats, stats_a);

    auto* extract = app.add_subcommand("extract", "Write the style descriptor CSV");
    add_common(extract, extract_a);

    auto* train = app.add_subcommand("train", "Train one classifier on a stratified split");
    add_common(train, train_a);
    train->add_option("--classifier", train_t.classifier,
                      "nb|maxent|winnow|style_knn|lstm|ensemble");
    train->add_option("--train-per-class", train_t.train_per_class, "Training documents per class");
    train->add_option("--test-per-class", train_t.test_per_class, "Held-out documents per class");

    auto* classify = app.add_subcommand("classify", "Classify documents with a trained model");
    add_common(classify, classify_a);
    classify->add_option("--model", classify_model, "Model file from `train`")->required();

    auto* cv = app.add_subcommand("cross-validate", "k-fold cross-validation with reports");
    add_common(cv, cv_a);
    cv->add_option("--classifier", cv_c.classifier, "nb|maxent|winnow|style_knn|lstm|ensemble");
    cv->add_option("--k", cv_c.k, "Number of folds");
    cv->add_option("--train-per-class", cv_c.train_per_class, "Subsample scale before folding");
    cv->add_option("--test-per-class", cv_c.test_per_class, "Subsample scale before folding");
    cv->add_flag("--no-restrict", cv_c.no_restrict, "Cross-validate the full corpus");
    cv->add_flag("--significance", cv_c.significance,
                 "ANOVA of fold accuracies against a permuted-label baseline");

    auto* rank = app.add_subcommand("rank-features", "Fisher-score feature ranking report");
    add_common(rank, rank_a);

    auto* report = app.add_subcommand("report", "Assemble summaries from a run directory");
    add_common(report, report_a, false);
    report->add_option("--run", report_dir, "Directory holding summary_*.json files");

    auto* fixture = app.add_subcommand("make-fixture", "Write the bundled synthetic demo corpus");
    add_common(fixture, fix_a, false);
    fixture->add_option("--ai", fix_f.ai, "AI-generated class size");
    fixture->add_option("--enron", fix_f.enron, "Enron class size");
    fixture->add_option("--ling", fix_f.ling, "Ling-Spam class size");
    fixture->add_option("--nigerian", fix_f.nigerian, "Nigerian class size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*ingest) { merge_config(ingest, ingest_a); return cmd_ingest(ingest_a); }
        if (*stats) { merge_config(stats, stats_a); return cmd_stats(stats_a); }
        if (*extract) { merge_config(extract, extract_a); return cmd_extract(extract_a); }
        if (*train) { merge_config(train, train_a); return cmd_train(train_a, train_t); }
        if (*classify) { merge_config(classify, classify_a); return cmd_classify(classify_a, classify_model); }
        if (*cv) { merge_config(cv, cv_a); return cmd_cross_validate(cv_a, cv_c); }
        if (*rank) { merge_config(rank, rank_a); return cmd_rank_features(rank_a); }
        if (*report) { merge_config(report, report_a); return cmd_report(report_a, report_dir); }
        if (*fixture) { merge_config(fixture, fix_a); return cmd_make_fixture(fix_a, fix_f); }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

#include "swmh/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#endif

#include "swmh/error.hpp"

namespace swmh {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

long peak_rss_kb() {
#if defined(__unix__) || defined(__APPLE__)
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) == 0) {
#if defined(__APPLE__)
        return static_cast<long>(usage.ru_maxrss / 1024);
#else
        return static_cast<long>(usage.ru_maxrss);
#endif
    }
#endif
    return 0;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path + " for reading");
    return in;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

fs::path prepare_out_dir(const RunConfig& config) {
    if (config.out_dir.empty())
        throw std::invalid_argument("output directory not set");
    fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    return dir;
}

Corpus load_corpus_files(const RunConfig& config) {
    if (config.docword_path.empty() || config.vocab_path.empty())
        throw std::invalid_argument("docword and vocab paths are required");
    std::ifstream docword = open_input(config.docword_path);
    std::ifstream vocab = open_input(config.vocab_path);
    Corpus corpus = load_corpus(docword, vocab, config.min_term_freq,
                                config.fraction, config.docword_path);
    if (!config.labels_path.empty()) {
        std::ifstream labels = open_input(config.labels_path);
        corpus.labels = load_labels(labels, config.labels_path);
        if (corpus.labels.size() < corpus.num_docs())
            throw ParseError(config.labels_path, corpus.labels.size() + 1,
                             "fewer labels than documents (" +
                                 std::to_string(corpus.labels.size()) + " < " +
                                 std::to_string(corpus.num_docs()) + ")");
        corpus.labels.resize(corpus.num_docs());
    }
    return corpus;
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

} // namespace

void RunConfig::validate() const {
    if (!(s_star > 0.0 && s_star < 1.0))
        throw std::invalid_argument("--s-star must lie in (0,1)");
    if (r == 0) throw std::invalid_argument("--r must be at least 1");
    if (quantization == 0)
        throw std::invalid_argument("--quantization must be at least 1");
    if (!(overlap > 0.0 && overlap <= 1.0))
        throw std::invalid_argument("--overlap must lie in (0,1]");
    if (min_set_size == 0)
        throw std::invalid_argument("--min-set-size must be at least 1");
    if (min_cluster_size == 0)
        throw std::invalid_argument("--min-cluster-size must be at least 1");
    if (top_m < 2) throw std::invalid_argument("--top-m must be at least 2");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("--fraction must lie in (0,1]");
    if (stage2_s_star != 0.0 && !(stage2_s_star > 0.0 && stage2_s_star < 1.0))
        throw std::invalid_argument("--stage2-s-star must lie in (0,1)");
    if (stage2_r == 0)
        throw std::invalid_argument("--stage2-r must be at least 1");
    stage1_params();  // derivation itself can reject, e.g. s_star too close to 1
    stage2_params();
}

MiningParams RunConfig::stage1_params() const {
    return MiningParams::derive(s_star, r, tables, seed, weighted, quantization);
}

MiningParams RunConfig::stage2_params() const {
    double s2 = stage2_s_star > 0.0 ? stage2_s_star : overlap * 0.85;
    // Separate the stage-2 hash family from stage 1 so term-id hashes are
    // not correlated with doc-id hashes under the same user seed.
    return MiningParams::derive(s2, stage2_r, stage2_tables, mix64(seed + 1),
                                /*weighted=*/false, 1);
}

MineResult mine(const Corpus& corpus, const InvertedFile& inv,
                const RunConfig& config) {
    config.validate();
    MineResult result;
    result.stats.docs_used = corpus.num_docs();
    result.stats.vocab_size = corpus.vocab_size();

    MiningParams stage1 = config.stage1_params();
    result.stats.tables = stage1.tables;

    auto t0 = Clock::now();
    result.sets = partition_vocabulary(
        inv, stage1, {config.min_set_size, config.threads});
    result.stats.co_term_sets = result.sets.size();
    result.stats.partition_seconds = seconds_since(t0);

    auto t1 = Clock::now();
    std::vector<IndexPair> pairs = candidate_pairs(
        result.sets, config.stage2_params(), CandidateMode::minhash,
        config.threads);
    auto clusters =
        cluster_sets(result.sets, config.overlap, pairs, config.threads);
    std::vector<Topic> topics =
        assemble_topics(clusters, result.sets, inv, config.min_cluster_size);
    result.stats.cluster_seconds = seconds_since(t1);

    auto t2 = Clock::now();
    result.topics = rank_topics(topics, inv, config.top_m, config.threads);
    result.stats.topics = result.topics.size();
    result.stats.rank_seconds = seconds_since(t2);

    result.stats.total_seconds = result.stats.load_seconds +
                                 result.stats.partition_seconds +
                                 result.stats.cluster_seconds +
                                 result.stats.rank_seconds;
    return result;
}

void write_stats_csv(std::ostream& out, const MineStats& stats) {
    out << "docs_used,vocab_size,tables,co_term_sets,topics,"
           "load_seconds,partition_seconds,cluster_seconds,rank_seconds,"
           "total_seconds,peak_rss_kb\n";
    out << stats.docs_used << ',' << stats.vocab_size << ',' << stats.tables
        << ',' << stats.co_term_sets << ',' << stats.topics << ','
        << fixed3(stats.load_seconds) << ',' << fixed3(stats.partition_seconds)
        << ',' << fixed3(stats.cluster_seconds) << ','
        << fixed3(stats.rank_seconds) << ',' << fixed3(stats.total_seconds)
        << ',' << stats.peak_rss_kb << '\n';
}

MineStats cmd_mine(const RunConfig& config) {
    config.validate();
    fs::path out_dir = prepare_out_dir(config);

    auto t0 = Clock::now();
    Corpus corpus = load_corpus_files(config);
    InvertedFile inv = build_inverted_file(corpus);
    double load_seconds = seconds_since(t0);

    MineResult result = mine(corpus, inv, config);
    result.stats.load_seconds = load_seconds;
    result.stats.total_seconds += load_seconds;
    result.stats.peak_rss_kb = peak_rss_kb();

    {
        std::ofstream topics_out = open_output(out_dir / "topics.txt");
        write_topics(topics_out, result.topics, corpus.vocab);
    }
    {
        std::ofstream stats_out = open_output(out_dir / "stats.csv");
        write_stats_csv(stats_out, result.stats);
    }
    if (!config.dump_sets_path.empty()) {
        std::ofstream dump = open_output(config.dump_sets_path);
        dump_co_term_sets(dump, result.sets);
    }
    return result.stats;
}

void cmd_eval(const RunConfig& config) {
    config.validate();
    if (config.topics_path.empty())
        throw std::invalid_argument("--topics is required");
    fs::path out_dir = prepare_out_dir(config);

    Corpus corpus = load_corpus_files(config);
    InvertedFile inv = build_inverted_file(corpus);

    std::ifstream topics_in = open_input(config.topics_path);
    std::vector<Topic> topics =
        read_topics(topics_in, corpus.vocab, config.topics_path);

    score_topics(topics, inv, config.top_m, config.threads);
    CoherenceReport report =
        coherence_report(topics, inv, config.top_m, config.threads);

    std::ofstream out = open_output(out_dir / "coherence.csv");
    write_coherence_csv(out, report, topics);
}

void cmd_features(const RunConfig& config) {
    config.validate();
    if (config.topics_path.empty())
        throw std::invalid_argument("--topics is required");
    fs::path out_dir = prepare_out_dir(config);

    Corpus corpus = load_corpus_files(config);

    std::ifstream topics_in = open_input(config.topics_path);
    std::vector<Topic> topics =
        read_topics(topics_in, corpus.vocab, config.topics_path);

    DocTopicFeatures features =
        doc_topic_features(corpus, topics, config.threads);

    std::ofstream out = open_output(out_dir / "features.txt");
    write_svmlight(out, features, corpus.labels);
}

} // namespace swmh

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "swmh/cluster.hpp"
#include "swmh/corpus.hpp"
#include "swmh/eval.hpp"
#include "swmh/minhash.hpp"
#include "swmh/partition.hpp"

namespace swmh {

/// Everything a run needs: input/output paths plus the mining knobs.
/// Command-line flags override a config file which overrides these defaults.
struct RunConfig {
    std::string docword_path;
    std::string vocab_path;
    std::string labels_path;   // optional
    std::string topics_path;   // input for eval / features
    std::string out_dir;
    std::string dump_sets_path;  // optional partition debug dump

    bool weighted = true;
    double s_star = 0.10;
    std::uint32_t r = 3;
    std::uint32_t tables = 0;  // explicit l; 0 derives it from (s_star, r)
    std::uint32_t quantization = 1;
    double overlap = kDefaultOverlap;
    std::uint32_t min_set_size = kDefaultMinSetSize;
    std::uint32_t min_cluster_size = 1;
    Freq min_term_freq = kDefaultMinTermFreq;
    std::uint32_t top_m = kDefaultTopM;
    std::uint64_t seed = 0;
    std::uint32_t threads = 0;  // 0 = hardware concurrency, 1 = sequential
    double fraction = 1.0;      // prefix of documents to mine

    // Stage-2 (set clustering) overrides; 0 means "derive".
    double stage2_s_star = 0.0;  // default: overlap * 0.85
    std::uint32_t stage2_r = 3;
    std::uint32_t stage2_tables = 0;

    /// Rejects invalid parameter combinations. Throws std::invalid_argument.
    void validate() const;

    MiningParams stage1_params() const;
    MiningParams stage2_params() const;
};

struct MineStats {
    std::size_t docs_used = 0;
    std::size_t vocab_size = 0;
    std::uint32_t tables = 0;
    std::size_t co_term_sets = 0;
    std::size_t topics = 0;
    double load_seconds = 0;
    double partition_seconds = 0;
    double cluster_seconds = 0;
    double rank_seconds = 0;
    double total_seconds = 0;
    long peak_rss_kb = 0;  // 0 when not obtainable
};

struct MineResult {
    std::vector<CoTermSet> sets;
    std::vector<Topic> topics;  // rank-ordered, scores filled
    MineStats stats;            // load_seconds/peak_rss left to the caller
};

/// The in-process pipeline: partition -> cluster -> rank over an already
/// loaded corpus. Fills the partition/cluster/rank timings and counts.
MineResult mine(const Corpus& corpus, const InvertedFile& inv,
                const RunConfig& config);

/// Full mine command: load the corpus, run the pipeline, write
/// <out>/topics.txt and <out>/stats.csv (and the sets dump when requested).
MineStats cmd_mine(const RunConfig& config);

/// Scores a topics file against a corpus and writes <out>/coherence.csv.
void cmd_eval(const RunConfig& config);

/// Exports document-topic similarity features to <out>/features.txt in
/// SVM-light format, using the labels file when given.
void cmd_features(const RunConfig& config);

/// Stats CSV layout (one header, one row; the columns after `topics` are
/// run measurements and vary between machines and runs).
void write_stats_csv(std::ostream& out, const MineStats& stats);

} // namespace swmh

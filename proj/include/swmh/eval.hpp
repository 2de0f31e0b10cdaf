#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "swmh/cluster.hpp"
#include "swmh/corpus.hpp"

namespace swmh {

constexpr std::uint32_t kDefaultTopM = 10;

struct CoherenceStats {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

/// Per-topic coherence (always <= 0; 0 and flagged for topics with fewer
/// than two usable terms) plus distribution summary.
struct CoherenceReport {
    std::vector<double> coherence;
    std::vector<char> flagged;
    std::uint32_t top_m = kDefaultTopM;
    CoherenceStats stats;
};

/**
 * Coherence of one topic over its first min(top_m, size) terms: the sum over
 * ordered pairs of log(min(D(v_m,v_l)+1, D(v_l)) / D(v_l)), where D is
 * document frequency and D(.,.) co-document frequency. The +1 smoothing
 * keeps never-co-occurring pairs finite; capping the numerator at D(v_l)
 * keeps every pair contribution <= 0 when terms always co-occur.
 *
 * Throws std::invalid_argument for top_m < 2, std::domain_error when a used
 * term occurs in no document.
 */
double coherence(const Topic& topic, const InvertedFile& inv,
                 std::uint32_t top_m = kDefaultTopM);

CoherenceReport coherence_report(std::span<const Topic> topics,
                                 const InvertedFile& inv,
                                 std::uint32_t top_m = kDefaultTopM,
                                 std::uint32_t threads = 0);

/// Fills every topic's score in place without reordering: the mean
/// co-occurrence rate of the first element with the next min(top_m, size)-1
/// terms, score(t) = mean over m of D(v_1, v_m) / D(v_1). Singleton topics
/// score 0.
void score_topics(std::span<Topic> topics, const InvertedFile& inv,
                  std::uint32_t top_m = kDefaultTopM,
                  std::uint32_t threads = 0);

/// Returns a new list with scores filled, sorted by descending score (ties:
/// support, then size, then the term lists). The input is not modified.
std::vector<Topic> rank_topics(std::span<const Topic> topics,
                               const InvertedFile& inv,
                               std::uint32_t top_m = kDefaultTopM,
                               std::uint32_t threads = 0);

/// Sparse document-topic similarity matrix; rows[d] holds (topic index,
/// value) pairs with value = |terms(d) * terms(t)| / |terms(t)|, zeros
/// omitted.
struct DocTopicFeatures {
    std::size_t num_topics = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
};

DocTopicFeatures doc_topic_features(const Corpus& corpus,
                                    std::span<const Topic> topics,
                                    std::uint32_t threads = 0);

/// Topics file: one topic per line, "score<TAB>support<TAB>term term ...".
void write_topics(std::ostream& out, std::span<const Topic> topics,
                  std::span<const std::string> vocab);

/// Parses a topics file back, resolving term strings against the corpus
/// vocabulary. Throws ParseError naming the term and line on unknown terms.
std::vector<Topic> read_topics(std::istream& in,
                               std::span<const std::string> vocab,
                               const std::string& source = "topics");

/// CSV "topic_index,coherence,score,support,size" rows followed by one
/// trailing "summary,<min>,<q1>,<median>,<q3>,<max>" row.
void write_coherence_csv(std::ostream& out, const CoherenceReport& report,
                         std::span<const Topic> topics);

/// SVM-light lines "label idx:val ...", 1-based feature indices, one line
/// per document. labels may be empty (all labels 0).
void write_svmlight(std::ostream& out, const DocTopicFeatures& features,
                    std::span<const int> labels);

} // namespace swmh

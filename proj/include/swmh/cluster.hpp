#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "swmh/corpus.hpp"
#include "swmh/minhash.hpp"
#include "swmh/partition.hpp"

namespace swmh {

constexpr double kDefaultOverlap = 0.7;

/// An ordered subset of the vocabulary: the union of the co-occurring term
/// sets in one connected component of the overlap graph. support counts the
/// merged member sets; score is filled by ranking.
struct Topic {
    std::vector<TermId> terms;
    std::uint32_t support = 0;
    double score = 0.0;
};

using IndexPair = std::pair<std::uint32_t, std::uint32_t>;

enum class CandidateMode { exact, minhash };

/// |c1 * c2| / min(|c1|, |c2|). Throws std::invalid_argument on empty sets.
double overlap_coefficient(const CoTermSet& c1, const CoTermSet& c2);

/**
 * Candidate pairs for the overlap check, each (i, j) with i < j, sorted,
 * no pair twice.
 *
 * exact mode returns all C(n,2) pairs. minhash mode indexes the plain term
 * sets into stage2.tables hash tables (weights ignored) and returns pairs
 * that shared an identical r-tuple at least once, so it may miss pairs but
 * never invents similarity; callers must still verify every returned pair.
 * Sets with identical term lists are collapsed into one representative
 * before indexing and re-attached by representative-duplicate pairs, which
 * keeps the output linear in the number of duplicates while preserving the
 * connected components of the full candidate graph.
 */
std::vector<IndexPair> candidate_pairs(std::span<const CoTermSet> sets,
                                       const MiningParams& stage2,
                                       CandidateMode mode,
                                       std::uint32_t threads = 0);

/**
 * Keeps exactly the candidate pairs with overlap_coefficient > eps as edges
 * and returns the connected components of the resulting graph, singletons
 * included. Components are listed by smallest contained index, members
 * sorted ascending. The result does not depend on the edge order.
 */
std::vector<std::vector<std::uint32_t>> cluster_sets(
    std::span<const CoTermSet> sets, double eps,
    std::span<const IndexPair> pairs, std::uint32_t threads = 0);

/**
 * Turns every cluster with at least min_cluster_size member sets into a
 * Topic: terms are the union of the member sets, ordered by descending
 * membership count, then descending document frequency, then ascending term
 * id; support is the number of member sets.
 */
std::vector<Topic> assemble_topics(
    std::span<const std::vector<std::uint32_t>> clusters,
    std::span<const CoTermSet> sets, const InvertedFile& inv,
    std::uint32_t min_cluster_size = 1);

} // namespace swmh

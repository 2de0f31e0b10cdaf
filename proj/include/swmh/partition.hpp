#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "swmh/corpus.hpp"
#include "swmh/minhash.hpp"

namespace swmh {

constexpr std::uint32_t kDefaultMinSetSize = 3;

/// A group of terms that landed in the same bucket of one hash table: one
/// cell of one random partition of the vocabulary. Term ids are unique and
/// sorted ascending.
struct CoTermSet {
    std::vector<TermId> terms;
    std::uint32_t table_index = 0;

    friend bool operator==(const CoTermSet&, const CoTermSet&) = default;
};

struct PartitionOptions {
    std::uint32_t min_set_size = kDefaultMinSetSize;
    std::uint32_t threads = 0;  // 0 = hardware concurrency
};

/**
 * Stage 1 of the mining pipeline: hashes every inverted list into l tables
 * and emits each bucket holding at least min_set_size terms as a CoTermSet.
 *
 * Each term t with a non-empty posting list is signed over its posting
 * multiset: element = doc id, weight = doc_weight * frequency, pre-scaled by
 * the median non-empty document size so a median-sized document contributes
 * one replica per occurrence. With params.weighted false the plain doc-id
 * set is signed instead. Terms sharing an identical r-tuple in a table are
 * grouped (bucket keys are only a pre-filter; tuples are compared exactly).
 *
 * Output order is canonical - by (table_index, smallest term id) - and
 * independent of the thread count. Terms with empty posting lists are
 * skipped.
 */
std::vector<CoTermSet> partition_vocabulary(const InvertedFile& inv,
                                            const MiningParams& params,
                                            const PartitionOptions& options = {});

/// Jaccard co-occurrence coefficient of k >= 2 terms: the number of
/// documents containing all of them over the number containing any.
double jcc(std::span<const TermId> terms, const InvertedFile& inv);

/// Weighted co-occurrence coefficient of k >= 2 terms: sum over documents of
/// weight * min(frequencies) over sum of weight * max(frequencies), with an
/// absent term counting as frequency 0.
double wcc(std::span<const TermId> terms, const InvertedFile& inv);

/// Debug dump: one set per line, "table_index<TAB>term_id term_id ...".
void dump_co_term_sets(std::ostream& out, std::span<const CoTermSet> sets);

} // namespace swmh

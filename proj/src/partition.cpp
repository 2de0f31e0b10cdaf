#include "swmh/partition.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "swmh/parallel.hpp"

namespace swmh {
namespace {

// Median size over non-empty documents; the weight pre-scale that makes a
// median-sized document contribute one replica per occurrence.
double median_positive_doc_size(const InvertedFile& inv) {
    std::vector<Freq> sizes;
    sizes.reserve(inv.num_docs());
    for (Freq s : inv.doc_sizes)
        if (s > 0) sizes.push_back(s);
    if (sizes.empty()) return 1.0;
    std::size_t mid = sizes.size() / 2;
    std::nth_element(sizes.begin(), sizes.begin() + mid, sizes.end());
    return static_cast<double>(sizes[mid]);
}

bool tuple_less(std::span<const std::uint64_t> a,
                std::span<const std::uint64_t> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool tuple_equal(std::span<const std::uint64_t> a,
                 std::span<const std::uint64_t> b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

std::vector<CoTermSet> partition_vocabulary(const InvertedFile& inv,
                                            const MiningParams& params,
                                            const PartitionOptions& options) {
    params.validate();
    if (options.min_set_size == 0)
        throw std::invalid_argument("min_set_size must be at least 1");

    const std::size_t num_terms = inv.num_terms();
    const double scale = params.weighted ? median_positive_doc_size(inv) : 1.0;

    // Signatures are computed once and reused across all tables.
    std::vector<MinHashSignature> sigs(num_terms);
    std::vector<char> signed_term(num_terms, 0);
    parallel_for(num_terms, options.threads, [&](std::size_t begin, std::size_t end) {
        std::vector<WeightedEntry> multiset;
        for (std::size_t t = begin; t < end; ++t) {
            const auto& postings = inv.postings[t];
            if (postings.empty()) continue;
            multiset.clear();
            multiset.reserve(postings.size());
            for (const Posting& p : postings) {
                double w = params.weighted
                               ? inv.doc_weights[p.doc] * p.freq * scale
                               : 1.0;
                multiset.push_back({p.doc, w});
            }
            sigs[t] = minhash_signature(multiset, params);
            signed_term[t] = 1;
        }
    });

    std::vector<TermId> active;
    active.reserve(num_terms);
    for (std::size_t t = 0; t < num_terms; ++t)
        if (signed_term[t]) active.push_back(static_cast<TermId>(t));

    // Bucket assembly, one table at a time.
    std::vector<std::vector<CoTermSet>> per_table(params.tables);
    parallel_for(params.tables, options.threads, [&](std::size_t begin, std::size_t end) {
        std::unordered_map<std::uint64_t, std::vector<TermId>> buckets;
        for (std::size_t table = begin; table < end; ++table) {
            const auto table_index = static_cast<std::uint32_t>(table);
            buckets.clear();
            buckets.reserve(active.size());
            for (TermId t : active)
                buckets[tuple_key(sigs[t], table_index)].push_back(t);

            auto& out = per_table[table];
            for (auto& [key, members] : buckets) {
                (void)key;
                if (members.size() < options.min_set_size) continue;
                // Keys may collide; group by the exact r-tuple. Sorting by
                // (tuple, term id) keeps each group's term ids ascending.
                std::sort(members.begin(), members.end(),
                          [&](TermId a, TermId b) {
                              auto ta = sigs[a].tuple(table_index);
                              auto tb = sigs[b].tuple(table_index);
                              if (tuple_equal(ta, tb)) return a < b;
                              return tuple_less(ta, tb);
                          });
                std::size_t run_begin = 0;
                for (std::size_t i = 1; i <= members.size(); ++i) {
                    bool boundary =
                        i == members.size() ||
                        !tuple_equal(sigs[members[run_begin]].tuple(table_index),
                                     sigs[members[i]].tuple(table_index));
                    if (!boundary) continue;
                    if (i - run_begin >= options.min_set_size) {
                        CoTermSet set;
                        set.table_index = table_index;
                        set.terms.assign(members.begin() + run_begin,
                                         members.begin() + i);
                        out.push_back(std::move(set));
                    }
                    run_begin = i;
                }
            }
            std::sort(out.begin(), out.end(),
                      [](const CoTermSet& a, const CoTermSet& b) {
                          return a.terms.front() < b.terms.front();
                      });
        }
    });

    std::vector<CoTermSet> result;
    std::size_t total = 0;
    for (const auto& v : per_table) total += v.size();
    result.reserve(total);
    for (auto& v : per_table)
        for (auto& set : v) result.push_back(std::move(set));
    return result;
}

namespace {

// Walks the posting lists of several terms in ascending doc order, handing
// the per-document frequency vector (0 for absent terms) to the visitor.
template <typename Visitor>
void merge_postings(std::span<const TermId> terms, const InvertedFile& inv,
                    Visitor&& visit) {
    const std::size_t k = terms.size();
    std::vector<std::size_t> pos(k, 0);
    std::vector<Freq> freqs(k, 0);
    for (;;) {
        DocId doc = std::numeric_limits<DocId>::max();
        for (std::size_t i = 0; i < k; ++i) {
            const auto& list = inv.postings[terms[i]];
            if (pos[i] < list.size()) doc = std::min(doc, list[pos[i]].doc);
        }
        if (doc == std::numeric_limits<DocId>::max()) break;
        for (std::size_t i = 0; i < k; ++i) {
            const auto& list = inv.postings[terms[i]];
            if (pos[i] < list.size() && list[pos[i]].doc == doc) {
                freqs[i] = list[pos[i]].freq;
                ++pos[i];
            } else {
                freqs[i] = 0;
            }
        }
        visit(doc, freqs);
    }
}

} // namespace

double jcc(std::span<const TermId> terms, const InvertedFile& inv) {
    if (terms.size() < 2)
        throw std::invalid_argument("jcc needs at least 2 terms");
    std::size_t inter = 0, uni = 0;
    merge_postings(terms, inv, [&](DocId, const std::vector<Freq>& freqs) {
        ++uni;
        if (std::ranges::all_of(freqs, [](Freq f) { return f > 0; })) ++inter;
    });
    if (uni == 0) throw std::domain_error("jcc undefined: all lists empty");
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double wcc(std::span<const TermId> terms, const InvertedFile& inv) {
    if (terms.size() < 2)
        throw std::invalid_argument("wcc needs at least 2 terms");
    double num = 0.0, den = 0.0;
    merge_postings(terms, inv, [&](DocId doc, const std::vector<Freq>& freqs) {
        auto [min_it, max_it] = std::ranges::minmax_element(freqs);
        double w = inv.doc_weights[doc];
        num += w * static_cast<double>(*min_it);
        den += w * static_cast<double>(*max_it);
    });
    if (den == 0.0) throw std::domain_error("wcc undefined: all lists empty");
    return num / den;
}

void dump_co_term_sets(std::ostream& out, std::span<const CoTermSet> sets) {
    for (const CoTermSet& set : sets) {
        out << set.table_index << '\t';
        for (std::size_t i = 0; i < set.terms.size(); ++i) {
            if (i > 0) out << ' ';
            out << set.terms[i];
        }
        out << '\n';
    }
}

} // namespace swmh

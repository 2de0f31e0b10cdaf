#include "swmh/cluster.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "swmh/parallel.hpp"

namespace swmh {
namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;

    explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

std::size_t intersection_size(std::span<const TermId> a,
                              std::span<const TermId> b) {
    std::size_t count = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

struct TermVecHash {
    std::size_t operator()(const std::vector<TermId>& v) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (TermId t : v) h = mix64(h ^ t);
        return static_cast<std::size_t>(h);
    }
};

} // namespace

double overlap_coefficient(const CoTermSet& c1, const CoTermSet& c2) {
    if (c1.terms.empty() || c2.terms.empty())
        throw std::invalid_argument("overlap coefficient of an empty set");
    std::size_t inter = intersection_size(c1.terms, c2.terms);
    return static_cast<double>(inter) /
           static_cast<double>(std::min(c1.terms.size(), c2.terms.size()));
}

std::vector<IndexPair> candidate_pairs(std::span<const CoTermSet> sets,
                                       const MiningParams& stage2,
                                       CandidateMode mode,
                                       std::uint32_t threads) {
    const std::size_t n = sets.size();
    std::vector<IndexPair> pairs;
    if (n < 2) return pairs;

    if (mode == CandidateMode::exact) {
        pairs.reserve(n * (n - 1) / 2);
        for (std::uint32_t i = 0; i + 1 < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        return pairs;
    }

    stage2.validate();

    // Identical term sets collide in every table, so collapse them up front
    // and link each duplicate to its representative instead of emitting the
    // full clique of a duplicate-heavy bucket.
    std::vector<std::uint32_t> reps;
    {
        std::unordered_map<std::vector<TermId>, std::uint32_t, TermVecHash>
            first_with;
        first_with.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            auto [it, inserted] = first_with.try_emplace(sets[i].terms, i);
            if (inserted)
                reps.push_back(i);
            else
                pairs.emplace_back(it->second, i);
        }
    }

    MiningParams index_params = stage2;
    index_params.weighted = false;  // plain term sets

    std::vector<MinHashSignature> sigs(reps.size());
    parallel_for(reps.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<WeightedEntry> elements;
        for (std::size_t i = begin; i < end; ++i) {
            const auto& terms = sets[reps[i]].terms;
            elements.clear();
            elements.reserve(terms.size());
            for (TermId t : terms) elements.push_back({t, 1.0});
            sigs[i] = minhash_signature(elements, index_params);
        }
    });

    std::vector<std::vector<IndexPair>> per_table(index_params.tables);
    parallel_for(index_params.tables, threads,
                 [&](std::size_t begin, std::size_t end) {
        std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
        for (std::size_t table = begin; table < end; ++table) {
            const auto table_index = static_cast<std::uint32_t>(table);
            buckets.clear();
            buckets.reserve(reps.size());
            for (std::uint32_t i = 0; i < reps.size(); ++i)
                buckets[tuple_key(sigs[i], table_index)].push_back(i);
            auto& out = per_table[table];
            for (auto& [key, members] : buckets) {
                (void)key;
                if (members.size() < 2) continue;
                for (std::size_t a = 0; a + 1 < members.size(); ++a) {
                    auto ta = sigs[members[a]].tuple(table_index);
                    for (std::size_t b = a + 1; b < members.size(); ++b) {
                        auto tb = sigs[members[b]].tuple(table_index);
                        if (!std::equal(ta.begin(), ta.end(), tb.begin()))
                            continue;  // key collision, not a real co-bucket
                        std::uint32_t x = reps[members[a]];
                        std::uint32_t y = reps[members[b]];
                        out.emplace_back(std::min(x, y), std::max(x, y));
                    }
                }
            }
        }
    });

    for (const auto& v : per_table) pairs.insert(pairs.end(), v.begin(), v.end());
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

std::vector<std::vector<std::uint32_t>> cluster_sets(
    std::span<const CoTermSet> sets, double eps,
    std::span<const IndexPair> pairs, std::uint32_t threads) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("eps must lie in (0,1]");
    for (const IndexPair& p : pairs)
        if (p.first >= sets.size() || p.second >= sets.size())
            throw std::invalid_argument("pair index out of range");

    std::vector<char> keep(pairs.size(), 0);
    parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            keep[i] =
                overlap_coefficient(sets[pairs[i].first], sets[pairs[i].second]) >
                eps;
    });

    UnionFind uf(sets.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (keep[i]) uf.unite(pairs[i].first, pairs[i].second);

    // Components keyed by their smallest member, members ascending.
    std::vector<std::vector<std::uint32_t>> components;
    std::unordered_map<std::uint32_t, std::size_t> root_slot;
    root_slot.reserve(sets.size());
    for (std::uint32_t i = 0; i < sets.size(); ++i) {
        std::uint32_t root = uf.find(i);
        auto [it, inserted] = root_slot.try_emplace(root, components.size());
        if (inserted) components.emplace_back();
        components[it->second].push_back(i);
    }
    return components;  // ascending insertion kept both orders canonical
}

std::vector<Topic> assemble_topics(
    std::span<const std::vector<std::uint32_t>> clusters,
    std::span<const CoTermSet> sets, const InvertedFile& inv,
    std::uint32_t min_cluster_size) {
    std::vector<Topic> topics;
    std::unordered_map<TermId, std::uint32_t> membership;
    for (const auto& cluster : clusters) {
        if (cluster.size() < min_cluster_size) continue;
        membership.clear();
        for (std::uint32_t idx : cluster) {
            if (idx >= sets.size())
                throw std::invalid_argument("cluster index out of range");
            for (TermId t : sets[idx].terms) ++membership[t];
        }
        Topic topic;
        topic.support = static_cast<std::uint32_t>(cluster.size());
        topic.terms.reserve(membership.size());
        for (const auto& [term, count] : membership) {
            (void)count;
            topic.terms.push_back(term);
        }
        std::sort(topic.terms.begin(), topic.terms.end(),
                  [&](TermId a, TermId b) {
                      std::uint32_t ma = membership.at(a), mb = membership.at(b);
                      if (ma != mb) return ma > mb;
                      std::size_t da = inv.doc_frequency(a);
                      std::size_t db = inv.doc_frequency(b);
                      if (da != db) return da > db;
                      return a < b;
                  });
        topics.push_back(std::move(topic));
    }
    return topics;
}

} // namespace swmh

// Shared helpers for the test suites: corpus builders, synthetic corpora,
// and brute-force oracles that stay independent of the library code paths
// they are used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "swmh/cluster.hpp"
#include "swmh/corpus.hpp"
#include "swmh/minhash.hpp"
#include "swmh/partition.hpp"

namespace swmh::test {

// ---------------------------------------------------------------------------
// Corpus builders

/// Corpus from explicit documents; vocab names are "t0", "t1", ...
inline Corpus make_corpus(std::size_t vocab_size,
                          std::vector<std::vector<TermFreq>> docs) {
    Corpus corpus;
    corpus.vocab.reserve(vocab_size);
    for (std::size_t t = 0; t < vocab_size; ++t)
        corpus.vocab.push_back("t" + std::to_string(t));
    for (auto& doc : docs)
        std::sort(doc.begin(), doc.end(),
                  [](const TermFreq& a, const TermFreq& b) {
                      return a.term < b.term;
                  });
    corpus.docs = std::move(docs);
    return corpus;
}

/// UCI docword stream text from (doc, word, count) triples, 1-based ids.
inline std::string docword_text(
    std::size_t num_docs, std::size_t num_words,
    const std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>&
        triples) {
    std::ostringstream out;
    out << num_docs << '\n' << num_words << '\n' << triples.size() << '\n';
    for (const auto& [d, w, c] : triples)
        out << d << ' ' << w << ' ' << c << '\n';
    return out.str();
}

inline std::string vocab_text(std::size_t num_words) {
    std::ostringstream out;
    for (std::size_t w = 0; w < num_words; ++w) out << 't' << w << '\n';
    return out.str();
}

/// Serializes an in-memory corpus back to the UCI docword format.
inline std::string to_docword_text(const Corpus& corpus) {
    std::size_t nnz = 0;
    for (const auto& doc : corpus.docs) nnz += doc.size();
    std::ostringstream out;
    out << corpus.num_docs() << '\n' << corpus.vocab_size() << '\n' << nnz
        << '\n';
    for (std::size_t d = 0; d < corpus.num_docs(); ++d)
        for (const TermFreq& tf : corpus.docs[d])
            out << d + 1 << ' ' << tf.term + 1 << ' ' << tf.freq << '\n';
    return out.str();
}

inline std::string to_vocab_text(const Corpus& corpus) {
    std::ostringstream out;
    for (const auto& term : corpus.vocab) out << term << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Synthetic corpora

struct PlantedCorpus {
    Corpus corpus;
    std::vector<std::vector<TermId>> groups;  // planted term sets
};

/// Documents are split evenly across `groups` planted topics; each document
/// carries each of its group's terms with probability p_include plus
/// noise_per_doc uniform noise terms. Term ids: group g owns
/// [g*terms_per_group, (g+1)*terms_per_group), noise ids follow.
inline PlantedCorpus planted_corpus(std::uint32_t groups,
                                    std::uint32_t terms_per_group,
                                    std::uint32_t docs_per_group,
                                    std::uint32_t noise_terms,
                                    std::uint32_t noise_per_doc,
                                    double p_include, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    std::bernoulli_distribution include(p_include);
    const TermId noise_base = groups * terms_per_group;
    std::uniform_int_distribution<TermId> noise(0, noise_terms - 1);

    PlantedCorpus planted;
    std::vector<std::vector<TermFreq>> docs;
    docs.reserve(static_cast<std::size_t>(groups) * docs_per_group);
    for (std::uint32_t g = 0; g < groups; ++g) {
        std::vector<TermId> group;
        for (std::uint32_t t = 0; t < terms_per_group; ++t)
            group.push_back(g * terms_per_group + t);
        planted.groups.push_back(group);
        for (std::uint32_t d = 0; d < docs_per_group; ++d) {
            std::vector<TermFreq> doc;
            for (TermId t : group)
                if (include(rng)) doc.push_back({t, 1});
            if (doc.empty()) doc.push_back({group[0], 1});
            std::unordered_set<TermId> used;
            for (std::uint32_t n = 0; n < noise_per_doc; ++n) {
                TermId t = noise_base + noise(rng);
                if (used.insert(t).second) doc.push_back({t, 1});
            }
            docs.push_back(std::move(doc));
        }
    }
    planted.corpus =
        make_corpus(noise_base + noise_terms, std::move(docs));
    return planted;
}

/// Heavy-tailed document lengths: per group, co-occurrence evidence sits in
/// 20 giant documents (padded to ~1000 tokens by a per-document filler term)
/// while each group term also appears in 15 tiny two-token documents of its
/// own. Medium filler documents pin the median size at 10, so tiny-document
/// evidence is amplified under inverse-size weighting while giant-document
/// evidence is not.
inline PlantedCorpus heavy_tail_corpus(std::uint32_t groups = 10) {
    const std::uint32_t giants_per_group = 20;
    const std::uint32_t tinies_per_term = 15;
    const std::uint32_t terms_per_group = 3;
    const std::uint32_t mediums =
        groups * (giants_per_group + terms_per_group * tinies_per_term) + 10;

    PlantedCorpus planted;
    std::vector<std::vector<TermFreq>> docs;
    TermId next_term = groups * terms_per_group;
    for (std::uint32_t g = 0; g < groups; ++g) {
        std::vector<TermId> group;
        for (std::uint32_t t = 0; t < terms_per_group; ++t)
            group.push_back(g * terms_per_group + t);
        planted.groups.push_back(group);
        for (std::uint32_t i = 0; i < giants_per_group; ++i) {
            std::vector<TermFreq> doc;
            for (TermId t : group) doc.push_back({t, 1});
            doc.push_back({next_term++, 1000});  // filler: size 1003
            docs.push_back(std::move(doc));
        }
        for (TermId t : group) {
            for (std::uint32_t i = 0; i < tinies_per_term; ++i) {
                std::vector<TermFreq> doc;
                doc.push_back({t, 1});
                doc.push_back({next_term++, 1});  // pad: size 2
                docs.push_back(std::move(doc));
            }
        }
    }
    for (std::uint32_t i = 0; i < mediums; ++i)
        docs.push_back({{next_term++, 10}});  // junk: size 10
    planted.corpus = make_corpus(next_term, std::move(docs));
    return planted;
}

/// Large corpus for scaling runs: 100 planted 5-term groups spread round
/// robin over the documents plus uniform junk terms.
inline PlantedCorpus scaling_corpus(std::uint32_t num_docs,
                                    std::uint64_t rng_seed) {
    const std::uint32_t groups = 100;
    const std::uint32_t terms_per_group = 5;
    const std::uint32_t junk_terms = 500;
    const std::uint32_t junk_per_doc = 8;
    std::mt19937_64 rng(rng_seed);
    std::bernoulli_distribution include(0.8);
    const TermId junk_base = groups * terms_per_group;
    std::uniform_int_distribution<TermId> junk(0, junk_terms - 1);

    PlantedCorpus planted;
    for (std::uint32_t g = 0; g < groups; ++g) {
        std::vector<TermId> group;
        for (std::uint32_t t = 0; t < terms_per_group; ++t)
            group.push_back(g * terms_per_group + t);
        planted.groups.push_back(group);
    }
    std::vector<std::vector<TermFreq>> docs(num_docs);
    for (std::uint32_t d = 0; d < num_docs; ++d) {
        auto& doc = docs[d];
        const std::uint32_t g = d % groups;
        for (TermId t : planted.groups[g])
            if (include(rng)) doc.push_back({t, 1});
        if (doc.empty()) doc.push_back({planted.groups[g][0], 1});
        std::unordered_set<TermId> used;
        for (std::uint32_t n = 0; n < junk_per_doc; ++n) {
            TermId t = junk_base + junk(rng);
            if (used.insert(t).second) doc.push_back({t, 1});
        }
    }
    planted.corpus = make_corpus(junk_base + junk_terms, std::move(docs));
    return planted;
}

/// Keeps only the first `docs` documents (vocabulary unchanged).
inline Corpus corpus_prefix(const Corpus& corpus, std::size_t docs) {
    Corpus prefix;
    prefix.vocab = corpus.vocab;
    prefix.docs.assign(corpus.docs.begin(),
                       corpus.docs.begin() +
                           std::min(docs, corpus.docs.size()));
    return prefix;
}

/// Random co-occurring term sets built as noisy copies of a few prototype
/// sets, so instances contain both near-duplicate families and loose sets.
inline std::vector<CoTermSet> random_co_term_sets(std::uint32_t count,
                                                  std::uint32_t vocab,
                                                  std::uint32_t prototypes,
                                                  std::mt19937_64& rng) {
    std::uniform_int_distribution<TermId> pick_term(0, vocab - 1);
    std::uniform_int_distribution<std::uint32_t> pick_size(6, 12);
    std::bernoulli_distribution drop(0.15), add(0.3);

    std::vector<std::vector<TermId>> bases(prototypes);
    for (auto& base : bases) {
        std::set<TermId> terms;
        std::uint32_t size = pick_size(rng);
        while (terms.size() < size) terms.insert(pick_term(rng));
        base.assign(terms.begin(), terms.end());
    }

    std::uniform_int_distribution<std::uint32_t> pick_base(0, prototypes - 1);
    std::vector<CoTermSet> sets;
    sets.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        std::set<TermId> terms;
        for (TermId t : bases[pick_base(rng)])
            if (!drop(rng)) terms.insert(t);
        if (add(rng)) terms.insert(pick_term(rng));
        if (terms.empty()) terms.insert(pick_term(rng));
        CoTermSet set;
        set.terms.assign(terms.begin(), terms.end());
        set.table_index = i % 7;
        sets.push_back(std::move(set));
    }
    return sets;
}

/// Plain set Jaccard of two term lists (for candidate recall checks).
inline double term_jaccard(const std::vector<TermId>& a,
                           const std::vector<TermId>& b) {
    std::unordered_set<TermId> sa(a.begin(), a.end());
    std::size_t inter = 0;
    for (TermId t : b) inter += sa.count(t);
    std::size_t uni = sa.size() + b.size() - inter;
    return uni == 0 ? 0.0
                    : static_cast<double>(inter) / static_cast<double>(uni);
}

// ---------------------------------------------------------------------------
// Oracles (intentionally brute force, independent of the library internals)

/// Replica count of weight w at quantization q, re-stated for the oracle.
inline std::uint64_t oracle_replicas(double w, std::uint32_t q) {
    auto k = std::llround(w * static_cast<double>(q));
    return k < 1 ? 1 : static_cast<std::uint64_t>(k);
}

struct JaccardFraction {
    std::uint64_t inter = 0;
    std::uint64_t uni = 0;
    double value() const {
        return uni == 0 ? 0.0
                        : static_cast<double>(inter) / static_cast<double>(uni);
    }
};

/// Exact Jaccard of the expanded sub-element sets, computed by literally
/// materializing both sets of (element, replica) pairs.
inline JaccardFraction expanded_jaccard(std::span<const WeightedEntry> a,
                                        std::span<const WeightedEntry> b,
                                        std::uint32_t q) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> sa, sb;
    for (const auto& e : a)
        for (std::uint64_t k = 1; k <= oracle_replicas(e.weight, q); ++k)
            sa.insert({e.element, k});
    for (const auto& e : b)
        for (std::uint64_t k = 1; k <= oracle_replicas(e.weight, q); ++k)
            sb.insert({e.element, k});
    JaccardFraction result;
    for (const auto& sub : sa)
        if (sb.count(sub)) ++result.inter;
    result.uni = sa.size() + sb.size() - result.inter;
    return result;
}

/// The weighted-similarity formula evaluated on quantized weights:
/// sum of min(kA, kB) over sum of max(kA, kB) per element.
inline JaccardFraction quantized_weighted_similarity(
    std::span<const WeightedEntry> a, std::span<const WeightedEntry> b,
    std::uint32_t q) {
    std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> counts;
    for (const auto& e : a) counts[e.element].first = oracle_replicas(e.weight, q);
    for (const auto& e : b) counts[e.element].second = oracle_replicas(e.weight, q);
    JaccardFraction result;
    for (const auto& [elem, kk] : counts) {
        (void)elem;
        result.inter += std::min(kk.first, kk.second);
        result.uni += std::max(kk.first, kk.second);
    }
    return result;
}

/// The weighted-similarity formula on the real weights (no quantization).
inline double real_weighted_similarity(std::span<const WeightedEntry> a,
                                       std::span<const WeightedEntry> b) {
    std::map<std::uint64_t, std::pair<double, double>> weights;
    for (const auto& e : a) weights[e.element].first = e.weight;
    for (const auto& e : b) weights[e.element].second = e.weight;
    double num = 0, den = 0;
    for (const auto& [elem, ww] : weights) {
        (void)elem;
        num += std::min(ww.first, ww.second);
        den += std::max(ww.first, ww.second);
    }
    return num / den;
}

/// Brute-force clustering oracle: all-pairs overlap via hash-set
/// intersection, connected components by depth-first search, canonical
/// order (smallest member first, members ascending).
inline std::vector<std::vector<std::uint32_t>> brute_force_clusters(
    std::span<const CoTermSet> sets, double eps) {
    const std::size_t n = sets.size();
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::unordered_set<TermId> terms(sets[i].terms.begin(),
                                         sets[i].terms.end());
        for (std::uint32_t j = i + 1; j < n; ++j) {
            std::size_t inter = 0;
            for (TermId t : sets[j].terms) inter += terms.count(t);
            double ovr = static_cast<double>(inter) /
                         static_cast<double>(std::min(sets[i].terms.size(),
                                                      sets[j].terms.size()));
            if (ovr > eps) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    }
    std::vector<char> seen(n, 0);
    std::vector<std::vector<std::uint32_t>> components;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<std::uint32_t> component;
        std::vector<std::uint32_t> stack{i};
        seen[i] = 1;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            component.push_back(v);
            for (std::uint32_t w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

/// Coherence oracle computed straight off the corpus documents (document
/// and co-document frequencies by scanning, same smoothing and cap).
inline double coherence_oracle(const std::vector<TermId>& topic_terms,
                               const Corpus& corpus, std::uint32_t top_m) {
    std::vector<std::unordered_set<TermId>> doc_sets;
    doc_sets.reserve(corpus.num_docs());
    for (const auto& doc : corpus.docs) {
        std::unordered_set<TermId> s;
        for (const TermFreq& tf : doc) s.insert(tf.term);
        doc_sets.push_back(std::move(s));
    }
    auto doc_freq = [&](TermId t) {
        std::size_t n = 0;
        for (const auto& s : doc_sets) n += s.count(t);
        return n;
    };
    auto co_doc_freq = [&](TermId a, TermId b) {
        std::size_t n = 0;
        for (const auto& s : doc_sets) n += s.count(a) && s.count(b) ? 1 : 0;
        return n;
    };
    const std::size_t used = std::min<std::size_t>(top_m, topic_terms.size());
    double sum = 0;
    for (std::size_t m = 1; m < used; ++m) {
        for (std::size_t l = 0; l < m; ++l) {
            double d_l = static_cast<double>(doc_freq(topic_terms[l]));
            double co = static_cast<double>(
                co_doc_freq(topic_terms[m], topic_terms[l]));
            sum += std::log(std::min(co + 1.0, d_l) / d_l);
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Small numeric helpers

/// R-squared of the least-squares line through (x, y).
inline double r_squared(const std::vector<double>& x,
                        const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = static_cast<double>(n) * sxx - sx * sx;
    double slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / static_cast<double>(n);
    double ss_res = 0, ss_tot = 0, mean_y = sy / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double fit = slope * x[i] + intercept;
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    return ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
}

/// F1 between a mined term list and a planted term set.
inline double term_f1(const std::vector<TermId>& mined,
                      const std::vector<TermId>& planted) {
    std::unordered_set<TermId> truth(planted.begin(), planted.end());
    std::size_t hit = 0;
    for (TermId t : mined) hit += truth.count(t);
    if (mined.empty() || planted.empty() || hit == 0) return 0.0;
    double precision = static_cast<double>(hit) / mined.size();
    double recall = static_cast<double>(hit) / planted.size();
    return 2 * precision * recall / (precision + recall);
}

} // namespace swmh::test

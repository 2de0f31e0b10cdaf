#include "swmh/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "swmh/error.hpp"
#include "swmh/parallel.hpp"

namespace swmh {
namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::size_t co_document_frequency(TermId a, TermId b, const InvertedFile& inv) {
    const auto& la = inv.postings[a];
    const auto& lb = inv.postings[b];
    std::size_t count = 0, i = 0, j = 0;
    while (i < la.size() && j < lb.size()) {
        if (la[i].doc < lb[j].doc) {
            ++i;
        } else if (lb[j].doc < la[i].doc) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

std::size_t require_doc_frequency(TermId t, const InvertedFile& inv) {
    std::size_t d = inv.doc_frequency(t);
    if (d == 0)
        throw std::domain_error("term " + std::to_string(t) +
                                " occurs in no document");
    return d;
}

// Interpolated quantile (the linear "type 7" rule) over a sorted sample.
double quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    double h = p * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

double coherence(const Topic& topic, const InvertedFile& inv,
                 std::uint32_t top_m) {
    if (top_m < 2) throw std::invalid_argument("top_m must be at least 2");
    const std::size_t used =
        std::min<std::size_t>(top_m, topic.terms.size());
    if (used < 2) return 0.0;
    for (std::size_t i = 0; i < used; ++i)
        require_doc_frequency(topic.terms[i], inv);

    double sum = 0.0;
    for (std::size_t m = 1; m < used; ++m) {
        for (std::size_t l = 0; l < m; ++l) {
            std::size_t d_l = inv.doc_frequency(topic.terms[l]);
            std::size_t co =
                co_document_frequency(topic.terms[m], topic.terms[l], inv);
            std::size_t numerator = std::min(co + 1, d_l);
            sum += std::log(static_cast<double>(numerator) /
                            static_cast<double>(d_l));
        }
    }
    return sum;
}

CoherenceReport coherence_report(std::span<const Topic> topics,
                                 const InvertedFile& inv, std::uint32_t top_m,
                                 std::uint32_t threads) {
    CoherenceReport report;
    report.top_m = top_m;
    report.coherence.resize(topics.size(), 0.0);
    report.flagged.resize(topics.size(), 0);
    parallel_for(topics.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            report.coherence[i] = coherence(topics[i], inv, top_m);
            report.flagged[i] =
                std::min<std::size_t>(top_m, topics[i].terms.size()) < 2;
        }
    });

    std::vector<double> sorted = report.coherence;
    std::sort(sorted.begin(), sorted.end());
    report.stats.min = quantile(sorted, 0.0);
    report.stats.q1 = quantile(sorted, 0.25);
    report.stats.median = quantile(sorted, 0.5);
    report.stats.q3 = quantile(sorted, 0.75);
    report.stats.max = quantile(sorted, 1.0);
    return report;
}

void score_topics(std::span<Topic> topics, const InvertedFile& inv,
                  std::uint32_t top_m, std::uint32_t threads) {
    if (top_m < 2) throw std::invalid_argument("top_m must be at least 2");
    parallel_for(topics.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Topic& topic = topics[i];
            const std::size_t used =
                std::min<std::size_t>(top_m, topic.terms.size());
            if (used < 2) {
                topic.score = 0.0;
                continue;
            }
            double d1 = static_cast<double>(
                require_doc_frequency(topic.terms[0], inv));
            double sum = 0.0;
            for (std::size_t m = 1; m < used; ++m)
                sum += static_cast<double>(co_document_frequency(
                           topic.terms[0], topic.terms[m], inv)) /
                       d1;
            topic.score = sum / static_cast<double>(used - 1);
        }
    });
}

std::vector<Topic> rank_topics(std::span<const Topic> topics,
                               const InvertedFile& inv, std::uint32_t top_m,
                               std::uint32_t threads) {
    std::vector<Topic> ranked(topics.begin(), topics.end());
    score_topics(ranked, inv, top_m, threads);
    std::sort(ranked.begin(), ranked.end(), [](const Topic& a, const Topic& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.support != b.support) return a.support > b.support;
        if (a.terms.size() != b.terms.size())
            return a.terms.size() > b.terms.size();
        return a.terms < b.terms;
    });
    return ranked;
}

DocTopicFeatures doc_topic_features(const Corpus& corpus,
                                    std::span<const Topic> topics,
                                    std::uint32_t threads) {
    if (topics.empty())
        throw std::invalid_argument("no topics to build features from");

    std::vector<std::vector<TermId>> topic_terms(topics.size());
    for (std::size_t t = 0; t < topics.size(); ++t) {
        topic_terms[t].assign(topics[t].terms.begin(), topics[t].terms.end());
        std::sort(topic_terms[t].begin(), topic_terms[t].end());
    }

    DocTopicFeatures features;
    features.num_topics = topics.size();
    features.rows.resize(corpus.num_docs());
    parallel_for(corpus.num_docs(), threads,
                 [&](std::size_t begin, std::size_t end) {
        std::vector<TermId> doc_terms;
        for (std::size_t d = begin; d < end; ++d) {
            doc_terms.clear();
            for (const TermFreq& tf : corpus.docs[d]) doc_terms.push_back(tf.term);
            for (std::size_t t = 0; t < topic_terms.size(); ++t) {
                std::size_t inter = 0, i = 0, j = 0;
                const auto& tt = topic_terms[t];
                while (i < doc_terms.size() && j < tt.size()) {
                    if (doc_terms[i] < tt[j]) {
                        ++i;
                    } else if (tt[j] < doc_terms[i]) {
                        ++j;
                    } else {
                        ++inter;
                        ++i;
                        ++j;
                    }
                }
                if (inter > 0)
                    features.rows[d].emplace_back(
                        static_cast<std::uint32_t>(t),
                        static_cast<double>(inter) /
                            static_cast<double>(tt.size()));
            }
        }
    });
    return features;
}

void write_topics(std::ostream& out, std::span<const Topic> topics,
                  std::span<const std::string> vocab) {
    for (const Topic& topic : topics) {
        out << fixed6(topic.score) << '\t' << topic.support << '\t';
        for (std::size_t i = 0; i < topic.terms.size(); ++i) {
            if (i > 0) out << ' ';
            out << vocab[topic.terms[i]];
        }
        out << '\n';
    }
}

std::vector<Topic> read_topics(std::istream& in,
                               std::span<const std::string> vocab,
                               const std::string& source) {
    std::unordered_map<std::string_view, TermId> index;
    index.reserve(vocab.size());
    for (std::size_t t = 0; t < vocab.size(); ++t)
        index.emplace(vocab[t], static_cast<TermId>(t));

    std::vector<Topic> topics;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (in.peek() == EOF) break;
            throw ParseError(source, line_no, "blank line");
        }
        std::size_t tab1 = line.find('\t');
        std::size_t tab2 = tab1 == std::string::npos
                               ? std::string::npos
                               : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos)
            throw ParseError(source, line_no,
                             "expected \"score<TAB>support<TAB>terms\"");
        Topic topic;
        try {
            topic.score = std::stod(line.substr(0, tab1));
        } catch (const std::exception&) {
            throw ParseError(source, line_no, "bad score field");
        }
        {
            const char* first = line.data() + tab1 + 1;
            const char* last = line.data() + tab2;
            auto [ptr, ec] = std::from_chars(first, last, topic.support);
            if (ec != std::errc{} || ptr != last)
                throw ParseError(source, line_no, "bad support field");
        }
        std::size_t pos = tab2 + 1;
        while (pos < line.size()) {
            std::size_t end = line.find(' ', pos);
            if (end == std::string::npos) end = line.size();
            if (end > pos) {
                std::string_view term(line.data() + pos, end - pos);
                auto it = index.find(term);
                if (it == index.end())
                    throw ParseError(source, line_no,
                                     "unknown term \"" + std::string(term) +
                                         "\"");
                topic.terms.push_back(it->second);
            }
            pos = end + 1;
        }
        if (topic.terms.empty())
            throw ParseError(source, line_no, "topic with no terms");
        topics.push_back(std::move(topic));
    }
    return topics;
}

void write_coherence_csv(std::ostream& out, const CoherenceReport& report,
                         std::span<const Topic> topics) {
    out << "topic_index,coherence,score,support,size\n";
    for (std::size_t i = 0; i < topics.size(); ++i) {
        out << i << ',' << fixed6(report.coherence[i]) << ','
            << fixed6(topics[i].score) << ',' << topics[i].support << ','
            << topics[i].terms.size() << '\n';
    }
    out << "summary," << fixed6(report.stats.min) << ','
        << fixed6(report.stats.q1) << ',' << fixed6(report.stats.median) << ','
        << fixed6(report.stats.q3) << ',' << fixed6(report.stats.max) << '\n';
}

void write_svmlight(std::ostream& out, const DocTopicFeatures& features,
                    std::span<const int> labels) {
    for (std::size_t d = 0; d < features.rows.size(); ++d) {
        out << (d < labels.size() ? labels[d] : 0);
        for (const auto& [topic, value] : features.rows[d])
            out << ' ' << (topic + 1) << ':' << fixed6(value);
        out << '\n';
    }
}

} // namespace swmh

#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "swmh/types.hpp"

namespace swmh {

constexpr Freq kDefaultMinTermFreq = 6;

struct TermFreq {
    TermId term;
    Freq freq;

    friend bool operator==(const TermFreq&, const TermFreq&) = default;
};

/// A bag-of-words corpus after the frequency cutoff: a dense 0-based
/// vocabulary plus one sparse term->frequency vector per document, sorted by
/// term id. Documents emptied by the cutoff stay in place so ids keep lining
/// up with external label files.
struct Corpus {
    std::vector<std::string> vocab;
    std::vector<std::vector<TermFreq>> docs;
    std::vector<int> labels;  // empty when no labels file was supplied

    std::size_t num_docs() const { return docs.size(); }
    std::size_t vocab_size() const { return vocab.size(); }
};

struct Posting {
    DocId doc;
    Freq freq;

    friend bool operator==(const Posting&, const Posting&) = default;
};

/// Per-term posting lists (sorted by doc id) plus per-document sizes and
/// weights. An empty document has weight 0 and appears in no list; otherwise
/// the weight is the inverse of the document size.
struct InvertedFile {
    std::vector<std::vector<Posting>> postings;  // indexed by term id
    std::vector<Freq> doc_sizes;
    std::vector<double> doc_weights;

    std::size_t num_terms() const { return postings.size(); }
    std::size_t num_docs() const { return doc_sizes.size(); }

    /// Document frequency of a term: how many documents contain it.
    std::size_t doc_frequency(TermId t) const { return postings[t].size(); }
};

/**
 * Parses a UCI bag-of-words pair of streams (docword: three header lines D,
 * W, NNZ then "docID wordID count" triples, 1-based; vocab: one term per
 * line) and applies the frequency cutoff: only terms whose total corpus
 * frequency reaches min_term_freq survive, with ids re-densified in their
 * original order.
 *
 * fraction in (0,1] keeps only the first ceil(fraction*D) documents; the
 * cutoff is applied to that prefix. Lines beyond the prefix still get full
 * syntax and range checks.
 *
 * Throws ParseError / RangeError / ValueError with the offending line, using
 * `source` as the file name in messages.
 */
Corpus load_corpus(std::istream& docword, std::istream& vocab,
                   Freq min_term_freq = kDefaultMinTermFreq,
                   double fraction = 1.0,
                   const std::string& source = "docword");

/// Reads one integer class label per line (line i = document i).
std::vector<int> load_labels(std::istream& in,
                             const std::string& source = "labels");

/// Builds posting lists and document weights from a corpus.
InvertedFile build_inverted_file(const Corpus& corpus);

} // namespace swmh

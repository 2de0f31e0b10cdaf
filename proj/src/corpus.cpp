#include "swmh/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>

#include "swmh/error.hpp"

namespace swmh {
namespace {

// Strips a trailing '\r' so CRLF input parses like LF input.
std::string_view chomp(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool blank(std::string_view line) {
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

// Splits a line into whitespace-separated unsigned integers. Returns false on
// any non-numeric token or overflow.
bool parse_uints(std::string_view line, std::vector<std::uint64_t>& out) {
    out.clear();
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        std::uint64_t value = 0;
        auto [ptr, ec] =
            std::from_chars(line.data() + i, line.data() + line.size(), value);
        if (ec != std::errc{} || ptr == line.data() + i) return false;
        out.push_back(value);
        i = static_cast<std::size_t>(ptr - line.data());
        if (i < line.size() && line[i] != ' ' && line[i] != '\t') return false;
    }
    return true;
}

struct LineReader {
    std::istream& in;
    std::size_t line_no = 0;
    std::string buf = {};

    bool next() {
        if (!std::getline(in, buf)) return false;
        ++line_no;
        return true;
    }
};

std::uint64_t read_header_count(LineReader& reader, const std::string& source,
                                const char* what) {
    std::vector<std::uint64_t> fields;
    if (!reader.next())
        throw ParseError(source, reader.line_no + 1,
                         std::string("missing header line (") + what + ")");
    std::string_view line = chomp(reader.buf);
    if (!parse_uints(line, fields) || fields.size() != 1)
        throw ParseError(source, reader.line_no,
                         std::string("expected a single integer (") + what +
                             "), got \"" + std::string(line) + "\"");
    return fields[0];
}

} // namespace

Corpus load_corpus(std::istream& docword, std::istream& vocab,
                   Freq min_term_freq, double fraction,
                   const std::string& source) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("fraction must lie in (0,1]");

    LineReader reader{docword};
    const std::uint64_t num_docs_total = read_header_count(reader, source, "D");
    const std::uint64_t num_words = read_header_count(reader, source, "W");
    const std::uint64_t num_nnz = read_header_count(reader, source, "NNZ");

    const std::uint64_t docs_used = std::min(
        num_docs_total,
        static_cast<std::uint64_t>(
            std::ceil(fraction * static_cast<double>(num_docs_total))));

    // Accumulate raw frequencies over the document prefix, 1-based word ids.
    std::vector<std::vector<TermFreq>> raw_docs(docs_used);
    std::vector<std::uint64_t> term_totals(num_words, 0);

    std::vector<std::uint64_t> fields;
    for (std::uint64_t entry = 0; entry < num_nnz; ++entry) {
        if (!reader.next())
            throw ParseError(source, reader.line_no + 1,
                             "unexpected end of file: header declared " +
                                 std::to_string(num_nnz) + " entries, got " +
                                 std::to_string(entry));
        std::string_view line = chomp(reader.buf);
        if (!parse_uints(line, fields) || fields.size() != 3)
            throw ParseError(source, reader.line_no,
                             "expected \"docID wordID count\", got \"" +
                                 std::string(line) + "\"");
        const std::uint64_t doc_id = fields[0];
        const std::uint64_t word_id = fields[1];
        const std::uint64_t count = fields[2];
        if (doc_id == 0 || doc_id > num_docs_total)
            throw RangeError(source, reader.line_no,
                             "docID " + std::to_string(doc_id) +
                                 " outside [1, " +
                                 std::to_string(num_docs_total) + "]");
        if (word_id == 0 || word_id > num_words)
            throw RangeError(source, reader.line_no,
                             "wordID " + std::to_string(word_id) +
                                 " outside [1, " + std::to_string(num_words) +
                                 "]");
        if (count == 0)
            throw ValueError(source, reader.line_no, "count must be positive");

        if (doc_id > docs_used) continue;  // beyond the fraction prefix
        raw_docs[doc_id - 1].push_back(
            {static_cast<TermId>(word_id - 1), static_cast<Freq>(count)});
        term_totals[word_id - 1] += count;
    }
    while (reader.next()) {
        if (!blank(chomp(reader.buf)))
            throw ParseError(source, reader.line_no,
                             "trailing content after the declared " +
                                 std::to_string(num_nnz) + " entries");
    }

    // Vocabulary stream: line n = wordID n.
    Corpus corpus;
    {
        LineReader vreader{vocab};
        std::vector<std::string> words;
        words.reserve(num_words);
        while (vreader.next()) {
            std::string_view line = chomp(vreader.buf);
            if (words.size() == num_words) {
                if (blank(line)) continue;
                throw ParseError("vocab", vreader.line_no,
                                 "more terms than the docword header's W=" +
                                     std::to_string(num_words));
            }
            if (blank(line))
                throw ParseError("vocab", vreader.line_no, "empty term");
            words.emplace_back(line);
        }
        if (words.size() != num_words)
            throw ParseError("vocab", vreader.line_no + 1,
                             "expected " + std::to_string(num_words) +
                                 " terms, got " + std::to_string(words.size()));

        // Cutoff + re-densification, preserving the original term order.
        std::vector<TermId> remap(num_words, static_cast<TermId>(-1));
        for (std::uint64_t w = 0; w < num_words; ++w) {
            if (term_totals[w] >= min_term_freq) {
                remap[w] = static_cast<TermId>(corpus.vocab.size());
                corpus.vocab.push_back(std::move(words[w]));
            }
        }
        corpus.docs.resize(docs_used);
        for (std::uint64_t d = 0; d < docs_used; ++d) {
            auto& doc = corpus.docs[d];
            for (const TermFreq& tf : raw_docs[d]) {
                TermId mapped = remap[tf.term];
                if (mapped != static_cast<TermId>(-1))
                    doc.push_back({mapped, tf.freq});
            }
            std::sort(doc.begin(), doc.end(),
                      [](const TermFreq& a, const TermFreq& b) {
                          return a.term < b.term;
                      });
            // Collapse duplicate (doc, word) triples, if the file had any.
            std::size_t out = 0;
            for (std::size_t i = 0; i < doc.size(); ++i) {
                if (out > 0 && doc[out - 1].term == doc[i].term)
                    doc[out - 1].freq += doc[i].freq;
                else
                    doc[out++] = doc[i];
            }
            doc.resize(out);
        }
    }
    return corpus;
}

std::vector<int> load_labels(std::istream& in, const std::string& source) {
    LineReader reader{in};
    std::vector<int> labels;
    while (reader.next()) {
        std::string_view line = chomp(reader.buf);
        if (blank(line)) {
            // Tolerate a blank final line; blanks elsewhere are malformed.
            if (reader.in.peek() == EOF) break;
            throw ParseError(source, reader.line_no, "blank line");
        }
        std::size_t i = line.find_first_not_of(" \t");
        int value = 0;
        auto [ptr, ec] =
            std::from_chars(line.data() + i, line.data() + line.size(), value);
        if (ec != std::errc{} ||
            !blank(line.substr(static_cast<std::size_t>(ptr - line.data()))))
            throw ParseError(source, reader.line_no,
                             "expected an integer label, got \"" +
                                 std::string(line) + "\"");
        labels.push_back(value);
    }
    return labels;
}

InvertedFile build_inverted_file(const Corpus& corpus) {
    InvertedFile inv;
    inv.postings.resize(corpus.vocab_size());
    inv.doc_sizes.assign(corpus.num_docs(), 0);
    inv.doc_weights.assign(corpus.num_docs(), 0.0);

    for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
        Freq size = 0;
        for (const TermFreq& tf : corpus.docs[d]) {
            inv.postings[tf.term].push_back({static_cast<DocId>(d), tf.freq});
            size += tf.freq;
        }
        inv.doc_sizes[d] = size;
        if (size > 0) inv.doc_weights[d] = 1.0 / static_cast<double>(size);
    }
    // Documents were visited in ascending id order, so lists are sorted.
    return inv;
}

} // namespace swmh

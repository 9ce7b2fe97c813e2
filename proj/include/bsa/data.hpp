#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsa/classify.hpp"
#include "bsa/numerics.hpp"
#include "bsa/textproc.hpp"

namespace bsa {

struct ReviewRecord {
    std::string text;
    std::optional<int> rating;
    std::optional<Sentiment> label;

    // Explicit label wins; otherwise the label derived from the rating.
    Sentiment resolved_label() const;
};

// class_counts indexed by Sentiment order: negative, neutral, positive.
struct Dataset {
    std::vector<ReviewRecord> records;
    std::array<std::size_t, 3> class_counts{};

    void add(ReviewRecord record);
    std::size_t size() const { return records.size(); }
};

struct RowError {
    std::size_t line = 0;
    std::string message;
};

struct LoadResult {
    Dataset dataset;
    std::vector<RowError> skipped;
};

enum class FileFormat { Csv, Jsonl };

// 1,2 -> negative; 3 -> neutral; 4,5 -> positive.
Sentiment label_from_rating(int rating);

// CSV needs a text,label or text,rating header; JSONL objects need "text"
// plus "label" or "rating". Malformed rows are reported, not fatal.
LoadResult load_reviews(const std::string& path, FileFormat format);

// Deterministic labeled corpus from disjoint per-class keyword pools mixed
// with shared filler words. Review lengths 5 to 20 tokens. Class sizes by
// largest-remainder rounding of n * class_share.
Dataset synth_corpus(std::uint64_t seed, std::size_t n, const std::array<double, 3>& class_share);

// text,label CSV loadable by load_reviews.
void save_csv(const Dataset& dataset, const std::string& path);

// Lines of `token v1 v2 ... vd`; an optional first line with two integers
// (count and dimension) is skipped. Tokens missing from the vocab are
// ignored; vocab tokens missing from the file keep their current rows.
// Returns the number of embedding rows overwritten.
std::size_t load_pretrained_embeddings(const std::string& path, const Vocab& vocab,
                                       Matrix& embedding);

}  // namespace bsa

#include "bsa/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bsa/errors.hpp"

namespace bsa {

namespace {

const std::vector<std::string>& pool_for(Sentiment s) {
    static const std::vector<std::string> negative = {
        "awful",  "terrible", "horrible",      "dreadful", "worse",   "worst",
        "broken", "useless",  "waste",         "refund",   "defective", "poor",
        "garbage", "regret",  "disappointing", "failure"};
    static const std::vector<std::string> neutral = {
        "okay",     "average", "acceptable", "standard", "ordinary", "moderate",
        "typical",  "fair",    "expected",   "adequate", "plain",    "usual",
        "regular",  "neither", "middling",   "unremarkable"};
    static const std::vector<std::string> positive = {
        "great",     "excellent", "amazing",   "love",      "perfect",  "wonderful",
        "fantastic", "awesome",   "superb",    "happy",     "recommend", "delightful",
        "brilliant", "pleased",   "outstanding", "flawless"};
    switch (s) {
        case Sentiment::Negative: return negative;
        case Sentiment::Neutral: return neutral;
        default: return positive;
    }
}

const std::vector<std::string>& filler_pool() {
    static const std::vector<std::string> filler = {
        "the",   "product", "it",       "was",   "this", "item",  "arrived",
        "with",  "for",     "my",       "and",   "that", "quality", "price",
        "shipping", "box",  "order",    "bought", "use", "day"};
    return filler;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

std::vector<CsvRow> parse_csv(const std::string& content, const std::string& path) {
    std::vector<CsvRow> rows;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool row_has_data = false;
    std::size_t line = 1;
    std::size_t row_start = 1;

    const std::size_t n = content.size();
    for (std::size_t i = 0; i < n; ++i) {
        const char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && content[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
                if (c == '\n') ++line;
            }
            continue;
        }
        if (c == '"') {
            in_quotes = true;
            row_has_data = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            row_has_data = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < n && content[i + 1] == '\n') ++i;
            if (row_has_data || !field.empty()) {
                fields.push_back(std::move(field));
                field.clear();
                rows.push_back({row_start, std::move(fields)});
                fields.clear();
            }
            ++line;
            row_start = line;
            row_has_data = false;
        } else {
            field += c;
            row_has_data = true;
        }
    }
    if (in_quotes) {
        throw DataError("csv file " + path + ": unterminated quoted field in row starting at line " +
                        std::to_string(row_start));
    }
    if (row_has_data || !field.empty()) {
        fields.push_back(std::move(field));
        rows.push_back({row_start, std::move(fields)});
    }
    return rows;
}

bool parse_rating(const std::string& s, int& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        return false;
    }
    if (pos != s.size() || v < 1 || v > 5) return false;
    out = static_cast<int>(v);
    return true;
}

LoadResult load_csv_reviews(const std::string& path) {
    std::string content = read_file(path);
    if (content.size() >= 3 && content.compare(0, 3, "\xEF\xBB\xBF") == 0) content.erase(0, 3);
    const std::vector<CsvRow> rows = parse_csv(content, path);
    if (rows.empty()) throw DataError("csv file " + path + " has no header row");

    const std::vector<std::string>& header = rows[0].fields;
    bool by_label = false;
    if (header.size() == 2 && header[0] == "text" && header[1] == "label") {
        by_label = true;
    } else if (!(header.size() == 2 && header[0] == "text" && header[1] == "rating")) {
        throw DataError("csv file " + path +
                        ": header must be 'text,label' or 'text,rating'");
    }

    LoadResult result;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const CsvRow& row = rows[r];
        if (row.fields.size() != 2) {
            result.skipped.push_back({row.line, "expected 2 fields, got " +
                                                    std::to_string(row.fields.size())});
            continue;
        }
        ReviewRecord rec;
        rec.text = row.fields[0];
        if (rec.text.empty()) {
            result.skipped.push_back({row.line, "empty text"});
            continue;
        }
        if (by_label) {
            Sentiment s;
            if (!sentiment_from_string(row.fields[1], s)) {
                result.skipped.push_back({row.line, "unknown label '" + row.fields[1] + "'"});
                continue;
            }
            rec.label = s;
        } else {
            int rating = 0;
            if (!parse_rating(row.fields[1], rating)) {
                result.skipped.push_back({row.line, "rating '" + row.fields[1] +
                                                        "' is not an integer in 1..5"});
                continue;
            }
            rec.rating = rating;
        }
        result.dataset.add(std::move(rec));
    }
    if (result.dataset.records.empty()) {
        throw DataError("csv file " + path + " contains no valid records");
    }
    return result;
}

LoadResult load_jsonl_reviews(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open file: " + path);

    LoadResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            result.skipped.push_back({line_no, "not a JSON object"});
            continue;
        }
        if (!j.contains("text") || !j["text"].is_string()) {
            result.skipped.push_back({line_no, "missing string field 'text'"});
            continue;
        }
        ReviewRecord rec;
        rec.text = j["text"].get<std::string>();
        if (rec.text.empty()) {
            result.skipped.push_back({line_no, "empty text"});
            continue;
        }
        if (j.contains("label")) {
            if (!j["label"].is_string()) {
                result.skipped.push_back({line_no, "field 'label' is not a string"});
                continue;
            }
            Sentiment s;
            if (!sentiment_from_string(j["label"].get<std::string>(), s)) {
                result.skipped.push_back(
                    {line_no, "unknown label '" + j["label"].get<std::string>() + "'"});
                continue;
            }
            rec.label = s;
        } else if (j.contains("rating")) {
            if (!j["rating"].is_number_integer()) {
                result.skipped.push_back({line_no, "field 'rating' is not an integer"});
                continue;
            }
            const auto rating = j["rating"].get<std::int64_t>();
            if (rating < 1 || rating > 5) {
                result.skipped.push_back(
                    {line_no, "rating " + std::to_string(rating) + " out of 1..5"});
                continue;
            }
            rec.rating = static_cast<int>(rating);
        } else {
            result.skipped.push_back({line_no, "record has neither 'label' nor 'rating'"});
            continue;
        }
        result.dataset.add(std::move(rec));
    }
    if (result.dataset.records.empty()) {
        throw DataError("jsonl file " + path + " contains no valid records");
    }
    return result;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace

Sentiment ReviewRecord::resolved_label() const {
    if (label) return *label;
    if (rating) return label_from_rating(*rating);
    throw DataError("review record has neither label nor rating");
}

void Dataset::add(ReviewRecord record) {
    class_counts[static_cast<std::size_t>(record.resolved_label())] += 1;
    records.push_back(std::move(record));
}

Sentiment label_from_rating(int rating) {
    if (rating < 1 || rating > 5) {
        throw std::domain_error("rating " + std::to_string(rating) + " outside 1..5");
    }
    if (rating <= 2) return Sentiment::Negative;
    if (rating == 3) return Sentiment::Neutral;
    return Sentiment::Positive;
}

LoadResult load_reviews(const std::string& path, FileFormat format) {
    return format == FileFormat::Csv ? load_csv_reviews(path) : load_jsonl_reviews(path);
}

Dataset synth_corpus(std::uint64_t seed, std::size_t n, const std::array<double, 3>& class_share) {
    if (n < 3) throw ConfigError("synth_corpus: n must be >= 3");
    double sum = 0.0;
    for (double s : class_share) {
        if (s < 0.0) throw ConfigError("synth_corpus: class shares must be >= 0");
        sum += s;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("synth_corpus: class shares sum to " + std::to_string(sum) +
                          ", expected 1");
    }

    std::array<std::size_t, 3> counts{};
    std::array<double, 3> remainder{};
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        const double exact = static_cast<double>(n) * class_share[c];
        counts[c] = static_cast<std::size_t>(exact);
        remainder[c] = exact - static_cast<double>(counts[c]);
        assigned += counts[c];
    }
    std::array<std::size_t, 3> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned) counts[order[i % 3]] += 1;

    Rng64 rng(seed);
    Dataset out;
    const std::vector<std::string>& filler = filler_pool();
    for (std::size_t c = 0; c < 3; ++c) {
        const auto label = static_cast<Sentiment>(c);
        const std::vector<std::string>& pool = pool_for(label);
        for (std::size_t r = 0; r < counts[c]; ++r) {
            const std::size_t len = 5 + static_cast<std::size_t>(rng.next_below(16));
            std::string text;
            for (std::size_t t = 0; t < len; ++t) {
                const bool from_class = rng.next_unit() < 0.6;
                const std::vector<std::string>& src = from_class ? pool : filler;
                if (t > 0) text += ' ';
                text += src[static_cast<std::size_t>(rng.next_below(src.size()))];
            }
            ReviewRecord rec;
            rec.text = std::move(text);
            rec.label = label;
            out.add(std::move(rec));
        }
    }
    return out;
}

void save_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write csv file: " + path);
    f << "text,label\n";
    for (const ReviewRecord& r : dataset.records) {
        f << csv_field(r.text) << ',' << to_string(r.resolved_label()) << '\n';
    }
    if (!f.good()) throw IoError("write failed for csv file: " + path);
}

std::size_t load_pretrained_embeddings(const std::string& path, const Vocab& vocab,
                                       Matrix& embedding) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open embeddings file: " + path);
    const std::size_t dim = embedding.cols();

    std::size_t applied = 0;
    std::string line;
    std::size_t line_no = 0;
    bool first_content_line = true;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::vector<std::string> parts;
        std::string p;
        while (ss >> p) parts.push_back(p);
        if (parts.empty()) continue;

        if (first_content_line && parts.size() == 2) {
            int dummy = 0;
            std::size_t p0 = 0, p1 = 0;
            try {
                dummy = std::stoi(parts[0], &p0);
                dummy = std::stoi(parts[1], &p1);
                (void)dummy;
            } catch (const std::exception&) {
                p0 = 0;
            }
            if (p0 == parts[0].size() && p1 == parts[1].size()) {
                first_content_line = false;
                continue;
            }
        }
        first_content_line = false;

        if (parts.size() != dim + 1) {
            throw DataError("embeddings file " + path + ": line " + std::to_string(line_no) +
                            " has " + std::to_string(parts.size() - 1) + " values, expected " +
                            std::to_string(dim));
        }
        const auto it = vocab.token_to_id.find(parts[0]);
        if (it == vocab.token_to_id.end()) continue;
        const std::uint32_t id = it->second;
        if (id >= embedding.rows()) continue;
        double* row = embedding.row(id);
        for (std::size_t i = 0; i < dim; ++i) {
            std::size_t pos = 0;
            double v = 0.0;
            try {
                v = std::stod(parts[i + 1], &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != parts[i + 1].size()) {
                throw DataError("embeddings file " + path + ": line " + std::to_string(line_no) +
                                ": bad value '" + parts[i + 1] + "'");
            }
            row[i] = v;
        }
        ++applied;
    }
    return applied;
}

}  // namespace bsa

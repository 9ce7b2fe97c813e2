#include "bsa/textproc.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "bsa/errors.hpp"

namespace bsa {

namespace {

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_alnum(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return (u >= 'a' && u <= 'z') || (u >= '0' && u <= '9');
}

}  // namespace

std::string clean_text(const std::string& raw) {
    // 1. Drop each span from '<' to the next '>'. A '<' with no closing '>'
    //    falls through to the punctuation rule below.
    std::string text;
    text.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
        if (raw[i] == '<') {
            std::size_t close = raw.find('>', i + 1);
            if (close != std::string::npos) {
                text += ' ';
                i = close + 1;
                continue;
            }
        }
        text += raw[i];
        ++i;
    }

    // 2. Lowercase ASCII. 3. Everything that is not [a-z0-9] or whitespace
    //    becomes a space.
    for (char& c : text) {
        unsigned char u = static_cast<unsigned char>(c);
        if (u >= 'A' && u <= 'Z') c = static_cast<char>(u - 'A' + 'a');
        if (!is_alnum(c) && !is_space(c)) c = ' ';
    }

    // 4. Split, drop length-1 tokens. 5. Rejoin single-spaced.
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i - start >= 2) {
            if (!out.empty()) out += ' ';
            out.append(text, start, i - start);
        }
    }
    return out;
}

std::vector<std::string> tokenize(const std::string& cleaned) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < cleaned.size()) {
        while (i < cleaned.size() && is_space(cleaned[i])) ++i;
        std::size_t start = i;
        while (i < cleaned.size() && !is_space(cleaned[i])) ++i;
        if (i > start) tokens.emplace_back(cleaned, start, i - start);
    }
    return tokens;
}

Vocab build_vocab(const std::vector<std::vector<std::string>>& corpus, std::size_t max_size) {
    if (max_size < 3) {
        throw ConfigError("build_vocab: max_size must be >= 3, got " + std::to_string(max_size));
    }
    std::unordered_map<std::string, std::uint64_t> freq;
    for (const auto& doc : corpus) {
        for (const auto& tok : doc) ++freq[tok];
    }
    std::vector<std::pair<std::string, std::uint64_t>> ranked(freq.begin(), freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > max_size - 2) ranked.resize(max_size - 2);

    Vocab v;
    v.max_size = max_size;
    v.id_to_token = {Vocab::pad_token(), Vocab::unk_token()};
    v.counts = {0, 0};
    v.token_to_id[Vocab::pad_token()] = Vocab::kPadId;
    v.token_to_id[Vocab::unk_token()] = Vocab::kUnkId;
    for (const auto& [tok, count] : ranked) {
        std::uint32_t id = static_cast<std::uint32_t>(v.id_to_token.size());
        v.token_to_id[tok] = id;
        v.id_to_token.push_back(tok);
        v.counts.push_back(count);
    }
    return v;
}

EncodedSequence encode(const std::vector<std::string>& tokens, const Vocab& vocab, std::size_t L) {
    if (L == 0) throw ConfigError("encode: sequence length L must be >= 1");
    EncodedSequence out;
    out.ids.assign(L, Vocab::kPadId);
    std::size_t keep = std::min(tokens.size(), L);
    std::size_t first = tokens.size() - keep;  // pre-truncation: keep the tail
    std::size_t dst = L - keep;                // pre-padding: PAD prefix
    for (std::size_t k = 0; k < keep; ++k) {
        out.ids[dst + k] = vocab.id_of(tokens[first + k]);
    }
    out.original_length = keep;
    return out;
}

std::vector<std::string> decode(const EncodedSequence& seq, const Vocab& vocab) {
    std::vector<std::string> tokens;
    tokens.reserve(seq.original_length);
    std::size_t start = seq.ids.size() - seq.original_length;
    for (std::size_t i = start; i < seq.ids.size(); ++i) {
        tokens.push_back(vocab.token_of(seq.ids[i]));
    }
    return tokens;
}

void save_vocab(const Vocab& vocab, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write vocab file: " + path);
    for (std::size_t id = 0; id < vocab.id_to_token.size(); ++id) {
        out << vocab.id_to_token[id] << '\t' << id << '\t' << vocab.counts[id] << '\n';
    }
    if (!out.good()) throw IoError("write failed for vocab file: " + path);
}

Vocab load_vocab(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open vocab file: " + path);
    Vocab v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos) {
            throw DataError("vocab file " + path + ": line " + std::to_string(lineno) +
                            " is not <token>\\t<id>\\t<count>");
        }
        std::string token = line.substr(0, t1);
        unsigned long id = 0;
        unsigned long long count = 0;
        try {
            id = std::stoul(line.substr(t1 + 1, t2 - t1 - 1));
            count = std::stoull(line.substr(t2 + 1));
        } catch (const std::exception&) {
            throw DataError("vocab file " + path + ": line " + std::to_string(lineno) +
                            " has a non-numeric id or count");
        }
        if (id != v.id_to_token.size()) {
            throw DataError("vocab file " + path + ": line " + std::to_string(lineno) +
                            " id " + std::to_string(id) + " out of order");
        }
        v.token_to_id[token] = static_cast<std::uint32_t>(id);
        v.id_to_token.push_back(token);
        v.counts.push_back(count);
    }
    if (v.id_to_token.size() < 2 || v.id_to_token[0] != Vocab::pad_token() ||
        v.id_to_token[1] != Vocab::unk_token()) {
        throw DataError("vocab file " + path + ": missing reserved " +
                        std::string(Vocab::pad_token()) + "/" + Vocab::unk_token() + " entries");
    }
    v.max_size = v.id_to_token.size();
    return v;
}

}  // namespace bsa

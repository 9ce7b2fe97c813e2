#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace bsa {

// Frequency-ranked token table. Id 0 and 1 are reserved for padding and
// out-of-vocabulary tokens and never assigned to corpus tokens; content ids
// start at 2 and are ordered by descending corpus frequency, ties broken by
// ascending token order.
struct Vocab {
    static constexpr std::uint32_t kPadId = 0;
    static constexpr std::uint32_t kUnkId = 1;
    static const char* pad_token() { return "<pad>"; }
    static const char* unk_token() { return "<unk>"; }

    std::unordered_map<std::string, std::uint32_t> token_to_id;
    std::vector<std::string> id_to_token;
    std::vector<std::uint64_t> counts;
    std::size_t max_size = 0;

    std::uint32_t id_of(const std::string& token) const {
        auto it = token_to_id.find(token);
        return it == token_to_id.end() ? kUnkId : it->second;
    }
    const std::string& token_of(std::uint32_t id) const { return id_to_token[id]; }
    std::size_t size() const { return id_to_token.size(); }
};

// Fixed-length id sequence. PAD ids form a contiguous prefix; the last
// original_length slots hold real tokens.
struct EncodedSequence {
    std::vector<std::uint32_t> ids;
    std::size_t original_length = 0;
};

// Cleaning pipeline, applied in order: strip <...> tag spans, lowercase
// ASCII letters, map every non-alphanumeric non-space character to a space,
// drop length-1 tokens, rejoin with single spaces. Idempotent.
std::string clean_text(const std::string& raw);

// Whitespace split of already-cleaned text.
std::vector<std::string> tokenize(const std::string& cleaned);

// Ranks tokens by (frequency desc, token asc) and keeps the top
// max_size - 2; the rest encode to UNK. max_size must be >= 3.
Vocab build_vocab(const std::vector<std::vector<std::string>>& corpus, std::size_t max_size);

// Maps tokens to ids, keeps the last L on overflow and left-pads with PAD
// on underflow. L must be >= 1.
EncodedSequence encode(const std::vector<std::string>& tokens, const Vocab& vocab, std::size_t L);

// Tokens at the non-PAD positions; OOV comes back as the UNK token.
std::vector<std::string> decode(const EncodedSequence& seq, const Vocab& vocab);

// One line per token: <token>\t<id>\t<count>, ids ascending from 0.
void save_vocab(const Vocab& vocab, const std::string& path);
Vocab load_vocab(const std::string& path);

}  // namespace bsa

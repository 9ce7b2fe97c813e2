#include "bsa/classify.hpp"

#include <stdexcept>

#include "bsa/errors.hpp"

namespace bsa {

ReviewType review_type_of(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("review_type_of: probability " + std::to_string(p) +
                                " outside [0, 1]");
    }
    if (p < 0.30) return ReviewType::VeryBad;
    if (p < 0.50) return ReviewType::Bad;
    if (p < 0.60) return ReviewType::Good;
    if (p < 0.80) return ReviewType::Better;
    return ReviewType::Excellent;
}

Sentiment sentiment_of(const std::vector<double>& output, int head) {
    if (head == 1) {
        if (output.size() != 1) {
            throw ConfigError("sentiment_of: binary head expects 1 output, got " +
                              std::to_string(output.size()));
        }
        return output[0] > 0.5 ? Sentiment::Positive : Sentiment::Negative;
    }
    if (head == 3) {
        if (output.size() != 3) {
            throw ConfigError("sentiment_of: softmax head expects 3 outputs, got " +
                              std::to_string(output.size()));
        }
        return argmax_sentiment({output[0], output[1], output[2]});
    }
    throw ConfigError("sentiment_of: head must be 1 or 3, got " + std::to_string(head));
}

std::array<double, 3> one_hot(Sentiment label) {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    v[static_cast<std::size_t>(label)] = 1.0;
    return v;
}

Sentiment argmax_sentiment(const std::array<double, 3>& scores) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (scores[i] > scores[best]) best = i;
    }
    return static_cast<Sentiment>(best);
}

const std::string& to_string(Sentiment label) {
    static const std::string names[] = {"negative", "neutral", "positive"};
    return names[static_cast<std::size_t>(label)];
}

const std::string& to_string(ReviewType type) {
    static const std::string names[] = {"very_bad", "bad", "good", "better", "excellent"};
    return names[static_cast<std::size_t>(type)];
}

bool sentiment_from_string(const std::string& s, Sentiment& out) {
    if (s == "negative") { out = Sentiment::Negative; return true; }
    if (s == "neutral")  { out = Sentiment::Neutral;  return true; }
    if (s == "positive") { out = Sentiment::Positive; return true; }
    return false;
}

}  // namespace bsa

#pragma once

#include <array>
#include <string>
#include <vector>

namespace bsa {

// Tri-class sentiment, in fixed (negative, neutral, positive) order. The
// order doubles as the one-hot component order and the tie-break order.
enum class Sentiment { Negative = 0, Neutral = 1, Positive = 2 };

// Five-band qualitative grade derived from the prediction probability.
enum class ReviewType { VeryBad = 0, Bad = 1, Good = 2, Better = 3, Excellent = 4 };

// Half-open bands over [0,1]: [0,0.30) very_bad, [0.30,0.50) bad,
// [0.50,0.60) good, [0.60,0.80) better, [0.80,1.0] excellent.
// Throws std::domain_error outside [0,1].
ReviewType review_type_of(double p);

// head=1: strict p > 0.5 means positive, else negative. head=3: argmax over
// (negative, neutral, positive), ties to the earlier class.
Sentiment sentiment_of(const std::vector<double>& output, int head);

// negative (1,0,0), neutral (0,1,0), positive (0,0,1)
std::array<double, 3> one_hot(Sentiment label);

// Inverse of one_hot under argmax; ties to the earlier class.
Sentiment argmax_sentiment(const std::array<double, 3>& scores);

const std::string& to_string(Sentiment label);
const std::string& to_string(ReviewType type);

// Parses "negative" / "neutral" / "positive"; returns false on any other
// input.
bool sentiment_from_string(const std::string& s, Sentiment& out);

}  // namespace bsa

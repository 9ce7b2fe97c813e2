#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bsa/classify.hpp"
#include "bsa/model.hpp"
#include "bsa/numerics.hpp"
#include "bsa/textproc.hpp"
#include "bsa/training.hpp"

namespace bsa {

struct LmConfig {
    std::size_t vocab_size = 0;
    std::size_t embed_dim = 16;
    std::size_t hidden = 32;
    std::size_t seq_len = 0;

    void validate() const;
};

// One next-token language model: embedding, LSTM cell, and a softmax
// projection over the whole vocabulary.
struct ClassLm {
    Sentiment label = Sentiment::Negative;
    Matrix embedding;
    LstmParams lstm;
    Matrix out_w;
    std::vector<double> out_b;

    static ClassLm zeros_like(const LmConfig& config, Sentiment label);
    std::vector<std::span<double>> tensors();
    std::vector<std::span<const double>> tensors() const;
    void set_zero();
};

// Indexed by Sentiment order: negative, neutral, positive.
struct EnsembleModel {
    LmConfig config;
    std::array<ClassLm, 3> classes;
};

struct ClassifyResult {
    Sentiment label = Sentiment::Negative;
    std::array<double, 3> errors{};
};

struct EnsembleTrainResult {
    EnsembleModel model;
    std::array<std::vector<double>, 3> nll_history;
};

ClassLm init_class_lm(const LmConfig& config, Sentiment label, std::uint64_t seed);

// Mean -ln p(next token) over positions whose next token is not PAD, so the
// leading padding acts as a begin marker and trailing structure is never
// scored. Requires at least 2 real tokens.
double sequence_avg_nll(const ClassLm& lm, const EncodedSequence& seq, const LmConfig& config);

// Next-token gradient accumulation for one sequence, mirroring
// sequence_avg_nll's position rule. Returns the sequence's avg NLL.
double lm_backward_into(const ClassLm& lm, const EncodedSequence& seq, const LmConfig& config,
                        ClassLm& grad);

// Argmin of per-class avg NLL; ties go to the lowest class index.
ClassifyResult classify_by_min_error(const EnsembleModel& ensemble, const EncodedSequence& seq);

// Trains the three models independently, one thread each. Sequences with
// fewer than 2 real tokens are skipped; a class whose corpus is empty or
// entirely too short is a config error. nll_history holds each class's
// post-epoch mean NLL over its own corpus.
EnsembleTrainResult train_class_lms(const std::array<std::vector<EncodedSequence>, 3>& corpora,
                                    const LmConfig& config, const TrainConfig& train_cfg);

// Mean NLL under each record's own class model, plus min-error accuracy.
EvalResult evaluate_ensemble(const EnsembleModel& ensemble,
                             const std::vector<LabeledExample>& data);

void save_ensemble(const EnsembleModel& ensemble, const std::string& path);
EnsembleModel load_ensemble(const std::string& path);

}  // namespace bsa

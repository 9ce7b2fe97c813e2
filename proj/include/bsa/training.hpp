#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bsa/classify.hpp"
#include "bsa/data.hpp"
#include "bsa/errors.hpp"
#include "bsa/model.hpp"
#include "bsa/numerics.hpp"
#include "bsa/textproc.hpp"

namespace bsa {

struct TrainConfig {
    std::size_t epochs = 10;
    std::size_t batch_size = 32;
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double clip_norm = 5.0;
    double train_frac = 0.7;
    std::uint64_t seed = 0;

    void validate() const;
};

struct EpochStats {
    double train_loss = 0.0;
    double train_acc = 0.0;
    double val_loss = 0.0;
    double val_acc = 0.0;
};

using History = std::vector<EpochStats>;

struct EvalResult {
    double loss = 0.0;
    double accuracy = 0.0;
};

// First/second Adam moments, one slot per parameter tensor.
struct AdamState {
    std::vector<std::vector<double>> m;
    std::vector<std::vector<double>> v;
    std::uint64_t t = 0;

    static AdamState like(const std::vector<std::span<double>>& tensors);
};

struct LabeledExample {
    EncodedSequence seq;
    Sentiment label = Sentiment::Negative;
};

// Deterministic shuffle by seed, then first floor(n * train_frac) elements.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_dataset(const std::vector<T>& data,
                                                        double train_frac, std::uint64_t seed) {
    if (data.empty()) throw ConfigError("split_dataset: data must be non-empty");
    if (!(train_frac > 0.0 && train_frac < 1.0)) {
        throw ConfigError("split_dataset: train_frac must be in (0, 1)");
    }
    std::vector<T> shuffled = data;
    Rng64 rng(seed);
    rng.shuffle(shuffled);
    const auto cut = static_cast<std::size_t>(static_cast<double>(data.size()) * train_frac);
    std::vector<T> train(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<T> test(shuffled.begin() + static_cast<std::ptrdiff_t>(cut), shuffled.end());
    return {std::move(train), std::move(test)};
}

// BCE for head=1, CCE for head=3; probabilities clamped to [1e-12, 1-1e-12].
double loss(const std::vector<double>& output, const std::vector<double>& target, int head);

// head=1: {1} for positive, {0} for negative, neutral rejected.
// head=3: one-hot in (negative, neutral, positive) order.
std::vector<double> target_for(Sentiment label, int head);

double global_grad_norm(const std::vector<std::span<double>>& grads);

// Scales grads so the global norm is at most max_norm; returns the pre-clip norm.
double clip_by_global_norm(const std::vector<std::span<double>>& grads, double max_norm);

// One optimizer step: clip grads by cfg.clip_norm, then Adam with bias correction.
void adam_step(const std::vector<std::span<double>>& params,
               const std::vector<std::span<double>>& grads, AdamState& state,
               const TrainConfig& cfg);

// Clean, tokenize and encode every record; labels must already be resolved.
std::vector<LabeledExample> encode_dataset(const Dataset& dataset, const Vocab& vocab,
                                           std::size_t seq_len);

// Epoch loop over train_set with per-epoch metrics on both sets.
History train(ParamBundle& bundle, const std::vector<LabeledExample>& train_set,
              const std::vector<LabeledExample>& val_set, const ModelConfig& model_cfg,
              const TrainConfig& train_cfg);

// Splits data by train_cfg.train_frac / seed, then trains on the first part.
History train(ParamBundle& bundle, const std::vector<LabeledExample>& data,
              const ModelConfig& model_cfg, const TrainConfig& train_cfg);

EvalResult evaluate(const ParamBundle& bundle, const std::vector<LabeledExample>& data,
                    const ModelConfig& model_cfg);

// CSV with header epoch,train_loss,train_acc,val_loss,val_acc; 6 decimals.
void export_curves(const History& history, const std::string& path);
History parse_curves(const std::string& path);

}  // namespace bsa

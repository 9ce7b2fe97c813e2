#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bsa/numerics.hpp"
#include "bsa/textproc.hpp"

namespace bsa {

// Network shape: trainable embedding, one LSTM layer, dense head. head is
// the output width: 1 for a sigmoid score, 3 for a softmax over
// (negative, neutral, positive).
struct ModelConfig {
    std::size_t vocab_size = 0;
    std::size_t embed_dim = 32;
    std::size_t hidden = 100;
    std::size_t seq_len = 100;
    int head = 1;

    void validate() const;  // throws ConfigError
};

// Per-gate input kernels (embed_dim x hidden), recurrent kernels
// (hidden x hidden), and one bias vector per gate.
struct LstmParams {
    Matrix U_i, U_f, U_g, U_o;
    Matrix W_i, W_f, W_g, W_o;
    std::vector<double> b_i, b_f, b_g, b_o;
};

struct DenseParams {
    Matrix w;               // hidden x head
    std::vector<double> b;  // head
};

// All trainable scalars of the three layers. tensors() exposes them in a
// fixed order (embedding, U_i..U_o, W_i..W_o, b_i..b_o, dense) shared by
// the optimizer, the gradient bundle, and the weights file.
struct ParamBundle {
    Matrix embedding;  // vocab_size x embed_dim
    LstmParams lstm;
    DenseParams dense;

    static ParamBundle zeros_like(const ModelConfig& config);

    std::vector<std::span<double>> tensors();
    std::vector<std::span<const double>> tensors() const;
    void set_zero();
};

// Activations of one timestep, retained for backpropagation through time.
struct StepCache {
    std::vector<double> x;       // embedded input
    std::vector<double> i, f, g, o;
    std::vector<double> c, h, tanh_c;
};

struct ForwardCache {
    std::vector<std::uint32_t> ids;
    std::vector<StepCache> steps;  // exactly seq_len entries
    std::vector<double> logits;    // head pre-activation
    std::vector<double> output;    // sigmoid scalar or softmax vector
};

struct ParamCounts {
    std::size_t embedding = 0;
    std::size_t lstm = 0;
    std::size_t dense = 0;
    std::size_t total = 0;
};

struct Example {
    EncodedSequence seq;
    std::vector<double> target;  // {y} for head=1, 3-vector for head=3
};

// Embedding ~ U(-0.05, 0.05), kernels Glorot-uniform, biases zero except
// the forget bias at 1. Fixed draw order makes bundles reproducible.
ParamBundle init_params(const ModelConfig& config, std::uint64_t seed);

// One cell update: gates from x_t and h_prev, additive cell-state update,
// gated tanh output.
StepCache lstm_step(std::span<const double> x_t, std::span<const double> h_prev,
                    std::span<const double> c_prev, const LstmParams& p);

// Allocation-free variants for callers running many steps: size the cache
// once, fill st.x, then step.
void resize_step_cache(StepCache& st, std::size_t embed_dim, std::size_t hidden);
void lstm_step_into(std::span<const double> h_prev, std::span<const double> c_prev,
                    const LstmParams& p, StepCache& st);

// Embeds each id, runs seq_len cell updates from zero states, applies the
// head to the final hidden state. Pass a cache to retain activations for
// backward(). Returns the head output (size 1 or 3).
std::vector<double> forward(const EncodedSequence& seq, const ParamBundle& params,
                            const ModelConfig& config, ForwardCache* cache = nullptr);

// Exact loss gradients (binary or categorical cross-entropy, matching the
// head) for every parameter; embedding rows the sequence never touched stay
// zero. Accumulates into grad, so batch gradients can share one bundle.
void backward_into(const ForwardCache& cache, const std::vector<double>& target,
                   const ParamBundle& params, const ModelConfig& config, ParamBundle& grad);
ParamBundle backward(const ForwardCache& cache, const std::vector<double>& target,
                     const ParamBundle& params, const ModelConfig& config);

ParamCounts param_count(const ModelConfig& config);

struct GradCheckOptions {
    std::size_t samples_per_tensor = 25;
    std::uint64_t seed = 0;
    bool include_biases = true;
    // Test hook: scales analytic gradients to let callers verify that a
    // planted fault is flagged.
    double corrupt_scale = 1.0;
};

// Central-difference check of backward() on a sampled parameter subset plus
// all biases. Per tensor, the checked analytic and numeric gradients are
// compared as vectors a and n; returns the worst |a-n| / max(|a|, |n|, 1e-8)
// across tensors.
double grad_check(const ParamBundle& params, const std::vector<Example>& batch,
                  const ModelConfig& config, double eps,
                  const GradCheckOptions& options = {});

// JSON weights file, format_version 1, tensors in the fixed bundle order,
// numbers at 17 significant digits so round-trips are value-exact.
void save_weights(const ParamBundle& params, const ModelConfig& config, const std::string& path);
std::pair<ParamBundle, ModelConfig> load_weights(const std::string& path);

}  // namespace bsa

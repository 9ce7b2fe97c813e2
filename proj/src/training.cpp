#include "bsa/training.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace bsa {

namespace {

constexpr double kProbFloor = 1e-12;

double clamp_prob(double p) { return std::clamp(p, kProbFloor, 1.0 - kProbFloor); }

bool predicted_correct(const std::vector<double>& output, Sentiment label, int head) {
    return sentiment_of(output, head) == label;
}

void check_labels(const std::vector<LabeledExample>& data, int head, const char* set_name) {
    if (head != 1) return;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i].label == Sentiment::Neutral) {
            throw ConfigError(std::string(set_name) + ": record " + std::to_string(i) +
                              " has a neutral label, which the binary head cannot represent");
        }
    }
}

EpochStats measure(const ParamBundle& bundle, const std::vector<LabeledExample>& train_set,
                   const std::vector<LabeledExample>& val_set, const ModelConfig& mcfg) {
    const EvalResult tr = evaluate(bundle, train_set, mcfg);
    const EvalResult va = evaluate(bundle, val_set, mcfg);
    return {tr.loss, tr.accuracy, va.loss, va.accuracy};
}

}  // namespace

void TrainConfig::validate() const {
    if (epochs < 1) throw ConfigError("train config: epochs must be >= 1");
    if (batch_size < 1) throw ConfigError("train config: batch_size must be >= 1");
    if (!(learning_rate > 0.0)) throw ConfigError("train config: learning_rate must be > 0");
    if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ConfigError("train config: beta1 must be in [0, 1)");
    if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("train config: beta2 must be in [0, 1)");
    if (!(epsilon > 0.0)) throw ConfigError("train config: epsilon must be > 0");
    if (!(clip_norm > 0.0)) throw ConfigError("train config: clip_norm must be > 0");
    if (!(train_frac > 0.0 && train_frac < 1.0)) {
        throw ConfigError("train config: train_frac must be in (0, 1)");
    }
}

AdamState AdamState::like(const std::vector<std::span<double>>& tensors) {
    AdamState s;
    s.m.reserve(tensors.size());
    s.v.reserve(tensors.size());
    for (auto t : tensors) {
        s.m.emplace_back(t.size(), 0.0);
        s.v.emplace_back(t.size(), 0.0);
    }
    return s;
}

double loss(const std::vector<double>& output, const std::vector<double>& target, int head) {
    if (head != 1 && head != 3) throw ConfigError("loss: head must be 1 or 3");
    const auto k = static_cast<std::size_t>(head);
    if (output.size() != k || target.size() != k) {
        throw ShapeError("loss: output/target sizes (" + std::to_string(output.size()) + ", " +
                         std::to_string(target.size()) + ") do not match head " +
                         std::to_string(head));
    }
    if (head == 1) {
        const double p = clamp_prob(output[0]);
        const double y = target[0];
        return -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    }
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) total -= target[c] * std::log(clamp_prob(output[c]));
    return total;
}

std::vector<double> target_for(Sentiment label, int head) {
    if (head == 1) {
        if (label == Sentiment::Neutral) {
            throw ConfigError("target_for: neutral label cannot be encoded for a binary head");
        }
        return {label == Sentiment::Positive ? 1.0 : 0.0};
    }
    if (head != 3) throw ConfigError("target_for: head must be 1 or 3");
    const auto oh = one_hot(label);
    return {oh.begin(), oh.end()};
}

double global_grad_norm(const std::vector<std::span<double>>& grads) {
    double sq = 0.0;
    for (auto g : grads) {
        for (double v : g) sq += v * v;
    }
    return std::sqrt(sq);
}

double clip_by_global_norm(const std::vector<std::span<double>>& grads, double max_norm) {
    if (!(max_norm > 0.0)) throw ConfigError("clip_by_global_norm: max_norm must be > 0");
    const double norm = global_grad_norm(grads);
    if (norm > max_norm) {
        const double scale = max_norm / norm;
        for (auto g : grads) {
            for (double& v : g) v *= scale;
        }
    }
    return norm;
}

void adam_step(const std::vector<std::span<double>>& params,
               const std::vector<std::span<double>>& grads, AdamState& state,
               const TrainConfig& cfg) {
    if (params.size() != grads.size() || params.size() != state.m.size() ||
        params.size() != state.v.size()) {
        throw ShapeError("adam_step: tensor counts disagree (params " +
                         std::to_string(params.size()) + ", grads " + std::to_string(grads.size()) +
                         ", state " + std::to_string(state.m.size()) + ")");
    }
    for (std::size_t s = 0; s < params.size(); ++s) {
        if (params[s].size() != grads[s].size() || params[s].size() != state.m[s].size()) {
            throw ShapeError("adam_step: tensor " + std::to_string(s) + " sizes disagree");
        }
    }

    clip_by_global_norm(grads, cfg.clip_norm);
    state.t += 1;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
    for (std::size_t s = 0; s < params.size(); ++s) {
        auto p = params[s];
        auto g = grads[s];
        auto& m = state.m[s];
        auto& v = state.v[s];
        for (std::size_t i = 0; i < p.size(); ++i) {
            m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
            v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
            const double m_hat = m[i] / bc1;
            const double v_hat = v[i] / bc2;
            p[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
        }
    }
}

std::vector<LabeledExample> encode_dataset(const Dataset& dataset, const Vocab& vocab,
                                           std::size_t seq_len) {
    std::vector<LabeledExample> out;
    out.reserve(dataset.records.size());
    for (const ReviewRecord& r : dataset.records) {
        LabeledExample ex;
        ex.seq = encode(tokenize(clean_text(r.text)), vocab, seq_len);
        ex.label = r.resolved_label();
        out.push_back(std::move(ex));
    }
    return out;
}

History train(ParamBundle& bundle, const std::vector<LabeledExample>& train_set,
              const std::vector<LabeledExample>& val_set, const ModelConfig& model_cfg,
              const TrainConfig& train_cfg) {
    model_cfg.validate();
    train_cfg.validate();
    if (train_set.empty()) throw ConfigError("train: training set must be non-empty");
    if (val_set.empty()) throw ConfigError("train: validation set must be non-empty");
    check_labels(train_set, model_cfg.head, "training set");
    check_labels(val_set, model_cfg.head, "validation set");

    std::vector<std::vector<double>> targets;
    targets.reserve(train_set.size());
    for (const LabeledExample& ex : train_set) {
        targets.push_back(target_for(ex.label, model_cfg.head));
    }

    ParamBundle grad = ParamBundle::zeros_like(model_cfg);
    AdamState adam = AdamState::like(bundle.tensors());
    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    History history;
    history.reserve(train_cfg.epochs);
    ForwardCache cache;
    for (std::size_t epoch = 0; epoch < train_cfg.epochs; ++epoch) {
        Rng64 rng(train_cfg.seed + epoch);
        rng.shuffle(order);
        for (std::size_t start = 0; start < order.size(); start += train_cfg.batch_size) {
            const std::size_t stop = std::min(start + train_cfg.batch_size, order.size());
            grad.set_zero();
            for (std::size_t b = start; b < stop; ++b) {
                const std::size_t idx = order[b];
                forward(train_set[idx].seq, bundle, model_cfg, &cache);
                backward_into(cache, targets[idx], bundle, model_cfg, grad);
            }
            const double inv_n = 1.0 / static_cast<double>(stop - start);
            for (auto t : grad.tensors()) {
                for (double& g : t) g *= inv_n;
            }
            adam_step(bundle.tensors(), grad.tensors(), adam, train_cfg);
        }
        history.push_back(measure(bundle, train_set, val_set, model_cfg));
    }
    return history;
}

History train(ParamBundle& bundle, const std::vector<LabeledExample>& data,
              const ModelConfig& model_cfg, const TrainConfig& train_cfg) {
    train_cfg.validate();
    auto [train_set, val_set] = split_dataset(data, train_cfg.train_frac, train_cfg.seed);
    if (train_set.empty() || val_set.empty()) {
        throw ConfigError("train: dataset of " + std::to_string(data.size()) +
                          " records leaves an empty split at train_frac " +
                          std::to_string(train_cfg.train_frac));
    }
    return train(bundle, train_set, val_set, model_cfg, train_cfg);
}

EvalResult evaluate(const ParamBundle& bundle, const std::vector<LabeledExample>& data,
                    const ModelConfig& model_cfg) {
    if (data.empty()) throw ConfigError("evaluate: data must be non-empty");
    check_labels(data, model_cfg.head, "evaluate");
    double total_loss = 0.0;
    std::size_t correct = 0;
    for (const LabeledExample& ex : data) {
        const std::vector<double> out = forward(ex.seq, bundle, model_cfg);
        total_loss += loss(out, target_for(ex.label, model_cfg.head), model_cfg.head);
        if (predicted_correct(out, ex.label, model_cfg.head)) ++correct;
    }
    const double n = static_cast<double>(data.size());
    return {total_loss / n, static_cast<double>(correct) / n};
}

void export_curves(const History& history, const std::string& path) {
    if (history.empty()) throw ConfigError("export_curves: history must be non-empty");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write curves file: " + path);
    f << "epoch,train_loss,train_acc,val_loss,val_acc\n";
    char buf[160];
    for (std::size_t i = 0; i < history.size(); ++i) {
        const EpochStats& s = history[i];
        std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f,%.6f,%.6f\n", i + 1, s.train_loss,
                      s.train_acc, s.val_loss, s.val_acc);
        f << buf;
    }
    if (!f.good()) throw IoError("write failed for curves file: " + path);
}

History parse_curves(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open curves file: " + path);
    std::string line;
    if (!std::getline(f, line)) throw DataError("curves file is empty: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "epoch,train_loss,train_acc,val_loss,val_acc") {
        throw DataError("curves file " + path + ": unexpected header '" + line + "'");
    }
    History history;
    std::size_t row = 0;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 5) {
            throw DataError("curves file " + path + ": row " + std::to_string(row) + " has " +
                            std::to_string(fields.size()) + " fields, expected 5");
        }
        std::size_t pos = 0;
        unsigned long epoch = 0;
        try {
            epoch = std::stoul(fields[0], &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != fields[0].size() || epoch != row) {
            throw DataError("curves file " + path + ": row " + std::to_string(row) +
                            " has epoch '" + fields[0] + "', expected " + std::to_string(row));
        }
        EpochStats s;
        double* slots[4] = {&s.train_loss, &s.train_acc, &s.val_loss, &s.val_acc};
        for (std::size_t i = 0; i < 4; ++i) {
            try {
                *slots[i] = std::stod(fields[i + 1], &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != fields[i + 1].size()) {
                throw DataError("curves file " + path + ": row " + std::to_string(row) +
                                ": bad value '" + fields[i + 1] + "'");
            }
        }
        history.push_back(s);
    }
    return history;
}

}  // namespace bsa

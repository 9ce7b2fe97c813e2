#include "bsa/lm_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

#include "bsa/errors.hpp"
#include "tensor_json.hpp"

namespace bsa {

namespace {

// Positions t whose next token is real; the leading PAD run makes the first
// real token predicted from a PAD input.
std::size_t count_predicting_positions(const EncodedSequence& seq) {
    std::size_t n = 0;
    for (std::size_t t = 0; t + 1 < seq.ids.size(); ++t) {
        if (seq.ids[t + 1] != Vocab::kPadId) ++n;
    }
    return n;
}

std::size_t count_real_tokens(const EncodedSequence& seq) {
    std::size_t n = 0;
    for (std::uint32_t id : seq.ids) {
        if (id != Vocab::kPadId) ++n;
    }
    return n;
}

void validate_sequence(const EncodedSequence& seq, const LmConfig& cfg) {
    if (seq.ids.size() != cfg.seq_len) {
        throw ShapeError("sequence length " + std::to_string(seq.ids.size()) +
                         " does not match configured seq_len " + std::to_string(cfg.seq_len));
    }
    for (std::uint32_t id : seq.ids) {
        if (id >= cfg.vocab_size) {
            throw DataError("token id " + std::to_string(id) + " >= vocab_size " +
                            std::to_string(cfg.vocab_size));
        }
    }
    const std::size_t real = count_real_tokens(seq);
    if (real < 2) {
        throw InsufficientLengthError("sequence has " + std::to_string(real) +
                                      " real tokens; scoring needs at least 2");
    }
}

void check_lm_shape(const ClassLm& lm, const LmConfig& cfg) {
    const std::size_t V = cfg.vocab_size, d = cfg.embed_dim, h = cfg.hidden;
    if (lm.embedding.rows() != V || lm.embedding.cols() != d || lm.lstm.U_i.rows() != d ||
        lm.lstm.U_i.cols() != h || lm.lstm.W_i.rows() != h || lm.lstm.b_i.size() != h ||
        lm.out_w.rows() != h || lm.out_w.cols() != V || lm.out_b.size() != V) {
        throw ShapeError("class model tensors do not match config (V=" + std::to_string(V) +
                         ", d=" + std::to_string(d) + ", h=" + std::to_string(h) + ")");
    }
}

double log_sum_exp(const std::vector<double>& logits) {
    const double m = *std::max_element(logits.begin(), logits.end());
    double s = 0.0;
    for (double l : logits) s += std::exp(l - m);
    return m + std::log(s);
}

void fill_uniform(Matrix& m, Rng64& rng, double lo, double hi) {
    for (double& v : m.data()) v = rng.uniform(lo, hi);
}

const char* class_key(std::size_t c) {
    return c == 0 ? "negative" : (c == 1 ? "neutral" : "positive");
}

}  // namespace

void LmConfig::validate() const {
    if (vocab_size < 2) throw ConfigError("lm config: vocab_size must be >= 2");
    if (embed_dim < 1) throw ConfigError("lm config: embed_dim must be >= 1");
    if (hidden < 1) throw ConfigError("lm config: hidden must be >= 1");
    if (seq_len < 2) throw ConfigError("lm config: seq_len must be >= 2");
}

ClassLm ClassLm::zeros_like(const LmConfig& config, Sentiment label) {
    const std::size_t V = config.vocab_size, d = config.embed_dim, h = config.hidden;
    ClassLm lm;
    lm.label = label;
    lm.embedding = Matrix(V, d);
    lm.lstm.U_i = Matrix(d, h);
    lm.lstm.U_f = Matrix(d, h);
    lm.lstm.U_g = Matrix(d, h);
    lm.lstm.U_o = Matrix(d, h);
    lm.lstm.W_i = Matrix(h, h);
    lm.lstm.W_f = Matrix(h, h);
    lm.lstm.W_g = Matrix(h, h);
    lm.lstm.W_o = Matrix(h, h);
    lm.lstm.b_i.assign(h, 0.0);
    lm.lstm.b_f.assign(h, 0.0);
    lm.lstm.b_g.assign(h, 0.0);
    lm.lstm.b_o.assign(h, 0.0);
    lm.out_w = Matrix(h, V);
    lm.out_b.assign(V, 0.0);
    return lm;
}

std::vector<std::span<double>> ClassLm::tensors() {
    return {embedding.data(), lstm.U_i.data(), lstm.U_f.data(), lstm.U_g.data(),
            lstm.U_o.data(),  lstm.W_i.data(), lstm.W_f.data(), lstm.W_g.data(),
            lstm.W_o.data(),  lstm.b_i,        lstm.b_f,        lstm.b_g,
            lstm.b_o,         out_w.data(),    out_b};
}

std::vector<std::span<const double>> ClassLm::tensors() const {
    return {embedding.data(), lstm.U_i.data(), lstm.U_f.data(), lstm.U_g.data(),
            lstm.U_o.data(),  lstm.W_i.data(), lstm.W_f.data(), lstm.W_g.data(),
            lstm.W_o.data(),  lstm.b_i,        lstm.b_f,        lstm.b_g,
            lstm.b_o,         out_w.data(),    out_b};
}

void ClassLm::set_zero() {
    for (auto t : tensors()) std::fill(t.begin(), t.end(), 0.0);
}

ClassLm init_class_lm(const LmConfig& config, Sentiment label, std::uint64_t seed) {
    config.validate();
    const std::size_t V = config.vocab_size, d = config.embed_dim, h = config.hidden;
    ClassLm lm = ClassLm::zeros_like(config, label);
    Rng64 rng(seed);
    fill_uniform(lm.embedding, rng, -0.05, 0.05);
    const double u_limit = std::sqrt(6.0 / static_cast<double>(d + h));
    const double w_limit = std::sqrt(6.0 / static_cast<double>(h + h));
    const double out_limit = std::sqrt(6.0 / static_cast<double>(h + V));
    fill_uniform(lm.lstm.U_i, rng, -u_limit, u_limit);
    fill_uniform(lm.lstm.U_f, rng, -u_limit, u_limit);
    fill_uniform(lm.lstm.U_g, rng, -u_limit, u_limit);
    fill_uniform(lm.lstm.U_o, rng, -u_limit, u_limit);
    fill_uniform(lm.lstm.W_i, rng, -w_limit, w_limit);
    fill_uniform(lm.lstm.W_f, rng, -w_limit, w_limit);
    fill_uniform(lm.lstm.W_g, rng, -w_limit, w_limit);
    fill_uniform(lm.lstm.W_o, rng, -w_limit, w_limit);
    std::fill(lm.lstm.b_f.begin(), lm.lstm.b_f.end(), 1.0);
    fill_uniform(lm.out_w, rng, -out_limit, out_limit);
    return lm;
}

double sequence_avg_nll(const ClassLm& lm, const EncodedSequence& seq, const LmConfig& config) {
    config.validate();
    check_lm_shape(lm, config);
    validate_sequence(seq, config);
    const std::size_t d = config.embed_dim, h = config.hidden, L = config.seq_len;
    const std::size_t V = config.vocab_size;

    std::vector<double> h_state(h, 0.0), c_state(h, 0.0), logits(V);
    StepCache st;
    resize_step_cache(st, d, h);
    double nll_sum = 0.0;
    std::size_t npos = 0;
    for (std::size_t t = 0; t < L; ++t) {
        const double* emb = lm.embedding.row(seq.ids[t]);
        std::copy(emb, emb + d, st.x.begin());
        lstm_step_into(h_state, c_state, lm.lstm, st);
        std::copy(st.h.begin(), st.h.end(), h_state.begin());
        std::copy(st.c.begin(), st.c.end(), c_state.begin());
        if (t + 1 >= L || seq.ids[t + 1] == Vocab::kPadId) continue;
        std::copy(lm.out_b.begin(), lm.out_b.end(), logits.begin());
        for (std::size_t j = 0; j < h; ++j) {
            const double hj = h_state[j];
            const double* row = lm.out_w.row(j);
            for (std::size_t v = 0; v < V; ++v) logits[v] += hj * row[v];
        }
        nll_sum += log_sum_exp(logits) - logits[seq.ids[t + 1]];
        ++npos;
    }
    return nll_sum / static_cast<double>(npos);
}

double lm_backward_into(const ClassLm& lm, const EncodedSequence& seq, const LmConfig& config,
                        ClassLm& grad) {
    config.validate();
    check_lm_shape(lm, config);
    check_lm_shape(grad, config);
    validate_sequence(seq, config);
    const std::size_t d = config.embed_dim, h = config.hidden, L = config.seq_len;
    const std::size_t V = config.vocab_size;
    const std::size_t npos = count_predicting_positions(seq);
    const double inv_npos = 1.0 / static_cast<double>(npos);

    std::vector<StepCache> steps(L);
    std::vector<std::vector<double>> dlogits(L);
    std::vector<double> h_state(h, 0.0), c_state(h, 0.0), logits(V);
    double nll_sum = 0.0;
    for (std::size_t t = 0; t < L; ++t) {
        StepCache& st = steps[t];
        resize_step_cache(st, d, h);
        const double* emb = lm.embedding.row(seq.ids[t]);
        std::copy(emb, emb + d, st.x.begin());
        lstm_step_into(h_state, c_state, lm.lstm, st);
        std::copy(st.h.begin(), st.h.end(), h_state.begin());
        std::copy(st.c.begin(), st.c.end(), c_state.begin());
        if (t + 1 >= L || seq.ids[t + 1] == Vocab::kPadId) continue;
        std::copy(lm.out_b.begin(), lm.out_b.end(), logits.begin());
        for (std::size_t j = 0; j < h; ++j) {
            const double hj = st.h[j];
            const double* row = lm.out_w.row(j);
            for (std::size_t v = 0; v < V; ++v) logits[v] += hj * row[v];
        }
        const double lse = log_sum_exp(logits);
        nll_sum += lse - logits[seq.ids[t + 1]];
        std::vector<double>& dl = dlogits[t];
        dl.resize(V);
        for (std::size_t v = 0; v < V; ++v) dl[v] = std::exp(logits[v] - lse) * inv_npos;
        dl[seq.ids[t + 1]] -= inv_npos;
    }

    std::vector<double> dh(h, 0.0), dc(h, 0.0), dh_prev(h, 0.0);
    std::vector<double> dzi(h), dzf(h), dzg(h), dzo(h);
    const std::vector<double> zeros(h, 0.0);
    for (std::size_t t = L; t-- > 0;) {
        const StepCache& st = steps[t];
        const std::vector<double>& h_prev = t > 0 ? steps[t - 1].h : zeros;
        const std::vector<double>& c_prev = t > 0 ? steps[t - 1].c : zeros;

        if (!dlogits[t].empty()) {
            const std::vector<double>& dl = dlogits[t];
            for (std::size_t j = 0; j < h; ++j) {
                const double* wrow = lm.out_w.row(j);
                double* gw = grad.out_w.row(j);
                double s = 0.0;
                const double hj = st.h[j];
                for (std::size_t v = 0; v < V; ++v) {
                    s += wrow[v] * dl[v];
                    gw[v] += hj * dl[v];
                }
                dh[j] += s;
            }
            for (std::size_t v = 0; v < V; ++v) grad.out_b[v] += dl[v];
        }

        for (std::size_t j = 0; j < h; ++j) {
            const double d_out = dh[j] * st.tanh_c[j];
            dzo[j] = d_out * st.o[j] * (1.0 - st.o[j]);
            dc[j] += dh[j] * st.o[j] * (1.0 - st.tanh_c[j] * st.tanh_c[j]);
            dzi[j] = dc[j] * st.g[j] * st.i[j] * (1.0 - st.i[j]);
            dzf[j] = dc[j] * c_prev[j] * st.f[j] * (1.0 - st.f[j]);
            dzg[j] = dc[j] * st.i[j] * (1.0 - st.g[j] * st.g[j]);
        }

        for (std::size_t m = 0; m < d; ++m) {
            const double xm = st.x[m];
            double* gi = grad.lstm.U_i.row(m);
            double* gf = grad.lstm.U_f.row(m);
            double* gg = grad.lstm.U_g.row(m);
            double* go = grad.lstm.U_o.row(m);
            for (std::size_t j = 0; j < h; ++j) {
                gi[j] += xm * dzi[j];
                gf[j] += xm * dzf[j];
                gg[j] += xm * dzg[j];
                go[j] += xm * dzo[j];
            }
        }
        for (std::size_t m = 0; m < h; ++m) {
            const double hm = h_prev[m];
            double* gi = grad.lstm.W_i.row(m);
            double* gf = grad.lstm.W_f.row(m);
            double* gg = grad.lstm.W_g.row(m);
            double* go = grad.lstm.W_o.row(m);
            for (std::size_t j = 0; j < h; ++j) {
                gi[j] += hm * dzi[j];
                gf[j] += hm * dzf[j];
                gg[j] += hm * dzg[j];
                go[j] += hm * dzo[j];
            }
        }
        for (std::size_t j = 0; j < h; ++j) {
            grad.lstm.b_i[j] += dzi[j];
            grad.lstm.b_f[j] += dzf[j];
            grad.lstm.b_g[j] += dzg[j];
            grad.lstm.b_o[j] += dzo[j];
        }

        double* emb_grad = grad.embedding.row(seq.ids[t]);
        for (std::size_t m = 0; m < d; ++m) {
            const double* ui = lm.lstm.U_i.row(m);
            const double* uf = lm.lstm.U_f.row(m);
            const double* ug = lm.lstm.U_g.row(m);
            const double* uo = lm.lstm.U_o.row(m);
            double s = 0.0;
            for (std::size_t j = 0; j < h; ++j) {
                s += dzi[j] * ui[j] + dzf[j] * uf[j] + dzg[j] * ug[j] + dzo[j] * uo[j];
            }
            emb_grad[m] += s;
        }
        for (std::size_t m = 0; m < h; ++m) {
            const double* wi = lm.lstm.W_i.row(m);
            const double* wf = lm.lstm.W_f.row(m);
            const double* wg = lm.lstm.W_g.row(m);
            const double* wo = lm.lstm.W_o.row(m);
            double s = 0.0;
            for (std::size_t j = 0; j < h; ++j) {
                s += dzi[j] * wi[j] + dzf[j] * wf[j] + dzg[j] * wg[j] + dzo[j] * wo[j];
            }
            dh_prev[m] = s;
        }
        std::copy(dh_prev.begin(), dh_prev.end(), dh.begin());
        for (std::size_t j = 0; j < h; ++j) dc[j] *= st.f[j];
    }
    return nll_sum * inv_npos;
}

ClassifyResult classify_by_min_error(const EnsembleModel& ensemble, const EncodedSequence& seq) {
    ClassifyResult r;
    for (std::size_t c = 0; c < 3; ++c) {
        r.errors[c] = sequence_avg_nll(ensemble.classes[c], seq, ensemble.config);
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < 3; ++c) {
        if (r.errors[c] < r.errors[best]) best = c;
    }
    r.label = static_cast<Sentiment>(best);
    return r;
}

EnsembleTrainResult train_class_lms(const std::array<std::vector<EncodedSequence>, 3>& corpora,
                                    const LmConfig& config, const TrainConfig& train_cfg) {
    config.validate();
    train_cfg.validate();
    std::array<std::vector<std::size_t>, 3> usable;
    for (std::size_t c = 0; c < 3; ++c) {
        if (corpora[c].empty()) {
            throw ConfigError(std::string(class_key(c)) + " class corpus is empty");
        }
        for (std::size_t i = 0; i < corpora[c].size(); ++i) {
            const EncodedSequence& seq = corpora[c][i];
            if (seq.ids.size() != config.seq_len) {
                throw ShapeError(std::string(class_key(c)) + " corpus sequence " +
                                 std::to_string(i) + " has length " +
                                 std::to_string(seq.ids.size()) + ", expected " +
                                 std::to_string(config.seq_len));
            }
            if (count_real_tokens(seq) >= 2) usable[c].push_back(i);
        }
        if (usable[c].empty()) {
            throw ConfigError(std::string(class_key(c)) +
                              " class corpus has no sequence with at least 2 real tokens");
        }
    }

    EnsembleTrainResult result;
    result.model.config = config;
    std::array<std::exception_ptr, 3> errors{};
    auto train_one = [&](std::size_t c) {
        try {
            const std::uint64_t seed = train_cfg.seed + (static_cast<std::uint64_t>(c + 1) << 32);
            ClassLm lm = init_class_lm(config, static_cast<Sentiment>(c), seed);
            ClassLm grad = ClassLm::zeros_like(config, lm.label);
            AdamState adam = AdamState::like(lm.tensors());
            std::vector<std::size_t> order = usable[c];
            const std::vector<EncodedSequence>& corpus = corpora[c];
            std::vector<double>& history = result.nll_history[c];
            history.reserve(train_cfg.epochs);
            for (std::size_t epoch = 0; epoch < train_cfg.epochs; ++epoch) {
                Rng64 rng(seed + epoch);
                rng.shuffle(order);
                for (std::size_t start = 0; start < order.size();
                     start += train_cfg.batch_size) {
                    const std::size_t stop =
                        std::min(start + train_cfg.batch_size, order.size());
                    grad.set_zero();
                    for (std::size_t b = start; b < stop; ++b) {
                        lm_backward_into(lm, corpus[order[b]], config, grad);
                    }
                    const double inv_n = 1.0 / static_cast<double>(stop - start);
                    for (auto t : grad.tensors()) {
                        for (double& g : t) g *= inv_n;
                    }
                    adam_step(lm.tensors(), grad.tensors(), adam, train_cfg);
                }
                double nll = 0.0;
                for (std::size_t i : usable[c]) {
                    nll += sequence_avg_nll(lm, corpus[i], config);
                }
                history.push_back(nll / static_cast<double>(usable[c].size()));
            }
            result.model.classes[c] = std::move(lm);
        } catch (...) {
            errors[c] = std::current_exception();
        }
    };

    std::array<std::thread, 3> threads;
    for (std::size_t c = 0; c < 3; ++c) threads[c] = std::thread(train_one, c);
    for (auto& t : threads) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return result;
}

EvalResult evaluate_ensemble(const EnsembleModel& ensemble,
                             const std::vector<LabeledExample>& data) {
    if (data.empty()) throw ConfigError("evaluate_ensemble: data must be non-empty");
    double total = 0.0;
    std::size_t correct = 0;
    for (const LabeledExample& ex : data) {
        const ClassifyResult r = classify_by_min_error(ensemble, ex.seq);
        total += r.errors[static_cast<std::size_t>(ex.label)];
        if (r.label == ex.label) ++correct;
    }
    const double n = static_cast<double>(data.size());
    return {total / n, static_cast<double>(correct) / n};
}

void save_ensemble(const EnsembleModel& ensemble, const std::string& path) {
    ensemble.config.validate();
    for (const ClassLm& lm : ensemble.classes) check_lm_shape(lm, ensemble.config);
    std::string out;
    out.reserve(3 * ensemble.config.vocab_size * ensemble.config.embed_dim * 12);
    out += "{\"format_version\":1,\"config\":{\"vocab_size\":";
    out += std::to_string(ensemble.config.vocab_size);
    out += ",\"embed_dim\":";
    out += std::to_string(ensemble.config.embed_dim);
    out += ",\"hidden\":";
    out += std::to_string(ensemble.config.hidden);
    out += ",\"seq_len\":";
    out += std::to_string(ensemble.config.seq_len);
    out += "},\"classes\":{";
    for (std::size_t c = 0; c < 3; ++c) {
        if (c > 0) out += ',';
        detail::append_key(out, class_key(c));
        out += '{';
        const ClassLm& lm = ensemble.classes[c];
        const std::pair<const char*, const Matrix*> mats[] = {
            {"embedding", &lm.embedding}, {"U_i", &lm.lstm.U_i}, {"U_f", &lm.lstm.U_f},
            {"U_g", &lm.lstm.U_g},        {"U_o", &lm.lstm.U_o}, {"W_i", &lm.lstm.W_i},
            {"W_f", &lm.lstm.W_f},        {"W_g", &lm.lstm.W_g}, {"W_o", &lm.lstm.W_o}};
        for (const auto& [name, m] : mats) {
            detail::append_key(out, name);
            detail::append_matrix(out, *m);
            out += ',';
        }
        const std::pair<const char*, const std::vector<double>*> vecs[] = {
            {"b_i", &lm.lstm.b_i}, {"b_f", &lm.lstm.b_f}, {"b_g", &lm.lstm.b_g},
            {"b_o", &lm.lstm.b_o}};
        for (const auto& [name, v] : vecs) {
            detail::append_key(out, name);
            detail::append_vector(out, *v);
            out += ',';
        }
        detail::append_key(out, "out_w");
        detail::append_matrix(out, lm.out_w);
        out += ',';
        detail::append_key(out, "out_b");
        detail::append_vector(out, lm.out_b);
        out += '}';
    }
    out += "}}";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write ensemble file: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f.good()) throw IoError("write failed for ensemble file: " + path);
}

EnsembleModel load_ensemble(const std::string& path) {
    nlohmann::json j = detail::parse_json_file(path);
    if (!j.is_object()) throw WeightsFormatError("ensemble file is not a JSON object: " + path);
    const std::size_t version = detail::read_count(j, "format_version", "ensemble");
    if (version != 1) {
        throw WeightsVersionError("ensemble file " + path + ": unsupported format_version " +
                                  std::to_string(version));
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() != "format_version" && it.key() != "config" && it.key() != "classes") {
            throw WeightsFormatError("ensemble file " + path + ": unexpected key '" + it.key() +
                                     "'");
        }
    }
    const auto& cj = detail::require_key(j, "config", "ensemble");
    EnsembleModel model;
    model.config.vocab_size = detail::read_count(cj, "vocab_size", "config");
    model.config.embed_dim = detail::read_count(cj, "embed_dim", "config");
    model.config.hidden = detail::read_count(cj, "hidden", "config");
    model.config.seq_len = detail::read_count(cj, "seq_len", "config");
    try {
        model.config.validate();
    } catch (const ConfigError& e) {
        throw WeightsFormatError("ensemble file " + path + ": " + e.what());
    }

    const auto& classes = detail::require_key(j, "classes", "ensemble");
    if (!classes.is_object()) {
        throw WeightsFormatError("ensemble file " + path + ": 'classes' is not an object");
    }
    for (auto it = classes.begin(); it != classes.end(); ++it) {
        if (it.key() != "negative" && it.key() != "neutral" && it.key() != "positive") {
            throw WeightsFormatError("ensemble file " + path + ": unexpected class '" + it.key() +
                                     "'");
        }
    }
    const std::size_t V = model.config.vocab_size, d = model.config.embed_dim,
                      h = model.config.hidden;
    static const char* tensor_keys[] = {"embedding", "U_i", "U_f", "U_g", "U_o", "W_i", "W_f",
                                        "W_g",       "W_o", "b_i", "b_f", "b_g", "b_o", "out_w",
                                        "out_b"};
    for (std::size_t c = 0; c < 3; ++c) {
        const auto& lj = detail::require_key(classes, class_key(c), "classes");
        for (auto it = lj.begin(); it != lj.end(); ++it) {
            bool known = false;
            for (const char* k : tensor_keys) {
                if (it.key() == k) { known = true; break; }
            }
            if (!known) {
                throw WeightsFormatError("ensemble file " + path + ": class '" + class_key(c) +
                                         "' has unexpected key '" + it.key() + "'");
            }
        }
        ClassLm& lm = model.classes[c];
        lm.label = static_cast<Sentiment>(c);
        lm.embedding = detail::read_matrix(lj, "embedding", V, d);
        lm.lstm.U_i = detail::read_matrix(lj, "U_i", d, h);
        lm.lstm.U_f = detail::read_matrix(lj, "U_f", d, h);
        lm.lstm.U_g = detail::read_matrix(lj, "U_g", d, h);
        lm.lstm.U_o = detail::read_matrix(lj, "U_o", d, h);
        lm.lstm.W_i = detail::read_matrix(lj, "W_i", h, h);
        lm.lstm.W_f = detail::read_matrix(lj, "W_f", h, h);
        lm.lstm.W_g = detail::read_matrix(lj, "W_g", h, h);
        lm.lstm.W_o = detail::read_matrix(lj, "W_o", h, h);
        lm.lstm.b_i = detail::read_vector(lj, "b_i", h);
        lm.lstm.b_f = detail::read_vector(lj, "b_f", h);
        lm.lstm.b_g = detail::read_vector(lj, "b_g", h);
        lm.lstm.b_o = detail::read_vector(lj, "b_o", h);
        lm.out_w = detail::read_matrix(lj, "out_w", h, V);
        lm.out_b = detail::read_vector(lj, "out_b", V);
    }
    return model;
}

}  // namespace bsa

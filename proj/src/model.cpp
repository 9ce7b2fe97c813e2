#include "bsa/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "bsa/errors.hpp"
#include "bsa/training.hpp"
#include "tensor_json.hpp"

namespace bsa {

namespace {

void check_positive(std::size_t v, const char* name) {
    if (v == 0) throw ConfigError(std::string("model config: ") + name + " must be >= 1");
}

// out += x * M, with x a row vector of length M.rows(). For each output
// column the partial sums land in ascending row order.
void add_vec_times_matrix(std::span<const double> x, const Matrix& m, double* out) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
        const double xk = x[k];
        const double* row = m.row(k);
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += xk * row[j];
    }
}

}  // namespace

void resize_step_cache(StepCache& st, std::size_t embed_dim, std::size_t hidden) {
    st.x.resize(embed_dim);
    st.i.resize(hidden);
    st.f.resize(hidden);
    st.g.resize(hidden);
    st.o.resize(hidden);
    st.c.resize(hidden);
    st.h.resize(hidden);
    st.tanh_c.resize(hidden);
}

// Gate pre-activations for one step, then the cell and hidden update.
// st.x must already hold the embedded input.
void lstm_step_into(std::span<const double> h_prev, std::span<const double> c_prev,
                    const LstmParams& p, StepCache& st) {
    const std::size_t h = p.W_i.rows();
    std::copy(p.b_i.begin(), p.b_i.end(), st.i.begin());
    std::copy(p.b_f.begin(), p.b_f.end(), st.f.begin());
    std::copy(p.b_g.begin(), p.b_g.end(), st.g.begin());
    std::copy(p.b_o.begin(), p.b_o.end(), st.o.begin());
    add_vec_times_matrix(st.x, p.U_i, st.i.data());
    add_vec_times_matrix(h_prev, p.W_i, st.i.data());
    add_vec_times_matrix(st.x, p.U_f, st.f.data());
    add_vec_times_matrix(h_prev, p.W_f, st.f.data());
    add_vec_times_matrix(st.x, p.U_g, st.g.data());
    add_vec_times_matrix(h_prev, p.W_g, st.g.data());
    add_vec_times_matrix(st.x, p.U_o, st.o.data());
    add_vec_times_matrix(h_prev, p.W_o, st.o.data());
    for (std::size_t j = 0; j < h; ++j) {
        st.i[j] = sigmoid(st.i[j]);
        st.f[j] = sigmoid(st.f[j]);
        st.g[j] = tanh_act(st.g[j]);
        st.o[j] = sigmoid(st.o[j]);
        st.c[j] = st.f[j] * c_prev[j] + st.i[j] * st.g[j];
        st.tanh_c[j] = tanh_act(st.c[j]);
        st.h[j] = st.tanh_c[j] * st.o[j];
    }
}

namespace {

void check_bundle_shape(const ParamBundle& p, const ModelConfig& cfg) {
    const std::size_t V = cfg.vocab_size, d = cfg.embed_dim, h = cfg.hidden;
    const std::size_t k = static_cast<std::size_t>(cfg.head);
    auto bad = [&](const char* name, std::size_t r, std::size_t c, std::size_t er, std::size_t ec) {
        throw ShapeError(std::string("parameter ") + name + " is " + std::to_string(r) + "x" +
                         std::to_string(c) + ", config expects " + std::to_string(er) + "x" +
                         std::to_string(ec));
    };
    if (p.embedding.rows() != V || p.embedding.cols() != d)
        bad("embedding", p.embedding.rows(), p.embedding.cols(), V, d);
    if (p.lstm.U_i.rows() != d || p.lstm.U_i.cols() != h)
        bad("U_i", p.lstm.U_i.rows(), p.lstm.U_i.cols(), d, h);
    if (p.lstm.W_i.rows() != h || p.lstm.W_i.cols() != h)
        bad("W_i", p.lstm.W_i.rows(), p.lstm.W_i.cols(), h, h);
    if (p.lstm.b_i.size() != h) bad("b_i", p.lstm.b_i.size(), 1, h, 1);
    if (p.dense.w.rows() != h || p.dense.w.cols() != k)
        bad("dense_w", p.dense.w.rows(), p.dense.w.cols(), h, k);
    if (p.dense.b.size() != k) bad("dense_b", p.dense.b.size(), 1, k, 1);
}

void fill_uniform(Matrix& m, Rng64& rng, double lo, double hi) {
    for (double& v : m.data()) v = rng.uniform(lo, hi);
}

}  // namespace

void ModelConfig::validate() const {
    check_positive(vocab_size, "vocab_size");
    check_positive(embed_dim, "embed_dim");
    check_positive(hidden, "hidden");
    check_positive(seq_len, "seq_len");
    if (head != 1 && head != 3) {
        throw ConfigError("model config: head must be 1 or 3, got " + std::to_string(head));
    }
}

ParamBundle ParamBundle::zeros_like(const ModelConfig& config) {
    const std::size_t V = config.vocab_size, d = config.embed_dim, h = config.hidden;
    const std::size_t k = static_cast<std::size_t>(config.head);
    ParamBundle b;
    b.embedding = Matrix(V, d);
    b.lstm.U_i = Matrix(d, h);
    b.lstm.U_f = Matrix(d, h);
    b.lstm.U_g = Matrix(d, h);
    b.lstm.U_o = Matrix(d, h);
    b.lstm.W_i = Matrix(h, h);
    b.lstm.W_f = Matrix(h, h);
    b.lstm.W_g = Matrix(h, h);
    b.lstm.W_o = Matrix(h, h);
    b.lstm.b_i.assign(h, 0.0);
    b.lstm.b_f.assign(h, 0.0);
    b.lstm.b_g.assign(h, 0.0);
    b.lstm.b_o.assign(h, 0.0);
    b.dense.w = Matrix(h, k);
    b.dense.b.assign(k, 0.0);
    return b;
}

std::vector<std::span<double>> ParamBundle::tensors() {
    return {embedding.data(), lstm.U_i.data(), lstm.U_f.data(), lstm.U_g.data(),
            lstm.U_o.data(),  lstm.W_i.data(), lstm.W_f.data(), lstm.W_g.data(),
            lstm.W_o.data(),  lstm.b_i,        lstm.b_f,        lstm.b_g,
            lstm.b_o,         dense.w.data(),  dense.b};
}

std::vector<std::span<const double>> ParamBundle::tensors() const {
    return {embedding.data(), lstm.U_i.data(), lstm.U_f.data(), lstm.U_g.data(),
            lstm.U_o.data(),  lstm.W_i.data(), lstm.W_f.data(), lstm.W_g.data(),
            lstm.W_o.data(),  lstm.b_i,        lstm.b_f,        lstm.b_g,
            lstm.b_o,         dense.w.data(),  dense.b};
}

void ParamBundle::set_zero() {
    for (auto t : tensors()) std::fill(t.begin(), t.end(), 0.0);
}

ParamBundle init_params(const ModelConfig& config, std::uint64_t seed) {
    config.validate();
    const std::size_t d = config.embed_dim, h = config.hidden;
    const std::size_t k = static_cast<std::size_t>(config.head);
    Rng64 rng(seed);
    ParamBundle b = ParamBundle::zeros_like(config);

    fill_uniform(b.embedding, rng, -0.05, 0.05);
    const double u_limit = std::sqrt(6.0 / static_cast<double>(d + h));
    const double w_limit = std::sqrt(6.0 / static_cast<double>(h + h));
    const double dense_limit = std::sqrt(6.0 / static_cast<double>(h + k));
    fill_uniform(b.lstm.U_i, rng, -u_limit, u_limit);
    fill_uniform(b.lstm.U_f, rng, -u_limit, u_limit);
    fill_uniform(b.lstm.U_g, rng, -u_limit, u_limit);
    fill_uniform(b.lstm.U_o, rng, -u_limit, u_limit);
    fill_uniform(b.lstm.W_i, rng, -w_limit, w_limit);
    fill_uniform(b.lstm.W_f, rng, -w_limit, w_limit);
    fill_uniform(b.lstm.W_g, rng, -w_limit, w_limit);
    fill_uniform(b.lstm.W_o, rng, -w_limit, w_limit);
    // Biases stay zero except the forget gate, which starts open.
    std::fill(b.lstm.b_f.begin(), b.lstm.b_f.end(), 1.0);
    fill_uniform(b.dense.w, rng, -dense_limit, dense_limit);
    return b;
}

StepCache lstm_step(std::span<const double> x_t, std::span<const double> h_prev,
                    std::span<const double> c_prev, const LstmParams& p) {
    const std::size_t d = p.U_i.rows(), h = p.U_i.cols();
    if (x_t.size() != d || h_prev.size() != h || c_prev.size() != h || p.W_i.rows() != h) {
        throw ShapeError("lstm_step: input sizes (" + std::to_string(x_t.size()) + ", " +
                         std::to_string(h_prev.size()) + ", " + std::to_string(c_prev.size()) +
                         ") do not match kernels " + std::to_string(d) + "x" + std::to_string(h));
    }
    StepCache st;
    resize_step_cache(st, d, h);
    std::copy(x_t.begin(), x_t.end(), st.x.begin());
    lstm_step_into(h_prev, c_prev, p, st);
    return st;
}

std::vector<double> forward(const EncodedSequence& seq, const ParamBundle& params,
                            const ModelConfig& config, ForwardCache* cache) {
    config.validate();
    check_bundle_shape(params, config);
    const std::size_t d = config.embed_dim, h = config.hidden, L = config.seq_len;
    const std::size_t k = static_cast<std::size_t>(config.head);
    if (seq.ids.size() != L) {
        throw ShapeError("forward: sequence length " + std::to_string(seq.ids.size()) +
                         " does not match configured seq_len " + std::to_string(L));
    }

    std::vector<double> h_state(h, 0.0), c_state(h, 0.0);
    StepCache scratch;
    if (cache) {
        cache->ids.assign(seq.ids.begin(), seq.ids.end());
        cache->steps.resize(L);
    } else {
        resize_step_cache(scratch, d, h);
    }

    for (std::size_t t = 0; t < L; ++t) {
        const std::uint32_t id = seq.ids[t];
        if (id >= config.vocab_size) {
            throw DataError("forward: token id " + std::to_string(id) +
                            " >= vocab_size " + std::to_string(config.vocab_size));
        }
        StepCache& st = cache ? cache->steps[t] : scratch;
        if (cache) resize_step_cache(st, d, h);
        const double* emb = params.embedding.row(id);
        std::copy(emb, emb + d, st.x.begin());
        lstm_step_into(h_state, c_state, params.lstm, st);
        std::copy(st.h.begin(), st.h.end(), h_state.begin());
        std::copy(st.c.begin(), st.c.end(), c_state.begin());
    }

    std::vector<double> logits(params.dense.b);
    add_vec_times_matrix(h_state, params.dense.w, logits.data());
    std::vector<double> out(k);
    if (k == 1) {
        out[0] = sigmoid(logits[0]);
    } else {
        out = softmax(logits);
    }
    if (cache) {
        cache->logits = logits;
        cache->output = out;
    }
    return out;
}

void backward_into(const ForwardCache& cache, const std::vector<double>& target,
                   const ParamBundle& params, const ModelConfig& config, ParamBundle& grad) {
    config.validate();
    check_bundle_shape(params, config);
    check_bundle_shape(grad, config);
    const std::size_t d = config.embed_dim, h = config.hidden, L = config.seq_len;
    const std::size_t k = static_cast<std::size_t>(config.head);
    if (cache.steps.size() != L || cache.ids.size() != L || cache.output.size() != k) {
        throw ShapeError("backward: cache does not match config (steps " +
                         std::to_string(cache.steps.size()) + ", expected " + std::to_string(L) +
                         ")");
    }
    if (target.size() != k) {
        throw ConfigError("backward: target size " + std::to_string(target.size()) +
                          " does not match head " + std::to_string(k));
    }

    // Cross-entropy through sigmoid/softmax collapses to output - target at
    // the head pre-activation.
    std::vector<double> dz(k);
    for (std::size_t c = 0; c < k; ++c) dz[c] = cache.output[c] - target[c];

    const std::vector<double>& h_last = cache.steps[L - 1].h;
    for (std::size_t j = 0; j < h; ++j) {
        double* gw = grad.dense.w.row(j);
        for (std::size_t c = 0; c < k; ++c) gw[c] += h_last[j] * dz[c];
    }
    for (std::size_t c = 0; c < k; ++c) grad.dense.b[c] += dz[c];

    std::vector<double> dh(h, 0.0), dc(h, 0.0), dh_prev(h, 0.0);
    std::vector<double> dzi(h), dzf(h), dzg(h), dzo(h);
    const std::vector<double> zeros(h, 0.0);
    for (std::size_t j = 0; j < h; ++j) {
        const double* wrow = params.dense.w.row(j);
        double s = 0.0;
        for (std::size_t c = 0; c < k; ++c) s += wrow[c] * dz[c];
        dh[j] = s;
    }

    for (std::size_t t = L; t-- > 0;) {
        const StepCache& st = cache.steps[t];
        const std::vector<double>& h_prev = t > 0 ? cache.steps[t - 1].h : zeros;
        const std::vector<double>& c_prev = t > 0 ? cache.steps[t - 1].c : zeros;

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

        double* emb_grad = grad.embedding.row(cache.ids[t]);
        for (std::size_t m = 0; m < d; ++m) {
            const double* ui = params.lstm.U_i.row(m);
            const double* uf = params.lstm.U_f.row(m);
            const double* ug = params.lstm.U_g.row(m);
            const double* uo = params.lstm.U_o.row(m);
            double s = 0.0;
            for (std::size_t j = 0; j < h; ++j) {
                s += dzi[j] * ui[j] + dzf[j] * uf[j] + dzg[j] * ug[j] + dzo[j] * uo[j];
            }
            emb_grad[m] += s;
        }

        for (std::size_t m = 0; m < h; ++m) {
            const double* wi = params.lstm.W_i.row(m);
            const double* wf = params.lstm.W_f.row(m);
            const double* wg = params.lstm.W_g.row(m);
            const double* wo = params.lstm.W_o.row(m);
            double s = 0.0;
            for (std::size_t j = 0; j < h; ++j) {
                s += dzi[j] * wi[j] + dzf[j] * wf[j] + dzg[j] * wg[j] + dzo[j] * wo[j];
            }
            dh_prev[m] = s;
        }
        std::copy(dh_prev.begin(), dh_prev.end(), dh.begin());
        for (std::size_t j = 0; j < h; ++j) dc[j] *= st.f[j];
    }
}

ParamBundle backward(const ForwardCache& cache, const std::vector<double>& target,
                     const ParamBundle& params, const ModelConfig& config) {
    ParamBundle grad = ParamBundle::zeros_like(config);
    backward_into(cache, target, params, config, grad);
    return grad;
}

ParamCounts param_count(const ModelConfig& config) {
    config.validate();
    const std::size_t V = config.vocab_size, d = config.embed_dim, h = config.hidden;
    const std::size_t k = static_cast<std::size_t>(config.head);
    ParamCounts c;
    c.embedding = V * d;
    c.lstm = 4 * (d * h + h * h + h);
    c.dense = h * k + k;
    c.total = c.embedding + c.lstm + c.dense;
    return c;
}

double grad_check(const ParamBundle& params, const std::vector<Example>& batch,
                  const ModelConfig& config, double eps, const GradCheckOptions& options) {
    if (!(eps > 0.0)) throw ConfigError("grad_check: eps must be > 0");
    if (batch.empty()) throw ConfigError("grad_check: batch must be non-empty");

    const double inv_n = 1.0 / static_cast<double>(batch.size());
    ParamBundle analytic = ParamBundle::zeros_like(config);
    for (const Example& ex : batch) {
        ForwardCache cache;
        forward(ex.seq, params, config, &cache);
        backward_into(cache, ex.target, params, config, analytic);
    }
    for (auto t : analytic.tensors()) {
        for (double& g : t) g *= inv_n;
    }

    ParamBundle probe = params;  // mutable copy for the +/- eps evaluations
    auto mean_loss = [&]() {
        double total = 0.0;
        for (const Example& ex : batch) {
            total += loss(forward(ex.seq, probe, config), ex.target, config.head);
        }
        return total * inv_n;
    };

    // Bias tensors are checked in full, the weight tensors on a random
    // sample. Per tensor, analytic and numeric gradients are compared as
    // vectors over the checked coordinates; per-coordinate comparison would
    // drown in central-difference roundoff wherever a gradient entry is
    // cancellation-small.
    const std::size_t first_bias = 9, last_bias = 12;
    Rng64 rng(options.seed);
    auto probe_tensors = probe.tensors();
    auto grad_tensors = analytic.tensors();
    double max_rel = 0.0;
    for (std::size_t slot = 0; slot < probe_tensors.size(); ++slot) {
        auto values = probe_tensors[slot];
        const bool is_bias = slot >= first_bias && slot <= last_bias;
        std::set<std::size_t> indices;
        if (is_bias) {
            if (options.include_biases) {
                for (std::size_t i = 0; i < values.size(); ++i) indices.insert(i);
            }
        } else {
            const std::size_t want = std::min(options.samples_per_tensor, values.size());
            while (indices.size() < want) {
                indices.insert(static_cast<std::size_t>(rng.next_below(values.size())));
            }
        }
        if (indices.empty()) continue;
        double sq_a = 0.0, sq_n = 0.0, sq_diff = 0.0;
        for (std::size_t idx : indices) {
            const double saved = values[idx];
            values[idx] = saved + eps;
            const double up = mean_loss();
            values[idx] = saved - eps;
            const double down = mean_loss();
            values[idx] = saved;
            const double numeric = (up - down) / (2.0 * eps);
            const double a = grad_tensors[slot][idx] * options.corrupt_scale;
            sq_a += a * a;
            sq_n += numeric * numeric;
            sq_diff += (a - numeric) * (a - numeric);
        }
        const double denom = std::max({std::sqrt(sq_a), std::sqrt(sq_n), 1e-8});
        max_rel = std::max(max_rel, std::sqrt(sq_diff) / denom);
    }
    return max_rel;
}

void save_weights(const ParamBundle& params, const ModelConfig& config, const std::string& path) {
    config.validate();
    check_bundle_shape(params, config);
    std::string out;
    out.reserve(params.embedding.size() * 12);
    out += "{\"format_version\":1,\"config\":{\"vocab_size\":";
    out += std::to_string(config.vocab_size);
    out += ",\"embed_dim\":";
    out += std::to_string(config.embed_dim);
    out += ",\"hidden\":";
    out += std::to_string(config.hidden);
    out += ",\"seq_len\":";
    out += std::to_string(config.seq_len);
    out += ",\"head\":";
    out += std::to_string(config.head);
    out += "},";
    const std::pair<const char*, const Matrix*> mats[] = {
        {"embedding", &params.embedding}, {"U_i", &params.lstm.U_i}, {"U_f", &params.lstm.U_f},
        {"U_g", &params.lstm.U_g},        {"U_o", &params.lstm.U_o}, {"W_i", &params.lstm.W_i},
        {"W_f", &params.lstm.W_f},        {"W_g", &params.lstm.W_g}, {"W_o", &params.lstm.W_o}};
    for (const auto& [name, m] : mats) {
        detail::append_key(out, name);
        detail::append_matrix(out, *m);
        out += ',';
    }
    const std::pair<const char*, const std::vector<double>*> vecs[] = {
        {"b_i", &params.lstm.b_i}, {"b_f", &params.lstm.b_f}, {"b_g", &params.lstm.b_g},
        {"b_o", &params.lstm.b_o}};
    for (const auto& [name, v] : vecs) {
        detail::append_key(out, name);
        detail::append_vector(out, *v);
        out += ',';
    }
    detail::append_key(out, "dense_w");
    detail::append_matrix(out, params.dense.w);
    out += ',';
    detail::append_key(out, "dense_b");
    detail::append_vector(out, params.dense.b);
    out += '}';

    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write weights file: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f.good()) throw IoError("write failed for weights file: " + path);
}

std::pair<ParamBundle, ModelConfig> load_weights(const std::string& path) {
    nlohmann::json j = detail::parse_json_file(path);
    if (!j.is_object()) throw WeightsFormatError("weights file is not a JSON object: " + path);

    const std::size_t version = detail::read_count(j, "format_version", "weights");
    if (version != 1) {
        throw WeightsVersionError("weights file " + path + ": unsupported format_version " +
                                  std::to_string(version));
    }
    const auto& cj = detail::require_key(j, "config", "weights");
    ModelConfig config;
    config.vocab_size = detail::read_count(cj, "vocab_size", "config");
    config.embed_dim = detail::read_count(cj, "embed_dim", "config");
    config.hidden = detail::read_count(cj, "hidden", "config");
    config.seq_len = detail::read_count(cj, "seq_len", "config");
    config.head = static_cast<int>(detail::read_count(cj, "head", "config"));
    try {
        config.validate();
    } catch (const ConfigError& e) {
        throw WeightsFormatError("weights file " + path + ": " + e.what());
    }

    static const char* expected_keys[] = {"format_version", "config", "embedding", "U_i", "U_f",
                                          "U_g",            "U_o",    "W_i",       "W_f", "W_g",
                                          "W_o",            "b_i",    "b_f",       "b_g", "b_o",
                                          "dense_w",        "dense_b"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : expected_keys) {
            if (it.key() == k) { known = true; break; }
        }
        if (!known) {
            throw WeightsFormatError("weights file " + path + ": unexpected key '" + it.key() + "'");
        }
    }

    const std::size_t V = config.vocab_size, d = config.embed_dim, h = config.hidden;
    const std::size_t k = static_cast<std::size_t>(config.head);
    ParamBundle b;
    b.embedding = detail::read_matrix(j, "embedding", V, d);
    b.lstm.U_i = detail::read_matrix(j, "U_i", d, h);
    b.lstm.U_f = detail::read_matrix(j, "U_f", d, h);
    b.lstm.U_g = detail::read_matrix(j, "U_g", d, h);
    b.lstm.U_o = detail::read_matrix(j, "U_o", d, h);
    b.lstm.W_i = detail::read_matrix(j, "W_i", h, h);
    b.lstm.W_f = detail::read_matrix(j, "W_f", h, h);
    b.lstm.W_g = detail::read_matrix(j, "W_g", h, h);
    b.lstm.W_o = detail::read_matrix(j, "W_o", h, h);
    b.lstm.b_i = detail::read_vector(j, "b_i", h);
    b.lstm.b_f = detail::read_vector(j, "b_f", h);
    b.lstm.b_g = detail::read_vector(j, "b_g", h);
    b.lstm.b_o = detail::read_vector(j, "b_o", h);
    b.dense.w = detail::read_matrix(j, "dense_w", h, k);
    b.dense.b = detail::read_vector(j, "dense_b", k);
    return {std::move(b), config};
}

}  // namespace bsa

#include "bsa/cli.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsa/classify.hpp"
#include "bsa/data.hpp"
#include "bsa/errors.hpp"
#include "bsa/lm_ensemble.hpp"
#include "bsa/model.hpp"
#include "bsa/textproc.hpp"
#include "bsa/training.hpp"
#include "tensor_json.hpp"

namespace bsa {

namespace {

using ordered_json = nlohmann::ordered_json;

struct FileConfig {
    std::optional<std::size_t> vocab_size, embed_dim, hidden, seq_len, epochs, batch_size;
    std::optional<int> head;
    std::optional<double> learning_rate, beta1, beta2, epsilon, clip_norm, train_frac;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> data, vocab, weights, curves;
};

std::size_t as_count(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw ConfigError("config key '" + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

double as_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

std::string as_string(const nlohmann::json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

FileConfig load_cli_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config file " + path + " is not valid JSON");
    if (!j.is_object()) throw ConfigError("config file " + path + " must hold a JSON object");

    FileConfig c;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const nlohmann::json& v = it.value();
        if (k == "vocab_size") c.vocab_size = as_count(v, k);
        else if (k == "embed_dim") c.embed_dim = as_count(v, k);
        else if (k == "hidden") c.hidden = as_count(v, k);
        else if (k == "seq_len") c.seq_len = as_count(v, k);
        else if (k == "head") c.head = static_cast<int>(as_count(v, k));
        else if (k == "epochs") c.epochs = as_count(v, k);
        else if (k == "batch_size") c.batch_size = as_count(v, k);
        else if (k == "learning_rate") c.learning_rate = as_number(v, k);
        else if (k == "beta1") c.beta1 = as_number(v, k);
        else if (k == "beta2") c.beta2 = as_number(v, k);
        else if (k == "epsilon") c.epsilon = as_number(v, k);
        else if (k == "clip_norm") c.clip_norm = as_number(v, k);
        else if (k == "train_frac") c.train_frac = as_number(v, k);
        else if (k == "seed") c.seed = static_cast<std::uint64_t>(as_count(v, k));
        else if (k == "data") c.data = as_string(v, k);
        else if (k == "vocab") c.vocab = as_string(v, k);
        else if (k == "weights") c.weights = as_string(v, k);
        else if (k == "curves") c.curves = as_string(v, k);
        else throw ConfigError("config file " + path + ": unknown key '" + k + "'");
    }
    return c;
}

// Raw flag storage for the train-like subcommands; Option pointers tell
// whether a flag was actually given so flags can override the config file.
struct CommonFlags {
    std::size_t vocab_size = 0, embed_dim = 0, hidden = 0, seq_len = 0;
    int head = 1;
    std::size_t epochs = 0, batch_size = 0;
    double learning_rate = 0, beta1 = 0, beta2 = 0, epsilon = 0, clip_norm = 0, train_frac = 0;
    std::uint64_t seed = 0;
    std::string config_path, data, vocab, out, curves, format;

    CLI::Option* o_vocab_size = nullptr;
    CLI::Option* o_embed_dim = nullptr;
    CLI::Option* o_hidden = nullptr;
    CLI::Option* o_seq_len = nullptr;
    CLI::Option* o_head = nullptr;
    CLI::Option* o_epochs = nullptr;
    CLI::Option* o_batch_size = nullptr;
    CLI::Option* o_learning_rate = nullptr;
    CLI::Option* o_beta1 = nullptr;
    CLI::Option* o_beta2 = nullptr;
    CLI::Option* o_epsilon = nullptr;
    CLI::Option* o_clip_norm = nullptr;
    CLI::Option* o_train_frac = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_data = nullptr;
    CLI::Option* o_vocab = nullptr;
    CLI::Option* o_out = nullptr;
    CLI::Option* o_curves = nullptr;
};

struct Resolved {
    std::size_t vocab_size = 20000, embed_dim = 32, hidden = 100, seq_len = 100;
    int head = 1;
    std::size_t epochs = 10, batch_size = 32;
    double learning_rate = 0.001, beta1 = 0.9, beta2 = 0.999, epsilon = 1e-8;
    double clip_norm = 5.0, train_frac = 0.7;
    std::uint64_t seed = 0;
    std::string data, vocab, weights, curves;
};

void add_model_flags(CLI::App* sub, CommonFlags& f) {
    f.o_vocab_size = sub->add_option("--vocab-size", f.vocab_size,
                                     "Embedding rows; 0 derives it from the vocab file");
    f.o_embed_dim = sub->add_option("--embed-dim", f.embed_dim, "Embedding width");
    f.o_hidden = sub->add_option("--hidden", f.hidden, "LSTM hidden units");
    f.o_seq_len = sub->add_option("--seq-len", f.seq_len, "Fixed encoded length");
}

void add_train_flags(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--config", f.config_path, "JSON config file; flags override it");
    add_model_flags(sub, f);
    f.o_head = sub->add_option("--head", f.head, "Output head: 1 binary, 3 tri-class");
    f.o_epochs = sub->add_option("--epochs", f.epochs, "Training epochs");
    f.o_batch_size = sub->add_option("--batch-size", f.batch_size, "Minibatch size");
    f.o_learning_rate = sub->add_option("--learning-rate", f.learning_rate, "Adam step size");
    f.o_beta1 = sub->add_option("--beta1", f.beta1, "Adam first-moment decay");
    f.o_beta2 = sub->add_option("--beta2", f.beta2, "Adam second-moment decay");
    f.o_epsilon = sub->add_option("--epsilon", f.epsilon, "Adam denominator guard");
    f.o_clip_norm = sub->add_option("--clip-norm", f.clip_norm, "Global gradient-norm cap");
    f.o_train_frac = sub->add_option("--train-frac", f.train_frac, "Training split fraction");
    f.o_seed = sub->add_option("--seed", f.seed, "Run seed");
    f.o_data = sub->add_option("--data", f.data, "Labeled reviews file");
    f.o_vocab = sub->add_option("--vocab", f.vocab, "Vocabulary file");
    f.o_out = sub->add_option("--out", f.out, "Weights output path");
    f.o_curves = sub->add_option("--curves", f.curves, "Per-epoch metrics CSV path");
    sub->add_option("--format", f.format, "Data file format")
        ->check(CLI::IsMember({"csv", "jsonl"}));
}

Resolved resolve(const CommonFlags& f, bool ensemble) {
    Resolved r;
    if (ensemble) {
        r.vocab_size = 0;
        r.embed_dim = 16;
        r.hidden = 32;
    }
    if (!f.config_path.empty()) {
        const FileConfig c = load_cli_config(f.config_path);
        if (c.vocab_size) r.vocab_size = *c.vocab_size;
        if (c.embed_dim) r.embed_dim = *c.embed_dim;
        if (c.hidden) r.hidden = *c.hidden;
        if (c.seq_len) r.seq_len = *c.seq_len;
        if (c.head) r.head = *c.head;
        if (c.epochs) r.epochs = *c.epochs;
        if (c.batch_size) r.batch_size = *c.batch_size;
        if (c.learning_rate) r.learning_rate = *c.learning_rate;
        if (c.beta1) r.beta1 = *c.beta1;
        if (c.beta2) r.beta2 = *c.beta2;
        if (c.epsilon) r.epsilon = *c.epsilon;
        if (c.clip_norm) r.clip_norm = *c.clip_norm;
        if (c.train_frac) r.train_frac = *c.train_frac;
        if (c.seed) r.seed = *c.seed;
        if (c.data) r.data = *c.data;
        if (c.vocab) r.vocab = *c.vocab;
        if (c.weights) r.weights = *c.weights;
        if (c.curves) r.curves = *c.curves;
    }
    auto given = [](const CLI::Option* o) { return o && o->count() > 0; };
    if (given(f.o_vocab_size)) r.vocab_size = f.vocab_size;
    if (given(f.o_embed_dim)) r.embed_dim = f.embed_dim;
    if (given(f.o_hidden)) r.hidden = f.hidden;
    if (given(f.o_seq_len)) r.seq_len = f.seq_len;
    if (given(f.o_head)) r.head = f.head;
    if (given(f.o_epochs)) r.epochs = f.epochs;
    if (given(f.o_batch_size)) r.batch_size = f.batch_size;
    if (given(f.o_learning_rate)) r.learning_rate = f.learning_rate;
    if (given(f.o_beta1)) r.beta1 = f.beta1;
    if (given(f.o_beta2)) r.beta2 = f.beta2;
    if (given(f.o_epsilon)) r.epsilon = f.epsilon;
    if (given(f.o_clip_norm)) r.clip_norm = f.clip_norm;
    if (given(f.o_train_frac)) r.train_frac = f.train_frac;
    if (given(f.o_seed)) r.seed = f.seed;
    if (given(f.o_data)) r.data = f.data;
    if (given(f.o_vocab)) r.vocab = f.vocab;
    if (given(f.o_out)) r.weights = f.out;
    if (given(f.o_curves)) r.curves = f.curves;
    return r;
}

TrainConfig train_config_of(const Resolved& r) {
    TrainConfig t;
    t.epochs = r.epochs;
    t.batch_size = r.batch_size;
    t.learning_rate = r.learning_rate;
    t.beta1 = r.beta1;
    t.beta2 = r.beta2;
    t.epsilon = r.epsilon;
    t.clip_norm = r.clip_norm;
    t.train_frac = r.train_frac;
    t.seed = r.seed;
    return t;
}

FileFormat resolve_format(const std::string& flag, const std::string& data_path) {
    if (flag == "csv") return FileFormat::Csv;
    if (flag == "jsonl") return FileFormat::Jsonl;
    if (data_path.size() >= 6 && data_path.compare(data_path.size() - 6, 6, ".jsonl") == 0) {
        return FileFormat::Jsonl;
    }
    return FileFormat::Csv;
}

void print_line(const ordered_json& j) { std::cout << j.dump() << std::endl; }

void echo_resolved(const char* command, const Resolved& r, bool with_head) {
    ordered_json cfg;
    cfg["command"] = command;
    cfg["vocab_size"] = r.vocab_size;
    cfg["embed_dim"] = r.embed_dim;
    cfg["hidden"] = r.hidden;
    cfg["seq_len"] = r.seq_len;
    if (with_head) cfg["head"] = r.head;
    cfg["epochs"] = r.epochs;
    cfg["batch_size"] = r.batch_size;
    cfg["learning_rate"] = r.learning_rate;
    cfg["beta1"] = r.beta1;
    cfg["beta2"] = r.beta2;
    cfg["epsilon"] = r.epsilon;
    cfg["clip_norm"] = r.clip_norm;
    cfg["train_frac"] = r.train_frac;
    cfg["seed"] = r.seed;
    cfg["data"] = r.data;
    cfg["vocab"] = r.vocab;
    cfg["weights"] = r.weights;
    cfg["curves"] = r.curves;
    print_line(ordered_json{{"resolved_config", cfg}});
}

void warn_skipped(const LoadResult& lr) {
    if (lr.skipped.empty()) return;
    std::cerr << "warning: skipped " << lr.skipped.size() << " malformed row(s); first at line "
              << lr.skipped.front().line << ": " << lr.skipped.front().message << "\n";
}

Vocab load_vocab_checked(const std::string& path, std::size_t& vocab_size) {
    Vocab vocab = load_vocab(path);
    if (vocab_size == 0) {
        vocab_size = vocab.size();
    } else if (vocab_size < vocab.size()) {
        throw ConfigError("vocab_size " + std::to_string(vocab_size) +
                          " is smaller than the vocabulary file (" +
                          std::to_string(vocab.size()) + " entries)");
    }
    return vocab;
}

void require_path(const std::string& value, const char* what) {
    if (value.empty()) {
        throw ConfigError(std::string("no ") + what + " given (flag or config file)");
    }
}

int run_build_vocab(const std::string& data, const std::string& out, std::size_t max_size,
                    const std::string& format) {
    const LoadResult lr = load_reviews(data, resolve_format(format, data));
    warn_skipped(lr);
    std::vector<std::vector<std::string>> corpus;
    corpus.reserve(lr.dataset.records.size());
    for (const ReviewRecord& rec : lr.dataset.records) {
        corpus.push_back(tokenize(clean_text(rec.text)));
    }
    const Vocab vocab = build_vocab(corpus, max_size);
    save_vocab(vocab, out);
    print_line(ordered_json{{"tokens", vocab.size()}, {"out", out}});
    return 0;
}

int run_train(const CommonFlags& flags) {
    Resolved r = resolve(flags, false);
    require_path(r.data, "data file");
    require_path(r.vocab, "vocab file");
    require_path(r.weights, "weights output path");

    const Vocab vocab = load_vocab_checked(r.vocab, r.vocab_size);
    echo_resolved("train", r, true);

    ModelConfig mcfg;
    mcfg.vocab_size = r.vocab_size;
    mcfg.embed_dim = r.embed_dim;
    mcfg.hidden = r.hidden;
    mcfg.seq_len = r.seq_len;
    mcfg.head = r.head;
    mcfg.validate();
    const TrainConfig tcfg = train_config_of(r);
    tcfg.validate();

    const LoadResult lr = load_reviews(r.data, resolve_format(flags.format, r.data));
    warn_skipped(lr);
    const std::vector<LabeledExample> examples = encode_dataset(lr.dataset, vocab, mcfg.seq_len);

    ParamBundle bundle = init_params(mcfg, tcfg.seed);
    const History history = train(bundle, examples, mcfg, tcfg);
    save_weights(bundle, mcfg, r.weights);
    if (!r.curves.empty()) export_curves(history, r.curves);

    const EpochStats& last = history.back();
    ordered_json result;
    result["epochs"] = history.size();
    result["train_loss"] = last.train_loss;
    result["train_acc"] = last.train_acc;
    result["val_loss"] = last.val_loss;
    result["val_acc"] = last.val_acc;
    result["weights"] = r.weights;
    if (r.curves.empty()) result["curves"] = nullptr;
    else result["curves"] = r.curves;
    print_line(result);
    return 0;
}

int run_train_ensemble(const CommonFlags& flags) {
    Resolved r = resolve(flags, true);
    require_path(r.data, "data file");
    require_path(r.vocab, "vocab file");
    require_path(r.weights, "weights output path");

    const Vocab vocab = load_vocab_checked(r.vocab, r.vocab_size);
    echo_resolved("train-ensemble", r, false);

    LmConfig lmcfg;
    lmcfg.vocab_size = r.vocab_size;
    lmcfg.embed_dim = r.embed_dim;
    lmcfg.hidden = r.hidden;
    lmcfg.seq_len = r.seq_len;
    lmcfg.validate();
    const TrainConfig tcfg = train_config_of(r);
    tcfg.validate();

    const LoadResult lr = load_reviews(r.data, resolve_format(flags.format, r.data));
    warn_skipped(lr);
    auto [train_records, val_records] =
        split_dataset(lr.dataset.records, tcfg.train_frac, tcfg.seed);
    if (train_records.empty() || val_records.empty()) {
        throw ConfigError("dataset of " + std::to_string(lr.dataset.records.size()) +
                          " records leaves an empty split at train_frac " +
                          std::to_string(tcfg.train_frac));
    }

    std::array<std::vector<EncodedSequence>, 3> corpora;
    for (const ReviewRecord& rec : train_records) {
        const auto c = static_cast<std::size_t>(rec.resolved_label());
        corpora[c].push_back(encode(tokenize(clean_text(rec.text)), vocab, lmcfg.seq_len));
    }
    std::vector<LabeledExample> val_examples;
    val_examples.reserve(val_records.size());
    for (const ReviewRecord& rec : val_records) {
        LabeledExample ex;
        ex.seq = encode(tokenize(clean_text(rec.text)), vocab, lmcfg.seq_len);
        ex.label = rec.resolved_label();
        val_examples.push_back(std::move(ex));
    }

    const EnsembleTrainResult trained = train_class_lms(corpora, lmcfg, tcfg);
    save_ensemble(trained.model, r.weights);
    const EvalResult val = evaluate_ensemble(trained.model, val_examples);

    if (!r.curves.empty()) {
        std::ofstream f(r.curves, std::ios::binary);
        if (!f) throw IoError("cannot write curves file: " + r.curves);
        f << "epoch,negative_nll,neutral_nll,positive_nll\n";
        char buf[160];
        for (std::size_t e = 0; e < tcfg.epochs; ++e) {
            std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f,%.6f\n", e + 1,
                          trained.nll_history[0][e], trained.nll_history[1][e],
                          trained.nll_history[2][e]);
            f << buf;
        }
        if (!f.good()) throw IoError("write failed for curves file: " + r.curves);
    }

    ordered_json nll;
    nll["negative"] = trained.nll_history[0].back();
    nll["neutral"] = trained.nll_history[1].back();
    nll["positive"] = trained.nll_history[2].back();
    ordered_json result;
    result["epochs"] = tcfg.epochs;
    result["train_nll"] = nll;
    result["val_loss"] = val.loss;
    result["val_acc"] = val.accuracy;
    result["weights"] = r.weights;
    if (r.curves.empty()) result["curves"] = nullptr;
    else result["curves"] = r.curves;
    print_line(result);
    return 0;
}

bool is_ensemble_file(const std::string& path) {
    const nlohmann::json j = detail::parse_json_file(path);
    return j.is_object() && j.contains("classes");
}

int run_eval(const std::string& model, const std::string& data, const std::string& vocab_path,
             const std::string& format) {
    const LoadResult lr = load_reviews(data, resolve_format(format, data));
    warn_skipped(lr);
    const Vocab vocab = load_vocab(vocab_path);

    EvalResult res;
    if (is_ensemble_file(model)) {
        const EnsembleModel ens = load_ensemble(model);
        if (vocab.size() > ens.config.vocab_size) {
            throw ConfigError("vocabulary has " + std::to_string(vocab.size()) +
                              " entries but the model stores vocab_size " +
                              std::to_string(ens.config.vocab_size));
        }
        std::vector<LabeledExample> examples;
        examples.reserve(lr.dataset.records.size());
        for (const ReviewRecord& rec : lr.dataset.records) {
            LabeledExample ex;
            ex.seq = encode(tokenize(clean_text(rec.text)), vocab, ens.config.seq_len);
            ex.label = rec.resolved_label();
            examples.push_back(std::move(ex));
        }
        res = evaluate_ensemble(ens, examples);
    } else {
        const auto [bundle, mcfg] = load_weights(model);
        if (vocab.size() > mcfg.vocab_size) {
            throw ConfigError("vocabulary has " + std::to_string(vocab.size()) +
                              " entries but the model stores vocab_size " +
                              std::to_string(mcfg.vocab_size));
        }
        const std::vector<LabeledExample> examples =
            encode_dataset(lr.dataset, vocab, mcfg.seq_len);
        res = evaluate(bundle, examples, mcfg);
    }
    print_line(ordered_json{{"loss", res.loss}, {"accuracy", res.accuracy}});
    return 0;
}

int run_predict(const std::string& model, const std::string& vocab_path,
                const std::string& text) {
    const Vocab vocab = load_vocab(vocab_path);
    const std::vector<std::string> tokens = tokenize(clean_text(text));

    if (is_ensemble_file(model)) {
        const EnsembleModel ens = load_ensemble(model);
        if (vocab.size() > ens.config.vocab_size) {
            throw ConfigError("vocabulary has " + std::to_string(vocab.size()) +
                              " entries but the model stores vocab_size " +
                              std::to_string(ens.config.vocab_size));
        }
        const EncodedSequence seq = encode(tokens, vocab, ens.config.seq_len);
        const ClassifyResult res = classify_by_min_error(ens, seq);
        ordered_json errors;
        errors["negative"] = res.errors[0];
        errors["neutral"] = res.errors[1];
        errors["positive"] = res.errors[2];
        print_line(ordered_json{{"errors", errors}, {"sentiment", to_string(res.label)}});
        return 0;
    }

    const auto [bundle, mcfg] = load_weights(model);
    if (vocab.size() > mcfg.vocab_size) {
        throw ConfigError("vocabulary has " + std::to_string(vocab.size()) +
                          " entries but the model stores vocab_size " +
                          std::to_string(mcfg.vocab_size));
    }
    const EncodedSequence seq = encode(tokens, vocab, mcfg.seq_len);
    const std::vector<double> out = forward(seq, bundle, mcfg);
    const double p = mcfg.head == 1 ? out[0] : out[2];
    const Sentiment s = sentiment_of(out, mcfg.head);
    ordered_json result;
    result["probability"] = p;
    result["sentiment"] = to_string(s);
    result["review_type"] = to_string(review_type_of(p));
    print_line(result);
    return 0;
}

int run_gradcheck(std::uint64_t seed) {
    ordered_json cfg;
    cfg["command"] = "gradcheck";
    cfg["vocab_size"] = 50;
    cfg["embed_dim"] = 8;
    cfg["hidden"] = 12;
    cfg["seq_len"] = 6;
    cfg["batch"] = 3;
    cfg["eps"] = 1e-5;
    cfg["seed"] = seed;
    print_line(ordered_json{{"resolved_config", cfg}});

    double worst = 0.0;
    for (const int head : {1, 3}) {
        ModelConfig mcfg;
        mcfg.vocab_size = 50;
        mcfg.embed_dim = 8;
        mcfg.hidden = 12;
        mcfg.seq_len = 6;
        mcfg.head = head;
        const ParamBundle params =
            init_params(mcfg, seed + static_cast<std::uint64_t>(head));
        Rng64 rng(seed ^ 0xABCDEF12u);
        std::vector<Example> batch;
        for (int b = 0; b < 3; ++b) {
            Example ex;
            ex.seq.ids.resize(mcfg.seq_len);
            for (auto& id : ex.seq.ids) {
                id = static_cast<std::uint32_t>(rng.next_below(mcfg.vocab_size));
            }
            ex.seq.original_length = mcfg.seq_len;
            if (head == 1) {
                ex.target = {rng.next_below(2) == 0 ? 0.0 : 1.0};
            } else {
                ex.target = {0.0, 0.0, 0.0};
                ex.target[static_cast<std::size_t>(rng.next_below(3))] = 1.0;
            }
            batch.push_back(std::move(ex));
        }
        GradCheckOptions opts;
        opts.seed = seed;
        worst = std::max(worst, grad_check(params, batch, mcfg, 1e-5, opts));
    }
    print_line(ordered_json{{"max_relative_error", worst}});
    return 0;
}

int run_synth(std::uint64_t seed, std::size_t n, const std::string& out,
              const std::vector<double>& shares) {
    ordered_json cfg;
    cfg["command"] = "synth";
    cfg["seed"] = seed;
    cfg["n"] = n;
    cfg["shares"] = shares;
    cfg["out"] = out;
    print_line(ordered_json{{"resolved_config", cfg}});

    const Dataset ds = synth_corpus(seed, n, {shares[0], shares[1], shares[2]});
    save_csv(ds, out);
    ordered_json result;
    result["n"] = ds.records.size();
    result["out"] = out;
    result["class_counts"] = ds.class_counts;
    print_line(result);
    return 0;
}

int run_params(const CommonFlags& flags) {
    const Resolved r = resolve(flags, false);
    echo_resolved("params", r, true);
    ModelConfig mcfg;
    mcfg.vocab_size = r.vocab_size;
    mcfg.embed_dim = r.embed_dim;
    mcfg.hidden = r.hidden;
    mcfg.seq_len = r.seq_len;
    mcfg.head = r.head;
    const ParamCounts pc = param_count(mcfg);
    ordered_json result;
    result["embedding"] = pc.embedding;
    result["lstm"] = pc.lstm;
    result["dense"] = pc.dense;
    result["total"] = pc.total;
    print_line(result);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"From-scratch LSTM sentiment engine"};
    app.name("bsa");
    app.require_subcommand(1);

    std::string bv_data, bv_out, bv_format;
    std::size_t bv_max_size = 20000;
    CLI::App* bv = app.add_subcommand("build-vocab", "Build a vocabulary file from reviews");
    bv->add_option("--data", bv_data, "Reviews file")->required();
    bv->add_option("--out", bv_out, "Vocabulary output path")->required();
    bv->add_option("--max-size", bv_max_size, "Vocabulary capacity including PAD and UNK");
    bv->add_option("--format", bv_format, "Data file format")
        ->check(CLI::IsMember({"csv", "jsonl"}));

    CommonFlags train_flags;
    CLI::App* tr = app.add_subcommand("train", "Train the classifier and save weights");
    add_train_flags(tr, train_flags);

    CommonFlags ens_flags;
    CLI::App* te =
        app.add_subcommand("train-ensemble", "Train one language model per class");
    add_train_flags(te, ens_flags);

    std::string ev_model, ev_data, ev_vocab, ev_format;
    CLI::App* ev = app.add_subcommand("eval", "Evaluate saved weights on a labeled file");
    ev->add_option("--model", ev_model, "Weights file")->required();
    ev->add_option("--data", ev_data, "Labeled reviews file")->required();
    ev->add_option("--vocab", ev_vocab, "Vocabulary file")->required();
    ev->add_option("--format", ev_format, "Data file format")
        ->check(CLI::IsMember({"csv", "jsonl"}));

    std::string pr_model, pr_vocab, pr_text;
    CLI::App* pr = app.add_subcommand("predict", "Score one review text");
    pr->add_option("--model", pr_model, "Weights file")->required();
    pr->add_option("--vocab", pr_vocab, "Vocabulary file")->required();
    pr->add_option("--text", pr_text, "Review text")->required();

    std::uint64_t gc_seed = 0;
    CLI::App* gc = app.add_subcommand(
        "gradcheck", "Compare exact gradients against central differences");
    gc->add_option("--seed", gc_seed, "Run seed");

    std::uint64_t sy_seed = 0;
    std::size_t sy_n = 0;
    std::string sy_out;
    std::vector<double> sy_shares = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    CLI::App* sy = app.add_subcommand("synth", "Generate a labeled synthetic corpus");
    sy->add_option("--seed", sy_seed, "Run seed");
    sy->add_option("--n", sy_n, "Number of reviews")->required();
    sy->add_option("--out", sy_out, "CSV output path")->required();
    sy->add_option("--shares", sy_shares,
                   "Class shares: negative neutral positive")
        ->expected(3);

    CommonFlags pa_flags;
    CLI::App* pa = app.add_subcommand("params", "Print the parameter-count breakdown");
    pa->add_option("--config", pa_flags.config_path, "JSON config file; flags override it");
    add_model_flags(pa, pa_flags);
    pa_flags.o_head = pa->add_option("--head", pa_flags.head, "Output head: 1 binary, 3 tri-class");

    int code = 0;
    bv->callback([&]() { code = run_build_vocab(bv_data, bv_out, bv_max_size, bv_format); });
    tr->callback([&]() { code = run_train(train_flags); });
    te->callback([&]() { code = run_train_ensemble(ens_flags); });
    ev->callback([&]() { code = run_eval(ev_model, ev_data, ev_vocab, ev_format); });
    pr->callback([&]() { code = run_predict(pr_model, pr_vocab, pr_text); });
    gc->callback([&]() { code = run_gradcheck(gc_seed); });
    sy->callback([&]() { code = run_synth(sy_seed, sy_n, sy_out, sy_shares); });
    pa->callback([&]() { code = run_params(pa_flags); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "Run with --help for usage.\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}

}  // namespace bsa

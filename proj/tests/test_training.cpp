#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bsa/data.hpp"
#include "bsa/errors.hpp"
#include "bsa/model.hpp"
#include "bsa/textproc.hpp"
#include "bsa/training.hpp"

using namespace bsa;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "bsa_training_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    f << content;
}

std::vector<std::span<double>> spans_of(std::vector<std::vector<double>>& tensors) {
    std::vector<std::span<double>> out;
    for (auto& t : tensors) out.emplace_back(t);
    return out;
}

// Labeled examples from a synthetic corpus, ready for a binary head.
std::vector<LabeledExample> synth_examples(std::uint64_t seed, std::size_t n, std::size_t L,
                                           Vocab& vocab_out) {
    Dataset ds = synth_corpus(seed, n, {0.5, 0.0, 0.5});
    std::vector<std::vector<std::string>> docs;
    for (const auto& r : ds.records) docs.push_back(tokenize(clean_text(r.text)));
    vocab_out = build_vocab(docs, 200);
    return encode_dataset(ds, vocab_out, L);
}

}  // namespace

TEST_SUITE("training") {

TEST_CASE("train config validation") {
    TrainConfig good;
    CHECK_NOTHROW(good.validate());
    TrainConfig bad = good;
    bad.epochs = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = good; bad.batch_size = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = good; bad.learning_rate = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = good; bad.beta1 = 1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = good; bad.beta2 = -0.1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = good; bad.epsilon = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = good; bad.clip_norm = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = good; bad.train_frac = 1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("loss closed forms") {
    CHECK(std::abs(loss({0.5}, {1.0}, 1) - std::log(2.0)) < 1e-12);
    CHECK(std::abs(loss({0.8632}, {1.0}, 1) + std::log(0.8632)) < 1e-12);
    CHECK(std::abs(loss({0.25}, {0.0}, 1) + std::log(0.75)) < 1e-12);
    CHECK(std::abs(loss({1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.0, 1.0, 0.0}, 3) - std::log(3.0)) < 1e-12);
    CHECK(std::abs(loss({0.1, 0.2, 0.7}, {0.0, 0.0, 1.0}, 3) + std::log(0.7)) < 1e-12);
}

TEST_CASE("loss stays finite at the probability edges") {
    double edge = loss({1.0}, {0.0}, 1);
    CHECK(std::isfinite(edge));
    CHECK(edge > 27.0);
    CHECK(edge < 28.0);
    CHECK(std::isfinite(loss({0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, 3)));
}

TEST_CASE("loss validates shapes and head") {
    CHECK_THROWS_AS(loss({0.5, 0.5}, {1.0}, 1), ShapeError);
    CHECK_THROWS_AS(loss({0.5}, {1.0}, 2), ConfigError);
}

TEST_CASE("targets encode labels per head") {
    CHECK(target_for(Sentiment::Positive, 1) == std::vector<double>{1.0});
    CHECK(target_for(Sentiment::Negative, 1) == std::vector<double>{0.0});
    CHECK_THROWS_AS(target_for(Sentiment::Neutral, 1), ConfigError);
    CHECK(target_for(Sentiment::Negative, 3) == std::vector<double>{1.0, 0.0, 0.0});
    CHECK(target_for(Sentiment::Neutral, 3) == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(target_for(Sentiment::Positive, 3) == std::vector<double>{0.0, 0.0, 1.0});
}

TEST_CASE("global norm and clipping") {
    std::vector<std::vector<double>> g = {{3.0}, {4.0}};
    auto spans = spans_of(g);
    CHECK(global_grad_norm(spans) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(clip_by_global_norm(spans, 5.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(g[0][0] == 3.0);
    CHECK(g[1][0] == 4.0);

    std::vector<std::vector<double>> big = {{6.0}, {8.0}};
    auto big_spans = spans_of(big);
    double pre = clip_by_global_norm(big_spans, 5.0);
    CHECK(pre == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(std::abs(global_grad_norm(big_spans) - 5.0) < 1e-9);
    CHECK(big[0][0] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("clipping caps random gradient collections") {
    Rng64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> g(3);
        for (auto& t : g) {
            t.resize(1 + rng.next_below(6));
            for (auto& v : t) v = rng.uniform(-10.0, 10.0);
        }
        auto spans = spans_of(g);
        double pre = global_grad_norm(spans);
        clip_by_global_norm(spans, 2.5);
        double post = global_grad_norm(spans);
        CHECK(post <= 2.5 + 1e-9);
        if (pre <= 2.5) CHECK(post == doctest::Approx(pre).epsilon(1e-12));
    }
}

TEST_CASE("adam follows the textbook recurrence for two steps") {
    TrainConfig cfg;
    cfg.learning_rate = 0.01;
    cfg.clip_norm = 100.0;

    std::vector<std::vector<double>> params = {{1.0, -2.0}};
    std::vector<std::vector<double>> grads = {{0.3, -0.1}};
    auto pspan = spans_of(params);
    AdamState state = AdamState::like(pspan);

    double m[2] = {0, 0}, v[2] = {0, 0};
    double ref[2] = {1.0, -2.0};
    const double g[2] = {0.3, -0.1};

    for (int step = 1; step <= 2; ++step) {
        std::vector<std::vector<double>> gcopy = grads;
        auto gspan = spans_of(gcopy);
        adam_step(pspan, gspan, state, cfg);
        for (int k = 0; k < 2; ++k) {
            m[k] = cfg.beta1 * m[k] + (1 - cfg.beta1) * g[k];
            v[k] = cfg.beta2 * v[k] + (1 - cfg.beta2) * g[k] * g[k];
            double m_hat = m[k] / (1 - std::pow(cfg.beta1, step));
            double v_hat = v[k] / (1 - std::pow(cfg.beta2, step));
            ref[k] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
            CHECK(params[0][k] == doctest::Approx(ref[k]).epsilon(1e-12));
        }
    }
    CHECK(state.t == 2);
}

TEST_CASE("adam's first step moves by roughly the learning rate") {
    TrainConfig cfg;
    std::vector<std::vector<double>> params = {{0.5}};
    std::vector<std::vector<double>> grads = {{0.3}};
    auto pspan = spans_of(params);
    auto gspan = spans_of(grads);
    AdamState state = AdamState::like(pspan);
    adam_step(pspan, gspan, state, cfg);
    CHECK(std::abs(params[0][0] - (0.5 - cfg.learning_rate)) < 1e-9);
}

TEST_CASE("adam with zero gradients is a no-op") {
    TrainConfig cfg;
    std::vector<std::vector<double>> params = {{0.7, -1.3}};
    std::vector<std::vector<double>> grads = {{0.0, 0.0}};
    auto pspan = spans_of(params);
    auto gspan = spans_of(grads);
    AdamState state = AdamState::like(pspan);
    adam_step(pspan, gspan, state, cfg);
    CHECK(params[0][0] == 0.7);
    CHECK(params[0][1] == -1.3);
}

TEST_CASE("adam rejects mismatched tensors") {
    TrainConfig cfg;
    std::vector<std::vector<double>> params = {{0.5}};
    std::vector<std::vector<double>> two = {{0.1}, {0.2}};
    std::vector<std::vector<double>> wide = {{0.1, 0.2}};
    auto pspan = spans_of(params);
    AdamState state = AdamState::like(pspan);
    auto two_span = spans_of(two);
    CHECK_THROWS_AS(adam_step(pspan, two_span, state, cfg), ShapeError);
    auto wide_span = spans_of(wide);
    CHECK_THROWS_AS(adam_step(pspan, wide_span, state, cfg), ShapeError);
}

TEST_CASE("split_dataset partitions deterministically") {
    std::vector<int> data(100);
    std::iota(data.begin(), data.end(), 0);

    auto [train, test] = split_dataset(data, 0.7, 3);
    CHECK(train.size() == 70);
    CHECK(test.size() == 30);
    std::vector<int> merged = train;
    merged.insert(merged.end(), test.begin(), test.end());
    std::sort(merged.begin(), merged.end());
    CHECK(merged == data);

    auto [train2, test2] = split_dataset(data, 0.7, 3);
    CHECK(train2 == train);
    CHECK(test2 == test);

    auto [train3, _] = split_dataset(data, 0.7, 4);
    CHECK(train3 != train);
}

TEST_CASE("split_dataset covers awkward sizes") {
    Rng64 rng(15);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + rng.next_below(40);
        double frac = 0.05 + 0.9 * rng.next_unit();
        std::vector<int> data(n);
        std::iota(data.begin(), data.end(), 0);
        auto [train, test] = split_dataset(data, frac, trial);
        CHECK(train.size() == static_cast<std::size_t>(double(n) * frac));
        CHECK(train.size() + test.size() == n);
    }
}

TEST_CASE("split_dataset rejects bad arguments") {
    std::vector<int> data = {1, 2, 3};
    CHECK_THROWS_AS(split_dataset(data, 0.0, 1), ConfigError);
    CHECK_THROWS_AS(split_dataset(data, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(split_dataset(std::vector<int>{}, 0.5, 1), ConfigError);
}

TEST_CASE("encode_dataset cleans, tokenizes and encodes") {
    Dataset ds;
    ReviewRecord r;
    r.text = "<p>Great PHONE!!</p> really";
    r.label = Sentiment::Positive;
    ds.add(r);
    Vocab v = build_vocab({{"great", "phone", "really"}}, 10);
    auto examples = encode_dataset(ds, v, 5);
    REQUIRE(examples.size() == 1);
    CHECK(examples[0].label == Sentiment::Positive);
    CHECK(examples[0].seq.ids ==
          std::vector<std::uint32_t>{0, 0, v.id_of("great"), v.id_of("phone"), v.id_of("really")});
}

TEST_CASE("a tiny separable set is learned to perfection") {
    Vocab vocab;
    auto examples = synth_examples(7, 16, 20, vocab);
    ModelConfig mcfg{vocab.size(), 8, 12, 20, 1};
    TrainConfig tcfg;
    tcfg.epochs = 150;
    tcfg.batch_size = 4;
    tcfg.learning_rate = 0.01;
    tcfg.seed = 1;
    ParamBundle bundle = init_params(mcfg, 1);
    History h = train(bundle, examples, examples, mcfg, tcfg);
    REQUIRE(h.size() == 150);
    CHECK(h.back().train_acc == 1.0);
    CHECK(h.back().train_loss < 0.05);
}

TEST_CASE("training twice with one seed reproduces the history and weights") {
    Vocab vocab;
    auto examples = synth_examples(21, 30, 16, vocab);
    ModelConfig mcfg{vocab.size(), 6, 8, 16, 1};
    TrainConfig tcfg;
    tcfg.epochs = 3;
    tcfg.batch_size = 8;
    tcfg.seed = 5;

    ParamBundle b1 = init_params(mcfg, 5);
    ParamBundle b2 = init_params(mcfg, 5);
    History h1 = train(b1, examples, mcfg, tcfg);
    History h2 = train(b2, examples, mcfg, tcfg);
    REQUIRE(h1.size() == h2.size());
    for (std::size_t i = 0; i < h1.size(); ++i) {
        CHECK(h1[i].train_loss == h2[i].train_loss);
        CHECK(h1[i].train_acc == h2[i].train_acc);
        CHECK(h1[i].val_loss == h2[i].val_loss);
        CHECK(h1[i].val_acc == h2[i].val_acc);
    }
    auto t1 = b1.tensors();
    auto t2 = b2.tensors();
    for (std::size_t s = 0; s < t1.size(); ++s) {
        for (std::size_t i = 0; i < t1[s].size(); ++i) CHECK(t1[s][i] == t2[s][i]);
    }
}

TEST_CASE("binary-head training rejects neutral records") {
    Vocab v = build_vocab({{"meh", "fine"}}, 10);
    std::vector<LabeledExample> data;
    LabeledExample ex;
    ex.seq = encode({"meh", "fine"}, v, 4);
    ex.label = Sentiment::Neutral;
    data.push_back(ex);
    data.push_back(ex);
    ModelConfig mcfg{v.size(), 4, 4, 4, 1};
    TrainConfig tcfg;
    tcfg.epochs = 1;
    ParamBundle bundle = init_params(mcfg, 1);
    CHECK_THROWS_AS(train(bundle, data, data, mcfg, tcfg), ConfigError);
}

TEST_CASE("single-dataset training needs both sides of the split populated") {
    Vocab vocab;
    auto examples = synth_examples(9, 16, 12, vocab);
    ModelConfig mcfg{vocab.size(), 4, 4, 12, 1};
    TrainConfig tcfg;
    tcfg.epochs = 1;
    std::vector<LabeledExample> one = {examples[0]};
    ParamBundle bundle = init_params(mcfg, 1);
    CHECK_THROWS_AS(train(bundle, one, mcfg, tcfg), ConfigError);
}

TEST_CASE("evaluate on an untrained zero head reports the coin-flip point") {
    Vocab vocab;
    auto examples = synth_examples(13, 20, 12, vocab);
    ModelConfig mcfg{vocab.size(), 4, 6, 12, 1};
    ParamBundle bundle = init_params(mcfg, 2);
    bundle.dense.w.fill(0.0);
    bundle.dense.b.assign(bundle.dense.b.size(), 0.0);
    EvalResult r = evaluate(bundle, examples, mcfg);
    CHECK(std::abs(r.loss - std::log(2.0)) < 1e-12);
    std::size_t negatives = 0;
    for (const auto& ex : examples) {
        if (ex.label == Sentiment::Negative) ++negatives;
    }
    CHECK(r.accuracy ==
          doctest::Approx(double(negatives) / double(examples.size())).epsilon(1e-12));
}

TEST_CASE("curves survive a write-read round trip") {
    History h;
    for (int i = 0; i < 5; ++i) {
        EpochStats s;
        s.train_loss = 0.9 / (i + 1);
        s.train_acc = 0.5 + 0.08 * i;
        s.val_loss = 1.0 / (i + 1);
        s.val_acc = 0.45 + 0.07 * i;
        h.push_back(s);
    }
    fs::path p = temp_file("curves.csv");
    export_curves(h, p.string());

    std::string text = read_file(p);
    CHECK(text.rfind("epoch,train_loss,train_acc,val_loss,val_acc\n", 0) == 0);
    CHECK(text.find("\n1,") != std::string::npos);

    History back = parse_curves(p.string());
    REQUIRE(back.size() == h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        CHECK(std::abs(back[i].train_loss - h[i].train_loss) < 1e-6);
        CHECK(std::abs(back[i].train_acc - h[i].train_acc) < 1e-6);
        CHECK(std::abs(back[i].val_loss - h[i].val_loss) < 1e-6);
        CHECK(std::abs(back[i].val_acc - h[i].val_acc) < 1e-6);
    }
}

TEST_CASE("curves parser rejects corrupted files") {
    fs::path p = temp_file("curves_bad.csv");

    write_file(p, "epoch,loss\n1,0.5\n");
    CHECK_THROWS_AS(parse_curves(p.string()), DataError);

    write_file(p, "epoch,train_loss,train_acc,val_loss,val_acc\n1,0.5,0.6\n");
    CHECK_THROWS_AS(parse_curves(p.string()), DataError);

    write_file(p, "epoch,train_loss,train_acc,val_loss,val_acc\n2,0.5,0.6,0.5,0.6\n");
    CHECK_THROWS_AS(parse_curves(p.string()), DataError);

    write_file(p, "epoch,train_loss,train_acc,val_loss,val_acc\n1,0.5,x,0.5,0.6\n");
    CHECK_THROWS_AS(parse_curves(p.string()), DataError);

    write_file(p, "");
    CHECK_THROWS_AS(parse_curves(p.string()), DataError);

    CHECK_THROWS_AS(parse_curves((temp_file("sub") / "none.csv").string()), IoError);
}

TEST_CASE("exporting an empty history is refused") {
    CHECK_THROWS_AS(export_curves({}, temp_file("never.csv").string()), ConfigError);
}

}  // TEST_SUITE

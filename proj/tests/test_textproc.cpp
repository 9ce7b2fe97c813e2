#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "bsa/errors.hpp"
#include "bsa/numerics.hpp"
#include "bsa/textproc.hpp"

using namespace bsa;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "bsa_textproc_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p);
    f << content;
}

std::string random_raw_text(Rng64& rng) {
    static const char charset[] =
        "abcdefghijXYZ0189 <>!,.;:'\"-_/\\()&#@?\t\n  <b></b><br/>";
    std::size_t len = rng.next_below(120);
    std::string s;
    for (std::size_t i = 0; i < len; ++i) {
        s += charset[rng.next_below(sizeof(charset) - 1)];
    }
    return s;
}

}  // namespace

TEST_SUITE("textproc") {

TEST_CASE("clean_text strips tags, punctuation and single characters") {
    CHECK(clean_text("<b>Great!</b> A phone") == "great phone");
    CHECK(clean_text("") == "");
    CHECK(clean_text("This   Product, is Awesome") == "this product is awesome");
}

TEST_CASE("clean_text treats an unmatched angle bracket as punctuation") {
    CHECK(clean_text("a< b cd") == "cd");
    CHECK(clean_text("price < 10 dollars") == "price 10 dollars");
}

TEST_CASE("clean_text drops a tag spanning a newline") {
    CHECK(clean_text("<a\nhref>x yz") == "yz");
}

TEST_CASE("clean_text keeps digits and lowercases") {
    CHECK(clean_text("ITEM 42 OK") == "item 42 ok");
}

TEST_CASE("clean_text is idempotent on fuzzed inputs") {
    Rng64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        std::string raw = random_raw_text(rng);
        std::string once = clean_text(raw);
        CHECK(clean_text(once) == once);
    }
}

TEST_CASE("tokenize splits cleaned text on whitespace") {
    CHECK(tokenize("this product is awesome") ==
          std::vector<std::string>{"this", "product", "is", "awesome"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("ab cd") == std::vector<std::string>{"ab", "cd"});
}

TEST_CASE("build_vocab ranks by frequency then token order") {
    std::vector<std::vector<std::string>> corpus = {
        {"tok1", "tok1", "tok2"}, {"tok1"}};
    Vocab v = build_vocab(corpus, 4);
    CHECK(v.id_of("tok1") == 2);
    CHECK(v.id_of("tok2") == 3);
    CHECK(v.counts[2] == 3);
    CHECK(v.counts[3] == 1);
}

TEST_CASE("build_vocab breaks frequency ties lexicographically") {
    std::vector<std::vector<std::string>> corpus = {{"zz", "aa", "zz", "aa"}};
    Vocab v = build_vocab(corpus, 4);
    CHECK(v.id_of("aa") == 2);
    CHECK(v.id_of("zz") == 3);
}

TEST_CASE("build_vocab caps capacity and routes the rest to UNK") {
    std::vector<std::vector<std::string>> corpus;
    for (int i = 0; i < 10; ++i) {
        corpus.push_back({"w" + std::to_string(i), "w" + std::to_string(i)});
    }
    corpus[0].push_back("w0");
    corpus[1].push_back("w1");
    corpus[2].push_back("w2");
    Vocab v = build_vocab(corpus, 5);
    CHECK(v.size() == 5);
    CHECK(v.id_of("w0") == 2);
    CHECK(v.id_of("w1") == 3);
    CHECK(v.id_of("w2") == 4);
    CHECK(v.id_of("w9") == Vocab::kUnkId);
}

TEST_CASE("build_vocab rejects capacity below three") {
    CHECK_THROWS_AS(build_vocab({}, 2), ConfigError);
}

TEST_CASE("build_vocab is invariant to document order") {
    std::vector<std::vector<std::string>> corpus = {
        {"red", "blue", "red"}, {"green", "blue"}, {"red", "green", "green"}};
    Vocab a = build_vocab(corpus, 10);
    std::vector<std::vector<std::string>> reordered = {corpus[2], corpus[0], corpus[1]};
    Vocab b = build_vocab(reordered, 10);
    CHECK(a.id_to_token == b.id_to_token);
    CHECK(a.counts == b.counts);
}

TEST_CASE("encode maps, pads in front and truncates from the front") {
    std::vector<std::vector<std::string>> corpus = {
        {"this", "product", "is", "awesome", "bad", "ugly"}};
    Vocab v = build_vocab(corpus, 20);

    auto full = encode({"this", "product", "is", "awesome"}, v, 4);
    CHECK(full.ids == std::vector<std::uint32_t>{v.id_of("this"), v.id_of("product"),
                                                 v.id_of("is"), v.id_of("awesome")});
    CHECK(full.original_length == 4);

    auto padded = encode({"bad"}, v, 3);
    CHECK(padded.ids == std::vector<std::uint32_t>{0, 0, v.id_of("bad")});
    CHECK(padded.original_length == 1);

    auto empty = encode({}, v, 3);
    CHECK(empty.ids == std::vector<std::uint32_t>{0, 0, 0});
    CHECK(empty.original_length == 0);

    auto truncated = encode({"this", "product", "is", "awesome", "bad", "ugly"}, v, 4);
    CHECK(truncated.ids == std::vector<std::uint32_t>{v.id_of("is"), v.id_of("awesome"),
                                                      v.id_of("bad"), v.id_of("ugly")});
    CHECK(truncated.original_length == 4);
}

TEST_CASE("encode maps unknown tokens to UNK and rejects L of zero") {
    Vocab v = build_vocab({{"known", "known"}}, 4);
    auto seq = encode({"mystery"}, v, 2);
    CHECK(seq.ids == std::vector<std::uint32_t>{0, Vocab::kUnkId});
    CHECK_THROWS_AS(encode({"known"}, v, 0), ConfigError);
}

TEST_CASE("encode keeps the PAD prefix contiguous on random inputs") {
    Vocab v = build_vocab({{"aa", "bb", "cc", "dd"}}, 10);
    std::vector<std::string> pool = {"aa", "bb", "cc", "dd", "oov1", "oov2"};
    Rng64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = rng.next_below(12);
        std::vector<std::string> tokens;
        for (std::size_t i = 0; i < n; ++i) tokens.push_back(pool[rng.next_below(pool.size())]);
        std::size_t L = 1 + rng.next_below(10);
        auto seq = encode(tokens, v, L);
        REQUIRE(seq.ids.size() == L);
        CHECK(seq.original_length == std::min(n, L));
        std::size_t pad_prefix = L - seq.original_length;
        for (std::size_t i = 0; i < pad_prefix; ++i) CHECK(seq.ids[i] == Vocab::kPadId);
        for (std::size_t i = pad_prefix; i < L; ++i) CHECK(seq.ids[i] != Vocab::kPadId);
    }
}

TEST_CASE("decode inverts encode with OOV mapped to the UNK token") {
    Vocab v = build_vocab({{"good", "bad", "good"}}, 5);
    auto seq = encode({"good", "mystery", "bad"}, v, 5);
    CHECK(decode(seq, v) == std::vector<std::string>{"good", "<unk>", "bad"});
}

TEST_CASE("vocab file round-trips") {
    Vocab v = build_vocab({{"red", "blue", "red", "green"}}, 6);
    fs::path p = temp_file("vocab_roundtrip.tsv");
    save_vocab(v, p.string());
    Vocab loaded = load_vocab(p.string());
    CHECK(loaded.id_to_token == v.id_to_token);
    CHECK(loaded.counts == v.counts);
    CHECK(loaded.max_size == v.size());
    CHECK(loaded.id_of("red") == v.id_of("red"));
}

TEST_CASE("load_vocab rejects malformed files") {
    fs::path p = temp_file("vocab_bad.tsv");

    write_file(p, "<pad>\t0\t0\n<unk>\t1\t0\nword no tabs here\n");
    CHECK_THROWS_AS(load_vocab(p.string()), DataError);

    write_file(p, "<pad>\t0\t0\n<unk>\t1\t0\nword\tx\t3\n");
    CHECK_THROWS_AS(load_vocab(p.string()), DataError);

    write_file(p, "<pad>\t0\t0\n<unk>\t1\t0\nword\t5\t3\n");
    CHECK_THROWS_AS(load_vocab(p.string()), DataError);

    write_file(p, "word\t0\t3\nother\t1\t2\n");
    CHECK_THROWS_AS(load_vocab(p.string()), DataError);

    CHECK_THROWS_AS(load_vocab((temp_file("no_such_dir") / "missing.tsv").string()), IoError);
}

}  // TEST_SUITE

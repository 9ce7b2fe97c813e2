#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsa/data.hpp"
#include "bsa/errors.hpp"
#include "bsa/textproc.hpp"

using namespace bsa;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "bsa_data_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    f << content;
}

}  // namespace

TEST_SUITE("data") {

TEST_CASE("rating to label map is total over 1..5") {
    CHECK(label_from_rating(1) == Sentiment::Negative);
    CHECK(label_from_rating(2) == Sentiment::Negative);
    CHECK(label_from_rating(3) == Sentiment::Neutral);
    CHECK(label_from_rating(4) == Sentiment::Positive);
    CHECK(label_from_rating(5) == Sentiment::Positive);
    CHECK_THROWS_AS(label_from_rating(0), std::domain_error);
    CHECK_THROWS_AS(label_from_rating(6), std::domain_error);
}

TEST_CASE("explicit label outranks the rating") {
    ReviewRecord r;
    r.rating = 5;
    r.label = Sentiment::Negative;
    CHECK(r.resolved_label() == Sentiment::Negative);
    r.label.reset();
    CHECK(r.resolved_label() == Sentiment::Positive);
    r.rating.reset();
    CHECK_THROWS_AS(r.resolved_label(), DataError);
}

TEST_CASE("csv loader handles quoting, escapes and embedded newlines") {
    fs::path p = temp_file("quoted.csv");
    write_file(p,
               "text,label\n"
               "\"loved it, truly\",positive\n"
               "\"she said \"\"meh\"\"\",neutral\n"
               "\"line one\nline two\",negative\n");
    LoadResult r = load_reviews(p.string(), FileFormat::Csv);
    REQUIRE(r.dataset.size() == 3);
    CHECK(r.skipped.empty());
    CHECK(r.dataset.records[0].text == "loved it, truly");
    CHECK(r.dataset.records[1].text == "she said \"meh\"");
    CHECK(r.dataset.records[2].text == "line one\nline two");
    CHECK(r.dataset.class_counts == std::array<std::size_t, 3>{1, 1, 1});
}

TEST_CASE("csv loader accepts a rating column") {
    fs::path p = temp_file("rating.csv");
    write_file(p, "text,rating\ngood stuff,5\nterrible,1\nso so,3\n");
    LoadResult r = load_reviews(p.string(), FileFormat::Csv);
    REQUIRE(r.dataset.size() == 3);
    CHECK(r.dataset.records[0].resolved_label() == Sentiment::Positive);
    CHECK(r.dataset.records[1].resolved_label() == Sentiment::Negative);
    CHECK(r.dataset.records[2].resolved_label() == Sentiment::Neutral);
}

TEST_CASE("csv loader reports malformed rows with line numbers and keeps going") {
    fs::path p = temp_file("mixed.csv");
    write_file(p,
               "text,label\n"
               "fine,positive\n"
               "too,many,fields\n"
               ",negative\n"
               "odd label,meh\n"
               "also fine,negative\n");
    LoadResult r = load_reviews(p.string(), FileFormat::Csv);
    CHECK(r.dataset.size() == 2);
    REQUIRE(r.skipped.size() == 3);
    CHECK(r.skipped[0].line == 3);
    CHECK(r.skipped[1].line == 4);
    CHECK(r.skipped[2].line == 5);
}

TEST_CASE("csv loader tolerates CRLF and a UTF-8 BOM") {
    fs::path p = temp_file("crlf.csv");
    write_file(p, "\xEF\xBB\xBFtext,label\r\nnice one,positive\r\n");
    LoadResult r = load_reviews(p.string(), FileFormat::Csv);
    REQUIRE(r.dataset.size() == 1);
    CHECK(r.dataset.records[0].text == "nice one");
}

TEST_CASE("csv loader distinguishes missing file, bad header and empty data") {
    CHECK_THROWS_AS(load_reviews((temp_file("sub") / "absent.csv").string(), FileFormat::Csv),
                    IoError);

    fs::path bad_header = temp_file("bad_header.csv");
    write_file(bad_header, "review,score\nhello,positive\n");
    CHECK_THROWS_AS(load_reviews(bad_header.string(), FileFormat::Csv), DataError);

    fs::path all_bad = temp_file("all_bad.csv");
    write_file(all_bad, "text,label\n,positive\nhello,unknownlabel\n");
    CHECK_THROWS_AS(load_reviews(all_bad.string(), FileFormat::Csv), DataError);

    fs::path unterminated = temp_file("unterminated.csv");
    write_file(unterminated, "text,label\n\"no closing quote,positive\n");
    CHECK_THROWS_AS(load_reviews(unterminated.string(), FileFormat::Csv), DataError);
}

TEST_CASE("jsonl loader reads label and rating records") {
    fs::path p = temp_file("good.jsonl");
    write_file(p,
               "{\"text\": \"great phone\", \"label\": \"positive\"}\n"
               "\n"
               "{\"text\": \"meh\", \"rating\": 3}\n");
    LoadResult r = load_reviews(p.string(), FileFormat::Jsonl);
    REQUIRE(r.dataset.size() == 2);
    CHECK(r.skipped.empty());
    CHECK(r.dataset.records[0].resolved_label() == Sentiment::Positive);
    CHECK(r.dataset.records[1].resolved_label() == Sentiment::Neutral);
}

TEST_CASE("jsonl loader reports malformed lines and keeps going") {
    fs::path p = temp_file("mixed.jsonl");
    write_file(p,
               "{\"text\": \"ok item\", \"label\": \"neutral\"}\n"
               "{not json at all\n"
               "[1,2,3]\n"
               "{\"label\": \"positive\"}\n"
               "{\"text\": \"nice\", \"rating\": 9}\n"
               "{\"text\": \"works\"}\n");
    LoadResult r = load_reviews(p.string(), FileFormat::Jsonl);
    CHECK(r.dataset.size() == 1);
    REQUIRE(r.skipped.size() == 5);
    CHECK(r.skipped[0].line == 2);
    CHECK(r.skipped[1].line == 3);
    CHECK(r.skipped[2].line == 4);
    CHECK(r.skipped[3].line == 5);
    CHECK(r.skipped[4].line == 6);
}

TEST_CASE("jsonl loader errors when nothing valid remains") {
    fs::path p = temp_file("empty.jsonl");
    write_file(p, "\n\n");
    CHECK_THROWS_AS(load_reviews(p.string(), FileFormat::Jsonl), DataError);
}

TEST_CASE("save_csv round-trips through the loader including nasty text") {
    Dataset ds;
    ReviewRecord a;
    a.text = "commas, \"quotes\" and\nnewlines";
    a.label = Sentiment::Negative;
    ds.add(a);
    ReviewRecord b;
    b.text = "plain words only";
    b.label = Sentiment::Positive;
    ds.add(b);

    fs::path p = temp_file("roundtrip.csv");
    save_csv(ds, p.string());
    LoadResult r = load_reviews(p.string(), FileFormat::Csv);
    REQUIRE(r.dataset.size() == 2);
    CHECK(r.dataset.records[0].text == a.text);
    CHECK(r.dataset.records[0].resolved_label() == Sentiment::Negative);
    CHECK(r.dataset.records[1].text == b.text);
    CHECK(r.skipped.empty());
}

TEST_CASE("synth corpus is deterministic and sized by largest remainder") {
    Dataset a = synth_corpus(99, 10, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    Dataset b = synth_corpus(99, 10, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    REQUIRE(a.size() == 10);
    CHECK(a.class_counts == std::array<std::size_t, 3>{4, 3, 3});
    REQUIRE(b.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.records[i].text == b.records[i].text);
        CHECK(a.records[i].resolved_label() == b.records[i].resolved_label());
    }

    Dataset c = synth_corpus(5, 7, {0.5, 0.25, 0.25});
    CHECK(c.class_counts == std::array<std::size_t, 3>{3, 2, 2});

    Dataset d = synth_corpus(5, 40, {0.5, 0.0, 0.5});
    CHECK(d.class_counts == std::array<std::size_t, 3>{20, 0, 20});
}

TEST_CASE("synth corpus rejects bad shares") {
    CHECK_THROWS_AS(synth_corpus(1, 10, {0.5, 0.5, 0.5}), ConfigError);
    CHECK_THROWS_AS(synth_corpus(1, 10, {-0.1, 0.6, 0.5}), ConfigError);
    CHECK_THROWS_AS(synth_corpus(1, 2, {1.0 / 3, 1.0 / 3, 1.0 / 3}), ConfigError);
}

TEST_CASE("synth reviews have 5 to 20 tokens and never borrow another class's words") {
    Dataset ds = synth_corpus(17, 300, {1.0 / 3, 1.0 / 3, 1.0 / 3});

    std::array<std::set<std::string>, 3> class_words;
    for (const auto& rec : ds.records) {
        auto idx = static_cast<std::size_t>(rec.resolved_label());
        for (const auto& tok : tokenize(rec.text)) class_words[idx].insert(tok);
    }
    // Words unique to one class's records; shared filler drops out.
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            if (a == b) continue;
            for (const auto& w : class_words[a]) {
                if (class_words[b].count(w)) {
                    // Appears in both: must be filler, i.e. in all three.
                    CHECK(class_words[3 - a - b].count(w) > 0);
                }
            }
        }
    }

    std::array<std::set<std::string>, 3> exclusive = class_words;
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t other = 0; other < 3; ++other) {
            if (other == k) continue;
            for (const auto& w : class_words[other]) exclusive[k].erase(w);
        }
    }

    std::size_t hits = 0;
    for (const auto& rec : ds.records) {
        auto tokens = tokenize(rec.text);
        CHECK(tokens.size() >= 5);
        CHECK(tokens.size() <= 20);
        auto idx = static_cast<std::size_t>(rec.resolved_label());
        for (const auto& tok : tokens) {
            if (exclusive[idx].count(tok)) {
                ++hits;
                break;
            }
        }
    }
    // A unigram scan over class-exclusive words recovers nearly every label.
    CHECK(hits >= 285);
}

TEST_CASE("pretrained embedding rows overwrite only matching tokens") {
    Vocab v = build_vocab({{"alpha", "beta", "alpha", "gamma"}}, 10);
    Matrix emb(v.size(), 3, 0.25);

    fs::path p = temp_file("vecs.txt");
    write_file(p,
               "2 3\n"
               "alpha 1 2 3\n"
               "delta 9 9 9\n"
               "gamma 0.5 -0.5 4.25\n");
    std::size_t applied = load_pretrained_embeddings(p.string(), v, emb);
    CHECK(applied == 2);
    const auto a = v.id_of("alpha");
    CHECK(emb(a, 0) == 1.0);
    CHECK(emb(a, 1) == 2.0);
    CHECK(emb(a, 2) == 3.0);
    const auto g = v.id_of("gamma");
    CHECK(emb(g, 2) == 4.25);
    const auto b = v.id_of("beta");
    CHECK(emb(b, 0) == 0.25);
    CHECK(emb(Vocab::kPadId, 0) == 0.25);
}

TEST_CASE("pretrained embedding loader validates lines") {
    Vocab v = build_vocab({{"alpha", "beta"}}, 10);
    Matrix emb(v.size(), 3, 0.0);

    fs::path p = temp_file("vecs_short.txt");
    write_file(p, "alpha 1 2\n");
    CHECK_THROWS_AS(load_pretrained_embeddings(p.string(), v, emb), DataError);

    fs::path q = temp_file("vecs_nan.txt");
    write_file(q, "alpha 1 two 3\n");
    CHECK_THROWS_AS(load_pretrained_embeddings(q.string(), v, emb), DataError);

    CHECK_THROWS_AS(
        load_pretrained_embeddings((temp_file("sub") / "none.txt").string(), v, emb), IoError);
}

}  // TEST_SUITE

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "styloguard/annotate.hpp"
#include "styloguard/lstm.hpp"

using namespace styloguard;

namespace {

const Lexicons& lex() {
    static Lexicons instance;
    return instance;
}

Vocabulary tiny_vocab(const std::vector<std::string>& terms) {
    Vocabulary v;
    v.terms = terms;
    for (uint32_t i = 0; i < terms.size(); ++i) v.index.emplace(terms[i], i);
    return v;
}

SequenceEncoding raw_encoding(std::vector<uint32_t> indices, uint32_t len) {
    SequenceEncoding enc;
    enc.indices.assign(len, 0);
    enc.mask.assign(len, 0);
    for (size_t i = 0; i < indices.size(); ++i) {
        enc.indices[i] = indices[i];
        enc.mask[i] = 1;
    }
    enc.valid = static_cast<uint32_t>(indices.size());
    return enc;
}

}  // namespace

TEST_CASE("encode_sequence", "[sequence]") {
    Vocabulary v = tiny_vocab({"account", "verify", "link"});
    SECTION("long documents keep the first tokens") {
        std::string text;
        for (int i = 0; i < 60; ++i) text += "account ";
        auto doc = annotate("d", text, lex());
        auto enc = encode_sequence(doc, v, 50);
        CHECK(enc.valid == 50);
        for (int i = 0; i < 50; ++i) CHECK(enc.indices[i] == 1);  // shifted by one
    }
    SECTION("short documents pad at the tail") {
        auto doc = annotate("d", "verify account link", lex());
        auto enc = encode_sequence(doc, v, 50);
        CHECK(enc.valid == 3);
        CHECK(enc.indices[0] == 2);  // verify -> vocab idx 1 -> 2
        CHECK(enc.mask[0] == 1);
        CHECK(enc.mask[3] == 0);
        CHECK(enc.indices[3] == 0);
    }
    SECTION("out-of-vocabulary lemmata dropped before truncation") {
        auto doc = annotate("d", "zebra verify zebra account", lex());
        auto enc = encode_sequence(doc, v, 50);
        CHECK(enc.valid == 2);
        CHECK(enc.indices[0] == 2);
        CHECK(enc.indices[1] == 1);
    }
    SECTION("all-pad encoding for fully out-of-vocabulary text") {
        auto doc = annotate("d", "zebra quagga", lex());
        auto enc = encode_sequence(doc, v, 50);
        CHECK(enc.valid == 0);
    }
}

TEST_CASE("lstm forward identities", "[sequence]") {
    LstmModel<double> m = lstm_init<double>(10, 4, 5, 3, 8, 1);
    SECTION("all parameters zero give the uniform distribution") {
        LstmModel<double> zero = m;
        for (auto* block : {&zero.embedding, &zero.W, &zero.U, &zero.b, &zero.Wd, &zero.bd})
            std::fill(block->begin(), block->end(), 0.0);
        auto probs = lstm_forward(zero, raw_encoding({1, 2, 3}, 8));
        for (double p : probs) CHECK(p == Catch::Approx(1.0 / 3.0));
    }
    SECTION("all-pad input yields softmax of the dense bias") {
        LstmModel<double> biased = m;
        biased.bd = {0.2, 1.4, -0.3};
        auto probs = lstm_forward(biased, raw_encoding({}, 8));
        double denom = std::exp(0.2) + std::exp(1.4) + std::exp(-0.3);
        CHECK(probs[0] == Catch::Approx(std::exp(0.2) / denom));
        CHECK(probs[1] == Catch::Approx(std::exp(1.4) / denom));
        CHECK(probs[2] == Catch::Approx(std::exp(-0.3) / denom));
    }
    SECTION("probabilities sum to one") {
        auto probs = lstm_forward(m, raw_encoding({1, 5, 2, 7}, 8));
        double sum = 0;
        for (double p : probs) sum += p;
        CHECK(sum == Catch::Approx(1.0).margin(1e-6));
    }
    SECTION("masked pad steps leave the output unchanged bit for bit") {
        // same valid prefix, model seq_len already pads the tail
        auto short_probs = lstm_forward(m, raw_encoding({1, 5, 2}, 8));
        auto enc = raw_encoding({1, 5, 2}, 8);   // identical; pads are already masked
        auto long_probs = lstm_forward(m, enc);
        for (size_t c = 0; c < 3; ++c) CHECK(short_probs[c] == long_probs[c]);
        // and a model with longer seq_len sees the same final state
        LstmModel<double> wider = lstm_init<double>(10, 4, 5, 3, 12, 1);
        wider.embedding = m.embedding;
        wider.W = m.W;
        wider.U = m.U;
        wider.b = m.b;
        wider.Wd = m.Wd;
        wider.bd = m.bd;
        auto padded = lstm_forward(wider, raw_encoding({1, 5, 2}, 12));
        for (size_t c = 0; c < 3; ++c) CHECK(short_probs[c] == padded[c]);
    }
}

TEST_CASE("gradient check across seeds", "[sequence]") {
    double worst = 0;
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        const double err = lstm_gradient_check(seed);
        CAPTURE(seed, err);
        CHECK(err < 1e-4);
        worst = std::max(worst, err);
    }
    INFO("worst relative error " << worst);

    SECTION("negative control: a corrupted gradient is caught") {
        CHECK(lstm_gradient_check(3, 12, 5, 6, 3, 4, 3, /*zero_u_grad=*/true) > 1e-1);
    }
}

TEST_CASE("dense bias gradient sums to zero for softmax-CE", "[sequence]") {
    // zero model, symmetric two-class batch: the bias gradient rows are
    // (p - y)/B with p uniform, so components sum to zero
    using namespace styloguard::lstm_detail;
    LstmModel<double> m = lstm_init<double>(6, 3, 4, 2, 5, 2);
    for (auto* block : {&m.embedding, &m.W, &m.U, &m.b, &m.Wd, &m.bd})
        std::fill(block->begin(), block->end(), 0.0);
    BatchWork<double> w;
    w.resize(2, 5, 3, 4, 2);
    for (int i = 0; i < 2; ++i) {
        w.idx[i * 5] = 1;
        w.mask[i * 5] = 1;
    }
    std::vector<uint32_t> ys = {0, 1};
    Gradients<double> g;
    g.match(m);
    batch_forward(m, w, &ys);
    batch_backward(m, w, ys, g);
    CHECK(g.bd[0] + g.bd[1] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("toy training memorizes a separable token", "[sequence]") {
    // 8 sequences, 2 classes, class decided by one token
    std::vector<SequenceEncoding> seqs;
    std::vector<uint32_t> ys;
    for (int i = 0; i < 4; ++i) {
        seqs.push_back(raw_encoding({1, 3, static_cast<uint32_t>(2 + (i % 2))}, 6));
        ys.push_back(0);
        seqs.push_back(raw_encoding({2, 3, static_cast<uint32_t>(2 + (i % 2))}, 6));
        ys.push_back(1);
    }
    LstmModel<float> m = lstm_init<float>(5, 8, 8, 2, 6, 99);
    m.dropout = 0;
    m.recurrent_dropout = 0;
    TrainConfig cfg;
    cfg.epochs = 50;
    cfg.batch_size = 4;
    cfg.seed = 99;
    lstm_train(m, seqs, ys, cfg);
    size_t correct = 0;
    for (size_t i = 0; i < seqs.size(); ++i) correct += lstm_classify(m, seqs[i]) == ys[i];
    CHECK(correct == seqs.size());
}

TEST_CASE("training is deterministic for a fixed seed", "[sequence]") {
    std::vector<SequenceEncoding> seqs;
    std::vector<uint32_t> ys;
    Rng rng(5);
    for (int i = 0; i < 12; ++i) {
        std::vector<uint32_t> ids;
        for (int t = 0; t < 4; ++t) ids.push_back(1 + static_cast<uint32_t>(rng.below(6)));
        seqs.push_back(raw_encoding(ids, 6));
        ys.push_back(static_cast<uint32_t>(rng.below(2)));
    }
    TrainConfig cfg;
    cfg.epochs = 3;
    cfg.batch_size = 4;
    cfg.seed = 31;
    LstmModel<float> m1 = lstm_init<float>(8, 6, 6, 2, 6, 31);
    LstmModel<float> m2 = lstm_init<float>(8, 6, 6, 2, 6, 31);
    auto t1 = lstm_train(m1, seqs, ys, cfg);
    auto t2 = lstm_train(m2, seqs, ys, cfg);
    REQUIRE(t1.size() == t2.size());
    for (size_t e = 0; e < t1.size(); ++e) {
        CHECK(t1[e].loss == t2[e].loss);
        CHECK(t1[e].accuracy == t2[e].accuracy);
    }
    for (size_t i = 0; i < m1.W.size(); ++i) REQUIRE(m1.W[i] == m2.W[i]);
}

TEST_CASE("model serialization round trip", "[sequence]") {
    namespace fs = std::filesystem;
    LstmModel<float> m = lstm_init<float>(9, 4, 5, 3, 7, 123);
    m.class_names = {"a", "b", "c"};
    m.vocab_terms = {"account", "verify", "link", "team", "now", "click", "support", "safe"};
    const fs::path path = fs::temp_directory_path() / "sg_lstm_roundtrip.bin";
    lstm_save(m, path.string());
    LstmModel<float> r = lstm_load<float>(path.string());
    fs::remove(path);
    CHECK(r.vocab_rows == m.vocab_rows);
    CHECK(r.class_names == m.class_names);
    CHECK(r.vocab_terms == m.vocab_terms);
    REQUIRE(r.W.size() == m.W.size());
    for (size_t i = 0; i < m.W.size(); ++i) REQUIRE(r.W[i] == m.W[i]);
    auto p1 = lstm_forward(m, raw_encoding({1, 2, 3}, 7));
    auto p2 = lstm_forward(r, raw_encoding({1, 2, 3}, 7));
    for (size_t c = 0; c < 3; ++c) CHECK(p1[c] == p2[c]);
}

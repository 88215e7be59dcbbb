#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "styloguard/annotate.hpp"
#include "styloguard/maxent.hpp"
#include "styloguard/naive_bayes.hpp"
#include "styloguard/rng.hpp"
#include "styloguard/vocabulary.hpp"
#include "styloguard/winnow.hpp"

using namespace styloguard;

namespace {

const Lexicons& lex() {
    static Lexicons instance;
    return instance;
}

std::vector<AnnotatedDocument> annotate_all(const std::vector<std::string>& texts) {
    std::vector<AnnotatedDocument> docs;
    for (size_t i = 0; i < texts.size(); ++i)
        docs.push_back(annotate("d" + std::to_string(i), texts[i], lex()));
    return docs;
}

std::vector<const AnnotatedDocument*> ptrs(const std::vector<AnnotatedDocument>& docs) {
    std::vector<const AnnotatedDocument*> out;
    for (const auto& d : docs) out.push_back(&d);
    return out;
}

TokenCountVector sparse(std::vector<std::pair<uint32_t, uint32_t>> counts) {
    TokenCountVector v;
    v.counts = std::move(counts);
    for (const auto& [i, c] : v.counts) v.total_count += c;
    return v;
}

}  // namespace

TEST_CASE("build_vocabulary", "[token]") {
    SECTION("stop words removed") {
        auto docs = annotate_all({"a cat", "a dog"});
        Vocabulary v = build_vocabulary(ptrs(docs), lex(), 1);
        REQUIRE(v.size() == 2);
        CHECK(v.index.count("cat") == 1);
        CHECK(v.index.count("dog") == 1);
        CHECK(v.index.count("a") == 0);
    }
    SECTION("min_df threshold drops rare terms") {
        auto docs = annotate_all({"cat dog", "dog bird"});
        Vocabulary v = build_vocabulary(ptrs(docs), lex(), 2);
        REQUIRE(v.size() == 1);
        CHECK(v.terms[0] == "dog");
    }
    SECTION("indices by descending corpus frequency, ties lexicographic") {
        auto docs = annotate_all({"zebra zebra cat", "zebra cat bird"});
        Vocabulary v = build_vocabulary(ptrs(docs), lex(), 1);
        REQUIRE(v.terms.size() == 3);
        CHECK(v.terms[0] == "zebra");  // freq 3
        CHECK(v.terms[1] == "cat");    // freq 2
        CHECK(v.terms[2] == "bird");   // freq 1
    }
    SECTION("identical corpus gives identical assignment") {
        auto docs = annotate_all({"delta echo foxtrot", "echo foxtrot golf"});
        Vocabulary v1 = build_vocabulary(ptrs(docs), lex(), 1);
        Vocabulary v2 = build_vocabulary(ptrs(docs), lex(), 1);
        CHECK(v1.terms == v2.terms);
        CHECK(v1.content_hash() == v2.content_hash());
    }
    SECTION("empty vocabulary after filtering is fatal") {
        auto docs = annotate_all({"the of and"});
        CHECK_THROWS(build_vocabulary(ptrs(docs), lex(), 1));
    }
}

TEST_CASE("naive bayes", "[token]") {
    auto docs = annotate_all({"free money free", "meeting agenda", "free offer"});
    std::vector<const AnnotatedDocument*> train = {&docs[0], &docs[1]};
    Vocabulary v = build_vocabulary(train, lex(), 1);
    REQUIRE(v.size() == 4);

    std::vector<TokenCountVector> xs = {vectorize(docs[0], v), vectorize(docs[1], v)};
    std::vector<uint32_t> ys = {0, 1};
    NBModel m = nb_train(xs, ys, {"A", "B"}, v.size(), 1.0);

    SECTION("classify 'free offer' as A, matching hand-computed posteriors") {
        auto p = nb_classify(m, vectorize(docs[2], v));
        CHECK(p.label == 0);
        // log(1/2) + log(3/7) and log(1/2) + log(1/6)
        CHECK(p.log_posteriors[0] == Catch::Approx(std::log(0.5) + std::log(3.0 / 7.0)));
        CHECK(p.log_posteriors[1] == Catch::Approx(std::log(0.5) + std::log(1.0 / 6.0)));
    }
    SECTION("smoothing floor for absent words") {
        // "meeting" lemmatizes to "meet", which never occurs in class A:
        // p = (0 + 1) / (3 + 4)
        const uint32_t idx = v.index.at("meet");
        CHECK(std::exp(m.log_cond[0][idx]) == Catch::Approx(1.0 / 7.0));
    }
    SECTION("per-class conditionals sum to one") {
        for (size_t c = 0; c < 2; ++c) {
            double sum = 0;
            for (size_t t = 0; t < v.size(); ++t) sum += std::exp(m.log_cond[c][t]);
            CHECK(sum == Catch::Approx(1.0).margin(1e-9));
        }
    }
    SECTION("empty vector classifies by prior alone") {
        std::vector<TokenCountVector> xs7;
        std::vector<uint32_t> ys7;
        for (int i = 0; i < 7; ++i) { xs7.push_back(sparse({{0, 1}})); ys7.push_back(0); }
        for (int i = 0; i < 3; ++i) { xs7.push_back(sparse({{1, 1}})); ys7.push_back(1); }
        NBModel prior_model = nb_train(xs7, ys7, {"A", "B"}, 2, 1.0);
        auto p = nb_classify(prior_model, sparse({}));
        CHECK(p.label == 0);
        CHECK(p.log_posteriors[0] == Catch::Approx(std::log(0.7)));
    }
    SECTION("exponentiated, normalized posteriors sum to one") {
        auto p = nb_classify(m, vectorize(docs[2], v));
        double mx = std::max(p.log_posteriors[0], p.log_posteriors[1]);
        double sum = 0;
        for (double lp : p.log_posteriors) sum += std::exp(lp - mx);
        double norm = 0;
        for (double lp : p.log_posteriors) norm += std::exp(lp - mx) / sum;
        CHECK(norm == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("class with zero documents is fatal") {
        CHECK_THROWS(nb_train(xs, ys, {"A", "B", "C"}, v.size(), 1.0));
    }
}

TEST_CASE("naive bayes equals a brute-force oracle on small corpora", "[token]") {
    // Oracle: evaluates prior(c) * prod_w p(w|c)^count directly from raw
    // counts in long double arithmetic, no logs, no shared code path.
    Rng rng(314159);
    for (int trial = 0; trial < 120; ++trial) {
        const size_t V = 2 + rng.below(7);       // <= 8
        const size_t n_docs = 3 + rng.below(4);  // <= 6
        const size_t C = 3;
        std::vector<TokenCountVector> xs;
        std::vector<uint32_t> ys;
        for (size_t d = 0; d < n_docs; ++d) {
            std::vector<std::pair<uint32_t, uint32_t>> counts;
            for (uint32_t t = 0; t < V; ++t)
                if (rng.below(2)) counts.emplace_back(t, 1 + rng.below(3));
            if (counts.empty()) counts.emplace_back(static_cast<uint32_t>(rng.below(V)), 1);
            xs.push_back(sparse(std::move(counts)));
            ys.push_back(d < C ? static_cast<uint32_t>(d)  // every class non-empty
                               : static_cast<uint32_t>(rng.below(C)));
        }
        NBModel m = nb_train(xs, ys, {"c0", "c1", "c2"}, V, 1.0);

        // raw counts for the oracle
        std::vector<std::vector<long double>> wc(C, std::vector<long double>(V, 0));
        std::vector<long double> total(C, 0), docs_per(C, 0);
        for (size_t d = 0; d < n_docs; ++d) {
            docs_per[ys[d]] += 1;
            for (const auto& [t, n] : xs[d].counts) {
                wc[ys[d]][t] += n;
                total[ys[d]] += n;
            }
        }

        for (size_t q = 0; q < n_docs; ++q) {
            auto pred = nb_classify(m, xs[q]);
            long double best = -1;
            uint32_t best_c = 0;
            for (uint32_t c = 0; c < C; ++c) {
                long double post = docs_per[c] / static_cast<long double>(n_docs);
                for (const auto& [t, n] : xs[q].counts) {
                    const long double pw = (wc[c][t] + 1.0L) / (total[c] + static_cast<long double>(V));
                    for (uint32_t rep = 0; rep < n; ++rep) post *= pw;
                }
                if (post > best) { best = post; best_c = c; }
                CHECK(static_cast<double>(std::log(post)) ==
                      Catch::Approx(pred.log_posteriors[c]).epsilon(1e-9));
            }
            CHECK(pred.label == best_c);
        }
    }
}

TEST_CASE("maxent", "[token]") {
    SECTION("zero weights give the uniform distribution") {
        MaxEntModel m;
        m.classes = {"a", "b", "c"};
        m.weights.assign(3, std::vector<double>(5, 0.0));
        auto p = maxent_classify(m, sparse({{0, 2}, {3, 1}}));
        for (double pr : p.probabilities) CHECK(pr == Catch::Approx(1.0 / 3.0));
    }
    SECTION("analytic gradient matches central finite differences") {
        std::vector<TokenCountVector> xs = {sparse({{0, 2}, {1, 1}}), sparse({{1, 1}, {2, 3}}),
                                            sparse({{0, 1}, {2, 1}})};
        std::vector<uint32_t> ys = {0, 1, 0};
        MaxEntModel m;
        m.classes = {"a", "b"};
        m.lambda = 1e-3;
        m.weights.assign(2, std::vector<double>(4, 0.0));
        Rng rng(5);
        for (auto& row : m.weights)
            for (auto& w : row) w = rng.uniform(-0.5, 0.5);

        std::vector<std::vector<double>> grad;
        detail::maxent_gradient(m, xs, ys, grad);
        const double h = 1e-5;
        double max_rel = 0;
        for (size_t c = 0; c < 2; ++c)
            for (size_t t = 0; t < 4; ++t) {
                const double orig = m.weights[c][t];
                m.weights[c][t] = orig + h;
                const double lp = detail::maxent_loss(m, xs, ys);
                m.weights[c][t] = orig - h;
                const double lm = detail::maxent_loss(m, xs, ys);
                m.weights[c][t] = orig;
                const double numeric = (lp - lm) / (2 * h);
                const double rel = std::fabs(grad[c][t] - numeric) /
                                   std::max({std::fabs(grad[c][t]), std::fabs(numeric), 1e-12});
                max_rel = std::max(max_rel, rel);
            }
        CHECK(max_rel < 1e-4);
    }
    SECTION("linearly separable set trains to 100%") {
        std::vector<TokenCountVector> xs = {sparse({{0, 1}}), sparse({{0, 2}}), sparse({{1, 1}}),
                                            sparse({{1, 3}})};
        std::vector<uint32_t> ys = {0, 0, 1, 1};
        MaxEntModel m = maxent_train(xs, ys, {"a", "b"}, 2);
        for (size_t i = 0; i < xs.size(); ++i) CHECK(maxent_classify(m, xs[i]).label == ys[i]);
    }
    SECTION("loss trace is non-increasing and probabilities sum to one") {
        Rng rng(9);
        std::vector<TokenCountVector> xs;
        std::vector<uint32_t> ys;
        for (int i = 0; i < 20; ++i) {
            xs.push_back(sparse({{static_cast<uint32_t>(rng.below(6)), 1 + static_cast<uint32_t>(rng.below(3))},
                                 {static_cast<uint32_t>(rng.below(6)), 1}}));
            ys.push_back(static_cast<uint32_t>(rng.below(3)));
        }
        MaxEntModel m = maxent_train(xs, ys, {"a", "b", "c"}, 6);
        for (size_t i = 1; i < m.loss_trace.size(); ++i)
            CHECK(m.loss_trace[i] <= m.loss_trace[i - 1] + 1e-6);
        auto p = maxent_classify(m, xs[0]);
        double sum = 0;
        for (double pr : p.probabilities) sum += pr;
        CHECK(sum == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("winnow", "[token]") {
    SECTION("hand-stepped updates on two features") {
        // theta = V = 2, alpha = 2, beta = 0.5, classes {0,1}, weights start 1
        WinnowOptions opts;
        opts.epochs = 1;
        std::vector<TokenCountVector> xs = {sparse({{0, 1}}), sparse({{0, 1}, {1, 1}}),
                                            sparse({{1, 1}})};
        std::vector<uint32_t> ys = {0, 1, 0};
        WinnowModel m = winnow_train(xs, ys, {"c0", "c1"}, 2, opts);
        // x0 {f0}, y=0: class0 sum 1 < 2 -> promote f0 to 2; class1 quiet
        // x1 {f0,f1}, y=1: class0 sum 3 >= 2 -> demote both (1, 0.5);
        //                  class1 sum 2 >= 2 and positive -> no change
        // x2 {f1}, y=0: class0 sum 0.5 < 2 -> promote f1 to 1; class1 sum 1 < 2 quiet
        CHECK(m.weights[0][0] == Catch::Approx(1.0));
        CHECK(m.weights[0][1] == Catch::Approx(1.0));
        CHECK(m.weights[1][0] == Catch::Approx(1.0));
        CHECK(m.weights[1][1] == Catch::Approx(1.0));
    }
    SECTION("correctly predicted example leaves weights unchanged") {
        WinnowOptions opts;
        opts.epochs = 1;
        opts.theta = 0.5;  // single active feature already fires
        std::vector<TokenCountVector> xs = {sparse({{0, 1}})};
        std::vector<uint32_t> ys = {0};
        WinnowModel m = winnow_train(xs, ys, {"c0"}, 2, opts);
        CHECK(m.weights[0][0] == Catch::Approx(1.0));
        CHECK(m.weights[0][1] == Catch::Approx(1.0));
    }
    SECTION("false negative doubles the active weight") {
        WinnowOptions opts;
        opts.epochs = 1;
        std::vector<TokenCountVector> xs = {sparse({{0, 1}})};
        std::vector<uint32_t> ys = {0};
        WinnowModel m = winnow_train(xs, ys, {"c0"}, 4, opts);  // theta = 4 > 1
        CHECK(m.weights[0][0] == Catch::Approx(2.0));
    }
    SECTION("weights stay strictly positive") {
        Rng rng(17);
        std::vector<TokenCountVector> xs;
        std::vector<uint32_t> ys;
        for (int i = 0; i < 60; ++i) {
            std::vector<std::pair<uint32_t, uint32_t>> counts;
            for (uint32_t t = 0; t < 10; ++t)
                if (rng.below(3) == 0) counts.emplace_back(t, 1);
            if (counts.empty()) counts.emplace_back(0, 1);
            xs.push_back(sparse(std::move(counts)));
            ys.push_back(static_cast<uint32_t>(rng.below(3)));
        }
        WinnowModel m = winnow_train(xs, ys, {"a", "b", "c"}, 10);
        for (const auto& row : m.weights)
            for (double w : row) CHECK(w > 0.0);
    }
}

TEST_CASE("vocabulary permutation leaves predictions unchanged", "[token]") {
    Rng rng(88);
    std::vector<TokenCountVector> xs;
    std::vector<uint32_t> ys;
    const size_t V = 7;
    for (int i = 0; i < 24; ++i) {
        std::vector<std::pair<uint32_t, uint32_t>> counts;
        for (uint32_t t = 0; t < V; ++t)
            if (rng.below(2)) counts.emplace_back(t, 1 + static_cast<uint32_t>(rng.below(4)));
        if (counts.empty()) counts.emplace_back(static_cast<uint32_t>(rng.below(V)), 1);
        xs.push_back(sparse(std::move(counts)));
        ys.push_back(static_cast<uint32_t>(rng.below(2)));
    }
    // a fixed permutation of term indices
    std::vector<uint32_t> perm(V);
    for (uint32_t t = 0; t < V; ++t) perm[t] = t;
    rng.shuffle(perm);
    auto permute = [&](const TokenCountVector& v) {
        std::map<uint32_t, uint32_t> remapped;
        for (const auto& [t, n] : v.counts) remapped[perm[t]] = n;
        TokenCountVector out;
        out.counts.assign(remapped.begin(), remapped.end());
        out.total_count = v.total_count;
        return out;
    };
    std::vector<TokenCountVector> pxs;
    for (const auto& v : xs) pxs.push_back(permute(v));

    NBModel nb1 = nb_train(xs, ys, {"a", "b"}, V, 1.0);
    NBModel nb2 = nb_train(pxs, ys, {"a", "b"}, V, 1.0);
    WinnowModel w1 = winnow_train(xs, ys, {"a", "b"}, V);
    WinnowModel w2 = winnow_train(pxs, ys, {"a", "b"}, V);
    for (size_t i = 0; i < xs.size(); ++i) {
        auto a = nb_classify(nb1, xs[i]);
        auto b = nb_classify(nb2, pxs[i]);
        CHECK(a.label == b.label);
        for (size_t c = 0; c < 2; ++c)
            CHECK(a.log_posteriors[c] == Catch::Approx(b.log_posteriors[c]).epsilon(1e-12));
        CHECK(winnow_classify(w1, xs[i]).label == winnow_classify(w2, pxs[i]).label);
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "styloguard/rng.hpp"
#include "styloguard/style_classifier.hpp"

using namespace styloguard;

namespace {

// small hand-made vectors; the schema size is irrelevant to the math here
StyleVector sv(std::string id, std::vector<double> values) {
    StyleVector v;
    v.doc_id = std::move(id);
    v.values = std::move(values);
    return v;
}

}  // namespace

TEST_CASE("fisher scores", "[styleclf]") {
    SECTION("identical class means score zero") {
        std::vector<StyleVector> xs = {sv("a", {1.0}), sv("b", {3.0}), sv("c", {1.0}),
                                       sv("d", {3.0})};
        std::vector<uint32_t> ys = {0, 0, 1, 1};
        FeatureWeights w = fisher_scores(xs, ys, 2);
        CHECK(w.scores[0] == 0.0);
    }
    SECTION("zero within-variance with separated means hits the cap") {
        std::vector<StyleVector> xs = {sv("a", {0.0}), sv("b", {0.0}), sv("c", {1.0}),
                                       sv("d", {1.0})};
        std::vector<uint32_t> ys = {0, 0, 1, 1};
        FeatureWeights w = fisher_scores(xs, ys, 2);
        CHECK(w.scores[0] == kFisherScoreCap);
    }
    SECTION("constant feature scores zero") {
        std::vector<StyleVector> xs = {sv("a", {5.0}), sv("b", {5.0}), sv("c", {5.0}),
                                       sv("d", {5.0})};
        std::vector<uint32_t> ys = {0, 0, 1, 1};
        FeatureWeights w = fisher_scores(xs, ys, 2);
        CHECK(w.scores[0] == 0.0);
    }
    SECTION("class with fewer than two samples is fatal") {
        std::vector<StyleVector> xs = {sv("a", {1.0}), sv("b", {2.0}), sv("c", {3.0})};
        std::vector<uint32_t> ys = {0, 0, 1};
        CHECK_THROWS(fisher_scores(xs, ys, 2));
    }
    SECTION("two unit-variance classes three sigma apart score near 2.25") {
        // between-variance = ((1.5)^2 + (1.5)^2) / 2 = 2.25, within ~ 1
        Rng rng(1234);
        std::vector<StyleVector> xs;
        std::vector<uint32_t> ys;
        for (int i = 0; i < 200; ++i) { xs.push_back(sv("p", {rng.normal()})); ys.push_back(0); }
        for (int i = 0; i < 200; ++i) { xs.push_back(sv("q", {3.0 + rng.normal()})); ys.push_back(1); }
        FeatureWeights w = fisher_scores(xs, ys, 2);
        CHECK(w.scores[0] == Catch::Approx(2.25).margin(0.5));
    }
}

TEST_CASE("weighted nearest neighbor", "[styleclf]") {
    std::vector<StyleVector> train = {sv("t0", {0.0, 0.0}), sv("t1", {0.1, 0.2}),
                                      sv("t2", {5.0, 5.0}), sv("t3", {5.2, 4.9})};
    std::vector<uint32_t> ys = {0, 0, 1, 1};
    StyleModel m = style_train(train, ys, {"low", "high"});

    SECTION("a training vector returns its own label at distance zero") {
        auto p = wnn_classify(m, train[2]);
        CHECK(p.label == 1);
        CHECK(p.weighted_distance == Catch::Approx(0.0).margin(1e-18));
        CHECK(p.neighbor_ids[0] == "t2");
    }
    SECTION("schema length mismatch is fatal") {
        CHECK_THROWS(wnn_classify(m, sv("q", {1.0})));
    }
    SECTION("equal scores reduce to unweighted z-scored 1-NN") {
        StyleModel eq = m;
        eq.weights.scores = {1.0, 1.0};
        StyleVector q = sv("q", {4.0, 4.5});
        auto pred = wnn_classify(eq, q);
        // brute-force unweighted z-scored nearest neighbor
        auto z = [&](const std::vector<double>& v) {
            std::vector<double> out(v.size());
            for (size_t f = 0; f < v.size(); ++f)
                out[f] = (v[f] - eq.weights.means[f]) / eq.weights.stds[f];
            return out;
        };
        const auto qz = z(q.values);
        double best = 1e300;
        uint32_t best_label = 0;
        for (size_t i = 0; i < train.size(); ++i) {
            const auto tz = z(train[i].values);
            double d = 0;
            for (size_t f = 0; f < tz.size(); ++f) d += (qz[f] - tz[f]) * (qz[f] - tz[f]);
            if (d < best) { best = d; best_label = ys[i]; }
        }
        CHECK(pred.label == best_label);
    }
}

TEST_CASE("wnn matches a brute-force oracle", "[styleclf]") {
    Rng rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        const size_t F = 1 + rng.below(4);
        const size_t N = 6 + rng.below(15);  // <= 20
        std::vector<StyleVector> train;
        std::vector<uint32_t> ys;
        for (size_t i = 0; i < N; ++i) {
            std::vector<double> vals(F);
            for (auto& v : vals) v = rng.uniform(-2, 2);
            train.push_back(sv("t" + std::to_string(i), std::move(vals)));
            ys.push_back(static_cast<uint32_t>(i % 2));
        }
        StyleModel m = style_train(train, ys, {"a", "b"});
        for (int q = 0; q < 5; ++q) {
            std::vector<double> vals(F);
            for (auto& v : vals) v = rng.uniform(-2, 2);
            StyleVector query = sv("q", std::move(vals));

            // independent distance evaluation
            double best = 1e300;
            uint32_t best_label = 0;
            for (size_t i = 0; i < N; ++i) {
                double d = 0;
                for (size_t f = 0; f < F; ++f) {
                    if (m.weights.scores[f] <= 0 || m.weights.stds[f] <= 0) continue;
                    const double zq = (query.values[f] - m.weights.means[f]) / m.weights.stds[f];
                    const double zt = (train[i].values[f] - m.weights.means[f]) / m.weights.stds[f];
                    d += m.weights.scores[f] * (zq - zt) * (zq - zt);
                }
                if (d < best) { best = d; best_label = ys[i]; }
            }
            auto pred = wnn_classify(m, query);
            CHECK(pred.label == best_label);
            CHECK(pred.weighted_distance == Catch::Approx(best).epsilon(1e-9));
        }
    }
}

TEST_CASE("scale and shift invariance", "[styleclf]") {
    Rng rng(404);
    std::vector<StyleVector> train;
    std::vector<uint32_t> ys;
    for (size_t i = 0; i < 30; ++i) {
        train.push_back(sv("t" + std::to_string(i),
                           {rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)}));
        ys.push_back(static_cast<uint32_t>(i % 3));
    }
    StyleVector query = sv("q", {rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)});
    StyleModel base = style_train(train, ys, {"a", "b", "c"});
    const auto base_pred = wnn_classify(base, query);

    SECTION("multiplying one feature by a constant changes nothing") {
        for (double c : {3.7, -2.0, 0.01}) {
            auto scaled = train;
            auto q = query;
            for (auto& t : scaled) t.values[1] *= c;
            q.values[1] *= c;
            StyleModel m = style_train(scaled, ys, {"a", "b", "c"});
            for (size_t f = 0; f < 3; ++f)
                CHECK(m.weights.scores[f] ==
                      Catch::Approx(base.weights.scores[f]).epsilon(1e-9).margin(1e-9));
            auto pred = wnn_classify(m, q);
            CHECK(pred.label == base_pred.label);
            CHECK(pred.weighted_distance ==
                  Catch::Approx(base_pred.weighted_distance).epsilon(1e-9).margin(1e-9));
        }
    }
    SECTION("adding a constant to one feature changes nothing") {
        auto shifted = train;
        auto q = query;
        for (auto& t : shifted) t.values[0] += 41.5;
        q.values[0] += 41.5;
        StyleModel m = style_train(shifted, ys, {"a", "b", "c"});
        auto pred = wnn_classify(m, q);
        CHECK(pred.label == base_pred.label);
        CHECK(pred.weighted_distance ==
              Catch::Approx(base_pred.weighted_distance).epsilon(1e-9).margin(1e-9));
    }
}

TEST_CASE("feature ranking", "[styleclf]") {
    SECTION("sorted by score descending") {
        FeatureWeights w;
        w.scores = {2.0, 5.0, 1.0};
        // rank_features reads names from the live schema, so use raw sorting
        // on a synthetic set matching the first three schema slots
        const FeatureSchema& schema = FeatureSchema::instance();
        std::vector<StyleVector> xs;
        std::vector<uint32_t> ys;
        Rng rng(3);
        for (int i = 0; i < 8; ++i) {
            std::vector<double> vals(schema.size(), 0.0);
            for (size_t f = 0; f < 3; ++f) vals[f] = rng.uniform(0, 1);
            xs.push_back(sv("x", std::move(vals)));
            ys.push_back(static_cast<uint32_t>(i % 2));
        }
        w.scores.resize(schema.size(), 0.0);
        w.scores[0] = 2.0;
        w.scores[1] = 5.0;
        w.scores[2] = 1.0;
        auto ranked = rank_features(w, xs, ys, 2);
        CHECK(ranked[0].name == schema.at(1).name);
        CHECK(ranked[1].name == schema.at(0).name);
        CHECK(ranked[2].name == schema.at(2).name);
        // constant (zero-score) descriptors rank last
        CHECK(ranked.back().score == 0.0);
    }
}

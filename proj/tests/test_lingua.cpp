#include <catch2/catch_amalgamated.hpp>

#include "styloguard/annotate.hpp"
#include "styloguard/rng.hpp"
#include "styloguard/soundex.hpp"

using namespace styloguard;

namespace {
const Lexicons& lex() {
    static Lexicons instance;
    return instance;
}
}  // namespace

TEST_CASE("tokenizer handles urls, emoticons and separators", "[lingua]") {
    SECTION("url kept as one token") {
        auto toks = tokenize("Click www.secureverifylink123.com now.", lex());
        REQUIRE(toks.size() == 4);
        CHECK(toks[0].surface == "Click");
        CHECK(toks[1].surface == "www.secureverifylink123.com");
        CHECK(toks[1].kind == TokenKind::Url);
        CHECK(toks[2].surface == "now");
        CHECK(toks[3].kind == TokenKind::Punctuation);
    }
    SECTION("trailing period stays out of the url") {
        auto toks = tokenize("Visit http://bit.ly/89HjeFd.", lex());
        REQUIRE(toks.size() == 3);
        CHECK(toks[1].surface == "http://bit.ly/89HjeFd");
        CHECK(toks[1].kind == TokenKind::Url);
        CHECK(toks[2].surface == ".");
    }
    SECTION("emoticon from the embedded list") {
        auto toks = tokenize(":)", lex());
        REQUIRE(toks.size() == 1);
        CHECK(toks[0].kind == TokenKind::Emoticon);
    }
    SECTION("number with internal separators kept whole") {
        auto toks = tokenize("1,000 users", lex());
        REQUIRE(toks.size() == 2);
        CHECK(toks[0].surface == "1,000");
        CHECK(toks[0].kind == TokenKind::Number);
        CHECK(toks[1].kind == TokenKind::Word);
    }
    SECTION("contraction split at the apostrophe") {
        auto toks = tokenize("don't", lex());
        REQUIRE(toks.size() == 2);
        CHECK(toks[0].surface == "do");
        CHECK(toks[1].surface == "n't");
    }
    SECTION("uppercase word flag needs two letters") {
        auto toks = tokenize("URGENT a A", lex());
        CHECK(toks[0].is_uppercase_word);
        CHECK_FALSE(toks[1].is_uppercase_word);
        CHECK_FALSE(toks[2].is_uppercase_word);
    }
}

TEST_CASE("token spans reconstruct the source", "[lingua]") {
    const std::string texts[] = {
        "Dear Valued Customer, please verify your account at www.foo123.com now!",
        "I paid $1,500.25 on March 3... was that right? :) e.g. maybe-not don't",
        "URGENT: \"reply\" now\nor else\t(really).",
    };
    for (const auto& text : texts) {
        auto toks = tokenize(text, lex());
        REQUIRE_FALSE(toks.empty());
        uint32_t prev_end = 0;
        for (const auto& t : toks) {
            CHECK(text.substr(t.begin, t.end - t.begin) == t.surface);
            CHECK(t.begin >= prev_end);  // monotone, non-overlapping
            prev_end = t.end;
        }
    }
}

TEST_CASE("sentence segmentation", "[lingua]") {
    SECTION("two terminators give two sentences") {
        auto toks = tokenize("Hello. Bye.", lex());
        auto sents = segment_sentences(toks, lex());
        REQUIRE(sents.size() == 2);
    }
    SECTION("abbreviation does not end the sentence") {
        auto toks = tokenize("Contact Dr. Smith now.", lex());
        auto sents = segment_sentences(toks, lex());
        REQUIRE(sents.size() == 1);
    }
    SECTION("trailing fragment forms a sentence") {
        auto toks = tokenize("Thanks", lex());
        auto sents = segment_sentences(toks, lex());
        REQUIRE(sents.size() == 1);
    }
    SECTION("sentences tile the token list") {
        auto toks = tokenize("One two. Three! Four? e.g. five Mr. Jones", lex());
        auto sents = segment_sentences(toks, lex());
        uint32_t pos = 0;
        for (const auto& s : sents) {
            CHECK(s.first_token == pos);
            CHECK(s.end_token > s.first_token);
            pos = s.end_token;
        }
        CHECK(pos == toks.size());
    }
}

TEST_CASE("pos tagging stages", "[lingua]") {
    auto tag_of = [&](const std::string& text, size_t idx) {
        auto doc = annotate("t", text, lex());
        return doc.tokens[idx].pos;
    };
    CHECK(tag_of("you are here", 0) == PosTag::PRP);
    CHECK(tag_of("your account", 0) == PosTag::PRP);
    CHECK(tag_of("it was verified yesterday", 2) == PosTag::VBD);  // -ed, not sentence-initial
    CHECK(tag_of("48 users", 0) == PosTag::CD);
    CHECK(tag_of("the cat", 0) == PosTag::DT);
    CHECK(tag_of("will go", 0) == PosTag::MD);
    CHECK(tag_of("quickly run", 0) == PosTag::RB);                 // -ly
    CHECK(tag_of("verification done", 0) == PosTag::NN);           // -tion
    CHECK(tag_of("see Smith today", 1) == PosTag::NNP);            // capitalized mid-sentence
    CHECK(tag_of("Smith arrived", 0) == PosTag::NN);               // sentence-initial: no NNP rule
    CHECK(tag_of("they click links", 1) == PosTag::VB);            // verb stem list
    CHECK(tag_of("he clicks links", 1) == PosTag::VB);             // -s after a known stem
}

TEST_CASE("lemmatization", "[lingua]") {
    auto lemma = [&](const std::string& w, PosTag p) { return lemmatize(w, p, lex()); };
    CHECK(lemma("Accounts", PosTag::NN) == "account");
    CHECK(lemma("was", PosTag::VBD) == "be");
    CHECK(lemma("verification", PosTag::NN) == "verification");  // -tion never reversed
    CHECK(lemma("verified", PosTag::VBD) == "verify");
    CHECK(lemma("running", PosTag::VB) == "run");
    CHECK(lemma("went", PosTag::VBD) == "go");
    CHECK(lemma("mice", PosTag::NN) == "mouse");
    CHECK(lemma("companies", PosTag::NN) == "company");
    CHECK(lemma("boxes", PosTag::NN) == "box");
    CHECK(lemma("business", PosTag::NN) == "business");  // -ss protected
    CHECK(lemma("status", PosTag::NN) == "status");      // -us protected

    SECTION("idempotent on a broad sample") {
        const char* words[] = {"accounts", "verified",  "running", "was",     "making",
                               "studies",  "business",  "goes",    "stopped", "hoped",
                               "analysis", "services",  "leaves",  "thanks",  "helping",
                               "said",     "agreements", "uses",   "tries",   "classes"};
        for (const char* w : words)
            for (PosTag p : {PosTag::NN, PosTag::VB, PosTag::VBD, PosTag::NNP}) {
                const std::string once = lemmatize(w, p, lex());
                CHECK(lemmatize(once, p, lex()) == once);
            }
    }
}

TEST_CASE("soundex", "[lingua]") {
    CHECK(*soundex("Robert") == "R163");
    CHECK(*soundex("Rupert") == "R163");
    CHECK(*soundex("A") == "A000");
    CHECK(*soundex("Ashcraft") == "A261");   // h is transparent for collapsing
    CHECK(*soundex("Ashcroft") == "A261");
    CHECK(*soundex("Tymczak") == "T522");
    CHECK(*soundex("Pfister") == "P236");
    CHECK(*soundex("Honeyman") == "H555");
    CHECK(*soundex("Washington") == "W252");
    CHECK(*soundex("Lee") == "L000");
    CHECK(*soundex("Gutierrez") == "G362");
    CHECK(*soundex("O'Hara") == "O600");     // non-letters ignored
    CHECK_FALSE(soundex("1234").has_value());
    CHECK_FALSE(soundex("").has_value());

    SECTION("pattern and case invariance") {
        Rng rng(411);
        for (int i = 0; i < 300; ++i) {
            std::string w;
            const size_t len = 1 + rng.below(12);
            for (size_t j = 0; j < len; ++j) w.push_back(static_cast<char>('a' + rng.below(26)));
            auto code = soundex(w);
            REQUIRE(code.has_value());
            REQUIRE(code->size() == 4);
            CHECK(((*code)[0] >= 'A' && (*code)[0] <= 'Z'));
            for (size_t j = 1; j < 4; ++j) CHECK(((*code)[j] >= '0' && (*code)[j] <= '6'));
            std::string upper = w;
            for (auto& c : upper) c = static_cast<char>(c - 'a' + 'A');
            CHECK(*soundex(upper) == *code);
        }
    }
}

TEST_CASE("sentence sentiment", "[lingua]") {
    auto score = [&](const std::string& text) {
        auto doc = annotate("t", text, lex());
        REQUIRE(doc.sentences.size() == 1);
        return doc.sentences[0].sentiment;
    };
    CHECK(score("the chair is on the table") == 2);          // no polar words
    CHECK(score("Thank you for your prompt attention") == 4);  // two positive hits
    CHECK(score("not happy") == 1);                          // negator flips +1
    CHECK(score("never a failure") == 3);                    // negator flips -1
    CHECK(score("danger risk fear") == 0);                   // <= -2
    CHECK(score("good") == 3);

    SECTION("always in range") {
        auto doc = annotate("t", "Great wonderful excellent! danger risk fear. fine.", lex());
        for (const auto& s : doc.sentences) {
            CHECK(s.sentiment >= 0);
            CHECK(s.sentiment <= 4);
        }
    }
}

TEST_CASE("annotation is deterministic", "[lingua]") {
    const std::string text =
        "Dear Grace Adams, please verify your account at www.foo99.com within 48 hours. "
        "Thank you! Don't wait.";
    auto a = annotate("d", text, lex());
    auto b = annotate("d", text, lex());
    REQUIRE(a.tokens.size() == b.tokens.size());
    for (size_t i = 0; i < a.tokens.size(); ++i) {
        CHECK(a.tokens[i].surface == b.tokens[i].surface);
        CHECK(a.tokens[i].lemma == b.tokens[i].lemma);
        CHECK(a.tokens[i].pos == b.tokens[i].pos);
    }
    REQUIRE(a.sentences.size() == b.sentences.size());
    for (size_t i = 0; i < a.sentences.size(); ++i)
        CHECK(a.sentences[i].sentiment == b.sentences[i].sentiment);

    SECTION("every word token has a lemma and tag") {
        for (const auto& t : a.tokens)
            if (t.kind == TokenKind::Word) {
                CHECK_FALSE(t.lemma.empty());
                CHECK(t.pos != PosTag::PUNCT);
            }
    }
    SECTION("number tokens carry CD and only them") {
        for (const auto& t : a.tokens) {
            if (t.kind == TokenKind::Number) CHECK(t.pos == PosTag::CD);
            if (t.pos == PosTag::CD) CHECK(t.kind == TokenKind::Number);
        }
    }
}

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "styloguard/rng.hpp"

namespace styloguard::fixtures {

// Deterministic synthetic email corpus with one generator profile per
// class. The profiles reproduce the corpus-level statistics the real
// datasets exhibit (email lengths, word and sentence lengths, part-of-
// speech mix, sentiment polarity, vocabulary breadth), so the full
// pipeline can be exercised end to end when the real corpora are not on
// disk. Built once from a seed; identical seeds give identical corpora.

struct FixtureOptions {
    uint64_t seed = 99173;
    size_t ai_count = 865;
    size_t enron_count = 700;
    size_t ling_count = 700;
    size_t nigerian_count = 700;
};

namespace detail {

using styloguard::Rng;

inline const char* kFirstNames[] = {"Grace", "Lily", "Piper", "Oliver", "Maya", "Ethan",
                                    "Sofia", "Lucas", "Amelia", "Noah", "Zoe", "Caleb",
                                    "Ruby", "Henry", "Nora", "Jack", "Ivy", "Owen"};
inline const char* kLastNames[] = {"Adams", "Evans", "Carter", "Brooks", "Hughes", "Foster",
                                   "Morgan", "Reeves", "Dalton", "Mercer", "Hayes", "Porter"};
inline const char* kMonths[] = {"January", "February", "March", "April", "June", "July",
                                "August", "September", "October", "November", "December"};

template <size_t N>
inline std::string pick(Rng& rng, const char* (&arr)[N]) {
    return arr[rng.below(N)];
}

inline std::string pick(Rng& rng, const std::vector<std::string>& pool) {
    return pool[rng.below(pool.size())];
}

inline std::string capitalize(std::string w) {
    if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
}

inline std::string code_letters(Rng& rng, size_t n) {
    std::string out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(static_cast<char>('A' + rng.below(26)));
    return out;
}

// Assembles greeting/body/closing around a character budget. When `exact`
// is set, a reference-code line pads the email to precisely target_chars.
struct EmailBuilder {
    std::string greeting;
    std::vector<std::string> sentences;
    std::string closing;

    std::string assemble_with_code(const std::string& code_line) const {
        std::string out = greeting;
        out += "\n\n";
        size_t in_par = 0;
        for (size_t i = 0; i < sentences.size(); ++i) {
            out += sentences[i];
            ++in_par;
            if (i + 1 < sentences.size()) {
                if (in_par >= 3) { out += "\n\n"; in_par = 0; }
                else out += " ";
            }
        }
        if (!code_line.empty()) { out += "\n\n"; out += code_line; }
        out += "\n\n";
        out += closing;
        out += "\n";
        return out;
    }

    size_t length_with_code(size_t code_line_len) const {
        std::string probe = assemble_with_code(std::string(code_line_len, 'X'));
        return probe.size();
    }
};

}  // namespace detail

// ---------------------------------------------------------------- AI class

class AiEmailGenerator {
  public:
    explicit AiEmailGenerator(uint64_t seed) : rng_(seed) {}

    std::string make(size_t target_chars, bool exact) {
        using namespace detail;
        EmailBuilder b;
        b.greeting = greeting();
        b.closing = closing();
        const size_t reserve = exact ? 90 : 24;
        while (b.length_with_code(0) + reserve < target_chars) b.sentences.push_back(sentence());
        if (!exact) return b.assemble_with_code("");
        // pad with a reference code to land exactly on target_chars
        const std::string prefix = "Reference ID: ";
        size_t base = b.length_with_code(0) + 2;  // +2 for the extra blank line
        while (base + prefix.size() + 4 > target_chars && !b.sentences.empty()) {
            b.sentences.pop_back();
            base = b.length_with_code(0) + 2;
        }
        const size_t code_len = target_chars - base - prefix.size() - 1;  // -1 trailing period
        return b.assemble_with_code(prefix + code_letters(rng_, code_len) + ".");
    }

  private:
    std::string greeting() {
        switch (rng_.below(4)) {
            case 0: return "Dear Valued Customer,";
            case 1: return "Dear " + detail::pick(rng_, detail::kFirstNames) + " " +
                           detail::pick(rng_, detail::kLastNames) + ",";
            case 2: return "Dear Account Holder,";
            default: return "Hello " + detail::pick(rng_, detail::kFirstNames) + ",";
        }
    }

    std::string closing() {
        static const std::vector<std::string> signoff = {"Sincerely,", "Best regards,",
                                                         "Kind regards,", "Thank you,"};
        return detail::pick(rng_, signoff) + "\n" + team();
    }

    std::string team() {
        static const std::vector<std::string> teams = {
            "Customer Support Team", "Online Security Department", "Account Services Team",
            "Library Services Team", "Billing Support Center", "Member Services Team"};
        return detail::pick(rng_, teams);
    }

    std::string url() {
        static const std::vector<std::string> stems = {"secureverify", "accountcheck",
                                                       "safeportal", "memberupdate",
                                                       "verifycenter", "loginsecure"};
        if (rng_.below(3) == 0)
            return "http://bit.ly/" + detail::code_letters(rng_, 2) +
                   std::to_string(10 + rng_.below(90)) + detail::code_letters(rng_, 3);
        return "www." + detail::pick(rng_, stems) + std::to_string(100 + rng_.below(900)) + ".com";
    }

    std::string noun() {
        static const std::vector<std::string> long_nouns = {
            "verification", "information", "validation", "notification", "confirmation",
            "credentials", "subscription", "membership", "protection", "assistance",
            "documentation", "authentication"};
        static const std::vector<std::string> med_nouns = {
            "account", "security", "password", "profile", "process", "services",
            "settings", "support", "access", "details", "identity", "activity",
            "records", "status", "portal", "session"};
        return rng_.below(10) < 5 ? detail::pick(rng_, long_nouns)
                                  : detail::pick(rng_, med_nouns);
    }

    std::string verb() {
        static const std::vector<std::string> verbs = {
            "verify", "complete", "confirm", "validate", "update", "safeguard", "maintain",
            "protect", "review", "ensure", "contact", "prevent", "restore", "activate",
            "renew", "resolve", "provide", "submit"};
        return detail::pick(rng_, verbs);
    }

    std::string adj() {
        static const std::vector<std::string> adjs = {
            "urgent", "essential", "personal", "potential", "temporary", "immediate",
            "swift", "valued", "limited", "uninterrupted", "important", "secure"};
        return detail::pick(rng_, adjs);
    }

    std::string adv() {
        static const std::vector<std::string> advs = {"immediately", "promptly", "kindly",
                                                      "securely", "urgently"};
        return detail::pick(rng_, advs);
    }

    std::string sentence() {
        switch (rng_.below(20)) {
            case 0: return "Please " + verb() + " your " + noun() + " " + adv() + ".";
            case 1: return "We kindly request you to " + verb() + " your " + noun() + ".";
            case 2: return "Your " + noun() + " requires " + adj() + " " + noun() + ".";
            case 3: return "We are contacting you to " + verb() + " your " + noun() + ".";
            case 4: return "Kindly click the link to " + verb() + " your " + noun() + ": " +
                           url() + ".";
            case 5: return "Thank you for your prompt attention to this matter.";
            case 6: return "We appreciate your swift cooperation.";
            case 7: return "Failure to " + verb() + " your " + noun() +
                           " may result in limited access.";
            case 8: return "This helps us " + verb() + " your " + noun() + " and " + noun() + ".";
            case 9: return "To avoid any " + noun() + ", please " + verb() + " your " + noun() +
                           " " + adv() + ".";
            case 10: return "If you have any questions, please contact our support team.";
            case 11: return "Our team remains available to assist you.";
            case 12: return "Protecting your " + noun() + " is our highest priority.";
            case 13: return detail::capitalize(verb()) + " your " + noun() +
                            " to keep your " + noun() + " safe.";
            case 14: return "You may notice " + adj() + " activity, so please act " + adv() + ".";
            case 15: return "Please visit " + url() + " to " + verb() + " your " + noun() + ".";
            case 16: return rng_.below(3) == 0
                                ? "Completing the " + noun() + " within 48 hours ensures " +
                                      adj() + " access."
                                : "Completing the " + noun() + " ensures " + adj() + " access.";
            case 17: return "We thank you for helping us maintain " + adj() + " " + noun() + ".";
            case 18: return "Act now to " + verb() + " your " + noun() + ".";
            default: return "Your prompt response ensures " + adj() + " service.";
        }
    }

    detail::Rng rng_;
};

// ------------------------------------------------------------- Enron class

class EnronEmailGenerator {
  public:
    explicit EnronEmailGenerator(uint64_t seed) : rng_(seed) {}

    std::string make(size_t target_chars) {
        using namespace detail;
        EmailBuilder b;
        b.greeting = rng_.below(3) == 0 ? pick(rng_, kFirstNames) + "," : "Hi " +
                     std::string(pick(rng_, kFirstNames)) + ",";
        b.closing = std::string(rng_.below(2) == 0 ? "Thanks," : "Regards,") + "\n" +
                    pick(rng_, kFirstNames);
        while (b.length_with_code(0) + 30 < target_chars) b.sentences.push_back(sentence());
        return b.assemble_with_code("");
    }

  private:
    std::string noun() {
        static const std::vector<std::string> nouns = {
            "gas", "power", "market", "price", "deal", "desk", "meeting", "report",
            "contract", "schedule", "group", "plant", "rate", "cost", "trade", "book",
            "curve", "note", "call", "plan"};
        return detail::pick(rng_, nouns);
    }

    std::string past() {
        static const std::vector<std::string> verbs = {
            "talked", "called", "said", "sent", "met", "asked", "agreed", "looked",
            "checked", "signed", "moved", "worked"};
        return detail::pick(rng_, verbs);
    }

    std::string num() { return std::to_string(2 + rng_.below(28)); }

    std::string sentence() {
        const std::string name = detail::pick(rng_, detail::kFirstNames);
        switch (rng_.below(8)) {
            case 0: return "I " + past() + " to " + name + " about the " + noun() +
                           " deal and he said the numbers look good for next week.";
            case 1: return "The " + noun() + " meeting moved to " + num() +
                           " on Thursday so send me the final " + noun() + " numbers by noon.";
            case 2: return "We got the revised " + noun() + " back from the " + noun() +
                           " desk and it looks fine to me.";
            case 3: return "Can you check the " + noun() + " for " + num() +
                           " and let me know if the " + noun() + " is still open?";
            case 4: return name + " " + past() + " me a note on the " + noun() +
                           " and we need to close the " + noun() + " book by Friday.";
            case 5: return "I " + past() + " the " + noun() + " report this morning and the " +
                           noun() + " came in at " + num() + " over plan.";
            case 6: return "Let me know if " + num() + " works for the call on the " + noun() +
                           " deal with the " + noun() + " group.";
            default: return "We " + past() + " the " + noun() + " plan last week and " + name +
                            " wants the " + noun() + " numbers by " + num() + " today.";
        }
    }

    detail::Rng rng_;
};

// ---------------------------------------------------------- Ling-Spam class

class LingEmailGenerator {
  public:
    explicit LingEmailGenerator(uint64_t seed) : rng_(seed) {}

    std::string make(size_t target_chars) {
        using namespace detail;
        EmailBuilder b;
        b.greeting = rng_.below(2) == 0 ? "Dear colleagues," : "Dear list members,";
        b.closing = "The organizing committee";
        while (b.length_with_code(0) + 30 < target_chars) b.sentences.push_back(sentence());
        return b.assemble_with_code("");
    }

  private:
    std::string noun() {
        static const std::vector<std::string> nouns = {
            "syntax", "semantics", "phonology", "grammar", "language", "linguistics",
            "workshop", "conference", "session", "abstract", "paper", "deadline",
            "registration", "discourse", "corpus", "speaker", "lecture", "journal",
            "volume", "theory", "research", "program", "submission", "committee", "session"};
        return detail::pick(rng_, nouns);
    }

    std::string place() {
        static const std::vector<std::string> places = {"Texas", "Leiden", "Prague", "Toronto",
                                                        "Geneva", "Osaka", "Dublin", "Bergen"};
        return detail::pick(rng_, places);
    }

    std::string num() { return std::to_string(2 + rng_.below(28)); }

    std::string sentence() {
        switch (rng_.below(8)) {
            case 0: return "The " + noun() + " workshop on " + noun() + " and " + noun() +
                           " will be held at the university of " + place() + " on " +
                           detail::pick(rng_, detail::kMonths) + " " + num() + ".";
            case 1: return "Abstracts of " + std::to_string(150 + 50 * rng_.below(6)) +
                           " words on " + noun() + " should reach the " + noun() +
                           " committee by " + detail::pick(rng_, detail::kMonths) + " " +
                           num() + ".";
            case 2: return "The " + noun() + " session includes a lecture on " + noun() +
                           " in the " + noun() + " of natural language and a panel on " +
                           noun() + ".";
            case 3: return "Registration for the " + noun() + " program costs " +
                           std::to_string(20 + 5 * rng_.below(16)) +
                           " dollars for students and covers the " + noun() + " volume.";
            case 4: return "Papers on the " + noun() + " of " + noun() +
                           " are invited for a special issue of the " + noun() + " journal.";
            case 5: return "The call for papers on " + noun() + " and " + noun() +
                           " in second language " + noun() + " closes on " +
                           detail::pick(rng_, detail::kMonths) + " " + num() + ".";
            case 6: return "A new " + noun() + " corpus with " +
                           std::to_string(100 + rng_.below(900)) +
                           " annotated texts in " + num() + " languages is now available to the " +
                           noun() + " community.";
            default: return "The " + noun() + " committee invites proposals on the " + noun() +
                            " of " + noun() + " for the " + num() + " annual meeting.";
        }
    }

    detail::Rng rng_;
};

// ----------------------------------------------------------- Nigerian class

class NigerianEmailGenerator {
  public:
    explicit NigerianEmailGenerator(uint64_t seed) : rng_(seed) {}

    std::string make(size_t target_chars) {
        using namespace detail;
        EmailBuilder b;
        b.greeting = rng_.below(2) == 0 ? "Dear friend," : "ATTENTION: Dear sir,";
        b.closing = std::string("Yours faithfully,") + "\n" + pick(rng_, kFirstNames) + " " +
                    pick(rng_, kLastNames);
        while (b.length_with_code(0) + 30 < target_chars) b.sentences.push_back(sentence());
        return b.assemble_with_code("");
    }

  private:
    std::string noun() {
        static const std::vector<std::string> nouns = {
            "money", "funds", "bank", "account", "transfer", "sum", "country", "family",
            "business", "partner", "fee", "share", "deal", "lawyer", "papers", "trust",
            "box", "estate", "firm", "oil"};
        return detail::pick(rng_, nouns);
    }

    std::string neg() {
        static const std::vector<std::string> negs = {"death", "crisis", "problem", "risk",
                                                      "fear", "trouble", "danger"};
        return detail::pick(rng_, negs);
    }

    std::string amount() {
        return std::to_string(2 + rng_.below(40)) + "," + std::to_string(100 + rng_.below(900)) +
               ",000";
    }

    std::string sentence() {
        const std::string name = detail::pick(rng_, detail::kLastNames);
        switch (rng_.below(8)) {
            case 0: return "I am the son of the late chief " + name +
                           " and I need your help to move the sum of " + amount() +
                           " dollars out of my country.";
            case 1: return "My late father left the " + noun() + " of " + amount() +
                           " dollars in a " + noun() + " before the " + neg() +
                           " took him from us.";
            case 2: return "This deal is 100 percent safe but the " + neg() + " of the " +
                           noun() + " means we must act with CONFIDENTIAL speed and trust.";
            case 3: return "I got your contact from the chamber of commerce and I know the " +
                           neg() + " of this " + noun() + " will not stop an honest partner.";
            case 4: return "You will keep 30 percent of the " + noun() +
                           " as your share and the rest of the money stays for my family.";
            case 5: return "The " + noun() + " manager asked for a small fee of " +
                           std::to_string(100 + 50 * rng_.below(18)) +
                           " dollars before he can release the " + noun() + " to you.";
            case 6: return "Please send your bank details and phone number so my lawyer " +
                           name + " can prepare the " + noun() + " papers without any " +
                           neg() + ".";
            default: return "I sent you this URGENT message in good faith because the " +
                            neg() + " in my country left the " + noun() +
                            " in danger of seizure.";
        }
    }

    detail::Rng rng_;
};

// --------------------------------------------------------------- top level

// Writes <root>/<class>/email_NNNN.txt for the four classes. The AI class
// is pinned to the published corpus statistics: exact minimum 280, exact
// maximum 1810, mean length 545 via a running character budget.
inline void write_fixture_corpus(const std::filesystem::path& root,
                                 const FixtureOptions& opts = {}) {
    namespace fs = std::filesystem;
    using detail::Rng;

    auto write_doc = [](const fs::path& dir, size_t i, const std::string& text) {
        char name[32];
        std::snprintf(name, sizeof(name), "email_%04zu.txt", i);
        std::ofstream f(dir / name, std::ios::binary);
        f << text;
    };

    {  // ai_generated
        const fs::path dir = root / "ai_generated";
        fs::create_directories(dir);
        AiEmailGenerator gen(Rng::derive(opts.seed, 1));
        Rng lens(Rng::derive(opts.seed, 101));
        const uint64_t total_budget = 545 * static_cast<uint64_t>(opts.ai_count);
        uint64_t used = 280 + 1810;  // the two pinned extremes
        write_doc(dir, 0, gen.make(280, true));
        write_doc(dir, 1, gen.make(1810, true));
        for (size_t i = 2; i < opts.ai_count; ++i) {
            const size_t remaining = opts.ai_count - i;
            const double budget_mean =
                static_cast<double>(total_budget - used) / static_cast<double>(remaining);
            const bool last = i + 1 == opts.ai_count;
            // the final email absorbs the budget error exactly
            double target = last ? budget_mean : budget_mean + lens.normal() * 95.0;
            target = std::min(std::max(target, 320.0), 840.0);
            const std::string text = gen.make(static_cast<size_t>(target), last);
            used += text.size();
            write_doc(dir, i, text);
        }
    }
    {  // enron
        const fs::path dir = root / "enron";
        fs::create_directories(dir);
        EnronEmailGenerator gen(Rng::derive(opts.seed, 2));
        Rng lens(Rng::derive(opts.seed, 102));
        for (size_t i = 0; i < opts.enron_count; ++i) {
            double target = 640 + lens.normal() * 160;
            target = std::min(std::max(target, 260.0), 1500.0);
            write_doc(dir, i, gen.make(static_cast<size_t>(target)));
        }
    }
    {  // ling_spam
        const fs::path dir = root / "ling_spam";
        fs::create_directories(dir);
        LingEmailGenerator gen(Rng::derive(opts.seed, 3));
        Rng lens(Rng::derive(opts.seed, 103));
        for (size_t i = 0; i < opts.ling_count; ++i) {
            double target = 760 + lens.normal() * 180;
            target = std::min(std::max(target, 300.0), 1700.0);
            write_doc(dir, i, gen.make(static_cast<size_t>(target)));
        }
    }
    {  // nigerian
        const fs::path dir = root / "nigerian";
        fs::create_directories(dir);
        NigerianEmailGenerator gen(Rng::derive(opts.seed, 4));
        Rng lens(Rng::derive(opts.seed, 104));
        for (size_t i = 0; i < opts.nigerian_count; ++i) {
            double target = 820 + lens.normal() * 190;
            target = std::min(std::max(target, 320.0), 1650.0);
            write_doc(dir, i, gen.make(static_cast<size_t>(target)));
        }
    }
}

}  // namespace styloguard::fixtures

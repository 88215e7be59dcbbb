#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "styloguard/hash.hpp"
#include "styloguard/text.hpp"
#include "styloguard/token.hpp"

namespace styloguard {

// Resolution order: explicit argument, STYLOGUARD_DATA_DIR, compiled default.
inline std::string resolve_data_dir(const std::string& override_dir = "") {
    if (!override_dir.empty()) return override_dir;
    if (const char* env = std::getenv("STYLOGUARD_DATA_DIR"); env && *env) return env;
#ifdef STYLOGUARD_DEFAULT_DATA_DIR
    return STYLOGUARD_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

// All rule lexicons, loaded once and shared read-only. Content hashes are
// carried into reports so a run records exactly which word lists it used.
class Lexicons {
  public:
    explicit Lexicons(const std::string& data_dir = "") {
        const std::string dir = resolve_data_dir(data_dir);
        load_set(dir + "/stopwords.txt", stopwords_, "stopwords");
        load_set(dir + "/positive_words.txt", positive_, "positive_words");
        load_set(dir + "/negative_words.txt", negative_, "negative_words");
        load_set(dir + "/verb_stems.txt", verb_stems_, "verb_stems");
        load_set(dir + "/abbreviations.txt", abbreviations_, "abbreviations");
        load_list(dir + "/emoticons.txt", emoticons_, "emoticons");
        load_pairs(dir + "/irregular_forms.txt", irregular_, "irregular_forms");

        std::string blob = read_file(dir + "/closed_class.txt");
        hashes_["closed_class"] = hex64(fnv1a64(blob));
        std::istringstream in(blob);
        std::string line;
        while (std::getline(in, line)) {
            const auto tab = line.find('\t');
            if (tab == std::string::npos) continue;
            closed_class_[line.substr(0, tab)] = tag_from_name(line.substr(tab + 1));
        }
    }

    bool is_stopword(const std::string& lemma) const { return stopwords_.count(lemma) > 0; }
    bool is_positive(const std::string& lemma) const { return positive_.count(lemma) > 0; }
    bool is_negative(const std::string& lemma) const { return negative_.count(lemma) > 0; }

    // the stem list plus the closed-class base verbs
    bool is_verb_stem(const std::string& w) const {
        if (verb_stems_.count(w) > 0) return true;
        auto it = closed_class_.find(w);
        return it != closed_class_.end() && it->second == PosTag::VB;
    }
    bool is_abbreviation(const std::string& w) const { return abbreviations_.count(w) > 0; }

    const PosTag* closed_class_tag(const std::string& w) const {
        auto it = closed_class_.find(w);
        return it == closed_class_.end() ? nullptr : &it->second;
    }
    const std::string* irregular_lemma(const std::string& w) const {
        auto it = irregular_.find(w);
        return it == irregular_.end() ? nullptr : &it->second;
    }

    const std::vector<std::string>& emoticons() const { return emoticons_; }
    const std::map<std::string, std::string>& content_hashes() const { return hashes_; }
    uint64_t stopword_hash() const { return fnv1a64(hashes_.at("stopwords")); }

  private:
    static std::string read_file(const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open lexicon file: " + path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    void load_set(const std::string& path, std::unordered_set<std::string>& out,
                  const std::string& name) {
        std::string blob = read_file(path);
        hashes_[name] = hex64(fnv1a64(blob));
        std::istringstream in(blob);
        std::string line;
        while (std::getline(in, line)) {
            auto t = trim_view(line);
            if (!t.empty()) out.emplace(t);
        }
    }

    void load_list(const std::string& path, std::vector<std::string>& out,
                   const std::string& name) {
        std::string blob = read_file(path);
        hashes_[name] = hex64(fnv1a64(blob));
        std::istringstream in(blob);
        std::string line;
        while (std::getline(in, line)) {
            auto t = trim_view(line);
            if (!t.empty()) out.emplace_back(t);
        }
    }

    void load_pairs(const std::string& path, std::unordered_map<std::string, std::string>& out,
                    const std::string& name) {
        std::string blob = read_file(path);
        hashes_[name] = hex64(fnv1a64(blob));
        std::istringstream in(blob);
        std::string line;
        while (std::getline(in, line)) {
            const auto tab = line.find('\t');
            if (tab == std::string::npos) continue;
            out[line.substr(0, tab)] = line.substr(tab + 1);
        }
    }

    std::unordered_set<std::string> stopwords_, positive_, negative_, verb_stems_, abbreviations_;
    std::vector<std::string> emoticons_;
    std::unordered_map<std::string, std::string> irregular_;
    std::unordered_map<std::string, PosTag> closed_class_;
    std::map<std::string, std::string> hashes_;
};

}  // namespace styloguard

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "styloguard/hash.hpp"
#include "styloguard/parallel.hpp"
#include "styloguard/text.hpp"

namespace styloguard {

struct EmailDocument {
    std::string id;           // stable, derived from the path relative to the corpus root
    std::string raw_text;     // decoded body, lossy UTF-8
    std::string label;
    std::string source_path;
    uint64_t char_length = 0; // code points of raw_text
};

struct ManifestEntry {
    std::string id;
    std::string source_path;
    std::string label;
};

struct CorpusManifest {
    std::vector<std::string> classes;          // ordered
    std::vector<ManifestEntry> documents;      // lexicographic by path within class order
    std::map<std::string, size_t> per_class_counts;
    uint64_t decode_replacements = 0;
    uint64_t skipped_empty = 0;

    std::vector<std::string> ids_of_class(const std::string& cls) const {
        std::vector<std::string> out;
        for (const auto& d : documents)
            if (d.label == cls) out.push_back(d.id);
        return out;
    }
};

struct IngestOptions {
    bool strip_headers = false;  // drop everything up to the first blank line
    unsigned threads = 1;
};

namespace detail {

inline std::string strip_header_block(const std::string& text) {
    size_t pos = text.find("\n\n");
    const size_t pos_crlf = text.find("\r\n\r\n");
    if (pos_crlf != std::string::npos && (pos == std::string::npos || pos_crlf < pos))
        pos = pos_crlf + 2;
    if (pos == std::string::npos) return text;
    return text.substr(pos + 2);
}

inline std::string read_binary(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read file: " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace detail

// Loads one class directory: every regular *.txt (any extension accepted)
// file in lexicographic path order. Non-decodable bytes are replaced and
// tallied; whitespace-only files are skipped.
inline std::vector<EmailDocument> load_class_documents(
    const std::filesystem::path& root, const std::string& cls, const std::string& subdir,
    const IngestOptions& opts, uint64_t& replacements, uint64_t& skipped) {
    namespace fs = std::filesystem;
    const fs::path dir = root / subdir;
    if (!fs::exists(dir) || !fs::is_directory(dir))
        throw std::runtime_error("corpus class directory missing: " + dir.string());

    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<EmailDocument> docs(files.size());
    std::vector<uint64_t> reps(files.size(), 0);
    std::vector<char> empty(files.size(), 0);
    parallel_for(files.size(), opts.threads, [&](size_t i) {
        std::string bytes = detail::read_binary(files[i]);
        if (opts.strip_headers) bytes = detail::strip_header_block(bytes);
        DecodedText dec = sanitize_utf8(bytes);
        reps[i] = dec.replacements;
        if (trim_view(dec.text).empty()) { empty[i] = 1; return; }
        EmailDocument d;
        d.id = cls + "/" + files[i].filename().string();
        d.raw_text = std::move(dec.text);
        d.char_length = dec.char_count;
        d.label = cls;
        d.source_path = files[i].string();
        docs[i] = std::move(d);
    });

    std::vector<EmailDocument> out;
    out.reserve(docs.size());
    for (size_t i = 0; i < docs.size(); ++i) {
        replacements += reps[i];
        if (empty[i]) { ++skipped; continue; }
        out.push_back(std::move(docs[i]));
    }
    return out;
}

struct Corpus {
    CorpusManifest manifest;
    std::vector<EmailDocument> documents;  // same order as manifest.documents

    const EmailDocument& by_id(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw std::runtime_error("unknown document id: " + id);
        return documents[it->second];
    }
    void build_index() {
        index_.clear();
        for (size_t i = 0; i < documents.size(); ++i) index_[documents[i].id] = i;
    }

  private:
    std::map<std::string, size_t> index_;
};

// class_layout maps class name -> subdirectory under root. Deterministic:
// classes keep the given order, files sort lexicographically.
inline Corpus ingest_directory(const std::filesystem::path& root,
                               const std::vector<std::pair<std::string, std::string>>& class_layout,
                               const IngestOptions& opts = {}) {
    Corpus corpus;
    for (const auto& [cls, subdir] : class_layout) {
        auto docs = load_class_documents(root, cls, subdir, opts, corpus.manifest.decode_replacements,
                                         corpus.manifest.skipped_empty);
        if (docs.empty())
            throw std::runtime_error("class '" + cls + "' has zero usable documents");
        corpus.manifest.classes.push_back(cls);
        corpus.manifest.per_class_counts[cls] = docs.size();
        for (auto& d : docs) {
            corpus.manifest.documents.push_back({d.id, d.source_path, d.label});
            corpus.documents.push_back(std::move(d));
        }
    }
    corpus.build_index();
    return corpus;
}

// Auto-discovers one class per subdirectory of root. A flat directory of
// files is treated as a single class named after the directory.
inline std::vector<std::pair<std::string, std::string>> discover_class_layout(
    const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    if (!fs::exists(root) || !fs::is_directory(root))
        throw std::runtime_error("corpus root missing: " + root.string());
    std::vector<std::pair<std::string, std::string>> layout;
    bool has_files = false;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory())
            layout.emplace_back(entry.path().filename().string(), entry.path().filename().string());
        else if (entry.is_regular_file())
            has_files = true;
    }
    std::sort(layout.begin(), layout.end());
    if (layout.empty()) {
        if (!has_files)
            throw std::runtime_error("no class subdirectories or files under " + root.string());
        const fs::path norm = fs::absolute(root).lexically_normal();
        std::string name = norm.filename().string();
        if (name.empty() || name == ".") name = norm.parent_path().filename().string();
        if (name.empty()) name = "corpus";
        layout.emplace_back(name, ".");
    }
    return layout;
}

struct ClassStats {
    double mean = 0;
    uint64_t min = 0;
    uint64_t max = 0;
    size_t count = 0;
};

// Per-class {mean,min,max,count} of char_length. Order-independent.
inline std::map<std::string, ClassStats> corpus_stats(const Corpus& corpus) {
    if (corpus.documents.empty()) throw std::runtime_error("corpus_stats: empty corpus");
    std::map<std::string, ClassStats> out;
    for (const auto& d : corpus.documents) {
        ClassStats& s = out[d.label];
        if (s.count == 0) { s.min = d.char_length; s.max = d.char_length; }
        s.min = std::min(s.min, d.char_length);
        s.max = std::max(s.max, d.char_length);
        s.mean += static_cast<double>(d.char_length);
        ++s.count;
    }
    for (auto& [cls, s] : out) s.mean /= static_cast<double>(s.count);
    return out;
}

inline nlohmann::json manifest_to_json(const CorpusManifest& m) {
    nlohmann::json docs = nlohmann::json::array();
    for (const auto& d : m.documents)
        docs.push_back({{"id", d.id}, {"path", d.source_path}, {"label", d.label}});
    return {{"classes", m.classes},
            {"documents", docs},
            {"decode_replacements", m.decode_replacements},
            {"skipped_empty", m.skipped_empty}};
}

inline uint64_t manifest_hash(const CorpusManifest& m) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& d : m.documents) {
        h = fnv1a64(d.id, h);
        h = fnv1a64(d.label, h);
    }
    return h;
}

}  // namespace styloguard

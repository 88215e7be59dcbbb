#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "styloguard/rng.hpp"
#include "styloguard/token.hpp"
#include "styloguard/vocabulary.hpp"

namespace styloguard {

inline constexpr uint32_t kLstmVocabCap = 19999;  // +1 pad row = 20000
inline constexpr uint32_t kLstmSeqLen = 50;

// Index sequence with tail padding; index 0 is the pad value.
struct SequenceEncoding {
    std::vector<uint32_t> indices;
    std::vector<uint8_t> mask;
    uint32_t valid = 0;
};

// Lemma indices shifted by one, out-of-vocabulary lemmata dropped, the
// first max_len kept, tail padded.
inline SequenceEncoding encode_sequence(const AnnotatedDocument& doc, const Vocabulary& vocab,
                                        uint32_t max_len = kLstmSeqLen) {
    SequenceEncoding enc;
    enc.indices.assign(max_len, 0);
    enc.mask.assign(max_len, 0);
    for (const Token& t : doc.tokens) {
        if (enc.valid >= max_len) break;
        if (t.kind != TokenKind::Word) continue;
        auto it = vocab.index.find(t.lemma);
        if (it == vocab.index.end()) continue;
        enc.indices[enc.valid] = it->second + 1;
        enc.mask[enc.valid] = 1;
        ++enc.valid;
    }
    return enc;
}

// Gate parameter layout: the 4H columns hold (i, f, g, o) blocks in that
// order. W maps the embedded input, U the previous hidden state.
template <typename T>
struct LstmModel {
    uint32_t vocab_rows = 0;  // V+1; row 0 is the pad embedding
    uint32_t embed_dim = 100;
    uint32_t hidden_dim = 100;
    uint32_t classes = 2;
    uint32_t seq_len = kLstmSeqLen;
    T dropout = T(0.2);
    T recurrent_dropout = T(0.2);
    std::vector<T> embedding;  // vocab_rows x embed_dim
    std::vector<T> W;          // embed_dim x 4H
    std::vector<T> U;          // hidden_dim x 4H
    std::vector<T> b;          // 4H
    std::vector<T> Wd;         // hidden_dim x classes
    std::vector<T> bd;         // classes
    std::vector<std::string> class_names;
    std::vector<std::string> vocab_terms;

    size_t param_count() const {
        return embedding.size() + W.size() + U.size() + b.size() + Wd.size() + bd.size();
    }
};

namespace lstm_detail {

template <typename T>
inline T sigmoid(T x) { return T(1) / (T(1) + std::exp(-x)); }

// C[m x n] += A[m x k] * B[k x n], all row-major
template <typename T>
inline void gemm_nn(const T* A, const T* B, T* C, size_t m, size_t k, size_t n) {
    for (size_t i = 0; i < m; ++i) {
        const T* a = A + i * k;
        T* c = C + i * n;
        for (size_t p = 0; p < k; ++p) {
            const T av = a[p];
            if (av == T(0)) continue;
            const T* brow = B + p * n;
            for (size_t j = 0; j < n; ++j) c[j] += av * brow[j];
        }
    }
}

// C[k x n] += A^T * B where A is m x k, B is m x n
template <typename T>
inline void gemm_tn(const T* A, const T* B, T* C, size_t m, size_t k, size_t n) {
    for (size_t i = 0; i < m; ++i) {
        const T* a = A + i * k;
        const T* brow = B + i * n;
        for (size_t p = 0; p < k; ++p) {
            const T av = a[p];
            if (av == T(0)) continue;
            T* c = C + p * n;
            for (size_t j = 0; j < n; ++j) c[j] += av * brow[j];
        }
    }
}

// C[m x k] += A[m x n] * B^T where B is k x n
template <typename T>
inline void gemm_nt(const T* A, const T* B, T* C, size_t m, size_t n, size_t k) {
    for (size_t i = 0; i < m; ++i) {
        const T* a = A + i * n;
        T* c = C + i * k;
        for (size_t p = 0; p < k; ++p) {
            const T* brow = B + p * n;
            T acc = T(0);
            for (size_t j = 0; j < n; ++j) acc += a[j] * brow[j];
            c[p] += acc;
        }
    }
}

template <typename T>
inline void softmax_row(T* z, size_t n) {
    T mx = z[0];
    for (size_t i = 1; i < n; ++i) mx = std::max(mx, z[i]);
    T sum = T(0);
    for (size_t i = 0; i < n; ++i) { z[i] = std::exp(z[i] - mx); sum += z[i]; }
    for (size_t i = 0; i < n; ++i) z[i] /= sum;
}

// Scratch buffers for one batched forward/backward pass.
template <typename T>
struct BatchWork {
    size_t B = 0, S = 0, E = 0, H = 0;
    std::vector<uint32_t> idx;     // B x S token indices
    std::vector<uint8_t> mask;     // B x S
    std::vector<T> x;              // S x B x E embedded (after input dropout)
    std::vector<T> gates;          // S x B x 4H post-activation
    std::vector<T> cells;          // S x B x H
    std::vector<T> hidden;         // S x B x H
    std::vector<T> xmask;          // B x E inverted-dropout factors (0 or 1/(1-p))
    std::vector<T> hmask;          // B x H recurrent factors
    std::vector<T> probs;          // B x C
    void resize(size_t b, size_t s, size_t e, size_t h, size_t c) {
        B = b; S = s; E = e; H = h;
        idx.assign(b * s, 0);
        mask.assign(b * s, 0);
        x.assign(s * b * e, T(0));
        gates.assign(s * b * 4 * h, T(0));
        cells.assign(s * b * h, T(0));
        hidden.assign(s * b * h, T(0));
        xmask.assign(b * e, T(1));
        hmask.assign(b * h, T(1));
        probs.assign(b * c, T(0));
    }
};

// Forward over a batch. Pad steps copy state through unchanged. Returns the
// mean cross-entropy; fills work.probs.
template <typename T>
inline double batch_forward(const LstmModel<T>& m, BatchWork<T>& w,
                            const std::vector<uint32_t>* labels) {
    const size_t B = w.B, S = w.S, E = w.E, H = w.H, G = 4 * H, C = m.classes;
    // embed (input dropout factors are premultiplied into x)
    for (size_t s = 0; s < S; ++s)
        for (size_t i = 0; i < B; ++i) {
            const uint32_t id = w.idx[i * S + s];
            T* dst = &w.x[(s * B + i) * E];
            if (!w.mask[i * S + s]) continue;
            const T* src = &m.embedding[id * E];
            const T* xm = &w.xmask[i * E];
            for (size_t e = 0; e < E; ++e) dst[e] = src[e] * xm[e];
        }

    std::vector<T> z(B * G), htilde(B * H);
    std::vector<T> h_prev(B * H, T(0)), c_prev(B * H, T(0));
    for (size_t s = 0; s < S; ++s) {
        for (size_t i = 0; i < B; ++i) {
            const T* hm = &w.hmask[i * H];
            const T* hp = &h_prev[i * H];
            T* ht = &htilde[i * H];
            for (size_t j = 0; j < H; ++j) ht[j] = hp[j] * hm[j];
        }
        for (size_t i = 0; i < B; ++i) std::memcpy(&z[i * G], m.b.data(), G * sizeof(T));
        gemm_nn(&w.x[s * B * E], m.W.data(), z.data(), B, E, G);
        gemm_nn(htilde.data(), m.U.data(), z.data(), B, H, G);

        T* gate = &w.gates[s * B * G];
        T* cell = &w.cells[s * B * H];
        T* hid = &w.hidden[s * B * H];
        for (size_t i = 0; i < B; ++i) {
            if (!w.mask[i * S + s]) {  // pad: state unchanged
                std::memcpy(&cell[i * H], &c_prev[i * H], H * sizeof(T));
                std::memcpy(&hid[i * H], &h_prev[i * H], H * sizeof(T));
                std::memset(&gate[i * G], 0, G * sizeof(T));
                continue;
            }
            const T* zi = &z[i * G];
            T* g = &gate[i * G];
            for (size_t j = 0; j < H; ++j) {
                const T gi = sigmoid(zi[j]);
                const T gf = sigmoid(zi[H + j]);
                const T gg = std::tanh(zi[2 * H + j]);
                const T go = sigmoid(zi[3 * H + j]);
                g[j] = gi; g[H + j] = gf; g[2 * H + j] = gg; g[3 * H + j] = go;
                const T c = gf * c_prev[i * H + j] + gi * gg;
                cell[i * H + j] = c;
                hid[i * H + j] = go * std::tanh(c);
                if (!std::isfinite(static_cast<double>(c)))
                    throw std::runtime_error("lstm: non-finite activation at step " +
                                             std::to_string(s));
            }
        }
        std::memcpy(h_prev.data(), hid, B * H * sizeof(T));
        std::memcpy(c_prev.data(), cell, B * H * sizeof(T));
    }

    // dense head on the final hidden state
    for (size_t i = 0; i < B; ++i) std::memcpy(&w.probs[i * C], m.bd.data(), C * sizeof(T));
    gemm_nn(h_prev.data(), m.Wd.data(), w.probs.data(), B, H, C);
    double loss = 0;
    for (size_t i = 0; i < B; ++i) {
        softmax_row(&w.probs[i * C], C);
        if (labels)
            loss -= std::log(std::max(static_cast<double>(w.probs[i * C + (*labels)[i]]), 1e-300));
    }
    return labels ? loss / static_cast<double>(B) : 0.0;
}

template <typename T>
struct Gradients {
    std::vector<T> embedding, W, U, b, Wd, bd;
    void match(const LstmModel<T>& m) {
        embedding.assign(m.embedding.size(), T(0));
        W.assign(m.W.size(), T(0));
        U.assign(m.U.size(), T(0));
        b.assign(m.b.size(), T(0));
        Wd.assign(m.Wd.size(), T(0));
        bd.assign(m.bd.size(), T(0));
    }
};

// Backpropagation through time over the full sequence length. Must be
// called right after batch_forward on the same work buffers.
template <typename T>
inline void batch_backward(const LstmModel<T>& m, BatchWork<T>& w,
                           const std::vector<uint32_t>& labels, Gradients<T>& g) {
    const size_t B = w.B, S = w.S, E = w.E, H = w.H, G = 4 * H, C = m.classes;
    const T invB = T(1) / static_cast<T>(B);

    // dense head
    std::vector<T> dlogits(B * C);
    for (size_t i = 0; i < B; ++i)
        for (size_t c = 0; c < C; ++c)
            dlogits[i * C + c] = (w.probs[i * C + c] - (c == labels[i] ? T(1) : T(0))) * invB;
    const T* h_final = &w.hidden[(S - 1) * B * H];
    gemm_tn(h_final, dlogits.data(), g.Wd.data(), B, H, C);
    for (size_t i = 0; i < B; ++i)
        for (size_t c = 0; c < C; ++c) g.bd[c] += dlogits[i * C + c];

    std::vector<T> dh(B * H, T(0)), dc(B * H, T(0));
    gemm_nt(dlogits.data(), m.Wd.data(), dh.data(), B, C, H);

    std::vector<T> dz(B * G), htilde(B * H), dh_next(B * H), dc_next(B * H), dx(B * E);
    for (size_t s = S; s-- > 0;) {
        const T* gate = &w.gates[s * B * G];
        const T* cell = &w.cells[s * B * H];
        const T* c_prev = s > 0 ? &w.cells[(s - 1) * B * H] : nullptr;
        const T* h_prev = s > 0 ? &w.hidden[(s - 1) * B * H] : nullptr;

        std::fill(dz.begin(), dz.end(), T(0));
        std::fill(dh_next.begin(), dh_next.end(), T(0));
        std::fill(dc_next.begin(), dc_next.end(), T(0));

        for (size_t i = 0; i < B; ++i) {
            if (!w.mask[i * S + s]) {  // pad step: gradients pass straight through
                for (size_t j = 0; j < H; ++j) {
                    dh_next[i * H + j] = dh[i * H + j];
                    dc_next[i * H + j] = dc[i * H + j];
                }
                continue;
            }
            const T* gi = &gate[i * G];
            for (size_t j = 0; j < H; ++j) {
                const T ii = gi[j], ff = gi[H + j], gg = gi[2 * H + j], oo = gi[3 * H + j];
                const T c = cell[i * H + j];
                const T tc = std::tanh(c);
                const T cp = c_prev ? c_prev[i * H + j] : T(0);
                const T dhij = dh[i * H + j];
                const T dcell = dhij * oo * (T(1) - tc * tc) + dc[i * H + j];
                const T di = dcell * gg;
                const T df = dcell * cp;
                const T dg = dcell * ii;
                const T doo = dhij * tc;
                dz[i * G + j] = di * ii * (T(1) - ii);
                dz[i * G + H + j] = df * ff * (T(1) - ff);
                dz[i * G + 2 * H + j] = dg * (T(1) - gg * gg);
                dz[i * G + 3 * H + j] = doo * oo * (T(1) - oo);
                dc_next[i * H + j] = dcell * ff;
            }
        }

        // parameter gradients
        gemm_tn(&w.x[s * B * E], dz.data(), g.W.data(), B, E, G);
        if (s > 0) {
            for (size_t i = 0; i < B; ++i) {
                const T* hm = &w.hmask[i * H];
                for (size_t j = 0; j < H; ++j)
                    htilde[i * H + j] = h_prev[i * H + j] * hm[j];
            }
            gemm_tn(htilde.data(), dz.data(), g.U.data(), B, H, G);
        }
        for (size_t i = 0; i < B; ++i)
            for (size_t j = 0; j < G; ++j) g.b[j] += dz[i * G + j];

        // input gradient -> embedding rows
        std::fill(dx.begin(), dx.end(), T(0));
        gemm_nt(dz.data(), m.W.data(), dx.data(), B, G, E);
        for (size_t i = 0; i < B; ++i) {
            if (!w.mask[i * S + s]) continue;
            const uint32_t id = w.idx[i * S + s];
            const T* xm = &w.xmask[i * E];
            T* dst = &g.embedding[id * E];
            for (size_t e = 0; e < E; ++e) dst[e] += dx[i * E + e] * xm[e];
        }

        // hidden gradient through the recurrent term
        if (s > 0) {
            gemm_nt(dz.data(), m.U.data(), dh_next.data(), B, G, H);
            // the U path saw h through the recurrent dropout factors, but the
            // pass-through contribution added above must not
            for (size_t i = 0; i < B; ++i) {
                if (!w.mask[i * S + s]) continue;
                const T* hm = &w.hmask[i * H];
                for (size_t j = 0; j < H; ++j) dh_next[i * H + j] *= hm[j];
            }
        }
        dh.swap(dh_next);
        dc.swap(dc_next);
    }
}

}  // namespace lstm_detail

struct TrainConfig {
    size_t epochs = 10;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    size_t batch_size = 32;
    uint64_t seed = 1;
};

struct EpochStats {
    double loss = 0;
    double accuracy = 0;
};

// Seeded init: uniform [-0.05, 0.05] for embedding/W/U/Wd in that order,
// zero biases except the forget gate at 1.
template <typename T>
inline LstmModel<T> lstm_init(uint32_t vocab_rows, uint32_t embed_dim, uint32_t hidden_dim,
                              uint32_t classes, uint32_t seq_len, uint64_t seed) {
    LstmModel<T> m;
    m.vocab_rows = vocab_rows;
    m.embed_dim = embed_dim;
    m.hidden_dim = hidden_dim;
    m.classes = classes;
    m.seq_len = seq_len;
    Rng rng(Rng::derive(seed, 0xEC0DEDULL));
    auto fill = [&rng](std::vector<T>& v, size_t n) {
        v.resize(n);
        for (auto& x : v) x = static_cast<T>(rng.uniform(-0.05, 0.05));
    };
    fill(m.embedding, static_cast<size_t>(vocab_rows) * embed_dim);
    fill(m.W, static_cast<size_t>(embed_dim) * 4 * hidden_dim);
    fill(m.U, static_cast<size_t>(hidden_dim) * 4 * hidden_dim);
    m.b.assign(4 * static_cast<size_t>(hidden_dim), T(0));
    for (size_t j = 0; j < hidden_dim; ++j) m.b[hidden_dim + j] = T(1);  // forget gate
    fill(m.Wd, static_cast<size_t>(hidden_dim) * classes);
    m.bd.assign(classes, T(0));
    return m;
}

template <typename T>
class AdamState {
  public:
    explicit AdamState(const LstmModel<T>& m) {
        m_.match(m);
        v_.match(m);
    }

    void step(LstmModel<T>& model, const lstm_detail::Gradients<T>& g, const TrainConfig& cfg) {
        ++t_;
        const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t_));
        const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t_));
        update(model.embedding, g.embedding, m_.embedding, v_.embedding, cfg, bc1, bc2);
        update(model.W, g.W, m_.W, v_.W, cfg, bc1, bc2);
        update(model.U, g.U, m_.U, v_.U, cfg, bc1, bc2);
        update(model.b, g.b, m_.b, v_.b, cfg, bc1, bc2);
        update(model.Wd, g.Wd, m_.Wd, v_.Wd, cfg, bc1, bc2);
        update(model.bd, g.bd, m_.bd, v_.bd, cfg, bc1, bc2);
    }

  private:
    static void update(std::vector<T>& p, const std::vector<T>& g, std::vector<T>& m,
                       std::vector<T>& v, const TrainConfig& cfg, double bc1, double bc2) {
        const T b1 = static_cast<T>(cfg.beta1), b2 = static_cast<T>(cfg.beta2);
        const T lr = static_cast<T>(cfg.learning_rate);
        const T eps = static_cast<T>(cfg.eps);
        const T ibc1 = static_cast<T>(1.0 / bc1), ibc2 = static_cast<T>(1.0 / bc2);
        for (size_t i = 0; i < p.size(); ++i) {
            m[i] = b1 * m[i] + (T(1) - b1) * g[i];
            v[i] = b2 * v[i] + (T(1) - b2) * g[i] * g[i];
            p[i] -= lr * (m[i] * ibc1) / (std::sqrt(v[i] * ibc2) + eps);
        }
    }

    lstm_detail::Gradients<T> m_, v_;
    uint64_t t_ = 0;
};

// Full training loop: epoch-level shuffle, fresh per-sequence dropout masks
// each epoch, Adam per batch. Single threaded, deterministic for a seed.
template <typename T>
inline std::vector<EpochStats> lstm_train(LstmModel<T>& model,
                                          const std::vector<SequenceEncoding>& seqs,
                                          const std::vector<uint32_t>& labels,
                                          const TrainConfig& cfg) {
    using namespace lstm_detail;
    if (seqs.empty()) throw std::runtime_error("lstm_train: empty training set");
    const size_t S = model.seq_len, E = model.embed_dim, H = model.hidden_dim;
    AdamState<T> adam(model);
    Gradients<T> grads;
    BatchWork<T> work;
    std::vector<EpochStats> trace;

    std::vector<size_t> order(seqs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        Rng shuffle_rng(Rng::derive(cfg.seed, 0x5A55ULL + epoch));
        Rng drop_rng(Rng::derive(cfg.seed, 0xD705ULL + epoch));
        shuffle_rng.shuffle(order);

        double loss_sum = 0;
        size_t correct = 0, batches = 0;
        for (size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const size_t B = std::min(cfg.batch_size, order.size() - start);
            work.resize(B, S, E, H, model.classes);
            std::vector<uint32_t> ys(B);
            for (size_t i = 0; i < B; ++i) {
                const SequenceEncoding& enc = seqs[order[start + i]];
                ys[i] = labels[order[start + i]];
                std::memcpy(&work.idx[i * S], enc.indices.data(), S * sizeof(uint32_t));
                std::memcpy(&work.mask[i * S], enc.mask.data(), S * sizeof(uint8_t));
                const T keep_x = T(1) - model.dropout;
                const T keep_h = T(1) - model.recurrent_dropout;
                for (size_t e = 0; e < E; ++e)
                    work.xmask[i * E + e] =
                        (model.dropout > T(0) && drop_rng.uniform() < model.dropout)
                            ? T(0) : T(1) / keep_x;
                for (size_t j = 0; j < H; ++j)
                    work.hmask[i * H + j] =
                        (model.recurrent_dropout > T(0) && drop_rng.uniform() < model.recurrent_dropout)
                            ? T(0) : T(1) / keep_h;
            }
            const double loss = batch_forward(model, work, &ys);
            if (!std::isfinite(loss))
                throw std::runtime_error("lstm_train: loss diverged at epoch " +
                                         std::to_string(epoch) + " batch " +
                                         std::to_string(batches));
            for (size_t i = 0; i < B; ++i) {
                uint32_t best = 0;
                for (uint32_t c = 1; c < model.classes; ++c)
                    if (work.probs[i * model.classes + c] > work.probs[i * model.classes + best])
                        best = c;
                correct += best == ys[i];
            }
            grads.match(model);
            batch_backward(model, work, ys, grads);
            adam.step(model, grads, cfg);
            loss_sum += loss * static_cast<double>(B);
            ++batches;
        }
        trace.push_back({loss_sum / static_cast<double>(seqs.size()),
                         static_cast<double>(correct) / static_cast<double>(seqs.size())});
    }
    return trace;
}

// Inference (no dropout), or train-mode with a fixed per-sequence mask.
template <typename T>
inline std::vector<double> lstm_forward(const LstmModel<T>& model, const SequenceEncoding& enc,
                                        bool train_mode = false, uint64_t dropout_seed = 0) {
    using namespace lstm_detail;
    if (enc.indices.size() != model.seq_len)
        throw std::runtime_error("lstm_forward: encoding length does not match the model");
    BatchWork<T> work;
    work.resize(1, model.seq_len, model.embed_dim, model.hidden_dim, model.classes);
    std::memcpy(work.idx.data(), enc.indices.data(), model.seq_len * sizeof(uint32_t));
    std::memcpy(work.mask.data(), enc.mask.data(), model.seq_len * sizeof(uint8_t));
    if (train_mode) {
        Rng rng(Rng::derive(dropout_seed, 0xD705ULL));
        const T keep_x = T(1) - model.dropout;
        const T keep_h = T(1) - model.recurrent_dropout;
        for (size_t e = 0; e < model.embed_dim; ++e)
            work.xmask[e] = (model.dropout > T(0) && rng.uniform() < model.dropout)
                                ? T(0) : T(1) / keep_x;
        for (size_t j = 0; j < model.hidden_dim; ++j)
            work.hmask[j] = (model.recurrent_dropout > T(0) &&
                             rng.uniform() < model.recurrent_dropout)
                                ? T(0) : T(1) / keep_h;
    }
    batch_forward(model, work, nullptr);
    std::vector<double> probs(model.classes);
    for (size_t c = 0; c < model.classes; ++c) probs[c] = static_cast<double>(work.probs[c]);
    return probs;
}

template <typename T>
inline uint32_t lstm_classify(const LstmModel<T>& model, const SequenceEncoding& enc) {
    const auto probs = lstm_forward(model, enc);
    uint32_t best = 0;
    for (uint32_t c = 1; c < model.classes; ++c)
        if (probs[c] > probs[best]) best = c;
    return best;
}

// Compares analytic BPTT gradients with central finite differences over
// every parameter. Double precision, dropout off. zero_u_grad is the
// negative control: it corrupts the analytic U gradient on purpose.
inline double lstm_gradient_check(uint64_t seed, uint32_t vocab_rows = 12, uint32_t embed = 5,
                                  uint32_t hidden = 6, uint32_t classes = 3, uint32_t seq_len = 4,
                                  size_t batch = 3, bool zero_u_grad = false) {
    using namespace lstm_detail;
    using T = double;
    LstmModel<T> m = lstm_init<T>(vocab_rows, embed, hidden, classes, seq_len, seed);
    m.dropout = 0;
    m.recurrent_dropout = 0;
    // random parameters away from the saddle at zero but short of gate
    // saturation, which would leave near-dead parameters whose tiny true
    // gradients drown in finite-difference roundoff
    Rng prng(Rng::derive(seed, 0xFACEULL));
    for (auto* block : {&m.embedding, &m.W, &m.U, &m.b, &m.Wd, &m.bd})
        for (auto& v : *block) v = prng.uniform(-0.35, 0.35);

    Rng rng(Rng::derive(seed, 0xDA7AULL));
    std::vector<SequenceEncoding> seqs(batch);
    std::vector<uint32_t> ys(batch);
    for (size_t i = 0; i < batch; ++i) {
        seqs[i].indices.assign(seq_len, 0);
        seqs[i].mask.assign(seq_len, 0);
        // first sequence runs the full length, the rest exercise the mask path
        seqs[i].valid =
            i == 0 ? seq_len : 2 + static_cast<uint32_t>(rng.below(seq_len - 1));
        for (uint32_t t = 0; t < seqs[i].valid; ++t) {
            seqs[i].indices[t] = 1 + static_cast<uint32_t>(rng.below(vocab_rows - 1));
            seqs[i].mask[t] = 1;
        }
        ys[i] = static_cast<uint32_t>(rng.below(classes));
    }

    BatchWork<T> work;
    work.resize(batch, seq_len, embed, hidden, classes);
    for (size_t i = 0; i < batch; ++i) {
        std::memcpy(&work.idx[i * seq_len], seqs[i].indices.data(), seq_len * sizeof(uint32_t));
        std::memcpy(&work.mask[i * seq_len], seqs[i].mask.data(), seq_len * sizeof(uint8_t));
    }
    Gradients<T> g;
    g.match(m);
    batch_forward(m, work, &ys);
    batch_backward(m, work, ys, g);
    if (zero_u_grad) std::fill(g.U.begin(), g.U.end(), 0.0);

    auto loss_at = [&]() {
        BatchWork<T> w2;
        w2.resize(batch, seq_len, embed, hidden, classes);
        std::memcpy(w2.idx.data(), work.idx.data(), work.idx.size() * sizeof(uint32_t));
        std::memcpy(w2.mask.data(), work.mask.data(), work.mask.size());
        return batch_forward(m, w2, &ys);
    };

    const double h = 1e-5;
    double max_rel = 0;
    auto check_block = [&](std::vector<T>& params, const std::vector<T>& grad) {
        for (size_t i = 0; i < params.size(); ++i) {
            const T orig = params[i];
            params[i] = orig + h;
            const double lp = loss_at();
            params[i] = orig - h;
            const double lm = loss_at();
            params[i] = orig;
            const double numeric = (lp - lm) / (2 * h);
            const double analytic = grad[i];
            const double rel = std::abs(analytic - numeric) /
                               std::max({std::abs(analytic), std::abs(numeric), 1e-12});
            max_rel = std::max(max_rel, rel);
        }
    };
    check_block(m.embedding, g.embedding);
    check_block(m.W, g.W);
    check_block(m.U, g.U);
    check_block(m.b, g.b);
    check_block(m.Wd, g.Wd);
    check_block(m.bd, g.bd);
    return max_rel;
}

// ---- serialization: magic, uint32 JSON header length, JSON header, then
// float32 little-endian parameter blocks in a fixed order.

inline constexpr char kLstmMagic[9] = "SGLSTM01";

template <typename T>
inline void lstm_save(const LstmModel<T>& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write model file: " + path);
    nlohmann::json header = {{"version", 1},
                             {"vocab_rows", m.vocab_rows},
                             {"embed_dim", m.embed_dim},
                             {"hidden_dim", m.hidden_dim},
                             {"classes", m.classes},
                             {"seq_len", m.seq_len},
                             {"dropout", static_cast<double>(m.dropout)},
                             {"recurrent_dropout", static_cast<double>(m.recurrent_dropout)},
                             {"class_names", m.class_names},
                             {"terms", m.vocab_terms},
                             {"blocks", {"embedding", "W", "U", "b", "Wd", "bd"}}};
    const std::string hs = header.dump();
    f.write(kLstmMagic, 8);
    const uint32_t len = static_cast<uint32_t>(hs.size());
    f.write(reinterpret_cast<const char*>(&len), 4);
    f.write(hs.data(), static_cast<std::streamsize>(hs.size()));
    auto write_block = [&f](const std::vector<T>& v) {
        for (T x : v) {
            const float fx = static_cast<float>(x);
            f.write(reinterpret_cast<const char*>(&fx), 4);
        }
    };
    write_block(m.embedding);
    write_block(m.W);
    write_block(m.U);
    write_block(m.b);
    write_block(m.Wd);
    write_block(m.bd);
}

template <typename T>
inline LstmModel<T> lstm_load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read model file: " + path);
    char magic[8];
    f.read(magic, 8);
    if (std::memcmp(magic, kLstmMagic, 8) != 0)
        throw std::runtime_error("not an lstm model file: " + path);
    uint32_t len = 0;
    f.read(reinterpret_cast<char*>(&len), 4);
    std::string hs(len, '\0');
    f.read(hs.data(), len);
    const nlohmann::json header = nlohmann::json::parse(hs);

    LstmModel<T> m;
    m.vocab_rows = header.at("vocab_rows").get<uint32_t>();
    m.embed_dim = header.at("embed_dim").get<uint32_t>();
    m.hidden_dim = header.at("hidden_dim").get<uint32_t>();
    m.classes = header.at("classes").get<uint32_t>();
    m.seq_len = header.at("seq_len").get<uint32_t>();
    m.dropout = static_cast<T>(header.at("dropout").get<double>());
    m.recurrent_dropout = static_cast<T>(header.at("recurrent_dropout").get<double>());
    m.class_names = header.at("class_names").get<std::vector<std::string>>();
    m.vocab_terms = header.at("terms").get<std::vector<std::string>>();
    auto read_block = [&f, &path](std::vector<T>& v, size_t n) {
        v.resize(n);
        for (size_t i = 0; i < n; ++i) {
            float fx = 0;
            f.read(reinterpret_cast<char*>(&fx), 4);
            v[i] = static_cast<T>(fx);
        }
        if (!f) throw std::runtime_error("truncated model file: " + path);
    };
    const size_t H = m.hidden_dim;
    read_block(m.embedding, static_cast<size_t>(m.vocab_rows) * m.embed_dim);
    read_block(m.W, static_cast<size_t>(m.embed_dim) * 4 * H);
    read_block(m.U, H * 4 * H);
    read_block(m.b, 4 * H);
    read_block(m.Wd, H * m.classes);
    read_block(m.bd, m.classes);
    return m;
}

}  // namespace styloguard

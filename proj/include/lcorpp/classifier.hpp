#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcorpp/confusion.hpp"
#include "lcorpp/dataset.hpp"
#include "lcorpp/errors.hpp"
#include "lcorpp/rng.hpp"

namespace lcorpp {

// LSTM binary sequence classifier for passive intention estimation.
//
// The network reads an instance as a sequence of (x, y) steps, keeps a
// 50-unit hidden layer, and emits one sigmoid output. Output convention:
// the sigmoid is the probability of the *not_interested* class, so the
// training target is 0 for interested and 1 for not_interested.

// Per-gate weights stacked row-wise in the order
// [input gate; forget gate; cell candidate; output gate].
struct LstmParams {
    Eigen::MatrixXd wx;  // 4H x I
    Eigen::MatrixXd wh;  // 4H x H
    Eigen::VectorXd b;   // 4H
    Eigen::VectorXd wy;  // H
    double by = 0.0;

    int input_dim() const { return static_cast<int>(wx.cols()); }
    int hidden_dim() const { return static_cast<int>(wh.cols()); }

    static LstmParams zeros(int input = 2, int hidden = 50) {
        LstmParams p;
        p.wx = Eigen::MatrixXd::Zero(4 * hidden, input);
        p.wh = Eigen::MatrixXd::Zero(4 * hidden, hidden);
        p.b = Eigen::VectorXd::Zero(4 * hidden);
        p.wy = Eigen::VectorXd::Zero(hidden);
        p.by = 0.0;
        return p;
    }

    // Glorot-style uniform init; forget-gate bias starts at 1.
    static LstmParams random_init(Rng& rng, int input = 2, int hidden = 50) {
        LstmParams p = zeros(input, hidden);
        const double rx = std::sqrt(6.0 / double(input + hidden));
        const double rh = std::sqrt(6.0 / double(hidden + hidden));
        const double ry = std::sqrt(6.0 / double(hidden + 1));
        for (int r = 0; r < p.wx.rows(); ++r)
            for (int c = 0; c < p.wx.cols(); ++c) p.wx(r, c) = rng.uniform(-rx, rx);
        for (int r = 0; r < p.wh.rows(); ++r)
            for (int c = 0; c < p.wh.cols(); ++c) p.wh(r, c) = rng.uniform(-rh, rh);
        for (int i = hidden; i < 2 * hidden; ++i) p.b(i) = 1.0;
        for (int i = 0; i < hidden; ++i) p.wy(i) = rng.uniform(-ry, ry);
        return p;
    }

    bool all_finite() const {
        return wx.allFinite() && wh.allFinite() && b.allFinite() && wy.allFinite() &&
               std::isfinite(by);
    }
};

// Gradient (or moment) holder with the same shapes as LstmParams.
struct LstmGrads {
    Eigen::MatrixXd wx, wh;
    Eigen::VectorXd b, wy;
    double by = 0.0;

    static LstmGrads zeros_like(const LstmParams& p) {
        LstmGrads g;
        g.wx = Eigen::MatrixXd::Zero(p.wx.rows(), p.wx.cols());
        g.wh = Eigen::MatrixXd::Zero(p.wh.rows(), p.wh.cols());
        g.b = Eigen::VectorXd::Zero(p.b.size());
        g.wy = Eigen::VectorXd::Zero(p.wy.size());
        g.by = 0.0;
        return g;
    }

    bool all_finite() const {
        return wx.allFinite() && wh.allFinite() && b.allFinite() && wy.allFinite() &&
               std::isfinite(by);
    }
};

// flat indexing over (wx, wh, b, wy, by), used by Adam and the gradient check
inline std::size_t param_count(const LstmParams& p) {
    return static_cast<std::size_t>(p.wx.size() + p.wh.size() + p.b.size() + p.wy.size()) +
           1;
}

template <typename Holder>
inline double& param_ref(Holder& h, std::size_t i) {
    std::size_t n = static_cast<std::size_t>(h.wx.size());
    if (i < n) return h.wx.data()[i];
    i -= n;
    n = static_cast<std::size_t>(h.wh.size());
    if (i < n) return h.wh.data()[i];
    i -= n;
    n = static_cast<std::size_t>(h.b.size());
    if (i < n) return h.b.data()[i];
    i -= n;
    n = static_cast<std::size_t>(h.wy.size());
    if (i < n) return h.wy.data()[i];
    i -= n;
    if (i == 0) return h.by;
    throw input_error("parameter index out of range");
}

template <typename Holder>
inline double param_at(const Holder& h, std::size_t i) {
    return param_ref(const_cast<Holder&>(h), i);
}

struct TrainConfig {
    int epochs = 300;
    int batch_size = 32;
    double dropout = 0.2;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps_adam = 1e-8;
    std::uint64_t seed = 7;

    void validate() const {
        if (epochs < 1) throw config_error("train: epochs must be >= 1");
        if (batch_size < 1) throw config_error("train: batch_size must be >= 1");
        if (!(dropout >= 0.0 && dropout < 1.0))
            throw config_error("train: dropout must be in [0,1)");
        if (learning_rate <= 0.0) throw config_error("train: learning rate must be > 0");
        if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0))
            throw config_error("train: Adam betas must be in [0,1)");
        if (eps_adam <= 0.0) throw config_error("train: eps_adam must be > 0");
    }
};

struct AdamState {
    LstmGrads m, v;
    long step = 0;

    static AdamState zeros_like(const LstmParams& p) {
        return AdamState{LstmGrads::zeros_like(p), LstmGrads::zeros_like(p), 0};
    }
};

// Bias-corrected Adam update, epsilon outside the square root.
inline void adam_step(AdamState& st, const LstmGrads& g, LstmParams& p,
                      const TrainConfig& cfg) {
    if (!g.all_finite()) throw numerical_error("adam_step: non-finite gradient");
    ++st.step;
    const double c1 = 1.0 - std::pow(cfg.beta1, double(st.step));
    const double c2 = 1.0 - std::pow(cfg.beta2, double(st.step));
    const std::size_t n = param_count(p);
    for (std::size_t i = 0; i < n; ++i) {
        double& m = param_ref(st.m, i);
        double& v = param_ref(st.v, i);
        const double grad = param_at(g, i);
        m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
        v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad * grad;
        param_ref(p, i) -= cfg.learning_rate * (m / c1) / (std::sqrt(v / c2) + cfg.eps_adam);
    }
}

namespace detail {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// numerically stable binary cross-entropy from the pre-sigmoid logit
inline double bce_from_logit(double z, double y) {
    return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

inline void check_sequence(const LstmParams& p, std::span<const double> features) {
    const auto in = static_cast<std::size_t>(p.input_dim());
    if (features.empty() || features.size() % in != 0)
        throw input_error("sequence length must be a positive multiple of the input dim");
    for (double f : features)
        if (!std::isfinite(f)) throw input_error("non-finite feature value");
}

}  // namespace detail

// Pre-sigmoid logit of a single sequence; hidden state and cell start at zero.
inline double forward_logit(const LstmParams& p, std::span<const double> features) {
    detail::check_sequence(p, features);
    const int H = p.hidden_dim();
    const int I = p.input_dim();
    const auto steps = features.size() / static_cast<std::size_t>(I);

    Eigen::VectorXd h = Eigen::VectorXd::Zero(H);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(H);
    Eigen::VectorXd x(I), pre(4 * H);
    for (std::size_t t = 0; t < steps; ++t) {
        for (int j = 0; j < I; ++j)
            x(j) = features[t * static_cast<std::size_t>(I) + static_cast<std::size_t>(j)];
        pre.noalias() = p.wx * x + p.wh * h + p.b;
        for (int u = 0; u < H; ++u) {
            const double ig = detail::sigmoid(pre(u));
            const double fg = detail::sigmoid(pre(H + u));
            const double gg = std::tanh(pre(2 * H + u));
            const double og = detail::sigmoid(pre(3 * H + u));
            c(u) = fg * c(u) + ig * gg;
            h(u) = og * std::tanh(c(u));
        }
    }
    const double z = p.wy.dot(h) + p.by;
    if (!std::isfinite(z)) throw numerical_error("forward: non-finite activation");
    return z;
}

// Sigmoid output in (0,1); by convention the probability of not_interested.
inline double forward(const LstmParams& p, const Instance& inst) {
    return detail::sigmoid(forward_logit(p, inst.features));
}

inline double bce_loss(const LstmParams& p, std::span<const double> features, double y) {
    return detail::bce_from_logit(forward_logit(p, features), y);
}

namespace detail {

// Forward + backward over a minibatch; sequences in the batch must share one
// length. Returns the mean BCE loss; gradients overwrite `out`.
// `dropout_mask` (B x H, entries 0 or 1/keep) applies to the final hidden
// state only; pass nullptr for inference-style gradients.
inline double batch_bce_gradients(const LstmParams& p,
                                  const std::vector<const Instance*>& batch,
                                  const std::vector<double>& targets,
                                  const Eigen::MatrixXd* dropout_mask, LstmGrads& out) {
    const int H = p.hidden_dim();
    const int I = p.input_dim();
    const int B = static_cast<int>(batch.size());
    if (B == 0) throw input_error("empty minibatch");
    const auto steps = batch[0]->features.size() / static_cast<std::size_t>(I);
    for (const Instance* inst : batch) {
        check_sequence(p, inst->features);
        if (inst->features.size() != steps * static_cast<std::size_t>(I))
            throw input_error("minibatch sequences must share one length");
    }
    const int T = static_cast<int>(steps);

    std::vector<Eigen::MatrixXd> xs(steps), ig(steps), fg(steps), gg(steps), og(steps),
        cs(steps), tc(steps), hs(steps);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(B, H);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(B, H);
    Eigen::MatrixXd pre(B, 4 * H);

    for (int t = 0; t < T; ++t) {
        auto& x = xs[static_cast<std::size_t>(t)];
        x.resize(B, I);
        for (int s = 0; s < B; ++s)
            for (int j = 0; j < I; ++j)
                x(s, j) = batch[static_cast<std::size_t>(s)]
                              ->features[static_cast<std::size_t>(t * I + j)];

        pre.noalias() = x * p.wx.transpose() + h * p.wh.transpose();
        pre.rowwise() += p.b.transpose();

        auto seg = [&](int k) { return pre.middleCols(k * H, H); };
        ig[static_cast<std::size_t>(t)] =
            seg(0).unaryExpr([](double z) { return sigmoid(z); });
        fg[static_cast<std::size_t>(t)] =
            seg(1).unaryExpr([](double z) { return sigmoid(z); });
        gg[static_cast<std::size_t>(t)] =
            seg(2).unaryExpr([](double z) { return std::tanh(z); });
        og[static_cast<std::size_t>(t)] =
            seg(3).unaryExpr([](double z) { return sigmoid(z); });

        c = fg[static_cast<std::size_t>(t)].cwiseProduct(c) +
            ig[static_cast<std::size_t>(t)].cwiseProduct(gg[static_cast<std::size_t>(t)]);
        cs[static_cast<std::size_t>(t)] = c;
        tc[static_cast<std::size_t>(t)] = c.unaryExpr([](double z) { return std::tanh(z); });
        h = og[static_cast<std::size_t>(t)].cwiseProduct(tc[static_cast<std::size_t>(t)]);
        hs[static_cast<std::size_t>(t)] = h;
    }

    Eigen::MatrixXd h_final = hs[static_cast<std::size_t>(T - 1)];
    if (dropout_mask) h_final = h_final.cwiseProduct(*dropout_mask);

    Eigen::VectorXd z = h_final * p.wy;
    z.array() += p.by;
    double loss = 0.0;
    Eigen::VectorXd dz(B);
    for (int s = 0; s < B; ++s) {
        const double y = targets[static_cast<std::size_t>(s)];
        loss += bce_from_logit(z(s), y);
        dz(s) = (sigmoid(z(s)) - y) / double(B);
    }
    loss /= double(B);
    if (!std::isfinite(loss)) throw numerical_error("training loss is not finite");

    out = LstmGrads::zeros_like(p);
    out.wy.noalias() = h_final.transpose() * dz;
    out.by = dz.sum();

    Eigen::MatrixXd dh = dz * p.wy.transpose();  // B x H
    if (dropout_mask) dh = dh.cwiseProduct(*dropout_mask);
    Eigen::MatrixXd dc = Eigen::MatrixXd::Zero(B, H);
    Eigen::MatrixXd dpre(B, 4 * H);

    for (int t = T - 1; t >= 0; --t) {
        const auto& it = ig[static_cast<std::size_t>(t)];
        const auto& ft = fg[static_cast<std::size_t>(t)];
        const auto& gt = gg[static_cast<std::size_t>(t)];
        const auto& ot = og[static_cast<std::size_t>(t)];
        const auto& tct = tc[static_cast<std::size_t>(t)];

        const Eigen::MatrixXd d_o = dh.cwiseProduct(tct);
        dc += dh.cwiseProduct(ot).cwiseProduct(
            (1.0 - tct.array().square()).matrix());

        const Eigen::MatrixXd c_prev = t > 0 ? cs[static_cast<std::size_t>(t - 1)]
                                             : Eigen::MatrixXd::Zero(B, H);
        const Eigen::MatrixXd d_f = dc.cwiseProduct(c_prev);
        const Eigen::MatrixXd d_i = dc.cwiseProduct(gt);
        const Eigen::MatrixXd d_g = dc.cwiseProduct(it);

        dpre.middleCols(0, H) =
            d_i.cwiseProduct(it.cwiseProduct((1.0 - it.array()).matrix()));
        dpre.middleCols(H, H) =
            d_f.cwiseProduct(ft.cwiseProduct((1.0 - ft.array()).matrix()));
        dpre.middleCols(2 * H, H) =
            d_g.cwiseProduct((1.0 - gt.array().square()).matrix());
        dpre.middleCols(3 * H, H) =
            d_o.cwiseProduct(ot.cwiseProduct((1.0 - ot.array()).matrix()));

        out.wx.noalias() += dpre.transpose() * xs[static_cast<std::size_t>(t)];
        if (t > 0)
            out.wh.noalias() += dpre.transpose() * hs[static_cast<std::size_t>(t - 1)];
        out.b += dpre.colwise().sum().transpose();

        dh.noalias() = dpre * p.wh;
        dc = dc.cwiseProduct(ft);
    }
    return loss;
}

}  // namespace detail

// Analytic BPTT gradient of the BCE loss for one sequence (no dropout).
inline LstmGrads bce_gradients(const LstmParams& p, std::span<const double> features,
                               double y) {
    const Instance inst{std::vector<double>(features.begin(), features.end())};
    LstmGrads g;
    detail::batch_bce_gradients(p, {&inst}, {y}, nullptr, g);
    return g;
}

// ---------------------------------------------------------------------------
// Classifier
// ---------------------------------------------------------------------------

class LstmClassifier {
public:
    explicit LstmClassifier(LstmParams params) : params_(std::move(params)) {}

    const LstmParams& params() const { return params_; }

    // network sigmoid output: probability of not_interested
    double raw_output(const Instance& inst) const { return forward(params_, inst); }

    // (label, probability of interested); ties at 0.5 go to interested
    std::pair<Intention, double> predict(const Instance& inst) const {
        const double p_interested = 1.0 - raw_output(inst);
        return {p_interested >= 0.5 ? Intention::interested : Intention::not_interested,
                p_interested};
    }

private:
    LstmParams params_;
};

inline std::pair<Intention, double> predict(const LstmClassifier& clf, const Instance& inst) {
    return clf.predict(inst);
}

// Mini-batch Adam on binary cross-entropy with inverted dropout on the final
// hidden state. An empty dataset yields a randomly initialized classifier.
inline LstmClassifier train(const Dataset& ds, const TrainConfig& cfg) {
    cfg.validate();
    Rng init_rng = Rng(cfg.seed).derive(0x1057);
    LstmParams params = LstmParams::random_init(init_rng);
    if (ds.empty()) return LstmClassifier(std::move(params));

    if (ds.count(Intention::interested) == 0 || ds.count(Intention::not_interested) == 0)
        std::cerr << "[lcorpp] warning: training data contains a single class; "
                     "the classifier will degenerate to a constant\n";

    const int H = params.hidden_dim();
    AdamState adam = AdamState::zeros_like(params);
    Rng shuffle_rng = Rng(cfg.seed).derive(0x52f1);
    Rng dropout_rng = Rng(cfg.seed).derive(0xd201);

    std::vector<std::size_t> order(ds.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    LstmGrads grads;
    const double keep = 1.0 - cfg.dropout;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        for (std::size_t begin = 0; begin < order.size();
             begin += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t end =
                std::min(order.size(), begin + static_cast<std::size_t>(cfg.batch_size));
            std::vector<const Instance*> batch;
            std::vector<double> targets;
            for (std::size_t i = begin; i < end; ++i) {
                batch.push_back(&ds.items[order[i]].first);
                targets.push_back(
                    ds.items[order[i]].second == Intention::not_interested ? 1.0 : 0.0);
            }
            Eigen::MatrixXd mask;
            const Eigen::MatrixXd* mask_ptr = nullptr;
            if (cfg.dropout > 0.0) {
                mask.resize(static_cast<int>(batch.size()), H);
                for (int r = 0; r < mask.rows(); ++r)
                    for (int col = 0; col < mask.cols(); ++col)
                        mask(r, col) = dropout_rng.bernoulli(keep) ? 1.0 / keep : 0.0;
                mask_ptr = &mask;
            }
            detail::batch_bce_gradients(params, batch, targets, mask_ptr, grads);
            adam_step(adam, grads, params, cfg);
        }
    }
    if (!params.all_finite()) throw numerical_error("training produced non-finite weights");
    return LstmClassifier(std::move(params));
}

// mean BCE loss over a dataset without dropout (evaluation mode)
inline double mean_loss(const LstmParams& p, const Dataset& ds) {
    if (ds.empty()) throw input_error("mean_loss: empty dataset");
    double total = 0.0;
    for (const auto& [inst, label] : ds.items)
        total += bce_loss(p, inst.features, label == Intention::not_interested ? 1.0 : 0.0);
    return total / double(ds.size());
}

// ---------------------------------------------------------------------------
// Cross-validation -> confusion matrix
// ---------------------------------------------------------------------------

using PredictorFn = std::function<Intention(const Instance&)>;
using TrainerFn = std::function<PredictorFn(const Dataset&)>;

// Stratified k-fold confusion estimate with +1 smoothing of the pooled
// counts. Falls back to a 70/30 holdout when a class has fewer than k
// instances; an empty dataset yields the uniform matrix.
inline ConfusionMatrix cross_validate_with(const Dataset& ds, int k, std::uint64_t seed,
                                           const TrainerFn& trainer) {
    if (k < 2) throw input_error("cross_validate: k must be >= 2");
    if (ds.empty()) return ConfusionMatrix::uniform();

    std::array<std::array<double, 2>, 2> counts{{{0.0, 0.0}, {0.0, 0.0}}};
    auto tally = [&](const PredictorFn& predict_fn, const Dataset& eval) {
        for (const auto& [inst, label] : eval.items) {
            const int truth = label == Intention::interested ? 0 : 1;
            const int predicted = predict_fn(inst) == Intention::interested ? 0 : 1;
            counts[static_cast<std::size_t>(truth)][static_cast<std::size_t>(predicted)] +=
                1.0;
        }
    };

    const std::size_t pos = ds.count(Intention::interested);
    const std::size_t neg = ds.size() - pos;
    const bool foldable = pos >= static_cast<std::size_t>(k) &&
                          neg >= static_cast<std::size_t>(k);

    Rng rng = Rng(seed).derive(0xcf01);
    if (!foldable) {
        std::cerr << "[lcorpp] warning: too few per-class instances for " << k
                  << "-fold cross-validation; using a 70/30 holdout\n";
        if (ds.size() < 2) return ConfusionMatrix::uniform();
        auto [train_part, test_part] = split(ds, 0.7, rng);
        if (train_part.empty() || test_part.empty()) return ConfusionMatrix::uniform();
        tally(trainer(train_part), test_part);
        return ConfusionMatrix::from_counts(counts);
    }

    // deal shuffled per-class indices round-robin into k folds
    std::vector<int> fold_of(ds.size(), 0);
    for (const Intention label : {Intention::interested, Intention::not_interested}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (ds.items[i].second == label) idx.push_back(i);
        rng.shuffle(idx);
        for (std::size_t j = 0; j < idx.size(); ++j)
            fold_of[idx[j]] = static_cast<int>(j % static_cast<std::size_t>(k));
    }

    for (int fold = 0; fold < k; ++fold) {
        Dataset train_part, test_part;
        for (std::size_t i = 0; i < ds.size(); ++i)
            (fold_of[i] == fold ? test_part : train_part).items.push_back(ds.items[i]);
        tally(trainer(train_part), test_part);
    }
    return ConfusionMatrix::from_counts(counts);
}

inline ConfusionMatrix cross_validate(const Dataset& ds, const TrainConfig& cfg, int k = 5) {
    return cross_validate_with(ds, k, cfg.seed, [&cfg](const Dataset& fold_data) {
        LstmClassifier clf = train(fold_data, cfg);
        return PredictorFn(
            [clf = std::move(clf)](const Instance& inst) { return clf.predict(inst).first; });
    });
}

// ---------------------------------------------------------------------------
// Gradient check: analytic BPTT vs central finite differences
// ---------------------------------------------------------------------------

struct GradCheckOptions {
    double h = 1e-5;
    int samples = 24;       // >= 20 sampled parameters
    std::uint64_t seed = 3;
    double denom_floor = 1e-4;  // scale floor so near-zero gradients stay meaningful
};

inline double fd_gradient(const LstmParams& p, std::span<const double> features, double y,
                          std::size_t index, double h) {
    LstmParams work = p;
    param_ref(work, index) += h;
    const double up = bce_loss(work, features, y);
    param_ref(work, index) -= 2.0 * h;
    const double down = bce_loss(work, features, y);
    return (up - down) / (2.0 * h);
}

// Compare caller-supplied gradients against finite differences on a sampled
// parameter subset; returns the max relative error.
inline double gradient_check_against(const LstmParams& p, std::span<const double> features,
                                     double y, const LstmGrads& analytic,
                                     const GradCheckOptions& opt = {}) {
    Rng rng(opt.seed);
    const std::size_t n = param_count(p);
    double worst = 0.0;
    for (int s = 0; s < opt.samples; ++s) {
        // cycle tensors so every block gets sampled
        std::size_t idx;
        switch (s % 5) {
            case 0: idx = rng.uniform_index(static_cast<std::size_t>(p.wx.size())); break;
            case 1:
                idx = static_cast<std::size_t>(p.wx.size()) +
                      rng.uniform_index(static_cast<std::size_t>(p.wh.size()));
                break;
            case 2:
                idx = static_cast<std::size_t>(p.wx.size() + p.wh.size()) +
                      rng.uniform_index(static_cast<std::size_t>(p.b.size()));
                break;
            case 3:
                idx = static_cast<std::size_t>(p.wx.size() + p.wh.size() + p.b.size()) +
                      rng.uniform_index(static_cast<std::size_t>(p.wy.size()));
                break;
            default: idx = n - 1; break;  // output bias
        }
        const double ga = param_at(analytic, idx);
        const double gf = fd_gradient(p, features, y, idx, opt.h);
        const double denom = std::max({std::abs(ga), std::abs(gf), opt.denom_floor});
        worst = std::max(worst, std::abs(ga - gf) / denom);
    }
    return worst;
}

inline double gradient_check(const LstmParams& p, std::span<const double> features, double y,
                             const GradCheckOptions& opt = {}) {
    return gradient_check_against(p, features, y, bce_gradients(p, features, y), opt);
}

// ---------------------------------------------------------------------------
// Model file: versioned text dump with hexfloat payload, exact round-trip.
// ---------------------------------------------------------------------------

inline std::uint64_t train_config_hash(const TrainConfig& cfg) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    auto mixd = [&](double d) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, sizeof bits);
        mix(bits);
    };
    mix(static_cast<std::uint64_t>(cfg.epochs));
    mix(static_cast<std::uint64_t>(cfg.batch_size));
    mixd(cfg.dropout);
    mixd(cfg.learning_rate);
    mixd(cfg.beta1);
    mixd(cfg.beta2);
    mixd(cfg.eps_adam);
    mix(cfg.seed);
    return h;
}

inline void save_model(const LstmClassifier& clf, const TrainConfig& cfg,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open '" + path + "' for writing");
    const LstmParams& p = clf.params();
    char buf[64];
    out << "lcorpp-lstm-model v1\n";
    out << "dims " << p.input_dim() << " " << p.hidden_dim() << "\n";
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(train_config_hash(cfg)));
    out << "config " << buf << "\n";
    const std::size_t n = param_count(p);
    out << "params " << n << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%a\n", param_at(p, i));
        out << buf;
    }
    if (!out) throw input_error("write to '" + path + "' failed");
}

inline LstmClassifier load_model(const std::string& path,
                                 std::uint64_t* config_hash = nullptr) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::string header;
    std::getline(in, header);
    if (header != "lcorpp-lstm-model v1")
        throw parse_error("not a lcorpp model file (bad header)", 1);
    std::string word;
    int input = 0, hidden = 0;
    in >> word >> input >> hidden;
    if (word != "dims" || input < 1 || hidden < 1)
        throw parse_error("malformed dims line", 2);
    std::string hash_hex;
    in >> word >> hash_hex;
    if (word != "config") throw parse_error("malformed config line", 3);
    if (config_hash) *config_hash = std::stoull(hash_hex, nullptr, 16);
    std::size_t n = 0;
    in >> word >> n;
    LstmParams p = LstmParams::zeros(input, hidden);
    if (word != "params" || n != param_count(p))
        throw parse_error("parameter count mismatch", 4);
    for (std::size_t i = 0; i < n; ++i) {
        std::string tok;
        if (!(in >> tok)) throw parse_error("truncated parameter payload", 5);
        param_ref(p, i) = std::strtod(tok.c_str(), nullptr);
    }
    if (!p.all_finite()) throw numerical_error("model file holds non-finite weights");
    return LstmClassifier(std::move(p));
}

}  // namespace lcorpp

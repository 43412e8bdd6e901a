#pragma once

// Test-only reference implementations. These recompute results from first
// principles, independent of the library code paths they are used to check.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "lcorpp/reasoner.hpp"
#include "lcorpp/rng.hpp"

namespace oracle {

// Full-joint distribution built directly from the atom list: for every
// complete assignment, look up each variable's explicit atoms whose condition
// matches the assignment and apply the uniform-residual rule by hand.
inline std::map<std::vector<int>, double> full_joint(const lcorpp::KnowledgeBase& kb) {
    const int n = static_cast<int>(kb.variables.size());
    std::size_t combos = 1;
    for (const auto& v : kb.variables) combos *= v.range.size();

    std::map<std::vector<int>, double> joint;
    for (std::size_t c = 0; c < combos; ++c) {
        std::vector<int> assign(static_cast<std::size_t>(n));
        std::size_t rem = c;
        for (int v = n - 1; v >= 0; --v) {
            const auto k = kb.variables[static_cast<std::size_t>(v)].range.size();
            assign[static_cast<std::size_t>(v)] = static_cast<int>(rem % k);
            rem /= k;
        }
        double w = 1.0;
        for (int v = 0; v < n; ++v) {
            const auto k = kb.variables[static_cast<std::size_t>(v)].range.size();
            // explicit probabilities whose condition holds in this assignment
            std::map<int, double> explicit_probs;
            for (const auto& a : kb.atoms) {
                if (a.head.var != v) continue;
                bool applies = true;
                for (const auto& lit : a.condition)
                    if (assign[static_cast<std::size_t>(lit.var)] != lit.value) {
                        applies = false;
                        break;
                    }
                if (applies) explicit_probs[a.head.value] = a.prob;
            }
            const int value = assign[static_cast<std::size_t>(v)];
            double p;
            if (auto it = explicit_probs.find(value); it != explicit_probs.end()) {
                p = it->second;
            } else {
                double s = 0.0;
                for (const auto& [_, q] : explicit_probs) s += q;
                const std::size_t unmentioned = k - explicit_probs.size();
                p = unmentioned == 0 ? 0.0 : std::max(0.0, 1.0 - s) / double(unmentioned);
            }
            w *= p;
        }
        joint[assign] = w;
    }
    return joint;
}

// Posterior over `query` variables given facts, from the full joint.
inline std::map<std::vector<int>, double> posterior(
    const lcorpp::KnowledgeBase& kb, const std::vector<lcorpp::Fact>& facts,
    const std::vector<std::string>& query) {
    auto joint = full_joint(kb);

    std::vector<lcorpp::Literal> evidence;
    for (const auto& f : kb.facts) evidence.push_back(kb.resolve_fact(f));
    for (const auto& f : facts) evidence.push_back(kb.resolve_fact(f));

    std::vector<int> qvars;
    for (const auto& q : query) qvars.push_back(kb.var_index(q));

    std::map<std::vector<int>, double> post;
    double total = 0.0;
    for (const auto& [assign, w] : joint) {
        bool ok = true;
        for (const auto& e : evidence)
            if (assign[static_cast<std::size_t>(e.var)] != e.value) {
                ok = false;
                break;
            }
        if (!ok) continue;
        std::vector<int> key;
        for (int v : qvars) key.push_back(assign[static_cast<std::size_t>(v)]);
        post[key] += w;
        total += w;
    }
    if (total <= 0.0) throw std::runtime_error("oracle: facts have zero probability");
    for (auto& [_, p] : post) p /= total;
    return post;
}

// Random acyclic CPT-style knowledge base: up to `max_vars` variables with up
// to `max_values` values each, parents drawn from earlier variables. Some
// rows are left partial or missing to exercise the residual rule.
inline lcorpp::KnowledgeBase random_kb(lcorpp::Rng& rng, int max_vars = 4,
                                       int max_values = 3) {
    lcorpp::KnowledgeBase kb;
    const int n = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(max_vars)));
    for (int v = 0; v < n; ++v) {
        lcorpp::RandomVariable rv;
        rv.name = "v" + std::to_string(v);
        const int k =
            2 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(max_values - 1)));
        for (int i = 0; i < k; ++i) rv.range.push_back("x" + std::to_string(i));
        kb.variables.push_back(std::move(rv));
    }

    for (int v = 0; v < n; ++v) {
        std::vector<int> parents;
        for (int p = 0; p < v; ++p)
            if (parents.size() < 2 && rng.bernoulli(0.5)) parents.push_back(p);

        std::size_t rows = 1;
        for (int p : parents) rows *= kb.variables[static_cast<std::size_t>(p)].range.size();

        const auto k = kb.variables[static_cast<std::size_t>(v)].range.size();
        for (std::size_t r = 0; r < rows; ++r) {
            if (rng.bernoulli(0.15)) continue;  // missing row -> uniform
            std::vector<lcorpp::Literal> cond;
            std::size_t rem = r;
            for (int i = static_cast<int>(parents.size()) - 1; i >= 0; --i) {
                const auto pk =
                    kb.variables[static_cast<std::size_t>(parents[static_cast<std::size_t>(i)])]
                        .range.size();
                cond.push_back(lcorpp::Literal{parents[static_cast<std::size_t>(i)],
                                               static_cast<int>(rem % pk)});
                rem /= pk;
            }
            std::sort(cond.begin(), cond.end());

            // random distribution over the range
            std::vector<double> probs(k);
            double sum = 0.0;
            for (auto& p : probs) {
                p = rng.uniform() + 1e-3;
                sum += p;
            }
            for (auto& p : probs) p /= sum;

            const bool partial = rng.bernoulli(0.3) && k > 1;
            const std::size_t mention = partial ? k - 1 : k;
            double acc = 0.0;
            for (std::size_t i = 0; i < mention; ++i) {
                double p = probs[i];
                if (!partial && i + 1 == mention) p = 1.0 - acc;  // exact closure
                acc += p;
                kb.atoms.push_back(
                    lcorpp::PrAtom{lcorpp::Literal{v, static_cast<int>(i)}, cond, p});
            }
        }
    }
    kb.finalize();
    return kb;
}

}  // namespace oracle

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcorpp/confusion.hpp"
#include "lcorpp/errors.hpp"
#include "lcorpp/rng.hpp"

namespace lcorpp {

// names of the variables bridging the learning and reasoning components
inline constexpr const char* kIntentionVar = "intention";
inline constexpr const char* kPredictedVar = "s_lrn";

// ---------------------------------------------------------------------------
// Knowledge representation: finite random variables, conditional probability
// atoms `pr(head | condition) = v`, and hard facts. The accepted fragment is
// an acyclic program where every atom for a variable conditions on the same
// set of parent variables, which makes each variable's atoms a (possibly
// partial) conditional probability table. Probability mass not assigned
// explicitly is spread uniformly over the unmentioned values of the range.
// ---------------------------------------------------------------------------

struct RandomVariable {
    std::string name;
    std::vector<std::string> range;

    bool operator==(const RandomVariable&) const = default;
};

// var=value pair, by index into the owning KnowledgeBase
struct Literal {
    int var = -1;
    int value = -1;

    bool operator==(const Literal&) const = default;
    auto operator<=>(const Literal&) const = default;
};

struct PrAtom {
    Literal head;
    std::vector<Literal> condition;  // sorted by variable index
    double prob = 0.0;

    bool operator==(const PrAtom&) const = default;
};

// runtime observation, by name so callers need no index bookkeeping
struct Fact {
    std::string variable;
    std::string value;

    bool operator==(const Fact&) const = default;
    auto operator<=>(const Fact&) const = default;
};

// Discrete distribution over joint assignments of a set of variables.
// Entries are dense and ordered lexicographically by value index.
struct Belief {
    std::vector<std::string> variables;
    std::vector<std::vector<std::string>> ranges;  // per variable, value names
    std::vector<std::pair<std::vector<int>, double>> entries;

    // probability vector of a single-variable belief, in range order
    std::vector<double> distribution() const {
        if (variables.size() != 1)
            throw input_error("Belief::distribution requires a single variable");
        std::vector<double> out(ranges[0].size(), 0.0);
        for (const auto& [assign, p] : entries) out[assign[0]] += p;
        return out;
    }

    std::size_t argmax() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < entries.size(); ++i)
            if (entries[i].second > entries[best].second) best = i;
        return best;
    }
};

class KnowledgeBase {
public:
    std::vector<RandomVariable> variables;
    std::vector<PrAtom> atoms;
    std::vector<Fact> facts;  // facts baked into the program text

    bool operator==(const KnowledgeBase& o) const {
        return variables == o.variables && atoms == o.atoms && facts == o.facts;
    }

    int var_index(std::string_view name) const {
        for (std::size_t i = 0; i < variables.size(); ++i)
            if (variables[i].name == name) return static_cast<int>(i);
        return -1;
    }

    int value_index(int var, std::string_view value) const {
        const auto& r = variables[var].range;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] == value) return static_cast<int>(i);
        return -1;
    }

    // Checks the fragment restrictions and builds the per-variable tables.
    // Must be called after any structural change; parse_kb calls it.
    void finalize() {
        if (variables.empty()) throw config_error("knowledge base declares no variables");
        for (const auto& v : variables) {
            if (v.range.empty())
                throw config_error("variable '" + v.name + "' has an empty range");
            std::set<std::string> seen(v.range.begin(), v.range.end());
            if (seen.size() != v.range.size())
                throw config_error("variable '" + v.name + "' repeats a range value");
        }
        {
            std::set<std::string> names;
            for (const auto& v : variables)
                if (!names.insert(v.name).second)
                    throw config_error("variable '" + v.name + "' declared twice");
        }

        const int n = static_cast<int>(variables.size());
        parents_.assign(n, {});
        tables_.assign(n, {});

        // parent sets: every atom of a variable must agree
        std::vector<bool> parents_known(n, false);
        for (const auto& a : atoms) {
            check_literal(a.head, "pr-atom head");
            if (a.prob < 0.0 || a.prob > 1.0)
                throw config_error("pr-atom probability outside [0,1]");
            std::vector<int> conds;
            for (const auto& c : a.condition) {
                check_literal(c, "pr-atom condition");
                if (c.var == a.head.var)
                    throw config_error("pr-atom for '" + variables[a.head.var].name +
                                       "' conditions on itself");
                conds.push_back(c.var);
            }
            std::sort(conds.begin(), conds.end());
            if (std::adjacent_find(conds.begin(), conds.end()) != conds.end())
                throw config_error("pr-atom repeats a condition variable");
            if (!parents_known[a.head.var]) {
                parents_[a.head.var] = conds;
                parents_known[a.head.var] = true;
            } else if (parents_[a.head.var] != conds) {
                throw config_error("pr-atoms for '" + variables[a.head.var].name +
                                   "' disagree on their condition variables");
            }
        }

        topo_order_ = topological_order();

        // group atoms into rows keyed by the parent assignment
        std::vector<std::map<std::uint64_t, std::map<int, double>>> rows(n);
        for (const auto& a : atoms) {
            std::vector<int> assign(parents_[a.head.var].size());
            for (const auto& c : a.condition) {
                const auto& ps = parents_[a.head.var];
                const auto it = std::find(ps.begin(), ps.end(), c.var);
                assign[static_cast<std::size_t>(it - ps.begin())] = c.value;
            }
            const std::uint64_t key = row_key(a.head.var, assign);
            auto& row = rows[a.head.var][key];
            if (!row.emplace(a.head.value, a.prob).second)
                throw config_error("duplicate pr-atom for '" + variables[a.head.var].name +
                                   "=" + variables[a.head.var].range[a.head.value] + "'");
        }

        for (int v = 0; v < n; ++v) {
            const auto k = variables[v].range.size();
            for (const auto& [key, row] : rows[v]) {
                double sum = 0.0;
                for (const auto& [_, p] : row) sum += p;
                std::vector<double> dist(k, 0.0);
                const std::size_t unmentioned = k - row.size();
                if (unmentioned == 0) {
                    if (std::abs(sum - 1.0) > 1e-9)
                        throw config_error("pr-atoms for '" + variables[v].name +
                                           "' cover the range but sum to " +
                                           std::to_string(sum));
                } else if (sum > 1.0 + 1e-9) {
                    throw config_error("pr-atoms for '" + variables[v].name +
                                       "' sum to more than 1");
                }
                const double residual =
                    unmentioned == 0 ? 0.0 : std::max(0.0, 1.0 - sum) / double(unmentioned);
                for (std::size_t i = 0; i < k; ++i) {
                    const auto it = row.find(static_cast<int>(i));
                    dist[i] = it != row.end() ? it->second : residual;
                }
                tables_[v].emplace(key, std::move(dist));
            }
        }

        for (const auto& f : facts) resolve_fact(f);
        finalized_ = true;
    }

    bool finalized() const { return finalized_; }

    const std::vector<int>& parents(int var) const { return parents_[var]; }
    const std::vector<int>& topological_order_of_variables() const { return topo_order_; }

    // P(var = value | parent assignment induced by `world`)
    double conditional(int var, int value, std::span<const int> world) const {
        std::vector<int> assign(parents_[var].size());
        for (std::size_t i = 0; i < parents_[var].size(); ++i)
            assign[i] = world[static_cast<std::size_t>(parents_[var][i])];
        return row(var, assign)[static_cast<std::size_t>(value)];
    }

    // full distribution row for a variable given values of its parents
    std::vector<double> row(int var, std::span<const int> parent_values) const {
        const auto it = tables_[var].find(row_key(var, parent_values));
        if (it != tables_[var].end()) return it->second;
        // no atoms for this row: uniform by the residual rule
        return std::vector<double>(variables[var].range.size(),
                                   1.0 / double(variables[var].range.size()));
    }

    Literal resolve_fact(const Fact& f) const {
        const int v = var_index(f.variable);
        if (v < 0) throw input_error("unknown variable '" + f.variable + "' in fact");
        const int val = value_index(v, f.value);
        if (val < 0)
            throw input_error("value '" + f.value + "' not in range of '" + f.variable + "'");
        return Literal{v, val};
    }

private:
    void check_literal(const Literal& l, const char* what) const {
        if (l.var < 0 || l.var >= static_cast<int>(variables.size()))
            throw config_error(std::string(what) + " references an undeclared variable");
        if (l.value < 0 || l.value >= static_cast<int>(variables[l.var].range.size()))
            throw config_error(std::string(what) + " references a value outside the range");
    }

    std::uint64_t row_key(int var, std::span<const int> parent_values) const {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < parents_[var].size(); ++i) {
            const auto radix = variables[static_cast<std::size_t>(parents_[var][i])].range.size();
            key = key * radix + static_cast<std::uint64_t>(parent_values[i]);
        }
        return key;
    }

    std::vector<int> topological_order() const {
        const int n = static_cast<int>(variables.size());
        std::vector<int> indegree(n, 0);
        std::vector<std::vector<int>> children(n);
        for (int v = 0; v < n; ++v)
            for (int p : parents_[v]) {
                children[p].push_back(v);
                ++indegree[v];
            }
        std::vector<int> order;
        std::vector<int> queue;
        for (int v = 0; v < n; ++v)
            if (indegree[v] == 0) queue.push_back(v);
        while (!queue.empty()) {
            const int v = queue.front();
            queue.erase(queue.begin());
            order.push_back(v);
            for (int c : children[v])
                if (--indegree[c] == 0) queue.push_back(c);
        }
        if (static_cast<int>(order.size()) != n)
            throw config_error("pr-atom dependencies form a cycle");
        return order;
    }

    bool finalized_ = false;
    std::vector<std::vector<int>> parents_;
    std::vector<int> topo_order_;
    std::vector<std::map<std::uint64_t, std::vector<double>>> tables_;
};

// ---------------------------------------------------------------------------
// Parsing. One statement per line, `#` starts a comment:
//   var name : {v1, v2, ...}.
//   pr(name=value | name=value, name=value) = 0.7.
//   pr(name=value) = 0.5.
//   fact name=value.
// ---------------------------------------------------------------------------

namespace detail {

class KbScanner {
public:
    KbScanner(std::string_view text, int line) : text_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    bool try_consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!try_consume(c)) fail(std::string("expected '") + c + "'");
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) fail("expected an identifier");
        std::string id(text_.substr(start, pos_ - start));
        if (std::isdigit(static_cast<unsigned char>(id[0])))
            fail("identifier may not start with a digit");
        return id;
    }

    double number() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '.' || text_[pos_] == '-' ||
                                       text_[pos_] == '+' || text_[pos_] == 'e' ||
                                       text_[pos_] == 'E'))
            ++pos_;
        // a trailing '.' is the statement terminator, not part of the number
        std::size_t end = pos_;
        if (end > start && text_[end - 1] == '.') {
            --end;
            --pos_;
        }
        if (end == start) fail("expected a number");
        try {
            std::size_t used = 0;
            const std::string s(text_.substr(start, end - start));
            const double x = std::stod(s, &used);
            if (used != s.size()) fail("malformed number '" + s + "'");
            return x;
        } catch (const std::exception&) {
            fail("malformed number");
        }
        return 0.0;  // unreachable
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(msg + " (column " + std::to_string(pos_ + 1) + ")", line_);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
};

inline bool is_reserved(std::string_view id) {
    return id == "var" || id == "pr" || id == "fact";
}

}  // namespace detail

inline KnowledgeBase parse_kb(std::string_view text) {
    KnowledgeBase kb;
    // collected first, resolved after all declarations are known
    struct PendingAtom {
        std::string head_var, head_val;
        std::vector<std::pair<std::string, std::string>> cond;
        double prob;
        int line;
    };
    std::vector<PendingAtom> pending_atoms;
    std::vector<std::pair<Fact, int>> pending_facts;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        detail::KbScanner sc(line, line_no);
        if (sc.at_end()) continue;

        const std::string kw = sc.identifier();
        if (kw == "var") {
            RandomVariable rv;
            rv.name = sc.identifier();
            if (detail::is_reserved(rv.name)) sc.fail("'" + rv.name + "' is a reserved word");
            sc.expect(':');
            sc.expect('{');
            do {
                rv.range.push_back(sc.identifier());
            } while (sc.try_consume(','));
            sc.expect('}');
            sc.expect('.');
            kb.variables.push_back(std::move(rv));
        } else if (kw == "pr") {
            PendingAtom a;
            a.line = line_no;
            sc.expect('(');
            a.head_var = sc.identifier();
            sc.expect('=');
            a.head_val = sc.identifier();
            if (sc.try_consume('|')) {
                do {
                    std::string cv = sc.identifier();
                    sc.expect('=');
                    a.cond.emplace_back(std::move(cv), sc.identifier());
                } while (sc.try_consume(','));
            }
            sc.expect(')');
            sc.expect('=');
            a.prob = sc.number();
            sc.expect('.');
            pending_atoms.push_back(std::move(a));
        } else if (kw == "fact") {
            Fact f;
            f.variable = sc.identifier();
            sc.expect('=');
            f.value = sc.identifier();
            sc.expect('.');
            pending_facts.emplace_back(std::move(f), line_no);
        } else {
            sc.fail("unknown statement '" + kw + "'");
        }
        if (!sc.at_end()) sc.fail("trailing text after statement");
    }

    auto resolve = [&](const std::string& var, const std::string& val, int line) {
        const int v = kb.var_index(var);
        if (v < 0) throw parse_error("unknown variable '" + var + "'", line);
        const int x = kb.value_index(v, val);
        if (x < 0)
            throw parse_error("value '" + val + "' not in range of '" + var + "'", line);
        return Literal{v, x};
    };

    for (const auto& a : pending_atoms) {
        PrAtom atom;
        atom.head = resolve(a.head_var, a.head_val, a.line);
        for (const auto& [cv, cx] : a.cond) atom.condition.push_back(resolve(cv, cx, a.line));
        std::sort(atom.condition.begin(), atom.condition.end());
        if (a.prob < 0.0 || a.prob > 1.0)
            throw parse_error("probability " + std::to_string(a.prob) + " outside [0,1]",
                              a.line);
        atom.prob = a.prob;
        kb.atoms.push_back(std::move(atom));
    }
    for (auto& [f, line] : pending_facts) {
        try {
            kb.facts.push_back(f);
            resolve(f.variable, f.value, line);
        } catch (const input_error& e) {
            throw parse_error(e.what(), line);
        }
    }

    kb.finalize();
    return kb;
}

inline std::string format_probability(double p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

inline std::string print_kb(const KnowledgeBase& kb) {
    std::string out;
    for (const auto& v : kb.variables) {
        out += "var " + v.name + " : {";
        for (std::size_t i = 0; i < v.range.size(); ++i) {
            if (i) out += ", ";
            out += v.range[i];
        }
        out += "}.\n";
    }
    for (const auto& a : kb.atoms) {
        const auto& hv = kb.variables[static_cast<std::size_t>(a.head.var)];
        out += "pr(" + hv.name + "=" + hv.range[static_cast<std::size_t>(a.head.value)];
        for (std::size_t i = 0; i < a.condition.size(); ++i) {
            out += i == 0 ? " | " : ", ";
            const auto& cv = kb.variables[static_cast<std::size_t>(a.condition[i].var)];
            out += cv.name + "=" + cv.range[static_cast<std::size_t>(a.condition[i].value)];
        }
        out += ") = " + format_probability(a.prob) + ".\n";
    }
    for (const auto& f : kb.facts) out += "fact " + f.variable + "=" + f.value + ".\n";
    return out;
}

// ---------------------------------------------------------------------------
// Exact inference by possible-world enumeration.
// ---------------------------------------------------------------------------

struct World {
    std::vector<int> assignment;  // value index per variable, in declaration order
    double weight = 0.0;
};

inline std::vector<World> enumerate_worlds(const KnowledgeBase& kb,
                                           std::span<const Fact> runtime_facts) {
    if (!kb.finalized()) throw config_error("knowledge base not finalized");

    std::vector<Literal> evidence;
    for (const auto& f : kb.facts) evidence.push_back(kb.resolve_fact(f));
    for (const auto& f : runtime_facts) evidence.push_back(kb.resolve_fact(f));

    const int n = static_cast<int>(kb.variables.size());
    std::size_t world_count = 1;
    for (const auto& v : kb.variables) world_count *= v.range.size();

    std::vector<World> worlds;
    worlds.reserve(world_count);
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    double total = 0.0;
    for (std::size_t w = 0; w < world_count; ++w) {
        // decode in declaration order, last variable fastest
        std::size_t rem = w;
        for (int v = n - 1; v >= 0; --v) {
            const auto k = kb.variables[static_cast<std::size_t>(v)].range.size();
            assign[static_cast<std::size_t>(v)] = static_cast<int>(rem % k);
            rem /= k;
        }
        bool consistent = true;
        for (const auto& e : evidence)
            if (assign[static_cast<std::size_t>(e.var)] != e.value) {
                consistent = false;
                break;
            }
        double weight = 0.0;
        if (consistent) {
            weight = 1.0;
            for (int v : kb.topological_order_of_variables())
                weight *= kb.conditional(v, assign[static_cast<std::size_t>(v)], assign);
        }
        worlds.push_back(World{assign, weight});
        total += weight;
    }

    if (total <= 0.0) {
        std::string what = "facts are inconsistent with the knowledge base:";
        for (const auto& f : runtime_facts) what += " " + f.variable + "=" + f.value;
        for (const auto& f : kb.facts) what += " " + f.variable + "=" + f.value;
        throw inconsistency_error(what);
    }
    return worlds;
}

inline Belief infer(const KnowledgeBase& kb, std::span<const Fact> facts,
                    std::span<const std::string> query) {
    std::vector<int> qvars;
    for (const auto& q : query) {
        const int v = kb.var_index(q);
        if (v < 0) throw input_error("unknown query variable '" + q + "'");
        qvars.push_back(v);
    }
    const auto worlds = enumerate_worlds(kb, facts);

    Belief b;
    std::size_t combos = 1;
    for (int v : qvars) {
        b.variables.push_back(kb.variables[static_cast<std::size_t>(v)].name);
        b.ranges.push_back(kb.variables[static_cast<std::size_t>(v)].range);
        combos *= kb.variables[static_cast<std::size_t>(v)].range.size();
    }
    b.entries.reserve(combos);
    std::vector<int> assign(qvars.size(), 0);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rem = c;
        for (int i = static_cast<int>(qvars.size()) - 1; i >= 0; --i) {
            const auto k = b.ranges[static_cast<std::size_t>(i)].size();
            assign[static_cast<std::size_t>(i)] = static_cast<int>(rem % k);
            rem /= k;
        }
        b.entries.emplace_back(assign, 0.0);
    }

    double total = 0.0;
    for (const auto& w : worlds) {
        if (w.weight == 0.0) continue;
        std::size_t idx = 0;
        for (std::size_t i = 0; i < qvars.size(); ++i)
            idx = idx * b.ranges[i].size() +
                  static_cast<std::size_t>(w.assignment[static_cast<std::size_t>(qvars[i])]);
        b.entries[idx].second += w.weight;
        total += w.weight;
    }
    for (auto& [_, p] : b.entries) p /= total;
    return b;
}

inline Belief marginalize(const Belief& joint, std::span<const std::string> shared) {
    std::vector<std::size_t> keep;
    for (const auto& s : shared) {
        const auto it = std::find(joint.variables.begin(), joint.variables.end(), s);
        if (it == joint.variables.end())
            throw input_error("variable '" + s + "' not present in belief");
        keep.push_back(static_cast<std::size_t>(it - joint.variables.begin()));
    }

    Belief out;
    std::size_t combos = 1;
    for (std::size_t k : keep) {
        out.variables.push_back(joint.variables[k]);
        out.ranges.push_back(joint.ranges[k]);
        combos *= joint.ranges[k].size();
    }
    out.entries.reserve(combos);
    std::vector<int> assign(keep.size(), 0);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rem = c;
        for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
            const auto k = out.ranges[static_cast<std::size_t>(i)].size();
            assign[static_cast<std::size_t>(i)] = static_cast<int>(rem % k);
            rem /= k;
        }
        out.entries.emplace_back(assign, 0.0);
    }

    double total = 0.0;
    for (const auto& [assign_full, p] : joint.entries) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < keep.size(); ++i)
            idx = idx * out.ranges[i].size() + static_cast<std::size_t>(assign_full[keep[i]]);
        out.entries[idx].second += p;
        total += p;
    }
    if (total > 0.0)
        for (auto& [_, p] : out.entries) p /= total;
    return out;
}

// Returns a copy of `kb` extended with the classifier-output variable and the
// four pr-atoms pr(s_lrn=predicted | intention=true) = C[true][predicted].
// Existing atoms for s_lrn are replaced.
inline KnowledgeBase attach_classifier_evidence(const KnowledgeBase& kb,
                                                const ConfusionMatrix& c) {
    c.validate();
    const int intention = kb.var_index(kIntentionVar);
    if (intention < 0)
        throw config_error("knowledge base does not declare '" + std::string(kIntentionVar) +
                           "'");
    const auto& range = kb.variables[static_cast<std::size_t>(intention)].range;
    if (range.size() != 2)
        throw config_error("'" + std::string(kIntentionVar) + "' must be binary");

    KnowledgeBase out = kb;
    int slrn = out.var_index(kPredictedVar);
    if (slrn < 0) {
        out.variables.push_back(RandomVariable{kPredictedVar, range});
        slrn = static_cast<int>(out.variables.size()) - 1;
    }
    std::erase_if(out.atoms, [&](const PrAtom& a) { return a.head.var == slrn; });
    for (int truth = 0; truth < 2; ++truth)
        for (int predicted = 0; predicted < 2; ++predicted)
            out.atoms.push_back(PrAtom{Literal{slrn, predicted},
                                       {Literal{intention, truth}},
                                       c.p[static_cast<std::size_t>(truth)]
                                          [static_cast<std::size_t>(predicted)]});
    out.finalize();
    return out;
}

// Ancestral sample of a complete assignment, in declaration order.
inline std::vector<int> sample_assignment(const KnowledgeBase& kb, Rng& rng) {
    if (!kb.finalized()) throw config_error("knowledge base not finalized");
    std::vector<int> assign(kb.variables.size(), -1);
    for (int v : kb.topological_order_of_variables()) {
        std::vector<int> parent_values;
        for (int p : kb.parents(v))
            parent_values.push_back(assign[static_cast<std::size_t>(p)]);
        const auto dist = kb.row(v, parent_values);
        double sum = 0.0;
        for (double d : dist) sum += d;
        if (std::abs(sum - 1.0) > 1e-9)
            throw config_error("distribution row of '" +
                               kb.variables[static_cast<std::size_t>(v)].name +
                               "' does not sum to 1");
        assign[static_cast<std::size_t>(v)] = static_cast<int>(rng.discrete(dist));
    }
    return assign;
}

}  // namespace lcorpp

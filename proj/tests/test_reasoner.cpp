#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lcorpp/reasoner.hpp"
#include "support/oracles.hpp"

using namespace lcorpp;

namespace {

const char* kSmallKb = R"(# toy contextual knowledge
var identity : {student, visitor, professor}.
var time : {morning, afternoon, evening}.
var intention : {interested, not_interested}.

pr(identity=student) = 0.5.
pr(identity=visitor) = 0.3.
pr(identity=professor) = 0.2.

pr(time=afternoon | identity=visitor) = 0.7.
pr(time=morning | identity=visitor) = 0.2.

pr(intention=interested | identity=student) = 0.3.
pr(intention=interested | identity=visitor) = 0.8.
pr(intention=interested | identity=professor) = 0.1.
)";

double total_weight(const std::vector<World>& worlds) {
    double t = 0.0;
    for (const auto& w : worlds) t += w.weight;
    return t;
}

}  // namespace

TEST_CASE("parse_kb materializes declarations and pr-atoms") {
    const auto kb = parse_kb(kSmallKb);
    REQUIRE(kb.variables.size() == 3);
    CHECK(kb.variables[0].name == "identity");
    CHECK(kb.variables[1].range ==
          std::vector<std::string>{"morning", "afternoon", "evening"});

    // pr(time=afternoon | identity=visitor) = 0.7.
    const int time = kb.var_index("time");
    const int identity = kb.var_index("identity");
    bool found = false;
    for (const auto& a : kb.atoms) {
        if (a.head.var == time && a.head.value == kb.value_index(time, "afternoon") &&
            a.condition.size() == 1 && a.condition[0].var == identity &&
            a.condition[0].value == kb.value_index(identity, "visitor")) {
            CHECK(a.prob == 0.7);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("parse_kb accepts the documented atom syntax") {
    const auto kb = parse_kb(
        "var identity : {student, professor}.\n"
        "var location : {classroom, library}.\n"
        "pr(location=library | identity=professor) = 0.1.\n");
    REQUIRE(kb.atoms.size() == 1);
    CHECK(kb.atoms[0].prob == 0.1);
}

TEST_CASE("parse_kb rejects bad programs") {
    CHECK_THROWS_AS(parse_kb(""), config_error);  // no declarations at all
    CHECK_THROWS_AS(parse_kb("var x : {}.\n"), parse_error);
    CHECK_THROWS_AS(parse_kb("var x : {a, b}.\npr(y=a) = 0.5.\n"), parse_error);
    CHECK_THROWS_AS(parse_kb("var x : {a, b}.\npr(x=c) = 0.5.\n"), parse_error);
    CHECK_THROWS_AS(parse_kb("var x : {a, b}.\npr(x=a) = 1.5.\n"), parse_error);
    CHECK_THROWS_AS(parse_kb("var x : {a, b}.\nfact x=q.\n"), parse_error);
    // cyclic dependency
    CHECK_THROWS_AS(parse_kb("var x : {a, b}.\nvar y : {c, d}.\n"
                             "pr(x=a | y=c) = 0.5.\npr(y=c | x=a) = 0.5.\n"),
                    config_error);
    // full range summing away from 1
    CHECK_THROWS_AS(parse_kb("var x : {a, b}.\npr(x=a) = 0.7.\npr(x=b) = 0.7.\n"),
                    config_error);
}

TEST_CASE("parse errors carry the offending line number") {
    try {
        parse_kb("var x : {a, b}.\npr(x=a) == 0.5.\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("enumerate_worlds weights a binary variable") {
    const auto kb = parse_kb("var x : {a, b}.\npr(x=a) = 0.7.\n");
    const auto worlds = enumerate_worlds(kb, {});
    REQUIRE(worlds.size() == 2);
    CHECK(worlds[0].weight == Catch::Approx(0.7));
    CHECK(worlds[1].weight == Catch::Approx(0.3));
}

TEST_CASE("facts zero out contradicting worlds") {
    const auto kb = parse_kb("var x : {a, b}.\npr(x=a) = 0.7.\n");
    const std::vector<Fact> facts{{"x", "b"}};
    const auto worlds = enumerate_worlds(kb, facts);
    REQUIRE(worlds.size() == 2);
    CHECK(worlds[0].weight == 0.0);
    CHECK(worlds[1].weight == Catch::Approx(0.3));

    const auto b = infer(kb, facts, std::vector<std::string>{"x"});
    CHECK(b.distribution()[1] == Catch::Approx(1.0));
}

TEST_CASE("impossible facts raise an inconsistency error naming them") {
    const auto kb = parse_kb("var x : {a, b}.\nvar y : {c, d}.\n"
                             "pr(x=a) = 1.\npr(y=c | x=a) = 1.\n");
    const std::vector<Fact> facts{{"y", "d"}};
    try {
        enumerate_worlds(kb, facts);
        FAIL("expected inconsistency_error");
    } catch (const inconsistency_error& e) {
        CHECK(std::string(e.what()).find("y=d") != std::string::npos);
    }
}

TEST_CASE("three-variable chain matches the full-joint oracle") {
    const auto kb = parse_kb(
        "var a : {a0, a1}.\n"
        "var b : {b0, b1, b2}.\n"
        "var c : {c0, c1}.\n"
        "pr(a=a0) = 0.6.\n"
        "pr(b=b0 | a=a0) = 0.5.\n"
        "pr(b=b1 | a=a0) = 0.25.\n"
        "pr(b=b0 | a=a1) = 0.1.\n"
        "pr(c=c0 | b=b0) = 0.9.\n"
        "pr(c=c0 | b=b1) = 0.4.\n"
        "pr(c=c0 | b=b2) = 0.2.\n");
    const auto joint = oracle::full_joint(kb);
    const auto worlds = enumerate_worlds(kb, {});
    for (const auto& w : worlds) {
        REQUIRE(std::abs(w.weight - joint.at(w.assignment)) < 1e-12);
    }
}

TEST_CASE("uniform knowledge yields a uniform posterior") {
    const auto kb = parse_kb("var x : {a, b, c}.\nvar y : {u, v}.\npr(y=u) = 0.5.\n");
    const auto b = infer(kb, {}, std::vector<std::string>{"x"});
    for (double p : b.distribution()) CHECK(p == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("infer matches the brute-force oracle on random programs") {
    Rng rng(20240811);
    for (int trial = 0; trial < 100; ++trial) {
        auto sub = rng.derive(static_cast<std::uint64_t>(trial));
        const auto kb = oracle::random_kb(sub);

        // random subset of variables as query, random facts on the rest
        std::vector<std::string> query;
        std::vector<Fact> facts;
        for (const auto& v : kb.variables) {
            if (sub.bernoulli(0.5)) query.push_back(v.name);
            if (sub.bernoulli(0.3))
                facts.push_back({v.name, v.range[sub.uniform_index(v.range.size())]});
        }
        if (query.empty()) query.push_back(kb.variables[0].name);

        std::map<std::vector<int>, double> expected;
        try {
            expected = oracle::posterior(kb, facts, query);
        } catch (const std::runtime_error&) {
            CHECK_THROWS_AS(infer(kb, facts, query), inconsistency_error);
            continue;
        }
        const auto b = infer(kb, facts, query);
        double sum = 0.0;
        for (const auto& [assign, p] : b.entries) {
            const auto it = expected.find(assign);
            const double want = it == expected.end() ? 0.0 : it->second;
            REQUIRE(std::abs(p - want) < 1e-9);
            sum += p;
        }
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("conditioning equals filter-and-renormalize") {
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        auto sub = rng.derive(static_cast<std::uint64_t>(trial));
        const auto kb = oracle::random_kb(sub);
        const auto& var = kb.variables[sub.uniform_index(kb.variables.size())];
        const Fact fact{var.name, var.range[sub.uniform_index(var.range.size())]};

        std::vector<World> unconditioned = enumerate_worlds(kb, {});
        const Literal lit = kb.resolve_fact(fact);
        double kept = 0.0;
        for (auto& w : unconditioned) {
            if (w.assignment[static_cast<std::size_t>(lit.var)] != lit.value) w.weight = 0.0;
            kept += w.weight;
        }
        if (kept <= 0.0) continue;

        const std::vector<Fact> facts{fact};
        const auto conditioned = enumerate_worlds(kb, facts);
        const double total = total_weight(conditioned);
        for (std::size_t i = 0; i < conditioned.size(); ++i) {
            CHECK(std::abs(conditioned[i].weight / total - unconditioned[i].weight / kept) <
                  1e-12);
        }
    }
}

TEST_CASE("marginalize sums out the right variables") {
    const auto kb = parse_kb(kSmallKb);
    const auto joint =
        infer(kb, {}, std::vector<std::string>{"identity", "intention"});
    const auto marg = marginalize(joint, std::vector<std::string>{"intention"});

    // direct summation oracle
    double interested = 0.0;
    for (const auto& [assign, p] : joint.entries)
        if (assign[1] == 0) interested += p;
    CHECK(std::abs(marg.distribution()[0] - interested) < 1e-12);

    // marginalizing a single-variable belief over itself is the identity
    const auto self = marginalize(marg, std::vector<std::string>{"intention"});
    CHECK(self.distribution()[0] == Catch::Approx(marg.distribution()[0]));

    CHECK_THROWS_AS(marginalize(marg, std::vector<std::string>{"nope"}), input_error);
}

TEST_CASE("posterior sums to one and is nonnegative") {
    const auto kb = parse_kb(kSmallKb);
    const std::vector<Fact> facts{{"time", "afternoon"}};
    const auto b = infer(kb, facts, std::vector<std::string>{"identity"});
    double sum = 0.0;
    for (const auto& [_, p] : b.entries) {
        CHECK(p >= 0.0);
        sum += p;
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
}

TEST_CASE("attach_classifier_evidence installs the four confusion atoms") {
    const auto kb = parse_kb(kSmallKb);
    ConfusionMatrix c;
    c.p = {{{0.74, 0.26}, {0.29, 0.71}}};
    const auto kb2 = attach_classifier_evidence(kb, c);

    const int slrn = kb2.var_index(kPredictedVar);
    REQUIRE(slrn >= 0);
    const int intention = kb2.var_index(kIntentionVar);
    int count = 0;
    for (const auto& a : kb2.atoms) {
        if (a.head.var != slrn) continue;
        ++count;
        REQUIRE(a.condition.size() == 1);
        CHECK(a.condition[0].var == intention);
    }
    CHECK(count == 4);

    // pr(s_lrn=not_interested | intention=not_interested) = 0.71
    bool tn = false;
    for (const auto& a : kb2.atoms)
        if (a.head.var == slrn && a.head.value == 1 && a.condition[0].value == 1 &&
            a.prob == 0.71)
            tn = true;
    CHECK(tn);

    // attaching twice replaces rather than duplicates
    const auto kb3 = attach_classifier_evidence(kb2, ConfusionMatrix::uniform());
    CHECK(kb3.variables.size() == kb2.variables.size());
    int count3 = 0;
    for (const auto& a : kb3.atoms)
        if (a.head.var == kb3.var_index(kPredictedVar)) ++count3;
    CHECK(count3 == 4);
}

TEST_CASE("identity confusion matrix makes the prediction decisive") {
    const auto kb = parse_kb(kSmallKb);
    ConfusionMatrix ident;
    ident.p = {{{1.0, 0.0}, {0.0, 1.0}}};
    const auto kb2 = attach_classifier_evidence(kb, ident);
    const std::vector<Fact> facts{{kPredictedVar, "interested"}};
    const auto b = infer(kb2, facts, std::vector<std::string>{kIntentionVar});
    CHECK(b.distribution()[0] == Catch::Approx(1.0));
}

TEST_CASE("uniform confusion matrix leaves the intention posterior unchanged") {
    const auto kb = parse_kb(kSmallKb);
    const auto kb2 = attach_classifier_evidence(kb, ConfusionMatrix::uniform());
    for (const char* time : {"morning", "afternoon", "evening"}) {
        const std::vector<Fact> base_facts{{"time", time}};
        std::vector<Fact> with_pred = base_facts;
        with_pred.push_back({kPredictedVar, "not_interested"});

        const auto before = infer(kb, base_facts, std::vector<std::string>{kIntentionVar});
        const auto after = infer(kb2, with_pred, std::vector<std::string>{kIntentionVar});
        for (int i = 0; i < 2; ++i)
            CHECK(std::abs(before.distribution()[static_cast<std::size_t>(i)] -
                           after.distribution()[static_cast<std::size_t>(i)]) < 1e-12);
    }
}

TEST_CASE("print then parse is the identity") {
    Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        auto sub = rng.derive(static_cast<std::uint64_t>(trial));
        auto kb = oracle::random_kb(sub);
        if (sub.bernoulli(0.5)) {
            const auto& v = kb.variables[0];
            kb.facts.push_back({v.name, v.range[0]});
            kb.finalize();
        }
        const auto reparsed = parse_kb(print_kb(kb));
        CHECK(reparsed == kb);
    }
}

TEST_CASE("ancestral sampling follows the declared distributions") {
    const auto kb = parse_kb(kSmallKb);
    Rng rng(4242);
    const int n = 100000;
    int visitors = 0, visitor_afternoons = 0;
    for (int i = 0; i < n; ++i) {
        const auto assign = sample_assignment(kb, rng);
        if (assign[0] == kb.value_index(0, "visitor")) {
            ++visitors;
            if (assign[1] == kb.value_index(1, "afternoon")) ++visitor_afternoons;
        }
    }
    CHECK(std::abs(visitors / double(n) - 0.3) < 0.01);
    CHECK(std::abs(visitor_afternoons / double(visitors) - 0.7) < 0.01);
}

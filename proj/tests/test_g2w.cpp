#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "flowc/g2w.hpp"
#include "flowc/interp.hpp"
#include "random_flowcharts.hpp"

using namespace flowc;
using testing::parse_doc;

namespace {

WhileProgram structure(const FlowchartDoc& doc)
{
    auto result = transform(doc);
    if (auto* d = std::get_if<Diagnostic>(&result))
        FAIL("transform failed: " << d->message);
    return std::get<WhileProgram>(result);
}

void collect_origins(const Seq& seq, std::set<InstructionId>& out)
{
    for (const auto& item : seq.items) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                out.insert(n.origin);
                if constexpr (std::is_same_v<T, WhileLoop>) {
                    CHECK_FALSE(n.cond_source.empty());
                    collect_origins(n.body, out);
                } else if constexpr (std::is_same_v<T, IfNode>) {
                    CHECK_FALSE((n.then_body.empty() && n.else_body.empty()));
                    collect_origins(n.then_body, out);
                    collect_origins(n.else_body, out);
                }
            },
            item.node);
    }
}

}  // namespace

TEST_CASE("Euclid folds into three statements, one loop and two prints")
{
    auto program = structure(testing::bundled("euclid"));
    CHECK(describe(program) == "[m=6 n=2 r = m % n while(r != 0)[m = n n = r r = m % n] "
                               "print \"Greatest common divisor is:\" print n]");
    CHECK(fold_stats(program) == FoldStats{1, 0, 8, 2});
    const auto& loop = std::get<WhileLoop>(program.body.items[3].node);
    CHECK_FALSE(loop.negated);
    CHECK(loop.origin == "test");
    CHECK(lang::to_sexpr(*loop.cond) == "(!= r 0)");
}

TEST_CASE("straight-line blocks stay a flat sequence")
{
    auto program = structure(parse_doc(R"({"entry":"a","instructions":{
        "a":{"kind":"block","code":["x = 1","y = 2"],"next":"b"},
        "b":{"kind":"block","code":["print x + y"],"next":null}}})"));
    CHECK(describe(program) == "[x = 1 y = 2 print x + y]");
    CHECK(fold_stats(program) == FoldStats{0, 0, 3, 1});
}

TEST_CASE("diamond becomes an If followed by the join")
{
    auto doc = parse_doc(R"({"entry":"c","instructions":{
        "c":{"kind":"branch","condition":"x > 0","true_next":"a","false_next":"b"},
        "a":{"kind":"block","code":["y = 1"],"next":"j"},
        "b":{"kind":"block","code":["y = 2"],"next":"j"},
        "j":{"kind":"block","code":["print y"],"next":null}}})");
    auto program = structure(doc);
    CHECK(describe(program) == "[if(x > 0)[y = 1]else[y = 2] print y]");
    for (int x : {-1, 1}) {
        auto seeded = doc;
        seeded.instructions.emplace("s", Block{"s", {"x = " + std::to_string(x)}, std::string("c")});
        seeded.entry = "s";
        auto p = structure(seeded);
        CHECK(run(p).output == run_goto(seeded).output);
        CHECK(run(p).output == (x > 0 ? "1\n" : "2\n"));
    }
}

TEST_CASE("If with a missing FALSE edge has no else arm")
{
    auto program = structure(parse_doc(R"({"entry":"c","instructions":{
        "c":{"kind":"branch","condition":"1 > 0","true_next":"t","false_next":null},
        "t":{"kind":"block","code":["print 1"],"next":null}}})"));
    CHECK(describe(program) == "[if(1 > 0)[print 1]]");
}

TEST_CASE("loop on the FALSE edge is negated")
{
    auto program = structure(parse_doc(R"({"entry":"i","instructions":{
        "i":{"kind":"block","code":["k = 0"],"next":"w"},
        "w":{"kind":"branch","condition":"k >= 3","true_next":"done","false_next":"body"},
        "body":{"kind":"block","code":["k += 1"],"next":"w"},
        "done":{"kind":"block","code":["print k"],"next":null}}})"));
    CHECK(describe(program) == "[k = 0 while-not(k >= 3)[k += 1] print k]");
    CHECK(run(program).output == "3\n");
}

TEST_CASE("a loop without FALSE edge ends the program after the loop")
{
    auto program = structure(parse_doc(R"({"entry":"w","instructions":{
        "w":{"kind":"branch","condition":"0","true_next":"b","false_next":null},
        "b":{"kind":"block","code":["print 1"],"next":"w"}}})"));
    CHECK(describe(program) == "[while(0)[print 1]]");
}

TEST_CASE("missing TRUE edge is C3")
{
    auto d = std::get<Diagnostic>(transform(parse_doc(R"({"entry":"w","instructions":{
        "w":{"kind":"branch","condition":"x","true_next":null,"false_next":"b"},
        "b":{"kind":"block","code":["print 1"],"next":null}}})")));
    CHECK(d.rule == Rule::C3_NO_JOIN);
    CHECK(d.instruction == std::optional<InstructionId>("w"));
}

TEST_CASE("both arms looping back is C2")
{
    auto d = std::get<Diagnostic>(transform(parse_doc(R"({"entry":"w","instructions":{
        "w":{"kind":"branch","condition":"x","true_next":"a","false_next":"b"},
        "a":{"kind":"block","code":["x = 0"],"next":"w"},
        "b":{"kind":"block","code":["x = 1"],"next":"w"}}})")));
    CHECK(d.rule == Rule::C2_BAD_LOOP_TARGET);
}

TEST_CASE("a branch whose arms meet immediately still evaluates its condition")
{
    auto doc = parse_doc(R"J({"entry":"c","instructions":{
        "c":{"kind":"branch","condition":"f(1)","true_next":"j","false_next":"j"},
        "j":{"kind":"block","code":["print 2"],"next":null}}})J");
    auto program = structure(doc);
    CHECK(describe(program) == "[f(1) print 2]");
    CHECK(std::holds_alternative<lang::ExprStmt>(std::get<StmtNode>(program.body.items[0].node).stmt));
}

TEST_CASE("fold_stats on nested loops and the empty program")
{
    CHECK(fold_stats(WhileProgram{}) == FoldStats{0, 0, 0, 0});
    auto program = structure(parse_doc(R"({"entry":"i","instructions":{
        "i":{"kind":"block","code":["a = 0"],"next":"outer"},
        "outer":{"kind":"branch","condition":"a < 2","true_next":"reset","false_next":null},
        "reset":{"kind":"block","code":["b = 0"],"next":"inner"},
        "inner":{"kind":"branch","condition":"b < 2","true_next":"work","false_next":"step"},
        "work":{"kind":"block","code":["print a, b","b += 1"],"next":"inner"},
        "step":{"kind":"block","code":["a += 1"],"next":"outer"}}})"));
    // brute-force count: statements a=0, b=0, print, b+=1, a+=1; loops outer, inner
    CHECK(fold_stats(program) == FoldStats{2, 0, 5, 3});
    CHECK(run(program).output == "0 0\n0 1\n1 0\n1 1\n");
}

TEST_CASE("parse errors surface before structuring")
{
    auto d = std::get<Diagnostic>(transform(parse_doc(R"({"entry":"a","instructions":{
        "a":{"kind":"block","code":["x = = 1"],"next":null}}})")));
    CHECK(d.rule == Rule::PARSE_ERROR);
    CHECK(d.message.rfind("line 1, column 5", 0) == 0);
}

TEST_CASE("self-connection anywhere blocks the transform")
{
    auto d = std::get<Diagnostic>(transform(parse_doc(R"({"entry":"a","instructions":{
        "a":{"kind":"block","code":["x = 1"],"next":null},
        "z":{"kind":"block","code":["x = 1"],"next":"z"}}})")));
    CHECK(d.rule == Rule::C1_SELF_LOOP);
}

TEST_CASE("property: constrained graphs fold, cover reachable code and run identically")
{
    std::mt19937_64 rng(31337);
    for (int k = 0; k < 400; ++k) {
        FlowchartDoc doc = testing::random_constrained(rng);
        CAPTURE(serialize_flowchart(doc));
        auto result = transform(doc);
        REQUIRE(std::holds_alternative<WhileProgram>(result));
        const auto& program = std::get<WhileProgram>(result);
        std::set<InstructionId> origins;
        collect_origins(program.body, origins);
        for (const auto& id : reachable_from_entry(doc)) {
            const auto* block = std::get_if<Block>(&doc.at(id));
            if (!block || !block->code.empty())
                CHECK(origins.count(id) == 1);
        }
        RunOptions options;
        options.step_limit = 20000;
        auto mismatch = testing::compare_runs(doc, program, options);
        CHECK_MESSAGE(!mismatch, mismatch.value_or(""));
    }
}

TEST_CASE("property: unconstrained graphs either fold correctly or fail with C2/C3")
{
    std::mt19937_64 rng(4242);
    int folded = 0;
    for (int k = 0; k < 600; ++k) {
        FlowchartDoc doc = testing::random_unconstrained(rng);
        CAPTURE(serialize_flowchart(doc));
        auto result = transform(doc);
        if (auto* d = std::get_if<Diagnostic>(&result)) {
            CHECK((d->rule == Rule::C2_BAD_LOOP_TARGET || d->rule == Rule::C3_NO_JOIN));
            continue;
        }
        ++folded;
        RunOptions options;
        options.step_limit = 5000;
        auto mismatch = testing::compare_runs(doc, std::get<WhileProgram>(result), options);
        CHECK_MESSAGE(!mismatch, mismatch.value_or(""));
    }
    CHECK(folded > 50);
}

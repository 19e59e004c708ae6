#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "flowc/g2w.hpp"
#include "flowc/validator.hpp"
#include "random_flowcharts.hpp"

using namespace flowc;
using testing::parse_doc;

namespace {

std::vector<Diagnostic> errors_of(const std::vector<Diagnostic>& all)
{
    std::vector<Diagnostic> out;
    for (const auto& d : all)
        if (d.is_error())
            out.push_back(d);
    return out;
}

}  // namespace

TEST_CASE("Euclid is clean")
{
    CHECK(validate(testing::bundled("euclid")).empty());
}

TEST_CASE("every bundled flowchart is clean")
{
    for (const char* name : testing::kBundled) {
        CAPTURE(name);
        CHECK(validate(testing::bundled(name)).empty());
    }
}

TEST_CASE("self-connected block yields C1")
{
    auto doc = parse_doc(R"({"entry":"a","instructions":{"a":{"kind":"block","code":["x = 1"],"next":"a"}}})");
    auto d = validate(doc);
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule == Rule::C1_SELF_LOOP);
    CHECK(d[0].instruction == std::optional<InstructionId>("a"));
}

TEST_CASE("self-connected branch yields C1 on either edge")
{
    for (const char* text :
         {R"({"entry":"c","instructions":{"c":{"kind":"branch","condition":"x","true_next":"c","false_next":null}}})",
          R"({"entry":"c","instructions":{"c":{"kind":"branch","condition":"x","true_next":null,"false_next":"c"}}})"}) {
        auto d = validate(parse_doc(text));
        REQUIRE_FALSE(d.empty());
        CHECK(d[0].rule == Rule::C1_SELF_LOOP);
    }
}

TEST_CASE("non-joining diamond yields C3 at the branch")
{
    // the arms end in two distinct terminal blocks and never share a successor
    auto doc = parse_doc(R"({"entry":"s","instructions":{
        "s":{"kind":"block","code":["x = 1"],"next":"c"},
        "c":{"kind":"branch","condition":"x > 0","true_next":"t","false_next":"f"},
        "t":{"kind":"block","code":["print 1"],"next":null},
        "f":{"kind":"block","code":["print 2"],"next":null}}})");
    auto d = validate(doc);
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule == Rule::C3_NO_JOIN);
    CHECK(d[0].instruction == std::optional<InstructionId>("c"));
    CHECK(std::holds_alternative<Diagnostic>(transform(doc)));
}

TEST_CASE("a branch with no FALSE edge joins at the program end")
{
    auto doc = parse_doc(R"({"entry":"c","instructions":{
        "c":{"kind":"branch","condition":"1 > 0","true_next":"t","false_next":null},
        "t":{"kind":"block","code":["print 1"],"next":null}}})");
    CHECK(validate(doc).empty());
}

TEST_CASE("an arm may join by flowing into the other arm")
{
    auto doc = parse_doc(R"({"entry":"c","instructions":{
        "c":{"kind":"branch","condition":"x > 0","true_next":"t","false_next":"f"},
        "t":{"kind":"block","code":["y = 1"],"next":"j"},
        "f":{"kind":"block","code":["y = 2"],"next":"t"},
        "j":{"kind":"block","code":["print y"],"next":null}}})");
    CHECK(validate(doc).empty());
}

TEST_CASE("break-like exit from a loop body yields C3")
{
    auto doc = parse_doc(R"({"entry":"w","instructions":{
        "w":{"kind":"branch","condition":"x < 3","true_next":"c","false_next":null},
        "c":{"kind":"branch","condition":"x == 1","true_next":"out","false_next":"inc"},
        "inc":{"kind":"block","code":["x += 1"],"next":"w"},
        "out":{"kind":"block","code":["print x"],"next":null}}})");
    auto d = validate(doc);
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule == Rule::C3_NO_JOIN);
}

TEST_CASE("unreachable instructions are warnings only")
{
    auto doc = parse_doc(R"({"entry":"a","instructions":{
        "a":{"kind":"block","code":["x = 1"],"next":null},
        "lost":{"kind":"block","code":["x = 2"],"next":null}}})");
    auto d = validate(doc);
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule == Rule::W_UNREACHABLE);
    CHECK_FALSE(d[0].is_error());
    CHECK_FALSE(has_errors(d));
    CHECK(std::holds_alternative<WhileProgram>(transform(doc)));
}

TEST_CASE("parse errors point at the instruction and line")
{
    auto doc = parse_doc(R"({"entry":"a","instructions":{
        "a":{"kind":"block","code":["x = 1","x = = 3"],"next":"c"},
        "c":{"kind":"branch","condition":"x >","true_next":null,"false_next":null}}})");
    auto d = validate(doc);
    REQUIRE(d.size() == 2);
    CHECK(d[0].rule == Rule::PARSE_ERROR);
    CHECK(d[0].instruction == std::optional<InstructionId>("a"));
    CHECK(d[0].message.find("line 2") != std::string::npos);
    CHECK(d[1].instruction == std::optional<InstructionId>("c"));
}

TEST_CASE("loop back to a non-governing instruction yields C2")
{
    auto doc = parse_doc(R"({"entry":"a","instructions":{
        "a":{"kind":"block","code":["x = 0"],"next":"b"},
        "b":{"kind":"block","code":["x += 1"],"next":"c"},
        "c":{"kind":"branch","condition":"x < 3","true_next":"d","false_next":null},
        "d":{"kind":"block","code":["print x"],"next":"b"}}})");
    auto d = validate(doc);
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule == Rule::C2_BAD_LOOP_TARGET);
}

TEST_CASE("cycle without any branch yields C2")
{
    auto doc = parse_doc(R"({"entry":"a","instructions":{
        "a":{"kind":"block","code":["x = 0"],"next":"b"},
        "b":{"kind":"block","code":["x += 1"],"next":"a"}}})");
    auto d = validate(doc);
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule == Rule::C2_BAD_LOOP_TARGET);
}

TEST_CASE("validate_text passes structural diagnostics through")
{
    auto d = validate_text(R"({"entry":"a","instructions":{"a":{"kind":"block","code":[],"next":"zz"}}})");
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule == Rule::DANGLING_REF);
    CHECK(validate_text("nope").at(0).rule == Rule::PARSE_ERROR);
}

TEST_CASE("diagnostics serialize to rule, instruction and message")
{
    Diagnostic d{Rule::C1_SELF_LOOP, std::string("a"), "loops"};
    CHECK(to_json(d).dump() == R"({"instruction":"a","message":"loops","rule":"C1_SELF_LOOP"})");
    Diagnostic e{Rule::NO_ENTRY, std::nullopt, "none"};
    CHECK(to_json(e)["instruction"].is_null());
    CHECK(to_json_lines({d, e}) == to_json(d).dump() + "\n" + to_json(e).dump() + "\n");
    CHECK(rule_from_name("C3_NO_JOIN") == std::optional<Rule>(Rule::C3_NO_JOIN));
}

TEST_CASE("property: error-free validation iff transform succeeds")
{
    std::mt19937_64 rng(99);
    int succeeded = 0;
    for (int k = 0; k < 1500; ++k) {
        FlowchartDoc doc = k % 3 ? testing::random_unconstrained(rng) : testing::random_constrained(rng);
        if (k % 5 == 0) {
            // occasionally break a random edge into a self-connection
            auto it = std::next(doc.instructions.begin(), static_cast<long>(k % doc.instructions.size()));
            if (auto* b = std::get_if<Block>(&it->second))
                b->next = b->id;
        }
        bool clean = errors_of(validate(doc)).empty();
        bool transforms = std::holds_alternative<WhileProgram>(transform(doc));
        CHECK(clean == transforms);
        succeeded += transforms;
    }
    CHECK(succeeded > 300);
}

TEST_CASE("property: an unreachable component never adds C1 for existing nodes")
{
    std::mt19937_64 rng(5);
    for (int k = 0; k < 300; ++k) {
        FlowchartDoc doc = testing::random_unconstrained(rng);
        auto before = errors_of(validate(doc));
        FlowchartDoc extended = doc;
        extended.instructions.emplace("island_a", Block{"island_a", {"q = 1"}, std::string("island_b")});
        extended.instructions.emplace("island_b", Branch{"island_b", "q < 2", std::string("island_a"), std::nullopt});
        auto after = validate(extended);
        for (const auto& d : after) {
            if (d.rule == Rule::C1_SELF_LOOP && doc.contains(*d.instruction)) {
                bool existed = false;
                for (const auto& b : before)
                    existed |= b == d;
                CHECK(existed);
            }
            if (d.instruction && d.instruction->rfind("island", 0) == 0)
                CHECK(d.rule == Rule::W_UNREACHABLE);
        }
        CHECK(errors_of(after) == before);
    }
}

#include "flowc/g2w.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace flowc {

namespace {

std::string trim(const std::string& s)
{
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

struct ParsedBlock {
    std::vector<lang::Stmt> stmts;
    std::vector<std::string> sources;
};

struct ParsedBranch {
    lang::ExprPtr cond;
    std::string source;
};

struct ParsedCode {
    std::unordered_map<InstructionId, ParsedBlock> blocks;
    std::unordered_map<InstructionId, ParsedBranch> branches;
    std::vector<Diagnostic> errors;
};

ParsedCode parse_reachable(const FlowchartDoc& doc)
{
    ParsedCode parsed;
    for (const auto& id : reachable_from_entry(doc)) {
        const Instruction& instruction = doc.at(id);
        if (const auto* block = std::get_if<Block>(&instruction)) {
            ParsedBlock out;
            for (size_t line = 0; line < block->code.size(); ++line) {
                std::string source = trim(block->code[line]);
                try {
                    out.stmts.push_back(lang::parse_statement(source));
                    out.sources.push_back(std::move(source));
                } catch (const lang::SyntaxError& e) {
                    parsed.errors.push_back({Rule::PARSE_ERROR, id,
                                             "line " + std::to_string(line + 1) + ", " + e.what()});
                }
            }
            parsed.blocks.emplace(id, std::move(out));
        } else {
            const auto& branch = std::get<Branch>(instruction);
            std::string source = trim(branch.condition);
            try {
                parsed.branches.emplace(id, ParsedBranch{lang::parse_expression(source), source});
            } catch (const lang::SyntaxError& e) {
                parsed.errors.push_back({Rule::PARSE_ERROR, id, std::string("condition, ") + e.what()});
            }
        }
    }
    return parsed;
}

// Where a chain of instructions stopped: the program end, or a node that an
// enclosing construct is waiting for (a loop head or a join point).
struct Exit {
    std::optional<InstructionId> target;  // nullopt: program end

    bool is_end() const { return !target.has_value(); }
    bool operator==(const Exit&) const = default;
};

std::string describe_exit(const Exit& exit)
{
    return exit.is_end() ? "the program end" : "'" + *exit.target + "'";
}

struct ChainFrame {
    std::optional<InstructionId> cur;
    InstructionId from;
    Seq seq;
};

struct BranchFrame {
    enum class Kind { LoopTrue, LoopFalse, If };
    enum class Phase { Body, Then, Else };

    const Branch* branch;
    Kind kind;
    Phase phase;
    std::vector<InstructionId> stops;  // stop nodes this frame currently holds
    Seq then_seq;
    Exit expected;
};

struct StructureError {
    Diagnostic diagnostic;
};

class Structurer {
public:
    Structurer(const FlowchartDoc& doc, const ParsedCode& code) : doc_(doc), code_(code) {}

    WhileProgram run()
    {
        frames_.emplace_back(ChainFrame{doc_.entry, doc_.entry, {}});
        std::optional<Seq> result;
        while (!frames_.empty()) {
            if (auto* chain = std::get_if<ChainFrame>(&frames_.back())) {
                if (auto exit = advance_chain(*chain)) {
                    Seq seq = std::move(chain->seq);
                    frames_.pop_back();
                    if (frames_.empty()) {
                        // nothing is waiting at top level, so only the end can be reached
                        result = std::move(seq);
                    } else {
                        deliver(std::get<BranchFrame>(frames_.back()), std::move(seq), *exit);
                    }
                }
            }
        }
        return WhileProgram{std::move(*result)};
    }

private:
    const FlowchartDoc& doc_;
    const ParsedCode& code_;
    std::unordered_set<InstructionId> processed_;
    std::unordered_map<InstructionId, int> stop_count_;
    std::vector<std::variant<ChainFrame, BranchFrame>> frames_;

    [[noreturn]] static void fail(Rule rule, const InstructionId& at, std::string message)
    {
        throw StructureError{{rule, at, std::move(message)}};
    }

    bool is_stop(const InstructionId& id) const
    {
        auto it = stop_count_.find(id);
        return it != stop_count_.end() && it->second > 0;
    }

    void add_stop(BranchFrame& frame, const InstructionId& id)
    {
        ++stop_count_[id];
        frame.stops.push_back(id);
    }

    void release_stops(BranchFrame& frame)
    {
        for (const auto& id : frame.stops)
            --stop_count_[id];
        frame.stops.clear();
    }

    // Nodes reachable from `start` without entering stop nodes, processed
    // nodes or `avoid`. Sets `hit` when `avoid` itself is reached.
    std::vector<InstructionId> reach(const InstructionId& start, const InstructionId& avoid, bool& hit) const
    {
        hit = false;
        std::vector<InstructionId> found;
        std::unordered_set<InstructionId> seen;
        std::vector<InstructionId> stack{start};
        while (!stack.empty()) {
            InstructionId id = std::move(stack.back());
            stack.pop_back();
            if (id == avoid) {
                hit = true;
                continue;
            }
            if (!seen.insert(id).second || is_stop(id) || processed_.count(id))
                continue;
            found.push_back(id);
            for (const auto& edge : successors(doc_, id))
                stack.push_back(edge.target);
        }
        return found;
    }

    // Walks straight-line code; returns the exit once the chain ends, or
    // nullopt after pushing a frame for a branch.
    std::optional<Exit> advance_chain(ChainFrame& chain)
    {
        for (;;) {
            if (!chain.cur)
                return Exit{std::nullopt};
            const InstructionId id = *chain.cur;
            if (is_stop(id))
                return Exit{id};
            if (processed_.count(id))
                fail(Rule::C2_BAD_LOOP_TARGET, chain.from,
                     "'" + chain.from + "' jumps back to '" + id +
                         "', which is not the governing branch of a loop");
            processed_.insert(id);

            const Instruction& instruction = doc_.at(id);
            if (const auto* block = std::get_if<Block>(&instruction)) {
                const ParsedBlock& parsed = code_.blocks.at(id);
                for (size_t i = 0; i < parsed.stmts.size(); ++i)
                    chain.seq.items.push_back({StmtNode{parsed.stmts[i], parsed.sources[i], id}});
                chain.from = id;
                chain.cur = block->next;
                continue;
            }
            start_branch(std::get<Branch>(instruction));
            return std::nullopt;
        }
    }

    void start_branch(const Branch& branch)
    {
        if (!branch.true_next)
            fail(Rule::C3_NO_JOIN, branch.id, "branch '" + branch.id + "' has no TRUE edge");

        bool true_loops = false;
        bool false_loops = false;
        reach(*branch.true_next, branch.id, true_loops);
        std::vector<InstructionId> false_reach;
        if (branch.false_next)
            false_reach = reach(*branch.false_next, branch.id, false_loops);

        if (true_loops && false_loops)
            fail(Rule::C2_BAD_LOOP_TARGET, branch.id,
                 "both arms of branch '" + branch.id + "' loop back to it");

        BranchFrame frame{&branch, BranchFrame::Kind::If, BranchFrame::Phase::Then, {}, {}, Exit{}};
        InstructionId first;
        if (true_loops || false_loops) {
            frame.kind = true_loops ? BranchFrame::Kind::LoopTrue : BranchFrame::Kind::LoopFalse;
            frame.phase = BranchFrame::Phase::Body;
            add_stop(frame, branch.id);
            first = true_loops ? *branch.true_next : *branch.false_next;
        } else {
            // The TRUE arm runs until it meets anything the FALSE arm can reach.
            for (const auto& id : false_reach)
                add_stop(frame, id);
            first = *branch.true_next;
        }
        frames_.emplace_back(std::move(frame));
        frames_.emplace_back(ChainFrame{first, branch.id, {}});
    }

    void finish_branch(WhileNode node, std::optional<InstructionId> next)
    {
        const InstructionId from = std::get<BranchFrame>(frames_.back()).branch->id;
        frames_.pop_back();
        auto& parent = std::get<ChainFrame>(frames_.back());
        parent.seq.items.push_back(std::move(node));
        parent.cur = std::move(next);
        parent.from = from;
    }

    void deliver(BranchFrame& frame, Seq seq, const Exit& exit)
    {
        const Branch& b = *frame.branch;
        const ParsedBranch& cond = code_.branches.at(b.id);
        switch (frame.phase) {
        case BranchFrame::Phase::Body: {
            release_stops(frame);
            if (exit.target != b.id) {
                if (exit.is_end())
                    fail(Rule::C3_NO_JOIN, b.id,
                         "the loop body of '" + b.id + "' reaches the program end without returning to it");
                if (processed_.count(*exit.target))
                    fail(Rule::C2_BAD_LOOP_TARGET, b.id,
                         "the loop body of '" + b.id + "' jumps to '" + *exit.target + "' instead of returning to it");
                fail(Rule::C3_NO_JOIN, b.id,
                     "the loop body of '" + b.id + "' leaves the loop at '" + *exit.target + "'");
            }
            bool negated = frame.kind == BranchFrame::Kind::LoopFalse;
            auto next = negated ? b.true_next : b.false_next;
            finish_branch({WhileLoop{cond.cond, cond.source, negated, std::move(seq), b.id}}, next);
            return;
        }
        case BranchFrame::Phase::Then: {
            std::vector<InstructionId> false_reach = std::move(frame.stops);
            frame.stops.clear();
            for (const auto& id : false_reach)
                --stop_count_[id];
            frame.then_seq = std::move(seq);
            frame.expected = exit;
            frame.phase = BranchFrame::Phase::Else;
            if (!exit.is_end() &&
                std::find(false_reach.begin(), false_reach.end(), *exit.target) != false_reach.end())
                add_stop(frame, *exit.target);  // the join point
            if (!b.false_next) {
                deliver(frame, Seq{}, Exit{std::nullopt});
                return;
            }
            frames_.emplace_back(ChainFrame{b.false_next, b.id, {}});
            return;
        }
        case BranchFrame::Phase::Else: {
            release_stops(frame);
            if (exit != frame.expected)
                fail(Rule::C3_NO_JOIN, b.id,
                     "the arms of branch '" + b.id + "' do not join: the TRUE arm reaches " +
                         describe_exit(frame.expected) + ", the FALSE arm reaches " + describe_exit(exit));
            if (exit.is_end() && b.false_next)
                fail(Rule::C3_NO_JOIN, b.id,
                     "the arms of branch '" + b.id + "' end separately and never share a successor");
            auto next = frame.expected.target;
            if (frame.then_seq.empty() && seq.empty()) {
                // both arms go straight to the join; only the condition's evaluation remains
                finish_branch({StmtNode{lang::ExprStmt{cond.cond}, cond.source, b.id}}, next);
                return;
            }
            finish_branch({IfNode{cond.cond, cond.source, std::move(frame.then_seq), std::move(seq), b.id}}, next);
            return;
        }
        }
    }
};

void fold(const Seq& seq, int depth, FoldStats& stats)
{
    for (const auto& item : seq.items) {
        stats.max_depth = std::max(stats.max_depth, depth);
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, StmtNode>) {
                    ++stats.stmt_count;
                } else if constexpr (std::is_same_v<T, WhileLoop>) {
                    ++stats.while_count;
                    fold(n.body, depth + 1, stats);
                } else {
                    ++stats.if_count;
                    fold(n.then_body, depth + 1, stats);
                    fold(n.else_body, depth + 1, stats);
                }
            },
            item.node);
    }
}

void describe_seq(const Seq& seq, std::string& out)
{
    out += '[';
    for (size_t i = 0; i < seq.items.size(); ++i) {
        if (i)
            out += ' ';
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, StmtNode>) {
                    out += n.source;
                } else if constexpr (std::is_same_v<T, WhileLoop>) {
                    out += n.negated ? "while-not(" : "while(";
                    out += n.cond_source + ")";
                    describe_seq(n.body, out);
                } else {
                    out += "if(" + n.cond_source + ")";
                    describe_seq(n.then_body, out);
                    if (!n.else_body.empty()) {
                        out += "else";
                        describe_seq(n.else_body, out);
                    }
                }
            },
            seq.items[i].node);
    }
    out += ']';
}

}  // namespace

std::vector<Diagnostic> find_self_loops(const FlowchartDoc& doc)
{
    std::vector<Diagnostic> found;
    for (const auto& [id, instruction] : doc.instructions) {
        for (const auto& edge : successors(doc, id)) {
            if (edge.target == id) {
                found.push_back({Rule::C1_SELF_LOOP, id,
                                 "'" + id + "' connects to itself (" + std::string(edge_label_name(edge.label)) +
                                     " edge), which would loop forever"});
                break;
            }
        }
    }
    return found;
}

std::vector<Diagnostic> find_parse_errors(const FlowchartDoc& doc)
{
    return parse_reachable(doc).errors;
}

TransformResult transform(const FlowchartDoc& doc)
{
    if (auto loops = find_self_loops(doc); !loops.empty())
        return loops.front();
    if (!doc.contains(doc.entry))
        return Diagnostic{Rule::NO_ENTRY, std::nullopt, "entry '" + doc.entry + "' does not exist"};
    ParsedCode code = parse_reachable(doc);
    if (!code.errors.empty())
        return code.errors.front();
    try {
        return Structurer(doc, code).run();
    } catch (const StructureError& e) {
        return e.diagnostic;
    }
}

FoldStats fold_stats(const WhileProgram& program)
{
    FoldStats stats;
    fold(program.body, 1, stats);
    return stats;
}

std::string describe(const WhileProgram& program)
{
    std::string out;
    describe_seq(program.body, out);
    return out;
}

}  // namespace flowc

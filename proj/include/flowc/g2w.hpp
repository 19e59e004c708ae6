#pragma once

// GOTO-to-WHILE structuring: folds a constrained flowchart graph into a tree
// of sequences, WHILE loops and IF branches.

#include <string>
#include <variant>
#include <vector>

#include "flowc/diagnostic.hpp"
#include "flowc/flowchart.hpp"
#include "flowc/minilang.hpp"

namespace flowc {

struct WhileNode;

struct Seq {
    std::vector<WhileNode> items;

    bool empty() const { return items.empty(); }
};

struct StmtNode {
    lang::Stmt stmt;
    std::string source;  ///< statement text as written in the block
    InstructionId origin;
};

struct WhileLoop {
    lang::ExprPtr cond;
    std::string cond_source;
    bool negated = false;  ///< the loop hangs off the FALSE edge: `while not (cond)`
    Seq body;
    InstructionId origin;
};

struct IfNode {
    lang::ExprPtr cond;
    std::string cond_source;
    Seq then_body;
    Seq else_body;  ///< possibly empty
    InstructionId origin;
};

struct WhileNode {
    std::variant<StmtNode, WhileLoop, IfNode> node;
};

struct WhileProgram {
    Seq body;
};

using TransformResult = std::variant<WhileProgram, Diagnostic>;

/// Structures `doc`. Fails with C1 (a self-connected instruction anywhere in
/// the document), PARSE_ERROR (code in a reachable instruction), C2 (an edge
/// returns to an already structured instruction other than the governing
/// branch) or C3 (branch arms that neither join nor loop).
TransformResult transform(const FlowchartDoc& doc);

/// Self-connections, in instruction-id order.
std::vector<Diagnostic> find_self_loops(const FlowchartDoc& doc);

/// PARSE_ERRORs for every unparsable statement or condition in reachable instructions.
std::vector<Diagnostic> find_parse_errors(const FlowchartDoc& doc);

struct FoldStats {
    int while_count = 0;
    int if_count = 0;
    int stmt_count = 0;
    int max_depth = 0;  ///< top-level nodes sit at depth 1

    bool operator==(const FoldStats&) const = default;
};

FoldStats fold_stats(const WhileProgram& program);

/// Compact structural rendering, e.g. `[m=6 while(r != 0)[m = n] print n]`.
std::string describe(const WhileProgram& program);

}  // namespace flowc

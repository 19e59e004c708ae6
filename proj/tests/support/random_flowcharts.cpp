#include "random_flowcharts.hpp"

#include <memory>
#include <vector>

namespace flowc::testing {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

const char* kVars[] = {"a", "b", "c"};

std::string random_operand(std::mt19937_64& rng)
{
    if (pick(rng, 0, 2) == 0)
        return std::to_string(pick(rng, 0, 9));
    return kVars[pick(rng, 0, 2)];
}

std::string random_statement(std::mt19937_64& rng, bool division)
{
    std::string target = kVars[pick(rng, 0, 2)];
    switch (pick(rng, 0, division ? 6 : 5)) {
    case 0: return target + " = " + random_operand(rng) + " + " + random_operand(rng);
    case 1: return target + " = " + random_operand(rng) + " - " + random_operand(rng);
    case 2: return target + " = (" + random_operand(rng) + " * " + random_operand(rng) + ") % 97";
    case 3: return target + " += " + std::to_string(pick(rng, 1, 5));
    case 4: return "print " + random_operand(rng) + ", " + random_operand(rng);
    case 5: return target + " = " + random_operand(rng) + " % (" + random_operand(rng) + " + 1)";
    default: return target + " = " + random_operand(rng) + " / " + random_operand(rng);
    }
}

std::string random_condition(std::mt19937_64& rng)
{
    static const char* ops[] = {"<", "<=", ">", ">=", "==", "!="};
    std::string cond = random_operand(rng) + " " + ops[pick(rng, 0, 5)] + " " + random_operand(rng);
    if (pick(rng, 0, 5) == 0)
        cond = "not " + cond;
    if (pick(rng, 0, 6) == 0)
        cond += std::string(pick(rng, 0, 1) ? " and " : " or ") + random_operand(rng) + " % 2 == 0";
    return cond;
}

// Structured program shape, lowered to a graph afterwards.
struct Item;
using Items = std::vector<Item>;

struct Item {
    enum Kind { Stmts, If, While } kind = Stmts;
    std::vector<std::string> code;  // Stmts
    std::string cond;               // If / While
    Items then_items;               // If then / While body
    Items else_items;               // If else
    bool negated = false;
    int counter = -1;
};

struct Builder {
    std::mt19937_64& rng;
    const GenOptions& options;
    int counters = 0;
    std::size_t instructions = 1;  // the initializing entry block

    Items seq(int depth)
    {
        Items items;
        int n = pick(rng, 1, 3);
        for (int k = 0; k < n && instructions < options.max_instructions; ++k)
            items.push_back(item(depth));
        if (items.empty())
            items.push_back(stmts());
        return items;
    }

    Item stmts()
    {
        Item it;
        int n = pick(rng, 1, 3);
        for (int k = 0; k < n; ++k)
            it.code.push_back(random_statement(rng, options.allow_division));
        ++instructions;
        return it;
    }

    Item item(int depth)
    {
        int roll = pick(rng, 0, 9);
        if (depth >= 3 || instructions + 3 > options.max_instructions || roll < 4)
            return stmts();
        ++instructions;  // the branch
        Item it;
        if (roll < 7) {
            it.kind = Item::If;
            it.cond = random_condition(rng);
            it.then_items = seq(depth + 1);
            if (pick(rng, 0, 1) && instructions < options.max_instructions)
                it.else_items = seq(depth + 1);
            return it;
        }
        it.kind = Item::While;
        it.counter = counters++;
        it.negated = pick(rng, 0, 2) == 0;
        std::string k = "k" + std::to_string(it.counter);
        std::string bound = std::to_string(pick(rng, 0, 3));
        it.cond = it.negated ? k + " >= " + bound : k + " < " + bound;
        it.then_items = seq(depth + 1);
        Item step;
        step.code.push_back(k + " += 1");
        it.then_items.push_back(step);
        instructions += 2;  // the counter step and its reset
        return it;
    }
};

struct Lowering {
    FlowchartDoc doc;
    int next_id = 0;

    std::string fresh(const char* prefix) { return prefix + std::to_string(next_id++); }

    // Returns the entry of `items` whose exit continues at `cont`.
    std::optional<InstructionId> lower(const Items& items, std::optional<InstructionId> cont)
    {
        for (auto it = items.rbegin(); it != items.rend(); ++it)
            cont = lower_item(*it, cont);
        return cont;
    }

    std::optional<InstructionId> lower_item(const Item& item, std::optional<InstructionId> cont)
    {
        if (item.kind == Item::Stmts) {
            auto id = fresh("b");
            doc.instructions.emplace(id, Block{id, item.code, cont});
            return id;
        }
        auto id = fresh("c");
        if (item.kind == Item::If) {
            if (!item.else_items.empty() && !cont) {
                // two arms may only meet at an instruction, never at the program end
                auto join = fresh("b");
                doc.instructions.emplace(join, Block{join, {"print a, b, c"}, std::nullopt});
                cont = join;
            }
            auto then_entry = lower(item.then_items, cont);
            auto else_entry = item.else_items.empty() ? cont : lower(item.else_items, cont);
            doc.instructions.emplace(id, Branch{id, item.cond, then_entry, else_entry});
            return id;
        }
        // a loop needs its counter reset right before it; a negated loop needs a TRUE target
        bool negated = item.negated && cont.has_value();
        std::string cond = item.cond;
        if (item.negated && !negated) {
            auto at = cond.find(" >= ");
            cond = cond.substr(0, at) + " < " + cond.substr(at + 4);
        }
        auto body_entry = lower(item.then_items, id);
        if (negated)
            doc.instructions.emplace(id, Branch{id, cond, cont, body_entry});
        else
            doc.instructions.emplace(id, Branch{id, cond, body_entry, cont});
        auto init = fresh("b");
        doc.instructions.emplace(init, Block{init, {"k" + std::to_string(item.counter) + " = 0"}, id});
        return init;
    }
};

}  // namespace

FlowchartDoc random_constrained(std::mt19937_64& rng, const GenOptions& options)
{
    for (;;) {
        Builder builder{rng, options};
        Items program = builder.seq(0);
        Lowering lowering;
        lowering.doc.id = "random";
        auto init = lowering.fresh("b");
        auto body = lowering.lower(program, std::nullopt);
        lowering.doc.instructions.emplace(init, Block{init, {"a = 1", "b = 2", "c = 3"}, body});
        lowering.doc.entry = init;
        if (lowering.doc.instructions.size() <= options.max_instructions)
            return lowering.doc;
    }
}

FlowchartDoc random_unconstrained(std::mt19937_64& rng, const GenOptions& options)
{
    FlowchartDoc doc;
    doc.id = "wired";
    int n = pick(rng, 1, static_cast<int>(std::max<std::size_t>(options.max_instructions, 2) - 1));
    std::vector<InstructionId> ids;
    for (int k = 0; k < n; ++k)
        ids.push_back("n" + std::to_string(k));
    auto target = [&](const InstructionId& self) -> std::optional<InstructionId> {
        if (pick(rng, 0, 5) == 0)
            return std::nullopt;
        for (;;) {
            const auto& t = ids[static_cast<size_t>(pick(rng, 0, n - 1))];
            if (t != self || n == 1)
                return t == self ? std::nullopt : std::optional<InstructionId>(t);
        }
    };
    for (const auto& id : ids) {
        if (pick(rng, 0, 1) == 0) {
            std::vector<std::string> code;
            int lines = pick(rng, 0, 2);
            for (int k = 0; k < lines; ++k)
                code.push_back(random_statement(rng, options.allow_division));
            doc.instructions.emplace(id, Block{id, code, target(id)});
        } else {
            doc.instructions.emplace(id, Branch{id, random_condition(rng), target(id), target(id)});
        }
    }
    doc.instructions.emplace("init", Block{"init", {"a = 1", "b = 2", "c = 3"}, ids.front()});
    doc.entry = "init";
    return doc;
}

std::optional<std::string> compare_runs(const FlowchartDoc& doc, const WhileProgram& program,
                                        const RunOptions& options)
{
    RunResult graph = run_goto(doc, options);
    RunResult tree = run(program, options);
    if (graph.output != tree.output)
        return "stdout differs:\n--- goto\n" + graph.output + "--- tree\n" + tree.output;
    if (graph.env_final != tree.env_final)
        return "final environments differ";
    if (graph.steps_executed != tree.steps_executed)
        return "step counts differ: " + std::to_string(graph.steps_executed) + " vs " +
               std::to_string(tree.steps_executed);
    if (graph.error.has_value() != tree.error.has_value())
        return "only one run failed";
    if (graph.error && (graph.error->kind != tree.error->kind || graph.error->message != tree.error->message))
        return "errors differ: " + graph.error->message + " vs " + tree.error->message;
    return std::nullopt;
}

}  // namespace flowc::testing

#include "flowc/interp.hpp"

#include <unordered_map>

#include "flowc/bindings.hpp"
#include "flowc/evaluator.hpp"

namespace flowc {

std::string_view run_error_kind_name(RunErrorKind kind)
{
    switch (kind) {
    case RunErrorKind::StepLimit: return "step_limit";
    case RunErrorKind::Eval: return "runtime";
    case RunErrorKind::Parse: return "parse";
    }
    return "runtime";
}

namespace {

struct Halt {
    RunError error;
};

class Machine {
public:
    explicit Machine(const RunOptions& options)
        : limit_(options.step_limit),
          context_(std::make_shared<RunContext>(
              options.seed, options.catalog ? *options.catalog : procedural::PrefabCatalog::builtin()))
    {
        install_procedural(env_, context_);
    }

    void tick(const InstructionId& origin)
    {
        if (steps_ >= limit_)
            throw Halt{{RunErrorKind::StepLimit, "step limit of " + std::to_string(limit_) + " exceeded", origin}};
        ++steps_;
    }

    void exec(const lang::Stmt& stmt, const InstructionId& origin)
    {
        tick(origin);
        guarded(origin, [&] { lang::exec_statement(stmt, env_); });
    }

    bool test(const lang::Expr& cond, const InstructionId& origin)
    {
        tick(origin);
        bool result = false;
        guarded(origin, [&] { result = lang::eval_expression(cond, env_).truthy(); });
        return result;
    }

    RunResult finish(std::optional<RunError> error)
    {
        RunResult result;
        result.output = std::move(env_.output);
        result.scene = context_->scene;
        result.steps_executed = steps_;
        result.env_final = env_.variables;
        result.error = std::move(error);
        return result;
    }

private:
    template <typename F>
    void guarded(const InstructionId& origin, F&& body)
    {
        try {
            body();
        } catch (const Halt&) {
            throw;
        } catch (const std::bad_alloc&) {
            throw;
        } catch (const std::exception& e) {
            throw Halt{{RunErrorKind::Eval, e.what(), origin}};
        }
    }

    std::uint64_t limit_;
    std::uint64_t steps_ = 0;
    std::shared_ptr<RunContext> context_;
    lang::Environment env_;
};

void exec_seq(const Seq& seq, Machine& m);

void exec_node(const WhileNode& node, Machine& m)
{
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, StmtNode>) {
                m.exec(n.stmt, n.origin);
            } else if constexpr (std::is_same_v<T, WhileLoop>) {
                while (m.test(*n.cond, n.origin) != n.negated)
                    exec_seq(n.body, m);
            } else {
                exec_seq(m.test(*n.cond, n.origin) ? n.then_body : n.else_body, m);
            }
        },
        node.node);
}

void exec_seq(const Seq& seq, Machine& m)
{
    for (const auto& item : seq.items)
        exec_node(item, m);
}

struct CompiledInstruction {
    std::vector<lang::Stmt> stmts;
    lang::ExprPtr cond;
};

std::string trim(const std::string& s)
{
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos)
        return "";
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

const CompiledInstruction& compile(const FlowchartDoc& doc, const InstructionId& id,
                                   std::unordered_map<InstructionId, CompiledInstruction>& cache)
{
    if (auto it = cache.find(id); it != cache.end())
        return it->second;
    CompiledInstruction out;
    try {
        if (const auto* block = std::get_if<Block>(&doc.at(id))) {
            for (const auto& line : block->code)
                out.stmts.push_back(lang::parse_statement(trim(line)));
        } else {
            out.cond = lang::parse_expression(trim(std::get<Branch>(doc.at(id)).condition));
        }
    } catch (const lang::SyntaxError& e) {
        throw Halt{{RunErrorKind::Parse, e.what(), id}};
    }
    return cache.emplace(id, std::move(out)).first->second;
}

}  // namespace

RunResult run(const WhileProgram& program, const RunOptions& options)
{
    Machine m(options);
    try {
        exec_seq(program.body, m);
    } catch (const Halt& h) {
        return m.finish(h.error);
    }
    return m.finish(std::nullopt);
}

RunResult run_goto(const FlowchartDoc& doc, const RunOptions& options)
{
    Machine m(options);
    std::unordered_map<InstructionId, CompiledInstruction> cache;
    std::optional<InstructionId> pc;
    if (doc.contains(doc.entry))
        pc = doc.entry;
    // consecutive instructions passed without spending a step; more than the
    // instruction count means a cycle of empty blocks
    std::size_t idle = 0;
    try {
        while (pc) {
            const InstructionId id = *pc;
            const CompiledInstruction& code = compile(doc, id, cache);
            const Instruction& instruction = doc.at(id);
            if (const auto* block = std::get_if<Block>(&instruction)) {
                for (const auto& stmt : code.stmts)
                    m.exec(stmt, id);
                idle = code.stmts.empty() ? idle + 1 : 0;
                if (idle > doc.instructions.size())
                    throw Halt{{RunErrorKind::StepLimit, "cycle of empty blocks never terminates", id}};
                pc = block->next;
            } else {
                const auto& branch = std::get<Branch>(instruction);
                pc = m.test(*code.cond, id) ? branch.true_next : branch.false_next;
                idle = 0;
            }
            if (pc && !doc.contains(*pc))
                throw Halt{{RunErrorKind::Eval, "edge to unknown instruction '" + *pc + "'", id}};
        }
    } catch (const Halt& h) {
        return m.finish(h.error);
    }
    return m.finish(std::nullopt);
}

}  // namespace flowc

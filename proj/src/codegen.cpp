#include "flowc/codegen.hpp"

namespace flowc {

namespace {

class Emitter {
public:
    explicit Emitter(const EmitOptions& options) : options_(options) {}

    void seq(const Seq& body, int depth)
    {
        if (body.empty()) {
            line(depth, "pass", nullptr);
            return;
        }
        for (const auto& item : body.items)
            node(item, depth);
    }

    void top(const Seq& body)
    {
        for (const auto& item : body.items)
            node(item, 0);
    }

    std::string take() { return std::move(out_); }

private:
    const EmitOptions& options_;
    std::string out_;

    void line(int depth, const std::string& text, const InstructionId* origin)
    {
        out_.append(static_cast<size_t>(depth * options_.indent_width), ' ');
        out_ += text;
        if (options_.annotate && origin)
            out_ += "  # origin: " + *origin;
        out_ += '\n';
    }

    void node(const WhileNode& item, int depth)
    {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, StmtNode>) {
                    line(depth, n.source, &n.origin);
                } else if constexpr (std::is_same_v<T, WhileLoop>) {
                    line(depth, n.negated ? "while not (" + n.cond_source + "):" : "while " + n.cond_source + ":",
                         &n.origin);
                    seq(n.body, depth + 1);
                } else {
                    line(depth, "if " + n.cond_source + ":", &n.origin);
                    seq(n.then_body, depth + 1);
                    if (!n.else_body.empty()) {
                        line(depth, "else:", nullptr);
                        seq(n.else_body, depth + 1);
                    }
                }
            },
            item.node);
    }
};

}  // namespace

std::string emit_python(const WhileProgram& program, const EmitOptions& options)
{
    Emitter emitter(options);
    emitter.top(program.body);
    return emitter.take();
}

}  // namespace flowc

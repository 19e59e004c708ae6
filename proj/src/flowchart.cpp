#include "flowc/flowchart.hpp"

#include <unordered_set>

namespace flowc {

using nlohmann::json;

const InstructionId& instruction_id(const Instruction& instruction)
{
    return std::visit([](const auto& i) -> const InstructionId& { return i.id; }, instruction);
}

std::string_view edge_label_name(EdgeLabel label)
{
    switch (label) {
    case EdgeLabel::Next: return "NEXT";
    case EdgeLabel::True: return "TRUE";
    case EdgeLabel::False: return "FALSE";
    }
    return "?";
}

const Instruction& FlowchartDoc::at(const InstructionId& id) const
{
    auto it = instructions.find(id);
    if (it == instructions.end())
        throw LookupError("unknown instruction '" + id + "'");
    return it->second;
}

std::vector<Edge> successors(const FlowchartDoc& doc, const InstructionId& id)
{
    std::vector<Edge> edges;
    const Instruction& instruction = doc.at(id);
    if (const auto* block = std::get_if<Block>(&instruction)) {
        if (block->next)
            edges.push_back({EdgeLabel::Next, *block->next});
    } else {
        const auto& branch = std::get<Branch>(instruction);
        if (branch.true_next)
            edges.push_back({EdgeLabel::True, *branch.true_next});
        if (branch.false_next)
            edges.push_back({EdgeLabel::False, *branch.false_next});
    }
    return edges;
}

std::vector<InstructionId> reachable_from_entry(const FlowchartDoc& doc)
{
    std::vector<InstructionId> order;
    if (!doc.contains(doc.entry))
        return order;
    std::unordered_set<InstructionId> seen{doc.entry};
    std::vector<InstructionId> stack{doc.entry};
    while (!stack.empty()) {
        InstructionId id = std::move(stack.back());
        stack.pop_back();
        order.push_back(id);
        auto edges = successors(doc, id);
        // reversed so that TRUE/NEXT is explored before FALSE
        for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
            if (doc.contains(it->target) && seen.insert(it->target).second)
                stack.push_back(it->target);
        }
    }
    return order;
}

namespace {

Diagnostic parse_error(std::optional<InstructionId> at, std::string message)
{
    return {Rule::PARSE_ERROR, std::move(at), std::move(message)};
}

// Reads an optional edge field: absent or null means "no edge".
bool read_edge(const json& obj, const char* key, const InstructionId& id,
               std::optional<InstructionId>& out, std::vector<Diagnostic>& diags)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return true;
    if (!it->is_string()) {
        diags.push_back(parse_error(id, std::string("field '") + key + "' must be a string or null"));
        return false;
    }
    out = it->get<std::string>();
    return true;
}

}  // namespace

ParseOutcome parse_flowchart(std::string_view text)
{
    json parsed = json::parse(text.begin(), text.end(), nullptr, false);
    if (parsed.is_discarded())
        return {std::nullopt, {parse_error(std::nullopt, "malformed JSON document")}};
    return parse_flowchart_json(parsed);
}

ParseOutcome parse_flowchart_json(const json& root)
{
    std::vector<Diagnostic> diags;
    if (!root.is_object())
        return {std::nullopt, {parse_error(std::nullopt, "flowchart must be a JSON object")}};

    FlowchartDoc doc;
    if (auto it = root.find("id"); it != root.end() && !it->is_null()) {
        if (it->is_string())
            doc.id = it->get<std::string>();
        else
            diags.push_back(parse_error(std::nullopt, "field 'id' must be a string"));
    }
    if (auto it = root.find("metadata"); it != root.end() && !it->is_null()) {
        if (it->is_object())
            doc.metadata = *it;
        else
            diags.push_back(parse_error(std::nullopt, "field 'metadata' must be an object"));
    }

    static const json kNoInstructions = json::object();
    const json* instructions = &kNoInstructions;
    if (auto it = root.find("instructions"); it != root.end() && !it->is_null()) {
        if (!it->is_object()) {
            diags.push_back(parse_error(std::nullopt, "field 'instructions' must be an object"));
            return {std::nullopt, std::move(diags)};
        }
        instructions = &*it;
    }

    for (const auto& [id, body] : instructions->items()) {
        if (!body.is_object()) {
            diags.push_back(parse_error(id, "instruction must be an object"));
            continue;
        }
        auto kind = body.find("kind");
        if (kind == body.end() || !kind->is_string()) {
            diags.push_back(parse_error(id, "instruction is missing its 'kind'"));
            continue;
        }
        if (*kind == "block") {
            Block block{id, {}, std::nullopt};
            bool ok = true;
            if (auto code = body.find("code"); code != body.end() && !code->is_null()) {
                if (!code->is_array()) {
                    diags.push_back(parse_error(id, "field 'code' must be a list of strings"));
                    ok = false;
                } else {
                    for (const auto& line : *code) {
                        if (!line.is_string() || line.get<std::string>().empty()) {
                            diags.push_back(parse_error(id, "code lines must be non-empty strings"));
                            ok = false;
                            break;
                        }
                        block.code.push_back(line.get<std::string>());
                    }
                }
            }
            ok = read_edge(body, "next", id, block.next, diags) && ok;
            if (ok)
                doc.instructions.emplace(id, std::move(block));
        } else if (*kind == "branch") {
            Branch branch{id, {}, std::nullopt, std::nullopt};
            bool ok = true;
            auto cond = body.find("condition");
            if (cond == body.end() || !cond->is_string()) {
                diags.push_back(parse_error(id, "field 'condition' must be a string"));
                ok = false;
            } else {
                branch.condition = cond->get<std::string>();
            }
            ok = read_edge(body, "true_next", id, branch.true_next, diags) && ok;
            ok = read_edge(body, "false_next", id, branch.false_next, diags) && ok;
            if (ok)
                doc.instructions.emplace(id, std::move(branch));
        } else {
            diags.push_back(parse_error(id, "unknown instruction kind '" + kind->get<std::string>() + "'"));
        }
    }

    auto entry = root.find("entry");
    if (entry == root.end() || entry->is_null()) {
        diags.push_back({Rule::NO_ENTRY, std::nullopt, "document has no entry instruction"});
    } else if (!entry->is_string()) {
        diags.push_back(parse_error(std::nullopt, "field 'entry' must be a string or null"));
    } else {
        doc.entry = entry->get<std::string>();
        if (!instructions->contains(doc.entry))
            diags.push_back({Rule::NO_ENTRY, std::nullopt, "entry '" + doc.entry + "' does not exist"});
    }

    for (const auto& [id, instruction] : doc.instructions) {
        for (const auto& edge : successors(doc, id)) {
            if (!instructions->contains(edge.target))
                diags.push_back({Rule::DANGLING_REF, id,
                                 std::string(edge_label_name(edge.label)) + " edge points to missing instruction '" +
                                     edge.target + "'"});
        }
    }

    if (!diags.empty())
        return {std::nullopt, std::move(diags)};
    return {std::move(doc), {}};
}

json flowchart_to_json(const FlowchartDoc& doc)
{
    json instructions = json::object();
    for (const auto& [id, instruction] : doc.instructions) {
        json body;
        if (const auto* block = std::get_if<Block>(&instruction)) {
            body["kind"] = "block";
            body["code"] = block->code;
            body["next"] = block->next ? json(*block->next) : json(nullptr);
        } else {
            const auto& branch = std::get<Branch>(instruction);
            body["kind"] = "branch";
            body["condition"] = branch.condition;
            body["true_next"] = branch.true_next ? json(*branch.true_next) : json(nullptr);
            body["false_next"] = branch.false_next ? json(*branch.false_next) : json(nullptr);
        }
        instructions[id] = std::move(body);
    }
    json root;
    root["id"] = doc.id;
    root["entry"] = doc.entry;
    root["instructions"] = std::move(instructions);
    root["metadata"] = doc.metadata.is_null() ? json::object() : doc.metadata;
    return root;
}

std::string serialize_flowchart(const FlowchartDoc& doc)
{
    return flowchart_to_json(doc).dump(2, ' ', true) + "\n";
}

}  // namespace flowc

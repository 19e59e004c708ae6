#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "flowc/flowchart.hpp"

namespace flowc::testing {

inline std::string source_path(const std::string& relative)
{
    return std::string(FLOWC_SOURCE_DIR) + "/" + relative;
}

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline FlowchartDoc parse_doc(std::string_view text)
{
    auto outcome = parse_flowchart(text);
    if (!outcome.ok())
        throw std::runtime_error("fixture does not parse: " + to_json_lines(outcome.diagnostics));
    return *outcome.doc;
}

inline FlowchartDoc bundled(const std::string& name)
{
    return parse_doc(read_text(source_path("flowcharts/" + name + ".flow.json")));
}

inline const char* kBundled[] = {"euclid", "building", "details", "districts", "randomness", "grid_city"};

}  // namespace flowc::testing

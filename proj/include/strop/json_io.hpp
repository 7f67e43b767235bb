#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "strop/analyzer.hpp"

namespace strop {

enum class DiagramKind { Sewing, Saddle, Disc };

struct DiagramEntry {
    std::string name;
    DiagramKind kind = DiagramKind::Sewing;
    EdgeUnion edges;                      // sewing + saddle
    std::vector<Move> moves;              // sewing
    std::vector<InteractionPoint> points; // saddle
    std::vector<std::string> arc_labels;  // disc
};

struct InputDocument {
    std::optional<BraneContext> context;
    std::vector<DiagramEntry> diagrams;
};

/// Strict context loader; unknown fields rejected.
BraneContext parse_context(const nlohmann::json& j);
BraneContext parse_context_text(const std::string& bytes);

InputDocument parse_document(const std::string& bytes);
std::string render_document(const InputDocument& doc);

const DiagramEntry& find_diagram(const InputDocument& doc, const std::string& name);

nlohmann::ordered_json report_to_json(const AnalysisReport& rep);
std::string report_to_text(const AnalysisReport& rep);

std::string read_file(const std::string& path);

}  // namespace strop

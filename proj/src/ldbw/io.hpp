#pragma once

#include <string>

#include <json.hpp>

#include "ldbw/balance_g.hpp"
#include "ldbw/embed.hpp"
#include "ldbw/graph.hpp"
#include "ldbw/hampower.hpp"
#include "ldbw/partition_h.hpp"

namespace ldbw {

using Json = nlohmann::json;

// {"n": 4, "edges": [[0,1], ...]}
Json graph_to_json(const DenseGraph& g);
DenseGraph graph_from_json(const Json& j);
// Edge-list text ("p n m" header) or any JSON carrying a graph: a bare graph, or an
// object with a "graph" member.
DenseGraph parse_graph_text(const std::string& text);

// {"graph": {...}, "order": [...], "chi": [...], "r": 3}
Json h_to_json(const BandwidthedH& hb);
BandwidthedH h_from_json(const Json& j);

// {"l", "width", "cells", "v0", "reduced", "eps", "delta"}
Json structure_to_json(const CycleStructure& cs);
CycleStructure structure_from_json(const Json& j);

Json instance_to_json(const GeneratedInstance& inst);
Json witness_to_json(const WitnessSequence& w);
Json ham_report_to_json(const HamReport& r);
Json embedding_to_json(const EmbeddingResult& r);
Json error_to_json(const Error& e);

// Reads the keys of PipelineOptions from a flat object or from its "values" member.
PipelineOptions pipeline_options_from_json(const Json& j);

}  // namespace ldbw

#pragma once

#include <string>

#include "leadersel/bench_harness.hpp"
#include "leadersel/error_metric.hpp"
#include "leadersel/graph.hpp"
#include "leadersel/static_select.hpp"

namespace leadersel {

/// Shortest round-trip decimal form of v (locale-independent).
std::string format_double(double v);

/// Graph files: a text grammar
///     n <count>
///     e <i> <j> <nu>
/// with '#' comments, or the JSON equivalent {"n": ..., "edges": [[i,j,nu]]}.
/// Both are accepted interchangeably; parsing sniffs the format.
NoisyGraph parse_graph(const std::string& content);
NoisyGraph read_graph(const std::string& path);
std::string graph_to_text(const NoisyGraph& g);
std::string graph_to_json_string(const NoisyGraph& g);
/// Writes JSON when the path ends in .json, the text grammar otherwise.
void write_graph(const NoisyGraph& g, const std::string& path);

/// `node,error` rows plus a `total` footer.
std::string error_report_to_csv(const ErrorReport& report);
std::string error_report_to_json_string(const ErrorReport& report);

std::string selection_to_json_string(const SelectionResult& result);
/// `pick,node,error` rows in pick order.
std::string selection_to_csv(const SelectionResult& result);

std::string experiment_to_csv(const ExperimentTable& table);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit digest of a file's bytes as fixed-width hex.
std::string file_digest_hex(const std::string& path);

} // namespace leadersel

#include "leadersel/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace leadersel {

std::string format_double(double v) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, ptr);
}

namespace {

NoisyGraph parse_graph_text(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    int n = -1;
    std::vector<Edge> edges;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag)) continue;
        if (tag == "n") {
            if (!(fields >> n))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected a node count after 'n'");
        } else if (tag == "e") {
            Edge e;
            if (!(fields >> e.i >> e.j >> e.nu))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'e <i> <j> <nu>'");
            edges.push_back(e);
        } else {
            throw ParseError("line " + std::to_string(line_no) +
                             ": unknown record '" + tag + "'");
        }
    }
    if (n < 0) throw ParseError("missing 'n <count>' header");
    return build_graph(n, std::move(edges));
}

NoisyGraph parse_graph_json(const std::string& content) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("edges"))
        throw ParseError("graph JSON requires fields 'n' and 'edges'");
    std::vector<Edge> edges;
    for (const auto& entry : j["edges"]) {
        if (!entry.is_array() || entry.size() != 3)
            throw ParseError("each edge must be [i, j, nu]");
        edges.push_back(
            {entry[0].get<int>(), entry[1].get<int>(), entry[2].get<double>()});
    }
    return build_graph(j["n"].get<int>(), std::move(edges));
}

nlohmann::json leader_list(const LeaderSet& s) {
    return nlohmann::json(s.members());
}

} // namespace

NoisyGraph parse_graph(const std::string& content) {
    for (char c : content) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? parse_graph_json(content) : parse_graph_text(content);
    }
    throw ParseError("empty graph file");
}

NoisyGraph read_graph(const std::string& path) {
    return parse_graph(read_text_file(path));
}

std::string graph_to_text(const NoisyGraph& g) {
    std::string out = "n " + std::to_string(g.node_count()) + "\n";
    for (const Edge& e : g.edges())
        out += "e " + std::to_string(e.i) + " " + std::to_string(e.j) + " " +
               format_double(e.nu) + "\n";
    return out;
}

std::string graph_to_json_string(const NoisyGraph& g) {
    nlohmann::json j;
    j["n"] = g.node_count();
    auto edges = nlohmann::json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.i, e.j, e.nu});
    j["edges"] = edges;
    return j.dump(2) + "\n";
}

void write_graph(const NoisyGraph& g, const std::string& path) {
    const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    write_text_file(path, json ? graph_to_json_string(g) : graph_to_text(g));
}

std::string error_report_to_csv(const ErrorReport& report) {
    std::string out = "node,error\n";
    for (const auto& [node, error] : report.per_node)
        out += std::to_string(node) + "," + format_double(error) + "\n";
    out += "total," + format_double(report.total) + "\n";
    return out;
}

std::string error_report_to_json_string(const ErrorReport& report) {
    nlohmann::json j;
    j["total"] = report.total;
    j["leaders"] = leader_list(report.leaders);
    auto per_node = nlohmann::json::object();
    for (const auto& [node, error] : report.per_node)
        per_node[std::to_string(node)] = error;
    j["per_node"] = per_node;
    return j.dump(2) + "\n";
}

std::string selection_to_json_string(const SelectionResult& result) {
    nlohmann::json j;
    j["leaders"] = leader_list(result.leaders);
    j["error_trace"] = result.error_trace;
    j["terminated_early"] = result.terminated_early;
    if (result.bound) j["bound"] = *result.bound;
    if (result.final_alpha) j["final_alpha"] = *result.final_alpha;
    if (result.infeasible_budget) j["infeasible_budget"] = true;
    return j.dump(2) + "\n";
}

std::string selection_to_csv(const SelectionResult& result) {
    std::string out = "pick,node,error\n";
    for (std::size_t i = 0; i < result.error_trace.size(); ++i)
        out += std::to_string(i + 1) + "," +
               std::to_string(result.leaders.members()[i]) + "," +
               format_double(result.error_trace[i]) + "\n";
    return out;
}

std::string experiment_to_csv(const ExperimentTable& table) {
    std::string out = "method," + table.x_name + ",trial," + table.value_name + "\n";
    for (const ExperimentRow& row : table.rows) {
        out += row.method + "," + format_double(row.x) + "," +
               std::to_string(row.trial) + ",";
        if (row.value) out += format_double(*row.value);
        out += "\n";
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

std::string file_digest_hex(const std::string& path) {
    const std::string bytes = read_text_file(path);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    char buffer[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buffer[i] = digits[hash & 0xf];
        hash >>= 4;
    }
    buffer[16] = '\0';
    return std::string(buffer);
}

} // namespace leadersel

#include "adk/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "adk/errors.hpp"

namespace adk {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

void check_label(const std::string& label, int line) {
  if (label.find_first_of("{},#") != std::string::npos) {
    throw parse_error("label '" + label + "' contains a reserved character", line);
  }
}

std::uint32_t parse_set_token(const std::vector<std::string>& ground,
                              const std::string& token, int line) {
  if (token.size() < 2 || token.front() != '{' || token.back() != '}') {
    throw parse_error("expected a set like {a,b}, got '" + token + "'", line);
  }
  std::uint32_t mask = 0;
  const std::string body = token.substr(1, token.size() - 2);
  if (body.empty()) return 0;
  std::istringstream in(body);
  std::string label;
  while (std::getline(in, label, ',')) {
    const auto it = std::find(ground.begin(), ground.end(), label);
    if (it == ground.end()) {
      throw parse_error("unknown element '" + label + "' in set", line);
    }
    const std::uint32_t bit = 1u << (it - ground.begin());
    if (mask & bit) throw parse_error("repeated element '" + label + "'", line);
    mask |= bit;
  }
  return mask;
}

Rational parse_value(const std::string& token, int line) {
  try {
    return rational_from_string(token);
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what(), line);
  }
}

std::string set_token(const GroundSet& ground, std::uint32_t mask) {
  return ground.mask_to_string(mask);
}

void append_tables(std::ostringstream& out, const DirectedGraph& graph,
                   const std::vector<std::string>& labels,
                   const std::vector<SetFunction>& tables, bool support_only) {
  for (int v = 0; v < graph.n(); ++v) {
    const auto& t = tables[v];
    if (support_only) {
      // Omit tables equal to the default (all weight on the empty set).
      bool trivial = sgn(t.at(0) - 1) == 0;
      for (std::uint32_t m = 1; trivial && m < t.table_size(); ++m) {
        if (sgn(t.at(m)) != 0) trivial = false;
      }
      if (trivial) continue;
    } else if (graph.in_degree(v) == 0) {
      continue;
    }
    out << "table " << labels[v] << "\n";
    for (std::uint32_t m = 0; m < t.table_size(); ++m) {
      if (support_only && sgn(t.at(m)) == 0) continue;
      out << "  " << set_token(t.ground(), m) << " " << rational_to_string(t.at(m))
          << "\n";
    }
  }
}

std::string serialize_common(const std::string& model, const DirectedGraph& graph,
                             const std::vector<std::string>& labels,
                             const std::vector<SetFunction>& tables,
                             bool support_only) {
  std::ostringstream out;
  out << "model " << model << "\n";
  out << "nodes " << graph.n();
  for (const auto& l : labels) out << " " << l;
  out << "\n";
  for (int v = 0; v < graph.n(); ++v) {
    for (int u : graph.in_list(v)) {
      out << "edge " << labels[u] << " " << labels[v] << "\n";
    }
  }
  append_tables(out, graph, labels, tables, support_only);
  return out.str();
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const auto lines = tokenize(text);
  std::size_t pos = 0;
  auto expect = [&](const char* what) -> const Line& {
    if (pos >= lines.size()) throw parse_error(std::string("expected ") + what, 0);
    return lines[pos];
  };

  const Line& model_line = expect("'model gt' or 'model triggering'");
  if (model_line.tokens.size() != 2 || model_line.tokens[0] != "model" ||
      (model_line.tokens[1] != "gt" && model_line.tokens[1] != "triggering")) {
    throw parse_error("expected 'model gt' or 'model triggering'",
                      model_line.number);
  }
  const bool is_gt = model_line.tokens[1] == "gt";
  ++pos;

  const Line& nodes_line = expect("'nodes <n> <labels>'");
  if (nodes_line.tokens.size() < 2 || nodes_line.tokens[0] != "nodes") {
    throw parse_error("expected 'nodes <n> <labels>'", nodes_line.number);
  }
  int n = 0;
  try {
    n = std::stoi(nodes_line.tokens[1]);
  } catch (...) {
    throw parse_error("bad node count '" + nodes_line.tokens[1] + "'",
                      nodes_line.number);
  }
  if (n < 1 || n > 20) throw parse_error("node count must be 1..20", nodes_line.number);
  if (static_cast<int>(nodes_line.tokens.size()) != n + 2) {
    throw parse_error("expected exactly " + std::to_string(n) + " labels",
                      nodes_line.number);
  }
  std::vector<std::string> labels(nodes_line.tokens.begin() + 2,
                                  nodes_line.tokens.end());
  std::map<std::string, int> index;
  for (int v = 0; v < n; ++v) {
    check_label(labels[v], nodes_line.number);
    if (!index.emplace(labels[v], v).second) {
      throw parse_error("duplicate node '" + labels[v] + "'", nodes_line.number);
    }
  }
  auto node_of = [&](const std::string& label, int line) {
    const auto it = index.find(label);
    if (it == index.end()) throw parse_error("unknown node '" + label + "'", line);
    return it->second;
  };
  ++pos;

  std::vector<std::uint32_t> in(n, 0);
  while (pos < lines.size() && lines[pos].tokens[0] == "edge") {
    const Line& l = lines[pos];
    if (l.tokens.size() != 3) throw parse_error("expected 'edge <from> <to>'", l.number);
    const int from = node_of(l.tokens[1], l.number);
    const int to = node_of(l.tokens[2], l.number);
    if (from == to) throw parse_error("self-loop on '" + l.tokens[1] + "'", l.number);
    const std::uint32_t bit = 1u << from;
    if (in[to] & bit) throw parse_error("duplicate edge", l.number);
    in[to] |= bit;
    ++pos;
  }
  DirectedGraph graph(n, std::move(in));

  // Tables: rows belong to the most recent 'table' header.
  std::vector<std::map<std::uint32_t, Rational>> rows(n);
  std::vector<bool> declared(n, false);
  std::vector<std::vector<std::string>> grounds(n);
  for (int v = 0; v < n; ++v) {
    for (int u : graph.in_list(v)) grounds[v].push_back(labels[u]);
  }
  int current = -1;
  while (pos < lines.size()) {
    const Line& l = lines[pos];
    if (l.tokens[0] == "table") {
      if (l.tokens.size() != 2) throw parse_error("expected 'table <node>'", l.number);
      current = node_of(l.tokens[1], l.number);
      if (declared[current]) {
        throw parse_error("second table for '" + l.tokens[1] + "'", l.number);
      }
      declared[current] = true;
    } else if (l.tokens.size() == 2 && l.tokens[0].front() == '{') {
      if (current < 0) throw parse_error("table row before any 'table' line", l.number);
      const std::uint32_t mask = parse_set_token(grounds[current], l.tokens[0], l.number);
      if (!rows[current].emplace(mask, parse_value(l.tokens[1], l.number)).second) {
        throw parse_error("duplicate subset " + l.tokens[0], l.number);
      }
    } else {
      throw parse_error("unexpected line starting with '" + l.tokens[0] + "'", l.number);
    }
    ++pos;
  }

  std::vector<SetFunction> tables;
  tables.reserve(n);
  for (int v = 0; v < n; ++v) {
    GroundSet ground(grounds[v]);
    const std::uint32_t size = 1u << ground.size();
    std::vector<Rational> values(size, Rational(0));
    if (is_gt) {
      if (!declared[v] && graph.in_degree(v) > 0) {
        throw parse_error("missing table for node '" + labels[v] + "'", 0);
      }
      if (declared[v] && rows[v].size() != size) {
        throw parse_error("table for '" + labels[v] + "' must list all " +
                              std::to_string(size) + " subsets",
                          0);
      }
      for (const auto& [mask, value] : rows[v]) values[mask] = value;
    } else {
      if (!declared[v]) {
        values[0] = 1;  // default: always-empty triggering set
      } else {
        for (const auto& [mask, value] : rows[v]) values[mask] = value;
      }
    }
    tables.emplace_back(std::move(ground), std::move(values));
  }

  if (is_gt) {
    GTInstance inst{std::move(graph), std::move(labels), std::move(tables)};
    const auto problems = validate_gt(inst);
    if (!problems.empty()) {
      throw parse_error("node '" + inst.labels[problems.front().node] +
                            "': " + problems.front().what,
                        0);
    }
    return inst;
  }
  TriggeringInstance inst{std::move(graph), std::move(labels), std::move(tables)};
  const auto problems = validate_triggering(inst);
  if (!problems.empty()) {
    throw parse_error("node '" + inst.labels[problems.front().node] +
                          "': " + problems.front().what,
                      0);
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'", 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string serialize_instance(const GTInstance& inst) {
  return serialize_common("gt", inst.graph, inst.labels, inst.thresholds, false);
}

std::string serialize_instance(const TriggeringInstance& inst) {
  return serialize_common("triggering", inst.graph, inst.labels,
                          inst.distributions, true);
}

std::string serialize_instance(const Instance& inst) {
  if (std::holds_alternative<GTInstance>(inst)) {
    return serialize_instance(std::get<GTInstance>(inst));
  }
  return serialize_instance(std::get<TriggeringInstance>(inst));
}

const DirectedGraph& instance_graph(const Instance& inst) {
  if (std::holds_alternative<GTInstance>(inst)) return std::get<GTInstance>(inst).graph;
  return std::get<TriggeringInstance>(inst).graph;
}

const std::vector<std::string>& instance_labels(const Instance& inst) {
  if (std::holds_alternative<GTInstance>(inst)) return std::get<GTInstance>(inst).labels;
  return std::get<TriggeringInstance>(inst).labels;
}

std::uint32_t parse_node_set(const std::vector<std::string>& labels,
                             const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '{' && body.back() == '}') {
    body = body.substr(1, body.size() - 2);
  }
  std::uint32_t mask = 0;
  if (body.empty()) return 0;
  std::istringstream in(body);
  std::string label;
  while (std::getline(in, label, ',')) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw parse_error("unknown node '" + label + "'", 0);
    const std::uint32_t bit = 1u << (it - labels.begin());
    if (mask & bit) throw parse_error("repeated element '" + label + "'", 0);
    mask |= bit;
  }
  return mask;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static const char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

}  // namespace adk

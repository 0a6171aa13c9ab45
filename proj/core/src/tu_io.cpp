#include "gksvm/tu_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gksvm::tu {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

long parse_int(const std::string& token, const std::filesystem::path& file,
               std::size_t line_no) {
  const std::string t = trim(token);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw std::runtime_error(file.string() + ":" + std::to_string(line_no) +
                             ": non-integer token '" + token + "'");
  }
  return value;
}

std::vector<std::string> read_lines(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("missing file: " + file.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<long> read_int_column(const std::filesystem::path& file) {
  std::vector<long> out;
  const auto lines = read_lines(file);
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out.push_back(parse_int(lines[i], file, i + 1));
  }
  return out;
}

}  // namespace

DatasetBundle parse_tu_dataset(const std::filesystem::path& dir,
                               const std::string& name,
                               std::vector<std::string>* warnings) {
  const auto a_file = dir / (name + "_A.txt");
  const auto indicator_file = dir / (name + "_graph_indicator.txt");
  const auto graph_labels_file = dir / (name + "_graph_labels.txt");
  const auto node_labels_file = dir / (name + "_node_labels.txt");

  const std::vector<long> indicator = read_int_column(indicator_file);
  const std::vector<long> raw_graph_labels = read_int_column(graph_labels_file);
  const std::vector<long> raw_node_labels = read_int_column(node_labels_file);

  const std::size_t n_vertices = indicator.size();
  if (raw_node_labels.size() != n_vertices) {
    throw std::runtime_error(node_labels_file.string() +
                             ": line count differs from graph indicator");
  }
  const std::size_t n_graphs = raw_graph_labels.size();

  // Vertex -> (graph, local index), in file order per graph.
  std::vector<int> graph_of(n_vertices);
  std::vector<int> local_of(n_vertices);
  std::vector<int> vertex_counts(n_graphs, 0);
  for (std::size_t v = 0; v < n_vertices; ++v) {
    const long g = indicator[v];
    if (g < 1 || static_cast<std::size_t>(g) > n_graphs) {
      throw std::runtime_error(indicator_file.string() + ":" +
                               std::to_string(v + 1) +
                               ": graph id out of range");
    }
    graph_of[v] = static_cast<int>(g - 1);
    local_of[v] = vertex_counts[g - 1]++;
  }

  // Graph labels: at most two distinct raw values, ascending -> {0, 1}.
  std::set<long> raw_label_set(raw_graph_labels.begin(),
                               raw_graph_labels.end());
  if (raw_label_set.size() > 2) {
    throw std::runtime_error(graph_labels_file.string() +
                             ": more than two distinct graph-label values");
  }
  std::map<long, int> label_map;
  int next = 0;
  for (long raw : raw_label_set) label_map[raw] = next++;

  // Node labels: dense 0-based alphabet, ascending raw value.
  std::set<long> raw_alphabet(raw_node_labels.begin(), raw_node_labels.end());
  std::map<long, int> alphabet_map;
  next = 0;
  for (long raw : raw_alphabet) alphabet_map[raw] = next++;

  DatasetBundle bundle;
  bundle.name = name;
  bundle.alphabet_size = static_cast<int>(raw_alphabet.size());
  bundle.graphs.resize(n_graphs);
  bundle.class_labels.resize(n_graphs);
  for (std::size_t g = 0; g < n_graphs; ++g) {
    bundle.graphs[g].vertex_count = vertex_counts[g];
    bundle.graphs[g].vertex_labels.resize(vertex_counts[g]);
    bundle.class_labels[g] = label_map.at(raw_graph_labels[g]);
  }
  for (std::size_t v = 0; v < n_vertices; ++v) {
    bundle.graphs[graph_of[v]].vertex_labels[local_of[v]] =
        alphabet_map.at(raw_node_labels[v]);
  }

  // Edges: "i, j" lines, 1-based, both directions present.
  std::vector<std::set<std::pair<int, int>>> edge_sets(n_graphs);
  const auto edge_lines = read_lines(a_file);
  for (std::size_t ln = 0; ln < edge_lines.size(); ++ln) {
    const std::string& line = edge_lines[ln];
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error(a_file.string() + ":" + std::to_string(ln + 1) +
                               ": expected 'i, j'");
    }
    const long i = parse_int(line.substr(0, comma), a_file, ln + 1);
    const long j = parse_int(line.substr(comma + 1), a_file, ln + 1);
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n_vertices ||
        static_cast<std::size_t>(j) > n_vertices) {
      throw std::runtime_error(a_file.string() + ":" + std::to_string(ln + 1) +
                               ": edge references unknown vertex");
    }
    const int gi = graph_of[i - 1];
    const int gj = graph_of[j - 1];
    if (gi != gj) {
      throw std::runtime_error(a_file.string() + ":" + std::to_string(ln + 1) +
                               ": edge crosses graphs");
    }
    if (i == j) {
      if (warnings) {
        warnings->push_back("dropped self-loop on vertex " +
                            std::to_string(i) + " (graph " +
                            std::to_string(gi + 1) + ")");
      }
      continue;
    }
    const int a = local_of[i - 1];
    const int b = local_of[j - 1];
    edge_sets[gi].emplace(std::min(a, b), std::max(a, b));
  }
  for (std::size_t g = 0; g < n_graphs; ++g) {
    bundle.graphs[g].edges.assign(edge_sets[g].begin(), edge_sets[g].end());
  }

  bundle.validate();
  return bundle;
}

void write_tu_dataset(const DatasetBundle& bundle,
                      const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream a(dir / (bundle.name + "_A.txt"));
  std::ofstream indicator(dir / (bundle.name + "_graph_indicator.txt"));
  std::ofstream graph_labels(dir / (bundle.name + "_graph_labels.txt"));
  std::ofstream node_labels(dir / (bundle.name + "_node_labels.txt"));
  if (!a || !indicator || !graph_labels || !node_labels) {
    throw std::runtime_error("cannot write TU files under " + dir.string());
  }

  long base = 1;  // 1-based global index of each graph's first vertex
  for (int g = 0; g < bundle.size(); ++g) {
    const LabeledGraph& graph = bundle.graphs[g];
    graph_labels << bundle.class_labels[g] << "\n";
    for (int v = 0; v < graph.vertex_count; ++v) {
      indicator << (g + 1) << "\n";
      node_labels << graph.vertex_labels[v] << "\n";
    }
    for (auto [u, v] : graph.edges) {
      a << (base + u) << ", " << (base + v) << "\n";
      a << (base + v) << ", " << (base + u) << "\n";
    }
    base += graph.vertex_count;
  }
}

DatasetStats dataset_stats(const DatasetBundle& bundle) {
  if (bundle.size() == 0) {
    throw std::invalid_argument("dataset_stats: empty bundle");
  }
  DatasetStats s;
  s.n_graphs = bundle.size();
  double vertices = 0.0;
  double edges = 0.0;
  for (const auto& g : bundle.graphs) {
    vertices += g.vertex_count;
    edges += static_cast<double>(g.edges.size());
  }
  s.mean_vertices = vertices / s.n_graphs;
  s.mean_edges = edges / s.n_graphs;
  for (int y : bundle.class_labels) s.class_counts[y]++;
  return s;
}

std::string stats_csv(const std::string& dataset_name, const DatasetStats& s) {
  std::ostringstream out;
  out << "dataset,n_graphs,mean_vertices,mean_edges,n_class0,n_class1\n";
  out << dataset_name << ',' << s.n_graphs << ',';
  out.precision(15);
  out << s.mean_vertices << ',' << s.mean_edges << ',' << s.class_counts[0]
      << ',' << s.class_counts[1] << '\n';
  return out.str();
}

}  // namespace gksvm::tu

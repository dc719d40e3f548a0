#include "tec/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "tec/errors.hpp"
#include "tec/tensor_io.hpp"

namespace tec {

const char* to_string(Suite s) {
  switch (s) {
    case Suite::tensor_props: return "tensor_props";
    case Suite::inequalities: return "inequalities";
    case Suite::expander: return "expander";
    case Suite::chernoff_sweep: return "chernoff_sweep";
  }
  return "?";
}

std::vector<double> DominationSpec::sigma_grid() const {
  std::vector<double> grid(sigma_count);
  for (std::size_t i = 0; i < sigma_count; ++i) {
    const double f = sigma_count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(sigma_count - 1);
    grid[i] = sigma_min * std::pow(sigma_max / sigma_min, f);
  }
  return grid;
}

std::vector<double> ExperimentConfig::theta_grid() const {
  if (!chernoff.thetas.empty()) return chernoff.thetas;
  std::vector<double> grid(chernoff.theta_count);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = grid.size() == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(grid.size() - 1);
    grid[i] = chernoff.theta_min + f * (chernoff.theta_max - chernoff.theta_min);
  }
  return grid;
}

namespace {

// Scalar parsers; they throw std::invalid_argument with a short reason that
// the caller wraps into a ConfigError naming the field.

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& text) {
  const std::string s = trim(text);
  T v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) throw std::invalid_argument("not a number");
  if constexpr (std::is_floating_point_v<T>)
    if (!std::isfinite(v)) throw std::invalid_argument("must be finite");
  return v;
}

bool parse_bool(const std::string& text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("expected true or false");
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::istringstream is(text);
  std::vector<T> out;
  std::string tok;
  while (is >> tok) {
    if (tok.back() == ',') tok.pop_back();
    if (!tok.empty()) out.push_back(parse_number<T>(tok));
  }
  if (out.empty()) throw std::invalid_argument("expected a non-empty list");
  return out;
}

Suite parse_suite(const std::string& text) {
  const std::string s = trim(text);
  for (Suite x : {Suite::tensor_props, Suite::inequalities, Suite::expander, Suite::chernoff_sweep})
    if (s == to_string(x)) return x;
  throw std::invalid_argument("unknown suite");
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    if constexpr (std::is_floating_point_v<T>)
      out += format_double(v[i]);
    else
      out += std::to_string(v[i]);
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::filesystem::path&)>;

const std::map<std::string, Setter>& setters() {
  using C = ExperimentConfig;
  using P = std::filesystem::path;
  auto resolve = [](const P& base, const std::string& v) {
    P p(trim(v));
    return p.is_relative() && !base.empty() ? base / p : p;
  };
  static const std::map<std::string, Setter> table = {
      {"run.suite", [](C& c, const std::string& v, const P&) { c.suite = parse_suite(v); }},
      {"run.seed", [](C& c, const std::string& v, const P&) { c.seed = parse_number<std::uint64_t>(v); }},
      {"run.workers", [](C& c, const std::string& v, const P&) { c.workers = parse_number<std::size_t>(v); }},

      {"graph.kind", [](C& c, const std::string& v, const P&) { c.graph.kind = trim(v); }},
      {"graph.n", [](C& c, const std::string& v, const P&) { c.graph.n = parse_number<std::size_t>(v); }},
      {"graph.degree", [](C& c, const std::string& v, const P&) { c.graph.degree = parse_number<std::size_t>(v); }},
      {"graph.dim", [](C& c, const std::string& v, const P&) { c.graph.dim = parse_number<std::size_t>(v); }},
      {"graph.seed", [](C& c, const std::string& v, const P&) { c.graph.seed = parse_number<std::uint64_t>(v); }},
      {"graph.path", [resolve](C& c, const std::string& v, const P& b) { c.graph.path = resolve(b, v); }},

      {"assignment.kind", [](C& c, const std::string& v, const P&) { c.assignment.kind = trim(v); }},
      {"assignment.dims",
       [](C& c, const std::string& v, const P&) { c.assignment.dims = parse_list<std::size_t>(v); }},
      {"assignment.radius",
       [](C& c, const std::string& v, const P&) { c.assignment.radius = parse_number<double>(v); }},
      {"assignment.seed",
       [](C& c, const std::string& v, const P&) { c.assignment.seed = parse_number<std::uint64_t>(v); }},
      {"assignment.real", [](C& c, const std::string& v, const P&) { c.assignment.real = parse_bool(v); }},
      {"assignment.manifest",
       [resolve](C& c, const std::string& v, const P& b) { c.assignment.manifest = resolve(b, v); }},

      {"poly.coefficients",
       [](C& c, const std::string& v, const P&) { c.poly.coefficients = parse_list<double>(v); }},
      {"poly.power", [](C& c, const std::string& v, const P&) { c.poly.power = parse_number<double>(v); }},

      {"quadrature.truncation",
       [](C& c, const std::string& v, const P&) { c.quadrature.truncation = parse_number<double>(v); }},
      {"quadrature.nodes",
       [](C& c, const std::string& v, const P&) { c.quadrature.node_count = parse_number<std::size_t>(v); }},
      {"quadrature.tolerance",
       [](C& c, const std::string& v, const P&) { c.quadrature.tolerance = parse_number<double>(v); }},

      {"domination.window",
       [](C& c, const std::string& v, const P&) { c.domination.window = parse_number<double>(v); }},
      {"domination.sigma_min",
       [](C& c, const std::string& v, const P&) { c.domination.sigma_min = parse_number<double>(v); }},
      {"domination.sigma_max",
       [](C& c, const std::string& v, const P&) { c.domination.sigma_max = parse_number<double>(v); }},
      {"domination.sigma_count",
       [](C& c, const std::string& v, const P&) { c.domination.sigma_count = parse_number<std::size_t>(v); }},

      {"tensor_props.algebra_trials",
       [](C& c, const std::string& v, const P&) { c.tensor_props.algebra_trials = parse_number<std::size_t>(v); }},
      {"tensor_props.compound_trials",
       [](C& c, const std::string& v, const P&) { c.tensor_props.compound_trials = parse_number<std::size_t>(v); }},
      {"tensor_props.lie_trotter_pairs",
       [](C& c, const std::string& v, const P&) { c.tensor_props.lie_trotter_pairs = parse_number<std::size_t>(v); }},

      {"inequalities.interpolation_trials",
       [](C& c, const std::string& v, const P&) {
         c.inequalities.interpolation_trials = parse_number<std::size_t>(v);
       }},
      {"inequalities.discrete_trials",
       [](C& c, const std::string& v, const P&) { c.inequalities.discrete_trials = parse_number<std::size_t>(v); }},
      {"inequalities.kyfan_sum_trials",
       [](C& c, const std::string& v, const P&) { c.inequalities.kyfan_sum_trials = parse_number<std::size_t>(v); }},
      {"inequalities.holder_trials",
       [](C& c, const std::string& v, const P&) { c.inequalities.holder_trials = parse_number<std::size_t>(v); }},

      {"expander.t_values", [](C& c, const std::string& v, const P&) { c.expander.t_values = parse_list<double>(v); }},
      {"expander.a", [](C& c, const std::string& v, const P&) { c.expander.a = parse_number<double>(v); }},
      {"expander.b", [](C& c, const std::string& v, const P&) { c.expander.b = parse_number<double>(v); }},
      {"expander.kappa", [](C& c, const std::string& v, const P&) { c.expander.kappa = parse_number<std::size_t>(v); }},
      {"expander.test_vectors",
       [](C& c, const std::string& v, const P&) { c.expander.test_vectors = parse_number<std::size_t>(v); }},
      {"expander.mc_walks",
       [](C& c, const std::string& v, const P&) { c.expander.mc_walks = parse_number<std::size_t>(v); }},
      {"expander.stationarity_walks",
       [](C& c, const std::string& v, const P&) { c.expander.stationarity_walks = parse_number<std::size_t>(v); }},

      {"chernoff.kappa", [](C& c, const std::string& v, const P&) { c.chernoff.kappa = parse_number<std::size_t>(v); }},
      {"chernoff.k", [](C& c, const std::string& v, const P&) { c.chernoff.k = parse_number<std::size_t>(v); }},
      {"chernoff.thetas", [](C& c, const std::string& v, const P&) { c.chernoff.thetas = parse_list<double>(v); }},
      {"chernoff.theta_min",
       [](C& c, const std::string& v, const P&) { c.chernoff.theta_min = parse_number<double>(v); }},
      {"chernoff.theta_max",
       [](C& c, const std::string& v, const P&) { c.chernoff.theta_max = parse_number<double>(v); }},
      {"chernoff.theta_count",
       [](C& c, const std::string& v, const P&) { c.chernoff.theta_count = parse_number<std::size_t>(v); }},
      {"chernoff.walks", [](C& c, const std::string& v, const P&) { c.chernoff.walks = parse_number<std::size_t>(v); }},
  };
  return table;
}

[[noreturn]] void field_error(const std::string& source, const std::string& key, const std::string& what) {
  throw ConfigError(source + ": " + key + ": " + what);
}

}  // namespace

ExperimentConfig parse_config(std::istream& is, const std::string& source_name, const std::filesystem::path& base_dir) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(source_name + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  ExperimentConfig cfg;
  const auto& table = setters();
  for (const auto& [section, body] : tree) {
    if (body.empty()) field_error(source_name, section, "key outside any section");
    for (const auto& [key, node] : body) {
      const std::string name = section + "." + key;
      const auto it = table.find(name);
      if (it == table.end()) field_error(source_name, name, "unknown key");
      const std::string value = node.get_value<std::string>();
      try {
        it->second(cfg, value, base_dir);
      } catch (const std::invalid_argument& e) {
        field_error(source_name, name, "'" + value + "': " + e.what());
      }
    }
  }
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in, path.string(), path.parent_path());
}

void validate(const ExperimentConfig& c) {
  auto require = [](bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError(key + ": " + what);
  };
  require(c.workers >= 1 && c.workers <= 256, "run.workers", "must be in [1, 256]");

  const auto& g = c.graph;
  require(g.kind == "complete" || g.kind == "cycle" || g.kind == "hypercube" || g.kind == "random" || g.kind == "file",
          "graph.kind", "must be complete, cycle, hypercube, random or file");
  if (g.kind == "complete") require(g.n >= 2 && g.n <= 1024, "graph.n", "must be in [2, 1024]");
  if (g.kind == "cycle") require(g.n >= 3 && g.n <= 1024, "graph.n", "must be in [3, 1024]");
  if (g.kind == "hypercube") require(g.dim >= 1 && g.dim <= 10, "graph.dim", "must be in [1, 10]");
  if (g.kind == "random") {
    require(g.n >= 2 && g.n <= 1024, "graph.n", "must be in [2, 1024]");
    require(g.degree >= 1 && g.degree < 64, "graph.degree", "must be in [1, 63]");
    require(g.n % 2 == 0 || g.degree % 2 == 0, "graph.degree", "n * degree must be even");
  }
  if (g.kind == "file") require(std::filesystem::exists(g.path), "graph.path", "file not found: " + g.path.string());

  const auto& a = c.assignment;
  require(a.kind == "random" || a.kind == "manifest", "assignment.kind", "must be random or manifest");
  if (a.kind == "random") {
    std::size_t prod = 1;
    for (auto d : a.dims) {
      require(d >= 1 && d <= 16, "assignment.dims", "each dimension must be in [1, 16]");
      prod *= d;
    }
    require(prod <= 64, "assignment.dims", "product of dimensions must be <= 64");
    require(a.radius >= 0, "assignment.radius", "must be >= 0");
  } else {
    require(std::filesystem::exists(a.manifest), "assignment.manifest", "file not found: " + a.manifest.string());
  }

  try {
    c.poly.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("poly: ") + e.what());
  }
  require(c.poly.coefficients.size() <= 16, "poly.coefficients", "at most 16 coefficients");
  try {
    c.quadrature.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("quadrature: ") + e.what());
  }

  const auto& d = c.domination;
  require(d.window > 0, "domination.window", "must be > 0");
  require(d.sigma_min > 0 && d.sigma_max >= d.sigma_min, "domination.sigma_min", "need 0 < sigma_min <= sigma_max");
  require(d.sigma_count >= 1 && d.sigma_count <= 1000, "domination.sigma_count", "must be in [1, 1000]");

  const auto& e = c.expander;
  for (double t : e.t_values) require(t >= 0, "expander.t_values", "must be >= 0");
  require(e.kappa >= 1 && e.kappa <= 64, "expander.kappa", "must be in [1, 64]");
  require(e.test_vectors >= 1, "expander.test_vectors", "must be >= 1");
  require(e.mc_walks >= 2, "expander.mc_walks", "must be >= 2");
  require(e.stationarity_walks >= 1, "expander.stationarity_walks", "must be >= 1");

  const auto& s = c.chernoff;
  require(s.kappa >= 1 && s.kappa <= 1024, "chernoff.kappa", "must be in [1, 1024]");
  require(s.k >= 1, "chernoff.k", "must be >= 1");
  for (double t : s.thetas) require(t > 0, "chernoff.thetas", "must be > 0");
  if (s.thetas.empty()) {
    require(s.theta_min > 0 && s.theta_max >= s.theta_min, "chernoff.theta_min", "need 0 < theta_min <= theta_max");
    require(s.theta_count >= 1 && s.theta_count <= 10000, "chernoff.theta_count", "must be in [1, 10000]");
  }
  require(s.walks >= 1, "chernoff.walks", "must be >= 1");
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  std::map<std::string, std::string> m;
  m["run.suite"] = to_string(suite);
  m["run.seed"] = std::to_string(seed);
  m["graph.kind"] = graph.kind;
  if (graph.kind == "file") {
    m["graph.path"] = graph.path.string();
  } else if (graph.kind == "hypercube") {
    m["graph.dim"] = std::to_string(graph.dim);
  } else {
    m["graph.n"] = std::to_string(graph.n);
  }
  if (graph.kind == "random") {
    m["graph.degree"] = std::to_string(graph.degree);
    m["graph.seed"] = std::to_string(graph.seed);
  }
  m["assignment.kind"] = assignment.kind;
  if (assignment.kind == "random") {
    m["assignment.dims"] = join(assignment.dims);
    m["assignment.radius"] = format_double(assignment.radius);
    m["assignment.seed"] = std::to_string(assignment.seed);
    m["assignment.real"] = assignment.real ? "true" : "false";
  } else {
    m["assignment.manifest"] = assignment.manifest.string();
  }
  m["poly.coefficients"] = join(poly.coefficients);
  m["poly.power"] = format_double(poly.power);
  m["quadrature.truncation"] = format_double(quadrature.truncation);
  m["quadrature.nodes"] = std::to_string(quadrature.node_count);
  m["quadrature.tolerance"] = format_double(quadrature.tolerance);
  m["domination.window"] = format_double(domination.window);
  m["domination.sigma_min"] = format_double(domination.sigma_min);
  m["domination.sigma_max"] = format_double(domination.sigma_max);
  m["domination.sigma_count"] = std::to_string(domination.sigma_count);
  m["tensor_props.algebra_trials"] = std::to_string(tensor_props.algebra_trials);
  m["tensor_props.compound_trials"] = std::to_string(tensor_props.compound_trials);
  m["tensor_props.lie_trotter_pairs"] = std::to_string(tensor_props.lie_trotter_pairs);
  m["inequalities.interpolation_trials"] = std::to_string(inequalities.interpolation_trials);
  m["inequalities.discrete_trials"] = std::to_string(inequalities.discrete_trials);
  m["inequalities.kyfan_sum_trials"] = std::to_string(inequalities.kyfan_sum_trials);
  m["inequalities.holder_trials"] = std::to_string(inequalities.holder_trials);
  m["expander.t_values"] = join(expander.t_values);
  m["expander.a"] = format_double(expander.a);
  m["expander.b"] = format_double(expander.b);
  m["expander.kappa"] = std::to_string(expander.kappa);
  m["expander.test_vectors"] = std::to_string(expander.test_vectors);
  m["expander.mc_walks"] = std::to_string(expander.mc_walks);
  m["expander.stationarity_walks"] = std::to_string(expander.stationarity_walks);
  m["chernoff.kappa"] = std::to_string(chernoff.kappa);
  m["chernoff.k"] = std::to_string(chernoff.k);
  m["chernoff.thetas"] = join(theta_grid());
  m["chernoff.walks"] = std::to_string(chernoff.walks);
  return m;
}

RegularGraph build_graph(const GraphSpec& g) {
  if (g.kind == "complete") return gen_complete(g.n);
  if (g.kind == "cycle") return gen_cycle(g.n);
  if (g.kind == "hypercube") return gen_hypercube(g.dim);
  if (g.kind == "random") return gen_random_regular(g.n, g.degree, g.seed);
  if (g.kind == "file") return load_edge_list(g.path.string());
  throw ConfigError("graph.kind: unknown kind " + g.kind);
}

VertexTensorAssignment build_assignment(const ExperimentConfig& c) {
  RegularGraph g = build_graph(c.graph);
  if (c.assignment.kind == "manifest") return load_assignment(std::move(g), c.assignment.manifest);
  return random_assignment(std::move(g), c.assignment.dims, c.assignment.radius, c.assignment.seed,
                           c.assignment.real);
}

}  // namespace tec

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "conformable/errors.hpp"
#include "conformable/harness.hpp"

namespace conformable {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
  throw ConfigError("config key '" + key + "': cannot read '" + value + "' as " + expected);
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) bad_value(key, v, "a number");
  return out;
}

long long to_int(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) bad_value(key, v, "an integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v, "a boolean");
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> to_double_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  for (const auto& item : split_list(raw)) out.push_back(to_double(key, item));
  return out;
}

std::vector<int> to_int_list(const std::string& key, const std::string& raw) {
  std::vector<int> out;
  for (const auto& item : split_list(raw)) out.push_back(static_cast<int>(to_int(key, item)));
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

std::map<std::string, Setter> tolerance_setters() {
  std::map<std::string, Setter> out;
  auto add = [&out](const char* name, double Tolerances::*field) {
    out[name] = [field](RunConfig& c, const std::string& k, const std::string& v) { c.tol.*field = to_double(k, v); };
  };
  add("isometry", &Tolerances::isometry);
  add("unitarity", &Tolerances::unitarity);
  add("fundamental", &Tolerances::fundamental);
  add("limit", &Tolerances::limit);
  add("clock", &Tolerances::clock);
  add("law", &Tolerances::law);
  add("generator", &Tolerances::generator);
  add("ode", &Tolerances::ode);
  add("dissipativity", &Tolerances::dissipativity);
  add("resolvent", &Tolerances::resolvent);
  add("contraction", &Tolerances::contraction);
  add("continuity", &Tolerances::continuity);
  add("conjugacy_order", &Tolerances::conjugacy_order);
  add("transfer", &Tolerances::transfer);
  add("transport", &Tolerances::transport);
  add("pde", &Tolerances::pde);
  add("analyticity", &Tolerances::analyticity);
  add("gram", &Tolerances::gram);
  add("decay", &Tolerances::decay);
  add("xinf", &Tolerances::xinf);
  add("periodic", &Tolerances::periodic);
  add("correspondence", &Tolerances::correspondence);
  return out;
}

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> table{
      {"run",
       {
           {"suite", [](RunConfig& c, const std::string&, const std::string& v) { c.suite = trim(v); }},
           {"seed", [](RunConfig& c, const std::string& k, const std::string& v) {
              const long long s = to_int(k, v);
              if (s < 0) bad_value(k, v, "a nonnegative integer");
              c.seed = static_cast<std::uint64_t>(s);
            }},
           {"out", [](RunConfig& c, const std::string&, const std::string& v) { c.out = trim(v); }},
           {"timing", [](RunConfig& c, const std::string& k, const std::string& v) { c.timing = to_bool(k, v); }},
       }},
      {"model",
       {
           {"deltas", [](RunConfig& c, const std::string& k, const std::string& v) { c.deltas = to_double_list(k, v); }},
           {"semigroup_deltas",
            [](RunConfig& c, const std::string& k, const std::string& v) { c.semigroup_deltas = to_double_list(k, v); }},
           {"a", [](RunConfig& c, const std::string& k, const std::string& v) { c.a = to_double(k, v); }},
           {"b", [](RunConfig& c, const std::string& k, const std::string& v) { c.b = to_double(k, v); }},
           {"c", [](RunConfig& c, const std::string& k, const std::string& v) { c.c = to_double(k, v); }},
           {"delta", [](RunConfig& c, const std::string& k, const std::string& v) { c.delta = to_double(k, v); }},
           {"alphas", [](RunConfig& c, const std::string& k, const std::string& v) { c.alphas = to_double_list(k, v); }},
           {"weight", [](RunConfig& c, const std::string&, const std::string& v) { c.weight = trim(v); }},
       }},
      {"grid",
       {
           {"n_list", [](RunConfig& c, const std::string& k, const std::string& v) { c.n_list = to_int_list(k, v); }},
           {"operator_n",
            [](RunConfig& c, const std::string& k, const std::string& v) { c.operator_n = static_cast<int>(to_int(k, v)); }},
           {"eigen_n", [](RunConfig& c, const std::string& k, const std::string& v) { c.eigen_n = static_cast<int>(to_int(k, v)); }},
           {"correspondence_n", [](RunConfig& c, const std::string& k, const std::string& v) {
              c.correspondence_n = static_cast<int>(to_int(k, v));
            }},
       }},
      {"tolerances", tolerance_setters()},
      {"sweep",
       {
           {"deltas", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep.deltas = to_double_list(k, v); }},
           {"a", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep.a = to_double_list(k, v); }},
           {"b", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep.b = to_double_list(k, v); }},
           {"c", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep.c = to_double_list(k, v); }},
           {"n", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep.n = to_int_list(k, v); }},
       }},
  };
  return table;
}

void require_order(double d, const std::string& key) {
  if (!(d > 0.0 && d <= 1.0)) throw ConfigError("config key '" + key + "': order must lie in (0, 1]");
}

void require_positive(double v, const std::string& key) {
  if (!(v > 0.0)) throw ConfigError("config key '" + key + "': must be positive");
}

void require_grid(int n, const std::string& key) {
  if (n < 16) throw ConfigError("config key '" + key + "': grid sizes must be at least 16");
}

void validate(const RunConfig& c) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), c.suite) == names.end()) {
    throw ConfigError("unknown suite '" + c.suite + "'");
  }
  for (double d : c.deltas) require_order(d, "model.deltas");
  for (double d : c.semigroup_deltas) require_order(d, "model.semigroup_deltas");
  for (double d : c.alphas) require_order(d, "model.alphas");
  require_order(c.delta, "model.delta");
  require_positive(c.a, "model.a");
  require_positive(c.b, "model.b");
  require_positive(c.c, "model.c");
  if (c.weight != "exp_decay" && c.weight != "constant" && c.weight != "exp_growth") {
    throw ConfigError("config key 'model.weight': expected exp_decay, constant or exp_growth");
  }
  if (c.n_list.size() < 2) throw ConfigError("config key 'grid.n_list': needs at least two sizes");
  for (std::size_t k = 0; k < c.n_list.size(); ++k) {
    require_grid(c.n_list[k], "grid.n_list");
    if (k > 0 && c.n_list[k] <= c.n_list[k - 1]) throw ConfigError("config key 'grid.n_list': must be increasing");
  }
  require_grid(c.operator_n, "grid.operator_n");
  require_grid(c.eigen_n, "grid.eigen_n");
  require_grid(c.correspondence_n, "grid.correspondence_n");
  const Tolerances& t = c.tol;
  for (double v : {t.isometry, t.unitarity, t.fundamental, t.limit, t.clock, t.law, t.generator, t.ode,
                   t.dissipativity, t.resolvent, t.contraction, t.continuity, t.conjugacy_order, t.transfer,
                   t.transport, t.pde, t.analyticity, t.gram, t.decay, t.xinf, t.periodic, t.correspondence}) {
    require_positive(v, "tolerances");
  }
  for (double d : c.sweep.deltas) require_order(d, "sweep.deltas");
  for (double v : c.sweep.a) require_positive(v, "sweep.a");
  for (double v : c.sweep.b) require_positive(v, "sweep.b");
  for (double v : c.sweep.c) require_positive(v, "sweep.c");
  for (int n : c.sweep.n) require_grid(n, "sweep.n");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"calculus",  "spaces",    "clock",    "semigroup",
                                              "drift-diffusion", "transport", "dynamics", "all"};
  return names;
}

RunConfig parse_config_text(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  RunConfig config;
  const auto& table = schema();
  for (const auto& [section, body] : tree) {
    const auto known = table.find(section);
    if (!body.data().empty()) throw ConfigError("config key '" + section + "' outside any section");
    if (known == table.end()) throw ConfigError("unknown config section [" + section + "]");
    for (const auto& [key, value] : body) {
      const auto setter = known->second.find(key);
      if (setter == known->second.end()) throw ConfigError("unknown config key '" + section + "." + key + "'");
      setter->second(config, section + "." + key, value.data());
    }
  }
  validate(config);
  return config;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace conformable

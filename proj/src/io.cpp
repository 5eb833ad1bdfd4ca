#include "disperse/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "disperse/experiments.hpp"

namespace disperse {

namespace fs = std::filesystem;

Json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << value.dump(2) << '\n';
}

FluxSpec parse_flux(const Json& cfg) {
  FluxSpec flux;
  if (cfg.contains("flux_k")) {
    const Json& k = cfg.at("flux_k");
    if (k.is_string() && k.get<std::string>() == "burgers") {
      flux = FluxSpec::burgers(static_cast<int>(cfg.at("cells").size()));
    } else {
      flux.k = k.get<std::vector<int>>();
    }
  } else {
    flux = FluxSpec::burgers(static_cast<int>(cfg.at("cells").size()));
  }
  flux.validate();
  return flux;
}

Grid parse_grid(const Json& cfg) {
  const auto cells = cfg.at("cells").get<std::vector<int>>();
  Grid grid;
  if (cfg.contains("lower") || cfg.contains("upper")) {
    grid = make_box_grid(cells, cfg.at("lower").get<std::vector<double>>(),
                         cfg.at("upper").get<std::vector<double>>());
  } else {
    grid = make_grid(cells, cfg.at("spacing").get<std::vector<double>>(),
                     cfg.value("origin", std::vector<double>(cells.size(), 0.0)));
  }
  grid.validate();
  return grid;
}

std::vector<double> parse_record_times(const Json& value) {
  if (value.is_array()) return value.get<std::vector<double>>();
  if (value.is_object() && value.contains("geometric")) {
    const Json& g = value.at("geometric");
    return geometric_times(g.at("t_min").get<double>(), g.at("t_max").get<double>(),
                           g.at("count").get<int>(), g.value("with_zero", true));
  }
  throw std::invalid_argument("record_times must be a list or {\"geometric\": {...}}");
}

SolverConfig parse_solver_config(const Json& cfg) {
  SolverConfig config;
  config.flux = parse_flux(cfg);
  config.cfl = cfg.value("cfl", config.cfl);
  config.t_end = cfg.value("t_end", config.t_end);
  config.threads = cfg.value("threads", config.threads);
  const std::string boundary = cfg.value("boundary", std::string("outflow"));
  if (boundary == "outflow") {
    config.boundary = Boundary::outflow;
  } else if (boundary == "periodic") {
    config.boundary = Boundary::periodic;
  } else {
    throw std::invalid_argument("unknown boundary '" + boundary + "'");
  }
  if (cfg.contains("record_times")) config.record_times = parse_record_times(cfg.at("record_times"));
  config.validate();
  return config;
}

InitialKind parse_initial_kind(const std::string& name) {
  if (name == "bump") return InitialKind::bump;
  if (name == "box") return InitialKind::box;
  if (name == "n_wave") return InitialKind::n_wave;
  if (name == "fundamental_seed") return InitialKind::fundamental_seed;
  if (name == "riemann") return InitialKind::riemann;
  throw std::invalid_argument("unknown initial kind '" + name + "'");
}

InitialSpec parse_initial(const Json& cfg) {
  InitialSpec spec;
  if (!cfg.contains("initial")) return spec;
  const Json& in = cfg.at("initial");
  spec.kind = parse_initial_kind(in.value("kind", std::string("bump")));
  spec.center = in.value("center", spec.center);
  spec.radius = in.value("radius", spec.radius);
  spec.height = in.value("height", spec.height);
  spec.mass = in.value("mass", spec.mass);
  spec.eps = in.value("eps", spec.eps);
  spec.left = in.value("left", spec.left);
  spec.right = in.value("right", spec.right);
  spec.lambda = in.value("lambda", spec.lambda);
  spec.mu = in.value("mu", spec.mu);
  if (cfg.contains("scaled_family")) {
    const Json& s = cfg.at("scaled_family");
    spec.lambda *= s.value("lambda", 1.0);
    spec.mu *= s.value("mu", 1.0);
  }
  return spec;
}

Field build_initial_field(const Json& cfg) {
  return initial_data(parse_initial(cfg), parse_grid(cfg));
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

void write_snapshot_csv(const fs::path& path, const Field& field, double t) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const Grid& g = field.grid;
  out << "# grid: " << g.dim();
  for (int c : g.cells) out << ',' << c;
  for (double h : g.spacing) out << ',' << format_number(h);
  for (double o : g.origin) out << ',' << format_number(o);
  out << ",t=" << format_number(t) << '\n';
  out << std::setprecision(17);
  for (double v : field.values) out << v << '\n';
}

std::pair<Field, double> read_snapshot_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  const std::string tag = "# grid: ";
  if (header.rfind(tag, 0) != 0) throw std::runtime_error(path.string() + ": missing grid header");
  std::vector<std::string> parts;
  {
    std::stringstream ss(header.substr(tag.size()));
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
  }
  if (parts.empty()) throw std::runtime_error(path.string() + ": empty grid header");
  const int n = std::stoi(parts[0]);
  if (n < 1 || parts.size() != static_cast<std::size_t>(3 * n + 2) ||
      parts.back().rfind("t=", 0) != 0) {
    throw std::runtime_error(path.string() + ": malformed grid header");
  }
  std::vector<int> cells(n);
  std::vector<double> spacing(n), origin(n);
  for (int j = 0; j < n; ++j) {
    cells[j] = std::stoi(parts[1 + j]);
    spacing[j] = std::stod(parts[1 + n + j]);
    origin[j] = std::stod(parts[1 + 2 * n + j]);
  }
  const double t = std::stod(parts.back().substr(2));
  Field field = Field::zeros(make_grid(cells, spacing, origin));
  for (double& v : field.values) {
    if (!(in >> v)) throw std::runtime_error(path.string() + ": too few values");
  }
  return {field, t};
}

void write_report_csv(const fs::path& path, const RunReport& report) {
  std::vector<std::string> header{"t"};
  for (const auto& [p, series] : report.norms) header.push_back("norm_" + format_number(p));
  const bool has_tv = !report.tv.empty();
  if (has_tv) header.push_back("tv");
  for (const auto& [r, series] : report.entropy_mass) {
    header.push_back("entropy_mass_" + format_number(r));
  }
  const bool has_mass = report.mass.size() == report.times.size();
  if (has_mass) header.push_back("mass");
  for (std::size_t j = 0; j < report.support_widths.size(); ++j) {
    header.push_back("width_axis_" + std::to_string(j));
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    std::vector<double> row{report.times[i]};
    for (const auto& [p, series] : report.norms) row.push_back(series[i]);
    if (has_tv) row.push_back(report.tv[i]);
    for (const auto& [r, series] : report.entropy_mass) row.push_back(series[i]);
    if (has_mass) row.push_back(report.mass[i]);
    for (const auto& widths : report.support_widths) row.push_back(widths[i]);
    rows.push_back(std::move(row));
  }
  write_table_csv(path, header, rows);
}

void write_table_csv(const fs::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_number(row[j]);
    out << '\n';
  }
}

}  // namespace disperse

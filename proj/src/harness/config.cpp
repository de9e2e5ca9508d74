#include "saism/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace saism::harness {

ExperimentConfig ExperimentConfig::simulated_profile() {
  ExperimentConfig c;
  c.rows = c.cols = 256;
  c.views = 24;
  c.bins = 256;
  return c;
}

ExperimentConfig ExperimentConfig::desk_profile() {
  ExperimentConfig c;
  c.lambda0_scale = 0.25;
  return c;
}

ExperimentConfig ExperimentConfig::real_data_profile() {
  ExperimentConfig c = simulated_profile();
  c.tau = 5e4;
  c.relaxation = 1.5;
  c.lambda0_scale = 0.25;
  return c;
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(rows >= 1 && cols >= 1 && views >= 1 && bins >= 1,
          "geometry sizes must be positive");
  require(sinogram_file || (rows >= 8 && cols >= 8),
          "phantom simulation needs at least 8x8 pixels");
  require(strings >= 1 && strings <= views * bins,
          "string count must lie in [1, number of measurements]");
  require(!photon_scale || (*photon_scale > 0.0 && std::isfinite(*photon_scale)),
          "photon scale kappa must be positive");
  require(!(photon_scale && sinogram_file),
          "photon scale applies only to simulated data");
  require(!tau || *tau > 0.0, "tau must be positive");
  require(tau || !sinogram_file, "measured data needs an explicit tau");
  require(rho >= 0.0 && rho < 1.0, "rho must lie in [0, 1)");
  require(alpha > 0.0, "alpha must be positive");
  require(decay_exponent > 0.0 && decay_exponent <= 1.0, "s must lie in (0, 1]");
  require(!parcels || *parcels >= 1, "parcels must be positive");
  require(lambda0_scale > 0.0, "lambda0 scale must be positive");
  require(sigma > 0.0 && sigma <= 1.0, "sigma must lie in (0, 1]");
  require(relaxation >= sigma && relaxation <= 2.0 - sigma,
          "relaxation must lie in [sigma, 2 - sigma]");
  require(max_iterations || max_seconds, "an iteration or time budget is required");
  require(!max_seconds || *max_seconds > 0.0, "time budget must be positive");
  require(!max_seconds || measure_time, "a time budget needs time measurement");
  require(threads >= 1, "threads must be positive");
  require(record_stride >= 1, "record stride must be positive");
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string fmt_optional(const std::optional<T>& v, F f) {
  return v ? f(*v) : std::string("none");
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t pos = 0;
  const auto v = std::stoull(s, &pos);
  if (pos != s.size() || s.front() == '-')
    throw std::invalid_argument("not an unsigned integer: '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("not a boolean: '" + s + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string to_manifest(const ExperimentConfig& c) {
  auto u = [](std::uint64_t v) { return std::to_string(v); };
  std::ostringstream out;
  out << "# saism run manifest\n";
  out << "rows = " << c.rows << '\n';
  out << "cols = " << c.cols << '\n';
  out << "views = " << c.views << '\n';
  out << "bins = " << c.bins << '\n';
  out << "strings = " << c.strings << '\n';
  out << "seed = " << c.seed << '\n';
  out << "photon_scale = " << fmt_optional(c.photon_scale, fmt_double) << '\n';
  out << "tau = " << fmt_optional(c.tau, fmt_double) << '\n';
  out << "rho = " << fmt_double(c.rho) << '\n';
  out << "alpha = " << fmt_double(c.alpha) << '\n';
  out << "decay_exponent = " << fmt_double(c.decay_exponent) << '\n';
  out << "parcels = " << fmt_optional(c.parcels, u) << '\n';
  out << "lambda0_scale = " << fmt_double(c.lambda0_scale) << '\n';
  out << "relaxation = " << fmt_double(c.relaxation) << '\n';
  out << "sigma = " << fmt_double(c.sigma) << '\n';
  out << "max_iterations = " << fmt_optional(c.max_iterations, u) << '\n';
  out << "max_seconds = " << fmt_optional(c.max_seconds, fmt_double) << '\n';
  out << "threads = " << c.threads << '\n';
  out << "record_stride = " << c.record_stride << '\n';
  out << "measure_time = " << (c.measure_time ? "true" : "false") << '\n';
  out << "sinogram_file = "
      << fmt_optional(c.sinogram_file, [](const auto& p) { return p.string(); }) << '\n';
  out << "output_dir = " << c.output_dir.string() << '\n';
  return out.str();
}

ExperimentConfig parse_manifest(const std::string& text) {
  ExperimentConfig c;
  using Setter = std::function<void(const std::string&)>;
  auto opt = [](auto parse) {
    return [parse](const std::string& v) {
      using T = decltype(parse(v));
      return v == "none" ? std::optional<T>{} : std::optional<T>{parse(v)};
    };
  };
  auto size = [](const std::string& v) { return static_cast<std::size_t>(parse_u64(v)); };
  const std::map<std::string, Setter> setters{
      {"rows", [&](const std::string& v) { c.rows = size(v); }},
      {"cols", [&](const std::string& v) { c.cols = size(v); }},
      {"views", [&](const std::string& v) { c.views = size(v); }},
      {"bins", [&](const std::string& v) { c.bins = size(v); }},
      {"strings", [&](const std::string& v) { c.strings = size(v); }},
      {"seed", [&](const std::string& v) { c.seed = parse_u64(v); }},
      {"photon_scale", [&](const std::string& v) { c.photon_scale = opt(parse_double)(v); }},
      {"tau", [&](const std::string& v) { c.tau = opt(parse_double)(v); }},
      {"rho", [&](const std::string& v) { c.rho = parse_double(v); }},
      {"alpha", [&](const std::string& v) { c.alpha = parse_double(v); }},
      {"decay_exponent", [&](const std::string& v) { c.decay_exponent = parse_double(v); }},
      {"parcels", [&](const std::string& v) { c.parcels = opt(size)(v); }},
      {"lambda0_scale", [&](const std::string& v) { c.lambda0_scale = parse_double(v); }},
      {"relaxation", [&](const std::string& v) { c.relaxation = parse_double(v); }},
      {"sigma", [&](const std::string& v) { c.sigma = parse_double(v); }},
      {"max_iterations", [&](const std::string& v) { c.max_iterations = opt(size)(v); }},
      {"max_seconds", [&](const std::string& v) { c.max_seconds = opt(parse_double)(v); }},
      {"threads", [&](const std::string& v) { c.threads = size(v); }},
      {"record_stride", [&](const std::string& v) { c.record_stride = size(v); }},
      {"measure_time", [&](const std::string& v) { c.measure_time = parse_bool(v); }},
      {"sinogram_file",
       [&](const std::string& v) {
         c.sinogram_file = v == "none" ? std::optional<std::filesystem::path>{}
                                       : std::optional<std::filesystem::path>{v};
       }},
      {"output_dir", [&](const std::string& v) { c.output_dir = v; }},
  };

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("manifest line " + std::to_string(lineno) + ": missing '='");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end())
      throw std::invalid_argument("manifest line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    try {
      it->second(value);
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("manifest line " + std::to_string(lineno) + " (" + key +
                                  "): " + e.what());
    }
  }
  return c;
}

void write_manifest(const std::filesystem::path& path, const ExperimentConfig& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << to_manifest(config);
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

ExperimentConfig read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

}  // namespace saism::harness

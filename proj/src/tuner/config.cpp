#include "pumatune/tuner/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "pumatune/errors.hpp"

namespace pumatune::tuner {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

JointVector from_list(std::initializer_list<double> values) {
  JointVector v;
  int j = 0;
  for (double x : values) v[j++] = x;
  return v;
}

}  // namespace

TrajectorySpec RunConfig::default_trajectory() {
  return TrajectorySpec(from_list({-20, 60, -120, 0, -30, 0}) * kDeg, from_list({20, -60, -60, 0, 30, 0}) * kDeg, 1.0);
}

GainSet RunConfig::reference_gains() {
  return {from_list({700, 1100, 400, 40, 30, 40}), from_list({20, 20, 20, 5, 5, 5})};
}

void RunConfig::validate(const std::string& origin) const {
  auto fail = [&](const char* field, const std::string& msg) { throw ParseError(origin, field, msg); };
  if (robot_file.empty()) fail("robot", "missing robot parameter file");
  if (optimizer.population < 2 || optimizer.population % 2 != 0) {
    fail("optimizer.population", "must be even and at least 2");
  }
  if (optimizer.generations < 1) fail("optimizer.generations", "must be at least 1");
  try {
    optimizer.operators.validate();
  } catch (const InvalidInput& e) {
    fail("optimizer", e.what());
  }
  if (optimizer.bounds.size() != kGenes) fail("optimizer.lower", "bounds need 12 entries");
  try {
    gains.validate();
  } catch (const InvalidInput& e) {
    fail("gains", e.what());
  }
  const double tf = trajectory.duration();
  auto divides = [](double span, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) return false;
    const double n = std::round(span / step);
    return n >= 1.0 && std::abs(n * step - span) <= 1e-9;
  };
  if (!divides(tf, simulation.dt_control)) fail("simulation.dt_control", "must be positive and divide the duration");
  if (!divides(simulation.dt_control, simulation.dt_integration)) {
    fail("simulation.dt_integration", "must be positive and divide dt_control");
  }
}

namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw ParseError(origin_, field, msg);
  }

  void only_keys(const json& obj, const std::string& prefix, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(prefix.empty() ? "<document>" : prefix, "expected an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) fail(prefix.empty() ? key : prefix + "." + key, "unknown field");
    }
  }

  double number(const json& v, const std::string& field) const {
    if (!v.is_number()) fail(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(field, "not finite");
    return x;
  }

  long integer(const json& v, const std::string& field) const {
    if (!v.is_number_integer()) fail(field, "expected an integer");
    return v.get<long>();
  }

  /// A scalar broadcast to every entry, or an array of exactly `n` numbers.
  std::vector<double> numbers(const json& v, const std::string& field, std::size_t n) const {
    if (v.is_number()) return std::vector<double>(n, number(v, field));
    if (!v.is_array() || v.size() != n) fail(field, fmt::format("expected a number or an array of {} numbers", n));
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(number(v[i], fmt::format("{}[{}]", field, i)));
    return out;
  }

  JointVector joints(const json& v, const std::string& field) const {
    const auto list = numbers(v, field, kJoints);
    return Eigen::Map<const JointVector>(list.data());
  }

 private:
  std::string origin_;
};

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& origin,
                           const std::filesystem::path& base_directory) {
  const Reader rd(origin);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    rd.fail("<document>", e.what());
  }
  rd.only_keys(doc, "", {"robot", "trajectory", "simulation", "gains", "optimizer", "output"});

  RunConfig cfg;
  if (doc.contains("robot")) {
    if (!doc["robot"].is_string()) rd.fail("robot", "expected a path string");
    std::filesystem::path robot = doc["robot"].get<std::string>();
    cfg.robot_file = robot.is_relative() ? base_directory / robot : robot;
  }

  if (doc.contains("trajectory")) {
    const json& t = doc["trajectory"];
    rd.only_keys(t, "trajectory", {"initial_deg", "final_deg", "duration"});
    JointVector qi = cfg.trajectory.q_initial(), qf = cfg.trajectory.q_final();
    double tf = cfg.trajectory.duration();
    if (t.contains("initial_deg")) qi = rd.joints(t["initial_deg"], "trajectory.initial_deg") * kDeg;
    if (t.contains("final_deg")) qf = rd.joints(t["final_deg"], "trajectory.final_deg") * kDeg;
    if (t.contains("duration")) tf = rd.number(t["duration"], "trajectory.duration");
    if (!(tf > 0.0)) rd.fail("trajectory.duration", "must be positive");
    cfg.trajectory = TrajectorySpec(qi, qf, tf);
  }

  if (doc.contains("simulation")) {
    const json& s = doc["simulation"];
    rd.only_keys(s, "simulation", {"dt_control", "dt_integration", "control_update", "initial_offset_rad"});
    if (s.contains("dt_control")) cfg.simulation.dt_control = rd.number(s["dt_control"], "simulation.dt_control");
    if (s.contains("dt_integration")) {
      cfg.simulation.dt_integration = rd.number(s["dt_integration"], "simulation.dt_integration");
    }
    if (s.contains("control_update")) {
      const json& u = s["control_update"];
      if (u == "continuous") {
        cfg.simulation.update = ControlUpdate::continuous;
      } else if (u == "zero-order-hold") {
        cfg.simulation.update = ControlUpdate::zero_order_hold;
      } else {
        rd.fail("simulation.control_update", "expected \"continuous\" or \"zero-order-hold\"");
      }
    }
    if (s.contains("initial_offset_rad")) {
      cfg.simulation_offset = rd.joints(s["initial_offset_rad"], "simulation.initial_offset_rad");
    }
  }

  if (doc.contains("gains")) {
    const json& g = doc["gains"];
    rd.only_keys(g, "gains", {"kp", "kd"});
    if (g.contains("kp")) cfg.gains.kp = rd.joints(g["kp"], "gains.kp");
    if (g.contains("kd")) cfg.gains.kd = rd.joints(g["kd"], "gains.kd");
  }

  if (doc.contains("optimizer")) {
    const json& o = doc["optimizer"];
    rd.only_keys(o, "optimizer",
                 {"population", "generations", "crossover_probability", "mutation_probability", "operators",
                  "recombination_spread", "mutation_range", "mutation_precision", "sbx_eta", "polynomial_eta",
                  "lower", "upper", "seed", "threads", "initial_offset_rad"});
    OptimizerConfig& opt = cfg.optimizer;
    if (o.contains("population")) {
      const long n = rd.integer(o["population"], "optimizer.population");
      if (n < 2 || n % 2 != 0) rd.fail("optimizer.population", "must be even and at least 2");
      opt.population = static_cast<std::size_t>(n);
    }
    if (o.contains("generations")) {
      const long g = rd.integer(o["generations"], "optimizer.generations");
      if (g < 1) rd.fail("optimizer.generations", "must be at least 1");
      opt.generations = static_cast<int>(g);
    }
    auto real = [&](const char* key, double& target) {
      if (o.contains(key)) target = rd.number(o[key], std::string("optimizer.") + key);
    };
    real("crossover_probability", opt.operators.crossover_probability);
    real("mutation_probability", opt.operators.mutation_probability);
    real("recombination_spread", opt.operators.recombination_spread);
    real("mutation_range", opt.operators.mutation_range);
    real("mutation_precision", opt.operators.mutation_precision);
    real("sbx_eta", opt.operators.sbx_eta);
    real("polynomial_eta", opt.operators.polynomial_eta);
    if (o.contains("operators")) {
      if (!o["operators"].is_string()) rd.fail("optimizer.operators", "expected a string");
      try {
        opt.operators.family = moea::parse_operator_family(o["operators"].get<std::string>());
      } catch (const InvalidInput& e) {
        rd.fail("optimizer.operators", e.what());
      }
    }
    std::vector<double> lower = opt.bounds.lower, upper = opt.bounds.upper;
    if (o.contains("lower")) lower = rd.numbers(o["lower"], "optimizer.lower", kGenes);
    if (o.contains("upper")) upper = rd.numbers(o["upper"], "optimizer.upper", kGenes);
    for (std::size_t i = 0; i < kGenes; ++i) {
      if (!(lower[i] < upper[i])) rd.fail(fmt::format("optimizer.lower[{}]", i), "must be below the upper bound");
    }
    opt.bounds = moea::Bounds(lower, upper);
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned()) rd.fail("optimizer.seed", "expected a non-negative integer");
      opt.seed = o["seed"].get<std::uint64_t>();
    }
    if (o.contains("threads")) {
      const long t = rd.integer(o["threads"], "optimizer.threads");
      if (t < 0) rd.fail("optimizer.threads", "must be non-negative");
      opt.threads = static_cast<std::size_t>(t);
    }
    if (o.contains("initial_offset_rad")) {
      opt.initial_offset = rd.joints(o["initial_offset_rad"], "optimizer.initial_offset_rad");
    }
  }

  if (doc.contains("output")) {
    const json& out = doc["output"];
    rd.only_keys(out, "output", {"directory", "plot_data"});
    if (out.contains("directory")) {
      if (!out["directory"].is_string()) rd.fail("output.directory", "expected a path string");
      cfg.output_directory = out["directory"].get<std::string>();
    }
    if (out.contains("plot_data")) {
      if (!out["plot_data"].is_boolean()) rd.fail("output.plot_data", "expected true or false");
      cfg.plot_data = out["plot_data"].get<bool>();
    }
  }

  cfg.validate(origin);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "<file>", "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.string(), path.parent_path());
}

}  // namespace pumatune::tuner

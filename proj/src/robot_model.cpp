#include "pumatune/robot_model.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "pumatune/errors.hpp"

namespace pumatune {

void require_finite(const JointVector& v, std::string_view what) {
  if (!v.allFinite()) {
    throw InvalidInput(fmt::format("{} contains a non-finite entry", what));
  }
}

RobotModel::RobotModel(std::string name, std::array<DhRow, kJoints> dh,
                       std::array<LinkInertia, kJoints> links, Eigen::Vector3d gravity,
                       JointVector home)
    : name_(std::move(name)), dh_(dh), links_(links), gravity_(gravity), home_(home) {
  if (!gravity_.allFinite()) throw InvalidInput("gravity vector is not finite");
  require_finite(home_, "home pose");
  for (int j = 0; j < kJoints; ++j) {
    const auto& row = dh_[j];
    const auto& link = links_[j];
    if (!std::isfinite(row.alpha) || !std::isfinite(row.a) || !std::isfinite(row.d)) {
      throw InvalidInput(fmt::format("joint {}: DH parameters are not finite", j + 1));
    }
    // Zero mass is accepted: a link whose centre of mass lies on its own joint axis
    // (PUMA link 1) contributes only rotational inertia.
    if (!std::isfinite(link.mass) || link.mass < 0.0) {
      throw InvalidInput(fmt::format("joint {}: mass must be finite and non-negative", j + 1));
    }
    if (!link.com.allFinite()) {
      throw InvalidInput(fmt::format("joint {}: centre of mass is not finite", j + 1));
    }
    if (!std::isfinite(link.rotor_inertia) || link.rotor_inertia < 0.0) {
      throw InvalidInput(fmt::format("joint {}: rotor inertia must be finite and non-negative", j + 1));
    }
    const Eigen::Matrix3d& inertia = link.inertia;
    if (!inertia.allFinite()) {
      throw InvalidInput(fmt::format("joint {}: inertia tensor is not finite", j + 1));
    }
    const double scale = std::max(1.0, inertia.cwiseAbs().maxCoeff());
    if ((inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw InvalidInput(fmt::format("joint {}: inertia tensor is not symmetric", j + 1));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(inertia, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-12 * scale) {
      throw InvalidInput(fmt::format("joint {}: inertia tensor is not positive semidefinite", j + 1));
    }
  }
}

RobotModel RobotModel::with_gravity(const Eigen::Vector3d& gravity) const {
  RobotModel copy = *this;
  if (!gravity.allFinite()) throw InvalidInput("gravity vector is not finite");
  copy.gravity_ = gravity;
  return copy;
}

namespace {

using nlohmann::json;

class FieldReader {
 public:
  explicit FieldReader(const std::string& origin) : origin_(origin) {}

  [[noreturn]] void fail(const std::string& field, const std::string& detail) const {
    throw ParseError(origin_, field, detail);
  }

  const json& member(const json& obj, const char* key, const std::string& field) const {
    if (!obj.is_object() || !obj.contains(key)) fail(field, "missing");
    return obj.at(key);
  }

  double number(const json& obj, const char* key, const std::string& prefix) const {
    const std::string field = prefix + key;
    const json& v = member(obj, key, field);
    if (!v.is_number()) fail(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(field, "not finite");
    return x;
  }

  template <int N>
  Eigen::Matrix<double, N, 1> vector(const json& obj, const char* key, const std::string& prefix) const {
    const std::string field = prefix + key;
    const json& v = member(obj, key, field);
    if (!v.is_array() || v.size() != static_cast<std::size_t>(N)) {
      fail(field, fmt::format("expected an array of {} numbers", N));
    }
    Eigen::Matrix<double, N, 1> out;
    for (int i = 0; i < N; ++i) {
      if (!v[i].is_number()) fail(fmt::format("{}[{}]", field, i), "expected a number");
      out[i] = v[i].get<double>();
    }
    return out;
  }

 private:
  std::string origin_;
};

}  // namespace

RobotModel parse_robot_model(const std::string& text, const std::string& origin) {
  const FieldReader rd(origin);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    rd.fail("<document>", e.what());
  }
  if (!doc.is_object()) rd.fail("<document>", "expected an object");

  constexpr double kDeg = std::numbers::pi / 180.0;
  const std::string name = doc.value("name", std::string("unnamed arm"));
  Eigen::Vector3d gravity(0.0, 0.0, -9.81);
  if (doc.contains("gravity")) gravity = rd.vector<3>(doc, "gravity", "");
  JointVector home = JointVector::Zero();
  if (doc.contains("home_deg")) home = rd.vector<kJoints>(doc, "home_deg", "") * kDeg;

  const json& joints = rd.member(doc, "joints", "joints");
  if (!joints.is_array() || joints.size() != kJoints) {
    rd.fail("joints", fmt::format("expected exactly {} revolute joint blocks", kJoints));
  }

  std::array<DhRow, kJoints> dh;
  std::array<LinkInertia, kJoints> links;
  for (int j = 0; j < kJoints; ++j) {
    const json& jb = joints[j];
    const std::string p = fmt::format("joints[{}].", j);
    if (jb.contains("type") && jb.at("type") != "revolute") rd.fail(p + "type", "only revolute joints are supported");
    dh[j] = {rd.number(jb, "alpha_deg", p) * kDeg, rd.number(jb, "a", p), rd.number(jb, "d", p)};

    LinkInertia& link = links[j];
    link.mass = rd.number(jb, "mass", p);
    if (link.mass < 0.0) rd.fail(p + "mass", "must be non-negative");
    link.com = rd.vector<3>(jb, "com", p);
    const json& in = rd.member(jb, "inertia", p + "inertia");
    const std::string ip = p + "inertia.";
    const double xx = rd.number(in, "xx", ip), yy = rd.number(in, "yy", ip), zz = rd.number(in, "zz", ip);
    const double xy = rd.number(in, "xy", ip), yz = rd.number(in, "yz", ip), xz = rd.number(in, "xz", ip);
    link.inertia << xx, xy, xz, xy, yy, yz, xz, yz, zz;
    link.rotor_inertia = jb.contains("rotor_inertia") ? rd.number(jb, "rotor_inertia", p) : 0.0;
    if (link.rotor_inertia < 0.0) rd.fail(p + "rotor_inertia", "must be non-negative");
  }

  try {
    return RobotModel(name, dh, links, gravity, home);
  } catch (const InvalidInput& e) {
    rd.fail("joints", e.what());
  }
}

RobotModel load_robot_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "<file>", "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_robot_model(buf.str(), path.string());
}

}  // namespace pumatune

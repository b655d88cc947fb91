#pragma once

#include <array>
#include <filesystem>
#include <string>

#include <Eigen/Core>

#include "pumatune/joint_vector.hpp"

namespace pumatune {

/// Standard Denavit-Hartenberg row of a revolute joint. The joint angle is the variable.
struct DhRow {
  double alpha = 0.0;  // link twist [rad]
  double a = 0.0;      // link length [m]
  double d = 0.0;      // joint offset [m]
};

struct LinkInertia {
  double mass = 0.0;                                   // [kg]
  Eigen::Vector3d com = Eigen::Vector3d::Zero();       // centre of mass in the link frame [m]
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();   // about the centre of mass, link frame [kg m^2]
  double rotor_inertia = 0.0;                          // reflected motor inertia [kg m^2]
};

/// Kinematic and inertial description of a six-joint revolute arm. Immutable once built.
class RobotModel {
 public:
  /// Validates the parameters; throws InvalidInput describing the offending joint and field.
  RobotModel(std::string name, std::array<DhRow, kJoints> dh, std::array<LinkInertia, kJoints> links,
             Eigen::Vector3d gravity, JointVector home = JointVector::Zero());

  const std::string& name() const { return name_; }
  const DhRow& dh(int joint) const { return dh_[static_cast<std::size_t>(joint)]; }
  const LinkInertia& link(int joint) const { return links_[static_cast<std::size_t>(joint)]; }
  const Eigen::Vector3d& gravity() const { return gravity_; }
  /// Reference configuration shipped with the parameter file [rad].
  const JointVector& home() const { return home_; }

  /// Same arm with a different gravity vector (zero gravity isolates the inertial terms).
  RobotModel with_gravity(const Eigen::Vector3d& gravity) const;

 private:
  std::string name_;
  std::array<DhRow, kJoints> dh_;
  std::array<LinkInertia, kJoints> links_;
  Eigen::Vector3d gravity_;
  JointVector home_;
};

/// Loads a robot parameter file (JSON, see data/puma560.json and README for the fields).
/// Parse failures throw ParseError naming the file, the joint index and the field.
RobotModel load_robot_model(const std::filesystem::path& path);

/// Parses robot parameters from an in-memory document; `origin` is used in error messages.
RobotModel parse_robot_model(const std::string& text, const std::string& origin);

}  // namespace pumatune

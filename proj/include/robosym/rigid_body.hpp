#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace robosym {

enum class JointKind { revolute, prismatic };

struct BodySpec {
  std::string name;
  double mass = 0.0;
  Eigen::Vector3d inertia_diag = Eigen::Vector3d::Zero();  // principal moments
  Eigen::Matrix3d principal_axes = Eigen::Matrix3d::Identity();
  Eigen::Vector3d com_offset = Eigen::Vector3d::Zero();  // CoM in body frame

  /// Inertia tensor expressed in the body frame.
  Eigen::Matrix3d inertia_body() const {
    return principal_axes * inertia_diag.asDiagonal() * principal_axes.transpose();
  }
};

struct JointSpec {
  std::string name;
  JointKind kind = JointKind::revolute;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();  // unit vector, parent frame
  Eigen::Matrix3d origin_rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d origin_translation = Eigen::Vector3d::Zero();
};

/// Serial chain hanging off the base: joint i connects the previous body
/// (or the base for i = 0) to body i.
struct Branch {
  std::string type_id;
  std::string label;
  std::vector<JointSpec> joints;
  std::vector<BodySpec> bodies;

  int dof() const { return static_cast<int>(joints.size()); }
};

struct RobotModel {
  std::string name;
  BodySpec base;
  std::vector<Branch> branches;

  int nj = 0;                          // total joint count
  std::vector<int> branch_joint_offset;  // first global joint index per branch

  void finalize();  // computes nj/offsets and validates invariants
  int branch_count(const std::string& type_id) const;
  std::vector<int> branches_of_type(const std::string& type_id) const;
  std::vector<std::string> branch_types() const;  // unique, in file order
};

struct RobotState {
  Eigen::Matrix3d base_rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d base_position = Eigen::Vector3d::Zero();
  Eigen::Vector3d base_angular_velocity = Eigen::Vector3d::Zero();  // world frame
  Eigen::Vector3d base_linear_velocity = Eigen::Vector3d::Zero();   // world frame
  Eigen::VectorXd q;  // joint positions, rad or m
  Eigen::VectorXd v;  // joint velocities
};

struct Pose {
  Eigen::Matrix3d rotation;
  Eigen::Vector3d translation;
};

/// Base-frame geometry of every branch body and joint at a configuration.
/// Body/joint k of branch b lives at flat index branch_joint_offset[b] + k.
struct FrameData {
  std::vector<Eigen::Matrix3d> body_rotation;
  std::vector<Eigen::Vector3d> body_origin;
  std::vector<Eigen::Vector3d> body_com;
  std::vector<Eigen::Vector3d> joint_axis;    // unit, base frame
  std::vector<Eigen::Vector3d> joint_origin;  // base frame
};

FrameData compute_frames(const RobotModel& model, const Eigen::VectorXd& q);

/// World poses: entry 0 is the base, then branch bodies in model order.
std::vector<Pose> forward_kinematics(const RobotModel& model, const RobotState& state);

/// Base-frame Jacobians at each branch body's CoM: world columns follow the
/// revolute (omega = axis, v = axis x r) and prismatic (v = axis) rules;
/// joints outside the body's chain contribute zero columns.
struct BodyJacobians {
  std::vector<Eigen::Matrix<double, 3, Eigen::Dynamic>> position;
  std::vector<Eigen::Matrix<double, 3, Eigen::Dynamic>> orientation;
};
BodyJacobians body_jacobians(const RobotModel& model, const RobotState& state);

/// Joint-space generalized mass matrix sum_k (Jp^t m Jp + Jo^t I Jo),
/// inertia expressed in the base frame at configuration q.
Eigen::MatrixXd joint_space_mass_matrix(const RobotModel& model, const Eigen::VectorXd& q);

/// Kinetic energy split into the base term and the joint-space quadratic
/// form. The total is their sum; it equals the per-body world-frame energy
/// when the base is at rest (joint-space terms are taken relative to the
/// base frame).
struct KineticEnergy {
  double base = 0.0;
  double joint_space = 0.0;
  double total = 0.0;
};
KineticEnergy kinetic_energy(const RobotModel& model, const RobotState& state);

/// Per-body kinetic energy summed in the world frame (test oracle and
/// consistency check).
double kinetic_energy_per_body(const RobotModel& model, const RobotState& state);

struct Momentum {
  Eigen::Vector3d linear;
  Eigen::Vector3d angular;  // about the instantaneous CoM, world frame
};
Momentum centroidal_momentum(const RobotModel& model, const RobotState& state);

/// Mass-weighted mean of body CoM positions, world frame.
Eigen::Vector3d center_of_mass(const RobotModel& model, const RobotState& state);

double total_mass(const RobotModel& model);

RobotModel load_robot(const std::string& path);

}  // namespace robosym

#include "robosym/rigid_body.hpp"

#include <cmath>
#include <set>

#include "robosym/error.hpp"
#include "robosym/toml.hpp"

namespace robosym {

namespace {

void validate_body(const BodySpec& body) {
  require(body.mass >= 0.0, ErrorCode::invalid_argument,
          "body '" + body.name + "' has negative mass");
  for (int i = 0; i < 3; ++i)
    require(body.inertia_diag[i] >= 0.0, ErrorCode::invalid_argument,
            "body '" + body.name + "' has a negative principal moment");
  double orth = (body.principal_axes.transpose() * body.principal_axes -
                 Eigen::Matrix3d::Identity())
                    .cwiseAbs()
                    .maxCoeff();
  require(orth <= 1e-10, ErrorCode::invalid_argument,
          "body '" + body.name + "' principal axes are not orthogonal");
  if (body.mass > 0.0) {
    const Eigen::Vector3d& d = body.inertia_diag;
    // Principal moments of any rigid body obey the triangle inequalities.
    require(d[0] + d[1] >= d[2] - 1e-12 && d[1] + d[2] >= d[0] - 1e-12 &&
                d[0] + d[2] >= d[1] - 1e-12,
            ErrorCode::invalid_argument,
            "body '" + body.name + "' principal moments violate the triangle inequality");
  }
}

void validate_joint(const JointSpec& joint) {
  require(std::abs(joint.axis.norm() - 1.0) <= 1e-10, ErrorCode::invalid_argument,
          "joint '" + joint.name + "' axis is not unit length");
  double orth = (joint.origin_rotation.transpose() * joint.origin_rotation -
                 Eigen::Matrix3d::Identity())
                    .cwiseAbs()
                    .maxCoeff();
  require(orth <= 1e-10, ErrorCode::invalid_argument,
          "joint '" + joint.name + "' origin rotation is not orthogonal");
}

Eigen::Matrix3d axis_rotation(const Eigen::Vector3d& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

}  // namespace

void RobotModel::finalize() {
  validate_body(base);
  nj = 0;
  branch_joint_offset.clear();
  std::set<std::string> labels;
  for (const Branch& branch : branches) {
    require(!branch.joints.empty(), ErrorCode::invalid_argument,
            "branch '" + branch.label + "' has no joints");
    require(branch.joints.size() == branch.bodies.size(), ErrorCode::invalid_argument,
            "branch '" + branch.label + "' must pair each joint with one body");
    require(labels.insert(branch.label).second, ErrorCode::invalid_argument,
            "duplicate branch label '" + branch.label + "'");
    for (const JointSpec& joint : branch.joints) validate_joint(joint);
    for (const BodySpec& body : branch.bodies) validate_body(body);
    branch_joint_offset.push_back(nj);
    nj += branch.dof();
  }
  // Replicated instances must agree in joint kinds; mass or inertia
  // mismatches are left to symmetry verification so that deliberately
  // perturbed models remain loadable.
  for (size_t i = 0; i < branches.size(); ++i)
    for (size_t j = i + 1; j < branches.size(); ++j) {
      if (branches[i].type_id != branches[j].type_id) continue;
      require(branches[i].dof() == branches[j].dof(), ErrorCode::invalid_argument,
              "branch type '" + branches[i].type_id + "' instances differ in joint count");
      for (int k = 0; k < branches[i].dof(); ++k)
        require(branches[i].joints[k].kind == branches[j].joints[k].kind,
                ErrorCode::invalid_argument,
                "branch type '" + branches[i].type_id + "' instances differ in joint kinds");
    }
}

int RobotModel::branch_count(const std::string& type_id) const {
  int count = 0;
  for (const Branch& b : branches) count += b.type_id == type_id ? 1 : 0;
  return count;
}

std::vector<int> RobotModel::branches_of_type(const std::string& type_id) const {
  std::vector<int> out;
  for (size_t i = 0; i < branches.size(); ++i)
    if (branches[i].type_id == type_id) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<std::string> RobotModel::branch_types() const {
  std::vector<std::string> out;
  for (const Branch& b : branches)
    if (std::find(out.begin(), out.end(), b.type_id) == out.end()) out.push_back(b.type_id);
  return out;
}

FrameData compute_frames(const RobotModel& model, const Eigen::VectorXd& q) {
  require(q.size() == model.nj, ErrorCode::invalid_argument,
          "configuration dimension does not match the model");
  FrameData frames;
  int total = 0;
  for (const Branch& b : model.branches) total += b.dof();
  frames.body_rotation.resize(total);
  frames.body_origin.resize(total);
  frames.body_com.resize(total);
  frames.joint_axis.resize(total);
  frames.joint_origin.resize(total);

  for (size_t bi = 0; bi < model.branches.size(); ++bi) {
    const Branch& branch = model.branches[bi];
    int offset = model.branch_joint_offset[bi];
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
    for (int k = 0; k < branch.dof(); ++k) {
      const JointSpec& joint = branch.joints[k];
      // Joint frame after the fixed origin transform; axis is given in the
      // parent body frame.
      Eigen::Vector3d axis_world = R * joint.axis;
      Eigen::Matrix3d R_joint = R * joint.origin_rotation;
      Eigen::Vector3d p_joint = p + R * joint.origin_translation;
      double qk = q[offset + k];
      if (joint.kind == JointKind::revolute) {
        R = axis_rotation(axis_world, qk) * R_joint;
        p = p_joint;
      } else {
        R = R_joint;
        p = p_joint + axis_world * qk;
      }
      int idx = offset + k;
      frames.joint_axis[idx] = axis_world;
      frames.joint_origin[idx] = p_joint;
      frames.body_rotation[idx] = R;
      frames.body_origin[idx] = p;
      frames.body_com[idx] = p + R * branch.bodies[k].com_offset;
    }
  }
  return frames;
}

std::vector<Pose> forward_kinematics(const RobotModel& model, const RobotState& state) {
  FrameData frames = compute_frames(model, state.q);
  std::vector<Pose> poses;
  poses.push_back({state.base_rotation, state.base_position});
  for (size_t i = 0; i < frames.body_rotation.size(); ++i)
    poses.push_back({state.base_rotation * frames.body_rotation[i],
                     state.base_position + state.base_rotation * frames.body_origin[i]});
  return poses;
}

BodyJacobians body_jacobians(const RobotModel& model, const RobotState& state) {
  FrameData frames = compute_frames(model, state.q);
  BodyJacobians jac;
  int total = static_cast<int>(frames.body_rotation.size());
  jac.position.assign(total, Eigen::Matrix<double, 3, Eigen::Dynamic>::Zero(3, model.nj));
  jac.orientation.assign(total, Eigen::Matrix<double, 3, Eigen::Dynamic>::Zero(3, model.nj));
  for (size_t bi = 0; bi < model.branches.size(); ++bi) {
    const Branch& branch = model.branches[bi];
    int offset = model.branch_joint_offset[bi];
    for (int body = 0; body < branch.dof(); ++body) {
      int body_idx = offset + body;
      for (int j = 0; j <= body; ++j) {
        int col = offset + j;
        const Eigen::Vector3d& axis = frames.joint_axis[col];
        if (branch.joints[j].kind == JointKind::revolute) {
          jac.orientation[body_idx].col(col) = axis;
          jac.position[body_idx].col(col) =
              axis.cross(frames.body_com[body_idx] - frames.joint_origin[col]);
        } else {
          jac.position[body_idx].col(col) = axis;
        }
      }
    }
  }
  return jac;
}

Eigen::MatrixXd joint_space_mass_matrix(const RobotModel& model, const Eigen::VectorXd& q) {
  RobotState state;
  state.q = q;
  state.v = Eigen::VectorXd::Zero(model.nj);
  FrameData frames = compute_frames(model, q);
  BodyJacobians jac = body_jacobians(model, state);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(model.nj, model.nj);
  int idx = 0;
  for (const Branch& branch : model.branches) {
    for (int k = 0; k < branch.dof(); ++k, ++idx) {
      const BodySpec& body = branch.bodies[k];
      Eigen::Matrix3d inertia =
          frames.body_rotation[idx] * body.inertia_body() * frames.body_rotation[idx].transpose();
      M.noalias() += body.mass * jac.position[idx].transpose() * jac.position[idx];
      M.noalias() += jac.orientation[idx].transpose() * inertia * jac.orientation[idx];
    }
  }
  // Symmetrize away the last bits of floating-point noise.
  return 0.5 * (M + M.transpose());
}

namespace {

struct WorldBodies {
  std::vector<double> mass;
  std::vector<Eigen::Vector3d> com;
  std::vector<Eigen::Vector3d> com_velocity;
  std::vector<Eigen::Vector3d> angular_velocity;
  std::vector<Eigen::Matrix3d> inertia_world;  // about own CoM
};

/// World-frame state of every body (base first) with full base motion.
WorldBodies world_bodies(const RobotModel& model, const RobotState& state) {
  require(state.q.size() == model.nj && state.v.size() == model.nj,
          ErrorCode::invalid_argument, "state dimensions do not match the model");
  double rot_err = (state.base_rotation * state.base_rotation.transpose() -
                    Eigen::Matrix3d::Identity())
                       .cwiseAbs()
                       .maxCoeff();
  require(rot_err <= 1e-10 && state.base_rotation.determinant() > 0.0,
          ErrorCode::invalid_argument, "base rotation is not a proper rotation");

  WorldBodies out;
  const Eigen::Matrix3d& Rb = state.base_rotation;
  const Eigen::Vector3d& pb = state.base_position;
  const Eigen::Vector3d& wb = state.base_angular_velocity;
  const Eigen::Vector3d& vb = state.base_linear_velocity;

  out.mass.push_back(model.base.mass);
  Eigen::Vector3d base_com = pb + Rb * model.base.com_offset;
  out.com.push_back(base_com);
  out.com_velocity.push_back(vb + wb.cross(base_com - pb));
  out.angular_velocity.push_back(wb);
  out.inertia_world.push_back(Rb * model.base.inertia_body() * Rb.transpose());

  FrameData frames = compute_frames(model, state.q);
  for (size_t bi = 0; bi < model.branches.size(); ++bi) {
    const Branch& branch = model.branches[bi];
    int offset = model.branch_joint_offset[bi];
    // Velocity recursion along the chain, all in world frame.
    Eigen::Vector3d omega = wb;
    Eigen::Vector3d v_origin = vb;  // velocity of the parent frame origin
    Eigen::Vector3d p_parent = pb;
    for (int k = 0; k < branch.dof(); ++k) {
      int idx = offset + k;
      const JointSpec& joint = branch.joints[k];
      Eigen::Vector3d axis_w = Rb * frames.joint_axis[idx];
      Eigen::Vector3d p_body = pb + Rb * frames.body_origin[idx];
      // Transport the parent velocity to the new body origin.
      Eigen::Vector3d v_body = v_origin + omega.cross(p_body - p_parent);
      double vk = state.v[idx];
      if (joint.kind == JointKind::revolute) {
        omega = omega + axis_w * vk;
      } else {
        v_body += axis_w * vk;
      }
      Eigen::Vector3d com = pb + Rb * frames.body_com[idx];
      out.mass.push_back(branch.bodies[k].mass);
      out.com.push_back(com);
      out.com_velocity.push_back(v_body + omega.cross(com - p_body));
      out.angular_velocity.push_back(omega);
      Eigen::Matrix3d R_world = Rb * frames.body_rotation[idx];
      out.inertia_world.push_back(R_world * branch.bodies[k].inertia_body() *
                                  R_world.transpose());
      v_origin = v_body;
      p_parent = p_body;
    }
  }
  return out;
}

}  // namespace

KineticEnergy kinetic_energy(const RobotModel& model, const RobotState& state) {
  require(state.q.size() == model.nj && state.v.size() == model.nj,
          ErrorCode::invalid_argument, "state dimensions do not match the model");
  KineticEnergy energy;
  const Eigen::Vector3d& wb = state.base_angular_velocity;
  Eigen::Vector3d base_com_vel =
      state.base_linear_velocity +
      wb.cross(state.base_rotation * model.base.com_offset);
  Eigen::Matrix3d base_inertia =
      state.base_rotation * model.base.inertia_body() * state.base_rotation.transpose();
  energy.base = 0.5 * model.base.mass * base_com_vel.squaredNorm() +
                0.5 * wb.dot(base_inertia * wb);
  Eigen::MatrixXd M = joint_space_mass_matrix(model, state.q);
  energy.joint_space = 0.5 * state.v.dot(M * state.v);
  energy.total = energy.base + energy.joint_space;
  return energy;
}

double kinetic_energy_per_body(const RobotModel& model, const RobotState& state) {
  WorldBodies bodies = world_bodies(model, state);
  double energy = 0.0;
  for (size_t k = 0; k < bodies.mass.size(); ++k) {
    energy += 0.5 * bodies.mass[k] * bodies.com_velocity[k].squaredNorm();
    energy += 0.5 * bodies.angular_velocity[k].dot(bodies.inertia_world[k] *
                                                   bodies.angular_velocity[k]);
  }
  return energy;
}

double total_mass(const RobotModel& model) {
  double mass = model.base.mass;
  for (const Branch& b : model.branches)
    for (const BodySpec& body : b.bodies) mass += body.mass;
  return mass;
}

Eigen::Vector3d center_of_mass(const RobotModel& model, const RobotState& state) {
  double mass = total_mass(model);
  require(mass > 0.0, ErrorCode::undefined_com, "total mass is zero");
  WorldBodies bodies = world_bodies(model, state);
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  for (size_t k = 0; k < bodies.mass.size(); ++k) acc += bodies.mass[k] * bodies.com[k];
  return acc / mass;
}

Momentum centroidal_momentum(const RobotModel& model, const RobotState& state) {
  double mass = total_mass(model);
  require(mass > 0.0, ErrorCode::undefined_com, "total mass is zero");
  WorldBodies bodies = world_bodies(model, state);
  Eigen::Vector3d com = Eigen::Vector3d::Zero();
  for (size_t k = 0; k < bodies.mass.size(); ++k) com += bodies.mass[k] * bodies.com[k];
  com /= mass;

  Momentum momentum{Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()};
  for (size_t k = 0; k < bodies.mass.size(); ++k) {
    momentum.linear += bodies.mass[k] * bodies.com_velocity[k];
    momentum.angular += bodies.inertia_world[k] * bodies.angular_velocity[k];
    momentum.angular +=
        bodies.mass[k] * (bodies.com[k] - com).cross(bodies.com_velocity[k]);
  }
  return momentum;
}

namespace {

Eigen::Vector3d to_vec3(const toml::Value& v, const std::string& what) {
  std::vector<double> nums = v.number_array();
  require(nums.size() == 3, ErrorCode::parse_error, what + " must have 3 entries");
  return Eigen::Vector3d(nums[0], nums[1], nums[2]);
}

Eigen::Matrix3d to_mat3(const toml::Value& v, const std::string& what) {
  auto rows = v.number_matrix();
  require(rows.size() == 3, ErrorCode::parse_error, what + " must be a 3x3 matrix");
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r) {
    require(rows[r].size() == 3, ErrorCode::parse_error, what + " must be a 3x3 matrix");
    for (int c = 0; c < 3; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

BodySpec parse_body(const toml::Value& v, const std::string& fallback_name) {
  BodySpec body;
  body.name = v.string_or("name", fallback_name);
  body.mass = v.at("mass").number();
  body.inertia_diag = to_vec3(v.at("inertia_diag"), body.name + ".inertia_diag");
  if (v.contains("principal_axes"))
    body.principal_axes = to_mat3(v.at("principal_axes"), body.name + ".principal_axes");
  if (v.contains("com_offset"))
    body.com_offset = to_vec3(v.at("com_offset"), body.name + ".com_offset");
  return body;
}

JointSpec parse_joint(const toml::Value& v, const std::string& fallback_name) {
  JointSpec joint;
  joint.name = v.string_or("name", fallback_name);
  std::string kind = v.string_or("kind", "revolute");
  if (kind == "revolute")
    joint.kind = JointKind::revolute;
  else if (kind == "prismatic")
    joint.kind = JointKind::prismatic;
  else
    fail(ErrorCode::parse_error, "joint '" + joint.name + "' has unknown kind '" + kind + "'");
  joint.axis = to_vec3(v.at("axis"), joint.name + ".axis");
  if (v.contains("origin_rotation"))
    joint.origin_rotation = to_mat3(v.at("origin_rotation"), joint.name + ".origin_rotation");
  if (v.contains("origin_translation"))
    joint.origin_translation =
        to_vec3(v.at("origin_translation"), joint.name + ".origin_translation");
  return joint;
}

}  // namespace

RobotModel load_robot(const std::string& path) {
  toml::Value root = toml::parse_file(path);
  RobotModel model;
  model.name = root.string_or("name", "robot");
  model.base = parse_body(root.at("base"), "base");
  if (root.contains("branch")) {
    for (const toml::Value& bv : root.at("branch").array()) {
      Branch branch;
      branch.type_id = bv.at("type").str();
      branch.label = bv.at("label").str();
      if (bv.contains("joint"))
        for (const toml::Value& jv : bv.at("joint").array())
          branch.joints.push_back(
              parse_joint(jv, branch.label + "_j" + std::to_string(branch.joints.size())));
      if (bv.contains("body"))
        for (const toml::Value& av : bv.at("body").array())
          branch.bodies.push_back(
              parse_body(av, branch.label + "_b" + std::to_string(branch.bodies.size())));
      model.branches.push_back(std::move(branch));
    }
  }
  model.finalize();
  return model;
}

}  // namespace robosym

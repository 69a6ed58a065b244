#include "bracekin/config_io.hpp"

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>

namespace bracekin {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& msg) {
  std::string where;
  if (node.Mark().line >= 0) {
    where = " (line " + std::to_string(node.Mark().line + 1) + ")";
  }
  throw ConfigError(msg + where);
}

YAML::Node require(const YAML::Node& parent, const std::string& key) {
  YAML::Node n = parent[key];
  if (!n) fail(parent, "missing required key '" + key + "'");
  return n;
}

Vec3 parse_vec3(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence() || node.size() != 3) {
    fail(node, what + " must be a 3-element sequence");
  }
  return Vec3(node[0].as<double>(), node[1].as<double>(), node[2].as<double>());
}

Frame parse_frame(const YAML::Node& node) {
  Frame f;
  if (node["translation"]) f.origin = parse_vec3(node["translation"], "translation");
  if (node["rpy"]) {
    const Vec3 rpy = parse_vec3(node["rpy"], "rpy");
    f.rotation = rotation_rpy(rpy[0], rpy[1], rpy[2]);
  }
  if (node["rotation"]) {
    const YAML::Node r = node["rotation"];
    if (!r.IsSequence() || r.size() != 3) fail(r, "rotation must be 3 rows of 3");
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) f.rotation(i, j) = r[i][j].as<double>();
    }
    if (!is_special_orthogonal(f.rotation)) {
      fail(r, "rotation matrix is not special orthogonal");
    }
  }
  return f;
}

JointDescription parse_joint(const YAML::Node& node) {
  JointDescription j;
  const std::string kind = require(node, "kind").as<std::string>();
  if (kind == "revolute") {
    j.kind = JointKind::kRevolute;
  } else if (kind == "prismatic") {
    j.kind = JointKind::kPrismatic;
  } else {
    fail(node["kind"], "joint kind must be 'revolute' or 'prismatic', got '" + kind + "'");
  }
  j.axis = parse_vec3(require(node, "axis"), "axis");
  if (std::abs(j.axis.norm() - 1.0) > 1e-10) fail(node["axis"], "axis must be unit length");
  if (node["offset"]) j.frame_offset = parse_frame(node["offset"]);
  j.stiffness = require(node, "stiffness").as<double>();
  if (!(j.stiffness > 0)) fail(node["stiffness"], "stiffness must be positive");
  return j;
}

SerialChain parse_chain(const YAML::Node& node, const std::string& name) {
  SerialChain chain;
  if (node["base"]) chain.base = parse_frame(node["base"]);
  const YAML::Node joints = require(node, "joints");
  if (!joints.IsSequence() || joints.size() == 0) {
    fail(joints, name + ".joints must be a non-empty sequence");
  }
  for (const auto& jn : joints) chain.joints.push_back(parse_joint(jn));
  return chain;
}

BracedRobot parse_robot(const YAML::Node& root) {
  BracedRobot robot;
  robot.chain1 = parse_chain(require(root, "chain1"), "chain1");
  robot.chain2 = parse_chain(require(root, "chain2"), "chain2");
  try {
    robot.validate();
  } catch (const std::exception& e) {
    fail(root, e.what());
  }
  return robot;
}

ConstraintSpec parse_constraint(const YAML::Node& node) {
  ConstraintSpec spec;
  spec.tangent_frame = parse_frame(node);
  if (node["kind"]) {
    const std::string kind = node["kind"].as<std::string>();
    if (kind != "frictionless-point") {
      fail(node["kind"], "unsupported contact kind '" + kind + "'");
    }
  }
  spec.r_max = require(node, "r_max").as<double>();
  try {
    spec.validate();
  } catch (const std::exception& e) {
    fail(node, e.what());
  }
  return spec;
}

TaskPath parse_path(const YAML::Node& node) {
  TaskPath path;
  if (node["kind"]) {
    const std::string kind = node["kind"].as<std::string>();
    if (kind != "circle") fail(node["kind"], "unsupported path kind '" + kind + "'");
  }
  path.center = parse_vec3(require(node, "center"), "path.center");
  path.normal = parse_vec3(require(node, "normal"), "path.normal").normalized();
  path.radius = require(node, "radius").as<double>();
  if (node["start_direction"]) {
    path.start_direction = parse_vec3(node["start_direction"], "path.start_direction");
  }
  if (node["orientation_mode"]) {
    const std::string m = node["orientation_mode"].as<std::string>();
    if (m == "fixed") {
      path.orientation_mode = OrientationMode::kFixed;
    } else if (m == "tracking") {
      path.orientation_mode = OrientationMode::kTracking;
    } else {
      fail(node["orientation_mode"], "orientation_mode must be 'fixed' or 'tracking'");
    }
  }
  path.duration = require(node, "duration").as<double>();
  path.dt = require(node, "dt").as<double>();
  try {
    path.validate();
  } catch (const std::exception& e) {
    fail(node, e.what());
  }
  return path;
}

ResolutionConfig parse_resolution(const YAML::Node& node) {
  ResolutionConfig rc;
  if (node["strategy"]) rc.strategy = strategy_from_name(node["strategy"].as<std::string>());
  if (node["alpha"]) rc.alpha = node["alpha"].as<double>();
  if (node["weights"]) {
    const YAML::Node w = node["weights"];
    if (!w.IsSequence() || w.size() != 4) fail(w, "weights must have 4 entries");
    for (int i = 0; i < 4; ++i) rc.weights[i] = w[i].as<double>();
  }
  if (node["fd_step"]) rc.fd_step = node["fd_step"].as<double>();
  if (node["sw2_variant"]) {
    rc.sw2_variant = variant_from_name(node["sw2_variant"].as<std::string>());
  }
  if (node["characteristic_length"]) {
    rc.characteristic_length = node["characteristic_length"].as<double>();
  }
  try {
    rc.validate();
  } catch (const std::exception& e) {
    fail(node, e.what());
  }
  return rc;
}

VecX parse_vector(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence()) fail(node, what + " must be a sequence");
  VecX v(node.size());
  for (size_t i = 0; i < node.size(); ++i) v[i] = node[i].as<double>();
  return v;
}

ScenarioConfig parse_scenario(const YAML::Node& root, const std::string& base_dir) {
  ScenarioConfig sc;
  const YAML::Node robot = require(root, "robot");
  if (robot.IsScalar()) {
    std::filesystem::path p(robot.as<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    sc.robot = load_robot(p.string());
  } else {
    sc.robot = parse_robot(robot);
  }
  sc.constraint = parse_constraint(require(root, "constraint"));
  sc.path = parse_path(require(root, "path"));
  if (root["resolution"]) sc.resolution = parse_resolution(root["resolution"]);

  const YAML::Node simnode = require(root, "simulation");
  sc.simulation.initial.q1 = parse_vector(require(simnode, "initial_q1"), "initial_q1");
  sc.simulation.initial.q2 = parse_vector(require(simnode, "initial_q2"), "initial_q2");
  if (simnode["tracking_error_bound"]) {
    sc.simulation.tracking_error_bound = simnode["tracking_error_bound"].as<double>();
  }
  if (sc.simulation.initial.q1.size() != sc.robot.chain1.dof() ||
      sc.simulation.initial.q2.size() != sc.robot.chain2.dof()) {
    fail(simnode, "initial configuration length does not match the robot");
  }
  return sc;
}

YAML::Node load_yaml(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file: " + file);
  try {
    return YAML::Load(in);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(std::string("YAML parse error in ") + file + ": " + e.what());
  }
}

}  // namespace

BracedRobot load_robot(const std::string& file) {
  return parse_robot(load_yaml(file));
}

ScenarioConfig load_scenario(const std::string& file) {
  const std::string dir = std::filesystem::path(file).parent_path().string();
  return parse_scenario(load_yaml(file), dir);
}

ScenarioConfig load_scenario_with_override(const std::string& file,
                                           const std::string& key_path,
                                           const std::string& value) {
  YAML::Node root = load_yaml(file);
  // Walk the dotted path; yaml-cpp nodes share state, so mutating the leaf
  // mutates the tree.
  YAML::Node node = root;
  std::string rest = key_path;
  while (true) {
    const size_t dot = rest.find('.');
    const std::string key = rest.substr(0, dot);
    if (dot == std::string::npos) {
      node[key] = value;
      break;
    }
    YAML::Node child = node[key];
    if (!child) throw ConfigError("override path not found: " + key_path);
    node.reset(child);
    rest = rest.substr(dot + 1);
  }
  const std::string dir = std::filesystem::path(file).parent_path().string();
  return parse_scenario(root, dir);
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kFreeSpaceMinNorm: return "free-space-min-norm";
    case Strategy::kBracedMinNorm: return "braced-min-norm";
    case Strategy::kBracedGradientProjection: return "braced-gradient-projection";
  }
  return "unknown";
}

Strategy strategy_from_name(const std::string& name) {
  if (name == "free-space-min-norm") return Strategy::kFreeSpaceMinNorm;
  if (name == "braced-min-norm") return Strategy::kBracedMinNorm;
  if (name == "braced-gradient-projection") return Strategy::kBracedGradientProjection;
  throw ConfigError("unknown strategy '" + name + "'");
}

std::string variant_name(WrenchTransformVariant v) {
  return v == WrenchTransformVariant::kPaperVerbatim ? "paper-verbatim"
                                                     : "duality-consistent";
}

WrenchTransformVariant variant_from_name(const std::string& name) {
  if (name == "paper-verbatim") return WrenchTransformVariant::kPaperVerbatim;
  if (name == "duality-consistent") return WrenchTransformVariant::kDualityConsistent;
  throw ConfigError("unknown sw2 variant '" + name + "'");
}

}  // namespace bracekin

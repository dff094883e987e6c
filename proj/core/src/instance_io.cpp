#include "dualnup/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dualnup {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json matrix_to_flat(const Mat& m) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  return arr;
}

Mat matrix_from_flat(const ordered_json& arr, int rows, int cols, const char* what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != rows * cols)
    throw std::runtime_error(std::string("instance json: bad size for ") + what);
  Mat m(rows, cols);
  int idx = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = arr.at(idx++).get<double>();
  return m;
}

ordered_json vector_to_json(const Vec& v) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vec vector_from_json(const ordered_json& arr, int size, const char* what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != size)
    throw std::runtime_error(std::string("instance json: bad size for ") + what);
  Vec v(size);
  for (int i = 0; i < size; ++i) v(i) = arr.at(i).get<double>();
  return v;
}

ordered_json beta_to_json(double beta) {
  if (beta == kInf) return "inf";
  return beta;
}

double beta_from_json(const ordered_json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw std::runtime_error("instance json: beta must be a number or \"inf\"");
  }
  return j.get<double>();
}

bool uses_lower(LossKind kind) {
  return kind == LossKind::L1 || kind == LossKind::HingeBelow || kind == LossKind::Vapnik ||
         kind == LossKind::HalfSpaceGeq || kind == LossKind::Interval;
}

bool uses_upper(LossKind kind) {
  return kind == LossKind::HingeAbove || kind == LossKind::Vapnik ||
         kind == LossKind::HalfSpaceLeq || kind == LossKind::Interval;
}

}  // namespace

std::string loss_kind_from_string_help() {
  return "l1, hinge_below, hinge_above, vapnik, half_space_geq, half_space_leq, interval";
}

LossKind loss_kind_from_string(const std::string& name) {
  if (name == "l1") return LossKind::L1;
  if (name == "hinge_below") return LossKind::HingeBelow;
  if (name == "hinge_above") return LossKind::HingeAbove;
  if (name == "vapnik") return LossKind::Vapnik;
  if (name == "half_space_geq") return LossKind::HalfSpaceGeq;
  if (name == "half_space_leq") return LossKind::HalfSpaceLeq;
  if (name == "interval") return LossKind::Interval;
  throw std::runtime_error("instance json: unknown loss kind \"" + name + "\" (expected one of " +
                           loss_kind_from_string_help() + ")");
}

std::string instance_to_json(const ProblemInstance& instance) {
  instance.validate();
  if (!instance.priors.V_x1.isDiagonal(0.0) || !instance.priors.V_u.isDiagonal(0.0))
    throw std::runtime_error("instance json: prior covariances must be diagonal in file form");

  const auto& model = instance.model;
  ordered_json j;
  j["dims"] = {{"M", model.M()}, {"L", model.L()}, {"K", model.K()}, {"N", model.N}};
  j["A"] = matrix_to_flat(model.A);
  j["B"] = matrix_to_flat(model.B);
  j["C"] = matrix_to_flat(model.C);

  ordered_json priors;
  priors["x1_mean"] = vector_to_json(instance.priors.m_x1);
  priors["x1_cov_diag"] = vector_to_json(instance.priors.V_x1.diagonal());
  priors["u_mean"] = vector_to_json(instance.priors.m_u);
  priors["u_cov_diag"] = vector_to_json(instance.priors.V_u.diagonal());
  j["priors"] = priors;

  ordered_json constraints = ordered_json::array();
  for (const auto& c : instance.constraints) {
    ordered_json jc;
    jc["n"] = c.n;
    jc["k"] = c.k;
    jc["on"] = c.on == ConstraintTarget::Output ? "y" : "u";
    jc["kind"] = to_string(c.loss.kind);
    if (uses_lower(c.loss.kind)) jc["a"] = c.loss.a;
    if (uses_upper(c.loss.kind)) jc["b"] = c.loss.b;
    jc["beta"] = beta_to_json(c.loss.beta);
    constraints.push_back(jc);
  }
  j["constraints"] = constraints;

  j["meta"] = {{"seed", instance.meta.seed},
               {"generator_version", instance.meta.generator_version}};
  return j.dump();
}

ProblemInstance instance_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("instance json: parse error: ") + e.what());
  }
  for (const char* key : {"dims", "A", "B", "C", "priors", "constraints", "meta"})
    if (!j.contains(key))
      throw std::runtime_error(std::string("instance json: missing key \"") + key + "\"");

  const auto& dims = j["dims"];
  const int M = dims.at("M").get<int>();
  const int L = dims.at("L").get<int>();
  const int K = dims.at("K").get<int>();
  const int N = dims.at("N").get<int>();
  if (M < 1 || L < 1 || K < 1 || N < 1)
    throw std::runtime_error("instance json: dims must be >= 1");

  ProblemInstance instance;
  instance.model.A = matrix_from_flat(j["A"], M, M, "A");
  instance.model.B = matrix_from_flat(j["B"], M, L, "B");
  instance.model.C = matrix_from_flat(j["C"], K, M, "C");
  instance.model.N = N;

  const auto& priors = j["priors"];
  instance.priors.m_x1 = vector_from_json(priors.at("x1_mean"), M, "x1_mean");
  instance.priors.V_x1 = vector_from_json(priors.at("x1_cov_diag"), M, "x1_cov_diag").asDiagonal();
  instance.priors.m_u = vector_from_json(priors.at("u_mean"), L, "u_mean");
  instance.priors.V_u = vector_from_json(priors.at("u_cov_diag"), L, "u_cov_diag").asDiagonal();

  for (const auto& jc : j["constraints"]) {
    Constraint c;
    c.n = jc.at("n").get<int>();
    c.k = jc.at("k").get<int>();
    const std::string on = jc.value("on", "y");
    if (on == "y")
      c.on = ConstraintTarget::Output;
    else if (on == "u")
      c.on = ConstraintTarget::Input;
    else
      throw std::runtime_error("instance json: constraint \"on\" must be \"y\" or \"u\"");
    c.loss.kind = loss_kind_from_string(jc.at("kind").get<std::string>());
    c.loss.a = jc.value("a", 0.0);
    c.loss.b = jc.value("b", 0.0);
    c.loss.beta = jc.contains("beta") ? beta_from_json(jc["beta"]) : kInf;
    instance.constraints.push_back(c);
  }

  instance.meta.seed = j["meta"].value("seed", std::uint64_t{0});
  instance.meta.generator_version = j["meta"].value("generator_version", std::string{});

  try {
    instance.validate();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("instance json: ") + e.what());
  }
  return instance;
}

void save_instance(const ProblemInstance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << instance_to_json(instance);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

}  // namespace dualnup

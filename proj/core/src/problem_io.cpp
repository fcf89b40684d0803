#include "banmin/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "banmin/errors.hpp"

namespace banmin {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParameterError("schema error at " + path + ": " + what);
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

SparseSeq parse_row(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of [index, value] pairs");
  std::vector<SparseSeq::Entry> entries;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& e = j[k];
    std::string epath = path + "[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 2) schema_error(epath, "expected an [index, value] pair");
    if (!e[0].is_number_integer() || e[0].get<long long>() < 0)
      schema_error(epath + "[0]", "expected a nonnegative integer index");
    if (!e[1].is_number()) schema_error(epath + "[1]", "expected a numeric value");
    entries.emplace_back(static_cast<Index>(e[0].get<long long>()), e[1].get<double>());
  }
  return SparseSeq::from_pairs(std::move(entries));
}

LossSpec parse_loss(const json& j, const Coefs& y) {
  if (!j.is_object()) schema_error("loss", "expected an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    schema_error("loss.kind", "expected a string");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "square") return LossSpec::square(y);
  if (kind == "hinge") return LossSpec::hinge(y);
  if (kind == "eps_insensitive") {
    if (!j.contains("eps")) schema_error("loss.eps", "required for eps_insensitive");
    return LossSpec::eps_insensitive(y, require_number(j["eps"], "loss.eps"));
  }
  schema_error("loss.kind", "unknown loss '" + kind + "'");
}

Regularizer parse_regularizer(const json& j) {
  if (!j.is_object()) schema_error("regularizer", "expected an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    schema_error("regularizer.kind", "expected a string");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "identity") return Regularizer::identity();
  if (kind == "square") return Regularizer::square();
  if (kind == "power") {
    if (!j.contains("r")) schema_error("regularizer.r", "required for power");
    return Regularizer::power(require_number(j["r"], "regularizer.r"));
  }
  schema_error("regularizer.kind", "unknown regularizer '" + kind + "'");
}

}  // namespace

RegProblem ProblemInstance::make_reg_problem() const {
  if (!is_regularization())
    throw ParameterError("make_reg_problem: instance has no loss/lambda");
  return RegProblem(make_operator(), space, *loss, regularizer, *lambda);
}

ProblemInstance parse_problem(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) schema_error("$", "expected a JSON object");

  ProblemInstance inst;

  if (!j.contains("space") || !j["space"].is_string())
    schema_error("space", "expected one of \"hilbert\", \"lp\", \"l1\"");
  std::string space = j["space"].get<std::string>();
  if (space == "hilbert") {
    inst.space = SpaceTag::hilbert();
  } else if (space == "l1") {
    inst.space = SpaceTag::l1();
  } else if (space == "lp") {
    if (!j.contains("p")) schema_error("p", "required when space is \"lp\"");
    inst.space = SpaceTag::lp(require_number(j["p"], "p"));
  } else {
    schema_error("space", "unknown space '" + space + "'");
  }

  if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].empty())
    schema_error("rows", "expected a nonempty array of rows");
  for (std::size_t i = 0; i < j["rows"].size(); ++i)
    inst.rows.push_back(parse_row(j["rows"][i], "rows[" + std::to_string(i) + "]"));

  if (!j.contains("y") || !j["y"].is_array()) schema_error("y", "expected an array of numbers");
  inst.y.resize(static_cast<Eigen::Index>(j["y"].size()));
  for (std::size_t k = 0; k < j["y"].size(); ++k)
    inst.y(static_cast<Eigen::Index>(k)) =
        require_number(j["y"][k], "y[" + std::to_string(k) + "]");

  if (inst.y.size() != static_cast<Eigen::Index>(inst.rows.size()))
    throw ParameterError("dimension mismatch: y has length " + std::to_string(inst.y.size()) +
                         " but rows has " + std::to_string(inst.rows.size()) + " entries");

  if (j.contains("loss") != j.contains("lambda"))
    schema_error("$", "loss and lambda must be given together");
  if (j.contains("loss")) {
    inst.loss = parse_loss(j["loss"], inst.y);
    double lambda = require_number(j["lambda"], "lambda");
    if (!(lambda > 0.0)) schema_error("lambda", "must be positive");
    inst.lambda = lambda;
  }

  inst.regularizer =
      inst.space.is_l1() ? Regularizer::identity() : Regularizer::square();
  if (j.contains("regularizer")) inst.regularizer = parse_regularizer(j["regularizer"]);

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (!s.is_object()) schema_error("solver", "expected an object");
    if (s.contains("tol")) inst.iteration.tol = require_number(s["tol"], "solver.tol");
    if (s.contains("max_iter")) {
      if (!s["max_iter"].is_number_integer() || s["max_iter"].get<long long>() <= 0)
        schema_error("solver.max_iter", "expected a positive integer");
      inst.iteration.max_iter = s["max_iter"].get<long long>();
    }
    if (s.contains("step_primal"))
      inst.iteration.step_primal = require_number(s["step_primal"], "solver.step_primal");
    if (s.contains("step_dual"))
      inst.iteration.step_dual = require_number(s["step_dual"], "solver.step_dual");
    if (s.contains("relaxation"))
      inst.iteration.relaxation = require_number(s["relaxation"], "solver.relaxation");
  }
  return inst;
}

ProblemInstance load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

JsonValue sparse_seq_to_json(const SparseSeq& x) {
  JsonValue arr = JsonValue::array();
  for (const auto& [j, v] : x.entries()) {
    JsonValue pair = JsonValue::array();
    pair.push_back(static_cast<long long>(j));
    pair.push_back(v);
    arr.push_back(std::move(pair));
  }
  return arr;
}

std::string problem_to_json(const ProblemInstance& instance) {
  JsonValue root = JsonValue::object();
  switch (instance.space.kind) {
    case SpaceTag::Kind::Hilbert: root.set("space", "hilbert"); break;
    case SpaceTag::Kind::Lp:
      root.set("space", "lp");
      root.set("p", instance.space.p);
      break;
    case SpaceTag::Kind::L1: root.set("space", "l1"); break;
  }
  JsonValue rows = JsonValue::array();
  for (const SparseSeq& r : instance.rows) rows.push_back(sparse_seq_to_json(r));
  root.set("rows", std::move(rows));
  JsonValue y = JsonValue::array();
  for (Eigen::Index k = 0; k < instance.y.size(); ++k) y.push_back(instance.y(k));
  root.set("y", std::move(y));
  if (instance.is_regularization()) {
    JsonValue loss = JsonValue::object();
    switch (instance.loss->kind) {
      case LossSpec::Kind::Square: loss.set("kind", "square"); break;
      case LossSpec::Kind::Hinge: loss.set("kind", "hinge"); break;
      case LossSpec::Kind::EpsInsensitive:
        loss.set("kind", "eps_insensitive");
        loss.set("eps", instance.loss->eps);
        break;
    }
    root.set("loss", std::move(loss));
    root.set("lambda", *instance.lambda);
    JsonValue reg = JsonValue::object();
    switch (instance.regularizer.kind) {
      case Regularizer::Kind::Identity: reg.set("kind", "identity"); break;
      case Regularizer::Kind::Square: reg.set("kind", "square"); break;
      case Regularizer::Kind::Power:
        reg.set("kind", "power");
        reg.set("r", instance.regularizer.r);
        break;
    }
    root.set("regularizer", std::move(reg));
  }
  return root.dump();
}

JsonValue report_to_json(const SolveReport& report) {
  JsonValue root = JsonValue::object();
  root.set("solution", sparse_seq_to_json(report.solution));
  JsonValue coefs = JsonValue::array();
  for (Eigen::Index k = 0; k < report.coefs.size(); ++k) coefs.push_back(report.coefs(k));
  root.set("coefs", std::move(coefs));
  root.set("objective", report.objective);
  root.set("infimum_dual", report.infimum_dual);
  root.set("interp_residual", report.interp_residual);
  if (report.fixed_point_residual)
    root.set("fixed_point_residual", *report.fixed_point_residual);
  else
    root.set("fixed_point_residual", JsonValue());
  JsonValue support = JsonValue::array();
  for (Index j : report.support) support.push_back(static_cast<long long>(j));
  root.set("support", std::move(support));
  root.set("iterations", static_cast<long long>(report.iterations));
  root.set("converged", report.converged);
  return root;
}

}  // namespace banmin

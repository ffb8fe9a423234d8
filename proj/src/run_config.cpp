#include "stefan/run_config.hpp"

#include <set>
#include <string>

#include <json.hpp>

#include "stefan/errors.hpp"

namespace stefan::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (known.count(it.key()) == 0)
      throw ValidationError("unknown key \"" + it.key() + "\" in " + where);
}

double need_number(const json& obj, const std::string& key,
                   const std::string& where) {
  if (!obj.contains(key))
    throw ValidationError("missing \"" + key + "\" in " + where);
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ValidationError("\"" + key + "\" in " + where + " must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array())
    throw ValidationError(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number())
      throw ValidationError(where + " must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void require_increasing(const std::vector<double>& v, const std::string& where) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1]))
      throw ValidationError(where + " must be strictly increasing");
}

PhaseProps parse_phase(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  reject_unknown(obj, {"k", "d"}, where);
  return {need_number(obj, "k", where), need_number(obj, "d", where)};
}

StefanProblem parse_problem(const json& obj) {
  if (!obj.is_object()) throw ValidationError("\"problem\" must be an object");
  reject_unknown(obj,
                 {"alpha", "gamma", "t_i", "t_inf", "h0", "liquid", "solid"},
                 "problem");
  StefanProblem p{};
  p.alpha = need_number(obj, "alpha", "problem");
  p.gamma = need_number(obj, "gamma", "problem");
  p.t_i = need_number(obj, "t_i", "problem");
  p.t_inf = need_number(obj, "t_inf", "problem");
  p.h0 = need_number(obj, "h0", "problem");
  if (!obj.contains("liquid") || !obj.contains("solid"))
    throw ValidationError("problem requires \"liquid\" and \"solid\" phases");
  p.liquid = parse_phase(obj.at("liquid"), "problem.liquid");
  p.solid = parse_phase(obj.at("solid"), "problem.solid");
  p.validate();
  return p;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& command) {
  if (command != "solve" && command != "verify" && command != "sweep" &&
      command != "limit")
    throw ValidationError("unknown command \"" + command + "\"");

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config root must be an object");
  reject_unknown(doc,
                 {"command", "problem", "sampling", "sweep", "limit", "output",
                  "verify"},
                 "config");

  RunConfig cfg;
  cfg.command = command;
  if (doc.contains("command")) {
    if (!doc.at("command").is_string() ||
        doc.at("command").get<std::string>() != command)
      throw ValidationError("config \"command\" disagrees with the CLI command");
  }

  if (!doc.contains("problem"))
    throw ValidationError("missing \"problem\" in config");
  cfg.problem = parse_problem(doc.at("problem"));
  cfg.integer_alpha = cfg.problem.integer_alpha();

  if (doc.contains("sampling")) {
    const json& s = doc.at("sampling");
    if (!s.is_object()) throw ValidationError("\"sampling\" must be an object");
    reject_unknown(s, {"x", "x_count", "t"}, "sampling");
    if (s.contains("x")) {
      cfg.x_grid = number_list(s.at("x"), "sampling.x");
      require_increasing(cfg.x_grid, "sampling.x");
      if (cfg.x_grid.empty() || cfg.x_grid.front() < 0.0)
        throw ValidationError("sampling.x must be nonempty and nonnegative");
    }
    if (s.contains("x_count")) {
      double c = need_number(s, "x_count", "sampling");
      if (c < 2 || c != static_cast<int>(c))
        throw ValidationError("sampling.x_count must be an integer >= 2");
      cfg.x_count = static_cast<int>(c);
    }
    if (s.contains("t")) {
      cfg.t_grid = number_list(s.at("t"), "sampling.t");
      require_increasing(cfg.t_grid, "sampling.t");
      if (cfg.t_grid.empty() || !(cfg.t_grid.front() > 0.0))
        throw ValidationError("sampling.t must be nonempty and positive");
    }
  }

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (!o.is_object()) throw ValidationError("\"output\" must be an object");
    reject_unknown(o, {"path", "format"}, "output");
    if (o.contains("path")) {
      if (!o.at("path").is_string())
        throw ValidationError("output.path must be a string");
      cfg.output_path = o.at("path").get<std::string>();
    }
    if (o.contains("format")) {
      if (!o.at("format").is_string())
        throw ValidationError("output.format must be a string");
      cfg.format = o.at("format").get<std::string>();
    }
  }
  if (cfg.format != "csv" && cfg.format != "json")
    throw ValidationError("output.format must be \"csv\" or \"json\"");

  if (command == "sweep") {
    if (!doc.contains("sweep"))
      throw ValidationError("sweep command requires a \"sweep\" section");
  }
  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    if (!s.is_object()) throw ValidationError("\"sweep\" must be an object");
    reject_unknown(s, {"parameter", "values"}, "sweep");
    if (!s.contains("parameter") || !s.at("parameter").is_string())
      throw ValidationError("sweep.parameter must be a string");
    cfg.sweep_parameter = s.at("parameter").get<std::string>();
    static const std::set<std::string> kParams = {
        "alpha", "gamma", "t_i", "t_inf", "h0", "k_l", "d_l", "k_s", "d_s"};
    if (kParams.count(cfg.sweep_parameter) == 0)
      throw ValidationError("sweep.parameter \"" + cfg.sweep_parameter +
                            "\" is not a problem parameter");
    if (!s.contains("values"))
      throw ValidationError("sweep.values is required");
    cfg.sweep_values = number_list(s.at("values"), "sweep.values");
    if (cfg.sweep_values.empty())
      throw ValidationError("sweep.values must be nonempty");
  }

  if (doc.contains("limit")) {
    const json& l = doc.at("limit");
    if (!l.is_object()) throw ValidationError("\"limit\" must be an object");
    reject_unknown(l, {"h0", "h0_factors"}, "limit");
    if (l.contains("h0")) {
      cfg.limit_h0 = number_list(l.at("h0"), "limit.h0");
      require_increasing(cfg.limit_h0, "limit.h0");
      if (cfg.limit_h0.empty())
        throw ValidationError("limit.h0 must be nonempty");
    }
    if (l.contains("h0_factors")) {
      cfg.limit_factors = number_list(l.at("h0_factors"), "limit.h0_factors");
      require_increasing(cfg.limit_factors, "limit.h0_factors");
      if (cfg.limit_factors.empty())
        throw ValidationError("limit.h0_factors must be nonempty");
    }
  }

  if (doc.contains("verify")) {
    const json& v = doc.at("verify");
    if (!v.is_object()) throw ValidationError("\"verify\" must be an object");
    reject_unknown(v, {"nu_perturbation", "oracle_nx"}, "verify");
    if (v.contains("nu_perturbation"))
      cfg.nu_perturbation = need_number(v, "nu_perturbation", "verify");
    if (v.contains("oracle_nx")) {
      double n = need_number(v, "oracle_nx", "verify");
      if (n < 200 || n != static_cast<int>(n))
        throw ValidationError("verify.oracle_nx must be an integer >= 200");
      cfg.oracle_nx = static_cast<int>(n);
    }
  }

  return cfg;
}

}  // namespace stefan::cli

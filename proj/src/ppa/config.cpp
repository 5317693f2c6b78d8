#include "ppa/config.hpp"

#include "ppa/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace ppa {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where, "must be an object");
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!names.count(key)) {
      throw ConfigError(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

const json& require(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) {
    throw ConfigError(where.empty() ? key : where + "." + key, "missing required field");
  }
  return obj[key];
}


Rational read_rational(const json& v, const std::string& field) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_unsigned()) return Rational(v.get<std::uint64_t>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field, "expected a rational string such as \"9/4\"");
}

Rational read_positive_rational(const json& v, const std::string& field) {
  Rational q = read_rational(v, field);
  if (q <= 0) throw ConfigError(field, "must be positive");
  return q;
}

double read_double(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(field, "must be finite");
  return d;
}

Point read_point(const json& v, const std::string& field, std::size_t dimension) {
  if (!v.is_array()) throw ConfigError(field, "expected an array of numbers");
  std::vector<double> coords;
  for (std::size_t i = 0; i < v.size(); ++i) {
    coords.push_back(read_double(v[i], field + "[" + std::to_string(i) + "]"));
  }
  if (coords.size() != dimension) {
    throw ConfigError(field, "expected " + std::to_string(dimension) + " coordinates, got " +
                                 std::to_string(coords.size()));
  }
  return Point(std::move(coords));
}

json point_json(const Point& p) {
  return json(std::vector<double>(p.coords().begin(), p.coords().end()));
}

RateFn read_ratefn(const json& v, const std::string& field) {
  try {
    return RateFn::from_json(v);
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

Objective read_objective(const json& obj, std::size_t dim) {
  const std::string where = "objective";
  reject_unknown(obj, where, {"kind", "parameters", "known_min_value", "known_minimizer"});
  const json& kind_v = require(obj, where, "kind");
  if (!kind_v.is_string()) throw ConfigError("objective.kind", "expected a string");
  const auto kind = kind_v.get<std::string>();
  const double min_value =
      read_double(require(obj, where, "known_min_value"), "objective.known_min_value");
  std::optional<Point> minimizer;
  if (obj.contains("known_minimizer")) {
    minimizer = read_point(obj["known_minimizer"], "objective.known_minimizer", dim);
  }
  const json params = obj.contains("parameters") ? obj["parameters"] : json::object();
  const std::string pw = "objective.parameters";

  if (std::abs(min_value) > 1e-12) {
    throw ConfigError("objective.known_min_value",
                      "catalog objectives have minimum value 0");
  }

  auto build = [&](ObjectiveSpec spec) {
    try {
      return Objective(dim, std::move(spec), min_value, minimizer);
    } catch (const Error& e) {
      throw ConfigError(minimizer ? "objective.known_minimizer" : pw, e.what());
    }
  };

  if (kind == "quadratic") {
    reject_unknown(params, pw, {"anchor", "weight"});
    return build(objectives::Quadratic{
        read_point(require(params, pw, "anchor"), pw + ".anchor", dim),
        read_double(require(params, pw, "weight"), pw + ".weight")});
  }
  if (kind == "l1_norm") {
    reject_unknown(params, pw, {"scale"});
    return build(objectives::L1Norm{read_double(require(params, pw, "scale"), pw + ".scale")});
  }
  if (kind == "ball_indicator") {
    reject_unknown(params, pw, {"center", "radius"});
    return build(objectives::BallIndicator{
        read_point(require(params, pw, "center"), pw + ".center", dim),
        read_double(require(params, pw, "radius"), pw + ".radius")});
  }
  if (kind == "box_indicator") {
    reject_unknown(params, pw, {"lower", "upper"});
    return build(objectives::BoxIndicator{
        read_point(require(params, pw, "lower"), pw + ".lower", dim),
        read_point(require(params, pw, "upper"), pw + ".upper", dim)});
  }
  if (kind == "smooth_custom") {
    const json& family_v = require(params, pw, "family");
    if (!family_v.is_string()) throw ConfigError(pw + ".family", "expected a string");
    const auto family = family_v.get<std::string>();
    Objective prototype = [&] {
      try {
        if (family == "huber") {
          reject_unknown(params, pw, {"family", "anchor", "delta"});
          return Objective::huber(read_point(require(params, pw, "anchor"), pw + ".anchor", dim),
                                  read_double(require(params, pw, "delta"), pw + ".delta"));
        }
        if (family == "log_cosh") {
          reject_unknown(params, pw, {"family", "anchor"});
          return Objective::log_cosh(
              read_point(require(params, pw, "anchor"), pw + ".anchor", dim));
        }
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        throw ConfigError(pw, e.what());
      }
      throw ConfigError(pw + ".family", "unknown smooth family '" + family + "'");
    }();
    return build(prototype.spec());
  }
  throw ConfigError("objective.kind", "unknown objective kind '" + kind + "'");
}

json objective_json(const Objective& f) {
  json params;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, objectives::Quadratic>) {
          params = {{"anchor", point_json(s.anchor)}, {"weight", s.weight}};
        } else if constexpr (std::is_same_v<T, objectives::L1Norm>) {
          params = {{"scale", s.scale}};
        } else if constexpr (std::is_same_v<T, objectives::BallIndicator>) {
          params = {{"center", point_json(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, objectives::BoxIndicator>) {
          params = {{"lower", point_json(s.lower)}, {"upper", point_json(s.upper)}};
        } else {
          params = s.parameters;
          params["family"] = s.family;
        }
      },
      f.spec());
  json j{{"kind", f.kind_name()},
         {"parameters", params},
         {"known_min_value", f.known_min_value()}};
  if (f.known_minimizer()) j["known_minimizer"] = point_json(*f.known_minimizer());
  return j;
}

WeightSchedule read_schedule(const json& obj) {
  const std::string where = "schedule";
  reject_unknown(obj, where, {"kind", "c", "theta", "bound"});
  const json& kind_v = require(obj, where, "kind");
  if (!kind_v.is_string()) throw ConfigError("schedule.kind", "expected a string");
  WeightKind kind;
  try {
    kind = weight_kind_from_string(kind_v.get<std::string>());
  } catch (const Error& e) {
    throw ConfigError("schedule.kind", e.what());
  }
  const Rational c = read_positive_rational(require(obj, where, "c"), "schedule.c");
  if (!obj.contains("theta") && !obj.contains("bound")) return WeightSchedule(kind, c);

  RateFn theta = obj.contains("theta") ? read_ratefn(obj["theta"], "schedule.theta")
                                       : default_theta(kind, c);
  RateFn bound = obj.contains("bound") ? read_ratefn(obj["bound"], "schedule.bound")
                                       : default_weight_bound(kind, c);
  WeightSchedule ws(kind, c, std::move(theta), std::move(bound));
  if (obj.contains("theta")) {
    const ScheduleAudit audit = audit_divergence_rate(ws);
    if (!audit.ok()) {
      throw ConfigError("schedule.theta", "rate of divergence not certified at P = " +
                                              std::to_string(audit.at) + ": " + audit.detail);
    }
  }
  if (obj.contains("bound")) {
    const ScheduleAudit audit = audit_weight_bound(ws);
    if (!audit.ok()) throw ConfigError("schedule.bound", audit.detail);
  }
  return ws;
}

std::string csv_double(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json json_double(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

Scenario scenario_from_json(const json& doc, const std::string& fallback_id) {
  reject_unknown(doc, "", {"id", "space", "objective", "schedule", "start", "b", "seed", "alpha"});

  std::string id = fallback_id;
  if (doc.contains("id")) {
    if (!doc["id"].is_string()) throw ConfigError("id", "expected a string");
    id = doc["id"].get<std::string>();
  }

  const json& space_v = require(doc, "", "space");
  reject_unknown(space_v, "space", {"kind", "dimension"});
  const json& skind = require(space_v, "space", "kind");
  if (!skind.is_string() || skind.get<std::string>() != "euclidean") {
    throw ConfigError("space.kind", "only \"euclidean\" is supported");
  }
  const json& dim_v = require(space_v, "space", "dimension");
  if (!dim_v.is_number_unsigned() || dim_v.get<std::uint64_t>() == 0) {
    throw ConfigError("space.dimension", "expected a positive integer");
  }
  const auto dim = dim_v.get<std::size_t>();

  Objective objective = read_objective(require(doc, "", "objective"), dim);
  WeightSchedule schedule = read_schedule(require(doc, "", "schedule"));
  Point start = read_point(require(doc, "", "start"), "start", dim);
  const Rational b = read_positive_rational(require(doc, "", "b"), "b");

  const json& seed_v = require(doc, "", "seed");
  if (!seed_v.is_number_integer()) throw ConfigError("seed", "expected an integer");
  const auto seed = static_cast<std::uint64_t>(seed_v.get<std::int64_t>());

  std::optional<RateFn> alpha;
  if (doc.contains("alpha")) alpha = read_ratefn(doc["alpha"], "alpha");

  return Scenario(std::move(id), SpaceInstance(dim), std::move(objective),
                  std::move(schedule), std::move(start), b, seed, std::move(alpha));
}

json scenario_to_json(const Scenario& sc) {
  json schedule{{"kind", to_string(sc.schedule.kind())}, {"c", to_string(sc.schedule.c())}};
  if (!sc.schedule.default_theta()) {
    schedule["theta"] = sc.schedule.theta().to_json();
    schedule["bound"] = sc.schedule.bound().to_json();
  }
  json j{{"id", sc.id},
         {"space", {{"kind", "euclidean"}, {"dimension", sc.space.dimension()}}},
         {"objective", objective_json(sc.objective)},
         {"schedule", schedule},
         {"start", point_json(sc.start)},
         {"b", to_string(sc.b)},
         {"seed", sc.seed}};
  if (sc.alpha_override) j["alpha"] = sc.alpha_override->to_json();
  return j;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", path.string() + ": " + e.what());
  }
  try {
    return scenario_from_json(doc, path.stem().string());
  } catch (const ConfigError& e) {
    throw ConfigError(e.field(), path.string() + ": " + e.what());
  }
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) throw IoError("no such file or directory: " + path.string());
  if (!std::filesystem::is_directory(path, ec)) {
    std::vector<Scenario> one;
    one.push_back(load_scenario(path));
    return one;
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Scenario> out;
  for (const auto& f : files) out.push_back(load_scenario(f));
  return out;
}

void write_trajectory(std::ostream& out, const Scenario& sc, const Trajectory& traj,
                      TrajectoryFormat format) {
  const auto& pts = traj.points();
  const auto& values = traj.values();
  const std::size_t dim = sc.space.dimension();
  if (format == TrajectoryFormat::csv) {
    out << "step";
    for (std::size_t i = 0; i < dim; ++i) out << ",x" << i;
    out << ",f,fejer_step,descent,distance_decrease,value_gap\n";
    for (std::size_t n = 0; n < pts.size(); ++n) {
      out << n;
      for (double c : pts[n].coords()) out << ',' << csv_double(c);
      out << ',' << csv_double(values[n].value());
      if (traj.has_monitors() && n < traj.monitors().size()) {
        const auto& m = traj.monitors()[n];
        out << ',' << csv_double(m.fejer_step) << ',' << csv_double(m.descent) << ','
            << csv_double(m.distance_decrease) << ',' << csv_double(m.value_gap);
      } else {
        out << ",,,,";
      }
      out << '\n';
    }
    return;
  }
  json steps = json::array();
  for (std::size_t n = 0; n < pts.size(); ++n) {
    json row{{"step", n}, {"point", point_json(pts[n])}, {"f", json_double(values[n].value())}};
    if (traj.has_monitors() && n < traj.monitors().size()) {
      const auto& m = traj.monitors()[n];
      row["residuals"] = {{"fejer_step", m.fejer_step},
                          {"descent", m.descent},
                          {"distance_decrease", m.distance_decrease},
                          {"value_gap", m.value_gap}};
    } else {
      row["residuals"] = nullptr;
    }
    steps.push_back(std::move(row));
  }
  out << json{{"scenario", sc.id}, {"dimension", dim}, {"steps", steps}}.dump(2) << '\n';
}

json moduli_report(const Scenario& sc, const ModuliRequest& req) {
  const BoundContext ctx = sc.bound_context();
  const CounterexampleFn g = req.g ? *req.g : CounterexampleFn::constant(0);
  const Nat k(req.k);
  json j;
  j["scenario"] = sc.id;
  j["k"] = req.k;
  j["g"] = g.name;
  if (!sc.b_verified()) j["warnings"] = sc.warnings();

  auto attempt = [&](const char* name, auto&& fn) {
    try {
      j[name] = fn();
    } catch (const Error& e) {
      j[name] = {{"refused", e.what()}};
    }
  };
  attempt("delta_liminf", [&] { return delta_liminf(sc.b, k, Nat(req.L)).str(); });
  attempt("beta", [&] { return beta_rate(sc.b, sc.schedule.theta(), k).str(); });
  const auto [df, wf] = closedness_moduli(k);
  j["closedness"] = {df.str(), wf.str()};
  j["fejer"] = fejer_modulus(Nat(req.n), Nat(req.m), Nat(req.r)).str();
  attempt("alpha", [&] { return ctx.alpha(k).str(); });
  attempt("phi", [&] { return approx_point_modulus(ctx, k).str(); });
  RecursionOptions ro;
  ro.force = req.force;
  attempt("psi", [&] { return psi_rate(ctx, k, g.fn, ro).str(); });
  attempt("omega", [&] { return omega_rate(ctx, k, g.fn, ro).str(); });
  return j;
}

json cover_table(std::size_t dimension, const Rational& b, std::uint64_t k_max) {
  const RateFn alpha = ball_total_boundedness_modulus(dimension, b);
  json rows = json::array();
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    rows.push_back({{"k", k}, {"alpha", alpha(Nat(k)).str()}});
  }
  return {{"dimension", dimension},
          {"b", to_string(b)},
          {"sigma", to_string(sqrt_upper_bound(dimension))},
          {"table", rows}};
}

}  // namespace ppa

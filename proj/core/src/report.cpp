#include "schottky/report.hpp"

#include <cmath>

#include "schottky/errors.hpp"

namespace schottky::report {

namespace {

void write(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        write(item, indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(v[i], indent + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_g17(d) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

std::string log_string(const Real& x) { return x.str(30); }

}  // namespace

std::string dump(const Json& value) {
  std::string out;
  write(value, 0, out);
  out += "\n";
  return out;
}

Json to_json(const HugeInt& value) {
  Json j;
  j["exact"] = value.is_materialized();
  j["digits"] = value.digits().str();
  if (value.is_materialized()) {
    j["value"] = value.value().str();
  } else {
    j["log10_lo"] = log_string(value.log10_lo());
    j["log10_hi"] = log_string(value.log10_hi());
  }
  return j;
}

Json to_json(const torus::ThickParams& p) {
  Json j;
  j["L"] = p.L;
  j["max_trace"] = p.max_trace;
  j["classes"] = p.classes;
  j["epsilon"] = p.epsilon;
  j["F"] = p.F;
  j["short_curve_coeff"] = p.short_curve_coeff;
  j["axis_samples"] = p.axis_samples;
  j["domain_points"] = p.domain_points;
  j["margin"] = p.margin;
  return j;
}

Json to_json(const projection::PairGeometry& g) {
  Json j;
  j["D"] = g.D;
  j["crossing"] = g.crossing;
  j["O"] = {g.O.x, g.O.y};
  j["O_prime"] = {g.O_prime.x, g.O_prime.y};
  j["t_O"] = g.t_O;
  j["s_O"] = g.s_O;
  return j;
}

Json to_json(const projection::Thresholds& t) {
  Json j;
  j["P_plus"] = t.P_plus;
  j["P_minus"] = t.P_minus;
  j["Q_plus"] = t.Q_plus;
  j["Q_minus"] = t.Q_minus;
  j["t_O"] = t.t_O;
  j["s_O"] = t.s_O;
  j["step"] = t.step;
  j["horizon"] = t.horizon;
  j["margin"] = t.margin;
  j["grid_pairs"] = t.grid_pairs;
  j["grid_violations"] = t.grid_violations;
  j["validation_pairs"] = t.validation_pairs;
  j["validation_violations"] = t.validation_violations;
  j["note"] = "grid-certified thresholds: existence is all the theory provides";
  return j;
}

Json to_json(const pingpong::PingPongCertificate& c) {
  Json j;
  Json gens = Json::array();
  for (const auto& g : c.generators) gens.push_back(mcg::to_string(g));
  j["generators"] = gens;
  j["mode"] = std::string(to_string(c.mode));
  j["b"] = c.b;
  j["l_min"] = c.l_min;
  j["l_min_source"] = c.per_input_l_min ? "per-input" : "global";
  j["translations"] = c.translations;
  if (c.mode == pingpong::Mode::paper_formula && c.paper) {
    j["R"] = to_json(c.paper->R_paper);
    j["S"] = "R + 6b";
    j["N"] = to_json(c.paper->N_paper);
  } else {
    j["R"] = c.R;
    j["S"] = c.S;
    j["N"] = c.N.str();
  }
  Json intervals = Json::array();
  for (const auto& iv : c.radius.intervals) {
    Json e;
    e["target"] = iv.target;
    e["source"] = iv.source;
    e["lo"] = iv.lo;
    e["hi"] = iv.hi;
    intervals.push_back(e);
  }
  j["intervals"] = intervals;
  Json radius;
  radius["R_cert"] = c.radius.R;
  radius["S_cert"] = c.S;
  radius["N_cert"] = c.N.str();
  radius["step"] = c.radius.step;
  radius["margin"] = c.radius.margin;
  radius["per_axis"] = c.radius.per_axis;
  j["certified_radius"] = radius;
  if (c.paper) {
    const auto& p = *c.paper;
    Json pj;
    pj["L"] = p.L;
    pj["D_max"] = p.D_max;
    pj["M"] = p.M;
    pj["thick"] = to_json(p.thick);
    pj["short_radius"] = p.short_radius.str(30);
    pj["B"] = p.B.str();
    pj["R_paper"] = to_json(p.R_paper);
    pj["N_paper"] = to_json(p.N_paper);
    pj["note"] = "F is taken over the whole epsilon-thick part, a superset of the axes";
    j["paper"] = pj;
  }
  Json v;
  v["passed"] = c.verification.passed;
  v["seed"] = c.verification.seed;
  v["box"] = {{"x_min", c.verification.box.x_min},
              {"x_max", c.verification.box.x_max},
              {"y_min", c.verification.box.y_min},
              {"y_max", c.verification.box.y_max},
              {"law", "x uniform, log y uniform"}};
  Json checks = Json::array();
  for (const auto& chk : c.verification.checks) {
    Json e;
    e["name"] = chk.name;
    e["passed"] = chk.passed;
    e["samples"] = chk.samples;
    e["detail"] = chk.detail;
    checks.push_back(e);
  }
  v["checks"] = checks;
  j["verification"] = v;
  return j;
}

Json to_json(const oracle::WordReport& r) {
  Json j;
  j["n_generators"] = r.n_generators;
  j["N"] = r.N;
  j["max_word_length"] = r.max_word_length;
  j["words_checked"] = r.words_checked.str();
  j["complete"] = r.complete;
  Json vs = Json::array();
  for (const auto& v : r.violations) vs.push_back({{"word", v.word}, {"product", v.product}});
  j["violations"] = vs;
  return j;
}

pingpong::PingPongCertificate certificate_from_json(const Json& value) {
  try {
    pingpong::PingPongCertificate c;
    for (const auto& g : value.at("generators")) {
      c.generators.push_back(mcg::MappingClass::parse(g.get<std::string>()));
    }
    c.mode = pingpong::parse_mode(value.at("mode").get<std::string>());
    c.b = value.at("b").get<double>();
    c.l_min = value.at("l_min").get<double>();
    c.per_input_l_min = value.value("l_min_source", "global") == "per-input";
    c.translations = value.at("translations").get<std::vector<double>>();
    if (c.mode == pingpong::Mode::certified_search) {
      c.R = value.at("R").get<double>();
      c.S = value.at("S").get<double>();
      const std::string n = value.at("N").get<std::string>();
      if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos) {
        fail(ErrorKind::invalid_input, "certificate N must be a decimal string");
      }
      c.N = BigInt(n);
    }
    return c;
  } catch (const Json::exception& e) {
    fail(ErrorKind::invalid_input, std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace schottky::report

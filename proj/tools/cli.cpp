#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "schottky/errors.hpp"
#include "schottky/hyp2.hpp"
#include "schottky/mcg.hpp"
#include "schottky/oracle.hpp"
#include "schottky/pingpong.hpp"
#include "schottky/projection.hpp"
#include "schottky/report.hpp"
#include "schottky/torus.hpp"

namespace schottky::cli {

namespace {

using report::Json;

struct Flags {
  std::string mode = "certified";
  std::uint64_t max_word_len = 6;
  std::int64_t farey_depth = 500;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::string out;
  std::string csv;
  unsigned threads = 1;
  bool no_cache = false;
  std::string cache = ".schottky-constants.json";
  bool per_input_lmin = false;

  std::string matrix;
  std::string m1;
  std::string m2;
  std::vector<std::string> gens;
  std::uint64_t N = 0;
  std::string cert;
  std::string tau1;
  std::string tau2;
  double t_min = -5.0;
  double t_max = 5.0;
  double step = 0.01;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
    case ErrorKind::degenerate_input:
    case ErrorKind::classification:
    case ErrorKind::not_independent:
      return 2;
    default:
      return 1;
  }
}

std::string fixed5(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

hyp2::Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    fail(ErrorKind::invalid_input, "malformed point '" + text + "': expected x,y");
  }
  auto number = [&](const std::string& part) {
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || end != part.c_str() + part.size()) {
      fail(ErrorKind::invalid_input, "malformed point '" + text + "'");
    }
    return v;
  };
  return hyp2::make_point(number(text.substr(0, comma)), number(text.substr(comma + 1)));
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorKind::invalid_input, "cannot open '" + path + "' for writing");
  file << text;
  if (!file) fail(ErrorKind::invalid_input, "failed writing '" + path + "'");
}

std::vector<mcg::MappingClass> generators(const Flags& f) {
  std::vector<mcg::MappingClass> out;
  if (!f.m1.empty()) out.push_back(mcg::MappingClass::parse(f.m1));
  if (!f.m2.empty()) out.push_back(mcg::MappingClass::parse(f.m2));
  for (const auto& g : f.gens) out.push_back(mcg::MappingClass::parse(g));
  return out;
}

std::pair<mcg::MappingClass, mcg::MappingClass> pair_of(const Flags& f) {
  if (f.m1.empty() || f.m2.empty()) fail(ErrorKind::invalid_input, "--m1 and --m2 are required");
  return {mcg::MappingClass::parse(f.m1), mcg::MappingClass::parse(f.m2)};
}

// Derived constants keyed by their derivation parameters. A missing or
// unreadable file just means everything is recomputed.
class ConstantsCache {
 public:
  ConstantsCache(std::string path, bool enabled) : path_(std::move(path)), enabled_(enabled) {
    if (!enabled_) return;
    std::ifstream in(path_);
    if (!in) return;
    try {
      data_ = Json::parse(in);
      if (!data_.is_object()) data_ = Json::object();
    } catch (const Json::exception&) {
      data_ = Json::object();
    }
  }

  double number(const std::string& key, const std::function<double()>& derive) {
    if (enabled_ && data_.contains(key) && data_[key].is_number()) return data_[key].get<double>();
    const double v = derive();
    store(key, v);
    return v;
  }

  torus::ThickParams thick(double L) {
    const std::string key = "thick_params L=" + format_g17(L);
    if (enabled_ && data_.contains(key) && data_[key].is_object()) {
      const Json& j = data_[key];
      try {
        torus::ThickParams p;
        p.L = j.at("L").get<double>();
        p.max_trace = j.at("max_trace").get<std::int64_t>();
        p.classes = j.at("classes").get<std::size_t>();
        p.epsilon = j.at("epsilon").get<double>();
        p.F = j.at("F").get<double>();
        p.short_curve_coeff = j.at("short_curve_coeff").get<double>();
        p.axis_samples = j.at("axis_samples").get<std::size_t>();
        p.domain_points = j.at("domain_points").get<std::size_t>();
        p.margin = j.at("margin").get<double>();
        return p;
      } catch (const Json::exception&) {
      }
    }
    const torus::ThickParams p = torus::derive_thick_params(L);
    store(key, report::to_json(p));
    return p;
  }

 private:
  void store(const std::string& key, const Json& value) {
    if (!enabled_) return;
    data_[key] = value;
    std::ofstream file(path_, std::ios::binary);
    if (file) file << report::dump(data_);
  }

  std::string path_;
  bool enabled_;
  Json data_ = Json::object();
};

int cmd_classify(const Flags& f, std::ostream& out) {
  if (f.matrix.empty()) fail(ErrorKind::invalid_input, "--matrix is required");
  const auto m = mcg::MappingClass::parse(f.matrix);
  const mcg::Kind kind = mcg::classify(m);
  std::string line = std::string(mcg::to_string(kind)) + " trace=" + m.trace().str();
  if (kind == mcg::Kind::pseudo_anosov) {
    line += " Tr=" + fixed5(mcg::translation_distance(m));
  } else if (const auto s = mcg::fixed_slope_test(m)) {
    line += " fixed_slope=" + to_string(*s);
  }
  emit(line + "\n", f.out, out);
  return 0;
}

int cmd_axis(const Flags& f, std::ostream& out) {
  if (f.matrix.empty()) fail(ErrorKind::invalid_input, "--matrix is required");
  const auto m = mcg::MappingClass::parse(f.matrix);
  const mcg::AxisData a = mcg::axis(m);
  Json j;
  j["matrix"] = mcg::to_string(m);
  j["repelling"] = a.repelling.value();
  j["attracting"] = a.attracting.value();
  j["origin"] = {a.axis.origin().x, a.axis.origin().y};
  j["translation"] = a.translation;
  j["dilatation"] = a.dilatation;
  emit(report::dump(j), f.out, out);
  return 0;
}

int cmd_pair(const Flags& f, std::ostream& out) {
  const auto [m1, m2] = pair_of(f);
  const bool independent = mcg::independent(m1, m2);
  if (!independent) {
    fail(ErrorKind::not_independent,
         "matrices " + mcg::to_string(m1) + " and " + mcg::to_string(m2) + " share an axis");
  }
  const auto a1 = mcg::axis(m1).axis;
  const auto a2 = mcg::axis(m2).axis;
  Json j;
  j["m1"] = mcg::to_string(m1);
  j["m2"] = mcg::to_string(m2);
  j["independent"] = independent;
  j["geometry"] = report::to_json(projection::pair_geometry(m1, m2));
  const auto i12 = projection::projection_interval(a1, a2);
  const auto i21 = projection::projection_interval(a2, a1);
  j["interval_on_axis1"] = {i12.first, i12.second};
  j["interval_on_axis2"] = {i21.first, i21.second};
  projection::ThresholdOptions opts;
  opts.seed = f.seed;
  j["thresholds"] = report::to_json(projection::fast_divergence_thresholds(m1, m2, opts, f.threads));
  emit(report::dump(j), f.out, out);
  return 0;
}

int cmd_profile(const Flags& f, std::ostream& out) {
  const auto [m1, m2] = pair_of(f);
  const auto rows = projection::divergence_profile(m1, m2, f.t_min, f.t_max, f.step, f.threads);
  emit(projection::profile_csv(rows), f.csv.empty() ? f.out : f.csv, out);
  return 0;
}

int cmd_pingpong(const Flags& f, std::ostream& out) {
  const auto gens = generators(f);
  pingpong::require_generators(gens);
  ConstantsCache cache(f.cache, !f.no_cache);
  const double b = cache.number("contraction_b", projection::derive_contraction_b);

  pingpong::CertificateOptions opts;
  opts.mode = pingpong::parse_mode(f.mode);
  opts.per_input_l_min = f.per_input_lmin;
  opts.samples = f.samples;
  opts.seed = f.seed;
  opts.threads = f.threads;
  if (opts.mode == pingpong::Mode::paper_formula) {
    double L = 0.0;
    double D = 0.0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      L = std::max(L, mcg::translation_distance(gens[i]));
      for (std::size_t k = i + 1; k < gens.size(); ++k) {
        D = std::max(D, projection::pair_geometry(gens[i], gens[k]).D);
      }
    }
    opts.thick = cache.thick(L);
    opts.morse = cache.number("morse K=2 kappa=" + format_g17(D),
                              [D] { return projection::derive_morse(2.0, D); });
  }
  const auto cert = pingpong::certify(gens, b, opts);
  emit(report::dump(report::to_json(cert)), f.out, out);
  return 0;
}

int cmd_certify_free(const Flags& f, std::ostream& out, std::ostream& err) {
  oracle::FreeCheckOptions opts;
  opts.threads = f.threads;
  std::vector<mcg::MappingClass> gens;
  std::uint64_t N = f.N;
  if (!f.cert.empty()) {
    std::ifstream in(f.cert);
    if (!in) fail(ErrorKind::invalid_input, "cannot read certificate '" + f.cert + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      fail(ErrorKind::invalid_input, std::string("certificate is not valid JSON: ") + e.what());
    }
    const auto cert = report::certificate_from_json(j);
    if (cert.mode != pingpong::Mode::certified_search) {
      fail(ErrorKind::invalid_input,
           "paper-mode certificates carry an N far too large to exponentiate; use a certified one");
    }
    if (cert.N < 1 || cert.N > std::numeric_limits<std::uint32_t>::max()) {
      fail(ErrorKind::invalid_input, "certificate has N = " + cert.N.str());
    }
    gens = cert.generators;
    N = cert.N.convert_to<std::uint64_t>();
  } else {
    gens = generators(f);
    if (gens.empty()) fail(ErrorKind::invalid_input, "give --cert or generators with --N");
    if (N < 1) fail(ErrorKind::invalid_input, "--N must be at least 1");
  }
  const auto report = oracle::free_check(gens, N, f.max_word_len, opts);
  emit(report::dump(report::to_json(report)), f.out, out);
  if (!report.violations.empty()) {
    err << "error: f-violation: relation " << report.violations.front().word
        << " is the identity\n";
    return 1;
  }
  return 0;
}

int cmd_teich(const Flags& f, std::ostream& out) {
  if (f.tau1.empty() || f.tau2.empty()) fail(ErrorKind::invalid_input, "--tau1 and --tau2 are required");
  const auto t1 = parse_point(f.tau1);
  const auto t2 = parse_point(f.tau2);
  const double d = torus::teich_dist(t1, t2);
  const double k = torus::kerckhoff_dist(t1, t2, f.farey_depth, f.threads);
  Json j;
  j["tau1"] = {t1.x, t1.y};
  j["tau2"] = {t2.x, t2.y};
  j["teich_dist"] = d;
  j["kerckhoff_dist"] = k;
  j["farey_depth"] = f.farey_depth;
  j["difference"] = d - k;
  j["systole1"] = torus::systole(t1);
  j["systole2"] = torus::systole(t2);
  emit(report::dump(j), f.out, out);
  return 0;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--out", f.out, "Write the result to FILE");
  sub->add_option("--threads", f.threads, "Worker threads")->check(CLI::Range(1U, 256U));
  sub->add_option("--seed", f.seed, "Seed for all sampling");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Ping-pong certificates for the torus model of Teichmuller space", "schottky"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto* classify = app.add_subcommand("classify", "Classify a matrix");
  classify->add_option("--matrix", f.matrix, "a,b,c,d")->required();
  add_common(classify, f);

  auto* axis = app.add_subcommand("axis", "Axis of a pseudo-Anosov");
  axis->add_option("--matrix", f.matrix, "a,b,c,d")->required();
  add_common(axis, f);

  auto* pair = app.add_subcommand("pair", "Nearest-point geometry of two axes");
  pair->add_option("--m1", f.m1, "a,b,c,d")->required();
  pair->add_option("--m2", f.m2, "a,b,c,d")->required();
  add_common(pair, f);

  auto* profile = app.add_subcommand("profile", "Divergence profile as CSV");
  profile->add_option("--m1", f.m1, "a,b,c,d")->required();
  profile->add_option("--m2", f.m2, "a,b,c,d")->required();
  profile->add_option("--t-min", f.t_min, "First parameter");
  profile->add_option("--t-max", f.t_max, "Last parameter");
  profile->add_option("--step", f.step, "Parameter step")->check(CLI::PositiveNumber);
  profile->add_option("--csv", f.csv, "CSV destination");
  add_common(profile, f);

  auto* pingpong = app.add_subcommand("pingpong", "Build and verify a ping-pong certificate");
  pingpong->add_option("--m1", f.m1, "a,b,c,d");
  pingpong->add_option("--m2", f.m2, "a,b,c,d");
  pingpong->add_option("--gen", f.gens, "a,b,c,d (repeatable)");
  pingpong->add_option("--mode", f.mode, "paper|certified")
      ->check(CLI::IsMember({"paper", "certified"}));
  pingpong->add_option("--samples", f.samples, "Monte Carlo samples");
  pingpong->add_flag("--per-input-lmin", f.per_input_lmin,
                     "Use the smallest input translation distance instead of l_min");
  pingpong->add_flag("--no-cache", f.no_cache, "Recompute derived constants");
  pingpong->add_option("--cache", f.cache, "Constants cache file");
  add_common(pingpong, f);

  auto* certify = app.add_subcommand("certify-free", "Exact reduced-word enumeration");
  certify->add_option("--cert", f.cert, "Certificate produced by pingpong");
  certify->add_option("--m1", f.m1, "a,b,c,d");
  certify->add_option("--m2", f.m2, "a,b,c,d");
  certify->add_option("--gen", f.gens, "a,b,c,d (repeatable)");
  certify->add_option("--N", f.N, "Power of each generator");
  certify->add_option("--max-word-len", f.max_word_len, "Longest word");
  add_common(certify, f);

  auto* teich = app.add_subcommand("teich", "Teichmuller and Kerckhoff distances");
  teich->add_option("--tau1", f.tau1, "x,y")->required();
  teich->add_option("--tau2", f.tau2, "x,y")->required();
  teich->add_option("--farey-depth", f.farey_depth, "Largest |p|, q")->check(CLI::PositiveNumber);
  add_common(teich, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    for (char& c : message) {
      if (c == '\n') c = ' ';
    }
    err << "error: invalid-input: " << message << "\n";
    return 2;
  }

  try {
    if (*classify) return cmd_classify(f, out);
    if (*axis) return cmd_axis(f, out);
    if (*pair) return cmd_pair(f, out);
    if (*profile) return cmd_profile(f, out);
    if (*pingpong) return cmd_pingpong(f, out);
    if (*certify) return cmd_certify_free(f, out, err);
    if (*teich) return cmd_teich(f, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what();
    if (!e.witness().empty()) err << " (witness " << e.witness() << ")";
    err << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace schottky::cli

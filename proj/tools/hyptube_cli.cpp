// hyptube command-line driver. Reads a JSON run config, writes CSV tables
// and JSON summaries into the output directory. Links only the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyptube/hyptube.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2, kNumerical = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  ht_status status;
  ApiError(ht_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(ht_status s, const char* where) {
  if (s == HT_OK) return;
  throw ApiError(s, std::string(where) + ": " + ht_status_string(s) + ": " + ht_last_error_message());
}

int exit_code_of(ht_status s) {
  switch (s) {
    case HT_ERR_NUMERICAL:
    case HT_ERR_ACCURACY:
    case HT_ERR_PARTITION:
    case HT_ERR_INTERNAL: return kNumerical;
    default: return kConfigError;
  }
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV with a seed comment line above the header
class Csv {
 public:
  Csv(const fs::path& p, std::uint64_t seed, const std::vector<std::string>& cols) : os_(p, std::ios::binary) {
    if (!os_) throw ConfigError("cannot write " + p.string());
    os_ << "# seed=" << seed << "\n";
    row(cols);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << "\n";
  }

 private:
  std::ofstream os_;
};

void write_json(const fs::path& p, const json& j) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + p.string());
  os << j.dump(2) << "\n";
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// deterministic uniforms on top of the standard 64-bit Mersenne engine
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : g_(seed) {}
  double operator()(double a, double b) { return a + (b - a) * (double(g_() >> 11) * 0x1.0p-53); }
  std::uint64_t raw() { return g_(); }

 private:
  std::mt19937_64 g_;
};

// ---- config helpers -------------------------------------------------------

double get_num(const json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

double req_num(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing '") + key + "'");
  return get_num(j, key, 0.0);
}

std::vector<double> num_list(const json& j, const char* key, std::vector<double> dflt = {}) {
  if (!j.contains(key)) {
    if (dflt.empty()) throw ConfigError(std::string("missing '") + key + "'");
    return dflt;
  }
  const json& v = j[key];
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(std::string("'") + key + "' must be a number or a list");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) throw ConfigError(std::string("'") + key + "' must contain numbers");
    out.push_back(e.get<double>());
  }
  if (out.empty()) throw ConfigError(std::string("'") + key + "' is empty");
  return out;
}

ht_complex cnum(const json& v, const char* what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(std::string(what) + ": complex values are numbers or [re, im]");
}

ht_cpoint cpoint(const json& v, const char* what) {
  if (!v.is_object() || !v.contains("X") || !v.contains("Y")) throw ConfigError(std::string(what) + ": expected {\"X\", \"Y\"}");
  return {cnum(v["X"], what), cnum(v["Y"], what)};
}

std::vector<double> range(const json& v, std::size_t n, const char* what) {
  if (!v.is_array() || v.size() != n) throw ConfigError(std::string(what) + ": wrong number of entries");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) throw ConfigError(std::string(what) + ": expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

ht_quad_spec quad_spec(const json& p) {
  ht_quad_spec q;
  ht_quad_spec_default(&q);
  if (p.contains("quadrature")) {
    const json& j = p["quadrature"];
    q.rel_tol = get_num(j, "rel_tol", q.rel_tol);
    q.abs_tol = get_num(j, "abs_tol", q.abs_tol);
    q.max_subdivisions = int(get_num(j, "max_subdivisions", q.max_subdivisions));
    q.truncation_margin = get_num(j, "truncation_margin", q.truncation_margin);
  }
  return q;
}

struct SpecHandle {
  ht_eigen_spec* h = nullptr;
  SpecHandle() = default;
  SpecHandle(const SpecHandle&) = delete;
  ~SpecHandle() { ht_eigen_spec_destroy(h); }
};

// terms: [{"coeff": [re, im], "iso": [a, b, c, d]}]; no terms means the
// model eigenfunction y^(1/2 + i sigma)
void build_spec(SpecHandle& out, double tau, double s, const json& p) {
  check(ht_eigen_spec_create(tau, s, &out.h), "eigen spec");
  if (!p.contains("terms")) {
    check(ht_eigen_spec_add(out.h, {1.0, 0.0}, {1, 0, 0, 1}), "eigen spec");
    return;
  }
  if (!p["terms"].is_array() || p["terms"].empty()) throw ConfigError("'terms' must be a nonempty list");
  for (const json& t : p["terms"]) {
    const ht_complex c = t.contains("coeff") ? cnum(t["coeff"], "coeff") : ht_complex{1.0, 0.0};
    const std::vector<double> g = t.contains("iso") ? range(t["iso"], 4, "iso") : std::vector<double>{1, 0, 0, 1};
    check(ht_eigen_spec_add(out.h, c, {g[0], g[1], g[2], g[3]}), "eigen spec");
  }
}

ht_slice slice_of(const json& j) {
  ht_slice s;
  ht_slice_default(&s);
  const std::string kind = j.value("kind", "theta");
  if (kind == "theta") {
    s.kind = HT_SLICE_THETA;
    if (j.contains("base")) {
      const auto b = range(j["base"], 2, "base");
      s.base = {b[0], b[1]};
    }
    const auto t = range(j.value("t", json::array({0.05, 0.5, 16})), 3, "t");
    const auto th = range(j.value("theta", json::array({0.0, 6.283185307179586, 16})), 3, "theta");
    s.t_min = t[0];
    s.t_max = t[1];
    s.n1 = int(t[2]);
    s.theta_min = th[0];
    s.theta_max = th[1];
    s.n2 = int(th[2]);
  } else if (kind == "line") {
    s.kind = HT_SLICE_LINE;
    if (!j.contains("P0") || !j.contains("V")) throw ConfigError("line slice needs P0 and V");
    s.P0 = cpoint(j["P0"], "P0");
    s.V = cpoint(j["V"], "V");
    const auto re = range(j.value("re", json::array({-1.0, 1.0})), 2, "re");
    const auto im = range(j.value("im", json::array({-1.0, 1.0})), 2, "im");
    s.re_min = re[0];
    s.re_max = re[1];
    s.im_min = im[0];
    s.im_max = im[1];
    s.n1 = s.n2 = int(get_num(j, "resolution", 16));
  } else {
    throw ConfigError("slice kind must be 'theta' or 'line'");
  }
  return s;
}

// ---- commands -------------------------------------------------------------

struct Run {
  json params;
  std::uint64_t seed;
  double tol_scale;
  fs::path out;
};

int cmd_verify(const Run& r) {
  const double override_tol = get_num(r.params, "tolerance_override", 0.0);
  const double scale = get_num(r.params, "tol_scale", r.tol_scale);
  ht_verify_report* rep = nullptr;
  check(ht_verify_run(r.seed, scale, override_tol, &rep), "verify");
  Csv csv(r.out / "verify.csv", r.seed, {"check_id", "samples", "max_error", "tolerance", "pass"});
  int failed = 0;
  json failing = json::array();
  const std::size_t n = ht_verify_report_size(rep);
  for (std::size_t i = 0; i < n; ++i) {
    ht_verify_row row;
    ht_verify_report_row(rep, i, &row);
    csv.row({row.check_id, std::to_string(row.samples), num(row.max_error), num(row.tolerance), row.pass ? "true" : "false"});
    if (!row.pass) {
      ++failed;
      failing.push_back(row.check_id);
      std::cerr << "FAIL " << row.check_id << " max_error=" << num(row.max_error) << " tolerance=" << num(row.tolerance)
                << "\n";
    }
  }
  ht_verify_report_destroy(rep);
  write_json(r.out / "verify_summary.json",
             {{"checks", n}, {"failed", failed}, {"failing", failing}, {"seed", r.seed}, {"pass", failed == 0}});
  return failed ? kCheckFailed : kOk;
}

std::optional<ht_route> route_named(const std::string& s) {
  if (s == "quadrature2d") return HT_ROUTE_QUADRATURE2D;
  if (s == "formula1d") return HT_ROUTE_FORMULA1D;
  if (s == "laplace") return HT_ROUTE_LAPLACE;
  if (s == "auto") return HT_ROUTE_AUTO;
  return std::nullopt;
}

int cmd_s_transform(const Run& r) {
  const auto etas = num_list(r.params, "eta");
  const auto taus = num_list(r.params, "tau");
  const auto ss = num_list(r.params, "s", {0.5});
  std::vector<ht_route> routes;
  for (const json& v : r.params.value("routes", json::array({"auto"}))) {
    const auto rt = v.is_string() ? route_named(v.get<std::string>()) : std::nullopt;
    if (!rt) throw ConfigError("unknown route " + v.dump());
    routes.push_back(*rt);
  }
  if (routes.empty()) throw ConfigError("'routes' is empty");
  const ht_quad_spec q = quad_spec(r.params);

  Csv csv(r.out / "s_transform.csv", r.seed,
          {"eta", "tau", "s", "route", "re", "im", "abs", "rate_gap", "ratio_to_laplace"});
  long rows = 0, unavailable = 0;
  json flagged = json::array();
  for (double eta : etas)
    for (double tau : taus)
      for (double s : ss) {
        double phi = 0.0;
        check(ht_phi_diagonal(eta, 3.141592653589793, &phi), "phi");
        ht_s_result lap;
        check(ht_selberg_S(eta, tau, s, HT_ROUTE_LAPLACE, &q, &lap), "laplace");
        const double lap_abs = std::hypot(lap.value.re, lap.value.im);
        for (ht_route rt : routes) {
          ht_s_result res;
          const ht_status st = ht_selberg_S(eta, tau, s, rt, &q, &res);
          ++rows;
          if (st == HT_ERR_ROUTE_UNAVAILABLE) {
            ++unavailable;
            flagged.push_back({{"eta", eta}, {"tau", tau}, {"s", s}, {"route", ht_route_name(rt)}});
            const double nan = std::nan("");
            csv.row({num(eta), num(tau), num(s), std::string(ht_route_name(rt)) + ":unavailable", num(nan), num(nan),
                     num(nan), num(nan), num(nan)});
            continue;
          }
          check(st, "s-transform");
          const double a = std::hypot(res.value.re, res.value.im);
          csv.row({num(eta), num(tau), num(s), ht_route_name(res.route), num(res.value.re), num(res.value.im), num(a),
                   num(std::log(a) / tau - phi), num(a / lap_abs)});
        }
      }
  write_json(r.out / "s_transform_summary.json",
             {{"rows", rows}, {"unavailable", unavailable}, {"flagged", flagged}, {"seed", r.seed}});
  return kOk;
}

int cmd_continue(const Run& r) {
  const double eta = req_num(r.params, "eta");
  const auto taus = num_list(r.params, "tau");
  const double s = get_num(r.params, "s", 0.5);
  const ht_quad_spec q = quad_spec(r.params);

  struct Pt {
    double x, y, t, theta;
  };
  std::vector<Pt> pts;
  if (r.params.contains("points")) {
    for (const json& p : r.params["points"]) pts.push_back({req_num(p, "x"), req_num(p, "y"), req_num(p, "t"), req_num(p, "theta")});
  } else {
    const json rp = r.params.value("random_points", json::object());
    const int n = int(get_num(rp, "count", 20));
    const double t0 = get_num(rp, "t_min", 0.05), t1 = get_num(rp, "t_max", 0.35);
    if (n < 1) throw ConfigError("random_points.count must be positive");
    Uniform u(r.seed);
    for (int k = 0; k < n; ++k) {
      const double x = u(-1.0, 1.0), y = u(0.5, 2.0), t = u(t0, t1), th = u(0.0, 6.283185307179586);
      pts.push_back({x, y, t, th});
    }
  }
  if (pts.empty()) throw ConfigError("no points");

  Csv csv(r.out / "continue.csv", r.seed,
          {"eta", "tau", "s", "x", "y", "t", "theta", "re", "im", "oracle_re", "oracle_im", "rel_dev"});
  double worst = 0.0;
  for (double tau : taus) {
    SpecHandle spec;
    build_spec(spec, tau, s, r.params);
    ht_s_result S;
    check(ht_selberg_S(eta, tau, s, HT_ROUTE_AUTO, &q, &S), "S");
    for (const Pt& p : pts) {
      ht_cpoint P;
      check(ht_horocycle_point_c({p.x, p.y}, p.theta, p.t, &P), "point");
      ht_complex v, e;
      check(ht_continue_eigen(spec.h, eta, P, &q, &v), "continue");
      check(ht_eigen_eval_c(spec.h, P, &e), "closed form");
      const double ore = S.value.re * e.re - S.value.im * e.im, oim = S.value.re * e.im + S.value.im * e.re;
      const double dev = std::hypot(v.re - ore, v.im - oim) / std::hypot(ore, oim);
      worst = std::max(worst, dev);
      csv.row({num(eta), num(tau), num(s), num(p.x), num(p.y), num(p.t), num(p.theta), num(v.re), num(v.im), num(ore),
               num(oim), num(dev)});
    }
  }
  write_json(r.out / "continue_summary.json", {{"points", pts.size()},
                                               {"taus", taus},
                                               {"max_rel_deviation", jnum(worst)},
                                               {"model", !r.params.contains("terms")},
                                               {"seed", r.seed}});
  return kOk;
}

int cmd_growth(const Run& r) {
  const double tau = req_num(r.params, "tau");
  const double s = get_num(r.params, "s", 0.5);
  SpecHandle spec;
  build_spec(spec, tau, s, r.params);
  const ht_slice sl = slice_of(r.params.value("slice", json::object()));
  ht_growth_table* tab = nullptr;
  check(ht_growth_profile(spec.h, &sl, &tab), "growth");
  Csv csv(r.out / "growth.csv", r.seed,
          {"t", "theta", "ReX", "ImX", "ReY", "ImY", "abs_u_sq", "B0", "normalized", "rate_gap"});
  const std::size_t n = ht_growth_table_size(tab);
  double b0max = -INFINITY, b0min = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    ht_growth_row g;
    ht_growth_table_row(tab, i, &g);
    b0max = std::max(b0max, g.b0);
    b0min = std::min(b0min, g.b0);
    csv.row({num(g.t), num(g.theta), num(g.P.X.re), num(g.P.X.im), num(g.P.Y.re), num(g.P.Y.im), num(g.abs_u_sq), num(g.b0),
             num(g.normalized), num(g.rate_gap)});
  }
  ht_growth_table_destroy(tab);
  write_json(r.out / "growth_summary.json",
             {{"rows", n}, {"tau", tau}, {"s", s}, {"B0_min", jnum(b0min)}, {"B0_max", jnum(b0max)}, {"seed", r.seed}});
  return kOk;
}

ht_nodal_spec nodal_spec(const json& p) {
  ht_nodal_spec n;
  ht_nodal_spec_default(&n);
  n.grid = int(get_num(p, "grid", n.grid));
  n.max_jitter = int(get_num(p, "max_jitter", n.max_jitter));
  return n;
}

struct ReportHandle {
  ht_nodal_report* h = nullptr;
  ReportHandle() = default;
  ReportHandle(const ReportHandle&) = delete;
  ~ReportHandle() { ht_nodal_report_destroy(h); }
};

int cmd_nodal(const Run& r) {
  const ht_nodal_spec ns = nodal_spec(r.params);
  Csv csv(r.out / "nodal.csv", r.seed, {"slice_id", "w_re", "w_im", "multiplicity"});
  json slices = json::array();
  long total = 0;
  double density = 0.0;
  bool have_density = false;
  long mismatches = 0;

  auto emit = [&](const std::string& id, const ht_nodal_report* rep) {
    const std::size_t n = ht_nodal_report_size(rep);
    for (std::size_t i = 0; i < n; ++i) {
      ht_complex w;
      int m;
      ht_nodal_report_zero(rep, i, &w, &m);
      csv.row({id, num(w.re), num(w.im), std::to_string(m)});
    }
    int count;
    double area, dens;
    ht_nodal_report_summary(rep, &count, &area, &dens);
    total += count;
    return std::make_tuple(count, area, dens);
  };

  struct Poly {
    std::string id;
    std::vector<ht_complex> roots;
    std::vector<int> mult;
  };
  std::vector<Poly> polys;
  std::vector<double> region{-2.0, 2.0, -2.0, 2.0};
  if (r.params.contains("region")) region = range(r.params["region"], 4, "region");
  if (r.params.contains("polynomials")) {
    int k = 0;
    for (const json& p : r.params["polynomials"]) {
      Poly q;
      q.id = p.value("id", "poly" + std::to_string(k++));
      if (!p.contains("roots") || !p["roots"].is_array()) throw ConfigError("polynomial needs 'roots'");
      for (const json& z : p["roots"]) q.roots.push_back(cnum(z, "roots"));
      if (p.contains("multiplicities")) {
        for (const json& m : p["multiplicities"]) q.mult.push_back(m.get<int>());
      } else {
        q.mult.assign(q.roots.size(), 1);
      }
      if (q.mult.size() != q.roots.size()) throw ConfigError(q.id + ": roots and multiplicities differ in length");
      polys.push_back(std::move(q));
    }
  }
  if (r.params.contains("polynomial_corpus")) {
    // degrees 1..6 cycling, double roots with probability 1/4
    const int n = int(get_num(r.params["polynomial_corpus"], "instances", 50));
    Uniform u(r.seed);
    for (int k = 0; k < n; ++k) {
      Poly q;
      q.id = "corpus" + std::to_string(k);
      const int deg = 1 + k % 6;
      for (int d = 0; d < deg;) {
        const int m = (u.raw() % 4 == 0 && d + 2 <= deg) ? 2 : 1;
        q.roots.push_back({u(0.9 * region[0], 0.9 * region[1]), u(0.9 * region[2], 0.9 * region[3])});
        q.mult.push_back(m);
        d += m;
      }
      polys.push_back(std::move(q));
    }
  }

  for (const Poly& p : polys) {
    ReportHandle rep;
    check(ht_nodal_roots(p.roots.data(), p.mult.data(), p.roots.size(), region[0], region[1], region[2], region[3], &ns,
                         &rep.h),
          "nodal");
    const auto [count, area, dens] = emit(p.id, rep.h);
    int expected = 0;
    for (std::size_t i = 0; i < p.roots.size(); ++i)
      if (p.roots[i].re > region[0] && p.roots[i].re < region[1] && p.roots[i].im > region[2] && p.roots[i].im < region[3])
        expected += p.mult[i];
    if (count != expected) ++mismatches;
    (void)dens;
    slices.push_back({{"slice_id", p.id}, {"total_count", count}, {"expected_count", expected}, {"area", area}});
  }

  std::optional<double> tau;
  if (r.params.contains("slices")) {
    tau = req_num(r.params, "tau");
    const double s = get_num(r.params, "s", 0.5);
    SpecHandle spec;
    build_spec(spec, *tau, s, r.params);
    int k = 0;
    for (json sj : r.params["slices"]) {
      const std::string id = sj.value("id", "slice" + std::to_string(k++));
      sj["kind"] = "line";
      const ht_slice sl = slice_of(sj);
      ReportHandle rep;
      check(ht_nodal_eigen(spec.h, &sl, &ns, &rep.h), "nodal");
      const auto [count, area, dens] = emit(id, rep.h);
      density += dens;
      have_density = true;
      slices.push_back({{"slice_id", id},
                        {"total_count", count},
                        {"area", area},
                        {"b0_density_integral", dens},
                        {"count_per_tau", count / *tau}});
    }
  }
  if (polys.empty() && !tau) throw ConfigError("nodal needs 'polynomials', 'polynomial_corpus' or 'slices'");

  json summary = {{"total_count", total},
                  {"tau", tau ? json(*tau) : json(nullptr)},
                  {"b0_density_integral", have_density ? json(density) : json(nullptr)},
                  {"slices", slices},
                  {"seed", r.seed}};
  if (!polys.empty()) summary["count_mismatches"] = mismatches;
  write_json(r.out / "nodal_summary.json", summary);
  return mismatches ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyptube: horocycle tube numerics"};
  std::string command, config_path, out_dir;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  app.add_option("command", command, "verify | s-transform | continue | growth | nodal");
  app.add_option("--config", config_path, "JSON run config");
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized suites");
  auto* scale_opt = app.add_option("--tol-scale", tol_scale, "multiplies every verify tolerance");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    json cfg = json::object();
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw ConfigError("cannot open config " + config_path);
      try {
        cfg = json::parse(is);
      } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
      }
      if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    }
    if (cfg.contains("command")) {
      const std::string c = cfg["command"].get<std::string>();
      if (!command.empty() && command != c) throw ConfigError("command '" + command + "' conflicts with config '" + c + "'");
      command = c;
    }
    if (command.empty()) throw ConfigError("no command given");

    Run run;
    run.params = cfg.value("params", json::object());
    if (!run.params.is_object()) throw ConfigError("'params' must be an object");
    run.seed = seed_opt->count() ? seed : cfg.value("seed", std::uint64_t{20261014});
    run.tol_scale = scale_opt->count() ? tol_scale : cfg.value("tol_scale", 1.0);
    if (!(run.tol_scale > 0.0)) throw ConfigError("--tol-scale must be positive");
    run.out = !out_dir.empty() ? fs::path(out_dir) : fs::path(cfg.value("output_path", std::string(".")));
    fs::create_directories(run.out);

    if (command == "verify") return cmd_verify(run);
    if (command == "s-transform") return cmd_s_transform(run);
    if (command == "continue") return cmd_continue(run);
    if (command == "growth") return cmd_growth(run);
    if (command == "nodal") return cmd_nodal(run);
    throw ConfigError("unknown command '" + command + "'");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ApiError& e) {
    std::cerr << e.what() << "\n";
    return exit_code_of(e.status);
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}

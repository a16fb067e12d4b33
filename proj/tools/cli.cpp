#include "spinnet/cli.hpp"

#include "spinnet/asymptotics.hpp"
#include "spinnet/cg_eval.hpp"
#include "spinnet/closed_forms.hpp"
#include "spinnet/error.hpp"
#include "spinnet/network_io.hpp"
#include "spinnet/penrose.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace spinnet::cli {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
  bool json = false;
  bool timings = false;
  std::uint64_t seed = 1;
  int threads = 1;
};

std::string decimal(const BigRational& q) {
  if (sgn(q) == 0) return "0";
  const double d = to_double(q);
  if (std::isfinite(d) && d != 0) return format_decimal(d);
  return std::string(sgn(q) < 0 ? "-" : "") + "exp(" + format_decimal(log_abs(q)) + ")";
}

std::string decimal(const Radical& r) {
  if (r.is_zero()) return "0";
  const double d = r.to_double();
  if (std::isfinite(d) && d != 0) return format_decimal(d);
  return std::string(r.sign() < 0 ? "-" : "") + "exp(" + format_decimal(r.log_abs()) + ")";
}

// prod over vertices of Theta(a_v, b_v, c_v)
BigRational theta_product(const SpinNetwork& net) {
  BigRational t = 1;
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    auto [a, b, c] = net.vertex_decorations(v);
    t *= theta_big(a, b, c);
  }
  return t;
}

void require_admissible(const SpinNetwork& net) {
  auto rep = check_admissible(net);
  if (!rep.admissible) throw domain_error("inadmissible: " + describe(rep.violations.front()));
}

// writes a text block or a json document, one of the two
struct Output {
  const Globals& g;
  std::ostream& out;
  void emit(const json& j, const std::string& text) const {
    if (g.json)
      out << j.dump() << '\n';
    else
      out << text;
  }
};

// --- commands --------------------------------------------------------------

int cmd_check(const Globals& g, std::ostream& out, const std::string& path) {
  auto f = read_network_file(path);
  auto rep = check_admissible(f.net);
  json j{{"admissible", rep.admissible}, {"violations", json::array()}};
  std::string text = rep.admissible ? "admissible\n" : "inadmissible\n";
  for (const auto& v : rep.violations) {
    j["violations"].push_back(describe(v));
    text += describe(v) + "\n";
  }
  Output{g, out}.emit(j, text);
  return rep.admissible ? ok : domain;
}

int cmd_gen(const Globals& g, std::ostream& out, const std::string& family, const std::vector<int>& params,
            std::optional<int> gamma) {
  SpinNetwork net;
  if (family == "random") {
    if (params.size() != 1) throw domain_error("random expects a vertex count");
    if (params[0] < 0 || params[0] % 2) throw domain_error("random: vertex count must be even and nonnegative");
    std::mt19937_64 rng(g.seed);
    net = random_cubic(params[0], rng);
  } else {
    net = generate(family, params);
  }
  if (gamma) {
    if (*gamma < 0) throw domain_error("--gamma must be nonnegative");
    auto spec = net.spec();
    std::fill(spec.decoration.begin(), spec.decoration.end(), *gamma);
    std::fill(spec.trivial_components.begin(), spec.trivial_components.end(), *gamma);
    net = build_network(spec);
  }
  out << serialize_network({net, {}, {}});
  return ok;
}

int cmd_orient(std::ostream& out, const std::string& path) {
  auto f = read_network_file(path);
  auto o = find_smooth_orientation(f.net);
  out << serialize_network({f.net, o, canonical_gate_signage(f.net, o)});
  return ok;
}

int cmd_eval(const Globals& g, std::ostream& out, const std::string& path, const std::string& method,
             const std::string& norm) {
  auto f = read_network_file(path);
  require_admissible(f.net);
  EvalOptions opt;
  opt.threads = g.threads;
  json j{{"method", method}, {"norm", norm}};
  std::string value, dec;
  bool sign_known = true;

  if (method == "penrose") {
    PenroseOptions po;
    po.threads = g.threads;
    BigInt p = penrose_evaluate(f.net, po).value;
    if (norm == "P") {
      value = to_string(p);
      dec = decimal(BigRational(p));
    } else {
      BigRational s = standard_from_penrose(f.net, p);
      if (norm == "S") {
        value = to_string(s);
        dec = decimal(s);
      } else {
        Radical u(sgn(s), s * s / theta_product(f.net));
        value = u.to_string();
        dec = decimal(u);
      }
    }
  } else {
    // magnitudes from the CG engine; the sign is not determined by it
    sign_known = false;
    if (norm == "U") {
      opt.penrose_sign = false;
      UnitaryValue u = unitary_evaluate(f.net, opt);
      value = u.value.abs().to_string();
      dec = decimal(u.value.abs());
      sign_known = u.value.is_zero();
    } else {
      bool zero_bridge = false;
      for (EdgeId b : find_bridges(f.net)) zero_bridge |= f.net.decoration(b) != 0;
      BigRational c = zero_bridge ? BigRational(0) : abs(cg_evaluate(to_cg_network(f)));
      BigRational v = c * BigRational(edge_factorial_product(f.net));
      if (norm == "S") v /= BigRational(half_factorial_product(f.net));
      v.canonicalize();
      value = to_string(v);
      dec = decimal(v);
      sign_known = sgn(v) == 0;
    }
  }
  j["value"] = value;
  j["decimal"] = dec;
  j["sign_known"] = sign_known;
  std::string text = value + "\n" + dec + "\n";
  if (!sign_known) text += "sign: undetermined (magnitude shown)\n";
  Output{g, out}.emit(j, text);
  return ok;
}

int cmd_verify(const Globals& g, std::ostream& out, const std::string& path, int max_gamma) {
  auto f = read_network_file(path);
  if (max_gamma < 0) throw domain_error("--max-gamma must be nonnegative");
  std::vector<std::vector<int>> decs;
  for_each_admissible_decoration(f.net, max_gamma, [&](const std::vector<int>& d) { decs.push_back(d); });

  std::vector<CrossCheckReport> reps(decs.size());
  std::vector<std::exception_ptr> errors(decs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < decs.size();) {
      try {
        auto net = with_decoration(f.net, decs[i]);
        reps[i] = f.orientation ? cross_check(net, to_cg_network({net, f.orientation, f.gates}))
                                : cross_check(net);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int t = std::max(1, std::min<int>(g.threads, static_cast<int>(decs.size())));
    for (int i = 1; i < t; ++i) pool.emplace_back(work);
    work();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  json j{{"checked", decs.size()}, {"mismatches", json::array()}};
  std::ostringstream text;
  int bad = 0;
  for (std::size_t i = 0; i < decs.size(); ++i) {
    if (reps[i].ok) continue;
    ++bad;
    std::string d;
    for (int x : decs[i]) d += (d.empty() ? "" : ",") + std::to_string(x);
    j["mismatches"].push_back({{"decoration", decs[i]}, {"penrose", to_string(reps[i].penrose)},
                               {"cg", to_string(reps[i].cg)}});
    text << "mismatch at [" << d << "]: P = " << to_string(reps[i].penrose) << ", CG = " << to_string(reps[i].cg)
         << "\n";
  }
  text << "checked " << decs.size() << " decorations, " << bad << " mismatches\n";
  Output{g, out}.emit(j, text.str());
  return bad ? domain : ok;
}

int cmd_sixj(const Globals& g, std::ostream& out, const std::vector<int>& v) {
  if (v.size() != 6) throw domain_error("sixj expects six decorations");
  Radical r = sixj({v[0], v[1], v[2], v[3], v[4], v[5]});
  json j{{"input", v}, {"value", r.to_string()}, {"decimal", decimal(r)}};
  Output{g, out}.emit(j, r.to_string() + "\n" + decimal(r) + "\n");
  return ok;
}

SeriesTable run_series(const Globals& g, const NetworkFile& f, int nmax, bool use_float) {
  SeriesOptions so;
  so.mode = use_float ? SeriesMode::float64 : SeriesMode::exact;
  so.threads = g.threads;
  return series_coefficients(f.net, nmax, so);
}

int cmd_series(const Globals& g, std::ostream& out, const std::string& path, int nmax, bool use_float) {
  auto f = read_network_file(path);
  auto t = run_series(g, f, nmax, use_float);
  if (!g.json) {
    out << t.to_csv();
    return ok;
  }
  json rows = json::array();
  std::istringstream csv(t.to_csv());
  std::string line;
  std::getline(csv, line);  // header
  while (std::getline(csv, line)) {
    auto a = line.find(','), b = line.rfind(',');
    rows.push_back({{"n", std::stoi(line.substr(0, a))}, {"value", line.substr(a + 1, b - a - 1)},
                    {"mode", line.substr(b + 1)}});
  }
  out << json{{"rows", rows}}.dump() << '\n';
  return ok;
}

int cmd_rho(const Globals& g, std::ostream& out, const std::string& path, int nmax, bool exact, int stride) {
  auto f = read_network_file(path);
  auto t = run_series(g, f, nmax, !exact);
  out << rho_json(estimate_rho(t, f.net, {stride, 0})) << '\n';
  return ok;
}

int report(const Globals& g, std::ostream& out, std::ostream& err, int code, const char* kind, const std::string& msg) {
  if (g.json)
    out << json{{"error", kind}, {"message", msg}}.dump() << '\n';
  else
    err << "error: " << msg << '\n';
  return code;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Exact evaluation of decorated spin networks", "spinnet"};
  app.require_subcommand(1);
  app.add_flag("--json", g.json, "machine-readable output, errors included");
  app.add_flag("--timings", g.timings, "report wall time on stderr");
  app.add_option("--seed", g.seed, "seed for randomized generators");
  app.add_option("--threads", g.threads, "worker threads; output does not depend on it")->check(CLI::Range(1, 256));
  app.fallthrough();

  std::string path, family, method = "penrose", norm = "P";
  std::vector<int> params, sixj_args;
  std::optional<int> gamma;
  int max_gamma = 2, nmax = 10, stride = 1;
  bool use_float = false, exact = false;

  std::function<int()> action;

  auto* check = app.add_subcommand("check", "admissibility report");
  check->add_option("file", path)->required();
  check->callback([&] { action = [&] { return cmd_check(g, out, path); }; });

  auto* gen = app.add_subcommand("gen", "emit a network file for a family");
  gen->add_option("family", family, "theta, tetrahedron, drum, prism, dumbbell, trivial, cycle_pair, k33, random")
      ->required();
  gen->add_option("params", params);
  gen->add_option("--gamma", gamma, "uniform decoration");
  gen->callback([&] { action = [&] { return cmd_gen(g, out, family, params, gamma); }; });

  auto* orient = app.add_subcommand("orient", "add a smooth orientation and canonical gates");
  orient->add_option("file", path)->required();
  orient->callback([&] { action = [&] { return cmd_orient(out, path); }; });

  auto* eval = app.add_subcommand("eval", "evaluate a network");
  eval->add_option("file", path)->required();
  eval->add_option("--method", method)->check(CLI::IsMember({"penrose", "cg"}));
  eval->add_option("--norm", norm)->check(CLI::IsMember({"P", "S", "U"}));
  eval->callback([&] { action = [&] { return cmd_eval(g, out, path, method, norm); }; });

  auto* verify = app.add_subcommand("verify", "|P| = prod gamma! |CG| over all decorations up to a bound");
  verify->add_option("file", path)->required();
  verify->add_option("--max-gamma", max_gamma);
  verify->callback([&] { action = [&] { return cmd_verify(g, out, path, max_gamma); }; });

  auto* sj = app.add_subcommand("sixj", "6-j symbol of six decorations");
  sj->add_option("decorations", sixj_args)->required()->expected(6);
  sj->callback([&] { action = [&] { return cmd_sixj(g, out, sixj_args); }; });

  auto* series = app.add_subcommand("series", "coefficients S(n gamma) as CSV");
  series->add_option("file", path)->required();
  series->add_option("--nmax", nmax);
  series->add_flag("--float", use_float, "binary64 magnitudes");
  series->callback([&] { action = [&] { return cmd_series(g, out, path, nmax, use_float); }; });

  auto* rho = app.add_subcommand("rho", "spectral radius estimate as JSON");
  rho->add_option("file", path)->required();
  rho->add_option("--nmax", nmax);
  rho->add_flag("--exact", exact, "exact coefficients instead of binary64");
  rho->add_option("--stride", stride)->check(CLI::PositiveNumber);
  rho->callback([&] { action = [&] { return cmd_rho(g, out, path, nmax, exact, stride); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    return report(g, out, err, schema, "usage", e.what());
  }

  const auto t0 = std::chrono::steady_clock::now();
  int code = ok;
  try {
    code = action();
  } catch (const schema_error& e) {
    code = report(g, out, err, schema, "schema", e.what());
  } catch (const structure_error& e) {
    code = report(g, out, err, schema, "schema", e.what());
  } catch (const resource_error& e) {
    code = report(g, out, err, resource, "resource", e.what());
  } catch (const domain_error& e) {
    code = report(g, out, err, domain, "domain", e.what());
  }
  if (g.timings) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    err << "timing: " << format_decimal(ms) << " ms\n";
  }
  return code;
}

} // namespace spinnet::cli

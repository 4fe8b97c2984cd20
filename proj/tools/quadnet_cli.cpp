// Command-line driver: renders equi-M / node-wise / uni-J rasters,
// escape-radius reports, orbits, connectedness loci, bifurcation sweeps,
// fixed-point scans, hyperbolic-component curves, core sets and
// configuration-class reports. Every run writes its outputs plus a JSON
// sidecar with the fully resolved job configuration.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadnet/bifurcation.hpp"
#include "quadnet/ensemble.hpp"
#include "quadnet/escape.hpp"
#include "quadnet/families.hpp"
#include "quadnet/io.hpp"
#include "quadnet/topology.hpp"

using namespace quadnet;
using Clock = std::chrono::steady_clock;

namespace {

struct WindowOpt {
  double re_min, re_max, im_min, im_max;
};

WindowOpt parse_window(const std::string& text) {
  WindowOpt w;
  char comma;
  std::istringstream iss(text);
  if (!(iss >> w.re_min >> comma >> w.re_max >> comma >> w.im_min >> comma >> w.im_max) ||
      !iss.eof())
    throw ConfigError("window", "expected re_min,re_max,im_min,im_max");
  return w;
}

std::pair<int, int> parse_res(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw ConfigError("res", "expected WIDTHxHEIGHT");
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw ConfigError("res", "expected WIDTHxHEIGHT");
  }
}

GridSpec make_grid(const std::string& window, const std::string& res) {
  const WindowOpt w = parse_window(window);
  const auto [width, height] = parse_res(res);
  GridSpec g{w.re_min, w.re_max, w.im_min, w.im_max, width, height};
  g.validate();
  return g;
}

// network source shared by the raster-style commands
struct NetworkOpts {
  std::string file;
  std::string family = "self-drive";
  double a = -1.0, b = -1.0, g = 1.0;
  int clique_n = 2;
  std::vector<int> xy, yx;
  double g_within = 0.5, g_between = -0.5;
  std::string c_text = "0";

  void attach(CLI::App* cmd) {
    cmd->add_option("--network", file, "network JSON file (overrides --family)");
    cmd->add_option("--family", family, "single | simple-dual | self-drive | bipartite")
        ->check(CLI::IsMember({"single", "simple-dual", "self-drive", "bipartite"}));
    cmd->add_option("--a", a, "family parameter a");
    cmd->add_option("--b", b, "family parameter b");
    cmd->add_option("--g", g, "single-node self weight");
    cmd->add_option("--clique-n", clique_n, "bipartite: nodes per clique");
    cmd->add_option("--xy", xy, "bipartite: X<-Y block cells (row-major)");
    cmd->add_option("--yx", yx, "bipartite: Y<-X block cells (row-major)");
    cmd->add_option("--g-within", g_within, "bipartite: within-clique weight");
    cmd->add_option("--g-between", g_between, "bipartite: cross-clique weight");
    cmd->add_option("--c", c_text, "equi-parameter, a+bi form");
  }

  Network build() const {
    FamilySpec spec;
    spec.c = parse_complex(c_text);
    if (!file.empty()) {
      spec.kind = FamilySpec::Kind::explicit_network;
      spec.network = read_network_json(file);
    } else if (family == "single") {
      spec.kind = FamilySpec::Kind::single;
      spec.g = g;
    } else if (family == "simple-dual") {
      spec.kind = FamilySpec::Kind::simple_dual;
      spec.a = a;
    } else if (family == "self-drive") {
      spec.kind = FamilySpec::Kind::self_drive;
      spec.a = a;
      spec.b = b;
    } else {
      spec.kind = FamilySpec::Kind::bipartite;
      spec.clique_n = clique_n;
      spec.xy = xy;
      spec.yx = yx;
      spec.g_within = g_within;
      spec.g_between = g_between;
    }
    return quadnet::build(spec);
  }

  nlohmann::json to_json() const {
    return {{"network_file", file}, {"family", family},     {"a", a},
            {"b", b},              {"g", g},                {"clique_n", clique_n},
            {"xy", xy},            {"yx", yx},              {"g_within", g_within},
            {"g_between", g_between}, {"c", c_text}};
  }
};

// configuration-family options for the ensemble commands
struct FamilyOpts {
  std::string property = "edge-count";
  int n = 3, k = 7;
  int m_xy = 1, m_yx = 3;
  double g = 0.0;  // 0 = default 1/n
  double g_within = 0.5, g_between = -0.5;
  int sample = 0;  // 0 = exhaustive
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", property, "edge-count | bipartite")
        ->check(CLI::IsMember({"edge-count", "bipartite"}));
    cmd->add_option("--n", n, "nodes (edge-count) or per-clique size (bipartite)");
    cmd->add_option("--k", k, "edge count, self-loops included");
    cmd->add_option("--mxy", m_xy, "bipartite: X<-Y edge count");
    cmd->add_option("--myx", m_yx, "bipartite: Y<-X edge count");
    cmd->add_option("--g", g, "uniform edge weight (default 1/n)");
    cmd->add_option("--g-within", g_within, "bipartite within-clique weight");
    cmd->add_option("--g-between", g_between, "bipartite cross-clique weight");
    cmd->add_option("--sample", sample, "sample size (0 = exhaustive enumeration)");
    cmd->add_option("--seed", seed, "sampling seed");
  }

  std::vector<Network> enumerate() const {
    ConfigurationFamily fam =
        property == "edge-count"
            ? ConfigurationFamily::edge_count_family(n, k,
                                                     g != 0.0 ? std::optional<double>(g)
                                                              : std::nullopt)
            : ConfigurationFamily::bipartite_family(n, m_xy, m_yx, g_within, g_between);
    if (sample > 0) fam = fam.sampled(sample, seed);
    return enumerate_configurations(fam);
  }

  nlohmann::json to_json() const {
    return {{"property", property}, {"n", n},     {"k", k},
            {"mxy", m_xy},          {"myx", m_yx}, {"g", g},
            {"g_within", g_within}, {"g_between", g_between},
            {"sample", sample},     {"seed", seed}};
  }
};

void write_sidecar(const std::string& out, const nlohmann::json& job) {
  std::ofstream os(out + ".json");
  os << job.dump(2) << "\n";
}

Palette palette_of(const std::string& name) {
  return name == "banded" ? Palette::banded : Palette::grayscale;
}

int run(int argc, char** argv) {
  CLI::App app{"asymptotic sets for networks of coupled quadratic maps"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "cap worker threads (default: all, or QUADNET_THREADS)");

  // shared per-command state
  std::string window = "-2,1,-1.5,1.5", res = "200x200", out = "out";
  std::string zwindow = "-2,2,-2,2", zres = "200x200";
  std::string palette = "grayscale";
  int iters = 50, node = 1;
  double radius = 20.0, blowup = 1.0;
  NetworkOpts net_opts;
  FamilyOpts fam_opts;

  // per-subcommand defaults for options that bind shared variables; applied
  // after parsing when the flag was not given
  struct Defaulted {
    CLI::App* cmd;
    std::string* target;
    const char* flag;
    std::string value;
  };
  std::vector<Defaulted> defaulted;

  auto add_raster_opts = [&](CLI::App* cmd, const char* default_window) {
    cmd->add_option("--window", window, "re_min,re_max,im_min,im_max");
    defaulted.push_back({cmd, &window, "--window", default_window});
    cmd->add_option("--res", res, "WIDTHxHEIGHT");
    cmd->add_option("--iters", iters, "iteration cap K");
    cmd->add_option("--radius", radius, "escape radius");
    cmd->add_option("--out", out, "output base path");
    cmd->add_option("--palette", palette, "grayscale | banded")
        ->check(CLI::IsMember({"grayscale", "banded"}));
  };

  nlohmann::json job;
  std::map<CLI::App*, std::function<void()>> actions;
  const auto t0 = Clock::now();

  // ---- raster commands
  CLI::App* equi = app.add_subcommand("equi-m", "equi-M escape raster");
  net_opts.attach(equi);
  add_raster_opts(equi, "-2,1,-1.5,1.5");
  actions[equi] = [&] {
    const GridSpec g = make_grid(window, res);
    const EscapeRaster r = equi_m_raster(net_opts.build(), g, iters, radius);
    write_ppm(r, palette_of(palette), out + ".ppm");
    save_escape_raster(r, out);
    job = {{"command", "equi-m"}, {"network", net_opts.to_json()}, {"window", window},
           {"res", res},          {"iters", iters},                {"radius", radius},
           {"palette", palette},  {"out", out}};
    long long bounded = 0;
    for (auto v : r.data) bounded += v < 0;
    std::cout << "equi-m: " << g.width << "x" << g.height << " raster, " << bounded
              << " bounded px, K=" << iters << " Re=" << radius << ", "
              << std::chrono::duration<double>(Clock::now() - t0).count() << " s -> " << out
              << ".ppm\n";
  };

  CLI::App* nodem = app.add_subcommand("node-m", "node-wise equi-M raster");
  net_opts.attach(nodem);
  add_raster_opts(nodem, "-2,1,-1.5,1.5");
  nodem->add_option("--node", node, "node index, 1-based");
  actions[nodem] = [&] {
    const GridSpec g = make_grid(window, res);
    const Network net = net_opts.build();
    if (node < 1 || node > net.n) throw ConfigError("node", "must be in 1..n");
    const EscapeRaster r = node_m_raster(net, node - 1, g, iters, radius);
    write_ppm(r, palette_of(palette), out + ".ppm");
    save_escape_raster(r, out);
    job = {{"command", "node-m"}, {"network", net_opts.to_json()}, {"node", node},
           {"window", window},    {"res", res},                    {"iters", iters},
           {"radius", radius},    {"palette", palette},            {"out", out}};
    long long bounded = 0;
    for (auto v : r.data) bounded += v < 0;
    std::cout << "node-m: node " << node << ", " << bounded << " bounded px -> " << out
              << ".ppm\n";
  };

  CLI::App* unij = app.add_subcommand("uni-j", "uni-J escape raster at fixed equi-parameter");
  net_opts.attach(unij);
  add_raster_opts(unij, "-2,2,-2,2");
  actions[unij] = [&] {
    const GridSpec g = make_grid(window, res);
    Network net = net_opts.build();
    net.set_equi_param(parse_complex(net_opts.c_text));
    const EscapeRaster r = uni_j_raster(net, g, iters, radius);
    write_ppm(r, palette_of(palette), out + ".ppm");
    save_escape_raster(r, out);
    job = {{"command", "uni-j"}, {"network", net_opts.to_json()}, {"window", window},
           {"res", res},         {"iters", iters},                {"radius", radius},
           {"palette", palette}, {"out", out}};
    long long bounded = 0;
    for (auto v : r.data) bounded += v < 0;
    std::cout << "uni-j: c=" << net_opts.c_text << ", " << bounded << " prisoner px -> " << out
              << ".ppm\n";
  };

  // ---- escape radius
  CLI::App* esc = app.add_subcommand("escape-radius", "analytic escape-radius bound");
  net_opts.attach(esc);
  double delta = 0.0;
  esc->add_option("--delta", delta, "dominance margin (default: admissible midpoint)");
  esc->add_option("--out", out, "output base path");
  actions[esc] = [&] {
    const Network net = net_opts.build();
    const double d = delta > 0 ? delta : default_delta(net);
    const EscapeBound b = escape_bound(net, d);
    nlohmann::json rep = {{"delta", b.delta},
                          {"per_node_A", b.per_node_A},
                          {"per_node_M", b.per_node_M},
                          {"external_input", b.external_input},
                          {"M", b.M},
                          {"radius", b.radius}};
    std::ofstream os(out + ".radius.json");
    os << rep.dump(2) << "\n";
    job = {{"command", "escape-radius"}, {"network", net_opts.to_json()}, {"delta", d},
           {"out", out}};
    std::cout << "escape-radius: delta=" << d << " M=" << b.M << " radius=" << b.radius
              << " -> " << out << ".radius.json\n";
  };

  // ---- orbit
  CLI::App* orb = app.add_subcommand("orbit", "iterate a multi-orbit and export CSV");
  net_opts.attach(orb);
  std::string start = "0";
  orb->add_option("--start", start, "start value z0 (diagonal lift) in a+bi form");
  orb->add_option("--iters", iters, "iteration cap");
  orb->add_option("--radius", radius, "escape radius");
  orb->add_option("--out", out, "output base path");
  actions[orb] = [&] {
    Network net = net_opts.build();
    net.set_equi_param(parse_complex(net_opts.c_text));
    const Complex z0 = parse_complex(start);
    const OrbitRecord rec = iterate_orbit(
        net, MultiState(std::vector<Complex>(net.n, z0)), iters, radius);
    std::ofstream os(out + ".csv");
    os << "t";
    for (int j = 0; j < net.n; ++j) os << ",re" << (j + 1) << ",im" << (j + 1);
    os << "\n";
    os.precision(17);
    for (std::size_t t = 0; t < rec.states.size(); ++t) {
      os << t;
      for (int j = 0; j < net.n; ++j)
        os << "," << rec.states[t].values[j].real() << "," << rec.states[t].values[j].imag();
      os << "\n";
    }
    job = {{"command", "orbit"}, {"network", net_opts.to_json()}, {"start", start},
           {"iters", iters},     {"radius", radius},              {"out", out}};
    std::cout << "orbit: " << rec.states.size() - 1 << " steps, "
              << (rec.escape_iter ? "escaped at t=" + std::to_string(*rec.escape_iter)
                                  : std::string("bounded"))
              << " -> " << out << ".csv\n";
  };

  // ---- connectedness locus over c
  CLI::App* locus = app.add_subcommand("connectedness-locus",
                                       "uni-J component counts over the c plane");
  net_opts.attach(locus);
  add_raster_opts(locus, "-2,1,-1.5,1.5");
  locus->add_option("--zwindow", zwindow, "z-plane window");
  locus->add_option("--zres", zres, "z-plane resolution");
  locus->add_option("--blowup", blowup, "blow-up radius in pixels");
  actions[locus] = [&] {
    const GridSpec cg = make_grid(window, res);
    const GridSpec zg = make_grid(zwindow, zres);
    const LocusRaster l =
        uni_j_connectedness_locus(net_opts.build(), cg, zg, iters, radius, blowup);
    write_ppm(l, out + ".ppm");
    detail::write_raw(out + ".i32", l.data);
    job = {{"command", "connectedness-locus"}, {"network", net_opts.to_json()},
           {"window", window},                 {"res", res},
           {"zwindow", zwindow},               {"zres", zres},
           {"iters", iters},                   {"radius", radius},
           {"blowup", blowup},                 {"out", out}};
    std::cout << "connectedness-locus: " << cg.width << "x" << cg.height << " -> " << out
              << ".ppm\n";
  };

  // ---- (a,b) loci
  CLI::App* ab = app.add_subcommand("ab-locus", "(a,b) plane loci for the self-drive family");
  std::string kind = "membership";
  std::string c0_text = "-1";
  ab->add_option("--kind", kind, "membership | connectedness")
      ->check(CLI::IsMember({"membership", "connectedness"}));
  ab->add_option("--c0", c0_text, "equi-parameter to test");
  ab->add_option("--window", window, "(a,b) window");
  defaulted.push_back({ab, &window, "--window", "-2.75,0.75,-2.75,0.75"});
  ab->add_option("--res", res, "resolution");
  ab->add_option("--cwindow", zwindow, "c window (connectedness kind)");
  defaulted.push_back({ab, &zwindow, "--cwindow", "-2,1,-1.5,1.5"});
  ab->add_option("--cres", zres, "c resolution (connectedness kind)");
  ab->add_option("--iters", iters, "iteration cap K");
  ab->add_option("--radius", radius, "escape radius");
  ab->add_option("--blowup", blowup, "blow-up radius in pixels");
  ab->add_option("--out", out, "output base path");
  actions[ab] = [&] {
    const GridSpec abg = make_grid(window, res);
    auto family = [](double a, double b) { return self_drive(a, b); };
    LocusRaster l;
    if (kind == "membership") {
      l = ab_membership_locus(family, abg, parse_complex(c0_text), iters, radius);
    } else {
      const GridSpec cg = make_grid(zwindow, zres);
      l = ab_connectedness_locus(family, abg, cg, iters, radius, blowup);
    }
    write_ppm(l, out + ".ppm");
    detail::write_raw(out + ".i32", l.data);
    job = {{"command", "ab-locus"}, {"kind", kind},     {"c0", c0_text},
           {"window", window},      {"res", res},       {"cwindow", zwindow},
           {"cres", zres},          {"iters", iters},   {"radius", radius},
           {"blowup", blowup},      {"out", out}};
    long long members = 0;
    for (auto v : l.data) members += v > 0;
    std::cout << "ab-locus(" << kind << "): " << members << " positive px -> " << out
              << ".ppm\n";
  };

  // ---- bifurcation sweep
  CLI::App* bif = app.add_subcommand("bifurcation", "1-D real-map bifurcation sweep");
  std::string map_name = "z3-batch4";
  double pmin = -2.5, pmax = 1.0, x0 = 0.0, bound = 100.0, xi0 = 0.0;
  int steps = 2000, transient = 1000, samples = 200;
  bif->add_option("--map", map_name, "z3-batch4 | z2-even | z3-limit")
      ->check(CLI::IsMember({"z3-batch4", "z2-even", "z3-limit"}));
  bif->add_option("--xi0", xi0, "frozen second-node value (z3-limit)");
  bif->add_option("--pmin", pmin, "parameter range start");
  bif->add_option("--pmax", pmax, "parameter range end");
  bif->add_option("--steps", steps, "sweep steps");
  bif->add_option("--transient", transient, "discarded iterations");
  bif->add_option("--samples", samples, "recorded attractor samples");
  bif->add_option("--x0", x0, "initial condition");
  bif->add_option("--bound", bound, "escape bound");
  bif->add_option("--out", out, "output base path");
  auto family_of = [&]() -> RealMapFamily {
    if (map_name == "z3-batch4") return z3_batch4_family();
    if (map_name == "z2-even") return z2_even_family();
    return z3_limit_family(xi0);
  };
  actions[bif] = [&] {
    const BifurcationSweep sw = sweep(family_of(), pmin, pmax, steps, transient, samples, x0,
                                      bound);
    std::ofstream os(out + ".csv");
    os.precision(17);
    os << "p,escaped,samples...\n";
    for (std::size_t i = 0; i < sw.param_values.size(); ++i) {
      os << sw.param_values[i] << "," << (sw.entries[i].escaped ? 1 : 0);
      for (double v : sw.entries[i].attractor_samples) os << "," << v;
      os << "\n";
    }
    job = {{"command", "bifurcation"}, {"map", map_name},  {"xi0", xi0},
           {"pmin", pmin},             {"pmax", pmax},     {"steps", steps},
           {"transient", transient},   {"samples", samples}, {"x0", x0},
           {"bound", bound},           {"out", out}};
    long long escaped = 0;
    for (const auto& e : sw.entries) escaped += e.escaped;
    std::cout << "bifurcation(" << map_name << "): " << steps << " steps, " << escaped
              << " escaped -> " << out << ".csv\n";
  };

  // ---- fixed-point scan
  CLI::App* scan = app.add_subcommand("fixed-scan", "fixed-point branches with LP/PD events");
  double newton_tol = 1e-7;
  scan->add_option("--map", map_name, "z3-batch4 | z2-even | z3-limit")
      ->check(CLI::IsMember({"z3-batch4", "z2-even", "z3-limit"}));
  scan->add_option("--xi0", xi0, "frozen second-node value (z3-limit)");
  scan->add_option("--pmin", pmin, "parameter range start");
  scan->add_option("--pmax", pmax, "parameter range end");
  scan->add_option("--steps", steps, "scan steps");
  scan->add_option("--tol", newton_tol, "event refinement tolerance");
  scan->add_option("--out", out, "output base path");
  actions[scan] = [&] {
    const auto recs = fixed_point_scan(family_of(), pmin, pmax, steps, newton_tol);
    std::ofstream os(out + ".csv");
    os.precision(17);
    os << "p,xi,fprime,stable,event\n";
    int events = 0;
    for (const auto& r : recs) {
      const char* ev = r.event == BifurcationEvent::LP   ? "LP"
                       : r.event == BifurcationEvent::PD ? "PD"
                                                         : "";
      if (r.event != BifurcationEvent::None) ++events;
      os << r.p << "," << r.xi << "," << r.fprime << "," << (r.stable ? 1 : 0) << "," << ev
         << "\n";
    }
    job = {{"command", "fixed-scan"}, {"map", map_name}, {"xi0", xi0},   {"pmin", pmin},
           {"pmax", pmax},            {"steps", steps},  {"tol", newton_tol}, {"out", out}};
    std::cout << "fixed-scan(" << map_name << "): " << recs.size() << " rows, " << events
              << " events -> " << out << ".csv\n";
  };

  // ---- hyperbolic curves
  CLI::App* curves = app.add_subcommand("hyperbolic-curves",
                                        "cardioid and dual fixed-point boundary curves");
  double curve_a = -1.0 / 3.0;
  int curve_samples = 720;
  curves->add_option("--a", curve_a, "cross-talk parameter");
  curves->add_option("--samples", curve_samples, "samples per curve");
  curves->add_option("--out", out, "output base path");
  actions[curves] = [&] {
    std::ofstream os(out + ".csv");
    os.precision(17);
    os << "curve,parameter,re,im,branch\n";
    for (const CurveSample& s : sample_cardioid(curve_samples))
      os << "cardioid," << s.parameter << "," << s.point.real() << "," << s.point.imag()
         << ",0\n";
    for (const CurveSample& s : sample_dual_curves(curve_a, curve_samples))
      os << "dual," << s.parameter << "," << s.point.real() << "," << s.point.imag() << ","
         << s.branch << "\n";
    job = {{"command", "hyperbolic-curves"}, {"a", curve_a}, {"samples", curve_samples},
           {"out", out}};
    std::cout << "hyperbolic-curves: a=" << curve_a << ", " << curve_samples
              << " samples/curve -> " << out << ".csv\n";
  };

  // ---- core sets
  CLI::App* coreuj = app.add_subcommand("core-uni-j", "configuration-averaged uni-J fractions");
  fam_opts.attach(coreuj);
  std::string core_c = "-1.15+0.26i";
  coreuj->add_option("--c", core_c, "equi-parameter");
  add_raster_opts(coreuj, "-2,2,-2,2");
  actions[coreuj] = [&] {
    const GridSpec g = make_grid(window, res);
    const auto nets = fam_opts.enumerate();
    const FractionRaster fr = core_uni_j(nets, parse_complex(core_c), g, iters, radius);
    save_fraction_raster(fr, out);
    write_ppm(fr, out + ".ppm");
    job = {{"command", "core-uni-j"}, {"family", fam_opts.to_json()}, {"c", core_c},
           {"window", window},        {"res", res},                   {"iters", iters},
           {"radius", radius},        {"out", out}};
    long long core = 0;
    for (double v : fr.data) core += v == 1.0;
    std::cout << "core-uni-j: " << nets.size() << " configs, " << core << " core px -> " << out
              << ".f64\n";
  };

  CLI::App* coreem = app.add_subcommand("core-equi-m",
                                        "configuration-averaged equi-M fractions");
  fam_opts.attach(coreem);
  add_raster_opts(coreem, "-2,1,-1.5,1.5");
  actions[coreem] = [&] {
    const GridSpec g = make_grid(window, res);
    const auto nets = fam_opts.enumerate();
    const FractionRaster fr = core_equi_m(nets, g, iters, radius);
    save_fraction_raster(fr, out);
    write_ppm(fr, out + ".ppm");
    job = {{"command", "core-equi-m"}, {"family", fam_opts.to_json()}, {"window", window},
           {"res", res},               {"iters", iters},               {"radius", radius},
           {"out", out}};
    long long core = 0;
    for (double v : fr.data) core += v == 1.0;
    std::cout << "core-equi-m: " << nets.size() << " configs, " << core << " core px -> "
              << out << ".f64\n";
  };

  // ---- classes and invariance
  CLI::App* classes = app.add_subcommand("classes",
                                         "spectral and asymptotic configuration classes");
  fam_opts.attach(classes);
  classes->add_option("--c", core_c, "equi-parameter for the asymptotic partition");
  add_raster_opts(classes, "-2,2,-2,2");
  actions[classes] = [&] {
    const GridSpec g = make_grid(window, res);
    const auto nets = fam_opts.enumerate();
    const ClassPartition spec = partition_spectral(nets);
    const ClassPartition asym =
        partition_asymptotic(nets, parse_complex(core_c), g, iters, radius);
    std::ofstream os(out + ".csv");
    os << "config_hex,spectral_class,asymptotic_class\n";
    for (std::size_t i = 0; i < nets.size(); ++i)
      os << adjacency_hex(nets[i]) << "," << spec.class_of[i] << "," << asym.class_of[i]
         << "\n";
    job = {{"command", "classes"}, {"family", fam_opts.to_json()}, {"c", core_c},
           {"window", window},     {"res", res},                   {"iters", iters},
           {"radius", radius},     {"out", out}};
    std::cout << "classes: " << nets.size() << " configs, " << spec.num_classes
              << " spectral, " << asym.num_classes << " asymptotic -> " << out << ".csv\n";
  };

  CLI::App* inv = app.add_subcommand("invariance",
                                     "asymptotic-class invariance across equi-parameters");
  fam_opts.attach(inv);
  std::vector<std::string> c_list{"-1.15+0.26i", "-0.13+1i"};
  inv->add_option("--c", c_list, "equi-parameters (two or more)");
  add_raster_opts(inv, "-2,2,-2,2");
  actions[inv] = [&] {
    const GridSpec g = make_grid(window, res);
    const auto nets = fam_opts.enumerate();
    std::vector<Complex> cs;
    for (const std::string& t : c_list) cs.push_back(parse_complex(t));
    const InvarianceReport rep = class_invariance_experiment(nets, cs, g, iters, radius);
    nlohmann::json jrep = {{"all_identical", rep.all_identical}};
    if (rep.first_diff)
      jrep["first_diff"] = {{"c_index_a", rep.first_diff->c_index_a},
                            {"c_index_b", rep.first_diff->c_index_b},
                            {"config_a", rep.first_diff->config_a},
                            {"config_b", rep.first_diff->config_b}};
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : rep.partitions) parts.push_back(canonical_partition(p.class_of));
    jrep["partitions"] = parts;
    std::ofstream os(out + ".invariance.json");
    os << jrep.dump(2) << "\n";
    job = {{"command", "invariance"}, {"family", fam_opts.to_json()}, {"c_list", c_list},
           {"window", window},        {"res", res},                   {"iters", iters},
           {"radius", radius},        {"out", out}};
    std::cout << "invariance: " << nets.size() << " configs, "
              << (rep.all_identical ? "identical partitions" : "partitions differ") << " -> "
              << out << ".invariance.json\n";
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // configuration error
  }

  // thread cap: flag, then environment, then all cores
  if (threads <= 0) {
    if (const char* env = std::getenv("QUADNET_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) omp_set_num_threads(threads);

  for (CLI::App* sub : app.get_subcommands()) {
    for (const Defaulted& d : defaulted)
      if (d.cmd == sub && sub->count(d.flag) == 0) *d.target = d.value;
    const auto it = actions.find(sub);
    if (it != actions.end()) it->second();
  }
  if (!job.is_null()) {
    job["threads"] = threads;
    write_sidecar(out, job);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

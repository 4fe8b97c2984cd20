#pragma once

// 1-D real-map bifurcation sweeps, boundedness windows and fixed-point
// stability scans for the composed node maps of the self-drive family at
// c = -1 (z1 alternates 0, -1; z1 + z2 cycles 0, -2, -1, -1):
//
//   z3_batch4(b): f4 o f3 o f2 o f1 with f1(x) = b^2 x^2 - 1,
//                 f2(x) = (b x - 2)^2 - 1, f3(x) = f4(x) = (b x - 1)^2 - 1
//   z2_even(a):   (x^2 - 1 - a)^2 - 1, the two-step composition
//                 x -> x^2 - 1 -> (x^2 - 1 - a)^2 - 1 of the second node
//   z3_limit(b):  (xi0 + b x)^2 - 1 for a frozen second-node value xi0

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "quadnet/network.hpp"

namespace quadnet {

struct RealMapFamily {
  enum class Kind { z3_batch4, z2_even, z3_limit };
  Kind kind = Kind::z2_even;
  double xi0 = 0.0;  // z3_limit only

  double eval(double p, double x) const {
    switch (kind) {
      case Kind::z3_batch4: {
        double y = p * p * x * x - 1.0;
        y = (p * y - 2.0) * (p * y - 2.0) - 1.0;
        y = (p * y - 1.0) * (p * y - 1.0) - 1.0;
        y = (p * y - 1.0) * (p * y - 1.0) - 1.0;
        return y;
      }
      case Kind::z2_even: {
        const double u = x * x - 1.0 - p;
        return u * u - 1.0;
      }
      case Kind::z3_limit: {
        const double u = xi0 + p * x;
        return u * u - 1.0;
      }
    }
    return 0.0;
  }

  // d/dx by the chain rule on the composition
  double deriv(double p, double x) const {
    switch (kind) {
      case Kind::z3_batch4: {
        const double y1 = p * p * x * x - 1.0;
        const double d1 = 2.0 * p * p * x;
        const double y2 = (p * y1 - 2.0) * (p * y1 - 2.0) - 1.0;
        const double d2 = 2.0 * p * (p * y1 - 2.0);
        const double y3 = (p * y2 - 1.0) * (p * y2 - 1.0) - 1.0;
        const double d3 = 2.0 * p * (p * y2 - 1.0);
        const double d4 = 2.0 * p * (p * y3 - 1.0);
        return d4 * d3 * d2 * d1;
      }
      case Kind::z2_even:
        return 4.0 * x * (x * x - 1.0 - p);
      case Kind::z3_limit:
        return 2.0 * p * (xi0 + p * x);
    }
    return 0.0;
  }
};

inline RealMapFamily z3_batch4_family() { return {RealMapFamily::Kind::z3_batch4, 0.0}; }
inline RealMapFamily z2_even_family() { return {RealMapFamily::Kind::z2_even, 0.0}; }
inline RealMapFamily z3_limit_family(double xi0) { return {RealMapFamily::Kind::z3_limit, xi0}; }

struct BifurcationSweep {
  std::vector<double> param_values;
  struct Entry {
    bool escaped = false;
    std::vector<double> attractor_samples;
  };
  std::vector<Entry> entries;
  int transient = 0, samples = 0;
  double x0 = 0.0, bound = 0.0;
};

// Per parameter: iterate from x0, discard T iterates, record the next S.
// Escaped as soon as |x| exceeds B; escaped entries keep no samples.
inline BifurcationSweep sweep(const RealMapFamily& fam, double p_min, double p_max, int steps,
                              int transient, int samples, double x0, double bound) {
  if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
  if (transient < 1 || samples < 1) throw std::invalid_argument("sweep: T and S must be >= 1");
  if (!(bound > 0)) throw std::invalid_argument("sweep: escape bound must be > 0");
  BifurcationSweep sw;
  sw.transient = transient;
  sw.samples = samples;
  sw.x0 = x0;
  sw.bound = bound;
  sw.param_values.resize(steps);
  sw.entries.resize(steps);
  for (int i = 0; i < steps; ++i)
    sw.param_values[i] = p_min + (p_max - p_min) * i / (steps - 1.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < steps; ++i) {
    const double p = sw.param_values[i];
    double x = x0;
    bool esc = false;
    for (int t = 0; t < transient && !esc; ++t) {
      x = fam.eval(p, x);
      if (!(std::abs(x) <= bound)) esc = true;
    }
    if (!esc) {
      auto& smp = sw.entries[i].attractor_samples;
      smp.reserve(samples);
      for (int t = 0; t < samples; ++t) {
        x = fam.eval(p, x);
        if (!(std::abs(x) <= bound)) {
          esc = true;
          smp.clear();
          break;
        }
        smp.push_back(x);
      }
    }
    sw.entries[i].escaped = esc;
  }
  return sw;
}

namespace detail {

inline bool orbit_bounded(const RealMapFamily& fam, double p, double x0, int t_max, double bound) {
  double x = x0;
  for (int t = 0; t < t_max; ++t) {
    x = fam.eval(p, x);
    if (!(std::abs(x) <= bound)) return false;
  }
  return true;
}

}  // namespace detail

struct Interval {
  double lo = 0.0, hi = 0.0;
};

// Maximal parameter intervals on which the orbit of x0 stays within |x| <= B
// for t_max iterations; endpoints refined by bisection to refine_tol.
inline std::vector<Interval> bounded_windows(const RealMapFamily& fam, double p_min, double p_max,
                                             int coarse_steps, double refine_tol, double x0,
                                             int t_max, double bound) {
  if (coarse_steps < 2) throw std::invalid_argument("bounded_windows: coarse_steps must be >= 2");
  if (!(refine_tol > 0)) throw std::invalid_argument("bounded_windows: refine_tol must be > 0");
  std::vector<std::uint8_t> ok(coarse_steps);
  std::vector<double> ps(coarse_steps);
  for (int i = 0; i < coarse_steps; ++i)
    ps[i] = p_min + (p_max - p_min) * i / (coarse_steps - 1.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < coarse_steps; ++i)
    ok[i] = detail::orbit_bounded(fam, ps[i], x0, t_max, bound) ? 1 : 0;

  auto refine = [&](double bad, double good) {
    for (int it = 0; it < 80 && std::abs(good - bad) > refine_tol; ++it) {
      const double mid = 0.5 * (bad + good);
      if (mid == bad || mid == good) break;
      if (detail::orbit_bounded(fam, mid, x0, t_max, bound))
        good = mid;
      else
        bad = mid;
    }
    return good;
  };

  std::vector<Interval> out;
  int i = 0;
  while (i < coarse_steps) {
    if (!ok[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < coarse_steps && ok[j + 1]) ++j;
    Interval iv{ps[i], ps[j]};
    if (i > 0) iv.lo = refine(ps[i - 1], ps[i]);
    if (j + 1 < coarse_steps) iv.hi = refine(ps[j + 1], ps[j]);
    out.push_back(iv);
    i = j + 1;
  }
  return out;
}

enum class BifurcationEvent { None, LP, PD };

struct FixedPointRecord {
  double p = 0.0;       // parameter value
  double xi = 0.0;      // fixed point
  double fprime = 0.0;  // multiplier f'(xi)
  bool stable = false;
  BifurcationEvent event = BifurcationEvent::None;
};

namespace detail {

// All fixed points of x -> fam(p, x) inside [-span, span], located by a
// dense sign scan of f(x) - x plus bisection and a Newton polish.
inline std::vector<double> fixed_points_at(const RealMapFamily& fam, double p, double span,
                                           int scan_points, double tol) {
  std::vector<double> roots;
  double xa = -span;
  double fa = fam.eval(p, xa) - xa;
  const double dx = 2.0 * span / (scan_points - 1.0);
  for (int i = 1; i < scan_points; ++i) {
    const double xb = -span + i * dx;
    const double fb = fam.eval(p, xb) - xb;
    if (std::isfinite(fa) && std::isfinite(fb) && fa * fb <= 0.0 && (fa != 0.0 || fb != 0.0)) {
      double a = xa, b = xb, va = fa;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        const double vm = fam.eval(p, m) - m;
        if (va * vm <= 0.0)
          b = m;
        else {
          a = m;
          va = vm;
        }
        if (b - a < tol) break;
      }
      double r = 0.5 * (a + b);
      for (int it = 0; it < 8; ++it) {  // Newton polish
        const double g = fam.eval(p, r) - r;
        const double dg = fam.deriv(p, r) - 1.0;
        if (dg == 0.0) break;
        const double step = g / dg;
        if (!std::isfinite(step) || std::abs(step) > dx) break;
        r -= step;
      }
      if (roots.empty() || std::abs(r - roots.back()) > 4.0 * tol) roots.push_back(r);
    }
    xa = xb;
    fa = fb;
  }
  return roots;
}

}  // namespace detail

// Fixed-point branches over a parameter grid with LP (multiplier through +1)
// and PD (through -1) events, bisection-refined in p to newton_tol. Records
// one row per (p, branch) sample; event rows carry the refined location.
inline std::vector<FixedPointRecord> fixed_point_scan(const RealMapFamily& fam, double p_min,
                                                      double p_max, int steps, double newton_tol,
                                                      double span = 8.0, int scan_points = 4001) {
  if (steps < 2) throw std::invalid_argument("fixed_point_scan: steps must be >= 2");
  std::vector<FixedPointRecord> out;
  std::vector<double> prev_roots;
  std::vector<double> prev_mult;
  double prev_p = p_min;

  auto multiplier_at = [&](double p, double seed) -> std::optional<std::pair<double, double>> {
    // track the fixed point near `seed` at parameter p
    double r = seed;
    for (int it = 0; it < 60; ++it) {
      const double g = fam.eval(p, r) - r;
      const double dg = fam.deriv(p, r) - 1.0;
      if (dg == 0.0) break;
      const double step = g / dg;
      if (!std::isfinite(step)) return std::nullopt;
      r -= step;
      if (std::abs(step) < 1e-14) break;
    }
    if (!std::isfinite(r) || std::abs(fam.eval(p, r) - r) > 1e-8) return std::nullopt;
    return std::make_pair(r, fam.deriv(p, r));
  };

  // refine a fold: bisect in p on existence of a fixed point near `seed`
  auto refine_fold =
      [&](double p_exists, double p_gone,
          double seed) -> std::optional<std::pair<double, double>> {
    const double window = 0.08;
    auto near_root = [&](double p, double center) -> std::optional<double> {
      const auto roots = detail::fixed_points_at(fam, p, span, scan_points, 1e-13);
      std::optional<double> best;
      for (double r : roots)
        if (std::abs(r - center) < window && (!best || std::abs(r - center) < std::abs(*best - center)))
          best = r;
      return best;
    };
    double last_root = seed;
    for (int it = 0; it < 60 && std::abs(p_gone - p_exists) > newton_tol; ++it) {
      const double pm = 0.5 * (p_exists + p_gone);
      if (const auto r = near_root(pm, last_root)) {
        p_exists = pm;
        last_root = *r;
      } else {
        p_gone = pm;
      }
    }
    // at a genuine fold the surviving multiplier tends to +1
    if (std::abs(fam.deriv(p_exists, last_root) - 1.0) > 0.05) return std::nullopt;
    return std::make_pair(p_exists, last_root);
  };

  for (int i = 0; i < steps; ++i) {
    const double p = p_min + (p_max - p_min) * i / (steps - 1.0);
    const std::vector<double> roots = detail::fixed_points_at(fam, p, span, scan_points, 1e-13);
    std::vector<double> mult(roots.size());
    for (std::size_t r = 0; r < roots.size(); ++r) mult[r] = fam.deriv(p, roots[r]);

    // branch deaths (folds crossed between prev_p and p): previous roots
    // with no successor nearby
    if (i > 0) {
      const double near = 0.06;
      std::vector<bool> died(prev_roots.size(), true);
      for (std::size_t q = 0; q < prev_roots.size(); ++q)
        for (double r : roots)
          if (std::abs(r - prev_roots[q]) < near) died[q] = false;
      for (std::size_t q = 0; q < prev_roots.size(); ++q) {
        if (!died[q]) continue;
        // the merging pair dies together; report the fold once
        if (q > 0 && died[q - 1] && std::abs(prev_roots[q] - prev_roots[q - 1]) < 2 * near)
          continue;
        if (const auto pe = refine_fold(prev_p, p, prev_roots[q])) {
          FixedPointRecord evrec{pe->first, pe->second, fam.deriv(pe->first, pe->second),
                                 false, BifurcationEvent::LP};
          out.push_back(evrec);
        }
      }
      // branch births: current roots with no ancestor nearby
      std::vector<bool> born(roots.size(), true);
      for (std::size_t r = 0; r < roots.size(); ++r)
        for (double q : prev_roots)
          if (std::abs(roots[r] - q) < near) born[r] = false;
      for (std::size_t r = 0; r < roots.size(); ++r) {
        if (!born[r]) continue;
        if (r > 0 && born[r - 1] && std::abs(roots[r] - roots[r - 1]) < 2 * near) continue;
        if (const auto pe = refine_fold(p, prev_p, roots[r])) {
          FixedPointRecord evrec{pe->first, pe->second, fam.deriv(pe->first, pe->second),
                                 false, BifurcationEvent::LP};
          out.push_back(evrec);
        }
      }
    }

    for (std::size_t r = 0; r < roots.size(); ++r) {
      FixedPointRecord rec{p, roots[r], mult[r], std::abs(mult[r]) < 1.0, BifurcationEvent::None};
      // match against the previous step's branches and look for +-1 crossings
      if (!prev_roots.empty()) {
        std::size_t best = 0;
        double bd = std::abs(roots[r] - prev_roots[0]);
        for (std::size_t q = 1; q < prev_roots.size(); ++q) {
          const double d = std::abs(roots[r] - prev_roots[q]);
          if (d < bd) {
            bd = d;
            best = q;
          }
        }
        if (bd < 0.25) {
          for (const auto [target, ev] :
               {std::pair{1.0, BifurcationEvent::LP}, std::pair{-1.0, BifurcationEvent::PD}}) {
            if ((prev_mult[best] - target) * (mult[r] - target) < 0.0) {
              // bisect the crossing parameter along the branch
              double pa = prev_p, pb = p;
              double seed = prev_roots[best];
              double va = prev_mult[best] - target;
              for (int it = 0; it < 80 && pb - pa > newton_tol; ++it) {
                const double pm = 0.5 * (pa + pb);
                const auto fm = multiplier_at(pm, seed);
                if (!fm) break;
                const double vm = fm->second - target;
                if (va * vm <= 0.0)
                  pb = pm;
                else {
                  pa = pm;
                  va = vm;
                  seed = fm->first;
                }
              }
              const double pe = 0.5 * (pa + pb);
              const auto fe = multiplier_at(pe, seed);
              FixedPointRecord evrec{pe, fe ? fe->first : roots[r], fe ? fe->second : target,
                                     false, ev};
              evrec.stable = std::abs(evrec.fprime) < 1.0;
              out.push_back(evrec);
            }
          }
        }
      }
      out.push_back(rec);
    }
    prev_roots = roots;
    prev_mult = mult;
    prev_p = p;
  }
  return out;
}

// Detection of (pre)periodic critical orbits by exact return within tol.
struct PeriodicityReport {
  enum class Kind { periodic, preperiodic, neither } kind = Kind::neither;
  int preperiod = 0, period = 0;
};

namespace detail {

// Minimal period p and preperiod s such that x(t+p) = x(t) within tol for
// every recorded t >= s, verified over at least one full extra period. A
// single revisited value is not enough: node sequences are driven by the
// other nodes, so the whole tail has to repeat.
inline PeriodicityReport classify_sequence(const std::vector<double>& xs, double tol) {
  const int len = static_cast<int>(xs.size());
  for (int p = 1; 2 * p < len; ++p) {
    int s = len - p;  // first index from which the tail is p-periodic
    while (s > 0 && std::abs(xs[s - 1 + p] - xs[s - 1]) <= tol) --s;
    // the periodic tail must dominate the record, not just echo a value
    if (len - s >= std::max(2 * p, len / 2)) {
      PeriodicityReport r;
      r.preperiod = s;
      r.period = p;
      r.kind = (s == 0) ? PeriodicityReport::Kind::periodic
                        : PeriodicityReport::Kind::preperiodic;
      return r;
    }
  }
  return {};
}

}  // namespace detail

inline PeriodicityReport superattracting_check(const RealMapFamily& fam, double p, double x0 = 0.0,
                                               int max_iter = 200, double tol = 1e-9) {
  std::vector<double> xs{x0};
  double x = x0;
  for (int t = 1; t <= max_iter; ++t) {
    x = fam.eval(p, x);
    if (!std::isfinite(x) || std::abs(x) > 1e8) return {};
    xs.push_back(x);
  }
  return detail::classify_sequence(xs, tol);
}

// Raw per-step sequence of one node's critical orbit; requires real
// dynamics (real weights and parameters).
inline PeriodicityReport superattracting_check(const Network& net, int node_index,
                                               int max_iter = 200, double tol = 1e-9) {
  if (node_index < 0 || node_index >= net.n)
    throw std::out_of_range("superattracting_check: node index out of range");
  for (const Complex& c : net.params)
    if (c.imag() != 0.0)
      throw std::invalid_argument("superattracting_check: parameters must be real");
  const std::vector<double> eff = net.effective_weights();
  std::vector<Complex> cur(net.n, Complex{0, 0}), nxt(net.n);
  std::vector<std::uint8_t> ocur(net.n, 0), onxt(net.n);
  std::vector<double> xs{0.0};
  for (int t = 1; t <= max_iter; ++t) {
    step_into(net.n, eff, net.params, cur, ocur, nxt, onxt);
    if (onxt[node_index] || std::abs(nxt[node_index]) > 1e8) return {};
    xs.push_back(nxt[node_index].real());
    cur.swap(nxt);
    ocur.swap(onxt);
  }
  return detail::classify_sequence(xs, tol);
}

}  // namespace quadnet

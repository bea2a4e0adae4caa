#include "hsk/zero_finding.hpp"

#include <algorithm>
#include <cmath>

#include "hsk/errors.hpp"

namespace hsk {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

struct boundary_too_close {};

// Phase change of f along path(t), t in [t0,t1], by adaptive bisection.
// Each accepted step must turn by less than 1 radian.
double phase_change(const CFn& f, const std::function<cplx(double)>& path, double t0, double t1,
                    cplx f0, cplx f1, double floor_abs, int depth) {
  if (std::abs(f0) < floor_abs || std::abs(f1) < floor_abs) throw boundary_too_close{};
  double d = std::arg(f1 / f0);
  if (std::abs(d) < 1.0) return d;
  if (depth > 48) throw boundary_too_close{};
  double tm = 0.5 * (t0 + t1);
  cplx fm = f(path(tm));
  return phase_change(f, path, t0, tm, f0, fm, floor_abs, depth + 1) +
         phase_change(f, path, tm, t1, fm, f1, floor_abs, depth + 1);
}

// Winding of f along a closed path given by samples path(j/n), j = 0..n.
double closed_path_winding(const CFn& f, const std::function<cplx(double)>& path, int n,
                           double floor_rel) {
  std::vector<cplx> vals(n + 1);
  double scale = 0.0;
  for (int j = 0; j <= n; ++j) {
    vals[j] = f(path(static_cast<double>(j) / n));
    scale = std::max(scale, std::abs(vals[j]));
  }
  double floor_abs = floor_rel * (scale + 1e-300);
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    total += phase_change(f, path, static_cast<double>(j) / n, static_cast<double>(j + 1) / n,
                          vals[j], vals[j + 1], floor_abs, 0);
  }
  return total / two_pi;
}

int winding_as_integer(double w) {
  long r = std::lround(w);
  if (std::abs(w - static_cast<double>(r)) > 0.15) throw boundary_too_close{};
  return static_cast<int>(r);
}

struct Cell {
  double x0, y0, dx, dy;  // in region coordinates
};

struct FoundZero {
  cplx z;
  int mult;
};

class ZeroSearch {
 public:
  ZeroSearch(const CFn& f, const CFn* fprime, const Parallelogram& region,
             const std::vector<PoleSpec>& poles, const ZeroFindOptions& opts)
      : f_(f), fprime_(fprime), region_(region), poles_(poles), opts_(opts) {}

  ZeroFindResult run() {
    int winding = cell_winding({0.0, 0.0, 1.0, 1.0});
    int pole_total = 0;
    for (const auto& p : poles_) {
      auto [x, y] = region_.coords(p.location);
      if (x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0) pole_total += p.order;
    }
    int zero_total = winding + pole_total;
    if (zero_total < 0) {
      throw numerical_error("find_zeros: negative zero count; declared pole orders are wrong");
    }
    found_.clear();
    if (zero_total > 0) process({0.0, 0.0, 1.0, 1.0}, zero_total, 0);
    cluster_multiples();

    ZeroFindResult res;
    for (const auto& fz : found_) {
      res.zeros.push_back(fz.z);
      res.multiplicities.push_back(fz.mult);
      res.count += fz.mult;
    }
    if (res.count != zero_total) {
      throw boundary_too_close{};  // retried by the caller with a jiggled contour
    }
    return res;
  }

 private:
  int poles_in_cell(const Cell& c) const {
    int n = 0;
    for (const auto& p : poles_) {
      auto [x, y] = region_.coords(p.location);
      if (x > c.x0 && x < c.x0 + c.dx && y > c.y0 && y < c.y0 + c.dy) n += p.order;
    }
    return n;
  }

  int cell_winding(const Cell& c) const {
    auto path = [&](double t) -> cplx {
      double s = t * 4.0;
      if (s < 1.0) return region_.point(c.x0 + s * c.dx, c.y0);
      if (s < 2.0) return region_.point(c.x0 + c.dx, c.y0 + (s - 1.0) * c.dy);
      if (s < 3.0) return region_.point(c.x0 + (3.0 - s) * c.dx, c.y0 + c.dy);
      return region_.point(c.x0, c.y0 + (4.0 - s) * c.dy);
    };
    double w = closed_path_winding(f_, path, 4 * opts_.boundary_samples, opts_.boundary_floor);
    return winding_as_integer(w);
  }

  // Split fraction that keeps declared poles away from the new interior edges.
  double pick_split(double lo, double len, bool xdir) const {
    for (double frac : {0.5, 0.47, 0.545, 0.42, 0.58}) {
      double line = lo + frac * len;
      bool clean = true;
      for (const auto& p : poles_) {
        auto [x, y] = region_.coords(p.location);
        double coord = xdir ? x : y;
        if (std::abs(coord - line) < 5e-4 * len) {
          clean = false;
          break;
        }
      }
      if (clean) return frac;
    }
    return 0.513;
  }

  void process(const Cell& c, int zero_count, int depth) {
    if (zero_count == 0) return;
    double size = std::max(c.dx, c.dy);
    if (size < opts_.refine_size || depth > 26) {
      refine_cell(c, zero_count);
      return;
    }
    double fx = pick_split(c.x0, c.dx, true);
    double fy = pick_split(c.y0, c.dy, false);
    Cell sub[4] = {{c.x0, c.y0, c.dx * fx, c.dy * fy},
                   {c.x0 + c.dx * fx, c.y0, c.dx * (1.0 - fx), c.dy * fy},
                   {c.x0, c.y0 + c.dy * fy, c.dx * fx, c.dy * (1.0 - fy)},
                   {c.x0 + c.dx * fx, c.y0 + c.dy * fy, c.dx * (1.0 - fx), c.dy * (1.0 - fy)}};
    int assigned = 0;
    int counts[4];
    for (int i = 0; i < 4; ++i) {
      counts[i] = cell_winding(sub[i]) + poles_in_cell(sub[i]);
      assigned += counts[i];
    }
    if (assigned != zero_count) throw boundary_too_close{};  // a zero sits on a split line
    for (int i = 0; i < 4; ++i) process(sub[i], counts[i], depth + 1);
  }

  cplx derivative(cplx z, double h) const {
    if (fprime_) return (*fprime_)(z);
    return (f_(z + h) - f_(z - h)) / (2.0 * h);
  }

  bool newton(cplx seed, double cell_scale, cplx* out) const {
    cplx z = seed;
    double h = 1e-7 * region_.diameter();
    double target = opts_.zero_tol * std::max(1.0, cell_scale);
    cplx fz = f_(z);
    for (int it = 0; it < 80; ++it) {
      if (std::abs(fz) < target) {
        *out = z;
        return true;
      }
      cplx d = derivative(z, h);
      if (std::abs(d) == 0.0) return false;
      cplx step = fz / d;
      // damped update
      for (int half = 0; half < 8; ++half) {
        cplx zn = z - step;
        cplx fn = f_(zn);
        if (std::abs(fn) < std::abs(fz) || half == 7) {
          z = zn;
          fz = fn;
          break;
        }
        step *= 0.5;
      }
      if (std::abs(z - seed) > 4.0 * region_.diameter()) return false;
    }
    return std::abs(fz) < 10.0 * target && (*out = z, true);
  }

  void cluster_multiples() {
    if (opts_.cluster_tol <= opts_.dedup_tol) return;
    std::vector<FoundZero> merged;
    std::vector<bool> used(found_.size(), false);
    for (size_t i = 0; i < found_.size(); ++i) {
      if (used[i]) continue;
      cplx sum = found_[i].z;
      int mult = found_[i].mult;
      int n = 1;
      for (size_t j = i + 1; j < found_.size(); ++j) {
        if (!used[j] && std::abs(found_[j].z - found_[i].z) < opts_.cluster_tol) {
          used[j] = true;
          sum += found_[j].z;
          mult += found_[j].mult;
          ++n;
        }
      }
      merged.push_back({sum / static_cast<double>(n), mult});
    }
    found_ = std::move(merged);
  }

  void record(cplx z, int mult) {
    for (auto& fz : found_) {
      if (std::abs(fz.z - z) < opts_.dedup_tol) {
        fz.mult = std::max(fz.mult, mult);
        return;
      }
    }
    found_.push_back({z, mult});
  }

  void refine_cell(const Cell& c, int zero_count) {
    // scale from boundary values
    double scale = 0.0;
    for (int j = 0; j < 8; ++j) {
      double t = j / 8.0;
      scale = std::max(scale, std::abs(f_(region_.point(c.x0 + t * c.dx, c.y0))));
      scale = std::max(scale, std::abs(f_(region_.point(c.x0 + t * c.dx, c.y0 + c.dy))));
    }
    const double seeds[5][2] = {{0.5, 0.5}, {0.27, 0.27}, {0.73, 0.27}, {0.27, 0.73}, {0.73, 0.73}};
    int remaining = zero_count;
    for (const auto& s : seeds) {
      if (remaining <= 0) return;
      cplx z;
      if (!newton(region_.point(c.x0 + s[0] * c.dx, c.y0 + s[1] * c.dy), scale, &z)) continue;
      auto [x, y] = region_.coords(z);
      if (x < -1e-9 || x > 1.0 + 1e-9 || y < -1e-9 || y > 1.0 + 1e-9) continue;
      bool seen = false;
      for (const auto& fz : found_) {
        if (std::abs(fz.z - z) < opts_.dedup_tol) seen = true;
      }
      if (seen) continue;
      int mult = 1;
      if (opts_.with_multiplicities && zero_count > 1) {
        // tight circle: a simple zero is localised to ~1e-12, an m-fold one
        // only to ~ tol^(1/m), so the circle must cover the latter spread
        // without swallowing unrelated neighbours
        double r = std::max(1e-5, 3.0 * opts_.cluster_tol);
        mult = winding_on_circle(f_, z, r);
        mult = std::max(mult, 1);
      }
      record(z, mult);
      remaining -= mult;
    }
    if (remaining > 0) {
      // unresolved cluster: subdivide further unless the cell is already tiny
      if (std::max(c.dx, c.dy) * region_.diameter() < 1e-6) {
        record(region_.point(c.x0 + 0.5 * c.dx, c.y0 + 0.5 * c.dy), remaining);
        return;
      }
      double fx = pick_split(c.x0, c.dx, true), fy = pick_split(c.y0, c.dy, false);
      Cell sub[4] = {{c.x0, c.y0, c.dx * fx, c.dy * fy},
                     {c.x0 + c.dx * fx, c.y0, c.dx * (1.0 - fx), c.dy * fy},
                     {c.x0, c.y0 + c.dy * fy, c.dx * fx, c.dy * (1.0 - fy)},
                     {c.x0 + c.dx * fx, c.y0 + c.dy * fy, c.dx * (1.0 - fx), c.dy * (1.0 - fy)}};
      for (int i = 0; i < 4; ++i) {
        int cnt = cell_winding(sub[i]) + poles_in_cell(sub[i]);
        // zeros already recorded in this cell belong to some subcell; skip those
        for (const auto& fz : found_) {
          auto [x, y] = region_.coords(fz.z);
          if (x > sub[i].x0 && x < sub[i].x0 + sub[i].dx && y > sub[i].y0 &&
              y < sub[i].y0 + sub[i].dy) {
            cnt -= fz.mult;
          }
        }
        if (cnt > 0) refine_cell(sub[i], cnt);
      }
    }
  }

  const CFn& f_;
  const CFn* fprime_;
  Parallelogram region_;
  const std::vector<PoleSpec>& poles_;
  ZeroFindOptions opts_;
  std::vector<FoundZero> found_;
};

}  // namespace

std::pair<double, double> Parallelogram::coords(cplx z) const {
  cplx d = z - origin;
  double det = e1.real() * e2.imag() - e1.imag() * e2.real();
  double x = (d.real() * e2.imag() - d.imag() * e2.real()) / det;
  double y = (e1.real() * d.imag() - e1.imag() * d.real()) / det;
  return {x, y};
}

bool Parallelogram::contains(cplx z, double tol) const {
  auto [x, y] = coords(z);
  return x >= -tol && x <= 1.0 + tol && y >= -tol && y <= 1.0 + tol;
}

int winding_on_circle(const CFn& f, cplx center, double radius, int initial_samples) {
  auto path = [&](double t) { return center + radius * std::exp(cplx(0.0, two_pi * t)); };
  for (int n = initial_samples; n <= 16 * initial_samples; n *= 2) {
    try {
      return winding_as_integer(closed_path_winding(f, path, n, 1e-13));
    } catch (const boundary_too_close&) {
      if (n >= 16 * initial_samples) break;
    }
  }
  throw contour_error("winding_on_circle: function vanishes on or winds across the circle");
}

int measure_pole_order(const CFn& f, cplx pole, double radius) {
  return -winding_on_circle(f, pole, radius);
}

ZeroFindResult find_zeros(const CFn& f, const CFn* fprime, const Parallelogram& region,
                          const std::vector<PoleSpec>& poles_inside, const ZeroFindOptions& opts) {
  Parallelogram reg = region;
  ZeroFindOptions o = opts;
  for (int retry = 0; retry <= opts.max_retries; ++retry) {
    try {
      return ZeroSearch(f, fprime, reg, poles_inside, o).run();
    } catch (const boundary_too_close&) {
      // jiggle the contour and sample more densely
      double eps = 2.783e-3 * (retry + 1);
      double sgn = (retry % 2 == 0) ? 1.0 : -1.0;
      reg.origin = region.origin + sgn * eps * (region.e1 + region.e2) * cplx(1.0, 0.37);
      o.boundary_samples = opts.boundary_samples + 8 * (retry + 1);
    }
  }
  throw contour_error("find_zeros: contour placement failed after retries");
}

ZeroFindResult ef_zero_count(const EllipticFunction& f, const Parallelogram& region,
                             const ZeroFindOptions& opts) {
  const Lattice& lat = *f.lattice();
  std::vector<PoleSpec> poles;
  for (const auto& [p, ord] : f.poles(1e-14)) {
    for (cplx t : translates_in_region(p, lat, region, -1e-7)) {
      poles.push_back({t, ord});
    }
  }
  EllipticFunction df = f.derivative();
  CFn fn = [&f](cplx z) { return f.eval(z); };
  CFn dfn = [&df](cplx z) { return df.eval(z); };
  return find_zeros(fn, &dfn, region, poles, opts);
}

Parallelogram fundamental_domain(const Lattice& lat, const std::vector<cplx>& keep_interior) {
  Parallelogram best{cplx(0.0, 0.0), cplx(1.0, 0.0), lat.tau};
  double best_clearance = -1.0;
  for (double ox : {0.0, -0.25, -0.5, -0.37, -0.13, -0.62}) {
    for (double oy : {0.0, -0.25, -0.5, -0.37, -0.13, -0.62}) {
      Parallelogram cand{ox + oy * lat.tau, cplx(1.0, 0.0), lat.tau};
      double clearance = 1.0;
      for (cplx p : keep_interior) {
        cplx pr = reduce_mod_lattice(p - cand.origin, lat);
        // coords of the representative inside [0,1)^2
        auto [x, y] = Parallelogram{0.0, 1.0, lat.tau}.coords(pr);
        x -= std::floor(x);
        y -= std::floor(y);
        clearance = std::min({clearance, x, 1.0 - x, y, 1.0 - y});
      }
      if (clearance > best_clearance) {
        best_clearance = clearance;
        best = cand;
      }
    }
  }
  return best;
}

std::vector<cplx> translates_in_region(cplx p, const Lattice& lat, const Parallelogram& region,
                                       double tol) {
  std::vector<cplx> out;
  // conservative integer ranges from the region corners
  auto [cx0, cy0] = Parallelogram{0.0, 1.0, lat.tau}.coords(region.origin);
  auto [cx1, cy1] = Parallelogram{0.0, 1.0, lat.tau}.coords(region.origin + region.e1 + region.e2);
  int lo_m = static_cast<int>(std::floor(std::min(cx0, cx1))) - 2;
  int hi_m = static_cast<int>(std::ceil(std::max(cx0, cx1))) + 2;
  int lo_n = static_cast<int>(std::floor(std::min(cy0, cy1))) - 2;
  int hi_n = static_cast<int>(std::ceil(std::max(cy0, cy1))) + 2;
  for (int m = lo_m; m <= hi_m; ++m) {
    for (int n = lo_n; n <= hi_n; ++n) {
      cplx cand = p + static_cast<double>(m) + static_cast<double>(n) * lat.tau;
      auto [x, y] = region.coords(cand);
      if (x > -tol && x < 1.0 + tol && y > -tol && y < 1.0 + tol) out.push_back(cand);
    }
  }
  return out;
}

}  // namespace hsk

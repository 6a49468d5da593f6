#include "inscribed/boundary_limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace inscribed {

CyclicQuad CyclicQuad::make(const std::array<double, 4>& positions, double period) {
  if (!(period > 0)) throw Error(ErrorKind::PreconditionFailed, "period must be positive");
  CyclicQuad q{positions, period};
  for (double& p : q.positions) p = std::fmod(std::fmod(p, period) + period, period);
  const std::array<double, 4> a = q.arcs();
  const double total = a[0] + a[1] + a[2] + a[3];
  for (double x : a)
    if (!(x > 0)) throw Error(ErrorKind::PreconditionFailed, "positions must be distinct");
  if (std::abs(total - period) > 1e-9 * period)
    throw Error(ErrorKind::PreconditionFailed, "positions are not in counterclockwise order");
  return q;
}

std::array<double, 4> CyclicQuad::arcs() const {
  std::array<double, 4> a{};
  for (int k = 0; k < 4; ++k) {
    double d = std::fmod(positions[(k + 1) % 4] - positions[k], period);
    if (d < 0) d += period;
    a[k] = d;
  }
  return a;
}

CyclicQuad CyclicQuad::relabeled(int shift) const {
  CyclicQuad q = *this;
  for (int k = 0; k < 4; ++k) q.positions[k] = positions[((k + shift) % 4 + 4) % 4];
  return q;
}

double circular_invariant(const std::array<double, 4>& arcs) { return (arcs[0] + arcs[2]) / (arcs[1] + arcs[3]); }

double circular_invariant(const CyclicQuad& quad) { return circular_invariant(quad.arcs()); }

namespace {

// Integral over [0, s] of the piecewise-linear density with samples d at
// equally spaced nodes on [0, 1].
double partial_integral(const std::vector<double>& d, double s) {
  if (d.empty()) return s;
  const int m = static_cast<int>(d.size()) - 1;
  if (m == 0) return d[0] * s;
  s = std::clamp(s, 0.0, 1.0);
  const double h = 1.0 / m;
  double acc = 0.0;
  for (int j = 0; j < m; ++j) {
    const double x0 = j * h;
    if (s <= x0) break;
    const double w = std::min(s, x0 + h) - x0;
    const double slope = (d[j + 1] - d[j]) / h;
    acc += d[j] * w + 0.5 * slope * w * w;
  }
  return acc;
}

double evaluate_density(const std::vector<double>& d, double s) {
  if (d.empty()) return 1.0;
  const int m = static_cast<int>(d.size()) - 1;
  if (m == 0) return d[0];
  const double x = std::clamp(s, 0.0, 1.0) * m;
  const int j = std::min(static_cast<int>(x), m - 1);
  return d[j] + (x - j) * (d[j + 1] - d[j]);
}

}  // namespace

BoundaryMeasure BoundaryMeasure::arclength(const Polygon& polygon) {
  std::vector<double> w(polygon.size());
  for (int i = 0; i < polygon.size(); ++i) w[i] = polygon.edge_length(i);
  return from_weights(std::move(w));
}

BoundaryMeasure BoundaryMeasure::from_weights(std::vector<double> weights) {
  return from_densities(std::move(weights), {});
}

BoundaryMeasure BoundaryMeasure::from_densities(std::vector<double> weights, std::vector<std::vector<double>> densities) {
  if (weights.empty()) throw Error(ErrorKind::PreconditionFailed, "measure needs at least one edge");
  densities.resize(weights.size());
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw Error(ErrorKind::PreconditionFailed, "edge weights must be nonnegative");
    total += w;
  }
  if (!(total > 0)) throw Error(ErrorKind::PreconditionFailed, "measure has zero mass");
  BoundaryMeasure mu;
  for (std::size_t e = 0; e < weights.size(); ++e) {
    std::vector<double>& d = densities[e];
    for (double v : d)
      if (!(v >= 0) || !std::isfinite(v)) throw Error(ErrorKind::PreconditionFailed, "densities must be nonnegative");
    if (!d.empty()) {
      const double integral = partial_integral(d, 1.0);
      if (!(integral > 0)) {
        if (weights[e] > 0) throw Error(ErrorKind::PreconditionFailed, "density vanishes on a weighted edge");
        d.clear();
      } else {
        for (double& v : d) v /= integral;
      }
    }
  }
  mu.weights_.resize(weights.size());
  for (std::size_t e = 0; e < weights.size(); ++e) mu.weights_[e] = weights[e] / total;
  mu.densities_ = std::move(densities);
  mu.prefix_.assign(weights.size() + 1, 0.0);
  for (std::size_t e = 0; e < weights.size(); ++e) mu.prefix_[e + 1] = mu.prefix_[e] + mu.weights_[e];
  return mu;
}

BoundaryMeasure BoundaryMeasure::bump(const Polygon& polygon, int edge, double share) {
  if (!(share >= 0 && share < 1)) throw Error(ErrorKind::PreconditionFailed, "bump share must lie in [0, 1)");
  const int n = polygon.size();
  const int target = polygon.wrap(edge);
  std::vector<double> w(n);
  double rest = 0.0;
  for (int i = 0; i < n; ++i)
    if (i != target) rest += polygon.edge_length(i);
  for (int i = 0; i < n; ++i) w[i] = i == target ? share : (1.0 - share) * polygon.edge_length(i) / rest;
  std::vector<std::vector<double>> d(n);
  d[target] = {0.0, 1.0, 0.0};
  return from_densities(std::move(w), std::move(d));
}

double BoundaryMeasure::total_mass() const { return prefix_.back(); }

double BoundaryMeasure::cumulative(double t) const {
  const int n = edge_count();
  if (t <= 0) return 0.0;
  if (t >= n) return prefix_.back();
  const int e = std::min(static_cast<int>(std::floor(t)), n - 1);
  return prefix_[e] + weights_[e] * partial_integral(densities_[e], t - e);
}

double BoundaryMeasure::arc_mass(double t0, double t1) const {
  const int n = edge_count();
  const auto wrap = [n](double t) {
    t = std::fmod(t, static_cast<double>(n));
    return t < 0 ? t + n : t;
  };
  const double a = cumulative(wrap(t0)), b = cumulative(wrap(t1));
  return b >= a ? b - a : total_mass() - a + b;
}

double BoundaryMeasure::density(double t) const {
  const int n = edge_count();
  t = std::fmod(t, static_cast<double>(n));
  if (t < 0) t += n;
  const int e = std::min(static_cast<int>(std::floor(t)), n - 1);
  return weights_[e] * evaluate_density(densities_[e], t - e);
}

std::array<double, 4> measure_arcs(const std::array<double, 4>& boundary_t, const BoundaryMeasure& mu) {
  std::array<double, 4> arcs{};
  for (int k = 0; k < 4; ++k) arcs[k] = mu.arc_mass(boundary_t[k], boundary_t[(k + 1) % 4]);
  return arcs;
}

double measure_invariant(const std::array<double, 4>& boundary_t, const BoundaryMeasure& mu) {
  return circular_invariant(measure_arcs(boundary_t, mu));
}

std::vector<LambdaSample> component_lambda_profile(const Analysis& analysis, int component, const BoundaryMeasure& mu,
                                                   int samples) {
  const Component& c = analysis.components.at(component);
  const int m = static_cast<int>(c.steps.size());
  std::vector<LambdaSample> out;
  samples = std::max(samples, 2);
  for (int i = 0; i < samples; ++i) {
    const double u = static_cast<double>(i) / (samples - 1);
    const int idx = std::min(static_cast<int>(std::floor(u * m)), m - 1);
    const Segment& seg = analysis.segments[c.steps[idx].segment];
    const double rho = analysis.rho_at(component, u);
    out.push_back({u, rho, measure_invariant(seg.boundary_t(rho), mu)});
  }
  return out;
}

namespace {

// Log-spaced rho grid across a segment, in traversal order.  Infinite ends
// are replaced by rho far out so the arcs stay well defined.
std::vector<double> bracket_grid(const Segment& seg, bool forward, int count) {
  const double lo = seg.rho_lo > 0 ? seg.rho_lo : std::min(1e-9, seg.rho_hi * 1e-9);
  const double hi = std::isfinite(seg.rho_hi) ? seg.rho_hi : std::max(1e9, seg.rho_lo * 1e9);
  std::vector<double> grid(count + 1);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i <= count; ++i) grid[i] = std::exp(a + (b - a) * i / count);
  grid.front() = lo;
  grid.back() = hi;
  if (!forward) std::reverse(grid.begin(), grid.end());
  return grid;
}

}  // namespace

BalancedRectangle balanced_rectangle(const Analysis& analysis, const BoundaryMeasure& mu) {
  for (int ci = 0; ci < static_cast<int>(analysis.components.size()); ++ci) {
    const Component& c = analysis.components[ci];
    if (!c.is_global()) continue;
    for (int si = 0; si < static_cast<int>(c.steps.size()); ++si) {
      const Segment& seg = analysis.segments[c.steps[si].segment];
      const auto excess = [&](double rho) {
        const std::array<double, 4> a = measure_arcs(seg.boundary_t(rho), mu);
        return a[0] + a[2] - 0.5;
      };
      const std::vector<double> grid = bracket_grid(seg, c.steps[si].forward, 32);
      double prev = excess(grid.front());
      for (std::size_t g = 1; g < grid.size(); ++g) {
        const double cur = excess(grid[g]);
        if (prev == 0.0 || (prev < 0) != (cur < 0)) {
          double x = std::log(grid[g - 1]), y = std::log(grid[g]);
          double fx = prev;
          for (int it = 0; it < 200 && std::abs(y - x) > 1e-15 * std::max(1.0, std::abs(x)); ++it) {
            const double mid = 0.5 * (x + y);
            const double fm = excess(std::exp(mid));
            if (fm == 0.0) {
              x = y = mid;
              break;
            }
            if ((fm < 0) == (fx < 0)) {
              x = mid;
              fx = fm;
            } else {
              y = mid;
            }
          }
          BalancedRectangle out;
          out.rho = std::exp(0.5 * (x + y));
          out.rectangle = seg.rectangle_at(out.rho);
          out.boundary_t = seg.boundary_t(out.rho);
          out.arcs = measure_arcs(out.boundary_t, mu);
          out.component = ci;
          out.step = si;
          return out;
        }
        prev = cur;
      }
    }
  }
  throw Error(ErrorKind::NoGlobalComponent, "no hyperbolic or elliptic component to search");
}

}  // namespace inscribed

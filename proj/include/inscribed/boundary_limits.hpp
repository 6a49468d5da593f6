#pragma once

#include <array>
#include <vector>

#include "inscribed/config_space.hpp"
#include "inscribed/geom.hpp"

namespace inscribed {

/// Four counterclockwise positions on a circle of circumference `period`.
struct CyclicQuad {
  std::array<double, 4> positions{};
  double period = 1.0;

  /// Throws PreconditionFailed unless the positions are strictly
  /// counterclockwise with every arc positive.
  static CyclicQuad make(const std::array<double, 4>& positions, double period);
  /// arcs[k] runs from position k to position k+1.
  std::array<double, 4> arcs() const;
  CyclicQuad relabeled(int shift = 1) const;
};

/// (a0 + a2) / (a1 + a3).
double circular_invariant(const std::array<double, 4>& arcs);
double circular_invariant(const CyclicQuad& quad);

/// Non-atomic probability measure on the boundary.  Each edge carries a
/// weight and a piecewise-linear density sampled at equally spaced points.
class BoundaryMeasure {
 public:
  static BoundaryMeasure arclength(const Polygon& polygon);
  /// Weights are normalized; each edge gets a uniform density.
  static BoundaryMeasure from_weights(std::vector<double> weights);
  /// densities[e] holds samples of the density on edge e at s = j/(m-1);
  /// an empty entry means uniform.  Weights and densities are normalized.
  static BoundaryMeasure from_densities(std::vector<double> weights, std::vector<std::vector<double>> densities);
  /// Arclength, except that `share` of the mass sits on `edge` as a tent
  /// peaked at its midpoint.
  static BoundaryMeasure bump(const Polygon& polygon, int edge, double share);

  int edge_count() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::vector<double>>& densities() const { return densities_; }
  double total_mass() const;

  /// Mass of [0, t) for t in [0, N], in [0, 1].
  double cumulative(double t) const;
  /// Mass of the counterclockwise arc from t0 to t1.
  double arc_mass(double t0, double t1) const;
  /// Density with respect to the edge coordinate at t.
  double density(double t) const;

 private:
  std::vector<double> weights_;
  std::vector<std::vector<double>> densities_;  // normalized to unit integral on [0, 1]
  std::vector<double> prefix_;
};

/// Measure coordinates of the rectangle vertices, as a quad of period 1.
/// Does not check the cyclic order.
std::array<double, 4> measure_arcs(const std::array<double, 4>& boundary_t, const BoundaryMeasure& mu);
double measure_invariant(const std::array<double, 4>& boundary_t, const BoundaryMeasure& mu);

struct LambdaSample {
  double u = 0.0;
  double rho = 0.0;
  double lambda = 0.0;
};

std::vector<LambdaSample> component_lambda_profile(const Analysis& analysis, int component, const BoundaryMeasure& mu,
                                                   int samples = 400);

struct BalancedRectangle {
  LabeledRectangle rectangle;
  std::array<double, 4> boundary_t{};
  std::array<double, 4> arcs{};  // measure of each arc
  int component = 0;
  int step = 0;
  double rho = 0.0;
};

/// First rectangle, in traversal order of the lowest global component, whose
/// opposite arcs carry measure 1/2 each.  Throws NoGlobalComponent.
BalancedRectangle balanced_rectangle(const Analysis& analysis, const BoundaryMeasure& mu);

}  // namespace inscribed

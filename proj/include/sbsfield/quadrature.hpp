#pragma once

#include <functional>
#include <vector>

#include "sbsfield/errors.hpp"

namespace sbsfield::quad {

/// Gauss-Legendre rule on [-1, 1].
struct GlRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre nodes/weights, computed once and cached.
const GlRule& gauss_legendre(int n);

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-11;
};

/// Adaptive Gauss-Kronrod (G7/K15) on a finite interval.
double adaptive(const std::function<double(double)>& f, double a, double b,
                Tolerance tol = {});

/// \int_0^inf f(u) du for f decaying at scale O(1) (exponential cutoff
/// factor assumed); truncates the tail where e^{-u} is negligible.
double decaying_integral(const std::function<double(double)>& f, Tolerance tol = {});

/// Options for the oscillatory schemes. panel_start_periods shifts where the
/// between-zeros panel summation takes over; results must be independent of
/// it (self-check invariant).
struct OscOptions {
  Tolerance tol = {};
  double panel_start_periods = 1.0;
  int max_panels = 20000;
};

/// \int_0^inf h(u) (1 - cos(u s)) du with h smooth and decaying.
/// h(u)*(1-cos(us)) must be evaluable for all u > 0 (a 1/u factor in h is
/// fine: the caller's integrand has a finite u->0 limit).
double one_minus_cos_integral(const std::function<double(double)>& h, double s,
                              OscOptions opt = {});

/// \int_0^inf h(u) sin(u s) du with h smooth and decaying.
double laplace_sin(const std::function<double(double)>& h, double s, OscOptions opt = {});

/// \int_0^inf h(u) cos(u s) du with h smooth and decaying.
double laplace_cos(const std::function<double(double)>& h, double s, OscOptions opt = {});

}  // namespace sbsfield::quad

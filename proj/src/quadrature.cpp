#include "sbsfield/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace sbsfield::quad {

namespace {

// Upper truncation for integrands carrying the e^{-u} cutoff factor.
constexpr double kUpper = 60.0;
// Above this s the between-zeros panel scheme takes over.
constexpr double kOscSwitch = 8.0;

GlRule compute_gauss_legendre(int n) {
  GlRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Kronrod 15 / Gauss 7 pair, positive half of the symmetric rule.
constexpr double kK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kK15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kG7Weights[4] = {0.129484966168870, 0.279705391489277,
                                  0.381830050505119, 0.417959183673469};

struct GkResult {
  double integral;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double gauss = 0.0, kronrod = 0.0;
  for (int i = 0; i < 8; ++i) {
    double fv;
    if (i == 7) {
      fv = f(c);
    } else {
      fv = f(c - h * kK15Nodes[i]) + f(c + h * kK15Nodes[i]);
    }
    kronrod += kK15Weights[i] * fv;
    if (i % 2 == 1) gauss += kG7Weights[i / 2] * fv;
  }
  return {kronrod * h, std::abs(kronrod - gauss) * h};
}

// Segment of the global refinement queue.
struct Seg {
  double a, b, integral, error;
};

bool seg_less(const Seg& x, const Seg& y) { return x.error < y.error; }

// Euler transformation of a slowly varying alternating series.
class EulerSum {
 public:
  double add(double term) {
    if (n_ == 0) {
      wksp_.assign(1, term);
      n_ = 1;
      sum_ = 0.5 * term;
      return sum_;
    }
    double tmp = wksp_[0];
    wksp_[0] = term;
    for (int j = 0; j + 1 < n_; ++j) {
      double dum = wksp_[j + 1];
      wksp_[j + 1] = 0.5 * (wksp_[j] + tmp);
      tmp = dum;
    }
    double next = 0.5 * (wksp_[n_ - 1] + tmp);
    if (std::abs(next) <= std::abs(wksp_[n_ - 1])) {
      wksp_.push_back(next);
      ++n_;
      sum_ += 0.5 * next;
    } else {
      sum_ += next;
    }
    return sum_;
  }

 private:
  std::vector<double> wksp_;
  double sum_ = 0.0;
  int n_ = 0;
};

double fixed_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const GlRule& rule = gauss_legendre(n);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += rule.weights[i] * f(c + h * rule.nodes[i]);
  return acc * h;
}

// Accelerated sum of panel integrals of f between consecutive zeros starting
// at z(k0), z(k) = (k + phase) * pi / s.
double panel_tail(const std::function<double(double)>& f, double s, int k0,
                  double phase, const OscOptions& opt) {
  EulerSum es;
  double prev = 0.0;
  int stable = 0;
  for (int k = k0; k < k0 + opt.max_panels; ++k) {
    const double a = (k + phase) * std::numbers::pi / s;
    if (a > kUpper) break;
    const double b = (k + 1 + phase) * std::numbers::pi / s;
    const double term = fixed_gl(f, a, b, 21);
    const double sum = es.add(term);
    if (k > k0 + 4) {
      if (std::abs(sum - prev) <= opt.tol.abs) {
        if (++stable >= 2) return sum;
      } else {
        stable = 0;
      }
    }
    prev = sum;
  }
  return prev;  // envelope exhausted: remaining tail below cutoff floor
}

}  // namespace

const GlRule& gauss_legendre(int n) {
  static std::map<int, GlRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

// Globally adaptive G7/K15: always bisect the segment with the largest error
// estimate, so narrow features deep inside long intervals get resolved
// without starving the per-segment tolerance.
double adaptive(const std::function<double(double)>& f, double a, double b, Tolerance tol) {
  if (a == b) return 0.0;
  constexpr int kMaxSegments = 30000;
  std::vector<Seg> active;
  double total_integral = 0.0;
  double active_error = 0.0;
  double frozen_error = 0.0;  // roundoff-limited segments, no longer refinable
  int frozen = 0;

  auto push = [&](double lo, double hi) {
    const GkResult r = gk15(f, lo, hi);
    active.push_back({lo, hi, r.integral, r.error});
    std::push_heap(active.begin(), active.end(), seg_less);
    total_integral += r.integral;
    active_error += r.error;
  };
  push(a, b);

  while (true) {
    const double target = std::max(tol.abs, tol.rel * std::abs(total_integral));
    if (active_error + frozen_error <= target) return total_integral;
    if (active.empty() || static_cast<int>(active.size()) + frozen >= kMaxSegments)
      throw QuadratureFailure("adaptive quadrature: segment budget exhausted");

    std::pop_heap(active.begin(), active.end(), seg_less);
    const Seg worst = active.back();
    active.pop_back();
    total_integral -= worst.integral;
    active_error -= worst.error;

    const double m = 0.5 * (worst.a + worst.b);
    const bool at_roundoff =
        m <= worst.a || m >= worst.b ||
        worst.error <= 4e-16 * std::abs(worst.integral);
    if (at_roundoff) {
      // Keep the contribution; its error is a machine-precision floor.
      total_integral += worst.integral;
      frozen_error += std::min(worst.error, 4e-16 * std::abs(worst.integral));
      ++frozen;
      continue;
    }
    push(worst.a, m);
    push(m, worst.b);
  }
}

double decaying_integral(const std::function<double(double)>& f, Tolerance tol) {
  return adaptive(f, 0.0, kUpper, tol);
}

double one_minus_cos_integral(const std::function<double(double)>& h, double s,
                              OscOptions opt) {
  if (s == 0.0) return 0.0;
  auto integrand = [&](double u) {
    // 1 - cos as 2 sin^2 keeps full relative precision for small u*s.
    const double half = std::sin(0.5 * u * s);
    return h(u) * 2.0 * half * half;
  };
  if (s <= kOscSwitch) return adaptive(integrand, 0.0, kUpper, opt.tol);

  // Split: head with the full integrand, smooth baseline, oscillatory tail.
  const double u1 = opt.panel_start_periods * 2.0 * std::numbers::pi / s;
  const double head = adaptive(integrand, 0.0, u1, opt.tol);
  const double baseline = adaptive(h, u1, kUpper, opt.tol);
  // Cosine zeros at (k + 1/2) pi / s; first zero at or past u1.
  const int k0 = static_cast<int>(std::ceil(u1 * s / std::numbers::pi - 0.5));
  const double z0 = (k0 + 0.5) * std::numbers::pi / s;
  auto cos_part = [&](double u) { return h(u) * std::cos(u * s); };
  const double bridge = adaptive(cos_part, u1, z0, opt.tol);
  const double tail = panel_tail(cos_part, s, k0, 0.5, opt);
  return head + baseline - bridge - tail;
}

double laplace_sin(const std::function<double(double)>& h, double s, OscOptions opt) {
  if (s == 0.0) return 0.0;
  auto integrand = [&](double u) { return h(u) * std::sin(u * s); };
  if (s <= kOscSwitch) return adaptive(integrand, 0.0, kUpper, opt.tol);
  const int k0 = std::max(1, static_cast<int>(std::lround(2.0 * opt.panel_start_periods)));
  const double z0 = k0 * std::numbers::pi / s;
  const double head = adaptive(integrand, 0.0, z0, opt.tol);
  return head + panel_tail(integrand, s, k0, 0.0, opt);
}

double laplace_cos(const std::function<double(double)>& h, double s, OscOptions opt) {
  if (s == 0.0) return adaptive(h, 0.0, kUpper, opt.tol);
  auto integrand = [&](double u) { return h(u) * std::cos(u * s); };
  if (s <= kOscSwitch) return adaptive(integrand, 0.0, kUpper, opt.tol);
  const int k0 = std::max(1, static_cast<int>(std::lround(2.0 * opt.panel_start_periods)));
  const double z0 = (k0 - 0.5) * std::numbers::pi / s;
  const double head = adaptive(integrand, 0.0, z0, opt.tol);
  return head + panel_tail(integrand, s, k0 - 1, 0.5, opt);
}

}  // namespace sbsfield::quad

#include "lovespec/numerics.hpp"

#include <gsl/gsl_sf_expint.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

namespace lovespec {

double uniform_spacing(std::span<const double> x, std::size_t min_points) {
  if (x.size() < min_points) {
    throw Error(ErrorKind::resolution,
                "grid has " + std::to_string(x.size()) + " points, need at least " +
                    std::to_string(min_points));
  }
  const double dx = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  if (!(dx > 0.0)) {
    throw Error(ErrorKind::resolution, "grid is not ascending");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double expected = x.front() + dx * static_cast<double>(i);
    if (std::abs(x[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw Error(ErrorKind::resolution, "grid is not uniformly spaced");
    }
  }
  return dx;
}

std::vector<double> derivative(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  if (n < 5) throw Error(ErrorKind::resolution, "derivative needs at least 5 samples");
  std::vector<double> d(n);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
  d[1] = (f[2] - f[0]) / (2.0 * dx);
  d[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * dx);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * dx);
  }
  return d;
}

std::vector<double> second_derivative(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  if (n < 5) throw Error(ErrorKind::resolution, "second derivative needs at least 5 samples");
  const double h2 = dx * dx;
  std::vector<double> d(n);
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
  d[1] = (f[0] - 2.0 * f[1] + f[2]) / h2;
  d[n - 2] = (f[n - 3] - 2.0 * f[n - 2] + f[n - 1]) / h2;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) /
           (12.0 * h2);
  }
  return d;
}

double trapezoid(std::span<const double> f, double dx) {
  if (f.size() < 2) return 0.0;
  CompensatedSum s;
  s.add(0.5 * f.front());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s.add(f[i]);
  s.add(0.5 * f.back());
  return dx * s.value();
}

std::vector<double> cumulative_trapezoid(std::span<const double> f, double dx) {
  std::vector<double> out(f.size(), 0.0);
  CompensatedSum s;
  for (std::size_t i = 1; i < f.size(); ++i) {
    s.add(0.5 * dx * (f[i - 1] + f[i]));
    out[i] = s.value();
  }
  return out;
}

double sine_integral(double x) { return gsl_sf_Si(x); }

double cosine_integral(double x) { return gsl_sf_Ci(x); }

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    carry_ += (sum_ - t) + v;
  } else {
    carry_ += (v - t) + sum_;
  }
  sum_ = t;
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kron = kKronrod[7] * fc;
  cplx gauss = kGauss[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const cplx s = f(c - r * kNodes[i]) + f(c + r * kNodes[i]);
    kron += kKronrod[i] * s;
    if (i % 2 == 1) gauss += kGauss[i / 2] * s;
  }
  return {a, b, kron * r, std::abs((kron - gauss) * r)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f,
                                    double a, double b, double rel_tol,
                                    double abs_tol, std::size_t max_intervals) {
  std::priority_queue<Segment> heap;
  heap.push(gk15(f, a, b));
  std::size_t evals = 15;
  cplx total = heap.top().value;
  double err = heap.top().error;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         heap.size() < max_intervals) {
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    evals += 30;
    heap.push(left);
    heap.push(right);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
  }
  // Re-sum from the leaves to shed the drift of incremental updates.
  cplx sum = 0.0;
  double esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  return {sum, esum, evals};
}

}  // namespace lovespec

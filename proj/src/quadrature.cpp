#include "exdep/quadrature.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "exdep/errors.hpp"

namespace exdep {
namespace {

// QUADPACK QK15 abscissae/weights on [-1,1]; xk[7]=0 is the midpoint.
constexpr double kXk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  double value;
  double err;
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  fv[7] = f(c);
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXk[j];
    fv[j] = f(c - x);
    fv[14 - j] = f(c + x);
  }
  double kron = kWk[7] * fv[7];
  double gauss = kWg[3] * fv[7];
  double resabs = kWk[7] * std::abs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    kron += kWk[j] * (fv[j] + fv[14 - j]);
    resabs += kWk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * (fv[j] + fv[14 - j]);
  }
  // QUADPACK-style error estimate: the raw |K15-G7| difference is scaled
  // against the deviation integral so kinks and singularities cannot
  // report deceptively small errors.
  const double mean = kron * 0.5;
  double resasc = kWk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  const double ah = std::abs(h);
  kron *= h;
  gauss *= h;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs(kron - gauss);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (round_floor > 0.0) err = std::max(err, round_floor);
  return Segment{a, b, kron, err};
}

struct SegmentOrder {
  bool operator()(const Segment& x, const Segment& y) const { return x.err < y.err; }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  std::priority_queue<Segment, std::vector<Segment>, SegmentOrder> heap;
  heap.push(gk15(f, a, b));
  double total_err = heap.top().err;
  int splits = 0;
  while (total_err > spec.abs_tol) {
    if (splits >= spec.max_subdivisions) {
      throw NumericError("quadrature did not converge within max_subdivisions");
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval exhausted at double resolution; accept its estimate
      heap.push(Segment{worst.a, worst.b, worst.value, 0.0});
      total_err -= worst.err;
      continue;
    }
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  double value = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().err;
    heap.pop();
  }
  return QuadratureResult{value, err, splits};
}

}  // namespace exdep

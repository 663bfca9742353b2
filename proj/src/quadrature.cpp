#include "igac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace igac {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    kronrod += kWgk[i] * (f1 + f2);
    resabs += kWgk[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
  }
  const double value = kronrod * h;
  double err = std::abs((kronrod - gauss) * h);
  // QUADPACK-style rescaling keeps the estimate meaningful when the
  // integrand nearly cancels.
  const double scale = resabs * std::abs(h);
  if (scale > 0.0 && err > 0.0)
    err = scale * std::min(1.0, std::pow(200.0 * err / scale, 1.5));
  return {a, b, value, err};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    double rel_tol, long max_evals) {
  QuadratureResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::priority_queue<Panel> heap;
  Panel root = gk15(f, a, b);
  res.evals = 15;
  double total = root.value;
  double total_err = root.error;
  heap.push(root);
  while (true) {
    const double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (total_err <= tol) {
      res.converged = true;
      break;
    }
    if (res.evals + 30 > max_evals) break;
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval at machine resolution; keep its estimate as-is.
      total_err = std::max(0.0, total_err - worst.error);
      if (heap.empty()) {
        res.converged = total_err <= tol;
        break;
      }
      continue;
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    res.evals += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  res.value = total;
  res.error = total_err;
  return res;
}

double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, double rel_tol,
                          long max_evals, double* error_out,
                          long* evals_out) {
  QuadratureResult r =
      integrate_adaptive(f, a, b, abs_tol, rel_tol, max_evals);
  if (error_out) *error_out = r.error;
  if (evals_out) *evals_out = r.evals;
  if (!r.converged) {
    std::ostringstream os;
    os << "quadrature did not converge within budget " << max_evals
       << " evaluations; achieved error estimate " << r.error;
    throw NumericalError(os.str());
  }
  return r.value;
}

QuadratureResult integrate_real_line(const std::function<double(double)>& f,
                                     double center, double scale,
                                     double abs_tol, double rel_tol,
                                     long max_evals) {
  const double w = scale > 0.0 ? scale : 1.0;
  auto g = [&](double t) {
    const double x = center + w * std::log(t / (1.0 - t));
    const double jac = w / (t * (1.0 - t));
    const double v = f(x);
    return std::isfinite(v) ? v * jac : 0.0;
  };
  return integrate_adaptive(g, 1e-14, 1.0 - 1e-14, abs_tol, rel_tol,
                            max_evals);
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     double lo, double scale, double abs_tol,
                                     double rel_tol, long max_evals) {
  const double w = scale > 0.0 ? scale : 1.0;
  auto g = [&](double t) {
    const double x = lo - w * std::log1p(-t);
    const double jac = w / (1.0 - t);
    const double v = f(x);
    return std::isfinite(v) ? v * jac : 0.0;
  };
  return integrate_adaptive(g, 1e-15, 1.0 - 1e-15, abs_tol, rel_tol,
                            max_evals);
}

}  // namespace igac

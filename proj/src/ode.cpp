#include "igac/ode.hpp"

#include <algorithm>
#include <cmath>

namespace igac {
namespace {

// Dormand-Prince 5(4) tableau (Hairer, Norsett & Wanner).
constexpr double a21 = 0.2;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;

// 5th-minus-4th order error weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// Dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

double error_norm(const Vec& err, const Vec& y0, const Vec& y1, double atol,
                  double rtol) {
  double sum = 0.0;
  for (int i = 0; i < err.size(); ++i) {
    const double sk =
        atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double e = err[i] / sk;
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

OdeResult integrate_fixed_rk4(const OdeRhs& rhs, double t0, const Vec& y0,
                              double t_end, const OdeOptions& opts,
                              const OdeCallback& callback) {
  OdeResult res;
  res.ts.push_back(t0);
  res.ys.push_back(y0);

  const int n = static_cast<int>(y0.size());
  Vec y = y0, k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = t0;
  const double h_base = opts.fixed_step;

  while (t < t_end) {
    const bool last = t + h_base >= t_end - 1e-14 * std::max(1.0, std::abs(t_end));
    const double h = last ? t_end - t : h_base;
    bool ok = rhs(t, y, k1);
    ok = ok && rhs(t + 0.5 * h, tmp = y + 0.5 * h * k1, k2);
    ok = ok && rhs(t + 0.5 * h, tmp = y + 0.5 * h * k2, k3);
    ok = ok && rhs(t + h, tmp = y + h * k3, k4);
    res.rhs_evals += 4;
    if (!ok)
      throw NumericalError(
          "fixed-step integration left the evaluable region");
    Vec y1 = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double t_new = last ? t_end : t + h;
    Vec f1(n);
    rhs(t_new, y1, f1);
    ++res.rhs_evals;
    DenseStep ds;  // cubic Hermite in the step fraction
    ds.t0 = t;
    ds.t1 = t_new;
    ds.p[0] = y;
    ds.p[1] = y1 - y;
    ds.p[2] = h * k1 - ds.p[1];
    ds.p[3] = ds.p[1] - h * f1 - ds.p[2];
    ds.p[4] = Vec::Zero(n);
    res.dense.push_back(std::move(ds));

    t = t_new;
    y = y1;
    ++res.accepted;
    res.ts.push_back(t);
    res.ys.push_back(y);
    if (callback && !callback(t, y)) {
      res.status = OdeStatus::StoppedByCallback;
      return res;
    }
    if (res.accepted >= opts.max_steps)
      throw NumericalError("integration exceeded max_steps");
  }
  res.status = OdeStatus::ReachedEnd;
  return res;
}

}  // namespace

Vec OdeResult::at(double t) const {
  if (dense.empty()) throw ValidationError("OdeResult: no dense output");
  const double lo = dense.front().t0;
  const double hi = dense.back().t1;
  if (t < lo - 1e-12 * std::max(1.0, std::abs(lo)) ||
      t > hi + 1e-12 * std::max(1.0, std::abs(hi)))
    throw DomainError("OdeResult: time outside the integrated span");
  t = std::clamp(t, lo, hi);
  // Binary search for the covering step.
  size_t a = 0, b = dense.size() - 1;
  while (a < b) {
    const size_t mid = (a + b) / 2;
    if (t <= dense[mid].t1)
      b = mid;
    else
      a = mid + 1;
  }
  return dense[a].eval(t);
}

OdeResult integrate_ode(const OdeRhs& rhs, double t0, const Vec& y0,
                        double t_end, const OdeOptions& opts,
                        const OdeCallback& callback) {
  if (!(t_end > t0))
    throw ValidationError("integrate_ode: t_end must exceed t0");
  if (opts.fixed_step > 0.0)
    return integrate_fixed_rk4(rhs, t0, y0, t_end, opts, callback);

  const int n = static_cast<int>(y0.size());
  OdeResult res;
  res.ts.push_back(t0);
  res.ys.push_back(y0);

  Vec y = y0;
  double t = t0;
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y1(n), err(n);

  if (!rhs(t, y, k1))
    throw DomainError("integrate_ode: initial state not evaluable");
  ++res.rhs_evals;

  // Initial step from the scale of y and f.
  double h;
  {
    const double dy = y.norm() + 1.0;
    const double df = k1.norm() + 1e-12;
    h = 0.01 * dy / df;
    h = std::min(h, t_end - t0);
    if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
  }

  const double uround = std::numeric_limits<double>::epsilon();

  while (t < t_end) {
    if (res.accepted + res.rejected >= opts.max_steps)
      throw NumericalError("integration exceeded max_steps");
    if (h < 16.0 * uround * std::max(1.0, std::abs(t)))
      throw NumericalError("step-size underflow in adaptive integration");

    const bool last = t + h >= t_end - 1e-14 * std::max(1.0, std::abs(t_end));
    if (last) h = t_end - t;

    bool ok = true;
    ok = ok && rhs(t + c2 * h, ytmp = y + h * (a21 * k1), k2);
    ok = ok && rhs(t + c3 * h, ytmp = y + h * (a31 * k1 + a32 * k2), k3);
    ok = ok && rhs(t + c4 * h, ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3),
                   k4);
    ok = ok && rhs(t + c5 * h,
                   ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4),
                   k5);
    ok = ok &&
         rhs(t + h,
             ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                             a65 * k5),
             k6);
    if (ok) {
      y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      ok = rhs(t + h, y1, k7);
    }
    res.rhs_evals += 6;

    if (!ok) {
      // A stage left the evaluable region; retry with a shorter step.
      h *= 0.5;
      ++res.rejected;
      continue;
    }

    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double enorm = error_norm(err, y, y1, opts.atol, opts.rtol);

    if (enorm <= 1.0) {
      const double t_new = last ? t_end : t + h;
      DenseStep ds;
      ds.t0 = t;
      ds.t1 = t_new;
      ds.p[0] = y;
      ds.p[1] = y1 - y;
      ds.p[2] = h * k1 - ds.p[1];
      ds.p[3] = ds.p[1] - h * k7 - ds.p[2];
      ds.p[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 +
                     d7 * k7);
      res.dense.push_back(std::move(ds));

      t = t_new;
      y = y1;
      k1 = k7;  // first-same-as-last
      ++res.accepted;
      res.ts.push_back(t);
      res.ys.push_back(y);
      if (callback && !callback(t, y)) {
        res.status = OdeStatus::StoppedByCallback;
        return res;
      }
      double fac = 0.9 * std::pow(std::max(enorm, 1e-10), -0.2);
      fac = std::clamp(fac, 0.2, 5.0);
      h *= fac;
      if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
    } else {
      double fac = 0.9 * std::pow(enorm, -0.2);
      fac = std::clamp(fac, 0.1, 1.0);
      h *= fac;
      ++res.rejected;
    }
  }
  res.status = OdeStatus::ReachedEnd;
  return res;
}

}  // namespace igac

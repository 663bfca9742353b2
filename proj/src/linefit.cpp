#include "igac/linefit.hpp"

#include "igac/types.hpp"

namespace igac {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw ValidationError("fit_line: x and y length mismatch");
  if (x.size() < 2) throw ValidationError("fit_line: need at least 2 points");

  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ValidationError("fit_line: degenerate abscissae");

  LineFit fit;
  fit.points = static_cast<int>(x.size());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.sse = syy - fit.slope * sxy;
  if (fit.sse < 0.0) fit.sse = 0.0;  // round-off guard
  fit.r2 = syy > 0.0 ? 1.0 - fit.sse / syy : 1.0;
  if (fit.r2 < 0.0) fit.r2 = 0.0;
  if (fit.r2 > 1.0) fit.r2 = 1.0;
  return fit;
}

}  // namespace igac

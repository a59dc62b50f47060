#pragma once

#include <cmath>
#include <span>

namespace hardylab {

/// Pairwise (cascade) summation; error grows like log n instead of n.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

/// Weighted least squares y = a + b x with weights w = 1/variance. With unit
/// weights slope_stderr is only a scale-free leverage term.
inline LineFit weighted_line_fit(std::span<const double> x, std::span<const double> y, std::span<const double> w) {
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
    }
    const double xm = sx / sw;
    const double ym = sy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - xm) * (x[i] - xm);
        sxy += w[i] * (x[i] - xm) * (y[i] - ym);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = ym - f.slope * xm;
    f.slope_stderr = std::sqrt(1.0 / sxx);
    return f;
}

}  // namespace hardylab

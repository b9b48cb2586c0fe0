#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace biasrank {

using Vec = std::vector<double>;

// Row-major square matrix stored flat; element (r, c) of a d x d matrix
// lives at index r * d + c.
inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// y = (M + M^T) x for a row-major d x d matrix M.
inline Vec symmetrized_matvec(const Vec& m, const Vec& x) {
    const std::size_t d = x.size();
    Vec y(d, 0.0);
    for (std::size_t r = 0; r < d; ++r) {
        const double xr = x[r];
        double acc = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            acc += m[r * d + c] * x[c];   // M x
            y[c] += m[r * d + c] * xr;    // M^T x
        }
        y[r] += acc;
    }
    return y;
}

inline void axpy(double alpha, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace biasrank

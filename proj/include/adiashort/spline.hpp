#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adiashort {

// Natural cubic spline through (x_i, y_i).  Knots must be strictly increasing
// and at least two; two knots degenerate to the chord.  Evaluation outside the
// knot range extrapolates with the boundary segment's cubic, so callers that
// need hard coverage must validate the range themselves.
class CubicSpline {
public:
    CubicSpline() = default;

    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2) throw std::invalid_argument("CubicSpline: need at least 2 knots");
        if (y_.size() != n) throw std::invalid_argument("CubicSpline: x/y size mismatch");
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (!(x_[i] < x_[i + 1]))
                throw std::invalid_argument("CubicSpline: knots must be strictly increasing");
        m_.assign(n, 0.0);
        if (n == 2) return;

        // Tridiagonal system for the interior second derivatives; natural
        // boundary pins m_0 = m_{n-1} = 0.  Thomas algorithm.
        std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double hl = x_[i] - x_[i - 1];
            const double hr = x_[i + 1] - x_[i];
            diag[i] = (hl + hr) / 3.0;
            upper[i] = hr / 6.0;
            rhs[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
        }
        for (std::size_t i = 2; i + 1 < n; ++i) {
            const double lower = (x_[i] - x_[i - 1]) / 6.0;
            const double w = lower / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
        }
    }

    double operator()(double t) const {
        const std::size_t i = segment(t);
        const double h = x_[i + 1] - x_[i];
        const double A = (x_[i + 1] - t) / h;
        const double B = (t - x_[i]) / h;
        return A * y_[i] + B * y_[i + 1] +
               ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
    }

    double derivative(double t) const {
        const std::size_t i = segment(t);
        const double h = x_[i + 1] - x_[i];
        const double A = (x_[i + 1] - t) / h;
        const double B = (t - x_[i]) / h;
        return (y_[i + 1] - y_[i]) / h -
               (3.0 * A * A - 1.0) * h * m_[i] / 6.0 +
               (3.0 * B * B - 1.0) * h * m_[i + 1] / 6.0;
    }

    double xmin() const { return x_.front(); }
    double xmax() const { return x_.back(); }
    std::size_t knots() const { return x_.size(); }

private:
    std::size_t segment(double t) const {
        if (t <= x_.front()) return 0;
        if (t >= x_.back()) return x_.size() - 2;
        const auto it = std::upper_bound(x_.begin(), x_.end(), t);
        return static_cast<std::size_t>(it - x_.begin()) - 1;
    }

    std::vector<double> x_, y_, m_;
};

}  // namespace adiashort

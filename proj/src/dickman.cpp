#include "ncforge/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <mutex>
#include <string>
#include <vector>

#include "ncforge/errors.hpp"

namespace ncforge {

namespace {

constexpr int kStepsPerUnit = 1 << 12;
constexpr double kStep = 1.0 / kStepsPerUnit;
constexpr int kStencil = 6;
constexpr double kMaxU = 500.0;

// Grid values rho(i * kStep), extended on demand. Nodes at or below 2 use the
// closed forms; later nodes integrate the delay equation step by step.
class RhoGrid {
public:
    double operator()(double u)
    {
        if (u <= 2.0) return closed_form(u);
        std::lock_guard lock(mutex_);
        extend(static_cast<std::size_t>(std::ceil(u)) * kStepsPerUnit);
        return interpolate(u);
    }

private:
    static double closed_form(double u) { return u <= 1.0 ? 1.0 : 1.0 - std::log(u); }

    // Lagrange interpolation with a stencil kept inside the unit interval
    // containing u, where rho is analytic.
    double interpolate(double u) const
    {
        if (u <= 2.0) return closed_form(u);
        const double pos = u * kStepsPerUnit;
        const auto node = static_cast<std::size_t>(pos);
        if (double(node) == pos) return values_[node];

        const std::size_t unit = static_cast<std::size_t>(std::floor(u));
        const std::size_t first = unit * kStepsPerUnit;
        const std::size_t last = first + kStepsPerUnit - (kStencil - 1);
        const std::size_t j0 = std::clamp<std::size_t>(node >= 2 ? node - 2 : 0, first, last);

        double sum = 0;
        for (int a = 0; a < kStencil; ++a) {
            double w = 1;
            const double xa = double(j0 + a);
            for (int b = 0; b < kStencil; ++b)
                if (b != a) w *= (pos - double(j0 + b)) / (xa - double(j0 + b));
            sum += w * values_[j0 + a];
        }
        return sum;
    }

    double integrand(double t) const { return interpolate(t - 1.0) / t; }

    double simpson(double a, double b, double fa, double fm, double fb) const
    {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double adaptive(double a, double b, double fa, double fm, double fb, double whole, int depth) const
    {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = integrand(lm), frm = integrand(rm);
        const double left = simpson(a, m, fa, flm, fm);
        const double right = simpson(m, b, fm, frm, fb);
        const double delta = left + right - whole;
        if (depth <= 0 || std::fabs(delta) <= 1e-17) return left + right + delta / 15.0;
        return adaptive(a, m, fa, flm, fm, left, depth - 1) + adaptive(m, b, fm, frm, fb, right, depth - 1);
    }

    void extend(std::size_t last_node)
    {
        if (values_.empty()) {
            values_.resize(2 * kStepsPerUnit + 1);
            for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = closed_form(double(i) * kStep);
        }
        values_.reserve(last_node + 1);
        for (std::size_t i = values_.size(); i <= last_node; ++i) {
            const double a = double(i - 1) * kStep, b = double(i) * kStep;
            const double fa = integrand(a), fb = integrand(b), fm = integrand(0.5 * (a + b));
            const double step = adaptive(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 8);
            values_.push_back(values_[i - 1] - step);
        }
    }

    std::mutex mutex_;
    std::vector<double> values_;
};

RhoGrid& grid()
{
    static RhoGrid g;
    return g;
}

}  // namespace

double dickman_rho(double u)
{
    if (std::isnan(u) || u < 0) throw DomainError("dickman_rho needs u >= 0");
    if (u > kMaxU) {
        std::clog << "dickman_rho: u = " << u << " above " << kMaxU << ", returning 0 (underflow)\n";
        return 0.0;
    }
    return std::max(0.0, grid()(u));
}

}  // namespace ncforge

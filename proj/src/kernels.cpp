#include "o2rc/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace o2rc {

double f_gauss_series(double x, double t, int nmax) {
    double xr = even_reduced(x);
    double s = 0.0;
    for (int n = -nmax; n <= nmax; ++n) {
        double z = xr + kTwoPi * n;
        s += std::exp(-z * z / (2.0 * t));
    }
    return s;
}

double f_fourier_series(double x, double t, int nmax) {
    double xr = even_reduced(x);
    double s = 1.0;
    for (int n = 1; n <= nmax; ++n)
        s += 2.0 * std::exp(-0.5 * n * n * t) * std::cos(n * xr);
    return std::sqrt(t / kTwoPi) * s;
}

double f_t(double x, TimeParam t, KernelMode mode) {
    double tv = t.value();
    if (mode == KernelMode::fast)
        return tv < kSeriesSwitchT ? f_gauss_series(x, tv, kGaussTermsFast)
                                   : f_fourier_series(x, tv, kFourierTermsFast);
    return tv < kSeriesSwitchT ? f_gauss_series(x, tv, kTermsAccurate)
                               : f_fourier_series(x, tv, kTermsAccurate);
}

double wrapped_heat_kernel(Angle th1, Angle th2, TimeParam t, KernelMode mode) {
    return f_t(th1.rad() - th2.rad(), t, mode) / std::sqrt(kTwoPi * t.value());
}

double wrapped_heat_kernel_dual(Angle th1, Angle th2, TimeParam t, KernelMode mode) {
    int nmax = mode == KernelMode::fast ? kFourierTermsFast : kTermsAccurate;
    return f_fourier_series(th1.rad() - th2.rad(), t.value(), nmax) / std::sqrt(kTwoPi * t.value());
}

namespace {

// Returns the principal representative if it lies in [-bound, bound],
// throws otherwise. Values within 1e-14 of the boundary count as absorbed.
double checked_principal(Angle th, double bound, const char* what) {
    double p = th.principal();
    if (std::fabs(p) > bound + 1e-14) throw std::domain_error(what);
    return p;
}

bool at_boundary(double p, double bound) { return bound - std::fabs(p) < 1e-14; }

} // namespace

double reflected_kernel_half(Angle th1, Angle th2, TimeParam t, KernelMode mode) {
    double p1 = checked_principal(th1, kPi / 2, "reflected_kernel_half: angle outside (-pi/2, pi/2)");
    double p2 = checked_principal(th2, kPi / 2, "reflected_kernel_half: angle outside (-pi/2, pi/2)");
    if (at_boundary(p1, kPi / 2) || at_boundary(p2, kPi / 2)) return 0.0;
    double v = wrapped_heat_kernel(th1, th2, t, mode) -
               wrapped_heat_kernel(th1, Angle(kPi - p2), t, mode);
    return v > 0.0 ? v : 0.0;
}

double reflected_kernel_half_images(double th1, double th2, double t, int nmax) {
    double s = 0.0;
    for (int n = -nmax; n <= nmax; ++n) {
        double a = th1 - th2 + 2.0 * n * kPi;
        double b = th1 + th2 + (2.0 * n - 1.0) * kPi;
        s += std::exp(-a * a / (2.0 * t)) - std::exp(-b * b / (2.0 * t));
    }
    return s / std::sqrt(kTwoPi * t);
}

double reflected_kernel_quarter(Angle th1, Angle th2, TimeParam t, KernelMode mode) {
    double p1 = checked_principal(th1, kPi / 4, "reflected_kernel_quarter: angle outside (-pi/4, pi/4)");
    double p2 = checked_principal(th2, kPi / 4, "reflected_kernel_quarter: angle outside (-pi/4, pi/4)");
    if (at_boundary(p1, kPi / 4) || at_boundary(p2, kPi / 4)) return 0.0;
    double d = p1 - p2, s = p1 + p2;
    double norm = std::sqrt(kTwoPi * t.value());
    double v = (f_t(d, t, mode) + f_t(d + kPi, t, mode) -
                f_t(s - kPi / 2, t, mode) - f_t(s + kPi / 2, t, mode)) / norm;
    return v > 0.0 ? v : 0.0;
}

double reflected_kernel_quarter_images(double th1, double th2, double t, int nmax) {
    double s = 0.0;
    for (int k = -nmax; k <= nmax; ++k) {
        double a = th1 - th2 + k * kPi;
        double b = th1 + th2 + kPi / 2 + k * kPi;
        s += std::exp(-a * a / (2.0 * t)) - std::exp(-b * b / (2.0 * t));
    }
    return s / std::sqrt(kTwoPi * t);
}

} // namespace o2rc

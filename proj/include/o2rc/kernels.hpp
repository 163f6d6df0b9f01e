#pragma once

#include "o2rc/angle.hpp"

namespace o2rc {

// Heat kernels on the circle.
//
// The wrapped Gaussian
//     p_t(th1, th2) = (2 pi t)^{-1/2} sum_n exp(-(th1 - th2 + 2 n pi)^2 / 2t)
// has a dual Fourier representation (Poisson summation)
//     p_t(th1, th2) = (2 pi)^{-1} (1 + 2 sum_{n>=1} e^{-n^2 t / 2} cos(n (th1 - th2))).
// The Gaussian side converges fast for small t, the Fourier side for large t.
// Production evaluation truncates the Gaussian side to n in {-2..2} for
// t < 2 pi and the Fourier side to n in {1, 2} for t >= 2 pi; `accurate`
// mode uses |n| <= 50 and is meant for oracles and identity checks.

enum class KernelMode { fast, accurate };

inline constexpr int kGaussTermsFast = 2;
inline constexpr int kFourierTermsFast = 2;
inline constexpr int kTermsAccurate = 50;
inline constexpr double kSeriesSwitchT = kTwoPi;

// f_t(x) = sum_n exp(-(x + 2 n pi)^2 / 2t), even and 2pi-periodic;
// p_t(th1, th2) = (2 pi t)^{-1/2} f_t(th1 - th2).
double f_gauss_series(double x, double t, int nmax);

// Fourier side of the same function: sqrt(t / 2 pi) (1 + 2 sum e^{-n^2 t/2} cos(n x)).
double f_fourier_series(double x, double t, int nmax);

double f_t(double x, TimeParam t, KernelMode mode = KernelMode::fast);

double wrapped_heat_kernel(Angle th1, Angle th2, TimeParam t, KernelMode mode = KernelMode::fast);

// Fourier-side evaluation with the kernel normalization.
double wrapped_heat_kernel_dual(Angle th1, Angle th2, TimeParam t, KernelMode mode = KernelMode::fast);

// Absorbed kernel on [-pi/2, pi/2] (linear Brownian motion killed at the
// endpoints). Equals p_t(th1, th2) - p_t(th1, pi - th2); arguments must lie
// in (-pi/2, pi/2), the endpoints themselves map to 0.
double reflected_kernel_half(Angle th1, Angle th2, TimeParam t, KernelMode mode = KernelMode::fast);

// Repeated-reflection image series for the same kernel; independent route
// used by the verification suites.
double reflected_kernel_half_images(double th1, double th2, double t, int nmax);

// Absorbed kernel on [-pi/4, pi/4]. Equals
//   w(u,v) + w(u,-v) - w(R1 u, v) - w(R2 u, v)
// with w the wrapped Gaussian and R1, R2 the diagonal reflections.
double reflected_kernel_quarter(Angle th1, Angle th2, TimeParam t, KernelMode mode = KernelMode::fast);

double reflected_kernel_quarter_images(double th1, double th2, double t, int nmax);

} // namespace o2rc

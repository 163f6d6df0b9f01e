#pragma once

#include <cmath>
#include <stdexcept>

namespace o2rc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Tolerance for "spin sits exactly on a reflection axis": such spins are
// treated as not same-side, so the bond is forced closed.
inline constexpr double kOnAxisTol = 1e-12;

// canonical representative in [0, 2pi)
inline double canonical_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0; // fmod rounding can land exactly on 2pi
    return r;
}

// representative in (-pi, pi]
inline double principal_angle(double a) {
    double r = canonical_angle(a);
    return r > kPi ? r - kTwoPi : r;
}

// representative in [0, pi] for even 2pi-periodic functions; takes |a| first
// so that +-a reduce to bitwise-identical values
inline double even_reduced(double a) {
    return std::fabs(principal_angle(std::fabs(a)));
}

// Point on the unit circle, stored as its canonical angle in [0, 2pi).
class Angle {
public:
    Angle() : v_(0.0) {}
    explicit Angle(double radians) : v_(canonical_angle(radians)) {}

    double rad() const { return v_; }
    double principal() const { return principal_angle(v_); }

    Angle operator+(Angle o) const { return Angle(v_ + o.v_); }
    Angle operator-(Angle o) const { return Angle(v_ - o.v_); }
    Angle operator-() const { return Angle(-v_); }

    bool almost_equal(Angle o, double tol = 1e-12) const {
        double d = std::fabs(principal_angle(v_ - o.v_));
        return d <= tol;
    }

private:
    double v_;
};

// Edge time parameter t > 0 (inverse temperature beta = 1/(2t) for the
// circle diffusion weight).
class TimeParam {
public:
    explicit TimeParam(double t) : t_(t) {
        if (!(t > 0.0) || !std::isfinite(t))
            throw std::invalid_argument("time parameter must be positive and finite");
    }
    double value() const { return t_; }

private:
    double t_;
};

// Reflection z -> e^{2 i nu} conj(z), fixing the circle points +-e^{i nu}.
// On angles: theta -> 2 nu - theta.
class ReflectionAxis {
public:
    explicit ReflectionAxis(Angle nu) : nu_(nu) {}
    explicit ReflectionAxis(double nu) : nu_(Angle(nu)) {}

    // R: axis through +-i (nu = pi/2), the reflection z -> -conj(z)
    static ReflectionAxis imaginary() { return ReflectionAxis(kPi / 2); }
    // R1: axis through +-e^{i pi/4}
    static ReflectionAxis diag1() { return ReflectionAxis(kPi / 4); }
    // R2: axis through +-e^{-i pi/4}
    static ReflectionAxis diag2() { return ReflectionAxis(-kPi / 4); }

    Angle nu() const { return nu_; }

    double reflect(double theta) const { return canonical_angle(2.0 * nu_.rad() - theta); }
    Angle reflect(Angle u) const { return Angle(reflect(u.rad())); }

    // Signed side coordinate of theta relative to the axis line; zero on
    // the axis, opposite signs on the two half-circles.
    double side_coordinate(double theta) const { return std::sin(theta - nu_.rad()); }

    bool on_axis(double theta) const { return std::fabs(side_coordinate(theta)) <= kOnAxisTol; }

    // Strict same-side test; false whenever either spin is on the axis.
    bool same_side(double th1, double th2) const {
        double s1 = side_coordinate(th1), s2 = side_coordinate(th2);
        if (std::fabs(s1) <= kOnAxisTol || std::fabs(s2) <= kOnAxisTol) return false;
        return s1 * s2 > 0;
    }

private:
    Angle nu_;
};

inline Angle reflect(const ReflectionAxis& axis, Angle u) { return axis.reflect(u); }

// Quadrant classes cut by the two diagonal axes, half-open so the partition
// is total: I1 = [-pi/4, pi/4), I2 = [pi/4, 3pi/4), I3, I4 counterclockwise.
// Returns 0..3.
inline int quadrant_class(double theta) {
    double s = canonical_angle(theta + kPi / 4.0);
    int q = static_cast<int>(s / (kPi / 2.0));
    return q > 3 ? 3 : q;
}

inline bool same_quadrant_class(double th1, double th2) {
    return quadrant_class(th1) == quadrant_class(th2);
}

} // namespace o2rc

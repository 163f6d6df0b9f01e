#include "o2rc/weight.hpp"

#include <cmath>
#include <stdexcept>

namespace o2rc {

WeightFunction WeightFunction::villain(TimeParam t, KernelMode mode) {
    WeightFunction w;
    w.kind_ = Kind::villain;
    w.t_ = t.value();
    w.mode_ = mode;
    w.convex_ = true;
    return w;
}

WeightFunction WeightFunction::villain_tabulated(TimeParam t, int table_nodes) {
    if (table_nodes < 16) throw std::invalid_argument("villain table too small");
    WeightFunction w = villain(t, KernelMode::fast);
    auto tab = std::make_shared<std::vector<double>>(table_nodes + 1);
    for (int i = 0; i <= table_nodes; ++i) {
        double x = kTwoPi * i / table_nodes;
        (*tab)[i] = std::log(f_t(x, t, KernelMode::fast));
    }
    w.table_ = std::move(tab);
    return w;
}

WeightFunction WeightFunction::xy_exp(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("xy weight needs beta > 0");
    WeightFunction w;
    w.kind_ = Kind::xy_exp;
    w.beta_ = beta;
    w.convex_ = true;
    return w;
}

WeightFunction WeightFunction::rho_cos(std::function<double(double)> rho, bool convex_flag) {
    if (!rho) throw std::invalid_argument("rho_cos weight needs a map");
    // monotone increasing and positive, checked on a grid
    const int grid = 64;
    double prev = rho(-1.0);
    if (!(prev > 0.0) || !std::isfinite(prev))
        throw std::invalid_argument("rho must be positive and finite on [-1,1]");
    for (int i = 1; i <= grid; ++i) {
        double s = -1.0 + 2.0 * i / grid;
        double v = rho(s);
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("rho must be positive and finite on [-1,1]");
        if (v + 1e-12 < prev)
            throw std::invalid_argument("rho must be increasing on [-1,1]");
        prev = v;
    }
    WeightFunction w;
    w.kind_ = Kind::rho_cos;
    w.rho_ = std::move(rho);
    w.convex_ = convex_flag;
    return w;
}

double WeightFunction::eval_diff(double diff) const {
    switch (kind_) {
    case Kind::villain:
        if (table_) return std::exp(log_eval_diff(diff));
        return f_t(diff, TimeParam(t_), mode_) / std::sqrt(kTwoPi * t_);
    case Kind::xy_exp:
        return std::exp(beta_ * std::cos(even_reduced(diff)));
    case Kind::rho_cos:
        return rho_(std::cos(even_reduced(diff)));
    }
    return 0.0; // unreachable
}

double WeightFunction::log_eval_diff(double diff) const {
    switch (kind_) {
    case Kind::villain: {
        if (table_) {
            const auto& tab = *table_;
            int n = static_cast<int>(tab.size()) - 1;
            double x = canonical_angle(diff) / kTwoPi * n;
            int i = static_cast<int>(x);
            if (i >= n) i = n - 1;
            double frac = x - i;
            return tab[i] + frac * (tab[i + 1] - tab[i]) - 0.5 * std::log(kTwoPi * t_);
        }
        return std::log(f_t(diff, TimeParam(t_), mode_)) - 0.5 * std::log(kTwoPi * t_);
    }
    case Kind::xy_exp:
        return beta_ * std::cos(even_reduced(diff));
    case Kind::rho_cos:
        return std::log(rho_(std::cos(even_reduced(diff))));
    }
    return 0.0; // unreachable
}

double WeightFunction::eval_difference(double diff_a, double diff_b) const {
    switch (kind_) {
    case Kind::villain: {
        if (table_) return eval_diff(diff_a) - eval_diff(diff_b);
        // f_t is even; work with the even-reduced representatives
        double ra = even_reduced(diff_a);
        double rb = even_reduced(diff_b);
        if (t_ < kSeriesSwitchT) {
            int nmax = mode_ == KernelMode::fast ? kGaussTermsFast : kTermsAccurate;
            double inv2t = 0.5 / t_;
            double s = 0.0;
            for (int n = -nmax; n <= nmax; ++n) {
                double xa = ra + kTwoPi * n, xb = rb + kTwoPi * n;
                // phi(xa) - phi(xb) = -phi(xa) expm1((xa^2 - xb^2)/2t)
                s -= std::exp(-xa * xa * inv2t) * std::expm1((xa - xb) * (xa + xb) * inv2t);
            }
            return s / std::sqrt(kTwoPi * t_);
        }
        int nmax = mode_ == KernelMode::fast ? kFourierTermsFast : kTermsAccurate;
        double s = 0.0;
        for (int n = 1; n <= nmax; ++n)
            s -= 2.0 * std::exp(-0.5 * n * n * t_) * std::sin(0.5 * n * (ra + rb)) *
                 std::sin(0.5 * n * (ra - rb));
        return s / kPi;
    }
    case Kind::xy_exp: {
        double pa = even_reduced(diff_a), pb = even_reduced(diff_b);
        double cb = std::cos(pb);
        double cdiff = -2.0 * std::sin(0.5 * (pa + pb)) * std::sin(0.5 * (pa - pb));
        return std::exp(beta_ * cb) * std::expm1(beta_ * cdiff);
    }
    case Kind::rho_cos:
        return rho_(std::cos(even_reduced(diff_a))) - rho_(std::cos(even_reduced(diff_b)));
    }
    return 0.0; // unreachable
}


} // namespace o2rc

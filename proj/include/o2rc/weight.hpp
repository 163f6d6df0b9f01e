#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "o2rc/angle.hpp"
#include "o2rc/kernels.hpp"

namespace o2rc {

// Edge interaction w(u_x, u_y) of the circle spin model. All variants are
// rotation invariant (they depend only on theta_x - theta_y mod 2pi) and
// reflection invariant (the dependence is even).
//
//   villain : w = p_t, the wrapped Gaussian kernel
//   xy_exp  : w = exp(beta cos(theta_x - theta_y))
//   rho_cos : w = rho(cos(theta_x - theta_y)), rho increasing on [-1, 1]
//
// The tabulated Villain variant backs log f_t with a uniform interpolation
// grid; it is what the simulation hot loops use. Identities that compare two
// distinct analytic routes must use the non-tabulated variants so both
// routes evaluate the same series.
class WeightFunction {
public:
    enum class Kind { villain, xy_exp, rho_cos };

    static WeightFunction villain(TimeParam t, KernelMode mode = KernelMode::fast);
    static WeightFunction villain_tabulated(TimeParam t, int table_nodes = 1 << 14);
    static WeightFunction xy_exp(double beta);
    static WeightFunction rho_cos(std::function<double(double)> rho, bool convex_flag);

    double operator()(Angle u, Angle v) const { return eval_diff(u.rad() - v.rad()); }
    double eval_diff(double diff) const;
    double log_eval_diff(double diff) const;

    // w(diff_a) - w(diff_b). For the Villain and XY weights the difference
    // is evaluated in a cancellation-free form (expm1 / product-form cosine
    // differences), so it keeps relative accuracy even where the two
    // evaluations nearly coincide; rho_cos and the tabulated variant
    // subtract naively.
    double eval_difference(double diff_a, double diff_b) const;

    Kind kind() const { return kind_; }
    bool is_villain() const { return kind_ == Kind::villain; }
    double villain_t() const { return t_; }
    double xy_beta() const { return beta_; }
    bool convex() const { return convex_; }

private:
    WeightFunction() = default;

    Kind kind_ = Kind::xy_exp;
    double t_ = 0.0;
    double beta_ = 0.0;
    KernelMode mode_ = KernelMode::fast;
    bool convex_ = false;
    std::function<double(double)> rho_;
    // log f_t samples on [0, 2pi], table_.size() - 1 intervals
    std::shared_ptr<const std::vector<double>> table_;
};

} // namespace o2rc

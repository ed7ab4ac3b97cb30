#pragma once

// Explicit Runge-Kutta steppers over any vector-space state type (anything
// with +, -, scalar * and cwiseAbs()). Dormand-Prince 5(4) with error control,
// and classical RK4 for fixed-step reproducibility runs.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace enzq::ode {

class StepSizeUnderflow : public std::runtime_error {
  public:
    StepSizeUnderflow(double t, double h)
        : std::runtime_error("step size underflow (h = " + std::to_string(h) + ") at t = " + std::to_string(t)),
          t_(t) {}
    double time() const { return t_; }

  private:
    double t_;
};

struct AdaptiveOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double initial_step = 1e-3;
    double max_step = 0.5;
    double safety = 0.9;
    double min_factor = 0.2;
    double max_factor = 5.0;
    long max_steps = 10'000'000;
};

struct StepStats {
    long accepted = 0;
    long rejected = 0;
    double max_error = 0.0; ///< largest accepted scaled error estimate (<= 1)
    double last_step = 0.0;
};

/// Dormand-Prince 5(4) integrator with FSAL. Advances `y` from `t` to `t_end`
/// exactly, carrying the step size across calls in `h`.
template <class State, class Rhs>
class DormandPrince {
  public:
    DormandPrince(Rhs rhs, AdaptiveOptions opt = {}) : rhs_(std::move(rhs)), opt_(opt) {}

    StepStats advance(State &y, double &t, double t_end, double &h) {
        StepStats st;
        if (t_end <= t)
            return st;
        if (!(h > 0.0))
            h = opt_.initial_step;
        State k1 = rhs_(t, y);
        long steps = 0;
        while (t < t_end) {
            if (++steps > opt_.max_steps)
                throw StepSizeUnderflow(t, h);
            h = std::min(h, opt_.max_step);
            bool last = false;
            double hs = h;
            if (t + hs >= t_end) {
                hs = t_end - t;
                last = true;
            }
            if (hs <= 1e-14 * std::max(1.0, std::abs(t)))
                throw StepSizeUnderflow(t, hs);

            const State k2 = rhs_(t + c2 * hs, State(y + hs * (a21 * k1)));
            const State k3 = rhs_(t + c3 * hs, State(y + hs * (a31 * k1 + a32 * k2)));
            const State k4 = rhs_(t + c4 * hs, State(y + hs * (a41 * k1 + a42 * k2 + a43 * k3)));
            const State k5 = rhs_(t + c5 * hs, State(y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
            const State k6 =
                rhs_(t + hs, State(y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
            State ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            State k7 = rhs_(t + hs, ynew);
            const State err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            const auto scale = (opt_.atol + opt_.rtol * y.cwiseAbs().cwiseMax(ynew.cwiseAbs()).array()).eval();
            const double en = (err.cwiseAbs().array() / scale).maxCoeff();

            if (en <= 1.0) {
                y = std::move(ynew);
                k1 = std::move(k7);
                t = last ? t_end : t + hs;
                ++st.accepted;
                st.max_error = std::max(st.max_error, en);
                st.last_step = hs;
                const double fac = en == 0.0 ? opt_.max_factor
                                             : std::clamp(opt_.safety * std::pow(en, -0.2), opt_.min_factor,
                                                          opt_.max_factor);
                // A step shortened to land on t_end does not shrink the carried size.
                h = last ? std::max(h, hs * fac) : hs * fac;
            } else {
                ++st.rejected;
                h = hs * std::max(opt_.min_factor, opt_.safety * std::pow(en, -0.2));
            }
        }
        return st;
    }

  private:
    Rhs rhs_;
    AdaptiveOptions opt_;

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    // b - b*, with b* the embedded 4th-order weights.
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
};

/// Classical RK4 with a fixed nominal step; each interval [t, t_end] is split
/// into ceil((t_end - t) / dt) equal substeps.
template <class State, class Rhs>
StepStats rk4_advance(const Rhs &rhs, State &y, double &t, double t_end, double dt) {
    StepStats st;
    if (t_end <= t)
        return st;
    if (!(dt > 0.0))
        throw std::invalid_argument("fixed step must be positive");
    const long n = std::max(1L, static_cast<long>(std::ceil((t_end - t) / dt - 1e-9)));
    const double t0 = t;
    const double h = (t_end - t0) / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
        const double ti = t0 + static_cast<double>(i) * h;
        const State k1 = rhs(ti, y);
        const State k2 = rhs(ti + 0.5 * h, State(y + (0.5 * h) * k1));
        const State k3 = rhs(ti + 0.5 * h, State(y + (0.5 * h) * k2));
        const State k4 = rhs(ti + h, State(y + h * k3));
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ++st.accepted;
    }
    t = t_end;
    st.last_step = h;
    return st;
}

} // namespace enzq::ode

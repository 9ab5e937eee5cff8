#include "dextwist/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dextwist/errors.hpp"

namespace dextwist::fdgd {

void Options::validate() const {
    if (iterations < 1) throw ConfigInvalid("solver iterations must be >= 1");
    if (!(fd_step > 0.0 && step_size > 0.0 && per_iter_clip > 0.0))
        throw ConfigInvalid("solver fd_step, step_size, per_iter_clip must be > 0");
}

static double safe_eval(const std::function<double(const Eigen::VectorXd&)>& f,
                        const Eigen::VectorXd& q) {
    try {
        const double v = f(q);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const Error&) {
        // A probe that leaves the objective's domain acts as an infinite wall.
        return std::numeric_limits<double>::infinity();
    }
}

Result minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                const Eigen::VectorXd& q0, const std::vector<int>& active,
                const Options& opt, const Eigen::VectorXd* lower,
                const Eigen::VectorXd* upper) {
    opt.validate();
    Result res;
    res.q = q0;
    res.initial = safe_eval(f, q0);
    res.objective = res.initial;
    res.iterations = opt.iterations;

    Eigen::VectorXd q = q0;
    Eigen::VectorXd probe = q0;
    for (int it = 0; it < opt.iterations; ++it) {
        Eigen::VectorXd step = Eigen::VectorXd::Zero(q.size());
        for (int j : active) {
            probe = q;
            probe[j] = q[j] + opt.fd_step;
            const double fp = safe_eval(f, probe);
            probe[j] = q[j] - opt.fd_step;
            const double fm = safe_eval(f, probe);
            const bool pinf = std::isinf(fp), minf = std::isinf(fm);
            if (pinf && minf) continue; // blocked on both sides: hold
            if (pinf) { step[j] = -opt.per_iter_clip; continue; } // back away from the wall
            if (minf) { step[j] = opt.per_iter_clip; continue; }
            const double g = (fp - fm) / (2.0 * opt.fd_step);
            step[j] = std::clamp(-opt.step_size * g, -opt.per_iter_clip, opt.per_iter_clip);
        }
        q += step;
        if (lower && upper) q = q.cwiseMax(*lower).cwiseMin(*upper);
        const double fq = safe_eval(f, q);
        if (fq < res.objective) {
            res.objective = fq;
            res.q = q;
        }
    }
    return res;
}

} // namespace dextwist::fdgd

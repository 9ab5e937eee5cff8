#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace dextwist::fdgd {

struct Options {
    int iterations = 5;
    double fd_step = 1e-3;       // central-difference half step
    double step_size = 0.02;     // q += -step_size * grad
    double per_iter_clip = 0.05; // inf-norm bound on each update

    void validate() const;
};

struct Result {
    Eigen::VectorXd q;      // best iterate visited (q0 included)
    double objective = 0.0; // f at best iterate
    double initial = 0.0;   // f at q0
    int iterations = 0;
};

// Fixed-iteration gradient descent with central differences over the active
// coordinates only; inactive coordinates are never probed or moved. Updates
// are clipped per component, then clamped into [lower, upper] when limits
// are given. Returns the best iterate visited, so objective <= initial.
// Non-finite objective probes contribute a zero step for that coordinate.
Result minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                const Eigen::VectorXd& q0, const std::vector<int>& active,
                const Options& opt, const Eigen::VectorXd* lower = nullptr,
                const Eigen::VectorXd* upper = nullptr);

} // namespace dextwist::fdgd

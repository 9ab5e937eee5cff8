#pragma once

#include <vector>

#include "dextwist/se3.hpp"

namespace dextwist {

// Angle-vs-time series with a per-frame validity mask (pinch active).
struct AngleSeries {
    std::vector<double> t;      // s, strictly increasing
    std::vector<double> value;  // rad
    std::vector<bool> active;

    void validate() const;
};

struct MetricsReport {
    double rmse_deg = 0.0;
    double mae_deg = 0.0;
    double corr = 0.0;
    double axis_dev_mean_deg = 0.0;
    double axis_dev_max_deg = 0.0;
    long n_samples = 0;
};

// e(t) = method - gt in rad over frames where both series are active.
// MisalignedSeries on timestamp mismatch, EmptyMask on a disjoint mask.
std::vector<double> tracking_error(const AngleSeries& method, const AngleSeries& gt);

// (RMSE, MAE) in degrees from errors in rad; population 1/T convention.
std::pair<double, double> rmse_mae(const std::vector<double>& errors);

// Population-normalized Pearson correlation; DegenerateSignal below 1e-12 sd.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

// arccos(|a . a_ref|) in degrees, clamped into [0, 90].
double axis_deviation(const UnitVec3& a, const UnitVec3& a_ref);

} // namespace dextwist

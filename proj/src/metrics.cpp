#include "dextwist/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dextwist/errors.hpp"

namespace dextwist {

void AngleSeries::validate() const {
    if (t.size() != value.size() || t.size() != active.size())
        throw MisalignedSeries("series field lengths differ");
    for (size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw MisalignedSeries("timestamps not strictly increasing");
}

std::vector<double> tracking_error(const AngleSeries& method, const AngleSeries& gt) {
    method.validate();
    gt.validate();
    if (method.t.size() != gt.t.size())
        throw MisalignedSeries("method and ground-truth series lengths differ");
    std::vector<double> e;
    for (size_t i = 0; i < method.t.size(); ++i) {
        if (method.t[i] != gt.t[i])
            throw MisalignedSeries("method and ground-truth timestamps differ");
        if (method.active[i] && gt.active[i]) e.push_back(method.value[i] - gt.value[i]);
    }
    if (e.empty()) throw EmptyMask("no frame is active in both series");
    return e;
}

std::pair<double, double> rmse_mae(const std::vector<double>& errors) {
    if (errors.empty()) throw EmptyMask("empty error sequence");
    double sq = 0.0, ab = 0.0;
    for (double e : errors) {
        sq += e * e;
        ab += std::abs(e);
    }
    const double n = static_cast<double>(errors.size());
    return {rad2deg(std::sqrt(sq / n)), rad2deg(ab / n)};
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw MisalignedSeries("pearson inputs differ in length");
    if (a.size() < 2) throw DegenerateSignal("pearson needs at least 2 samples");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    cov /= n;
    va /= n;
    vb /= n;
    const double sa = std::sqrt(va), sb = std::sqrt(vb);
    if (sa <= 1e-12 || sb <= 1e-12)
        throw DegenerateSignal("pearson: standard deviation at or below 1e-12");
    return cov / (sa * sb);
}

double axis_deviation(const UnitVec3& a, const UnitVec3& a_ref) {
    const double d = std::clamp(std::abs(a.dot(a_ref)), -1.0, 1.0);
    return rad2deg(std::acos(d));
}

} // namespace dextwist

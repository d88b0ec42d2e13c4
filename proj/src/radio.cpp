#include "d2d/radio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace d2d {

const char* to_string(EstimateMode mode) {
    switch (mode) {
    case EstimateMode::kStatistical: return "statistical";
    case EstimateMode::kPerfectInversion: return "perfect";
    case EstimateMode::kTruncatedInversion: return "truncated";
    }
    return "?";
}

void RadioParams::validate() const {
    if (!(alpha >= 2.0)) throw std::invalid_argument("RadioParams: alpha must be >= 2");
    if (!(kappa > 1.0)) throw std::invalid_argument("RadioParams: kappa must be > 1");
    if (!(beta_b > 0.0)) throw std::invalid_argument("RadioParams: beta_b must be > 0");
    if (!(beta_d > 0.0)) throw std::invalid_argument("RadioParams: beta_d must be > 0");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("RadioParams: sigma2 must be > 0");
    if (!(upsilon > 0.0)) throw std::invalid_argument("RadioParams: upsilon must be > 0");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double sample_fading(double upsilon, Rng& rng) {
    if (!(upsilon > 0.0)) throw std::invalid_argument("sample_fading: upsilon must be > 0");
    return rng.exponential(upsilon);
}

double sinr(const Emitter& signal, std::span<const Emitter> interferers, double sigma2,
            double alpha) {
    double denom = sigma2;
    for (const Emitter& e : interferers) {
        denom += e.power * std::pow(e.link.distance, -alpha) * e.link.h;
    }
    return signal.power * std::pow(signal.link.distance, -alpha) * signal.link.h / denom;
}

double macro_min_power(double d_mb, double h_mb, const RadioParams& p) {
    return p.kappa * p.beta_b * std::pow(d_mb, p.alpha) / h_mb * p.sigma2;
}

double d2d_max_power(double d_sb, double h_sb_hat, const RadioParams& p) {
    return (p.kappa - 1.0) * std::pow(d_sb, p.alpha) * p.sigma2 / h_sb_hat;
}

double gain_estimate(EstimateMode mode, double h_true, double upsilon) {
    switch (mode) {
    case EstimateMode::kStatistical: return upsilon;
    case EstimateMode::kPerfectInversion: return h_true;
    case EstimateMode::kTruncatedInversion: return std::max(1.0, h_true);
    }
    return upsilon;
}

double d2d_tx_power(double d_ib, double h_ib_hat, double h_ij_true, EstimateMode mode,
                    const RadioParams& p) {
    return d2d_max_power(d_ib, h_ib_hat, p) / gain_estimate(mode, h_ij_true, p.upsilon);
}

} // namespace d2d

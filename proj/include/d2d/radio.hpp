#pragma once

#include <span>

#include "d2d/rng.hpp"

namespace d2d {

// Channel gain estimate used when a D2D transmitter inverts its link to the
// intended receiver. Statistical is the protocol's practical choice; the two
// inversion modes bound its outage performance.
enum class EstimateMode {
    kStatistical,         // h_hat = E[h] = upsilon
    kPerfectInversion,    // h_hat = h (lower bound on D2D outage)
    kTruncatedInversion,  // h_hat = max(1, h) (upper bound, BS-safe)
};

const char* to_string(EstimateMode mode);

// All values linear / SI. Config-level dB/dBm inputs are converted at parse time.
struct RadioParams {
    double alpha = 3.0;        // pathloss exponent
    double sigma2 = 3.9810717055349694e-14; // noise power, W (-104 dBm)
    double beta_b = 10.0;      // min SINR at the base station (10 dB)
    double beta_d = 3.1622776601683795;     // min SINR at a D2D receiver (5 dB)
    double kappa = 1.9952623149688795;      // interference margin at the BS (3 dB)
    double upsilon = 1.0;      // mean fading power gain E[h]

    void validate() const; // throws std::invalid_argument
};

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Exponential fading power gain h = |f|^2 with mean upsilon.
double sample_fading(double upsilon, Rng& rng);

struct LinkSample {
    double distance; // meters, > 0
    double h;        // fading power gain, > 0
};

struct Emitter {
    double power; // transmit power, W
    LinkSample link;
};

double sinr(const Emitter& signal, std::span<const Emitter> interferers, double sigma2,
            double alpha);

// Minimum macro-user transmit power: hits SINR kappa*beta_b at the BS when no
// D2D interferes. The BS power-controls macro users with the true gain.
double macro_min_power(double d_mb, double h_mb, const RadioParams& p);

// Largest D2D power that cannot push the BS below beta_b when the macro user
// transmits at macro_min_power, given the estimate h_sb_hat of the D2D-BS gain.
double d2d_max_power(double d_sb, double h_sb_hat, const RadioParams& p);

// The estimate h_hat of a true gain under the given mode.
double gain_estimate(EstimateMode mode, double h_true, double upsilon);

// Power a D2D transmitter i uses toward receiver j: d2d_max_power scaled by
// the inverse of the mode's estimate of the i->j gain.
double d2d_tx_power(double d_ib, double h_ib_hat, double h_ij_true, EstimateMode mode,
                    const RadioParams& p);

} // namespace d2d

#include "d2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace d2d {

namespace {
constexpr double kPi = std::numbers::pi;

double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }
} // namespace

double distance(const Point2D& a, const Point2D& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void DistanceParams::validate() const {
    if (!(r > 0.0) || !(R > r)) {
        throw std::invalid_argument("DistanceParams: requires 0 < r < R");
    }
}

Point2D sample_uniform_disc(const Point2D& center, double radius, Rng& rng) {
    if (radius < 0.0) {
        throw std::invalid_argument("sample_uniform_disc: negative radius");
    }
    if (radius == 0.0) {
        return center;
    }
    const double rad = radius * std::sqrt(rng.uniform01());
    const double ang = 2.0 * kPi * rng.uniform01();
    return Point2D{center.x + rad * std::cos(ang), center.y + rad * std::sin(ang)};
}

double circle_intersection_area(double ra, double rb, double center_dist) {
    if (ra < 0.0 || rb < 0.0 || center_dist < 0.0) {
        throw std::invalid_argument("circle_intersection_area: negative argument");
    }
    if (ra > rb) {
        std::swap(ra, rb); // canonical order makes the swap symmetry exact
    }
    if (ra == 0.0) {
        return 0.0;
    }
    const double scale = std::max(center_dist, rb);
    const double eps = 1e-9 * scale;
    if (center_dist + ra <= rb + eps) {
        return kPi * ra * ra; // smaller disc contained in the larger
    }
    if (center_dist >= ra + rb - eps) {
        return 0.0; // disjoint
    }
    // Lens: sum of the two circular-segment areas.
    const double d = center_dist;
    const double ta = clamped_acos((d * d + ra * ra - rb * rb) / (2.0 * d * ra));
    const double tb = clamped_acos((d * d + rb * rb - ra * ra) / (2.0 * d * rb));
    return ra * ra * (ta - std::sin(ta) * std::cos(ta)) +
           rb * rb * (tb - std::sin(tb) * std::cos(tb));
}

double pdf_d_cb(double d, const DistanceParams& p) {
    p.validate();
    const double a = p.R - p.r;
    if (d < 0.0 || d > a) {
        return 0.0;
    }
    return 2.0 * d / (a * a);
}

double pdf_d_sc(double d, const DistanceParams& p) {
    p.validate();
    if (d < 0.0 || d > p.r) {
        return 0.0;
    }
    return 2.0 * d / (p.r * p.r);
}

double pdf_d_mb(double d, const DistanceParams& p) {
    p.validate();
    if (d < 0.0 || d > p.R) {
        return 0.0;
    }
    return 2.0 * d / (p.R * p.R);
}

double pdf_d_cm(double d, const DistanceParams& p) {
    p.validate();
    const double R = p.R;
    const double r = p.r;
    if (d < 0.0 || d > 2.0 * R - r) {
        return 0.0;
    }
    if (d <= r) {
        return 2.0 * d / (R * R);
    }
    const double theta = clamped_acos((d * d + r * r - 2.0 * R * r) / (2.0 * d * (R - r)));
    const double phi = clamped_acos((d * d - r * r + 2.0 * R * r) / (2.0 * d * R));
    return d * (2.0 * theta - std::sin(2.0 * theta)) / (kPi * R * R) +
           d * (2.0 * phi - std::sin(2.0 * phi)) / (kPi * (R - r) * (R - r));
}

double pdf_d_sb_given(double d_sb, double d_sc, double d_cb) {
    if (!(d_sc > 0.0) || !(d_cb > 0.0)) {
        throw std::invalid_argument("pdf_d_sb_given: degenerate conditioning distance");
    }
    if (d_sb <= 0.0 || std::abs(d_sb - d_cb) > d_sc) {
        return 0.0;
    }
    const double psi = (d_sb * d_sb + d_cb * d_cb - d_sc * d_sc) / (2.0 * d_sb * d_cb);
    return 2.0 * d_sb / (kPi * d_sc * d_sc) * clamped_acos(psi);
}

double pdf_d_md_given(double d_md, double d_cm, const DistanceParams& p) {
    p.validate();
    if (!(d_cm > 0.0)) {
        throw std::invalid_argument("pdf_d_md_given: degenerate conditioning distance");
    }
    if (d_md <= 0.0 || std::abs(d_md - d_cm) > p.r) {
        return 0.0;
    }
    const double arg = (d_md * d_md + d_cm * d_cm - p.r * p.r) / (2.0 * d_md * d_cm);
    return 2.0 * d_md / (kPi * p.r * p.r) * clamped_acos(arg);
}

} // namespace d2d

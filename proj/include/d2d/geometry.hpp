#pragma once

#include "d2d/rng.hpp"

namespace d2d {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point2D& a, const Point2D& b);

// Cell radius R and cluster radius r, meters. Requires 0 < r < R.
struct DistanceParams {
    double R = 2000.0;
    double r = 500.0;

    void validate() const; // throws std::invalid_argument
};

// Exact polar-coordinate sampling (radius = R*sqrt(u)), no rejection.
// radius == 0 returns the center; negative radius is a parameter error.
Point2D sample_uniform_disc(const Point2D& center, double radius, Rng& rng);

// Area of the intersection of two discs with radii ra, rb whose centers are
// center_dist apart. Case split (disjoint / containment / lens); symmetric in
// (ra, rb) by construction.
double circle_intersection_area(double ra, double rb, double center_dist);

// Distance pdfs for the single-cell model. Each returns 0 outside its support.
double pdf_d_cb(double d, const DistanceParams& p);  // cluster center -> BS
double pdf_d_sc(double d, const DistanceParams& p);  // source -> cluster center
double pdf_d_mb(double d, const DistanceParams& p);  // macro user -> BS
double pdf_d_cm(double d, const DistanceParams& p);  // cluster center -> macro user

// Conditional pdfs. Degenerate conditioning (d_sc == 0 resp. d_cm == 0) is an
// error: callers that sample geometrically never produce exact zeros.
double pdf_d_sb_given(double d_sb, double d_sc, double d_cb);
double pdf_d_md_given(double d_md, double d_cm, const DistanceParams& p);

} // namespace d2d

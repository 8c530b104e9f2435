#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <functional>
#include <string>
#include <vector>

namespace spun {

using MpReal = boost::multiprecision::mpfr_float;

struct MpComplex {
    MpReal re, im;
};

// A one-parameter family of shapes, one z per tetrahedron, sampled at
// t_k = t0 * 2^-k for k = 0, 1, ...  The limit of interest is k -> infinity.
struct ShapePath {
    std::string name;
    std::string description;
    int n = 0;
    double t0 = 0.5;
    std::function<std::vector<MpComplex>(const MpReal& t)> shapes;
};

struct ProbeResult {
    std::vector<double> estimate;   // L / sqrt(1 + |L|^2) at the last sample
    std::vector<double> direction;  // L / |L|, zero when not divergent
    bool divergent = false;
    double successive_angle = 0;    // radians, between the last two samples
    int samples = 0;
    double last_parameter_log2 = 0; // log2 of the last t
};

// Named degeneration paths of the Whitehead link fixture: whl-1, whl-2,
// whl-3, whl-3-minus, whl-4 and the constant path "complete".
const std::vector<ShapePath>& whl_paths();
const ShapePath& find_path(const std::string& name);

// Log vector (log|z_t|, log|z'_t|, log|z''_t|)_t of the given shapes.
std::vector<MpReal> log_coordinates(const std::vector<MpComplex>& z);

ProbeResult log_limit_probe(const ShapePath& path, int samples);

// Angle in radians between two vectors; pi/2 when one of them is zero.
double angle_between(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace spun

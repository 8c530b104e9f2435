#include "spun/probe.hpp"

#include "spun/error.hpp"

#include <algorithm>
#include <cmath>

namespace spun {

namespace {

MpComplex cplx(const MpReal& x) { return {x, MpReal(0)}; }
MpComplex operator+(const MpComplex& a, const MpComplex& b) { return {a.re + b.re, a.im + b.im}; }
MpComplex operator-(const MpComplex& a, const MpComplex& b) { return {a.re - b.re, a.im - b.im}; }
MpComplex operator-(const MpComplex& a) { return {-a.re, -a.im}; }
MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    const MpReal d = b.re * b.re + b.im * b.im;
    if (d == 0) throw Error(ErrorKind::DegenerateShape, "division by zero along a probe path");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
MpReal log_abs(const MpComplex& a) {
    using boost::multiprecision::log;
    const MpReal m = a.re * a.re + a.im * a.im;
    if (m == 0) throw Error(ErrorKind::DegenerateShape, "shape is 0 or 1 along a probe path");
    return log(m) / 2;
}

std::vector<MpComplex> four(const MpComplex& w, const MpComplex& x, const MpComplex& y, const MpComplex& z) {
    return {w, x, y, z};
}

// The family with x = eps, z = -eps^-2 and w, y from the quadratic whose
// roots at eps = 0 are (-1 +- sqrt 5)/2.
std::vector<MpComplex> sqrt5_family(const MpReal& e, int branch) {
    using boost::multiprecision::sqrt;
    const MpReal e2 = e * e, e3 = e2 * e;
    const MpReal root = sqrt(5 - 4 * e + 4 * e2 - 2 * e3 + e3 * e3);
    const MpReal num = -1 - e3 + branch * root;
    const MpReal w = num / (2 * (1 + e2));
    const MpReal y = -e * 2 * (1 + e2) / num;
    return four(cplx(w), cplx(e), cplx(y), cplx(-1 / e2));
}

std::vector<ShapePath> build_paths() {
    const MpComplex one = cplx(MpReal(1));
    std::vector<ShapePath> p;
    p.push_back({"whl-1", "(w, -1/w, w, -1/w), w = t -> 0", 4, 0.5, [one](const MpReal& t) {
                     const MpComplex w = cplx(t);
                     return four(w, -(one / w), w, -(one / w));
                 }});
    p.push_back({"whl-2", "(w, (1-w)/(1+w), -(1+w)/(1-w), -1/w), w = t -> 0", 4, 0.5, [one](const MpReal& t) {
                     const MpComplex w = cplx(t);
                     return four(w, (one - w) / (one + w), -((one + w) / (one - w)), -(one / w));
                 }});
    p.push_back({"whl-3", "x = eps, z = -eps^-2, w(0) = (-1 + sqrt 5)/2, eps = t -> 0", 4, 0.25,
                 [](const MpReal& t) { return sqrt5_family(t, 1); }});
    p.push_back({"whl-3-minus", "x = eps, z = -eps^-2, w(0) = (-1 - sqrt 5)/2, eps = t -> 0", 4, 0.25,
                 [](const MpReal& t) { return sqrt5_family(t, -1); }});
    p.push_back({"whl-4", "(w, 1/w, 1/w, w), w = 1 + t -> 1", 4, 0.5, [one](const MpReal& t) {
                     const MpComplex w = cplx(1 + t);
                     return four(w, one / w, one / w, w);
                 }});
    p.push_back({"complete", "constant (i, i, i, i)", 4, 0.5, [](const MpReal&) {
                     const MpComplex i{MpReal(0), MpReal(1)};
                     return four(i, i, i, i);
                 }});
    return p;
}

std::vector<double> to_double(const std::vector<MpReal>& v) {
    std::vector<double> out;
    for (const auto& x : v) out.push_back(x.convert_to<double>());
    return out;
}

double norm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

const std::vector<ShapePath>& whl_paths() {
    static const std::vector<ShapePath> paths = build_paths();
    return paths;
}

const ShapePath& find_path(const std::string& name) {
    for (const auto& p : whl_paths())
        if (p.name == name) return p;
    throw Error(ErrorKind::MalformedDocument, "unknown probe path '" + name + "'");
}

std::vector<MpReal> log_coordinates(const std::vector<MpComplex>& z) {
    const MpComplex one = cplx(MpReal(1));
    std::vector<MpReal> out;
    for (const auto& s : z) {
        const MpReal lz = log_abs(s);
        const MpReal l1 = log_abs(one - s);
        out.push_back(lz);       // z
        out.push_back(-l1);      // z' = 1/(1-z)
        out.push_back(l1 - lz);  // z'' = (z-1)/z
    }
    return out;
}

double angle_between(const std::vector<double>& a, const std::vector<double>& b) {
    const double na = norm(a), nb = norm(b);
    if (na == 0 || nb == 0) return std::acos(0.0);
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] * b[i];
    // atan2 of |a x b| and a.b stays accurate for tiny angles.
    double cross2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const double c = a[i] * b[j] - a[j] * b[i];
            cross2 += c * c;
        }
    return std::atan2(std::sqrt(cross2), d);
}

ProbeResult log_limit_probe(const ShapePath& path, int samples) {
    if (samples < 4) throw Error(ErrorKind::MalformedDocument, "a probe needs at least 4 samples");
    // t_k = t0 2^-k loses about k bits to cancellation in 1 - z.
    const unsigned bits = static_cast<unsigned>(samples) + 192;
    const unsigned digits = static_cast<unsigned>(bits * 0.30103) + 10;
    const unsigned saved = MpReal::default_precision();
    MpReal::default_precision(digits);

    auto log_vector = [&](int k) {
        MpReal t(path.t0);
        t = ldexp(t, -k);
        const auto z = path.shapes(t);
        if (static_cast<int>(z.size()) != path.n)
            throw Error(ErrorKind::DimensionMismatch, "probe path returned the wrong number of shapes");
        return to_double(log_coordinates(z));
    };

    ProbeResult r;
    r.samples = samples;
    r.last_parameter_log2 = std::log2(path.t0) - (samples - 1);
    try {
        const auto mid = log_vector(samples / 2);
        const auto prev = log_vector(samples - 2);
        const auto last = log_vector(samples - 1);
        MpReal::default_precision(saved);

        const double n_last = norm(last);
        r.estimate = last;
        for (auto& x : r.estimate) x /= std::sqrt(1 + n_last * n_last);
        r.successive_angle = angle_between(prev, last);
        r.divergent = n_last > 1 && n_last > 1.5 * norm(mid);
        r.direction.assign(last.size(), 0.0);
        if (r.divergent)
            for (std::size_t i = 0; i < last.size(); ++i) r.direction[i] = last[i] / n_last;
    } catch (...) {
        MpReal::default_precision(saved);
        throw;
    }
    return r;
}

}  // namespace spun

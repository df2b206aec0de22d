#include "nanoeit/modes.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nanoeit/error.hpp"

namespace nanoeit {

namespace {

MonicPolynomial multiply(const MonicPolynomial& a, const MonicPolynomial& b) {
    MonicPolynomial out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Value and derivative by Horner's rule.
std::pair<cplx, cplx> horner(const MonicPolynomial& poly, cplx z) {
    cplx p = poly.back();
    cplx dp = 0.0;
    for (std::size_t k = poly.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + poly[k];
    }
    return {p, dp};
}

double golden_minimum(auto&& f, double lo, double hi, double tolerance) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tolerance) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

struct Parabola {
    double vertex;
    double value;
    double curvature;  // second derivative
};

// Parabola through three points, expressed around the middle sample.
Parabola fit_parabola(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double h0 = x0 - x1;
    const double h2 = x2 - x1;
    const double s0 = (y0 - y1) / h0;
    const double s2 = (y2 - y1) / h2;
    const double a = (s2 - s0) / (h2 - h0);
    const double b = s0 - a * h0;
    if (a == 0.0) return {x1, y1, 0.0};
    const double t = std::clamp(-b / (2.0 * a), h0, h2);
    return {x1 + t, y1 + b * t + a * t * t, 2.0 * a};
}

void check_spectrum(const Spectrum& spectrum) {
    const auto& pts = spectrum.points;
    if (pts.size() < 3) fail(ErrorKind::Precondition, "feature detection needs >= 3 samples");
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i].omega > pts[i - 1].omega)) {
            fail(ErrorKind::Precondition, "spectrum frequencies must be strictly increasing");
        }
    }
}

}  // namespace

double evaluate(const MonicPolynomial& poly, double x) {
    double p = 0.0;
    for (std::size_t k = poly.size(); k-- > 0;) p = p * x + poly[k];
    return p;
}

std::vector<std::complex<double>> polynomial_roots(const MonicPolynomial& poly) {
    if (poly.empty() || poly.back() != 1.0) {
        fail(ErrorKind::InvalidArgument, "polynomial must be monic");
    }
    const auto degree = static_cast<Eigen::Index>(poly.size() - 1);
    if (degree == 0) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -poly[i];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        fail(ErrorKind::Instability, "companion eigenvalue iteration did not converge");
    }
    const std::vector<std::complex<double>> raw(solver.eigenvalues().begin(),
                                                solver.eigenvalues().end());
    std::vector<std::complex<double>> roots = raw;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        // Newton drifts every member of a near-multiple cluster toward the same
        // side, so only isolated roots are polished; a cluster keeps its mean.
        bool clustered = false;
        for (std::size_t m = 0; m < raw.size(); ++m) {
            clustered = clustered ||
                        (m != k && std::abs(raw[m] - raw[k]) < 1e-6 * std::max(1.0, std::abs(raw[k])));
        }
        if (clustered) continue;
        auto& z = roots[k];
        for (int iter = 0; iter < 4; ++iter) {
            const auto [p, dp] = horner(poly, z);
            if (dp == cplx{}) break;
            const cplx next = z - p / dp;
            if (std::abs(horner(poly, next).first) >= std::abs(p)) break;
            z = next;
        }
    }
    return roots;
}

MonicPolynomial characteristic_polynomial(const SystemParams& system) {
    const double w0 = system.spin().omega;
    const auto res = system.resonators();
    const auto g = system.couplings();
    const double n = system.n_spins();

    MonicPolynomial diag{-w0 * w0, 1.0};
    for (const auto& r : res) diag = multiply(diag, {-r.omega * r.omega, 1.0});

    // Subtract N w0 Σ_j w_j G_j² Π_{k != j} (x - w_k²).
    for (std::size_t j = 0; j < res.size(); ++j) {
        MonicPolynomial term{n * w0 * res[j].omega * g[j] * g[j]};
        for (std::size_t k = 0; k < res.size(); ++k) {
            if (k != j) term = multiply(term, {-res[k].omega * res[k].omega, 1.0});
        }
        for (std::size_t i = 0; i < term.size(); ++i) diag[i] -= term[i];
    }
    return diag;
}

cplx characteristic_determinant(const SystemParams& system, double omega) {
    const double w0 = system.spin().omega;
    const double n = system.n_spins();
    const auto res = system.resonators();
    const auto g = system.couplings();
    const cplx x0 = xi(system.spin(), omega);
    if (!system.is_dual()) {
        return x0 * xi(res[0], omega) - n * w0 * res[0].omega * g[0] * g[0];
    }
    const cplx x1 = xi(res[0], omega);
    const cplx x2 = xi(res[1], omega);
    return x0 * x1 * x2 -
           n * w0 * (res[0].omega * g[0] * g[0] * x2 + res[1].omega * g[1] * g[1] * x1);
}

ModeSet eigenfrequencies(const SystemParams& system) {
    const auto roots = polynomial_roots(characteristic_polynomial(system));
    std::vector<double> x;
    x.reserve(roots.size());
    // The dynamical matrix is similar to a symmetric one, so every root is
    // real; imaginary parts are round-off near multiple roots.
    for (const auto& z : roots) x.push_back(z.real());
    std::sort(x.begin(), x.end());

    for (std::size_t i = 0; i < x.size();) {
        std::size_t j = i + 1;
        while (j < x.size() && x[j] - x[i] < kRootMergeTolerance) ++j;
        if (j - i > 1) {
            const double mean = std::accumulate(x.begin() + i, x.begin() + j, 0.0) / (j - i);
            std::fill(x.begin() + i, x.begin() + j, mean);
        }
        i = j;
    }

    ModeSet modes;
    modes.squared_frequencies = x;
    double trace = system.spin().omega * system.spin().omega;
    for (const auto& r : system.resonators()) trace += r.omega * r.omega;
    modes.trace_residual = std::accumulate(x.begin(), x.end(), 0.0) - trace;

    const double scale = std::max(1.0, trace);
    modes.stable = std::all_of(x.begin(), x.end(), [&](double v) { return v >= -1e-12 * scale; });

    std::vector<double> bright = x;
    if (system.is_dual()) {
        const auto res = system.resonators();
        if (std::abs(res[0].omega - res[1].omega) < kDegeneracyTolerance) {
            const double target = res[0].omega * res[0].omega;
            const auto it = std::min_element(bright.begin(), bright.end(), [&](double a, double b) {
                return std::abs(a - target) < std::abs(b - target);
            });
            modes.dark_mode = std::sqrt(std::max(*it, 0.0));
            bright.erase(it);
        }
    }
    for (double v : bright) {
        if (v >= -1e-12 * scale) modes.frequencies.push_back(std::sqrt(std::max(v, 0.0)));
    }
    return modes;
}

std::vector<PeakInfo> find_peaks(const Spectrum& spectrum) {
    check_spectrum(spectrum);
    const auto& pts = spectrum.points;
    std::vector<PeakInfo> peaks;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double y0 = pts[i - 1].chi.imag();
        const double y1 = pts[i].chi.imag();
        const double y2 = pts[i + 1].chi.imag();
        if (!(y1 > y0 && y1 >= y2)) continue;
        const Parabola fit = fit_parabola(pts[i - 1].omega, y0, pts[i].omega, y1, pts[i + 1].omega, y2);
        peaks.push_back({fit.vertex, std::max(fit.value, y1)});
    }
    return peaks;
}

std::vector<WindowInfo> find_windows(const Spectrum& spectrum, std::span<const PeakInfo> peaks) {
    check_spectrum(spectrum);
    std::vector<WindowInfo> windows;
    if (peaks.size() < 2) return windows;

    const auto& pts = spectrum.points;
    std::optional<Susceptibility> response;
    if (spectrum.source) response.emplace(spectrum.source->system, spectrum.source->material);

    for (std::size_t p = 0; p + 1 < peaks.size(); ++p) {
        const PeakInfo& left = peaks[p];
        const PeakInfo& right = peaks[p + 1];
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i].omega <= left.omega || pts[i].omega >= right.omega) continue;
            if (!best || pts[i].chi.imag() < pts[*best].chi.imag()) best = i;
        }
        if (!best) continue;
        const std::size_t k = *best;
        const std::size_t lo = k > 0 ? k - 1 : k;
        const std::size_t hi = k + 1 < pts.size() ? k + 1 : k;

        WindowInfo w{left, right, pts[k].omega, pts[k].chi.imag(), 0.0};
        if (response) {
            const double a = std::max(pts[lo].omega, left.omega);
            const double b = std::min(pts[hi].omega, right.omega);
            const double x = golden_minimum([&](double om) { return (*response)(om).imag(); }, a, b,
                                            kWindowTolerance);
            const double y = (*response)(x).imag();
            if (y < w.depth) {
                w.omega = x;
                w.depth = y;
            }
            w.slope = response->derivative(w.omega).real();
        } else {
            if (lo != k && hi != k) {
                const Parabola fit = fit_parabola(pts[lo].omega, pts[lo].chi.imag(), pts[k].omega,
                                                  pts[k].chi.imag(), pts[hi].omega,
                                                  pts[hi].chi.imag());
                if (fit.curvature > 0.0 && fit.vertex > left.omega && fit.vertex < right.omega) {
                    w.omega = fit.vertex;
                    w.depth = std::min(fit.value, w.depth);
                }
            }
            w.slope = (pts[hi].chi.real() - pts[lo].chi.real()) / (pts[hi].omega - pts[lo].omega);
        }
        windows.push_back(w);
    }
    return windows;
}

}  // namespace nanoeit

#include "esph/models.hpp"

#include "esph/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace esph {

double param(const Params& params, const std::string& key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

namespace {

constexpr double kCanonical2x2[] = {0.0, -1.0, 1.0, 0.0};

Mat canonical_omega2() {
    Mat w(2, 2);
    w << kCanonical2x2[0], kCanonical2x2[1], kCanonical2x2[2], kCanonical2x2[3];
    return w;
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

EnergyFunctional oscillator_energy(double m, double k) {
    return EnergyFunctional(
        2, [k, m](const Vec& x) { return 0.5 * k * x(0) * x(0) + 0.5 * x(1) * x(1) / m; },
        [k, m](const Vec& x) { return Vec{{k * x(0), x(1) / m}}; });
}

EnergyFunctional duffing_energy(double k, double alpha) {
    return EnergyFunctional(
        2,
        [k, alpha](const Vec& x) {
            const double q = x(0);
            return 0.5 * k * q * q + 0.25 * alpha * q * q * q * q + 0.5 * x(1) * x(1);
        },
        [k, alpha](const Vec& x) {
            const double q = x(0);
            return Vec{{k * q + alpha * q * q * q, x(1)}};
        });
}

// Anchored-chain stiffness: springs of stiffness c² between neighbours plus
// one to the wall at the right end.
Mat chain_stiffness(int n, double c) {
    const double c2 = c * c;
    Mat K = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        K(i, i) = (i == 0) ? c2 : 2.0 * c2;
        if (i > 0) {
            K(i, i - 1) = -c2;
            K(i - 1, i) = -c2;
        }
    }
    return K;
}

EnergyFunctional chain_energy(int n, double c) {
    Mat K = chain_stiffness(n, c);
    return EnergyFunctional(
        2 * n,
        [K, n](const Vec& x) {
            const Vec q = x.head(n);
            const Vec p = x.tail(n);
            return 0.5 * q.dot(K * q) + 0.5 * p.squaredNorm();
        },
        [K, n](const Vec& x) {
            Vec g(2 * n);
            g.head(n) = K * x.head(n);
            g.tail(n) = x.tail(n);
            return g;
        });
}

}  // namespace

EsPhSystem damped_oscillator_es(double m, double k, double d) {
    require(m > 0.0, "damped_oscillator_es: m must be positive");
    require(k > 0.0, "damped_oscillator_es: k must be positive");
    require(d >= 0.0, "damped_oscillator_es: d must be non-negative");

    Mat rho = Mat::Zero(2, 2);
    rho(0, 0) = d;
    return EsPhSystem(2, 1, OperatorField::constant(canonical_omega2(), SymmetryClass::skew),
                      OperatorField::constant(rho, SymmetryClass::symmetric_psd),
                      OperatorField::constant(Mat{{1.0}, {0.0}}),
                      OperatorField::zero(2, 1),
                      OperatorField::zero(1, 1),
                      OperatorField::zero(1, 1, SymmetryClass::symmetric_psd),
                      oscillator_energy(m, k), "damped_oscillator_es");
}

EsPhSystem duffing_es(double k, double alpha, double d) {
    require(k > 0.0, "duffing_es: k must be positive");
    require(alpha >= 0.0, "duffing_es: alpha must be non-negative");
    require(d >= 0.0, "duffing_es: d must be non-negative");

    Mat rho = Mat::Zero(2, 2);
    rho(0, 0) = d;
    return EsPhSystem(2, 1, OperatorField::constant(canonical_omega2(), SymmetryClass::skew),
                      OperatorField::constant(rho, SymmetryClass::symmetric_psd),
                      OperatorField::constant(Mat{{1.0}, {0.0}}),
                      OperatorField::zero(2, 1),
                      OperatorField::zero(1, 1),
                      OperatorField::zero(1, 1, SymmetryClass::symmetric_psd),
                      duffing_energy(k, alpha), "duffing_es");
}

EsPhSystem wave_chain_es(int n_cells, double c, double d_boundary) {
    require(n_cells >= 2, "wave_chain_es: n_cells must be at least 2");
    require(c > 0.0, "wave_chain_es: c must be positive");
    require(d_boundary >= 0.0, "wave_chain_es: d_boundary must be non-negative");

    const int n = n_cells;
    const Index N = 2 * n;
    Mat omega = Mat::Zero(N, N);
    omega.topRightCorner(n, n) = -Mat::Identity(n, n);
    omega.bottomLeftCorner(n, n) = Mat::Identity(n, n);
    Mat rho = Mat::Zero(N, N);
    rho(0, 0) = d_boundary;
    Mat gamma = Mat::Zero(N, 1);
    gamma(0, 0) = 1.0;

    return EsPhSystem(N, 1, OperatorField::constant(omega, SymmetryClass::skew),
                      OperatorField::constant(rho, SymmetryClass::symmetric_psd),
                      OperatorField::constant(gamma),
                      OperatorField::zero(N, 1),
                      OperatorField::zero(1, 1),
                      OperatorField::zero(1, 1, SymmetryClass::symmetric_psd),
                      chain_energy(n, c), "wave_chain_es");
}

IsoPhSystem damped_oscillator_iso(double m, double k, double d) {
    require(m > 0.0, "damped_oscillator_iso: m must be positive");
    require(k > 0.0, "damped_oscillator_iso: k must be positive");
    require(d >= 0.0, "damped_oscillator_iso: d must be non-negative");

    Mat J(2, 2);
    J << 0.0, 1.0, -1.0, 0.0;
    Mat R = Mat::Zero(2, 2);
    R(1, 1) = d;
    return IsoPhSystem(2, 1, OperatorField::constant(J, SymmetryClass::skew),
                       OperatorField::constant(R, SymmetryClass::symmetric_psd),
                       OperatorField::constant(Mat{{0.0}, {1.0}}),
                       OperatorField::zero(2, 1),
                       OperatorField::zero(1, 1, SymmetryClass::symmetric_psd),
                       OperatorField::zero(1, 1),
                       oscillator_energy(m, k), "damped_oscillator_iso");
}

EsPhSystem modulated_oscillator_es(double eps) {
    require(eps >= 0.0, "modulated_oscillator_es: eps must be non-negative");

    OperatorField omega(2, 2, SymmetryClass::skew, [eps](const Vec& x) -> Mat {
        const double scale = 1.0 + eps * x(0) * x(0);
        Mat w(2, 2);
        w << 0.0, -scale, scale, 0.0;
        return w;
    });
    return EsPhSystem(2, 1, std::move(omega),
                      OperatorField::zero(2, 2, SymmetryClass::symmetric_psd),
                      OperatorField::constant(Mat{{1.0}, {0.0}}),
                      OperatorField::zero(2, 1),
                      OperatorField::zero(1, 1),
                      OperatorField::zero(1, 1, SymmetryClass::symmetric_psd),
                      oscillator_energy(1.0, 1.0), "modulated_oscillator_es");
}

EsDiracSystem damped_oscillator_dirac(double m, double k, double d) {
    require(m > 0.0, "damped_oscillator_dirac: m must be positive");
    require(k > 0.0, "damped_oscillator_dirac: k must be positive");
    require(d >= 0.0, "damped_oscillator_dirac: d must be non-negative");

    return EsDiracSystem(2, 1, 1, 0,
                         OperatorField::constant(canonical_omega2(), SymmetryClass::skew),
                         OperatorField::constant(Mat{{1.0}, {0.0}}),
                         OperatorField::constant(Mat{{1.0}, {0.0}}),
                         OperatorField::zero(1, 0),
                         OperatorField::zero(1, 1),
                         OperatorField::constant(Mat{{d}}, SymmetryClass::symmetric_psd),
                         oscillator_energy(m, k), "damped_oscillator_dirac");
}

EsDiracSystem duffing_dirac(double k, double alpha, double d) {
    require(k > 0.0, "duffing_dirac: k must be positive");
    require(alpha >= 0.0, "duffing_dirac: alpha must be non-negative");
    require(d >= 0.0, "duffing_dirac: d must be non-negative");

    return EsDiracSystem(2, 1, 1, 0,
                         OperatorField::constant(canonical_omega2(), SymmetryClass::skew),
                         OperatorField::constant(Mat{{1.0}, {0.0}}),
                         OperatorField::constant(Mat{{1.0}, {0.0}}),
                         OperatorField::zero(1, 0),
                         OperatorField::zero(1, 1),
                         OperatorField::constant(Mat{{d}}, SymmetryClass::symmetric_psd),
                         duffing_energy(k, alpha), "duffing_dirac");
}

EsDiracSystem wave_chain_dirac(int n_cells, double c, double d_boundary) {
    require(n_cells >= 2, "wave_chain_dirac: n_cells must be at least 2");
    require(c > 0.0, "wave_chain_dirac: c must be positive");
    require(d_boundary >= 0.0, "wave_chain_dirac: d_boundary must be non-negative");

    const int n = n_cells;
    const Index N = 2 * n;
    Mat omega = Mat::Zero(N, N);
    omega.topRightCorner(n, n) = -Mat::Identity(n, n);
    omega.bottomLeftCorner(n, n) = Mat::Identity(n, n);
    Mat gamma = Mat::Zero(N, 1);
    gamma(0, 0) = 1.0;
    Mat tau1 = Mat::Zero(N, 1);
    tau1(0, 0) = 1.0;

    return EsDiracSystem(N, 1, 1, 0, OperatorField::constant(omega, SymmetryClass::skew),
                         OperatorField::constant(gamma),
                         OperatorField::constant(tau1),
                         OperatorField::zero(1, 0),
                         OperatorField::zero(1, 1),
                         OperatorField::constant(Mat{{d_boundary}}, SymmetryClass::symmetric_psd),
                         chain_energy(n, c), "wave_chain_dirac");
}

EsDiracSystem modulated_oscillator_dirac(double eps) {
    require(eps >= 0.0, "modulated_oscillator_dirac: eps must be non-negative");

    OperatorField omega(2, 2, SymmetryClass::skew, [eps](const Vec& x) -> Mat {
        const double scale = 1.0 + eps * x(0) * x(0);
        Mat w(2, 2);
        w << 0.0, -scale, scale, 0.0;
        return w;
    });
    return EsDiracSystem(2, 1, 0, 0, std::move(omega),
                         OperatorField::constant(Mat{{1.0}, {0.0}}),
                         OperatorField::zero(2, 0),
                         OperatorField::zero(1, 0),
                         OperatorField::zero(1, 1),
                         OperatorField::zero(0, 0, SymmetryClass::symmetric_psd),
                         oscillator_energy(1.0, 1.0), "modulated_oscillator_dirac");
}

IsoDiracSystem damped_oscillator_dirac_iso(double m, double k, double d) {
    require(m > 0.0, "damped_oscillator_dirac_iso: m must be positive");
    require(k > 0.0, "damped_oscillator_dirac_iso: k must be positive");
    require(d >= 0.0, "damped_oscillator_dirac_iso: d must be non-negative");

    Mat J(2, 2);
    J << 0.0, 1.0, -1.0, 0.0;
    return IsoDiracSystem(2, 1, 1, 0, OperatorField::constant(J, SymmetryClass::skew),
                          OperatorField::constant(Mat{{0.0}, {1.0}}),
                          OperatorField::constant(Mat{{0.0}, {1.0}}),
                          OperatorField::zero(1, 0),
                          OperatorField::zero(1, 1),
                          OperatorField::constant(Mat{{d}}, SymmetryClass::symmetric_psd),
                          oscillator_energy(m, k), "damped_oscillator_dirac_iso");
}

namespace {

// Closed form of the undamped oscillator for u ≡ 0; no closed form shipped
// for d > 0.
std::optional<Vec> oscillator_reference(const Params& p, const Vec& x0, double t) {
    const double m = param(p, "m", 1.0);
    const double k = param(p, "k", 1.0);
    const double d = param(p, "d", 0.0);
    if (d != 0.0) return std::nullopt;
    const double w0 = std::sqrt(k / m);
    const double c = std::cos(w0 * t), s = std::sin(w0 * t);
    Vec x(2);
    x(0) = x0(0) * c + x0(1) / (m * w0) * s;
    x(1) = -x0(0) * m * w0 * s + x0(1) * c;
    return x;
}

Vec unit_q_x0(Index n_state) {
    Vec x0 = Vec::Zero(n_state);
    x0(0) = 1.0;
    return x0;
}

// Smooth displacement bump over the first half of the chain, zero momenta.
Vec chain_bump_x0(int n) {
    Vec x0 = Vec::Zero(2 * n);
    const double center = n / 4.0;
    const double width = std::max(1.0, n / 10.0);
    for (int i = 0; i < n; ++i) {
        const double s = (i - center) / width;
        x0(i) = std::exp(-s * s);
    }
    return x0;
}

std::vector<ModelSpec> build_registry() {
    std::vector<ModelSpec> reg;

    {
        ModelSpec spec;
        spec.name = "damped_oscillator_es";
        spec.defaults = {{"m", 1.0}, {"k", 1.0}, {"d", 0.5}};
        spec.build_es = [](const Params& p) {
            return damped_oscillator_es(param(p, "m", 1.0), param(p, "k", 1.0), param(p, "d", 0.5));
        };
        spec.build_iso = [](const Params& p) {
            return damped_oscillator_iso(param(p, "m", 1.0), param(p, "k", 1.0), param(p, "d", 0.5));
        };
        spec.build_dirac = [](const Params& p) {
            return damped_oscillator_dirac(param(p, "m", 1.0), param(p, "k", 1.0),
                                           param(p, "d", 0.5));
        };
        spec.reference_solution = oscillator_reference;
        spec.default_x0 = [](const Params&) { return unit_q_x0(2); };
        reg.push_back(std::move(spec));
    }
    {
        ModelSpec spec;
        spec.name = "duffing_es";
        spec.defaults = {{"k", 1.0}, {"alpha", 1.0}, {"d", 0.0}};
        spec.build_es = [](const Params& p) {
            return duffing_es(param(p, "k", 1.0), param(p, "alpha", 1.0), param(p, "d", 0.0));
        };
        spec.build_dirac = [](const Params& p) {
            return duffing_dirac(param(p, "k", 1.0), param(p, "alpha", 1.0), param(p, "d", 0.0));
        };
        spec.default_x0 = [](const Params&) { return unit_q_x0(2); };
        reg.push_back(std::move(spec));
    }
    {
        ModelSpec spec;
        spec.name = "wave_chain_es";
        spec.defaults = {{"n_cells", 10.0}, {"c", 1.0}, {"d_boundary", 0.1}};
        spec.build_es = [](const Params& p) {
            return wave_chain_es(static_cast<int>(param(p, "n_cells", 10.0)), param(p, "c", 1.0),
                                 param(p, "d_boundary", 0.1));
        };
        spec.build_dirac = [](const Params& p) {
            return wave_chain_dirac(static_cast<int>(param(p, "n_cells", 10.0)),
                                    param(p, "c", 1.0), param(p, "d_boundary", 0.1));
        };
        spec.default_x0 = [](const Params& p) {
            return chain_bump_x0(static_cast<int>(param(p, "n_cells", 10.0)));
        };
        reg.push_back(std::move(spec));
    }
    {
        ModelSpec spec;
        spec.name = "damped_oscillator_iso";
        spec.defaults = {{"m", 1.0}, {"k", 1.0}, {"d", 0.5}};
        spec.build_iso = [](const Params& p) {
            return damped_oscillator_iso(param(p, "m", 1.0), param(p, "k", 1.0), param(p, "d", 0.5));
        };
        spec.reference_solution = oscillator_reference;
        spec.default_x0 = [](const Params&) { return unit_q_x0(2); };
        reg.push_back(std::move(spec));
    }
    {
        ModelSpec spec;
        spec.name = "modulated_oscillator_es";
        spec.defaults = {{"eps", 0.5}};
        spec.build_es = [](const Params& p) {
            return modulated_oscillator_es(param(p, "eps", 0.5));
        };
        spec.build_dirac = [](const Params& p) {
            return modulated_oscillator_dirac(param(p, "eps", 0.5));
        };
        spec.default_x0 = [](const Params&) { return unit_q_x0(2); };
        reg.push_back(std::move(spec));
    }
    return reg;
}

std::vector<ModelSpec> build_fixtures() {
    std::vector<ModelSpec> reg;

    // ω = I: symmetric instead of skew, λ-defect exactly 2.
    {
        ModelSpec spec;
        spec.name = "planted_nonskew";
        spec.build_es = [](const Params&) {
            return EsPhSystem(2, 1, OperatorField::constant(Mat::Identity(2, 2), SymmetryClass::skew),
                              OperatorField::zero(2, 2, SymmetryClass::symmetric_psd),
                              OperatorField::constant(Mat{{1.0}, {0.0}}),
                              OperatorField::zero(2, 1), OperatorField::zero(1, 1),
                              OperatorField::zero(1, 1, SymmetryClass::symmetric_psd),
                              oscillator_energy(1.0, 1.0), "planted_nonskew");
        };
        spec.build_dirac = [](const Params&) {
            return EsDiracSystem(2, 1, 0, 0,
                                 OperatorField::constant(Mat::Identity(2, 2), SymmetryClass::skew),
                                 OperatorField::constant(Mat{{1.0}, {0.0}}),
                                 OperatorField::zero(2, 0), OperatorField::zero(1, 0),
                                 OperatorField::zero(1, 1),
                                 OperatorField::zero(0, 0, SymmetryClass::symmetric_psd),
                                 oscillator_energy(1.0, 1.0), "planted_nonskew");
        };
        spec.default_x0 = [](const Params&) { return unit_q_x0(2); };
        reg.push_back(std::move(spec));
    }
    // ρ = diag(−1, 0): indefinite dissipation block, min eigenvalue −1.
    {
        ModelSpec spec;
        spec.name = "planted_indefinite";
        spec.build_es = [](const Params&) {
            Mat rho = Mat::Zero(2, 2);
            rho(0, 0) = -1.0;
            return EsPhSystem(2, 1,
                              OperatorField::constant(canonical_omega2(), SymmetryClass::skew),
                              OperatorField::constant(rho, SymmetryClass::symmetric_psd),
                              OperatorField::constant(Mat{{1.0}, {0.0}}),
                              OperatorField::zero(2, 1), OperatorField::zero(1, 1),
                              OperatorField::zero(1, 1, SymmetryClass::symmetric_psd),
                              oscillator_energy(1.0, 1.0), "planted_indefinite");
        };
        spec.default_x0 = [](const Params&) { return unit_q_x0(2); };
        reg.push_back(std::move(spec));
    }
    return reg;
}

}  // namespace

const std::vector<ModelSpec>& model_registry() {
    static const std::vector<ModelSpec> registry = build_registry();
    return registry;
}

const std::vector<ModelSpec>& fixture_registry() {
    static const std::vector<ModelSpec> fixtures = build_fixtures();
    return fixtures;
}

const ModelSpec& find_model(const std::string& name) {
    for (const ModelSpec& spec : model_registry())
        if (spec.name == name) return spec;
    for (const ModelSpec& spec : fixture_registry())
        if (spec.name == name) return spec;

    std::string known;
    for (const ModelSpec& spec : model_registry()) {
        if (!known.empty()) known += ", ";
        known += spec.name;
    }
    throw ConfigError("unknown model '" + name + "'; registered models: " + known);
}

}  // namespace esph

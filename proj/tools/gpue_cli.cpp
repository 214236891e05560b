// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include "gpue_cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "gpue/algebra.hpp"
#include "gpue/ensemble.hpp"
#include "gpue/errors.hpp"
#include "gpue/specfun.hpp"
#include "gpue/stats.hpp"

namespace gpue::cli {

using nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Output tables

using Cell = std::optional<double>;
using RowFn = std::function<void(std::uint64_t, std::vector<Cell>&)>;

ordered_json cell_json(const Cell& c) { return c ? ordered_json(*c) : ordered_json(nullptr); }

void emit_table(std::ostream& out, Format format, const ordered_json& meta, const std::vector<std::string>& columns,
                std::uint64_t n_rows, const RowFn& row, const ordered_json& report)
{
    std::vector<Cell> cells(columns.size());
    if (format == Format::csv) {
        for (std::size_t k = 0; k < columns.size(); ++k) {
            out << (k ? "," : "") << columns[k];
        }
        out << '\n';
        for (std::uint64_t i = 0; i < n_rows; ++i) {
            std::fill(cells.begin(), cells.end(), std::nullopt);
            row(i, cells);
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (k) {
                    out << ',';
                }
                if (cells[k]) {
                    out << format_number(*cells[k]);
                }
            }
            out << '\n';
        }
        return;
    }
    // JSON is streamed row by row; sample dumps can have millions of rows.
    out << '{';
    for (const auto& [key, value] : meta.items()) {
        out << ordered_json(key).dump() << ':' << value.dump() << ',';
    }
    out << "\"columns\":" << ordered_json(columns).dump() << ",\"rows\":[";
    for (std::uint64_t i = 0; i < n_rows; ++i) {
        std::fill(cells.begin(), cells.end(), std::nullopt);
        row(i, cells);
        ordered_json r = ordered_json::array();
        for (const Cell& c : cells) {
            r.push_back(cell_json(c));
        }
        out << (i ? "," : "") << r.dump();
    }
    out << "],\"report\":" << report.dump() << "}\n";
}

ordered_json meta_for(const RunConfig& cfg, const char* command)
{
    ordered_json config = {
        {"sigma", cfg.sigma},          {"samples", cfg.samples},     {"seed", cfg.seed},
        {"bins", cfg.bins},            {"per_level", cfg.per_level}, {"unit_mean", cfg.unit_mean},
        {"wigner", cfg.wigner},
    };
    if (cfg.smax) {
        config["smax"] = *cfg.smax;
    }
    return {{"schema", kSchemaVersion}, {"command", command}, {"config", config}};
}

ordered_json report_json(const ComparisonReport& r)
{
    return {
        {"sup_norm", r.sup_norm},
        {"fraction_within_3sigma", r.fraction_within_3sigma},
        {"rejected_fraction", r.rejected_fraction},
        {"z_scores", r.z_scores},
    };
}

// ---------------------------------------------------------------------------
// Verification battery

class Battery {
public:
    void check(const std::string& name, double tolerance, const std::function<double()>& residual)
    {
        CheckResult r{name, kInf, tolerance, false};
        try {
            r.residual = residual();
            r.pass = r.residual <= tolerance;
        } catch (const std::exception&) {
            r.residual = kInf;
            r.pass = false;
        }
        report_.checks.push_back(r);
    }

    VerifyReport finish()
    {
        report_.overall_pass = std::all_of(report_.checks.begin(), report_.checks.end(),
                                           [](const CheckResult& c) { return c.pass; });
        return std::move(report_);
    }

private:
    VerifyReport report_;
};

Vector2 random_vector(const CounterRng& rng, std::uint64_t index)
{
    const auto u = rng.uniforms(Stream::algebra_checks, index);
    return {Complex(2 * u[0] - 1, 2 * u[1] - 1), Complex(2 * u[2] - 1, 2 * u[3] - 1)};
}

ComplexMatrix2 random_matrix(const CounterRng& rng, std::uint64_t index)
{
    const Vector2 top = random_vector(rng, index);
    const Vector2 bottom = random_vector(rng, index + (1ull << 40));
    return {top.x1, top.x2, bottom.x1, bottom.x2};
}

ComplexMatrix2 random_family_unitary(const CounterRng& rng, std::uint64_t index, double scale)
{
    const auto u = rng.uniforms(Stream::algebra_checks, index + (1ull << 41));
    const ComplexMatrix2 g =
        family_matrix(scale * (2 * u[0] - 1), scale * (2 * u[1] - 1), scale * (2 * u[2] - 1));
    return expm(Complex(0.0, 1.0) * g);
}

double small_spacing_ratio(double s) { return spacing_pdf(s, 1.0) * std::numbers::pi / (2.0 * s * std::log(1.0 / s)); }

} // namespace

// ---------------------------------------------------------------------------

void RunConfig::validate() const
{
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw UsageError("--sigma must be positive");
    }
    if (bins < 1) {
        throw UsageError("--bins must be at least 1");
    }
    if (samples < 1 && command != Command::verify && command != Command::bessel && command != Command::jpdf_check) {
        throw UsageError("--samples must be at least 1");
    }
    if (smax && !(*smax > 0.0)) {
        throw UsageError("--smax must be positive");
    }
    if (workers < 1) {
        throw UsageError("--workers must be at least 1");
    }
}

unsigned default_workers()
{
    if (const char* env = std::getenv("GPUE_WORKERS")) {
        unsigned v = 0;
        const char* end = env + std::char_traits<char>::length(env);
        const auto [ptr, ec] = std::from_chars(env, end, v);
        if (ec == std::errc() && ptr == end && v > 0) {
            return v;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

const CheckResult* VerifyReport::find(const std::string& name) const
{
    const auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
    return it == checks.end() ? nullptr : &*it;
}

VerifyReport run_verify(const RunConfig& cfg, const VerifyHooks& hooks)
{
    Battery battery;
    const CounterRng rng(cfg.seed);
    const GeneratorSet gen = generators();
    const Metric delta = Metric::delta();
    const Metric eta = Metric::eta();

    // group: structure constants and Lie algebra
    StructureConstants sc;
    bool sc_ok = true;
    try {
        sc = structure_constants();
    } catch (const std::exception&) {
        sc_ok = false;
    }
    if (hooks.perturb_structure_constants) {
        hooks.perturb_structure_constants(sc);
    }
    battery.check("structure_constants", 0.0, [&] {
        if (!sc_ok) {
            throw ConsistencyError("structure constants");
        }
        struct Listed {
            int i, j, k, value;
        };
        constexpr Listed listed[] = {{0, 1, 0, 2}, {0, 1, 1, 2}, {1, 2, 1, 2}, {1, 2, 2, 2},
                                     {2, 0, 0, 2}, {2, 0, 2, 2}, {0, 1, 2, 5}};
        int worst = 0;
        for (const Listed& e : listed) {
            worst = std::max(worst, std::abs(sc.at(e.i, e.j, e.k) - e.value));
        }
        return static_cast<double>(worst);
    });
    battery.check("structure_constant_range", 0.0, [&] {
        int outside = 0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) {
                    const int v = std::abs(sc.at(i, j, k));
                    outside += (v != 0 && v != 2 && v != 5) ? 1 : 0;
                }
            }
        }
        return static_cast<double>(outside);
    });
    battery.check("antisymmetry", 0.0, [&] { return static_cast<double>(antisymmetry_residual(sc)); });
    battery.check("jacobi", 0.0, [&] { return check_jacobi(sc); });

    battery.check("generator_involution", 0.0, [&] {
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) {
            worst = std::max(worst, distance(gen.rho(k) * gen.rho(k), gen.identity));
        }
        return worst;
    });
    battery.check("generator_eigenvalues", 0.0, [&] {
        // eigenvalues +-1 <=> trace 0 and det -1
        double worst = 0.0;
        for (int k = 0; k < 2; ++k) {
            worst = std::max({worst, std::abs(gen.rho(k).trace()), std::abs(gen.rho(k).det() + 1.0)});
        }
        return worst;
    });
    battery.check("generator_metric", 1e-14, [&] {
        const Metric mu = generator_metric();
        return std::max({pseudo_hermiticity_residual(gen.rho1, mu), pseudo_hermiticity_residual(gen.rho2, mu),
                         pseudo_unitarity_residual(gen.rho1, mu), pseudo_unitarity_residual(gen.rho2, mu)});
    });
    battery.check("decompose_roundtrip", 1e-12, [&] {
        double worst = 0.0;
        for (std::uint64_t k = 0; k < 200; ++k) {
            const auto u = rng.uniforms(Stream::algebra_checks, k + (1ull << 42));
            const BasisCoefficients c{4 * u[0] - 2, 4 * u[1] - 2, 4 * u[2] - 2, 4 * u[3] - 2};
            const BasisCoefficients back = decompose(reconstruct(c));
            for (int i = 0; i < 4; ++i) {
                worst = std::max(worst, std::abs(back[i] - c[i]));
            }
        }
        return worst;
    });

    // algebra
    battery.check("metric_squares", 0.0, [&] {
        return std::max(distance(delta.matrix() * delta.matrix(), -ComplexMatrix2::identity()),
                        distance(eta.matrix() * eta.matrix(), ComplexMatrix2::identity()));
    });
    battery.check("family_pseudo_hermitian", 1e-12, [&] {
        double worst = 0.0;
        for (std::uint64_t k = 0; k < 1000; ++k) {
            const auto u = rng.uniforms(Stream::algebra_checks, k + (1ull << 43));
            const ComplexMatrix2 h = family_matrix(10 * u[0] - 5, 10 * u[1] - 5, 10 * u[2] - 5);
            worst = std::max(worst, pseudo_hermiticity_residual(h, delta));
        }
        return worst;
    });
    battery.check("pseudo_adjoint_involution", 1e-14, [&] {
        double worst = 0.0;
        for (std::uint64_t k = 0; k < 200; ++k) {
            const ComplexMatrix2 a = random_matrix(rng, k);
            worst = std::max(worst, distance(pseudo_adjoint(pseudo_adjoint(a, eta), eta), a));
        }
        return worst;
    });
    battery.check("pseudo_norm_preservation", 1e-12, [&] {
        double worst = 0.0;
        for (std::uint64_t k = 0; k < 1000; ++k) {
            const ComplexMatrix2 d = random_family_unitary(rng, k, 1.0);
            const Vector2 x = random_vector(rng, 2 * k + (1ull << 44));
            const Vector2 y = random_vector(rng, 2 * k + 1 + (1ull << 44));
            worst = std::max(worst, std::abs(pseudo_inner(d * x, d * y, delta) - pseudo_inner(x, y, delta)));
        }
        return worst;
    });
    battery.check("matrix_element_invariance", 1e-11, [&] {
        double worst = 0.0;
        for (std::uint64_t k = 0; k < 1000; ++k) {
            const ComplexMatrix2 d = random_family_unitary(rng, k, 1.0);
            const ComplexMatrix2 a = random_matrix(rng, k + (1ull << 45));
            const ComplexMatrix2 a_prime = d * a * d.inverse();
            const Vector2 x = random_vector(rng, 2 * k + (1ull << 46));
            const Vector2 y = random_vector(rng, 2 * k + 1 + (1ull << 46));
            const Complex lhs = dot(d * x, delta.matrix() * (a_prime * (d * y)));
            const Complex rhs = dot(x, delta.matrix() * (a * y));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        return worst;
    });
    battery.check("expm_closed_form", 1e-12, [&] {
        double worst = 0.0;
        for (std::uint64_t k = 0; k < 500; ++k) {
            const ComplexMatrix2 a = random_matrix(rng, k + (1ull << 47)) * Complex(3.0, 0.0);
            const ComplexMatrix2 ref = expm(a);
            worst = std::max(worst, distance(ref, expm_closed_form(a)) / std::max(1.0, ref.max_norm()));
        }
        return worst;
    });

    // group axioms over the exponential map, |a|, |b|, |c| <= 5
    GroupAxiomReport axioms;
    bool axioms_ok = true;
    try {
        axioms = check_group_axioms(delta, 1000, cfg.seed, 5.0);
    } catch (const std::exception&) {
        axioms_ok = false;
    }
    auto axiom = [&](const char* name, double GroupAxiomReport::*field) {
        battery.check(name, 1e-11, [&, field] {
            if (!axioms_ok) {
                throw ConsistencyError("group axioms");
            }
            return axioms.*field;
        });
    };
    axiom("expm_pseudo_unitary", &GroupAxiomReport::generator);
    axiom("group_closure", &GroupAxiomReport::closure);
    axiom("group_inverse", &GroupAxiomReport::inverse);
    axiom("group_identity", &GroupAxiomReport::identity);
    axiom("group_associativity", &GroupAxiomReport::associativity);
    axiom("group_unimodularity", &GroupAxiomReport::unimodularity);

    // ensemble
    const GpueParams params{cfg.sigma};
    std::vector<HSample> positive;
    for (std::uint64_t k = 0; k < 4000; ++k) {
        HSample s = sample(params, rng, k);
        if (s.b < 0.0 && s.c < 0.0) {
            s = make_sample(s.a, -s.b, -s.c); // sign map onto the b, c > 0 quadrant
        }
        if (s.b > 0.0 && s.c > 0.0) {
            positive.push_back(s);
        }
    }
    battery.check("eigen_reconstruction", 1e-12, [&] {
        double worst = 0.0;
        for (const HSample& s : positive) {
            const EigenDecomposition e = eigenvector_matrix(s);
            const ComplexMatrix2 h = e.d * ComplexMatrix2::diagonal(e.e_plus, e.e_minus) * e.d.inverse();
            worst = std::max(worst, distance(h, s.matrix) / std::max(1.0, s.matrix.max_norm()));
        }
        return worst;
    });
    battery.check("eigen_pseudo_unitary", 1e-12, [&] {
        double worst = 0.0;
        for (const HSample& s : positive) {
            worst = std::max(worst, pseudo_unitarity_residual(eigenvector_matrix(s).d, eta));
        }
        return worst;
    });
    battery.check("invert_map_roundtrip", 1e-12, [&] {
        double worst = 0.0;
        for (const HSample& s : positive) {
            const EigenDecomposition e = eigenvector_matrix(s);
            const FamilyParameters p = invert_map(e.e_plus, e.e_minus, e.r);
            const double scale = std::max({1.0, std::abs(s.a), s.b, s.c});
            worst = std::max({worst, std::abs(p.a - s.a) / scale, std::abs(p.b - s.b) / scale,
                              std::abs(p.c - s.c) / scale});
        }
        return worst;
    });
    battery.check("eigenvalue_identity", 1e-12, [&] {
        double worst = 0.0;
        for (const HSample& s : positive) {
            const double r = std::sqrt(s.c / s.b);
            const double root = std::sqrt(s.b * s.c);
            worst = std::max(worst, std::abs(s.c / (2 * r) + s.b * r / 2 - root) / std::max(1.0, root));
        }
        return worst;
    });
    battery.check("jacobian_finite_difference", 1e-8, [&] {
        const double h = 1e-5;
        const double x0[3] = {2.0, 0.0, 1.0};
        double m[3][3];
        for (int col = 0; col < 3; ++col) {
            double xp[3] = {x0[0], x0[1], x0[2]};
            double xm[3] = {x0[0], x0[1], x0[2]};
            xp[col] += h;
            xm[col] -= h;
            const FamilyParameters p = invert_map(xp[0], xp[1], xp[2]);
            const FamilyParameters q = invert_map(xm[0], xm[1], xm[2]);
            m[0][col] = (p.a - q.a) / (2 * h);
            m[1][col] = (p.b - q.b) / (2 * h);
            m[2][col] = (p.c - q.c) / (2 * h);
        }
        const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        return std::abs(std::abs(det) - jacobian(2.0, 0.0, 1.0));
    });
    battery.check("gaussian_normalization", 1e-8, [&] {
        QuadratureOptions o;
        o.abs_tol = 1e-11;
        o.rel_tol = 1e-11;
        auto inner_c = [&](double a, double b) {
            return integrate([&](double c) { return gaussian_weight(a, b, c, params); }, -kInf, kInf, o).value;
        };
        auto inner_b = [&](double a) {
            return integrate([&](double b) { return inner_c(a, b); }, -kInf, kInf, o).value;
        };
        return std::abs(integrate(inner_b, -kInf, kInf, o).value - 1.0);
    });

    // specfun
    battery.check("k0_seam", 1e-11, [&] {
        const double series = detail::k0_ascending_series(kBesselK0Seam);
        const double integral = std::exp(-kBesselK0Seam) * detail::k0_scaled_integral(kBesselK0Seam);
        return std::abs(series - integral) / series;
    });
    battery.check("k0_small_argument", 1e-10, [&] {
        const double x = 1e-6;
        return std::abs(bessel_k0(x) + std::log(x / 2) + std::numbers::egamma);
    });
    battery.check("k0_integral", 1e-8, [&] {
        return std::abs(integrate([](double x) { return bessel_k0(x); }, 0.0, kInf, 1e-12).value -
                        std::numbers::pi / 2);
    });
    battery.check("k0_integral_representation", 1e-8, [&] {
        double worst = 0.0;
        for (double z : {0.01, 0.1, 0.25, 1.0, 4.0, 10.0}) {
            auto f = [z](double r) { return std::exp(-0.5 * z * (r * r + 1.0 / (r * r))) / r; };
            QuadratureOptions o;
            o.abs_tol = 1e-14;
            o.rel_tol = 1e-12;
            const double k0 = bessel_k0(z);
            worst = std::max(worst, std::abs(integrate(f, 0.0, kInf, o).value - k0) / k0);
        }
        return worst;
    });

    // stats
    battery.check("jpdf_oracle", 1e-6, [&] {
        double worst = 0.0;
        for (double diff : {0.1, 0.5, 1.0, 2.0, 4.0}) {
            for (double sum : {0.0, 1.0, 2.0, 4.0}) {
                const double ep = 0.5 * (sum + diff);
                const double em = 0.5 * (sum - diff);
                const double a = jpdf(ep, em, 1.0);
                worst = std::max(worst, std::abs(jpdf_oracle(ep, em, 1.0) - a) / a);
            }
        }
        return worst;
    });
    battery.check("spacing_normalization", 1e-8, [&] {
        double worst = 0.0;
        for (double sigma : {0.5, 1.0, 2.0}) {
            const double mass = integrate([sigma](double s) { return spacing_pdf(s, sigma); }, 0.0, kInf, 1e-12).value;
            worst = std::max(worst, std::abs(mass - 1.0));
        }
        return worst;
    });
    battery.check("spacing_from_jpdf", 1e-7, [&] {
        double worst = 0.0;
        for (double s : {0.5, 1.0, 2.0}) {
            worst = std::max(worst, std::abs(spacing_from_jpdf(s, 1.0) - spacing_pdf(s, 1.0)));
        }
        return worst;
    });
    battery.check("jpdf_total_mass", 1e-6, [&] { return std::abs(jpdf_total_mass(1.0) - 1.0); });
    battery.check("small_spacing_law", 0.0, [&] {
        const double r4 = small_spacing_ratio(1e-4);
        const double r6 = small_spacing_ratio(1e-6);
        return std::max({0.0, 1.0 - r4, r4 - 1.15, std::abs(r6 - 1.0) - std::abs(r4 - 1.0)});
    });
    battery.check("level_density_even", 1e-9, [&] {
        return std::abs(level_density(0.7, 1.0) - level_density(-0.7, 1.0));
    });
    battery.check("level_density_normalization", 1e-6, [&] {
        QuadratureOptions o;
        o.abs_tol = 1e-9;
        o.rel_tol = 1e-9;
        return std::abs(integrate([](double e) { return level_density(e, 1.0, 1e-11); }, -kInf, kInf, o).value - 2.0);
    });

    return battery.finish();
}

ordered_json to_json(const VerifyReport& report)
{
    ordered_json checks = ordered_json::array();
    for (const CheckResult& c : report.checks) {
        checks.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    return {{"schema", kSchemaVersion}, {"overall_pass", report.overall_pass}, {"checks", checks}};
}

VerifyReport verify_report_from_json(const nlohmann::json& j)
{
    if (j.value("schema", std::string()) != kSchemaVersion) {
        throw UsageError("verify report: unsupported schema");
    }
    VerifyReport report;
    report.overall_pass = j.at("overall_pass").get<bool>();
    for (const auto& c : j.at("checks")) {
        CheckResult r;
        r.name = c.at("name").get<std::string>();
        // Non-finite residuals serialize as null.
        r.residual = c.at("residual").is_null() ? kInf : c.at("residual").get<double>();
        r.tolerance = c.at("tolerance").get<double>();
        r.pass = c.at("pass").get<bool>();
        report.checks.push_back(r);
    }
    return report;
}

int run_verify_command(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    const VerifyReport report = run_verify(cfg);
    if (cfg.format == Format::json) {
        out << to_json(report).dump(2) << '\n';
    } else {
        out << "name,residual,tolerance,pass\n";
        for (const CheckResult& c : report.checks) {
            out << c.name << ',' << format_number(c.residual) << ',' << format_number(c.tolerance) << ','
                << (c.pass ? 1 : 0) << '\n';
        }
    }
    for (const CheckResult& c : report.checks) {
        if (!c.pass) {
            log << "FAIL " << c.name << " residual " << format_number(c.residual) << " > "
                << format_number(c.tolerance) << '\n';
        }
    }
    log << (report.overall_pass ? "verify: all " : "verify: FAILED, ") << report.checks.size() << " checks\n";
    return report.overall_pass ? kExitSuccess : kExitCheckFailure;
}

int run_sample(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    const GpueParams params{cfg.sigma};
    const CounterRng rng(cfg.seed);
    std::uint64_t real = 0;
    const std::vector<std::string> columns{"index", "a", "b", "c", "real", "e_plus", "e_minus", "re", "im"};
    emit_table(
        out, cfg.format, meta_for(cfg, "sample"), columns, cfg.samples,
        [&](std::uint64_t i, std::vector<Cell>& row) {
            const HSample s = sample(params, rng, i);
            row[0] = static_cast<double>(i);
            row[1] = s.a;
            row[2] = s.b;
            row[3] = s.c;
            if (const auto* r = std::get_if<RealSpectrum>(&s.spectrum)) {
                row[4] = 1.0;
                row[5] = r->e_plus;
                row[6] = r->e_minus;
                ++real;
            } else {
                const auto& p = std::get<ConjugatePair>(s.spectrum);
                row[4] = 0.0;
                row[7] = p.re;
                row[8] = p.im;
            }
        },
        ordered_json::object());
    log << "sample: " << cfg.samples << " draws, " << real << " with real spectrum\n";
    return kExitSuccess;
}

int run_spacing(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    const GpueParams params{cfg.sigma};
    const double mean = mean_spacing(cfg.sigma);
    const double smax = cfg.smax.value_or(cfg.unit_mean ? 5.0 * cfg.sigma / mean : 5.0 * cfg.sigma);
    const BinSpec spec{0.0, smax, cfg.bins};
    const McSpacingResult mc = mc_spacing(params, cfg.samples, spec, cfg.seed, {cfg.workers, cfg.unit_mean});
    const auto density = mc.histogram.density();

    ordered_json report = report_json(mc.report);
    report["draws"] = mc.draws;
    report["accepted"] = mc.accepted;
    report["empirical_mean"] = mc.mean_spacing;
    report["analytic_mean_spacing"] = mean;

    const std::vector<std::string> columns{"bin_left",          "bin_right",   "count",     "empirical_density",
                                           "analytic_density", "wigner_goe", "wigner_gue"};
    const auto& edges = mc.histogram.edges;
    emit_table(
        out, cfg.format, meta_for(cfg, "spacing"), columns, mc.histogram.bins(),
        [&](std::uint64_t i, std::vector<Cell>& row) {
            const double centre = 0.5 * (edges[i] + edges[i + 1]);
            row[0] = edges[i];
            row[1] = edges[i + 1];
            row[2] = static_cast<double>(mc.histogram.counts[i]);
            row[3] = density[i];
            row[4] = cfg.unit_mean ? spacing_pdf_unit_mean(centre) : spacing_pdf(centre, cfg.sigma);
            if (cfg.wigner) {
                // Surmises are unit-mean; convert to raw units unless already rescaled.
                const double k = cfg.unit_mean ? 1.0 : mean;
                row[5] = wigner_reference(1, centre / k) / k;
                row[6] = wigner_reference(2, centre / k) / k;
            }
        },
        report);

    log << "spacing: draws " << mc.draws << ", accepted " << mc.accepted << ", rejected fraction "
        << format_number(mc.report.rejected_fraction) << "\n"
        << "spacing: bins within 3 sigma " << format_number(mc.report.fraction_within_3sigma) << ", sup-norm "
        << format_number(mc.report.sup_norm) << ", empirical mean " << format_number(mc.mean_spacing) << '\n';
    return kExitSuccess;
}

int run_density(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    const GpueParams params{cfg.sigma};
    const BinSpec spec{-4.0 * cfg.sigma, 4.0 * cfg.sigma, cfg.bins};
    const McDensityResult mc = mc_level_density(params, cfg.samples, spec, cfg.seed, cfg.workers);
    const auto density = mc.histogram.density();
    const double levels = cfg.per_level ? 1.0 : 2.0;

    ordered_json report = report_json(mc.report);
    report["draws"] = mc.draws;
    report["accepted"] = mc.accepted;
    report["per_level"] = cfg.per_level;

    const auto& edges = mc.histogram.edges;
    emit_table(
        out, cfg.format, meta_for(cfg, "density"), {"e", "rho_quadrature", "rho_mc", "count"}, mc.histogram.bins(),
        [&](std::uint64_t i, std::vector<Cell>& row) {
            const double e = 0.5 * (edges[i] + edges[i + 1]);
            row[0] = e;
            row[1] = level_density(e, cfg.sigma) * (levels / 2.0);
            row[2] = density[i] * levels;
            row[3] = static_cast<double>(mc.histogram.counts[i]);
        },
        report);

    log << "density: draws " << mc.draws << ", accepted " << mc.accepted << ", bins within 3 sigma "
        << format_number(mc.report.fraction_within_3sigma) << '\n';
    return kExitSuccess;
}

int run_jpdf_check(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    constexpr double tol = 1e-6;
    const double diffs[] = {0.1, 0.5, 1.0, 2.0, 4.0};
    const double sums[] = {0.0, 1.0, 2.0, 4.0};
    double worst = 0.0;
    std::vector<std::array<double, 5>> rows;
    for (double d : diffs) {
        for (double s : sums) {
            const double ep = 0.5 * (s + d) * cfg.sigma;
            const double em = 0.5 * (s - d) * cfg.sigma;
            const double a = jpdf(ep, em, cfg.sigma);
            const double o = jpdf_oracle(ep, em, cfg.sigma);
            const double rel = std::abs(o - a) / a;
            worst = std::max(worst, rel);
            rows.push_back({ep, em, a, o, rel});
        }
    }
    emit_table(
        out, cfg.format, meta_for(cfg, "jpdf-check"), {"e_plus", "e_minus", "jpdf", "oracle", "rel_error"},
        rows.size(),
        [&](std::uint64_t i, std::vector<Cell>& row) {
            for (std::size_t k = 0; k < 5; ++k) {
                row[k] = rows[i][k];
            }
        },
        {{"max_rel_error", worst}, {"tolerance", tol}, {"pass", worst <= tol}});
    log << "jpdf-check: max relative deviation " << format_number(worst) << (worst <= tol ? " (pass)" : " (FAIL)")
        << '\n';
    return worst <= tol ? kExitSuccess : kExitCheckFailure;
}

int run_bessel(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    const double v = bessel_k0(cfg.x);
    if (cfg.format == Format::json) {
        out << ordered_json{{"x", cfg.x}, {"k0", v}}.dump() << '\n';
    } else {
        out << format_number(v) << '\n';
    }
    return kExitSuccess;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        cfg.validate();
        std::ofstream file;
        std::ostream* sink = &out;
        if (!cfg.out.empty()) {
            file.open(cfg.out, std::ios::binary | std::ios::trunc);
            if (!file) {
                throw IoError("cannot open '" + cfg.out + "' for writing");
            }
            sink = &file;
        }
        // Summaries go to stdout when the data has its own file.
        std::ostream& log = cfg.out.empty() ? err : out;
        int code = kExitSuccess;
        switch (cfg.command) {
        case Command::verify: code = run_verify_command(cfg, *sink, log); break;
        case Command::sample: code = run_sample(cfg, *sink, log); break;
        case Command::spacing: code = run_spacing(cfg, *sink, log); break;
        case Command::density: code = run_density(cfg, *sink, log); break;
        case Command::jpdf_check: code = run_jpdf_check(cfg, *sink, log); break;
        case Command::bessel: code = run_bessel(cfg, *sink, log); break;
        }
        sink->flush();
        if (!*sink) {
            throw IoError("write failed");
        }
        return code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (best estimate " << format_number(e.best_estimate()) << ")\n";
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailure;
    }
}

} // namespace gpue::cli

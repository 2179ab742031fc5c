#include "qpb/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "qpb/lindblad.hpp"
#include "qpb/observables.hpp"

namespace qpb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void set_param(SystemParams& p, Param which, double value) {
    switch (which) {
        case Param::Delta0: p.delta0 = value; break;
        case Param::DeltaA: p.delta_a = value; break;
        case Param::G: p.g = value; break;
        case Param::Epsilon: p.epsilon = value; break;
        case Param::Kappa: p.kappa = value; break;
    }
}

std::string error_tag(const std::exception& e) {
    if (dynamic_cast<const NoExcitation*>(&e)) return "no_excitation";
    if (dynamic_cast<const SingularSteadyState*>(&e)) return "singular_steady_state";
    if (dynamic_cast<const NonPositive*>(&e)) return "non_positive";
    if (dynamic_cast<const ZeroOnePhotonAmplitude*>(&e)) return "zero_one_photon_amplitude";
    if (dynamic_cast<const SingularDenominator*>(&e)) return "singular_denominator";
    return "error";
}

}  // namespace

const char* param_name(Param p) {
    switch (p) {
        case Param::Delta0: return "delta0";
        case Param::DeltaA: return "delta_a";
        case Param::G: return "g";
        case Param::Epsilon: return "epsilon";
        case Param::Kappa: return "kappa";
    }
    return "?";
}

std::optional<Param> parse_param(const std::string& name) {
    if (name == "delta0") return Param::Delta0;
    if (name == "delta_a" || name == "delta-a") return Param::DeltaA;
    if (name == "g") return Param::G;
    if (name == "epsilon") return Param::Epsilon;
    if (name == "kappa") return Param::Kappa;
    return std::nullopt;
}

void validate_spec(const SweepSpec& spec) {
    auto check_axis = [](const Axis& ax) {
        if (ax.count < 2) throw InvalidSweepSpec("axis needs at least 2 points");
        if (!(ax.start < ax.stop)) throw InvalidSweepSpec("axis start must be below stop");
    };
    check_axis(spec.axis1);
    if (spec.axis2) {
        check_axis(*spec.axis2);
        if (spec.axis2->param == spec.axis1.param) {
            throw InvalidSweepSpec("both axes sweep the same parameter");
        }
    }
    if (spec.tie) {
        if (spec.tie->target == spec.axis1.param ||
            (spec.axis2 && spec.tie->target == spec.axis2->param)) {
            throw InvalidSweepSpec("tie target may not be a swept axis");
        }
        if (spec.tie->target == spec.tie->source) {
            throw InvalidSweepSpec("tie target equals tie source");
        }
    }
    if (spec.n_max < 2) throw InvalidSweepSpec("n_max must be at least 2");
    try {
        validate_params(spec.fixed);
    } catch (const std::invalid_argument& e) {
        throw InvalidSweepSpec(e.what());
    }
}

namespace {

double read_param(const SystemParams& p, Param which) {
    switch (which) {
        case Param::Delta0: return p.delta0;
        case Param::DeltaA: return p.delta_a;
        case Param::G: return p.g;
        case Param::Epsilon: return p.epsilon;
        case Param::Kappa: return p.kappa;
    }
    return 0.0;
}

SystemParams cell_params(const SweepSpec& spec, int i1, int i2) {
    SystemParams p = spec.fixed;
    set_param(p, spec.axis1.param, spec.axis1.value(i1));
    if (spec.axis2) set_param(p, spec.axis2->param, spec.axis2->value(i2));
    if (spec.tie) set_param(p, spec.tie->target, spec.tie->coeff * read_param(p, spec.tie->source));
    return p;
}

PointResult run_point_with(const SystemParams& p, Engine engine,
                           const SteadySolver& solver) {
    PointResult out;
    out.params = p;
    out.cpb_residual = p.g * p.g - p.delta0 * p.delta_a;
    out.ucpb_residual = ucpb_condition_residual(p);

    if (engine != Engine::MasterEquation) {
        out.g2_analytic = analytic_g2(p);
    }
    if (engine != Engine::Analytic) {
        const auto rho = solver.solve(p);
        out.mean_n = mean_photon_number(rho);
        out.g2_numeric = g2_zero(rho);
    } else {
        const auto amp = weak_drive_amplitudes(
            p.epsilon > 0.0 ? p
                            : [&] {
                                  SystemParams q = p;
                                  q.epsilon = 0.01 * q.gamma;
                                  return q;
                              }());
        out.mean_n = std::norm(amp.c1g) + std::norm(amp.c1e) + 2.0 * std::norm(amp.c2g);
    }
    return out;
}

}  // namespace

SystemParams GridResult::params_at(int i1, int i2) const {
    return cell_params(spec, i1, i2);
}

double GridResult::value_at(int i1, int i2) const {
    const int c = cell(i1, i2);
    return std::isnan(g2_numeric[c]) ? g2_analytic[c] : g2_numeric[c];
}

PointResult run_point(const SystemParams& p, Engine engine, int n_max) {
    validate_params(p);
    SteadySolver solver(make_space(n_max));
    return run_point_with(p, engine, solver);
}

GridResult run_grid(const SweepSpec& spec) {
    validate_spec(spec);

    GridResult grid;
    grid.spec = spec;
    grid.axis1_values.resize(spec.axis1.count);
    for (int i = 0; i < spec.axis1.count; ++i) grid.axis1_values[i] = spec.axis1.value(i);
    if (spec.axis2) {
        grid.axis2_values.resize(spec.axis2->count);
        for (int i = 0; i < spec.axis2->count; ++i) grid.axis2_values[i] = spec.axis2->value(i);
    } else {
        grid.axis2_values = {0.0};
    }

    const int n1 = grid.count1();
    const int total = n1 * grid.count2();
    grid.g2_numeric.assign(total, kNaN);
    grid.g2_analytic.assign(total, kNaN);
    grid.mean_n.assign(total, kNaN);
    grid.cpb_residual.assign(total, kNaN);
    grid.ucpb_re.assign(total, kNaN);
    grid.ucpb_im.assign(total, kNaN);
    grid.status.assign(total, "ok");

    const HilbertSpace space = make_space(spec.n_max);
    const SteadySolver solver(space);

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int c = next.fetch_add(1); c < total; c = next.fetch_add(1)) {
            const int i1 = c % n1;
            const int i2 = c / n1;
            const SystemParams p = cell_params(spec, i1, i2);
            try {
                const PointResult r = run_point_with(p, spec.engine, solver);
                if (r.g2_numeric) grid.g2_numeric[c] = *r.g2_numeric;
                if (r.g2_analytic) grid.g2_analytic[c] = *r.g2_analytic;
                grid.mean_n[c] = r.mean_n;
                grid.cpb_residual[c] = r.cpb_residual;
                grid.ucpb_re[c] = r.ucpb_residual.real();
                grid.ucpb_im[c] = r.ucpb_residual.imag();
            } catch (const std::exception& e) {
                grid.status[c] = error_tag(e);
            }
        }
    };

    const int jobs = std::max(1, spec.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (int i2 = 0; i2 < grid.count2(); ++i2) {
        for (int i1 = 0; i1 < n1; ++i1) {
            const int c = grid.cell(i1, i2);
            if (grid.status[c] != "ok") grid.failures.push_back({i1, i2, grid.status[c]});
        }
    }
    return grid;
}

// ------------------------------- minima ---------------------------------------

namespace {

// Offset of the parabola vertex through (-1,l0),(0,l1),(+1,l2), in cell units.
double parabola_offset(double l0, double l1, double l2) {
    const double den = l0 - 2.0 * l1 + l2;
    if (den <= 0.0) return 0.0;
    const double off = 0.5 * (l0 - l2) / den;
    return std::clamp(off, -0.5, 0.5);
}

double parabola_drop(double l0, double l1, double l2) {
    const double den = l0 - 2.0 * l1 + l2;
    if (den <= 0.0) return 0.0;
    const double d = l0 - l2;
    return 0.125 * d * d / den;
}

}  // namespace

std::vector<Minimum> find_minima(const GridResult& grid) {
    const int n1 = grid.count1();
    const int n2 = grid.count2();
    std::vector<Minimum> out;

    auto ok = [&](int i1, int i2) {
        return grid.status[grid.cell(i1, i2)] == "ok" &&
               std::isfinite(grid.value_at(i1, i2));
    };

    for (int i2 = 0; i2 < n2; ++i2) {
        for (int i1 = 1; i1 + 1 < n1; ++i1) {
            if (!ok(i1, i2) || !ok(i1 - 1, i2) || !ok(i1 + 1, i2)) continue;
            const double v = grid.value_at(i1, i2);
            if (!(v < 1.0)) continue;
            if (!(v < grid.value_at(i1 - 1, i2) && v < grid.value_at(i1 + 1, i2))) continue;
            if (n2 > 1) {
                if (i2 == 0 || i2 + 1 == n2) continue;
                if (!ok(i1, i2 - 1) || !ok(i1, i2 + 1)) continue;
                if (!(v < grid.value_at(i1, i2 - 1) && v < grid.value_at(i1, i2 + 1))) continue;
            }

            Minimum m;
            m.i1 = i1;
            m.i2 = i2;
            m.value = v;

            const double l0 = std::log10(grid.value_at(i1 - 1, i2));
            const double l1 = std::log10(v);
            const double l2 = std::log10(grid.value_at(i1 + 1, i2));
            const double h1 = grid.axis1_values[1] - grid.axis1_values[0];
            m.refined_a1 = grid.axis1_values[i1] + parabola_offset(l0, l1, l2) * h1;
            double logv = l1 - parabola_drop(l0, l1, l2);

            m.refined_a2 = grid.axis2_values[m.i2];
            if (n2 > 1) {
                const double k0 = std::log10(grid.value_at(i1, i2 - 1));
                const double k2 = std::log10(grid.value_at(i1, i2 + 1));
                const double h2 = grid.axis2_values[1] - grid.axis2_values[0];
                m.refined_a2 += parabola_offset(k0, l1, k2) * h2;
                logv -= parabola_drop(k0, l1, k2);
            }
            m.refined_value = std::pow(10.0, logv);
            out.push_back(m);
        }
    }
    return out;
}

Minimum refine_minimum(const GridResult& grid, const Minimum& seed) {
    const SweepSpec& spec = grid.spec;
    const bool two_d = grid.count2() > 1;

    double c1 = grid.axis1_values[seed.i1];
    double c2 = two_d ? grid.axis2_values[seed.i2] : 0.0;
    double h1 = grid.axis1_values[1] - grid.axis1_values[0];
    double h2 = two_d ? grid.axis2_values[1] - grid.axis2_values[0] : 0.0;

    const SteadySolver solver(make_space(spec.n_max));
    auto eval = [&](double v1, double v2) {
        SystemParams p = spec.fixed;
        set_param(p, spec.axis1.param, v1);
        if (spec.axis2) set_param(p, spec.axis2->param, v2);
        if (spec.tie)
            set_param(p, spec.tie->target, spec.tie->coeff * read_param(p, spec.tie->source));
        if (spec.engine == Engine::Analytic) return analytic_g2(p);
        return g2_zero(solver.solve(p));
    };

    Minimum best = seed;
    best.refined_a1 = c1;
    best.refined_a2 = c2;
    best.refined_value = eval(c1, c2);
    for (int round = 0; round < 3; ++round) {
        for (int j = -2; j <= 2; ++j) {
            for (int i = -2; i <= 2; ++i) {
                if (!two_d && j != 0) continue;
                const double v1 = c1 + i * h1 / 2.0;
                const double v2 = c2 + j * h2 / 2.0;
                const double val = eval(v1, v2);
                if (val < best.refined_value) {
                    best.refined_value = val;
                    best.refined_a1 = v1;
                    best.refined_a2 = v2;
                }
            }
        }
        c1 = best.refined_a1;
        c2 = best.refined_a2;
        h1 /= 4.0;
        h2 /= 4.0;
    }
    return best;
}

// ------------------------------ overlay curves --------------------------------

OverlayCurves overlay_curves(const Region& region, double g, double kappa,
                             double gamma, int samples) {
    OverlayCurves out;
    auto inside0 = [&](double d0) {
        return d0 >= region.delta0_min && d0 <= region.delta0_max;
    };
    auto inside_a = [&](double da) {
        return da >= region.delta_a_min && da <= region.delta_a_max;
    };

    // One-excitation resonance delta0 = g²/delta_a, one branch per sign of
    // delta_a (degenerates onto the delta_a axis when g = 0).
    for (int sign = -1; sign <= 1; sign += 2) {
        Polyline line;
        line.label = sign > 0 ? "cpb+" : "cpb-";
        for (int i = 0; i < samples; ++i) {
            const double lo = sign > 0 ? std::max(1e-9, region.delta_a_min)
                                       : region.delta_a_min;
            const double hi = sign > 0 ? region.delta_a_max
                                       : std::min(-1e-9, region.delta_a_max);
            if (!(lo < hi)) break;
            const double da = lo + (hi - lo) * i / (samples - 1.0);
            const double d0 = g * g / da;
            if (inside0(d0)) line.points.emplace_back(d0, da);
        }
        if (!line.points.empty()) out.cpb.push_back(std::move(line));
    }

    // Re residual = 0: delta_a = [(gamma+kappa)gamma - 4g²] / (4 delta0) - delta0.
    for (int sign = -1; sign <= 1; sign += 2) {
        Polyline line;
        line.label = sign > 0 ? "ucpb_re+" : "ucpb_re-";
        for (int i = 0; i < samples; ++i) {
            const double lo = sign > 0 ? 1e-9 : region.delta0_min;
            const double hi = sign > 0 ? region.delta0_max : -1e-9;
            if (!(lo < hi)) break;
            const double d0 = lo + (hi - lo) * i / (samples - 1.0);
            const double da = ((gamma + kappa) * gamma - 4.0 * g * g) / (4.0 * d0) - d0;
            if (inside_a(da)) line.points.emplace_back(d0, da);
        }
        if (!line.points.empty()) out.ucpb_real.push_back(std::move(line));
    }

    // Im residual = 0: the straight line delta_a = -(kappa/gamma + 2) delta0.
    {
        Polyline line;
        line.label = "ucpb_im";
        const double slope = -(kappa / gamma + 2.0);
        for (int i = 0; i < samples; ++i) {
            const double d0 = region.delta0_min +
                              (region.delta0_max - region.delta0_min) * i / (samples - 1.0);
            const double da = slope * d0;
            if (inside_a(da)) line.points.emplace_back(d0, da);
        }
        out.ucpb_imag.push_back(std::move(line));
    }
    return out;
}

// ------------------------------ figure presets --------------------------------

namespace {

Axis axis(Param p, double start, double stop, int count) { return {p, start, stop, count}; }

SystemParams defaults() {
    SystemParams p;
    p.epsilon = 0.01;
    p.kappa = 1.0;
    p.gamma = 1.0;
    return p;
}

SweepSpec detuning_plane(double g, double d0_max, double da_min, double da_max,
                         int n, int jobs) {
    SweepSpec spec;
    spec.fixed = defaults();
    spec.fixed.g = g;
    spec.axis1 = axis(Param::Delta0, -d0_max, d0_max, n);
    spec.axis2 = axis(Param::DeltaA, da_min, da_max, n);
    spec.jobs = jobs;
    return spec;
}

SweepSpec detuning_slice(double g, double da, int jobs) {
    SweepSpec spec;
    spec.fixed = defaults();
    spec.fixed.g = g;
    spec.fixed.delta_a = da;
    spec.axis1 = axis(Param::Delta0, -30.0, 30.0, 1201);  // 0.05 steps
    spec.jobs = jobs;
    return spec;
}

}  // namespace

std::vector<std::string> figure_names() {
    return {"fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b"};
}

FigureDef figure_preset(const std::string& name, int jobs) {
    FigureDef def;
    def.name = name;
    if (name == "fig2a") {
        def.title = "g2(0) over the detuning plane, strong coupling g = 10";
        def.panels.push_back(detuning_plane(10.0, 30.0, -30.0, 30.0, 241, jobs));
    } else if (name == "fig2b") {
        def.title = "cross sections at cavity detunings 15, 20, 25, 30 (g = 10)";
        for (double da : {15.0, 20.0, 25.0, 30.0}) {
            def.panels.push_back(detuning_slice(10.0, da, jobs));
        }
    } else if (name == "fig3a") {
        def.title = "detuning plane at the weak-coupling balance point g = 1/sqrt(2)";
        def.panels.push_back(detuning_plane(1.0 / std::sqrt(2.0), 1.0, -1.0, 1.0, 241, jobs));
    } else if (name == "fig3b") {
        def.title = "detuning plane at g = 1 with twin interference optima";
        def.panels.push_back(detuning_plane(1.0, 1.0, -2.0, 2.0, 241, jobs));
    } else if (name == "fig4a") {
        def.title = "g2(0) vs atomic detuning and coupling at cavity detuning 30";
        SweepSpec spec;
        spec.fixed = defaults();
        spec.fixed.delta_a = 30.0;
        spec.axis1 = axis(Param::Delta0, -30.0, 30.0, 241);
        spec.axis2 = axis(Param::G, 0.0, 30.0, 241);
        spec.jobs = jobs;
        def.panels.push_back(spec);
    } else if (name == "fig4b") {
        def.title = "cross sections at couplings 1, 10, 20 (cavity detuning 30)";
        for (double g : {1.0, 10.0, 20.0}) {
            SweepSpec spec;
            spec.fixed = defaults();
            spec.fixed.g = g;
            spec.fixed.delta_a = 30.0;
            spec.axis1 = axis(Param::Delta0, -30.0, 30.0, 1201);
            spec.jobs = jobs;
            def.panels.push_back(spec);
        }
    } else if (name == "fig5a" || name == "fig5b") {
        const double slope = (name == "fig5a") ? -3.0 : -5.0;
        def.title = "g2(0) along the tied line delta_a = " + std::to_string(int(slope)) +
                    " * delta0";
        SweepSpec spec;
        spec.fixed = defaults();
        spec.axis1 = axis(Param::Delta0, -2.0, 2.0, 241);
        spec.axis2 = axis(Param::G, 0.0, 2.0, 241);
        spec.tie = LinearTie{Param::DeltaA, slope, Param::Delta0};
        spec.jobs = jobs;
        def.panels.push_back(spec);
    } else {
        throw InvalidSweepSpec("unknown figure preset: " + name);
    }
    return def;
}

}  // namespace qpb

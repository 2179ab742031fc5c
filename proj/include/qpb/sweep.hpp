// sweep.hpp — parameter-space scans: single points, 1D/2D grids with a worker
// pool, minima detection, and optimal-condition overlay curves
//
// Grid cells are independent; workers pull cell indices from a shared counter
// and write into preallocated slots, so output is identical for any worker
// count. Per-cell solver failures are recorded as data, never aborting a
// grid.

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qpb/analytics.hpp"
#include "qpb/model.hpp"

namespace qpb {

enum class Engine { Analytic, MasterEquation, Both };

enum class Param { Delta0, DeltaA, G, Epsilon, Kappa };

const char* param_name(Param p);
std::optional<Param> parse_param(const std::string& name);

struct Axis {
    Param param = Param::Delta0;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    double value(int i) const { return start + (stop - start) * i / (count - 1); }
};

// target = coeff * source, applied after axis values are set.
struct LinearTie {
    Param target = Param::DeltaA;
    double coeff = 0.0;
    Param source = Param::Delta0;
};

struct SweepSpec {
    Axis axis1;
    std::optional<Axis> axis2;
    SystemParams fixed;
    std::optional<LinearTie> tie;
    Engine engine = Engine::Both;
    int n_max = 5;
    int jobs = 1;
};

void validate_spec(const SweepSpec& spec);  // throws InvalidSweepSpec

// Everything run_point measures at one parameter point. Engine provenance is
// visible through which g2 fields are populated; cpb/ucpb residuals are the
// distances from the two optimal-condition manifolds.
struct PointResult {
    SystemParams params;
    std::optional<double> g2_analytic;
    std::optional<double> g2_numeric;
    double mean_n = 0.0;
    double cpb_residual = 0.0;              // g² - delta0 * delta_a
    Complex ucpb_residual{0.0, 0.0};
    std::string status = "ok";
};

PointResult run_point(const SystemParams& p, Engine engine, int n_max);

struct GridResult {
    SweepSpec spec;
    std::vector<double> axis1_values;
    std::vector<double> axis2_values;  // single zero entry for 1D sweeps

    // Column-major over (i1, i2): index = i1 + axis1.count * i2. NaN where an
    // engine was not run or the cell failed.
    std::vector<double> g2_numeric;
    std::vector<double> g2_analytic;
    std::vector<double> mean_n;
    std::vector<double> cpb_residual;
    std::vector<double> ucpb_re;
    std::vector<double> ucpb_im;
    std::vector<std::string> status;  // "ok" or an error tag

    struct Failure {
        int i1 = 0;
        int i2 = 0;
        std::string tag;
    };
    std::vector<Failure> failures;

    int count1() const { return int(axis1_values.size()); }
    int count2() const { return int(axis2_values.size()); }
    int cell(int i1, int i2) const { return i1 + count1() * i2; }
    SystemParams params_at(int i1, int i2) const;

    // g2 from the preferred engine (numeric when present, else analytic).
    double value_at(int i1, int i2) const;
};

GridResult run_grid(const SweepSpec& spec);

// Interior strict local minima (per-axis neighborhoods) with g2 < 1, refined
// by a three-point parabola in log10 per axis.
struct Minimum {
    int i1 = 0;
    int i2 = 0;
    double value = 0.0;          // grid-cell g2
    double refined_a1 = 0.0;     // interpolated axis-1 coordinate
    double refined_a2 = 0.0;
    double refined_value = 0.0;  // interpolated g2
};

std::vector<Minimum> find_minima(const GridResult& grid);

// Nested re-solve refinement: shrinking local grids around a minimum.
Minimum refine_minimum(const GridResult& grid, const Minimum& seed);

// ------------------------------ overlay curves -------------------------------

struct Region {
    double delta0_min = 0.0;
    double delta0_max = 0.0;
    double delta_a_min = 0.0;
    double delta_a_max = 0.0;
};

struct Polyline {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (delta0, delta_a)
};

struct OverlayCurves {
    std::vector<Polyline> cpb;        // delta0 = g² / delta_a branches
    std::vector<Polyline> ucpb_real;  // Re of the interference condition = 0
    std::vector<Polyline> ucpb_imag;  // Im of the interference condition = 0
};

OverlayCurves overlay_curves(const Region& region, double g, double kappa,
                             double gamma, int samples = 512);

// ------------------------------ figure presets --------------------------------

// A figure is one or more sweeps (cross-section figures carry one sweep per
// plotted curve).
struct FigureDef {
    std::string name;
    std::string title;
    std::vector<SweepSpec> panels;
};

std::vector<std::string> figure_names();
FigureDef figure_preset(const std::string& name, int jobs = 1);

}  // namespace qpb

#pragma once

// One order end to end: irreducibility, units, regulator, shape, height,
// hexagon and mass fractions. Failures are recorded, never thrown.

#include "cubic/error.hpp"
#include "cubic/escape.hpp"
#include "cubic/shape.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cubic {

struct AnalysisOptions {
    PrecisionPolicy policy;
    std::vector<Real> H;         // mass thresholds; empty skips the grid
    std::size_t samples = 10000;
    Real tight_R = Real(1);
    bool search_phi = false;     // pick the smallest ⌈W_Φ⌉ among 6 unimodular variants
    bool want_shape = true;
    bool want_height = true;
};

struct OrderReport {
    std::string status = "ok";
    bool capacity_error = false;  // precision cap was hit
    MonicCubic f;
    Integer disc;
    bool totally_real = false;
    bool irreducible = false;
    std::size_t units_verified = 0;
    std::optional<LogVector> v1, v2;
    std::optional<RegulatorReport> reg;
    std::optional<Complex> raw_tau;  // oriented quotient before reduction
    std::optional<ShapePoint> shape;
    std::optional<Real> ht;
    std::optional<Real> ceil_w;
    std::vector<Real> fractions;     // one per H
    std::optional<Real> tight_r;     // largest r in {k/12} with check_tight
};

OrderReport analyse_order(const MonicCubic& f, const std::vector<UnitParam>& units, const AnalysisOptions& opt);

// Simplex set used for reports: canonical, or the variant with the smallest
// ceiling when search is requested.
SimplexSet choose_simplex(const LogVector& v1, const LogVector& v2, bool search);

std::string status_name(ErrorCode code);

}  // namespace cubic

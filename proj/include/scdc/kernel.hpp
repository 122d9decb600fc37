#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace scdc {

// Evaluation point for the interaction kernel: ordered distances
// d = (d_12, ..., d_1l), d_12 <= ... <= d_1l, all >= 0 (d_11 = 0 implicit).
struct KernelPoint {
  int l = 2;
  std::vector<double> d;  // size l-1

  KernelPoint(int l_, std::vector<double> d_);  // throws SectorViolation
};

struct HessianReport {
  int dim = 0;
  std::vector<double> matrix;  // row-major (l-1) x (l-1), symmetric
  std::vector<double> eigenvalues;  // ascending
  double min_eigenvalue = 0.0;
};

// V_u(d) = -min_i(d_1i + u_i) with d_11 = 0.
double kernel_vu(const KernelPoint& point, std::span<const double> u);

// V(d) = Int_{[0,1]^l} V_u(d) du by tensor-product composite midpoint rule
// with n_sub points per axis. Error O(n_sub^-2) for this piecewise-linear
// integrand. Cost n_sub^l; throws std::invalid_argument past ~2e8 evaluations.
double kernel_quadrature(const KernelPoint& point, int n_sub);

// Richardson doubling of kernel_quadrature until |change| < change_tol or the
// per-l cost cap is reached; returns the finest value.
double kernel_quadrature_auto(const KernelPoint& point, double change_tol = 1e-7);

// Exact evaluation of the same u-integral via the survival function of
// min_i(d_i + u_i): a 1-D piecewise polynomial integrated segment-exactly.
// This is the tight oracle used for 1e-6-level comparisons and FD Hessians.
double kernel_value(const KernelPoint& point);

// Same reduction for arbitrary (unsorted, possibly slightly negative)
// distances; V extends C^2 across sector walls, which makes central FD
// stencils valid everywhere in the closed sector.
double kernel_value_raw(int l, std::span<const double> d);

// Printed closed forms.
double kernel_closed_l2(double d12);
double kernel_closed_l3(double d12, double d13);  // throws SectorViolation if d12 > d13

// Literal transcription of the printed general-l double-sum formula, with
// (1-d_1m) clamped at 0 above 1 and additive constant -1/2 fixed by the
// all-distances >= 1 limit (where V = -E[u_1] = -1/2 for every l). Matches
// the oracle for l = 2 only; see kernel_general_report.
double kernel_general(const KernelPoint& point);

struct GeneralFormulaReport {
  int l = 0;
  int n_points = 0;
  double max_abs_delta = 0.0;   // max |kernel_general - kernel_value| over samples
  double origin_delta = 0.0;    // at d = 0
  bool matches_oracle = false;  // max_abs_delta < 1e-6
  std::string to_text() const;
};

// Samples random sector points in [0, 1.2]^{l-1} and compares the printed
// general formula against the oracle. The discrepancy is reported, not fixed.
GeneralFormulaReport kernel_general_report(int l, int n_points, std::uint64_t seed);

struct McResult {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte Carlo fallback for l > 6 where the tensor product is unaffordable.
McResult kernel_mc(const KernelPoint& point, long samples, std::uint64_t seed);

enum class HessianMode { analytic_l3, numeric };

// analytic_l3: the printed 2x2 Hessian of the l=3 closed form (requires l=3,
// d13 < 1) with eigenvalues from the printed formula. numeric: central second
// differences of kernel_value with step 1e-3, eigenvalues by Jacobi iteration.
HessianReport kernel_hessian(const KernelPoint& point, HessianMode mode);

struct ScanPoint {
  std::vector<double> d;
  double min_eig = 0.0;
};

struct ScanReport {
  int l = 0;
  int n_grid = 0;
  double d_max = 0.0;
  std::vector<ScanPoint> points;       // lattice order, deterministic
  double global_min_eig = 0.0;
  double strict_floor = 0.0;
  long n_strictly_positive = 0;        // points with min_eig > strict_floor
  double strict_radius = 0.0;          // largest c: all points with max d <= c are strict
};

// Lattice scan of the numeric Hessian over the sector
// {0 <= d_12 <= ... <= d_1l <= d_max} with n_grid points per axis.
ScanReport kernel_convexity_scan(int l, int n_grid, double d_max = 1.5,
                                 double strict_floor = 1e-6, int threads = 0);

}  // namespace scdc

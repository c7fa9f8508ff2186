#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "modelkit/hardy.hpp"
#include "modelkit/inner.hpp"
#include "modelkit/schedules.hpp"

namespace modelkit {

// Formal product of inner factors and conjugated inner factors, evaluable as
// a unimodular function on the line.
struct ToeplitzSymbol {
  struct Factor {
    InnerFunctionSpec spec;
    int exponent = 1;  // +1: the function itself, -1: its conjugate on R
  };
  std::vector<Factor> factors;
};

ToeplitzSymbol make_symbol(
    std::initializer_list<std::pair<InnerFunctionSpec, int>> factors);

EvalResult symbol_eval(const ToeplitzSymbol& sym, double x,
                       const TruncationSchedule& schedule = {});

// sum of exponent * mass over the factors; pure spec arithmetic.
double symbol_linear_coefficient(const ToeplitzSymbol& sym);

struct SymbolArgDecomposition {
  double linear_coefficient = 0.0;
  bool bounded_remainder = false;  // provable: all Blaschke parts finite
  std::string description;
};
SymbolArgDecomposition symbol_argument_decomposition(const ToeplitzSymbol& sym);

// Product of the factor specs with the given exponent sign (+1 or -1) as a
// single inner function; unbounded families are truncated per the schedule.
InnerFunctionSpec merged_inner_part(const ToeplitzSymbol& sym, int sign,
                                    const TruncationSchedule& schedule = {});

struct ProbeConfig {
  std::vector<int> basis_sizes{8, 16, 32, 64};
  double sigma_floor = 1e-6;
  double decrease_factor = 0.5;
  double drift_bound = 0.2;
  double eta = 1.0;        // height of the kernel lattice
  double spacing = 0.0;    // 0: automatic, 2*pi / max(ambient mass, 1/2)
  double lattice_offset = 0.3183098861837907;  // keeps lattice off the zeros
  double gram_condition_limit = std::numeric_limits<double>::infinity();
  double whitening_cutoff = 1e-12;  // relative eigenvalue cutoff for G
  TruncationSchedule family_schedule{120, 1e-10};
};

// Reproducing-kernel basis for K_ambient: Blaschke zeros first, then a
// horizontal lattice matched to the exponential mass.
std::vector<Complex> default_kernel_basis(const InnerFunctionSpec& ambient,
                                          int n, const ProbeConfig& cfg = {});

struct ToeplitzMatrixData {
  // entry (j,l) is the inner product <op basis_l, basis_j>
  Eigen::MatrixXcd compression;  // <T_phi k_l, k_j>
  Eigen::MatrixXcd action_gram;  // <T_phi k_l, T_phi k_j>
  Eigen::MatrixXcd source_gram;  // <k_l, k_j>
  std::vector<Complex> basis;
  double gram_condition = 0.0;
  double sigma_min = 0.0;  // smallest generalized singular value of T_phi
};

// Discretized compression of T_phi to the span of model-space kernels of the
// ambient space.  Entries are computed exactly by residue calculus on the
// rational-exponential boundary expressions; `action_gram` uses the identity
// ||T_phi f||^2 = ||f||^2 - ||P_{K_Psi1}(Psi2 f)||^2 for phi = conj(Psi1) Psi2.
ToeplitzMatrixData discretize_toeplitz(const ToeplitzSymbol& sym,
                                       const std::vector<Complex>& basis,
                                       const InnerFunctionSpec& ambient,
                                       const ProbeConfig& cfg = {});

enum class ProbeVerdict { LikelyNontrivial, LikelyTrivial, Inconclusive };

std::string to_string(ProbeVerdict v);

struct ProbeReport {
  std::vector<int> basis_sizes;
  std::vector<double> sigma_min;
  std::vector<double> gram_condition;
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  double sigma_floor = 0.0;
  double decrease_factor = 0.0;
  double drift_bound = 0.0;
  std::string disclaimer =
      "numerical singular-value evidence on finite sections; not a proof";
};

// Singular-value trend study of ker T_phi over growing kernel bases.
ProbeReport kernel_triviality_probe(const ToeplitzSymbol& sym,
                                    const ProbeConfig& cfg = {});

struct BlaschkeInterpolationData {
  std::vector<Complex> zeros;
  std::vector<int> multiplicities;
  int total() const;
};

struct KernelElement {
  std::vector<Complex> coefficients;
  std::vector<Complex> basis_points;
  std::vector<double> interpolation_residuals;
  double norm = 1.0;
  double hardy_residual = 0.0;  // anti-analytic content of f / B
};

// Constructive nontrivial element of ker T_{B conj(Theta)}: picks N+1 kernels
// of K_Theta, solves the homogeneous interpolation system forcing vanishing
// of order m_j at the zeros of B, and certifies g = f/B analytic.
KernelElement lemma1_construct(const InnerFunctionSpec& theta,
                               const BlaschkeInterpolationData& b,
                               double tolerance, const ProbeConfig& cfg = {});

struct CarlesonReport {
  double sup = 0.0;
  double argmax = 0.0;
  std::string trend;  // "bounded", "growing", "undetermined"
};

// Sliding-window sup of int_x^{x+1} |phi|^2 over [-X, X].
CarlesonReport carleson_window_sup(const std::function<Complex(double)>& phi,
                                   double X, double step = 0.01,
                                   double window = 1.0);

struct MultiplierResidualConfig {
  hardy::LineGrid grid;
};

// Relative defect of Phi * k_mu^U from K_V = H^2 ∩ V conj(H^2): the
// anti-analytic part of w plus the analytic part of conj(V) w, over ||w||.
std::vector<double> multiplier_residual(const InnerFunctionSpec& U,
                                        const InnerFunctionSpec& V,
                                        const std::function<Complex(double)>& phi,
                                        const std::vector<Complex>& test_points,
                                        const MultiplierResidualConfig& cfg = {});

}  // namespace modelkit

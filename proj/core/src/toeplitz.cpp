#include "modelkit/toeplitz.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "modelkit/parallel.hpp"
#include "modelkit/rational.hpp"

namespace modelkit {

namespace {

using rational::Expression;

Expression symbol_expression(const ToeplitzSymbol& sym,
                             const TruncationSchedule& schedule) {
  Expression e = rational::constant(Complex(1.0, 0.0));
  for (const auto& f : sym.factors)
    e = rational::multiply(
        e, rational::inner_expression(f.spec, f.exponent < 0, schedule));
  return e;
}

Eigen::MatrixXcd pinv_psd(const Eigen::MatrixXcd& M, double rel_cutoff) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cutoff = rel_cutoff * std::max(ev.maxCoeff(), 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cutoff && ev(i) > 0.0) inv(i) = 1.0 / ev(i);
  return es.eigenvectors() * inv.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

ToeplitzSymbol make_symbol(
    std::initializer_list<std::pair<InnerFunctionSpec, int>> factors) {
  ToeplitzSymbol s;
  for (const auto& [spec, e] : factors) {
    if (e != 1 && e != -1)
      throw std::invalid_argument("symbol exponents must be +1 or -1");
    s.factors.push_back({spec, e});
  }
  return s;
}

EvalResult symbol_eval(const ToeplitzSymbol& sym, double x,
                       const TruncationSchedule& schedule) {
  EvalResult out;
  out.value = Complex(1.0, 0.0);
  for (const auto& f : sym.factors) {
    EvalResult r = eval_inner(f.spec, Complex(x, 0.0), schedule);
    out.value *= (f.exponent < 0) ? std::conj(r.value) : r.value;
    out.truncation_error_bound += r.truncation_error_bound;
    out.terms_used += r.terms_used;
  }
  return out;
}

double symbol_linear_coefficient(const ToeplitzSymbol& sym) {
  double c = 0.0;
  for (const auto& f : sym.factors) c += double(f.exponent) * f.spec.mass;
  return c;
}

SymbolArgDecomposition symbol_argument_decomposition(const ToeplitzSymbol& sym) {
  SymbolArgDecomposition d;
  d.linear_coefficient = symbol_linear_coefficient(sym);
  d.bounded_remainder = true;
  for (const auto& f : sym.factors)
    if (f.spec.has_unbounded_blaschke()) d.bounded_remainder = false;
  d.description = d.bounded_remainder
                      ? "finite Blaschke arguments; remainder bounded on R"
                      : "unbounded zero set; remainder not certified bounded";
  return d;
}

InnerFunctionSpec merged_inner_part(const ToeplitzSymbol& sym, int sign,
                                    const TruncationSchedule& schedule) {
  InnerFunctionSpec out;
  std::vector<Complex> zeros;
  for (const auto& f : sym.factors) {
    if (f.exponent != sign) continue;
    out.mass += f.spec.mass;
    out.unimodular_constant *= f.spec.unimodular_constant;
    if (f.spec.blaschke.unbounded()) {
      const ArithFamily& fam = *f.spec.blaschke.family();
      auto ft = detail::family_truncation(fam, Complex(0.0, 0.0), schedule);
      for (long n = ft.n_lo; n <= ft.n_hi; ++n) zeros.push_back(fam.zero_at(n));
    } else {
      const auto& zs = f.spec.blaschke.zeros();
      zeros.insert(zeros.end(), zs.begin(), zs.end());
    }
  }
  if (!zeros.empty()) out.blaschke = BlaschkeData(std::move(zeros));
  return out;
}

std::vector<Complex> default_kernel_basis(const InnerFunctionSpec& ambient,
                                          int n, const ProbeConfig& cfg) {
  std::vector<Complex> pts;
  const auto& zeros = ambient.blaschke.zeros();
  for (std::size_t i = 0; i < zeros.size() && int(pts.size()) < n; ++i)
    pts.push_back(zeros[i]);

  const int m = n - int(pts.size());
  if (m > 0) {
    const double spacing =
        cfg.spacing > 0.0 ? cfg.spacing
                          : 2.0 * M_PI / std::max(ambient.mass, 0.5);
    for (int j = 0; j < m; ++j) {
      const double x =
          cfg.lattice_offset + (double(j) - 0.5 * double(m - 1)) * spacing;
      pts.emplace_back(x, cfg.eta);
    }
  }
  return pts;
}

namespace {

// Secondary kernel basis spanning (an increasing chunk of) K_Psi1.
std::vector<Complex> projection_basis(const InnerFunctionSpec& psi1, int n,
                                      const ProbeConfig& cfg) {
  std::vector<Complex> pts;
  const auto& zeros = psi1.blaschke.zeros();
  for (std::size_t i = 0; i < zeros.size() && int(pts.size()) < n; ++i)
    pts.push_back(zeros[i]);
  if (psi1.mass > 0.0) {
    const int m = n - int(pts.size());
    const double spacing = 2.0 * M_PI / std::max(psi1.mass, 0.5);
    for (int j = 0; j < m; ++j) {
      const double x =
          cfg.lattice_offset + (double(j) - 0.5 * double(m - 1)) * spacing;
      pts.emplace_back(x, cfg.eta);
    }
  }
  return pts;
}

Eigen::MatrixXcd kernel_gram(const InnerFunctionSpec& space,
                             const std::vector<Complex>& pts,
                             const TruncationSchedule& schedule) {
  const int n = int(pts.size());
  Eigen::MatrixXcd G(n, n);
  parallel_for(std::size_t(n) * std::size_t(n), [&](std::size_t idx) {
    const int j = int(idx / std::size_t(n));
    const int l = int(idx % std::size_t(n));
    // (j,l) = <k_l, k_j> = k_{p_l}(p_j)
    G(j, l) = reproducing_kernel(space, pts[std::size_t(l)],
                                 pts[std::size_t(j)], schedule);
  });
  return (G + G.adjoint()) / 2.0;
}

double condition_number(const Eigen::MatrixXcd& G) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(hi > 0.0) || lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace

ToeplitzMatrixData discretize_toeplitz(const ToeplitzSymbol& sym,
                                       const std::vector<Complex>& basis,
                                       const InnerFunctionSpec& ambient,
                                       const ProbeConfig& cfg) {
  const int n = int(basis.size());
  if (n == 0) throw std::invalid_argument("empty kernel basis");
  for (Complex p : basis)
    if (!(p.imag() > 0.0))
      throw NonUpperHalfPoint("kernel basis points must lie in C_+");

  const TruncationSchedule& fs = cfg.family_schedule;

  ToeplitzMatrixData data;
  data.basis = basis;
  data.source_gram = kernel_gram(ambient, basis, fs);
  data.gram_condition = condition_number(data.source_gram);
  if (data.gram_condition > cfg.gram_condition_limit)
    throw IllConditionedBasis(
        "kernel Gram condition number exceeds the configured limit; "
        "spread the basis points");

  // boundary expressions of the kernels
  std::vector<Expression> K(static_cast<std::size_t>(n)), Kc(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    K[std::size_t(l)] =
        rational::model_kernel_expression(ambient, basis[std::size_t(l)], false, fs);
    Kc[std::size_t(l)] = rational::conjugate(K[std::size_t(l)]);
  }

  const Expression phi = symbol_expression(sym, fs);
  data.compression.resize(n, n);
  parallel_for(std::size_t(n) * std::size_t(n), [&](std::size_t idx) {
    const int j = int(idx / std::size_t(n));
    const int l = int(idx % std::size_t(n));
    data.compression(j, l) = rational::line_integral(rational::multiply(
        rational::multiply(phi, K[std::size_t(l)]), Kc[std::size_t(j)]));
  });

  // ||T_phi f||^2 = ||f||^2 - ||P_{K_Psi1}(Psi2 f)||^2 with phi = conj(Psi1) Psi2.
  const InnerFunctionSpec psi1 = merged_inner_part(sym, -1, fs);
  if (psi1.pure_singular() && psi1.mass == 0.0) {
    data.action_gram = data.source_gram;
  } else {
    const InnerFunctionSpec psi2 = merged_inner_part(sym, +1, fs);
    const Expression psi2_expr = rational::inner_expression(psi2, false, fs);

    const int n_sec = 2 * n + 8;
    const std::vector<Complex> sec = projection_basis(psi1, n_sec, cfg);
    const int ns = int(sec.size());

    Eigen::MatrixXcd Ghat = kernel_gram(psi1, sec, fs);
    std::vector<Expression> Sc(static_cast<std::size_t>(ns));
    for (int mth = 0; mth < ns; ++mth)
      Sc[std::size_t(mth)] = rational::conjugate(
          rational::model_kernel_expression(psi1, sec[std::size_t(mth)], false, fs));

    Eigen::MatrixXcd Y(ns, n);
    parallel_for(std::size_t(ns) * std::size_t(n), [&](std::size_t idx) {
      const int mth = int(idx / std::size_t(n));
      const int l = int(idx % std::size_t(n));
      Y(mth, l) = rational::line_integral(rational::multiply(
          rational::multiply(psi2_expr, K[std::size_t(l)]), Sc[std::size_t(mth)]));
    });

    const Eigen::MatrixXcd proj = Y.adjoint() * pinv_psd(Ghat, 1e-12) * Y;
    data.action_gram = data.source_gram - proj;
    data.action_gram = (data.action_gram + data.action_gram.adjoint()) / 2.0;
  }

  // generalized sigma_min of the pencil (action_gram, source_gram) on the
  // numerically resolved part of the span
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(data.source_gram);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double lmax = ev.maxCoeff();
  if (!(lmax > 0.0))
    throw IllConditionedBasis("kernel Gram matrix is numerically zero");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cfg.whitening_cutoff * lmax) keep.push_back(i);
  Eigen::MatrixXcd W(n, Eigen::Index(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    W.col(Eigen::Index(c)) =
        es.eigenvectors().col(keep[c]) / std::sqrt(ev(keep[c]));
  Eigen::MatrixXcd S = W.adjoint() * data.action_gram * W;
  S = (S + S.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(S);
  data.sigma_min = std::sqrt(std::max(0.0, es2.eigenvalues().minCoeff()));
  return data;
}

std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::LikelyNontrivial: return "LikelyNontrivial";
    case ProbeVerdict::LikelyTrivial: return "LikelyTrivial";
    default: return "Inconclusive";
  }
}

ProbeReport kernel_triviality_probe(const ToeplitzSymbol& sym,
                                    const ProbeConfig& cfg) {
  if (cfg.basis_sizes.size() < 3)
    throw std::invalid_argument("probe needs at least 3 refinement levels");
  for (std::size_t k = 1; k < cfg.basis_sizes.size(); ++k)
    if (cfg.basis_sizes[k] <= cfg.basis_sizes[k - 1])
      throw std::invalid_argument("probe basis sizes must be strictly increasing");

  // The kernel of T_{conj(Psi1) Psi2} lives inside K_{Psi1 Psi2}.
  ToeplitzSymbol all = sym;
  for (auto& f : all.factors) f.exponent = 1;
  const InnerFunctionSpec ambient =
      merged_inner_part(all, +1, cfg.family_schedule);

  ProbeReport rep;
  rep.sigma_floor = cfg.sigma_floor;
  rep.decrease_factor = cfg.decrease_factor;
  rep.drift_bound = cfg.drift_bound;
  for (const auto& f : sym.factors)
    if (f.spec.has_unbounded_blaschke()) {
      rep.disclaimer +=
          "; unbounded zero families were truncated to " +
          std::to_string(cfg.family_schedule.max_terms) +
          " terms, which can change the kernel (a truncated Blaschke product "
          "is finite)";
      break;
    }

  for (int n : cfg.basis_sizes) {
    const std::vector<Complex> basis = default_kernel_basis(ambient, n, cfg);
    ToeplitzMatrixData d = discretize_toeplitz(sym, basis, ambient, cfg);
    rep.basis_sizes.push_back(n);
    rep.sigma_min.push_back(d.sigma_min);
    rep.gram_condition.push_back(d.gram_condition);
  }

  const auto& s = rep.sigma_min;
  bool decreasing = true;
  for (std::size_t k = 0; k + 1 < s.size(); ++k)
    if (!(s[k + 1] <= cfg.decrease_factor * s[k] || s[k + 1] < cfg.sigma_floor))
      decreasing = false;
  const double smin = *std::min_element(s.begin(), s.end());
  const double smax = *std::max_element(s.begin(), s.end());

  if (decreasing && s.back() < cfg.sigma_floor)
    rep.verdict = ProbeVerdict::LikelyNontrivial;
  else if (smin >= cfg.sigma_floor &&
           (smax - smin) <= cfg.drift_bound * smax)
    rep.verdict = ProbeVerdict::LikelyTrivial;
  else
    rep.verdict = ProbeVerdict::Inconclusive;
  return rep;
}

int BlaschkeInterpolationData::total() const {
  int N = 0;
  for (int m : multiplicities) N += m;
  return N;
}

KernelElement lemma1_construct(const InnerFunctionSpec& theta,
                               const BlaschkeInterpolationData& b,
                               double tolerance, const ProbeConfig& cfg) {
  theta.validate();
  if (theta.finite_blaschke_product())
    throw FiniteBlaschkeRejected(
        "the ambient inner function must not be a finite Blaschke product");
  if (b.zeros.size() != b.multiplicities.size())
    throw std::invalid_argument("zeros/multiplicities size mismatch");
  for (std::size_t j = 0; j < b.zeros.size(); ++j) {
    if (!(b.zeros[j].imag() > 0.0))
      throw NonUpperHalfZero("interpolation nodes must lie in C_+");
    if (b.multiplicities[j] < 1)
      throw std::invalid_argument("multiplicities must be >= 1");
  }

  const int N = b.total();
  const TruncationSchedule& fs = cfg.family_schedule;
  std::vector<Complex> pts = default_kernel_basis(theta, N + 1, cfg);
  for (Complex p : pts)
    for (Complex w : b.zeros)
      if (std::abs(p - w) < 1e-8)
        throw DegenerateSystem(
            "kernel basis point collides with an interpolation node");

  KernelElement out;
  out.basis_points = pts;

  Eigen::VectorXcd c(N + 1);
  if (N == 0) {
    c.setOnes();
  } else {
    Eigen::MatrixXcd C(N, N + 1);
    int row = 0;
    for (std::size_t j = 0; j < b.zeros.size(); ++j) {
      for (int s = 0; s < b.multiplicities[j]; ++s, ++row) {
        for (int p = 0; p <= N; ++p) {
          const auto kd = reproducing_kernel_derivatives(
              theta, pts[std::size_t(p)], b.zeros[j],
              b.multiplicities[j] - 1, fs);
          C(row, p) = kd[std::size_t(s)];
        }
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C, Eigen::ComputeFullV);
    c = svd.matrixV().col(N);
  }

  // normalize in the K_theta metric
  const Eigen::MatrixXcd G = kernel_gram(theta, pts, fs);
  const double nrm2 = std::real((c.adjoint() * G * c)(0, 0));
  if (!(nrm2 > 0.0))
    throw DegenerateSystem("interpolation produced a null combination");
  c /= std::sqrt(nrm2);
  out.norm = 1.0;
  out.coefficients.assign(c.data(), c.data() + c.size());

  // constraint residuals |f^{(s)}(w_j)|
  for (std::size_t j = 0; j < b.zeros.size(); ++j) {
    std::vector<Complex> acc(std::size_t(b.multiplicities[j]), Complex(0, 0));
    for (int p = 0; p <= N; ++p) {
      const auto kd = reproducing_kernel_derivatives(
          theta, pts[std::size_t(p)], b.zeros[j], b.multiplicities[j] - 1, fs);
      for (int s = 0; s < b.multiplicities[j]; ++s)
        acc[std::size_t(s)] += c(p) * kd[std::size_t(s)];
    }
    for (Complex v : acc) out.interpolation_residuals.push_back(std::abs(v));
  }
  if (N > 0)
    for (double r : out.interpolation_residuals)
      if (r > tolerance)
        throw ToleranceNotMet("interpolation residual exceeds tolerance");

  // g = f / B = f * conj(B) on R; certify analyticity of g
  Expression f_expr;
  for (int p = 0; p <= N; ++p)
    f_expr = rational::add(
        f_expr, rational::scale(rational::model_kernel_expression(
                                    theta, pts[std::size_t(p)], false, fs),
                                c(p)));
  std::vector<Complex> bz;
  for (std::size_t j = 0; j < b.zeros.size(); ++j)
    for (int s = 0; s < b.multiplicities[j]; ++s) bz.push_back(b.zeros[j]);
  InnerFunctionSpec bspec;
  if (!bz.empty()) bspec.blaschke = BlaschkeData(std::move(bz));
  const Expression g_expr =
      rational::multiply(f_expr, rational::inner_expression(bspec, true, fs));
  const Expression g_minus = rational::hardy_split(g_expr).minus;
  const double minus2 =
      std::real(rational::inner_product(g_minus, g_minus));
  out.hardy_residual = std::sqrt(std::max(0.0, minus2));
  return out;
}

CarlesonReport carleson_window_sup(const std::function<Complex(double)>& phi,
                                   double X, double step, double window) {
  if (!(X >= 10.0))
    throw std::invalid_argument("carleson window study needs X >= 10");
  if (!(step > 0.0) || step > window / 16.0)
    throw GridTooCoarse("grid step too coarse for the sliding window");

  const std::size_t m = std::size_t(std::ceil(2.0 * X / step)) + 1;
  std::vector<double> sq(m);
  for (std::size_t k = 0; k < m; ++k)
    sq[k] = std::norm(phi(-X + double(k) * step));

  // trapezoid prefix sums
  std::vector<double> prefix(m, 0.0);
  for (std::size_t k = 1; k < m; ++k)
    prefix[k] = prefix[k - 1] + 0.5 * (sq[k - 1] + sq[k]) * step;

  const std::size_t wlen = std::size_t(std::round(window / step));
  CarlesonReport rep;
  std::vector<std::pair<double, double>> windows;  // (start x, integral)
  for (std::size_t k = 0; k + wlen < m; ++k) {
    const double v = prefix[k + wlen] - prefix[k];
    const double x0 = -X + double(k) * step;
    windows.emplace_back(x0, v);
    if (v > rep.sup) {
      rep.sup = v;
      rep.argmax = x0;
    }
  }

  double near = 0.0, far = 0.0;
  int cn = 0, cf = 0;
  for (const auto& [x0, v] : windows) {
    const double ax = std::abs(x0 + window / 2.0);
    if (ax >= X / 4.0 && ax < X / 2.0) {
      near += v;
      ++cn;
    } else if (ax >= X / 2.0) {
      far += v;
      ++cf;
    }
  }
  if (cn == 0 || cf == 0) {
    rep.trend = "undetermined";
  } else {
    const double ratio = (far / cf) / std::max(near / cn, 1e-300);
    rep.trend = ratio > 1.3 ? "growing" : "bounded";
  }
  return rep;
}

std::vector<double> multiplier_residual(const InnerFunctionSpec& U,
                                        const InnerFunctionSpec& V,
                                        const std::function<Complex(double)>& phi,
                                        const std::vector<Complex>& test_points,
                                        const MultiplierResidualConfig& cfg) {
  const hardy::LineGrid& grid = cfg.grid;
  const std::size_t n = grid.size();

  std::vector<Complex> v_conj(n);
  for (std::size_t j = 0; j < n; ++j)
    v_conj[j] =
        std::conj(eval_inner(V, Complex(grid.point(j), 0.0)).value);

  std::vector<double> out(test_points.size());
  parallel_for(test_points.size(), [&](std::size_t q) {
    const Complex mu = test_points[q];
    std::vector<Complex> w(n), vw(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = grid.point(j);
      w[j] = phi(x) * reproducing_kernel(U, mu, Complex(x, 0.0));
      vw[j] = v_conj[j] * w[j];
    }
    const auto sw = hardy::spectral_split(grid, w);
    const auto sv = hardy::spectral_split(grid, vw);
    out[q] = (sw.minus_norm + sv.plus_norm) / std::max(sw.norm, 1e-300);
  });
  return out;
}

}  // namespace modelkit

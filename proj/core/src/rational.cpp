#include "modelkit/rational.hpp"

#include <algorithm>
#include <cmath>

#include "modelkit/errors.hpp"

namespace modelkit::rational {

namespace {

constexpr Complex kI{0.0, 1.0};

// Exact-position grouping: positions originating from the same spec objects
// compare bitwise equal.  Distinct-but-near poles are caught later.
void normalize(Term& t) {
  std::vector<PoleFactor> grouped;
  for (const PoleFactor& pf : t.poles) {
    bool merged = false;
    for (PoleFactor& g : grouped)
      if (g.position == pf.position) {
        g.order += pf.order;
        merged = true;
        break;
      }
    if (!merged) grouped.push_back(pf);
  }
  // cancel zeros against matching poles
  std::vector<Complex> kept_zeros;
  for (Complex z : t.zeros) {
    bool cancelled = false;
    for (PoleFactor& g : grouped)
      if (g.order > 0 && g.position == z) {
        --g.order;
        cancelled = true;
        break;
      }
    if (!cancelled) kept_zeros.push_back(z);
  }
  grouped.erase(std::remove_if(grouped.begin(), grouped.end(),
                               [](const PoleFactor& g) { return g.order == 0; }),
                grouped.end());
  t.zeros = std::move(kept_zeros);
  t.poles = std::move(grouped);
}

void check_pole_separation(const Term& t) {
  for (std::size_t i = 0; i < t.poles.size(); ++i) {
    if (std::abs(t.poles[i].position.imag()) < 1e-14)
      throw InternalInconsistency("rational term has a pole on the real line");
    for (std::size_t j = i + 1; j < t.poles.size(); ++j) {
      const double d = std::abs(t.poles[i].position - t.poles[j].position);
      const double scale = 1.0 + std::abs(t.poles[i].position);
      if (d < 1e-10 * scale)
        throw InternalInconsistency(
            "two distinct poles nearly coincide; spread basis/zero points");
    }
  }
}

// g^{(d)}(p)/d! for g = term with the pole at `skip` removed (order n there).
Complex scaled_derivative_at(const Term& t, std::size_t skip, Complex p,
                             int d) {
  Complex g0 = t.coeff * std::exp(kI * t.freq * p);
  for (Complex z : t.zeros) g0 *= (p - z);
  for (std::size_t l = 0; l < t.poles.size(); ++l) {
    if (l == skip) continue;
    g0 *= std::pow(p - t.poles[l].position, -double(t.poles[l].order));
  }
  if (d == 0) return g0;

  // log-derivative L = i*freq + sum 1/(p-z) - sum m/(p-p_l)
  std::vector<Complex> L(std::size_t(d), Complex(0.0, 0.0));
  for (int s = 0; s < d; ++s) {
    Complex acc(0.0, 0.0);
    for (Complex z : t.zeros) acc += std::pow(p - z, -double(s + 1));
    for (std::size_t l = 0; l < t.poles.size(); ++l) {
      if (l == skip) continue;
      acc -= double(t.poles[l].order) *
             std::pow(p - t.poles[l].position, -double(s + 1));
    }
    double fact = 1.0;
    for (int q = 2; q <= s; ++q) fact *= q;
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    L[std::size_t(s)] = sign * fact * acc;
    if (s == 0) L[0] += kI * t.freq;
  }

  std::vector<Complex> g(std::size_t(d) + 1);
  g[0] = g0;
  std::vector<std::vector<double>> binom(std::size_t(d) + 1);
  for (int r = 0; r <= d; ++r) {
    binom[std::size_t(r)].assign(std::size_t(r) + 1, 1.0);
    for (int q = 1; q < r; ++q)
      binom[std::size_t(r)][std::size_t(q)] =
          binom[std::size_t(r - 1)][std::size_t(q - 1)] +
          binom[std::size_t(r - 1)][std::size_t(q)];
  }
  for (int r = 0; r < d; ++r) {
    Complex acc(0.0, 0.0);
    for (int q = 0; q <= r; ++q)
      acc += binom[std::size_t(r)][std::size_t(q)] * g[std::size_t(q)] *
             L[std::size_t(r - q)];
    g[std::size_t(r) + 1] = acc;
  }
  double dfact = 1.0;
  for (int q = 2; q <= d; ++q) dfact *= q;
  return g[std::size_t(d)] / dfact;
}

Complex residue_at(const Term& t, std::size_t pole_idx) {
  const int n = t.poles[pole_idx].order;
  return scaled_derivative_at(t, pole_idx, t.poles[pole_idx].position, n - 1);
}

}  // namespace

int Term::decay() const {
  int d = 0;
  for (const PoleFactor& p : poles) d += p.order;
  return d - int(zeros.size());
}

Expression constant(Complex c) {
  Term t;
  t.coeff = c;
  return {t};
}

Expression inner_expression(const InnerFunctionSpec& spec, bool conjugated,
                            const TruncationSchedule& schedule) {
  spec.validate();
  Term t;
  t.coeff = spec.unimodular_constant;
  t.freq = spec.mass;

  std::vector<Complex> zeros;
  std::vector<double> phases;
  if (spec.blaschke.unbounded()) {
    const ArithFamily& fam = *spec.blaschke.family();
    auto ft = detail::family_truncation(fam, Complex(0.0, 0.0), schedule);
    for (long n = ft.n_lo; n <= ft.n_hi; ++n) {
      zeros.push_back(fam.zero_at(n));
      phases.push_back(phase_alpha(zeros.back()));
    }
  } else {
    zeros = spec.blaschke.zeros();
    phases = spec.blaschke.phases();
  }
  for (std::size_t n = 0; n < zeros.size(); ++n) {
    t.coeff *= std::polar(1.0, phases[n]);
    t.zeros.push_back(zeros[n]);
    t.poles.push_back({std::conj(zeros[n]), 1});
  }
  if (conjugated) {
    t.coeff = std::conj(t.coeff);
    t.freq = -t.freq;
    for (Complex& z : t.zeros) z = std::conj(z);
    for (PoleFactor& p : t.poles) p.position = std::conj(p.position);
  }
  return {t};
}

Expression cauchy_factor(Complex pole) {
  Term t;
  t.poles.push_back({pole, 1});
  return {t};
}

Expression model_kernel_expression(const InnerFunctionSpec& spec,
                                   Complex lambda, bool conjugated,
                                   const TruncationSchedule& schedule) {
  if (!(lambda.imag() > 0.0))
    throw NonUpperHalfPoint("kernel point must lie in the upper half-plane");
  const Complex Ul = eval_inner(spec, lambda, schedule).value;

  // (i/2pi) (1 - conj(U(lambda)) U(t)) / (t - conj(lambda))
  Expression one_part = scale(cauchy_factor(std::conj(lambda)),
                              kI / (2.0 * M_PI));
  Expression u_part =
      multiply(inner_expression(spec, false, schedule),
               scale(cauchy_factor(std::conj(lambda)),
                     -std::conj(Ul) * kI / (2.0 * M_PI)));
  Expression k = add(std::move(one_part), u_part);
  return conjugated ? conjugate(k) : k;
}

Expression multiply(const Expression& a, const Expression& b) {
  Expression out;
  out.reserve(a.size() * b.size());
  for (const Term& ta : a)
    for (const Term& tb : b) {
      Term t;
      t.coeff = ta.coeff * tb.coeff;
      t.freq = ta.freq + tb.freq;
      t.zeros = ta.zeros;
      t.zeros.insert(t.zeros.end(), tb.zeros.begin(), tb.zeros.end());
      t.poles = ta.poles;
      t.poles.insert(t.poles.end(), tb.poles.begin(), tb.poles.end());
      normalize(t);
      out.push_back(std::move(t));
    }
  return out;
}

Expression conjugate(const Expression& a) {
  Expression out = a;
  for (Term& t : out) {
    t.coeff = std::conj(t.coeff);
    t.freq = -t.freq;
    for (Complex& z : t.zeros) z = std::conj(z);
    for (PoleFactor& p : t.poles) p.position = std::conj(p.position);
  }
  return out;
}

Expression add(Expression a, const Expression& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Expression scale(Expression a, Complex c) {
  for (Term& t : a) t.coeff *= c;
  return a;
}

Complex evaluate(const Expression& e, double t) {
  Complex sum(0.0, 0.0);
  for (const Term& term : e) {
    Complex v = term.coeff * std::exp(kI * term.freq * t);
    for (Complex z : term.zeros) v *= (t - z);
    for (const PoleFactor& p : term.poles)
      v *= std::pow(Complex(t, 0.0) - p.position, -double(p.order));
    sum += v;
  }
  return sum;
}

Complex line_integral(const Expression& e) {
  Complex total(0.0, 0.0);
  for (Term t : e) {
    normalize(t);
    if (t.coeff == Complex(0.0, 0.0)) continue;
    const int d = t.decay();
    if (d <= 0 || (d == 1 && t.freq == 0.0))
      throw InternalInconsistency("line integral of a non-integrable term");
    check_pole_separation(t);

    bool upper;
    if (t.freq > 0.0)
      upper = true;
    else if (t.freq < 0.0)
      upper = false;
    else {
      int n_up = 0, n_dn = 0;
      for (const PoleFactor& p : t.poles)
        (p.position.imag() > 0.0 ? n_up : n_dn)++;
      upper = n_up <= n_dn;
    }

    Complex res_sum(0.0, 0.0);
    for (std::size_t l = 0; l < t.poles.size(); ++l) {
      const double im = t.poles[l].position.imag();
      if ((upper && im > 0.0) || (!upper && im < 0.0))
        res_sum += residue_at(t, l);
    }
    total += (upper ? 1.0 : -1.0) * 2.0 * M_PI * kI * res_sum;
  }
  return total;
}

namespace {

// Partial fraction coefficients of a term over one of its poles:
// coefficient of (t-p)^{-r} is the (n-r)-th scaled derivative at p of the
// term with that pole factor removed.
struct Piece {
  Complex coeff;
  Complex pole;
  int order;
};

std::vector<Piece> partial_fractions(const Term& t) {
  std::vector<Piece> pieces;
  for (std::size_t l = 0; l < t.poles.size(); ++l) {
    const int n = t.poles[l].order;
    const Complex p = t.poles[l].position;
    Term bare = t;
    bare.freq = 0.0;  // frequency factor handled by the caller
    for (int r = n; r >= 1; --r) {
      const Complex c = scaled_derivative_at(bare, l, p, n - r);
      if (c != Complex(0.0, 0.0)) pieces.push_back({c, p, r});
    }
  }
  return pieces;
}

Term piece_term(const Piece& pc, Complex extra_coeff, double freq) {
  Term t;
  t.coeff = pc.coeff * extra_coeff;
  t.freq = freq;
  t.poles.push_back({pc.pole, pc.order});
  return t;
}

}  // namespace

HardySplit hardy_split(const Expression& e) {
  HardySplit out;
  for (Term t0 : e) {
    normalize(t0);
    if (t0.coeff == Complex(0.0, 0.0)) continue;
    if (t0.decay() < 1)
      throw InternalInconsistency("hardy split of a non-decaying term");
    check_pole_separation(t0);
    const std::vector<Piece> pf = partial_fractions(t0);

    if (t0.freq == 0.0) {
      for (const Piece& pc : pf) {
        Term pt = piece_term(pc, Complex(1.0, 0.0), 0.0);
        (pc.pole.imag() > 0.0 ? out.minus : out.plus).push_back(pt);
      }
      continue;
    }

    // e^{i g t}/(t-p)^r with the pole on the non-analytic side: subtract the
    // Taylor polynomial of the exponential at p; the remainder is analytic on
    // the side where the exponential decays.
    const bool exp_upper = t0.freq > 0.0;  // e^{i freq t} analytic in C_+
    Expression swapped;                    // pieces moved to the other side
    for (const Piece& pc : pf) {
      const bool pole_upper = pc.pole.imag() > 0.0;
      if (pole_upper != exp_upper) continue;
      Complex fac = std::exp(kI * t0.freq * pc.pole);
      double sfact = 1.0;
      for (int s = 0; s < pc.order; ++s) {
        if (s > 0) {
          fac *= kI * t0.freq;
          sfact *= s;
        }
        Piece reduced{pc.coeff, pc.pole, pc.order - s};
        swapped.push_back(piece_term(reduced, fac / sfact, 0.0));
      }
    }
    Expression rest = {t0};
    for (const Term& s : swapped) {
      Term neg = s;
      neg.coeff = -neg.coeff;
      rest.push_back(neg);
    }
    if (exp_upper) {
      // swapped pieces have upper poles, freq 0 -> anti-analytic
      out.minus.insert(out.minus.end(), swapped.begin(), swapped.end());
      out.plus.insert(out.plus.end(), rest.begin(), rest.end());
    } else {
      out.plus.insert(out.plus.end(), swapped.begin(), swapped.end());
      out.minus.insert(out.minus.end(), rest.begin(), rest.end());
    }
  }
  return out;
}

Complex inner_product(const Expression& a, const Expression& b) {
  return line_integral(multiply(a, conjugate(b)));
}

}  // namespace modelkit::rational

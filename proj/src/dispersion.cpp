#include "kforge/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "kforge/errors.hpp"
#include "kforge/series.hpp"

namespace kforge {

DispersionModel DispersionModel::abelian(double s, double kappa, int dim) {
  return {DispersionFamily::Abelian, s, kappa, dim};
}

DispersionModel DispersionModel::jordanian(double r, double kappa, int dim) {
  return {DispersionFamily::Jordanian, r, kappa, dim};
}

DispersionModel DispersionModel::minimal(double kappa, int dim) {
  return {DispersionFamily::JordanianMinimal, -1.0, kappa, dim};
}

void DispersionModel::validate() const {
  if (!std::isfinite(kappa) || kappa <= 0)
    throw InvalidSpec("kappa must be a positive finite number");
  if (!std::isfinite(param))
    throw InvalidSpec("parameter must be finite");
  if (dim < 2)
    throw InvalidSpec("dimension must be at least 2");
  if (family == DispersionFamily::Jordanian && param == 0)
    throw InvalidSpec("Jordanian r must be nonzero");
}

std::string DispersionModel::label() const {
  std::string s = to_string(family);
  if (family != DispersionFamily::JordanianMinimal)
    s += " param=" + format_double(param);
  s += " kappa=" + format_double(kappa) + " n=" + std::to_string(dim);
  return s;
}

bool DispersionModel::in_domain(double k0) const {
  switch (family) {
  case DispersionFamily::Abelian:
    return std::isfinite(k0);
  case DispersionFamily::Jordanian:
    return 1.0 - param * k0 / kappa > 0;
  case DispersionFamily::JordanianMinimal:
    return 1.0 + k0 / kappa > 0;
  }
  return false;
}

DispersionFamily parse_dispersion_family(const std::string &name) {
  if (name == "abelian")
    return DispersionFamily::Abelian;
  if (name == "jordanian")
    return DispersionFamily::Jordanian;
  if (name == "minimal")
    return DispersionFamily::JordanianMinimal;
  throw InvalidSpec("unknown dispersion model '" + name + "'");
}

std::string to_string(DispersionFamily f) {
  switch (f) {
  case DispersionFamily::Abelian:
    return "abelian";
  case DispersionFamily::Jordanian:
    return "jordanian";
  case DispersionFamily::JordanianMinimal:
    return "minimal";
  }
  return "?";
}

// k0^2 H2 = (2 kappa sinh(L/2))^2 with L = ln Psi(-k0/kappa); evaluated this
// way the classical limit does not cancel catastrophically.
double m0_squared(const DispersionModel &m, double k0, double knorm) {
  m.validate();
  if (!std::isfinite(k0) || !std::isfinite(knorm))
    throw InvalidSpec("momenta must be finite");
  if (!m.in_domain(k0))
    throw DomainViolation("k0 = " + format_double(k0) + " crosses the branch point of " + m.label());
  const double u = k0 / m.kappa;
  const double k2 = knorm * knorm;
  switch (m.family) {
  case DispersionFamily::Abelian: {
    const double e = 2 * m.kappa * std::sinh(u / 2);
    return e * e - k2 * std::exp((2 * m.param - 1) * u);
  }
  case DispersionFamily::Jordanian: {
    const double L = std::log1p(-m.param * u) / m.param;
    const double e = 2 * m.kappa * std::sinh(L / 2);
    return e * e - k2 * std::exp(L);
  }
  case DispersionFamily::JordanianMinimal:
    return (k0 * k0 - k2) / (1 + u);
  }
  return 0;
}

double m0_squared_from_series(const DerivedFunctions &f, double kappa, double k0, double knorm) {
  const double A = -k0 / kappa;
  return k0 * k0 * f.H2.evaluate_real(A) - knorm * knorm * f.H1.evaluate_real(A);
}

double solve_k0(const DispersionModel &m, double knorm, double m0, double lo, double hi) {
  m.validate();
  if (!(lo <= hi))
    throw InvalidSpec("bracket must satisfy lo <= hi");
  if (!m.in_domain(lo) || !m.in_domain(hi))
    throw DomainViolation("bracket [" + format_double(lo) + ", " + format_double(hi) +
                          "] leaves the domain of " + m.label());
  const double target = m0 * m0;
  auto f = [&](double k0) { return m0_squared(m, k0, knorm) - target; };
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0)
    return lo;
  if (fhi == 0)
    return hi;
  if ((flo < 0) == (fhi < 0))
    throw NoSignChange("residual has the same sign at both ends of [" + format_double(lo) + ", " +
                       format_double(hi) + "]");
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                  boost::math::tools::eps_tolerance<double>(), iters);
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

DispersionSeries jordanian_dispersion_series(const Rational &r, int terms) {
  if (r.is_zero())
    throw InvalidSpec("Jordanian r must be nonzero");
  if (terms < 1)
    throw InvalidSpec("need at least one term");
  const int order = terms + 1;
  Series base = Series::constant(order, GaussRat(1)) - Series::monomial(order, 1, GaussRat(r));
  // Psi(-u) = (1 - r u)^{1/r}.
  Series psi = binom_pow(base, Rational(1) / r);
  Series energy = (psi + invert(psi) - Series::constant(order, GaussRat(2))).divided_by_t(2);
  DispersionSeries out;
  for (int m = 0; m < terms; ++m) {
    out.energy.push_back(energy[m].re());
    out.momentum.push_back(psi[m].re());
  }
  return out;
}

SeriesCheck series_expand_check() {
  SeriesCheck c;
  c.computed = jordanian_dispersion_series(Rational(3), 3);
  c.expected_energy = {Rational(1), Rational(3), Rational(25, 3)};
  c.expected_momentum = {Rational(1), Rational(-1), Rational(-1)};
  c.pass = c.computed.energy == c.expected_energy && c.computed.momentum == c.expected_momentum;
  return c;
}

namespace {

double parse_number(const std::string &text) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception &) {
    throw InvalidSpec("bad number '" + text + "' in grid");
  }
  if (used != text.size() || !std::isfinite(v))
    throw InvalidSpec("bad number '" + text + "' in grid");
  return v;
}

std::vector<double> parse_axis(const std::string &text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');)
    parts.push_back(p);
  if (parts.size() == 1)
    return {parse_number(parts[0])};
  if (parts.size() != 3)
    throw InvalidSpec("axis '" + text + "' must be a value or start:stop:step");
  const double start = parse_number(parts[0]);
  const double stop = parse_number(parts[1]);
  const double step = parse_number(parts[2]);
  if (step <= 0)
    throw InvalidSpec("grid step must be positive");
  std::vector<double> out;
  if (stop < start)
    return out;
  const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 10'000'000)
    throw InvalidSpec("grid axis too large");
  for (long long i = 0; i < count; ++i)
    out.push_back(start + static_cast<double>(i) * step);
  return out;
}

} // namespace

DispersionGrid parse_grid(const std::string &spec) {
  DispersionGrid g;
  if (spec.empty())
    return g;
  bool have_k0 = false, have_knorm = false;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw InvalidSpec("grid item '" + item + "' lacks '='");
    const std::string name = item.substr(0, eq);
    if (name == "k0" && !have_k0) {
      g.k0 = parse_axis(item.substr(eq + 1));
      have_k0 = true;
    } else if (name == "knorm" && !have_knorm) {
      g.knorm = parse_axis(item.substr(eq + 1));
      have_knorm = true;
    } else {
      throw InvalidSpec("unexpected grid axis '" + name + "'");
    }
  }
  if (!have_k0)
    throw InvalidSpec("grid needs a k0 axis");
  if (!have_knorm)
    g.knorm = {0.0};
  return g;
}

std::vector<DispersionPoint> sweep(const DispersionModel &m, const DispersionGrid &g) {
  m.validate();
  const auto nk = static_cast<long long>(g.knorm.size());
  const long long total = static_cast<long long>(g.k0.size()) * nk;
  std::vector<DispersionPoint> pts(static_cast<size_t>(total));
#pragma omp parallel for schedule(static) if (total > 4096)
  for (long long idx = 0; idx < total; ++idx) {
    DispersionPoint &p = pts[static_cast<size_t>(idx)];
    p.k0 = g.k0[static_cast<size_t>(idx / nk)];
    p.knorm = g.knorm[static_cast<size_t>(idx % nk)];
    p.domain_ok = m.in_domain(p.k0);
    p.m0sq = p.domain_ok ? m0_squared(m, p.k0, p.knorm) : std::numeric_limits<double>::quiet_NaN();
  }
  return pts;
}

TableFormat parse_table_format(const std::string &name) {
  if (name == "csv")
    return TableFormat::Csv;
  if (name == "json")
    return TableFormat::Json;
  throw InvalidSpec("unknown table format '" + name + "'");
}

std::string format_double(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_table(std::ostream &os, const DispersionModel &m, const std::vector<DispersionPoint> &pts,
                 TableFormat fmt) {
  if (fmt == TableFormat::Csv) {
    os << "k0,knorm,m0sq,domain_ok\n";
    for (const auto &p : pts)
      os << format_double(p.k0) << ',' << format_double(p.knorm) << ',' << format_double(p.m0sq)
         << ',' << (p.domain_ok ? "true" : "false") << '\n';
    return;
  }
  // Written by hand so that every number carries 17 significant digits.
  auto num = [](double v) { return std::isfinite(v) ? format_double(v) : std::string("null"); };
  os << "{\n  \"model\": {\"family\": \"" << to_string(m.family) << "\", \"param\": " << num(m.param)
     << ", \"kappa\": " << num(m.kappa) << ", \"dim\": " << m.dim << "},\n  \"points\": [";
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto &p = pts[i];
    os << (i ? ",\n    " : "\n    ") << "{\"k0\": " << num(p.k0) << ", \"knorm\": " << num(p.knorm)
       << ", \"m0sq\": " << num(p.m0sq) << ", \"domain_ok\": " << (p.domain_ok ? "true" : "false")
       << "}";
  }
  os << (pts.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

void emit_table(const std::string &path, const DispersionModel &m, const DispersionGrid &g,
                TableFormat fmt) {
  const auto pts = sweep(m, g);
  std::ofstream out(path);
  if (!out)
    throw IOFailure("cannot open '" + path + "' for writing");
  write_table(out, m, pts, fmt);
  out.flush();
  if (!out)
    throw IOFailure("write to '" + path + "' failed");
}

} // namespace kforge

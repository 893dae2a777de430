#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kforge/rational.hpp"
#include "kforge/realization.hpp"

namespace kforge {

enum class DispersionFamily { Abelian, Jordanian, JordanianMinimal };

/// Deformed Klein-Gordon dispersion relation
/// m0^2 = k0^2 H2(-k0/kappa) - k^2 H1(-k0/kappa), with |k| the Euclidean
/// spatial norm.
struct DispersionModel {
  DispersionFamily family = DispersionFamily::JordanianMinimal;
  /// s for Abelian, r for Jordanian, unused for JordanianMinimal (r = -1).
  double param = -1.0;
  double kappa = 1.0;
  int dim = 4;

  static DispersionModel abelian(double s, double kappa, int dim = 4);
  static DispersionModel jordanian(double r, double kappa, int dim = 4);
  static DispersionModel minimal(double kappa, int dim = 4);

  /// Throws InvalidSpec.
  void validate() const;
  std::string label() const;
  /// 1 - r k0/kappa > 0 for the Jordanian families; always true for Abelian.
  bool in_domain(double k0) const;
};

DispersionFamily parse_dispersion_family(const std::string &name);
std::string to_string(DispersionFamily f);

/// Throws DomainViolation outside the Jordanian branch.
double m0_squared(const DispersionModel &m, double k0, double knorm);

/// The general form with H1, H2 taken from realization series, evaluated at
/// A = -k0/kappa.
double m0_squared_from_series(const DerivedFunctions &f, double kappa, double k0, double knorm);

/// k0 in [lo, hi] with m0_squared(k0, knorm) = m0^2. Throws NoSignChange
/// when the residual does not change sign over the bracket and
/// DomainViolation when the bracket leaves the domain.
double solve_k0(const DispersionModel &m, double knorm, double m0, double lo, double hi);

/// Bracket coefficients of the Jordanian relation expanded in u = k0/kappa:
/// m0^2 = k0^2 [e0 + e1 u + ...] - k^2 [p0 + p1 u + ...].
struct DispersionSeries {
  std::vector<Rational> energy;
  std::vector<Rational> momentum;
};
DispersionSeries jordanian_dispersion_series(const Rational &r, int terms);

struct SeriesCheck {
  DispersionSeries computed;
  std::vector<Rational> expected_energy;
  std::vector<Rational> expected_momentum;
  bool pass = false;
};
/// r = 3 (Hermitian in n = 4) against {1, 3, 25/3} and {1, -1, -1}.
SeriesCheck series_expand_check();

struct DispersionPoint {
  double k0 = 0;
  double knorm = 0;
  /// NaN when the point is outside the domain.
  double m0sq = 0;
  bool domain_ok = true;
};

/// Axis values of a grid: "k0=0:1:0.5,knorm=0". Each axis is a single value
/// or an inclusive range start:stop:step; a range with stop < start is empty.
struct DispersionGrid {
  std::vector<double> k0;
  std::vector<double> knorm;
};
/// Throws InvalidSpec.
DispersionGrid parse_grid(const std::string &spec);

/// Row-major over (k0, knorm), k0 outermost.
std::vector<DispersionPoint> sweep(const DispersionModel &m, const DispersionGrid &g);

enum class TableFormat { Csv, Json };
TableFormat parse_table_format(const std::string &name);

void write_table(std::ostream &os, const DispersionModel &m, const std::vector<DispersionPoint> &pts,
                 TableFormat fmt);
/// Throws IOFailure.
void emit_table(const std::string &path, const DispersionModel &m, const DispersionGrid &g,
                TableFormat fmt);

/// 17 significant digits.
std::string format_double(double v);

} // namespace kforge

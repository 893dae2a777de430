#include <cmath>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <gtest/gtest.h>

#include "kforge/dispersion.hpp"
#include "kforge/errors.hpp"

using namespace kforge;
using boost::multiprecision::cpp_dec_float_50;

namespace {

// 12-digit goldens from a 50-digit evaluation.
constexpr double kAbelianGolden = 0.0100083361116;
constexpr double kAbelianRootGolden = -1.09861228867;

cpp_dec_float_50 abelian_oracle(const cpp_dec_float_50 &k0, const cpp_dec_float_50 &k, int s_num,
                                int s_den) {
  using boost::multiprecision::exp;
  cpp_dec_float_50 e = exp(k0 / 2) - exp(-k0 / 2);
  return e * e - k * k * exp(cpp_dec_float_50(2 * s_num - s_den) / s_den * k0);
}

double rel(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

} // namespace

TEST(Dispersion, AbelianGoldenValue) {
  const auto m = DispersionModel::abelian(1.0, 1.0);
  const double v = m0_squared(m, 0.1, 0.0);
  EXPECT_NEAR(v, kAbelianGolden, 1e-12 * kAbelianGolden);
  const double oracle = abelian_oracle(cpp_dec_float_50("0.1"), 0, 1, 1).convert_to<double>();
  EXPECT_LE(rel(v, oracle), 1e-14);
}

TEST(Dispersion, AbelianAgainstOracleOnGrid) {
  for (int s : {0, 1, 2})
    for (double k0 : {-2.0, -0.3, 0.0, 0.25, 1.5})
      for (double k : {0.0, 0.5, 3.0}) {
        const double v = m0_squared(DispersionModel::abelian(s / 2.0, 1.0), k0, k);
        const double o = abelian_oracle(cpp_dec_float_50(k0), cpp_dec_float_50(k), s, 2)
                             .convert_to<double>();
        EXPECT_NEAR(v, o, 1e-12 * std::max(1.0, std::abs(o))) << s << ' ' << k0 << ' ' << k;
      }
}

TEST(Dispersion, MinimalRelationOnRandomPoints) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> kap(0.5, 10), frac(-0.9, 5), mom(0, 5);
  for (int i = 0; i < 1000; ++i) {
    const double kappa = kap(rng);
    const double k0 = frac(rng) * kappa;
    const double k = mom(rng) * kappa;
    const double scale = k0 * k0 + k * k;
    for (const auto &m : {DispersionModel::minimal(kappa), DispersionModel::jordanian(-1.0, kappa)}) {
      const double m2 = m0_squared(m, k0, k);
      EXPECT_LE(std::abs(m2 * (1 + k0 / kappa) - (k0 * k0 - k * k)), 1e-12 * scale);
    }
  }
}

TEST(Dispersion, MinimalMassless) {
  const auto m = DispersionModel::minimal(2.0);
  for (double k : {0.0, 0.5, 1.0, 7.0}) {
    EXPECT_EQ(m0_squared(m, k, k), 0.0);
    EXPECT_EQ(m0_squared(m, -k / 4, k / 4), 0.0);
  }
}

TEST(Dispersion, ClassicalLimit) {
  const double kappa = 1e12;
  for (const auto &m : {DispersionModel::abelian(0.0, kappa), DispersionModel::abelian(0.5, kappa),
                        DispersionModel::abelian(1.0, kappa), DispersionModel::jordanian(1.0, kappa),
                        DispersionModel::jordanian(3.0, kappa), DispersionModel::minimal(kappa)})
    EXPECT_LE(rel(m0_squared(m, 1.0, 0.5), 0.75), 1e-9) << m.label();
}

TEST(Dispersion, JordanianMatchesBinomialForm) {
  for (double r : {-1.0, 1.0, 2.0, 3.0})
    for (double k0 : {-0.2, 0.05, 0.3})
      for (double k : {0.0, 0.7}) {
        const double b = std::pow(1 - r * k0, 1 / r);
        const double direct = (b + 1 / b - 2) - k * k * b;
        EXPECT_NEAR(m0_squared(DispersionModel::jordanian(r, 1.0), k0, k), direct, 1e-13);
      }
}

TEST(Dispersion, DomainViolation) {
  EXPECT_THROW(m0_squared(DispersionModel::jordanian(3.0, 1.0), 1.0 / 3.0, 0), DomainViolation);
  EXPECT_THROW(m0_squared(DispersionModel::jordanian(3.0, 1.0), 2.0, 0), DomainViolation);
  EXPECT_THROW(m0_squared(DispersionModel::minimal(1.0), -1.0, 0), DomainViolation);
  EXPECT_NO_THROW(m0_squared(DispersionModel::jordanian(3.0, 1.0), 0.33, 0));
  EXPECT_NO_THROW(m0_squared(DispersionModel::abelian(0.5, 1.0), 50.0, 0));
  EXPECT_THROW(m0_squared(DispersionModel::jordanian(0.0, 1.0), 0.1, 0), InvalidSpec);
  EXPECT_THROW(m0_squared(DispersionModel::minimal(0.0), 0.1, 0), InvalidSpec);
}

TEST(Dispersion, SeriesCoefficientsForR3) {
  const auto c = series_expand_check();
  EXPECT_TRUE(c.pass);
  ASSERT_EQ(c.computed.energy.size(), 3u);
  EXPECT_EQ(c.computed.energy[0], Rational(1));
  EXPECT_EQ(c.computed.energy[1], Rational(3));
  EXPECT_EQ(c.computed.energy[2], Rational(25, 3));
  EXPECT_EQ(c.computed.momentum[0], Rational(1));
  EXPECT_EQ(c.computed.momentum[1], Rational(-1));
  EXPECT_EQ(c.computed.momentum[2], Rational(-1));
}

TEST(Dispersion, SeriesMatchesNumericForm) {
  for (int r : {-1, 1, 2, 3}) {
    const auto s = jordanian_dispersion_series(Rational(r), 12);
    const double u = 0.01;
    double e = 0, p = 0, pw = 1;
    for (size_t m = 0; m < s.energy.size(); ++m, pw *= u) {
      e += s.energy[m].to_double() * pw;
      p += s.momentum[m].to_double() * pw;
    }
    EXPECT_NEAR(u * u * e - 0.49 * p, m0_squared(DispersionModel::jordanian(r, 1.0), u, 0.7), 1e-14);
  }
  EXPECT_EQ(jordanian_dispersion_series(Rational(-1), 4).momentum,
            (std::vector<Rational>{1, -1, 1, -1}));
  EXPECT_EQ(jordanian_dispersion_series(Rational(-1), 4).energy,
            (std::vector<Rational>{1, -1, 1, -1}));
}

TEST(Dispersion, AbelianMatchesRealizationSeries) {
  for (const Rational &s : {Rational(0), Rational(1, 2), Rational(1)}) {
    RealizationSpec spec;
    spec.psi = Series::constant(10, GaussRat(1));
    spec.gamma = s;
    spec.tau = 1;
    const auto f = derive_functions(spec);
    ASSERT_EQ(f.H1.order(), 10);
    const auto m = DispersionModel::abelian(s.to_double(), 2.0);
    for (double u = -0.1; u <= 0.1 + 1e-12; u += 0.025)
      for (double k : {0.0, 0.3, 1.0}) {
        const double k0 = u * m.kappa;
        EXPECT_NEAR(m0_squared_from_series(f, m.kappa, k0, k), m0_squared(m, k0, k), 1e-8);
      }
  }
}

TEST(Dispersion, JordanianMatchesRealizationSeries) {
  for (int r : {-1, 1, 3}) {
    const auto spec = RealizationSpec::linear(Rational(r), 0, 1, 4, 10);
    const auto f = derive_functions(spec);
    const auto m = DispersionModel::jordanian(r, 1.0);
    for (double k0 : {-0.05, 0.02, 0.05})
      EXPECT_NEAR(m0_squared_from_series(f, 1.0, k0, 0.4), m0_squared(m, k0, 0.4), 1e-8);
  }
}

TEST(SolveK0, MasslessRest) {
  const auto m = DispersionModel::minimal(1.0);
  EXPECT_EQ(solve_k0(m, 0, 0, 0, 1), 0.0);
  EXPECT_EQ(solve_k0(m, 0, 0, -0.5, 0), 0.0);
  // k0 = 0 is a double root: no sign change across it.
  EXPECT_THROW(solve_k0(m, 0, 0, -0.5, 0.5), NoSignChange);
}

TEST(SolveK0, RelativisticTriple) {
  const auto m = DispersionModel::abelian(0.5, 1e12);
  EXPECT_NEAR(solve_k0(m, 3, 4, 0, 10), 5.0, 1e-9);
  EXPECT_NEAR(solve_k0(DispersionModel::jordanian(3.0, 1e12), 3, 4, 0, 10), 5.0, 1e-9);
}

TEST(SolveK0, AbelianGoldenRoot) {
  const auto m = DispersionModel::abelian(1.0, 1.0);
  const double k0 = solve_k0(m, 1, 1, -5, 0);
  EXPECT_NEAR(k0, kAbelianRootGolden, 1e-11);
  EXPECT_NEAR(k0, -std::log(3.0), 1e-14);
  EXPECT_LE(std::abs(m0_squared(m, k0, 1) - 1), 1e-12);
}

TEST(SolveK0, Errors) {
  const auto m = DispersionModel::abelian(1.0, 1.0);
  EXPECT_THROW(solve_k0(m, 1, 1, 0, 5), NoSignChange);
  EXPECT_THROW(solve_k0(DispersionModel::jordanian(3.0, 1.0), 0, 0.1, -1, 0.5), DomainViolation);
  EXPECT_THROW(solve_k0(DispersionModel::minimal(1.0), 0, 0.1, -2, 1), DomainViolation);
  EXPECT_THROW(solve_k0(m, 1, 1, 1, -1), InvalidSpec);
}

TEST(SolveK0, RoundTripOnRandomInputs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mom(0, 3), mass(0, 3);
  const std::vector<DispersionModel> models = {
      DispersionModel::abelian(0.0, 2.0), DispersionModel::abelian(0.5, 1.0),
      DispersionModel::abelian(1.0, 5.0), DispersionModel::jordanian(1.0, 10.0),
      DispersionModel::jordanian(2.0, 20.0), DispersionModel::jordanian(3.0, 30.0),
      DispersionModel::jordanian(-1.0, 3.0), DispersionModel::minimal(3.0)};
  int solved = 0;
  for (const auto &m : models)
    for (int i = 0; i < 50; ++i) {
      const double k = mom(rng), m0 = mass(rng);
      const double lo = 0;
      const double hi = m.family == DispersionFamily::Jordanian && m.param > 0
                            ? 0.999 * m.kappa / m.param
                            : 50;
      double k0 = 0;
      try {
        k0 = solve_k0(m, k, m0, lo, hi);
      } catch (const NoSignChange &) {
        continue;
      }
      ++solved;
      EXPECT_LE(std::abs(m0_squared(m, k0, k) - m0 * m0), 1e-12 * std::max(1.0, m0 * m0))
          << m.label() << ' ' << k << ' ' << m0;
    }
  EXPECT_GT(solved, 300);
}

TEST(Table, GridParsing) {
  const auto g = parse_grid("k0=0:1:0.5,knorm=0");
  EXPECT_EQ(g.k0, (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(g.knorm, (std::vector<double>{0}));
  EXPECT_TRUE(parse_grid("k0=1:0:0.5").k0.empty());
  EXPECT_EQ(parse_grid("knorm=0:2:1,k0=3").knorm.size(), 3u);
  EXPECT_THROW(parse_grid("k0=0:1"), InvalidSpec);
  EXPECT_THROW(parse_grid("k0=0:1:0"), InvalidSpec);
  EXPECT_THROW(parse_grid("k1=0"), InvalidSpec);
  EXPECT_THROW(parse_grid("knorm=0"), InvalidSpec);
  EXPECT_THROW(parse_grid("k0=abc"), InvalidSpec);
}

TEST(Table, EmptyGridIsHeaderOnly) {
  std::ostringstream os;
  const auto m = DispersionModel::minimal(1.0);
  write_table(os, m, sweep(m, parse_grid("k0=1:0:1")), TableFormat::Csv);
  EXPECT_EQ(os.str(), "k0,knorm,m0sq,domain_ok\n");
}

TEST(Table, RowsInInputOrderAndPointwise) {
  const auto m = DispersionModel::minimal(1.0);
  const auto pts = sweep(m, parse_grid("k0=0:1:0.5,knorm=0"));
  ASSERT_EQ(pts.size(), 3u);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(pts[i].k0, 0.5 * static_cast<double>(i));
    EXPECT_EQ(pts[i].m0sq, m0_squared(m, pts[i].k0, 0));
    EXPECT_EQ(pts[i].m0sq * (1 + pts[i].k0), pts[i].k0 * pts[i].k0);
  }
  std::ostringstream os;
  write_table(os, m, pts, TableFormat::Csv);
  EXPECT_EQ(os.str(), "k0,knorm,m0sq,domain_ok\n"
                      "0,0,0,true\n"
                      "0.5,0,0.16666666666666666,true\n"
                      "1,0,0.5,true\n");
}

TEST(Table, DomainFlagsAndJson) {
  const auto m = DispersionModel::jordanian(2.0, 1.0);
  const auto pts = sweep(m, parse_grid("k0=0:1:0.5,knorm=1"));
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_TRUE(pts[0].domain_ok);
  EXPECT_FALSE(pts[1].domain_ok);
  EXPECT_TRUE(std::isnan(pts[2].m0sq));
  std::ostringstream os;
  write_table(os, m, pts, TableFormat::Json);
  EXPECT_NE(os.str().find("\"family\": \"jordanian\""), std::string::npos);
  EXPECT_NE(os.str().find("{\"k0\": 0.5, \"knorm\": 1, \"m0sq\": null, \"domain_ok\": false}"),
            std::string::npos);
  std::ostringstream csv;
  write_table(csv, m, pts, TableFormat::Csv);
  EXPECT_NE(csv.str().find("0.5,1,nan,false\n"), std::string::npos);
}

TEST(Table, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(format_double(-2), "-2");
}

TEST(Table, EmitFailsOnBadPath) {
  EXPECT_THROW(emit_table("/nonexistent/dir/t.csv", DispersionModel::minimal(1.0),
                          parse_grid("k0=0"), TableFormat::Csv),
               IOFailure);
}

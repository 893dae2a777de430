#include "kforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kforge/dispersion.hpp"
#include "kforge/errors.hpp"
#include "kforge/expr.hpp"
#include "kforge/hopf.hpp"
#include "kforge/lie_algebra.hpp"
#include "kforge/realization.hpp"
#include "kforge/text.hpp"
#include "kforge/twist.hpp"

namespace kforge {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kSuites = {"cocycle", "hopf", "algebra", "ode"};

int default_order() {
  const char *env = std::getenv("KFORGE_ORDER");
  if (!env || !*env)
    return kDefaultOrder;
  std::string s(env);
  size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception &) {
  }
  if (used != s.size() || v < 0 || v > 32)
    throw std::invalid_argument("KFORGE_ORDER must be an integer in 0..32, got '" + s + "'");
  return v;
}

Family parse_family(const std::string &name) {
  if (name == "jordanian")
    return Family::Jordanian;
  if (name == "abelian")
    return Family::Abelian;
  throw std::invalid_argument("unknown family '" + name + "'");
}

Rational parse_rational(const std::string &text) {
  const auto slash = text.find('/');
  auto check = [&](const std::string &part, bool sign_ok) {
    size_t start = sign_ok && !part.empty() && part[0] == '-' ? 1 : 0;
    if (start >= part.size() || !std::all_of(part.begin() + static_cast<long>(start), part.end(),
                                             [](char c) { return c >= '0' && c <= '9'; }))
      throw std::invalid_argument("not an exact rational: '" + text + "'");
  };
  check(text.substr(0, slash), true);
  if (slash != std::string::npos) {
    check(text.substr(slash + 1), false);
    if (Rational::parse(text.substr(slash + 1)).is_zero())
      throw std::invalid_argument("zero denominator in '" + text + "'");
  }
  return Rational::parse(text);
}

double parse_decimal(const std::string &text) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != text.size() || text.empty())
    throw std::invalid_argument("not a decimal number: '" + text + "'");
  return v;
}

Side parse_side(const std::string &s) { return s == "right" ? Side::Right : Side::Left; }

struct SpecArgs {
  std::string family;
  std::string param;
  int dim = 4;
  int order = kDefaultOrder;

  TwistSpec spec() const {
    TwistSpec t;
    t.family = parse_family(family);
    t.param = parse_rational(param);
    t.dim = dim;
    t.order = order;
    t.validate();
    return t;
  }
};

void add_spec_options(CLI::App *cmd, SpecArgs &a, bool required = true) {
  auto *f = cmd->add_option("--family", a.family, "jordanian or abelian")
                ->check(CLI::IsMember({"jordanian", "abelian"}));
  auto *p = cmd->add_option("--param", a.param, "r or s as an exact rational");
  if (required) {
    f->required();
    p->required();
  }
  cmd->add_option("--dim", a.dim, "spacetime dimension")->capture_default_str();
  cmd->add_option("--order", a.order, "truncation order (default KFORGE_ORDER or 6)");
}

void emit(const std::string &text, const std::string &path, std::ostream &out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f)
    throw IOFailure("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f)
    throw IOFailure("write to '" + path + "' failed");
}

// ------------------------------------------------------------------ verify

Json identity_json(const IdentityReport &r) {
  Json out = Json::object();
  out["spec"] = r.spec;
  out["pass"] = r.pass();
  Json ids = Json::array();
  for (const auto &x : r.results)
    ids.push_back({{"id", x.id}, {"pass", x.pass}, {"first_failure", x.first_failure}});
  out["identities"] = ids;
  return out;
}

std::string side_name(Side s) { return s == Side::Left ? "left" : "right"; }

Json suite_cocycle(const Twist &t) {
  const auto c = verify_cocycle(t);
  const auto th = extract_theta(t);
  return {{"pass", c.pass && c.normalized && th.is_kappa_minkowski()},
          {"cocycle", c.pass},
          {"first_failure", c.first_failure},
          {"normalized", c.normalized},
          {"kappa_minkowski", th.is_kappa_minkowski()}};
}

Json suite_hopf(const Twist &t) {
  const auto ax = verify_hopf_axioms(t);
  Json failures = Json::array();
  for (const auto &f : ax.failures)
    failures.push_back({{"axiom", f.axiom}, {"generator", f.generator}, {"order", f.order}});

  auto forms = check_closed_forms(t);
  const auto &s = t.spec();
  if (s.family == Family::Jordanian && s.param == Rational(-1) && s.dim == 4) {
    auto wp = weyl_poincare_table(s.order);
    forms.insert(forms.end(), wp.begin(), wp.end());
  }
  int printed = 0, corrected = 0;
  Json deviations = Json::array();
  for (const auto &r : forms) {
    printed += r.match;
    corrected += r.corrected_match;
    if (!r.match)
      deviations.push_back({{"generator", r.generator},
                            {"kind", r.kind == FormKind::Coproduct ? "coproduct" : "antipode"},
                            {"printed", r.formula},
                            {"first_mismatch", r.first_mismatch},
                            {"corrected", r.correction},
                            {"corrected_match", r.corrected_match}});
  }
  const bool forms_ok = corrected == static_cast<int>(forms.size());
  return {{"pass", ax.pass() && forms_ok},
          {"axioms",
           {{"pass", ax.pass()},
            {"generators", ax.generators},
            {"checks", ax.checks},
            {"failures", failures}}},
          {"closed_forms",
           {{"entries", forms.size()},
            {"printed_match", printed},
            {"corrected_match", corrected},
            {"printed_deviations", deviations}}}};
}

Json suite_algebra(const TwistSpec &s) {
  Json out = Json::object();
  bool pass = true;
  for (Side side : {Side::Left, Side::Right}) {
    const auto cross = cross_check_twist(s, side);
    const auto alg = verify_extended_algebra(realization_spec_for(s, side));
    pass = pass && cross.pass() && alg.pass();
    out[side_name(side)] = {{"cross_check", identity_json(cross)}, {"algebra", identity_json(alg)}};
  }
  out["pass"] = pass;
  return out;
}

Json suite_ode(const TwistSpec &s) {
  Json out = Json::object();
  bool pass = true;
  for (Side side : {Side::Left, Side::Right}) {
    RealizationSpec rs = realization_spec_for(s, side);
    const auto lor = verify_ode_systems(rs);
    const bool herm = check_hermiticity(rs);
    const bool herm_ok = herm == listed_hermitian_case(rs) && herm == x0_is_self_adjoint(rs);
    rs.epsilon = 1;
    const auto euc = verify_ode_systems(rs);
    pass = pass && lor.pass() && euc.pass() && herm_ok;
    out[side_name(side)] = {{"lorentzian", identity_json(lor)},
                            {"euclidean", identity_json(euc)},
                            {"hermitian", herm},
                            {"hermiticity_consistent", herm_ok}};
  }
  out["pass"] = pass;
  return out;
}

Json verify_spec(const TwistSpec &s, const std::vector<std::string> &suites, bool corrupt) {
  Json out = Json::object();
  out["spec"] = s.label();
  if (corrupt)
    out["control"] = "corrupted twist";
  Json res = Json::object();
  bool pass = true;
  std::unique_ptr<Twist> twist;
  auto tw = [&]() -> const Twist & {
    if (!twist)
      twist = std::make_unique<Twist>(corrupt ? corrupted_twist(s) : Twist(s));
    return *twist;
  };
  for (const auto &name : suites) {
    Json r;
    if (name == "cocycle")
      r = suite_cocycle(tw());
    else if (name == "hopf")
      r = suite_hopf(tw());
    else if (name == "algebra")
      r = suite_algebra(s);
    else
      r = suite_ode(s);
    pass = pass && r["pass"].get<bool>();
    res[name] = r;
  }
  out["pass"] = pass;
  out["suites"] = res;
  return out;
}

std::vector<TwistSpec> grid_specs(int dim, int order) {
  std::vector<TwistSpec> out;
  for (int r : {-1, 1, 2, 3})
    out.push_back(TwistSpec::jordanian(r, dim, order));
  for (const Rational &s : {Rational(0), Rational(1, 2), Rational(1)})
    out.push_back(TwistSpec::abelian(s, dim, order));
  return out;
}

// ---------------------------------------------------------------- isomorphism

std::string vec_str(const LieAlgebra &alg, const Vec &v) {
  TermWriter w;
  for (size_t k = 0; k < v.size(); ++k)
    w.add(v[k], alg.labels()[k]);
  return w.str();
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Twisted kappa-Minkowski toolkit", "kforge"};
  app.require_subcommand(1);

  int order_default = kDefaultOrder;
  try {
    order_default = default_order();
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  // verify
  SpecArgs va;
  va.order = order_default;
  std::string suite = "all", verify_out;
  bool whole_grid = false, corrupt = false;
  auto *verify = app.add_subcommand("verify", "run verification suites");
  add_spec_options(verify, va, false);
  verify->add_option("--suite", suite)->check(CLI::IsMember({"cocycle", "hopf", "algebra", "ode", "all"}));
  verify->add_option("--out", verify_out, "write the JSON report to a file");
  verify->add_flag("--grid", whole_grid, "every spec of the standard grid");
  verify->add_flag("--corrupt", corrupt, "negative control: corrupt the twist at order 2");

  // star
  SpecArgs sa;
  sa.order = order_default;
  std::vector<std::string> exprs;
  auto *star = app.add_subcommand("star", "star product of two polynomials");
  add_spec_options(star, sa);
  star->add_option("exprs", exprs, "two polynomial expressions")->expected(2)->required();

  // coproduct
  SpecArgs ca;
  ca.order = order_default;
  std::string gen_name;
  auto *cop = app.add_subcommand("coproduct", "deformed coproduct and antipode of a generator");
  add_spec_options(cop, ca);
  cop->add_option("--generator", gen_name, "Pk, Lmn, Tk, D, L; in 4d also Mrotk, Nk, Ptilk")->required();

  // realization
  SpecArgs ra;
  ra.order = order_default;
  std::string side = "left";
  auto *real = app.add_subcommand("realization", "realization operators of a twist");
  add_spec_options(real, ra);
  real->add_option("--side", side, "left or right realization")->capture_default_str()->check(CLI::IsMember({"left", "right"}));

  // dispersion
  std::string model, dparam, kappa = "1", grid, format = "csv", disp_out;
  int ddim = 4;
  auto *disp = app.add_subcommand("dispersion", "dispersion relation table");
  disp->add_option("--model", model)->required()->check(CLI::IsMember({"abelian", "jordanian", "minimal"}));
  disp->add_option("--param", dparam, "s or r as a decimal");
  disp->add_option("--kappa", kappa, "deformation scale")->capture_default_str();
  disp->add_option("--grid", grid, "e.g. k0=0:1:0.5,knorm=0")->required();
  disp->add_option("--format", format, "table format")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  disp->add_option("--dim", ddim, "spacetime dimension")->capture_default_str();
  disp->add_option("--out", disp_out, "write the table to a file");

  // isomorphism
  int idim = 4, itau = 0;
  std::string ia = "1";
  auto *iso = app.add_subcommand("isomorphism", "so(n,1) isomorphism check");
  iso->add_option("--dim", idim, "spacetime dimension")->required();
  iso->add_option("--tau", itau, "+1 or -1 (default both)");
  iso->add_option("--a", ia, "value of a as an exact rational");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      std::vector<TwistSpec> specs;
      if (whole_grid) {
        if (!va.family.empty() || !va.param.empty())
          throw std::invalid_argument("--grid excludes --family and --param");
        specs = grid_specs(va.dim, va.order);
      } else {
        if (va.family.empty() || va.param.empty())
          throw std::invalid_argument("verify needs --family and --param, or --grid");
        specs = {va.spec()};
      }
      const std::vector<std::string> suites =
          suite == "all" ? kSuites : std::vector<std::string>{suite};
      Json rep = Json::object();
      rep["dim"] = va.dim;
      rep["order"] = va.order;
      rep["suites"] = suites;
      Json results = Json::array();
      bool pass = true;
      for (const auto &s : specs) {
        Json r = verify_spec(s, suites, corrupt);
        pass = pass && r["pass"].get<bool>();
        results.push_back(r);
      }
      rep["specs"] = results;
      rep["pass"] = pass;
      emit(rep.dump(2) + "\n", verify_out, out);
      return pass ? kExitOk : kExitVerification;
    }

    if (star->parsed()) {
      const TwistSpec s = sa.spec();
      const Twist t(s);
      const Poly f = to_poly(parse_poly(exprs[0], s.dim), s.dim, s.order);
      const Poly g = to_poly(parse_poly(exprs[1], s.dim), s.dim, s.order);
      out << star_product(t, f, g).str() << '\n';
      return kExitOk;
    }

    if (cop->parsed()) {
      const TwistSpec s = ca.spec();
      const Twist t(s);
      const DiffOp x = generator_by_name(t.gens(), gen_name);
      out << "spec: " << s.label() << '\n';
      out << "generator: " << gen_name << " = " << x.str() << '\n';
      out << "coproduct: " << deformed_coproduct(t, x).str() << '\n';
      out << "antipode: " << deformed_antipode(t, x).str() << '\n';
      auto forms = check_closed_forms(t);
      if (s.family == Family::Jordanian && s.param == Rational(-1) && s.dim == 4) {
        auto wp = weyl_poincare_table(s.order);
        forms.insert(forms.end(), wp.begin(), wp.end());
      }
      bool any = false;
      for (const auto &r : forms) {
        if (r.generator != gen_name)
          continue;
        any = true;
        out << "reference: " << r.formula << " [printed "
            << (r.match ? std::string("matches")
                        : "differs from order " + std::to_string(r.first_mismatch))
            << "]\n";
        if (!r.correction.empty())
          out << "corrected: " << r.correction << " ["
              << (r.corrected_match ? "matches" : "differs") << "]\n";
      }
      if (!any)
        out << "reference: none tabulated\n";
      return kExitOk;
    }

    if (real->parsed()) {
      const TwistSpec s = ra.spec();
      const RealizationSpec rs = realization_spec_for(s, parse_side(side));
      const auto ops = build_generators(rs);
      out << "spec: " << s.label() << ' ' << side << '\n';
      out << "realization: " << rs.label() << '\n';
      for (int mu = 0; mu < rs.dim; ++mu)
        out << "x^" << mu << " = " << ops.x_up[static_cast<size_t>(mu)].str() << '\n';
      for (int mu = 0; mu < rs.dim; ++mu)
        for (int nu = mu + 1; nu < rs.dim; ++nu)
          out << "M_" << mu << nu << " = "
              << ops.M[static_cast<size_t>(mu)][static_cast<size_t>(nu)].str() << '\n';
      for (int mu = 0; mu < rs.dim; ++mu)
        out << "D_" << mu << " = " << ops.D[static_cast<size_t>(mu)].str() << '\n';
      out << "box = " << ops.box.str() << '\n';
      return kExitOk;
    }

    if (disp->parsed()) {
      DispersionModel m;
      m.family = parse_dispersion_family(model);
      m.kappa = parse_decimal(kappa);
      m.dim = ddim;
      if (m.family == DispersionFamily::JordanianMinimal) {
        m.param = -1.0;
      } else {
        if (dparam.empty())
          throw std::invalid_argument("--param is required for the " + model + " model");
        m.param = parse_decimal(dparam);
      }
      m.validate();
      const DispersionGrid g = parse_grid(grid);
      std::ostringstream table;
      write_table(table, m, sweep(m, g), parse_table_format(format));
      emit(table.str(), disp_out, out);
      return kExitOk;
    }

    if (iso->parsed()) {
      if (itau != 0 && itau != 1 && itau != -1)
        throw std::invalid_argument("--tau must be 1 or -1");
      const Rational a = parse_rational(ia);
      Json rep = Json::object();
      rep["dim"] = idim;
      rep["a"] = a.str();
      Json reports = Json::array();
      bool pass = true;
      for (int tau : {1, -1}) {
        if (itau != 0 && tau != itau)
          continue;
        const auto r = check_so_n1_isomorphism(idim, tau, a);
        const LieAlgebra alg = kappa_lorentz_algebra(idim, tau, a);
        Json table = Json::array();
        for (size_t i = 0; i < alg.dim(); ++i)
          for (size_t j = i + 1; j < alg.dim(); ++j) {
            const Vec &v = alg.bracket(i, j);
            if (std::any_of(v.begin(), v.end(), [](const GaussRat &c) { return !c.is_zero(); }))
              table.push_back("[" + alg.labels()[i] + ", " + alg.labels()[j] + "] = " + vec_str(alg, v));
          }
        pass = pass && r.pass();
        reports.push_back({{"tau", tau},
                           {"pass", r.pass()},
                           {"antisymmetric", r.antisymmetric},
                           {"jacobi_failures", r.jacobi_failures},
                           {"target_jacobi_failures", r.target_jacobi_failures},
                           {"alpha", r.alpha ? r.alpha->str() : "none"},
                           {"beta", r.beta ? r.beta->str() : "none"},
                           {"bijective", r.bijective},
                           {"bracket_checks", r.bracket_checks},
                           {"bracket_failures", r.bracket_failures},
                           {"displayed_relative_sign_holds", r.printed_relative_sign},
                           {"brackets", table}});
      }
      rep["reports"] = reports;
      rep["pass"] = pass;
      out << rep.dump(2) << '\n';
      return pass ? kExitOk : kExitVerification;
    }
  } catch (const SyntaxError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownSymbol &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IndexOutOfRange &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownGenerator &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IOFailure &e) {
    err << "error: " << e.what() << '\n';
    return kExitIO;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace kforge

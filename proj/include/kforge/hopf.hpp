#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kforge/twist.hpp"

namespace kforge {

/// Delta^F(X) = F (X (x) 1 + 1 (x) X) F^{-1} for a primitive generator X.
Tensor2 deformed_coproduct(const Twist &t, const DiffOp &x);
/// The same element as exp(ad Z)(Delta X), with Z the twist exponent.
Tensor2 deformed_coproduct_by_adjoint(const Twist &t, const DiffOp &x);

/// u = f^alpha S(f_alpha).
DiffOp twist_u(const Twist &t);
/// S^F(X) = u S(X) u^{-1} = -u X u^{-1} for a primitive generator X.
DiffOp deformed_antipode(const Twist &t, const DiffOp &x);

/// (Delta^F (x) id) Delta^F X and (id (x) Delta^F) Delta^F X, evaluated by
/// conjugating Delta^2 X with F12 (Delta (x) id)F, resp. F23 (id (x) Delta)F,
/// each through nested adjoint actions of the exponents. Twists wrapped
/// without an exponent are conjugated directly.
Tensor3 iterated_coproduct_left(const Twist &t, const DiffOp &x);
Tensor3 iterated_coproduct_right(const Twist &t, const DiffOp &x);

/// mu (S' (x) id) Delta^F X, with S' = S^F when deformed is true and the
/// undeformed antipode otherwise. For a primitive X this equals
/// u' sum S(fbar^b) [W, X] fbar_b with W = sum S(f^a) u'^{-1} f_a.
DiffOp antipode_axiom_lhs(const Twist &t, const DiffOp &x, bool deformed = true);

struct AxiomFailure {
  std::string axiom;
  std::string generator;
  int order = -1;
};

struct AxiomReport {
  std::string spec;
  int order = 0;
  int generators = 0;
  int checks = 0;
  std::vector<AxiomFailure> failures;
  bool pass() const { return failures.empty(); }
};

/// Coassociativity, counit, antipode and homomorphism checks on the igl(n)
/// basis.
AxiomReport verify_hopf_axioms(const Twist &t);

enum class FormKind { Coproduct, Antipode };

using Index2 = std::array<int, 2>;

/// One tabulated closed form, transcribed as printed. Entries whose printed
/// form disagrees with the twist also carry a corrected form.
struct ClosedForm {
  Family family;
  bool weyl_table = false;
  FormKind kind = FormKind::Coproduct;
  std::string formula;
  /// Corrected formula, empty when the printed one stands.
  std::string correction;
  /// Index tuples the entry expands over, given the dimension.
  std::function<std::vector<Index2>(int dim)> indices;
  std::function<std::string(Index2)> name;
  std::function<DiffOp(const Generators &, Index2)> generator;
  /// Reference value (printed or corrected); only the member matching kind
  /// is set.
  std::function<Tensor2(const Generators &, const Rational &p, Index2, bool corrected)> coproduct;
  std::function<DiffOp(const Generators &, const Rational &p, Index2, bool corrected)> antipode;
};

/// Every closed form of the Jordanian, Abelian and Weyl-Poincare tables.
const std::vector<ClosedForm> &closed_form_table();

struct HopfReport {
  std::string spec;
  std::string generator;
  FormKind kind = FormKind::Coproduct;
  std::string formula;
  std::string computed;
  std::string reference;
  bool match = false;
  int first_mismatch = -1;
  std::string correction;
  /// Whether the corrected form matches; equals match when the entry has no
  /// correction.
  bool corrected_match = false;
};

/// Evaluates every table entry that applies to the spec.
std::vector<HopfReport> check_closed_forms(const Twist &t);
/// Weyl-Poincare table in the physical basis (Jordanian r = -1, n = 4).
std::vector<HopfReport> weyl_poincare_table(int order);

/// A pair of generators whose bracket is not preserved by a tabulated
/// coproduct, Delta([X, Y]) != [Delta X, Delta Y], or antipode,
/// S([X, Y]) != [S(Y), S(X)].
struct BracketDefect {
  std::string x, y;
  int order = -1;
};

/// (Anti)homomorphism check of the tabulated forms alone, without the
/// twist. Brackets are expanded in the span of the tabulated generators;
/// pairs whose bracket leaves that span are skipped.
std::vector<BracketDefect> table_bracket_defects(Family family, bool weyl_table, FormKind kind,
                                                 const Rational &param, int dim, int order,
                                                 bool corrected);

/// Coordinates of op in the span of basis (constant coefficients), if any.
std::optional<std::vector<GaussRat>> decompose(const DiffOp &op, const std::vector<DiffOp> &basis);

/// Physical basis of the Weyl-Poincare algebra in n = 4: rotations M_k,
/// boosts N_k, dilatation L and momenta P_mu = -i d_mu.
struct PhysicalBasis {
  std::vector<DiffOp> M, N, P;
  DiffOp L;
};
PhysicalBasis physical_basis(const Generators &g);

/// Looks up a generator by name, including the physical basis names
/// "Mrot<k>", "N<k>" and "Ptil<mu>". Throws UnknownGenerator.
DiffOp generator_by_name(const Generators &g, const std::string &name);

} // namespace kforge

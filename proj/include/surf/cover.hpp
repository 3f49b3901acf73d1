#pragma once

#include <map>
#include <string>
#include <vector>

#include "surf/contraction.hpp"

namespace surf {

enum class Characteristic { zero, positive };

/// Degree-m cyclic cover g: Z -> Y branched along A in |mH|.
struct CoverSpec {
  int degree = 2;
  DescendedClass branch;  // A, must be flagged ample
  Contraction base;       // Y, as a contraction of a smooth model
  Characteristic characteristic = Characteristic::zero;
};

/// K_Z ~ g^*(K_Y + ((m-1)/m) A), stored through Mumford pullbacks to the
/// smooth model of Y.
struct CoverCanonical {
  int degree = 2;
  Rational branch_coeff;
  CurveExpr canonical_pullback;  // pi^*K_Y
  CurveExpr branch;              // representative of A
  CurveExpr log_class;           // pi^*K_Y + branch_coeff * A
  Rational log_square;
  bool nef = false;
  bool big = false;
  std::vector<std::string> assumptions;

  /// e.g. "g*(K_Y + 1/2*A)"
  std::string str() const;
};

CoverCanonical cover_canonical_class(const CoverSpec& spec);

enum class FgAnswer { yes, no, undetermined };
enum class FgRule { criterion_theorem, kappa_le_1, gorenstein_remark, none };
const char* to_string(FgAnswer a);
const char* to_string(FgRule r);

struct FgFlags {
  Verdict q_gorenstein = Verdict::unknown;
  bool k_nef_mumford = false;
  bool k_big = false;
  bool kappa_le_1 = false;
  bool gorenstein = false;
};

struct FGVerdict {
  FgAnswer finitely_generated = FgAnswer::undetermined;
  FgRule rule_applied = FgRule::none;
  std::map<std::string, std::string> inputs;
};

FGVerdict fg_verdict(const FgFlags& flags);

/// Flags of the cover Z: Q-Gorensteinness is inherited from Y through the
/// finite map, nef/big come from the cover canonical class (kappa(Z) = 2).
FgFlags cover_flags(const CoverCanonical& k, const QGorensteinVerdict& base_q_gorenstein);

/// Z~ = Y~ x_Y Z: Q-Gorensteinness from Y~, finite generation from Z.
struct FiberProductNode {
  Verdict q_gorenstein = Verdict::unknown;
  FgAnswer finitely_generated = FgAnswer::undetermined;
  bool kappa_two = false;
  std::vector<std::string> notes;
};

FiberProductNode fiber_product(const QGorensteinVerdict& partial_resolution, const FGVerdict& cover,
                               const FgFlags& cover_flags);

}  // namespace surf

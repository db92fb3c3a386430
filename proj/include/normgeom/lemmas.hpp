#pragma once

#include "normgeom/space.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace normgeom {

enum class LemmaId { Csi, Defect, DoubleLaw, AddLaw, ScaleLaw, LinearCombo, InductRatio };

std::string_view lemma_name(LemmaId id);
std::optional<LemmaId> lemma_from_name(std::string_view name);
const std::vector<LemmaId>& all_lemmas();

/// One evaluated instance of an inequality: quantity <= bound.
/// `magnitude` is the size of the norm terms that enter the quantity; it sets
/// the rounding floor of the comparison.
struct LemmaSample {
  double quantity = 0.0;
  double bound = 0.0;
  double magnitude = 0.0;
};

/// Rounding floor used both for the violation test and the margin scale.
double lemma_floor(const LemmaSample& s);
bool is_violation(const LemmaSample& s);
/// (bound - quantity) / max(bound, floor); negative means the bound failed.
double lemma_margin(const LemmaSample& s);

struct BoundCheckReport {
  LemmaId lemma = LemmaId::Csi;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;
  std::vector<double> worst_witness;
  double epsilon_used = 0.0;
};

// Single-instance evaluators. The witness layouts stored in BoundCheckReport
// are the concatenation of these arguments in order.
LemmaSample eval_csi(const NormedSpace& space, const Vector& x, const Vector& y);
LemmaSample eval_defect(const NormedSpace& space, double epsilon, const Vector& a, const Vector& b);
/// Both displayed forms; the sample reports the tighter (first) form unless
/// the second is the one closer to failing.
LemmaSample eval_doublelaw(const NormedSpace& space, double epsilon, const Vector& x, const Vector& y);
LemmaSample eval_addlaw(const NormedSpace& space, double epsilon, const Vector& x, const Vector& y,
                        const Vector& z);
LemmaSample eval_scalelaw(const NormedSpace& space, double epsilon, const Vector& x, const Vector& y, double t);

/// Fully explicit bound from the induction over k:
/// (k-1) e [(4 + 2e) sum a^2 + 8 + 8e] + (k + sum a^2) e [28 + 27e].
double linear_combo_bound(std::size_t k, double epsilon, double sum_a_sq);
LemmaSample eval_linear_combo(const NormedSpace& space, double epsilon, const Matrix& images, const Vector& a,
                              const Vector& y);

/// Images of a random map R^k -> X scaled so its sampled operator norm is at
/// most one. Deterministic in (space, k, seed).
Matrix make_contraction(const NormedSpace& space, std::size_t k, std::uint64_t seed);

/// The configuration of the one-step extension: images x_1..x_{n-1} of a map
/// with ||L|| <= 1 and ||L^{-1}|| <= k_bound, plus a unit top vector whose
/// brackets with the images are at most delta.
struct InductionSetup {
  Matrix images;
  Vector top;
  double delta = 0.0;
  double k_bound = 1.0;
};

/// Builds the setup from the space's coordinate hyperplane span(e_1..e_{n-1})
/// and a bracket-orthogonal top vector. Requires dim >= 2.
InductionSetup make_induction_setup(const NormedSpace& space, std::uint64_t seed);

LemmaSample eval_induct_ratio(const NormedSpace& space, double epsilon, const InductionSetup& setup,
                              const Vector& a);

BoundCheckReport check_csi(const NormedSpace& space, std::size_t samples, std::uint64_t seed);
BoundCheckReport check_defect(const NormedSpace& space, double epsilon, std::size_t samples, std::uint64_t seed);
BoundCheckReport check_doublelaw(const NormedSpace& space, double epsilon, std::size_t samples,
                                 std::uint64_t seed);
BoundCheckReport check_addlaw(const NormedSpace& space, double epsilon, std::size_t samples, std::uint64_t seed);
BoundCheckReport check_scalelaw(const NormedSpace& space, double epsilon, std::size_t samples,
                                std::uint64_t seed);
BoundCheckReport check_linear_combo(const NormedSpace& space, double epsilon, std::size_t k, std::size_t samples,
                                    std::uint64_t seed);
BoundCheckReport check_induct_ratio(const NormedSpace& space, double epsilon, const InductionSetup& setup,
                                    std::size_t samples, std::uint64_t seed);

/// Runs one lemma with default auxiliary construction (k = dim for the
/// linear-combination check, make_induction_setup for the ratio check).
BoundCheckReport run_lemma(LemmaId id, const NormedSpace& space, double epsilon, std::size_t samples,
                           std::uint64_t seed);

}  // namespace normgeom

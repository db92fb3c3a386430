#pragma once

#include "normgeom/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace normgeom {

enum class NormKind { PNorm, WeightedPNorm, PolytopeGauge, Blend };

/// Declarative description of a norm on R^n.
///
/// The four families cover the concrete spaces used throughout the library:
///   - PNorm:          (sum |x_i|^p)^(1/p), p in [1, inf]
///   - WeightedPNorm:  (sum w_i |x_i|^p)^(1/p), w_i > 0
///   - PolytopeGauge:  max_i |<f_i, x>|, rows f_i spanning R^n
///   - Blend:          (1 - t) N_left(x) + t N_right(x), t in [0, 1]
///
/// NormSpec values are immutable; blend children are shared.
class NormSpec {
 public:
  static NormSpec pnorm(double p);
  static NormSpec weighted_pnorm(double p, Vector weights);
  /// Each row of `functionals` is one linear functional.
  static NormSpec polytope(Matrix functionals);
  static NormSpec blend(NormSpec left, NormSpec right, double t);

  /// Regular hexagon gauge on R^2 (functionals at 0, 60 and 120 degrees).
  static NormSpec hexagon();

  NormKind kind() const { return kind_; }
  double p() const { return p_; }
  const Vector& weights() const { return weights_; }
  const Matrix& functionals() const { return functionals_; }
  const NormSpec& left() const { return *left_; }
  const NormSpec& right() const { return *right_; }
  double blend_t() const { return t_; }

  /// Dimension fixed by the data (weights, functionals), if any.
  std::optional<Index> implied_dim() const;

  bool is_pure_pnorm() const { return kind_ == NormKind::PNorm; }

  /// Evaluates the norm. No dimension check; callers go through Space.
  double evaluate(const Vector& x) const;

  /// Short identifier such as "pnorm_p1.5" or "blend_t0.05".
  std::string label() const;

 private:
  NormSpec() = default;

  NormKind kind_ = NormKind::PNorm;
  double p_ = 2.0;
  Vector weights_;
  Matrix functionals_;
  std::shared_ptr<const NormSpec> left_;
  std::shared_ptr<const NormSpec> right_;
  double t_ = 0.0;
};

double pnorm_value(const Vector& x, double p);

/// A finite-dimensional real normed space. Space, Subspace and DirectSumSpace
/// all implement this interface so that estimators and builders can run on
/// any of them.
class NormedSpace {
 public:
  virtual ~NormedSpace() = default;

  virtual Index dim() const = 0;
  virtual std::shared_ptr<const NormedSpace> clone() const = 0;

  /// Throws std::invalid_argument on dimension mismatch.
  double norm(const Vector& x) const;

 protected:
  virtual double evaluate(const Vector& x) const = 0;
};

/// R^dim equipped with a NormSpec.
class Space final : public NormedSpace {
 public:
  /// Validates the spec against `dim` and spot-checks the norm axioms on
  /// 1000 seeded samples; throws std::invalid_argument on failure.
  Space(Index dim, NormSpec spec);

  Index dim() const override { return dim_; }
  const NormSpec& spec() const { return spec_; }
  std::shared_ptr<const NormedSpace> clone() const override;

 protected:
  double evaluate(const Vector& x) const override { return spec_.evaluate(x); }

 private:
  Index dim_;
  NormSpec spec_;
};

/// The span of the columns of `basis` inside a parent space, in coordinates:
/// the norm of a is the parent norm of basis * a.
class Subspace final : public NormedSpace {
 public:
  /// Throws std::invalid_argument if the basis is rank deficient or its row
  /// count differs from the parent dimension.
  Subspace(std::shared_ptr<const NormedSpace> parent, Matrix basis);

  Index dim() const override { return basis_.cols(); }
  const NormedSpace& parent() const { return *parent_; }
  const Matrix& basis() const { return basis_; }
  Vector embed(const Vector& coords) const { return basis_ * coords; }
  std::shared_ptr<const NormedSpace> clone() const override;

 protected:
  double evaluate(const Vector& x) const override { return parent_->norm(basis_ * x); }

 private:
  std::shared_ptr<const NormedSpace> parent_;
  Matrix basis_;
};

/// left ⊕ R with ||(y, t)|| = sqrt(||y||^2 + t^2). The last coordinate is t.
class DirectSumSpace final : public NormedSpace {
 public:
  explicit DirectSumSpace(std::shared_ptr<const NormedSpace> left);

  Index dim() const override { return left_->dim() + 1; }
  const NormedSpace& left() const { return *left_; }
  std::shared_ptr<const NormedSpace> clone() const override;

 protected:
  double evaluate(const Vector& x) const override;

 private:
  std::shared_ptr<const NormedSpace> left_;
};

double norm_eval(const NormedSpace& space, const Vector& x);

/// [a, b] = ||a + b||^2 - ||a - b||^2, four times the inner product when the
/// norm comes from one.
double bracket(const NormedSpace& space, const Vector& a, const Vector& b);

/// `count` unit vectors obtained by normalizing Gaussian directions.
std::vector<Vector> sphere_sample(const NormedSpace& space, std::size_t count, std::uint64_t seed);

/// Direction scaled onto the unit sphere of `space`.
Vector normalize_to_sphere(const NormedSpace& space, const Vector& x);

Subspace subspace_restrict(const NormedSpace& parent, Matrix basis);
DirectSumSpace direct_sum(const NormedSpace& left);

}  // namespace normgeom

#include "normgeom/space.hpp"

#include "normgeom/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace normgeom {

bool has_full_column_rank(const Matrix& m, double rel_tol) {
  if (m.cols() == 0) return true;
  if (m.rows() < m.cols()) return false;
  const Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  const double largest = s.maxCoeff();
  return largest > 0.0 && s.minCoeff() > rel_tol * largest;
}

namespace {

void check_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm spec: p must be >= 1, got " + std::to_string(p));
}

std::string short_number(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

double pnorm_value(const Vector& x, double p) {
  if (p == 1.0) return x.lpNorm<1>();
  if (p == 2.0) return std::sqrt(x.squaredNorm());
  if (std::isinf(p)) return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
  const double m = x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) sum += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(sum, 1.0 / p);
}

NormSpec NormSpec::pnorm(double p) {
  check_p(p);
  NormSpec s;
  s.kind_ = NormKind::PNorm;
  s.p_ = p;
  return s;
}

NormSpec NormSpec::weighted_pnorm(double p, Vector weights) {
  check_p(p);
  if (weights.size() == 0) throw std::invalid_argument("norm spec: weights must be non-empty");
  for (Index i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw std::invalid_argument("norm spec: weights must be strictly positive");
  }
  NormSpec s;
  s.kind_ = NormKind::WeightedPNorm;
  s.p_ = p;
  s.weights_ = std::move(weights);
  return s;
}

NormSpec NormSpec::polytope(Matrix functionals) {
  if (functionals.rows() == 0 || functionals.cols() == 0)
    throw std::invalid_argument("norm spec: polytope needs at least one functional");
  if (!functionals.allFinite()) throw std::invalid_argument("norm spec: non-finite functional");
  if (!has_full_column_rank(functionals))
    throw std::invalid_argument("norm spec: polytope functionals do not span R^n");
  NormSpec s;
  s.kind_ = NormKind::PolytopeGauge;
  s.functionals_ = std::move(functionals);
  return s;
}

NormSpec NormSpec::blend(NormSpec left, NormSpec right, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("norm spec: blend t must lie in [0, 1]");
  const auto dl = left.implied_dim();
  const auto dr = right.implied_dim();
  if (dl && dr && *dl != *dr) throw std::invalid_argument("norm spec: blend components differ in dimension");
  NormSpec s;
  s.kind_ = NormKind::Blend;
  s.left_ = std::make_shared<const NormSpec>(std::move(left));
  s.right_ = std::make_shared<const NormSpec>(std::move(right));
  s.t_ = t;
  return s;
}

NormSpec NormSpec::hexagon() {
  Matrix f(3, 2);
  for (int i = 0; i < 3; ++i) {
    const double angle = static_cast<double>(i) * std::acos(-1.0) / 3.0;
    f(i, 0) = std::cos(angle);
    f(i, 1) = std::sin(angle);
  }
  return polytope(std::move(f));
}

std::optional<Index> NormSpec::implied_dim() const {
  switch (kind_) {
    case NormKind::PNorm:
      return std::nullopt;
    case NormKind::WeightedPNorm:
      return weights_.size();
    case NormKind::PolytopeGauge:
      return functionals_.cols();
    case NormKind::Blend: {
      if (auto d = left_->implied_dim()) return d;
      return right_->implied_dim();
    }
  }
  return std::nullopt;
}

double NormSpec::evaluate(const Vector& x) const {
  switch (kind_) {
    case NormKind::PNorm:
      return pnorm_value(x, p_);
    case NormKind::WeightedPNorm: {
      if (std::isinf(p_)) return (weights_.array() * x.array().abs()).maxCoeff();
      // w_i |x_i|^p = |w_i^{1/p} x_i|^p
      const Vector scaled = weights_.array().pow(1.0 / p_) * x.array();
      return pnorm_value(scaled, p_);
    }
    case NormKind::PolytopeGauge:
      return (functionals_ * x).cwiseAbs().maxCoeff();
    case NormKind::Blend:
      return (1.0 - t_) * left_->evaluate(x) + t_ * right_->evaluate(x);
  }
  return 0.0;
}

std::string NormSpec::label() const {
  switch (kind_) {
    case NormKind::PNorm:
      return "pnorm_p" + short_number(p_);
    case NormKind::WeightedPNorm:
      return "weighted_pnorm_p" + short_number(p_);
    case NormKind::PolytopeGauge:
      return "polytope_m" + std::to_string(functionals_.rows());
    case NormKind::Blend:
      return "blend_" + left_->label() + "_" + right_->label() + "_t" + short_number(t_);
  }
  return "norm";
}

double NormedSpace::norm(const Vector& x) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("norm: vector of length " + std::to_string(x.size()) + " in space of dimension " +
                                std::to_string(dim()));
  }
  return evaluate(x);
}

namespace {

void check_norm_axioms(const NormSpec& spec, Index dim) {
  constexpr int kChecks = 1000;
  Rng rng(0x5eed0a71);
  if (spec.evaluate(Vector::Zero(dim)) != 0.0) throw std::invalid_argument("norm spec: norm of zero is not zero");
  for (int i = 0; i < kChecks; ++i) {
    const Vector x = rng.normal_vector(dim);
    const Vector y = rng.normal_vector(dim);
    const double lambda = rng.uniform(-10.0, 10.0);
    const double nx = spec.evaluate(x);
    const double ny = spec.evaluate(y);
    if (!(nx > 0.0) || !std::isfinite(nx)) throw std::invalid_argument("norm spec: not positive definite");
    const double scaled = spec.evaluate(lambda * x);
    if (std::abs(scaled - std::abs(lambda) * nx) > 1e-12 * std::abs(lambda) * nx + 1e-14)
      throw std::invalid_argument("norm spec: not absolutely homogeneous");
    if (spec.evaluate(x + y) > (nx + ny) * (1.0 + 1e-12))
      throw std::invalid_argument("norm spec: triangle inequality fails");
  }
}

}  // namespace

Space::Space(Index dim, NormSpec spec) : dim_(dim), spec_(std::move(spec)) {
  if (dim_ < 1) throw std::invalid_argument("space: dimension must be >= 1");
  if (const auto d = spec_.implied_dim(); d && *d != dim_) {
    throw std::invalid_argument("space: norm data has dimension " + std::to_string(*d) + ", expected " +
                                std::to_string(dim_));
  }
  check_norm_axioms(spec_, dim_);
}

std::shared_ptr<const NormedSpace> Space::clone() const { return std::make_shared<Space>(*this); }

Subspace::Subspace(std::shared_ptr<const NormedSpace> parent, Matrix basis)
    : parent_(std::move(parent)), basis_(std::move(basis)) {
  if (!parent_) throw std::invalid_argument("subspace: null parent");
  if (basis_.rows() != parent_->dim()) throw std::invalid_argument("subspace: basis rows differ from parent dim");
  if (basis_.cols() < 1) throw std::invalid_argument("subspace: empty basis");
  if (!has_full_column_rank(basis_)) throw std::invalid_argument("subspace: basis is rank deficient");
}

std::shared_ptr<const NormedSpace> Subspace::clone() const { return std::make_shared<Subspace>(*this); }

DirectSumSpace::DirectSumSpace(std::shared_ptr<const NormedSpace> left) : left_(std::move(left)) {
  if (!left_) throw std::invalid_argument("direct sum: null left space");
}

std::shared_ptr<const NormedSpace> DirectSumSpace::clone() const { return std::make_shared<DirectSumSpace>(*this); }

double DirectSumSpace::evaluate(const Vector& x) const {
  const Index k = left_->dim();
  return std::hypot(left_->norm(x.head(k)), x[k]);
}

double norm_eval(const NormedSpace& space, const Vector& x) { return space.norm(x); }

double bracket(const NormedSpace& space, const Vector& a, const Vector& b) {
  if (a.size() != space.dim() || b.size() != space.dim()) throw std::invalid_argument("bracket: dimension mismatch");
  const double plus = space.norm(a + b);
  const double minus = space.norm(a - b);
  return plus * plus - minus * minus;
}

Vector normalize_to_sphere(const NormedSpace& space, const Vector& x) {
  const double len = space.norm(x);
  if (len == 0.0) return x;
  return x / len;
}

std::vector<Vector> sphere_sample(const NormedSpace& space, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  while (out.size() < count) {
    const Vector g = rng.normal_vector(space.dim());
    if (g.squaredNorm() == 0.0) continue;
    out.push_back(normalize_to_sphere(space, g));
  }
  return out;
}

Subspace subspace_restrict(const NormedSpace& parent, Matrix basis) { return Subspace(parent.clone(), std::move(basis)); }

DirectSumSpace direct_sum(const NormedSpace& left) { return DirectSumSpace(left.clone()); }

}  // namespace normgeom

#include "normgeom/lemmas.hpp"

#include "normgeom/isometry.hpp"
#include "normgeom/ortho.hpp"
#include "normgeom/parallel.hpp"
#include "normgeom/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace normgeom {

namespace {

constexpr std::array<std::pair<LemmaId, std::string_view>, 7> kNames{{
    {LemmaId::Csi, "csi"},
    {LemmaId::Defect, "defect"},
    {LemmaId::DoubleLaw, "doublelaw"},
    {LemmaId::AddLaw, "addlaw"},
    {LemmaId::ScaleLaw, "scalelaw"},
    {LemmaId::LinearCombo, "linear_combo"},
    {LemmaId::InductRatio, "induct_ratio"},
}};

constexpr double kBox = 5.0;
constexpr std::size_t kBlock = 1024;

double sq(double v) { return v * v; }

void append(std::vector<double>& out, const Vector& v) { out.insert(out.end(), v.data(), v.data() + v.size()); }

struct Sampled {
  LemmaSample sample;
  std::vector<double> witness;
};

// Runs `samples` draws of gen(rng, index) and aggregates the margin and the
// violation count. Sample i is drawn from stream i / kBlock, so the report is
// independent of scheduling and nested in the sample count.
template <class Gen>
BoundCheckReport run_check(LemmaId id, double epsilon, std::size_t samples, std::uint64_t seed, const Gen& gen) {
  struct Partial {
    std::size_t violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::vector<double> witness;
  };
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<Partial> partial(blocks);
  const std::uint64_t lemma_seed = splitmix64(seed) ^ static_cast<std::uint64_t>(id);
  parallel_for(blocks, [&](std::size_t b) {
    Rng rng = Rng::for_stream(lemma_seed, b);
    Partial& p = partial[b];
    const std::size_t end = std::min(samples, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      Sampled s = gen(rng, i);
      if (is_violation(s.sample)) ++p.violations;
      const double margin = lemma_margin(s.sample);
      if (margin < p.worst) {
        p.worst = margin;
        p.witness = std::move(s.witness);
      }
    }
  });

  BoundCheckReport report;
  report.lemma = id;
  report.samples = samples;
  report.epsilon_used = epsilon;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (auto& p : partial) {
    report.violations += p.violations;
    if (p.worst < report.worst_margin) {
      report.worst_margin = p.worst;
      report.worst_witness = std::move(p.witness);
    }
  }
  return report;
}

Vector box_vector(Rng& rng, Index n) { return rng.uniform_vector(n, -kBox, kBox); }

Vector nonzero_box_vector(Rng& rng, Index n) {
  Vector v = box_vector(rng, n);
  while (v.squaredNorm() == 0.0) v = box_vector(rng, n);
  return v;
}

// t values that the dyadic induction passes through, plus the sign corners.
double corner_scalar(Rng& rng) {
  static const std::vector<double> corners = [] {
    std::vector<double> c{0.0, 1.0, -1.0, 2.0, -2.0};
    for (int m = 1; m <= 4; ++m) {
      const int denom = 1 << m;
      for (int k = 1; k < denom; k += 2) {
        c.push_back(static_cast<double>(k) / denom);
        c.push_back(-static_cast<double>(k) / denom);
      }
    }
    return c;
  }();
  return corners[rng.below(corners.size())];
}

void check_epsilon(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("lemma check: epsilon must be >= 0");
}

}  // namespace

std::string_view lemma_name(LemmaId id) {
  for (const auto& [lemma, name] : kNames) {
    if (lemma == id) return name;
  }
  return "unknown";
}

std::optional<LemmaId> lemma_from_name(std::string_view name) {
  for (const auto& [lemma, n] : kNames) {
    if (n == name) return lemma;
  }
  return std::nullopt;
}

const std::vector<LemmaId>& all_lemmas() {
  static const std::vector<LemmaId> ids = [] {
    std::vector<LemmaId> v;
    for (const auto& entry : kNames) v.push_back(entry.first);
    return v;
  }();
  return ids;
}

double lemma_floor(const LemmaSample& s) { return 1e-12 * s.magnitude + 1e-14; }

bool is_violation(const LemmaSample& s) { return s.quantity > s.bound * (1.0 + 1e-9) + lemma_floor(s); }

double lemma_margin(const LemmaSample& s) { return (s.bound - s.quantity) / std::max(s.bound, lemma_floor(s)); }

LemmaSample eval_csi(const NormedSpace& space, const Vector& x, const Vector& y) {
  const double plus = sq(space.norm(x + y));
  const double minus = sq(space.norm(x - y));
  return {std::abs(plus - minus), 4.0 * space.norm(x) * space.norm(y), plus + minus};
}

LemmaSample eval_defect(const NormedSpace& space, double epsilon, const Vector& a, const Vector& b) {
  const double s = sq(space.norm(a + b)) + sq(space.norm(a - b));
  const double q = sq(space.norm(a)) + sq(space.norm(b));
  return {std::abs(s - 2.0 * q), 2.0 * epsilon * q, s + 2.0 * q};
}

LemmaSample eval_doublelaw(const NormedSpace& space, double epsilon, const Vector& x, const Vector& y) {
  const double p2 = sq(space.norm(2.0 * x + y));
  const double m2 = sq(space.norm(2.0 * x - y));
  const double p1 = sq(space.norm(x + y));
  const double m1 = sq(space.norm(x - y));
  const double nx = sq(space.norm(x));
  const double ny = sq(space.norm(y));
  const double quantity = std::abs((p2 - m2) - 2.0 * (p1 - m1));
  const double magnitude = p2 + m2 + 2.0 * (p1 + m1);
  const LemmaSample first{quantity, 2.0 * epsilon * (p1 + m1 + 2.0 * nx), magnitude};
  const LemmaSample second{quantity, 4.0 * epsilon * ((1.0 + epsilon) * (nx + ny) + nx), magnitude};
  return lemma_margin(second) < lemma_margin(first) ? second : first;
}

LemmaSample eval_addlaw(const NormedSpace& space, double epsilon, const Vector& x, const Vector& y,
                        const Vector& z) {
  const double xp = sq(space.norm(x + z)), xm = sq(space.norm(x - z));
  const double yp = sq(space.norm(y + z)), ym = sq(space.norm(y - z));
  const Vector s = x + y;
  const double sp = sq(space.norm(s + z)), sm = sq(space.norm(s - z));
  const double quantity = std::abs((xp - xm) + (yp - ym) - (sp - sm));
  const double bound =
      epsilon * ((3.0 + 2.0 * epsilon) * sq(space.norm(s)) + sq(space.norm(x - y)) +
                 8.0 * (1.0 + epsilon) * sq(space.norm(z)));
  return {quantity, bound, xp + xm + yp + ym + sp + sm};
}

LemmaSample eval_scalelaw(const NormedSpace& space, double epsilon, const Vector& x, const Vector& y, double t) {
  const Vector tx = t * x;
  const double tp = sq(space.norm(tx + y)), tm = sq(space.norm(tx - y));
  const double p = sq(space.norm(x + y)), m = sq(space.norm(x - y));
  const double quantity = std::abs((tp - tm) - t * (p - m));
  const double bound = std::max(1.0, t * t) * epsilon *
                       ((8.0 + 7.0 * epsilon) * sq(space.norm(x)) + (20.0 + 20.0 * epsilon) * sq(space.norm(y)));
  return {quantity, bound, tp + tm + std::abs(t) * (p + m)};
}

double linear_combo_bound(std::size_t k, double epsilon, double sum_a_sq) {
  const double kd = static_cast<double>(k);
  return (kd - 1.0) * epsilon * ((4.0 + 2.0 * epsilon) * sum_a_sq + 8.0 + 8.0 * epsilon) +
         (kd + sum_a_sq) * epsilon * (28.0 + 27.0 * epsilon);
}

LemmaSample eval_linear_combo(const NormedSpace& space, double epsilon, const Matrix& images, const Vector& a,
                              const Vector& y) {
  const Vector v = images * a;
  const double vp = sq(space.norm(v + y)), vm = sq(space.norm(v - y));
  double termwise = 0.0;
  double magnitude = vp + vm;
  for (Index i = 0; i < images.cols(); ++i) {
    const double p = sq(space.norm(images.col(i) + y)), m = sq(space.norm(images.col(i) - y));
    termwise += a[i] * (p - m);
    magnitude += std::abs(a[i]) * (p + m);
  }
  const double bound = linear_combo_bound(static_cast<std::size_t>(images.cols()), epsilon, a.squaredNorm());
  return {std::abs((vp - vm) - termwise), bound, magnitude};
}

Matrix make_contraction(const NormedSpace& space, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("make_contraction: k must be >= 1");
  Rng rng = Rng::for_stream(seed, 0xc0ffee);
  const Index n = space.dim();
  Matrix m(n, static_cast<Index>(k));
  for (Index c = 0; c < m.cols(); ++c) m.col(c) = rng.normal_vector(n);
  const double op = distortion_estimate(space, m, 20'000, splitmix64(seed)).op_norm;
  return m / (op * (1.0 + 1e-9));
}

InductionSetup make_induction_setup(const NormedSpace& space, std::uint64_t seed) {
  const Index n = space.dim();
  if (n < 2) throw std::invalid_argument("make_induction_setup: dimension must be >= 2");
  InductionSetup setup;
  if (n == 2) {
    const Vector x1 = normalize_to_sphere(space, Vector::Unit(2, 0));
    const OrthoResult top = orthogonal_2d(space, x1, 1e-12);
    setup.images = x1;
    setup.top = top.y;
    setup.delta = top.residual_max;
    setup.k_bound = 1.0;
    return setup;
  }

  const Subspace hyperplane(space.clone(), Matrix::Identity(n, n - 1));
  BuildOptions build;
  build.seed = seed;
  build.budget = 20'000;
  build.allow_search_failure = true;
  const LinearMapReport lower = build_isometry_nd(hyperplane, build);

  Matrix images = hyperplane.basis() * lower.matrix;
  const DistortionEstimate d = distortion_estimate(space, images, 100'000, splitmix64(seed + 1));
  const double scale = d.op_norm * (1.0 + 1e-9);
  images /= scale;

  std::vector<Vector> xs;
  for (Index c = 0; c < images.cols(); ++c) xs.emplace_back(images.col(c));
  const OrthoResult top = best_orthogonal_nd(space, xs, {1e-8, 20, seed});

  setup.images = std::move(images);
  setup.top = top.y;
  setup.delta = top.residual_max;
  setup.k_bound = d.inv_op_norm * scale;
  return setup;
}

LemmaSample eval_induct_ratio(const NormedSpace& space, double epsilon, const InductionSetup& setup,
                              const Vector& a) {
  const Vector v = setup.images * a;
  const double nv = sq(space.norm(v));
  const double ratio = sq(space.norm(v + setup.top)) / (nv + 1.0);
  const double sum_a_sq = a.squaredNorm();
  // ||L a||^2 >= |a|^2 / K^2 is the only use of K; a sampled K can be slightly
  // small, so the bound uses the largest ratio this sample demands.
  double k = setup.k_bound;
  if (nv > 0.0) k = std::max(k, std::sqrt(sum_a_sq / nv));
  const auto m = static_cast<std::size_t>(setup.images.cols());
  const double explicit_linear = linear_combo_bound(m, epsilon, sum_a_sq) / (1.0 + sum_a_sq);
  const double bound = epsilon + 0.5 * k * k * (std::sqrt(static_cast<double>(m)) * setup.delta + explicit_linear);
  return {std::abs(ratio - 1.0), bound, ratio + 1.0};
}

BoundCheckReport check_csi(const NormedSpace& space, std::size_t samples, std::uint64_t seed) {
  const Index n = space.dim();
  return run_check(LemmaId::Csi, 0.0, samples, seed, [&](Rng& rng, std::size_t i) {
    const Vector x = box_vector(rng, n);
    Vector y = box_vector(rng, n);
    if (i % 8 == 1) y = rng.uniform(-3.0, 3.0) * x;  // equality case
    if (i % 16 == 3) y.setZero();
    Sampled s{eval_csi(space, x, y), {}};
    append(s.witness, x);
    append(s.witness, y);
    return s;
  });
}

BoundCheckReport check_defect(const NormedSpace& space, double epsilon, std::size_t samples, std::uint64_t seed) {
  check_epsilon(epsilon);
  const Index n = space.dim();
  return run_check(LemmaId::Defect, epsilon, samples, seed, [&](Rng& rng, std::size_t i) {
    const Vector a = nonzero_box_vector(rng, n);
    Vector b = box_vector(rng, n);
    if (i % 8 == 1) b = rng.uniform(-3.0, 3.0) * a;
    if (i % 16 == 3) b.setZero();
    Sampled s{eval_defect(space, epsilon, a, b), {}};
    append(s.witness, a);
    append(s.witness, b);
    return s;
  });
}

BoundCheckReport check_doublelaw(const NormedSpace& space, double epsilon, std::size_t samples,
                                 std::uint64_t seed) {
  check_epsilon(epsilon);
  const Index n = space.dim();
  return run_check(LemmaId::DoubleLaw, epsilon, samples, seed, [&](Rng& rng, std::size_t i) {
    const Vector x = box_vector(rng, n);
    Vector y = box_vector(rng, n);
    if (i % 8 == 1) y = x;
    if (i % 16 == 3) y.setZero();
    Sampled s{eval_doublelaw(space, epsilon, x, y), {}};
    append(s.witness, x);
    append(s.witness, y);
    return s;
  });
}

BoundCheckReport check_addlaw(const NormedSpace& space, double epsilon, std::size_t samples, std::uint64_t seed) {
  check_epsilon(epsilon);
  const Index n = space.dim();
  return run_check(LemmaId::AddLaw, epsilon, samples, seed, [&](Rng& rng, std::size_t i) {
    const Vector x = box_vector(rng, n);
    Vector y = box_vector(rng, n);
    Vector z = box_vector(rng, n);
    switch (i % 16) {
      case 1: y = x; break;
      case 3: y = -x; break;
      case 5: z = x; break;
      case 7: z.setZero(); break;
      default: break;
    }
    Sampled s{eval_addlaw(space, epsilon, x, y, z), {}};
    append(s.witness, x);
    append(s.witness, y);
    append(s.witness, z);
    return s;
  });
}

BoundCheckReport check_scalelaw(const NormedSpace& space, double epsilon, std::size_t samples,
                                std::uint64_t seed) {
  check_epsilon(epsilon);
  const Index n = space.dim();
  return run_check(LemmaId::ScaleLaw, epsilon, samples, seed, [&](Rng& rng, std::size_t i) {
    const Vector x = box_vector(rng, n);
    const Vector y = box_vector(rng, n);
    const double t = i % 4 == 1 ? corner_scalar(rng) : rng.uniform(-10.0, 10.0);
    Sampled s{eval_scalelaw(space, epsilon, x, y, t), {}};
    append(s.witness, x);
    append(s.witness, y);
    s.witness.push_back(t);
    return s;
  });
}

BoundCheckReport check_linear_combo(const NormedSpace& space, double epsilon, std::size_t k, std::size_t samples,
                                    std::uint64_t seed) {
  check_epsilon(epsilon);
  const Matrix images = make_contraction(space, k, seed);
  const Index n = space.dim();
  return run_check(LemmaId::LinearCombo, epsilon, samples, seed, [&](Rng& rng, std::size_t i) {
    Vector a = box_vector(rng, static_cast<Index>(k));
    if (i % 16 == 1) a.setZero();
    Vector y = normalize_to_sphere(space, rng.normal_vector(n));
    if (i % 8 != 2) y *= 1.0 - rng.uniform();  // radius in (0, 1]
    Sampled s{eval_linear_combo(space, epsilon, images, a, y), {}};
    append(s.witness, a);
    append(s.witness, y);
    return s;
  });
}

BoundCheckReport check_induct_ratio(const NormedSpace& space, double epsilon, const InductionSetup& setup,
                                    std::size_t samples, std::uint64_t seed) {
  check_epsilon(epsilon);
  const Index m = setup.images.cols();
  if (setup.images.rows() != space.dim() || setup.top.size() != space.dim() || m != space.dim() - 1)
    throw std::invalid_argument("check_induct_ratio: setup does not match the space");
  return run_check(LemmaId::InductRatio, epsilon, samples, seed, [&](Rng& rng, std::size_t i) {
    Vector a = box_vector(rng, m);
    if (i % 16 == 1) a.setZero();
    if (i % 16 == 5) a *= 1e-3;
    Sampled s{eval_induct_ratio(space, epsilon, setup, a), {}};
    append(s.witness, a);
    return s;
  });
}

BoundCheckReport run_lemma(LemmaId id, const NormedSpace& space, double epsilon, std::size_t samples,
                           std::uint64_t seed) {
  switch (id) {
    case LemmaId::Csi: {
      auto r = check_csi(space, samples, seed);
      r.epsilon_used = epsilon;
      return r;
    }
    case LemmaId::Defect:
      return check_defect(space, epsilon, samples, seed);
    case LemmaId::DoubleLaw:
      return check_doublelaw(space, epsilon, samples, seed);
    case LemmaId::AddLaw:
      return check_addlaw(space, epsilon, samples, seed);
    case LemmaId::ScaleLaw:
      return check_scalelaw(space, epsilon, samples, seed);
    case LemmaId::LinearCombo:
      return check_linear_combo(space, epsilon, static_cast<std::size_t>(space.dim()), samples, seed);
    case LemmaId::InductRatio:
      if (space.dim() < 2) throw std::invalid_argument("induct_ratio needs dimension >= 2");
      return check_induct_ratio(space, epsilon, make_induction_setup(space, seed), samples, seed);
  }
  throw std::invalid_argument("unknown lemma");
}

}  // namespace normgeom

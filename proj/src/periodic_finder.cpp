#include "rotset/periodic_finder.hpp"

#include "rotset/parallel.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace rotset {

RationalVector::RationalVector(std::int64_t p, std::int64_t q, std::int64_t r) {
  if (q == 0) throw std::invalid_argument("RationalVector: q must be nonzero");
  if (q < 0) {
    p = -p;
    q = -q;
    r = -r;
  }
  const std::int64_t g = std::gcd(std::gcd(p, q), r);
  p_ = p / g;
  q_ = q / g;
  r_ = r / g;
}

namespace {

struct Fraction {
  std::int64_t num;
  std::int64_t den;
};

Fraction parse_fraction(std::string_view s) {
  auto parse_int = [&](std::string_view t) {
    std::int64_t v = 0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
      throw std::invalid_argument("rational vector: bad integer '" + std::string(t) + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return {parse_int(s), 1};
  const std::int64_t den = parse_int(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational vector: zero denominator");
  return {parse_int(s.substr(0, slash)), den};
}

}  // namespace

RationalVector RationalVector::parse(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') compact.push_back(c);
  const auto comma = compact.find(',');
  if (comma == std::string::npos || compact.find(',', comma + 1) != std::string::npos)
    throw std::invalid_argument("rational vector: expected 'a/b,c/d', got '" + std::string(text) + "'");
  Fraction a = parse_fraction(std::string_view(compact).substr(0, comma));
  Fraction b = parse_fraction(std::string_view(compact).substr(comma + 1));
  if (a.den < 0) a = {-a.num, -a.den};
  if (b.den < 0) b = {-b.num, -b.den};
  const std::int64_t q = std::lcm(a.den, b.den);
  return RationalVector(a.num * (q / a.den), q, b.num * (q / b.den));
}

std::string RationalVector::to_string() const {
  // each component in lowest terms; parse() brings them back onto q
  auto component = [this](std::int64_t a) {
    const std::int64_t g = std::gcd(a, q_);
    const std::int64_t num = a / g, den = q_ / g;
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  };
  return component(p_) + "," + component(r_);
}

double Box::diameter() const { return std::hypot(width(), height()); }

const char* to_string(CertificateKind k) { return k == CertificateKind::index ? "index" : "residual"; }

LiftMap reduce_to_fixed_point_problem(const LiftMap& f, const RationalVector& nu) {
  return power_shift(f, static_cast<int>(nu.q()), nu.numerators());
}

std::optional<int> winding_number(const LiftMap& g, const Box& box, int samples_per_edge) {
  if (samples_per_edge < 8) throw std::invalid_argument("winding_number: samples_per_edge must be >= 8");
  const std::array<Vec2, 5> corners{Vec2(box.x0, box.y0), Vec2(box.x1, box.y0), Vec2(box.x1, box.y1),
                                    Vec2(box.x0, box.y1), Vec2(box.x0, box.y0)};
  double total = 0.0;
  double prev = 0.0;
  bool first = true;
  double first_angle = 0.0;
  for (int side = 0; side < 4; ++side) {
    for (int k = 0; k < samples_per_edge; ++k) {
      const double t = static_cast<double>(k) / samples_per_edge;
      const Vec2 p = corners[static_cast<std::size_t>(side)] +
                     t * (corners[static_cast<std::size_t>(side) + 1] - corners[static_cast<std::size_t>(side)]);
      const Vec2 d = displacement(g, p);
      if (d.norm() < 1e-12) return std::nullopt;
      const double ang = std::atan2(d.y(), d.x());
      if (first) {
        first = false;
        first_angle = ang;
      } else {
        double step = std::remainder(ang - prev, 2.0 * std::numbers::pi);
        if (std::abs(step) > std::numbers::pi / 2) return std::nullopt;
        total += step;
      }
      prev = ang;
    }
  }
  const double closing = std::remainder(first_angle - prev, 2.0 * std::numbers::pi);
  if (std::abs(closing) > std::numbers::pi / 2) return std::nullopt;
  total += closing;
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

namespace {

constexpr int kSampleSide = 5;     // samples per box side for pruning
constexpr int kMinPruneLevel = 4;  // coarser boxes are never pruned

// Levenberg-Marquardt on |G(x) - x|^2 with a central-difference Jacobian.
Vec2 minimise_residual(const LiftMap& g, Vec2 x, double target, double& residual) {
  Vec2 d = displacement(g, x);
  residual = d.norm();
  double lambda = 1e-3;
  const double h = 1e-7;
  for (int it = 0; it < 200 && residual > target; ++it) {
    Eigen::Matrix2d jac;
    for (int c = 0; c < 2; ++c) {
      Vec2 e = Vec2::Zero();
      e[c] = h;
      jac.col(c) = (displacement(g, x + e) - displacement(g, x - e)) / (2 * h);
    }
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Vec2 grad = jac.transpose() * d;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      const Eigen::Matrix2d a = jtj + lambda * (Eigen::Matrix2d::Identity() * (1.0 + jtj.trace()));
      const Vec2 step = a.ldlt().solve(-grad);
      if (!step.allFinite() || step.norm() < 1e-16) break;
      const Vec2 xn = x + step;
      const Vec2 dn = displacement(g, xn);
      if (dn.norm() < residual) {
        x = xn;
        d = dn;
        residual = dn.norm();
        lambda = std::max(lambda / 4, 1e-15);
        improved = true;
        break;
      }
      lambda *= 4;
    }
    if (!improved) break;
  }
  return x;
}

struct LeafBox {
  Box box;
  Vec2 best_sample;
};

void subdivide(const LiftMap& g, const Box& box, int level, int depth, double tol,
               std::vector<LeafBox>& leaves) {
  Vec2 best = box.center();
  double best_r = std::numeric_limits<double>::infinity();
  double lip = 0.0;
  std::array<Vec2, kSampleSide * kSampleSide> pts, ds;
  for (int j = 0; j < kSampleSide; ++j) {
    for (int i = 0; i < kSampleSide; ++i) {
      const std::size_t k = static_cast<std::size_t>(j * kSampleSide + i);
      pts[k] = {box.x0 + box.width() * i / (kSampleSide - 1), box.y0 + box.height() * j / (kSampleSide - 1)};
      ds[k] = displacement(g, pts[k]);
      const double r = ds[k].norm();
      if (r < best_r) {
        best_r = r;
        best = pts[k];
      }
    }
  }
  for (int j = 0; j < kSampleSide; ++j) {
    for (int i = 0; i < kSampleSide; ++i) {
      const std::size_t k = static_cast<std::size_t>(j * kSampleSide + i);
      if (i + 1 < kSampleSide) lip = std::max(lip, (ds[k + 1] - ds[k]).norm() / (pts[k + 1] - pts[k]).norm());
      if (j + 1 < kSampleSide) {
        const std::size_t up = k + kSampleSide;
        lip = std::max(lip, (ds[up] - ds[k]).norm() / (pts[up] - pts[k]).norm());
      }
    }
  }
  if (level >= kMinPruneLevel && best_r > tol + box.diameter() * 2.0 * lip) return;
  if (level == depth) {
    leaves.push_back({box, best});
    return;
  }
  const double xm = (box.x0 + box.x1) / 2;
  const double ym = (box.y0 + box.y1) / 2;
  subdivide(g, {box.x0, box.y0, xm, ym}, level + 1, depth, tol, leaves);
  subdivide(g, {xm, box.y0, box.x1, ym}, level + 1, depth, tol, leaves);
  subdivide(g, {box.x0, ym, xm, box.y1}, level + 1, depth, tol, leaves);
  subdivide(g, {xm, ym, box.x1, box.y1}, level + 1, depth, tol, leaves);
}

}  // namespace

FixedPointSearch locate_fixed_points(const LiftMap& g, int depth, double residual_tol) {
  if (depth < 1) throw std::invalid_argument("locate_fixed_points: depth must be >= 1");
  if (depth > 14) throw std::invalid_argument("locate_fixed_points: depth must be <= 14");
  std::vector<LeafBox> leaves;
  subdivide(g, Box{}, 0, depth, residual_tol, leaves);
  std::sort(leaves.begin(), leaves.end(), [](const LeafBox& a, const LeafBox& b) {
    return a.box.y0 < b.box.y0 || (a.box.y0 == b.box.y0 && a.box.x0 < b.box.x0);
  });

  std::vector<std::optional<FixedPointCandidate>> found(leaves.size());
  const double side = std::ldexp(1.0, -depth);
  parallel_for(leaves.size(), [&](std::size_t i) {
    const LeafBox& leaf = leaves[i];
    FixedPointCandidate c;
    c.box = leaf.box;
    const auto wn = winding_number(g, leaf.box, 16);
    if (wn && *wn != 0) {
      c.kind = CertificateKind::index;
      c.index = *wn;
      const auto wn2 = winding_number(g, leaf.box, 32);
      c.certified = wn2 && *wn2 == *wn;
      c.refined_point = minimise_residual(g, leaf.box.center(), residual_tol * 1e-3, c.residual);
      if (!leaf.box.contains(c.refined_point, side / 2)) {
        c.refined_point = leaf.best_sample;
        c.residual = displacement(g, leaf.best_sample).norm();
      }
      found[i] = c;
      return;
    }
    c.kind = CertificateKind::residual;
    c.refined_point = minimise_residual(g, leaf.best_sample, residual_tol * 1e-3, c.residual);
    if (c.residual <= residual_tol && leaf.box.contains(c.refined_point, side / 2)) found[i] = c;
  });

  // Index certificates take precedence over residual ones at the same spot.
  std::vector<FixedPointCandidate> ordered;
  for (auto kind : {CertificateKind::index, CertificateKind::residual})
    for (const auto& f : found)
      if (f && f->kind == kind) ordered.push_back(*f);

  FixedPointSearch out;
  out.leaves_examined = leaves.size();
  const double radius = side / 2;
  const auto buckets = static_cast<std::int64_t>(std::floor(1.0 / radius));
  std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
  auto bucket_of = [&](const Vec2& p) {
    const TorusPoint t = project(p);
    const std::int64_t bi = std::min(buckets - 1, static_cast<std::int64_t>(t.u / radius));
    const std::int64_t bj = std::min(buckets - 1, static_cast<std::int64_t>(t.v / radius));
    return std::pair{bi, bj};
  };
  for (const auto& cand : ordered) {
    const auto [bi, bj] = bucket_of(cand.refined_point);
    bool dup = false;
    for (std::int64_t dj = -1; dj <= 1 && !dup; ++dj) {
      for (std::int64_t di = -1; di <= 1 && !dup; ++di) {
        const std::int64_t key = ((bj + dj + buckets) % buckets) * buckets + (bi + di + buckets) % buckets;
        auto it = grid.find(key);
        if (it == grid.end()) continue;
        for (std::size_t k : it->second)
          if (torus_distance(out.candidates[k].refined_point, cand.refined_point) < radius) {
            dup = true;
            break;
          }
      }
    }
    if (dup) continue;
    grid[bj * buckets + bi].push_back(out.candidates.size());
    out.candidates.push_back(cand);
  }
  const auto residual_count = std::count_if(out.candidates.begin(), out.candidates.end(), [](const auto& c) {
    return c.kind == CertificateKind::residual;
  });
  out.degenerate_continuum = residual_count >= std::max<std::int64_t>(2, (std::int64_t{1} << depth) / 2);
  return out;
}

std::optional<PeriodicOrbitReport> realize_rational_vector(const LiftMap& f, const RationalVector& nu,
                                                           int depth, double residual_tol) {
  const LiftMap g = reduce_to_fixed_point_problem(f, nu);
  const FixedPointSearch search = locate_fixed_points(g, depth, residual_tol);

  std::vector<std::size_t> order(search.candidates.size());
  std::iota(order.begin(), order.end(), 0);
  auto rank = [&](std::size_t i) {
    const auto& c = search.candidates[i];
    return std::tuple{!c.certified, c.kind != CertificateKind::index, c.residual, i};
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank(a) < rank(b); });

  const auto q = static_cast<long>(nu.q());
  const Vec2 lattice_target = to_real(nu.numerators());
  constexpr double kReturnTol = 1e-6;  // F^{q'}(z) - z within this of Z^2 means a shorter period
  for (std::size_t idx : order) {
    const auto& c = search.candidates[idx];
    const Vec2 z = c.refined_point;
    const Vec2 end = iterate(f, z, q);
    const double res = (end - z - lattice_target).norm();
    if (!(res <= residual_tol)) continue;

    PeriodicOrbitReport rep;
    rep.lift = z;
    rep.point = project(z);
    rep.target = nu;
    rep.residual = res;
    rep.rotation_vector = (end - z) / static_cast<double>(q);
    rep.certificate = c.kind;
    rep.index = c.index;
    rep.certified = c.certified;
    rep.degenerate_continuum = search.degenerate_continuum;
    rep.candidate_count = search.candidates.size();
    rep.period = static_cast<int>(q);
    Vec2 y = z;
    for (long k = 1; k < q; ++k) {
      y = f.evaluate(y);
      if (q % k != 0) continue;
      const Vec2 d = y - z;
      const Vec2 off(d.x() - std::round(d.x()), d.y() - std::round(d.y()));
      if (off.norm() <= kReturnTol) {
        rep.period = static_cast<int>(k);
        break;
      }
    }
    rep.minimal = rep.period == q;
    return rep;
  }
  return std::nullopt;
}

}  // namespace rotset

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "domain.hpp"
#include "error.hpp"
#include "report.hpp"

namespace rrb::lie {

struct Mat2 {
  double a = 0, b = 0, c = 0, d = 0;

  static Mat2 identity() { return {1, 0, 0, 1}; }
  /// The traceless matrix [[a, b], [c, -a]].
  static Mat2 sl2(double a, double b, double c) { return {a, b, c, -a}; }

  Mat2 operator+(const Mat2 &o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2 &o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 operator*(const Mat2 &o) const
  {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  friend Mat2 operator*(double k, const Mat2 &m) { return {k * m.a, k * m.b, k * m.c, k * m.d}; }

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  double norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }

  Mat2 inverse() const
  {
    double D = det();
    if (D == 0)
      throw InputError("singular matrix");
    return {d / D, -b / D, -c / D, a / D};
  }
};

struct Vec2 {
  double x = 0, y = 0;

  Vec2 operator+(const Vec2 &o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2 &o) const { return {x - o.x, y - o.y}; }
  friend Vec2 operator*(double k, const Vec2 &v) { return {k * v.x, k * v.y}; }
  friend Vec2 operator*(const Mat2 &m, const Vec2 &v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
  double norm() const { return std::hypot(x, y); }
};

inline void to_json(nlohmann::json &j, const Mat2 &m) { j = nlohmann::json{{m.a, m.b}, {m.c, m.d}}; }
inline void to_json(nlohmann::json &j, const Vec2 &v) { j = nlohmann::json{v.x, v.y}; }

inline Mat2 bracket(const Mat2 &x, const Mat2 &y) { return x * y - y * x; }

/// Ad_g y = g y g^{-1}
inline Mat2 adjoint(const Mat2 &g, const Mat2 &y) { return g * y * g.inverse(); }

/// exp on sl(2): X^2 = -det(X) I gives exp X = C I + S X.
inline Mat2 exp_sl2(const Mat2 &X)
{
  double q = -X.det();
  double C, S;
  if (q > 1e-300) {
    double mu = std::sqrt(q);
    C = std::cosh(mu);
    S = std::sinh(mu) / mu;
  } else if (q < -1e-300) {
    double th = std::sqrt(-q);
    C = std::cos(th);
    S = std::sin(th) / th;
  } else {
    C = 1;
    S = 1;
  }
  return C * Mat2::identity() + S * X;
}

/// log on SL(2) by inverting exp_sl2 through the trace; elements far from the identity are
/// first brought closer by repeated square roots.
inline Mat2 log_sl2(Mat2 g)
{
  int halvings = 0;
  while (std::abs(g.trace() - 2) > 1.5) {
    double t = g.trace();
    if (t <= -2 + 1e-12)
      throw InputError("log undefined: trace <= -2");
    // sqrt(g) = (g + I) / sqrt(tr g + 2) for g in SL(2) with tr g > -2
    g = (1 / std::sqrt(t + 2)) * (g + Mat2::identity());
    if (++halvings > 60)
      throw InputError("log did not converge");
  }
  double c = g.trace() / 2;
  double S;
  if (std::abs(c - 1) < 1e-15)
    S = 1;
  else if (c > 1) {
    double mu = std::acosh(c);
    S = std::sinh(mu) / mu;
  } else {
    double th = std::acos(c);
    S = std::sin(th) / th;
  }
  Mat2 X = (1 / S) * (g - c * Mat2::identity());
  return std::ldexp(1.0, halvings) * X;
}

enum class Kind { Bs, BPrime, Rs };

/// B_s(x) = diag(e^{sa}, e^{-sa}) and B'_s(x) = [[1, sc], [0, 1]] on sl(2) -> SL(2);
/// R_s(x, y) = [[1, sy], [0, 1]] on R^2 -> SL(2).
struct Family {
  Kind kind = Kind::Bs;
  double s = 1;

  bool on_matrices() const { return kind != Kind::Rs; }

  std::string name() const
  {
    switch (kind) {
    case Kind::Bs:
      return "Bs";
    case Kind::BPrime:
      return "Bps";
    case Kind::Rs:
      return "Rs";
    }
    return "";
  }

  static Family parse(const std::string &name, double s)
  {
    if (name == "Bs" || name == "B")
      return {Kind::Bs, s};
    if (name == "Bps" || name == "Bprime" || name == "B'")
      return {Kind::BPrime, s};
    if (name == "Rs" || name == "R")
      return {Kind::Rs, s};
    throw InputError("unknown family: " + name + " (expected Bs, Bps or Rs)");
  }

  Mat2 operator()(const Mat2 &x) const
  {
    require_matrices();
    if (kind == Kind::Bs)
      return {std::exp(s * x.a), 0, 0, std::exp(-s * x.a)};
    return {1, s * x.c, 0, 1};
  }

  Mat2 operator()(const Vec2 &v) const
  {
    require_vectors();
    return {1, s * v.y, 0, 1};
  }

  /// The derivative at 0, in closed form.
  Mat2 derivative(const Mat2 &x) const
  {
    require_matrices();
    if (kind == Kind::Bs)
      return {s * x.a, 0, 0, -s * x.a};
    return {0, s * x.c, 0, 0};
  }

  Mat2 derivative(const Vec2 &v) const
  {
    require_vectors();
    return {0, s * v.y, 0, 0};
  }

private:
  void require_matrices() const
  {
    if (!on_matrices())
      throw InputError(name() + " is defined on R^2, not on sl(2)");
  }
  void require_vectors() const
  {
    if (on_matrices())
      throw InputError(name() + " is defined on sl(2), not on R^2");
  }
};

/// ||B(x)B(y) - B(x + Ad_{B(x)} y)||
inline double rb_residual(const Family &F, const Mat2 &x, const Mat2 &y)
{
  Mat2 g = F(x);
  return (g * F(y) - F(x + adjoint(g, y))).norm();
}

/// ||R(u)R(v) - R(u + R(u)v)||
inline double rb_residual(const Family &F, const Vec2 &u, const Vec2 &v)
{
  Mat2 g = F(u);
  return (g * F(v) - F(u + g * v)).norm();
}

namespace detail {
template <class X>
Mat2 central_difference(const Family &F, const X &x, double h)
{
  return (1 / (2 * h)) * (log_sl2(F(h * x)) - log_sl2(F(-h * x)));
}
} // namespace detail

/// Central differences of log B(hx) at h = 1e-3 and 5e-4, Richardson extrapolated.
template <class X>
Mat2 differentiate_at_zero(const Family &F, const X &x)
{
  Mat2 d1 = detail::central_difference(F, x, 1e-3);
  Mat2 d2 = detail::central_difference(F, x, 5e-4);
  return (1.0 / 3) * (4 * d2 - d1);
}

inline Mat2 random_sl2(Rng &rng, double lo = -2, double hi = 2)
{
  double a = rng.uniform_real(lo, hi);
  double b = rng.uniform_real(lo, hi);
  double c = rng.uniform_real(lo, hi);
  return Mat2::sl2(a, b, c);
}

inline Vec2 random_vec2(Rng &rng, double lo = -2, double hi = 2)
{
  double x = rng.uniform_real(lo, hi);
  double y = rng.uniform_real(lo, hi);
  return {x, y};
}

/// Tracks the largest residual and the sample where it occurred.
struct MaxResidual {
  std::string name;
  double tol;
  double max = 0;
  nlohmann::json argmax;
  std::uint64_t count = 0;

  void see(double r, nlohmann::json sample)
  {
    ++count;
    if (!(r <= max)) {
      max = r;
      argmax = std::move(sample);
    }
  }

  Report report() const
  {
    Report r(name);
    r.pairs_checked = count;
    r.info["max_residual"] = max;
    r.info["tolerance"] = tol;
    if (!argmax.is_null())
      r.info["argmax"] = argmax;
    if (!(max < tol))
      r.fail({{"residual", max}, {"sample", argmax}});
    return r;
  }
};

using LinearMap = std::function<Mat2(const Mat2 &)>;

/// [B(x), B(y)] = B([B(x), y] + [x, B(y)]) on sampled pairs, after checking linearity.
inline Report lie_rb_check(const LinearMap &B, std::size_t samples = 1000, std::uint64_t seed = kDefaultSeed,
                           double tol = 1e-12)
{
  Rng rng(seed);
  Report r("lie_rota_baxter");
  r.seed = seed;
  MaxResidual lin{"linearity", tol}, rb{"weight_zero_identity", tol};
  for (std::size_t i = 0; i < samples; ++i) {
    Mat2 x = random_sl2(rng), y = random_sl2(rng);
    double al = rng.uniform_real(-2, 2), be = rng.uniform_real(-2, 2);
    lin.see((B(al * x + be * y) - (al * B(x) + be * B(y))).norm(), {{"x", x}, {"y", y}, {"alpha", al}, {"beta", be}});
    Mat2 Bx = B(x), By = B(y);
    rb.see((bracket(Bx, By) - B(bracket(Bx, y) + bracket(x, By))).norm(), {{"x", x}, {"y", y}});
  }
  r.add(lin.report());
  r.add(rb.report());
  return r;
}

/// d^2/ds dt of Ad_{B(tx)}(sy) at 0 by a mixed central difference, against [B(x), y].
inline double prelie_diff_residual(const Family &F, const Mat2 &x, const Mat2 &y)
{
  auto f = [&](double t, double s) { return adjoint(F(t * x), s * y); };
  auto mixed = [&](double h) {
    return (1 / (4 * h * h)) * (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h));
  };
  Mat2 d = (1.0 / 3) * (4 * mixed(5e-4) - mixed(1e-3));
  return (d - bracket(F.derivative(x), y)).norm();
}

/// Upsilon(u, v) = (u |> v, Ad_{B(u |> v)^{-1}} u).
inline std::pair<Mat2, Mat2> upsilon(const Family &F, const Mat2 &u, const Mat2 &v)
{
  Mat2 w = adjoint(F(u), v);
  return {w, adjoint(F(w).inverse(), u)};
}

inline std::pair<Vec2, Vec2> upsilon(const Family &F, const Vec2 &u, const Vec2 &v)
{
  Vec2 w = F(u) * v;
  return {w, F(w).inverse() * u};
}

inline std::pair<Mat2, Mat2> upsilon_closed_form(const Family &F, const Mat2 &u, const Mat2 &v)
{
  double s = F.s, a = u.a, b = u.b, c = u.c, x = v.a, y = v.b, z = v.c;
  if (F.kind == Kind::Bs)
    return {Mat2::sl2(x, y * std::exp(2 * s * a), z * std::exp(-2 * s * a)),
            Mat2::sl2(a, b * std::exp(-2 * s * x), c * std::exp(2 * s * x))};
  if (F.kind == Kind::BPrime)
    return {Mat2::sl2(x + s * c * z, y - 2 * s * c * x - s * s * c * c * z, z),
            Mat2::sl2(a - s * c * z, b + 2 * s * a * z - s * s * z * z * c, c)};
  throw InputError(F.name() + " is defined on R^2, not on sl(2)");
}

inline std::pair<Vec2, Vec2> upsilon_closed_form(const Family &F, const Vec2 &u, const Vec2 &v)
{
  if (F.kind != Kind::Rs)
    throw InputError(F.name() + " is defined on sl(2), not on R^2");
  double s = F.s, x = u.x, y = u.y, z = v.x, w = v.y;
  return {{z + s * y * w, w}, {x - s * y * w, y}};
}

inline double pair_distance(const std::pair<Mat2, Mat2> &p, const std::pair<Mat2, Mat2> &q)
{
  return std::max((p.first - q.first).norm(), (p.second - q.second).norm());
}

inline double pair_distance(const std::pair<Vec2, Vec2> &p, const std::pair<Vec2, Vec2> &q)
{
  return std::max((p.first - q.first).norm(), (p.second - q.second).norm());
}

/// Upsilon from the operator agrees with the closed form, and Upsilon o Upsilon = id.
template <class X>
void upsilon_closed_form_see(const Family &F, const X &u, const X &v, MaxResidual &closed, MaxResidual &invol)
{
  auto got = upsilon(F, u, v);
  closed.see(pair_distance(got, upsilon_closed_form(F, u, v)), {{"u", u}, {"v", v}});
  auto back = upsilon(F, got.first, got.second);
  invol.see(pair_distance(back, std::pair{u, v}), {{"u", u}, {"v", v}});
}

template <class X>
Report upsilon_closed_form_check(const Family &F, const X &u, const X &v)
{
  MaxResidual closed{"upsilon_closed_form", 1e-10}, invol{"upsilon_involutive", 1e-9};
  upsilon_closed_form_see(F, u, v, closed, invol);
  Report r("upsilon");
  r.add(closed.report());
  r.add(invol.report());
  return r;
}

/// Every numeric property of a family on seeded samples with entries in [-2, 2].
inline Report family_check(const Family &F, std::size_t samples = 1000, std::uint64_t seed = kDefaultSeed)
{
  Rng rng(seed);
  Report r("lie_family");
  r.seed = seed;
  r.info["family"] = F.name();
  r.info["s"] = F.s;
  r.info["samples"] = samples;
  MaxResidual rb{"rota_baxter", 1e-9}, det{"determinant", 1e-12}, der{"derivative", 1e-6};
  MaxResidual closed{"upsilon_closed_form", 1e-10}, invol{"upsilon_involutive", 1e-9};
  MaxResidual pre{"prelie_differentiation", 1e-5};
  auto run = [&](auto x, auto y) {
    nlohmann::json sample{{"x", x}, {"y", y}};
    rb.see(rb_residual(F, x, y), sample);
    det.see(std::abs(F(x).det() - 1), {{"x", x}});
    der.see((differentiate_at_zero(F, x) - F.derivative(x)).norm(), {{"x", x}});
    upsilon_closed_form_see(F, x, y, closed, invol);
  };
  for (std::size_t i = 0; i < samples; ++i) {
    if (F.on_matrices()) {
      Mat2 x = random_sl2(rng), y = random_sl2(rng);
      run(x, y);
      pre.see(prelie_diff_residual(F, x, y), {{"x", x}, {"y", y}});
    } else {
      Vec2 x = random_vec2(rng), y = random_vec2(rng);
      run(x, y);
    }
  }
  for (auto *m : {&rb, &det, &der, &closed, &invol})
    r.add(m->report());
  if (F.on_matrices()) {
    r.add(pre.report());
    Family G = F;
    r.add(lie_rb_check([G](const Mat2 &x) { return G.derivative(x); }, samples, seed));
  }
  return r;
}

} // namespace rrb::lie

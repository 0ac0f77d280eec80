#pragma once

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unitlat/errors.hpp"
#include "unitlat/quad.hpp"
#include "unitlat/rational.hpp"
#include "unitlat/real.hpp"

namespace unitlat {

/// Monic integer quartic, constant term first.
using Quartic = std::array<Integer, 5>;

/// Gal(L/Q) = <σ> ≅ Z/4, ordered id, σ, σ², σ³.
enum class CyclicGalois : int { id = 0, sigma = 1, sigma2 = 2, sigma3 = 3 };

inline constexpr std::array<CyclicGalois, 4> kCyclicOrder = {CyclicGalois::id, CyclicGalois::sigma, CyclicGalois::sigma2,
                                                             CyclicGalois::sigma3};

constexpr CyclicGalois cyclic_compose(CyclicGalois g, CyclicGalois h) {
  return static_cast<CyclicGalois>((static_cast<int>(g) + static_cast<int>(h)) % 4);
}

inline std::string cyclic_label(CyclicGalois g) {
  constexpr const char* names[] = {"id", "σ", "σ²", "σ³"};
  return names[static_cast<int>(g)];
}

using PowerCoords = std::array<Rational, 4>;

/// Totally real cyclic quartic field L = Q(θ), f(θ) = 0, with elements in the
/// power basis {1, θ, θ², θ³}. The identity embedding sends θ to the largest
/// real root of f; σ is the generator of Gal(L/Q) with the larger image σ(θ)
/// under that embedding.
class CyclicQuarticField {
 public:
  static std::shared_ptr<const CyclicQuarticField> create(const Quartic& f) {
    return std::shared_ptr<const CyclicQuarticField>(new CyclicQuarticField(f));
  }

  const Quartic& polynomial() const { return f_; }

  /// Power-basis coordinates of g(θ).
  const PowerCoords& automorphism(CyclicGalois g) const { return images_[static_cast<std::size_t>(g)]; }

  /// Squarefree m with Q(√m) the unique quadratic subfield.
  std::int64_t quadratic_subfield_d() const { return subfield_d_; }

  /// Coordinates of the positive square root of quadratic_subfield_d().
  const PowerCoords& sqrt_d() const { return sqrt_d_; }

  /// Real roots of f at `bits`, sorted descending (index 0 is θ under id).
  std::vector<Real> roots(mpfr_prec_t bits) const {
    std::vector<Real> out;
    out.reserve(4);
    for (double r0 : approx_roots_) out.push_back(newton_refine(r0, bits));
    return out;
  }

  /// Index into roots() of g(θ) under the identity embedding.
  int embedding_root(CyclicGalois g) const { return root_index_[static_cast<std::size_t>(g)]; }

  /// Multiplication in Q[x]/(f).
  PowerCoords multiply(const PowerCoords& x, const PowerCoords& y) const {
    std::array<Rational, 7> prod{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) prod[i + j] += x[i] * y[j];
    for (std::size_t k = 6; k >= 4; --k) {
      const Rational c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      // θ^4 = -(f0 + f1 θ + f2 θ² + f3 θ³)
      for (std::size_t i = 0; i < 4; ++i) prod[k - 4 + i] -= c * Rational(f_[i]);
    }
    return {prod[0], prod[1], prod[2], prod[3]};
  }

  /// x(h), the polynomial x evaluated at the field element h.
  PowerCoords compose(const PowerCoords& x, const PowerCoords& h) const {
    PowerCoords acc{x[3], 0, 0, 0};
    for (int k = 2; k >= 0; --k) {
      acc = multiply(acc, h);
      acc[0] += x[static_cast<std::size_t>(k)];
    }
    return acc;
  }

  bool operator==(const CyclicQuarticField& o) const { return f_ == o.f_; }

 private:
  explicit CyclicQuarticField(const Quartic& f) : f_(f) {
    if (f_[4] != 1) throw DomainError("defining polynomial must be monic of degree 4");
    find_roots();
    check_irreducible();
    find_automorphisms();
    find_quadratic_subfield();
  }

  Real eval(const Real& x, const Quartic& p) const {
    Real acc(p[4], x.precision());
    for (int k = 3; k >= 0; --k) acc = acc * x + Real(p[static_cast<std::size_t>(k)], x.precision());
    return acc;
  }

  Real newton_refine(double start, mpfr_prec_t bits) const {
    const mpfr_prec_t work = bits + 64;
    const Quartic df{f_[1], 2 * f_[2], 3 * f_[3], 4 * f_[4], 0};
    Real x(start, work);
    for (int iter = 0; iter < 200; ++iter) {
      const Real step = eval(x, f_) / eval(x, df);
      x -= step;
      if (step.is_zero() || step.exponent2() < x.exponent2() - static_cast<long>(work) + 4) break;
    }
    return x.with_precision(bits);
  }

  void find_roots() {
    Eigen::Matrix<double, 5, 1> coeffs;
    for (int k = 0; k < 5; ++k) coeffs(k) = f_[static_cast<std::size_t>(k)].get_d();
    Eigen::PolynomialSolver<double, 4> solver(coeffs);
    approx_roots_.clear();
    double scale = 1.0;
    for (int k = 0; k < 4; ++k) scale = std::max(scale, std::abs(solver.roots()(k)));
    for (int k = 0; k < 4; ++k) {
      const std::complex<double> r = solver.roots()(k);
      if (std::abs(r.imag()) > 1e-7 * scale) throw DomainError("defining polynomial is not totally real");
      approx_roots_.push_back(r.real());
    }
    std::sort(approx_roots_.begin(), approx_roots_.end(), std::greater<>());
    for (std::size_t k = 0; k + 1 < approx_roots_.size(); ++k) {
      const Real a = newton_refine(approx_roots_[k], 128);
      const Real b = newton_refine(approx_roots_[k + 1], 128);
      if (abs(a - b) < pow2_neg(60, 128)) throw DomainError("defining polynomial has a repeated root");
    }
  }

  bool divides_exactly(const std::array<Integer, 3>& q) const {
    // Long division of f by the monic quadratic q0 + q1 x + x².
    std::array<Integer, 5> r = f_;
    for (int k = 4; k >= 2; --k) {
      const Integer c = r[static_cast<std::size_t>(k)];
      for (int i = 0; i <= 2; ++i) r[static_cast<std::size_t>(k - 2 + i)] -= c * q[static_cast<std::size_t>(i)];
    }
    return r[0] == 0 && r[1] == 0;
  }

  void check_irreducible() const {
    // A monic integer polynomial factors over Q iff it factors over Z into
    // monic factors; every factor's roots are among the real roots found.
    const std::vector<Real> rs = roots(128);
    for (const Real& r : rs) {
      const Integer n = r.round_to_integer();
      if (eval(Real(n, 128), f_).is_zero()) throw DomainError("defining polynomial has an integer root");
    }
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        const Integer sum = (rs[i] + rs[j]).round_to_integer();
        const Integer prod = (rs[i] * rs[j]).round_to_integer();
        if (divides_exactly({prod, -sum, Integer(1)}))
          throw DomainError("defining polynomial has a quadratic factor");
      }
  }

  bool is_root_of_f(const PowerCoords& h) const {
    const PowerCoords value = compose({Rational(f_[0]), Rational(f_[1]), Rational(f_[2]), Rational(f_[3])}, h);
    // compose drops the leading θ^4 term; add h^4.
    const PowerCoords h2 = multiply(h, h);
    const PowerCoords h4 = multiply(h2, h2);
    for (std::size_t k = 0; k < 4; ++k)
      if (value[k] + h4[k] != 0) return false;
    return true;
  }

  /// Solves the Vandermonde system h(r_i) = r_{perm(i)} and reconstructs h.
  std::optional<PowerCoords> interpolate(const std::vector<Real>& rs, const std::array<int, 4>& perm) const {
    const mpfr_prec_t bits = rs[0].precision();
    std::array<std::array<Real, 5>, 4> m;
    for (std::size_t i = 0; i < 4; ++i) {
      Real power(1L, bits);
      for (std::size_t k = 0; k < 4; ++k) {
        m[i][k] = power;
        power *= rs[i];
      }
      m[i][4] = rs[static_cast<std::size_t>(perm[i])];
    }
    for (std::size_t col = 0; col < 4; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col + 1; r < 4; ++r)
        if (abs(m[r][col]) > abs(m[pivot][col])) pivot = r;
      std::swap(m[col], m[pivot]);
      for (std::size_t r = 0; r < 4; ++r) {
        if (r == col) continue;
        const Real factor = m[r][col] / m[col][col];
        for (std::size_t k = col; k < 5; ++k) m[r][k] -= factor * m[col][k];
      }
    }
    PowerCoords h;
    const Real tol = pow2_neg(static_cast<long>(bits) / 2, bits);
    for (std::size_t k = 0; k < 4; ++k) {
      auto q = reconstruct_rational(m[k][4] / m[k][k], Integer("1000000000000"), tol);
      if (!q) return std::nullopt;
      h[k] = *q;
    }
    return h;
  }

  void find_automorphisms() {
    const mpfr_prec_t bits = 384;
    const std::vector<Real> rs = roots(bits);
    std::vector<PowerCoords> found;
    std::vector<int> targets;
    for (int j = 0; j < 4; ++j) {
      std::array<int, 4> perm{0, 1, 2, 3};
      bool done = false;
      do {
        if (perm[0] != j) continue;
        auto h = interpolate(rs, perm);
        if (h && is_root_of_f(*h)) {
          found.push_back(*h);
          targets.push_back(j);
          done = true;
        }
      } while (!done && std::next_permutation(perm.begin(), perm.end()));
    }
    if (found.size() != 4) throw DomainError("defining polynomial does not define a Galois extension");

    const PowerCoords theta{0, 1, 0, 0};
    std::vector<std::size_t> order_four;
    for (std::size_t k = 0; k < 4; ++k)
      if (found[k] != theta && compose(found[k], found[k]) != theta) order_four.push_back(k);
    if (order_four.size() != 2) throw DomainError("Galois group is not cyclic");
    // targets are root indices in descending root order: smaller index means larger σ(θ).
    const std::size_t s = targets[order_four[0]] < targets[order_four[1]] ? order_four[0] : order_four[1];
    images_[0] = theta;
    images_[1] = found[s];
    images_[2] = compose(images_[1], images_[1]);
    images_[3] = compose(images_[2], images_[1]);
    if (compose(images_[3], images_[1]) != theta) throw std::logic_error("σ does not have order 4");
    for (std::size_t g = 0; g < 4; ++g) {
      const auto it = std::find(found.begin(), found.end(), images_[g]);
      root_index_[g] = targets[static_cast<std::size_t>(it - found.begin())];
    }
  }

  void find_quadratic_subfield() {
    // t = b + σ²(b) is fixed by σ², so it lies in the quadratic subfield; for
    // irrational t, 2t - T = ±√Δ with T = t + σ(t), Δ = T² - 4 t σ(t).
    for (std::size_t k = 1; k < 4; ++k) {
      PowerCoords b{0, 0, 0, 0};
      b[k] = 1;
      const PowerCoords t = add(b, compose(b, images_[2]));
      if (t[1] == 0 && t[2] == 0 && t[3] == 0) continue;
      const PowerCoords st = compose(t, images_[1]);
      const PowerCoords trace = add(t, st);
      const PowerCoords nrm = multiply(t, st);
      const Rational T = trace[0];
      const Rational N = nrm[0];
      const Rational disc = T * T - 4 * N;
      const Integer num_den = disc.get_num() * disc.get_den();
      auto [m, c] = squarefree_decomposition(num_den);
      if (m <= 1 || !m.fits_slong_p()) throw DomainError("quadratic subfield discriminant out of range");
      // √disc = c·√m / den, so √m = (den / c)·(2t - T) up to sign.
      PowerCoords root = t;
      for (auto& x : root) x *= 2;
      root[0] -= T;
      const Rational factor = Rational(disc.get_den()) / Rational(c);
      for (auto& x : root) x *= factor;
      subfield_d_ = m.get_si();
      // Square check, then fix the sign under the identity embedding.
      const PowerCoords sq = multiply(root, root);
      if (sq != PowerCoords{Rational(m), 0, 0, 0}) throw std::logic_error("quadratic subfield root check failed");
      const std::vector<Real> rs = roots(128);
      Real v(128);
      Real power(1L, 128);
      for (std::size_t i = 0; i < 4; ++i) {
        v += Real(root[i], 128) * power;
        power *= rs[0];
      }
      if (v.sign() < 0)
        for (auto& x : root) x = -x;
      sqrt_d_ = root;
      return;
    }
    throw std::logic_error("no irrational element fixed by σ²");
  }

  static PowerCoords add(const PowerCoords& x, const PowerCoords& y) {
    return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
  }

  Quartic f_;
  std::vector<double> approx_roots_;
  std::array<PowerCoords, 4> images_{};
  std::array<int, 4> root_index_{};
  std::int64_t subfield_d_ = 0;
  PowerCoords sqrt_d_{};
};

/// Element of a cyclic quartic field in its power basis.
class CyclicElem {
 public:
  using FieldPtr = std::shared_ptr<const CyclicQuarticField>;

  CyclicElem(FieldPtr field, PowerCoords coords) : field_(std::move(field)), c_(std::move(coords)) {
    for (Rational& q : c_) q.canonicalize();
  }

  static CyclicElem rational(FieldPtr f, Rational q) { return CyclicElem(std::move(f), {std::move(q), 0, 0, 0}); }

  /// a + b√d for d the quadratic subfield radicand.
  static CyclicElem lift(FieldPtr f, const QuadElem& q) {
    if (q.d() != f->quadratic_subfield_d())
      throw DomainError("Q(√" + std::to_string(q.d()) + ") is not the quadratic subfield");
    const PowerCoords& r = f->sqrt_d();
    return CyclicElem(f, {q.a() + q.b() * r[0], q.b() * r[1], q.b() * r[2], q.b() * r[3]});
  }

  const FieldPtr& field() const { return field_; }
  const PowerCoords& coords() const { return c_; }
  const Rational& operator[](std::size_t k) const { return c_[k]; }

  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  friend bool operator==(const CyclicElem& x, const CyclicElem& y) {
    return (x.field_ == y.field_ || *x.field_ == *y.field_) && x.c_ == y.c_;
  }

  CyclicElem operator-() const { return CyclicElem(field_, {-c_[0], -c_[1], -c_[2], -c_[3]}); }

  friend CyclicElem operator+(const CyclicElem& x, const CyclicElem& y) {
    check_same(x, y);
    return CyclicElem(x.field_, {x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]});
  }
  friend CyclicElem operator-(const CyclicElem& x, const CyclicElem& y) { return x + (-y); }
  friend CyclicElem operator*(const CyclicElem& x, const CyclicElem& y) {
    check_same(x, y);
    return CyclicElem(x.field_, x.field_->multiply(x.c_, y.c_));
  }

  CyclicElem apply(CyclicGalois g) const { return CyclicElem(field_, field_->compose(c_, field_->automorphism(g))); }

  /// N_{L/l}(x) = x·σ²(x).
  CyclicElem norm_to_l() const { return *this * apply(CyclicGalois::sigma2); }

  Rational norm_to_Q() const {
    const CyclicElem n = norm_to_l();
    const CyclicElem full = n * n.apply(CyclicGalois::sigma);
    if (!full.is_rational()) throw std::logic_error("norm did not land in Q");
    return full.c_[0];
  }

  CyclicElem inverse() const {
    if (is_zero()) throw DomainError("inverse of zero in cyclic quartic field");
    const CyclicElem others = apply(CyclicGalois::sigma) * apply(CyclicGalois::sigma2) * apply(CyclicGalois::sigma3);
    const Rational n = (*this * others).c_[0];
    const PowerCoords& o = others.c_;
    return CyclicElem(field_, {o[0] / n, o[1] / n, o[2] / n, o[3] / n});
  }

  CyclicElem pow(long e) const {
    CyclicElem base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    CyclicElem result = rational(field_, 1);
    while (k != 0) {
      if (k & 1UL) result = result * base;
      base = base * base;
      k >>= 1U;
    }
    return result;
  }

  std::array<Rational, 5> characteristic_polynomial() const {
    std::array<std::array<Rational, 4>, 4> m{};
    for (std::size_t j = 0; j < 4; ++j) {
      PowerCoords e{0, 0, 0, 0};
      e[j] = 1;
      const PowerCoords col = field_->multiply(c_, e);
      for (std::size_t i = 0; i < 4; ++i) m[i][j] = col[i];
    }
    return unitlat::characteristic_polynomial<4>(m);
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < 4; ++k) {
      const Rational& q = c_[k];
      if (q == 0) continue;
      std::string coef = q.get_str();
      std::string term;
      if (k == 0) {
        term = coef;
      } else {
        const std::string power = k == 1 ? "θ" : (k == 2 ? "θ²" : "θ³");
        term = (q == 1 ? "" : (q == -1 ? "-" : (q.get_den() == 1 ? coef : "(" + coef + ")"))) + power;
      }
      if (!out.empty() && term.front() != '-') out += "+";
      out += term;
    }
    return out.empty() ? "0" : out;
  }

 private:
  static void check_same(const CyclicElem& x, const CyclicElem& y) {
    if (!(x.field_ == y.field_ || *x.field_ == *y.field_)) throw DomainError("elements of different cyclic fields");
  }

  FieldPtr field_;
  PowerCoords c_;
};

inline CyclicElem galois_apply(CyclicGalois g, const CyclicElem& x) { return x.apply(g); }

inline bool is_algebraic_integer(const CyclicElem& x) {
  for (const Rational& c : x.characteristic_polynomial())
    if (!is_integral(c)) return false;
  return true;
}

inline bool is_unit(const CyclicElem& x) {
  if (!is_algebraic_integer(x)) return false;
  const Rational n = x.norm_to_Q();
  return n == 1 || n == -1;
}

/// Values of g(x) under the identity embedding for g = id, σ, σ², σ³.
inline std::array<Real, 4> embed_real(const CyclicElem& x, mpfr_prec_t bits) {
  if (bits < 64) throw DomainError("embed_real: precision_bits must be >= 64");
  std::array<Real, 4> out{Real(bits), Real(bits), Real(bits), Real(bits)};
  if (x.is_zero()) return out;
  const auto& field = *x.field();
  const std::vector<Real> approx = field.roots(64);
  long root_mag = 0;
  for (const Real& r : approx) root_mag = std::max(root_mag, r.exponent2());
  long mag = -(1L << 30);
  for (std::size_t k = 0; k < 4; ++k)
    if (x[k] != 0) mag = std::max(mag, Real(x[k], 64).exponent2() + static_cast<long>(k) * std::max(0L, root_mag));
  mag += 3;
  for (CyclicGalois g : kCyclicOrder) {
    const auto idx = static_cast<std::size_t>(field.embedding_root(g));
    out[static_cast<std::size_t>(g)] = detail::evaluate_with_cancellation(bits, mag, [&](mpfr_prec_t work) {
      const Real r = field.roots(work)[idx];
      Real v(x[3], work);
      for (int k = 2; k >= 0; --k) v = v * r + Real(x[static_cast<std::size_t>(k)], work);
      return v;
    });
  }
  return out;
}

}  // namespace unitlat

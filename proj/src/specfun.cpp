#include "helmscat/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

namespace helmscat {

namespace {

constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr double kSeriesLimit = 8.0;

// Chebyshev expansions (in 2 (8/x)^2 - 1) of the modulus/phase functions P(x)
// and x Q(x) used for x > 8. Generated by tools/gen_bessel_coeffs.py.
constexpr std::array<double, 16> kP = {
    9.9946034934751866537e-1,  -5.3652204681321174247e-4, 3.0751847875194746219e-6,
    -5.170594537606097701e-8,  1.6306464635151383095e-9,  -7.864091377237069999e-11,
    5.1682623873491924622e-12, -4.3045788699253912224e-13, 4.3265957431549405642e-14,
    -5.0690340959352360775e-15, 6.7480722157338737041e-16, -1.0011513723467785834e-16,
    1.6305919233744184736e-17, -2.880866169482871202e-18, 5.4680827832590383688e-19,
    -1.1062036496829716611e-19,
};
constexpr std::array<double, 17> kXQ = {
    -1.244468368426960728e-1,  5.4708159540893196795e-4,  -5.9315987288485178116e-6,
    1.4377965798375193428e-7,  -5.8175327494930559835e-9, 3.3760975237349907551e-10,
    -2.5653979367973077957e-11, 2.404916100281365049e-12, -2.6690625482579415976e-13,
    3.4041800321963688986e-14, -4.8799441053120400078e-15, 7.7297031762426053902e-16,
    -1.334885217150251704e-16, 2.486595238939051547e-17, -4.952892629886515942e-18,
    1.0473158973776097239e-18, -2.3369301722114218899e-19,
};

template <std::size_t N>
double clenshaw(const std::array<double, N>& c, double u) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = N - 1; k >= 1; --k) {
    const double b0 = 2.0 * u * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + c[0];
}

struct BesselPair {
  double j0;
  double y0;
};

// Power series, accumulated in extended precision to absorb the cancellation
// between terms of size ~ e^x / x near the top of the range.
long double j0_series(long double x) {
  const long double q = -x * x / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-300L) break;
  }
  return sum;
}

long double y0_series(long double x, long double j0) {
  const long double q = x * x / 4.0L;
  long double power = 1.0L;  // q^k / (k!)^2
  long double harmonic = 0.0L;
  long double sum = 0.0L;
  long double sign = 1.0L;
  for (int k = 1; k < 200; ++k) {
    power *= q / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    const long double term = sign * harmonic * power;
    sum += term;
    sign = -sign;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-300L) break;
  }
  constexpr long double two_over_pi = 0.636619772367581343075535053490057448L;
  return two_over_pi * ((std::log(x / 2.0L) + kEulerGamma) * j0 + sum);
}

BesselPair asymptotic_pair(double x) {
  const double s = (kSeriesLimit / x) * (kSeriesLimit / x);
  const double u = 2.0 * s - 1.0;
  const double p = clenshaw(kP, u);
  const double q = clenshaw(kXQ, u) / x;
  const double c = std::cos(x);
  const double sn = std::sin(x);
  // cos(x - pi/4) and sin(x - pi/4) without rounding x - pi/4.
  const double cp = (c + sn) * 0.70710678118654752440;
  const double sp = (sn - c) * 0.70710678118654752440;
  const double amp = std::sqrt(2.0 / (kPi * x));
  return {amp * (p * cp - q * sp), amp * (p * sp + q * cp)};
}

void check_finite(double x, const char* fn) {
  if (!std::isfinite(x)) throw DomainError(std::string(fn) + ": non-finite argument");
}

}  // namespace

double bessel_j0(double x) {
  check_finite(x, "bessel_j0");
  if (x < 0.0) throw DomainError("bessel_j0: negative argument");
  if (x <= kSeriesLimit) return static_cast<double>(j0_series(x));
  return asymptotic_pair(x).j0;
}

double bessel_y0(double x) {
  check_finite(x, "bessel_y0");
  if (x <= 0.0) throw DomainError("bessel_y0: argument must be positive");
  if (x <= kSeriesLimit) {
    const long double lx = x;
    return static_cast<double>(y0_series(lx, j0_series(lx)));
  }
  return asymptotic_pair(x).y0;
}

cplx hankel0_first(double x) {
  check_finite(x, "hankel0_first");
  if (x <= 0.0) throw DomainError("hankel0_first: argument must be positive");
  if (x <= kSeriesLimit) {
    const long double lx = x;
    const long double j0 = j0_series(lx);
    return {static_cast<double>(j0), static_cast<double>(y0_series(lx, j0))};
  }
  const BesselPair jy = asymptotic_pair(x);
  return {jy.j0, jy.y0};
}

Kernel::Kernel(int dim, double kappa) : dim_(dim), kappa_(kappa) {
  if (dim != 2 && dim != 3) throw PreconditionError("Kernel: dim must be 2 or 3");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw PreconditionError("Kernel: kappa must be positive and finite");
  }
}

cplx Kernel::at_distance(double r) const {
  if (!(r >= kCoincidentDistance)) {
    throw SingularityError("kernel evaluated at coincident points");
  }
  if (dim_ == 2) return 0.25 * kI * hankel0_first(kappa_ * r);
  const double kr = kappa_ * r;
  return cplx(std::cos(kr), std::sin(kr)) / (4.0 * kPi * r);
}

cplx Kernel::operator()(const Vec3& x, const Vec3& y) const { return at_distance(distance(x, y)); }

ComplexMatrix Kernel::matrix(std::span<const Vec3> targets, std::span<const Vec3> sources) const {
  ComplexMatrix m(static_cast<Index>(targets.size()), static_cast<Index>(sources.size()));
  for (Index j = 0; j < m.cols(); ++j) {
    const Vec3& y = sources[static_cast<std::size_t>(j)];
    for (Index i = 0; i < m.rows(); ++i) m(i, j) = (*this)(targets[static_cast<std::size_t>(i)], y);
  }
  return m;
}

ComplexVector Kernel::potential(std::span<const Vec3> targets, std::span<const Vec3> sources,
                                const ComplexVector& q) const {
  if (static_cast<Index>(sources.size()) != q.size()) {
    throw PreconditionError("Kernel::potential: source/strength size mismatch");
  }
  ComplexVector u = ComplexVector::Zero(static_cast<Index>(targets.size()));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < sources.size(); ++j) acc += (*this)(targets[i], sources[j]) * q(static_cast<Index>(j));
    u(static_cast<Index>(i)) = acc;
  }
  return u;
}

}  // namespace helmscat

#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <concepts>
#include <limits>
#include <type_traits>

namespace liouville {

/// 113-bit binary floating point; used where spectral derivatives of
/// strongly concentrated fields exhaust double precision.
using quad = boost::multiprecision::float128;

template <class T>
concept RealScalar = std::is_floating_point_v<T> || std::is_same_v<T, quad>;

template <RealScalar Real>
constexpr Real pi() {
  return boost::math::constants::pi<Real>();
}

template <RealScalar Real>
Real to_real(double v) {
  return static_cast<Real>(v);
}

template <RealScalar Real>
double to_double(const Real& v) {
  return static_cast<double>(v);
}

template <RealScalar Real>
Real epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

}  // namespace liouville

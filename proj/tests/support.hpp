#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <doctest.h>

#include "bergman/errors.hpp"

namespace bergman::test {

inline double rel_err(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

template <class Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace bergman::test

#ifndef GEVREY_BBM_TESTS_TEST_UTIL_H_
#define GEVREY_BBM_TESTS_TEST_UTIL_H_

#include <gtest/gtest.h>

#include <cmath>

#include "gevrey_bbm/error.h"
#include "gevrey_bbm/spectral_core.h"

// Asserts that the statement throws a gevrey_bbm::Error of the given kind.
#define EXPECT_THROW_KIND(statement, expected_kind)                                  \
  do {                                                                               \
    bool caught_ = false;                                                            \
    try {                                                                            \
      statement;                                                                     \
    } catch (const ::gevrey_bbm::Error& e_) {                                        \
      caught_ = true;                                                                \
      EXPECT_EQ(e_.kind(), expected_kind) << e_.what();                              \
    }                                                                                \
    EXPECT_TRUE(caught_) << "expected " << ::gevrey_bbm::to_string(expected_kind);   \
  } while (false)

namespace gevrey_bbm::test {

// Plain sqrt(sum |c_j|^2) over the stored coefficients.
inline double coefficient_l2(const SpectralField& f) {
  double s = 0.0;
  for (const Complex& c : f.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace gevrey_bbm::test

#endif  // GEVREY_BBM_TESTS_TEST_UTIL_H_

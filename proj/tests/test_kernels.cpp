#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "lovespec/error.hpp"
#include "lovespec/kernels.hpp"

using namespace lovespec;

TEST_CASE("thread limit caps the team size") {
  const int base = kernels::set_thread_limit(0);
  CHECK(kernels::set_thread_limit(1) == 1);
  CHECK(kernels::set_thread_limit(base + 8) == base);
  ::setenv("LOVESPEC_THREADS", "1", 1);
  CHECK(kernels::apply_thread_environment() == 1);
  for (const char* bad : {"0", "-2", "two", "3x"}) {
    ::setenv("LOVESPEC_THREADS", bad, 1);
    CHECK_THROWS_AS(kernels::apply_thread_environment(), Error);
  }
  ::unsetenv("LOVESPEC_THREADS");
  CHECK(kernels::apply_thread_environment() == 1);
  kernels::set_thread_limit(0);
}

TEST_CASE("Filon transform is exact for piecewise-linear data") {
  // a(k) = k on [0, 4]: int k cos(ks) dk = (cos(4s) - 1)/s^2 + 4 sin(4s)/s.
  std::vector<double> a(81);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = 0.05 * static_cast<double>(i);
  const auto table = kernels::filon_cosine(a, 0.05, 200, 0.137);
  const auto serial = kernels::filon_cosine_serial(a, 0.05, 200, 0.137);
  CHECK(std::abs(table[0] - 8.0) < 1e-12);
  for (std::size_t j = 1; j < table.size(); ++j) {
    const double s = 0.137 * static_cast<double>(j);
    const double exact = (std::cos(4.0 * s) - 1.0) / (s * s) + 4.0 * std::sin(4.0 * s) / s;
    CHECK(std::abs(table[j] - exact) < 1e-11);
    CHECK(table[j] == doctest::Approx(serial[j]).epsilon(1e-14));
    CHECK(std::abs(kernels::filon_cosine_at(a, 0.05, s) - table[j]) < 1e-12);
  }
  // Small-angle branch.
  CHECK(std::abs(kernels::filon_cosine_at(a, 0.05, 1e-4) - 8.0) < 1e-6);
}

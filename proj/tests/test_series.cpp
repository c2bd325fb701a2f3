#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "psn/analysis/series.hpp"
#include "psn/errors.hpp"

using namespace psn;

TEST_CASE("throughput is the surviving fraction of sent packets") {
  CHECK(throughput(1000, 20) == 0.98);
  CHECK(throughput(12345, 0) == 1.0);
  CHECK(throughput(0, 0) == 1.0);  // idle flow counts as perfect
  CHECK_THROWS_AS(throughput(10, 11), InvalidCounts);
  CHECK_THROWS_AS(throughput(10, -1), InvalidCounts);
}

TEST_CASE("local peaks are strict rises followed by non-rises") {
  const std::vector<double> v{1, 3, 2, 5, 4};
  CHECK(local_peaks(v) == std::vector<double>{3, 5});

  const std::vector<double> flat{2, 2, 2, 2};
  CHECK(local_peaks(flat).empty());

  const std::vector<double> plateau{1, 3, 3, 2};
  CHECK(local_peaks(plateau) == std::vector<double>{3});  // first plateau sample

  const std::vector<double> ends{5, 1, 5};
  CHECK(local_peaks(ends).empty());  // endpoints never qualify

  // a pause in a climb is not a summit
  const std::vector<double> staircase{1, 2, 2, 4, 4, 8};
  CHECK(local_peaks(staircase).empty());
  const std::vector<double> stepped{1, 2, 2, 4, 4, 3};
  CHECK(local_peaks(stepped) == std::vector<double>{4});

  CHECK_THROWS_AS(local_peaks(std::vector<double>{1, 2}), SeriesTooShort);
}

TEST_CASE("monotone series have no local peaks") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> step(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> up{0.0}, down{100.0};
    for (int i = 0; i < 40; ++i) {
      up.push_back(up.back() + step(rng));
      down.push_back(down.back() - step(rng));
    }
    CHECK(local_peaks(up).empty());
    CHECK(local_peaks(down).empty());
  }
}

TEST_CASE("a ten-cycle sine has exactly ten unit peaks") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::sin(2.0 * M_PI * static_cast<double>(i) / 100.0);
  const auto peaks = local_peaks(v);
  REQUIRE(peaks.size() == 10);
  for (double p : peaks) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("window matrix reshapes row-per-window") {
  std::vector<double> v(12);
  std::iota(v.begin(), v.end(), 0.0);
  const WindowMatrix wm = window_matrix(v, 1.0, 4.0);
  CHECK(wm.W() == 3);
  CHECK(wm.S() == 4);
  CHECK(wm.m(0, 0) == 0.0);
  CHECK(wm.m(0, 3) == 3.0);
  CHECK(wm.m(1, 0) == 4.0);
  CHECK(wm.m(2, 3) == 11.0);

  const std::vector<float> vf(v.begin(), v.end());
  const WindowMatrix wf = window_matrix(std::span<const float>(vf), 1.0, 4.0);
  CHECK(wf.m == wm.m);
}

TEST_CASE("window matrix rejects ragged splits") {
  std::vector<double> v(10);
  CHECK_THROWS_AS(window_matrix(v, 1.0, 4.0), NonDivisibleWindow);   // 10 % 4
  CHECK_THROWS_AS(window_matrix(v, 0.3, 1.0), NonDivisibleWindow);   // T % dt
  CHECK_THROWS_AS(window_matrix(v, 1.0, 0.0), NonDivisibleWindow);
  CHECK_THROWS_AS(window_matrix(std::vector<double>{}, 1.0, 1.0), NonDivisibleWindow);
}

TEST_CASE("dimension count is the shortest prefix reaching the threshold") {
  const std::vector<double> eig{4, 3, 2, 1};
  CHECK(dims_to_contribution(eig, 0.99) == 4);  // 9/10 < 0.99, needs all four
  CHECK(dims_to_contribution(eig, 0.90) == 3);  // 9/10 exactly
  CHECK(dims_to_contribution(eig, 0.50) == 2);
  CHECK(dims_to_contribution(eig, 0.40) == 1);  // 4/10 reaches it alone
  CHECK(dims_to_contribution(std::vector<double>{5, -1e-18, 0}, 0.99) == 1);
  CHECK_THROWS_AS(dims_to_contribution(std::vector<double>{0, 0}, 0.99), AllZeroSpectrum);
}

TEST_CASE("pearson correlation on hand-checked vectors") {
  CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}) ==
        doctest::Approx(1.0));
  CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{6, 4, 2}) ==
        doctest::Approx(-1.0));
  CHECK(pearson(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 3, 2, 4}) ==
        doctest::Approx(0.8));
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
                  ZeroVariance);
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}),
                  InvalidCounts);
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}), InvalidCounts);
}

TEST_CASE("spearman uses average ranks for ties") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{5, 6, 7, 8, 7};
  // ranks of b are 1, 2, 3.5, 5, 3.5 -> pearson with 1..5 = 8/sqrt(95)
  CHECK(spearman(a, b) == doctest::Approx(8.0 / std::sqrt(95.0)).epsilon(1e-12));
  CHECK(spearman(a, std::vector<double>{10, 20, 30, 40, 50}) == doctest::Approx(1.0));
  CHECK(spearman(a, std::vector<double>{9, 7, 5, 3, 1}) == doctest::Approx(-1.0));
}

TEST_CASE("kendall tau-b on hand-checked vectors") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{5, 6, 7, 8, 7};
  // 8 concordant, 1 discordant, one tie in b: 7/sqrt(9*10)
  CHECK(kendall_tau(a, b) == doctest::Approx(7.0 / std::sqrt(90.0)).epsilon(1e-12));
  CHECK(kendall_tau(a, std::vector<double>{2, 3, 5, 8, 13}) == doctest::Approx(1.0));
  CHECK(kendall_tau(a, std::vector<double>{13, 8, 5, 3, 2}) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(kendall_tau(a, std::vector<double>{1, 1, 1, 1, 1}), ZeroVariance);
}

TEST_CASE("median splits ordered values") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  CHECK(median({7}) == 7.0);
  CHECK_THROWS_AS(median({}), InvalidCounts);
}

TEST_CASE("quantized distincts count occupied bins") {
  const std::vector<double> v{1.0, 1.2, 1.6, 2.1};
  CHECK(distinct_quantized(v, 0.5) == 3);  // bins 2, 2, 3, 4
  CHECK(distinct_quantized(v, 10.0) == 1);
  CHECK(distinct_quantized(std::vector<double>{}, 0.5) == 0);
  CHECK_THROWS_AS(distinct_quantized(v, 0.0), InvalidConfig);
}

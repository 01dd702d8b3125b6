#include "fbl/covolume.hpp"
#include "fbl/error.hpp"
#include "fixtures.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>

using namespace fbl;
using boost::multiprecision::cpp_rational;
using fixtures::Family;

namespace {

// independent arithmetic: boost rationals, compared via their string forms
std::string oracle_partial(std::uint64_t u, std::uint64_t l, std::size_t N) {
  cpp_rational acc = 0;
  cpp_rational denom = l;
  for (std::size_t n = 1; n <= N; ++n) {
    denom *= u;
    acc += cpp_rational(1) / denom;
  }
  return acc.str();
}

std::string oracle_limit(std::uint64_t u, std::uint64_t l) { return cpp_rational(cpp_rational(1) / cpp_rational(l * (u - 1))).str(); }

mpz_class Z(unsigned long v) { return mpz_class(v); }

} // namespace

TEST_CASE("series of reciprocals") {
  const std::vector<mpz_class> orders{Z(24), Z(96), Z(384)};
  const auto s = covolume_series(orders);
  REQUIRE(s.size() == 3);
  CHECK(s[0].str() == "1/24");
  CHECK(s[1].str() == "5/96");
  CHECK(s[2].str() == "7/128");
  CHECK(covolume_series(std::vector<mpz_class>{}).empty());
  CHECK_THROWS_AS(covolume_series(std::vector<mpz_class>{Z(3), mpz_class(0)}), Error);
}

TEST_CASE("limits in closed form") {
  CHECK(nonuniform_covolume(Z(4), Z(6)).str() == "1/18");
  CHECK(nonuniform_covolume(Z(8), Z(6)).str() == "1/42");
  CHECK(nonuniform_covolume(Z(9), Z(48)).str() == "1/384");
  CHECK(nonuniform_covolume(Z(27), Z(24)).str() == "1/624");
  CHECK(nonuniform_covolume(*fixtures::get(Family::A2, 2).levi).str() == "1/18");
  CHECK_THROWS_WITH_AS(nonuniform_covolume(Z(1), Z(6)), doctest::Contains("diverges"), Error);
  CHECK_THROWS_AS(nonuniform_covolume(Z(4), mpz_class(0)), Error);
}

TEST_CASE("partial sums agree with an independent rational oracle") {
  for (auto [u, l] : {std::pair<std::uint64_t, std::uint64_t>{4, 6}, {8, 6}, {9, 48}, {27, 24}}) {
    const auto s = uniform_covolumes(Z(u), Z(l), 20);
    const auto lim = nonuniform_covolume(Z(u), Z(l));
    CHECK(lim.str() == oracle_limit(u, l));
    for (std::size_t N = 1; N <= 20; ++N) {
      CHECK(s[N - 1].str() == oracle_partial(u, l, N));
      CHECK(lim - s[N - 1] == series_tail(Z(u), Z(l), N));
      CHECK(s[N - 1] < lim);
      if (N > 1) CHECK(s[N - 2] < s[N - 1]);
    }
  }
  CHECK_THROWS_AS(uniform_covolumes(Z(4), Z(6), 0), Error);
}

TEST_CASE("summand orders") {
  CHECK(summand_orders(Z(4), Z(6), 3) == std::vector<mpz_class>{Z(24), Z(96), Z(384)});
  const auto big = summand_orders(Z(27), Z(24), 30);
  CHECK(big.back() == mpz_class(24) * [] {
    mpz_class p = 1;
    for (int i = 0; i < 30; ++i) p *= 27;
    return p;
  }());
}

TEST_CASE("nondiscreteness certificate") {
  CHECK(nondiscreteness_certificate(Z(4), Z(6), Rational::parse("1/1000")) == 3);
  CHECK(nondiscreteness_certificate(Z(4), Z(6), Rational(1)) == 1);
  CHECK(nondiscreteness_certificate(Z(4), Z(6), Rational::parse("1/18")) == 1);
  CHECK(nondiscreteness_certificate(Z(4), Z(6), Rational::parse("1/72")) == 2);
  CHECK_THROWS_AS(nondiscreteness_certificate(Z(4), Z(6), Rational(0)), Error);
  CHECK_THROWS_AS(nondiscreteness_certificate(Z(4), Z(6), Rational(-1)), Error);
  for (auto [u, l] : {std::pair<std::uint64_t, std::uint64_t>{4, 6}, {8, 6}, {9, 48}, {27, 24}})
    for (int d = 1; d <= 12; ++d) {
      const auto eps = Rational::parse("1e-" + std::to_string(d));
      const auto N = nondiscreteness_certificate(Z(u), Z(l), eps);
      CHECK(series_tail(Z(u), Z(l), N) < eps);
      if (N > 1) CHECK_FALSE(series_tail(Z(u), Z(l), N - 1) < eps);
    }
}

TEST_CASE("report, recheck and TSV") {
  const std::vector<mpz_class> orders{Z(24), Z(96), Z(384)};
  const auto r = covolume_report(Z(4), Z(6), orders, Rational::parse("1/1000"));
  CHECK(r.ok());
  CHECK(r.certificate_n == 3u);
  const auto j = r.to_json();
  CHECK(j["limit"] == "1/18");
  CHECK(j["nondiscreteness"]["gap"] == "1/1152");
  CHECK(recheck_covolume_report(j));
  auto bad = j;
  bad["partial_sums"][1] = "1/20";
  CHECK_FALSE(recheck_covolume_report(bad));

  const auto tsv = r.to_tsv(2, 3, 8);
  CHECK(tsv.rfind("q\tm\tk\tN\tcovolume\tdecimal_approx\n", 0) == 0);
  CHECK(tsv.find("2\t3\t8\t3\t7/128\t~0.054687500000") != std::string::npos);
  CHECK(tsv.find("2\t3\t8\tlimit\t1/18\t~0.055555555556") != std::string::npos);

  const auto flat = covolume_report(Z(4), Z(6), std::vector<mpz_class>{Z(24), Z(24)}, std::nullopt);
  CHECK_FALSE(flat.ok());
  CHECK_FALSE(flat.to_json().contains("nondiscreteness"));
}

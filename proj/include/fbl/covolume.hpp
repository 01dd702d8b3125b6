#pragma once

#include "fbl/graph_of_groups.hpp"
#include "fbl/rational.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fbl {

/// Partial sums of Σ 1/orders[i]. Throws fbl::Error on a zero order.
std::vector<Rational> covolume_series(std::span<const mpz_class> orders);

/// 1 / (|L_P| (|U_P| - 1)): the sum over n >= 1 of 1/(|U_P|^n |L_P|).
/// Throws when |U_P| = 1, since the series then diverges.
Rational nonuniform_covolume(const mpz_class& u_order, const mpz_class& l_order);
Rational nonuniform_covolume(const LeviData& d);

/// |U_P|^n |L_P| for n = 1..N.
std::vector<mpz_class> summand_orders(const mpz_class& u_order, const mpz_class& l_order, std::size_t N);

/// First N partial sums of the nonuniform series.
std::vector<Rational> uniform_covolumes(const mpz_class& u_order, const mpz_class& l_order, std::size_t N);
std::vector<Rational> uniform_covolumes(const LeviData& d, std::size_t N);

/// limit - partial_sum(N) in closed form: 1 / (|L_P| |U_P|^N (|U_P| - 1)).
Rational series_tail(const mpz_class& u_order, const mpz_class& l_order, std::size_t N);

/// Least N >= 1 with limit - partial_sum(N) < epsilon, found by exact comparison of partial sums.
std::size_t nondiscreteness_certificate(const mpz_class& u_order, const mpz_class& l_order, const Rational& epsilon);
std::size_t nondiscreteness_certificate(const LeviData& d, const Rational& epsilon);

struct CovolumeReport {
  mpz_class u_order, l_order;
  std::vector<mpz_class> summand_orders;
  std::vector<Rational> partial_sums;
  Rational limit;
  std::optional<Rational> epsilon;
  std::optional<std::size_t> certificate_n;
  bool increasing = false;
  bool below_limit = false;
  bool distinct = false;

  bool ok() const { return increasing && below_limit && distinct; }
  nlohmann::json to_json() const;
  /// Rows q, m, k, N, exact covolume, 12-digit decimal (approximate); a final row gives the limit.
  std::string to_tsv(std::uint32_t q, int m, std::uint32_t k) const;
};

/// Builds the report from explicit 0-vertex orders (for example those of a glued complex).
CovolumeReport covolume_report(const mpz_class& u_order, const mpz_class& l_order, std::span<const mpz_class> orders,
                               std::optional<Rational> epsilon = std::nullopt);

/// Recomputes every value of a report JSON from its stored orders.
bool recheck_covolume_report(const nlohmann::json& j);

} // namespace fbl

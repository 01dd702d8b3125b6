#include "fbl/covolume.hpp"

#include "fbl/error.hpp"

#include <sstream>

namespace fbl {

std::vector<Rational> covolume_series(std::span<const mpz_class> orders) {
  std::vector<Rational> out;
  out.reserve(orders.size());
  Rational acc;
  for (const auto& o : orders) {
    if (o <= 0) throw Error("group orders must be positive");
    acc += Rational::reciprocal(o);
    out.push_back(acc);
  }
  return out;
}

Rational nonuniform_covolume(const mpz_class& u_order, const mpz_class& l_order) {
  if (u_order == 1) throw Error("series diverges; U_P trivial violates Lemma structure");
  if (u_order < 1 || l_order < 1) throw Error("group orders must be positive");
  return Rational::reciprocal(l_order * (u_order - 1));
}

Rational nonuniform_covolume(const LeviData& d) {
  return nonuniform_covolume(mpz_class(static_cast<unsigned long>(d.u_order())), mpz_class(static_cast<unsigned long>(d.l_order())));
}

std::vector<mpz_class> summand_orders(const mpz_class& u_order, const mpz_class& l_order, std::size_t N) {
  std::vector<mpz_class> out;
  mpz_class cur = l_order;
  for (std::size_t n = 1; n <= N; ++n) {
    cur *= u_order;
    out.push_back(cur);
  }
  return out;
}

std::vector<Rational> uniform_covolumes(const mpz_class& u_order, const mpz_class& l_order, std::size_t N) {
  if (N == 0) throw Error("N must be at least 1");
  const auto orders = summand_orders(u_order, l_order, N);
  return covolume_series(orders);
}

std::vector<Rational> uniform_covolumes(const LeviData& d, std::size_t N) {
  return uniform_covolumes(mpz_class(static_cast<unsigned long>(d.u_order())), mpz_class(static_cast<unsigned long>(d.l_order())), N);
}

Rational series_tail(const mpz_class& u_order, const mpz_class& l_order, std::size_t N) {
  mpz_class den = l_order * (u_order - 1);
  for (std::size_t i = 0; i < N; ++i) den *= u_order;
  return Rational::reciprocal(den);
}

std::size_t nondiscreteness_certificate(const mpz_class& u_order, const mpz_class& l_order, const Rational& epsilon) {
  if (epsilon.sign() <= 0) throw Error("epsilon must be positive");
  const Rational limit = nonuniform_covolume(u_order, l_order);
  Rational partial;
  mpz_class order = l_order;
  for (std::size_t n = 1;; ++n) {
    order *= u_order;
    partial += Rational::reciprocal(order);
    if (limit - partial < epsilon) return n;
  }
}

std::size_t nondiscreteness_certificate(const LeviData& d, const Rational& epsilon) {
  return nondiscreteness_certificate(mpz_class(static_cast<unsigned long>(d.u_order())),
                                     mpz_class(static_cast<unsigned long>(d.l_order())), epsilon);
}

CovolumeReport covolume_report(const mpz_class& u_order, const mpz_class& l_order, std::span<const mpz_class> orders,
                               std::optional<Rational> epsilon) {
  CovolumeReport r;
  r.u_order = u_order;
  r.l_order = l_order;
  r.summand_orders.assign(orders.begin(), orders.end());
  r.partial_sums = covolume_series(orders);
  r.limit = nonuniform_covolume(u_order, l_order);
  r.increasing = r.below_limit = r.distinct = true;
  for (std::size_t i = 0; i < r.partial_sums.size(); ++i) {
    if (!(r.partial_sums[i] < r.limit)) r.below_limit = false;
    if (i > 0 && !(r.partial_sums[i - 1] < r.partial_sums[i])) r.increasing = r.distinct = false;
  }
  if (epsilon) {
    r.epsilon = epsilon;
    r.certificate_n = nondiscreteness_certificate(u_order, l_order, *epsilon);
  }
  return r;
}

nlohmann::json CovolumeReport::to_json() const {
  nlohmann::json j;
  j["closed_form_inputs"] = {{"U_P_order", u_order.get_str()}, {"L_P_order", l_order.get_str()}};
  std::vector<std::string> orders, sums;
  for (const auto& o : summand_orders) orders.push_back(o.get_str());
  for (const auto& s : partial_sums) sums.push_back(s.str());
  j["summand_orders"] = orders;
  j["partial_sums"] = sums;
  j["limit"] = limit.str();
  j["normalization"] = "covolume equals the sum of 1/|stabilizer| over 0-vertex orbits";
  j["increasing"] = increasing;
  j["below_limit"] = below_limit;
  j["distinct"] = distinct;
  if (epsilon) {
    const std::size_t n = *certificate_n;
    const Rational gap = series_tail(u_order, l_order, n);
    j["nondiscreteness"] = {{"epsilon", epsilon->str()},
                            {"N", n},
                            {"gap", gap.str()},
                            {"covolumes", [&] {
                               std::vector<std::string> v;
                               for (const auto& s : uniform_covolumes(u_order, l_order, n)) v.push_back(s.str());
                               return v;
                             }()}};
  }
  j["ok"] = ok();
  return j;
}

std::string CovolumeReport::to_tsv(std::uint32_t q, int m, std::uint32_t k) const {
  std::ostringstream os;
  os << "q\tm\tk\tN\tcovolume\tdecimal_approx\n";
  for (std::size_t i = 0; i < partial_sums.size(); ++i)
    os << q << '\t' << m << '\t' << k << '\t' << i + 1 << '\t' << partial_sums[i].str() << "\t~" << partial_sums[i].decimal(12)
       << '\n';
  os << q << '\t' << m << '\t' << k << "\tlimit\t" << limit.str() << "\t~" << limit.decimal(12) << '\n';
  return os.str();
}

bool recheck_covolume_report(const nlohmann::json& j) {
  try {
    const mpz_class u(j.at("closed_form_inputs").at("U_P_order").get<std::string>());
    const mpz_class l(j.at("closed_form_inputs").at("L_P_order").get<std::string>());
    std::vector<mpz_class> orders;
    for (const auto& s : j.at("summand_orders")) orders.emplace_back(s.get<std::string>());
    std::optional<Rational> eps;
    if (j.contains("nondiscreteness")) eps = Rational::parse(j["nondiscreteness"].at("epsilon"));
    const CovolumeReport r = covolume_report(u, l, orders, eps);
    return r.to_json() == j;
  } catch (const std::exception&) {
    return false;
  }
}

} // namespace fbl

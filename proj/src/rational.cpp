#include "fbl/rational.hpp"

#include "fbl/error.hpp"

#include <cctype>

namespace fbl {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::reciprocal(const mpz_class& n) { return Rational(mpz_class(1), n); }

Rational Rational::operator/(const Rational& b) const {
  if (b.q_ == 0) throw Error("rational division by zero");
  return Rational(q_ / b.q_);
}

Rational Rational::parse(const std::string& text) {
  auto bad = [&] { return Error("cannot parse rational '" + text + "'"); };
  if (text.empty()) throw bad();
  const auto e = text.find_first_of("eE");
  try {
    if (e != std::string::npos) {
      const mpz_class mant(text.substr(0, e));
      const std::string exp_text = text.substr(e + 1);
      if (exp_text.empty()) throw bad();
      const long exp = std::stol(exp_text);
      mpz_class pow10;
      mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp < 0 ? -exp : exp));
      return exp < 0 ? Rational(mant, pow10) : Rational(mant * pow10, 1);
    }
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(mpz_class(text), 1);
    return Rational(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw bad();
  }
}

std::string Rational::decimal(unsigned digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class num = abs(q_.get_num()) * scale * 2 + q_.get_den();
  mpz_class den = q_.get_den() * 2;
  mpz_class scaled;
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  std::string s = scaled.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  return (sign() < 0 ? "-" : "") + out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational rational_sum(std::span<const Rational> terms) {
  Rational s;
  for (const auto& t : terms) s += t;
  return s;
}

} // namespace fbl

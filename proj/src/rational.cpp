#include "sidec/rational.hpp"

#include <cctype>

#include "sidec/errors.hpp"

namespace sidec {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw ParseError("invalid rational \"" + std::string(text) + "\"");
  }
  Integer n(std::string(num), 10);
  Integer d(1);
  if (slash != std::string_view::npos) {
    d = Integer(std::string(den), 10);
    if (d == 0) throw ParseError("invalid rational \"" + std::string(text) + "\": zero denominator");
  }
  if (text.front() == '-') n = -n;
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Rational sqrt_upper_bound(const Rational& value, unsigned depth) {
  if (sgn(value) < 0) throw PreconditionError("sqrt_upper_bound of a negative value");
  const Integer& num = value.get_num();
  const Integer& den = value.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
  }
  // p = ceil(sqrt(ceil(num * 4^depth / den))) is the least grid numerator
  // with p^2 / 4^depth >= value.
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 4, depth);
  Integer target = num * scale;
  Integer q, rem;
  mpz_cdiv_q(q.get_mpz_t(), target.get_mpz_t(), den.get_mpz_t());
  Integer p;
  mpz_sqrtrem(p.get_mpz_t(), rem.get_mpz_t(), q.get_mpz_t());
  if (rem != 0) p += 1;
  Integer grid;
  mpz_ui_pow_ui(grid.get_mpz_t(), 2, depth);
  Rational r(p, grid);
  r.canonicalize();
  return r;
}

}  // namespace sidec

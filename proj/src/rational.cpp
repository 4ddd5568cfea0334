#include "scl/rational.hpp"

#include <cctype>

#include "scl/error.hpp"

namespace scl {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  std::size_t digits = 0;
  bool slash = false;
  std::size_t after_slash = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ++digits;
      if (slash) ++after_slash;
    } else if (c == '/' && !slash && digits > 0) {
      slash = true;
    } else {
      throw Error(Errc::ParseError, "not a rational number: '" + text + "'");
    }
  }
  if (digits == 0 || (slash && after_slash == 0))
    throw Error(Errc::ParseError, "not a rational number: '" + text + "'");
  std::string body = text[0] == '+' ? text.substr(1) : text;
  Rational r;
  if (r.set_str(body, 10) != 0) throw Error(Errc::ParseError, "not a rational number: '" + text + "'");
  if (r.get_den() == 0) throw Error(Errc::ParseError, "zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

}  // namespace scl

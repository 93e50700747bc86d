#include "sce/rational.hpp"

#include <cctype>

#include "sce/error.hpp"

namespace sce {

Rat rat_parse(const std::string& text) {
  if (text.empty()) throw InputError("empty rational literal");
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    // decimal literal: digits '.' digits, optional leading sign
    std::string head = text.substr(0, dot);
    std::string tail = text.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg) head = head.substr(1);
    if (head.empty()) head = "0";
    for (char ch : head + tail)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw InputError("bad decimal literal '" + text + "'");
    mpz_class num(head + tail);
    mpz_class den(1);
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    Rat r(num, den);
    r.canonicalize();
    if (neg) r = -r;
    return r;
  }
  try {
    Rat r(text, 10);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw InputError("bad rational literal '" + text + "'");
  }
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double rat_double(const Rat& r) { return r.get_d(); }

std::uint64_t floor_scaled(const Rat& c, std::uint64_t n) {
  if (c < 0) throw InputError("negative capacity");
  Rat scaled = c * Rat(static_cast<unsigned long>(n));
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(),
             scaled.get_den().get_mpz_t());
  if (!fl.fits_ulong_p()) throw InputError("capacity*uses out of range");
  return fl.get_ui();
}

}  // namespace sce

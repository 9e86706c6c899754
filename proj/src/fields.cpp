#include "frobangle/fields.hpp"

#include <stdexcept>
#include <string>

#include "frobangle/arith.hpp"

namespace frobangle {

namespace {

constexpr ImagQuadField make_field(int d) {
  // D_K = d when -d = 1 mod 4, i.e. d = 3 mod 4; else 4d
  int disc = (d % 4 == 3) ? d : 4 * d;
  int w = (d == 1) ? 4 : (d == 3) ? 6 : 2;
  return ImagQuadField{d, disc, w};
}

const std::array<ImagQuadField, 9> kFields = {
    make_field(1),  make_field(2),  make_field(3),  make_field(7), make_field(11),
    make_field(19), make_field(43), make_field(67), make_field(163)};

}  // namespace

const std::array<ImagQuadField, 9>& all_fields() { return kFields; }

const ImagQuadField& field_for_d(int d) {
  for (const auto& f : kFields)
    if (f.d == d) return f;
  throw std::invalid_argument("field_for_d: d must be one of 1,2,3,7,11,19,43,67,163 (got " +
                              std::to_string(d) + ")");
}

const char* to_string(Splitting s) {
  switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

int kronecker_chi(const ImagQuadField& field, u64 n) {
  if (n == 0) throw std::invalid_argument("kronecker_chi: n >= 1 required");
  return kronecker_symbol(-static_cast<i64>(field.abs_discriminant), n);
}

Splitting splitting_type(const ImagQuadField& field, u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("splitting_type: p must be prime");
  int chi = kronecker_chi(field, p);
  if (chi == 1) return Splitting::Split;
  if (chi == -1) return Splitting::Inert;
  return Splitting::Ramified;
}

}  // namespace frobangle

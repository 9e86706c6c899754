#pragma once
// The nine imaginary quadratic fields Q(sqrt(-d)) of class number one and
// the splitting behaviour of rational primes in them.
#include <array>
#include <cstdint>

namespace frobangle {

enum class Splitting { Split, Inert, Ramified };

const char* to_string(Splitting s);

struct ImagQuadField {
  int d;                 // field is Q(sqrt(-d))
  int abs_discriminant;  // D_K = d if -d = 1 mod 4, else 4d
  int unit_count;        // w_K: 4 for d=1, 6 for d=3, 2 otherwise
};

// all nine class-number-one fields, ascending d
const std::array<ImagQuadField, 9>& all_fields();

// throws std::invalid_argument unless d is one of the nine
const ImagQuadField& field_for_d(int d);

// chi_K(n) = Kronecker symbol (-D_K | n), n >= 1
int kronecker_chi(const ImagQuadField& K, std::uint64_t n);

// requires p prime; Ramified iff p | D_K, else Split/Inert by chi_K(p)
Splitting splitting_type(const ImagQuadField& K, std::uint64_t p);

}  // namespace frobangle

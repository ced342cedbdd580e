#pragma once

#include <stdexcept>

namespace fkp {

// Base class for every domain error thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested object would exceed the configured size budget, or an
// intermediate integer would overflow.
struct capacity_error : error {
  using error::error;
};

// Operands have incompatible or unusable dimensions.
struct dimension_error : error {
  using error::error;
};

// Input text does not follow the spec grammar, or a factor list is invalid.
struct parse_error : error {
  using error::error;
};

// A matrix has a row whose phase multiset carries no order.
struct not_an_fkp_error : error {
  using error::error;
};

// A factor pair handed to a splitting routine shares a prime.
struct not_coprime_error : error {
  using error::error;
};

// An exponent sequence is not in the required non-increasing order.
struct ordering_error : error {
  using error::error;
};

// A phased matrix has no flat row and column to anchor a reduction.
struct not_reducible_error : error {
  using error::error;
};

}  // namespace fkp

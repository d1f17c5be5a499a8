#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a generator of a circulant connection set reduced to 0 mod n
struct invalid_generator_error : error {
  using error::error;
};

// requested dense object would exceed the configured size cap
struct size_cap_error : error {
  using error::error;
};

// an analytic routine was handed a graph shape it has no formula for
struct unsupported_structure_error : error {
  using error::error;
};

// quadrature sample density below the Nyquist-style floor
struct undersampled_error : error {
  using error::error;
};

}  // namespace qwalk

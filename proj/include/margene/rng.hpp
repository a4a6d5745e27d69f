#pragma once

#include <cmath>
#include <cstdint>

namespace margene::rng {

//! splitmix64 finalizer; the workhorse bit mixer behind the counter streams.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

//! Stateless stream addressed by (seed, replicate, channel, array). Values
//! are pure functions of the key and a position, so any cell of a simulated
//! matrix can be produced independently and in parallel, bit-identically.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t replicate, std::uint64_t channel,
         std::uint64_t array) {
    std::uint64_t k = mix64(seed);
    k = mix64(k ^ (0x9E3779B97F4A7C15ULL * (replicate + 1)));
    k = mix64(k ^ (0xC2B2AE3D27D4EB4FULL * (channel + 1)));
    k = mix64(k ^ (0x165667B19E3779F9ULL * (array + 1)));
    key_ = k;
  }

  std::uint64_t bits(std::uint64_t position) const {
    return mix64(key_ + position * 0x9E3779B97F4A7C15ULL);
  }

  //! Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform(std::uint64_t position) const {
    return (static_cast<double>(bits(position) >> 11) + 0.5) * 0x1.0p-53;
  }

  //! Standard normal via the inverse CDF, one draw per position.
  double normal(std::uint64_t position) const {
    return inverse_normal_cdf(uniform(position));
  }

  //! Wichura's PPND16 rational approximation of the normal quantile,
  //! accurate to ~1e-16 over (0, 1).
  static double inverse_normal_cdf(double p) {
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
      const double r = 0.180625 - q * q;
      return q *
             (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                   6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
               1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
             (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                   3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
               4.2313330701600911252e1) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
      r -= 1.6;
      value =
          (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
              3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
            4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
            2.05319162663775882187e0) * r + 1.0);
    } else {
      r -= 5.0;
      value =
          (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
            5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -value : value;
  }

 private:
  std::uint64_t key_;
};

}  // namespace margene::rng

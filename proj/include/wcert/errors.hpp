#pragma once

#include <stdexcept>
#include <string>

namespace wcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point was passed to a query defined only on a set it does not belong to.
class DomainMembershipError : public Error {
 public:
  using Error::Error;
};

/// A family or domain constructor found a violated hypothesis.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A sampling resolution is too coarse for the quantity requested.
class RefinementRequired : public Error {
 public:
  using Error::Error;
};

/// A derivative order exceeds the smoothness budget of a piecewise cutoff.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// A composed index word exceeded the configured cap.
class IndexCapError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Weight evaluation overflowed on the sampled region.
class TruncationBoxError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace wcert

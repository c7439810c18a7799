#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hexpdc {

/// Wavelength (or another scalar) outside the validity range of a model.
class DomainError : public std::domain_error {
  public:
    DomainError(const std::string& what, double value, double lo, double hi)
        : std::domain_error(what), value(value), range_min(lo), range_max(hi) {}
    double value;
    double range_min;
    double range_max;
};

/// k^2 < |q|^2: the requested transverse mode does not propagate. Carries the
/// deficit q^2 - k^2 (rad/m)^2 so callers can mask such modes.
class EvanescentModeError : public std::domain_error {
  public:
    EvanescentModeError(const std::string& what, double deficit)
        : std::domain_error(what), deficit(deficit) {}
    double deficit;
};

/// Covariance matrix fails the uncertainty relation.
class StateValidityError : public std::runtime_error {
  public:
    StateValidityError(const std::string& what, double min_symplectic_eigenvalue)
        : std::runtime_error(what), min_symplectic_eigenvalue(min_symplectic_eigenvalue) {}
    double min_symplectic_eigenvalue;
};

/// Conditioning on an outcome of zero probability.
class ConditioningError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// NaN/overflow during field propagation. Reports where it happened.
class DivergenceError : public std::runtime_error {
  public:
    DivergenceError(const std::string& what, double z, double max_abs)
        : std::runtime_error(what), z(z), max_abs(max_abs) {}
    double z;
    double max_abs;
};

/// Configuration rejected; lists every failure found, not just the first.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> failures)
        : std::runtime_error(join(failures)), failures(std::move(failures)) {}
    std::vector<std::string> failures;

  private:
    static std::string join(const std::vector<std::string>& msgs) {
        std::string out = "configuration invalid:";
        for (const auto& m : msgs) out += "\n  - " + m;
        return out;
    }
};

}  // namespace hexpdc
